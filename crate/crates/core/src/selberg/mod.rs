//! Selberg-class descriptors, named presets, serialization and zero tables.

pub mod descriptor;
pub mod format;
pub mod presets;
pub mod zeros;

pub use descriptor::{ArithmeticData, GammaFactor, ScaleFactor, SelbergDescriptor};
pub use format::{descriptor_from_toml, descriptor_to_toml, load_descriptor};
pub use presets::{preset, PRESET_NAMES};
pub use zeros::{load_zero_table, parse_zero_table, vendored_zeta_zeros, ZeroTable};
