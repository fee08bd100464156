//! `selberg-li`: Li coefficient tables, H_n breakdowns and a calibration self-test.

mod output;
mod range;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use rug::Rational;

use selberg_li::licoeff::{li_records, positivity_report, Methods, MAX_ETA_INDEX};
use selberg_li::nrsum::HnSweep;
use selberg_li::selberg::format::parse_exact;
use selberg_li::selberg::{load_descriptor, load_zero_table, preset, vendored_zeta_zeros, SelbergDescriptor, ZeroTable};
use selberg_li::{Error, PrecisionContext};

use output::{digits_for, render, render_bound, write_output, Format, Table};

const MIN_PRECISION_BITS: u32 = 128;

#[derive(Parser)]
#[command(name = "selberg-li", version, about = "Generalized Li coefficients for Selberg-class L-functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate λ_F(n) by zero sums, the arithmetic formula and the asymptotic law.
    Li(LiArgs),
    /// Break H_n(m, k) into direct sum, main terms and residual.
    Hn(HnArgs),
    /// Run the calibration checks.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 128)]
    precision_bits: u32,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct LiArgs {
    #[arg(long, conflicts_with = "descriptor", required_unless_present = "descriptor")]
    preset: Option<String>,
    #[arg(long)]
    descriptor: Option<PathBuf>,
    /// Zero ordinates, one per line; the vendored table is used for zeta.
    #[arg(long)]
    zeros: Option<PathBuf>,
    /// Accuracy of the zero table in bits.
    #[arg(long, default_value_t = 64)]
    zeros_bits: u32,
    #[arg(long, default_value = "1..20", conflicts_with = "n_log")]
    n: String,
    #[arg(long, requires = "count")]
    n_log: Option<String>,
    #[arg(long)]
    count: Option<usize>,
    /// Comma-separated subset of zero-sum, arithmetic, asymptotic, or "all".
    #[arg(long)]
    methods: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct HnArgs {
    #[arg(long, default_value = "1")]
    m: String,
    #[arg(long, default_value = "1")]
    k: String,
    #[arg(long, default_value = "1..20")]
    n: String,
    /// Log-spaced samples over the --n range.
    #[arg(long)]
    log: bool,
    #[arg(long, default_value_t = 15)]
    count: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 128)]
    precision_bits: u32,
    /// Zeta zero table to check instead of the vendored one.
    #[arg(long)]
    zeros: Option<PathBuf>,
    #[arg(long, default_value_t = 64)]
    zeros_bits: u32,
}

/// Failure with its exit status.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }

    fn numeric(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::UnknownPreset(_)
            | Error::InvalidDescriptor(_)
            | Error::MissingArithmeticData(_)
            | Error::UnsupportedDescriptor(_)
            | Error::InvalidArgument(_) => 1,
            e if e.is_data_error() => 3,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<range::RangeError> for Failure {
    fn from(e: range::RangeError) -> Self {
        Failure::usage(e.0)
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Li(a) => cmd_li(a),
        Command::Hn(a) => cmd_hn(a),
        Command::Selftest(a) => selftest::run(a.precision_bits, a.zeros.as_deref(), a.zeros_bits),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn check_precision(bits: u32) -> CmdResult {
    if bits < MIN_PRECISION_BITS {
        return Err(Failure::usage(format!("--precision-bits must be at least {MIN_PRECISION_BITS}")));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Selection {
    zero_sum: bool,
    arithmetic: bool,
    asymptotic: bool,
}

fn parse_methods(list: &str) -> std::result::Result<Selection, Failure> {
    let mut s = Selection { zero_sum: false, arithmetic: false, asymptotic: false };
    for item in list.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        match item {
            "zero-sum" => s.zero_sum = true,
            "arithmetic" => s.arithmetic = true,
            "asymptotic" => s.asymptotic = true,
            "all" => s = Selection { zero_sum: true, arithmetic: true, asymptotic: true },
            other => return Err(Failure::usage(format!("unknown method `{other}`"))),
        }
    }
    if s == (Selection { zero_sum: false, arithmetic: false, asymptotic: false }) {
        return Err(Failure::usage("--methods selects nothing"));
    }
    Ok(s)
}

fn is_zeta(f: &SelbergDescriptor) -> bool {
    matches!(f.arithmetic, selberg_li::selberg::ArithmeticData::VonMangoldt) && f.gamma_factors.len() == 1
}

fn cmd_li(a: LiArgs) -> CmdResult {
    let bits = a.common.precision_bits;
    check_precision(bits)?;
    let ctx = PrecisionContext::new(bits);
    let f = match (&a.preset, &a.descriptor) {
        (Some(name), _) => preset(name)?,
        (None, Some(path)) => load_descriptor(path)?,
        (None, None) => return Err(Failure::usage("one of --preset or --descriptor is required")),
    };
    f.validate(&ctx)?;
    let ns = match &a.n_log {
        Some(spec) => range::log_spaced(spec, a.count.unwrap_or(0))?,
        None => range::linear(&a.n)?,
    };
    let n_max = ns.iter().copied().max().unwrap_or(0);

    let zeros: Option<Arc<ZeroTable>> = match &a.zeros {
        Some(path) => Some(Arc::new(load_zero_table(path, a.zeros_bits)?)),
        None if is_zeta(&f) => Some(vendored_zeta_zeros()),
        None => None,
    };
    let sel = match &a.methods {
        Some(list) => {
            let s = parse_methods(list)?;
            if s.zero_sum && zeros.is_none() {
                return Err(Failure::usage(format!("zero-sum method needs --zeros for `{}`", f.name)));
            }
            s
        }
        None => Selection {
            zero_sum: zeros.is_some(),
            arithmetic: f.has_arithmetic_data() && n_max <= MAX_ETA_INDEX as u64 + 1,
            asymptotic: true,
        },
    };

    let records = li_records(
        &f,
        &ns,
        zeros.as_deref(),
        Methods { zero_sum: sel.zero_sum, arithmetic: sel.arithmetic },
        &ctx,
    )?;
    let report = positivity_report(&records);

    let digits = digits_for(bits);
    let opt = |x: &Option<rug::Float>| x.as_ref().map(|v| render(v, digits)).unwrap_or_default();
    let opt_bound = |x: &Option<rug::Float>| x.as_ref().map(render_bound).unwrap_or_default();
    let mut table = Table::new(vec![
        "n",
        "zero_sum",
        "zero_sum_tail_bound",
        "arithmetic",
        "arithmetic_error",
        "asymptotic",
        "residual_asym",
        "positivity",
    ]);
    for (r, (_, flag)) in records.iter().zip(&report.flags) {
        let (asym, resid) = if sel.asymptotic {
            (render(&r.asymptotic, digits), if r.best().is_some() { render(&r.residual_asym, digits) } else { String::new() })
        } else {
            (String::new(), String::new())
        };
        table.push(vec![
            r.n.to_string(),
            opt(&r.zero_sum),
            opt_bound(&r.zero_sum_tail_bound),
            opt(&r.arithmetic),
            opt_bound(&r.arithmetic_error),
            asym,
            resid,
            flag.as_str().to_string(),
        ]);
    }
    for (n, flag) in report.flagged() {
        log::warn!("n = {n}: {}", flag.as_str());
    }
    let meta = [
        ("command", "li".to_string()),
        ("l_function", f.name.clone()),
        ("precision_bits", bits.to_string()),
        ("zero_table", zeros.as_ref().map(|z| z.label().to_string()).unwrap_or_default()),
        ("positive", report.positive.to_string()),
        ("negative", report.negative.to_string()),
        ("indeterminate", report.indeterminate.to_string()),
    ];
    emit(&table, a.common.format, &meta, a.common.out.as_deref())
}

fn parse_positive(s: &str, what: &str) -> std::result::Result<Rational, Failure> {
    let v = parse_exact(s).map_err(|e| Failure::usage(format!("--{what}: {e}")))?;
    if v <= 0 {
        return Err(Failure::usage(format!("--{what} must be positive")));
    }
    Ok(v)
}

fn cmd_hn(a: HnArgs) -> CmdResult {
    let bits = a.common.precision_bits;
    check_precision(bits)?;
    let ctx = PrecisionContext::new(bits);
    let m = parse_positive(&a.m, "m")?;
    let k = parse_positive(&a.k, "k")?;
    let ns = if a.log { range::log_spaced(&a.n, a.count)? } else { range::linear(&a.n)? };
    if ns.first() == Some(&0) {
        return Err(Failure::usage("H_n needs n >= 1"));
    }
    let n_max = ns.iter().copied().max().unwrap_or(1);
    let sweep = HnSweep::new(&m, &k, n_max, &ctx)?;
    let rows = sweep.breakdowns(&ns, &ctx)?;

    let digits = digits_for(bits);
    let mut table = Table::new(vec![
        "n",
        "direct",
        "direct_error_bound",
        "main_terms",
        "residual",
        "an_predicted",
        "ratio",
        "error_bound",
        "cos_phase",
        "an_rederived",
        "ratio_rederived",
        "envelope",
    ]);
    let ratio = |num: &rug::Float, den: &rug::Float| {
        if den.is_zero() {
            "0".to_string()
        } else {
            render(&rug::Float::with_val(64, num / den), 12)
        }
    };
    for b in &rows {
        if !b.residual.is_finite() {
            return Err(Failure::numeric(format!("H_{} residual is not finite", b.n)));
        }
        table.push(vec![
            b.n.to_string(),
            render(&b.direct_value, digits),
            render_bound(&b.direct_error_bound),
            render(&b.main_terms, digits),
            render(&b.residual, digits),
            render(&b.an_predicted, digits),
            ratio(&b.residual, &b.an_predicted),
            render_bound(&b.an_error_bound),
            render(&b.cos_phase, 12),
            render(&b.an_rederived, digits),
            ratio(&b.residual, &b.an_rederived),
            render(&b.envelope, 12),
        ]);
    }
    let meta = [
        ("command", "hn".to_string()),
        ("m", m.to_string()),
        ("k", k.to_string()),
        ("precision_bits", bits.to_string()),
    ];
    emit(&table, a.common.format, &meta, a.common.out.as_deref())
}

fn emit(table: &Table, format: Format, meta: &[(&str, String)], out: Option<&std::path::Path>) -> CmdResult {
    let bytes = table.to_bytes(format, meta).map_err(|e| Failure::numeric(format!("rendering output: {e}")))?;
    write_output(out, &bytes).map_err(|e| Failure { code: 3, message: format!("writing output: {e}") })
}
