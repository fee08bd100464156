use rug::Float;

use crate::precision::PrecisionContext;
use crate::selberg::SelbergDescriptor;

/// (d_F/2) n log n + c_F n.
pub fn lambda_asymptotic(f: &SelbergDescriptor, n: u64, ctx: &PrecisionContext) -> Float {
    let p = ctx.working_bits();
    if n == 0 {
        return ctx.zero();
    }
    let half_d = Float::with_val(p, &f.degree()) / 2u32;
    let nf = Float::with_val(p, n);
    let lead = half_d * Float::with_val(p, nf.ln_ref()) * n;
    lead + f.c_constant(ctx) * n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::selberg::preset;

    #[test]
    fn zeta_at_hundred() {
        let c = PrecisionContext::new(128);
        let v = lambda_asymptotic(&preset("riemann-zeta").unwrap(), 100, &c).to_f64();
        assert!((v - 117.2255).abs() < 1e-3);
    }

    #[test]
    fn n_one_is_c() {
        let c = PrecisionContext::new(128);
        let f = preset("hecke(11)").unwrap();
        assert_eq!(lambda_asymptotic(&f, 1, &c), f.c_constant(&c));
    }

    #[test]
    fn degree_by_regression() {
        // λ/n = (d/2) log n + c is linear in log n; the fitted slope gives d/2.
        let c = PrecisionContext::new(128);
        for name in ["riemann-zeta", "hecke(5)", "gl(4)-toy"] {
            let f = preset(name).unwrap();
            let pts: Vec<(f64, f64)> = (0..=30)
                .map(|i| {
                    let n = (1e3 * 1e3f64.powf(i as f64 / 30.0)).round() as u64;
                    ((n as f64).ln(), lambda_asymptotic(&f, n, &c).to_f64() / n as f64)
                })
                .collect();
            let k = pts.len() as f64;
            let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
            let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
            let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
            let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
            let d = 2.0 * sxy / sxx;
            let want = f.degree().to_f64();
            assert!((d - want).abs() / want < 1e-6, "{name}: {d}");
        }
    }
}
