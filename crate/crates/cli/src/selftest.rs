//! Calibration checks with known answers.

use std::path::Path;

use rug::float::Constant;
use rug::Float;

use selberg_li::licoeff::{li_records, Methods, ZeroSumEvaluator};
use selberg_li::nrsum::residue::kernels::{Cosine, Reciprocal, SinExp};
use selberg_li::nrsum::{alt_binomial_sum, nr_residue_check, AnalyticKernel, KernelSequence};
use selberg_li::precision::pow2;
use selberg_li::selberg::{load_zero_table, preset, vendored_zeta_zeros, ZeroTable};
use selberg_li::specfun::hurwitz_zeta_real;
use selberg_li::PrecisionContext;

use crate::{check_precision, CmdResult, Failure};

/// Bits of the target the exact-identity checks may lose.
const SLACK_BITS: u32 = 16;
const RESIDUE_N_MAX: u64 = 12;
const RESIDUE_QUAD_POINTS: usize = 64;

struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn check(name: &'static str, pass: bool, detail: String) -> Check {
    Check { name, pass, detail }
}

fn failed(name: &'static str, detail: impl std::fmt::Display) -> Check {
    check(name, false, detail.to_string())
}

/// 1 + γ/2 - log(4π)/2.
fn lambda1_closed_form(ctx: &PrecisionContext) -> Float {
    let w = ctx.working_bits();
    let gamma = Float::with_val(w, Constant::Euler);
    let four_pi = Float::with_val(w, Constant::Pi) * 4u32;
    Float::with_val(w, 1) + gamma / 2u32 - four_pi.ln() / 2u32
}

fn e(x: &Float) -> String {
    format!("{:.3e}", x.to_f64())
}

fn lambda_checks(ctx: &PrecisionContext, zeros: Result<std::sync::Arc<ZeroTable>, String>) -> Vec<Check> {
    let w = ctx.working_bits();
    let exact = lambda1_closed_form(ctx);
    let zeta = preset("riemann-zeta").expect("zeta preset");
    let tol = pow2(64, -((ctx.target_bits() - SLACK_BITS) as i32));
    let mut out = Vec::new();

    let arith = li_records(&zeta, &[1, 2], None, Methods { zero_sum: false, arithmetic: true }, ctx);
    let arith = match arith {
        Ok(r) => Some(r),
        Err(err) => {
            out.push(failed("lambda1-arithmetic", err));
            None
        }
    };
    if let Some(r) = &arith {
        let d = Float::with_val(w, r[0].arithmetic.as_ref().unwrap() - &exact).abs();
        let bound = r[0].arithmetic_error.clone().unwrap().max(&tol);
        out.push(check("lambda1-arithmetic", d <= bound, format!("|diff| {} <= {}", e(&d), e(&bound))));
    }

    let sums = zeros.and_then(|z| {
        let ev = ZeroSumEvaluator::new(&z, z.max_ordinate(), ctx).map_err(|e| e.to_string())?;
        Ok(ev.sweep(2))
    });
    match &sums {
        Ok(s) => {
            let gap = Float::with_val(w, &exact - &s[1].value);
            let pass = gap >= 0 && gap <= s[1].tail_bound;
            out.push(check(
                "lambda1-zero-sum",
                pass,
                format!("closed form - zero sum = {} in [0, {}]", e(&gap), e(&s[1].tail_bound)),
            ));
        }
        Err(msg) => out.push(failed("lambda1-zero-sum", msg)),
    }
    match (&sums, &arith) {
        (Ok(s), Some(r)) => {
            let gap = Float::with_val(w, r[1].arithmetic.as_ref().unwrap() - &s[2].value);
            let err = r[1].arithmetic_error.as_ref().unwrap();
            let hi = Float::with_val(w, &s[2].tail_bound + err);
            let pass = gap >= Float::with_val(w, -err) && gap <= hi;
            out.push(check("lambda2-cross-method", pass, format!("arithmetic - zero sum = {} within [0, {}]", e(&gap), e(&hi))));
        }
        _ => out.push(failed("lambda2-cross-method", "an input method failed")),
    }
    out
}

fn hurwitz_check(ctx: &PrecisionContext) -> Check {
    let tol = pow2(64, -((ctx.target_bits() - SLACK_BITS) as i32));
    let mut worst = Float::new(64);
    for q in [0.25, 0.5, 1.0, 2.5, 7.0, 31.75] {
        let qf = ctx.real(q);
        match hurwitz_zeta_real(&ctx.zero(), &qf, ctx) {
            Ok(v) => {
                let d = Float::with_val(ctx.working_bits(), v - (ctx.real(0.5) - &qf)).abs();
                if d > worst {
                    worst = Float::with_val(64, &d);
                }
            }
            Err(err) => return failed("hurwitz-zeta-at-zero", format!("q = {q}: {err}")),
        }
    }
    check("hurwitz-zeta-at-zero", worst <= tol, format!("max |zeta(0,q) - (1/2 - q)| = {}", e(&worst)))
}

fn residue_check(ctx: &PrecisionContext) -> Check {
    let tol = pow2(64, -((ctx.target_bits() - SLACK_BITS) as i32));
    let kernels: [&dyn AnalyticKernel; 3] = [&Reciprocal(0.5), &Cosine, &SinExp];
    let mut worst = Float::new(64);
    for k in kernels {
        for n0 in [0u64, 2] {
            for n in n0.max(1)..=RESIDUE_N_MAX {
                let pair = nr_residue_check(k, n, n0, None, RESIDUE_QUAD_POINTS, ctx)
                    .and_then(|a| Ok((a, alt_binomial_sum(&KernelSequence(k), n, n0, ctx)?)));
                let (a, b) = match pair {
                    Ok(p) => p,
                    Err(err) => return failed("residue-vs-sum", format!("{} n = {n}: {err}", k.name())),
                };
                let scale = Float::with_val(64, b.abs_ref()).max(&Float::with_val(64, 1));
                let d = Float::with_val(64, Float::with_val(ctx.working_bits(), &a - &b).abs() / scale);
                if d > worst {
                    worst = d;
                }
            }
        }
    }
    check("residue-vs-sum", worst <= tol, format!("max relative gap {}", e(&worst)))
}

pub fn run(bits: u32, zeros: Option<&Path>, zeros_bits: u32) -> CmdResult {
    check_precision(bits)?;
    let ctx = PrecisionContext::new(bits);
    let table = match zeros {
        Some(p) => load_zero_table(p, zeros_bits).map(std::sync::Arc::new).map_err(|e| e.to_string()),
        None => Ok(vendored_zeta_zeros()),
    };
    let mut checks = lambda_checks(&ctx, table);
    checks.push(hurwitz_check(&ctx));
    checks.push(residue_check(&ctx));

    let failures: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name).collect();
    for c in &checks {
        println!("{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    println!("{}/{} checks passed", checks.len() - failures.len(), checks.len());
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::numeric(format!("self-test failed: {}", failures.join(", "))))
    }
}
