//! Growth-bound numerics.
//!
//! `g(η) = 30^η η^{-η} (1-η)^{η-1}` bounds the exponential growth of geodesics
//! with few Δ-occurrences; `λ^{1-η}` bounds the rest. The bound on the growth
//! rate after one priming step is the crossing value of the two curves, and
//! iterating it from `Λ_1 = 2` gives a sequence decreasing to 1.

use serde::Serialize;

use crate::error::BoundError;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const MAX_BISECTIONS: usize = 200;
/// Lower end of the bisection window.
pub const ETA_FLOOR: f64 = 1e-12;
/// `g` increases on `(0, 30/31)` and reaches its maximum 31 there.
pub const ETA_PEAK: f64 = 30.0 / 31.0;

pub(crate) fn check_eta(eta: f64) -> Result<(), BoundError> {
    if eta > 0.0 && eta < 1.0 {
        Ok(())
    } else {
        Err(BoundError::EtaOutOfRange(eta))
    }
}

/// `ln g(η) = η ln 30 − η ln η − (1−η) ln(1−η)`.
pub fn ln_g(eta: f64) -> Result<f64, BoundError> {
    check_eta(eta)?;
    Ok(eta * 30f64.ln() - eta * eta.ln() - (1.0 - eta) * (1.0 - eta).ln())
}

pub fn g_eta(eta: f64) -> Result<f64, BoundError> {
    ln_g(eta).map(f64::exp)
}

/// One step `Λ_{n+1} = Λ_n^{1-η_n} = g(η_n)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EtaStep {
    pub n: usize,
    pub lambda_n: f64,
    pub eta_n: f64,
    pub lambda_next: f64,
    pub residual: f64,
}

fn crossing_gap(eta: f64, ln_lambda: f64) -> f64 {
    // h(η) = ln g(η) − (1−η) ln λ, negative near 0 and increasing up to 30/31
    ln_g(eta).expect("eta inside the window") - (1.0 - eta) * ln_lambda
}

/// The unique `η ∈ (0, 30/31]` with `λ^{1-η} = g(η)`, by bisection.
pub fn solve_crossing(lambda: f64, tol: f64) -> Result<EtaStep, BoundError> {
    if lambda.is_nan() || lambda <= 1.0 + tol {
        return Err(BoundError::LambdaTooSmall { lambda, tol });
    }
    if lambda > 31.0 {
        return Err(BoundError::LambdaTooLarge(lambda));
    }
    let ln_lambda = lambda.ln();
    let (mut lo, mut hi) = (ETA_FLOOR, ETA_PEAK);
    debug_assert!(crossing_gap(lo, ln_lambda) < 0.0);
    debug_assert!(crossing_gap(hi, ln_lambda) >= 0.0);
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if crossing_gap(mid, ln_lambda) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let residual_at = |eta: f64| (lambda.powf(1.0 - eta) - g_eta(eta).unwrap()).abs();
    let eta = if residual_at(lo) <= residual_at(hi) {
        lo
    } else {
        hi
    };
    Ok(EtaStep {
        n: 0,
        lambda_n: lambda,
        eta_n: eta,
        lambda_next: lambda.powf(1.0 - eta),
        residual: residual_at(eta),
    })
}

/// `steps` iterations of the crossing map starting from `Λ_1 = 2`.
pub fn lambda_sequence(steps: usize, tol: f64) -> Result<Vec<EtaStep>, BoundError> {
    let mut out = Vec::with_capacity(steps);
    let mut lambda = 2.0;
    for n in 1..=steps {
        let mut step = solve_crossing(lambda, tol)?;
        step.n = n;
        lambda = step.lambda_next;
        out.push(step);
    }
    Ok(out)
}

/// `inf_η max{λ^{1-η}, g(η)}`: the crossing value for `λ > 1`, and 1 otherwise.
pub fn eval_growth_bound(lambda: f64, tol: f64) -> Result<f64, BoundError> {
    if lambda <= 1.0 + tol {
        return Ok(1.0);
    }
    Ok(solve_crossing(lambda, tol)?.lambda_next)
}

pub fn lambda_csv(steps: &[EtaStep]) -> String {
    let mut out = String::from("n,lambda_n,eta_n,residual\n");
    for s in steps {
        out.push_str(&format!(
            "{},{:.15},{:.15},{:.3e}\n",
            s.n, s.lambda_n, s.eta_n, s.residual
        ));
    }
    out
}

/// The curves `λ^{1-η}` and `g(η)` for `η = 0.01, 0.02, …, 0.99`.
pub fn curves_csv(lambda: f64) -> String {
    let mut out = String::from("eta,pow_curve,g_curve\n");
    for i in 1..100 {
        let eta = i as f64 / 100.0;
        out.push_str(&format!(
            "{eta:.2},{:.12},{:.12}\n",
            lambda.powf(1.0 - eta),
            g_eta(eta).unwrap()
        ));
    }
    out
}
