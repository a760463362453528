//! Certified bounds on the infinite products behind every construction.
//!
//! All of them have the shape `∏_{j≥1} (1 + x·j^{-e})` with `e > 1`. The
//! first `s` factors are multiplied out (as a compensated sum of `ln_1p`
//! terms) and the tail is majorized by
//! `exp(x Σ_{j>s} j^{-e}) ≤ exp(x / ((e−1)(s+1/2)^{e−1}))`, the midpoint
//! bound for the convex integrand.

use crate::error::{Error, Result};
use crate::summation::Compensated;
use crate::weights::{Conjugate, WeightParams};

/// Largest truncation point tried by [`choose_s`].
pub const MAX_TRUNCATION: u64 = 1 << 31;

/// Smallest truncation point tried by [`choose_s`].
pub const MIN_TRUNCATION: u64 = 64;

/// Fraction of `ε^{p*}` that the overestimate of the total mass may consume.
pub const SLACK_FRACTION: f64 = 1e-3;

/// An upper bound `value` on an infinite product together with a certified
/// bound on its overestimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TailBound {
    pub value: f64,
    pub s: u64,
    pub slack_bound: f64,
}

impl TailBound {
    /// A certified lower bound on the true product.
    pub fn lower(&self) -> f64 {
        self.value - self.slack_bound
    }
}

/// Bound for `∏_{j≥1} (1 + factor·j^{-exponent})`.
pub(crate) fn product_bound(factor: f64, exponent: f64, s: u64) -> Result<TailBound> {
    if s == 0 {
        return Err(Error::InvalidTruncation);
    }
    debug_assert!(exponent > 1.0);
    let mut ln_head = Compensated::default();
    for j in 1..=s {
        ln_head += (factor * (j as f64).powf(-exponent)).ln_1p();
    }
    let ln_head = ln_head.value();
    let tail_exponent = factor / ((exponent - 1.0) * (s as f64 + 0.5).powf(exponent - 1.0));
    let head = ln_head.exp();
    Ok(TailBound {
        value: (ln_head + tail_exponent).exp(),
        s,
        slack_bound: tail_exponent.exp_m1() * head,
    })
}

/// `A_s`, an upper bound on `A = Σ_u γ̄_u = ∏_j (1 + (c/j^a)^{p*}/(p*+1))`.
pub fn a_s_bound(params: &WeightParams, s: u64) -> Result<TailBound> {
    let w = params.modified_weights()?;
    product_bound(w.factor, w.exponent, s)
}

/// Upper bound on `Σ_u γ̄_u^t` for `t ∈ (1/(a p*), 1)`.
pub fn power_sum_bound(params: &WeightParams, t: f64, s: u64) -> Result<TailBound> {
    let w = params.modified_weights()?;
    let lower = 1.0 / w.exponent;
    if !(t > lower && t < 1.0) {
        return Err(Error::InvalidExponent { t, lower });
    }
    product_bound(w.factor.powf(t), w.exponent * t, s)
}

/// Smallest `s ∈ {64, 128, 256, …}` whose `A_s` overestimate is at most
/// `10^{-3}·ε^{p*}`.
pub fn choose_s(params: &WeightParams, eps: f64) -> Result<u64> {
    let target = SLACK_FRACTION * params.budget(eps)?;
    let mut s = MIN_TRUNCATION;
    while s <= MAX_TRUNCATION {
        if a_s_bound(params, s)?.slack_bound <= target {
            return Ok(s);
        }
        s *= 2;
    }
    Err(Error::TruncationExhausted {
        max: MAX_TRUNCATION,
        target,
    })
}

/// Truncation used by [`operator_norm`]: relative slack below `1e-13`, or `2^24`.
const NORM_MAX_TRUNCATION: u64 = 1 << 24;

/// Norm of the integration functional.
///
/// For finite `p*` this is `(∏_j (1 + c^{p*}/(j^{a p*}(p*+1))))^{1/p*}`,
/// evaluated as an upper bound with the same tail majorant as `A_s`. For
/// `p = 1` it is `sup_u γ_u = ∏_{j: c/j^a > 1} c/j^a`.
pub fn operator_norm(params: &WeightParams) -> Result<f64> {
    match params.p_star() {
        Conjugate::Infinite => Ok(sup_gamma(params)),
        Conjugate::Finite(q) => {
            let mut s = MIN_TRUNCATION;
            loop {
                let bound = a_s_bound(params, s)?;
                if bound.slack_bound <= 1e-13 * bound.value || s >= NORM_MAX_TRUNCATION {
                    return Ok(bound.value.powf(1.0 / q));
                }
                s *= 2;
            }
        }
    }
}

/// Certified `(lower, upper)` bounds on the operator norm from truncation `s`.
pub fn operator_norm_bounds(params: &WeightParams, s: u64) -> Result<(f64, f64)> {
    match params.p_star() {
        Conjugate::Infinite => {
            let v = sup_gamma(params);
            Ok((v, v))
        }
        Conjugate::Finite(q) => {
            let bound = a_s_bound(params, s)?;
            Ok((bound.lower().powf(1.0 / q), bound.value.powf(1.0 / q)))
        }
    }
}

fn sup_gamma(params: &WeightParams) -> f64 {
    let w = params.weights();
    let mut value = 1.0;
    let mut j = 1u32;
    loop {
        let x = w.element(j);
        if x <= 1.0 {
            return value;
        }
        value *= x;
        j += 1;
    }
}
