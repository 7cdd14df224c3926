//! Exact gap probabilities via the transfer-matrix recursion, and the
//! closed-form upper bounds they are checked against.

use super::{f_raw, g_raw, AnalyticsError};
use crate::model::Variant;

/// Which gap condition is evaluated.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GapMode {
    /// No two adjacent lines both entirely empty.
    DoubleGap,
    /// No line entirely empty.
    SingleGap,
}

/// Log-probability that `n` independent lines, each empty with probability
/// `empty_prob`, contain no forbidden gap.
///
/// DoubleGap follows the linear recursion N_k = (1-u) N_{k-1} +
/// u (1-u) N_{k-2} with N_0 = N_1 = 1, carried as normalized ratios so the
/// value stays accurate up to n around 10^6.
pub fn no_double_gap_log(n: u64, empty_prob: f64, mode: GapMode) -> Result<f64, AnalyticsError> {
    if !(0.0..=1.0).contains(&empty_prob) {
        return Err(AnalyticsError::UnitInterval(empty_prob));
    }
    let u = empty_prob;
    match mode {
        GapMode::SingleGap => Ok(n as f64 * (-u).ln_1p()),
        GapMode::DoubleGap => {
            if n <= 1 {
                return Ok(0.0);
            }
            if u == 1.0 {
                // Every line is surely empty, so two adjacent lines gap.
                return Ok(f64::NEG_INFINITY);
            }
            // d_k = 1 - N_k / N_{k-1}; the deficit recursion keeps full
            // precision when u^2 drops below the epsilon of 1.
            let mut log_prob = 0.0;
            let mut deficit = 0.0f64; // d_1 = 0
            for _ in 2..=n {
                deficit = u * (u - deficit) / (1.0 - deficit);
                log_prob += (-deficit).ln_1p();
            }
            Ok(log_prob)
        }
    }
}

/// Probability form of [`no_double_gap_log`]; may underflow to 0 for very
/// long lines.
pub fn no_double_gap_exact(n: u64, empty_prob: f64, mode: GapMode) -> Result<f64, AnalyticsError> {
    Ok(no_double_gap_log(n, empty_prob, mode)?.exp())
}

/// Closed-form upper bound for the no-gap probability of the columns of an
/// a x b rectangle: exp(-(a-1) g(b q)) for the standard model's double-gap
/// condition, exp(-a f(b q)) for the variants' no-empty-column condition.
pub fn double_gap_bound(a: u64, b: u64, q: f64, variant: Variant) -> Result<f64, AnalyticsError> {
    Ok(double_gap_bound_log(a, b, q, variant)?.exp())
}

pub(crate) fn double_gap_bound_log(
    a: u64,
    b: u64,
    q: f64,
    variant: Variant,
) -> Result<f64, AnalyticsError> {
    if !(q > 0.0) {
        return Err(AnalyticsError::NonPositiveRate(q));
    }
    if a == 0 || b == 0 {
        return Err(AnalyticsError::NonPositiveRate(0.0));
    }
    let z = b as f64 * q;
    Ok(match variant {
        Variant::Standard => -((a - 1) as f64) * g_raw(z),
        Variant::Modified | Variant::Frobose => -(a as f64) * f_raw(z),
    })
}

/// Upper bound for the border event between nested rectangles of dimensions
/// (a, b) and (a+s, b+t).
///
/// Standard: exp(-s g(bq) - t g(aq) + 2[g(bq) + g(aq)] + s t q e^{2[g(bq)+g(aq)]}).
/// Modified: f replaces g and the additive prefactor 2 becomes 1.
/// Frobose: f replaces g and the s t summand is absent entirely.
pub fn border_bound(
    a: u64,
    b: u64,
    s: u64,
    t: u64,
    q: f64,
    variant: Variant,
) -> Result<f64, AnalyticsError> {
    if !(q > 0.0) {
        return Err(AnalyticsError::NonPositiveRate(q));
    }
    if a == 0 || b == 0 {
        return Err(AnalyticsError::NonPositiveRate(0.0));
    }
    let (s, t) = (s as f64, t as f64);
    let rate = |z: f64| super::rate_raw(z, variant);
    let rb = rate(b as f64 * q);
    let ra = rate(a as f64 * q);
    let exponent = match variant {
        Variant::Standard => {
            -s * rb - t * ra + 2.0 * (rb + ra) + s * t * q * (2.0 * (rb + ra)).exp()
        }
        Variant::Modified => -s * rb - t * ra + (rb + ra) + s * t * q * (2.0 * (rb + ra)).exp(),
        Variant::Frobose => -s * rb - t * ra + 2.0 * (rb + ra),
    };
    Ok(exponent.exp())
}
