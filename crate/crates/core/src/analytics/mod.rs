//! Closed-form rate functions, the threshold integrals, gap-probability
//! bounds, scale constants and the monotone-path functional.

mod gaps;
mod paths;
mod quadrature;

pub use gaps::{border_bound, double_gap_bound, no_double_gap_exact, no_double_gap_log, GapMode};
pub use paths::{path_weight, MonotonePath};
pub use quadrature::{integrate_adaptive, QuadOutcome};

use crate::model::Variant;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum AnalyticsError {
    #[error("argument {0} outside the domain [0, 1]")]
    UnitInterval(f64),
    #[error("rate functions require z > 0, got {0}")]
    NonPositiveRate(f64),
    #[error("probability must lie strictly inside (0, 1), got {0}")]
    ProbabilityOpenInterval(f64),
    #[error("tolerance must be at least 1e-12, got {0}")]
    ToleranceTooTight(f64),
    #[error("scale constants violate A >= 2, B > 2A at p = {p}: A = {a}, B = {b}")]
    DegenerateScales { p: f64, a: i64, b: i64 },
    #[error("correction constants must be nonnegative")]
    NegativeConstant,
    #[error("monotone path requires strictly positive, coordinatewise non-decreasing vertices")]
    InvalidPath,
}

/// beta(u) = (u + sqrt(u (4 - 3u))) / 2 on [0, 1].
pub fn beta(u: f64) -> Result<f64, AnalyticsError> {
    if !(0.0..=1.0).contains(&u) {
        return Err(AnalyticsError::UnitInterval(u));
    }
    Ok(beta_raw(u))
}

#[inline]
pub(crate) fn beta_raw(u: f64) -> f64 {
    0.5 * (u + (u * (4.0 - 3.0 * u)).sqrt())
}

/// The variant's rate function: g(z) = -log beta(1 - e^-z) for the standard
/// model, f(z) = -log(1 - e^-z) for the modified and Frobose models.
pub fn rate_function(z: f64, variant: Variant) -> Result<f64, AnalyticsError> {
    if !(z > 0.0) {
        return Err(AnalyticsError::NonPositiveRate(z));
    }
    Ok(rate_raw(z, variant))
}

#[inline]
pub(crate) fn rate_raw(z: f64, variant: Variant) -> f64 {
    match variant {
        Variant::Standard => g_raw(z),
        Variant::Modified | Variant::Frobose => f_raw(z),
    }
}

// g(z) = -log beta(1 - e^-z). Near u = 1 the direct formula loses the
// O(eps^2) gap to 1, so switch to the expansion g = eps^2 (1 - eps + ...)
// with eps = e^-z.
#[inline]
pub(crate) fn g_raw(z: f64) -> f64 {
    let eps = (-z).exp();
    if eps < 1e-4 {
        eps * eps * (1.0 - eps)
    } else {
        // u = 1 - e^-z computed without cancellation.
        let u = -(-z).exp_m1();
        -beta_raw(u).ln()
    }
}

// f(z) = -log(1 - e^-z), split so both branches keep full precision.
#[inline]
pub(crate) fn f_raw(z: f64) -> f64 {
    if z < 0.7 {
        -(-(-z).exp_m1()).ln()
    } else {
        -(-(-z).exp()).ln_1p()
    }
}

/// A certified integral value: `value` plus an `error_bound` that includes
/// the quadrature estimate, the head cutoff and the analytic tail bound.
#[derive(Clone, Copy, Debug)]
pub struct LambdaIntegral {
    pub value: f64,
    pub error_bound: f64,
    pub evaluations: u64,
}

// Integration window: the logarithmic singularity below HEAD_CUTOFF and the
// exponential tail beyond TAIL_CUTOFF are covered by analytic bounds added
// to the error budget instead of being integrated.
const HEAD_CUTOFF: f64 = 1e-14;
const TAIL_CUTOFF: f64 = 40.0;

/// int_0^infinity of the variant's rate function; pi^2/18 for g and pi^2/6
/// for f.
pub fn lambda_integral(variant: Variant, tolerance: f64) -> Result<LambdaIntegral, AnalyticsError> {
    if !(tolerance >= 1e-12) {
        return Err(AnalyticsError::ToleranceTooTight(tolerance));
    }
    // Head: rate(z) <= -k log z + log 2 + z on (0, z0] with k = 1/2 for g
    // and k = 1 for f, so the omitted mass is below z0 (1 + log 1/z0) + ...
    let z0 = HEAD_CUTOFF;
    let head_bound = z0 * (1.0 - z0.ln()) + z0 * (std::f64::consts::LN_2 + z0);
    // Tail: int_K^inf g ~ e^{-2K}/2 and int_K^inf f ~ e^{-K}; take a 10%
    // margin on the leading term.
    let tail_bound = match variant {
        Variant::Standard => 0.55 * (-2.0 * TAIL_CUTOFF).exp(),
        Variant::Modified | Variant::Frobose => 1.1 * (-TAIL_CUTOFF).exp(),
    };
    let budget = (tolerance - head_bound - tail_bound).max(tolerance * 0.5);
    let seeds: Vec<f64> = (1..14)
        .map(|k| 10f64.powi(-k))
        .chain([1.0, 5.0, 20.0])
        .collect();
    let f = move |z: f64| rate_raw(z, variant);
    let out = integrate_adaptive(&f, z0, TAIL_CUTOFF, budget, 20_000, &seeds);
    Ok(LambdaIntegral {
        value: out.value,
        error_bound: out.error + head_bound + tail_bound,
        evaluations: out.evaluations,
    })
}

/// q = -log(1 - p): the per-site emptiness exponent. A line of n sites is
/// entirely empty with probability e^{-n q}.
#[inline]
pub fn emptiness_exponent(p: f64) -> f64 {
    -(-p).ln_1p()
}

/// The working scales at density p: q, the good-region entry side
/// A = ceil(1/sqrt q) and the semiperimeter cap B = floor(log(1/q)/q).
#[derive(Clone, Copy, Debug)]
pub struct ScaleConstants {
    pub p: f64,
    pub q: f64,
    /// A: rectangles enter the good region once both sides reach this.
    pub min_side: i64,
    /// B: the good region ends where the semiperimeter exceeds this.
    pub semiperimeter_cap: i64,
    /// Set when p >= 0.1, outside the small-p regime the scales are built
    /// for; values are still computed.
    pub beyond_small_p: bool,
}

pub fn scale_constants(p: f64) -> Result<ScaleConstants, AnalyticsError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(AnalyticsError::ProbabilityOpenInterval(p));
    }
    let q = emptiness_exponent(p);
    let min_side = (1.0 / q.sqrt()).ceil() as i64;
    let semiperimeter_cap = ((1.0 / q).ln() / q).floor() as i64;
    let constants = ScaleConstants {
        p,
        q,
        min_side,
        semiperimeter_cap,
        beyond_small_p: p >= 0.1,
    };
    if p < 0.06 && !(min_side >= 2 && semiperimeter_cap > 2 * min_side) {
        return Err(AnalyticsError::DegenerateScales {
            p,
            a: min_side,
            b: semiperimeter_cap,
        });
    }
    Ok(constants)
}

/// The bracketing growth-probability expressions
/// exp((-2 lambda + c sqrt p) / p) and
/// exp((-2 lambda + C sqrt p (log 1/p)^k) / p), with the variant's lambda
/// and log power (3 for standard and modified, 2 for Frobose).
pub fn envelope(
    p: f64,
    c_lower: f64,
    c_upper: f64,
    variant: Variant,
) -> Result<(f64, f64), AnalyticsError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(AnalyticsError::ProbabilityOpenInterval(p));
    }
    if !(c_lower >= 0.0 && c_upper >= 0.0) {
        return Err(AnalyticsError::NegativeConstant);
    }
    let lambda = variant.lambda();
    let log_power = match variant {
        Variant::Standard | Variant::Modified => 3,
        Variant::Frobose => 2,
    };
    let sqrt_p = p.sqrt();
    let log_term = (1.0 / p).ln().powi(log_power);
    let lower = ((-2.0 * lambda + c_lower * sqrt_p) / p).exp();
    let upper = ((-2.0 * lambda + c_upper * sqrt_p * log_term) / p).exp();
    Ok((lower, upper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const PI2: f64 = std::f64::consts::PI * std::f64::consts::PI;

    #[test]
    fn beta_endpoints_and_midpoint() {
        assert_eq!(beta(0.0).unwrap(), 0.0);
        assert_eq!(beta(1.0).unwrap(), 1.0);
        // High-precision evaluation of the closed form at u = 1/2.
        assert_abs_diff_eq!(beta(0.5).unwrap(), 0.809016994374947424, epsilon = 1e-15);
        assert!(beta(1.2).is_err());
        assert!(beta(-0.1).is_err());
    }

    #[test]
    fn beta_monotone_and_dominates_identity() {
        let mut prev = 0.0;
        for k in 0..=1000 {
            let u = k as f64 / 1000.0;
            let b = beta(u).unwrap();
            assert!(b >= u - 1e-15, "beta({u}) = {b} < u");
            assert!(b >= prev - 1e-15);
            prev = b;
        }
    }

    #[test]
    fn rate_function_fixed_points() {
        let ln2 = std::f64::consts::LN_2;
        // f(ln 2) = ln 2 since 1 - e^{-ln 2} = 1/2.
        assert_abs_diff_eq!(
            rate_function(ln2, Variant::Modified).unwrap(),
            ln2,
            epsilon = 1e-15
        );
        // g(ln 2) = -ln beta(1/2) = -ln((1 + sqrt 5)/4); frozen from a
        // 30-digit evaluation of the closed form.
        assert_abs_diff_eq!(
            rate_function(ln2, Variant::Standard).unwrap(),
            0.211935355500341862,
            epsilon = 1e-14
        );
        assert!(rate_function(0.0, Variant::Standard).is_err());
        assert!(rate_function(-1.0, Variant::Frobose).is_err());
    }

    #[test]
    fn g_below_f_pointwise() {
        for &z in &[0.1, 1.0, 3.0] {
            let g = rate_function(z, Variant::Standard).unwrap();
            let f = rate_function(z, Variant::Frobose).unwrap();
            assert!(g < f, "g({z}) = {g} not below f({z}) = {f}");
        }
    }

    #[test]
    fn rates_positive_decreasing_convex_on_geometric_grid() {
        for variant in [Variant::Standard, Variant::Modified] {
            let grid: Vec<f64> = (0..=120)
                .map(|k| 1e-6 * (40.0f64 / 1e-6).powf(k as f64 / 120.0))
                .collect();
            let vals: Vec<f64> = grid.iter().map(|&z| rate_raw(z, variant)).collect();
            for w in vals.windows(2) {
                assert!(w[0] > 0.0);
                assert!(w[0] >= w[1], "rate must be decreasing");
            }
            // Convexity via midpoint finite differences on the grid.
            for w in grid.windows(3) {
                let (z0, z2) = (w[0], w[2]);
                let mid = 0.5 * (z0 + z2);
                let chord = 0.5 * (rate_raw(z0, variant) + rate_raw(z2, variant));
                assert!(
                    rate_raw(mid, variant) <= chord + 1e-12,
                    "convexity violated near z = {mid}"
                );
            }
        }
    }

    #[test]
    fn g_small_z_asymptotic() {
        // g(eps) ~ (1/2) log(1/eps): within 5% at eps = 1e-4 and 1e-6.
        for &eps in &[1e-4, 1e-6] {
            let ratio = g_raw(eps) / (0.5 * (1.0 / eps).ln());
            assert!((ratio - 1.0).abs() < 0.05, "ratio {ratio} at eps {eps}");
        }
    }

    #[test]
    fn g_large_z_matches_eps_squared_expansion() {
        // Continuity across the expansion switchover and agreement with the
        // e^{-2z} tail law.
        for &z in &[9.0, 9.21, 9.5, 12.0, 30.0] {
            let eps = (-z).exp();
            let expect = eps * eps * (1.0 - eps);
            let got = g_raw(z);
            assert!(
                ((got - expect) / expect).abs() < 1e-3,
                "g({z}) = {got} vs expansion {expect}"
            );
        }
    }

    #[test]
    fn lambda_integral_hits_closed_forms() {
        let std = lambda_integral(Variant::Standard, 1e-10).unwrap();
        assert!(
            (std.value - PI2 / 18.0).abs() < 1e-8,
            "standard lambda {} error bound {}",
            std.value,
            std.error_bound
        );
        assert!(std.error_bound <= 1e-10);
        let modi = lambda_integral(Variant::Modified, 1e-10).unwrap();
        assert!((modi.value - PI2 / 6.0).abs() < 1e-8);
        let frob = lambda_integral(Variant::Frobose, 1e-10).unwrap();
        assert!((frob.value - PI2 / 6.0).abs() < 1e-8);
        assert!(lambda_integral(Variant::Standard, 1e-13).is_err());
    }

    #[test]
    fn g_tail_beyond_truncation_is_negligible() {
        // int_K^inf g ~ e^{-2K}/2 (checked at K = 5 and 10), so the mass
        // beyond 40 sits far below 1e-30.
        for (k, rel_tol) in [(5.0, 0.02), (10.0, 1e-3)] {
            let tail = integrate_adaptive(&g_raw, k, 80.0, 1e-16, 4000, &[k + 1.0, k + 5.0]);
            let asymptotic = 0.5 * (-2.0 * k).exp();
            assert!(
                ((tail.value - asymptotic) / asymptotic).abs() < rel_tol,
                "tail at {k}: {} vs {asymptotic}",
                tail.value
            );
        }
        assert!(0.55 * (-2.0f64 * TAIL_CUTOFF).exp() < 1e-30);
    }

    #[test]
    fn scale_constants_at_p_one_tenth() {
        let sc = scale_constants(0.1).unwrap();
        assert_abs_diff_eq!(sc.q, 0.105360515657826301, epsilon = 1e-15);
        assert_eq!(sc.min_side, 4);
        assert_eq!(sc.semiperimeter_cap, 21);
        assert!(sc.beyond_small_p);
        assert!(!scale_constants(0.05).unwrap().beyond_small_p);
    }

    #[test]
    fn q_approaches_p_from_above() {
        for &p in &[1e-6, 1e-4, 0.01] {
            let q = emptiness_exponent(p);
            assert!(q > p);
            assert!(q / p < 1.0 + p, "q/p should be 1 + O(p)");
        }
    }

    #[test]
    fn min_side_times_sqrt_q_at_least_one() {
        for k in 1..=60 {
            let p = k as f64 * 0.0016;
            let sc = scale_constants(p).unwrap();
            assert!(sc.min_side as f64 * sc.q.sqrt() >= 1.0);
        }
    }

    #[test]
    fn envelope_examples() {
        // Zero constants collapse both sides to exp(-2 lambda / p).
        let (lo, hi) = envelope(0.2, 0.0, 0.0, Variant::Modified).unwrap();
        let expect = (-2.0 * (PI2 / 6.0) / 0.2).exp();
        assert_abs_diff_eq!(lo, expect, epsilon = 1e-18);
        assert_abs_diff_eq!(hi, expect, epsilon = 1e-18);
        // Frozen from a 30-digit evaluation at p = 0.1, c = C = 1.
        let (lo, hi) = envelope(0.1, 1.0, 1.0, Variant::Standard).unwrap();
        assert!((lo / 4.08119941640493e-4 - 1.0).abs() < 1e-12);
        assert!((hi / 1.00809631929976e12 - 1.0).abs() < 1e-10);
    }

    #[test]
    fn envelope_ordered_when_constants_are() {
        for variant in Variant::ALL {
            for &p in &[0.02, 0.1, 0.3] {
                let (lo, hi) = envelope(p, 0.7, 0.9, variant).unwrap();
                assert!(lo <= hi);
            }
        }
        assert!(envelope(0.1, -1.0, 0.0, Variant::Standard).is_err());
    }
}
