//! The monotone-path functional w(path) = int rate(y) dx + rate(x) dy.
//! Among monotone paths between two points on the main diagonal it is
//! minimized by the diagonal itself.

use super::{integrate_adaptive, rate_raw, AnalyticsError};
use crate::model::Variant;

/// Piecewise-linear path in the open positive quadrant with both
/// coordinates non-decreasing along the vertex sequence.
#[derive(Clone, Debug)]
pub struct MonotonePath {
    vertices: Vec<(f64, f64)>,
}

impl MonotonePath {
    pub fn new(vertices: Vec<(f64, f64)>) -> Result<Self, AnalyticsError> {
        if vertices.is_empty() {
            return Err(AnalyticsError::InvalidPath);
        }
        for &(x, y) in &vertices {
            if !(x > 0.0 && y > 0.0) {
                return Err(AnalyticsError::InvalidPath);
            }
        }
        for pair in vertices.windows(2) {
            if pair[1].0 < pair[0].0 || pair[1].1 < pair[0].1 {
                return Err(AnalyticsError::InvalidPath);
            }
        }
        Ok(MonotonePath { vertices })
    }

    pub fn vertices(&self) -> &[(f64, f64)] {
        &self.vertices
    }
}

/// Line integral of rate(y) dx + rate(x) dy along the path, segment by
/// segment; each segment has a constant direction, so the parametrized
/// integrand is smooth and adaptive quadrature on [0, 1] is exact to
/// tolerance.
pub fn path_weight(path: &MonotonePath, variant: Variant) -> f64 {
    let mut total = 0.0;
    for pair in path.vertices.windows(2) {
        let (x0, y0) = pair[0];
        let (x1, y1) = pair[1];
        let (dx, dy) = (x1 - x0, y1 - y0);
        if dx == 0.0 && dy == 0.0 {
            continue;
        }
        let integrand = move |t: f64| {
            let mut v = 0.0;
            if dx != 0.0 {
                v += rate_raw(y0 + t * dy, variant) * dx;
            }
            if dy != 0.0 {
                v += rate_raw(x0 + t * dx, variant) * dy;
            }
            v
        };
        let out = integrate_adaptive(&integrand, 0.0, 1.0, 1e-12, 2000, &[]);
        total += out.value;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytics::g_raw;

    #[test]
    fn degenerate_path_has_zero_weight() {
        let path = MonotonePath::new(vec![(1.0, 1.0)]).unwrap();
        assert_eq!(path_weight(&path, Variant::Standard), 0.0);
    }

    #[test]
    fn diagonal_weight_is_twice_the_rate_integral() {
        let (z, big) = (0.4, 2.2);
        let diag = MonotonePath::new(vec![(z, z), (big, big)]).unwrap();
        let w = path_weight(&diag, Variant::Standard);
        let direct = integrate_adaptive(&g_raw, z, big, 1e-13, 2000, &[]);
        assert!((w - 2.0 * direct.value).abs() < 1e-10);
    }

    #[test]
    fn axis_segment_weight_is_rate_times_length() {
        let path = MonotonePath::new(vec![(1.0, 1.0), (3.0, 1.0)]).unwrap();
        let w = path_weight(&path, Variant::Modified);
        let expect = crate::analytics::rate_raw(1.0, Variant::Modified) * 2.0;
        assert!((w - expect).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_monotone_or_non_positive_paths() {
        assert!(MonotonePath::new(vec![]).is_err());
        assert!(MonotonePath::new(vec![(1.0, 1.0), (0.5, 2.0)]).is_err());
        assert!(MonotonePath::new(vec![(0.0, 1.0), (1.0, 2.0)]).is_err());
    }

    #[test]
    fn staircase_dominates_diagonal() {
        // A big L-shaped detour weighs more than the straight diagonal.
        let (z, big) = (0.3, 2.0);
        let stair = MonotonePath::new(vec![(z, z), (big, z), (big, big)]).unwrap();
        let diag = MonotonePath::new(vec![(z, z), (big, big)]).unwrap();
        assert!(
            path_weight(&stair, Variant::Standard) >= path_weight(&diag, Variant::Standard) - 1e-9
        );
    }
}
