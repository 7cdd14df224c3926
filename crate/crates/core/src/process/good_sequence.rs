//! Coarse-grained sampling of a trajectory's dimension path: the good
//! sequence construction and its checker.

use super::Trajectory;

/// A coarse-grained subsequence of rectangle dimensions extracted from a
/// growing trajectory, recorded with the scale it was extracted at.
#[derive(Clone, Debug)]
pub struct GoodSequence {
    pub dims: Vec<(i64, i64)>,
    pub q: f64,
    pub min_side: i64,
    pub semiperimeter_cap: i64,
}

/// Outcome of [`extract_good_sequence`].
#[derive(Clone, Debug)]
pub enum Extraction {
    Good(GoodSequence),
    /// The dimension path never entered the good region; growth escaped
    /// near a corner (the event E should hold for such trajectories).
    Escaped,
    /// The trajectory ended (fixated or step-capped) before the
    /// construction could finish; only trajectories run with a threshold
    /// comfortably past the good region avoid this.
    Incomplete,
}

fn scales_from_q(q: f64) -> (i64, i64) {
    let min_side = (1.0 / q.sqrt()).ceil() as i64;
    let cap = ((1.0 / q).ln() / q).floor() as i64;
    (min_side, cap)
}

fn in_good_region(dims: (i64, i64), min_side: i64, cap: i64) -> bool {
    dims.0 >= min_side && dims.1 >= min_side && dims.0 + dims.1 <= cap
}

/// Extract the proof's coarse-grained subsequence from a trajectory:
/// start at the first rectangle whose dimensions enter the good region,
/// then repeatedly jump to the first later rectangle whose width grew by at
/// least a_i sqrt(q) or whose height grew by at least b_i sqrt(q), stopping
/// at the first jump target outside the good region.
pub fn extract_good_sequence(traj: &Trajectory, q: f64) -> Extraction {
    assert!(q > 0.0 && q < 1.0, "q must lie in (0, 1)");
    let (min_side, cap) = scales_from_q(q);
    let dims: Vec<(i64, i64)> = traj.dims();
    let sqrt_q = q.sqrt();

    let Some(first) = dims
        .iter()
        .position(|&d| in_good_region(d, min_side, cap))
    else {
        return Extraction::Escaped;
    };

    let mut picked = vec![dims[first]];
    let mut cursor = first;
    loop {
        let (a, b) = picked[picked.len() - 1];
        let mut jumped = None;
        for (j, &(aj, bj)) in dims.iter().enumerate().skip(cursor + 1) {
            let grew_wide = (aj - a) as f64 >= a as f64 * sqrt_q;
            let grew_tall = (bj - b) as f64 >= b as f64 * sqrt_q;
            if grew_wide || grew_tall {
                jumped = Some(j);
                break;
            }
        }
        let Some(j) = jumped else {
            return Extraction::Incomplete;
        };
        picked.push(dims[j]);
        cursor = j;
        if !in_good_region(dims[j], min_side, cap) {
            return Extraction::Good(GoodSequence {
                dims: picked,
                q,
                min_side,
                semiperimeter_cap: cap,
            });
        }
    }
}

/// Check properties (ii)-(vi) of a good sequence on a dimension list:
/// entry side in [A, A+3], the second-to-last semiperimeter at most B, the
/// last beyond B, and every increment at least the sqrt(q)-fraction of the
/// current side in one coordinate but within that fraction plus 4 in both.
/// Geometric nesting (property (i)) is a trajectory invariant checked where
/// trajectories are built.
pub fn is_good_sequence(dims: &[(i64, i64)], q: f64, min_side: i64, cap: i64) -> bool {
    if dims.len() < 2 {
        return false;
    }
    let sqrt_q = q.sqrt();
    let (a1, b1) = dims[0];
    let entry = a1.min(b1);
    if entry < min_side || entry > min_side + 3 {
        return false;
    }
    let (an, bn) = dims[dims.len() - 2];
    if an + bn > cap {
        return false;
    }
    let (last_a, last_b) = dims[dims.len() - 1];
    if last_a + last_b <= cap {
        return false;
    }
    for pair in dims.windows(2) {
        let (a, b) = pair[0];
        let (s, t) = (pair[1].0 - a, pair[1].1 - b);
        if s < 0 || t < 0 {
            return false;
        }
        let wide = a as f64 * sqrt_q;
        let tall = b as f64 * sqrt_q;
        if !((s as f64) >= wide || (t as f64) >= tall) {
            return false;
        }
        if !((s as f64) < wide + 4.0 && (t as f64) < tall + 4.0) {
            return false;
        }
    }
    true
}
