//! Brute-force exact computations on tiny instances: the independent
//! ground truth for the engines, the event predicates and Monte Carlo.
//!
//! This module keeps its own deliberately naive full-rescan relaxer. An
//! oracle that shared the optimized frontier kernel could not catch
//! frontier bugs.

use crate::model::{Rect, SiteState, Variant};
use rayon::prelude::*;
use thiserror::Error;

/// Enumeration is capped at 2^22 assignments.
pub const MAX_WINDOW: usize = 22;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("window of {0} sites exceeds the enumeration cap of {MAX_WINDOW}")]
    WindowTooLarge(usize),
    #[error("window sites must be distinct and away from the origin where required")]
    BadWindow,
    #[error("probability must lie in [0, 1], got {0}")]
    ProbabilityRange(f64),
}

/// Exact finite-window law: coefficient k counts the assignments with k
/// selected sites that satisfy the predicate, so the probability is
/// sum_k coeffs[k] p^k (1-p)^(n-k).
#[derive(Clone, Debug)]
pub struct ExactResult {
    site_count: usize,
    coeffs: Vec<u64>,
    p: f64,
}

impl ExactResult {
    pub fn site_count(&self) -> usize {
        self.site_count
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coeffs
    }

    /// Probability at the p the result was built with.
    pub fn value(&self) -> f64 {
        self.evaluate(self.p)
    }

    pub fn evaluate(&self, p: f64) -> f64 {
        let n = self.site_count as i32;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| c as f64 * p.powi(k as i32) * (1.0 - p).powi(n - k as i32))
            .sum()
    }
}

/// A single enumerated assignment: which window sites are selected.
#[derive(Clone, Copy)]
pub struct Assignment<'a> {
    mask: u32,
    sites: &'a [(i64, i64)],
}

impl<'a> Assignment<'a> {
    pub fn selected(&self, index: usize) -> bool {
        self.mask >> index & 1 != 0
    }

    pub fn selected_at(&self, x: i64, y: i64) -> bool {
        self.sites
            .iter()
            .position(|&s| s == (x, y))
            .is_some_and(|i| self.selected(i))
    }

    pub fn count(&self) -> u32 {
        self.mask.count_ones()
    }
}

fn check_window(sites: &[(i64, i64)]) -> Result<(), OracleError> {
    if sites.len() > MAX_WINDOW {
        return Err(OracleError::WindowTooLarge(sites.len()));
    }
    for (i, a) in sites.iter().enumerate() {
        if sites[..i].contains(a) {
            return Err(OracleError::BadWindow);
        }
    }
    Ok(())
}

/// Exact probability of `predicate` when each window site is independently
/// selected with probability p.
pub fn exact_event_probability<F>(
    sites: &[(i64, i64)],
    p: f64,
    predicate: F,
) -> Result<ExactResult, OracleError>
where
    F: Fn(Assignment) -> bool + Sync,
{
    check_window(sites)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(OracleError::ProbabilityRange(p));
    }
    let n = sites.len();
    let total = 1u64 << n;
    let coeffs = chunk_starts(total)
        .into_par_iter()
        .map(|(start, end)| {
            let mut local = vec![0u64; n + 1];
            for raw in start..end {
                let assignment = Assignment {
                    mask: gray(raw as u32),
                    sites,
                };
                if predicate(assignment) {
                    local[assignment.count() as usize] += 1;
                }
            }
            local
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    Ok(ExactResult {
        site_count: n,
        coeffs,
        p,
    })
}

/// Split 0..total into at most 256 contiguous assignment ranges.
fn chunk_starts(total: u64) -> Vec<(u64, u64)> {
    let chunk = (total / 256).max(1);
    let mut ranges = Vec::new();
    let mut start = 0;
    while start < total {
        let end = (start + chunk).min(total);
        ranges.push((start, end));
        start = end;
    }
    ranges
}

#[inline]
fn gray(i: u32) -> u32 {
    i ^ (i >> 1)
}

/// Update rule for the naive relaxer.
#[derive(Clone, Copy)]
enum NaiveRule {
    Local(Variant),
    SpreadOnly,
}

/// Tiny dense grid over a window, indexed by absolute coordinates.
#[derive(Clone)]
struct NaiveGrid {
    window: Rect,
    states: Vec<SiteState>,
}

impl NaiveGrid {
    fn new(window: Rect) -> Self {
        NaiveGrid {
            window,
            states: vec![SiteState::Empty; window.area() as usize],
        }
    }

    fn get(&self, x: i64, y: i64) -> SiteState {
        if !self.window.contains(x, y) {
            return SiteState::Empty;
        }
        self.states[self.idx(x, y)]
    }

    fn set(&mut self, x: i64, y: i64, s: SiteState) {
        let i = self.idx(x, y);
        self.states[i] = s;
    }

    fn idx(&self, x: i64, y: i64) -> usize {
        (y - self.window.y_min()) as usize * self.window.width() as usize
            + (x - self.window.x_min()) as usize
    }
}

/// Full-rescan synchronous relaxation: recompute every site from the whole
/// grid until a pass changes nothing. Quadratic and proud of it.
fn naive_relax(grid: &mut NaiveGrid, rule: NaiveRule) {
    loop {
        let before = grid.clone();
        let mut changed = false;
        for (x, y) in grid.window.sites() {
            match before.get(x, y) {
                SiteState::Active => {}
                SiteState::Occupied => {
                    if let NaiveRule::Local(variant) = rule {
                        let mut fire = false;
                        for dx in -2..=2i64 {
                            for dy in -2..=2i64 {
                                if variant.within_occupied_reach(dx, dy)
                                    && before.get(x + dx, y + dy) == SiteState::Active
                                {
                                    fire = true;
                                }
                            }
                        }
                        if fire {
                            grid.set(x, y, SiteState::Active);
                            changed = true;
                        }
                    }
                }
                SiteState::Empty => {
                    let actives = [(1i64, 0i64), (-1, 0), (0, 1), (0, -1)]
                        .iter()
                        .filter(|&&(dx, dy)| before.get(x + dx, y + dy) == SiteState::Active)
                        .count();
                    if actives >= 2 {
                        grid.set(x, y, SiteState::Active);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return;
        }
    }
}

fn enumeration_window(sites: &[(i64, i64)], pad: i64) -> Result<Rect, OracleError> {
    let mut x0 = 0i64;
    let mut x1 = 0i64;
    let mut y0 = 0i64;
    let mut y1 = 0i64;
    for &(x, y) in sites {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    Rect::new(x0 - pad, x1 + pad, y0 - pad, y1 + pad).map_err(|_| OracleError::BadWindow)
}

/// Exact conditioned growth probability: the origin is active, each listed
/// non-origin site is independently occupied with probability p, all other
/// sites are empty; count the assignments whose fixated active set covers
/// `target`. Multiply by p for the unconditioned law.
pub fn exact_growth_probability(
    sites: &[(i64, i64)],
    variant: Variant,
    target: Rect,
    p: f64,
) -> Result<ExactResult, OracleError> {
    check_window(sites)?;
    if sites.contains(&(0, 0)) {
        return Err(OracleError::BadWindow);
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(OracleError::ProbabilityRange(p));
    }
    // Activity never outruns the rectangular hull of the origin and the
    // occupied sites; one pad of margin makes the window safely absorbing.
    let window = enumeration_window(sites, variant.pad_width() + 1)?;
    if !window.contains_rect(&target) {
        return Err(OracleError::BadWindow);
    }
    let n = sites.len();
    let total = 1u64 << n;
    // Gray-code enumeration: consecutive assignments differ in one site, so
    // each chunk maintains its input grid incrementally. Only the relaxer's
    // input is reused, never its logic.
    let coeffs = chunk_starts(total)
        .into_par_iter()
        .map(|(start, end)| {
            let mut local = vec![0u64; n + 1];
            let mut base = NaiveGrid::new(window);
            let first = gray(start as u32);
            for (i, &(x, y)) in sites.iter().enumerate() {
                if first >> i & 1 != 0 {
                    base.set(x, y, SiteState::Occupied);
                }
            }
            for raw in start..end {
                let mask = gray(raw as u32);
                if raw > start {
                    let flipped = (raw.trailing_zeros()) as usize;
                    let (x, y) = sites[flipped];
                    let state = if mask >> flipped & 1 != 0 {
                        SiteState::Occupied
                    } else {
                        SiteState::Empty
                    };
                    base.set(x, y, state);
                }
                let mut work = base.clone();
                work.set(0, 0, SiteState::Active);
                naive_relax(&mut work, NaiveRule::Local(variant));
                if target.sites().all(|(x, y)| work.get(x, y) == SiteState::Active) {
                    local[mask.count_ones() as usize] += 1;
                }
            }
            local
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    Ok(ExactResult {
        site_count: n,
        coeffs,
        p,
    })
}

/// Exact spanning probability I(L, p) of plain bootstrap percolation:
/// each site of {1..L}^2 is independently active with probability p and the
/// predicate asks whether the square fills up.
pub fn exact_spanning_probability(l: i64, p: f64) -> Result<ExactResult, OracleError> {
    if l < 1 {
        return Err(OracleError::BadWindow);
    }
    let window = Rect::new(1, l, 1, l).map_err(|_| OracleError::BadWindow)?;
    let sites: Vec<(i64, i64)> = window.sites().collect();
    check_window(&sites)?;
    let all = window.area() as usize;
    exact_event_probability(&sites, p, move |assignment| {
        let mut grid = NaiveGrid::new(window);
        for (i, &(x, y)) in sites.iter().enumerate() {
            if assignment.selected(i) {
                grid.set(x, y, SiteState::Active);
            }
        }
        naive_relax(&mut grid, NaiveRule::SpreadOnly);
        grid.states
            .iter()
            .filter(|&&s| s == SiteState::Active)
            .count()
            == all
    })
}

/// Naive-relaxer entry point for consistency tests against the optimized
/// engine: relax the given initial states over `window` and return the
/// active set.
pub fn naive_fixated_active_set(
    window: Rect,
    initial: &[((i64, i64), SiteState)],
    variant: Variant,
) -> Vec<(i64, i64)> {
    let mut grid = NaiveGrid::new(window);
    for &((x, y), s) in initial {
        grid.set(x, y, s);
    }
    naive_relax(&mut grid, NaiveRule::Local(variant));
    window
        .sites()
        .filter(|&(x, y)| grid.get(x, y) == SiteState::Active)
        .collect()
}
