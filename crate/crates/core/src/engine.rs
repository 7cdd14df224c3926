//! Synchronous cellular-automaton dynamics on finite windows.
//!
//! One kernel serves the three local models (occupied-activation rule per
//! variant plus the two-active-neighbors rule) and, with the occupied rule
//! disabled, plain bootstrap percolation for spanning experiments.
//!
//! Storage is dense at two bits per site (an active bitset and an occupied
//! bitset). Relaxation re-examines only the neighborhoods of sites that
//! became active in the previous step, after an initial full pass.

use crate::model::{Field, GeometryError, ModelError, Rect, SiteState, Variant};
use thiserror::Error;

/// Windows beyond this many sites are refused rather than attempted.
pub const MAX_WINDOW_SITES: u128 = 1_100_000_000;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("window of {0} sites exceeds the in-memory limit of {MAX_WINDOW_SITES}")]
    WindowTooLarge(u128),
    #[error("window must contain the origin")]
    OriginOutsideWindow,
    #[error("side length must be at least 1, got {0}")]
    SideLength(i64),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum Rule {
    /// (L1)-variant plus (L2): the local models.
    Local(Variant),
    /// (L2) only: plain bootstrap percolation. (L1) is irrelevant because
    /// these configurations contain no occupied sites.
    SpreadOnly,
}

impl Rule {
    fn influence_offsets(self) -> &'static [(i64, i64)] {
        const SPREAD: [(i64, i64); 4] = [(-1, 0), (0, -1), (0, 1), (1, 0)];
        match self {
            // Variant reach always contains the l1-distance-1 spread
            // neighborhood, so it covers both rules.
            Rule::Local(variant) => variant.occupied_reach_offsets(),
            Rule::SpreadOnly => &SPREAD,
        }
    }
}

/// A finite-window configuration at a fixed time step.
#[derive(Clone)]
pub struct Configuration {
    window: Rect,
    width: usize,
    active: Vec<u64>,
    occupied: Vec<u64>,
    active_count: u64,
    time: u64,
}

impl Configuration {
    pub fn new_empty(window: Rect) -> Result<Self, EngineError> {
        let area = window.area();
        if area > MAX_WINDOW_SITES {
            return Err(EngineError::WindowTooLarge(area));
        }
        let words = (area as usize).div_ceil(64);
        Ok(Configuration {
            window,
            width: window.width() as usize,
            active: vec![0; words],
            occupied: vec![0; words],
            active_count: 0,
            time: 0,
        })
    }

    /// Materialize the initial configuration on `window`.
    pub fn from_field(field: &Field, window: Rect) -> Result<Self, EngineError> {
        let mut cfg = Configuration::new_empty(window)?;
        for (x, y) in window.sites() {
            match field.site_state(x, y) {
                SiteState::Empty => {}
                state => cfg.set_state(x, y, state),
            }
        }
        Ok(cfg)
    }

    pub fn window(&self) -> Rect {
        self.window
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    #[inline]
    fn index(&self, x: i64, y: i64) -> usize {
        debug_assert!(self.window.contains(x, y));
        (y - self.window.y_min()) as usize * self.width + (x - self.window.x_min()) as usize
    }

    #[inline]
    fn bit(words: &[u64], idx: usize) -> bool {
        words[idx >> 6] & (1u64 << (idx & 63)) != 0
    }

    #[inline]
    fn set_bit(words: &mut [u64], idx: usize) {
        words[idx >> 6] |= 1u64 << (idx & 63);
    }

    #[inline]
    fn clear_bit(words: &mut [u64], idx: usize) {
        words[idx >> 6] &= !(1u64 << (idx & 63));
    }

    /// State of a site; sites outside the window read as empty.
    #[inline]
    pub fn state(&self, x: i64, y: i64) -> SiteState {
        if !self.window.contains(x, y) {
            return SiteState::Empty;
        }
        let idx = self.index(x, y);
        if Self::bit(&self.active, idx) {
            SiteState::Active
        } else if Self::bit(&self.occupied, idx) {
            SiteState::Occupied
        } else {
            SiteState::Empty
        }
    }

    #[inline]
    pub fn is_active(&self, x: i64, y: i64) -> bool {
        self.window.contains(x, y) && Self::bit(&self.active, self.index(x, y))
    }

    /// Overwrite a site's state. Panics outside the window.
    pub fn set_state(&mut self, x: i64, y: i64, state: SiteState) {
        assert!(
            self.window.contains(x, y),
            "site ({x}, {y}) outside window"
        );
        let idx = self.index(x, y);
        let was_active = Self::bit(&self.active, idx);
        match state {
            SiteState::Active => {
                if !was_active {
                    Self::set_bit(&mut self.active, idx);
                    self.active_count += 1;
                }
                Self::clear_bit(&mut self.occupied, idx);
            }
            SiteState::Occupied => {
                if was_active {
                    Self::clear_bit(&mut self.active, idx);
                    self.active_count -= 1;
                }
                Self::set_bit(&mut self.occupied, idx);
            }
            SiteState::Empty => {
                if was_active {
                    Self::clear_bit(&mut self.active, idx);
                    self.active_count -= 1;
                }
                Self::clear_bit(&mut self.occupied, idx);
            }
        }
    }

    pub fn active_count(&self) -> u64 {
        self.active_count
    }

    pub fn active_sites(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::with_capacity(self.active_count as usize);
        for (x, y) in self.window.sites() {
            if Self::bit(&self.active, self.index(x, y)) {
                out.push((x, y));
            }
        }
        out
    }

    /// Bounding rectangle of the active set, or `None` when nothing is
    /// active.
    pub fn active_bounding_rect(&self) -> Option<Rect> {
        let mut bounds: Option<(i64, i64, i64, i64)> = None;
        for (x, y) in self.window.sites() {
            if Self::bit(&self.active, self.index(x, y)) {
                bounds = Some(match bounds {
                    None => (x, x, y, y),
                    Some((x0, x1, y0, y1)) => (x0.min(x), x1.max(x), y0.min(y), y1.max(y)),
                });
            }
        }
        bounds.map(|(x0, x1, y0, y1)| {
            Rect::new(x0, x1, y0, y1).expect("active bounds are ordered window coordinates")
        })
    }

    /// Whether an inactive site becomes active this step.
    #[inline]
    fn fires(&self, rule: Rule, x: i64, y: i64, idx: usize) -> bool {
        if Self::bit(&self.occupied, idx) {
            match rule {
                Rule::Local(variant) => variant
                    .occupied_reach_offsets()
                    .iter()
                    .any(|&(dx, dy)| self.is_active(x + dx, y + dy)),
                Rule::SpreadOnly => false,
            }
        } else {
            let mut actives = 0;
            for &(dx, dy) in &[(-1i64, 0i64), (1, 0), (0, -1), (0, 1)] {
                if self.is_active(x + dx, y + dy) {
                    actives += 1;
                    if actives == 2 {
                        return true;
                    }
                }
            }
            false
        }
    }

    /// One simultaneous application of the update rules to every window
    /// site; sites outside the window are treated as empty.
    pub fn step(&self, variant: Variant) -> Configuration {
        self.step_rule(Rule::Local(variant))
    }

    pub(crate) fn step_rule(&self, rule: Rule) -> Configuration {
        let mut next = self.clone();
        for (x, y) in self.window.sites() {
            let idx = self.index(x, y);
            if !Self::bit(&self.active, idx) && self.fires(rule, x, y, idx) {
                Self::set_bit(&mut next.active, idx);
                Self::clear_bit(&mut next.occupied, idx);
                next.active_count += 1;
            }
        }
        next.time = self.time + 1;
        next
    }
}

/// Outcome of relaxing an initial configuration to fixation.
pub struct Fixation {
    pub config: Configuration,
    /// Set when an active site lies within the variant's pad width of the
    /// window boundary; the window answer is then censored as a Z^2 answer.
    pub boundary_touched: bool,
    pub steps: u64,
}

/// Iterate the synchronous dynamics until nothing changes. Returns the
/// fixed point and the number of steps taken, counting the final
/// verification pass.
pub fn relax(config: Configuration, variant: Variant) -> (Configuration, u64) {
    relax_rule(config, Rule::Local(variant), None)
}

/// Frontier-based relaxation. `seed_candidates` limits the first pass to
/// the given site list (callers guarantee no other site can fire first);
/// `None` scans the whole window.
pub(crate) fn relax_rule(
    mut config: Configuration,
    rule: Rule,
    seed_candidates: Option<Vec<(i64, i64)>>,
) -> (Configuration, u64) {
    let mut steps = 0u64;
    let mut newly: Vec<(i64, i64)> = Vec::new();

    // First synchronous pass: evaluate against the pre-pass active set,
    // apply afterwards.
    match &seed_candidates {
        Some(cands) => {
            for &(x, y) in cands {
                let idx = config.index(x, y);
                if !Configuration::bit(&config.active, idx) && config.fires(rule, x, y, idx) {
                    newly.push((x, y));
                }
            }
        }
        None => {
            for (x, y) in config.window.sites() {
                let idx = config.index(x, y);
                if !Configuration::bit(&config.active, idx) && config.fires(rule, x, y, idx) {
                    newly.push((x, y));
                }
            }
        }
    }
    steps += 1;
    if newly.is_empty() {
        config.time += steps;
        return (config, steps);
    }
    for &(x, y) in &newly {
        config.set_state(x, y, SiteState::Active);
    }

    // Subsequent passes examine only neighborhoods of newly active sites.
    // A stamp array deduplicates candidates per pass.
    let mut stamp = vec![0u32; config.width * config.window.height() as usize];
    let mut epoch = 0u32;
    let offsets = rule.influence_offsets();
    let mut candidates: Vec<(i64, i64)> = Vec::new();

    loop {
        epoch += 1;
        candidates.clear();
        for &(x, y) in &newly {
            for &(dx, dy) in offsets {
                let (nx, ny) = (x + dx, y + dy);
                if !config.window.contains(nx, ny) {
                    continue;
                }
                let idx = config.index(nx, ny);
                if Configuration::bit(&config.active, idx) || stamp[idx] == epoch {
                    continue;
                }
                stamp[idx] = epoch;
                candidates.push((nx, ny));
            }
        }
        newly.clear();
        for &(x, y) in &candidates {
            let idx = config.index(x, y);
            if config.fires(rule, x, y, idx) {
                newly.push((x, y));
            }
        }
        steps += 1;
        if newly.is_empty() {
            break;
        }
        for &(x, y) in &newly {
            config.set_state(x, y, SiteState::Active);
        }
    }
    config.time += steps;
    (config, steps)
}

/// Materialize the initial configuration on `window`, relax to fixation and
/// report the eventually active set together with a censoring flag.
pub fn eventually_active(
    field: &Field,
    window: Rect,
    variant: Variant,
) -> Result<Fixation, EngineError> {
    if !window.contains(0, 0) {
        return Err(EngineError::OriginOutsideWindow);
    }
    let config = Configuration::from_field(field, window)?;
    let (config, steps) = relax(config, variant);
    let boundary_touched = active_within_boundary_band(&config, variant.pad_width());
    Ok(Fixation {
        config,
        boundary_touched,
        steps,
    })
}

fn active_within_boundary_band(config: &Configuration, pad: i64) -> bool {
    let w = config.window();
    for (x, y) in w.sites() {
        let dist = (x - w.x_min())
            .min(w.x_max() - x)
            .min(y - w.y_min())
            .min(w.y_max() - y);
        if dist < pad && config.is_active(x, y) {
            return true;
        }
    }
    false
}

/// Plain bootstrap percolation on {1..L}^2: each site independently active
/// with probability p, dynamics (L2, L3), true iff the whole square becomes
/// active.
pub fn run_standard_bp(l: i64, p: f64, seed: u64) -> Result<bool, EngineError> {
    if l < 1 {
        return Err(EngineError::SideLength(l));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(EngineError::Model(ModelError::ProbabilityRange(p)));
    }
    let window = Rect::new(1, l, 1, l)?;
    let mut config = Configuration::new_empty(window)?;
    // Sites are initially active (never occupied): sample directly from the
    // same deterministic per-site law the Field uses for occupation.
    let field = Field::new(seed, p, crate::model::OriginMode::Sampled)?;
    for (x, y) in window.sites() {
        if field.site_state(x, y) != SiteState::Empty {
            config.set_state(x, y, SiteState::Active);
        }
    }
    let (config, _) = relax_rule(config, Rule::SpreadOnly, None);
    Ok(config.active_count() == window.area() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::OriginMode;

    fn config_with(window: Rect, sites: &[((i64, i64), SiteState)]) -> Configuration {
        let mut cfg = Configuration::new_empty(window).unwrap();
        for &((x, y), s) in sites {
            cfg.set_state(x, y, s);
        }
        cfg
    }

    #[test]
    fn occupied_activates_at_l1_distance_two_in_standard() {
        let window = Rect::new(-3, 3, -3, 3).unwrap();
        let cfg = config_with(
            window,
            &[
                ((0, 0), SiteState::Active),
                ((2, 0), SiteState::Occupied),
            ],
        );
        let next = cfg.step(Variant::Standard);
        assert_eq!(next.state(2, 0), SiteState::Active);
        assert_eq!(next.time(), 1);
    }

    #[test]
    fn diagonal_occupied_splits_modified_from_frobose() {
        let window = Rect::new(-2, 2, -2, 2).unwrap();
        let cfg = config_with(
            window,
            &[
                ((0, 0), SiteState::Active),
                ((1, 1), SiteState::Occupied),
            ],
        );
        let modified = cfg.step(Variant::Modified);
        assert_eq!(modified.state(1, 1), SiteState::Active);
        let frobose = cfg.step(Variant::Frobose);
        assert_eq!(frobose.state(1, 1), SiteState::Occupied);
    }

    #[test]
    fn empty_site_needs_two_active_neighbors() {
        let window = Rect::new(-1, 3, -1, 1).unwrap();
        let cfg = config_with(
            window,
            &[
                ((0, 0), SiteState::Active),
                ((2, 0), SiteState::Active),
            ],
        );
        let next = cfg.step(Variant::Standard);
        assert_eq!(next.state(1, 0), SiteState::Active);
        // A single active neighbor is not enough.
        assert_eq!(next.state(-1, 0), SiteState::Empty);
    }

    #[test]
    fn relax_on_all_empty_window_is_one_verification_pass() {
        let cfg = Configuration::new_empty(Rect::new(0, 4, 0, 4).unwrap()).unwrap();
        let (fixed, steps) = relax(cfg, Variant::Standard);
        assert_eq!(steps, 1);
        assert_eq!(fixed.active_count(), 0);
    }

    #[test]
    fn relax_reaches_three_by_three_square() {
        // Seed at the origin with occupied sites at (2,0) and (0,2): the
        // fixated active set is exactly {0..2}^2 (hand-run of the rules,
        // cross-checked by the oracle module's naive relaxer).
        let window = Rect::new(-2, 4, -2, 4).unwrap();
        let cfg = config_with(
            window,
            &[
                ((0, 0), SiteState::Active),
                ((2, 0), SiteState::Occupied),
                ((0, 2), SiteState::Occupied),
            ],
        );
        let (fixed, _) = relax(cfg, Variant::Standard);
        let expect = Rect::new(0, 2, 0, 2).unwrap();
        assert_eq!(fixed.active_count(), 9);
        assert_eq!(fixed.active_bounding_rect(), Some(expect));
    }

    #[test]
    fn relaxed_configuration_is_a_fixed_point_of_step() {
        let field = Field::new(11, 0.25, OriginMode::Forced(SiteState::Active)).unwrap();
        let window = Rect::new(-6, 6, -6, 6).unwrap();
        let cfg = Configuration::from_field(&field, window).unwrap();
        let (fixed, steps) = relax(cfg, Variant::Standard);
        let again = fixed.step(Variant::Standard);
        assert_eq!(again.active_count(), fixed.active_count());
        assert!(steps <= window.area() as u64 + 1);
    }

    #[test]
    fn eventually_active_without_seed_is_empty() {
        let field = Field::new(3, 0.3, OriginMode::Forced(SiteState::Empty)).unwrap();
        let window = Rect::new(-5, 5, -5, 5).unwrap();
        let fix = eventually_active(&field, window, Variant::Standard).unwrap();
        assert_eq!(fix.config.active_count(), 0);
        assert!(!fix.boundary_touched);
    }

    #[test]
    fn eventually_active_with_lone_seed_is_origin() {
        let field = Field::new(3, 0.0, OriginMode::Forced(SiteState::Active)).unwrap();
        let window = Rect::new(-4, 6, -4, 6).unwrap();
        let fix = eventually_active(&field, window, Variant::Standard).unwrap();
        assert_eq!(fix.config.active_sites(), vec![(0, 0)]);
        assert!(!fix.boundary_touched);
    }

    #[test]
    fn eventually_active_requires_origin_in_window() {
        let field = Field::conditioned(1, 0.2).unwrap();
        let window = Rect::new(1, 5, 1, 5).unwrap();
        assert!(matches!(
            eventually_active(&field, window, Variant::Standard),
            Err(EngineError::OriginOutsideWindow)
        ));
    }

    #[test]
    fn boundary_touch_is_detected() {
        // Occupied row reaching the window edge drags activity into the
        // censoring band.
        let window = Rect::new(-3, 3, -3, 3).unwrap();
        let mut cfg = Configuration::new_empty(window).unwrap();
        cfg.set_state(0, 0, SiteState::Active);
        for x in 1..=3 {
            cfg.set_state(x, 0, SiteState::Occupied);
        }
        let (fixed, _) = relax(cfg, Variant::Standard);
        assert!(fixed.is_active(3, 0));
        assert!(active_within_boundary_band(&fixed, 2));
    }

    #[test]
    fn standard_bp_saturated_square_spans() {
        assert!(run_standard_bp(5, 1.0, 9).unwrap());
    }

    #[test]
    fn standard_bp_l1_rate_matches_p() {
        let p = 0.37;
        let trials = 40_000u64;
        let spanned = (0..trials)
            .filter(|&t| run_standard_bp(1, p, crate::model::derive_seed(5, t)).unwrap())
            .count() as f64;
        let rate = spanned / trials as f64;
        let sigma = (p * (1.0 - p) / trials as f64).sqrt();
        assert!((rate - p).abs() < 3.0 * sigma, "rate {rate} vs p {p}");
    }

    #[test]
    fn step_rule_spread_only_ignores_occupied() {
        let window = Rect::new(-2, 2, -2, 2).unwrap();
        let cfg = config_with(
            window,
            &[
                ((0, 0), SiteState::Active),
                ((1, 0), SiteState::Occupied),
            ],
        );
        let next = cfg.step_rule(Rule::SpreadOnly);
        assert_eq!(next.state(1, 0), SiteState::Occupied);
    }
}
