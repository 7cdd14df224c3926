//! Shared model types: site states, model variants, the lazily sampled
//! infinite initial configuration, and integer rectangles.

mod field;
mod rect;

pub use field::{derive_seed, Field, OriginMode};
pub use rect::{frame_side_unions, frame_strips, FrameSides, GeometryError, Rect, COORD_LIMIT};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("probability must lie in [0, 1], got {0}")]
    ProbabilityRange(f64),
}

/// State of a single lattice site.
///
/// Transitions only ever move toward `Active`; nothing is ever demoted.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum SiteState {
    Empty,
    Occupied,
    Active,
}

/// The three local models. They differ in which neighborhood lets an
/// occupied site activate, how far a rectangle is padded per growth step,
/// which gap condition obstructs growth, and the threshold constant.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Variant {
    /// Occupied sites activate within l1-distance 2 of an active site.
    Standard,
    /// Occupied sites activate within l-infinity-distance 1.
    Modified,
    /// Occupied sites activate within l1-distance 1.
    Frobose,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Standard, Variant::Modified, Variant::Frobose];

    /// How far activity can reach past the current rectangle in one growth
    /// step; also the frame width of the enlarged rectangle.
    pub fn pad_width(self) -> i64 {
        match self {
            Variant::Standard => 2,
            Variant::Modified | Variant::Frobose => 1,
        }
    }

    /// Whether an occupied site at offset (dx, dy) from an active site is
    /// close enough to activate.
    pub fn within_occupied_reach(self, dx: i64, dy: i64) -> bool {
        if dx == 0 && dy == 0 {
            return false;
        }
        match self {
            Variant::Standard => dx.abs() + dy.abs() <= 2,
            Variant::Modified => dx.abs().max(dy.abs()) <= 1,
            Variant::Frobose => dx.abs() + dy.abs() <= 1,
        }
    }

    /// Offsets of the occupied-activation neighborhood.
    pub fn occupied_reach_offsets(self) -> &'static [(i64, i64)] {
        const STANDARD: [(i64, i64); 12] = [
            (-2, 0),
            (-1, -1),
            (-1, 0),
            (-1, 1),
            (0, -2),
            (0, -1),
            (0, 1),
            (0, 2),
            (1, -1),
            (1, 0),
            (1, 1),
            (2, 0),
        ];
        const MODIFIED: [(i64, i64); 8] = [
            (-1, -1),
            (-1, 0),
            (-1, 1),
            (0, -1),
            (0, 1),
            (1, -1),
            (1, 0),
            (1, 1),
        ];
        const FROBOSE: [(i64, i64); 4] = [(-1, 0), (0, -1), (0, 1), (1, 0)];
        match self {
            Variant::Standard => &STANDARD,
            Variant::Modified => &MODIFIED,
            Variant::Frobose => &FROBOSE,
        }
    }

    /// Threshold constant: pi^2/18 for the standard model, pi^2/6 for the
    /// modified and Frobose models.
    pub fn lambda(self) -> f64 {
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        match self {
            Variant::Standard => pi2 / 18.0,
            Variant::Modified | Variant::Frobose => pi2 / 6.0,
        }
    }

    /// The standard model is obstructed by double gaps (two adjacent empty
    /// lines); the variants already stall on a single empty line.
    pub fn uses_double_gap(self) -> bool {
        matches!(self, Variant::Standard)
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Standard => "standard",
            Variant::Modified => "modified",
            Variant::Frobose => "frobose",
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "standard" => Ok(Variant::Standard),
            "modified" => Ok(Variant::Modified),
            "frobose" => Ok(Variant::Frobose),
            other => Err(format!(
                "unknown model '{other}' (expected standard, modified or frobose)"
            )),
        }
    }
}
