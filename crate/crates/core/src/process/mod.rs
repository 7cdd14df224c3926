//! The rectangle process: coarse-grained growth dynamics whose limit equals
//! the eventually active set of the full automaton, plus the event
//! predicates and good-sequence machinery built on top of it.

mod events;
mod good_sequence;

pub use events::{check_d, check_e, check_g};
pub use good_sequence::{extract_good_sequence, is_good_sequence, Extraction, GoodSequence};

use crate::engine::{relax_rule, Configuration, EngineError, Rule};
use crate::model::{Field, GeometryError, Rect, SiteState, Variant};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ProcessError {
    #[error(
        "fixated active set is not a rectangle: bounding box {bbox:?} holds {actual} of {expected} sites"
    )]
    NonRectangularFixation {
        bbox: Rect,
        actual: u64,
        expected: u64,
    },
    #[error("success semiperimeter must be at least 2, got {0}")]
    ThresholdTooSmall(i64),
    #[error("step cap must be at least 1")]
    StepCapZero,
    #[error("scales degenerate at this p: B - A - 10 = {0} < 1")]
    DegenerateEventScales(i64),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Analytics(#[from] crate::analytics::AnalyticsError),
}

/// Why a rectangle-process run stopped.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StopReason {
    /// One more growth step changed nothing.
    Fixated,
    /// The semiperimeter reached the success threshold (growth proxy).
    ThresholdReached,
    /// The step cap ran out: diagnostic, neither success nor failure.
    StepCap,
}

impl StopReason {
    pub fn name(self) -> &'static str {
        match self {
            StopReason::Fixated => "fixated",
            StopReason::ThresholdReached => "thresholdReached",
            StopReason::StepCap => "stepCap",
        }
    }
}

impl std::str::FromStr for StopReason {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fixated" => Ok(StopReason::Fixated),
            "thresholdReached" => Ok(StopReason::ThresholdReached),
            "stepCap" => Ok(StopReason::StepCap),
            other => Err(format!("unknown stop reason '{other}'")),
        }
    }
}

/// A realized rectangle-process run: the strictly increasing rectangles it
/// visited and why it stopped. Empty when the origin was not active.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub rects: Vec<Rect>,
    pub stop_reason: StopReason,
    pub field: Field,
    pub variant: Variant,
}

impl Trajectory {
    pub fn final_rect(&self) -> Option<Rect> {
        self.rects.last().copied()
    }

    pub fn dims(&self) -> Vec<(i64, i64)> {
        self.rects.iter().map(Rect::dims).collect()
    }

    /// Line-oriented text format: `i xMin xMax yMin yMax` per rectangle,
    /// final line `stop <reason>`.
    pub fn write_to<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        for (i, r) in self.rects.iter().enumerate() {
            writeln!(
                w,
                "{} {} {} {} {}",
                i,
                r.x_min(),
                r.x_max(),
                r.y_min(),
                r.y_max()
            )?;
        }
        writeln!(w, "stop {}", self.stop_reason.name())
    }

    pub fn serialize(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("serialization is ASCII")
    }

    /// Parse the serialized form back into (rects, stop reason).
    pub fn parse(text: &str) -> Result<(Vec<Rect>, StopReason), String> {
        let mut rects = Vec::new();
        let mut reason = None;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("stop ") {
                reason = Some(rest.parse::<StopReason>()?);
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 5 {
                return Err(format!("expected 5 fields, got '{line}'"));
            }
            let nums: Result<Vec<i64>, _> = fields.iter().map(|f| f.parse::<i64>()).collect();
            let nums = nums.map_err(|e| format!("bad integer in '{line}': {e}"))?;
            if nums[0] != rects.len() as i64 {
                return Err(format!("rectangle index {} out of order", nums[0]));
            }
            rects.push(Rect::new(nums[1], nums[2], nums[3], nums[4]).map_err(|e| e.to_string())?);
        }
        match reason {
            Some(r) => Ok((rects, r)),
            None => Err("missing stop line".to_string()),
        }
    }
}

/// One growth step of the rectangle process: make `rect` all active, give
/// the frame of the padded rectangle its initial states, leave everything
/// outside empty, and relax to fixation.
///
/// The fixated active set is asserted to be a rectangle; anything else
/// would falsify the model's growth claim and aborts loudly rather than
/// being silently bounding-boxed.
pub fn advance(field: &Field, variant: Variant, rect: Rect) -> Result<Rect, ProcessError> {
    let pad = variant.pad_width();
    let window = rect.grow(pad)?;
    let mut config = Configuration::new_empty(window)?;
    let mut frame_sites = Vec::with_capacity((window.area() - rect.area()) as usize);
    for (x, y) in window.sites() {
        if rect.contains(x, y) {
            continue;
        }
        match field.site_state(x, y) {
            SiteState::Empty => {}
            state => config.set_state(x, y, state),
        }
        frame_sites.push((x, y));
    }
    for (x, y) in rect.sites() {
        config.set_state(x, y, SiteState::Active);
    }
    // Sites inside `rect` are active already, so only frame sites can fire
    // on the first pass.
    let (fixed, _) = relax_rule(config, Rule::Local(variant), Some(frame_sites));
    let bbox = fixed
        .active_bounding_rect()
        .expect("advance starts from a nonempty active rectangle");
    let expected = bbox.area() as u64;
    let actual = fixed.active_count();
    if actual != expected {
        return Err(ProcessError::NonRectangularFixation {
            bbox,
            actual,
            expected,
        });
    }
    Ok(bbox)
}

/// Run the rectangle process from the origin until it fixates, reaches the
/// success semiperimeter, or exhausts the step cap.
pub fn run(
    field: &Field,
    variant: Variant,
    success_semiperimeter: i64,
    step_cap: u64,
) -> Result<Trajectory, ProcessError> {
    if success_semiperimeter < 2 {
        return Err(ProcessError::ThresholdTooSmall(success_semiperimeter));
    }
    if step_cap == 0 {
        return Err(ProcessError::StepCapZero);
    }
    let mut rects = Vec::new();
    let stop_reason;
    if field.site_state(0, 0) != SiteState::Active {
        // Origin not active: the process is empty forever.
        stop_reason = StopReason::Fixated;
    } else {
        rects.push(Rect::origin());
        let mut steps = 0u64;
        loop {
            let current = *rects.last().expect("at least the seed rectangle");
            if current.semiperimeter() >= success_semiperimeter {
                stop_reason = StopReason::ThresholdReached;
                break;
            }
            if steps == step_cap {
                stop_reason = StopReason::StepCap;
                break;
            }
            let next = advance(field, variant, current)?;
            steps += 1;
            if next == current {
                stop_reason = StopReason::Fixated;
                break;
            }
            debug_assert!(next.contains_rect(&current));
            rects.push(next);
        }
    }
    Ok(Trajectory {
        rects,
        stop_reason,
        field: *field,
        variant,
    })
}
