//! Integer rectangles with inclusive bounds, and the eight-strip frame
//! decomposition of a nested rectangle pair.

use thiserror::Error;

/// Coordinates at or beyond this magnitude abort with an explicit error;
/// desk-scale runs never approach it and silent wraparound is unacceptable.
pub const COORD_LIMIT: i64 = 1 << 62;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("rectangle bounds out of order: x {x_min}..{x_max}, y {y_min}..{y_max}")]
    BoundsOrder {
        x_min: i64,
        x_max: i64,
        y_min: i64,
        y_max: i64,
    },
    #[error("coordinate magnitude {0} reaches the 2^62 safety limit")]
    CoordinateOverflow(i64),
    #[error("inner rectangle is not contained in the outer rectangle")]
    NotNested,
}

/// Nonempty rectangle {xMin..xMax} x {yMin..yMax}, bounds inclusive.
///
/// The empty rectangle is a distinguished value (`None` at use sites), so
/// dimension arithmetic never sees one.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Rect {
    x_min: i64,
    x_max: i64,
    y_min: i64,
    y_max: i64,
}

impl Rect {
    pub fn new(x_min: i64, x_max: i64, y_min: i64, y_max: i64) -> Result<Self, GeometryError> {
        if x_min > x_max || y_min > y_max {
            return Err(GeometryError::BoundsOrder {
                x_min,
                x_max,
                y_min,
                y_max,
            });
        }
        for &c in &[x_min, x_max, y_min, y_max] {
            if c.abs() >= COORD_LIMIT {
                return Err(GeometryError::CoordinateOverflow(c));
            }
        }
        Ok(Rect {
            x_min,
            x_max,
            y_min,
            y_max,
        })
    }

    /// The single-site rectangle {x} x {y}.
    pub fn single(x: i64, y: i64) -> Result<Self, GeometryError> {
        Rect::new(x, x, y, y)
    }

    /// The single-site rectangle at the origin, the seed of every rectangle
    /// process.
    pub fn origin() -> Self {
        Rect {
            x_min: 0,
            x_max: 0,
            y_min: 0,
            y_max: 0,
        }
    }

    pub fn x_min(&self) -> i64 {
        self.x_min
    }

    pub fn x_max(&self) -> i64 {
        self.x_max
    }

    pub fn y_min(&self) -> i64 {
        self.y_min
    }

    pub fn y_max(&self) -> i64 {
        self.y_max
    }

    /// Horizontal dimension a = xMax - xMin + 1.
    pub fn width(&self) -> i64 {
        self.x_max - self.x_min + 1
    }

    /// Vertical dimension b = yMax - yMin + 1.
    pub fn height(&self) -> i64 {
        self.y_max - self.y_min + 1
    }

    pub fn dims(&self) -> (i64, i64) {
        (self.width(), self.height())
    }

    pub fn semiperimeter(&self) -> i64 {
        self.width() + self.height()
    }

    pub fn area(&self) -> u128 {
        self.width() as u128 * self.height() as u128
    }

    pub fn contains(&self, x: i64, y: i64) -> bool {
        x >= self.x_min && x <= self.x_max && y >= self.y_min && y <= self.y_max
    }

    pub fn contains_rect(&self, other: &Rect) -> bool {
        self.x_min <= other.x_min
            && other.x_max <= self.x_max
            && self.y_min <= other.y_min
            && other.y_max <= self.y_max
    }

    /// The rectangle enlarged by `pad` in every direction, so dims grow by
    /// (2 pad, 2 pad).
    pub fn grow(&self, pad: i64) -> Result<Self, GeometryError> {
        Rect::new(
            self.x_min - pad,
            self.x_max + pad,
            self.y_min - pad,
            self.y_max + pad,
        )
    }

    /// Row-major iterator over all sites.
    pub fn sites(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        let xs = self.x_min..=self.x_max;
        (self.y_min..=self.y_max).flat_map(move |y| xs.clone().map(move |x| (x, y)))
    }
}

fn span(x_min: i64, x_max: i64, y_min: i64, y_max: i64) -> Option<Rect> {
    if x_min > x_max || y_min > y_max {
        None
    } else {
        Some(Rect {
            x_min,
            x_max,
            y_min,
            y_max,
        })
    }
}

/// The eight frame strips S1..S8 between nested rectangles, laid out
/// counterclockwise from the bottom-left corner:
///
/// ```text
///   S7 | S6 | S5
///   ---+----+---
///   S8 |  R | S4
///   ---+----+---
///   S1 | S2 | S3
/// ```
///
/// Strips may be empty; together with `inner` they partition `outer`.
pub fn frame_strips(inner: &Rect, outer: &Rect) -> Result<[Option<Rect>; 8], GeometryError> {
    if !outer.contains_rect(inner) {
        return Err(GeometryError::NotNested);
    }
    let (ix0, ix1, iy0, iy1) = (inner.x_min, inner.x_max, inner.y_min, inner.y_max);
    let (ox0, ox1, oy0, oy1) = (outer.x_min, outer.x_max, outer.y_min, outer.y_max);
    Ok([
        span(ox0, ix0 - 1, oy0, iy0 - 1), // S1 bottom-left
        span(ix0, ix1, oy0, iy0 - 1),     // S2 bottom
        span(ix1 + 1, ox1, oy0, iy0 - 1), // S3 bottom-right
        span(ix1 + 1, ox1, iy0, iy1),     // S4 right
        span(ix1 + 1, ox1, iy1 + 1, oy1), // S5 top-right
        span(ix0, ix1, iy1 + 1, oy1),     // S6 top
        span(ox0, ix0 - 1, iy1 + 1, oy1), // S7 top-left
        span(ox0, ix0 - 1, iy0, iy1),     // S8 left
    ])
}

/// The four full-height column unions and full-width row unions of the
/// frame: left = S1+S8+S7, right = S3+S4+S5, bottom = S1+S2+S3,
/// top = S7+S6+S5.
#[derive(Clone, Copy, Debug)]
pub struct FrameSides {
    pub left: Option<Rect>,
    pub right: Option<Rect>,
    pub bottom: Option<Rect>,
    pub top: Option<Rect>,
}

pub fn frame_side_unions(inner: &Rect, outer: &Rect) -> Result<FrameSides, GeometryError> {
    if !outer.contains_rect(inner) {
        return Err(GeometryError::NotNested);
    }
    Ok(FrameSides {
        left: span(outer.x_min, inner.x_min - 1, outer.y_min, outer.y_max),
        right: span(inner.x_max + 1, outer.x_max, outer.y_min, outer.y_max),
        bottom: span(outer.x_min, outer.x_max, outer.y_min, inner.y_min - 1),
        top: span(outer.x_min, outer.x_max, inner.y_max + 1, outer.y_max),
    })
}
