use crate::error::{GeomError, Result};

/// Axis-aligned rectangle `[x_min, x_max] × [y_min, y_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Rect {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Result<Self> {
        let ok = [x_min, x_max, y_min, y_max].iter().all(|v| v.is_finite()) && x_min < x_max && y_min < y_max;
        if ok {
            Ok(Self { x_min, x_max, y_min, y_max })
        } else {
            Err(GeomError::InvalidParameter(format!(
                "empty or non-finite rectangle [{x_min},{x_max}]x[{y_min},{y_max}]"
            )))
        }
    }

    pub fn square(half_width: f64) -> Self {
        Self { x_min: -half_width, x_max: half_width, y_min: -half_width, y_max: half_width }
    }
}

/// `n × n` uniform grid over a rectangle, enumerated row-major
/// (`y` index outer, `x` index inner).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub rect: Rect,
    pub n: usize,
}

impl Grid {
    pub fn new(rect: Rect, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(GeomError::InvalidParameter(format!("grid needs at least 2 points per side, got {n}")));
        }
        Ok(Self { rect, n })
    }

    fn coord(lo: f64, hi: f64, i: usize, n: usize) -> f64 {
        if i + 1 == n {
            hi
        } else {
            lo + (hi - lo) * i as f64 / (n - 1) as f64
        }
    }

    pub fn point(&self, index: usize) -> (f64, f64) {
        let (j, i) = (index / self.n, index % self.n);
        (
            Self::coord(self.rect.x_min, self.rect.x_max, i, self.n),
            Self::coord(self.rect.y_min, self.rect.y_max, j, self.n),
        )
    }

    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        (0..self.len()).map(|k| self.point(k))
    }
}
