//! Piecewise-constant functions on the unit circle.
//!
//! Points of the circle are parameterized by an angle in `(-pi, pi]`.
//! The measure of a set is its angular length divided by `2*pi`, so the
//! whole circle has measure one. Endpoint values live on null sets and are
//! never observed by any functional in this crate.

use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const TWO_PI: f64 = 2.0 * PI;

/// Maps an arbitrary finite angle into `(-pi, pi]`. Angles already in range
/// are returned unchanged.
pub fn normalize_angle(theta: f64) -> f64 {
    if theta > -PI && theta <= PI {
        return theta;
    }
    let mut t = theta.rem_euclid(TWO_PI);
    if t > PI {
        t -= TWO_PI;
    }
    if t <= -PI {
        t = PI;
    }
    t
}

/// A connected arc of the circle: the points `start + s` for `s` in
/// `(0, length)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    start: f64,
    length: f64,
}

impl Arc {
    /// Builds an arc. `start` is normalized into `(-pi, pi]`; `length` must
    /// lie in `(0, 2*pi]`.
    pub fn new(start: f64, length: f64) -> Result<Self> {
        if !start.is_finite() || !length.is_finite() || !(0.0..=TWO_PI).contains(&length) {
            return Err(Error::InvalidArc { start, length });
        }
        if length == 0.0 {
            return Err(Error::ZeroMeasureArc);
        }
        Ok(Arc {
            start: normalize_angle(start),
            length,
        })
    }

    /// The arc `(a, b)` traversed counterclockwise, `a < b <= a + 2*pi`.
    pub fn between(a: f64, b: f64) -> Result<Self> {
        Arc::new(a, b - a)
    }

    pub fn full_circle(start: f64) -> Self {
        Arc {
            start: normalize_angle(start),
            length: TWO_PI,
        }
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// End angle without wrapping; may exceed `pi`.
    pub fn end(&self) -> f64 {
        self.start + self.length
    }

    /// Normalized Lebesgue measure.
    pub fn measure(&self) -> f64 {
        self.length / TWO_PI
    }

    pub fn is_full_circle(&self) -> bool {
        self.length == TWO_PI
    }
}

/// A real piecewise-constant function on the circle.
///
/// `values[i]` is taken on the gap from `breakpoints[i]` to
/// `breakpoints[i + 1]`; the last value covers the wrap-around gap from the
/// last breakpoint back to the first one. A single breakpoint describes a
/// constant function.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl StepFunction {
    /// Validates and builds a step function.
    ///
    /// Breakpoints must be finite, strictly increasing and lie in
    /// `[-pi, pi]`; `-pi` is accepted as an alias of `pi`, but not together
    /// with `pi` itself.
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if breakpoints.is_empty() || breakpoints.len() != values.len() {
            return Err(Error::LengthMismatch {
                breakpoints: breakpoints.len(),
                values: values.len(),
            });
        }
        for (i, (&b, &v)) in breakpoints.iter().zip(&values).enumerate() {
            if !b.is_finite() || !v.is_finite() {
                return Err(Error::NonFinite(i));
            }
            if !(-PI..=PI).contains(&b) {
                return Err(Error::AngleOutOfRange(b));
            }
        }
        for (i, w) in breakpoints.windows(2).enumerate() {
            if w[0] >= w[1] {
                return Err(Error::UnsortedBreakpoints { index: i + 1 });
            }
        }
        let k = breakpoints.len();
        if k > 1 && breakpoints[k - 1] - breakpoints[0] >= TWO_PI {
            return Err(Error::UnsortedBreakpoints { index: k - 1 });
        }
        Ok(StepFunction {
            breakpoints,
            values,
        })
    }

    /// The constant function `c`.
    pub fn constant(c: f64) -> Self {
        StepFunction {
            breakpoints: vec![0.0],
            values: vec![c],
        }
    }

    /// `c` on the arc, zero elsewhere.
    pub fn indicator(arc: &Arc, c: f64) -> Self {
        if arc.is_full_circle() {
            return StepFunction::constant(c);
        }
        let a = arc.start();
        let b = normalize_angle(arc.end());
        if a < b {
            StepFunction {
                breakpoints: vec![a, b],
                values: vec![c, 0.0],
            }
        } else {
            StepFunction {
                breakpoints: vec![b, a],
                values: vec![0.0, c],
            }
        }
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Number of segments (equal to the number of breakpoints).
    pub fn len(&self) -> usize {
        self.breakpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.breakpoints.is_empty()
    }

    /// Angular length of segment `i`, in radians.
    pub fn segment_length(&self, i: usize) -> f64 {
        let k = self.breakpoints.len();
        if i + 1 < k {
            self.breakpoints[i + 1] - self.breakpoints[i]
        } else {
            (self.breakpoints[0] - self.breakpoints[k - 1]) + TWO_PI
        }
    }

    pub fn segment_lengths(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(move |i| self.segment_length(i))
    }

    /// Value at angle `theta`. At a breakpoint this returns the value of the
    /// segment that starts there.
    pub fn eval(&self, theta: f64) -> f64 {
        self.values[self.segment_containing(normalize_angle(theta))]
    }

    fn segment_containing(&self, theta: f64) -> usize {
        let idx = self.breakpoints.partition_point(|&b| b <= theta);
        if idx == 0 {
            self.len() - 1
        } else {
            idx - 1
        }
    }

    /// `integral over the whole circle of |f|^p dm`.
    pub fn total_integral_p(&self, p: f64) -> f64 {
        self.values
            .iter()
            .zip(self.segment_lengths())
            .map(|(v, len)| v.abs().powf(p) * len)
            .sum::<f64>()
            / TWO_PI
    }

    /// `integral over arc of |f|^p dm`, summed exactly over segment overlaps.
    pub fn integral_p(&self, arc: &Arc, p: f64) -> f64 {
        let base = self.breakpoints[0];
        let period_end = base + TWO_PI;
        let mut start = arc.start();
        if start < base {
            start += TWO_PI;
        }
        if start >= period_end {
            start -= TWO_PI;
        }
        let end = start + arc.length();
        let mut total = self.lifted_integral(start, end.min(period_end), p);
        if end > period_end {
            total += self.lifted_integral(base, end - TWO_PI, p);
        }
        total / TWO_PI
    }

    /// Integral of `|f|^p d(theta)` over `[a, b]`, where
    /// `breakpoints[0] <= a <= b <= breakpoints[0] + 2*pi`.
    fn lifted_integral(&self, a: f64, b: f64, p: f64) -> f64 {
        if b <= a {
            return 0.0;
        }
        let k = self.len();
        let first = self
            .breakpoints
            .partition_point(|&x| x <= a)
            .saturating_sub(1);
        let mut total = 0.0;
        for i in first..k {
            let lo = self.breakpoints[i];
            if lo >= b {
                break;
            }
            let hi = if i + 1 < k {
                self.breakpoints[i + 1]
            } else {
                self.breakpoints[0] + TWO_PI
            };
            let overlap = hi.min(b) - lo.max(a);
            if overlap > 0.0 && self.values[i] != 0.0 {
                total += self.values[i].abs().powf(p) * overlap;
            }
        }
        total
    }

    /// `c * f`.
    pub fn scaled(&self, c: f64) -> Self {
        StepFunction {
            breakpoints: self.breakpoints.clone(),
            values: self.values.iter().map(|v| c * v).collect(),
        }
    }

    /// `|f|`.
    pub fn abs(&self) -> Self {
        StepFunction {
            breakpoints: self.breakpoints.clone(),
            values: self.values.iter().map(|v| v.abs()).collect(),
        }
    }

    /// The function `theta -> f(theta - shift)`, i.e. `f` rotated
    /// counterclockwise by `shift`.
    pub fn rotated(&self, shift: f64) -> Result<Self> {
        let mut pairs: Vec<(f64, f64)> = self
            .breakpoints
            .iter()
            .zip(&self.values)
            .map(|(&b, &v)| (normalize_angle(b + shift), v))
            .collect();
        // Normalization keeps the circular order; only the cut position moves.
        let cut = pairs
            .iter()
            .enumerate()
            .min_by(|a, b| a.1 .0.total_cmp(&b.1 .0))
            .map(|(i, _)| i)
            .unwrap_or(0);
        pairs.rotate_left(cut);
        let (breakpoints, values) = pairs.into_iter().unzip();
        StepFunction::new(breakpoints, values)
    }

    /// Merges adjacent segments carrying equal values, including across the
    /// wrap-around gap.
    pub fn canonicalize(&self) -> Self {
        let k = self.len();
        let mut breakpoints = Vec::with_capacity(k);
        let mut values = Vec::with_capacity(k);
        for i in 0..k {
            if i > 0 && self.values[i] == self.values[i - 1] {
                continue;
            }
            breakpoints.push(self.breakpoints[i]);
            values.push(self.values[i]);
        }
        if values.len() > 1 && values[0] == values[values.len() - 1] {
            breakpoints.remove(0);
            values.remove(0);
        }
        StepFunction {
            breakpoints,
            values,
        }
    }

    /// Sorted union of the breakpoints of `self` and `other`.
    pub fn merged_breakpoints(&self, other: &StepFunction) -> Vec<f64> {
        let mut all: Vec<f64> = self
            .breakpoints
            .iter()
            .chain(other.breakpoints())
            .copied()
            .collect();
        all.sort_by(f64::total_cmp);
        all.dedup();
        all
    }
}
