//! Distribution functions, equimeasurability and decreasing rearrangements.

use std::cmp::Ordering;

use crate::circle_step::{StepFunction, TWO_PI};

/// The distribution of `|f|`: distinct nonzero magnitudes, strictly
/// decreasing, each paired with the normalized measure of its level set.
/// The remaining measure is the zero set of `f`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionSummary {
    entries: Vec<(f64, f64)>,
}

impl DistributionSummary {
    /// `(magnitude, measure)` pairs with magnitudes strictly decreasing.
    pub fn entries(&self) -> &[(f64, f64)] {
        &self.entries
    }

    pub fn support_measure(&self) -> f64 {
        self.entries.iter().map(|e| e.1).sum()
    }

    pub fn zero_set_measure(&self) -> f64 {
        (1.0 - self.support_measure()).max(0.0)
    }

    /// `m{|f| > t}`.
    pub fn measure_above(&self, t: f64) -> f64 {
        self.entries
            .iter()
            .take_while(|e| e.0 > t)
            .map(|e| e.1)
            .sum()
    }
}

/// Level classes of `|f|` as `(magnitude, total angular length)`, sorted by
/// decreasing magnitude. Lengths of equal magnitudes are summed in segment
/// order so every caller sees bit-identical totals.
fn level_classes(f: &StepFunction) -> Vec<(f64, f64)> {
    let mut pieces: Vec<(f64, f64)> = f
        .values()
        .iter()
        .zip(f.segment_lengths())
        .filter(|(v, _)| **v != 0.0)
        .map(|(v, len)| (v.abs(), len))
        .collect();
    pieces.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut classes: Vec<(f64, f64)> = Vec::with_capacity(pieces.len());
    for (mag, len) in pieces {
        match classes.last_mut() {
            Some(last) if last.0 == mag => last.1 += len,
            _ => classes.push((mag, len)),
        }
    }
    classes
}

pub fn distribution(f: &StepFunction) -> DistributionSummary {
    DistributionSummary {
        entries: level_classes(f)
            .into_iter()
            .map(|(mag, len)| (mag, len / TWO_PI))
            .collect(),
    }
}

/// Compares two distributions: magnitudes must agree to relative `tol`
/// and measures to absolute `tol`. With `tol == 0` the summaries must be
/// identical. Negative tolerances behave like zero.
pub fn equimeasurable(f: &StepFunction, g: &StepFunction, tol: f64) -> bool {
    summaries_agree(&distribution(f), &distribution(g), tol)
}

pub fn summaries_agree(a: &DistributionSummary, b: &DistributionSummary, tol: f64) -> bool {
    let tol = tol.max(0.0);
    a.entries.len() == b.entries.len()
        && a.entries
            .iter()
            .zip(&b.entries)
            .all(|(x, y)| (x.0 - y.0).abs() <= tol * x.0.max(y.0) && (x.1 - y.1).abs() <= tol)
}

/// The nonincreasing rearrangement of `|f|` laid out counterclockwise from
/// angle 0: the largest magnitude first, each on an arc of its level-set
/// measure, followed by the zero set.
pub fn decreasing_rearrangement(f: &StepFunction) -> StepFunction {
    let classes = level_classes(f);
    if classes.is_empty() {
        return StepFunction::constant(0.0);
    }
    let has_zero_set = f.values().contains(&0.0);
    if classes.len() == 1 && !has_zero_set {
        return StepFunction::constant(classes[0].0);
    }

    // Positions in [0, 2*pi) measured from angle 0.
    let mut positions = Vec::with_capacity(classes.len() + 1);
    let mut values = Vec::with_capacity(classes.len() + 1);
    let mut pos = 0.0;
    for (mag, len) in &classes {
        if pos >= TWO_PI {
            break;
        }
        positions.push(pos);
        values.push(*mag);
        let next = pos + len;
        // A level set too small to move the cursor is absorbed by rounding.
        if next == pos {
            positions.pop();
            values.pop();
        }
        pos = next;
    }
    if has_zero_set && pos < TWO_PI {
        positions.push(pos);
        values.push(0.0);
    }

    let mut pairs: Vec<(f64, f64)> = positions
        .into_iter()
        .map(|p| {
            if p > std::f64::consts::PI {
                p - TWO_PI
            } else {
                p
            }
        })
        .zip(values)
        .collect();
    let cut = pairs
        .iter()
        .position(|(b, _)| *b < 0.0)
        .unwrap_or(pairs.len());
    pairs.rotate_left(cut);
    let (breakpoints, values): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    StepFunction::new(breakpoints, values)
        .expect("rearranged breakpoints are strictly increasing by construction")
}

/// `|f| <= |g|` almost everywhere, checked on every gap of the merged
/// partition.
pub fn dominated_by(f: &StepFunction, g: &StepFunction) -> bool {
    let points = f.merged_breakpoints(g);
    let k = points.len();
    (0..k).all(|i| {
        let a = points[i];
        let b = if i + 1 < k {
            points[i + 1]
        } else {
            points[0] + TWO_PI
        };
        let mid = 0.5 * (a + b);
        f.eval(mid).abs().partial_cmp(&g.eval(mid).abs()) != Some(Ordering::Greater)
    })
}
