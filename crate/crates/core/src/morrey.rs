//! The Morrey ratio `m(w)^(-lambda) * integral over w of |f|^p dm` and its
//! supremum over arcs.
//!
//! # Exact supremum for step functions
//!
//! Fix the segment `i` holding the start of an arc and the segment `j`
//! holding its end. Write `C` for the `|f|^p`-mass of the fully covered
//! segments in between, `L0` for their length, and `x <= X`, `y <= Y` for
//! the covered parts of the two end segments with `|f|^p` densities `A` and
//! `B`. The ratio is
//!
//! ```text
//! R(x, y) = (C + A x + B y) / (L0 + x + y)^lambda.
//! ```
//!
//! For a fixed total `s = x + y` the numerator is maximized by filling the
//! denser end segment first, so the supremum is taken along a two-leg path
//! on which `h(s) = (c + a s) / (l + s)^lambda`. The sign of `h'(s)` is the
//! sign of `a l - lambda c + a (1 - lambda) s`, which is nondecreasing in
//! `s`; the closed-form stationary point
//! `s* = (lambda c - a l) / (a (1 - lambda))` is therefore a minimum of `h`
//! and every leg attains its maximum at an endpoint. Consequently the
//! supremum is attained on an arc whose endpoints are breakpoints (or on
//! the full circle), and the exact optimizer enumerates those arcs with
//! running sums in `O(n^2)`.
//!
//! Arcs that begin or end with a zero segment are dominated by the arc with
//! that segment removed (same mass, shorter length), so only nonzero
//! segments are used as first or last segment.

use std::f64::consts::PI;

use crate::circle_step::{Arc, StepFunction, TWO_PI};
use crate::error::{Error, Result};

/// Exponents of the Morrey functional: `1 <= p < inf`, `0 <= lambda < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MorreyParams {
    p: f64,
    lambda: f64,
}

impl MorreyParams {
    pub fn new(p: f64, lambda: f64) -> Result<Self> {
        if !(p.is_finite() && p >= 1.0) {
            return Err(Error::POutOfRange(p));
        }
        if !(0.0..1.0).contains(&lambda) {
            return Err(Error::LambdaOutOfRange(lambda));
        }
        Ok(MorreyParams { p, lambda })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormResult {
    /// `ratio_sup^(1/p)`.
    pub value: f64,
    /// Supremum of the un-rooted ratio.
    pub ratio_sup: f64,
    /// An arc attaining the supremum.
    pub argmax: Arc,
}

impl NormResult {
    fn new(ratio_sup: f64, argmax: Arc, params: &MorreyParams) -> Self {
        NormResult {
            value: ratio_sup.powf(1.0 / params.p),
            ratio_sup,
            argmax,
        }
    }
}

pub fn morrey_ratio(f: &StepFunction, arc: &Arc, params: &MorreyParams) -> f64 {
    f.integral_p(arc, params.p) / arc.measure().powf(params.lambda)
}

/// Best candidate so far. Ties go to the shorter arc, then to the smaller
/// start angle.
#[derive(Debug, Clone, Copy)]
struct Best {
    score: f64,
    length: f64,
    start: f64,
}

impl Best {
    fn offer(&mut self, score: f64, length: f64, start: f64) {
        let better = score > self.score
            || (score == self.score
                && (length < self.length || (length == self.length && start < self.start)));
        if better {
            *self = Best {
                score,
                length,
                start,
            };
        }
    }
}

/// Exact supremum of the Morrey ratio over all arcs.
pub fn morrey_norm_exact(f: &StepFunction, params: &MorreyParams) -> NormResult {
    let k = f.len();
    let breakpoints = f.breakpoints();
    let lengths: Vec<f64> = f.segment_lengths().collect();
    let masses: Vec<f64> = f
        .values()
        .iter()
        .zip(&lengths)
        .map(|(v, len)| {
            if *v == 0.0 {
                0.0
            } else {
                v.abs().powf(params.p) * len
            }
        })
        .collect();
    let total_mass: f64 = masses.iter().sum();
    let full = Arc::full_circle(breakpoints[0]);

    // With lambda = 0 the ratio is the plain integral, largest on the whole circle.
    if params.lambda == 0.0 || total_mass == 0.0 {
        return NormResult::new(f.total_integral_p(params.p), full, params);
    }

    let lambda = params.lambda;
    // Scores are mass / length^lambda in radians; the normalized ratio is
    // score * (2 pi)^(lambda - 1).
    let mut best = Best {
        score: total_mass / TWO_PI.powf(lambda),
        length: TWO_PI,
        start: f64::INFINITY,
    };
    for i in (0..k).filter(|&i| masses[i] > 0.0) {
        let mut mass = 0.0;
        let mut length = 0.0;
        for step in 0..k - 1 {
            let j = (i + step) % k;
            mass += masses[j];
            length += lengths[j];
            if masses[j] == 0.0 {
                continue;
            }
            let denom = length.powf(lambda);
            best.offer(mass / denom, length, breakpoints[i]);
            // Every longer arc from this start scores at most total_mass / denom.
            if total_mass <= best.score * denom {
                break;
            }
        }
    }

    let scale = TWO_PI.powf(lambda - 1.0);
    if best.length >= TWO_PI {
        return NormResult::new(f.total_integral_p(params.p), full, params);
    }
    let argmax = Arc::new(best.start, best.length).expect("candidate arcs have positive length");
    NormResult::new(best.score * scale, argmax, params)
}

/// Brute-force lower bound: the best ratio over arcs whose endpoints lie on
/// the breakpoints of `f` together with `refinement` equally spaced angles.
/// Returns the norm (the `p`-th root).
pub fn morrey_norm_grid(f: &StepFunction, params: &MorreyParams, refinement: usize) -> Result<f64> {
    if refinement < 2 {
        return Err(Error::InvalidRefinement(refinement));
    }
    let mut points: Vec<f64> = (1..=refinement)
        .map(|j| -PI + TWO_PI * (j as f64) / (refinement as f64))
        .chain(f.breakpoints().iter().copied())
        .collect();
    points.sort_by(f64::total_cmp);
    points.dedup();

    let n = points.len();
    let mut lengths = Vec::with_capacity(n);
    let mut masses = Vec::with_capacity(n);
    for i in 0..n {
        let a = points[i];
        let b = if i + 1 < n {
            points[i + 1]
        } else {
            points[0] + TWO_PI
        };
        let len = b - a;
        let v = f.eval(0.5 * (a + b)).abs().powf(params.p);
        lengths.push(len);
        masses.push(v * len);
    }
    let total_mass: f64 = masses.iter().sum();
    let lambda = params.lambda;
    let density_scale = TWO_PI.powf(lambda - 1.0);
    let mut best = total_mass / TWO_PI.powf(lambda);
    for i in 0..n {
        let mut mass = 0.0;
        let mut length = 0.0;
        for step in 0..n - 1 {
            let j = (i + step) % n;
            mass += masses[j];
            length += lengths[j];
            // (length / 2 pi)^lambda >= length / 2 pi bounds the score by a density.
            if mass <= best * length * density_scale {
                continue;
            }
            let denom = length.powf(lambda);
            let score = mass / denom;
            if score > best {
                best = score;
            }
            if total_mass <= best * denom {
                break;
            }
        }
    }
    let ratio = best * TWO_PI.powf(lambda - 1.0);
    Ok(ratio.powf(1.0 / params.p))
}

/// Ratios on the arcs `(0, t)` for each `t` in `t_list`.
pub fn sup_over_prefix_arcs(
    f: &StepFunction,
    params: &MorreyParams,
    t_list: &[f64],
) -> Result<Vec<(f64, f64)>> {
    t_list
        .iter()
        .map(|&t| {
            let arc = Arc::new(0.0, t)?;
            Ok((t, morrey_ratio(f, &arc, params)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: f64, lambda: f64) -> MorreyParams {
        MorreyParams::new(p, lambda).unwrap()
    }

    #[test]
    fn param_validation() {
        assert_eq!(MorreyParams::new(0.5, 0.5), Err(Error::POutOfRange(0.5)));
        assert_eq!(
            MorreyParams::new(f64::INFINITY, 0.5),
            Err(Error::POutOfRange(f64::INFINITY))
        );
        assert_eq!(
            MorreyParams::new(1.0, 1.0),
            Err(Error::LambdaOutOfRange(1.0))
        );
        assert!(MorreyParams::new(1.0, 0.0).is_ok());
    }

    #[test]
    fn ratio_examples() {
        let quarter = Arc::new(0.3, PI / 2.0).unwrap();
        let one = StepFunction::constant(1.0);
        for p in [1.0, 2.0, 3.5] {
            assert!((morrey_ratio(&one, &quarter, &params(p, 0.5)) - 0.5).abs() < 1e-15);
        }
        let f = StepFunction::new(vec![-1.0, 2.0], vec![3.0, -0.5]).unwrap();
        let full = Arc::full_circle(0.0);
        assert_eq!(
            morrey_ratio(&f, &full, &params(2.0, 0.0)),
            f.integral_p(&full, 2.0)
        );
        let ind = StepFunction::indicator(&quarter, 1.0);
        assert!((morrey_ratio(&ind, &quarter, &params(1.0, 0.5)) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn exact_norm_of_constant() {
        let r = morrey_norm_exact(&StepFunction::constant(-3.0), &params(2.0, 0.4));
        assert!((r.value - 3.0).abs() < 1e-14);
        assert!(r.argmax.is_full_circle());
    }

    #[test]
    fn exact_norm_of_indicator() {
        let arc = Arc::new(1.0, PI / 2.0).unwrap();
        let f = StepFunction::indicator(&arc, 1.0);
        let r = morrey_norm_exact(&f, &params(1.0, 0.5));
        assert!((r.value - 0.5).abs() < 1e-15);
        assert_eq!(r.argmax, arc);
    }

    #[test]
    fn zero_function_norm() {
        let r = morrey_norm_exact(&StepFunction::constant(0.0), &params(1.0, 0.5));
        assert_eq!(r.value, 0.0);
        assert!(r.argmax.is_full_circle());
    }

    #[test]
    fn wrap_around_optimum() {
        // A bump straddling the cut at pi.
        let f = StepFunction::new(vec![-3.0, 3.0], vec![0.0, 4.0]).unwrap();
        let r = morrey_norm_exact(&f, &params(1.0, 0.5));
        assert_eq!(r.argmax.start(), 3.0);
        assert!((r.argmax.length() - (TWO_PI - 6.0)).abs() < 1e-14);
        let direct = morrey_ratio(&f, &r.argmax, &params(1.0, 0.5));
        assert!((direct - r.ratio_sup).abs() <= 1e-12 * r.ratio_sup);
    }

    #[test]
    fn grid_oracle_examples() {
        let one = StepFunction::constant(1.0);
        assert!((morrey_norm_grid(&one, &params(1.0, 0.5), 16).unwrap() - 1.0).abs() < 1e-14);
        let arc = Arc::new(0.2, PI / 2.0).unwrap();
        let ind = StepFunction::indicator(&arc, 1.0);
        let g = morrey_norm_grid(&ind, &params(1.0, 0.5), 8).unwrap();
        assert!((g - 0.5).abs() < 1e-15);
        assert_eq!(
            morrey_norm_grid(&one, &params(1.0, 0.5), 1),
            Err(Error::InvalidRefinement(1))
        );
    }

    #[test]
    fn prefix_arcs_of_constant_and_zero() {
        let t_list = [0.1, 1.0, 3.0];
        let rows =
            sup_over_prefix_arcs(&StepFunction::constant(1.0), &params(1.0, 0.5), &t_list).unwrap();
        for (t, r) in rows {
            assert!((r - (t / TWO_PI).sqrt()).abs() < 1e-15);
        }
        let rows =
            sup_over_prefix_arcs(&StepFunction::constant(0.0), &params(1.0, 0.5), &t_list).unwrap();
        assert!(rows.iter().all(|(_, r)| *r == 0.0));
        assert!(
            sup_over_prefix_arcs(&StepFunction::constant(1.0), &params(1.0, 0.5), &[0.0]).is_err()
        );
    }

    /// Dense sampling of one leg `h(s) = (c + a s) / (l + s)^lambda`
    /// confirms the closed-form stationary point is a minimum, so the
    /// leg maximum sits at an endpoint.
    #[test]
    fn leg_stationary_point_is_a_minimum() {
        let cases = [
            (2.0, 0.5, 0.3, 0.5, 4.0),
            (5.0, 1.0, 1.0, 0.7, 10.0),
            (1.0, 3.0, 0.1, 0.2, 2.0),
            (0.0, 1.0, 0.0, 0.5, 1.0),
        ];
        for (c, a, l, lambda, smax) in cases {
            let h = |s: f64| (c + a * s) / f64::powf(l + s, lambda);
            let s_star: f64 = (lambda * c - a * l) / (a * (1.0 - lambda));
            let samples = 20_000;
            let sampled_max = (0..=samples)
                .map(|i| h(smax * i as f64 / samples as f64))
                .filter(|v| v.is_finite())
                .fold(f64::NEG_INFINITY, f64::max);
            let endpoint_max = h(smax).max(if l > 0.0 || c > 0.0 { h(0.0) } else { 0.0 });
            assert!(sampled_max <= endpoint_max * (1.0 + 1e-12));
            if s_star > 0.0 && s_star < smax {
                let eps = 1e-6 * smax;
                assert!(h(s_star) <= h(s_star - eps) && h(s_star) <= h(s_star + eps));
            }
        }
    }
}
