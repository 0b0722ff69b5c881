//! Two equimeasurable step functions on the circle, one of which has
//! unbounded Morrey ratios near `theta = 0` while the other stays bounded.
//!
//! Both functions take the value `n^alpha`, `alpha = (1 - lambda + eps)/p`,
//! on a block of angular length `1/(n(n+1))` for every `n >= 16`:
//!
//! * `f` stacks the blocks against the origin, on `(1/(n+1), 1/n)`;
//! * `g` spreads them out, on `gamma_n = (1/sqrt(n) - 1/(n(n+1)), 1/sqrt(n))`.
//!
//! The materialized functions are truncated at a finite `N`. Statements
//! about the untruncated `f` go through [`f_prefix_ratio`], which sums the
//! series exactly up to a cutoff and encloses the remainder by integral
//! comparison.
//!
//! All block endpoints are rounded to multiples of `2^-54`. Every endpoint
//! lies in `(0, 1/4]`, where such multiples are exactly representable, so
//! block lengths are exact differences and `f`, `g` carry bit-identical
//! level-set measures.

use std::f64::consts::PI;

use crate::circle_step::{Arc, StepFunction, TWO_PI};
use crate::error::{Error, Result};
use crate::morrey::MorreyParams;

/// Index of the first block.
pub const FIRST_BLOCK: usize = 16;

const GRID_SCALE: f64 = 18_014_398_509_481_984.0; // 2^54

fn snap(x: f64) -> f64 {
    (x * GRID_SCALE).round() / GRID_SCALE
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CounterexampleParams {
    p: f64,
    lambda: f64,
    eps: f64,
}

impl CounterexampleParams {
    pub fn new(p: f64, lambda: f64, eps: f64) -> Result<Self> {
        if !(p.is_finite() && p >= 1.0) {
            return Err(Error::POutOfRange(p));
        }
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(Error::LambdaOutOfRange(lambda));
        }
        let bound = (lambda / 2.0).min(1.0 - lambda);
        if !(eps > 0.0 && eps < bound) {
            return Err(Error::EpsOutOfRange { eps, bound });
        }
        Ok(CounterexampleParams { p, lambda, eps })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Exponent of the block values, `(1 - lambda + eps) / p`.
    pub fn alpha(&self) -> f64 {
        (1.0 - self.lambda + self.eps) / self.p
    }

    pub fn morrey(&self) -> MorreyParams {
        MorreyParams::new(self.p, self.lambda).expect("validated parameters")
    }

    fn block_value(&self, n: usize) -> f64 {
        (n as f64).powf(self.alpha())
    }
}

pub fn validate_params(p: f64, lambda: f64, eps: f64) -> Result<CounterexampleParams> {
    CounterexampleParams::new(p, lambda, eps)
}

fn check_index(n: usize) -> Result<()> {
    if n < FIRST_BLOCK {
        Err(Error::NTooSmall(n))
    } else {
        Ok(())
    }
}

/// Left endpoint `1/n` of `f`'s block `n - 1`, on the dyadic grid.
fn reciprocal(n: usize) -> f64 {
    snap(1.0 / n as f64)
}

/// Exact angular length of block `n`: `1/n - 1/(n+1)` on the grid.
fn block_length(n: usize) -> f64 {
    reciprocal(n) - reciprocal(n + 1)
}

/// `gamma_n` as (left, right) endpoints.
fn gamma_endpoints(n: usize) -> (f64, f64) {
    let right = snap(1.0 / (n as f64).sqrt());
    (right - block_length(n), right)
}

pub fn build_f(params: &CounterexampleParams, n_max: usize) -> Result<StepFunction> {
    check_index(n_max)?;
    let breakpoints: Vec<f64> = (FIRST_BLOCK..=n_max + 1).rev().map(reciprocal).collect();
    let values: Vec<f64> = (FIRST_BLOCK..=n_max)
        .rev()
        .map(|n| params.block_value(n))
        .chain(std::iter::once(0.0))
        .collect();
    StepFunction::new(breakpoints, values)
}

pub fn build_g(params: &CounterexampleParams, n_max: usize) -> Result<StepFunction> {
    check_index(n_max)?;
    let mut breakpoints = Vec::with_capacity(2 * (n_max - FIRST_BLOCK + 1));
    let mut values = Vec::with_capacity(breakpoints.capacity());
    let mut previous_right = f64::NEG_INFINITY;
    for n in (FIRST_BLOCK..=n_max).rev() {
        let (left, right) = gamma_endpoints(n);
        if left <= previous_right {
            return Err(Error::OverlapDetected(n, n + 1));
        }
        breakpoints.extend([left, right]);
        values.extend([params.block_value(n), 0.0]);
        previous_right = right;
    }
    StepFunction::new(breakpoints, values)
}

pub fn gamma_arc(n: usize) -> Result<Arc> {
    check_index(n)?;
    let (left, right) = gamma_endpoints(n);
    Arc::new(left, right - left)
}

/// The indices `(n0, n1)` of the rightmost and leftmost shifted blocks an
/// arc can meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexBounds {
    pub n0: u64,
    pub n1: u64,
}

/// Outcome of [`arc_index_bounds`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcIndex {
    /// The arc meets exactly the blocks `gamma_n` with `n0 <= n <= n1`.
    Meets(IndexBounds),
    /// The arc meets no block `gamma_n`, `n >= 16`.
    MissesAll,
}

fn gamma_left_exact(n: u64) -> f64 {
    let nf = n as f64;
    1.0 / nf.sqrt() - 1.0 / (nf * (nf + 1.0))
}

fn gamma_right_exact(n: u64) -> f64 {
    1.0 / (n as f64).sqrt()
}

fn arc_extent(arc: &Arc) -> Result<(f64, f64)> {
    let inf = arc.start();
    let sup = arc.end();
    if !(inf > 0.0 && sup <= 0.25) {
        return Err(Error::ArcOutsideDomain { inf, sup });
    }
    Ok((inf, sup))
}

/// `n1 = max{n : inf < 1/sqrt(n)}` and
/// `n0 = min{n : sup > 1/sqrt(n) - 1/(n(n+1))}` over all positive integers,
/// without clamping to the blocks that exist.
pub fn raw_index_bounds(arc: &Arc) -> Result<IndexBounds> {
    let (inf, sup) = arc_extent(arc)?;

    let mut n1 = ((1.0 / (inf * inf)).floor() as u64).max(1);
    while inf < gamma_right_exact(n1 + 1) {
        n1 += 1;
    }
    while n1 > 1 && inf >= gamma_right_exact(n1) {
        n1 -= 1;
    }

    // The left endpoints decrease from n = 2 on; n = 1 is checked apart.
    let meets = |n: u64| sup > gamma_left_exact(n);
    let n0 = if meets(1) {
        1
    } else {
        let mut n = ((1.0 / (sup * sup)).floor() as u64).max(2);
        while n > 2 && meets(n - 1) {
            n -= 1;
        }
        while !meets(n) {
            n += 1;
        }
        n
    };
    Ok(IndexBounds { n0, n1 })
}

/// Index bounds restricted to the blocks `n >= 16`.
pub fn arc_index_bounds(arc: &Arc) -> Result<ArcIndex> {
    let raw = raw_index_bounds(arc)?;
    let n0 = raw.n0.max(FIRST_BLOCK as u64);
    if n0 > raw.n1 {
        Ok(ArcIndex::MissesAll)
    } else {
        Ok(ArcIndex::Meets(IndexBounds { n0, n1: raw.n1 }))
    }
}

fn check_t(t: f64) -> Result<()> {
    if t > 0.0 && t < 1.0 / 16.0 {
        Ok(())
    } else {
        Err(Error::TOutOfRange(t))
    }
}

/// `C t^(-eps)` with `C = (4 pi)^(lambda - 1) / (2^eps (lambda - eps))`, a
/// lower bound for the ratio of the untruncated `f` on `(0, t)`.
pub fn divergence_lower_bound(params: &CounterexampleParams, t: f64) -> Result<f64> {
    check_t(t)?;
    Ok(divergence_constant(params) * t.powf(-params.eps))
}

pub fn divergence_constant(params: &CounterexampleParams) -> f64 {
    let (lambda, eps) = (params.lambda, params.eps);
    (4.0 * PI).powf(lambda - 1.0) / (2f64.powf(eps) * (lambda - eps))
}

/// A closed interval known to contain some exact quantity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundedValue {
    pub lo: f64,
    pub hi: f64,
}

impl BoundedValue {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// Smallest tail tolerance accepted by [`f_prefix_ratio`]; below it the
/// floating-point slack dominates the enclosure.
pub const MIN_TAIL_TOL: f64 = 1e-12;

/// Encloses `sum_{n > k} n^(-a)` for `a > 1`. The summand is convex and
/// decreasing, so the trapezoid rule over `[k+1, inf)` underestimates and
/// the midpoint rule over `[k+1/2, inf)` overestimates.
fn power_tail(a: f64, k: f64) -> (f64, f64) {
    let lo = (k + 1.0).powf(1.0 - a) / (a - 1.0) + 0.5 * (k + 1.0).powf(-a);
    let hi = (k + 0.5).powf(1.0 - a) / (a - 1.0);
    (lo, hi)
}

/// Encloses `sum_{n > k} n^(-s) / (n + 1)`, using
/// `n^(-s)/(n+1) = n^(-1-s) - n^(-1-s)/(n+1)` and
/// `n^(-2-s) - n^(-3-s) <= n^(-1-s)/(n+1) <= n^(-2-s)`.
fn block_tail(s: f64, k: f64) -> (f64, f64) {
    let (h1_lo, h1_hi) = power_tail(1.0 + s, k);
    let (h2_lo, h2_hi) = power_tail(2.0 + s, k);
    let (_, h3_hi) = power_tail(3.0 + s, k);
    (h1_lo - h2_hi, h1_hi - (h2_lo - h3_hi))
}

/// Neumaier-compensated running sum of positive terms.
#[derive(Debug, Default, Clone, Copy)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Relative rounding allowance applied to every computed quantity; each
/// term, tail bound and the normalization carry a few ulps of error and the
/// compensated sum of positive terms adds at most a few more.
const ROUNDING_SLACK: f64 = 32.0 * f64::EPSILON;

/// Largest cutoff index the enclosure will sum to.
const MAX_CUTOFF: u64 = 1 << 40;

/// Certified enclosure of the Morrey ratio of the untruncated `f` on the arc
/// `(0, t)`, with relative width at most `tail_tol`.
///
/// Blocks inside `(0, t)` contribute `n^(1-lambda+eps) / (n (n+1))`; they
/// are summed one by one up to a cutoff `K` that is pushed out until the
/// closed-form enclosure of the remainder is narrow enough. The result
/// carries a relative slack covering floating-point rounding.
pub fn f_prefix_ratio(
    params: &CounterexampleParams,
    t: f64,
    tail_tol: f64,
) -> Result<BoundedValue> {
    check_t(t)?;
    if tail_tol.is_nan() || tail_tol < MIN_TAIL_TOL || tail_tol.is_infinite() {
        return Err(Error::InvalidTolerance(tail_tol));
    }
    let exponent = 1.0 - params.lambda + params.eps;
    let s = params.lambda - params.eps;
    let term = |n: u64| {
        let nf = n as f64;
        nf.powf(exponent) / (nf * (nf + 1.0))
    };

    // First block fully inside (0, t): smallest n with 1/n <= t.
    let mut n_full = (1.0 / t).ceil() as u64;
    while 1.0 / (n_full as f64) > t {
        n_full += 1;
    }
    while n_full > 1 && 1.0 / ((n_full - 1) as f64) <= t {
        n_full -= 1;
    }

    let mut sum = CompensatedSum::default();
    // Block n_full - 1 straddles t when 1/n_full < t; the overlap t - 1/n_full
    // suffers cancellation, so its error is carried separately.
    let mut partial_error = 0.0;
    let partial = n_full - 1;
    let partial_start = 1.0 / n_full as f64;
    if partial as usize >= FIRST_BLOCK && partial_start < t {
        let height = (partial as f64).powf(exponent);
        sum.add(height * (t - partial_start));
        partial_error = 4.0 * f64::EPSILON * t * height;
    }

    let denom = (t / TWO_PI).powf(params.lambda) * TWO_PI;
    let mut next = n_full;
    let mut chunk: u64 = 64;
    loop {
        let cutoff = next + chunk - 1;
        for n in next..=cutoff {
            sum.add(term(n));
        }
        next = cutoff + 1;

        let (tail_lo, tail_hi) = block_tail(s, cutoff as f64);
        let exact = sum.value();
        let lo =
            ((exact - partial_error + tail_lo.max(0.0)) * (1.0 - ROUNDING_SLACK) / denom).max(0.0);
        let hi = (exact + partial_error + tail_hi) * (1.0 + ROUNDING_SLACK) / denom;
        if hi - lo <= tail_tol * lo {
            return Ok(BoundedValue { lo, hi });
        }
        if cutoff >= MAX_CUTOFF {
            return Err(Error::InvalidTolerance(tail_tol));
        }
        chunk = chunk.saturating_mul(2);
    }
}

/// `phi_lambda(y) = (sqrt(y) - 1)^(-lambda) (y^(lambda/2) - 1)` for `y > 1`.
pub fn phi(lambda: f64, y: f64) -> Result<f64> {
    if y.is_nan() || y <= 1.0 {
        return Err(Error::YOutOfRange(y));
    }
    phi_offset(lambda, y - 1.0)
}

/// `phi_lambda(1 + d)`, evaluated without cancellation for small `d > 0`.
pub fn phi_offset(lambda: f64, d: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::LambdaOutOfRange(lambda));
    }
    if d.is_nan() || d <= 0.0 {
        return Err(Error::YOutOfRange(1.0 + d));
    }
    let root_minus_one = d / ((1.0 + d).sqrt() + 1.0);
    let power_minus_one = (0.5 * lambda * d.ln_1p()).exp_m1();
    Ok(power_minus_one / root_minus_one.powf(lambda))
}

/// Result of the numerical search behind [`phi_sup`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiSupSearch {
    /// Largest sampled (and refined) value of `phi_lambda` on `(1, 1e12]`.
    pub sampled_max: f64,
    pub argmax_y: f64,
    /// `max(sampled_max, 1)`, 1 being the limit at infinity.
    pub value: f64,
}

const PHI_SAMPLES: usize = 100_000;
const PHI_LOG_D_MIN: f64 = -12.0;
const PHI_LOG_D_MAX: f64 = 12.0;

/// Maximizes `phi_lambda` over a log-spaced grid of `y - 1` in
/// `[1e-12, 1e12]`, refines around the best sample by golden-section
/// search, and takes the limit value 1 into account.
pub fn phi_sup_search(lambda: f64) -> Result<PhiSupSearch> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::LambdaOutOfRange(lambda));
    }
    let step = (PHI_LOG_D_MAX - PHI_LOG_D_MIN) / (PHI_SAMPLES - 1) as f64;
    let at = |log_d: f64| phi_offset(lambda, 10f64.powf(log_d)).unwrap_or(f64::NEG_INFINITY);
    let (best_i, _) = (0..PHI_SAMPLES)
        .map(|i| (i, at(PHI_LOG_D_MIN + step * i as f64)))
        .fold(
            (0, f64::NEG_INFINITY),
            |acc, x| if x.1 > acc.1 { x } else { acc },
        );
    let center = PHI_LOG_D_MIN + step * best_i as f64;
    let lo = (center - step).max(PHI_LOG_D_MIN);
    let hi = (center + step).min(PHI_LOG_D_MAX);
    let refined = golden_section_max(&at, lo, hi, 1e-12, 200);
    let (log_d, sampled_max) = [(center, at(center)), (refined, at(refined))]
        .into_iter()
        .fold((center, f64::NEG_INFINITY), |acc, x| {
            if x.1 > acc.1 {
                x
            } else {
                acc
            }
        });
    Ok(PhiSupSearch {
        sampled_max,
        argmax_y: 1.0 + 10f64.powf(log_d),
        value: sampled_max.max(1.0),
    })
}

/// `M_lambda = sup_{y > 1} phi_lambda(y)`, computed numerically.
pub fn phi_sup(lambda: f64) -> Result<f64> {
    Ok(phi_sup_search(lambda)?.value)
}

/// Golden-section search for a maximizer of a unimodal `f` on `[a, b]`.
fn golden_section_max<F: Fn(f64) -> f64>(
    f: &F,
    mut a: f64,
    mut b: f64,
    tol: f64,
    max_iter: usize,
) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..max_iter {
        if (b - a).abs() <= tol {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Upper bound on the ratio of `g` over every arc: 1 for arcs meeting a
/// single block, `2^(lambda+3) M_lambda / (pi lambda)` otherwise.
pub fn g_ratio_upper_bound(params: &CounterexampleParams) -> f64 {
    let lambda = params.lambda;
    let m = phi_sup(lambda).expect("lambda validated");
    (2f64.powf(lambda + 3.0) * m / (PI * lambda)).max(1.0)
}

/// Checks `1/sqrt(n0) - 1/(n0(n0+1)) - 1/sqrt(n1) >= (1/sqrt(n0) - 1/sqrt(n1)) / 2`.
pub fn measure_lower_bound_check(n0: u64, n1: u64) -> Result<bool> {
    if n0 < FIRST_BLOCK as u64 || n0 >= n1 {
        return Err(Error::IndexOutOfRange { n0, n1 });
    }
    let (a, b) = (n0 as f64, n1 as f64);
    let lhs = 1.0 / a.sqrt() - 1.0 / (a * (a + 1.0)) - 1.0 / b.sqrt();
    let rhs = 0.5 * (1.0 / a.sqrt() - 1.0 / b.sqrt());
    Ok(lhs >= rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::{decreasing_rearrangement, distribution, equimeasurable};

    fn base() -> CounterexampleParams {
        validate_params(1.0, 0.5, 0.2).unwrap()
    }

    #[test]
    fn parameter_validation() {
        assert!(validate_params(1.0, 0.5, 0.2).is_ok());
        assert!(matches!(
            validate_params(2.0, 0.5, 0.25),
            Err(Error::EpsOutOfRange { .. })
        ));
        assert!(matches!(
            validate_params(1.0, 0.9, 0.2),
            Err(Error::EpsOutOfRange { .. })
        ));
        assert!(matches!(
            validate_params(1.0, 0.5, 0.0),
            Err(Error::EpsOutOfRange { .. })
        ));
        assert_eq!(
            validate_params(1.0, 0.0, 0.1),
            Err(Error::LambdaOutOfRange(0.0))
        );
        assert_eq!(
            validate_params(1.0, 1.0, 0.1),
            Err(Error::LambdaOutOfRange(1.0))
        );
        assert_eq!(validate_params(0.9, 0.5, 0.1), Err(Error::POutOfRange(0.9)));
    }

    #[test]
    fn snapping_is_exact_below_a_quarter() {
        for n in 16..2000usize {
            let r = reciprocal(n);
            assert!((r - 1.0 / n as f64).abs() <= 0.5 / GRID_SCALE);
            let (l, rr) = gamma_endpoints(n);
            assert_eq!(rr - l, block_length(n));
        }
        assert_eq!(snap(0.25), 0.25);
    }

    #[test]
    fn f_first_block_value() {
        let f = build_f(&base(), 16).unwrap();
        let v = f.eval(0.5 * (1.0 / 17.0 + 1.0 / 16.0));
        assert!((v - 2f64.powf(2.8)).abs() < 1e-13);
        assert!((v - 6.9644).abs() < 1e-4);
    }

    #[test]
    fn f_vanishes_off_its_support() {
        let f = build_f(&base(), 200).unwrap();
        for theta in [-3.0, -1.0, -1e-3, 0.0, 1.0 / 16.0 + 1e-9, 0.1, 1.0, 3.1] {
            assert_eq!(f.eval(theta), 0.0, "theta = {theta}");
        }
        assert!(f.eval(1.0 / 100.5) > 0.0);
    }

    #[test]
    fn g_first_block() {
        let g = build_g(&base(), 16).unwrap();
        assert!((g.breakpoints()[0] - (0.25 - 1.0 / 272.0)).abs() < 1e-16);
        assert!((g.breakpoints()[0] - 0.2463235).abs() < 1e-7);
        assert_eq!(g.breakpoints()[1], 0.25);
        assert!((g.values()[0] - 6.9644).abs() < 1e-4);
    }

    #[test]
    fn g_vanishes_outside_quarter() {
        let g = build_g(&base(), 500).unwrap();
        for theta in [-2.0, -0.1, 0.0, 0.01, 0.2501, 0.3, 2.0] {
            assert_eq!(g.eval(theta), 0.0);
        }
    }

    #[test]
    fn truncation_index_is_checked() {
        assert_eq!(build_f(&base(), 15), Err(Error::NTooSmall(15)));
        assert_eq!(build_g(&base(), 8), Err(Error::NTooSmall(8)));
        assert_eq!(gamma_arc(3), Err(Error::NTooSmall(3)));
    }

    #[test]
    fn equimeasurable_at_several_truncations() {
        for n in [16, 17, 50, 333, 2000] {
            let f = build_f(&base(), n).unwrap();
            let g = build_g(&base(), n).unwrap();
            assert!(equimeasurable(&f, &g, 0.0), "N = {n}");
        }
    }

    #[test]
    fn support_measure_telescopes() {
        // Direct summation of 1/(n(n+1)) for n = 16..N, oracle independent of the grid.
        let n_max = 5000;
        let direct: f64 = (16..=n_max)
            .map(|n| 1.0 / (n as f64 * (n as f64 + 1.0)))
            .sum::<f64>()
            / TWO_PI;
        let d = distribution(&build_f(&base(), n_max).unwrap());
        assert!((d.support_measure() - direct).abs() < 1e-15);
        let limit = 1.0 / (32.0 * PI);
        assert!((limit - 0.0099472).abs() < 1e-7);
        assert!(d.support_measure() < limit);
        assert!(limit - d.support_measure() < 1.0 / (n_max as f64 * TWO_PI));
    }

    #[test]
    fn rearranged_g_is_sorted_blocks() {
        let r = decreasing_rearrangement(&build_g(&base(), 20).unwrap());
        assert_eq!(r.breakpoints()[0], 0.0);
        for (i, n) in (16..=20usize).rev().enumerate() {
            assert!((r.values()[i] - (n as f64).powf(0.7)).abs() < 1e-12);
            let expected = 1.0 / (n as f64 * (n as f64 + 1.0));
            assert!((r.segment_length(i) - expected).abs() < 1e-15);
        }
        assert_eq!(*r.values().last().unwrap(), 0.0);
    }

    #[test]
    fn gamma_arc_examples() {
        let a = gamma_arc(16).unwrap();
        assert!((a.start() - (0.25 - 1.0 / 272.0)).abs() < 1e-16);
        assert!((a.length() - 1.0 / 272.0).abs() < 1e-16);
        assert!((a.measure() - 1.0 / (272.0 * TWO_PI)).abs() < 1e-17);
        assert!((a.measure() - 5.8513e-4).abs() < 1e-8);
        for n in 16..10_000usize {
            let (left, _) = gamma_endpoints(n);
            let (_, right_next) = gamma_endpoints(n + 1);
            assert!(right_next < left, "n = {n}");
        }
    }

    #[test]
    fn index_bounds_example() {
        let arc = Arc::between(0.15, 0.2).unwrap();
        assert_eq!(
            raw_index_bounds(&arc).unwrap(),
            IndexBounds { n0: 25, n1: 44 }
        );
        assert_eq!(
            arc_index_bounds(&arc).unwrap(),
            ArcIndex::Meets(IndexBounds { n0: 25, n1: 44 })
        );
    }

    #[test]
    fn index_bounds_of_gamma_arcs() {
        for n in [16usize, 17, 40, 1000, 123_456] {
            let arc = gamma_arc(n).unwrap();
            let b = IndexBounds {
                n0: n as u64,
                n1: n as u64,
            };
            assert_eq!(arc_index_bounds(&arc).unwrap(), ArcIndex::Meets(b));
        }
    }

    #[test]
    fn index_bounds_domain_and_misses() {
        assert!(matches!(
            arc_index_bounds(&Arc::between(0.2, 0.3).unwrap()),
            Err(Error::ArcOutsideDomain { .. })
        ));
        assert!(matches!(
            arc_index_bounds(&Arc::between(-0.1, 0.1).unwrap()),
            Err(Error::ArcOutsideDomain { .. })
        ));
        // Strictly between gamma_17 and gamma_16.
        let (_, r17) = gamma_endpoints(17);
        let (l16, _) = gamma_endpoints(16);
        let gap = Arc::between(r17 + 1e-6, l16 - 1e-6).unwrap();
        assert_eq!(arc_index_bounds(&gap).unwrap(), ArcIndex::MissesAll);
        let raw = raw_index_bounds(&gap).unwrap();
        assert!(raw.n0 > raw.n1);
    }

    #[test]
    fn divergence_bound_examples() {
        let p = base();
        let b = divergence_lower_bound(&p, 1e-2).unwrap();
        assert!((divergence_constant(&p) - 0.81858).abs() < 1e-4);
        assert!((b - 2.0562).abs() < 1e-3);
        let ratio =
            divergence_lower_bound(&p, 1e-4).unwrap() / divergence_lower_bound(&p, 1e-2).unwrap();
        assert!((ratio - 100f64.powf(0.2)).abs() < 1e-12);
        assert_eq!(
            divergence_lower_bound(&p, 0.0625),
            Err(Error::TOutOfRange(0.0625))
        );
        assert_eq!(
            divergence_lower_bound(&p, 0.0),
            Err(Error::TOutOfRange(0.0))
        );
    }

    #[test]
    fn prefix_ratio_rejects_bad_input() {
        assert_eq!(
            f_prefix_ratio(&base(), 0.1, 1e-8),
            Err(Error::TOutOfRange(0.1))
        );
        assert_eq!(
            f_prefix_ratio(&base(), 1e-3, 0.0),
            Err(Error::InvalidTolerance(0.0))
        );
        assert!(f_prefix_ratio(&base(), 1e-3, f64::NAN).is_err());
    }

    #[test]
    fn prefix_ratio_width_contract() {
        for t in [1e-2, 1.0 / 17.0, 3e-5] {
            let b = f_prefix_ratio(&base(), t, 1e-8).unwrap();
            assert!(b.lo <= b.hi);
            assert!(b.width() <= 1e-8 * b.lo);
        }
    }

    #[test]
    fn tail_enclosure_contains_brute_force_sum() {
        // Brute-force partial sum to a large index plus a crude bound on the rest.
        let s = 0.3;
        let k = 100.0;
        let (lo, hi) = block_tail(s, k);
        let direct: f64 = (101..2_000_001u64)
            .map(|n| (n as f64).powf(-s) / (n as f64 + 1.0))
            .sum();
        let rest_hi = 2_000_000f64.powf(-s) / s;
        assert!(lo <= direct + rest_hi);
        assert!(direct <= hi);
        assert!(hi - lo < 1e-4 * lo);
    }

    #[test]
    fn phi_examples() {
        assert!((phi(0.5, 4.0).unwrap() - (2f64.sqrt() - 1.0)).abs() < 1e-15);
        assert!((phi(0.5, 4.0).unwrap() - 0.41421).abs() < 1e-5);
        assert_eq!(phi(0.5, 1.0), Err(Error::YOutOfRange(1.0)));
        assert_eq!(phi(1.5, 2.0), Err(Error::LambdaOutOfRange(1.5)));
        assert!(phi(0.5, 1.0 + 1e-12).unwrap() < 1e-5);
        assert!((phi(0.5, 1e30).unwrap() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn phi_sup_is_one() {
        for lambda in [0.3, 0.5] {
            let s = phi_sup_search(lambda).unwrap();
            assert_eq!(s.value, 1.0);
            assert!(s.sampled_max <= 1.0);
            assert!(s.sampled_max > 0.95);
        }
        assert_eq!(phi_sup(0.0), Err(Error::LambdaOutOfRange(0.0)));
    }

    #[test]
    fn g_bound_value() {
        let b = g_ratio_upper_bound(&base());
        assert!((b - 7.2025).abs() < 1e-4);
        assert!(g_ratio_upper_bound(&validate_params(1.0, 0.9, 0.05).unwrap()) >= 1.0);
    }

    #[test]
    fn measure_check_examples() {
        assert_eq!(measure_lower_bound_check(16, 17), Ok(true));
        assert_eq!(measure_lower_bound_check(16, 1_000_000), Ok(true));
        assert!(measure_lower_bound_check(15, 17).is_err());
        assert!(measure_lower_bound_check(20, 20).is_err());
    }

    #[test]
    fn golden_section_finds_peak() {
        let x = golden_section_max(&|x: f64| -(x - 0.3) * (x - 0.3), -1.0, 2.0, 1e-10, 200);
        assert!((x - 0.3).abs() < 1e-8);
    }
}
