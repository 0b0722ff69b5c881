//! Morrey-space functionals of piecewise-constant functions on the unit
//! circle.
//!
//! * [`circle_step`]: step functions, arcs and exact arc integrals.
//! * [`distribution`]: distribution functions, equimeasurability and
//!   decreasing rearrangements.
//! * [`morrey`]: the Morrey ratio, its exact supremum over arcs and a
//!   brute-force grid oracle.
//! * [`counterexample`]: a pair of equimeasurable functions, one with
//!   bounded and one with unbounded Morrey ratios, together with the
//!   certified estimates that separate them.
//! * [`format`]: the JSON file format for step functions.

pub mod circle_step;
pub mod counterexample;
pub mod distribution;
pub mod error;
pub mod format;
pub mod morrey;

pub use circle_step::{normalize_angle, Arc, StepFunction, TWO_PI};
pub use counterexample::{
    arc_index_bounds, build_f, build_g, divergence_lower_bound, f_prefix_ratio,
    g_ratio_upper_bound, gamma_arc, measure_lower_bound_check, phi, phi_sup, raw_index_bounds,
    validate_params, ArcIndex, BoundedValue, CounterexampleParams, IndexBounds,
};
pub use distribution::{
    decreasing_rearrangement, distribution, equimeasurable, DistributionSummary,
};
pub use error::{Error, Result};
pub use morrey::{
    morrey_norm_exact, morrey_norm_grid, morrey_ratio, sup_over_prefix_arcs, MorreyParams,
    NormResult,
};
