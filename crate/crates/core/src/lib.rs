//! Fixed-point iteration and quantitative stability certificates in
//! metric-like spaces that need not satisfy the triangle inequality.
//!
//! The crate is organised bottom-up:
//!
//! * [`metric`] — points, distances, axiom probes, the sup-lifting to
//!   function tables, and finite triangle-inequality checks;
//! * [`contraction`] — the four contraction families, condition
//!   verification over evidence pairs, and worst-ratio estimation;
//! * [`picard`] — the successive-approximation engine, windowed Cauchy
//!   acceptance, and the a-priori distance bounds of each family;
//! * [`funceq`] — stability of single-variable functional equations
//!   `f(s) = G(s, f(ψ(s)))`, including the linear recursive equation
//!   whose exact series solution cross-checks the iteration;
//! * [`rng`] — a pinned `splitmix64` generator so every sampled figure
//!   is reproducible from a seed, on any platform.
//!
//! Throughout, quantitative claims are made only when their hypotheses
//! were actually checked: certificates carry the triangle status of the
//! inspected orbit, and bounds are withheld (with a reason) when the
//! status does not support them.

pub mod contraction;
pub mod error;
pub mod funceq;
pub mod metric;
pub mod picard;
pub mod rng;

pub use contraction::{
    ciric_reduced_factor, condition_ratio, estimate_lambda, grid_pairs, grid_points, sample_pairs,
    verify_condition, CiricCoefficients, ConditionRatio, ContractionKind, ContractionReport,
    ContractionSpec, LambdaEstimate, MapUnderTest, PairViolation,
};
pub use error::{Error, Result};
pub use funceq::{
    apply_operator, baker_series_solution, check_sup_contraction, compute_delta, operator_power,
    perturb_solution, solve_baker, solve_stability, table_pairs_for_estimate, BakerCertificate,
    BakerInstance, FuncEqInstance, GFamily, SeriesInfo, StabilityCertificate, StabilityTheorem,
};
pub use metric::{
    check_axioms, check_triangle_on_set, sup_metric, table_distance, AxiomId, AxiomReport,
    AxiomViolation, FunctionTable, MetricSpace, Norm, Point, TriangleStatus, TriangleWitness,
    WitnessSequence,
};
pub use picard::{
    bound_banach, bound_ciric, bound_kannan_chatterjea, brute_force_fixed_point,
    check_orbit_triangle, compute_orbit, detect_cauchy, family_bound, kannan_step_bound,
    solve_fixed_point, verify_uniqueness, BruteForceResult, FixedPointCertificate, IterationConfig,
    Orbit, TriangleCheck, UniquenessReport,
};
pub use rng::SplitMix64;
