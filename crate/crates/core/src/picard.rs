//! Successive-approximation engine: iterate a self-map, detect
//! convergence without relying on the triangle inequality, and certify
//! the a-priori distance bounds attached to each contraction family.
//!
//! Convergence detection is windowed: the orbit is accepted once every
//! pairwise distance among the last `window + 1` iterates falls below
//! the tolerance. This uses only the distance values themselves, so it
//! remains meaningful in spaces where the triangle inequality fails;
//! whether the inequality held along the inspected orbit prefix is
//! reported separately as a [`TriangleCheck`].

use serde::Serialize;

use crate::contraction::{ContractionKind, ContractionSpec};
use crate::error::{Error, Result};
use crate::metric::{check_triangle_on_set, MetricSpace, Point, TriangleWitness};

/// How many leading orbit points enter the per-orbit triangle scan.
/// Cubic in the prefix length, so it is capped.
const TRIANGLE_PREFIX: usize = 50;

/// Iteration budget and acceptance thresholds.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct IterationConfig {
    pub max_iters: usize,
    pub tol: f64,
    /// Number of trailing steps that must agree pairwise within `tol`.
    pub window: usize,
}

impl Default for IterationConfig {
    fn default() -> Self {
        IterationConfig {
            max_iters: 10_000,
            tol: 1e-10,
            window: 8,
        }
    }
}

impl IterationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iters == 0 {
            return Err(Error::RejectedInput("max_iters must be >= 1".into()));
        }
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return Err(Error::RejectedInput("tol must be a positive real".into()));
        }
        if self.window == 0 {
            return Err(Error::RejectedInput("window must be >= 1".into()));
        }
        Ok(())
    }
}

/// The sequence `u0, R(u0), R^2(u0), ...` as computed.
#[derive(Debug, Clone, Serialize)]
pub struct Orbit {
    pub points: Vec<Point>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn last(&self) -> &Point {
        self.points
            .last()
            .expect("orbit holds at least the start point")
    }

    /// Distance between consecutive iterates `m` and `m - 1`.
    pub fn step_distance(&self, space: &MetricSpace, m: usize) -> Result<f64> {
        if m == 0 || m >= self.points.len() {
            return Err(Error::RejectedInput(format!(
                "step index {m} outside 1..{}",
                self.points.len()
            )));
        }
        space.distance(&self.points[m], &self.points[m - 1])
    }
}

use crate::contraction::MapUnderTest;

fn apply_step(map: &MapUnderTest, u: &Point, step: usize) -> Result<Point> {
    match map.apply(u) {
        Ok(next) => Ok(next),
        Err(Error::RejectedInput(msg)) if msg.contains("non-finite") => {
            Err(Error::Divergence { step })
        }
        Err(other) => Err(other),
    }
}

/// Compute the first `steps` iterates after the start point.
pub fn compute_orbit(map: &MapUnderTest, start: &Point, steps: usize) -> Result<Orbit> {
    let mut points = Vec::with_capacity(steps + 1);
    points.push(start.clone());
    let mut current = start.clone();
    for step in 1..=steps {
        current = apply_step(map, &current, step)?;
        points.push(current.clone());
    }
    Ok(Orbit { points })
}

/// True when the last `window + 1` points of the orbit are pairwise
/// within `tol`. Orbits shorter than the window are never accepted.
pub fn detect_cauchy(
    space: &MetricSpace,
    orbit: &[Point],
    window: usize,
    tol: f64,
) -> Result<bool> {
    if orbit.len() < window + 1 {
        return Ok(false);
    }
    let tail = &orbit[orbit.len() - window - 1..];
    for (i, u) in tail.iter().enumerate() {
        for v in &tail[i + 1..] {
            if space.distance(u, v)? >= tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Triangle-inequality status along an orbit prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TriangleCheck {
    Holds,
    Fails,
    NotChecked,
}

/// Scan the first `min(len, 50)` orbit points for a triangle violation.
/// Fewer than three points means there is nothing to violate.
pub fn check_orbit_triangle(
    space: &MetricSpace,
    orbit: &Orbit,
) -> Result<(TriangleCheck, Option<TriangleWitness>)> {
    let prefix_len = orbit.points.len().min(TRIANGLE_PREFIX);
    if prefix_len < 3 {
        return Ok((TriangleCheck::Holds, None));
    }
    let (ok, witness) = check_triangle_on_set(space, &orbit.points[..prefix_len])?;
    Ok((
        if ok {
            TriangleCheck::Holds
        } else {
            TriangleCheck::Fails
        },
        witness,
    ))
}

fn require_lambda(lambda: f64, sup: f64) -> Result<()> {
    if !lambda.is_finite() || lambda < 0.0 || lambda >= sup {
        return Err(Error::Domain(format!(
            "lambda = {lambda} outside [0, {sup})"
        )));
    }
    Ok(())
}

fn require_delta(delta: f64) -> Result<()> {
    if !delta.is_finite() || delta < 0.0 {
        return Err(Error::Domain(format!(
            "delta = {delta} must be a non-negative real"
        )));
    }
    Ok(())
}

/// Distance-to-limit bound `δ / (1 - λ)` for a λ-Lipschitz contraction,
/// `λ in [0, 1)`, where `δ` is the initial displacement `ρ(u0, R(u0))`.
pub fn bound_banach(delta: f64, lambda: f64) -> Result<f64> {
    require_delta(delta)?;
    require_lambda(lambda, 1.0)?;
    Ok(delta / (1.0 - lambda))
}

/// Distance-to-limit bound `(1 + λ) δ / (1 - 2λ)` shared by the
/// self-displacement and cross-displacement families, `λ in [0, 1/2)`.
pub fn bound_kannan_chatterjea(delta: f64, lambda: f64) -> Result<f64> {
    require_delta(delta)?;
    require_lambda(lambda, 0.5)?;
    Ok((1.0 + lambda) * delta / (1.0 - 2.0 * lambda))
}

/// Distance-to-limit bound `(2 + λ) δ / (2 (1 - λ))` for the
/// five-coefficient generalized family with total rate `λ in [0, 1)`.
pub fn bound_ciric(delta: f64, lambda: f64) -> Result<f64> {
    require_delta(delta)?;
    require_lambda(lambda, 1.0)?;
    Ok((2.0 + lambda) * delta / (2.0 * (1.0 - lambda)))
}

/// Step-distance bound `(λ / (1 - λ))^(m-1) · ρ(R(u0), u0)` for the
/// self-displacement family: consecutive iterates `m` and `m - 1` are at
/// most this far apart. Requires `m >= 1` and `λ in [0, 1/2)` so the
/// ratio `λ / (1 - λ)` is below one.
pub fn kannan_step_bound(rho0: f64, lambda: f64, m: usize) -> Result<f64> {
    require_delta(rho0)?;
    require_lambda(lambda, 0.5)?;
    if m == 0 {
        return Err(Error::RejectedInput("step index m must be >= 1".into()));
    }
    let ratio = lambda / (1.0 - lambda);
    Ok(ratio.powi((m - 1) as i32) * rho0)
}

/// Everything the solver can certify about one run: the limit candidate,
/// how it was accepted, the family bound and whether the run respected
/// it, and the triangle status of the inspected orbit prefix.
#[derive(Debug, Clone, Serialize)]
pub struct FixedPointCertificate {
    pub kind: ContractionKind,
    pub lambda: f64,
    pub start: Point,
    pub fixed_point: Point,
    /// Map applications performed.
    pub iterations: usize,
    pub cauchy: bool,
    /// `ρ(u*, R(u*))` at the accepted iterate.
    pub residual: f64,
    pub converged: bool,
    /// Initial displacement `ρ(u0, R(u0))`.
    pub delta: f64,
    /// Family bound on `ρ(u0, u*)` computed from `delta` and `lambda`.
    pub bound: f64,
    /// Measured `ρ(u0, u*)`.
    pub observed: f64,
    /// `observed <= bound + tol`.
    pub bound_satisfied: bool,
    pub orbit_triangle: TriangleCheck,
    pub triangle_witness: Option<TriangleWitness>,
    pub tol: f64,
    pub window: usize,
}

/// Theorem-facing bound for a family at rate `lambda`.
pub fn family_bound(kind: ContractionKind, delta: f64, lambda: f64) -> Result<f64> {
    match kind {
        ContractionKind::Banach => bound_banach(delta, lambda),
        ContractionKind::Kannan | ContractionKind::Chatterjea => {
            bound_kannan_chatterjea(delta, lambda)
        }
        ContractionKind::Ciric => bound_ciric(delta, lambda),
    }
}

/// Iterate `map` from `start` until the windowed Cauchy criterion fires
/// or the budget runs out, then certify the outcome against the family
/// bound of `spec`. The bound and the orbit triangle status are always
/// reported; combining them into a verdict is the caller's policy.
pub fn solve_fixed_point(
    space: &MetricSpace,
    map: &MapUnderTest,
    spec: &ContractionSpec,
    start: &Point,
    cfg: &IterationConfig,
) -> Result<FixedPointCertificate> {
    cfg.validate()?;
    spec.validate()?;

    let mut points = vec![start.clone()];
    let mut current = start.clone();
    let mut cauchy = false;
    for step in 1..=cfg.max_iters {
        current = apply_step(map, &current, step)?;
        points.push(current.clone());
        if detect_cauchy(space, &points, cfg.window, cfg.tol)? {
            cauchy = true;
            break;
        }
    }

    let orbit = Orbit { points };
    let fixed_point = orbit.last().clone();
    let next = apply_step(map, &fixed_point, orbit.len())?;
    let residual = space.distance(&fixed_point, &next)?;
    let converged = cauchy && residual <= cfg.tol;

    let first_image = &orbit.points[1];
    let delta = space.distance(start, first_image)?;
    let lambda = spec.lambda();
    let bound = family_bound(spec.kind(), delta, lambda)?;
    let observed = space.distance(start, &fixed_point)?;
    let bound_satisfied = observed <= bound + cfg.tol;

    let (orbit_triangle, triangle_witness) = check_orbit_triangle(space, &orbit)?;

    Ok(FixedPointCertificate {
        kind: spec.kind(),
        lambda,
        start: start.clone(),
        fixed_point,
        iterations: orbit.len() - 1,
        cauchy,
        residual,
        converged,
        delta,
        bound,
        observed,
        bound_satisfied,
        orbit_triangle,
        triangle_witness,
        tol: cfg.tol,
        window: cfg.window,
    })
}

/// Agreement of limits reached from several start points.
#[derive(Debug, Clone, Serialize)]
pub struct UniquenessReport {
    pub fixed_points: Vec<Point>,
    pub all_converged: bool,
    /// Largest distance between any two of the limits.
    pub max_pairwise: f64,
    pub agreement_tol: f64,
    /// All runs converged and all limits agree within `agreement_tol`.
    pub unique: bool,
}

/// Solve from every start and check that the limits coincide within
/// `agreement_tol`.
pub fn verify_uniqueness(
    space: &MetricSpace,
    map: &MapUnderTest,
    spec: &ContractionSpec,
    starts: &[Point],
    cfg: &IterationConfig,
    agreement_tol: f64,
) -> Result<UniquenessReport> {
    if starts.len() < 2 {
        return Err(Error::RejectedInput(
            "uniqueness check needs at least 2 starts".into(),
        ));
    }
    if !(agreement_tol > 0.0) {
        return Err(Error::RejectedInput(
            "agreement_tol must be positive".into(),
        ));
    }
    let mut fixed_points = Vec::with_capacity(starts.len());
    let mut all_converged = true;
    for s in starts {
        let cert = solve_fixed_point(space, map, spec, s, cfg)?;
        all_converged &= cert.converged;
        fixed_points.push(cert.fixed_point);
    }
    let mut max_pairwise = 0.0f64;
    for (i, u) in fixed_points.iter().enumerate() {
        for v in &fixed_points[i + 1..] {
            max_pairwise = max_pairwise.max(space.distance(u, v)?);
        }
    }
    let unique = all_converged && max_pairwise <= agreement_tol;
    Ok(UniquenessReport {
        fixed_points,
        all_converged,
        max_pairwise,
        agreement_tol,
        unique,
    })
}

/// Best fixed-point candidate on a uniform one-dimensional grid.
#[derive(Debug, Clone, Serialize)]
pub struct BruteForceResult {
    pub point: Point,
    /// `ρ(x, R(x))` at the winning grid point.
    pub residual: f64,
    /// Grid spacing; the true fixed point is within this of `point`
    /// whenever the map is a contraction on the box.
    pub spacing: f64,
    pub grid_size: usize,
}

/// Scan `grid_size` equally spaced points of `[lo, hi]` and return the
/// one minimising `ρ(x, R(x))`. One-dimensional maps only.
pub fn brute_force_fixed_point(
    space: &MetricSpace,
    map: &MapUnderTest,
    lo: f64,
    hi: f64,
    grid_size: usize,
) -> Result<BruteForceResult> {
    if map.dimension() != 1 || space.dimension() != 1 {
        return Err(Error::RejectedInput(
            "brute-force scan supports only one-dimensional maps".into(),
        ));
    }
    if grid_size < 2 {
        return Err(Error::RejectedInput("grid_size must be >= 2".into()));
    }
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::RejectedInput(format!("invalid box [{lo}, {hi}]")));
    }
    let spacing = (hi - lo) / (grid_size - 1) as f64;
    let mut best: Option<(Point, f64)> = None;
    for i in 0..grid_size {
        let x = Point::scalar(lo + spacing * i as f64)?;
        let rx = map.apply(&x)?;
        let residual = space.distance(&x, &rx)?;
        if best.as_ref().map_or(true, |(_, r)| residual < *r) {
            best = Some((x, residual));
        }
    }
    let (point, residual) = best.expect("grid_size >= 2");
    Ok(BruteForceResult {
        point,
        residual,
        spacing,
        grid_size,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contraction::MapUnderTest;

    fn pt(x: f64) -> Point {
        Point::scalar(x).unwrap()
    }

    fn halving() -> MapUnderTest {
        MapUnderTest::from_fn("halving", 1, |c| vec![c[0] / 2.0])
    }

    fn quartering() -> MapUnderTest {
        MapUnderTest::from_fn("quartering", 1, |c| vec![c[0] / 4.0])
    }

    fn cos_map() -> MapUnderTest {
        MapUnderTest::from_fn("cos", 1, |c| vec![c[0].cos()])
    }

    /// Independent root of `cos(x) = x` by bisection on `[0.7, 0.75]`,
    /// where `cos(x) - x` changes sign.
    fn dottie_by_bisection() -> f64 {
        let g = |x: f64| x.cos() - x;
        let (mut lo, mut hi) = (0.7f64, 0.75f64);
        assert!(g(lo) > 0.0 && g(hi) < 0.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn orbit_of_halving_is_geometric() {
        let orbit = compute_orbit(&halving(), &pt(1.0), 5).unwrap();
        assert_eq!(orbit.len(), 6);
        assert_eq!(orbit.points[3], pt(0.125));
        assert_eq!(*orbit.last(), pt(1.0 / 32.0));
        let space = MetricSpace::euclidean(1);
        assert_eq!(orbit.step_distance(&space, 1).unwrap(), 0.5);
        assert_eq!(orbit.step_distance(&space, 2).unwrap(), 0.25);
        assert!(orbit.step_distance(&space, 0).is_err());
        assert!(orbit.step_distance(&space, 6).is_err());
    }

    #[test]
    fn cauchy_detection_needs_a_full_window() {
        let space = MetricSpace::euclidean(1);
        let constant = vec![pt(2.0); 4];
        assert!(detect_cauchy(&space, &constant, 3, 1e-12).unwrap());
        assert!(!detect_cauchy(&space, &constant[..2], 3, 1e-12).unwrap());
        let spread = vec![pt(0.0), pt(1.0), pt(2.0), pt(3.0)];
        assert!(!detect_cauchy(&space, &spread, 3, 1e-12).unwrap());
    }

    #[test]
    fn solve_halving_certifies_the_banach_bound() {
        let space = MetricSpace::euclidean(1);
        let cfg = IterationConfig {
            tol: 1e-12,
            ..Default::default()
        };
        let cert = solve_fixed_point(
            &space,
            &halving(),
            &ContractionSpec::Banach { lambda: 0.5 },
            &pt(1.0),
            &cfg,
        )
        .unwrap();
        assert!(cert.converged && cert.cauchy);
        assert!(cert.fixed_point.coords()[0].abs() < 1e-12);
        assert_eq!(cert.delta, 0.5);
        assert_eq!(cert.bound, 1.0);
        assert!(cert.observed <= 1.0);
        assert!(cert.bound_satisfied);
        assert_eq!(cert.orbit_triangle, TriangleCheck::Holds);
        assert!(cert.residual <= 1e-12);
    }

    #[test]
    fn solve_cos_reaches_the_bisection_root() {
        let space = MetricSpace::euclidean(1);
        // |cos'(x)| <= sin(1) < 0.85 once the orbit enters [-1, 1]
        let cfg = IterationConfig {
            tol: 1e-12,
            ..Default::default()
        };
        let cert = solve_fixed_point(
            &space,
            &cos_map(),
            &ContractionSpec::Banach { lambda: 0.85 },
            &pt(0.0),
            &cfg,
        )
        .unwrap();
        assert!(cert.converged);
        let root = dottie_by_bisection();
        assert!((cert.fixed_point.coords()[0] - root).abs() < 1e-9);
        assert!((root - 0.739_085_133_215_160_7).abs() < 1e-12);
    }

    #[test]
    fn non_contraction_runs_out_of_budget() {
        let space = MetricSpace::euclidean(1);
        let shift = MapUnderTest::from_fn("shift", 1, |c| vec![c[0] + 1.0]);
        let cfg = IterationConfig {
            max_iters: 100,
            ..Default::default()
        };
        let cert = solve_fixed_point(
            &space,
            &shift,
            &ContractionSpec::Banach { lambda: 0.9 },
            &pt(0.0),
            &cfg,
        )
        .unwrap();
        assert!(!cert.cauchy && !cert.converged);
        assert_eq!(cert.iterations, 100);
    }

    #[test]
    fn doubling_map_diverges_to_non_finite() {
        let space = MetricSpace::euclidean(1);
        let doubling = MapUnderTest::from_fn("doubling", 1, |c| vec![c[0] * c[0] * 1e100]);
        let cfg = IterationConfig {
            max_iters: 50,
            ..Default::default()
        };
        let err = solve_fixed_point(
            &space,
            &doubling,
            &ContractionSpec::Banach { lambda: 0.9 },
            &pt(10.0),
            &cfg,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Divergence { .. }));
    }

    #[test]
    fn bound_formulas_direct_arithmetic() {
        assert_eq!(bound_banach(1.0, 0.5).unwrap(), 2.0);
        assert_eq!(bound_banach(0.0, 0.9).unwrap(), 0.0);
        assert_eq!(bound_kannan_chatterjea(1.0, 0.25).unwrap(), 2.5);
        assert_eq!(bound_ciric(1.0, 0.5).unwrap(), 2.5);
        // generalized bound dominates the plain one at equal rate
        for &l in &[0.0, 0.3, 0.7, 0.99] {
            assert!(bound_ciric(1.0, l).unwrap() >= bound_banach(1.0, l).unwrap());
        }
    }

    #[test]
    fn bound_domains_are_enforced() {
        assert!(bound_banach(1.0, 1.0).is_err());
        assert!(bound_banach(-1.0, 0.5).is_err());
        assert!(bound_kannan_chatterjea(1.0, 0.5).is_err());
        assert!(bound_ciric(1.0, 1.0).is_err());
        assert!(kannan_step_bound(1.0, 0.25, 0).is_err());
        assert!(kannan_step_bound(f64::NAN, 0.25, 1).is_err());
    }

    #[test]
    fn kannan_step_bound_at_one_third_halves_each_step() {
        // λ / (1 - λ) at λ = 1/3 is 1/2: exact for m = 1, within an ulp
        // of the halving powers after that.
        assert_eq!(kannan_step_bound(1.0, 1.0 / 3.0, 1).unwrap(), 1.0);
        assert!((kannan_step_bound(1.0, 1.0 / 3.0, 2).unwrap() - 0.5).abs() < 1e-15);
        assert!((kannan_step_bound(1.0, 1.0 / 3.0, 3).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn quartering_steps_stay_under_the_kannan_bound() {
        let space = MetricSpace::euclidean(1);
        let orbit = compute_orbit(&quartering(), &pt(1.0), 50).unwrap();
        let rho0 = orbit.step_distance(&space, 1).unwrap();
        for m in 1..=50 {
            let observed = orbit.step_distance(&space, m).unwrap();
            let bound = kannan_step_bound(rho0, 1.0 / 3.0, m).unwrap();
            assert!(observed <= bound + 1e-12, "step {m}: {observed} > {bound}");
        }
    }

    #[test]
    fn squared_metric_orbit_fails_triangle_with_canonical_witness() {
        let space = MetricSpace::squared_euclidean(1);
        let orbit = compute_orbit(&halving(), &pt(1.0), 10).unwrap();
        let (check, witness) = check_orbit_triangle(&space, &orbit).unwrap();
        assert_eq!(check, TriangleCheck::Fails);
        let w = witness.unwrap();
        assert_eq!(w.a, pt(1.0));
        assert_eq!(w.b, pt(0.5));
        assert_eq!(w.c, pt(0.25));
        assert_eq!(w.direct, 9.0 / 16.0);
        assert_eq!(w.via, 5.0 / 16.0);
    }

    #[test]
    fn squared_metric_solve_reports_honest_bound_failure() {
        // Under the squared distance the halving map is a λ = 1/4
        // contraction, but without the triangle inequality the
        // distance-to-limit bound δ/(1-λ) = 1/3 is simply false:
        // the limit is 0 and ρ(1, 0) = 1. The certificate must say so.
        let space = MetricSpace::squared_euclidean(1);
        let cfg = IterationConfig {
            tol: 1e-12,
            ..Default::default()
        };
        let cert = solve_fixed_point(
            &space,
            &halving(),
            &ContractionSpec::Banach { lambda: 0.25 },
            &pt(1.0),
            &cfg,
        )
        .unwrap();
        assert!(cert.converged);
        assert_eq!(cert.delta, 0.25);
        assert!((cert.bound - 1.0 / 3.0).abs() < 1e-15);
        assert!((cert.observed - 1.0).abs() < 1e-7);
        assert!(!cert.bound_satisfied);
        assert_eq!(cert.orbit_triangle, TriangleCheck::Fails);
        assert!(cert.triangle_witness.is_some());
    }

    #[test]
    fn uniqueness_from_three_starts() {
        let space = MetricSpace::euclidean(1);
        let cfg = IterationConfig {
            tol: 1e-12,
            ..Default::default()
        };
        let starts = [pt(-1.0), pt(0.3), pt(2.0)];
        let report = verify_uniqueness(
            &space,
            &cos_map(),
            &ContractionSpec::Banach { lambda: 0.85 },
            &starts,
            &cfg,
            1e-9,
        )
        .unwrap();
        assert!(report.all_converged);
        assert!(report.unique);
        assert!(report.max_pairwise <= 1e-9);
        assert_eq!(report.fixed_points.len(), 3);
    }

    #[test]
    fn brute_force_finds_the_affine_fixed_point() {
        // R(x) = x/2 + 1 has fixed point 2. With 4097 points over [0, 4]
        // the spacing is the dyadic 2^-10, so 2 lies exactly on the grid
        // and the residual there is exactly zero.
        let space = MetricSpace::euclidean(1);
        let map = MapUnderTest::from_fn("affine", 1, |c| vec![c[0] / 2.0 + 1.0]);
        let res = brute_force_fixed_point(&space, &map, 0.0, 4.0, 4097).unwrap();
        assert_eq!(res.point, pt(2.0));
        assert_eq!(res.residual, 0.0);
        assert_eq!(res.spacing, 4.0 / 4096.0);
        // the usual dense grid lands within one spacing of the root
        let res = brute_force_fixed_point(&space, &map, 0.0, 4.0, 10_001).unwrap();
        assert!((res.point.coords()[0] - 2.0).abs() <= res.spacing);
    }

    #[test]
    fn brute_force_agrees_with_iteration_on_cos() {
        let space = MetricSpace::euclidean(1);
        let cfg = IterationConfig {
            tol: 1e-12,
            ..Default::default()
        };
        let cert = solve_fixed_point(
            &space,
            &cos_map(),
            &ContractionSpec::Banach { lambda: 0.85 },
            &pt(0.5),
            &cfg,
        )
        .unwrap();
        let res = brute_force_fixed_point(&space, &cos_map(), 0.0, 1.5, 10_001).unwrap();
        let gap = (cert.fixed_point.coords()[0] - res.point.coords()[0]).abs();
        assert!(gap <= res.spacing + 1e-9);
    }

    #[test]
    fn brute_force_rejects_higher_dimensions() {
        let space = MetricSpace::euclidean(2);
        let map = MapUnderTest::from_fn("pair", 2, |c| vec![c[0] / 2.0, c[1] / 2.0]);
        assert!(brute_force_fixed_point(&space, &map, 0.0, 1.0, 11).is_err());
    }
}
