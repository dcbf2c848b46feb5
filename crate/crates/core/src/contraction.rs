//! Contraction conditions for a self-map of a metric-like space.
//!
//! Four families are supported. Writing `R` for the map and `ρ` for the
//! distance, a pair `(u, v)` must satisfy:
//!
//! * Banach:     `ρ(Ru, Rv) <= λ · ρ(u, v)`            with `λ in [0, 1)`
//! * Kannan:     `ρ(Ru, Rv) <= λ · (ρ(Ru, u) + ρ(Rv, v))`, `λ in [0, 1/2)`
//! * Chatterjea: `ρ(Ru, Rv) <= λ · (ρ(Ru, v) + ρ(Rv, u))`, `λ in [0, 1/2)`
//! * Generalized (five coefficients `λ1..λ5`, possibly pair-dependent):
//!   `ρ(Ru, Rv) <= λ1 ρ(u,v) + λ2 ρ(u,Ru) + λ3 ρ(v,Rv) + λ4 ρ(u,Rv) + λ5 ρ(v,Ru)`
//!   with every `λi >= 0` and `Σ λi <= λ < 1`.
//!
//! The checks here are finite: a condition is verified over a supplied
//! set of pairs, and `estimate_lambda` reports the worst observed ratio.
//! Pair generators (`grid_pairs`, `sample_pairs`) produce deterministic
//! evidence sets.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::{MetricSpace, Point};
use crate::rng::SplitMix64;

/// Relative slack for floating-point comparisons of contraction
/// inequalities: `lhs <= rhs` is accepted when
/// `lhs <= rhs + CONDITION_SLACK * (1 + rhs)`.
const CONDITION_SLACK: f64 = 1e-12;

/// A self-map of the carrier under test, with its expected dimension.
#[derive(Clone)]
pub struct MapUnderTest {
    name: String,
    dimension: usize,
    f: Arc<dyn Fn(&Point) -> Result<Point> + Send + Sync>,
}

impl std::fmt::Debug for MapUnderTest {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MapUnderTest")
            .field("name", &self.name)
            .field("dimension", &self.dimension)
            .finish()
    }
}

impl MapUnderTest {
    pub fn new<F>(name: &str, dimension: usize, f: F) -> Self
    where
        F: Fn(&Point) -> Result<Point> + Send + Sync + 'static,
    {
        MapUnderTest {
            name: name.into(),
            dimension,
            f: Arc::new(f),
        }
    }

    /// Coordinate-wise map from a plain closure that cannot fail.
    pub fn from_fn<F>(name: &str, dimension: usize, f: F) -> Self
    where
        F: Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    {
        MapUnderTest::new(name, dimension, move |p| Point::new(f(p.coords())))
    }

    pub fn apply(&self, u: &Point) -> Result<Point> {
        if u.dim() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: u.dim(),
            });
        }
        let out = (self.f)(u)?;
        if out.dim() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: out.dim(),
            });
        }
        Ok(out)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ContractionKind {
    Banach,
    Kannan,
    Chatterjea,
    Ciric,
}

impl ContractionKind {
    /// Exclusive upper bound on admissible `λ` for this family.
    pub fn lambda_sup(self) -> f64 {
        match self {
            ContractionKind::Banach | ContractionKind::Ciric => 1.0,
            ContractionKind::Kannan | ContractionKind::Chatterjea => 0.5,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ContractionKind::Banach => "BANACH",
            ContractionKind::Kannan => "KANNAN",
            ContractionKind::Chatterjea => "CHATTERJEA",
            ContractionKind::Ciric => "CIRIC",
        }
    }
}

/// Coefficients for the five-term generalized condition: either one
/// constant tuple, or a rule assigning a tuple to each pair.
#[derive(Clone)]
pub enum CiricCoefficients {
    Constant([f64; 5]),
    Rule(Arc<dyn Fn(&Point, &Point) -> [f64; 5] + Send + Sync>),
}

impl std::fmt::Debug for CiricCoefficients {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CiricCoefficients::Constant(c) => f.debug_tuple("Constant").field(c).finish(),
            CiricCoefficients::Rule(_) => f.write_str("Rule(..)"),
        }
    }
}

impl CiricCoefficients {
    fn at(&self, u: &Point, v: &Point) -> [f64; 5] {
        match self {
            CiricCoefficients::Constant(c) => *c,
            CiricCoefficients::Rule(r) => r(u, v),
        }
    }
}

fn validate_ciric_tuple(
    c: &[f64; 5],
    lambda: f64,
    at_pair: Option<(&Point, &Point)>,
) -> Result<()> {
    let sum: f64 = c.iter().sum();
    let bad = c.iter().any(|x| !x.is_finite() || *x < 0.0) || sum > lambda;
    if bad {
        let loc = match at_pair {
            Some((u, v)) => format!(" at pair ({u}, {v})"),
            None => String::new(),
        };
        return Err(Error::InvalidCoefficients(format!(
            "coefficients {c:?} must be non-negative with sum <= lambda = {lambda}{loc}"
        )));
    }
    Ok(())
}

/// A contraction family instantiated with its constant(s), ready to be
/// verified over pairs.
#[derive(Debug, Clone)]
pub enum ContractionSpec {
    Banach {
        lambda: f64,
    },
    Kannan {
        lambda: f64,
    },
    Chatterjea {
        lambda: f64,
    },
    Ciric {
        coefficients: CiricCoefficients,
        lambda: f64,
    },
}

impl ContractionSpec {
    pub fn kind(&self) -> ContractionKind {
        match self {
            ContractionSpec::Banach { .. } => ContractionKind::Banach,
            ContractionSpec::Kannan { .. } => ContractionKind::Kannan,
            ContractionSpec::Chatterjea { .. } => ContractionKind::Chatterjea,
            ContractionSpec::Ciric { .. } => ContractionKind::Ciric,
        }
    }

    pub fn lambda(&self) -> f64 {
        match self {
            ContractionSpec::Banach { lambda }
            | ContractionSpec::Kannan { lambda }
            | ContractionSpec::Chatterjea { lambda }
            | ContractionSpec::Ciric { lambda, .. } => *lambda,
        }
    }

    /// Check that `λ` sits in the family's admissible half-open range.
    pub fn validate(&self) -> Result<()> {
        let lambda = self.lambda();
        let sup = self.kind().lambda_sup();
        if !lambda.is_finite() || lambda < 0.0 || lambda >= sup {
            return Err(Error::Domain(format!(
                "lambda = {lambda} outside [0, {sup}) for {}",
                self.kind().as_str()
            )));
        }
        if let ContractionSpec::Ciric {
            coefficients: CiricCoefficients::Constant(c),
            lambda,
        } = self
        {
            validate_ciric_tuple(c, *lambda, None)?;
        }
        Ok(())
    }
}

/// The observed ratio `lhs / rhs` of a contraction condition at one
/// pair. `Undefined` when both sides vanish (the pair carries no
/// information), `Unbounded` when only the denominator vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ConditionRatio {
    Value(f64),
    Undefined,
    Unbounded,
}

fn ratio_parts(
    space: &MetricSpace,
    map: &MapUnderTest,
    kind: ContractionKind,
    u: &Point,
    v: &Point,
) -> Result<(f64, f64)> {
    let ru = map.apply(u)?;
    let rv = map.apply(v)?;
    let lhs = space.distance(&ru, &rv)?;
    let rhs = match kind {
        ContractionKind::Banach => space.distance(u, v)?,
        ContractionKind::Kannan => space.distance(&ru, u)? + space.distance(&rv, v)?,
        ContractionKind::Chatterjea => space.distance(&ru, v)? + space.distance(&rv, u)?,
        ContractionKind::Ciric => {
            return Err(Error::UnsupportedKind {
                kind: "CIRIC".into(),
                reason: "the five-term condition has no single ratio; use verify_condition \
                         with explicit coefficients"
                    .into(),
            })
        }
    };
    Ok((lhs, rhs))
}

/// Ratio of the contraction condition at one pair for the single-λ
/// families. The generalized family is rejected.
pub fn condition_ratio(
    space: &MetricSpace,
    map: &MapUnderTest,
    kind: ContractionKind,
    u: &Point,
    v: &Point,
) -> Result<ConditionRatio> {
    let (lhs, rhs) = ratio_parts(space, map, kind, u, v)?;
    if rhs == 0.0 {
        if lhs == 0.0 {
            Ok(ConditionRatio::Undefined)
        } else {
            Ok(ConditionRatio::Unbounded)
        }
    } else {
        Ok(ConditionRatio::Value(lhs / rhs))
    }
}

/// Worst observed condition ratio over a pair set.
#[derive(Debug, Clone, Serialize)]
pub struct LambdaEstimate {
    pub kind: ContractionKind,
    /// Maximum defined ratio; `+inf` when some pair was unbounded, `0`
    /// when no pair was informative.
    pub estimate: f64,
    pub unbounded: bool,
    pub pairs_checked: usize,
    /// Pairs whose ratio was defined.
    pub informative_pairs: usize,
    pub worst_pair: Option<(Point, Point)>,
}

impl LambdaEstimate {
    /// Whether the observed worst ratio sits strictly inside the
    /// family's admissible range.
    pub fn admissible(&self) -> bool {
        !self.unbounded && self.estimate < self.kind.lambda_sup()
    }
}

/// Scan `pairs` and report the largest condition ratio for `kind`.
pub fn estimate_lambda(
    space: &MetricSpace,
    map: &MapUnderTest,
    kind: ContractionKind,
    pairs: &[(Point, Point)],
) -> Result<LambdaEstimate> {
    if pairs.is_empty() {
        return Err(Error::RejectedInput(
            "estimate_lambda needs at least one pair".into(),
        ));
    }
    let mut estimate = 0.0f64;
    let mut unbounded = false;
    let mut informative = 0usize;
    let mut worst: Option<(Point, Point)> = None;
    for (u, v) in pairs {
        match condition_ratio(space, map, kind, u, v)? {
            ConditionRatio::Undefined => {}
            ConditionRatio::Unbounded => {
                unbounded = true;
                estimate = f64::INFINITY;
                worst = Some((u.clone(), v.clone()));
            }
            ConditionRatio::Value(r) => {
                informative += 1;
                if !unbounded && r > estimate {
                    estimate = r;
                    worst = Some((u.clone(), v.clone()));
                }
            }
        }
    }
    Ok(LambdaEstimate {
        kind,
        estimate,
        unbounded,
        pairs_checked: pairs.len(),
        informative_pairs: informative,
        worst_pair: worst,
    })
}

/// A pair at which the verified inequality failed, with both sides.
#[derive(Debug, Clone, Serialize)]
pub struct PairViolation {
    pub u: Point,
    pub v: Point,
    pub lhs: f64,
    pub rhs: f64,
}

/// Outcome of verifying a contraction condition over a pair set.
#[derive(Debug, Clone, Serialize)]
pub struct ContractionReport {
    pub kind: ContractionKind,
    pub lambda: f64,
    pub holds: bool,
    pub pairs_checked: usize,
    pub first_violation: Option<PairViolation>,
}

/// Verify the instantiated condition over every pair, stopping at the
/// first violation. Coefficient tuples of the generalized family are
/// validated at each pair.
pub fn verify_condition(
    space: &MetricSpace,
    map: &MapUnderTest,
    spec: &ContractionSpec,
    pairs: &[(Point, Point)],
) -> Result<ContractionReport> {
    spec.validate()?;
    if pairs.is_empty() {
        return Err(Error::RejectedInput(
            "verify_condition needs at least one pair".into(),
        ));
    }
    let lambda = spec.lambda();
    let mut checked = 0usize;
    for (u, v) in pairs {
        let (lhs, rhs) = match spec {
            ContractionSpec::Banach { .. }
            | ContractionSpec::Kannan { .. }
            | ContractionSpec::Chatterjea { .. } => {
                let (lhs, raw) = ratio_parts(space, map, spec.kind(), u, v)?;
                (lhs, lambda * raw)
            }
            ContractionSpec::Ciric { coefficients, .. } => {
                let c = coefficients.at(u, v);
                validate_ciric_tuple(&c, lambda, Some((u, v)))?;
                let ru = map.apply(u)?;
                let rv = map.apply(v)?;
                let lhs = space.distance(&ru, &rv)?;
                let rhs = c[0] * space.distance(u, v)?
                    + c[1] * space.distance(u, &ru)?
                    + c[2] * space.distance(v, &rv)?
                    + c[3] * space.distance(u, &rv)?
                    + c[4] * space.distance(v, &ru)?;
                (lhs, rhs)
            }
        };
        checked += 1;
        if lhs > rhs + CONDITION_SLACK * (1.0 + rhs) {
            return Ok(ContractionReport {
                kind: spec.kind(),
                lambda,
                holds: false,
                pairs_checked: checked,
                first_violation: Some(PairViolation {
                    u: u.clone(),
                    v: v.clone(),
                    lhs,
                    rhs,
                }),
            });
        }
    }
    Ok(ContractionReport {
        kind: spec.kind(),
        lambda,
        holds: true,
        pairs_checked: checked,
        first_violation: None,
    })
}

/// Collapse a five-coefficient tuple to the single rate that drives the
/// generalized family's orbit estimates:
///
/// ```text
/// (λ1 + (λ2 + λ3)/2 + (λ4 + λ5)/2) / (1 - (λ2 + λ3)/2 - (λ4 + λ5)/2)
/// ```
///
/// Requires every `λi >= 0` and `Σ λi < 1`; the result then lies in
/// `[0, 1)`, and is strictly below `Σ λi` whenever any of `λ2..λ5` is
/// positive.
pub fn ciric_reduced_factor(c: &[f64; 5]) -> Result<f64> {
    if c.iter().any(|x| !x.is_finite() || *x < 0.0) {
        return Err(Error::InvalidCoefficients(format!(
            "coefficients {c:?} must be finite and non-negative"
        )));
    }
    let sum: f64 = c.iter().sum();
    if sum >= 1.0 {
        return Err(Error::InvalidCoefficients(format!(
            "coefficient sum {sum} must be < 1"
        )));
    }
    let h = (c[1] + c[2]) / 2.0 + (c[3] + c[4]) / 2.0;
    Ok((c[0] + h) / (1.0 - h))
}

/// Axis-aligned grid over `[lo, hi]^dimension`, sized to keep the total
/// point count modest as the dimension grows. In one dimension with
/// `[-2, 2]` the 33 per-axis points fall on exact multiples of 1/8.
pub fn grid_points(dimension: usize, lo: f64, hi: f64) -> Result<Vec<Point>> {
    if dimension == 0 {
        return Err(Error::RejectedInput("dimension must be >= 1".into()));
    }
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::RejectedInput(format!("invalid box [{lo}, {hi}]")));
    }
    let per_axis: usize = match dimension {
        1 => 33,
        2 => 11,
        3 => 5,
        _ => 3,
    };
    let step = (hi - lo) / (per_axis - 1) as f64;
    let axis: Vec<f64> = (0..per_axis).map(|i| lo + step * i as f64).collect();
    let mut points = Vec::with_capacity(per_axis.pow(dimension as u32));
    let mut idx = vec![0usize; dimension];
    loop {
        let coords: Vec<f64> = idx.iter().map(|&i| axis[i]).collect();
        points.push(Point::new(coords)?);
        // odometer increment over the index tuple
        let mut k = 0;
        loop {
            idx[k] += 1;
            if idx[k] < per_axis {
                break;
            }
            idx[k] = 0;
            k += 1;
            if k == dimension {
                return Ok(points);
            }
        }
    }
}

/// Every ordered pair of distinct grid points.
pub fn grid_pairs(dimension: usize, lo: f64, hi: f64) -> Result<Vec<(Point, Point)>> {
    let points = grid_points(dimension, lo, hi)?;
    let mut pairs = Vec::with_capacity(points.len() * (points.len() - 1));
    for (i, u) in points.iter().enumerate() {
        for (j, v) in points.iter().enumerate() {
            if i != j {
                pairs.push((u.clone(), v.clone()));
            }
        }
    }
    Ok(pairs)
}

/// `count` pairs drawn uniformly from `[lo, hi]^dimension`, reproducible
/// from the seed.
pub fn sample_pairs(
    dimension: usize,
    lo: f64,
    hi: f64,
    count: usize,
    seed: u64,
) -> Result<Vec<(Point, Point)>> {
    if dimension == 0 {
        return Err(Error::RejectedInput("dimension must be >= 1".into()));
    }
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::RejectedInput(format!("invalid box [{lo}, {hi}]")));
    }
    let mut rng = SplitMix64::new(seed);
    let draw = |rng: &mut SplitMix64| -> Result<Point> {
        Point::new((0..dimension).map(|_| rng.uniform(lo, hi)).collect())
    };
    let mut pairs = Vec::with_capacity(count);
    for _ in 0..count {
        pairs.push((draw(&mut rng)?, draw(&mut rng)?));
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64) -> Point {
        Point::scalar(x).unwrap()
    }

    fn halving() -> MapUnderTest {
        MapUnderTest::from_fn("halving", 1, |c| vec![c[0] / 2.0])
    }

    fn quartering() -> MapUnderTest {
        MapUnderTest::from_fn("quartering", 1, |c| vec![c[0] / 4.0])
    }

    #[test]
    fn banach_ratio_of_halving_is_half() {
        let space = MetricSpace::euclidean(1);
        let r = condition_ratio(
            &space,
            &halving(),
            ContractionKind::Banach,
            &pt(3.0),
            &pt(-1.0),
        )
        .unwrap();
        assert_eq!(r, ConditionRatio::Value(0.5));
    }

    #[test]
    fn equal_non_fixed_points_are_undefined_for_banach_only() {
        let space = MetricSpace::euclidean(1);
        let u = pt(2.0);
        let r = condition_ratio(&space, &halving(), ContractionKind::Banach, &u, &u).unwrap();
        assert_eq!(r, ConditionRatio::Undefined);
        // Kannan still sees the displacement to the image.
        let r = condition_ratio(&space, &halving(), ContractionKind::Kannan, &u, &u).unwrap();
        assert_eq!(r, ConditionRatio::Value(0.0));
    }

    #[test]
    fn identity_map_is_unbounded_for_kannan() {
        let space = MetricSpace::euclidean(1);
        let id = MapUnderTest::from_fn("identity", 1, |c| c.to_vec());
        let r = condition_ratio(&space, &id, ContractionKind::Kannan, &pt(0.0), &pt(1.0)).unwrap();
        assert_eq!(r, ConditionRatio::Unbounded);
        let pairs = vec![(pt(0.0), pt(1.0)), (pt(2.0), pt(3.0))];
        let est = estimate_lambda(&space, &id, ContractionKind::Kannan, &pairs).unwrap();
        assert!(est.unbounded);
        assert!(!est.admissible());
        assert!(est.estimate.is_infinite());
    }

    #[test]
    fn condition_ratio_rejects_generalized_kind() {
        let space = MetricSpace::euclidean(1);
        let err = condition_ratio(
            &space,
            &halving(),
            ContractionKind::Ciric,
            &pt(0.0),
            &pt(1.0),
        )
        .unwrap_err();
        assert!(matches!(err, Error::UnsupportedKind { .. }));
    }

    #[test]
    fn banach_estimate_on_grid_is_exact_half() {
        let space = MetricSpace::euclidean(1);
        let pairs = grid_pairs(1, -2.0, 2.0).unwrap();
        let est = estimate_lambda(&space, &halving(), ContractionKind::Banach, &pairs).unwrap();
        assert_eq!(est.estimate, 0.5);
        assert!(est.admissible());
        assert_eq!(est.pairs_checked, 33 * 32);
        assert!(est.informative_pairs > 0);
    }

    #[test]
    fn kannan_estimate_of_quartering_is_exactly_one_third() {
        // ρ(Ru, Rv) / (ρ(Ru, u) + ρ(Rv, v)) = |u - v| / (3|u| + 3|v|),
        // maximised at opposite-sign pairs where it equals 1/3; on the
        // dyadic grid every intermediate value is exact, so the estimate
        // is the correctly rounded 1/3.
        let space = MetricSpace::euclidean(1);
        let pairs = grid_pairs(1, -2.0, 2.0).unwrap();
        let est = estimate_lambda(&space, &quartering(), ContractionKind::Kannan, &pairs).unwrap();
        assert_eq!(est.estimate, 1.0 / 3.0);
        assert!(est.admissible());
    }

    #[test]
    fn chatterjea_estimate_of_halving_is_exactly_one_third() {
        // For R(u) = u/2 the two-sided displacement sum is at least
        // (1 + 1/2)/(1/2) times the image distance, with equality on
        // pairs like (1, 0), so the worst ratio is again exactly 1/3.
        let space = MetricSpace::euclidean(1);
        let pairs = grid_pairs(1, -2.0, 2.0).unwrap();
        let est = estimate_lambda(&space, &halving(), ContractionKind::Chatterjea, &pairs).unwrap();
        assert_eq!(est.estimate, 1.0 / 3.0);
        assert!(est.admissible());
    }

    #[test]
    fn verify_banach_holds_at_half_fails_below() {
        let space = MetricSpace::euclidean(1);
        let pairs = grid_pairs(1, -2.0, 2.0).unwrap();
        let ok = verify_condition(
            &space,
            &halving(),
            &ContractionSpec::Banach { lambda: 0.5 },
            &pairs,
        )
        .unwrap();
        assert!(ok.holds);
        assert_eq!(ok.pairs_checked, pairs.len());

        let bad = verify_condition(
            &space,
            &halving(),
            &ContractionSpec::Banach { lambda: 0.49 },
            &pairs,
        )
        .unwrap();
        assert!(!bad.holds);
        let v = bad.first_violation.unwrap();
        assert!(v.lhs > v.rhs);
    }

    #[test]
    fn lambda_outside_family_range_is_a_domain_error() {
        assert!(ContractionSpec::Banach { lambda: 1.0 }.validate().is_err());
        assert!(ContractionSpec::Kannan { lambda: 0.5 }.validate().is_err());
        assert!(ContractionSpec::Chatterjea { lambda: -0.1 }
            .validate()
            .is_err());
        assert!(ContractionSpec::Kannan { lambda: 0.499 }.validate().is_ok());
    }

    #[test]
    fn ciric_with_banach_slot_only_matches_banach() {
        let space = MetricSpace::euclidean(1);
        let pairs = grid_pairs(1, -2.0, 2.0).unwrap();
        let spec = ContractionSpec::Ciric {
            coefficients: CiricCoefficients::Constant([0.5, 0.0, 0.0, 0.0, 0.0]),
            lambda: 0.5,
        };
        let rep = verify_condition(&space, &halving(), &spec, &pairs).unwrap();
        assert!(rep.holds);
    }

    #[test]
    fn ciric_coefficient_sum_above_lambda_is_rejected() {
        let space = MetricSpace::euclidean(1);
        let pairs = vec![(pt(0.0), pt(1.0))];
        let spec = ContractionSpec::Ciric {
            coefficients: CiricCoefficients::Constant([0.5, 0.1, 0.0, 0.0, 0.0]),
            lambda: 0.5,
        };
        let err = verify_condition(&space, &halving(), &spec, &pairs).unwrap_err();
        assert!(matches!(err, Error::InvalidCoefficients(_)));
    }

    #[test]
    fn pair_dependent_coefficients_are_validated_per_pair() {
        let space = MetricSpace::euclidean(1);
        let pairs = vec![(pt(0.0), pt(1.0)), (pt(0.0), pt(3.0))];
        // valid on the first pair, sum too large on the second
        let rule = CiricCoefficients::Rule(Arc::new(|_u: &Point, v: &Point| {
            if v.coords()[0] > 2.0 {
                [0.6, 0.1, 0.0, 0.0, 0.0]
            } else {
                [0.5, 0.0, 0.0, 0.0, 0.0]
            }
        }));
        let spec = ContractionSpec::Ciric {
            coefficients: rule,
            lambda: 0.6,
        };
        let err = verify_condition(&space, &halving(), &spec, &pairs).unwrap_err();
        match err {
            Error::InvalidCoefficients(msg) => {
                assert!(
                    msg.contains("at pair"),
                    "message should name the pair: {msg}"
                );
                assert!(
                    msg.contains("(3)"),
                    "message should show the offending point: {msg}"
                );
            }
            other => panic!("expected InvalidCoefficients, got {other:?}"),
        }
    }

    #[test]
    fn reduced_factor_of_pure_banach_tuple_is_the_sum() {
        let f = ciric_reduced_factor(&[0.5, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(f, 0.5);
    }

    #[test]
    fn reduced_factor_drops_below_the_sum_with_mixed_terms() {
        // H = 1/8 + 1/8 = 1/4, factor = (1/4 + 1/4)/(3/4) = 2/3 < 3/4.
        let c = [0.25, 0.125, 0.125, 0.125, 0.125];
        let f = ciric_reduced_factor(&c).unwrap();
        assert_eq!(f, 2.0 / 3.0);
        let sum: f64 = c.iter().sum();
        assert!(f < sum);
    }

    #[test]
    fn reduced_factor_rejects_inadmissible_tuples() {
        assert!(ciric_reduced_factor(&[0.5, 0.5, 0.0, 0.0, 0.0]).is_err());
        assert!(ciric_reduced_factor(&[-0.1, 0.0, 0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn grid_sizes_shrink_with_dimension() {
        assert_eq!(grid_points(1, -2.0, 2.0).unwrap().len(), 33);
        assert_eq!(grid_points(2, -2.0, 2.0).unwrap().len(), 121);
        assert_eq!(grid_points(3, -1.0, 1.0).unwrap().len(), 125);
        assert_eq!(grid_pairs(1, -2.0, 2.0).unwrap().len(), 33 * 32);
    }

    #[test]
    fn one_dimensional_grid_is_dyadic() {
        let pts = grid_points(1, -2.0, 2.0).unwrap();
        assert_eq!(pts[0].coords()[0], -2.0);
        assert_eq!(pts[1].coords()[0], -1.875);
        assert_eq!(pts[32].coords()[0], 2.0);
        // every coordinate is an exact multiple of 1/8
        for p in &pts {
            let scaled = p.coords()[0] * 8.0;
            assert_eq!(scaled, scaled.round());
        }
    }

    #[test]
    fn sample_pairs_are_seed_deterministic_and_in_box() {
        let a = sample_pairs(2, -1.0, 3.0, 50, 42).unwrap();
        let b = sample_pairs(2, -1.0, 3.0, 50, 42).unwrap();
        let c = sample_pairs(2, -1.0, 3.0, 50, 43).unwrap();
        assert_eq!(a.len(), 50);
        for ((u1, v1), (u2, v2)) in a.iter().zip(&b) {
            assert_eq!(u1, u2);
            assert_eq!(v1, v2);
        }
        assert!(a.iter().zip(&c).any(|((u1, _), (u2, _))| u1 != u2));
        for (u, v) in &a {
            for x in u.coords().iter().chain(v.coords()) {
                assert!((-1.0..=3.0).contains(x));
            }
        }
    }

    #[test]
    fn estimate_with_no_informative_pairs_reports_zero() {
        let space = MetricSpace::euclidean(1);
        let u = pt(0.0); // fixed point of halving
        let est = estimate_lambda(
            &space,
            &halving(),
            ContractionKind::Banach,
            &[(u.clone(), u.clone())],
        )
        .unwrap();
        assert_eq!(est.estimate, 0.0);
        assert_eq!(est.informative_pairs, 0);
        assert!(est.worst_pair.is_none());
    }
}
