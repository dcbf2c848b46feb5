//! Distance structures without a global triangle inequality.
//!
//! A space here is a non-negative, symmetric distance with zero
//! self-distance and unique limits; the triangle inequality is a property
//! a space may or may not have, tracked by [`TriangleStatus`] and checked
//! on finite point sets by [`check_triangle_on_set`]. The built-in
//! catalogue covers both behaviours: `euclidean`, `max` and `discrete`
//! satisfy the inequality everywhere, `squared` (squared euclidean) does
//! not.
//!
//! [`sup_metric`] lifts a base space on points to tables over a finite
//! index domain by taking the maximum of the base distance over the
//! entries; the lifted space inherits the axioms and the triangle status
//! of its base.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

/// Slack added to the right-hand side of triangle comparisons so that
/// rounding in exact-inequality cases (collinear euclidean triples) cannot
/// report a spurious violation. Genuine failures in the catalogue are
/// orders of magnitude larger.
const TRIANGLE_SLACK: f64 = 1e-12;

/// A point of the carrier: a finite tuple of finite reals.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::RejectedInput(
                "point must have dimension >= 1".into(),
            ));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::RejectedInput(
                "point has a non-finite coordinate".into(),
            ));
        }
        Ok(Point { coords })
    }

    /// One-dimensional point.
    pub fn scalar(x: f64) -> Result<Self> {
        Point::new(vec![x])
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Whether the triangle inequality is known to hold for a space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TriangleStatus {
    /// Holds for every triple of the carrier.
    Global,
    /// Only assumed along orbits of interest; must be checked per orbit.
    OrbitOnly,
    /// Known to fail somewhere.
    None,
    Unknown,
}

/// A norm used to induce a distance: `dist(u, v) = norm(u - v)`.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Norm {
    Euclidean,
    Max,
    WeightedSum(Vec<f64>),
}

impl Norm {
    pub fn eval(&self, v: &[f64]) -> f64 {
        match self {
            Norm::Euclidean => v.iter().map(|c| c * c).sum::<f64>().sqrt(),
            Norm::Max => v.iter().fold(0.0, |m, c| m.max(c.abs())),
            Norm::WeightedSum(w) => v.iter().zip(w).map(|(c, w)| w * c.abs()).sum(),
        }
    }

    fn name(&self) -> String {
        match self {
            Norm::Euclidean => "euclidean".into(),
            Norm::Max => "max".into(),
            Norm::WeightedSum(_) => "weighted_sum".into(),
        }
    }
}

#[derive(Clone)]
enum DistanceKind {
    Euclidean,
    MaxCoord,
    SquaredEuclidean,
    Discrete,
    NormInduced(Norm),
    Sup {
        base: Box<MetricSpace>,
        domain_size: usize,
    },
    Custom(Arc<dyn Fn(&Point, &Point) -> f64 + Send + Sync>),
}

/// A carrier dimension together with a distance evaluator and its
/// declared properties.
#[derive(Clone)]
pub struct MetricSpace {
    name: String,
    dimension: usize,
    triangle_status: TriangleStatus,
    kind: DistanceKind,
}

impl fmt::Debug for MetricSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MetricSpace")
            .field("name", &self.name)
            .field("dimension", &self.dimension)
            .field("triangle_status", &self.triangle_status)
            .finish()
    }
}

impl MetricSpace {
    pub fn euclidean(dimension: usize) -> Self {
        MetricSpace {
            name: "euclidean".into(),
            dimension,
            triangle_status: TriangleStatus::Global,
            kind: DistanceKind::Euclidean,
        }
    }

    /// Maximum absolute coordinate difference.
    pub fn max_coordinate(dimension: usize) -> Self {
        MetricSpace {
            name: "max".into(),
            dimension,
            triangle_status: TriangleStatus::Global,
            kind: DistanceKind::MaxCoord,
        }
    }

    /// Squared euclidean distance: symmetric, zero on the diagonal, but
    /// the triangle inequality fails (for example on 1, 1/2, 1/4).
    pub fn squared_euclidean(dimension: usize) -> Self {
        MetricSpace {
            name: "squared".into(),
            dimension,
            triangle_status: TriangleStatus::None,
            kind: DistanceKind::SquaredEuclidean,
        }
    }

    /// 0/1 distance.
    pub fn discrete(dimension: usize) -> Self {
        MetricSpace {
            name: "discrete".into(),
            dimension,
            triangle_status: TriangleStatus::Global,
            kind: DistanceKind::Discrete,
        }
    }

    /// Distance induced by a norm on coordinate differences. The weighted
    /// sum norm requires one strictly positive weight per coordinate.
    pub fn from_norm(norm: Norm, dimension: usize) -> Result<Self> {
        if let Norm::WeightedSum(w) = &norm {
            if w.len() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    got: w.len(),
                });
            }
            if w.iter().any(|x| !x.is_finite() || *x <= 0.0) {
                return Err(Error::RejectedInput(
                    "weighted_sum norm needs finite positive weights".into(),
                ));
            }
        }
        Ok(MetricSpace {
            name: norm.name(),
            dimension,
            triangle_status: TriangleStatus::Global,
            kind: DistanceKind::NormInduced(norm),
        })
    }

    /// A user-supplied distance function. Axioms are the caller's claim;
    /// [`check_axioms`] can probe them on samples.
    pub fn custom<F>(name: &str, dimension: usize, triangle_status: TriangleStatus, f: F) -> Self
    where
        F: Fn(&Point, &Point) -> f64 + Send + Sync + 'static,
    {
        MetricSpace {
            name: name.into(),
            dimension,
            triangle_status,
            kind: DistanceKind::Custom(Arc::new(f)),
        }
    }

    /// Look up a catalogue space by its external name.
    pub fn by_name(name: &str, dimension: usize) -> Result<Self> {
        match name {
            "euclidean" => Ok(Self::euclidean(dimension)),
            "max" => Ok(Self::max_coordinate(dimension)),
            "squared" => Ok(Self::squared_euclidean(dimension)),
            "discrete" => Ok(Self::discrete(dimension)),
            other => Err(Error::RejectedInput(format!(
                "unknown metric {other:?}; expected one of euclidean, max, squared, discrete"
            ))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn triangle_status(&self) -> TriangleStatus {
        self.triangle_status
    }

    /// True when the distance is one of the exact built-in formulas, so
    /// symmetry and zero self-distance hold bit-for-bit and axiom checks
    /// may compare exactly.
    pub fn is_exact_formula(&self) -> bool {
        match &self.kind {
            DistanceKind::Custom(_) => false,
            DistanceKind::Sup { base, .. } => base.is_exact_formula(),
            _ => true,
        }
    }

    /// Distance between two points of the carrier.
    pub fn distance(&self, u: &Point, v: &Point) -> Result<f64> {
        if u.dim() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: u.dim(),
            });
        }
        if v.dim() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: v.dim(),
            });
        }
        Ok(self.dist_slices(u.coords(), v.coords()))
    }

    fn dist_slices(&self, u: &[f64], v: &[f64]) -> f64 {
        match &self.kind {
            DistanceKind::Euclidean => u
                .iter()
                .zip(v)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt(),
            DistanceKind::MaxCoord => u.iter().zip(v).fold(0.0, |m, (a, b)| m.max((a - b).abs())),
            DistanceKind::SquaredEuclidean => {
                u.iter().zip(v).map(|(a, b)| (a - b) * (a - b)).sum::<f64>()
            }
            DistanceKind::Discrete => {
                if u == v {
                    0.0
                } else {
                    1.0
                }
            }
            DistanceKind::NormInduced(norm) => {
                let diff: Vec<f64> = u.iter().zip(v).map(|(a, b)| a - b).collect();
                norm.eval(&diff).abs()
            }
            DistanceKind::Sup { base, domain_size } => {
                let d = base.dimension;
                let mut worst = 0.0f64;
                for s in 0..*domain_size {
                    let lo = s * d;
                    let hi = lo + d;
                    worst = worst.max(base.dist_slices(&u[lo..hi], &v[lo..hi]));
                }
                worst
            }
            DistanceKind::Custom(f) => {
                let pu = Point { coords: u.to_vec() };
                let pv = Point { coords: v.to_vec() };
                f(&pu, &pv)
            }
        }
    }
}

/// Finite evidence against the unique-limit axiom: a sequence claimed to
/// approach two candidate limits at once.
#[derive(Debug, Clone)]
pub struct WitnessSequence {
    pub terms: Vec<Point>,
    pub candidate_limits: (Point, Point),
}

impl WitnessSequence {
    pub fn new(terms: Vec<Point>, candidate_limits: (Point, Point)) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::RejectedInput(
                "witness sequence must be non-empty".into(),
            ));
        }
        Ok(WitnessSequence {
            terms,
            candidate_limits,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AxiomId {
    N1,
    N2,
    N3,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomViolation {
    pub axiom: AxiomId,
    pub witness: Vec<Point>,
    pub values: Vec<f64>,
}

/// Outcome of probing the axioms on finite evidence. Zero self-distance
/// and symmetry are checked exhaustively over the sample; unique limits
/// only against explicitly supplied witness sequences.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub n1_pass: bool,
    pub n2_pass: bool,
    pub n3_pass: bool,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.n1_pass && self.n2_pass && self.n3_pass
    }
}

/// Probe the axioms of `space` on a point sample and optional witness
/// sequences. Built-in formula metrics are compared exactly; custom
/// distances within `tol`.
pub fn check_axioms(
    space: &MetricSpace,
    sample: &[Point],
    witnesses: &[WitnessSequence],
    tol: f64,
) -> Result<AxiomReport> {
    if sample.is_empty() {
        return Err(Error::RejectedInput(
            "axiom check needs a non-empty sample".into(),
        ));
    }
    if !(tol > 0.0) {
        return Err(Error::RejectedInput("tol must be positive".into()));
    }
    let exact = space.is_exact_formula();
    let zero_ok = |d: f64| if exact { d == 0.0 } else { d.abs() <= tol };
    let eq_ok = |a: f64, b: f64| if exact { a == b } else { (a - b).abs() <= tol };

    let mut violations = Vec::new();
    let mut n1_pass = true;
    let mut n2_pass = true;
    let mut n3_pass = true;

    for u in sample {
        let d = space.distance(u, u)?;
        if !d.is_finite() || d < 0.0 || !zero_ok(d) {
            n1_pass = false;
            violations.push(AxiomViolation {
                axiom: AxiomId::N1,
                witness: vec![u.clone()],
                values: vec![d],
            });
        }
    }

    for (i, u) in sample.iter().enumerate() {
        for v in &sample[i + 1..] {
            let duv = space.distance(u, v)?;
            let dvu = space.distance(v, u)?;
            if !duv.is_finite() || !dvu.is_finite() || duv < 0.0 || dvu < 0.0 || !eq_ok(duv, dvu) {
                n2_pass = false;
                violations.push(AxiomViolation {
                    axiom: AxiomId::N2,
                    witness: vec![u.clone(), v.clone()],
                    values: vec![duv, dvu],
                });
            }
        }
    }

    for w in witnesses {
        if w.terms.is_empty() {
            return Err(Error::RejectedInput(
                "witness sequence must be non-empty".into(),
            ));
        }
        let last = w.terms.last().expect("non-empty");
        let (a, b) = &w.candidate_limits;
        let da = space.distance(last, a)?;
        let db = space.distance(last, b)?;
        let dab = space.distance(a, b)?;
        // The tail sits within tol of both candidates, yet the candidates
        // are separated: finite evidence that limits are not unique.
        if da < tol && db < tol && dab > tol {
            n3_pass = false;
            violations.push(AxiomViolation {
                axiom: AxiomId::N3,
                witness: vec![last.clone(), a.clone(), b.clone()],
                values: vec![da, db, dab],
            });
        }
    }

    Ok(AxiomReport {
        n1_pass,
        n2_pass,
        n3_pass,
        violations,
    })
}

/// A triple violating the triangle inequality, with the measured sides.
#[derive(Debug, Clone, Serialize)]
pub struct TriangleWitness {
    pub a: Point,
    pub b: Point,
    pub c: Point,
    /// d(a, c)
    pub direct: f64,
    /// d(a, b) + d(b, c)
    pub via: f64,
}

/// Check `d(a, c) <= d(a, b) + d(b, c)` over every ordered triple drawn
/// from `points`. Returns the first violating triple in input order.
pub fn check_triangle_on_set(
    space: &MetricSpace,
    points: &[Point],
) -> Result<(bool, Option<TriangleWitness>)> {
    if points.len() < 3 {
        return Err(Error::RejectedInput(
            "triangle check needs at least 3 points".into(),
        ));
    }
    // Precompute the pairwise distances once; the triple scan is cubic.
    let n = points.len();
    let mut d = vec![0.0f64; n * n];
    for (i, a) in points.iter().enumerate() {
        for (j, b) in points.iter().enumerate() {
            d[i * n + j] = space.distance(a, b)?;
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let direct = d[i * n + k];
                let via = d[i * n + j] + d[j * n + k];
                if direct > via + TRIANGLE_SLACK * (1.0 + via) {
                    return Ok((
                        false,
                        Some(TriangleWitness {
                            a: points[i].clone(),
                            b: points[j].clone(),
                            c: points[k].clone(),
                            direct,
                            via,
                        }),
                    ));
                }
            }
        }
    }
    Ok((true, None))
}

/// A function from the finite index domain `{0, .., n-1}` into the
/// carrier, stored as its table of values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FunctionTable {
    domain_size: usize,
    values: Vec<Point>,
}

impl FunctionTable {
    pub fn new(values: Vec<Point>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::RejectedInput(
                "function table must be non-empty".into(),
            ));
        }
        let d = values[0].dim();
        if values.iter().any(|p| p.dim() != d) {
            return Err(Error::RejectedInput(
                "table entries must share one dimension".into(),
            ));
        }
        Ok(FunctionTable {
            domain_size: values.len(),
            values,
        })
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    /// Dimension of each entry.
    pub fn point_dim(&self) -> usize {
        self.values[0].dim()
    }

    pub fn values(&self) -> &[Point] {
        &self.values
    }

    pub fn entry(&self, s: usize) -> &Point {
        &self.values[s]
    }

    /// Concatenate the entries into one point of dimension `n * d`, the
    /// carrier of the lifted space built by [`sup_metric`].
    pub fn flatten(&self) -> Point {
        let mut coords = Vec::with_capacity(self.domain_size * self.point_dim());
        for p in &self.values {
            coords.extend_from_slice(p.coords());
        }
        Point { coords }
    }

    /// Inverse of [`FunctionTable::flatten`].
    pub fn unflatten(point: &Point, domain_size: usize, point_dim: usize) -> Result<Self> {
        if point.dim() != domain_size * point_dim {
            return Err(Error::DimensionMismatch {
                expected: domain_size * point_dim,
                got: point.dim(),
            });
        }
        let values = point
            .coords()
            .chunks(point_dim)
            .map(|c| Point { coords: c.to_vec() })
            .collect();
        Ok(FunctionTable {
            domain_size,
            values,
        })
    }
}

/// Lift `base` to tables over a domain of size `domain_size`: the
/// distance between two tables is the maximum base distance over their
/// entries. Carried out on flattened tables of dimension
/// `domain_size * base.dimension()`. The lifted space keeps the axioms
/// and the triangle status of its base.
pub fn sup_metric(base: &MetricSpace, domain_size: usize) -> Result<MetricSpace> {
    if domain_size == 0 {
        return Err(Error::RejectedInput("domain_size must be >= 1".into()));
    }
    Ok(MetricSpace {
        name: format!("sup({})x{}", base.name, domain_size),
        dimension: base.dimension * domain_size,
        triangle_status: base.triangle_status,
        kind: DistanceKind::Sup {
            base: Box::new(base.clone()),
            domain_size,
        },
    })
}

/// Distance between two tables in the lifted space.
pub fn table_distance(base: &MetricSpace, g: &FunctionTable, h: &FunctionTable) -> Result<f64> {
    if g.domain_size() != h.domain_size() {
        return Err(Error::DimensionMismatch {
            expected: g.domain_size(),
            got: h.domain_size(),
        });
    }
    let lifted = sup_metric(base, g.domain_size())?;
    lifted.distance(&g.flatten(), &h.flatten())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(coords: &[f64]) -> Point {
        Point::new(coords.to_vec()).unwrap()
    }

    #[test]
    fn point_rejects_non_finite() {
        assert!(Point::new(vec![f64::NAN]).is_err());
        assert!(Point::new(vec![1.0, f64::INFINITY]).is_err());
        assert!(Point::new(vec![]).is_err());
    }

    #[test]
    fn euclidean_self_distance_is_zero() {
        let space = MetricSpace::euclidean(1);
        assert_eq!(space.distance(&pt(&[3.0]), &pt(&[3.0])).unwrap(), 0.0);
    }

    #[test]
    fn squared_metric_direct_arithmetic() {
        // (1 - 1/2)^2 = 0.25
        let space = MetricSpace::squared_euclidean(1);
        assert_eq!(space.distance(&pt(&[1.0]), &pt(&[0.5])).unwrap(), 0.25);
    }

    #[test]
    fn sup_metric_of_size_two_takes_the_max() {
        let base = MetricSpace::euclidean(1);
        let g = FunctionTable::new(vec![pt(&[0.0]), pt(&[0.0])]).unwrap();
        let h = FunctionTable::new(vec![pt(&[1.0]), pt(&[3.0])]).unwrap();
        assert_eq!(table_distance(&base, &g, &h).unwrap(), 3.0);
    }

    #[test]
    fn distance_rejects_dimension_mismatch() {
        let space = MetricSpace::euclidean(2);
        let err = space.distance(&pt(&[1.0]), &pt(&[1.0, 2.0])).unwrap_err();
        assert!(matches!(
            err,
            Error::DimensionMismatch {
                expected: 2,
                got: 1
            }
        ));
    }

    #[test]
    fn axioms_pass_on_euclidean_sample() {
        let space = MetricSpace::euclidean(1);
        let sample = vec![pt(&[0.0]), pt(&[1.0]), pt(&[-2.0])];
        let report = check_axioms(&space, &sample, &[], 1e-9).unwrap();
        assert!(report.all_pass());
        assert!(report.violations.is_empty());
    }

    #[test]
    fn asymmetric_distance_fails_n2_with_witness() {
        // d(x, y) = max(x - y, 0): d(1, 0) = 1 but d(0, 1) = 0.
        let space = MetricSpace::custom("one-sided", 1, TriangleStatus::Unknown, |u, v| {
            (u.coords()[0] - v.coords()[0]).max(0.0)
        });
        let sample = vec![pt(&[0.0]), pt(&[1.0])];
        let report = check_axioms(&space, &sample, &[], 1e-9).unwrap();
        assert!(!report.n2_pass);
        assert!(report.n1_pass);
        let v = report
            .violations
            .iter()
            .find(|v| v.axiom == AxiomId::N2)
            .expect("symmetry violation recorded");
        assert_eq!(v.values, vec![0.0, 1.0]); // d(0,1) then d(1,0)
    }

    #[test]
    fn squared_metric_passes_n1_n2() {
        let space = MetricSpace::squared_euclidean(1);
        let sample = vec![pt(&[0.3]), pt(&[-1.7]), pt(&[4.0])];
        let report = check_axioms(&space, &sample, &[], 1e-9).unwrap();
        assert!(report.n1_pass && report.n2_pass);
    }

    #[test]
    fn n3_witness_with_two_separated_limits_fails() {
        // The zero distance cannot separate limits, so the check (which
        // measures separation in the same distance) finds no violation.
        let space = MetricSpace::custom("zero", 1, TriangleStatus::Unknown, |_, _| 0.0);
        let seq =
            WitnessSequence::new(vec![pt(&[0.0]), pt(&[0.0])], (pt(&[0.0]), pt(&[5.0]))).unwrap();
        let report = check_axioms(&space, &[pt(&[0.0])], &[seq], 1e-9).unwrap();
        assert!(report.n3_pass);

        // A distance where the origin is at distance zero from every
        // point: a sequence sitting at the origin is "close" to two
        // candidates that the same distance keeps well apart.
        let collapsing = MetricSpace::custom("origin-glue", 1, TriangleStatus::Unknown, |u, v| {
            let (a, b) = (u.coords()[0], v.coords()[0]);
            if a == 0.0 || b == 0.0 || a == b {
                0.0
            } else {
                (a - b).abs()
            }
        });
        let seq =
            WitnessSequence::new(vec![pt(&[0.0]), pt(&[0.0])], (pt(&[3.0]), pt(&[-3.0]))).unwrap();
        let report = check_axioms(&collapsing, &[pt(&[0.0])], &[seq], 1e-9).unwrap();
        assert!(!report.n3_pass);
        let v = report
            .violations
            .iter()
            .find(|v| v.axiom == AxiomId::N3)
            .expect("unique-limit violation recorded");
        assert_eq!(v.values, vec![0.0, 0.0, 6.0]);
    }

    #[test]
    fn check_axioms_rejects_empty_sample() {
        let space = MetricSpace::euclidean(1);
        assert!(check_axioms(&space, &[], &[], 1e-9).is_err());
    }

    #[test]
    fn triangle_holds_on_euclidean_line() {
        let space = MetricSpace::euclidean(1);
        let pts = vec![pt(&[0.0]), pt(&[1.0]), pt(&[2.0])];
        let (ok, w) = check_triangle_on_set(&space, &pts).unwrap();
        assert!(ok);
        assert!(w.is_none());
    }

    #[test]
    fn triangle_fails_on_squared_metric_halving_points() {
        // d(1, 1/4) = 9/16 > d(1, 1/2) + d(1/2, 1/4) = 1/4 + 1/16 = 5/16
        let space = MetricSpace::squared_euclidean(1);
        let pts = vec![pt(&[1.0]), pt(&[0.5]), pt(&[0.25])];
        let (ok, w) = check_triangle_on_set(&space, &pts).unwrap();
        assert!(!ok);
        let w = w.unwrap();
        assert_eq!(w.a, pt(&[1.0]));
        assert_eq!(w.b, pt(&[0.5]));
        assert_eq!(w.c, pt(&[0.25]));
        assert_eq!(w.direct, 9.0 / 16.0);
        assert_eq!(w.via, 5.0 / 16.0);
    }

    #[test]
    fn triangle_trivial_on_identical_points() {
        let space = MetricSpace::squared_euclidean(1);
        let pts = vec![pt(&[2.0]), pt(&[2.0]), pt(&[2.0])];
        let (ok, _) = check_triangle_on_set(&space, &pts).unwrap();
        assert!(ok);
    }

    #[test]
    fn triangle_rejects_short_sets() {
        let space = MetricSpace::euclidean(1);
        assert!(check_triangle_on_set(&space, &[pt(&[0.0]), pt(&[1.0])]).is_err());
    }

    #[test]
    fn sup_metric_singleton_matches_base() {
        let base = MetricSpace::euclidean(1);
        let g = FunctionTable::new(vec![pt(&[5.0])]).unwrap();
        let h = FunctionTable::new(vec![pt(&[7.0])]).unwrap();
        assert_eq!(table_distance(&base, &g, &h).unwrap(), 2.0);
    }

    #[test]
    fn sup_metric_three_entries() {
        let base = MetricSpace::euclidean(1);
        let g = FunctionTable::new(vec![pt(&[0.0]), pt(&[0.0]), pt(&[0.0])]).unwrap();
        let h = FunctionTable::new(vec![pt(&[1.0]), pt(&[-2.0]), pt(&[0.5])]).unwrap();
        assert_eq!(table_distance(&base, &g, &h).unwrap(), 2.0);
    }

    #[test]
    fn sup_metric_over_squared_base() {
        let base = MetricSpace::squared_euclidean(1);
        let g = FunctionTable::new(vec![pt(&[0.0]), pt(&[0.0])]).unwrap();
        let h = FunctionTable::new(vec![pt(&[1.0]), pt(&[2.0])]).unwrap();
        assert_eq!(table_distance(&base, &g, &h).unwrap(), 4.0);
    }

    #[test]
    fn sup_metric_inherits_triangle_status() {
        let lifted = sup_metric(&MetricSpace::squared_euclidean(1), 3).unwrap();
        assert_eq!(lifted.triangle_status(), TriangleStatus::None);
        assert_eq!(lifted.dimension(), 3);
        let lifted = sup_metric(&MetricSpace::euclidean(2), 2).unwrap();
        assert_eq!(lifted.triangle_status(), TriangleStatus::Global);
        assert_eq!(lifted.dimension(), 4);
    }

    #[test]
    fn flatten_unflatten_round_trip() {
        let g = FunctionTable::new(vec![pt(&[1.0, 2.0]), pt(&[3.0, 4.0])]).unwrap();
        let flat = g.flatten();
        assert_eq!(flat.coords(), &[1.0, 2.0, 3.0, 4.0]);
        let back = FunctionTable::unflatten(&flat, 2, 2).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn by_name_is_case_sensitive() {
        assert!(MetricSpace::by_name("euclidean", 1).is_ok());
        assert!(MetricSpace::by_name("Euclidean", 1).is_err());
        assert!(MetricSpace::by_name("squared", 2).is_ok());
    }

    #[test]
    fn weighted_sum_norm_distance() {
        let space = MetricSpace::from_norm(Norm::WeightedSum(vec![2.0, 1.0]), 2).unwrap();
        let d = space.distance(&pt(&[1.0, 0.0]), &pt(&[0.0, 3.0])).unwrap();
        assert_eq!(d, 2.0 + 3.0);
    }

    #[test]
    fn weighted_sum_rejects_bad_weights() {
        assert!(MetricSpace::from_norm(Norm::WeightedSum(vec![0.0]), 1).is_err());
        assert!(MetricSpace::from_norm(Norm::WeightedSum(vec![1.0, 1.0]), 1).is_err());
    }
}
