//! Stability of single-variable functional equations
//! `f(s) = G(s, f(ψ(s)))` over a finite index domain.
//!
//! A candidate `g` that satisfies the equation only approximately
//! (`ρ'(g, O(g)) <= δ` in the sup distance) is fed to the
//! successive-approximation engine on the lifted space; the certificate
//! states how far `g` can be from the exact solution, quoting the bound
//! of the contraction family the operator belongs to. Identifiers of the
//! form `T4.x-...`/`T5-BAKER` name the certificate kinds in reports.
//!
//! The linear recursive equation `f(s) = a(s) · f(ψ(s)) + B(s)` doubles
//! as a cross-check: its exact solution is a convergent series that can
//! be summed directly, independently of the iteration, and
//! [`solve_baker`] insists the two answers agree.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::contraction::{
    estimate_lambda, ContractionKind, ContractionSpec, LambdaEstimate, MapUnderTest,
};
use crate::error::{Error, Result};
use crate::metric::{sup_metric, FunctionTable, MetricSpace, Norm, Point, TriangleWitness};
use crate::picard::{
    bound_banach, solve_fixed_point, FixedPointCertificate, IterationConfig, TriangleCheck,
};
use crate::rng::SplitMix64;

/// Hard cap on series terms per index before reporting a truncation
/// failure.
const MAX_SERIES_TERMS: usize = 1_000_000;

/// Right-hand side families `G(s, x)`.
#[derive(Clone)]
pub enum GFamily {
    /// `G(s, x) = scales[s] * x + offsets[s]`, coordinate-wise.
    Affine {
        scales: Vec<f64>,
        offsets: Vec<Point>,
    },
    /// `G(s, x)_i = amplitudes[s] * cos(x_i) + offsets[s]_i`.
    ScaledCosine {
        amplitudes: Vec<f64>,
        offsets: Vec<Point>,
    },
    Custom(Arc<dyn Fn(usize, &Point) -> Result<Point> + Send + Sync>),
}

impl fmt::Debug for GFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GFamily::Affine { scales, .. } => {
                f.debug_struct("Affine").field("scales", scales).finish()
            }
            GFamily::ScaledCosine { amplitudes, .. } => f
                .debug_struct("ScaledCosine")
                .field("amplitudes", amplitudes)
                .finish(),
            GFamily::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

impl GFamily {
    fn name(&self) -> &'static str {
        match self {
            GFamily::Affine { .. } => "affine",
            GFamily::ScaledCosine { .. } => "scaled-cosine",
            GFamily::Custom(_) => "custom",
        }
    }

    fn eval(&self, s: usize, x: &Point) -> Result<Point> {
        match self {
            GFamily::Affine { scales, offsets } => {
                let a = scales[s];
                let off = offsets[s].coords();
                Point::new(
                    x.coords()
                        .iter()
                        .zip(off)
                        .map(|(xi, ci)| a * xi + ci)
                        .collect(),
                )
            }
            GFamily::ScaledCosine {
                amplitudes,
                offsets,
            } => {
                let a = amplitudes[s];
                let off = offsets[s].coords();
                Point::new(
                    x.coords()
                        .iter()
                        .zip(off)
                        .map(|(xi, ci)| a * xi.cos() + ci)
                        .collect(),
                )
            }
            GFamily::Custom(f) => f(s, x),
        }
    }
}

/// One functional equation: domain size, entry dimension, the
/// reindexing `ψ`, and the right-hand side family.
#[derive(Debug, Clone)]
pub struct FuncEqInstance {
    domain_size: usize,
    point_dim: usize,
    psi: Vec<usize>,
    g: GFamily,
}

impl FuncEqInstance {
    pub fn new(domain_size: usize, point_dim: usize, psi: Vec<usize>, g: GFamily) -> Result<Self> {
        if domain_size == 0 || point_dim == 0 {
            return Err(Error::RejectedInput(
                "domain_size and point_dim must be >= 1".into(),
            ));
        }
        if psi.len() != domain_size {
            return Err(Error::DimensionMismatch {
                expected: domain_size,
                got: psi.len(),
            });
        }
        if let Some(bad) = psi.iter().find(|&&t| t >= domain_size) {
            return Err(Error::RejectedInput(format!(
                "psi maps into {bad}, outside the domain 0..{domain_size}"
            )));
        }
        let check_per_index = |scales: &Vec<f64>, offsets: &Vec<Point>| -> Result<()> {
            if scales.len() != domain_size || offsets.len() != domain_size {
                return Err(Error::DimensionMismatch {
                    expected: domain_size,
                    got: scales.len().min(offsets.len()),
                });
            }
            if scales.iter().any(|a| !a.is_finite()) {
                return Err(Error::RejectedInput("scale must be finite".into()));
            }
            if offsets.iter().any(|p| p.dim() != point_dim) {
                return Err(Error::RejectedInput(format!(
                    "offsets must have dimension {point_dim}"
                )));
            }
            Ok(())
        };
        match &g {
            GFamily::Affine { scales, offsets } => check_per_index(scales, offsets)?,
            GFamily::ScaledCosine {
                amplitudes,
                offsets,
            } => check_per_index(amplitudes, offsets)?,
            GFamily::Custom(_) => {}
        }
        Ok(FuncEqInstance {
            domain_size,
            point_dim,
            psi,
            g,
        })
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn point_dim(&self) -> usize {
        self.point_dim
    }

    pub fn psi(&self) -> &[usize] {
        &self.psi
    }

    /// The operator as a self-map of flattened tables, ready for the
    /// iteration engine on the lifted space.
    pub fn lifted_map(&self) -> MapUnderTest {
        let inst = self.clone();
        let dim = self.domain_size * self.point_dim;
        MapUnderTest::new(&format!("lift({})", self.g.name()), dim, move |p| {
            let table = FunctionTable::unflatten(p, inst.domain_size, inst.point_dim)?;
            Ok(apply_operator(&inst, &table)?.flatten())
        })
    }
}

/// One application of the equation's operator:
/// `O(h)(s) = G(s, h(ψ(s)))`.
pub fn apply_operator(instance: &FuncEqInstance, h: &FunctionTable) -> Result<FunctionTable> {
    if h.domain_size() != instance.domain_size {
        return Err(Error::DimensionMismatch {
            expected: instance.domain_size,
            got: h.domain_size(),
        });
    }
    if h.point_dim() != instance.point_dim {
        return Err(Error::DimensionMismatch {
            expected: instance.point_dim,
            got: h.point_dim(),
        });
    }
    let mut values = Vec::with_capacity(instance.domain_size);
    for s in 0..instance.domain_size {
        values.push(instance.g.eval(s, h.entry(instance.psi[s]))?);
    }
    FunctionTable::new(values)
}

/// `O^k(h)`.
pub fn operator_power(
    instance: &FuncEqInstance,
    h: &FunctionTable,
    k: usize,
) -> Result<FunctionTable> {
    let mut out = h.clone();
    for _ in 0..k {
        out = apply_operator(instance, &out)?;
    }
    Ok(out)
}

/// Defect of a candidate: `ρ'(g, O(g))` in the sup distance over the
/// base space.
pub fn compute_delta(
    base: &MetricSpace,
    instance: &FuncEqInstance,
    g: &FunctionTable,
) -> Result<f64> {
    let og = apply_operator(instance, g)?;
    crate::metric::table_distance(base, g, &og)
}

/// Estimate a contraction constant of the lifted operator over explicit
/// table pairs.
pub fn check_sup_contraction(
    base: &MetricSpace,
    instance: &FuncEqInstance,
    kind: ContractionKind,
    pairs: &[(FunctionTable, FunctionTable)],
) -> Result<LambdaEstimate> {
    let lifted = sup_metric(base, instance.domain_size)?;
    let map = instance.lifted_map();
    let flat: Vec<(Point, Point)> = pairs
        .iter()
        .map(|(a, b)| (a.flatten(), b.flatten()))
        .collect();
    estimate_lambda(&lifted, &map, kind, &flat)
}

/// Deterministic evidence pairs for estimating the lifted constant:
/// `count` sampled table pairs from `[lo, hi]` plus the first two orbit
/// pairs of `start`, so the estimate always sees the operator acting on
/// the candidate under study.
pub fn table_pairs_for_estimate(
    instance: &FuncEqInstance,
    start: &FunctionTable,
    lo: f64,
    hi: f64,
    count: usize,
    seed: u64,
) -> Result<Vec<(FunctionTable, FunctionTable)>> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::RejectedInput(format!("invalid box [{lo}, {hi}]")));
    }
    let (n, d) = (instance.domain_size, instance.point_dim);
    let mut rng = SplitMix64::new(seed);
    let draw = |rng: &mut SplitMix64| -> Result<FunctionTable> {
        let values = (0..n)
            .map(|_| Point::new((0..d).map(|_| rng.uniform(lo, hi)).collect()))
            .collect::<Result<Vec<_>>>()?;
        FunctionTable::new(values)
    };
    let mut pairs = Vec::with_capacity(count + 2);
    for _ in 0..count {
        pairs.push((draw(&mut rng)?, draw(&mut rng)?));
    }
    let o1 = apply_operator(instance, start)?;
    let o2 = apply_operator(instance, &o1)?;
    pairs.push((start.clone(), o1.clone()));
    pairs.push((o1, o2));
    Ok(pairs)
}

/// Add an independent uniform draw from `[-magnitude, magnitude]` to
/// every coordinate of the table; reproducible from the seed.
pub fn perturb_solution(table: &FunctionTable, magnitude: f64, seed: u64) -> Result<FunctionTable> {
    if !(magnitude >= 0.0) || !magnitude.is_finite() {
        return Err(Error::RejectedInput(
            "magnitude must be a non-negative real".into(),
        ));
    }
    let mut rng = SplitMix64::new(seed);
    let values = table
        .values()
        .iter()
        .map(|p| {
            Point::new(
                p.coords()
                    .iter()
                    .map(|c| c + rng.uniform(-magnitude, magnitude))
                    .collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    FunctionTable::new(values)
}

/// Certificate kinds issued by the stability solver. The wire identifiers
/// (`T4.2-BANACH-SUP`, ..., `T5-BAKER`) are part of the report format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilityTheorem {
    BanachSup,
    BanachOrbit,
    Kannan,
    Chatterjea,
    Ciric,
    Baker,
}

impl StabilityTheorem {
    pub const ALL: [StabilityTheorem; 6] = [
        StabilityTheorem::BanachSup,
        StabilityTheorem::BanachOrbit,
        StabilityTheorem::Kannan,
        StabilityTheorem::Chatterjea,
        StabilityTheorem::Ciric,
        StabilityTheorem::Baker,
    ];

    pub fn identifier(self) -> &'static str {
        match self {
            StabilityTheorem::BanachSup => "T4.2-BANACH-SUP",
            StabilityTheorem::BanachOrbit => "C4.3-BANACH-ORBIT",
            StabilityTheorem::Kannan => "T4.4-KANNAN",
            StabilityTheorem::Chatterjea => "T4.5-CHATTERJEA",
            StabilityTheorem::Ciric => "T4.6-CIRIC",
            StabilityTheorem::Baker => "T5-BAKER",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|t| t.identifier() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = Self::ALL.iter().map(|t| t.identifier()).collect();
                Error::RejectedInput(format!(
                    "unknown theorem {s:?}; expected one of {}",
                    known.join(", ")
                ))
            })
    }

    /// Contraction family whose bound this certificate quotes.
    pub fn kind(self) -> ContractionKind {
        match self {
            StabilityTheorem::BanachSup
            | StabilityTheorem::BanachOrbit
            | StabilityTheorem::Baker => ContractionKind::Banach,
            StabilityTheorem::Kannan => ContractionKind::Kannan,
            StabilityTheorem::Chatterjea => ContractionKind::Chatterjea,
            StabilityTheorem::Ciric => ContractionKind::Ciric,
        }
    }

    /// Whether this certificate kind ever asserts a numeric sup bound.
    /// The plain sup-space identifier certifies existence and uniqueness
    /// only; all others quote a bound when their orbit hypothesis holds.
    pub fn asserts_bound(self) -> bool {
        !matches!(self, StabilityTheorem::BanachSup)
    }
}

impl fmt::Display for StabilityTheorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.identifier())
    }
}

impl Serialize for StabilityTheorem {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.identifier())
    }
}

/// Outcome of certifying one candidate against one theorem identifier.
#[derive(Debug, Clone, Serialize)]
pub struct StabilityCertificate {
    pub theorem: StabilityTheorem,
    pub kind: ContractionKind,
    pub lambda: f64,
    pub domain_size: usize,
    pub point_dim: usize,
    /// Defect `ρ'(g, O(g))` of the candidate.
    pub delta: f64,
    /// Measured `ρ'(g, f)` between the candidate and the computed
    /// solution.
    pub sup_distance: f64,
    /// The quantitative bound on `sup_distance`, when this certificate
    /// kind asserts one and its orbit hypothesis held.
    pub theoretical_bound: Option<f64>,
    pub bound_satisfied: Option<bool>,
    /// Why no bound was asserted, when `theoretical_bound` is `None`.
    pub reason: Option<String>,
    pub converged: bool,
    pub iterations: usize,
    pub residual: f64,
    pub orbit_triangle: TriangleCheck,
    pub triangle_witness: Option<TriangleWitness>,
    pub solution: FunctionTable,
    pub tol: f64,
}

fn contraction_spec_for(kind: ContractionKind, lambda: f64) -> ContractionSpec {
    match kind {
        ContractionKind::Banach => ContractionSpec::Banach { lambda },
        ContractionKind::Kannan => ContractionSpec::Kannan { lambda },
        ContractionKind::Chatterjea => ContractionSpec::Chatterjea { lambda },
        ContractionKind::Ciric => ContractionSpec::Ciric {
            coefficients: crate::contraction::CiricCoefficients::Constant([
                lambda, 0.0, 0.0, 0.0, 0.0,
            ]),
            lambda,
        },
    }
}

/// Iterate the lifted operator from the candidate `g` and certify the
/// stability statement named by `theorem` at rate `lambda`.
///
/// Policy on bounds: the sup-space identifier asserts none; every other
/// identifier asserts its family bound only when the triangle inequality
/// held along the inspected orbit prefix, and otherwise reports the
/// failure witness instead of a bound.
pub fn solve_stability(
    base: &MetricSpace,
    instance: &FuncEqInstance,
    g: &FunctionTable,
    theorem: StabilityTheorem,
    lambda: f64,
    cfg: &IterationConfig,
) -> Result<StabilityCertificate> {
    if base.dimension() != instance.point_dim {
        return Err(Error::DimensionMismatch {
            expected: instance.point_dim,
            got: base.dimension(),
        });
    }
    let lifted = sup_metric(base, instance.domain_size)?;
    let map = instance.lifted_map();
    let spec = contraction_spec_for(theorem.kind(), lambda);
    let cert: FixedPointCertificate = solve_fixed_point(&lifted, &map, &spec, &g.flatten(), cfg)?;

    let solution =
        FunctionTable::unflatten(&cert.fixed_point, instance.domain_size, instance.point_dim)?;

    let (theoretical_bound, bound_satisfied, reason) = if !theorem.asserts_bound() {
        (
            None,
            None,
            Some(format!(
                "{} certifies existence and uniqueness of the exact solution; \
                 use {} for the quantitative sup bound",
                theorem,
                StabilityTheorem::BanachOrbit
            )),
        )
    } else {
        match cert.orbit_triangle {
            TriangleCheck::Holds => (Some(cert.bound), Some(cert.bound_satisfied), None),
            TriangleCheck::Fails => (
                None,
                None,
                Some(
                    "triangle inequality failed on the inspected orbit prefix; \
                     the sup bound requires it"
                        .into(),
                ),
            ),
            TriangleCheck::NotChecked => (
                None,
                None,
                Some("orbit triangle status unknown; the sup bound requires it".into()),
            ),
        }
    };

    Ok(StabilityCertificate {
        theorem,
        kind: theorem.kind(),
        lambda,
        domain_size: instance.domain_size,
        point_dim: instance.point_dim,
        delta: cert.delta,
        sup_distance: cert.observed,
        theoretical_bound,
        bound_satisfied,
        reason,
        converged: cert.converged,
        iterations: cert.iterations,
        residual: cert.residual,
        orbit_triangle: cert.orbit_triangle,
        triangle_witness: cert.triangle_witness,
        solution,
        tol: cert.tol,
    })
}

/// The linear recursive equation `f(s) = a(s) · f(ψ(s)) + B(s)` with
/// vector values measured in a norm-induced distance.
#[derive(Debug, Clone)]
pub struct BakerInstance {
    domain_size: usize,
    point_dim: usize,
    psi: Vec<usize>,
    a: Vec<f64>,
    b: Vec<Point>,
    norm: Norm,
}

impl BakerInstance {
    pub fn new(psi: Vec<usize>, a: Vec<f64>, b: Vec<Point>, norm: Norm) -> Result<Self> {
        let n = psi.len();
        if n == 0 {
            return Err(Error::RejectedInput("domain must be non-empty".into()));
        }
        if a.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: a.len(),
            });
        }
        if b.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: b.len(),
            });
        }
        if let Some(bad) = psi.iter().find(|&&t| t >= n) {
            return Err(Error::RejectedInput(format!(
                "psi maps into {bad}, outside the domain 0..{n}"
            )));
        }
        if a.iter().any(|x| !x.is_finite() || x.abs() >= 1.0) {
            return Err(Error::Domain(
                "coefficients a(s) must satisfy |a(s)| < 1".into(),
            ));
        }
        let d = b[0].dim();
        if b.iter().any(|p| p.dim() != d) {
            return Err(Error::RejectedInput(
                "offsets must share one dimension".into(),
            ));
        }
        Ok(BakerInstance {
            domain_size: n,
            point_dim: d,
            psi,
            a,
            b,
            norm,
        })
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn point_dim(&self) -> usize {
        self.point_dim
    }

    /// Largest `|a(s)|`: the contraction constant of the lifted operator.
    pub fn lambda_max(&self) -> f64 {
        self.a.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn space(&self) -> Result<MetricSpace> {
        MetricSpace::from_norm(self.norm.clone(), self.point_dim)
    }

    pub fn to_funceq(&self) -> Result<FuncEqInstance> {
        FuncEqInstance::new(
            self.domain_size,
            self.point_dim,
            self.psi.clone(),
            GFamily::Affine {
                scales: self.a.clone(),
                offsets: self.b.clone(),
            },
        )
    }

    pub fn zero_table(&self) -> Result<FunctionTable> {
        let zero = Point::new(vec![0.0; self.point_dim])?;
        FunctionTable::new(vec![zero; self.domain_size])
    }
}

/// How the direct series summation ended.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SeriesInfo {
    /// Largest number of terms summed at any index.
    pub terms: usize,
    /// Largest rigorous bound on the discarded tail, in the norm.
    pub tail_bound: f64,
}

/// Sum the exact solution `Λ(s) = Σ_k (Π_{i<k} a(ψ^i(s))) · B(ψ^k(s))`
/// directly, index by index, until the rigorous tail bound drops to
/// `tail_tol`. This is an oracle for the iterative solver: it never
/// touches the iteration engine.
pub fn baker_series_solution(
    instance: &BakerInstance,
    tail_tol: f64,
) -> Result<(FunctionTable, SeriesInfo)> {
    if !(tail_tol > 0.0) || !tail_tol.is_finite() {
        return Err(Error::RejectedInput(
            "tail_tol must be a positive real".into(),
        ));
    }
    let lambda_max = instance.lambda_max();
    let max_b = instance
        .b
        .iter()
        .map(|p| instance.norm.eval(p.coords()))
        .fold(0.0f64, f64::max);

    let mut values = Vec::with_capacity(instance.domain_size);
    let mut max_terms = 0usize;
    let mut max_tail = 0.0f64;
    for s in 0..instance.domain_size {
        let mut acc = vec![0.0f64; instance.point_dim];
        let mut prefix = 1.0f64;
        let mut idx = s;
        let mut terms = 0usize;
        loop {
            for (a, bi) in acc.iter_mut().zip(instance.b[idx].coords()) {
                *a += prefix * bi;
            }
            prefix *= instance.a[idx];
            idx = instance.psi[idx];
            terms += 1;
            let tail = if lambda_max > 0.0 {
                prefix.abs() * max_b / (1.0 - lambda_max)
            } else {
                0.0
            };
            if tail <= tail_tol {
                max_terms = max_terms.max(terms);
                max_tail = max_tail.max(tail);
                break;
            }
            if terms >= MAX_SERIES_TERMS {
                return Err(Error::Truncation {
                    tail_bound: tail,
                    tail_tol,
                    terms,
                });
            }
        }
        values.push(Point::new(acc)?);
    }
    Ok((
        FunctionTable::new(values)?,
        SeriesInfo {
            terms: max_terms,
            tail_bound: max_tail,
        },
    ))
}

/// Certificate for the linear recursive equation: the iterative answer,
/// cross-checked against the independent series summation.
#[derive(Debug, Clone, Serialize)]
pub struct BakerCertificate {
    pub theorem: StabilityTheorem,
    pub lambda_max: f64,
    pub domain_size: usize,
    pub point_dim: usize,
    /// Defect `ρ'(f0, O(f0))` of the start table.
    pub delta: f64,
    /// Measured `ρ'(f0, f)` to the computed solution.
    pub sup_distance: f64,
    /// `delta / (1 - lambda_max)`.
    pub theoretical_bound: f64,
    pub bound_satisfied: bool,
    pub converged: bool,
    pub iterations: usize,
    pub residual: f64,
    pub series: SeriesInfo,
    /// `ρ'` between the iterative and the series solutions.
    pub picard_series_gap: f64,
    pub solution: FunctionTable,
    pub tol: f64,
}

/// Solve the linear recursive equation twice — by iteration from `f0`
/// (default: the zero table) and by direct series summation — and refuse
/// to certify unless both answers agree within the configured tolerance.
///
/// Internally the iteration runs at a tightened tolerance
/// `tol · (1 - λ_max) / 4` and the series at `tol / 4`, which pins both
/// answers within `tol/4` of the exact solution, so an honest run always
/// lands within `tol` overall; a larger gap is reported as an internal
/// inconsistency rather than papered over.
pub fn solve_baker(
    instance: &BakerInstance,
    f0: Option<&FunctionTable>,
    cfg: &IterationConfig,
) -> Result<BakerCertificate> {
    cfg.validate()?;
    let space = instance.space()?;
    let feq = instance.to_funceq()?;
    let lambda_max = instance.lambda_max();

    let zero;
    let start = match f0 {
        Some(t) => t,
        None => {
            zero = instance.zero_table()?;
            &zero
        }
    };

    let tight = IterationConfig {
        tol: cfg.tol * (1.0 - lambda_max) / 4.0,
        ..*cfg
    };
    let stab = solve_stability(
        &space,
        &feq,
        start,
        StabilityTheorem::Baker,
        lambda_max,
        &tight,
    )?;

    let (series_table, series) = baker_series_solution(instance, cfg.tol / 4.0)?;
    let gap = crate::metric::table_distance(&space, &stab.solution, &series_table)?;
    if stab.converged && gap > cfg.tol {
        return Err(Error::Inconsistency(format!(
            "iterative and series solutions disagree by {gap:.3e} (> {:.3e})",
            cfg.tol
        )));
    }

    let bound = bound_banach(stab.delta, lambda_max)?;
    Ok(BakerCertificate {
        theorem: StabilityTheorem::Baker,
        lambda_max,
        domain_size: instance.domain_size,
        point_dim: instance.point_dim,
        delta: stab.delta,
        sup_distance: stab.sup_distance,
        theoretical_bound: bound,
        bound_satisfied: stab.sup_distance <= bound + cfg.tol,
        converged: stab.converged,
        iterations: stab.iterations,
        residual: stab.residual,
        series,
        picard_series_gap: gap,
        solution: stab.solution,
        tol: cfg.tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64) -> Point {
        Point::scalar(x).unwrap()
    }

    fn table(values: &[f64]) -> FunctionTable {
        FunctionTable::new(values.iter().map(|&x| pt(x)).collect()).unwrap()
    }

    /// f(0) = 0.5 f(1) + 1, f(1) = 0.25 f(0) + 2: exact solution
    /// (16/7, 18/7), solved by hand from the 2-cycle.
    fn two_cycle() -> FuncEqInstance {
        FuncEqInstance::new(
            2,
            1,
            vec![1, 0],
            GFamily::Affine {
                scales: vec![0.5, 0.25],
                offsets: vec![pt(1.0), pt(2.0)],
            },
        )
        .unwrap()
    }

    #[test]
    fn operator_application_is_pointwise() {
        let inst = two_cycle();
        let g = table(&[0.0, 0.0]);
        let og = apply_operator(&inst, &g).unwrap();
        assert_eq!(og, table(&[1.0, 2.0]));
        let og2 = apply_operator(&inst, &og).unwrap();
        assert_eq!(og2, table(&[2.0, 2.25]));
        assert_eq!(operator_power(&inst, &g, 2).unwrap(), og2);
    }

    #[test]
    fn instance_validation_rejects_bad_psi_and_shapes() {
        assert!(FuncEqInstance::new(
            2,
            1,
            vec![0, 2],
            GFamily::Affine {
                scales: vec![0.5, 0.5],
                offsets: vec![pt(0.0), pt(0.0)]
            },
        )
        .is_err());
        assert!(FuncEqInstance::new(
            2,
            1,
            vec![0, 1],
            GFamily::Affine {
                scales: vec![0.5],
                offsets: vec![pt(0.0), pt(0.0)]
            },
        )
        .is_err());
    }

    #[test]
    fn delta_of_zero_candidate_is_the_largest_offset() {
        let base = MetricSpace::euclidean(1);
        let inst = two_cycle();
        let delta = compute_delta(&base, &inst, &table(&[0.0, 0.0])).unwrap();
        assert_eq!(delta, 2.0);
    }

    #[test]
    fn stability_solution_matches_hand_computed_cycle_values() {
        let base = MetricSpace::euclidean(1);
        let inst = two_cycle();
        let cfg = IterationConfig {
            tol: 1e-13,
            ..Default::default()
        };
        let cert = solve_stability(
            &base,
            &inst,
            &table(&[0.0, 0.0]),
            StabilityTheorem::BanachOrbit,
            0.5,
            &cfg,
        )
        .unwrap();
        assert!(cert.converged);
        let f = cert.solution.values();
        assert!((f[0].coords()[0] - 16.0 / 7.0).abs() < 1e-10);
        assert!((f[1].coords()[0] - 18.0 / 7.0).abs() < 1e-10);
        // delta = 2, λ = 1/2: bound = 4; ρ'(0, f) = 18/7 ≈ 2.571
        assert_eq!(cert.delta, 2.0);
        assert_eq!(cert.theoretical_bound, Some(4.0));
        assert_eq!(cert.bound_satisfied, Some(true));
        assert!((cert.sup_distance - 18.0 / 7.0).abs() < 1e-10);
        assert_eq!(cert.orbit_triangle, TriangleCheck::Holds);
    }

    #[test]
    fn sup_space_identifier_asserts_no_numeric_bound() {
        let base = MetricSpace::euclidean(1);
        let inst = two_cycle();
        let cfg = IterationConfig::default();
        let cert = solve_stability(
            &base,
            &inst,
            &table(&[0.0, 0.0]),
            StabilityTheorem::BanachSup,
            0.5,
            &cfg,
        )
        .unwrap();
        assert!(cert.converged);
        assert_eq!(cert.theoretical_bound, None);
        assert_eq!(cert.bound_satisfied, None);
        let reason = cert.reason.unwrap();
        assert!(reason.contains("C4.3-BANACH-ORBIT"));
    }

    #[test]
    fn triangle_failure_withholds_the_bound() {
        // squared base distance: the lifted orbit violates the triangle
        // inequality, so no bound may be quoted.
        let base = MetricSpace::squared_euclidean(1);
        let inst = FuncEqInstance::new(
            1,
            1,
            vec![0],
            GFamily::Affine {
                scales: vec![0.25],
                offsets: vec![pt(0.0)],
            },
        )
        .unwrap();
        let cfg = IterationConfig {
            tol: 1e-13,
            ..Default::default()
        };
        let cert = solve_stability(
            &base,
            &inst,
            &table(&[1.0]),
            StabilityTheorem::Chatterjea,
            0.3,
            &cfg,
        )
        .unwrap();
        assert!(cert.converged);
        assert_eq!(cert.orbit_triangle, TriangleCheck::Fails);
        assert_eq!(cert.theoretical_bound, None);
        assert!(cert.reason.unwrap().contains("triangle"));
        assert!(cert.triangle_witness.is_some());
    }

    #[test]
    fn theorem_identifiers_round_trip() {
        for t in StabilityTheorem::ALL {
            assert_eq!(StabilityTheorem::parse(t.identifier()).unwrap(), t);
            assert_eq!(format!("{t}"), t.identifier());
        }
        assert!(StabilityTheorem::parse("T9-UNKNOWN").is_err());
        assert_eq!(StabilityTheorem::Baker.identifier(), "T5-BAKER");
        assert_eq!(
            serde_json::to_string(&StabilityTheorem::Kannan).unwrap(),
            "\"T4.4-KANNAN\""
        );
    }

    #[test]
    fn lifted_contraction_estimate_sees_the_scales() {
        let base = MetricSpace::euclidean(1);
        let inst = two_cycle();
        let start = table(&[0.0, 0.0]);
        let pairs = table_pairs_for_estimate(&inst, &start, -2.0, 2.0, 40, 7).unwrap();
        assert_eq!(pairs.len(), 42);
        let est = check_sup_contraction(&base, &inst, ContractionKind::Banach, &pairs).unwrap();
        // worst scale is 0.5; random tables rarely achieve it exactly
        assert!(est.estimate <= 0.5 + 1e-12);
        assert!(est.estimate > 0.2);
        assert!(est.admissible());
    }

    /// Swap domain with a = 1/2 everywhere, B = (1, 0): the exact
    /// solution is (4/3, 2/3) — from f0 = f0/4 + 1.
    fn swap_baker() -> BakerInstance {
        BakerInstance::new(
            vec![1, 0],
            vec![0.5, 0.5],
            vec![pt(1.0), pt(0.0)],
            Norm::Euclidean,
        )
        .unwrap()
    }

    #[test]
    fn series_solution_matches_hand_computed_values() {
        let inst = swap_baker();
        let (table, info) = baker_series_solution(&inst, 1e-12).unwrap();
        assert!((table.values()[0].coords()[0] - 4.0 / 3.0).abs() < 1e-12);
        assert!((table.values()[1].coords()[0] - 2.0 / 3.0).abs() < 1e-12);
        assert!(info.terms > 10);
        assert!(info.tail_bound <= 1e-12);
    }

    #[test]
    fn solve_baker_cross_checks_iteration_against_series() {
        let inst = swap_baker();
        let cfg = IterationConfig::default();
        let cert = solve_baker(&inst, None, &cfg).unwrap();
        assert!(cert.converged);
        assert!(cert.picard_series_gap <= cfg.tol);
        assert!((cert.solution.values()[0].coords()[0] - 4.0 / 3.0).abs() < 1e-10);
        assert!((cert.solution.values()[1].coords()[0] - 2.0 / 3.0).abs() < 1e-10);
        // f0 = 0: delta = ρ'(0, B) = 1, bound = 1/(1 - 1/2) = 2,
        // observed sup distance = 4/3
        assert_eq!(cert.delta, 1.0);
        assert_eq!(cert.theoretical_bound, 2.0);
        assert!(cert.bound_satisfied);
        assert!((cert.sup_distance - 4.0 / 3.0).abs() < 1e-10);
        assert_eq!(cert.lambda_max, 0.5);
    }

    #[test]
    fn vector_valued_baker_agrees_under_max_norm() {
        let b = vec![
            Point::new(vec![1.0, -3.0]).unwrap(),
            Point::new(vec![0.5, 2.0]).unwrap(),
            Point::new(vec![-1.0, 0.0]).unwrap(),
        ];
        let inst = BakerInstance::new(vec![2, 0, 1], vec![0.9, -0.4, 0.7], b, Norm::Max).unwrap();
        let cfg = IterationConfig::default();
        let cert = solve_baker(&inst, None, &cfg).unwrap();
        assert!(cert.converged);
        assert!(cert.picard_series_gap <= cfg.tol);
        assert!(cert.bound_satisfied);
        assert_eq!(cert.lambda_max, 0.9);
        // residual of the accepted table is essentially zero
        assert!(cert.residual <= cfg.tol);
    }

    #[test]
    fn baker_rejects_non_contractive_coefficients() {
        let err =
            BakerInstance::new(vec![0], vec![1.0], vec![pt(1.0)], Norm::Euclidean).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn perturb_is_deterministic_and_bounded() {
        let t = table(&[1.0, 2.0, 3.0]);
        let a = perturb_solution(&t, 0.5, 11).unwrap();
        let b = perturb_solution(&t, 0.5, 11).unwrap();
        let c = perturb_solution(&t, 0.5, 12).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        for (orig, new) in t.values().iter().zip(a.values()) {
            let gap = (orig.coords()[0] - new.coords()[0]).abs();
            assert!(gap <= 0.5);
        }
        // zero magnitude is the identity
        assert_eq!(perturb_solution(&t, 0.0, 5).unwrap(), t);
    }

    #[test]
    fn tight_banach_instance_attains_its_bound() {
        // f(s) = λ f(ψ(s)) + 1 on a 3-cycle has the constant solution
        // 1/(1-λ); from g = 0 the defect is 1 and the sup distance is
        // exactly the bound 1/(1-λ).
        let base = MetricSpace::euclidean(1);
        for &lambda in &[0.1, 0.5, 0.9] {
            let inst = FuncEqInstance::new(
                3,
                1,
                vec![1, 2, 0],
                GFamily::Affine {
                    scales: vec![lambda; 3],
                    offsets: vec![pt(1.0), pt(1.0), pt(1.0)],
                },
            )
            .unwrap();
            let cfg = IterationConfig {
                tol: 1e-12,
                ..Default::default()
            };
            let cert = solve_stability(
                &base,
                &inst,
                &table(&[0.0, 0.0, 0.0]),
                StabilityTheorem::BanachOrbit,
                lambda,
                &cfg,
            )
            .unwrap();
            assert!(cert.converged);
            assert_eq!(cert.delta, 1.0);
            let bound = cert.theoretical_bound.unwrap();
            assert!((bound - 1.0 / (1.0 - lambda)).abs() < 1e-12);
            assert!(
                (cert.sup_distance - bound).abs() <= 1e-10,
                "λ = {lambda}: sup {} vs bound {bound}",
                cert.sup_distance
            );
            assert_eq!(cert.bound_satisfied, Some(true));
        }
    }
}
