//! The four instance-facing commands. Each returns a [`CmdOutcome`]
//! whose verdict encodes the exit code; hard errors (bad input, internal
//! inconsistency) travel as `CliError` instead.

use serde::Serialize;
use serde_json::json;

use fixpoint_core::{
    brute_force_fixed_point, check_axioms, check_triangle_on_set, estimate_lambda, grid_pairs,
    perturb_solution, sample_pairs, solve_baker, solve_fixed_point, solve_stability,
    table_distance, table_pairs_for_estimate, verify_condition, BakerCertificate,
    CiricCoefficients, ContractionKind, ContractionReport, ContractionSpec, FixedPointCertificate,
    LambdaEstimate, MapUnderTest, MetricSpace, Point, SplitMix64, StabilityCertificate,
    StabilityTheorem, TriangleCheck,
};

use crate::instance::{Effective, InstanceFile, Loaded, LoadedFuncEq, LoadedMap};
use crate::report::{sci, CmdOutcome, Verdict};
use crate::{CliError, CliResult};

fn val<T: Serialize>(x: &T) -> CliResult<serde_json::Value> {
    serde_json::to_value(x).map_err(|e| CliError::Input(format!("cannot serialize: {e}")))
}

/// Deterministic point sample over the evaluation box.
fn sample_points(dimension: usize, eval_box: [f64; 2], count: usize, seed: u64) -> Vec<Point> {
    let mut rng = SplitMix64::new(SplitMix64::derive(seed, 0x6d65_7472_6963)); // b"metric"
    (0..count)
        .map(|_| {
            Point::new(
                (0..dimension)
                    .map(|_| rng.uniform(eval_box[0], eval_box[1]))
                    .collect(),
            )
            .expect("uniform draws are finite")
        })
        .collect()
}

/// Evidence pairs for map-level contraction checks: the full dyadic grid
/// while it stays small, topped up with seeded samples.
fn evidence_pairs(
    dimension: usize,
    eval_box: [f64; 2],
    seed: u64,
) -> CliResult<Vec<(Point, Point)>> {
    let [lo, hi] = eval_box;
    let mut pairs = if dimension <= 3 {
        grid_pairs(dimension, lo, hi)?
    } else {
        Vec::new()
    };
    let extra = if dimension <= 3 { 128 } else { 256 };
    pairs.extend(sample_pairs(dimension, lo, hi, extra, seed)?);
    Ok(pairs)
}

/// The space whose axioms `check-metric` probes: the base space of the
/// instance (the lifted sup distance inherits its axioms from it).
fn instance_space(file: &InstanceFile) -> CliResult<MetricSpace> {
    match file.build()? {
        Loaded::Map(m) => Ok(m.space),
        Loaded::FuncEq(f) => Ok(f.base),
        Loaded::Baker(b) => Ok(b.instance.space()?),
    }
}

pub fn check_metric(file: &InstanceFile, eff: &Effective) -> CliResult<CmdOutcome> {
    let space = instance_space(file)?;
    let sample = sample_points(space.dimension(), eff.eval_box, 64, eff.seed);
    let axioms = check_axioms(&space, &sample, &[], eff.axiom_tol)?;
    let probe_points = &sample[..sample.len().min(12)];
    let (triangle_holds, witness) = check_triangle_on_set(&space, probe_points)?;

    let verdict = if axioms.all_pass() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let mut summary = vec![
        format!(
            "space {:?} (dimension {}): zero self-distance {}, symmetry {}, unique limits {} \
             (no witness sequences supplied)",
            space.name(),
            space.dimension(),
            if axioms.n1_pass { "ok" } else { "VIOLATED" },
            if axioms.n2_pass { "ok" } else { "VIOLATED" },
            if axioms.n3_pass { "ok" } else { "VIOLATED" },
        ),
        format!(
            "declared triangle status: {:?}; probe over {} sample points: {}",
            space.triangle_status(),
            probe_points.len(),
            if triangle_holds {
                "no violation found"
            } else {
                "VIOLATED"
            },
        ),
    ];
    if let Some(w) = &witness {
        summary.push(format!(
            "triangle witness: d(a,c) = {} > {} = d(a,b) + d(b,c)",
            sci(w.direct),
            sci(w.via)
        ));
    }
    Ok(CmdOutcome {
        verdict,
        details: json!({
            "space": space.name(),
            "dimension": space.dimension(),
            "declared_triangle": val(&space.triangle_status())?,
            "axioms": val(&axioms)?,
            "triangle_probe": {
                "points_checked": probe_points.len(),
                "holds": triangle_holds,
                "witness": val(&witness)?,
            },
            "sample_size": sample.len(),
        }),
        summary,
    })
}

pub fn classify(file: &InstanceFile, eff: &Effective) -> CliResult<CmdOutcome> {
    let (space, map, pairs, scope) = match file.build()? {
        Loaded::Map(m) => {
            let pairs = evidence_pairs(m.space.dimension(), eff.eval_box, eff.seed)?;
            (m.space, m.map, pairs, "map")
        }
        Loaded::FuncEq(f) => {
            let (lifted, map, pairs) = lifted_evidence(&f.base, &f.instance, &f.start, eff)?;
            (lifted, map, pairs, "lifted operator")
        }
        Loaded::Baker(b) => {
            let base = b.instance.space()?;
            let feq = b.instance.to_funceq()?;
            let (lifted, map, pairs) = lifted_evidence(&base, &feq, &b.start, eff)?;
            (lifted, map, pairs, "lifted operator")
        }
    };
    let estimates = [
        ContractionKind::Banach,
        ContractionKind::Kannan,
        ContractionKind::Chatterjea,
    ]
    .into_iter()
    .map(|kind| estimate_lambda(&space, &map, kind, &pairs).map_err(CliError::from))
    .collect::<CliResult<Vec<LambdaEstimate>>>()?;

    let any_admissible = estimates.iter().any(|e| e.admissible());
    let mut summary = Vec::new();
    for e in &estimates {
        summary.push(format!(
            "{}: worst ratio {} over {} informative pairs — {}",
            e.kind.as_str(),
            if e.unbounded {
                "unbounded".into()
            } else {
                sci(e.estimate)
            },
            e.informative_pairs,
            if e.admissible() {
                format!("admissible (< {})", e.kind.lambda_sup())
            } else {
                format!("not admissible (needs < {})", e.kind.lambda_sup())
            }
        ));
    }
    summary.push(format!(
        "scope: {scope}; {} evidence pairs; the five-coefficient family is checked only \
         against explicit `ciric` coefficients",
        pairs.len()
    ));
    Ok(CmdOutcome {
        verdict: if any_admissible {
            Verdict::Pass
        } else {
            Verdict::NotApplicable
        },
        details: json!({
            "scope": scope,
            "pairs": pairs.len(),
            "estimates": val(&estimates)?,
        }),
        summary,
    })
}

/// Lifted space, lifted map, and flattened evidence pairs for a
/// functional-equation instance.
fn lifted_evidence(
    base: &MetricSpace,
    instance: &fixpoint_core::FuncEqInstance,
    start: &fixpoint_core::FunctionTable,
    eff: &Effective,
) -> CliResult<(MetricSpace, MapUnderTest, Vec<(Point, Point)>)> {
    let lifted = fixpoint_core::sup_metric(base, instance.domain_size())?;
    let map = instance.lifted_map();
    let tables = table_pairs_for_estimate(
        instance,
        start,
        eff.eval_box[0],
        eff.eval_box[1],
        64,
        eff.seed,
    )?;
    let pairs = tables
        .iter()
        .map(|(a, b)| (a.flatten(), b.flatten()))
        .collect();
    Ok((lifted, map, pairs))
}

/// How the rate entering the engine was determined.
enum RateSource {
    Given,
    FromCoefficients,
    Estimated(LambdaEstimate),
}

/// Resolve the contraction family and rate for an instance, estimating
/// the rate from evidence when the file does not pin one. The `Err`
/// arm of the inner result is the graceful "family does not apply"
/// outcome.
fn resolve_spec(
    file: &InstanceFile,
    kind: ContractionKind,
    space: &MetricSpace,
    map: &MapUnderTest,
    pairs: &[(Point, Point)],
) -> CliResult<Result<(ContractionSpec, RateSource), CmdOutcome>> {
    if kind == ContractionKind::Ciric {
        let c = file.ciric.ok_or_else(|| {
            CliError::Input(
                "the five-coefficient family needs the `ciric` field with [λ1..λ5]".into(),
            )
        })?;
        let lambda = file.lambda.unwrap_or_else(|| c.iter().sum());
        let spec = ContractionSpec::Ciric {
            coefficients: CiricCoefficients::Constant(c),
            lambda,
        };
        spec.validate()?;
        return Ok(Ok((spec, RateSource::FromCoefficients)));
    }
    let build = |lambda: f64| -> ContractionSpec {
        match kind {
            ContractionKind::Banach => ContractionSpec::Banach { lambda },
            ContractionKind::Kannan => ContractionSpec::Kannan { lambda },
            ContractionKind::Chatterjea => ContractionSpec::Chatterjea { lambda },
            ContractionKind::Ciric => unreachable!("handled above"),
        }
    };
    if let Some(lambda) = file.lambda {
        let spec = build(lambda);
        spec.validate()?;
        return Ok(Ok((spec, RateSource::Given)));
    }
    let est = estimate_lambda(space, map, kind, pairs)?;
    if !est.admissible() {
        let ratio = if est.unbounded {
            "unbounded".into()
        } else {
            sci(est.estimate)
        };
        return Ok(Err(CmdOutcome {
            verdict: Verdict::NotApplicable,
            details: json!({ "estimate": val(&est)?, "kind": kind.as_str() }),
            summary: vec![format!(
                "{} worst ratio {ratio} is not below {}; the family does not apply",
                kind.as_str(),
                kind.lambda_sup()
            )],
        }));
    }
    let spec = build(est.estimate);
    spec.validate()?;
    Ok(Ok((spec, RateSource::Estimated(est))))
}

fn rate_summary(spec: &ContractionSpec, source: &RateSource) -> String {
    let origin = match source {
        RateSource::Given => "from the instance file".into(),
        RateSource::FromCoefficients => "with explicit coefficients".into(),
        RateSource::Estimated(e) => {
            format!("estimated over {} evidence pairs", e.pairs_checked)
        }
    };
    format!(
        "family {} at rate λ = {} ({origin})",
        spec.kind().as_str(),
        sci(spec.lambda())
    )
}

/// Family selected by a MAP instance: explicit coefficients win, then
/// the theorem's family, then the plain λ-Lipschitz one.
fn map_kind(file: &InstanceFile) -> CliResult<ContractionKind> {
    if file.ciric.is_some() {
        return Ok(ContractionKind::Ciric);
    }
    Ok(
        match file
            .theorem
            .as_deref()
            .map(StabilityTheorem::parse)
            .transpose()?
        {
            Some(t) => t.kind(),
            None => ContractionKind::Banach,
        },
    )
}

/// Shared by solve/certify on MAP instances: resolve the rate, verify
/// the condition on evidence, and iterate.
struct MapRun {
    spec: ContractionSpec,
    source: RateSource,
    verification: ContractionReport,
    cert: FixedPointCertificate,
}

fn run_map(
    file: &InstanceFile,
    m: &LoadedMap,
    eff: &Effective,
) -> CliResult<Result<MapRun, CmdOutcome>> {
    let pairs = evidence_pairs(m.space.dimension(), eff.eval_box, eff.seed)?;
    let (spec, source) = match resolve_spec(file, map_kind(file)?, &m.space, &m.map, &pairs)? {
        Ok(x) => x,
        Err(outcome) => return Ok(Err(outcome)),
    };
    let verification = verify_condition(&m.space, &m.map, &spec, &pairs)?;
    if !verification.holds {
        let v = verification
            .first_violation
            .as_ref()
            .expect("violating report");
        return Ok(Err(CmdOutcome {
            verdict: Verdict::NotApplicable,
            summary: vec![
                rate_summary(&spec, &source),
                format!(
                    "condition violated at a pair: lhs {} > rhs {}",
                    sci(v.lhs),
                    sci(v.rhs)
                ),
            ],
            details: json!({ "verification": val(&verification)? }),
        }));
    }
    let cert = solve_fixed_point(&m.space, &m.map, &spec, &m.start, &eff.cfg)?;
    Ok(Ok(MapRun {
        spec,
        source,
        verification,
        cert,
    }))
}

/// Shared by solve/certify on FUNCEQ instances.
enum FuncEqRun {
    Early(CmdOutcome),
    Done {
        cert: StabilityCertificate,
        theorem: StabilityTheorem,
        summary: Vec<String>,
    },
}

fn run_funceq(file: &InstanceFile, f: &LoadedFuncEq, eff: &Effective) -> CliResult<FuncEqRun> {
    let theorem = f.theorem.unwrap_or(StabilityTheorem::BanachOrbit);
    let mut summary = vec![format!(
        "theorem {theorem}{}",
        if f.theorem.is_none() {
            " (defaulted)"
        } else {
            ""
        }
    )];
    let (lifted, map, pairs) = lifted_evidence(&f.base, &f.instance, &f.start, eff)?;
    let (spec, source) = match resolve_spec(file, theorem.kind(), &lifted, &map, &pairs)? {
        Ok(x) => x,
        Err(mut outcome) => {
            summary.append(&mut outcome.summary);
            outcome.summary = summary;
            return Ok(FuncEqRun::Early(outcome));
        }
    };
    summary.push(rate_summary(&spec, &source));
    let verification = verify_condition(&lifted, &map, &spec, &pairs)?;
    if !verification.holds {
        let v = verification
            .first_violation
            .as_ref()
            .expect("violating report");
        summary.push(format!(
            "lifted condition violated: lhs {} > rhs {}",
            sci(v.lhs),
            sci(v.rhs)
        ));
        return Ok(FuncEqRun::Early(CmdOutcome {
            verdict: Verdict::NotApplicable,
            summary,
            details: json!({ "verification": val(&verification)? }),
        }));
    }
    let cert = solve_stability(
        &f.base,
        &f.instance,
        &f.start,
        theorem,
        spec.lambda(),
        &eff.cfg,
    )?;
    Ok(FuncEqRun::Done {
        cert,
        theorem,
        summary,
    })
}

fn baker_summary(cert: &BakerCertificate) -> Vec<String> {
    vec![
        format!(
            "linear recursive equation, λ_max = {}; {} in {} iterations",
            sci(cert.lambda_max),
            if cert.converged {
                "converged"
            } else {
                "did NOT converge"
            },
            cert.iterations
        ),
        format!(
            "series cross-check: {} terms, tail bound {}, iteration/series gap {}",
            cert.series.terms,
            sci(cert.series.tail_bound),
            sci(cert.picard_series_gap)
        ),
        format!(
            "defect δ = {}, bound δ/(1-λ) = {}, sup distance {} — bound {}",
            sci(cert.delta),
            sci(cert.theoretical_bound),
            sci(cert.sup_distance),
            if cert.bound_satisfied {
                "satisfied"
            } else {
                "VIOLATED"
            }
        ),
    ]
}

pub fn solve(file: &InstanceFile, eff: &Effective) -> CliResult<CmdOutcome> {
    match file.build()? {
        Loaded::Map(m) => {
            let run = match run_map(file, &m, eff)? {
                Ok(run) => run,
                Err(outcome) => return Ok(outcome),
            };
            let cert = &run.cert;
            let mut summary = vec![
                rate_summary(&run.spec, &run.source),
                format!(
                    "{} in {} iterations; residual {}; fixed point {}",
                    if cert.converged {
                        "converged"
                    } else {
                        "did NOT converge"
                    },
                    cert.iterations,
                    sci(cert.residual),
                    cert.fixed_point
                ),
            ];
            let mut brute = None;
            if cert.converged && m.space.dimension() == 1 {
                let [lo, hi] = eff.eval_box;
                let bf = brute_force_fixed_point(&m.space, &m.map, lo, hi, 10_001)?;
                let gap = (cert.fixed_point.coords()[0] - bf.point.coords()[0]).abs();
                if gap > bf.spacing + 1e-9 {
                    return Err(CliError::Core(fixpoint_core::Error::Inconsistency(
                        format!(
                            "iterative fixed point {} and grid scan {} differ by {gap:.3e}, \
                             more than one grid spacing {:.3e}",
                            cert.fixed_point, bf.point, bf.spacing
                        ),
                    )));
                }
                summary.push(format!(
                    "grid scan over [{lo}, {hi}] agrees: gap {} <= spacing {}",
                    sci(gap),
                    sci(bf.spacing)
                ));
                brute = Some((bf, gap));
            }
            let verdict = if cert.converged {
                Verdict::Pass
            } else {
                Verdict::NonConverged
            };
            Ok(CmdOutcome {
                verdict,
                details: json!({
                    "certificate": val(cert)?,
                    "verification": val(&run.verification)?,
                    "brute_force": brute.as_ref().map(|(bf, _)| val(bf)).transpose()?,
                    "brute_gap": brute.as_ref().map(|(_, g)| *g),
                }),
                summary,
            })
        }
        Loaded::FuncEq(f) => {
            let (cert, mut summary) = match run_funceq(file, &f, eff)? {
                FuncEqRun::Early(outcome) => return Ok(outcome),
                FuncEqRun::Done { cert, summary, .. } => (cert, summary),
            };
            summary.push(format!(
                "{} in {} iterations; residual {}; defect δ = {}; sup distance {}",
                if cert.converged {
                    "converged"
                } else {
                    "did NOT converge"
                },
                cert.iterations,
                sci(cert.residual),
                sci(cert.delta),
                sci(cert.sup_distance),
            ));
            let verdict = if cert.converged {
                Verdict::Pass
            } else {
                Verdict::NonConverged
            };
            Ok(CmdOutcome {
                verdict,
                details: json!({ "certificate": val(&cert)? }),
                summary,
            })
        }
        Loaded::Baker(b) => {
            let cert = solve_baker(&b.instance, Some(&b.start), &eff.cfg)?;
            let verdict = if cert.converged {
                Verdict::Pass
            } else {
                Verdict::NonConverged
            };
            Ok(CmdOutcome {
                verdict,
                summary: baker_summary(&cert),
                details: json!({ "certificate": val(&cert)? }),
            })
        }
    }
}

pub fn certify(file: &InstanceFile, eff: &Effective) -> CliResult<CmdOutcome> {
    match file.build()? {
        Loaded::Map(m) => {
            let run = match run_map(file, &m, eff)? {
                Ok(run) => run,
                Err(outcome) => return Ok(outcome),
            };
            let cert = &run.cert;
            let mut summary = vec![rate_summary(&run.spec, &run.source)];
            let verdict = if !cert.converged {
                summary.push(format!(
                    "did NOT converge within {} iterations",
                    cert.iterations
                ));
                Verdict::NonConverged
            } else if cert.orbit_triangle == TriangleCheck::Fails {
                summary.push(
                    "triangle inequality failed along the orbit; the distance bound \
                     cannot be asserted"
                        .into(),
                );
                if let Some(w) = &cert.triangle_witness {
                    summary.push(format!(
                        "witness: d(a,c) = {} > {} = d(a,b) + d(b,c)",
                        sci(w.direct),
                        sci(w.via)
                    ));
                }
                Verdict::NotApplicable
            } else if !cert.bound_satisfied {
                summary.push(format!(
                    "bound VIOLATED: observed {} > bound {}",
                    sci(cert.observed),
                    sci(cert.bound)
                ));
                Verdict::Fail
            } else {
                summary.push(format!(
                    "δ = {}, bound = {}, observed distance to limit = {} — bound satisfied",
                    sci(cert.delta),
                    sci(cert.bound),
                    sci(cert.observed)
                ));
                Verdict::Pass
            };
            Ok(CmdOutcome {
                verdict,
                details: json!({
                    "certificate": val(cert)?,
                    "verification": val(&run.verification)?,
                }),
                summary,
            })
        }
        Loaded::FuncEq(f) => {
            let (cert, theorem, mut summary) = match run_funceq(file, &f, eff)? {
                FuncEqRun::Early(outcome) => return Ok(outcome),
                FuncEqRun::Done {
                    cert,
                    theorem,
                    summary,
                } => (cert, theorem, summary),
            };
            let verdict = if !cert.converged {
                summary.push(format!(
                    "did NOT converge within {} iterations",
                    cert.iterations
                ));
                Verdict::NonConverged
            } else if !theorem.asserts_bound() {
                // Existence/uniqueness certificate: probe uniqueness by
                // solving again from a perturbed start.
                let start2 = perturb_solution(&f.start, 1.0, eff.seed ^ 0x9e37_79b9)?;
                let cert2 = solve_stability(
                    &f.base,
                    &f.instance,
                    &start2,
                    theorem,
                    cert.lambda,
                    &eff.cfg,
                )?;
                let gap = table_distance(&f.base, &cert.solution, &cert2.solution)?;
                let agree = cert2.converged && gap <= 100.0 * eff.cfg.tol;
                summary.push(format!(
                    "existence/uniqueness probe: a second start lands within {} ({})",
                    sci(gap),
                    if agree { "same solution" } else { "DISAGREES" }
                ));
                if let Some(reason) = &cert.reason {
                    summary.push(reason.clone());
                }
                if agree {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                }
            } else {
                match (cert.theoretical_bound, cert.bound_satisfied) {
                    (Some(bound), Some(true)) => {
                        summary.push(format!(
                            "δ = {}, bound = {}, sup distance = {} — bound satisfied",
                            sci(cert.delta),
                            sci(bound),
                            sci(cert.sup_distance)
                        ));
                        Verdict::Pass
                    }
                    (Some(bound), _) => {
                        summary.push(format!(
                            "bound VIOLATED: sup distance {} > bound {}",
                            sci(cert.sup_distance),
                            sci(bound)
                        ));
                        Verdict::Fail
                    }
                    (None, _) => {
                        if let Some(reason) = &cert.reason {
                            summary.push(reason.clone());
                        }
                        Verdict::NotApplicable
                    }
                }
            };
            Ok(CmdOutcome {
                verdict,
                details: json!({ "certificate": val(&cert)? }),
                summary,
            })
        }
        Loaded::Baker(b) => {
            let cert = solve_baker(&b.instance, Some(&b.start), &eff.cfg)?;
            let verdict = if !cert.converged {
                Verdict::NonConverged
            } else if !cert.bound_satisfied {
                Verdict::Fail
            } else {
                Verdict::Pass
            };
            Ok(CmdOutcome {
                verdict,
                summary: baker_summary(&cert),
                details: json!({ "certificate": val(&cert)? }),
            })
        }
    }
}
