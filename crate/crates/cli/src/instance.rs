//! Instance-file schema (JSON, `schema_version` 1) and its conversion
//! into core types. Unknown fields anywhere in the file are rejected, so
//! typos surface as parse errors with a line and column instead of being
//! silently ignored.

use std::path::Path;

use serde::Deserialize;

use fixpoint_core::{
    BakerInstance, FuncEqInstance, FunctionTable, GFamily, IterationConfig, MapUnderTest,
    MetricSpace, Norm, Point, StabilityTheorem,
};

use crate::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;
/// Evaluation box used for evidence sampling and brute-force scans when
/// the instance does not pin one.
pub const DEFAULT_BOX: [f64; 2] = [-2.0, 2.0];

fn default_max_iters() -> usize {
    10_000
}
fn default_tol() -> f64 {
    1e-10
}
fn default_window() -> usize {
    8
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigSpec {
    #[serde(default = "default_max_iters")]
    pub max_iters: usize,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_window")]
    pub window: usize,
    #[serde(default)]
    pub seed: u64,
}

impl Default for ConfigSpec {
    fn default() -> Self {
        ConfigSpec {
            max_iters: default_max_iters(),
            tol: default_tol(),
            window: default_window(),
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum KindSpec {
    #[serde(rename = "MAP")]
    Map,
    #[serde(rename = "FUNCEQ")]
    FuncEq,
    #[serde(rename = "BAKER")]
    Baker,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub name: String,
    #[serde(default)]
    pub scale: Option<f64>,
    #[serde(default)]
    pub offset: Option<Vec<f64>>,
    #[serde(default)]
    pub amplitude: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GSpec {
    pub family: String,
    #[serde(default)]
    pub scales: Option<Vec<f64>>,
    #[serde(default)]
    pub amplitudes: Option<Vec<f64>>,
    #[serde(default)]
    pub offsets: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FuncEqSpec {
    pub domain_size: usize,
    pub psi: Vec<usize>,
    pub g: GSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum NormSpec {
    Name(String),
    Weighted { weighted_sum: Vec<f64> },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BakerSpec {
    pub psi: Vec<usize>,
    pub a: Vec<f64>,
    pub b: Vec<Vec<f64>>,
    pub norm: NormSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum StartSpec {
    Point(Vec<f64>),
    Table(Vec<Vec<f64>>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub schema_version: u32,
    pub kind: KindSpec,
    #[serde(default)]
    pub metric: Option<String>,
    pub dimension: usize,
    #[serde(default)]
    pub map: Option<MapSpec>,
    #[serde(default)]
    pub funceq: Option<FuncEqSpec>,
    #[serde(default)]
    pub baker: Option<BakerSpec>,
    pub start: StartSpec,
    #[serde(default)]
    pub config: ConfigSpec,
    #[serde(default)]
    pub theorem: Option<String>,
    #[serde(default)]
    pub lambda: Option<f64>,
    #[serde(default)]
    pub ciric: Option<[f64; 5]>,
    #[serde(default, rename = "box")]
    pub eval_box: Option<[f64; 2]>,
}

/// Settings after applying command-line overrides: flags beat the file,
/// the file beats the defaults.
#[derive(Debug, Clone, Copy)]
pub struct Effective {
    pub cfg: IterationConfig,
    pub seed: u64,
    pub eval_box: [f64; 2],
    /// Tolerance for distance-axiom probes (`check-metric`); defaults
    /// to 1e-9 and is overridden only by the `--tol` flag.
    pub axiom_tol: f64,
}

impl InstanceFile {
    pub fn effective(&self, cli_seed: Option<u64>, cli_tol: Option<f64>) -> Effective {
        Effective {
            cfg: IterationConfig {
                max_iters: self.config.max_iters,
                tol: cli_tol.unwrap_or(self.config.tol),
                window: self.config.window,
            },
            seed: cli_seed.unwrap_or(self.config.seed),
            eval_box: self.eval_box.unwrap_or(DEFAULT_BOX),
            axiom_tol: cli_tol.unwrap_or(1e-9),
        }
    }
}

/// The instance converted into core types, ready for a command.
pub enum Loaded {
    Map(LoadedMap),
    FuncEq(LoadedFuncEq),
    Baker(LoadedBaker),
}

pub struct LoadedMap {
    pub space: MetricSpace,
    pub map: MapUnderTest,
    pub start: Point,
}

pub struct LoadedFuncEq {
    pub base: MetricSpace,
    pub instance: FuncEqInstance,
    pub start: FunctionTable,
    pub theorem: Option<StabilityTheorem>,
}

pub struct LoadedBaker {
    pub instance: BakerInstance,
    pub start: FunctionTable,
}

pub fn load_file(path: &Path) -> CliResult<InstanceFile> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let file: InstanceFile = serde_json::from_str(&text).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })?;
    if file.schema_version != SCHEMA_VERSION {
        return Err(CliError::Input(format!(
            "unsupported schema_version {}; this tool reads version {SCHEMA_VERSION}",
            file.schema_version
        )));
    }
    validate_shape(&file)?;
    Ok(file)
}

fn validate_shape(file: &InstanceFile) -> CliResult<()> {
    if file.dimension == 0 {
        return Err(CliError::Input("dimension must be >= 1".into()));
    }
    if let Some([lo, hi]) = file.eval_box {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(CliError::Input(format!(
                "box [{lo}, {hi}] must satisfy lo < hi"
            )));
        }
    }
    let need = |cond: bool, msg: &str| -> CliResult<()> {
        if cond {
            Ok(())
        } else {
            Err(CliError::Input(msg.into()))
        }
    };
    match file.kind {
        KindSpec::Map => {
            need(file.map.is_some(), "kind MAP requires a `map` payload")?;
            need(
                file.funceq.is_none() && file.baker.is_none(),
                "kind MAP admits only the `map` payload",
            )?;
            need(file.metric.is_some(), "kind MAP requires a `metric` name")?;
        }
        KindSpec::FuncEq => {
            need(
                file.funceq.is_some(),
                "kind FUNCEQ requires a `funceq` payload",
            )?;
            need(
                file.map.is_none() && file.baker.is_none(),
                "kind FUNCEQ admits only the `funceq` payload",
            )?;
            need(
                file.metric.is_some(),
                "kind FUNCEQ requires a `metric` name",
            )?;
        }
        KindSpec::Baker => {
            need(
                file.baker.is_some(),
                "kind BAKER requires a `baker` payload",
            )?;
            need(
                file.map.is_none() && file.funceq.is_none(),
                "kind BAKER admits only the `baker` payload",
            )?;
            need(
                file.metric.is_none(),
                "kind BAKER determines its distance from `baker.norm`; remove `metric`",
            )?;
        }
    }
    Ok(())
}

fn build_map(spec: &MapSpec, dimension: usize) -> CliResult<MapUnderTest> {
    let reject = |field: &str, name: &str| -> CliError {
        CliError::Input(format!("map {name:?} does not take `{field}`"))
    };
    match spec.name.as_str() {
        "affine" => {
            if spec.amplitude.is_some() {
                return Err(reject("amplitude", "affine"));
            }
            let scale = spec
                .scale
                .ok_or_else(|| CliError::Input("map \"affine\" requires `scale`".into()))?;
            if !scale.is_finite() {
                return Err(CliError::Input("`scale` must be finite".into()));
            }
            let offset = match &spec.offset {
                Some(o) => {
                    if o.len() != dimension {
                        return Err(CliError::Input(format!(
                            "`offset` must have {dimension} entries, got {}",
                            o.len()
                        )));
                    }
                    o.clone()
                }
                None => vec![0.0; dimension],
            };
            Ok(MapUnderTest::from_fn("affine", dimension, move |c| {
                c.iter().zip(&offset).map(|(x, b)| scale * x + b).collect()
            }))
        }
        "cosine" => {
            if spec.scale.is_some() || spec.offset.is_some() {
                return Err(reject("scale/offset", "cosine"));
            }
            let amplitude = spec
                .amplitude
                .ok_or_else(|| CliError::Input("map \"cosine\" requires `amplitude`".into()))?;
            if !amplitude.is_finite() {
                return Err(CliError::Input("`amplitude` must be finite".into()));
            }
            Ok(MapUnderTest::from_fn("cosine", dimension, move |c| {
                c.iter().map(|x| amplitude * x.cos()).collect()
            }))
        }
        "identity" => {
            if spec.scale.is_some() || spec.offset.is_some() || spec.amplitude.is_some() {
                return Err(reject("scale/offset/amplitude", "identity"));
            }
            Ok(MapUnderTest::from_fn("identity", dimension, |c| c.to_vec()))
        }
        other => Err(CliError::Input(format!(
            "unknown map {other:?}; expected one of affine, cosine, identity"
        ))),
    }
}

fn build_g(spec: &GSpec, n: usize, d: usize) -> CliResult<GFamily> {
    let offsets_of = |raw: &Option<Vec<Vec<f64>>>| -> CliResult<Vec<Point>> {
        let raw = raw
            .as_ref()
            .ok_or_else(|| CliError::Input("g requires `offsets`".into()))?;
        if raw.len() != n {
            return Err(CliError::Input(format!(
                "`offsets` must have {n} entries, got {}",
                raw.len()
            )));
        }
        raw.iter()
            .map(|o| {
                if o.len() != d {
                    return Err(CliError::Input(format!(
                        "each offset must have {d} entries, got {}",
                        o.len()
                    )));
                }
                Point::new(o.clone()).map_err(CliError::from)
            })
            .collect()
    };
    let per_index = |raw: &Option<Vec<f64>>, field: &str| -> CliResult<Vec<f64>> {
        let raw = raw
            .as_ref()
            .ok_or_else(|| CliError::Input(format!("g family requires `{field}`")))?;
        if raw.len() != n {
            return Err(CliError::Input(format!(
                "`{field}` must have {n} entries, got {}",
                raw.len()
            )));
        }
        Ok(raw.clone())
    };
    match spec.family.as_str() {
        "affine" => {
            if spec.amplitudes.is_some() {
                return Err(CliError::Input(
                    "g family \"affine\" does not take `amplitudes`".into(),
                ));
            }
            Ok(GFamily::Affine {
                scales: per_index(&spec.scales, "scales")?,
                offsets: offsets_of(&spec.offsets)?,
            })
        }
        "cosine" => {
            if spec.scales.is_some() {
                return Err(CliError::Input(
                    "g family \"cosine\" does not take `scales`".into(),
                ));
            }
            Ok(GFamily::ScaledCosine {
                amplitudes: per_index(&spec.amplitudes, "amplitudes")?,
                offsets: offsets_of(&spec.offsets)?,
            })
        }
        other => Err(CliError::Input(format!(
            "unknown g family {other:?}; expected one of affine, cosine"
        ))),
    }
}

fn build_norm(spec: &NormSpec) -> CliResult<Norm> {
    match spec {
        NormSpec::Name(name) => match name.as_str() {
            "euclidean" => Ok(Norm::Euclidean),
            "max" => Ok(Norm::Max),
            other => Err(CliError::Input(format!(
                "unknown norm {other:?}; expected euclidean, max, or {{\"weighted_sum\": [..]}}"
            ))),
        },
        NormSpec::Weighted { weighted_sum } => Ok(Norm::WeightedSum(weighted_sum.clone())),
    }
}

fn start_point(start: &StartSpec, dimension: usize) -> CliResult<Point> {
    match start {
        StartSpec::Point(coords) => {
            if coords.len() != dimension {
                return Err(CliError::Input(format!(
                    "start must have {dimension} coordinates, got {}",
                    coords.len()
                )));
            }
            Point::new(coords.clone()).map_err(CliError::from)
        }
        StartSpec::Table(_) => Err(CliError::Input(
            "kind MAP takes a flat start point, not a table".into(),
        )),
    }
}

fn start_table(start: &StartSpec, n: usize, d: usize) -> CliResult<FunctionTable> {
    match start {
        StartSpec::Table(rows) => {
            if rows.len() != n {
                return Err(CliError::Input(format!(
                    "start table must have {n} rows, got {}",
                    rows.len()
                )));
            }
            let values = rows
                .iter()
                .map(|r| {
                    if r.len() != d {
                        return Err(CliError::Input(format!(
                            "each start row must have {d} entries, got {}",
                            r.len()
                        )));
                    }
                    Point::new(r.clone()).map_err(CliError::from)
                })
                .collect::<CliResult<Vec<_>>>()?;
            FunctionTable::new(values).map_err(CliError::from)
        }
        StartSpec::Point(_) => Err(CliError::Input(
            "this kind takes a start table (one row per domain index), not a flat point".into(),
        )),
    }
}

impl InstanceFile {
    /// Convert into core types, validating cross-field consistency.
    pub fn build(&self) -> CliResult<Loaded> {
        let theorem = self
            .theorem
            .as_deref()
            .map(StabilityTheorem::parse)
            .transpose()?;
        match self.kind {
            KindSpec::Map => {
                let metric = self.metric.as_deref().expect("validated");
                let space = MetricSpace::by_name(metric, self.dimension)?;
                let map = build_map(self.map.as_ref().expect("validated"), self.dimension)?;
                let start = start_point(&self.start, self.dimension)?;
                Ok(Loaded::Map(LoadedMap { space, map, start }))
            }
            KindSpec::FuncEq => {
                let metric = self.metric.as_deref().expect("validated");
                let base = MetricSpace::by_name(metric, self.dimension)?;
                let spec = self.funceq.as_ref().expect("validated");
                if spec.psi.len() != spec.domain_size {
                    return Err(CliError::Input(format!(
                        "`psi` must have {} entries, got {}",
                        spec.domain_size,
                        spec.psi.len()
                    )));
                }
                let g = build_g(&spec.g, spec.domain_size, self.dimension)?;
                let instance =
                    FuncEqInstance::new(spec.domain_size, self.dimension, spec.psi.clone(), g)?;
                let start = start_table(&self.start, spec.domain_size, self.dimension)?;
                if let Some(t) = theorem {
                    if t == StabilityTheorem::Baker {
                        return Err(CliError::Input(
                            "theorem T5-BAKER belongs to kind BAKER instances".into(),
                        ));
                    }
                }
                Ok(Loaded::FuncEq(LoadedFuncEq {
                    base,
                    instance,
                    start,
                    theorem,
                }))
            }
            KindSpec::Baker => {
                let spec = self.baker.as_ref().expect("validated");
                if let Some(t) = theorem {
                    if t != StabilityTheorem::Baker {
                        return Err(CliError::Input(format!(
                            "kind BAKER certifies T5-BAKER, not {t}"
                        )));
                    }
                }
                if self.lambda.is_some() || self.ciric.is_some() {
                    return Err(CliError::Input(
                        "kind BAKER derives its rate from `baker.a`; remove `lambda`/`ciric`"
                            .into(),
                    ));
                }
                let norm = build_norm(&spec.norm)?;
                let b = spec
                    .b
                    .iter()
                    .map(|row| {
                        if row.len() != self.dimension {
                            return Err(CliError::Input(format!(
                                "each `b` entry must have {} coordinates, got {}",
                                self.dimension,
                                row.len()
                            )));
                        }
                        Point::new(row.clone()).map_err(CliError::from)
                    })
                    .collect::<CliResult<Vec<_>>>()?;
                let instance = BakerInstance::new(spec.psi.clone(), spec.a.clone(), b, norm)?;
                let start = start_table(&self.start, instance.domain_size(), instance.point_dim())?;
                Ok(Loaded::Baker(LoadedBaker { instance, start }))
            }
        }
    }
}
