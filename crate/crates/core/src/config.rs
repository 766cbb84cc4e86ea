//! Experiment configuration: JSON ingestion and validation.
//!
//! Validation walks the whole document and reports every problem it finds,
//! each prefixed with the path of the offending field (`family[2]`,
//! `solver.sweep_tol`, …).

use std::fmt;
use std::path::PathBuf;

use serde_json::{Map, Value};

use crate::geometry::{vector, ConvexSet, Family, SetDescriptor, Vector};
use crate::impossibility::{CandidateFunctional, SmoothCandidate, SpiralSpec};
use crate::product::{ParallelVariant, ProductPoint, SmoothObjective};
use crate::solver::{LambdaSchedule, SolverConfig};

pub const DEFAULT_SPHERE_SAMPLES: usize = 16;

const KNOWN_FIELDS: &[&str] = &[
    "kind",
    "family",
    "start",
    "solver",
    "output",
    "seed",
    "objective",
    "target",
    "variant",
    "x",
    "y",
    "n",
    "candidate",
    "m",
    "z",
    "rho",
    "sphere_samples",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    Periodic,
    PairDistance,
    Theorem31,
    Parallel,
    Spiral,
    Falsify,
    Gap,
}

impl ExperimentKind {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "periodic" => Self::Periodic,
            "pair_distance" => Self::PairDistance,
            "theorem31" => Self::Theorem31,
            "parallel" => Self::Parallel,
            "spiral" => Self::Spiral,
            "falsify" => Self::Falsify,
            "gap" => Self::Gap,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Periodic => "periodic",
            Self::PairDistance => "pair_distance",
            Self::Theorem31 => "theorem31",
            Self::Parallel => "parallel",
            Self::Spiral => "spiral",
            Self::Falsify => "falsify",
            Self::Gap => "gap",
        }
    }

    /// Default artifact names `(csv, json)`.
    pub fn default_outputs(self) -> (Option<&'static str>, &'static str) {
        match self {
            Self::Periodic => (Some("trajectory.csv"), "cycle.json"),
            Self::PairDistance => (Some("trajectory.csv"), "pair.json"),
            Self::Theorem31 | Self::Parallel => (Some("iterations.csv"), "solution.json"),
            Self::Spiral => (Some("spiral.csv"), "spiral.json"),
            Self::Falsify => (None, "report.json"),
            Self::Gap => (None, "gap.json"),
        }
    }
}

/// A validated experiment.
#[derive(Debug, Clone)]
pub enum Experiment {
    Periodic {
        family: Family,
        start: Vector,
    },
    PairDistance {
        family: Family,
        start: Vector,
    },
    Theorem31 {
        family: Family,
        objective: SmoothObjective,
        start: ProductPoint,
    },
    Parallel {
        family: Family,
        variant: ParallelVariant,
        start: ProductPoint,
    },
    Spiral {
        spec: SpiralSpec,
    },
    Falsify {
        candidate: CandidateFunctional,
        m: usize,
        z: Vector,
        rho: f64,
        sphere_samples: usize,
    },
    Gap {
        family: Family,
        candidate: SmoothCandidate,
        start: Vector,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputPaths {
    pub dir: PathBuf,
    pub csv: Option<String>,
    pub json: String,
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub experiment: Experiment,
    pub solver: SolverConfig,
    pub output: OutputPaths,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConfigError {
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    Invalid(Vec<String>),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Parse {
                line,
                column,
                message,
            } => write!(f, "parse error at line {line}, column {column}: {message}"),
            ConfigError::Invalid(errors) => {
                write!(f, "invalid config:")?;
                for e in errors {
                    write!(f, "\n  - {e}")?;
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for ConfigError {}

impl ConfigError {
    pub fn messages(&self) -> Vec<String> {
        match self {
            ConfigError::Parse { .. } => vec![self.to_string()],
            ConfigError::Invalid(v) => v.clone(),
        }
    }
}

/// Parses and validates a JSON experiment description.
pub fn validate_config(raw: &str) -> Result<ExperimentConfig, ConfigError> {
    let value: Value = serde_json::from_str(raw).map_err(|e| ConfigError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut v = Validator::default();
    let config = v.config(&value);
    match config {
        Some(c) if v.errors.is_empty() => Ok(c),
        _ => Err(ConfigError::Invalid(v.errors)),
    }
}

#[derive(Default)]
struct Validator {
    errors: Vec<String>,
}

impl Validator {
    fn err(&mut self, msg: impl Into<String>) {
        self.errors.push(msg.into());
    }

    fn config(&mut self, value: &Value) -> Option<ExperimentConfig> {
        let Some(obj) = value.as_object() else {
            self.err("config must be a JSON object");
            return None;
        };
        for key in obj.keys() {
            if !KNOWN_FIELDS.contains(&key.as_str()) {
                self.err(format!("unknown field `{key}`"));
            }
        }

        let kind = match obj.get("kind") {
            None => {
                self.err("kind is required");
                None
            }
            Some(Value::String(s)) => {
                let k = ExperimentKind::parse(s);
                if k.is_none() {
                    self.err(format!(
                        "kind `{s}` is not one of periodic, pair_distance, theorem31, parallel, spiral, falsify, gap"
                    ));
                }
                k
            }
            Some(_) => {
                self.err("kind must be a string");
                None
            }
        };

        let solver = self.solver(obj.get("solver"));
        let seed = match obj.get("seed") {
            None => 0,
            Some(s) => s.as_u64().unwrap_or_else(|| {
                self.err("seed must be a non-negative integer");
                0
            }),
        };
        let kind = kind?;
        let output = self.output(obj.get("output"), kind);
        let experiment = self.experiment(kind, obj);
        Some(ExperimentConfig {
            kind,
            experiment: experiment?,
            solver,
            output: output?,
            seed,
        })
    }

    fn solver(&mut self, value: Option<&Value>) -> SolverConfig {
        let mut cfg = SolverConfig::default();
        let Some(value) = value else {
            return cfg;
        };
        let Some(obj) = value.as_object() else {
            self.err("solver must be an object");
            return cfg;
        };
        for (key, v) in obj {
            let path = format!("solver.{key}");
            match key.as_str() {
                "gamma" => cfg.gamma = self.positive(v, &path),
                "lambda" => {
                    if let Some(l) = self.positive(v, &path) {
                        cfg.lambda = LambdaSchedule::Constant(l);
                    }
                }
                "sweep_tol" => cfg.sweep_tol = self.positive(v, &path).unwrap_or(cfg.sweep_tol),
                "cycle_tol" => cfg.cycle_tol = self.positive(v, &path).unwrap_or(cfg.cycle_tol),
                "fixpoint_tol" => {
                    cfg.fixpoint_tol = self.positive(v, &path).unwrap_or(cfg.fixpoint_tol)
                }
                "max_sweeps" => cfg.max_sweeps = self.count(v, &path).unwrap_or(cfg.max_sweeps),
                "max_iters" => cfg.max_iters = self.count(v, &path).unwrap_or(cfg.max_iters),
                _ => self.err(format!("unknown field `{path}`")),
            }
        }
        cfg
    }

    fn output(&mut self, value: Option<&Value>, kind: ExperimentKind) -> Option<OutputPaths> {
        let (csv, json) = kind.default_outputs();
        let mut out = OutputPaths {
            dir: PathBuf::from("."),
            csv: csv.map(str::to_owned),
            json: json.to_owned(),
        };
        let Some(value) = value else {
            return Some(out);
        };
        let Some(obj) = value.as_object() else {
            self.err("output must be an object");
            return None;
        };
        for (key, v) in obj {
            let path = format!("output.{key}");
            let Some(s) = v.as_str() else {
                self.err(format!("{path} must be a string"));
                continue;
            };
            match key.as_str() {
                "dir" => out.dir = PathBuf::from(s),
                "csv" if out.csv.is_some() => out.csv = Some(s.to_owned()),
                "json" => out.json = s.to_owned(),
                _ => self.err(format!("{path} is not an output of kind {}", kind.as_str())),
            }
        }
        Some(out)
    }

    fn experiment(&mut self, kind: ExperimentKind, obj: &Map<String, Value>) -> Option<Experiment> {
        match kind {
            ExperimentKind::Periodic | ExperimentKind::PairDistance | ExperimentKind::Gap => {
                let family = self.family(obj.get("family"));
                let start = family
                    .as_ref()
                    .and_then(|f| self.point_start(obj.get("start"), f.dim()));
                if kind == ExperimentKind::PairDistance {
                    if let Some(f) = &family {
                        if f.len() != 2 {
                            self.err(format!(
                                "family must have exactly 2 sets for pair_distance, got {}",
                                f.len()
                            ));
                        }
                    }
                }
                let candidate = if kind == ExperimentKind::Gap {
                    self.smooth_candidate(obj.get("candidate"))
                } else {
                    None
                };
                let (family, start) = (family?, start?);
                Some(match kind {
                    ExperimentKind::Periodic => Experiment::Periodic { family, start },
                    ExperimentKind::PairDistance => Experiment::PairDistance { family, start },
                    _ => Experiment::Gap {
                        family,
                        candidate: candidate?,
                        start,
                    },
                })
            }
            ExperimentKind::Theorem31 | ExperimentKind::Parallel => {
                let family = self.family(obj.get("family"));
                let start = family
                    .as_ref()
                    .and_then(|f| self.product_start(obj.get("start"), f.len(), f.dim()));
                if kind == ExperimentKind::Theorem31 {
                    let objective = family.as_ref().and_then(|f| self.objective(obj, f));
                    Some(Experiment::Theorem31 {
                        family: family?,
                        objective: objective?,
                        start: start?,
                    })
                } else {
                    let variant = match obj.get("variant") {
                        None => Some(ParallelVariant::OthersMean),
                        Some(v) => match serde_json::from_value::<ParallelVariant>(v.clone()) {
                            Ok(p) => Some(p),
                            Err(_) => {
                                self.err("variant must be `others_mean` or `full_mean`");
                                None
                            }
                        },
                    };
                    if let (Some(f), Some(ParallelVariant::OthersMean)) = (&family, variant) {
                        if f.len() < 3 {
                            self.err(format!(
                                "family must have at least 3 sets for others_mean, got {}",
                                f.len()
                            ));
                        }
                    }
                    Some(Experiment::Parallel {
                        family: family?,
                        variant: variant?,
                        start: start?,
                    })
                }
            }
            ExperimentKind::Spiral => {
                let x = self.required_vector(obj.get("x"), "x");
                let y = self.required_vector(obj.get("y"), "y");
                let n = match obj.get("n") {
                    None => {
                        self.err("n is required");
                        None
                    }
                    Some(v) => self.count(v, "n"),
                };
                let (x, y, n) = (x?, y?, n?);
                match SpiralSpec::new(x, y, n) {
                    Ok(spec) => Some(Experiment::Spiral { spec }),
                    Err(e) => {
                        self.err(format!("spiral: {e}"));
                        None
                    }
                }
            }
            ExperimentKind::Falsify => {
                let candidate = match obj.get("candidate").and_then(Value::as_str) {
                    None => {
                        self.err(
                            "candidate is required (perimeter, cyclic2, pairwise2, constant, norm)",
                        );
                        None
                    }
                    Some(name) => {
                        let c = CandidateFunctional::builtin(name);
                        if c.is_none() {
                            self.err(format!(
                                "candidate `{name}` is not one of perimeter, cyclic2, pairwise2, constant, norm"
                            ));
                        }
                        c
                    }
                };
                let m = match obj.get("m") {
                    None => Some(3),
                    Some(v) => self.count(v, "m"),
                };
                if matches!(m, Some(m) if m < 3) {
                    self.err("m must be ≥ 3");
                }
                let z = match obj.get("z") {
                    None => Some(vector(&[1.0, 0.0])),
                    Some(v) => self.vector(v, "z"),
                };
                if let Some(z) = &z {
                    let norm = z.norm();
                    if (norm - 1.0).abs() > 1e-12 {
                        self.err(format!("z must have unit norm (got {norm})"));
                    }
                }
                let rho = match obj.get("rho") {
                    None => {
                        self.err("rho is required");
                        None
                    }
                    Some(v) => match v.as_f64() {
                        Some(r) if r > 1.0 => Some(r),
                        Some(_) => {
                            self.err("rho must exceed 1");
                            None
                        }
                        None => {
                            self.err("rho must be a number");
                            None
                        }
                    },
                };
                let sphere_samples = match obj.get("sphere_samples") {
                    None => Some(DEFAULT_SPHERE_SAMPLES),
                    Some(v) => self.count(v, "sphere_samples"),
                };
                if matches!(sphere_samples, Some(s) if s < 2) {
                    self.err("sphere_samples must be ≥ 2");
                }
                Some(Experiment::Falsify {
                    candidate: candidate?,
                    m: m?,
                    z: z?,
                    rho: rho?,
                    sphere_samples: sphere_samples?,
                })
            }
        }
    }

    fn family(&mut self, value: Option<&Value>) -> Option<Family> {
        let Some(value) = value else {
            self.err("family is required");
            return None;
        };
        let Some(items) = value.as_array() else {
            self.err("family must be an array of set descriptors");
            return None;
        };
        if items.len() < 2 {
            self.err(format!(
                "family must have at least 2 sets, got {}",
                items.len()
            ));
        }
        let mut sets = Vec::new();
        let mut ok = true;
        let mut dim0 = None;
        for (i, item) in items.iter().enumerate() {
            let desc = match serde_json::from_value::<SetDescriptor>(item.clone()) {
                Ok(d) => d,
                Err(e) => {
                    self.err(format!("family[{i}]: {e}"));
                    ok = false;
                    continue;
                }
            };
            match ConvexSet::try_from(desc) {
                Ok(set) => {
                    match dim0 {
                        None => dim0 = Some(set.dim()),
                        Some(d) if d != set.dim() => {
                            self.err(format!(
                                "family[{i}]: dimension {} does not match family[0] dimension {d}",
                                set.dim()
                            ));
                            ok = false;
                        }
                        _ => {}
                    }
                    sets.push(set);
                }
                Err(e @ crate::Error::InvalidSet { .. }) => {
                    self.err(format!("family[{i}].{e}"));
                    ok = false;
                }
                Err(e) => {
                    self.err(format!("family[{i}]: {e}"));
                    ok = false;
                }
            }
        }
        if !ok || items.len() < 2 {
            return None;
        }
        Family::new(sets).ok()
    }

    fn point_start(&mut self, value: Option<&Value>, dim: usize) -> Option<Vector> {
        let Some(value) = value else {
            return Some(Vector::zeros(dim));
        };
        let x = self.vector(value, "start")?;
        if x.len() != dim {
            self.err(format!(
                "start: dimension {} does not match family dimension {dim}",
                x.len()
            ));
            return None;
        }
        Some(x)
    }

    fn product_start(
        &mut self,
        value: Option<&Value>,
        m: usize,
        dim: usize,
    ) -> Option<ProductPoint> {
        let Some(value) = value else {
            return Some(ProductPoint::diagonal(&Vector::zeros(dim), m));
        };
        let nested = value
            .as_array()
            .is_some_and(|a| a.first().is_some_and(Value::is_array));
        if !nested {
            return self
                .point_start(Some(value), dim)
                .map(|x| ProductPoint::diagonal(&x, m));
        }
        let blocks = self.blocks(value, "start", m, dim)?;
        ProductPoint::new(blocks).ok()
    }

    fn blocks(&mut self, value: &Value, path: &str, m: usize, dim: usize) -> Option<Vec<Vector>> {
        let Some(items) = value.as_array() else {
            self.err(format!("{path} must be an array of points"));
            return None;
        };
        if items.len() != m {
            self.err(format!("{path} must have {m} blocks, got {}", items.len()));
            return None;
        }
        let mut blocks = Vec::with_capacity(m);
        for (i, item) in items.iter().enumerate() {
            let p = format!("{path}[{i}]");
            let b = self.vector(item, &p)?;
            if b.len() != dim {
                self.err(format!(
                    "{p}: dimension {} does not match family dimension {dim}",
                    b.len()
                ));
                return None;
            }
            blocks.push(b);
        }
        Some(blocks)
    }

    fn objective(&mut self, obj: &Map<String, Value>, family: &Family) -> Option<SmoothObjective> {
        let m = family.len();
        let name = match obj.get("objective") {
            None => "pairwise_squared",
            Some(Value::String(s)) => s.as_str(),
            Some(_) => {
                self.err("objective must be a string");
                return None;
            }
        };
        match name {
            "pairwise_squared" => SmoothObjective::pairwise_squared(m).ok(),
            "cyclic_squared" => SmoothObjective::cyclic_squared(m).ok(),
            "quadratic_to_target" => {
                let Some(t) = obj.get("target") else {
                    self.err("target is required for objective quadratic_to_target");
                    return None;
                };
                let blocks = self.blocks(t, "target", m, family.dim())?;
                SmoothObjective::quadratic_to_target(ProductPoint::new(blocks).ok()?).ok()
            }
            other => {
                self.err(format!(
                    "objective `{other}` is not one of pairwise_squared, cyclic_squared, quadratic_to_target"
                ));
                None
            }
        }
    }

    fn smooth_candidate(&mut self, value: Option<&Value>) -> Option<SmoothCandidate> {
        match value.and_then(Value::as_str) {
            None => Some(SmoothCandidate::CyclicSquared),
            Some("cyclic_squared" | "cyclic2") => Some(SmoothCandidate::CyclicSquared),
            Some("pairwise_squared" | "pairwise2") => Some(SmoothCandidate::PairwiseSquared),
            Some(other) => {
                self.err(format!(
                    "candidate `{other}` is not one of cyclic_squared, pairwise_squared"
                ));
                None
            }
        }
    }

    fn required_vector(&mut self, value: Option<&Value>, path: &str) -> Option<Vector> {
        match value {
            None => {
                self.err(format!("{path} is required"));
                None
            }
            Some(v) => self.vector(v, path),
        }
    }

    fn vector(&mut self, value: &Value, path: &str) -> Option<Vector> {
        let coords: Option<Vec<f64>> = value
            .as_array()
            .and_then(|a| a.iter().map(Value::as_f64).collect());
        match coords {
            Some(c) if !c.is_empty() => Some(vector(&c)),
            _ => {
                self.err(format!("{path} must be a nonempty array of numbers"));
                None
            }
        }
    }

    fn positive(&mut self, value: &Value, path: &str) -> Option<f64> {
        match value.as_f64() {
            Some(x) if x > 0.0 && x.is_finite() => Some(x),
            _ => {
                self.err(format!("{path} must be a positive number"));
                None
            }
        }
    }

    fn count(&mut self, value: &Value, path: &str) -> Option<usize> {
        match value.as_u64() {
            Some(n) if n >= 1 => Some(n as usize),
            _ => {
                self.err(format!("{path} must be a positive integer"));
                None
            }
        }
    }
}
