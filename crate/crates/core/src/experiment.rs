//! Dispatch of a validated [`ExperimentConfig`] to the solvers, and artifact
//! emission.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::config::{Experiment, ExperimentConfig};
use crate::impossibility::{falsify_candidate, spiral, SmoothCandidate};
use crate::output;
use crate::product::{parallel_run, theorem31_run, ProductPoint, ProductRun, SolutionRecord};
use crate::solver::StopReason;
use crate::sweep::{periodic_run, CycleRecord, PeriodicRun};

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Solver(#[from] crate::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("falsifier found no violated link for `{0}`; the evaluator is inconsistent")]
    LoopSatisfied(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunStatus {
    Success,
    NotConverged,
}

impl RunStatus {
    pub fn exit_code(self) -> u8 {
        match self {
            RunStatus::Success => 0,
            RunStatus::NotConverged => 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub status: RunStatus,
    pub files: Vec<PathBuf>,
    pub warnings: Vec<String>,
    pub summary: String,
}

#[derive(Serialize)]
struct PairRecord {
    #[serde(flatten)]
    cycle: CycleRecord,
    distance: f64,
}

#[derive(Serialize)]
struct SpiralRecord {
    alpha: f64,
    n: usize,
    x_norm: f64,
    y_norm: f64,
    final_norm: f64,
    predicted_final_norm: f64,
    exceeds_x_norm: bool,
}

#[derive(Serialize)]
struct GapRecord {
    candidate: SmoothCandidate,
    cycle: CycleRecord,
    minimizer: SolutionRecord,
    gap: f64,
    displacement: f64,
}

struct Emitter {
    dir: PathBuf,
    files: Vec<PathBuf>,
}

impl Emitter {
    fn path(&mut self, name: &str) -> PathBuf {
        let p = self.dir.join(name);
        self.files.push(p.clone());
        p
    }

    fn json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<(), RunError> {
        let path = self.path(name);
        output::write_json(&path, value).map_err(|source| RunError::Io { path, source })
    }

    fn csv(
        &mut self,
        name: Option<&str>,
        write: impl FnOnce(&Path) -> io::Result<()>,
    ) -> Result<(), RunError> {
        let Some(name) = name else {
            return Ok(());
        };
        let path = self.path(name);
        write(&path).map_err(|source| RunError::Io { path, source })
    }
}

fn status(converged: bool) -> RunStatus {
    if converged {
        RunStatus::Success
    } else {
        RunStatus::NotConverged
    }
}

/// Runs one experiment, writing its artifacts under `out_dir` (or the
/// config's `output.dir`). Non-convergence is reported through
/// [`RunStatus::NotConverged`] after the artifacts have been written.
pub fn run_experiment(
    config: &ExperimentConfig,
    out_dir: Option<&Path>,
) -> Result<Outcome, RunError> {
    let dir = out_dir.map_or_else(|| config.output.dir.clone(), Path::to_path_buf);
    fs::create_dir_all(&dir).map_err(|source| RunError::Io {
        path: dir.clone(),
        source,
    })?;
    let mut emit = Emitter {
        dir,
        files: Vec::new(),
    };
    let csv_name = config.output.csv.as_deref();
    let json_name = config.output.json.as_str();
    let cfg = &config.solver;
    let mut warnings = Vec::new();

    let (status, summary) = match &config.experiment {
        Experiment::Periodic { family, start } | Experiment::PairDistance { family, start } => {
            if !family.has_bounded_member() {
                warnings
                    .push("no set in the family is bounded; convergence is not guaranteed".into());
            }
            let run: PeriodicRun = periodic_run(family, start, cfg)?;
            emit.csv(csv_name, |p| {
                output::write_trajectory_csv(p, &run.trajectory)
            })?;
            let record = CycleRecord::from_run(&run);
            let summary = if let Experiment::PairDistance { .. } = &config.experiment {
                let pts = run.cycle.points();
                let distance = (&pts[0] - &pts[1]).norm();
                emit.json(
                    json_name,
                    &PairRecord {
                        cycle: record,
                        distance,
                    },
                )?;
                format!(
                    "distance {distance:?} after {} sweeps",
                    run.trajectory.sweeps_used
                )
            } else {
                emit.json(json_name, &record)?;
                format!(
                    "cycle residual {:?} after {} sweeps",
                    run.cycle.residual(),
                    run.trajectory.sweeps_used
                )
            };
            (status(run.converged()), summary)
        }
        Experiment::Theorem31 {
            family,
            objective,
            start,
        } => {
            let run = theorem31_run(family, objective, start, cfg)?;
            write_product(
                &mut emit,
                csv_name,
                json_name,
                &run,
                family.len(),
                family.dim(),
            )?
        }
        Experiment::Parallel {
            family,
            variant,
            start,
        } => {
            if !family.has_bounded_member() {
                warnings.push("no set in the family is bounded; a minimizer may not exist".into());
            }
            let run = parallel_run(family, start, cfg, *variant)?;
            write_product(
                &mut emit,
                csv_name,
                json_name,
                &run,
                family.len(),
                family.dim(),
            )?
        }
        Experiment::Spiral { spec } => {
            let s = spiral(spec)?;
            emit.csv(csv_name, |p| output::write_spiral_csv(p, &s))?;
            let record = SpiralRecord {
                alpha: s.alpha,
                n: spec.n(),
                x_norm: spec.x().norm(),
                y_norm: spec.y().norm(),
                final_norm: s.final_norm,
                predicted_final_norm: spec.predicted_norm(spec.n()),
                exceeds_x_norm: s.final_norm > spec.x().norm(),
            };
            emit.json(json_name, &record)?;
            (RunStatus::Success, format!("final norm {:?}", s.final_norm))
        }
        Experiment::Falsify {
            candidate,
            m,
            z,
            rho,
            sphere_samples,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            let report = falsify_candidate(candidate, *m, z, *rho, *sphere_samples, &mut rng)?;
            emit.json(json_name, &report)?;
            if !report.falsified() {
                return Err(RunError::LoopSatisfied(report.candidate));
            }
            let link = report.violated_link.map_or("none", |l| l.as_str());
            (
                RunStatus::Success,
                format!(
                    "{}: {} (first violated link {link})",
                    report.candidate, report.verdict
                ),
            )
        }
        Experiment::Gap {
            family,
            candidate,
            start,
        } => {
            let cycle_run = periodic_run(family, start, cfg)?;
            let objective = candidate.objective(family.len())?;
            let diag = ProductPoint::diagonal(start, family.len());
            let min_run = theorem31_run(family, &objective, &diag, cfg)?;
            let cycle_point = ProductPoint::new(cycle_run.cycle.points().to_vec())?;
            let gap = objective.value(&cycle_point)? - min_run.objective;
            let displacement = cycle_point.max_block_distance(&min_run.solution);
            emit.json(
                json_name,
                &GapRecord {
                    candidate: *candidate,
                    cycle: CycleRecord::from_run(&cycle_run),
                    minimizer: SolutionRecord::from_run(&min_run),
                    gap,
                    displacement,
                },
            )?;
            (
                status(cycle_run.converged() && min_run.converged()),
                format!("gap {gap:?}, displacement {displacement:?}"),
            )
        }
    };

    Ok(Outcome {
        status,
        files: emit.files,
        warnings,
        summary,
    })
}

fn write_product(
    emit: &mut Emitter,
    csv_name: Option<&str>,
    json_name: &str,
    run: &ProductRun,
    m: usize,
    dim: usize,
) -> Result<(RunStatus, String), RunError> {
    emit.csv(csv_name, |p| output::write_log_csv(p, &run.log, m, dim))?;
    emit.json(json_name, &SolutionRecord::from_run(run))?;
    let summary = format!(
        "objective {:?}, stationarity {:?} after {} iterations ({})",
        run.objective,
        run.stationarity,
        run.iterations,
        if run.stop_reason == StopReason::Converged {
            "converged"
        } else {
            "iteration cap reached"
        }
    );
    Ok((status(run.converged()), summary))
}
