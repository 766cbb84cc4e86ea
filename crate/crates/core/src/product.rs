//! Solvers over the product `C_1 × … × C_m`: relaxed projected gradient for
//! a smooth coupling objective, and the two parallel projection schemes
//! that minimize the sum of pairwise squared distances.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Family, Vector};
use crate::solver::{relaxation_limit, SolverConfig, StopReason};

/// A tuple `(y_1, …, y_m)` of equally sized blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductPoint {
    blocks: Vec<Vector>,
}

impl ProductPoint {
    pub fn new(blocks: Vec<Vector>) -> Result<Self> {
        if let Some(first) = blocks.first() {
            let dim = first.len();
            if let Some(b) = blocks.iter().find(|b| b.len() != dim) {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: b.len(),
                });
            }
        }
        Ok(Self { blocks })
    }

    /// `(y, …, y)` with `m` copies.
    pub fn diagonal(y: &Vector, m: usize) -> Self {
        Self {
            blocks: vec![y.clone(); m],
        }
    }

    pub fn blocks(&self) -> &[Vector] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<Vector> {
        self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_dim(&self) -> usize {
        self.blocks.first().map_or(0, |b| b.len())
    }

    pub fn norm(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| b.norm_squared())
            .sum::<f64>()
            .sqrt()
    }

    /// Product-space distance `sqrt(Σ ‖x_i − y_i‖²)`.
    pub fn distance(&self, other: &Self) -> f64 {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a - b).norm_squared())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest blockwise distance `max_i ‖x_i − y_i‖`.
    pub fn max_block_distance(&self, other: &Self) -> f64 {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn mean(&self) -> Vector {
        let mut sum = Vector::zeros(self.block_dim());
        for b in &self.blocks {
            sum += b;
        }
        sum / self.blocks.len() as f64
    }

    /// Reorders blocks so that position `i` holds block `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self {
            blocks: perm.iter().map(|&i| self.blocks[i].clone()).collect(),
        }
    }

    fn expect_blocks(&self, m: usize) -> Result<()> {
        if self.blocks.len() == m {
            Ok(())
        } else {
            Err(Error::BlockCountMismatch {
                expected: m,
                found: self.blocks.len(),
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ObjectiveKind {
    /// `(1/(2(m−1))) Σ_{i<j} ‖y_i − y_j‖²`.
    PairwiseSquared,
    /// `Σ_i ‖y_i − y_{i+1}‖²`, indices cyclic.
    CyclicSquared,
    /// `½ ‖y − target‖²`.
    QuadraticToTarget(ProductPoint),
}

/// A convex objective on the product space with Lipschitz gradient.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothObjective {
    kind: ObjectiveKind,
    m: usize,
}

impl SmoothObjective {
    pub fn pairwise_squared(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::TooFewSets { min: 2, found: m });
        }
        Ok(Self {
            kind: ObjectiveKind::PairwiseSquared,
            m,
        })
    }

    pub fn cyclic_squared(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::TooFewSets { min: 2, found: m });
        }
        Ok(Self {
            kind: ObjectiveKind::CyclicSquared,
            m,
        })
    }

    pub fn quadratic_to_target(target: ProductPoint) -> Result<Self> {
        let m = target.len();
        if m == 0 {
            return Err(Error::TooFewSets { min: 1, found: 0 });
        }
        Ok(Self {
            kind: ObjectiveKind::QuadraticToTarget(target),
            m,
        })
    }

    pub fn kind(&self) -> &ObjectiveKind {
        &self.kind
    }

    pub fn blocks(&self) -> usize {
        self.m
    }

    /// Lipschitz constant `1/β` of the gradient.
    ///
    /// For the cyclic objective the Hessian is `2 L ⊗ I` with `L` the cycle
    /// Laplacian, whose spectrum lies in `[0, 4]`.
    pub fn lipschitz_inverse_beta(&self) -> f64 {
        match self.kind {
            ObjectiveKind::PairwiseSquared => self.m as f64 / (self.m as f64 - 1.0),
            ObjectiveKind::CyclicSquared => 8.0,
            ObjectiveKind::QuadraticToTarget(_) => 1.0,
        }
    }

    pub fn beta(&self) -> f64 {
        1.0 / self.lipschitz_inverse_beta()
    }

    pub fn value(&self, y: &ProductPoint) -> Result<f64> {
        y.expect_blocks(self.m)?;
        let b = y.blocks();
        let m = self.m;
        Ok(match &self.kind {
            ObjectiveKind::PairwiseSquared => {
                let mut sum = 0.0;
                for i in 0..m {
                    for j in i + 1..m {
                        sum += (&b[i] - &b[j]).norm_squared();
                    }
                }
                sum / (2.0 * (m as f64 - 1.0))
            }
            ObjectiveKind::CyclicSquared => (0..m)
                .map(|i| (&b[i] - &b[(i + 1) % m]).norm_squared())
                .sum(),
            ObjectiveKind::QuadraticToTarget(target) => {
                check_same_dim(y, target)?;
                0.5 * y.distance(target).powi(2)
            }
        })
    }

    pub fn gradient(&self, y: &ProductPoint) -> Result<ProductPoint> {
        y.expect_blocks(self.m)?;
        let b = y.blocks();
        let m = self.m;
        let blocks = match &self.kind {
            ObjectiveKind::PairwiseSquared => {
                let others = others_means(y);
                b.iter().zip(others).map(|(bi, oi)| bi - oi).collect()
            }
            ObjectiveKind::CyclicSquared => (0..m)
                .map(|i| {
                    let prev = &b[(i + m - 1) % m];
                    let next = &b[(i + 1) % m];
                    (&b[i] * 2.0 - prev - next) * 2.0
                })
                .collect(),
            ObjectiveKind::QuadraticToTarget(target) => {
                check_same_dim(y, target)?;
                b.iter()
                    .zip(target.blocks())
                    .map(|(bi, ti)| bi - ti)
                    .collect()
            }
        };
        Ok(ProductPoint { blocks })
    }
}

fn check_same_dim(y: &ProductPoint, target: &ProductPoint) -> Result<()> {
    if y.block_dim() == target.block_dim() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: target.block_dim(),
            found: y.block_dim(),
        })
    }
}

pub fn eval_objective(obj: &SmoothObjective, y: &ProductPoint) -> Result<f64> {
    obj.value(y)
}

pub fn grad_objective(obj: &SmoothObjective, y: &ProductPoint) -> Result<ProductPoint> {
    obj.gradient(y)
}

/// `(1/(m−1)) Σ_{j≠i} y_j` for every `i`.
fn others_means(y: &ProductPoint) -> Vec<Vector> {
    let m = y.len() as f64;
    let total = y.mean() * m;
    y.blocks()
        .iter()
        .map(|bi| (&total - bi) / (m - 1.0))
        .collect()
}

/// Blockwise projection onto `C_1 × … × C_m`.
pub fn project_product(family: &Family, y: &ProductPoint) -> Result<ProductPoint> {
    y.expect_blocks(family.len())?;
    let blocks = family
        .sets()
        .iter()
        .zip(y.blocks())
        .map(|(set, b)| set.project(b))
        .collect::<Result<Vec<_>>>()?;
    Ok(ProductPoint { blocks })
}

/// Projection onto the diagonal: every block replaced by the block average.
pub fn project_diagonal(y: &ProductPoint) -> ProductPoint {
    ProductPoint::diagonal(&y.mean(), y.len())
}

#[derive(Debug, Clone, PartialEq)]
pub struct LogEntry {
    pub iter: usize,
    pub objective: f64,
    pub displacement: f64,
    pub stationarity: f64,
    pub point: ProductPoint,
}

/// Outcome of a product-space run, converged or not.
#[derive(Debug, Clone)]
pub struct ProductRun {
    pub solution: ProductPoint,
    pub log: Vec<LogEntry>,
    pub stop_reason: StopReason,
    pub iterations: usize,
    /// `max_i` blockwise fixed-point defect at the returned tuple.
    pub stationarity: f64,
    /// `max_i dist(y_i, C_i)`.
    pub infeasibility: f64,
    pub objective: f64,
    pub fixpoint_tol: f64,
    pub cycle_tol: f64,
}

impl ProductRun {
    pub fn converged(&self) -> bool {
        self.stop_reason == StopReason::Converged
            && self.stationarity <= self.fixpoint_tol
            && self.infeasibility <= self.cycle_tol
    }

    pub fn fair_point(&self) -> Vector {
        self.solution.mean()
    }

    pub fn into_result(self) -> Result<Self> {
        if self.converged() {
            Ok(self)
        } else {
            Err(Error::NotConverged {
                iterations: self.iterations,
                residual: self.stationarity,
                best: self.solution.into_blocks(),
            })
        }
    }
}

fn check_start(family: &Family, x0: &ProductPoint) -> Result<()> {
    x0.expect_blocks(family.len())?;
    if x0.block_dim() != family.dim() {
        return Err(Error::DimensionMismatch {
            expected: family.dim(),
            found: x0.block_dim(),
        });
    }
    x0.blocks()
        .iter()
        .try_for_each(|b| crate::geometry::ensure_finite(b, "start"))
}

fn infeasibility(family: &Family, y: &ProductPoint) -> Result<f64> {
    family
        .sets()
        .iter()
        .zip(y.blocks())
        .try_fold(0.0_f64, |acc, (set, b)| Ok(acc.max(set.distance(b)?)))
}

/// Relaxed projected gradient
/// `x_{n+1} = x_n + λ_n (P_C(x_n − γ ∇Φ(x_n)) − x_n)`, reported whether or
/// not it converged.
pub fn theorem31_run(
    family: &Family,
    obj: &SmoothObjective,
    x0: &ProductPoint,
    cfg: &SolverConfig,
) -> Result<ProductRun> {
    cfg.check_tolerances()?;
    check_start(family, x0)?;
    if obj.blocks() != family.len() {
        return Err(Error::BlockCountMismatch {
            expected: family.len(),
            found: obj.blocks(),
        });
    }
    let beta = obj.beta();
    let gamma = cfg.step_size(beta)?;
    let delta = relaxation_limit(beta, gamma);

    let forward = |x: &ProductPoint| -> Result<ProductPoint> {
        let g = obj.gradient(x)?;
        let step = ProductPoint {
            blocks: x
                .blocks
                .iter()
                .zip(&g.blocks)
                .map(|(xi, gi)| xi - gi * gamma)
                .collect(),
        };
        project_product(family, &step)
    };

    let mut x = x0.clone();
    let mut target = forward(&x)?;
    let mut stationarity = x.max_block_distance(&target);
    let mut log = Vec::new();
    let mut stop_reason = StopReason::MaxIterations;
    let mut iterations = 0;

    for n in 0..cfg.max_iters {
        let lambda = cfg.lambda.at(n);
        if !(0.0..=delta).contains(&lambda) {
            return Err(Error::InvalidRelaxation {
                lambda,
                delta,
                iteration: n,
            });
        }
        let next = ProductPoint {
            blocks: x
                .blocks
                .iter()
                .zip(&target.blocks)
                .map(|(xi, ti)| xi + (ti - xi) * lambda)
                .collect(),
        };
        let displacement = next.distance(&x);
        target = forward(&next)?;
        stationarity = next.max_block_distance(&target);
        log.push(LogEntry {
            iter: n + 1,
            objective: obj.value(&next)?,
            displacement,
            stationarity,
            point: next.clone(),
        });
        x = next;
        iterations = n + 1;
        if lambda > 0.0 && displacement <= cfg.sweep_tol {
            stop_reason = StopReason::Converged;
            break;
        }
    }

    Ok(ProductRun {
        infeasibility: infeasibility(family, &x)?,
        objective: obj.value(&x)?,
        solution: x,
        log,
        stop_reason,
        iterations,
        stationarity,
        fixpoint_tol: cfg.fixpoint_tol,
        cycle_tol: cfg.cycle_tol,
    })
}

/// Projected-gradient minimization of `obj` over the product of the
/// family's sets; fails with `NotConverged` unless the limit is feasible and
/// stationary.
pub fn solve_theorem31(
    family: &Family,
    obj: &SmoothObjective,
    x0: &ProductPoint,
    cfg: &SolverConfig,
) -> Result<ProductRun> {
    theorem31_run(family, obj, x0, cfg)?.into_result()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParallelVariant {
    /// `x_{i,n+1} = P_i((1/(m−1)) Σ_{j≠i} x_{j,n})`.
    OthersMean,
    /// `x_{i,n+1} = P_i((1/m) Σ_j x_{j,n})`.
    FullMean,
}

fn parallel_anchors(x: &ProductPoint, variant: ParallelVariant) -> Vec<Vector> {
    match variant {
        ParallelVariant::OthersMean => others_means(x),
        ParallelVariant::FullMean => vec![x.mean(); x.len()],
    }
}

fn parallel_step(
    family: &Family,
    x: &ProductPoint,
    variant: ParallelVariant,
) -> Result<ProductPoint> {
    let anchors = ProductPoint {
        blocks: parallel_anchors(x, variant),
    };
    project_product(family, &anchors)
}

/// Parallel projection scheme, reported whether or not it converged.
pub fn parallel_run(
    family: &Family,
    x0: &ProductPoint,
    cfg: &SolverConfig,
    variant: ParallelVariant,
) -> Result<ProductRun> {
    cfg.check_tolerances()?;
    check_start(family, x0)?;
    let m = family.len();
    if variant == ParallelVariant::OthersMean && m < 3 {
        return Err(Error::TooFewSets { min: 3, found: m });
    }
    let objective = SmoothObjective::pairwise_squared(m)?;

    let mut x = x0.clone();
    let mut next = parallel_step(family, &x, variant)?;
    let mut log = Vec::new();
    let mut stop_reason = StopReason::MaxIterations;
    let mut iterations = 0;
    let mut stationarity = x.max_block_distance(&next);

    for n in 0..cfg.max_iters {
        let displacement = next.distance(&x);
        let after = parallel_step(family, &next, variant)?;
        stationarity = next.max_block_distance(&after);
        log.push(LogEntry {
            iter: n + 1,
            objective: objective.value(&next)?,
            displacement,
            stationarity,
            point: next.clone(),
        });
        x = next;
        next = after;
        iterations = n + 1;
        if displacement <= cfg.sweep_tol {
            stop_reason = StopReason::Converged;
            break;
        }
    }

    Ok(ProductRun {
        infeasibility: infeasibility(family, &x)?,
        objective: objective.value(&x)?,
        solution: x,
        log,
        stop_reason,
        iterations,
        stationarity,
        fixpoint_tol: cfg.fixpoint_tol,
        cycle_tol: cfg.cycle_tol,
    })
}

/// Parallel projections minimizing `Σ_{i<j} ‖y_i − y_j‖²` over the product.
/// The fair point is [`ProductRun::fair_point`].
pub fn solve_parallel(
    family: &Family,
    x0: &ProductPoint,
    cfg: &SolverConfig,
    variant: ParallelVariant,
) -> Result<ProductRun> {
    parallel_run(family, x0, cfg, variant)?.into_result()
}

/// `‖y − (1/m) Σ_i P_i y‖`; zero exactly at stationary points of
/// `y ↦ Σ_i ‖y − P_i y‖²`.
pub fn fair_point_residual(family: &Family, y: &Vector) -> Result<f64> {
    let mut avg = Vector::zeros(y.len());
    for set in family.sets() {
        avg += set.project(y)?;
    }
    avg /= family.len() as f64;
    Ok((y - avg).norm())
}

/// `(‖x − P_C P_D x‖, ‖z − P_D P_C z‖)` with `z = P_D x`.
pub fn fixpoint_check(family: &Family, tuple: &ProductPoint) -> Result<(f64, f64)> {
    tuple.expect_blocks(family.len())?;
    let z = project_diagonal(tuple);
    let r1 = tuple.distance(&project_product(family, &z)?);
    let r2 = z.distance(&project_diagonal(&project_product(family, &z)?));
    Ok((r1, r2))
}

/// JSON form of a product-space solution.
#[derive(Debug, Clone, Serialize)]
pub struct SolutionRecord {
    pub points: Vec<Vec<f64>>,
    pub residual: f64,
    pub sweeps: usize,
    pub stop_reason: StopReason,
    pub objective: f64,
    pub fair_point: Vec<f64>,
}

impl SolutionRecord {
    pub fn from_run(run: &ProductRun) -> Self {
        Self {
            points: run
                .solution
                .blocks()
                .iter()
                .map(|p| p.iter().copied().collect())
                .collect(),
            residual: run.stationarity,
            sweeps: run.iterations,
            stop_reason: run.stop_reason,
            objective: run.objective,
            fair_point: run.fair_point().iter().copied().collect(),
        }
    }
}
