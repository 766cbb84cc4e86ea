//! Periodic projections, cycle extraction and cycle verification.
//!
//! Sets are indexed `0..m` in code and `1..m` in emitted artifacts. One
//! sweep applies `P_m, P_{m-1}, …, P_1` in that order, so the point produced
//! by `P_i` in the last sweep is reported as the `i`-th cycle point and the
//! relations `ȳ_i = P_i ȳ_{i+1}` (cyclically) hold at the limit.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{check_permutation, ConvexSet, Family, Vector};
use crate::solver::{SolverConfig, StopReason};

/// An `m`-tuple of points with its cycle residual.
#[derive(Debug, Clone, PartialEq)]
pub struct Cycle {
    points: Vec<Vector>,
    residual: f64,
}

impl Cycle {
    /// Wraps `points`, recomputing the residual against `family`.
    pub fn new(family: &Family, points: Vec<Vector>) -> Result<Self> {
        let residual = cycle_residual(family, &points)?;
        Ok(Self { points, residual })
    }

    /// Like [`Cycle::new`], but rejects tuples whose residual exceeds `tol`.
    pub fn accept(family: &Family, points: Vec<Vector>, tol: f64) -> Result<Self> {
        let cycle = Self::new(family, points)?;
        if cycle.residual <= tol {
            Ok(cycle)
        } else {
            Err(Error::NotConverged {
                iterations: 0,
                residual: cycle.residual,
                best: cycle.points,
            })
        }
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn into_points(self) -> Vec<Vector> {
        self.points
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Iterate {
    pub sweep: usize,
    pub inner: usize,
    pub set_index: usize,
    pub point: Vector,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub start: Vector,
    pub iterates: Vec<Iterate>,
    pub stop_reason: StopReason,
    pub sweeps_used: usize,
}

impl Trajectory {
    /// `x_0, x_m, x_{2m}, …`: the start followed by the end point of every
    /// sweep.
    pub fn sweep_endpoints(&self, m: usize) -> Vec<&Vector> {
        std::iter::once(&self.start)
            .chain(
                self.iterates
                    .iter()
                    .filter(|it| it.inner + 1 == m)
                    .map(|it| &it.point),
            )
            .collect()
    }
}

/// Full outcome of a periodic run, including runs that did not converge.
#[derive(Debug, Clone)]
pub struct PeriodicRun {
    pub trajectory: Trajectory,
    pub cycle: Cycle,
    pub last_displacement: f64,
    pub cycle_tol: f64,
}

impl PeriodicRun {
    pub fn converged(&self) -> bool {
        self.trajectory.stop_reason == StopReason::Converged
            && self.cycle.residual <= self.cycle_tol
    }

    pub fn into_result(self) -> Result<(Trajectory, Cycle)> {
        if self.converged() {
            Ok((self.trajectory, self.cycle))
        } else {
            Err(Error::NotConverged {
                iterations: self.trajectory.sweeps_used,
                residual: self.cycle.residual,
                best: self.cycle.points,
            })
        }
    }
}

/// Sweep order `P_m, …, P_1` as 0-based set indices.
pub fn default_order(m: usize) -> Vec<usize> {
    (0..m).rev().collect()
}

/// Applies the projections in `order` (0-based set indices) to `x`.
/// Returns the final point and the `m` intermediates in application order.
pub fn sweep_once(family: &Family, x: &Vector, order: &[usize]) -> Result<(Vector, Vec<Vector>)> {
    check_permutation(order, family.len())?;
    let mut current = x.clone();
    let mut intermediates = Vec::with_capacity(order.len());
    for &i in order {
        current = family.set(i).project(&current)?;
        intermediates.push(current.clone());
    }
    Ok((current, intermediates))
}

/// `max_i ‖ȳ_i − P_i ȳ_{i+1}‖` with `ȳ_{m+1} = ȳ_1`.
pub fn cycle_residual(family: &Family, points: &[Vector]) -> Result<f64> {
    let m = family.len();
    if points.len() != m {
        return Err(Error::LengthMismatch {
            expected: m,
            found: points.len(),
        });
    }
    let mut worst: f64 = 0.0;
    for (i, set) in family.sets().iter().enumerate() {
        let next = &points[(i + 1) % m];
        let defect = (&points[i] - set.project(next)?).norm();
        worst = worst.max(defect);
    }
    Ok(worst)
}

/// Runs full sweeps from `x0` and reports the outcome whether or not the
/// run converged. Only input errors are returned as `Err`.
pub fn periodic_run(family: &Family, x0: &Vector, cfg: &SolverConfig) -> Result<PeriodicRun> {
    cfg.check_tolerances()?;
    if x0.len() != family.dim() {
        return Err(Error::DimensionMismatch {
            expected: family.dim(),
            found: x0.len(),
        });
    }
    let m = family.len();
    let order = default_order(m);
    let mut x = x0.clone();
    let mut iterates = Vec::new();
    let mut last = Vec::new();
    let mut stop_reason = StopReason::MaxIterations;
    let mut displacement = f64::INFINITY;
    let mut sweeps_used = 0;

    for n in 0..cfg.max_sweeps {
        let (next, intermediates) = sweep_once(family, &x, &order)?;
        iterates.extend(intermediates.iter().enumerate().map(|(k, p)| Iterate {
            sweep: n,
            inner: k,
            set_index: order[k],
            point: p.clone(),
        }));
        displacement = (&next - &x).norm();
        x = next;
        last = intermediates;
        sweeps_used = n + 1;
        if displacement <= cfg.sweep_tol {
            stop_reason = StopReason::Converged;
            break;
        }
    }

    // the k-th intermediate was produced by set order[k]
    let mut points = vec![Vector::zeros(family.dim()); m];
    for (k, p) in last.into_iter().enumerate() {
        points[order[k]] = p;
    }
    let cycle = Cycle::new(family, points)?;
    Ok(PeriodicRun {
        trajectory: Trajectory {
            start: x0.clone(),
            iterates,
            stop_reason,
            sweeps_used,
        },
        cycle,
        last_displacement: displacement,
        cycle_tol: cfg.cycle_tol,
    })
}

/// Periodic projections until the full-sweep displacement drops below
/// `cfg.sweep_tol`; fails with `NotConverged` otherwise.
pub fn run_periodic(
    family: &Family,
    x0: &Vector,
    cfg: &SolverConfig,
) -> Result<(Trajectory, Cycle)> {
    periodic_run(family, x0, cfg)?.into_result()
}

/// Alternating projections between two sets. Returns the cycle pair and
/// its gap, which is the distance between the sets at convergence.
pub fn min_distance_pair(
    c1: &ConvexSet,
    c2: &ConvexSet,
    x0: &Vector,
    cfg: &SolverConfig,
) -> Result<((Vector, Vector), f64)> {
    let family = Family::new(vec![c1.clone(), c2.clone()])?;
    let (_, cycle) = run_periodic(&family, x0, cfg)?;
    let mut pts = cycle.into_points().into_iter();
    let (y1, y2) = (pts.next().unwrap(), pts.next().unwrap());
    let d = (&y1 - &y2).norm();
    Ok(((y1, y2), d))
}

/// JSON form of a cycle.
#[derive(Debug, Clone, Serialize)]
pub struct CycleRecord {
    pub points: Vec<Vec<f64>>,
    pub residual: f64,
    pub sweeps: usize,
    pub stop_reason: StopReason,
}

impl CycleRecord {
    pub fn from_run(run: &PeriodicRun) -> Self {
        Self {
            points: run
                .cycle
                .points
                .iter()
                .map(|p| p.iter().copied().collect())
                .collect(),
            residual: run.cycle.residual,
            sweeps: run.trajectory.sweeps_used,
            stop_reason: run.trajectory.stop_reason,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::vector;

    fn thm23_family(rho: f64) -> Family {
        let z = vector(&[1.0, 0.0]);
        Family::new(vec![
            ConvexSet::singleton(vector(&[0.0, 0.0])).unwrap(),
            ConvexSet::segment(-&z, z.clone()).unwrap(),
            ConvexSet::singleton(z * rho).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn sweep_applies_last_set_first() {
        let f = thm23_family(2.0);
        let (fin, mids) = sweep_once(&f, &vector(&[5.0, 5.0]), &default_order(3)).unwrap();
        assert_eq!(
            mids,
            vec![
                vector(&[2.0, 0.0]),
                vector(&[1.0, 0.0]),
                vector(&[0.0, 0.0])
            ]
        );
        assert_eq!(fin, vector(&[0.0, 0.0]));
    }

    #[test]
    fn identical_sets_need_one_projection() {
        let b = ConvexSet::ball(vector(&[0.0, 0.0]), 1.0).unwrap();
        let f = Family::new(vec![b.clone(), b]).unwrap();
        let (fin, _) = sweep_once(&f, &vector(&[3.0, 0.0]), &default_order(2)).unwrap();
        assert_eq!(fin, vector(&[1.0, 0.0]));
    }

    #[test]
    fn common_point_is_fixed() {
        let f = Family::new(vec![
            ConvexSet::ball(vector(&[0.0, 0.0]), 1.0).unwrap(),
            ConvexSet::halfspace(vector(&[1.0, 1.0]), 0.0).unwrap(),
            ConvexSet::boxed(vector(&[-1.0, -1.0]), vector(&[0.0, 0.0])).unwrap(),
        ])
        .unwrap();
        let x = vector(&[-0.25, -0.5]);
        let (fin, mids) = sweep_once(&f, &x, &[1, 0, 2]).unwrap();
        assert_eq!(fin, x);
        assert!(mids.iter().all(|p| *p == x));
    }

    #[test]
    fn bad_order_is_rejected() {
        let f = thm23_family(2.0);
        assert!(matches!(
            sweep_once(&f, &vector(&[0.0, 0.0]), &[0, 0, 1]),
            Err(Error::InvalidOrder(_))
        ));
    }

    #[test]
    fn residuals_on_degenerate_family() {
        let f = thm23_family(2.0);
        let exact = [
            vector(&[0.0, 0.0]),
            vector(&[1.0, 0.0]),
            vector(&[2.0, 0.0]),
        ];
        assert_eq!(cycle_residual(&f, &exact).unwrap(), 0.0);
        let off = [
            vector(&[0.0, 0.0]),
            vector(&[0.0, 0.0]),
            vector(&[2.0, 0.0]),
        ];
        assert_eq!(cycle_residual(&f, &off).unwrap(), 1.0);
        assert!(matches!(
            cycle_residual(&f, &exact[..2]),
            Err(Error::LengthMismatch {
                expected: 3,
                found: 2
            })
        ));
    }

    #[test]
    fn periodic_run_recovers_degenerate_cycle() {
        let f = thm23_family(2.0);
        let (traj, cycle) =
            run_periodic(&f, &vector(&[5.0, 5.0]), &SolverConfig::default()).unwrap();
        assert_eq!(traj.stop_reason, StopReason::Converged);
        assert_eq!(
            cycle.points(),
            &[
                vector(&[0.0, 0.0]),
                vector(&[1.0, 0.0]),
                vector(&[2.0, 0.0])
            ]
        );
        assert!(cycle.residual() <= 1e-12);
        // dense iterates, inner index cycling 0..m
        for (j, it) in traj.iterates.iter().enumerate() {
            assert_eq!(it.sweep, j / 3);
            assert_eq!(it.inner, j % 3);
        }
    }

    #[test]
    fn disjoint_balls_cycle() {
        let f = Family::new(vec![
            ConvexSet::ball(vector(&[0.0, 0.0]), 1.0).unwrap(),
            ConvexSet::ball(vector(&[5.0, 0.0]), 1.0).unwrap(),
        ])
        .unwrap();
        let (_, cycle) = run_periodic(&f, &vector(&[0.0, 3.0]), &SolverConfig::default()).unwrap();
        assert!((&cycle.points()[0] - vector(&[1.0, 0.0])).norm() <= 1e-10);
        assert!((&cycle.points()[1] - vector(&[4.0, 0.0])).norm() <= 1e-10);
        assert!(cycle.residual() <= 1e-10);
    }

    #[test]
    fn budget_exhaustion_reports_not_converged() {
        let f = Family::new(vec![
            ConvexSet::ball(vector(&[0.0, 0.0]), 1.0).unwrap(),
            ConvexSet::ball(vector(&[5.0, 0.0]), 1.0).unwrap(),
        ])
        .unwrap();
        let cfg = SolverConfig {
            max_sweeps: 2,
            ..SolverConfig::default()
        };
        let run = periodic_run(&f, &vector(&[0.0, 3.0]), &cfg).unwrap();
        assert_eq!(run.trajectory.stop_reason, StopReason::MaxIterations);
        match run.into_result() {
            Err(Error::NotConverged {
                iterations, best, ..
            }) => {
                assert_eq!(iterations, 2);
                assert_eq!(best.len(), 2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn pair_distance_for_slab() {
        let h1 = ConvexSet::halfspace(vector(&[1.0, 0.0]), 0.0).unwrap();
        let h2 = ConvexSet::halfspace(vector(&[-1.0, 0.0]), -2.0).unwrap();
        let ((y1, y2), d) =
            min_distance_pair(&h1, &h2, &vector(&[7.0, -3.0]), &SolverConfig::default()).unwrap();
        assert!((d - 2.0).abs() <= 1e-12);
        assert!(h1.contains(&y1, 1e-12).unwrap());
        assert!(h2.contains(&y2, 1e-12).unwrap());
    }
}
