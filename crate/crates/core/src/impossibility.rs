//! Constructions showing that no functional on `H^m` has the cycles of
//! periodic projections as its constrained minimizers.
//!
//! * [`spiral`] builds the polygonal spiral obtained by projecting onto `n`
//!   equispaced rays between two points, whose norm contracts by exactly
//!   `cos(α/n)` per step.
//! * [`thm23_families`] builds the degenerate families
//!   `({0}, …, {0}, [−z, z], {±ρz})` whose unique cycles are known in closed
//!   form.
//! * [`falsify_candidate`] evaluates a candidate functional around the
//!   four-tuple loop on those families and reports which link breaks.
//! * [`candidate_gap`] compares the periodic cycle with the constrained
//!   minimizer of a smooth candidate on a concrete family.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{zeros, ConvexSet, Family, Vector};
use crate::product::{solve_theorem31, ProductPoint, SmoothObjective};
use crate::solver::SolverConfig;
use crate::sweep::{cycle_residual, run_periodic, Cycle};

const COLLINEAR_TOL: f64 = 1e-15;
const UNIT_TOL: f64 = 1e-12;

/// Inputs of the polygonal spiral from `y` towards the ray through `x`.
#[derive(Debug, Clone)]
pub struct SpiralSpec {
    x: Vector,
    y: Vector,
    n: usize,
    alpha: f64,
    /// Orthonormal basis `(e1, e2)` of the plane, `e1 = y/‖y‖`; `e2` is
    /// `None` when `x` and `y` point the same way.
    e1: Vector,
    e2: Option<Vector>,
}

impl SpiralSpec {
    /// Requires `0 < ‖x‖ < ‖y‖`, `n ≥ 2` and `x`, `y` not antipodal.
    pub fn new(x: Vector, y: Vector, n: usize) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::DimensionMismatch {
                expected: y.len(),
                found: x.len(),
            });
        }
        crate::geometry::ensure_finite(&x, "x")?;
        crate::geometry::ensure_finite(&y, "y")?;
        if n < 2 {
            return Err(Error::DegenerateInput(format!("n must be ≥ 2, got {n}")));
        }
        let (nx, ny) = (x.norm(), y.norm());
        if nx == 0.0 {
            return Err(Error::DegenerateInput("x must be nonzero".into()));
        }
        if nx >= ny {
            return Err(Error::DegenerateInput(format!(
                "need ‖x‖ < ‖y‖, got {nx} ≥ {ny}"
            )));
        }
        let e1 = &y / ny;
        let along = x.dot(&e1);
        let perp = &x - &e1 * along;
        let perp_norm = perp.norm();
        if perp_norm <= COLLINEAR_TOL * nx {
            if along < 0.0 {
                return Err(Error::AntipodalAmbiguity);
            }
            return Ok(Self {
                x,
                y,
                n,
                alpha: 0.0,
                e1,
                e2: None,
            });
        }
        let alpha = perp_norm.atan2(along);
        Ok(Self {
            e2: Some(perp / perp_norm),
            x,
            y,
            n,
            alpha,
            e1,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x(&self) -> &Vector {
        &self.x
    }

    pub fn y(&self) -> &Vector {
        &self.y
    }

    /// Unit direction of the ray `R_{n,k}`; `k = 0` is `y`'s ray and `k = n`
    /// is `x`'s.
    pub fn ray_direction(&self, k: usize) -> Vector {
        match &self.e2 {
            None => self.e1.clone(),
            Some(e2) => {
                let theta = self.alpha * k as f64 / self.n as f64;
                &self.e1 * theta.cos() + e2 * theta.sin()
            }
        }
    }

    /// `‖y‖ cos(α/n)^k`, evaluated as `exp(k log cos(α/n))` with
    /// `log cos h = log1p(−2 sin²(h/2))` so that large `k` does not amplify
    /// the rounding of `cos`.
    pub fn predicted_norm(&self, k: usize) -> f64 {
        let s = (self.alpha / (2.0 * self.n as f64)).sin();
        self.y.norm() * (k as f64 * (-2.0 * s * s).ln_1p()).exp()
    }
}

#[derive(Debug, Clone)]
pub struct Spiral {
    /// `x_{n,0} = y, x_{n,1}, …, x_{n,n}`.
    pub points: Vec<Vector>,
    pub final_norm: f64,
    pub alpha: f64,
}

/// Successive projections of `y` onto the rays `R_{n,1}, …, R_{n,n}`.
pub fn spiral(spec: &SpiralSpec) -> Result<Spiral> {
    let mut points = Vec::with_capacity(spec.n + 1);
    points.push(spec.y.clone());
    for k in 1..=spec.n {
        let ray = ConvexSet::ray(spec.ray_direction(k))?;
        let next = ray.project(&points[k - 1])?;
        points.push(next);
    }
    let final_norm = points[spec.n].norm();
    Ok(Spiral {
        points,
        final_norm,
        alpha: spec.alpha,
    })
}

/// The pair of degenerate families and their closed-form cycles.
#[derive(Debug, Clone)]
pub struct Thm23Families {
    /// `({0}, …, {0}, [−z, z], {ρz})`.
    pub plus: Family,
    /// `({0}, …, {0}, [−z, z], {−ρz})`.
    pub minus: Family,
    /// `(0, …, 0, z, ρz)`.
    pub plus_cycle: Cycle,
    /// `(0, …, 0, −z, −ρz)`.
    pub minus_cycle: Cycle,
    /// Largest blockwise distance between the closed-form cycles and the
    /// ones found by periodic projections from random starts.
    pub periodic_agreement: f64,
}

fn check_thm23_inputs(m: usize, z: &Vector, rho: f64) -> Result<()> {
    if m < 3 {
        return Err(Error::TooFewSets { min: 3, found: m });
    }
    crate::geometry::ensure_finite(z, "z")?;
    let norm = z.norm();
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(Error::InvalidUnitVector { norm });
    }
    if !(rho.is_finite() && rho > 1.0) {
        return Err(Error::InvalidRho(rho));
    }
    Ok(())
}

/// `(0, …, 0, a, b)` with `m` entries.
fn tail_tuple(m: usize, a: &Vector, b: &Vector) -> Vec<Vector> {
    let mut pts = vec![zeros(a.len()); m - 2];
    pts.push(a.clone());
    pts.push(b.clone());
    pts
}

fn degenerate_family(m: usize, z: &Vector, last: Vector) -> Result<Family> {
    let mut sets = vec![ConvexSet::singleton(zeros(z.len()))?; m - 2];
    sets.push(ConvexSet::segment(-z, z.clone())?);
    sets.push(ConvexSet::singleton(last)?);
    Family::new(sets)
}

pub const THM23_RANDOM_STARTS: usize = 5;

/// Builds both degenerate families, checks that their closed-form cycles
/// have zero residual, and cross-checks them against periodic projections
/// started from random points.
pub fn thm23_families<R: Rng + ?Sized>(
    m: usize,
    z: &Vector,
    rho: f64,
    rng: &mut R,
) -> Result<Thm23Families> {
    check_thm23_inputs(m, z, rho)?;
    let plus = degenerate_family(m, z, z * rho)?;
    let minus = degenerate_family(m, z, -z * rho)?;
    let plus_cycle = Cycle::accept(&plus, tail_tuple(m, z, &(z * rho)), 0.0)?;
    let minus_cycle = Cycle::accept(&minus, tail_tuple(m, &-z, &(-z * rho)), 0.0)?;

    let cfg = SolverConfig::default();
    let mut agreement: f64 = 0.0;
    for (family, cycle) in [(&plus, &plus_cycle), (&minus, &minus_cycle)] {
        for _ in 0..THM23_RANDOM_STARTS {
            let x0 = Vector::from_fn(z.len(), |_, _| 20.0 * rng.random::<f64>() - 10.0);
            let (_, found) = run_periodic(family, &x0, &cfg)?;
            for (a, b) in found.points().iter().zip(cycle.points()) {
                agreement = agreement.max((a - b).norm());
            }
        }
    }
    Ok(Thm23Families {
        plus,
        minus,
        plus_cycle,
        minus_cycle,
        periodic_agreement: agreement,
    })
}

type Evaluator = Arc<dyn Fn(&[Vector]) -> f64 + Send + Sync>;

/// A proposed functional `Φ : H^m → R`.
#[derive(Clone)]
pub struct CandidateFunctional {
    label: String,
    evaluator: Evaluator,
}

impl fmt::Debug for CandidateFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CandidateFunctional")
            .field("label", &self.label)
            .finish()
    }
}

impl CandidateFunctional {
    pub fn new(
        label: impl Into<String>,
        evaluator: impl Fn(&[Vector]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            label: label.into(),
            evaluator: Arc::new(evaluator),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn evaluate(&self, tuple: &[Vector]) -> Result<f64> {
        let value = (self.evaluator)(tuple);
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::EvaluatorFailure {
                label: self.label.clone(),
                value,
            })
        }
    }

    /// `Σ_i ‖y_i − y_{i+1}‖`, indices cyclic.
    pub fn perimeter() -> Self {
        Self::new("perimeter", |y: &[Vector]| {
            let m = y.len();
            (0..m).map(|i| (&y[i] - &y[(i + 1) % m]).norm()).sum()
        })
    }

    /// `Σ_i ‖y_i − y_{i+1}‖²`, indices cyclic.
    pub fn cyclic_squared() -> Self {
        Self::new("cyclic2", |y: &[Vector]| {
            let m = y.len();
            (0..m)
                .map(|i| (&y[i] - &y[(i + 1) % m]).norm_squared())
                .sum()
        })
    }

    /// `(1/(2(m−1))) Σ_{i<j} ‖y_i − y_j‖²`.
    pub fn pairwise_squared() -> Self {
        Self::new("pairwise2", |y: &[Vector]| {
            let m = y.len();
            let mut sum = 0.0;
            for i in 0..m {
                for j in i + 1..m {
                    sum += (&y[i] - &y[j]).norm_squared();
                }
            }
            sum / (2.0 * (m as f64 - 1.0))
        })
    }

    pub fn constant() -> Self {
        Self::new("constant", |_: &[Vector]| 0.0)
    }

    /// Product-space norm `sqrt(Σ ‖y_i‖²)`.
    pub fn tuple_norm() -> Self {
        Self::new("norm", |y: &[Vector]| {
            y.iter().map(|b| b.norm_squared()).sum::<f64>().sqrt()
        })
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "perimeter" => Some(Self::perimeter()),
            "cyclic2" => Some(Self::cyclic_squared()),
            "pairwise2" => Some(Self::pairwise_squared()),
            "constant" => Some(Self::constant()),
            "norm" => Some(Self::tuple_norm()),
            _ => None,
        }
    }

    pub fn builtin_suite() -> Vec<Self> {
        vec![
            Self::perimeter(),
            Self::cyclic_squared(),
            Self::pairwise_squared(),
            Self::constant(),
            Self::tuple_norm(),
        ]
    }
}

/// The four links of the loop
/// `Φ(…,z,ρz) < Φ(…,−z,ρz) = Φ(…,−z,−ρz) < Φ(…,z,−ρz) = Φ(…,z,ρz)`,
/// in the order they are checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Link {
    #[serde(rename = "strict-1")]
    Strict1,
    #[serde(rename = "equality-1")]
    Equality1,
    #[serde(rename = "strict-2")]
    Strict2,
    #[serde(rename = "equality-2")]
    Equality2,
}

impl Link {
    pub fn as_str(self) -> &'static str {
        match self {
            Link::Strict1 => "strict-1",
            Link::Equality1 => "equality-1",
            Link::Strict2 => "strict-2",
            Link::Equality2 => "equality-2",
        }
    }
}

pub const VERDICT_FALSIFIED: &str = "candidate falsified";
pub const VERDICT_LOOP_SATISFIED: &str = "loop satisfied (contradiction — check evaluator)";

#[derive(Debug, Clone, Serialize)]
pub struct FalsificationReport {
    pub candidate: String,
    /// Φ at `(…,z,ρz)`, `(…,−z,ρz)`, `(…,−z,−ρz)`, `(…,z,−ρz)`.
    pub chain: [f64; 4],
    pub violated_link: Option<Link>,
    /// For a strict link `Φ_left − Φ_right`; for an equality link the spread
    /// of Φ over the probed sphere points.
    pub gap: f64,
    pub verdict: &'static str,
    #[serde(skip)]
    pub violations: Vec<(Link, f64)>,
}

impl FalsificationReport {
    pub fn falsified(&self) -> bool {
        self.violated_link.is_some()
    }
}

/// Unit vector orthogonal to `z`: with `i` the first index where `z_i ≠ 0`
/// and `j = i + 1` (or `i − 1` when `i` is last), coordinates `i, j` are
/// swapped with a sign change. `None` in dimension one.
pub fn orthogonal_completion(z: &Vector) -> Option<Vector> {
    let d = z.len();
    if d < 2 {
        return None;
    }
    let i = z.iter().position(|&v| v != 0.0)?;
    let j = if i + 1 < d { i + 1 } else { i - 1 };
    let mut w = zeros(d);
    w[i] = -z[j];
    w[j] = z[i];
    let n = w.norm();
    Some(w / n)
}

/// Runs the candidate around the loop on the degenerate families and reports
/// the first link that fails.
pub fn falsify_candidate<R: Rng + ?Sized>(
    candidate: &CandidateFunctional,
    m: usize,
    z: &Vector,
    rho: f64,
    sphere_samples: usize,
    rng: &mut R,
) -> Result<FalsificationReport> {
    check_thm23_inputs(m, z, rho)?;
    if sphere_samples < 2 {
        return Err(Error::InvalidSetting("sphere_samples must be ≥ 2".into()));
    }
    let neg_z = -z;
    let eval = |a: &Vector, b: &Vector| candidate.evaluate(&tail_tuple(m, a, b));
    let rz = z * rho;
    let neg_rz = -&rz;

    let chain = [
        eval(z, &rz)?,
        eval(&neg_z, &rz)?,
        eval(&neg_z, &neg_rz)?,
        eval(z, &neg_rz)?,
    ];

    let perp = orthogonal_completion(z);
    let sphere: Vec<Vector> = match &perp {
        Some(w) => (0..sphere_samples)
            .map(|_| {
                let theta = 2.0 * PI * rng.random::<f64>();
                (z * theta.cos() + w * theta.sin()) * rho
            })
            .collect(),
        None => Vec::new(),
    };

    // spread of Φ(0, …, 0, a, ·) over {ρz, −ρz} ∪ sampled sphere points
    let spread = |a: &Vector, at_plus: f64, at_minus: f64| -> Result<f64> {
        let (mut lo, mut hi) = (at_plus.min(at_minus), at_plus.max(at_minus));
        for w in &sphere {
            let v = eval(a, w)?;
            lo = lo.min(v);
            hi = hi.max(v);
        }
        Ok(hi - lo)
    };
    let equality_tol = |spread_hi: f64| 1e-12 * (1.0 + spread_hi.abs());
    let scale = chain.iter().fold(0.0_f64, |m, v| m.max(v.abs()));

    let mut violations = Vec::new();
    if chain[0] >= chain[1] {
        violations.push((Link::Strict1, chain[0] - chain[1]));
    }
    let s1 = spread(&neg_z, chain[1], chain[2])?;
    if s1 > equality_tol(scale) {
        violations.push((Link::Equality1, s1));
    }
    if chain[2] >= chain[3] {
        violations.push((Link::Strict2, chain[2] - chain[3]));
    }
    let s2 = spread(z, chain[0], chain[3])?;
    if s2 > equality_tol(scale) {
        violations.push((Link::Equality2, s2));
    }

    let (violated_link, gap, verdict) = match violations.first() {
        Some(&(link, gap)) => (Some(link), gap, VERDICT_FALSIFIED),
        None => (None, 0.0, VERDICT_LOOP_SATISFIED),
    };
    Ok(FalsificationReport {
        candidate: candidate.label.clone(),
        chain,
        violated_link,
        gap,
        verdict,
        violations,
    })
}

/// Smooth candidates that can be minimized over the product of the sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SmoothCandidate {
    PairwiseSquared,
    CyclicSquared,
}

impl SmoothCandidate {
    pub fn objective(self, m: usize) -> Result<SmoothObjective> {
        match self {
            SmoothCandidate::PairwiseSquared => SmoothObjective::pairwise_squared(m),
            SmoothCandidate::CyclicSquared => SmoothObjective::cyclic_squared(m),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CandidateGap {
    pub cycle: Cycle,
    pub minimizer: ProductPoint,
    /// `Φ(cycle) − Φ(minimizer)`.
    pub gap: f64,
    /// `max_i ‖ȳ_i − y*_i‖`.
    pub displacement: f64,
}

/// Compares the periodic-projection cycle started at `x0` with the
/// constrained minimizer of the candidate started at `(x0, …, x0)`.
pub fn candidate_gap(
    family: &Family,
    kind: SmoothCandidate,
    x0: &Vector,
    cfg: &SolverConfig,
) -> Result<CandidateGap> {
    let (_, cycle) = run_periodic(family, x0, cfg)?;
    let objective = kind.objective(family.len())?;
    let start = ProductPoint::diagonal(x0, family.len());
    let run = solve_theorem31(family, &objective, &start, cfg)?;
    let cycle_point = ProductPoint::new(cycle.points().to_vec())?;
    let gap = objective.value(&cycle_point)? - run.objective;
    let displacement = cycle_point.max_block_distance(&run.solution);
    debug_assert!(cycle_residual(family, cycle.points())? <= cfg.cycle_tol);
    Ok(CandidateGap {
        cycle,
        minimizer: run.solution,
        gap,
        displacement,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::vector;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn two_step_spiral_by_hand() {
        let spec = SpiralSpec::new(vector(&[0.0, 0.1]), vector(&[1.0, 0.0]), 2).unwrap();
        assert!((spec.alpha() - PI / 2.0).abs() < 1e-15);
        let s = spiral(&spec).unwrap();
        assert!((&s.points[1] - vector(&[0.5, 0.5])).norm() < 1e-15);
        assert!((&s.points[2] - vector(&[0.0, 0.5])).norm() < 1e-15);
        assert!((s.final_norm - 0.5).abs() < 1e-15);
    }

    #[test]
    fn zero_angle_spiral_is_constant() {
        let spec = SpiralSpec::new(vector(&[0.5, 0.5]), vector(&[2.0, 2.0]), 5).unwrap();
        assert_eq!(spec.alpha(), 0.0);
        let s = spiral(&spec).unwrap();
        for p in &s.points {
            assert!((p - vector(&[2.0, 2.0])).norm() < 1e-15);
        }
        assert!((s.final_norm - 8f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn spiral_rejects_degenerate_inputs() {
        let y = vector(&[1.0, 0.0]);
        assert!(matches!(
            SpiralSpec::new(vector(&[0.0, 0.0]), y.clone(), 3),
            Err(Error::DegenerateInput(_))
        ));
        assert!(matches!(
            SpiralSpec::new(vector(&[0.0, 2.0]), y.clone(), 3),
            Err(Error::DegenerateInput(_))
        ));
        assert!(matches!(
            SpiralSpec::new(vector(&[-0.5, 0.0]), y, 3),
            Err(Error::AntipodalAmbiguity)
        ));
    }

    #[test]
    fn thm23_inputs_are_validated() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let z = vector(&[1.0, 0.0]);
        assert!(matches!(
            thm23_families(3, &vector(&[2.0, 0.0]), 2.0, &mut rng),
            Err(Error::InvalidUnitVector { .. })
        ));
        assert!(matches!(
            thm23_families(3, &z, 0.5, &mut rng),
            Err(Error::InvalidRho(_))
        ));
        assert!(matches!(
            thm23_families(2, &z, 2.0, &mut rng),
            Err(Error::TooFewSets { .. })
        ));
    }

    #[test]
    fn thm23_cycles_in_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let fams = thm23_families(4, &vector(&[0.0, 1.0]), 1.5, &mut rng).unwrap();
        let expected: Vec<Vector> = [[0.0, 0.0], [0.0, 0.0], [0.0, 1.0], [0.0, 1.5]]
            .iter()
            .map(|p| vector(p))
            .collect();
        assert_eq!(fams.plus_cycle.points(), expected.as_slice());
        let negated: Vec<Vector> = expected.iter().map(|p| -p).collect();
        assert_eq!(fams.minus_cycle.points(), negated.as_slice());
        assert_eq!(fams.plus_cycle.residual(), 0.0);
        assert!(fams.periodic_agreement <= 1e-10);
    }

    #[test]
    fn perimeter_loop_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let r = falsify_candidate(
            &CandidateFunctional::perimeter(),
            3,
            &vector(&[1.0, 0.0]),
            2.0,
            16,
            &mut rng,
        )
        .unwrap();
        assert_eq!(r.chain, [4.0, 6.0, 4.0, 6.0]);
        assert_eq!(r.violated_link, Some(Link::Equality1));
        assert!((r.gap - 2.0).abs() < 1e-12);
        assert_eq!(r.verdict, VERDICT_FALSIFIED);
    }

    #[test]
    fn constant_fails_both_strict_links() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let r = falsify_candidate(
            &CandidateFunctional::constant(),
            3,
            &vector(&[1.0, 0.0]),
            2.0,
            4,
            &mut rng,
        )
        .unwrap();
        let links: Vec<Link> = r.violations.iter().map(|(l, _)| *l).collect();
        assert_eq!(links, vec![Link::Strict1, Link::Strict2]);
        assert_eq!(r.violated_link, Some(Link::Strict1));
    }

    #[test]
    fn non_finite_candidate_is_an_error() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let bad = CandidateFunctional::new("nan", |_: &[Vector]| f64::NAN);
        assert!(matches!(
            falsify_candidate(&bad, 3, &vector(&[1.0, 0.0]), 2.0, 4, &mut rng),
            Err(Error::EvaluatorFailure { .. })
        ));
    }

    #[test]
    fn orthogonal_completion_rule() {
        let w = orthogonal_completion(&vector(&[0.0, 0.6, 0.8])).unwrap();
        assert_eq!(w, vector(&[0.0, -0.8, 0.6]));
        let w = orthogonal_completion(&vector(&[0.0, 0.0, 1.0])).unwrap();
        assert_eq!(w, vector(&[0.0, 1.0, 0.0]));
        assert!(orthogonal_completion(&vector(&[1.0])).is_none());
    }
}
