//! Random instance generators and independent oracles shared by the
//! integration suites. Nothing here calls the solvers under test.
#![allow(dead_code)]

use cyclex::geometry::{vector, ConvexSet, Vector};
use cyclex::ProductPoint;
use rand::Rng;

pub const VARIANTS: [&str; 8] = [
    "singleton",
    "segment",
    "ray",
    "ball",
    "box",
    "halfspace",
    "affine",
    "ellipsoid",
];

pub fn random_vector<R: Rng>(rng: &mut R, dim: usize, scale: f64) -> Vector {
    Vector::from_fn(dim, |_, _| scale * (2.0 * rng.random::<f64>() - 1.0))
}

pub fn random_unit<R: Rng>(rng: &mut R, dim: usize) -> Vector {
    loop {
        let v = random_vector(rng, dim, 1.0);
        let n = v.norm();
        if n > 1e-3 {
            return v / n;
        }
    }
}

/// Orthonormal family of `k` vectors by twice-applied Gram–Schmidt.
pub fn random_orthonormal<R: Rng>(rng: &mut R, dim: usize, k: usize) -> Vec<Vector> {
    let mut basis: Vec<Vector> = Vec::new();
    while basis.len() < k {
        let mut v = random_vector(rng, dim, 1.0);
        for _ in 0..2 {
            for e in &basis {
                let c = v.dot(e);
                v -= e * c;
            }
        }
        let n = v.norm();
        if n > 1e-3 {
            basis.push(v / n);
        }
    }
    basis
}

pub fn random_set<R: Rng>(rng: &mut R, variant: &str, dim: usize) -> ConvexSet {
    match variant {
        "singleton" => ConvexSet::singleton(random_vector(rng, dim, 3.0)),
        "segment" => ConvexSet::segment(random_vector(rng, dim, 3.0), random_vector(rng, dim, 3.0)),
        "ray" => ConvexSet::ray(random_unit(rng, dim) * (0.1 + 2.0 * rng.random::<f64>())),
        "ball" => ConvexSet::ball(random_vector(rng, dim, 3.0), 3.0 * rng.random::<f64>()),
        "box" => {
            let lower = random_vector(rng, dim, 3.0);
            let upper = lower.map(|l| l + 3.0 * rng.random::<f64>());
            ConvexSet::boxed(lower, upper)
        }
        "halfspace" => ConvexSet::halfspace(
            random_unit(rng, dim) * (0.5 + rng.random::<f64>()),
            2.0 * rng.random::<f64>() - 1.0,
        ),
        "affine" => {
            let k = rng.random_range(0..=dim);
            ConvexSet::affine(
                random_vector(rng, dim, 3.0),
                random_orthonormal(rng, dim, k),
            )
        }
        "ellipsoid" => ConvexSet::ellipsoid(
            random_vector(rng, dim, 3.0),
            Vector::from_fn(dim, |_, _| 0.2 + 2.8 * rng.random::<f64>()),
        ),
        other => panic!("unknown variant {other}"),
    }
    .expect("generated descriptor is valid")
}

/// Nearest point of the axis-aligned ellipse `c + (a cos θ, b sin θ)` to
/// `x`, by a dense scan of θ, golden-section refinement, and a final
/// bisection on `d/dθ ‖p(θ) − x‖²` inside the golden-section bracket.
/// Returns `x` itself when it lies inside the ellipse.
pub fn ellipse_oracle(center: [f64; 2], axes: [f64; 2], x: [f64; 2]) -> [f64; 2] {
    let [cx, cy] = center;
    let [a, b] = axes;
    let (dx, dy) = (x[0] - cx, x[1] - cy);
    if (dx / a).powi(2) + (dy / b).powi(2) <= 1.0 {
        return x;
    }
    let dist2 = |t: f64| (a * t.cos() - dx).powi(2) + (b * t.sin() - dy).powi(2);
    let slope = |t: f64| {
        // half the derivative of dist2
        -(a * t.cos() - dx) * a * t.sin() + (b * t.sin() - dy) * b * t.cos()
    };
    let grid = 4096;
    let step = std::f64::consts::TAU / grid as f64;
    let best = (0..grid)
        .map(|k| k as f64 * step)
        .min_by(|s, t| dist2(*s).total_cmp(&dist2(*t)))
        .unwrap();
    let (mut lo, mut hi) = (best - step, best + step);
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let m1 = hi - phi * (hi - lo);
        let m2 = lo + phi * (hi - lo);
        if dist2(m1) < dist2(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
        if hi - lo < 1e-7 {
            break;
        }
    }
    let (mut lo, mut hi) = (lo - 1e-6, hi + 1e-6);
    let mut theta = 0.5 * (lo + hi);
    if slope(lo) < 0.0 && slope(hi) > 0.0 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if slope(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        theta = 0.5 * (lo + hi);
    }
    [cx + a * theta.cos(), cy + b * theta.sin()]
}

/// Root of a continuous `f` with `f(lo) ≤ 0 ≤ f(hi)`.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    assert!(f(lo) <= 0.0 && f(hi) >= 0.0, "root not bracketed");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Central-difference gradient of a scalar function of a product point.
pub fn fd_gradient(f: impl Fn(&ProductPoint) -> f64, y: &ProductPoint, h: f64) -> ProductPoint {
    let blocks = y.blocks();
    let mut out = Vec::with_capacity(blocks.len());
    for i in 0..blocks.len() {
        let mut g = Vector::zeros(blocks[i].len());
        for k in 0..blocks[i].len() {
            let shifted = |delta: f64| {
                let mut b = blocks.to_vec();
                b[i][k] += delta;
                f(&ProductPoint::new(b).unwrap())
            };
            g[k] = (shifted(h) - shifted(-h)) / (2.0 * h);
        }
        out.push(g);
    }
    ProductPoint::new(out).unwrap()
}

/// `Σ_i ‖y_i − y_{i+1}‖²`, written out independently of the library.
pub fn cyclic_squared_sum(y: &ProductPoint) -> f64 {
    let b = y.blocks();
    let m = b.len();
    (0..m)
        .map(|i| (&b[i] - &b[(i + 1) % m]).norm_squared())
        .sum()
}

pub fn v(c: &[f64]) -> Vector {
    vector(c)
}

/// Minimal pass/fail ledger printed by the acceptance suite.
#[derive(Default)]
pub struct Ledger {
    pub lines: Vec<(bool, String)>,
}

impl Ledger {
    pub fn record(&mut self, name: &str, result: Result<String, String>) {
        let (ok, line) = match result {
            Ok(detail) => (true, format!("PASS  {name}: {detail}")),
            Err(detail) => (false, format!("FAIL  {name}: {detail}")),
        };
        println!("{line}");
        self.lines.push((ok, line));
    }
}
