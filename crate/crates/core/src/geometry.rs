//! Points of a finite-dimensional Euclidean space and exact projectors onto
//! a catalog of nonempty closed convex sets.

use nalgebra::DVector;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the working space.
pub type Vector = DVector<f64>;

const ORTHONORMAL_TOL: f64 = 1e-12;
const ELLIPSOID_TOL: f64 = 1e-13;
const ELLIPSOID_MAX_ITERS: usize = 200;

pub fn vector(coords: &[f64]) -> Vector {
    DVector::from_row_slice(coords)
}

pub fn zeros(dim: usize) -> Vector {
    DVector::zeros(dim)
}

pub(crate) fn ensure_finite(x: &Vector, what: &'static str) -> Result<()> {
    if x.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

fn ensure_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Variant data of a [`ConvexSet`].
#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Singleton {
        point: Vector,
    },
    Segment {
        a: Vector,
        b: Vector,
    },
    /// `{ t u : t ≥ 0 }`, anchored at the origin.
    Ray {
        direction: Vector,
    },
    Ball {
        center: Vector,
        radius: f64,
    },
    Box {
        lower: Vector,
        upper: Vector,
    },
    /// `{ y : <normal, y> ≤ offset }`.
    Halfspace {
        normal: Vector,
        offset: f64,
    },
    /// `anchor + span(basis)`, with an orthonormal basis.
    Affine {
        anchor: Vector,
        basis: Vec<Vector>,
    },
    /// Axis-aligned: `{ y : Σ ((y_k - c_k) / a_k)² ≤ 1 }`.
    Ellipsoid {
        center: Vector,
        axes: Vector,
    },
}

/// A validated nonempty closed convex subset of `R^dim`.
///
/// Values are immutable once built; every constructor checks the invariants
/// of its variant.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexSet {
    shape: Shape,
    dim: usize,
}

impl ConvexSet {
    pub fn singleton(point: Vector) -> Result<Self> {
        ensure_finite(&point, "point")?;
        Self::with_dim(Shape::Singleton { point })
    }

    pub fn segment(a: Vector, b: Vector) -> Result<Self> {
        ensure_finite(&a, "a")?;
        ensure_finite(&b, "b")?;
        ensure_dim(a.len(), b.len())?;
        Self::with_dim(Shape::Segment { a, b })
    }

    pub fn ray(direction: Vector) -> Result<Self> {
        ensure_finite(&direction, "direction")?;
        if direction.norm() == 0.0 {
            return Err(Error::InvalidSet {
                field: "direction",
                reason: "must be nonzero".into(),
            });
        }
        Self::with_dim(Shape::Ray { direction })
    }

    pub fn ball(center: Vector, radius: f64) -> Result<Self> {
        ensure_finite(&center, "center")?;
        if !radius.is_finite() || radius < 0.0 {
            return Err(Error::InvalidSet {
                field: "radius",
                reason: "must be ≥ 0".into(),
            });
        }
        Self::with_dim(Shape::Ball { center, radius })
    }

    pub fn boxed(lower: Vector, upper: Vector) -> Result<Self> {
        ensure_finite(&lower, "lower")?;
        ensure_finite(&upper, "upper")?;
        ensure_dim(lower.len(), upper.len())?;
        if lower.iter().zip(upper.iter()).any(|(l, u)| l > u) {
            return Err(Error::InvalidSet {
                field: "lower",
                reason: "must be ≤ upper componentwise".into(),
            });
        }
        Self::with_dim(Shape::Box { lower, upper })
    }

    pub fn halfspace(normal: Vector, offset: f64) -> Result<Self> {
        ensure_finite(&normal, "normal")?;
        if normal.norm() == 0.0 {
            return Err(Error::InvalidSet {
                field: "normal",
                reason: "must be nonzero".into(),
            });
        }
        if !offset.is_finite() {
            return Err(Error::InvalidSet {
                field: "offset",
                reason: "must be finite".into(),
            });
        }
        Self::with_dim(Shape::Halfspace { normal, offset })
    }

    pub fn affine(anchor: Vector, basis: Vec<Vector>) -> Result<Self> {
        ensure_finite(&anchor, "anchor")?;
        for (i, e) in basis.iter().enumerate() {
            ensure_finite(e, "basis")?;
            ensure_dim(anchor.len(), e.len())?;
            for (j, f) in basis.iter().enumerate().take(i + 1) {
                let expected = if i == j { 1.0 } else { 0.0 };
                if (e.dot(f) - expected).abs() > ORTHONORMAL_TOL {
                    return Err(Error::InvalidSet {
                        field: "basis",
                        reason: "must be orthonormal".into(),
                    });
                }
            }
        }
        Self::with_dim(Shape::Affine { anchor, basis })
    }

    pub fn ellipsoid(center: Vector, axes: Vector) -> Result<Self> {
        ensure_finite(&center, "center")?;
        ensure_finite(&axes, "axes")?;
        ensure_dim(center.len(), axes.len())?;
        if axes.iter().any(|&a| a <= 0.0) {
            return Err(Error::InvalidSet {
                field: "axes",
                reason: "must be > 0".into(),
            });
        }
        Self::with_dim(Shape::Ellipsoid { center, axes })
    }

    /// The whole space, written as an affine subspace spanned by the
    /// canonical basis.
    pub fn whole_space(dim: usize) -> Result<Self> {
        let basis = (0..dim)
            .map(|k| {
                let mut e = zeros(dim);
                e[k] = 1.0;
                e
            })
            .collect();
        Self::affine(zeros(dim), basis)
    }

    fn with_dim(shape: Shape) -> Result<Self> {
        let dim = match &shape {
            Shape::Singleton { point } => point.len(),
            Shape::Segment { a, .. } => a.len(),
            Shape::Ray { direction } => direction.len(),
            Shape::Ball { center, .. } => center.len(),
            Shape::Box { lower, .. } => lower.len(),
            Shape::Halfspace { normal, .. } => normal.len(),
            Shape::Affine { anchor, .. } => anchor.len(),
            Shape::Ellipsoid { center, .. } => center.len(),
        };
        if dim == 0 {
            return Err(Error::InvalidSet {
                field: "dimension",
                reason: "must be positive".into(),
            });
        }
        Ok(Self { shape, dim })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_bounded(&self) -> bool {
        match &self.shape {
            Shape::Singleton { .. }
            | Shape::Segment { .. }
            | Shape::Ball { .. }
            | Shape::Box { .. }
            | Shape::Ellipsoid { .. } => true,
            Shape::Affine { basis, .. } => basis.is_empty(),
            Shape::Ray { .. } | Shape::Halfspace { .. } => false,
        }
    }

    /// Nearest point of the set to `x`.
    pub fn project(&self, x: &Vector) -> Result<Vector> {
        ensure_dim(self.dim, x.len())?;
        ensure_finite(x, "point")?;
        Ok(match &self.shape {
            Shape::Singleton { point } => point.clone(),
            Shape::Segment { a, b } => project_segment(a, b, x),
            Shape::Ray { direction } => {
                let t = x.dot(direction) / direction.norm_squared();
                if t > 0.0 {
                    direction * t
                } else {
                    zeros(self.dim)
                }
            }
            Shape::Ball { center, radius } => {
                let d = x - center;
                let dist = d.norm();
                if dist <= *radius {
                    x.clone()
                } else {
                    center + d * (*radius / dist)
                }
            }
            Shape::Box { lower, upper } => x.zip_zip_map(lower, upper, |v, l, u| v.clamp(l, u)),
            Shape::Halfspace { normal, offset } => {
                let excess = normal.dot(x) - offset;
                if excess <= 0.0 {
                    x.clone()
                } else {
                    x - normal * (excess / normal.norm_squared())
                }
            }
            Shape::Affine { anchor, basis } => {
                let d = x - anchor;
                basis
                    .iter()
                    .fold(anchor.clone(), |acc, e| acc + e * e.dot(&d))
            }
            Shape::Ellipsoid { center, axes } => project_ellipsoid(center, axes, x)?,
        })
    }

    /// Element of minimal norm, i.e. the projection of the origin.
    pub fn min_norm_point(&self) -> Result<Vector> {
        self.project(&zeros(self.dim))
    }

    /// True iff `x` lies within distance `tol` of the set.
    pub fn contains(&self, x: &Vector, tol: f64) -> Result<bool> {
        let p = self.project(x)?;
        Ok((x - p).norm() <= tol)
    }

    pub fn distance(&self, x: &Vector) -> Result<f64> {
        Ok((x - self.project(x)?).norm())
    }

    /// Draws a member of the set. Unbounded directions are sampled within
    /// `scale` of the set's anchor.
    pub fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R, scale: f64) -> Vector {
        let dim = self.dim;
        match &self.shape {
            Shape::Singleton { point } => point.clone(),
            Shape::Segment { a, b } => {
                let t: f64 = rng.random();
                a + (b - a) * t
            }
            Shape::Ray { direction } => {
                direction * (rng.random::<f64>() * scale / direction.norm())
            }
            Shape::Ball { center, radius } => center + unit_ball_sample(rng, dim) * *radius,
            Shape::Box { lower, upper } => {
                lower.zip_map(upper, |l, u| l + (u - l) * rng.random::<f64>())
            }
            Shape::Halfspace { .. } => {
                let y = cube_sample(rng, dim) * scale;
                // projection of any point is a member
                self.project(&y).expect("sample has the set's dimension")
            }
            Shape::Affine { anchor, basis } => basis.iter().fold(anchor.clone(), |acc, e| {
                acc + e * (scale * (2.0 * rng.random::<f64>() - 1.0))
            }),
            Shape::Ellipsoid { center, axes } => {
                center + unit_ball_sample(rng, dim).component_mul(axes)
            }
        }
    }

    pub fn descriptor(&self) -> SetDescriptor {
        let v = |x: &Vector| x.iter().copied().collect::<Vec<_>>();
        match &self.shape {
            Shape::Singleton { point } => SetDescriptor::Singleton { point: v(point) },
            Shape::Segment { a, b } => SetDescriptor::Segment { a: v(a), b: v(b) },
            Shape::Ray { direction } => SetDescriptor::Ray {
                direction: v(direction),
            },
            Shape::Ball { center, radius } => SetDescriptor::Ball {
                center: v(center),
                radius: *radius,
            },
            Shape::Box { lower, upper } => SetDescriptor::Box {
                lower: v(lower),
                upper: v(upper),
            },
            Shape::Halfspace { normal, offset } => SetDescriptor::Halfspace {
                normal: v(normal),
                offset: *offset,
            },
            Shape::Affine { anchor, basis } => SetDescriptor::Affine {
                anchor: v(anchor),
                basis: basis.iter().map(v).collect(),
            },
            Shape::Ellipsoid { center, axes } => SetDescriptor::Ellipsoid {
                center: v(center),
                axes: v(axes),
            },
        }
    }
}

fn project_segment(a: &Vector, b: &Vector, x: &Vector) -> Vector {
    let ab = b - a;
    let len2 = ab.norm_squared();
    if len2 == 0.0 {
        return a.clone();
    }
    let t = (x - a).dot(&ab) / len2;
    if t <= 0.0 {
        a.clone()
    } else if t >= 1.0 {
        b.clone()
    } else {
        a + ab * t
    }
}

/// Safeguarded Newton on the secular equation
/// `f(μ) = Σ (a_k d_k / (a_k² + μ))² − 1 = 0`, `d = x − c`.
///
/// `f` is convex and decreasing on `[0, ∞)`, so Newton from the left never
/// overshoots the root; bisection covers the remaining cases.
fn project_ellipsoid(center: &Vector, axes: &Vector, x: &Vector) -> Result<Vector> {
    let d = x - center;
    let level: f64 = d
        .iter()
        .zip(axes.iter())
        .map(|(dk, ak)| (dk / ak).powi(2))
        .sum();
    if level <= 1.0 {
        return Ok(x.clone());
    }

    let secular = |mu: f64| -> (f64, f64) {
        let mut f = -1.0;
        let mut df = 0.0;
        for (dk, ak) in d.iter().zip(axes.iter()) {
            let a2 = ak * ak;
            let denom = a2 + mu;
            let r = ak * dk / denom;
            f += r * r;
            df -= 2.0 * r * r / denom;
        }
        (f, df)
    };

    let a_max = axes.iter().fold(0.0_f64, |m, &a| m.max(a));
    let mut lo = 0.0;
    let mut hi = d.norm() * a_max;
    let mut mu = 0.0;
    let mut residual = f64::INFINITY;
    let mut solved = false;
    for _ in 0..ELLIPSOID_MAX_ITERS {
        let (f, df) = secular(mu);
        residual = f.abs();
        if residual <= ELLIPSOID_TOL {
            solved = true;
            break;
        }
        if f > 0.0 {
            lo = mu;
        } else {
            hi = mu;
        }
        if hi - lo <= f64::EPSILON * hi {
            solved = true;
            break;
        }
        let newton = mu - f / df;
        mu = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    if !solved {
        return Err(Error::EllipsoidNewtonFailure {
            iterations: ELLIPSOID_MAX_ITERS,
            residual,
        });
    }
    Ok(center
        + d.zip_map(axes, |dk, ak| {
            let a2 = ak * ak;
            a2 * dk / (a2 + mu)
        }))
}

fn cube_sample<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vector {
    DVector::from_fn(dim, |_, _| 2.0 * rng.random::<f64>() - 1.0)
}

/// Uniform sample of the closed unit ball, by rejection from the cube.
fn unit_ball_sample<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vector {
    if dim > 8 {
        // rejection gets expensive; radial scaling of a cube direction is
        // not uniform but still lands in the ball
        let v = cube_sample(rng, dim);
        let n = v.norm();
        return if n == 0.0 {
            v
        } else {
            v * (rng.random::<f64>() / n)
        };
    }
    loop {
        let v = cube_sample(rng, dim);
        if v.norm_squared() <= 1.0 {
            return v;
        }
    }
}

/// Ordered list of at least two convex sets sharing one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Family {
    sets: Vec<ConvexSet>,
    dim: usize,
}

impl Family {
    pub fn new(sets: Vec<ConvexSet>) -> Result<Self> {
        if sets.len() < 2 {
            return Err(Error::TooFewSets {
                min: 2,
                found: sets.len(),
            });
        }
        let dim = sets[0].dim();
        for s in &sets[1..] {
            ensure_dim(dim, s.dim())?;
        }
        Ok(Self { sets, dim })
    }

    pub fn sets(&self) -> &[ConvexSet] {
        &self.sets
    }

    pub fn set(&self, i: usize) -> &ConvexSet {
        &self.sets[i]
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn has_bounded_member(&self) -> bool {
        self.sets.iter().any(ConvexSet::is_bounded)
    }

    /// Same sets, reordered so that position `i` holds `self.set(perm[i])`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.len())?;
        Self::new(perm.iter().map(|&i| self.sets[i].clone()).collect())
    }
}

pub(crate) fn check_permutation(perm: &[usize], m: usize) -> Result<()> {
    if perm.len() != m {
        return Err(Error::InvalidOrder(format!(
            "expected {m} indices, got {}",
            perm.len()
        )));
    }
    let mut seen = vec![false; m];
    for &i in perm {
        if i >= m || seen[i] {
            return Err(Error::InvalidOrder(format!(
                "{perm:?} is not a permutation of 0..{m}"
            )));
        }
        seen[i] = true;
    }
    Ok(())
}

/// JSON form of a [`ConvexSet`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum SetDescriptor {
    Ball {
        center: Vec<f64>,
        radius: f64,
    },
    Segment {
        a: Vec<f64>,
        b: Vec<f64>,
    },
    Singleton {
        point: Vec<f64>,
    },
    Halfspace {
        normal: Vec<f64>,
        offset: f64,
    },
    Box {
        lower: Vec<f64>,
        upper: Vec<f64>,
    },
    Affine {
        anchor: Vec<f64>,
        basis: Vec<Vec<f64>>,
    },
    Ellipsoid {
        center: Vec<f64>,
        axes: Vec<f64>,
    },
    Ray {
        direction: Vec<f64>,
    },
}

impl TryFrom<SetDescriptor> for ConvexSet {
    type Error = Error;

    fn try_from(desc: SetDescriptor) -> Result<Self> {
        let v = |x: &[f64]| vector(x);
        match desc {
            SetDescriptor::Ball { center, radius } => ConvexSet::ball(v(&center), radius),
            SetDescriptor::Segment { a, b } => ConvexSet::segment(v(&a), v(&b)),
            SetDescriptor::Singleton { point } => ConvexSet::singleton(v(&point)),
            SetDescriptor::Halfspace { normal, offset } => ConvexSet::halfspace(v(&normal), offset),
            SetDescriptor::Box { lower, upper } => ConvexSet::boxed(v(&lower), v(&upper)),
            SetDescriptor::Affine { anchor, basis } => {
                ConvexSet::affine(v(&anchor), basis.iter().map(|e| v(e)).collect())
            }
            SetDescriptor::Ellipsoid { center, axes } => ConvexSet::ellipsoid(v(&center), v(&axes)),
            SetDescriptor::Ray { direction } => ConvexSet::ray(v(&direction)),
        }
    }
}

impl Serialize for ConvexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.descriptor().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConvexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let desc = SetDescriptor::deserialize(d)?;
        ConvexSet::try_from(desc).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> Vector {
        vector(c)
    }

    #[test]
    fn ball_projection_scales_radially() {
        let ball = ConvexSet::ball(v(&[0.0, 0.0]), 1.0).unwrap();
        assert_eq!(ball.project(&v(&[2.0, 0.0])).unwrap(), v(&[1.0, 0.0]));
    }

    #[test]
    fn halfspace_projection_drops_perpendicular() {
        let h = ConvexSet::halfspace(v(&[0.0, 1.0]), 1.0).unwrap();
        assert_eq!(h.project(&v(&[0.0, 2.0])).unwrap(), v(&[0.0, 1.0]));
    }

    #[test]
    fn segment_projection_of_origin_is_chord_foot() {
        let s = ConvexSet::segment(v(&[1.0, 0.0]), v(&[0.5, 0.5])).unwrap();
        let p = s.project(&v(&[0.0, 0.0])).unwrap();
        assert!((p - v(&[0.5, 0.5])).norm() < 1e-15);
    }

    #[test]
    fn ellipsoid_projection_on_principal_axis() {
        let e = ConvexSet::ellipsoid(v(&[0.0, 0.0]), v(&[2.0, 1.0])).unwrap();
        let p = e.project(&v(&[4.0, 0.0])).unwrap();
        assert!((p - v(&[2.0, 0.0])).norm() < 1e-12);
    }

    #[test]
    fn ellipsoid_projection_lands_on_boundary() {
        let e = ConvexSet::ellipsoid(v(&[1.0, -1.0, 0.5]), v(&[3.0, 0.5, 1.0])).unwrap();
        let p = e.project(&v(&[10.0, 4.0, -3.0])).unwrap();
        let level = ((p[0] - 1.0) / 3.0).powi(2)
            + ((p[1] + 1.0) / 0.5).powi(2)
            + ((p[2] - 0.5) / 1.0).powi(2);
        assert!((level - 1.0).abs() < 1e-12);
    }

    #[test]
    fn min_norm_points() {
        let s = ConvexSet::singleton(v(&[3.0, 4.0])).unwrap();
        assert_eq!(s.min_norm_point().unwrap(), v(&[3.0, 4.0]));
        let seg = ConvexSet::segment(v(&[-1.0, 2.0]), v(&[1.0, 2.0])).unwrap();
        assert_eq!(seg.min_norm_point().unwrap(), v(&[0.0, 2.0]));
        let ball = ConvexSet::ball(v(&[3.0, 4.0]), 1.0).unwrap();
        let p = ball.min_norm_point().unwrap();
        assert!((p - v(&[2.4, 3.2])).norm() < 1e-15);
    }

    #[test]
    fn min_norm_point_is_projection_of_zero() {
        let e = ConvexSet::ellipsoid(v(&[3.0, 1.0]), v(&[1.0, 2.0])).unwrap();
        assert_eq!(e.min_norm_point().unwrap(), e.project(&zeros(2)).unwrap());
    }

    #[test]
    fn containment() {
        let ball = ConvexSet::ball(v(&[0.0, 0.0]), 1.0).unwrap();
        assert!(ball.contains(&v(&[1.0, 0.0]), 0.0).unwrap());
        assert!(!ball.contains(&v(&[1.5, 0.0]), 0.1).unwrap());
        let h = ConvexSet::halfspace(v(&[1.0, 0.0]), 0.0).unwrap();
        assert!(h.contains(&v(&[-2.0, 7.0]), 0.0).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let ball = ConvexSet::ball(v(&[0.0, 0.0]), 1.0).unwrap();
        assert!(matches!(
            ball.project(&v(&[1.0, 2.0, 3.0])),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        ));
    }

    #[test]
    fn non_finite_input_is_rejected() {
        let ball = ConvexSet::ball(v(&[0.0, 0.0]), 1.0).unwrap();
        assert!(matches!(
            ball.project(&v(&[f64::NAN, 0.0])),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn invalid_descriptors() {
        assert_eq!(
            ConvexSet::ball(v(&[0.0]), -1.0).unwrap_err().to_string(),
            "radius must be ≥ 0"
        );
        assert!(ConvexSet::ray(v(&[0.0, 0.0])).is_err());
        assert!(ConvexSet::halfspace(v(&[0.0, 0.0]), 1.0).is_err());
        assert!(ConvexSet::boxed(v(&[1.0, 0.0]), v(&[0.0, 1.0])).is_err());
        assert!(ConvexSet::affine(v(&[0.0, 0.0]), vec![v(&[1.0, 0.0]), v(&[1.0, 1.0])]).is_err());
        assert!(ConvexSet::ellipsoid(v(&[0.0, 0.0]), v(&[1.0, 0.0])).is_err());
    }

    #[test]
    fn descriptor_json_shape() {
        let json = r#"{"type":"affine","anchor":[0,1],"basis":[[1,0]]}"#;
        let set: ConvexSet = serde_json::from_str(json).unwrap();
        assert_eq!(set.project(&v(&[3.0, 5.0])).unwrap(), v(&[3.0, 1.0]));
        let back = serde_json::to_string(&set).unwrap();
        assert_eq!(
            back,
            r#"{"type":"affine","anchor":[0.0,1.0],"basis":[[1.0,0.0]]}"#
        );
        let bad = serde_json::from_str::<ConvexSet>(r#"{"type":"ball","center":[0],"radius":-2}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn family_requires_common_dimension() {
        let a = ConvexSet::ball(v(&[0.0, 0.0]), 1.0).unwrap();
        let b = ConvexSet::ball(v(&[0.0, 0.0, 0.0]), 1.0).unwrap();
        assert!(Family::new(vec![a.clone()]).is_err());
        assert!(Family::new(vec![a, b]).is_err());
    }
}
