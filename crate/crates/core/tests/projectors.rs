mod common;

use common::{ellipse_oracle, random_set, random_vector, v, VARIANTS};
use cyclex::geometry::ConvexSet;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn instance(variant: usize, seed: u64, dim: usize) -> (ConvexSet, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let set = random_set(&mut rng, VARIANTS[variant], dim);
    (set, rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn projection_is_idempotent(variant in 0..8usize, seed: u64, dim in 1..5usize) {
        let (set, mut rng) = instance(variant, seed, dim);
        let x = random_vector(&mut rng, dim, 10.0);
        let p = set.project(&x).unwrap();
        let pp = set.project(&p).unwrap();
        prop_assert!((&pp - &p).norm() <= 1e-12, "{:?}: {} vs {}", set.shape(), pp, p);
    }

    #[test]
    fn projection_is_nonexpansive(variant in 0..8usize, seed: u64, dim in 1..5usize) {
        let (set, mut rng) = instance(variant, seed, dim);
        let x = random_vector(&mut rng, dim, 10.0);
        let y = random_vector(&mut rng, dim, 10.0);
        let d = (set.project(&x).unwrap() - set.project(&y).unwrap()).norm();
        prop_assert!(d <= (&x - &y).norm() + 1e-12);
    }

    #[test]
    fn projection_satisfies_variational_inequality(variant in 0..8usize, seed: u64, dim in 1..5usize) {
        let (set, mut rng) = instance(variant, seed, dim);
        let x = random_vector(&mut rng, dim, 10.0);
        let p = set.project(&x).unwrap();
        prop_assert!(set.contains(&p, 1e-10).unwrap());
        for _ in 0..20 {
            let c = set.sample_point(&mut rng, 10.0);
            prop_assert!((&x - &p).dot(&(c - &p)) <= 1e-10);
        }
    }

    #[test]
    fn min_norm_point_matches_projection_of_zero(variant in 0..8usize, seed: u64, dim in 1..5usize) {
        let (set, _) = instance(variant, seed, dim);
        prop_assert_eq!(set.min_norm_point().unwrap(), set.project(&cyclex::geometry::zeros(dim)).unwrap());
    }
}

#[test]
fn ellipse_projection_matches_boundary_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let c = random_vector(&mut rng, 2, 3.0);
        let axes = [
            0.2 + 2.8 * rand::Rng::random::<f64>(&mut rng),
            0.2 + 2.8 * rand::Rng::random::<f64>(&mut rng),
        ];
        let x = random_vector(&mut rng, 2, 8.0);
        let set = ConvexSet::ellipsoid(c.clone(), v(&axes)).unwrap();
        let p = set.project(&x).unwrap();
        let q = ellipse_oracle([c[0], c[1]], axes, [x[0], x[1]]);
        assert!((p - v(&q)).norm() <= 1e-8, "axes {axes:?} x {x}");
    }
}

#[test]
fn ellipsoid_handles_flat_and_offaxis_inputs() {
    let set = ConvexSet::ellipsoid(v(&[0.0, 0.0, 0.0]), v(&[5.0, 1e-3, 1.0])).unwrap();
    for x in [
        v(&[0.0, 10.0, 0.0]),
        v(&[7.0, 1e-9, 0.0]),
        v(&[1e6, -1e6, 3.0]),
    ] {
        let p = set.project(&x).unwrap();
        let level = (p[0] / 5.0).powi(2) + (p[1] / 1e-3).powi(2) + p[2].powi(2);
        assert!((level - 1.0).abs() < 1e-9, "{x}: level {level}");
    }
}

#[test]
fn projection_through_descriptor_json() {
    let set: ConvexSet = serde_json::from_str(r#"{"type":"ray","direction":[1,1]}"#).unwrap();
    assert_eq!(set.project(&v(&[2.0, 0.0])).unwrap(), v(&[1.0, 1.0]));
    assert_eq!(set.project(&v(&[-2.0, 0.0])).unwrap(), v(&[0.0, 0.0]));
    let set: ConvexSet =
        serde_json::from_str(r#"{"type":"box","lower":[0,0],"upper":[1,2]}"#).unwrap();
    assert_eq!(set.project(&v(&[3.0, -1.0])).unwrap(), v(&[1.0, 0.0]));
}
