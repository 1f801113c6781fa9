mod common;

use proptest::prelude::*;
use quadric_ga::oracle::{self, PluckerLine, QuadricMatrix};
use quadric_ga::{EuclideanPoint, Error, QuadricCoefficients};

#[test]
fn transformed_quadric_contains_moved_points() {
    let mut rng = common::rng(51);
    for _ in 0..100 {
        let (q, p) = common::quadric_through(&mut rng);
        let axis = common::direction(&mut rng);
        let r = oracle::rotation_about(axis, 0.9).unwrap();
        let t = [0.3, -0.2, 1.1];
        let moved = oracle::transform(&q, &r, t).unwrap();
        let image = oracle::apply_rigid(&r, t, p);
        assert!(moved.eval(image).abs() < 1e-10);
    }
}

#[test]
fn non_orthonormal_maps_are_rejected() {
    let q = QuadricCoefficients::unit_sphere();
    let shear = [[1.0, 0.5, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    assert_eq!(oracle::transform(&q, &shear, [0.0; 3]), Err(Error::NotOrthonormal));
}

#[test]
fn intersections_lie_on_both() {
    let mut rng = common::rng(52);
    for _ in 0..200 {
        let (q, line) = common::quadric_and_secant(&mut rng);
        for h in oracle::intersect_line(&q, &line).unwrap() {
            assert!(q.eval(h).abs() < 1e-9 * q.eval_scale(h).max(1.0));
            assert!(line.distance_to(h) < 1e-9);
        }
    }
    let sphere = QuadricCoefficients::unit_sphere();
    let miss = PluckerLine::through(EuclideanPoint::new(0.0, 0.0, 2.0), [1.0, 0.0, 0.0]).unwrap();
    assert!(oracle::intersect_line(&sphere, &miss).unwrap().is_empty());
    let touch = PluckerLine::through(EuclideanPoint::new(0.0, 0.0, 1.0), [1.0, 0.0, 0.0]).unwrap();
    assert_eq!(oracle::intersect_line(&sphere, &touch).unwrap().len(), 1);
}

#[test]
fn least_squares_fit_uses_all_points() {
    let mut rng = common::rng(53);
    let q = common::quadric(&mut rng);
    let pts = common::points_on(&mut rng, &q, 30);
    let fit = oracle::fit_points(&pts).unwrap();
    assert!(fit.canonical_distance(&q).unwrap() < 1e-8);
}

proptest! {
    #[test]
    fn matrix_form_round_trips(c in prop::array::uniform10(-5.0..5.0f64), p in prop::array::uniform3(-3.0..3.0f64)) {
        let q = QuadricCoefficients::from_array(c);
        let m = QuadricMatrix::from_coefficients(&q);
        prop_assert_eq!(m.to_coefficients(), q);
        let p = EuclideanPoint::from_array(p);
        prop_assert!((m.eval(p) - q.eval(p)).abs() < 1e-10 * q.eval_scale(p).max(1.0));
    }

    #[test]
    fn canonical_form_is_projective(c in prop::array::uniform10(-5.0..5.0f64), s in prop_oneof![-100.0..-0.01f64, 0.01..100.0f64]) {
        let q = QuadricCoefficients::from_array(c);
        prop_assume!(!q.is_zero());
        let a = q.canonical().unwrap();
        prop_assert!(q.scale(s).canonical_distance(&q).unwrap() < 1e-12);
        prop_assert!(a.canonical_distance(&a.canonical().unwrap()).unwrap() < 1e-15);
        let norm: f64 = a.to_array().iter().map(|v| v * v).sum();
        prop_assert!((norm - 1.0).abs() < 1e-12);
    }
}
