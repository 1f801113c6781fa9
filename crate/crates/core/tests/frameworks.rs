//! Random-trial invariants of the three frameworks against the oracle.

mod common;

use proptest::prelude::*;
use quadric_ga::dcga::Dcga;
use quadric_ga::dpga::{Dpga, RotorGenerator};
use quadric_ga::oracle::{self, Monomial, PluckerLine};
use quadric_ga::qcga::{FitPath, Qcga};
use quadric_ga::{EuclideanPoint, Multivector, QuadricCoefficients};
use rand::Rng;

fn rel(got: f64, want: f64, scale: f64) -> f64 {
    (got - want).abs() / scale.max(1.0)
}

#[test]
fn membership_matches_oracle() {
    let (dc, dp, qc) = (Dcga::new(), Dpga::new(), Qcga::new());
    let mut rng = common::rng(31);
    for _ in 0..300 {
        let q = common::quadric(&mut rng);
        let p = common::point(&mut rng, 3.0);
        let want = q.eval(p);
        let s = q.eval_scale(p);
        let a = dc.contains(&dc.quadric_from_coefficients(&q), &dc.embed_point(p)).unwrap();
        let b = dp.eval_membership(&dp.quadric_from_coefficients(&q), p).unwrap();
        let c = qc.eval_membership(&qc.dual_quadric_from_coefficients(&q), p).unwrap();
        for v in [a, b, c] {
            assert!(rel(v, want, s) < 1e-12, "{v} vs {want}");
        }
    }
}

#[test]
fn extraction_round_trips() {
    let (dc, dp, qc) = (Dcga::new(), Dpga::new(), Qcga::new());
    let mut rng = common::rng(32);
    for _ in 0..100 {
        let q = common::quadric(&mut rng);
        let back = [
            dc.extract_coefficients(&dc.quadric_from_coefficients(&q)).unwrap(),
            dp.extract_coefficients(&dp.quadric_from_coefficients(&q)).unwrap(),
            qc.extract_coefficients(&qc.dual_quadric_from_coefficients(&q)).unwrap(),
        ];
        for b in back {
            let err = b.to_array().iter().zip(q.to_array()).fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()));
            assert!(err < 1e-12);
        }
    }
}

#[test]
fn reciprocity_matrices_are_identity() {
    let (dc, dp, qc) = (Dcga::new(), Dpga::new(), Qcga::new());
    for a in Monomial::ALL {
        for b in Monomial::ALL {
            let want = if a == b { 1.0 } else { 0.0 };
            let t = dc.reciprocal(a).left_contraction(&dc.operator(b)).unwrap();
            let w = dp.reciprocal(a).left_contraction(&dp.operator(b)).unwrap();
            let q = qc.reciprocal(a).left_contraction(&qc.operator(b)).unwrap();
            assert_eq!(t.scalar_part(), want);
            assert_eq!(w.scalar_part(), want);
            assert_eq!(q.scalar_part(), want);
        }
    }
}

#[test]
fn dpga_development_term_by_term() {
    let dp = Dpga::new();
    let mut rng = common::rng(33);
    for _ in 0..200 {
        let q = common::quadric(&mut rng);
        let p = common::point(&mut rng, 2.0);
        let entity = dp.quadric_from_coefficients(&q);
        let terms = dp.sandwich_terms(&entity, p).unwrap();
        let closed = Dpga::development(&q, p);
        for k in 0..10 {
            assert!((terms[k] - closed[k]).abs() < 1e-12);
        }
    }
}

#[test]
fn tangent_normals_follow_the_gradient() {
    let (dc, dp, qc) = (Dcga::new(), Dpga::new(), Qcga::new());
    let mut rng = common::rng(34);
    for _ in 0..100 {
        let (q, p) = common::quadric_through(&mut rng);
        let g = q.gradient(p);
        let t = dc.tangent_plane(&dc.quadric_from_coefficients(&q), p).unwrap();
        assert!(common::angle(t.normal, g) < 1e-8);
        assert!(oracle::tangent_plane(&q, p).unwrap().offset - t.offset < 1e-9);
        let v = dp.plane_coordinates(&dp.tangent_plane_dual(&dp.quadric_from_coefficients(&q), p).unwrap());
        assert!(common::angle([v[0], v[1], v[2]], g) < 1e-8);
        // the plane v·(p, 1) = 0 passes through p
        assert!((v[0] * p.x + v[1] * p.y + v[2] * p.z + v[3]).abs() < 1e-9 * (1.0 + v[3].abs()));
        let t = qc.tangent_plane(&qc.dual_quadric_from_coefficients(&q), p).unwrap();
        assert!(common::angle(t.normal, g) < 1e-8);
        assert!((t.radicand - p.norm_squared()).abs() < 1e-12);
    }
}

#[test]
fn dcga_planes_meet_along_lines() {
    let dc = Dcga::new();
    let mut rng = common::rng(35);
    for _ in 0..30 {
        let n1 = common::direction(&mut rng);
        let n2 = common::direction(&mut rng);
        let a = dc.plane(n1, rng.gen_range(-1.0..1.0));
        let b = dc.plane(n2, rng.gen_range(-1.0..1.0));
        let line = dc.line_from_planes(&a, &b).unwrap();
        assert!(line.is_grade(4));
    }
}

#[test]
fn intersections_annihilate_only_the_roots() {
    let (dc, dp, qc) = (Dcga::new(), Dpga::new(), Qcga::new());
    let mut rng = common::rng(36);
    for _ in 0..40 {
        let (q, line) = common::quadric_and_secant(&mut rng);
        let roots = oracle::intersect_line(&q, &line).unwrap();
        let c = dc.intersect(&dc.quadric_from_coefficients(&q), &dc.line_from_plucker(&line).unwrap()).unwrap();
        let (l, ls) = dp.lines_from_plucker(&line).unwrap();
        let d = dp.intersect(&ls, &dp.quadric_from_coefficients(&q), &l).unwrap();
        let e = qc.intersect(&qc.dual_quadric_from_coefficients(&q), &qc.line_from_plucker(&line).unwrap()).unwrap();
        let residuals = |p: EuclideanPoint| {
            [
                dc.pair_point_residual(&c, p).unwrap(),
                dp.pair_point_residual(&d, p).unwrap(),
                qc.pair_point_residual(&e, p).unwrap(),
            ]
        };
        for r in &roots {
            assert!(residuals(*r).iter().all(|&v| v < 1e-8), "{:?}", residuals(*r));
        }
        let ts: Vec<f64> = roots.iter().map(|r| line.parameter_of(*r)).collect();
        for _ in 0..10 {
            let t = rng.gen_range(-3.0..3.0);
            if ts.iter().any(|r| (r - t).abs() < 1e-2) {
                continue;
            }
            assert!(residuals(line.point_at(t)).iter().all(|&v| v > 1e-8));
        }
    }
}

#[test]
fn rotors_match_oracle_rotation() {
    let dp = Dpga::new();
    let mut rng = common::rng(37);
    for _ in 0..30 {
        let q = common::quadric(&mut rng);
        let theta = rng.gen_range(-3.0..3.0);
        let i = rng.gen_range(0..3);
        let j = (i + rng.gen_range(1..3)) % 3;
        let r = dp.rotor(theta, i, j).unwrap();
        let rr = r.gp(&r.reverse()).unwrap();
        assert!(rr.distance(&Multivector::scalar(dp.algebra(), 1.0)).unwrap() < 1e-10);
        let rotated = dp.apply(&r, &dp.quadric_from_coefficients(&q)).unwrap();
        let got = dp.extract_coefficients(&rotated).unwrap();
        let want = oracle::transform(&q, &Dpga::rotation_matrix(theta, i, j).unwrap(), [0.0; 3]).unwrap();
        assert!(got.canonical_distance(&want).unwrap() < 1e-10);
    }
}

#[test]
fn verbatim_generator_is_not_a_rotation() {
    let dp = Dpga::new();
    let e = QuadricCoefficients::ellipsoid(2.0, 1.0, 1.0);
    let r = dp.rotor_with(core::f64::consts::FRAC_PI_2, 0, 1, RotorGenerator::Verbatim).unwrap();
    // the sandwich leaves the span of quadric bivectors altogether
    let out = dp.apply(&r, &dp.quadric_from_coefficients(&e)).unwrap();
    assert!(matches!(dp.extract_coefficients(&out), Err(quadric_ga::Error::NotAQuadric { .. })));
}

#[test]
fn qcga_point_algebra() {
    let qc = Qcga::new();
    let mut rng = common::rng(38);
    for _ in 0..300 {
        let (a, b) = (common::point(&mut rng, 3.0), common::point(&mut rng, 3.0));
        let (x, y) = (qc.embed_point(a), qc.embed_point(b));
        let d = qc.pseudo_distance(&x, &y).unwrap();
        let want = -0.5 * a.distance(&b).powi(2);
        assert!((d - want).abs() < 1e-10);
        for alpha in [1e-6, -1e-6, 1.0, -1.0, 1e6, -1e6] {
            let n = qc.normalize_point(&x.scale(alpha)).unwrap();
            assert!(n.distance(&x).unwrap() < 1e-12 * (1.0 + x.max_abs()));
        }
    }
}

#[test]
fn nine_point_fits_recover_quadrics() {
    let qc = Qcga::new();
    let mut rng = common::rng(39);
    for _ in 0..20 {
        let q = common::quadric(&mut rng);
        let pts = common::points_on(&mut rng, &q, 9);
        for path in [FitPath::Reference, FitPath::Wedge] {
            let fit = qc.extract_coefficients(&qc.quadric_from_nine_points(&pts, path).unwrap()).unwrap();
            assert!(fit.canonical_distance(&q).unwrap() < 1e-8, "{path:?}");
        }
    }
    // nine points on a line do not determine a quadric
    let line = PluckerLine::through(EuclideanPoint::ORIGIN, [1.0, 2.0, 3.0]).unwrap();
    let collinear: Vec<_> = (0..9).map(|k| line.point_at(k as f64)).collect();
    assert!(qc.quadric_from_nine_points(&collinear, FitPath::Wedge).is_err());
}

proptest! {
    #[test]
    fn dcga_coordinates_survive_scaling(x in -5.0..5.0f64, y in -5.0..5.0f64, z in -5.0..5.0f64, s in 0.1..10.0f64) {
        let dc = Dcga::new();
        let p = EuclideanPoint::new(x, y, z);
        let back = dc.point_coordinates(&dc.embed_point(p).scale(-s)).unwrap();
        prop_assert!(back.distance(&p) < 1e-12 * (1.0 + p.norm_squared()));
    }

    #[test]
    fn dpga_lines_are_antisymmetric(a in prop::array::uniform3(-3.0..3.0f64), b in prop::array::uniform3(-3.0..3.0f64)) {
        let dp = Dpga::new();
        let (pa, pb) = (EuclideanPoint::from_array(a), EuclideanPoint::from_array(b));
        prop_assume!(pa.distance(&pb) > 1e-3);
        let l = dp.line(pa, pb).unwrap();
        prop_assert_eq!(dp.line(pb, pa).unwrap(), -l.clone());
        prop_assert!(dp.point(pa).wedge(&l).unwrap().max_abs() < 1e-12 * (1.0 + l.max_abs()));
    }

    #[test]
    fn qcga_lines_contain_their_points(a in prop::array::uniform3(-3.0..3.0f64), n in prop::array::uniform3(-1.0..1.0f64), t in -4.0..4.0f64) {
        let qc = Qcga::new();
        prop_assume!(oracle::norm3(n) > 0.1);
        let line = PluckerLine::through(EuclideanPoint::from_array(a), n).unwrap();
        let l = qc.line_from_plucker(&line).unwrap();
        let x = qc.embed_point(line.point_at(t));
        prop_assert!(x.left_contraction(&l).unwrap().max_abs() < 1e-10 * (1.0 + l.max_abs() * x.max_abs()));
    }
}
