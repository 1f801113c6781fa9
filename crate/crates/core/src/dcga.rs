//! Double conformal geometric algebra G(8,2).
//!
//! Two copies of 3D CGA, `{eo1, e1, e2, e3, e∞1}` and `{eo2, e4, e5, e6, e∞2}`.
//! A point is the bivector `x₁ ∧ x₂` of its two conformal images and a
//! quadric is a bivector in the span of ten extraction operators `T_α`, with
//! `T_α · X` equal to the monomial `α` of the point.

use alloc::vec::Vec;

use crate::algebra::{Algebra, AlgebraSignature};
use crate::counter::ProductCounter;
use crate::error::{Error, Result};
use crate::multivector::{extract_in_span, relative_size, Multivector, Product};
use crate::oracle::{
    dot3, norm3, EuclideanPoint, Monomial, PluckerLine, QuadricCoefficients, ON_SURFACE_TOLERANCE,
};

pub const EO1: usize = 0;
pub const E1: usize = 1;
pub const E2: usize = 2;
pub const E3: usize = 3;
pub const EINF1: usize = 4;
pub const EO2: usize = 5;
pub const E4: usize = 6;
pub const E5: usize = 7;
pub const E6: usize = 8;
pub const EINF2: usize = 9;

pub const NAMES: [&str; 10] = ["eo1", "e1", "e2", "e3", "einf1", "eo2", "e4", "e5", "e6", "einf2"];

/// Tangent plane together with the normal it was built from.
#[derive(Debug, Clone)]
pub struct DcgaTangentPlane {
    /// `(n₁ + d e∞1) ∧ (n₂ + d e∞2)`.
    pub plane: Multivector,
    /// Unit Euclidean normal.
    pub normal: [f64; 3],
    /// Signed distance from the origin, `n̂ · p`.
    pub offset: f64,
    /// Raw differential-operator normal before normalization.
    pub gradient: [f64; 3],
}

#[derive(Debug, Clone)]
pub struct Dcga {
    algebra: Algebra,
}

impl Default for Dcga {
    fn default() -> Self {
        Self::new()
    }
}

impl Dcga {
    pub fn new() -> Self {
        let mut gram = [0.0; 100];
        for i in [E1, E2, E3, E4, E5, E6] {
            gram[i * 10 + i] = 1.0;
        }
        for (o, n) in [(EO1, EINF1), (EO2, EINF2)] {
            gram[o * 10 + n] = -1.0;
            gram[n * 10 + o] = -1.0;
        }
        let algebra = AlgebraSignature::new("DCGA", &NAMES, &gram).expect("DCGA metric is valid");
        Dcga { algebra }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    fn e(&self, i: usize) -> Multivector {
        Multivector::basis(&self.algebra, i)
    }

    fn b(&self, i: usize, j: usize) -> Multivector {
        Multivector::basis_blade(&self.algebra, &[i, j])
    }

    fn euclid(&self, v: [f64; 3], first: usize) -> Multivector {
        let mut c = [0.0; 10];
        c[first..first + 3].copy_from_slice(&v);
        Multivector::vector(&self.algebra, &c)
    }

    /// Conformal point `p + ½p² e∞1 + eo1` in the first copy.
    pub fn cga1_point(&self, p: EuclideanPoint) -> Multivector {
        let mut c = [0.0; 10];
        c[E1..=E3].copy_from_slice(&p.to_array());
        c[EINF1] = 0.5 * p.norm_squared();
        c[EO1] = 1.0;
        Multivector::vector(&self.algebra, &c)
    }

    /// Conformal point `p + ½p² e∞2 + eo2` in the second copy.
    pub fn cga2_point(&self, p: EuclideanPoint) -> Multivector {
        let mut c = [0.0; 10];
        c[E4..=E6].copy_from_slice(&p.to_array());
        c[EINF2] = 0.5 * p.norm_squared();
        c[EO2] = 1.0;
        Multivector::vector(&self.algebra, &c)
    }

    /// `X = x₁ ∧ x₂`.
    pub fn embed_point(&self, p: EuclideanPoint) -> Multivector {
        self.cga1_point(p).wedge(&self.cga2_point(p)).expect("same algebra")
    }

    /// Extraction operator `T_α`.
    pub fn operator(&self, m: Monomial) -> Multivector {
        let half = |a: Multivector, b: Multivector| (a + b).scale(0.5);
        match m {
            Monomial::X2 => self.b(E4, E1),
            Monomial::Y2 => self.b(E5, E2),
            Monomial::Z2 => self.b(E6, E3),
            Monomial::XY => half(self.b(E5, E1), self.b(E4, E2)),
            Monomial::ZX => half(self.b(E6, E1), self.b(E4, E3)),
            Monomial::YZ => half(self.b(E5, E3), self.b(E6, E2)),
            Monomial::X => half(self.b(E1, EINF2), self.b(EINF1, E4)),
            Monomial::Y => half(self.b(E2, EINF2), self.b(EINF1, E5)),
            Monomial::Z => half(self.b(E3, EINF2), self.b(EINF1, E6)),
            Monomial::One => -self.b(EINF1, EINF2),
        }
    }

    /// Reciprocal operator `T^α` with `T^α · T_β = δ_αβ`.
    pub fn reciprocal(&self, m: Monomial) -> Multivector {
        match m {
            Monomial::X2 => self.b(E1, E4),
            Monomial::Y2 => self.b(E2, E5),
            Monomial::Z2 => self.b(E3, E6),
            Monomial::XY => self.b(E1, E5) + self.b(E2, E4),
            Monomial::ZX => self.b(E1, E6) + self.b(E3, E4),
            Monomial::YZ => self.b(E3, E5) + self.b(E2, E6),
            Monomial::X => self.b(E1, EO2) + self.b(EO1, E4),
            Monomial::Y => self.b(E2, EO2) + self.b(EO1, E5),
            Monomial::Z => self.b(E3, EO2) + self.b(EO1, E6),
            Monomial::One => self.b(EO1, EO2),
        }
    }

    fn operators(&self) -> [Multivector; 10] {
        Monomial::ALL.map(|m| self.operator(m))
    }

    fn reciprocals(&self) -> [Multivector; 10] {
        Monomial::ALL.map(|m| self.reciprocal(m))
    }

    /// `Σ_α q_α T_α`.
    pub fn quadric_from_coefficients(&self, q: &QuadricCoefficients) -> Multivector {
        let mut out = Multivector::zero(&self.algebra);
        for m in Monomial::ALL {
            out = out + self.operator(m).scale(q.get(m));
        }
        out
    }

    /// `T^α · Q` for every α; fails when `Q` leaves the operator span.
    pub fn extract_coefficients(&self, quadric: &Multivector) -> Result<QuadricCoefficients> {
        extract_in_span(quadric, &self.reciprocals(), &self.operators(), "DCGA")
    }

    /// `Q · X`, equal to the implicit polynomial at the embedded point.
    pub fn contains(&self, quadric: &Multivector, point: &Multivector) -> Result<f64> {
        self.contains_counted(quadric, point, &mut ProductCounter::disabled())
    }

    pub fn contains_counted(
        &self,
        quadric: &Multivector,
        point: &Multivector,
        counter: &mut ProductCounter,
    ) -> Result<f64> {
        Ok(quadric.product_counted(Product::Dot, point, counter)?.scalar_part())
    }

    /// Rescales a point bivector so that it matches the embedding again.
    ///
    /// The weight is `X · (e∞1 ∧ e∞2)`, which is `−1` on embedded points, so
    /// the result is `−X / (X · (e∞1 ∧ e∞2))`.
    pub fn normalize_point(&self, point: &Multivector) -> Result<Multivector> {
        let w = point.scalar_product(&self.b(EINF1, EINF2))?;
        if w == 0.0 || w.abs() <= 1e-14 * point.max_abs() {
            return Err(Error::PointAtInfinity);
        }
        Ok(point.scale(-1.0 / w))
    }

    /// Euclidean coordinates of a (possibly scaled) point, `x = T_x · x̂` etc.
    pub fn point_coordinates(&self, point: &Multivector) -> Result<EuclideanPoint> {
        let hat = self.normalize_point(point)?;
        let read = |m| -> Result<f64> { Ok(self.operator(m).dot(&hat)?.scalar_part()) };
        Ok(EuclideanPoint::new(read(Monomial::X)?, read(Monomial::Y)?, read(Monomial::Z)?))
    }

    /// `D_k = e_k ∧ e∞1 + e_{k+3} ∧ e∞2`.
    pub fn differential_operator(&self, axis: usize) -> Multivector {
        assert!(axis < 3, "axis must be 0, 1 or 2");
        self.b(E1 + axis, EINF1) + self.b(E4 + axis, EINF2)
    }

    /// `((D_k × Q) · X)` for k = x, y, z: the gradient of the quadric at `X`.
    pub fn normal(&self, quadric: &Multivector, point: &Multivector) -> Result<[f64; 3]> {
        self.normal_counted(quadric, point, &mut ProductCounter::disabled())
    }

    pub fn normal_counted(
        &self,
        quadric: &Multivector,
        point: &Multivector,
        counter: &mut ProductCounter,
    ) -> Result<[f64; 3]> {
        // D_k × Q only rearranges coefficients (D_x × Q = 2a T_x + d T_y +
        // f T_z + g T_1), so like the operation model it is left uncounted.
        let mut n = [0.0; 3];
        for (k, slot) in n.iter_mut().enumerate() {
            let c = self.differential_operator(k).commutator(quadric)?;
            *slot = c.product_counted(Product::Dot, point, counter)?.scalar_part();
        }
        Ok(n)
    }

    /// `(n₁ + d e∞1) ∧ (n₂ + d e∞2)` for a unit normal and offset.
    pub fn plane(&self, normal: [f64; 3], offset: f64) -> Multivector {
        self.plane_counted(normal, offset, &mut ProductCounter::disabled())
    }

    fn plane_counted(&self, normal: [f64; 3], offset: f64, c: &mut ProductCounter) -> Multivector {
        let p1 = self.euclid(normal, E1) + self.e(EINF1).scale(offset);
        let p2 = self.euclid(normal, E4) + self.e(EINF2).scale(offset);
        p1.product_counted(Product::Outer, &p2, c).expect("same algebra")
    }

    /// Tangent plane at an on-surface point via the differential operators.
    ///
    /// The normal is normalized before the offset `d = n₁ · x₁` is taken, so
    /// `d` is the orthogonal distance of the plane from the origin.
    pub fn tangent_plane(&self, quadric: &Multivector, p: EuclideanPoint) -> Result<DcgaTangentPlane> {
        self.tangent_plane_counted(quadric, p, &mut ProductCounter::disabled())
    }

    pub fn tangent_plane_counted(
        &self,
        quadric: &Multivector,
        p: EuclideanPoint,
        counter: &mut ProductCounter,
    ) -> Result<DcgaTangentPlane> {
        let q = self.extract_coefficients(quadric)?;
        let x = self.embed_point(p);
        let residual = self.contains(quadric, &x)?;
        if residual.abs() > ON_SURFACE_TOLERANCE * q.eval_scale(p).max(1.0) {
            return Err(Error::NotOnSurface { residual });
        }
        let gradient = self.normal_counted(quadric, &x, counter)?;
        let len = norm3(gradient);
        if len <= 1e-12 * q.max_abs() * (1.0 + p.norm()) {
            return Err(Error::SingularPoint);
        }
        counter.add(3);
        let normal = gradient.map(|v| v / len);
        let n1 = self.euclid(normal, E1);
        let x1 = self.cga1_point(p);
        let offset = n1.product_counted(Product::Dot, &x1, counter)?.scalar_part();
        let plane = self.plane_counted(normal, offset, counter);
        Ok(DcgaTangentPlane { plane, normal, offset, gradient })
    }

    /// `l_k = d I_k⁻¹ − (x_k · (d I_k⁻¹)) ∧ e∞k` in each conformal copy.
    fn copy_line(&self, dir: [f64; 3], point: EuclideanPoint, copy: usize) -> Result<Multivector> {
        let (first, inf, x) = if copy == 0 {
            (E1, EINF1, self.cga1_point(point))
        } else {
            (E4, EINF2, self.cga2_point(point))
        };
        let pseudo = Multivector::basis_blade(&self.algebra, &[first, first + 1, first + 2]);
        // I_ε² = −1, so I_ε⁻¹ = −I_ε
        let bivector = self.euclid(dir, first).gp(&pseudo.scale(-1.0))?;
        let moment = x.left_contraction(&bivector)?;
        bivector.try_sub(&moment.wedge(&self.e(inf))?)
    }

    /// `L = l₁ ∧ l₂` from Plücker coordinates.
    pub fn line_from_plucker(&self, line: &PluckerLine) -> Result<Multivector> {
        let len = norm3(line.n);
        if len == 0.0 {
            return Err(Error::InvalidLine("zero direction"));
        }
        let dir = line.n.map(|v| v / len);
        let p0 = line.closest_to_origin();
        self.copy_line(dir, p0, 0)?.wedge(&self.copy_line(dir, p0, 1)?)
    }

    /// `L = Π₁ ∧ Π₂`; parallel planes leave no finite line.
    pub fn line_from_planes(&self, a: &Multivector, b: &Multivector) -> Result<Multivector> {
        let line = a.wedge(b)?;
        let null = (1 << EO1) | (1 << EINF1) | (1 << EO2) | (1 << EINF2);
        let finite = line
            .terms()
            .filter(|&(blade, _)| blade & null == 0)
            .fold(0.0_f64, |m, (_, c)| m.max(c.abs()));
        if finite <= 1e-12 * a.max_abs() * b.max_abs() {
            return Err(Error::ParallelPlanes);
        }
        Ok(line)
    }

    /// Pair point `P = Q ∧ L`.
    pub fn intersect(&self, quadric: &Multivector, line: &Multivector) -> Result<Multivector> {
        quadric.wedge(line)
    }

    pub fn intersect_counted(
        &self,
        quadric: &Multivector,
        line: &Multivector,
        counter: &mut ProductCounter,
    ) -> Result<Multivector> {
        quadric.product_counted(Product::Outer, line, counter)
    }

    /// Relative size of `X ⌋ P`. On the line this equals `f(p) · L`, so it
    /// vanishes exactly at the intersection points.
    pub fn pair_point_residual(&self, pair: &Multivector, p: EuclideanPoint) -> Result<f64> {
        if pair.is_zero() {
            return Err(Error::LineInQuadric);
        }
        let x = self.embed_point(p);
        let test = x.left_contraction(pair)?;
        Ok(relative_size(&test, &x, pair))
    }

    /// Unit normal and offset read back from a plane bivector.
    ///
    /// The bivector is the rank-one product of two conformal planes; the
    /// first-copy factor is recovered from the column with the largest entries.
    pub fn plane_normal_offset(&self, plane: &Multivector) -> Result<([f64; 3], f64)> {
        let rows = [E1, E2, E3, EINF1];
        let cols = [E4, E5, E6, EINF2];
        let coef = |r: usize, c: usize| plane.get((1 << r) | (1 << c));
        let best = cols
            .iter()
            .copied()
            .map(|c| (c, rows.iter().map(|&r| coef(r, c).abs()).fold(0.0, f64::max)))
            .fold((cols[0], -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        let column: Vec<f64> = rows.iter().map(|&r| coef(r, best.0)).collect();
        let n = [column[0], column[1], column[2]];
        let len = norm3(n);
        if len == 0.0 {
            return Err(Error::DegenerateConfiguration);
        }
        Ok((n.map(|v| v / len), column[3] / len))
    }

    /// Offset reading check: `n · p − d` for the plane through `p`.
    pub fn plane_residual(normal: [f64; 3], offset: f64, p: EuclideanPoint) -> f64 {
        dot3(normal, p.to_array()) - offset
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64, z: f64) -> EuclideanPoint {
        EuclideanPoint::new(x, y, z)
    }

    #[test]
    fn origin_embeds_to_eo1_eo2() {
        let d = Dcga::new();
        let x = d.embed_point(EuclideanPoint::ORIGIN);
        assert_eq!(x, d.b(EO1, EO2));
    }

    #[test]
    fn unit_x_embedding_terms() {
        let d = Dcga::new();
        let x = d.embed_point(p(1.0, 0.0, 0.0));
        assert_eq!(x.get((1 << E1) | (1 << E4)), 1.0);
        assert_eq!(x.get((1 << EINF1) | (1 << EINF2)), 0.25);
        assert_eq!(x.len(), 9);
    }

    #[test]
    fn yz_operator_reads_product() {
        let d = Dcga::new();
        let x = d.embed_point(p(2.0, 3.0, 5.0));
        assert_eq!(d.operator(Monomial::YZ).dot(&x).unwrap().scalar_part(), 15.0);
    }

    #[test]
    fn reciprocity_is_identity() {
        let d = Dcga::new();
        for a in Monomial::ALL {
            for b in Monomial::ALL {
                let v = d.reciprocal(a).dot(&d.operator(b)).unwrap();
                let want = if a == b { 1.0 } else { 0.0 };
                assert_eq!(v.scalar_part(), want, "{a:?} {b:?}");
                assert!(v.is_grade(0));
            }
        }
    }

    #[test]
    fn unit_sphere_entity() {
        let d = Dcga::new();
        let q = d.quadric_from_coefficients(&QuadricCoefficients::unit_sphere());
        let want = d.b(E4, E1) + d.b(E5, E2) + d.b(E6, E3) + d.b(EINF1, EINF2);
        assert_eq!(q, want);
        assert_eq!(d.extract_coefficients(&q).unwrap(), QuadricCoefficients::unit_sphere());
        assert_eq!(d.contains(&q, &d.embed_point(p(1.0, 0.0, 0.0))).unwrap(), 0.0);
        assert_eq!(d.contains(&q, &d.embed_point(EuclideanPoint::ORIGIN)).unwrap(), -1.0);
    }

    #[test]
    fn extraction_rejects_foreign_bivectors() {
        let d = Dcga::new();
        assert!(matches!(
            d.extract_coefficients(&d.b(E1, E2)),
            Err(Error::NotAQuadric { framework: "DCGA", .. })
        ));
        assert_eq!(
            d.extract_coefficients(&Multivector::zero(d.algebra())).unwrap(),
            QuadricCoefficients::default()
        );
    }

    #[test]
    fn commutator_gives_derivative_operator() {
        let d = Dcga::new();
        let q = d.quadric_from_coefficients(&QuadricCoefficients::unit_sphere());
        let c = d.differential_operator(0).commutator(&q).unwrap();
        assert_eq!(c, d.operator(Monomial::X).scale(2.0));
    }

    #[test]
    fn normalization_recovers_coordinates() {
        let d = Dcga::new();
        let x = d.embed_point(p(1.5, -2.0, 0.25)).scale(-7.0);
        assert!(d.normalize_point(&x).unwrap().distance(&x.scale(-1.0 / 7.0)).unwrap() < 1e-14);
        assert_eq!(d.point_coordinates(&x).unwrap(), p(1.5, -2.0, 0.25));
    }

    #[test]
    fn sphere_tangent_planes() {
        let d = Dcga::new();
        let q = d.quadric_from_coefficients(&QuadricCoefficients::unit_sphere());
        let t = d.tangent_plane(&q, p(1.0, 0.0, 0.0)).unwrap();
        assert_eq!((t.normal, t.offset), ([1.0, 0.0, 0.0], 1.0));
        let (n, off) = d.plane_normal_offset(&t.plane).unwrap();
        assert_eq!((n, off), ([1.0, 0.0, 0.0], 1.0));
        let t = d.tangent_plane(&q, p(0.0, 1.0, 0.0)).unwrap();
        assert_eq!(t.normal, [0.0, 1.0, 0.0]);
        let e = d.quadric_from_coefficients(&QuadricCoefficients::ellipsoid(2.0, 1.0, 1.0));
        let t = d.tangent_plane(&e, p(2.0, 0.0, 0.0)).unwrap();
        assert_eq!((t.normal, t.offset), ([1.0, 0.0, 0.0], 2.0));
    }

    #[test]
    fn x_axis_line_structure() {
        let d = Dcga::new();
        let l = PluckerLine::through(EuclideanPoint::ORIGIN, [1.0, 0.0, 0.0]).unwrap();
        let line = d.line_from_plucker(&l).unwrap();
        // l₁ = −e2∧e3, l₂ = −e5∧e6
        let want = d.b(E2, E3).wedge(&d.b(E5, E6)).unwrap();
        assert_eq!(line, want);
    }

    #[test]
    fn planes_meet_in_the_same_line() {
        let d = Dcga::new();
        let l = PluckerLine::through(EuclideanPoint::ORIGIN, [1.0, 0.0, 0.0]).unwrap();
        let from_plucker = d.line_from_plucker(&l).unwrap();
        let z0 = d.plane([0.0, 0.0, 1.0], 0.0);
        let y0 = d.plane([0.0, 1.0, 0.0], 0.0);
        let from_planes = d.line_from_planes(&z0, &y0).unwrap();
        // proportional: L_planes = s · L_plucker for one scalar s
        let (blade, c) = from_plucker.terms().next().unwrap();
        let s = from_planes.get(blade) / c;
        assert!(s != 0.0);
        assert!(from_planes.distance(&from_plucker.scale(s)).unwrap() < 1e-14);
        assert_eq!(d.line_from_planes(&z0, &z0), Err(Error::ParallelPlanes));
        let z1 = d.plane([0.0, 0.0, 1.0], 1.0);
        assert_eq!(d.line_from_planes(&z0, &z1), Err(Error::ParallelPlanes));
    }

    #[test]
    fn sphere_axis_pair_point() {
        let d = Dcga::new();
        let q = d.quadric_from_coefficients(&QuadricCoefficients::unit_sphere());
        let l = PluckerLine::through(EuclideanPoint::ORIGIN, [1.0, 0.0, 0.0]).unwrap();
        let pair = d.intersect(&q, &d.line_from_plucker(&l).unwrap()).unwrap();
        assert!(d.pair_point_residual(&pair, p(1.0, 0.0, 0.0)).unwrap() < 1e-14);
        assert!(d.pair_point_residual(&pair, p(-1.0, 0.0, 0.0)).unwrap() < 1e-14);
        assert!(d.pair_point_residual(&pair, EuclideanPoint::ORIGIN).unwrap() > 1e-3);
        assert!(d.intersect(&q, &Multivector::zero(d.algebra())).unwrap().is_zero());
    }
}
