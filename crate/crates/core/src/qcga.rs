//! Quadric conformal geometric algebra G(9,6).
//!
//! Basis `e1, e2, e3`, six origins `eo1..eo6` and six infinities
//! `e∞1..e∞6`, with `eoᵢ · e∞ᵢ = −1`. Points are vectors carrying every
//! degree-two monomial of their coordinates, so a quadric is a single dual
//! vector `q*` and membership is the inner product `x · q*`.

use alloc::vec::Vec;

use crate::algebra::{Algebra, AlgebraSignature};
use crate::counter::ProductCounter;
use crate::error::{Error, Result};
use crate::multivector::{extract_in_span, relative_size, Multivector, Product};
use crate::oracle::{self, cross3, norm3, EuclideanPoint, Monomial, PluckerLine, QuadricCoefficients};

pub const E1: usize = 0;
pub const E2: usize = 1;
pub const E3: usize = 2;

/// Index of `eoₖ`, k = 1..6.
pub const fn eo(k: usize) -> usize {
    2 + k
}

/// Index of `e∞ₖ`, k = 1..6.
pub const fn einf(k: usize) -> usize {
    8 + k
}

pub const NAMES: [&str; 15] = [
    "e1", "e2", "e3", "eo1", "eo2", "eo3", "eo4", "eo5", "eo6", "einf1", "einf2", "einf3", "einf4",
    "einf5", "einf6",
];

/// How [`Qcga::quadric_from_nine_points`] builds the dual quadric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FitPath {
    /// Null space of the monomial design matrix.
    #[default]
    Reference,
    /// `(x₁ ∧ … ∧ x₉ ∧ C)*` with the null complement `C` of
    /// [`Qcga::null_complement`].
    Wedge,
}

/// Tangent plane at a surface point.
#[derive(Debug, Clone)]
pub struct QcgaTangentPlane {
    /// `n + ⅓(e∞1 + e∞2 + e∞3) √r`.
    pub plane: Multivector,
    /// Euclidean normal `n`, the gradient of the implicit function.
    pub normal: [f64; 3],
    /// `r = −2 eo · x`, which equals `|p|²`.
    pub radicand: f64,
}

#[derive(Debug, Clone)]
pub struct Qcga {
    algebra: Algebra,
}

impl Default for Qcga {
    fn default() -> Self {
        Self::new()
    }
}

impl Qcga {
    pub fn new() -> Self {
        let mut gram = [0.0; 225];
        for i in [E1, E2, E3] {
            gram[i * 15 + i] = 1.0;
        }
        for k in 1..=6 {
            gram[eo(k) * 15 + einf(k)] = -1.0;
            gram[einf(k) * 15 + eo(k)] = -1.0;
        }
        let algebra = AlgebraSignature::new("QCGA", &NAMES, &gram).expect("QCGA metric is valid");
        Qcga { algebra }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    fn e(&self, i: usize) -> Multivector {
        Multivector::basis(&self.algebra, i)
    }

    fn vector(&self, pairs: &[(usize, f64)]) -> Multivector {
        let mut c = [0.0; 15];
        for &(i, v) in pairs {
            c[i] += v;
        }
        Multivector::vector(&self.algebra, &c)
    }

    /// `e∞ = ⅓(e∞1 + e∞2 + e∞3)`.
    pub fn einf(&self) -> Multivector {
        self.vector(&[(einf(1), 1.0 / 3.0), (einf(2), 1.0 / 3.0), (einf(3), 1.0 / 3.0)])
    }

    /// `eo = eo1 + eo2 + eo3`.
    pub fn eo(&self) -> Multivector {
        self.vector(&[(eo(1), 1.0), (eo(2), 1.0), (eo(3), 1.0)])
    }

    /// `I_ε = e1 ∧ e2 ∧ e3`.
    pub fn euclidean_pseudoscalar(&self) -> Multivector {
        Multivector::basis_blade(&self.algebra, &[E1, E2, E3])
    }

    /// `p + ½(x² e∞1 + y² e∞2 + z² e∞3) + xy e∞4 + xz e∞5 + yz e∞6 + eo1 + eo2 + eo3`.
    pub fn embed_point(&self, p: EuclideanPoint) -> Multivector {
        let EuclideanPoint { x, y, z } = p;
        self.vector(&[
            (E1, x),
            (E2, y),
            (E3, z),
            (einf(1), 0.5 * x * x),
            (einf(2), 0.5 * y * y),
            (einf(3), 0.5 * z * z),
            (einf(4), x * y),
            (einf(5), x * z),
            (einf(6), y * z),
            (eo(1), 1.0),
            (eo(2), 1.0),
            (eo(3), 1.0),
        ])
    }

    /// `−x / (x · e∞)`.
    pub fn normalize_point(&self, x: &Multivector) -> Result<Multivector> {
        let w = x.dot(&self.einf())?.scalar_part();
        if !(w.abs() > 1e-14 * x.max_abs()) {
            return Err(Error::PointAtInfinity);
        }
        Ok(x.scale(-1.0 / w))
    }

    /// Euclidean part of a point, `x = x̂ · e1` etc.
    pub fn point_coordinates(&self, x: &Multivector) -> Result<EuclideanPoint> {
        let hat = self.normalize_point(x)?;
        let read = |i| -> Result<f64> { Ok(hat.dot(&self.e(i))?.scalar_part()) };
        Ok(EuclideanPoint::new(read(E1)?, read(E2)?, read(E3)?))
    }

    /// `x̂₁ · x̂₂ = −½ |p₁ − p₂|²`.
    pub fn pseudo_distance(&self, x1: &Multivector, x2: &Multivector) -> Result<f64> {
        let a = self.normalize_point(x1)?;
        let b = self.normalize_point(x2)?;
        Ok(a.dot(&b)?.scalar_part())
    }

    /// Dual-quadric direction `D_α` with `x · D_α` equal to the monomial α.
    pub fn operator(&self, m: Monomial) -> Multivector {
        match m {
            Monomial::X2 => self.vector(&[(eo(1), -2.0)]),
            Monomial::Y2 => self.vector(&[(eo(2), -2.0)]),
            Monomial::Z2 => self.vector(&[(eo(3), -2.0)]),
            Monomial::XY => self.vector(&[(eo(4), -1.0)]),
            Monomial::ZX => self.vector(&[(eo(5), -1.0)]),
            Monomial::YZ => self.vector(&[(eo(6), -1.0)]),
            Monomial::X => self.e(E1),
            Monomial::Y => self.e(E2),
            Monomial::Z => self.e(E3),
            Monomial::One => self.einf().scale(-1.0),
        }
    }

    /// Reciprocal operator `Q^α` with `Q^α · D_β = δ_αβ`.
    pub fn reciprocal(&self, m: Monomial) -> Multivector {
        match m {
            Monomial::X2 => self.vector(&[(einf(1), 0.5)]),
            Monomial::Y2 => self.vector(&[(einf(2), 0.5)]),
            Monomial::Z2 => self.vector(&[(einf(3), 0.5)]),
            Monomial::XY => self.e(einf(4)),
            Monomial::ZX => self.e(einf(5)),
            Monomial::YZ => self.e(einf(6)),
            Monomial::X => self.e(E1),
            Monomial::Y => self.e(E2),
            Monomial::Z => self.e(E3),
            Monomial::One => self.eo(),
        }
    }

    /// `q* = −(2a eo1 + 2b eo2 + 2c eo3 + d eo4 + f eo5 + e eo6)
    ///       + g e1 + h e2 + i e3 − ⅓ j (e∞1 + e∞2 + e∞3)`.
    pub fn dual_quadric_from_coefficients(&self, q: &QuadricCoefficients) -> Multivector {
        let mut out = Multivector::zero(&self.algebra);
        for m in Monomial::ALL {
            out = out + self.operator(m).scale(q.get(m));
        }
        out
    }

    pub fn extract_coefficients(&self, dual_quadric: &Multivector) -> Result<QuadricCoefficients> {
        if !dual_quadric.is_zero() && !dual_quadric.is_grade(1) {
            let residual = dual_quadric.max_abs();
            return Err(Error::NotAQuadric { framework: "QCGA", residual });
        }
        let rec = Monomial::ALL.map(|m| self.reciprocal(m));
        let dir = Monomial::ALL.map(|m| self.operator(m));
        extract_in_span(dual_quadric, &rec, &dir, "QCGA")
    }

    /// `x · q*`, equal to the implicit polynomial at `p`.
    pub fn eval_membership(&self, dual_quadric: &Multivector, p: EuclideanPoint) -> Result<f64> {
        self.eval_membership_counted(dual_quadric, p, &mut ProductCounter::disabled())
    }

    pub fn eval_membership_counted(
        &self,
        dual_quadric: &Multivector,
        p: EuclideanPoint,
        counter: &mut ProductCounter,
    ) -> Result<f64> {
        let x = self.embed_point(p);
        Ok(x.product_counted(Product::Dot, dual_quadric, counter)?.scalar_part())
    }

    /// Outer-product null complement `C = (eo1 − eo2) ∧ (eo2 − eo3) ∧ eo4 ∧ eo5 ∧ eo6`.
    ///
    /// Every embedded point lies in the ten-dimensional span of
    /// `e1, e2, e3, eo1 + eo2 + eo3, e∞1..e∞6`; `C` spans the remaining five
    /// directions, and a vector orthogonal to `C` has equal `e∞1..e∞3`
    /// coefficients and no `e∞4..e∞6` part, as a dual quadric must.
    pub fn null_complement(&self) -> Multivector {
        let d12 = self.vector(&[(eo(1), 1.0), (eo(2), -1.0)]);
        let d23 = self.vector(&[(eo(2), 1.0), (eo(3), -1.0)]);
        let rest = Multivector::basis_blade(&self.algebra, &[eo(4), eo(5), eo(6)]);
        d12.wedge(&d23).and_then(|b| b.wedge(&rest)).expect("same algebra")
    }

    /// Dual quadric through nine points.
    ///
    /// Both paths first run the rank check of the reference fit, so
    /// degenerate configurations are rejected either way.
    pub fn quadric_from_nine_points(&self, points: &[EuclideanPoint], path: FitPath) -> Result<Multivector> {
        let reference = oracle::fit_nine_points(points)?;
        match path {
            FitPath::Reference => Ok(self.dual_quadric_from_coefficients(&reference)),
            FitPath::Wedge => self.wedge_fit(points, &self.null_complement()),
        }
    }

    /// `(x₁ ∧ … ∧ xₙ ∧ C)*` for an arbitrary complement `C`, without any
    /// rank check.
    pub fn wedge_fit(&self, points: &[EuclideanPoint], complement: &Multivector) -> Result<Multivector> {
        let mut acc = complement.clone();
        for p in points.iter().rev() {
            acc = self.embed_point(*p).wedge(&acc)?;
        }
        if acc.is_zero() {
            return Err(Error::DegenerateConfiguration);
        }
        let dual = acc.dual()?;
        // normalize the overall scale, which is arbitrary
        let s = dual.max_abs();
        Ok(dual.scale(1.0 / s))
    }

    /// Tangent plane `π* = n + ⅓ Σ e∞ₖ · √(−2 eo · x)`, k = 1..3.
    ///
    /// `n = Σ (vₖ · q*) eₖ` with `v_x = x e∞1 + y e∞4 + z e∞5 + e1` and
    /// likewise for y and z, which is the gradient of the implicit function.
    /// The offset term `√(−2 eo · x) = |p|` is the distance of the point from
    /// the origin, not the orthogonal offset of the plane; only the normal
    /// direction agrees with the classical tangent plane in general.
    pub fn tangent_plane(&self, dual_quadric: &Multivector, p: EuclideanPoint) -> Result<QcgaTangentPlane> {
        self.tangent_plane_counted(dual_quadric, p, &mut ProductCounter::disabled())
    }

    pub fn tangent_plane_counted(
        &self,
        dual_quadric: &Multivector,
        p: EuclideanPoint,
        counter: &mut ProductCounter,
    ) -> Result<QcgaTangentPlane> {
        let q = self.extract_coefficients(dual_quadric)?;
        let x = self.embed_point(p);
        let residual = x.dot(dual_quadric)?.scalar_part();
        if residual.abs() > oracle::ON_SURFACE_TOLERANCE * q.eval_scale(p).max(1.0) {
            return Err(Error::NotOnSurface { residual });
        }
        let EuclideanPoint { x: px, y: py, z: pz } = p;
        let v = [
            self.vector(&[(einf(1), px), (einf(4), py), (einf(5), pz), (E1, 1.0)]),
            self.vector(&[(einf(2), py), (einf(4), px), (einf(6), pz), (E2, 1.0)]),
            self.vector(&[(einf(3), pz), (einf(5), px), (einf(6), py), (E3, 1.0)]),
        ];
        let mut normal = [0.0; 3];
        for (n, vk) in normal.iter_mut().zip(&v) {
            *n = vk.product_counted(Product::Dot, dual_quadric, counter)?.scalar_part();
        }
        if norm3(normal) <= 1e-12 * q.max_abs() * (1.0 + p.norm()) {
            return Err(Error::SingularPoint);
        }
        let radicand = -2.0 * self.eo().product_counted(Product::Dot, &x, counter)?.scalar_part();
        if radicand < 0.0 {
            return Err(Error::FormulaDomain { radicand });
        }
        let offset = libm::sqrt(radicand) / 3.0;
        counter.add(1);
        let plane = self.vector(&[
            (E1, normal[0]),
            (E2, normal[1]),
            (E3, normal[2]),
            (einf(1), offset),
            (einf(2), offset),
            (einf(3), offset),
        ]);
        Ok(QcgaTangentPlane { plane, normal, radicand })
    }

    /// `l* = 3 n I_ε − (e∞1 + e∞2 + e∞3) ∧ m` for direction `n` and moment `m = p × n`.
    ///
    /// For an embedded point, `x · l* = 3 (m − p × n) + (p · m)(e∞1 + e∞2 + e∞3)`,
    /// which vanishes exactly on the line.
    pub fn line_from_plucker(&self, line: &PluckerLine) -> Result<Multivector> {
        if norm3(line.n) == 0.0 {
            return Err(Error::InvalidLine("zero direction"));
        }
        let n = self.vector(&[(E1, line.n[0]), (E2, line.n[1]), (E3, line.n[2])]);
        let m = self.vector(&[(E1, line.m[0]), (E2, line.m[1]), (E3, line.m[2])]);
        let sum = self.einf().scale(3.0);
        let bivector = n.gp(&self.euclidean_pseudoscalar())?.scale(3.0);
        bivector.try_sub(&sum.wedge(&m)?)
    }

    /// `l*` through two points.
    pub fn line_through(&self, a: EuclideanPoint, b: EuclideanPoint) -> Result<Multivector> {
        let n = (b - a).to_array();
        let line = PluckerLine::new(n, cross3(a.to_array(), n))?;
        self.line_from_plucker(&line)
    }

    /// `c* = q* ∧ l*`.
    pub fn intersect(&self, dual_quadric: &Multivector, dual_line: &Multivector) -> Result<Multivector> {
        dual_quadric.wedge(dual_line)
    }

    pub fn intersect_counted(
        &self,
        dual_quadric: &Multivector,
        dual_line: &Multivector,
        counter: &mut ProductCounter,
    ) -> Result<Multivector> {
        dual_quadric.product_counted(Product::Outer, dual_line, counter)
    }

    /// Relative size of `x · c*`; on the line it equals `f(p) l*`.
    pub fn pair_point_residual(&self, pair: &Multivector, p: EuclideanPoint) -> Result<f64> {
        if pair.is_zero() {
            return Err(Error::LineInQuadric);
        }
        let x = self.embed_point(p);
        let test = x.left_contraction(pair)?;
        Ok(relative_size(&test, &x, pair))
    }

    /// Every grade-5 wedge of distinct vectors drawn from `candidates`.
    pub fn complement_candidates(&self, candidates: &[Multivector]) -> Vec<Multivector> {
        let mut out = Vec::new();
        let n = candidates.len();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() != 5 {
                continue;
            }
            let mut acc = Multivector::scalar(&self.algebra, 1.0);
            for (k, c) in candidates.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    acc = acc.wedge(c).expect("same algebra");
                }
            }
            if !acc.is_zero() {
                out.push(acc);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64, z: f64) -> EuclideanPoint {
        EuclideanPoint::new(x, y, z)
    }

    #[test]
    fn embedding() {
        let q = Qcga::new();
        assert_eq!(q.embed_point(EuclideanPoint::ORIGIN), q.eo());
        let x = q.embed_point(p(1.0, 1.0, 0.0));
        let want = q.vector(&[
            (E1, 1.0),
            (E2, 1.0),
            (einf(1), 0.5),
            (einf(2), 0.5),
            (einf(4), 1.0),
            (eo(1), 1.0),
            (eo(2), 1.0),
            (eo(3), 1.0),
        ]);
        assert_eq!(x, want);
        let ip = |a: &Multivector, b: &Multivector| a.dot(b).unwrap().scalar_part();
        assert!((ip(&x, &q.einf()) + 1.0).abs() < 1e-15);
        assert!(ip(&q.einf(), &q.einf()).abs() < 1e-15);
        assert!((ip(&q.eo(), &q.einf()) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn normalization() {
        let q = Qcga::new();
        let x = q.embed_point(p(1.0, 2.0, 3.0));
        let close = |a: &Multivector, b: &Multivector| a.distance(b).unwrap() < 1e-14;
        assert!(close(&q.normalize_point(&x.scale(2.0)).unwrap(), &x));
        assert!(close(&q.normalize_point(&q.eo().scale(-5.0)).unwrap(), &q.eo()));
        assert!(close(&q.normalize_point(&x).unwrap(), &x));
        let c = q.point_coordinates(&x.scale(-3.0)).unwrap();
        assert!(c.distance(&p(1.0, 2.0, 3.0)) < 1e-14);
        assert_eq!(q.normalize_point(&q.e(E1)), Err(Error::PointAtInfinity));
    }

    #[test]
    fn pseudo_distances() {
        let q = Qcga::new();
        let d = |a, b| q.pseudo_distance(&q.embed_point(a), &q.embed_point(b)).unwrap();
        assert!(d(p(1.0, 2.0, 3.0), p(1.0, 2.0, 3.0)).abs() < 1e-13);
        assert!((d(EuclideanPoint::ORIGIN, p(1.0, 0.0, 0.0)) + 0.5).abs() < 1e-14);
        assert!((d(p(1.0, 2.0, 3.0), p(4.0, 6.0, 3.0)) + 12.5).abs() < 1e-12);
    }

    #[test]
    fn dual_quadrics() {
        let q = Qcga::new();
        let s = q.dual_quadric_from_coefficients(&QuadricCoefficients::unit_sphere());
        let want = q.eo().scale(-2.0) + q.vector(&[(einf(1), 1.0), (einf(2), 1.0), (einf(3), 1.0)]).scale(1.0 / 3.0);
        assert!(s.distance(&want).unwrap() < 1e-16);
        let back = q.extract_coefficients(&s).unwrap();
        assert!(back.canonical_distance(&QuadricCoefficients::unit_sphere()).unwrap() < 1e-15);
        assert!((back.j + 1.0).abs() < 1e-15);
        let plane = QuadricCoefficients::unit(Monomial::X);
        assert_eq!(q.dual_quadric_from_coefficients(&plane), q.e(E1));
        assert_eq!(q.extract_coefficients(&q.e(E1)).unwrap(), plane);
        assert!(q.eval_membership(&s, p(0.0, 0.0, 1.0)).unwrap().abs() < 1e-15);
        assert!((q.eval_membership(&s, EuclideanPoint::ORIGIN).unwrap() + 1.0).abs() < 1e-15);
        assert!(q.extract_coefficients(&q.e(einf(4))).is_err());
    }

    #[test]
    fn reciprocity() {
        let q = Qcga::new();
        for a in Monomial::ALL {
            for b in Monomial::ALL {
                let v = q.reciprocal(a).dot(&q.operator(b)).unwrap().scalar_part();
                assert_eq!(v, if a == b { 1.0 } else { 0.0 }, "{a:?} {b:?}");
            }
        }
    }

    #[test]
    fn tangent_planes() {
        let q = Qcga::new();
        let s = q.dual_quadric_from_coefficients(&QuadricCoefficients::unit_sphere());
        let t = q.tangent_plane(&s, p(1.0, 0.0, 0.0)).unwrap();
        assert_eq!(t.normal, [2.0, 0.0, 0.0]);
        assert_eq!(t.radicand, 1.0);
        let t = q.tangent_plane(&s, p(0.0, 0.0, 1.0)).unwrap();
        assert_eq!(t.normal, [0.0, 0.0, 2.0]);
        assert!(matches!(q.tangent_plane(&s, EuclideanPoint::ORIGIN), Err(Error::NotOnSurface { .. })));
    }

    #[test]
    fn x_axis_line() {
        let q = Qcga::new();
        let axis = PluckerLine::through(EuclideanPoint::ORIGIN, [1.0, 0.0, 0.0]).unwrap();
        let l = q.line_from_plucker(&axis).unwrap();
        // n I_ε = e1 e1 e2 e3 = e2∧e3
        assert_eq!(l, Multivector::basis_blade(q.algebra(), &[E2, E3]).scale(3.0));
        let off = PluckerLine::through(p(0.0, 1.0, 0.0), [1.0, 0.0, 0.0]).unwrap();
        let l = q.line_from_plucker(&off).unwrap();
        assert_eq!(l.len(), 4);
        for t in [-2.0, 0.0, 0.5, 3.0] {
            let x = q.embed_point(p(t, 1.0, 0.0));
            assert!(x.left_contraction(&l).unwrap().max_abs() < 1e-14);
        }
        assert!(q.embed_point(p(0.0, 0.0, 0.0)).left_contraction(&l).unwrap().max_abs() > 0.5);
    }

    #[test]
    fn sphere_axis_intersection() {
        let q = Qcga::new();
        let s = q.dual_quadric_from_coefficients(&QuadricCoefficients::unit_sphere());
        let axis = PluckerLine::through(EuclideanPoint::ORIGIN, [1.0, 0.0, 0.0]).unwrap();
        let c = q.intersect(&s, &q.line_from_plucker(&axis).unwrap()).unwrap();
        assert!(q.pair_point_residual(&c, p(1.0, 0.0, 0.0)).unwrap() < 1e-15);
        assert!(q.pair_point_residual(&c, p(-1.0, 0.0, 0.0)).unwrap() < 1e-15);
        assert!(q.pair_point_residual(&c, p(0.5, 0.0, 0.0)).unwrap() > 1e-3);
    }

    #[test]
    fn nine_point_fits() {
        let q = Qcga::new();
        let e = QuadricCoefficients::ellipsoid(2.0, 1.0, 1.0);
        let pts: Vec<EuclideanPoint> = (0..9)
            .map(|k| {
                let t = 0.7 * k as f64 + 0.3;
                let u = 0.45 * k as f64 - 1.1;
                p(2.0 * libm::cos(t) * libm::cos(u), libm::sin(t) * libm::cos(u), libm::sin(u))
            })
            .collect();
        for path in [FitPath::Reference, FitPath::Wedge] {
            let fit = q.quadric_from_nine_points(&pts, path).unwrap();
            let got = q.extract_coefficients(&fit).unwrap();
            assert!(got.canonical_distance(&e).unwrap() < 1e-8, "{path:?}");
        }
        let mut dup = pts.clone();
        dup[8] = dup[0];
        assert!(q.quadric_from_nine_points(&dup, FitPath::Wedge).is_err());
        assert!(q.quadric_from_nine_points(&pts[..8], FitPath::Reference).is_err());
    }
}
