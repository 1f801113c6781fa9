//! Double perspective geometric algebra G(4,4).
//!
//! A projective basis `w0..w3` and its dual `w0*..w3*` with
//! `wᵢ · wⱼ* = ½δᵢⱼ` and all other products zero. Points appear twice, as
//! `p` and `p*`; a quadric is the bivector `4 Σ Mᵢⱼ wᵢ* ∧ wⱼ` of its 4×4
//! matrix and membership is the sandwich `p · Q · p*`.

use crate::algebra::{reorder_sign, Algebra, AlgebraSignature, Blade};
use crate::counter::ProductCounter;
use crate::error::{Error, Result};
use crate::multivector::{extract_in_span, relative_size, Multivector, Product};
use crate::oracle::{monomials, EuclideanPoint, Monomial, PluckerLine, QuadricCoefficients, QuadricMatrix};

pub const NAMES: [&str; 8] = ["w0", "w1", "w2", "w3", "w0*", "w1*", "w2*", "w3*"];

/// Index of `wᵢ*`.
pub const fn star(i: usize) -> usize {
    i + 4
}

/// Which rotor generator [`Dpga::rotor_with`] builds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RotorGenerator {
    /// `θ (wⱼ ∧ wᵢ* − wᵢ ∧ wⱼ*)`: rotation by θ from axis i toward axis j.
    #[default]
    Calibrated,
    /// `½θ wᵢ ∧ wⱼ*` taken literally. The bivector is nilpotent, so the
    /// exponential is `1 + ½θ wᵢ ∧ wⱼ*` and acts as a shear, not a rotation.
    Verbatim,
}

#[derive(Debug, Clone)]
pub struct Dpga {
    algebra: Algebra,
}

impl Default for Dpga {
    fn default() -> Self {
        Self::new()
    }
}

impl Dpga {
    pub fn new() -> Self {
        let mut gram = [0.0; 64];
        for i in 0..4 {
            gram[i * 8 + star(i)] = 0.5;
            gram[star(i) * 8 + i] = 0.5;
        }
        let algebra = AlgebraSignature::new("DPGA", &NAMES, &gram).expect("DPGA metric is valid");
        Dpga { algebra }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    fn b(&self, i: usize, j: usize) -> Multivector {
        Multivector::basis_blade(&self.algebra, &[i, j])
    }

    /// `x w0 + y w1 + z w2 + w3`.
    pub fn point(&self, p: EuclideanPoint) -> Multivector {
        self.homogeneous(p.x, p.y, p.z, 1.0, 0)
    }

    /// `x w0* + y w1* + z w2* + w3*`.
    pub fn dual_point(&self, p: EuclideanPoint) -> Multivector {
        self.homogeneous(p.x, p.y, p.z, 1.0, 4)
    }

    /// Homogeneous point with weight `w` on the primal (offset 0) or dual
    /// (offset 4) side.
    pub fn homogeneous(&self, x: f64, y: f64, z: f64, w: f64, offset: usize) -> Multivector {
        let mut c = [0.0; 8];
        c[offset..offset + 4].copy_from_slice(&[x, y, z, w]);
        Multivector::vector(&self.algebra, &c)
    }

    /// Quadric direction `W_α`.
    pub fn operator(&self, m: Monomial) -> Multivector {
        let sym = |i: usize, j: usize| (self.b(star(i), j) + self.b(star(j), i)).scale(2.0);
        match m {
            Monomial::X2 => self.b(star(0), 0).scale(4.0),
            Monomial::Y2 => self.b(star(1), 1).scale(4.0),
            Monomial::Z2 => self.b(star(2), 2).scale(4.0),
            Monomial::One => self.b(star(3), 3).scale(4.0),
            Monomial::XY => sym(0, 1),
            Monomial::ZX => sym(0, 2),
            Monomial::YZ => sym(1, 2),
            Monomial::X => sym(0, 3),
            Monomial::Y => sym(1, 3),
            Monomial::Z => sym(2, 3),
        }
    }

    /// Reciprocal operator `W^α` with `W^α · W_β = δ_αβ`.
    pub fn reciprocal(&self, m: Monomial) -> Multivector {
        match m {
            Monomial::X2 => self.b(star(0), 0),
            Monomial::Y2 => self.b(star(1), 1),
            Monomial::Z2 => self.b(star(2), 2),
            Monomial::One => self.b(star(3), 3),
            Monomial::XY => self.b(star(1), 0).scale(2.0),
            Monomial::ZX => self.b(star(2), 0).scale(2.0),
            Monomial::YZ => self.b(star(2), 1).scale(2.0),
            Monomial::X => self.b(star(3), 0).scale(2.0),
            Monomial::Y => self.b(star(3), 1).scale(2.0),
            Monomial::Z => self.b(star(3), 2).scale(2.0),
        }
    }

    /// `4 Σ Mᵢⱼ wᵢ* ∧ wⱼ` for the symmetric matrix of `q`.
    pub fn quadric_from_coefficients(&self, q: &QuadricCoefficients) -> Multivector {
        let m = QuadricMatrix::from_coefficients(q).0;
        let mut terms = alloc::vec::Vec::with_capacity(16);
        for i in 0..4 {
            for j in 0..4 {
                let (blade, sign) = blade_of(star(i), j);
                terms.push((blade, 4.0 * sign * m[(i, j)]));
            }
        }
        Multivector::from_terms(&self.algebra, terms)
    }

    pub fn extract_coefficients(&self, quadric: &Multivector) -> Result<QuadricCoefficients> {
        let rec = Monomial::ALL.map(|m| self.reciprocal(m));
        let dir = Monomial::ALL.map(|m| self.operator(m));
        extract_in_span(quadric, &rec, &dir, "DPGA")
    }

    /// `(p ⌋ Q) ⌋ p*`, equal to the implicit polynomial at `p`.
    pub fn eval_membership(&self, quadric: &Multivector, p: EuclideanPoint) -> Result<f64> {
        self.eval_membership_counted(quadric, p, &mut ProductCounter::disabled())
    }

    pub fn eval_membership_counted(
        &self,
        quadric: &Multivector,
        p: EuclideanPoint,
        counter: &mut ProductCounter,
    ) -> Result<f64> {
        let left = self.point(p).product_counted(Product::Dot, quadric, counter)?;
        Ok(left.product_counted(Product::Dot, &self.dual_point(p), counter)?.scalar_part())
    }

    /// The vector `p ⌋ Q`. Its `wⱼ` coefficient is `2 (M p)ⱼ`, i.e. the
    /// brackets `2ax + dy + fz + g`, `dx + 2by + ez + h`, `fx + ey + 2cz + i`
    /// and `gx + hy + iz + 2j`.
    pub fn half_sandwich(&self, quadric: &Multivector, p: EuclideanPoint) -> Result<Multivector> {
        self.point(p).dot(quadric)
    }

    /// Closed form of the development of `p · Q · p*`, one entry per
    /// monomial: `a x², b y², c z², d xy, e yz, f zx, g x, h y, i z, j`.
    pub fn development(q: &QuadricCoefficients, p: EuclideanPoint) -> [f64; 10] {
        let mono = monomials(p);
        let c = q.to_array();
        core::array::from_fn(|k| c[k] * mono[k])
    }

    /// The sandwich evaluated separately on each monomial component of `Q`.
    pub fn sandwich_terms(&self, quadric: &Multivector, p: EuclideanPoint) -> Result<[f64; 10]> {
        let q = self.extract_coefficients(quadric)?;
        let mut out = [0.0; 10];
        for m in Monomial::ALL {
            let part = self.operator(m).scale(q.get(m));
            out[m.index()] = self.eval_membership(&part, p)?;
        }
        Ok(out)
    }

    /// Dual plane `Q · p* = Q ⌊ p*`, the vector `2 (M p)ᵢ wᵢ*`.
    ///
    /// Reading the `wᵢ*` coefficients as `(v0, v1, v2, v3)`, the plane is
    /// `v0 X + v1 Y + v2 Z + v3 = 0`. For `p` on the surface this is the
    /// tangent plane; elsewhere it is the polar plane of `p`.
    pub fn tangent_plane_dual(&self, quadric: &Multivector, p: EuclideanPoint) -> Result<Multivector> {
        self.tangent_plane_dual_counted(quadric, p, &mut ProductCounter::disabled())
    }

    pub fn tangent_plane_dual_counted(
        &self,
        quadric: &Multivector,
        p: EuclideanPoint,
        counter: &mut ProductCounter,
    ) -> Result<Multivector> {
        quadric.product_counted(Product::Dot, &self.dual_point(p), counter)
    }

    /// `(v0, v1, v2, v3)` of a dual plane.
    pub fn plane_coordinates(&self, plane: &Multivector) -> [f64; 4] {
        core::array::from_fn(|i| plane.get(1 << star(i)))
    }

    /// `L = x₁ ∧ x₂`.
    pub fn line(&self, x1: EuclideanPoint, x2: EuclideanPoint) -> Result<Multivector> {
        Self::nonzero_line(self.point(x1).wedge(&self.point(x2))?, x1, x2)
    }

    /// `L* = x₁* ∧ x₂*`.
    pub fn dual_line(&self, x1: EuclideanPoint, x2: EuclideanPoint) -> Result<Multivector> {
        Self::nonzero_line(self.dual_point(x1).wedge(&self.dual_point(x2))?, x1, x2)
    }

    fn nonzero_line(l: Multivector, x1: EuclideanPoint, x2: EuclideanPoint) -> Result<Multivector> {
        if l.max_abs() <= 1e-14 * (1.0 + x1.norm().max(x2.norm())) {
            return Err(Error::CoincidentPoints);
        }
        Ok(l)
    }

    /// `(L, L*)` through the closest point to the origin and one unit step along it.
    pub fn lines_from_plucker(&self, line: &PluckerLine) -> Result<(Multivector, Multivector)> {
        let p0 = line.closest_to_origin();
        let p1 = line.point_at(1.0);
        Ok((self.line(p0, p1)?, self.dual_line(p0, p1)?))
    }

    /// Pair point `((⋆L*) ∧ Q ∧ (⋆L)) ⌋ I`.
    ///
    /// `⋆` is the complement inside the four-dimensional primal (respectively
    /// dual) subspace, which turns a join of two points into the meet of two
    /// planes. Applied directly to the joins the product describes the
    /// orthogonal complement line instead.
    pub fn intersect(&self, dual_line: &Multivector, quadric: &Multivector, line: &Multivector) -> Result<Multivector> {
        self.intersect_counted(dual_line, quadric, line, &mut ProductCounter::disabled())
    }

    pub fn intersect_counted(
        &self,
        dual_line: &Multivector,
        quadric: &Multivector,
        line: &Multivector,
        counter: &mut ProductCounter,
    ) -> Result<Multivector> {
        let a = self.complement(dual_line)?;
        let b = self.complement(line)?;
        let ab = a.product_counted(Product::Outer, quadric, counter)?;
        let abc = ab.product_counted(Product::Outer, &b, counter)?;
        abc.product_counted(Product::LeftContraction, &self.pseudoscalar(), counter)
    }

    /// `w0 ∧ w1 ∧ w2 ∧ w3 ∧ w0* ∧ w1* ∧ w2* ∧ w3*`.
    pub fn pseudoscalar(&self) -> Multivector {
        Multivector::pseudoscalar(&self.algebra)
    }

    /// Complement `⋆(wᵢ ∧ wⱼ) = ε_{ijkl} wₖ ∧ wₗ` of a bivector lying in
    /// the primal or in the dual subspace.
    pub fn complement(&self, bivector: &Multivector) -> Result<Multivector> {
        if !bivector.is_grade(2) {
            return Err(Error::NotABivector);
        }
        let mut out = alloc::vec::Vec::new();
        for (blade, c) in bivector.terms() {
            let offset = if blade & 0x0f == blade {
                0
            } else if blade & 0xf0 == blade {
                4
            } else {
                return Err(Error::InvalidLine("bivector mixes primal and dual vectors"));
            };
            let local = blade >> offset;
            let rest = 0x0f & !local;
            // ε_{ijkl} is the sign of moving (i j)(k l) into ascending order.
            let sign = reorder_sign(local, rest);
            out.push((rest << offset, sign * c));
        }
        Ok(Multivector::from_terms(&self.algebra, out))
    }

    /// `|p ∧ P ∧ p*| / (|p| |P| |p*|)`: vanishes when `p` lies on the line
    /// and on the quadric.
    pub fn pair_point_residual(&self, pair: &Multivector, p: EuclideanPoint) -> Result<f64> {
        if pair.is_zero() {
            return Err(Error::LineInQuadric);
        }
        let x = self.point(p);
        let xs = self.dual_point(p);
        let test = x.wedge(pair)?.wedge(&xs)?;
        Ok(relative_size(&test, &x, pair) / xs.max_abs())
    }

    /// Rotor turning axis `i` toward axis `j` by `θ` (0 = x, 1 = y, 2 = z).
    pub fn rotor(&self, theta: f64, i: usize, j: usize) -> Result<Multivector> {
        self.rotor_with(theta, i, j, RotorGenerator::Calibrated)
    }

    pub fn rotor_with(&self, theta: f64, i: usize, j: usize, generator: RotorGenerator) -> Result<Multivector> {
        if i == j || i > 2 || j > 2 {
            return Err(Error::InvalidAxisPair { i, j });
        }
        let bivector = match generator {
            RotorGenerator::Calibrated => (self.b(j, star(i)) - self.b(i, star(j))).scale(theta),
            RotorGenerator::Verbatim => self.b(i, star(j)).scale(0.5 * theta),
        };
        bivector.exp_bivector()
    }

    /// The Euclidean rotation matrix matching [`Dpga::rotor`].
    pub fn rotation_matrix(theta: f64, i: usize, j: usize) -> Result<[[f64; 3]; 3]> {
        if i == j || i > 2 || j > 2 {
            return Err(Error::InvalidAxisPair { i, j });
        }
        let (s, c) = (libm::sin(theta), libm::cos(theta));
        let mut r = [[0.0; 3]; 3];
        for (k, row) in r.iter_mut().enumerate() {
            row[k] = 1.0;
        }
        r[i][i] = c;
        r[j][j] = c;
        r[i][j] = -s;
        r[j][i] = s;
        Ok(r)
    }

    /// `R Q R⁻¹`.
    pub fn apply(&self, rotor: &Multivector, quadric: &Multivector) -> Result<Multivector> {
        rotor.sandwich(quadric)
    }
}

fn blade_of(i: usize, j: usize) -> (Blade, f64) {
    let (a, b): (Blade, Blade) = (1 << i, 1 << j);
    (a | b, reorder_sign(a, b))
}
