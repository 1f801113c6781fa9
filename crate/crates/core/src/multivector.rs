//! Sparse multivectors and their products.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::algebra::{grade, reorder_sign, Algebra, Blade};
use crate::counter::ProductCounter;
use crate::error::{Error, Result};

/// Coefficients smaller than this fraction of `max|a|·max|b|` are dropped
/// after every product.
pub const PRUNE_RELATIVE: f64 = 1e-13;

const EXP_TOLERANCE: f64 = 1e-15;
const EXP_MAX_TERMS: usize = 64;

/// Bilinear products supported by the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Product {
    Geometric,
    Outer,
    LeftContraction,
    RightContraction,
    /// Contraction of the lower-grade operand onto the higher one.
    Dot,
    Scalar,
}

/// Linear combination of basis blades of one algebra.
#[derive(Clone)]
pub struct Multivector {
    algebra: Algebra,
    terms: BTreeMap<Blade, f64>,
}

impl Multivector {
    pub fn zero(algebra: &Algebra) -> Self {
        Multivector { algebra: algebra.clone(), terms: BTreeMap::new() }
    }

    pub fn scalar(algebra: &Algebra, s: f64) -> Self {
        Self::blade(algebra, 0, s)
    }

    /// `c · e_A` for a blade bitmask `A`.
    pub fn blade(algebra: &Algebra, blade: Blade, c: f64) -> Self {
        let mut m = Self::zero(algebra);
        if c != 0.0 {
            m.terms.insert(blade, c);
        }
        m
    }

    /// Basis vector `e_i`.
    pub fn basis(algebra: &Algebra, i: usize) -> Self {
        assert!(i < algebra.dim(), "basis index out of range");
        Self::blade(algebra, 1 << i, 1.0)
    }

    /// Wedge of basis vectors in the given order, e.g. `[6, 1]` is `e6∧e1 = −e1∧e6`.
    pub fn basis_blade(algebra: &Algebra, indices: &[usize]) -> Self {
        let mut blade: Blade = 0;
        let mut sign = 1.0;
        for &i in indices {
            assert!(i < algebra.dim(), "basis index out of range");
            let bit = 1 << i;
            if blade & bit != 0 {
                return Self::zero(algebra);
            }
            sign *= reorder_sign(blade, bit);
            blade |= bit;
        }
        Self::blade(algebra, blade, sign)
    }

    /// Grade-1 element from a full coefficient list.
    pub fn vector(algebra: &Algebra, coefficients: &[f64]) -> Self {
        assert_eq!(coefficients.len(), algebra.dim(), "vector length must equal dimension");
        Self::from_terms(algebra, coefficients.iter().enumerate().map(|(i, &c)| (1 << i, c)))
    }

    pub fn from_terms<I: IntoIterator<Item = (Blade, f64)>>(algebra: &Algebra, terms: I) -> Self {
        let mut m = Self::zero(algebra);
        for (b, c) in terms {
            m.add_term(b, c);
        }
        m.terms.retain(|_, v| *v != 0.0);
        m
    }

    /// Unit pseudoscalar `e_0 ∧ … ∧ e_{n-1}`.
    pub fn pseudoscalar(algebra: &Algebra) -> Self {
        Self::blade(algebra, algebra.pseudoscalar_blade(), 1.0)
    }

    fn add_term(&mut self, b: Blade, c: f64) {
        if c != 0.0 {
            *self.terms.entry(b).or_insert(0.0) += c;
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    /// Nonzero `(blade, coefficient)` pairs in ascending bitmask order.
    pub fn terms(&self) -> impl Iterator<Item = (Blade, f64)> + '_ {
        self.terms.iter().map(|(&b, &c)| (b, c))
    }

    pub fn get(&self, blade: Blade) -> f64 {
        self.terms.get(&blade).copied().unwrap_or(0.0)
    }

    pub fn scalar_part(&self) -> f64 {
        self.get(0)
    }

    /// Number of stored components.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Euclidean norm of the coefficient vector.
    pub fn coefficient_norm(&self) -> f64 {
        libm::sqrt(self.terms.values().map(|c| c * c).sum())
    }

    /// Coefficients of a grade-1 element, in basis order.
    pub fn vector_coefficients(&self) -> Vec<f64> {
        (0..self.algebra.dim()).map(|i| self.get(1 << i)).collect()
    }

    pub fn grade_projection(&self, k: usize) -> Self {
        self.filter(|b| grade(b) == k)
    }

    /// True when every stored blade has grade `k`.
    pub fn is_grade(&self, k: usize) -> bool {
        self.terms.keys().all(|&b| grade(b) == k)
    }

    fn filter(&self, keep: impl Fn(Blade) -> bool) -> Self {
        Multivector {
            algebra: self.algebra.clone(),
            terms: self.terms.iter().filter(|(&b, _)| keep(b)).map(|(&b, &c)| (b, c)).collect(),
        }
    }

    fn map_signs(&self, sign: impl Fn(usize) -> f64) -> Self {
        Multivector {
            algebra: self.algebra.clone(),
            terms: self.terms.iter().map(|(&b, &c)| (b, sign(grade(b)) * c)).collect(),
        }
    }

    /// Reversion: grade `k` picks up `(-1)^{k(k-1)/2}`.
    pub fn reverse(&self) -> Self {
        self.map_signs(|k| if (k * k.saturating_sub(1) / 2) % 2 == 0 { 1.0 } else { -1.0 })
    }

    /// Grade involution: grade `k` picks up `(-1)^k`.
    pub fn involute(&self) -> Self {
        self.map_signs(|k| if k % 2 == 0 { 1.0 } else { -1.0 })
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut m = self.clone();
        if s == 0.0 {
            m.terms.clear();
        } else {
            m.terms.values_mut().for_each(|c| *c *= s);
        }
        m
    }

    /// Scaling that records one multiplication per stored component.
    pub fn scale_counted(&self, s: f64, counter: &mut ProductCounter) -> Self {
        counter.add(self.len() as u64);
        self.scale(s)
    }

    /// Drops coefficients with `|c| <= tol`.
    pub fn pruned(&self, tol: f64) -> Self {
        let mut m = self.clone();
        m.terms.retain(|_, c| c.abs() > tol);
        m
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut m = self.clone();
        for (&b, &c) in &other.terms {
            m.add_term(b, c);
        }
        m.terms.retain(|_, v| *v != 0.0);
        Ok(m)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(-1.0))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.algebra.same_as(&other.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// Generic bilinear product.
    pub fn product(&self, op: Product, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(product_fast(op, self, other))
    }

    /// Bilinear product that tallies multiplications per input blade pair:
    /// every pair contributes one multiplication per output component it
    /// produces. A disabled counter falls back to the fast path.
    pub fn product_counted(
        &self,
        op: Product,
        other: &Self,
        counter: &mut ProductCounter,
    ) -> Result<Self> {
        self.check(other)?;
        if !counter.is_enabled() {
            return Ok(product_fast(op, self, other));
        }
        let alg = &self.algebra;
        let mut acc: BTreeMap<Blade, f64> = BTreeMap::new();
        for (&a, &x) in &self.terms {
            for (&b, &y) in &other.terms {
                let unit =
                    product_fast(op, &Self::blade(alg, a, 1.0), &Self::blade(alg, b, 1.0));
                if unit.is_zero() {
                    continue;
                }
                counter.add(unit.len() as u64);
                for (&c, &v) in &unit.terms {
                    *acc.entry(c).or_insert(0.0) += x * y * v;
                }
            }
        }
        Ok(finish(alg, acc, prune_threshold(self, other)))
    }

    pub fn gp(&self, other: &Self) -> Result<Self> {
        self.product(Product::Geometric, other)
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.product(Product::Outer, other)
    }

    pub fn left_contraction(&self, other: &Self) -> Result<Self> {
        self.product(Product::LeftContraction, other)
    }

    pub fn right_contraction(&self, other: &Self) -> Result<Self> {
        self.product(Product::RightContraction, other)
    }

    pub fn dot(&self, other: &Self) -> Result<Self> {
        self.product(Product::Dot, other)
    }

    pub fn scalar_product(&self, other: &Self) -> Result<f64> {
        Ok(self.product(Product::Scalar, other)?.scalar_part())
    }

    /// Commutator product `½(ab − ba)`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        let ab = self.gp(other)?;
        let ba = other.gp(self)?;
        Ok(ab.try_sub(&ba)?.scale(0.5))
    }

    /// Counted commutator: the two geometric products are tallied.
    pub fn commutator_counted(&self, other: &Self, counter: &mut ProductCounter) -> Result<Self> {
        let ab = self.product_counted(Product::Geometric, other, counter)?;
        let ba = other.product_counted(Product::Geometric, self, counter)?;
        Ok(ab.try_sub(&ba)?.scale(0.5))
    }

    /// `v⁻¹ = reverse(v) / ⟨v reverse(v)⟩₀`.
    pub fn versor_inverse(&self) -> Result<Self> {
        let r = self.reverse();
        let n = self.gp(&r)?;
        let s = n.scalar_part();
        let rest = n.filter(|b| b != 0).max_abs();
        if s == 0.0 || !s.is_finite() || rest > 1e-10 * s.abs() {
            return Err(Error::SingularVersor);
        }
        Ok(r.scale(1.0 / s))
    }

    /// `v x v⁻¹`.
    pub fn sandwich(&self, x: &Self) -> Result<Self> {
        let inv = self.versor_inverse()?;
        self.gp(x)?.gp(&inv)
    }

    /// Dual `a ⌋ I⁻¹`.
    pub fn dual(&self) -> Result<Self> {
        let i = Self::pseudoscalar(&self.algebra);
        let ii = i.gp(&i.reverse())?.scalar_part();
        if ii == 0.0 {
            return Err(Error::DegeneratePseudoscalar);
        }
        self.left_contraction(&i.reverse().scale(1.0 / ii))
    }

    /// Exponential of a pure bivector by power series.
    pub fn exp_bivector(&self) -> Result<Self> {
        if !self.is_grade(2) {
            return Err(Error::NotABivector);
        }
        let mut sum = Self::scalar(&self.algebra, 1.0);
        let mut term = sum.clone();
        for k in 1..EXP_MAX_TERMS {
            term = term.gp(self)?.scale(1.0 / k as f64);
            if term.max_abs() < EXP_TOLERANCE {
                return Ok(sum);
            }
            sum = sum.try_add(&term)?;
        }
        Err(Error::SeriesDidNotConverge)
    }

    /// Largest coefficient difference to `other`.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.try_sub(other)?.max_abs())
    }
}

/// Reads quadric coefficients off an entity with reciprocal operators and
/// checks the entity lies in the span of the matching directions.
pub(crate) fn extract_in_span(
    entity: &Multivector,
    reciprocals: &[Multivector; 10],
    directions: &[Multivector; 10],
    framework: &'static str,
) -> Result<crate::oracle::QuadricCoefficients> {
    let mut v = [0.0; 10];
    let mut rebuilt = Multivector::zero(entity.algebra());
    for k in 0..10 {
        v[k] = reciprocals[k].dot(entity)?.scalar_part();
        rebuilt = rebuilt.try_add(&directions[k].scale(v[k]))?;
    }
    let residual = entity.distance(&rebuilt)?;
    if residual > 1e-9 * entity.max_abs() {
        return Err(Error::NotAQuadric { framework, residual });
    }
    Ok(crate::oracle::QuadricCoefficients::from_array(v))
}

/// `max|test| / (max|a| · max|b|)`, or infinity when the scale vanishes.
pub(crate) fn relative_size(test: &Multivector, a: &Multivector, b: &Multivector) -> f64 {
    let scale = a.max_abs() * b.max_abs();
    if scale == 0.0 {
        return f64::INFINITY;
    }
    test.max_abs() / scale
}

fn prune_threshold(a: &Multivector, b: &Multivector) -> f64 {
    PRUNE_RELATIVE * a.max_abs() * b.max_abs()
}

fn finish(alg: &Algebra, mut acc: BTreeMap<Blade, f64>, tol: f64) -> Multivector {
    acc.retain(|_, c| c.abs() > tol);
    Multivector { algebra: alg.clone(), terms: acc }
}

fn admissible(op: Product, a: Blade, b: Blade) -> bool {
    match op {
        Product::Geometric => true,
        Product::Outer => a & b == 0,
        Product::LeftContraction => a & !b == 0,
        Product::RightContraction => b & !a == 0,
        Product::Scalar => a == b,
        Product::Dot => {
            if grade(a) <= grade(b) {
                a & !b == 0
            } else {
                b & !a == 0
            }
        }
    }
}

fn product_fast(op: Product, a: &Multivector, b: &Multivector) -> Multivector {
    let alg = &a.algebra;
    let tol = prune_threshold(a, b);
    if tol == 0.0 && (a.is_zero() || b.is_zero()) {
        return Multivector::zero(alg);
    }
    if op == Product::Outer {
        // metric-free: evaluate in the user basis
        let mut acc = BTreeMap::new();
        for (&x, &u) in &a.terms {
            for (&y, &v) in &b.terms {
                if x & y == 0 {
                    *acc.entry(x | y).or_insert(0.0) += reorder_sign(x, y) * u * v;
                }
            }
        }
        return finish(alg, acc, tol);
    }

    if grade_one(a) && grade_one(b) && op != Product::Geometric {
        // vector–vector inner products read the Gram matrix directly
        let mut s = 0.0;
        for (&x, &u) in &a.terms {
            for (&y, &v) in &b.terms {
                let g = alg.gram(x.trailing_zeros() as usize, y.trailing_zeros() as usize);
                s += g * u * v;
            }
        }
        let mut acc = BTreeMap::new();
        acc.insert(0, s);
        return finish(alg, acc, tol);
    }

    let fa = to_frame(a);
    let fb = to_frame(b);
    let mut frame: BTreeMap<Blade, f64> = BTreeMap::new();
    for &(x, u) in &fa {
        for &(y, v) in &fb {
            // grade-selecting products are grade-homogeneous per blade pair,
            // so the selection rule carries over to the frame unchanged
            if !admissible(op, x, y) {
                continue;
            }
            let s = alg.frame_product_sign(x, y);
            if s != 0.0 {
                *frame.entry(x ^ y).or_insert(0.0) += s * u * v;
            }
        }
    }
    let mut acc: BTreeMap<Blade, f64> = BTreeMap::new();
    for (&f, &c) in &frame {
        if c == 0.0 {
            continue;
        }
        for &(e, w) in alg.blade_from_frame(f) {
            *acc.entry(e).or_insert(0.0) += c * w;
        }
    }
    finish(alg, acc, tol)
}

fn grade_one(m: &Multivector) -> bool {
    m.terms.keys().all(|&b| b.count_ones() == 1)
}

fn to_frame(m: &Multivector) -> Vec<(Blade, f64)> {
    let mut acc: BTreeMap<Blade, f64> = BTreeMap::new();
    for (&b, &c) in &m.terms {
        for &(f, w) in m.algebra.blade_to_frame(b) {
            *acc.entry(f).or_insert(0.0) += c * w;
        }
    }
    acc.into_iter().filter(|&(_, c)| c != 0.0).collect()
}

impl PartialEq for Multivector {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same_as(&other.algebra) && self.terms == other.terms
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (&b, &c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            if b != 0 {
                write!(f, " {}", blade_name(&self.algebra, b))?;
            }
        }
        Ok(())
    }
}

/// Human-readable name of a blade, e.g. `e1∧e4`.
pub fn blade_name(algebra: &Algebra, blade: Blade) -> String {
    if blade == 0 {
        return "1".into();
    }
    let mut parts = Vec::new();
    for i in 0..algebra.dim() {
        if blade & (1 << i) != 0 {
            parts.push(algebra.names()[i].as_str());
        }
    }
    parts.join("∧")
}

macro_rules! binop {
    ($trait:ident, $method:ident, $call:ident) => {
        impl $trait<&Multivector> for &Multivector {
            type Output = Multivector;
            /// Panics if the operands belong to different algebras.
            fn $method(self, rhs: &Multivector) -> Multivector {
                self.$call(rhs).expect("operands belong to different algebras")
            }
        }
        impl $trait<Multivector> for Multivector {
            type Output = Multivector;
            fn $method(self, rhs: Multivector) -> Multivector {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;
    fn mul(self, s: f64) -> Multivector {
        self.scale(s)
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(self, s: f64) -> Multivector {
        self.scale(s)
    }
}
