//! Classical quadric mathematics with 4×4 symmetric matrices.
//!
//! Nothing here touches geometric algebra; every framework module is
//! checked against these routines.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, Matrix3, Matrix4, Vector3, Vector4};

use crate::error::{Error, Result};

/// Relative rank cut-off for the point-fit null space.
pub const RANK_TOLERANCE: f64 = 1e-10;
/// Relative discriminant band treated as tangency.
pub const TANGENCY_TOLERANCE: f64 = 1e-10;
/// Relative residual below which a point counts as on the surface.
pub const ON_SURFACE_TOLERANCE: f64 = 1e-8;

/// The ten monomials of a quadric, in coefficient order `a..j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Monomial {
    X2,
    Y2,
    Z2,
    XY,
    YZ,
    ZX,
    X,
    Y,
    Z,
    One,
}

impl Monomial {
    pub const ALL: [Monomial; 10] = [
        Monomial::X2,
        Monomial::Y2,
        Monomial::Z2,
        Monomial::XY,
        Monomial::YZ,
        Monomial::ZX,
        Monomial::X,
        Monomial::Y,
        Monomial::Z,
        Monomial::One,
    ];

    /// Position of the matching coefficient in `a..j`.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Monomial::X2 => "x2",
            Monomial::Y2 => "y2",
            Monomial::Z2 => "z2",
            Monomial::XY => "xy",
            Monomial::YZ => "yz",
            Monomial::ZX => "zx",
            Monomial::X => "x",
            Monomial::Y => "y",
            Monomial::Z => "z",
            Monomial::One => "1",
        }
    }
}

/// Coefficients of `a x² + b y² + c z² + d xy + e yz + f zx + g x + h y + i z + j = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct QuadricCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// xy
    pub d: f64,
    /// yz
    pub e: f64,
    /// zx
    pub f: f64,
    pub g: f64,
    pub h: f64,
    pub i: f64,
    pub j: f64,
}

impl QuadricCoefficients {
    pub fn from_array(v: [f64; 10]) -> Self {
        let [a, b, c, d, e, f, g, h, i, j] = v;
        QuadricCoefficients { a, b, c, d, e, f, g, h, i, j }
    }

    pub fn to_array(&self) -> [f64; 10] {
        [self.a, self.b, self.c, self.d, self.e, self.f, self.g, self.h, self.i, self.j]
    }

    /// `x² + y² + z² − 1`.
    pub fn unit_sphere() -> Self {
        Self::from_array([1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0])
    }

    /// Axis-aligned ellipsoid `x²/rx² + y²/ry² + z²/rz² − 1`.
    pub fn ellipsoid(rx: f64, ry: f64, rz: f64) -> Self {
        Self::from_array([
            1.0 / (rx * rx),
            1.0 / (ry * ry),
            1.0 / (rz * rz),
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
            -1.0,
        ])
    }

    /// The quadric with a single unit coefficient.
    pub fn unit(m: Monomial) -> Self {
        let mut v = [0.0; 10];
        v[m.index()] = 1.0;
        Self::from_array(v)
    }

    pub fn get(&self, m: Monomial) -> f64 {
        self.to_array()[m.index()]
    }

    pub fn is_zero(&self) -> bool {
        self.to_array().iter().all(|&v| v == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.to_array().iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_array(self.to_array().map(|v| v * s))
    }

    /// Unit Euclidean norm with the first significant entry positive.
    ///
    /// "Significant" means larger than `1e-12` after normalization, so
    /// round-off crumbs in leading slots cannot flip the sign.
    pub fn canonical(&self) -> Result<Self> {
        let v = self.to_array();
        let norm = libm::sqrt(v.iter().map(|x| x * x).sum());
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroQuadric);
        }
        let mut u = v.map(|x| x / norm);
        if let Some(lead) = u.iter().find(|x| x.abs() > 1e-12) {
            if *lead < 0.0 {
                u = u.map(|x| -x);
            }
        }
        Ok(Self::from_array(u))
    }

    /// Largest component difference between the canonical forms.
    pub fn canonical_distance(&self, other: &Self) -> Result<f64> {
        let a = self.canonical()?.to_array();
        let b = other.canonical()?.to_array();
        Ok(a.iter().zip(&b).fold(0.0, |m, (x, y)| m.max((x - y).abs())))
    }

    pub fn eval(&self, p: EuclideanPoint) -> f64 {
        monomials(p).iter().zip(self.to_array()).map(|(m, c)| m * c).sum()
    }

    /// Sum of `|coefficient · monomial|`: the natural scale of `eval` at `p`.
    pub fn eval_scale(&self, p: EuclideanPoint) -> f64 {
        monomials(p).iter().zip(self.to_array()).map(|(m, c)| (m * c).abs()).sum()
    }

    pub fn gradient(&self, p: EuclideanPoint) -> [f64; 3] {
        let EuclideanPoint { x, y, z } = p;
        [
            2.0 * self.a * x + self.d * y + self.f * z + self.g,
            2.0 * self.b * y + self.d * x + self.e * z + self.h,
            2.0 * self.c * z + self.e * y + self.f * x + self.i,
        ]
    }
}

/// `(x², y², z², xy, yz, zx, x, y, z, 1)`, the monomials paired with `a..j`.
pub fn monomials(p: EuclideanPoint) -> [f64; 10] {
    let EuclideanPoint { x, y, z } = p;
    [x * x, y * y, z * z, x * y, y * z, z * x, x, y, z, 1.0]
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EuclideanPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl EuclideanPoint {
    pub const ORIGIN: EuclideanPoint = EuclideanPoint { x: 0.0, y: 0.0, z: 0.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        EuclideanPoint { x, y, z }
    }

    pub fn from_array(v: [f64; 3]) -> Self {
        EuclideanPoint { x: v[0], y: v[1], z: v[2] }
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn norm_squared(&self) -> f64 {
        dot3(self.to_array(), self.to_array())
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.norm_squared())
    }

    pub fn distance(&self, other: &Self) -> f64 {
        (*self - *other).norm()
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for EuclideanPoint {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        EuclideanPoint::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for EuclideanPoint {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        EuclideanPoint::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for EuclideanPoint {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        EuclideanPoint::new(self.x * s, self.y * s, self.z * s)
    }
}

pub fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn norm3(a: [f64; 3]) -> f64 {
    libm::sqrt(dot3(a, a))
}

/// Angle between two 3-vectors, in radians; robust near zero.
pub fn angle_between(a: [f64; 3], b: [f64; 3]) -> f64 {
    libm::atan2(norm3(cross3(a, b)), dot3(a, b))
}

/// Line with direction `n` and moment `m = p × n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PluckerLine {
    pub n: [f64; 3],
    pub m: [f64; 3],
}

impl PluckerLine {
    /// Validates `|n| > 0` and `n·m = 0` (relative to `|n||m|`, 1e-10).
    pub fn new(n: [f64; 3], m: [f64; 3]) -> Result<Self> {
        let nn = norm3(n);
        if nn == 0.0 || !nn.is_finite() {
            return Err(Error::InvalidLine("zero direction"));
        }
        if dot3(n, m).abs() > 1e-10 * nn * norm3(m).max(1.0) {
            return Err(Error::InvalidLine("direction and moment are not orthogonal"));
        }
        Ok(PluckerLine { n, m })
    }

    /// Line through `p` with direction `n`.
    pub fn through(p: EuclideanPoint, n: [f64; 3]) -> Result<Self> {
        Self::new(n, cross3(p.to_array(), n))
    }

    pub fn from_points(p: EuclideanPoint, q: EuclideanPoint) -> Result<Self> {
        if p == q {
            return Err(Error::CoincidentPoints);
        }
        Self::through(p, (q - p).to_array())
    }

    /// Point of the line closest to the origin: `n × m / |n|²`.
    pub fn closest_to_origin(&self) -> EuclideanPoint {
        let c = cross3(self.n, self.m);
        let nn = dot3(self.n, self.n);
        EuclideanPoint::from_array(c.map(|v| v / nn))
    }

    /// `p0 + t n`.
    pub fn point_at(&self, t: f64) -> EuclideanPoint {
        let p0 = self.closest_to_origin();
        p0 + EuclideanPoint::from_array(self.n) * t
    }

    /// Parameter of the projection of `p` onto the line.
    pub fn parameter_of(&self, p: EuclideanPoint) -> f64 {
        let p0 = self.closest_to_origin();
        dot3((p - p0).to_array(), self.n) / dot3(self.n, self.n)
    }

    /// Distance from `p` to the line.
    pub fn distance_to(&self, p: EuclideanPoint) -> f64 {
        p.distance(&self.point_at(self.parameter_of(p)))
    }
}

/// Plane `normal · p = offset` with unit normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Plane {
    pub normal: [f64; 3],
    pub offset: f64,
}

/// Symmetric 4×4 matrix `M` with `f(p) = [p 1] M [p 1]ᵀ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadricMatrix(pub Matrix4<f64>);

impl QuadricMatrix {
    pub fn from_coefficients(q: &QuadricCoefficients) -> Self {
        let QuadricCoefficients { a, b, c, d, e, f, g, h, i, j } = *q;
        #[rustfmt::skip]
        let m = Matrix4::new(
            a,       d / 2.0, f / 2.0, g / 2.0,
            d / 2.0, b,       e / 2.0, h / 2.0,
            f / 2.0, e / 2.0, c,       i / 2.0,
            g / 2.0, h / 2.0, i / 2.0, j,
        );
        QuadricMatrix(m)
    }

    pub fn to_coefficients(&self) -> QuadricCoefficients {
        let m = &self.0;
        QuadricCoefficients {
            a: m[(0, 0)],
            b: m[(1, 1)],
            c: m[(2, 2)],
            d: m[(0, 1)] + m[(1, 0)],
            e: m[(1, 2)] + m[(2, 1)],
            f: m[(0, 2)] + m[(2, 0)],
            g: m[(0, 3)] + m[(3, 0)],
            h: m[(1, 3)] + m[(3, 1)],
            i: m[(2, 3)] + m[(3, 2)],
            j: m[(3, 3)],
        }
    }

    pub fn eval(&self, p: EuclideanPoint) -> f64 {
        let v = Vector4::new(p.x, p.y, p.z, 1.0);
        v.dot(&(self.0 * v))
    }
}

/// Tangent plane at an on-surface point, from the gradient.
pub fn tangent_plane(q: &QuadricCoefficients, p: EuclideanPoint) -> Result<Plane> {
    let residual = q.eval(p);
    if residual.abs() > ON_SURFACE_TOLERANCE * q.eval_scale(p).max(1.0) {
        return Err(Error::NotOnSurface { residual });
    }
    let grad = q.gradient(p);
    let len = norm3(grad);
    let scale = q.max_abs() * (1.0 + p.norm());
    if len <= 1e-12 * scale {
        return Err(Error::SingularPoint);
    }
    let normal = grad.map(|v| v / len);
    Ok(Plane { normal, offset: dot3(normal, p.to_array()) })
}

/// Real intersections of a line with the quadric, ordered along the line
/// direction. A discriminant within the tangency band gives one point.
pub fn intersect_line(q: &QuadricCoefficients, line: &PluckerLine) -> Result<Vec<EuclideanPoint>> {
    let m = QuadricMatrix::from_coefficients(q).0;
    let p0 = line.closest_to_origin();
    let p = Vector4::new(p0.x, p0.y, p0.z, 1.0);
    let n = Vector4::new(line.n[0], line.n[1], line.n[2], 0.0);
    let qa = n.dot(&(m * n));
    let qb = 2.0 * n.dot(&(m * p));
    let qc = p.dot(&(m * p));

    let nn = norm3(line.n);
    let scale = q.max_abs() * (1.0 + p0.norm() + nn) * (1.0 + p0.norm() + nn);
    let tiny = 1e-13 * scale;
    if qa.abs() <= tiny && qb.abs() <= tiny && qc.abs() <= tiny {
        return Err(Error::LineInQuadric);
    }
    if qa.abs() <= tiny {
        // the line meets the quadric's asymptotic cone direction: linear equation
        if qb.abs() <= tiny {
            return Ok(Vec::new());
        }
        return Ok(vec![line.point_at(-qc / qb)]);
    }
    let disc = qb * qb - 4.0 * qa * qc;
    let band = TANGENCY_TOLERANCE * (qb * qb).max((4.0 * qa * qc).abs());
    if disc.abs() <= band {
        return Ok(vec![line.point_at(-qb / (2.0 * qa))]);
    }
    if disc < 0.0 {
        return Ok(Vec::new());
    }
    let root = libm::sqrt(disc);
    let k = -0.5 * (qb + libm::copysign(root, qb));
    let (mut t1, mut t2) = (k / qa, qc / k);
    if t1 > t2 {
        core::mem::swap(&mut t1, &mut t2);
    }
    Ok(vec![line.point_at(t1), line.point_at(t2)])
}

/// Rotation by `angle` about coordinate axis `axis` (0 = x, 1 = y, 2 = z).
pub fn axis_rotation(axis: usize, angle: f64) -> [[f64; 3]; 3] {
    let (s, c) = (libm::sin(angle), libm::cos(angle));
    match axis {
        0 => [[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]],
        1 => [[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]],
        _ => [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]],
    }
}

/// Rodrigues rotation about an arbitrary (not necessarily unit) axis.
pub fn rotation_about(axis: [f64; 3], angle: f64) -> Result<[[f64; 3]; 3]> {
    let len = norm3(axis);
    if len == 0.0 {
        return Err(Error::InvalidLine("zero rotation axis"));
    }
    let u = Vector3::from(axis.map(|v| v / len));
    let r = nalgebra::Rotation3::from_axis_angle(&nalgebra::Unit::new_unchecked(u), angle);
    let m = r.matrix();
    Ok([
        [m[(0, 0)], m[(0, 1)], m[(0, 2)]],
        [m[(1, 0)], m[(1, 1)], m[(1, 2)]],
        [m[(2, 0)], m[(2, 1)], m[(2, 2)]],
    ])
}

pub fn apply_rigid(r: &[[f64; 3]; 3], t: [f64; 3], p: EuclideanPoint) -> EuclideanPoint {
    let v = p.to_array();
    EuclideanPoint::new(
        dot3(r[0], v) + t[0],
        dot3(r[1], v) + t[1],
        dot3(r[2], v) + t[2],
    )
}

/// Image of the quadric under `p ↦ R p + t`: `M' = A⁻ᵀ M A⁻¹`.
pub fn transform(
    q: &QuadricCoefficients,
    r: &[[f64; 3]; 3],
    t: [f64; 3],
) -> Result<QuadricCoefficients> {
    let rm = Matrix3::from_fn(|i, j| r[i][j]);
    let defect = (rm.transpose() * rm - Matrix3::identity()).amax();
    if !(defect <= 1e-9) {
        return Err(Error::NotOrthonormal);
    }
    let rt = rm.transpose();
    let shift = -(rt * Vector3::from(t));
    let mut inv = Matrix4::identity();
    inv.fixed_view_mut::<3, 3>(0, 0).copy_from(&rt);
    inv.fixed_view_mut::<3, 1>(0, 3).copy_from(&shift);
    let m = QuadricMatrix::from_coefficients(q).0;
    let out = inv.transpose() * m * inv;
    Ok(QuadricMatrix(out).to_coefficients())
}

/// Quadric through exactly nine points, as the null space of the design matrix.
pub fn fit_nine_points(points: &[EuclideanPoint]) -> Result<QuadricCoefficients> {
    if points.len() != 9 {
        return Err(Error::DegenerateConfiguration);
    }
    fit_points(points)
}

/// Quadric through nine or more points: the right singular vector of the
/// smallest singular value of the design matrix. Rank below nine (relative
/// cut-off [`RANK_TOLERANCE`]) means the quadric is not unique.
pub fn fit_points(points: &[EuclideanPoint]) -> Result<QuadricCoefficients> {
    if points.len() < 9 || points.iter().any(|p| !p.is_finite()) {
        return Err(Error::DegenerateConfiguration);
    }
    let rows = points.len().max(10);
    let mut design = DMatrix::<f64>::zeros(rows, 10);
    for (r, p) in points.iter().enumerate() {
        for (c, v) in monomials(*p).iter().enumerate() {
            design[(r, c)] = *v;
        }
    }
    let svd = design.svd(false, true);
    let v_t = svd.v_t.as_ref().ok_or(Error::DegenerateConfiguration)?;
    let sigma = &svd.singular_values;
    let max = sigma.max();
    if max == 0.0 {
        return Err(Error::DegenerateConfiguration);
    }
    let rank = sigma.iter().filter(|&&s| s > RANK_TOLERANCE * max).count();
    if rank < 9 {
        return Err(Error::DegenerateConfiguration);
    }
    let (k, _) = sigma
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |(bk, bs), (k, &s)| if s < bs { (k, s) } else { (bk, bs) });
    let mut v = [0.0; 10];
    for (c, slot) in v.iter_mut().enumerate() {
        *slot = v_t[(k, c)];
    }
    QuadricCoefficients::from_array(v).canonical()
}
