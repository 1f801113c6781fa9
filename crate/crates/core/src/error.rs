use core::fmt;

/// Errors raised by the algebra engine and the quadric frameworks.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Operands belong to different algebras.
    AlgebraMismatch,
    /// The basis names or the Gram matrix do not describe a supported signature.
    InvalidSignature(&'static str),
    /// `exp` was handed something that is not a pure bivector.
    NotABivector,
    /// The exponential series did not settle within the term budget.
    SeriesDidNotConverge,
    /// `v * reverse(v)` is not an invertible scalar.
    SingularVersor,
    /// The pseudoscalar squares to zero, so no dual exists.
    DegeneratePseudoscalar,
    /// The point configuration does not determine a unique quadric.
    DegenerateConfiguration,
    /// The quadric gradient vanishes at the query point.
    SingularPoint,
    /// The query point does not lie on the surface.
    NotOnSurface { residual: f64 },
    /// The multivector is not in the quadric subspace of the named framework.
    NotAQuadric { framework: &'static str, residual: f64 },
    /// Normalization divides by a vanishing weight.
    PointAtInfinity,
    /// The line description is unusable.
    InvalidLine(&'static str),
    /// Two planes do not meet in a line.
    ParallelPlanes,
    /// Two points that should span a line coincide.
    CoincidentPoints,
    /// The whole line lies on the quadric.
    LineInQuadric,
    /// A rotation matrix failed the orthonormality check.
    NotOrthonormal,
    /// Rotor plane indices must be distinct and in `0..=2`.
    InvalidAxisPair { i: usize, j: usize },
    /// The tangent-plane square root received a negative radicand.
    FormulaDomain { radicand: f64 },
    /// All ten coefficients vanish.
    ZeroQuadric,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::AlgebraMismatch => write!(f, "operands belong to different algebras"),
            Error::InvalidSignature(why) => write!(f, "invalid algebra signature: {why}"),
            Error::NotABivector => write!(f, "exponential requires a pure bivector"),
            Error::SeriesDidNotConverge => write!(f, "exponential series did not converge"),
            Error::SingularVersor => write!(f, "singular versor"),
            Error::DegeneratePseudoscalar => write!(f, "pseudoscalar is not invertible"),
            Error::DegenerateConfiguration => {
                write!(f, "degenerate configuration: quadric not unique")
            }
            Error::SingularPoint => write!(f, "singular point: gradient vanishes"),
            Error::NotOnSurface { residual } => {
                write!(f, "point is not on the surface (residual {residual:e})")
            }
            Error::NotAQuadric { framework, residual } => {
                write!(f, "not a {framework} quadric (residual {residual:e})")
            }
            Error::PointAtInfinity => write!(f, "point at infinity"),
            Error::InvalidLine(why) => write!(f, "invalid line: {why}"),
            Error::ParallelPlanes => write!(f, "planes do not meet in a line"),
            Error::CoincidentPoints => write!(f, "points coincide"),
            Error::LineInQuadric => write!(f, "degenerate: line in quadric"),
            Error::NotOrthonormal => write!(f, "rotation matrix is not orthonormal"),
            Error::InvalidAxisPair { i, j } => {
                write!(f, "invalid rotor plane ({i}, {j}): need distinct indices in 0..=2")
            }
            Error::FormulaDomain { radicand } => {
                write!(f, "formula domain: negative radicand {radicand:e}")
            }
            Error::ZeroQuadric => write!(f, "all quadric coefficients are zero"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
