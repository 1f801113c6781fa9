//! Conversion between the three frameworks.
//!
//! Every hop goes through [`QuadricCoefficients`]: extract with the source
//! framework's reciprocal operators, rebuild with the target's directions.

use core::fmt;
use core::str::FromStr;

use crate::dcga::Dcga;
use crate::dpga::Dpga;
use crate::error::{Error, Result};
use crate::multivector::Multivector;
use crate::oracle::{EuclideanPoint, QuadricCoefficients};
use crate::qcga::{FitPath, Qcga};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Framework {
    Dcga,
    Dpga,
    Qcga,
}

impl Framework {
    pub const ALL: [Framework; 3] = [Framework::Dcga, Framework::Dpga, Framework::Qcga];

    pub fn name(self) -> &'static str {
        match self {
            Framework::Dcga => "DCGA",
            Framework::Dpga => "DPGA",
            Framework::Qcga => "QCGA",
        }
    }
}

impl fmt::Display for Framework {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Error for an unrecognised framework name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownFramework;

impl fmt::Display for UnknownFramework {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("expected one of dcga, dpga, qcga")
    }
}

impl FromStr for Framework {
    type Err = UnknownFramework;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "dcga" => Ok(Framework::Dcga),
            "dpga" => Ok(Framework::Dpga),
            "qcga" => Ok(Framework::Qcga),
            _ => Err(UnknownFramework),
        }
    }
}

/// The three algebras, built once.
#[derive(Debug, Clone, Default)]
pub struct Frameworks {
    pub dcga: Dcga,
    pub dpga: Dpga,
    pub qcga: Qcga,
}

impl Frameworks {
    pub fn new() -> Self {
        Self::default()
    }

    /// Quadric entity of `framework`: a DCGA or DPGA bivector, or a QCGA dual vector.
    pub fn from_coefficients(&self, framework: Framework, q: &QuadricCoefficients) -> Multivector {
        match framework {
            Framework::Dcga => self.dcga.quadric_from_coefficients(q),
            Framework::Dpga => self.dpga.quadric_from_coefficients(q),
            Framework::Qcga => self.qcga.dual_quadric_from_coefficients(q),
        }
    }

    pub fn to_coefficients(&self, entity: &Multivector, framework: Framework) -> Result<QuadricCoefficients> {
        let own = match framework {
            Framework::Dcga => self.dcga.algebra(),
            Framework::Dpga => self.dpga.algebra(),
            Framework::Qcga => self.qcga.algebra(),
        };
        if !entity.algebra().same_as(own) {
            return Err(Error::AlgebraMismatch);
        }
        match framework {
            Framework::Dcga => self.dcga.extract_coefficients(entity),
            Framework::Dpga => self.dpga.extract_coefficients(entity),
            Framework::Qcga => self.qcga.extract_coefficients(entity),
        }
    }

    pub fn convert(&self, entity: &Multivector, from: Framework, to: Framework) -> Result<Multivector> {
        let q = self.to_coefficients(entity, from)?;
        Ok(self.from_coefficients(to, &q))
    }

    /// The framework's own membership functional at `p`.
    pub fn membership(&self, entity: &Multivector, framework: Framework, p: EuclideanPoint) -> Result<f64> {
        match framework {
            Framework::Dcga => self.dcga.contains(entity, &self.dcga.embed_point(p)),
            Framework::Dpga => self.dpga.eval_membership(entity, p),
            Framework::Qcga => self.qcga.eval_membership(entity, p),
        }
    }

    /// Fit a dual quadric to nine points in QCGA, rotate it in DPGA by `θ`
    /// from axis `i` toward axis `j`, and convert back to QCGA.
    pub fn fit_rotate_roundtrip(
        &self,
        points: &[EuclideanPoint],
        theta: f64,
        axis_pair: (usize, usize),
    ) -> Result<Multivector> {
        self.fit_rotate_roundtrip_with(points, theta, axis_pair, FitPath::Wedge)
    }

    pub fn fit_rotate_roundtrip_with(
        &self,
        points: &[EuclideanPoint],
        theta: f64,
        (i, j): (usize, usize),
        path: FitPath,
    ) -> Result<Multivector> {
        let rotor = self.dpga.rotor(theta, i, j)?;
        let fitted = self.qcga.quadric_from_nine_points(points, path)?;
        let q = self.convert(&fitted, Framework::Qcga, Framework::Dpga)?;
        let rotated = self.dpga.apply(&rotor, &q)?;
        self.convert(&rotated, Framework::Dpga, Framework::Qcga)
    }
}
