//! Line-oriented text formats.
//!
//! A quadric document is any number of `#` comment lines plus exactly one
//! line of ten numbers `a b c d e f g h i j` for
//! `a x² + b y² + c z² + d xy + e yz + f zx + g x + h y + i z + j`.
//! A point file holds one `x y z` triple per line; blank and `#` lines are
//! skipped.

use std::fmt::Write as _;
use std::path::Path;

use quadric_ga::oracle::PluckerLine;
use quadric_ga::{EuclideanPoint, QuadricCoefficients};

use crate::error::CliError;

/// Quadric coefficients with free-form provenance notes.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadricDocument {
    pub coefficients: QuadricCoefficients,
    /// Comment lines, without the leading `#`.
    pub notes: Vec<String>,
}

impl QuadricDocument {
    pub fn new(coefficients: QuadricCoefficients) -> Self {
        QuadricDocument { coefficients, notes: Vec::new() }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        let mut notes = Vec::new();
        let mut found = None;
        for (n, line) in text.lines().enumerate() {
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            if let Some(c) = t.strip_prefix('#') {
                notes.push(c.trim().to_string());
                continue;
            }
            if found.is_some() {
                return Err(CliError::parse(origin, n + 1, "more than one coefficient line"));
            }
            let values = numbers(t).map_err(|m| CliError::parse(origin, n + 1, m))?;
            let arr: [f64; 10] = values
                .try_into()
                .map_err(|v: Vec<f64>| CliError::parse(origin, n + 1, format!("expected 10 coefficients, found {}", v.len())))?;
            found = Some(QuadricCoefficients::from_array(arr));
        }
        let coefficients = found.ok_or_else(|| CliError::parse(origin, 0, "no coefficient line"))?;
        // the header written by `render` is not a provenance note
        notes.retain(|n| n != HEADER);
        Ok(QuadricDocument { coefficients, notes })
    }

    pub fn render(&self) -> String {
        let mut out = format!("# {HEADER}\n");
        for n in &self.notes {
            let _ = writeln!(out, "# {n}");
        }
        let c = self.coefficients.to_array().map(|v| v.to_string());
        out.push_str(&c.join(" "));
        out.push('\n');
        out
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        Self::parse(&read_text(path)?, &path.display().to_string())
    }
}

const HEADER: &str = "a b c d e f g h i j  (a x² + b y² + c z² + d xy + e yz + f zx + g x + h y + i z + j)";

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

pub fn parse_points(text: &str, origin: &str) -> Result<Vec<EuclideanPoint>, CliError> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let v = numbers(t).map_err(|m| CliError::parse(origin, n + 1, m))?;
        if v.len() != 3 {
            return Err(CliError::parse(origin, n + 1, format!("expected 3 coordinates, found {}", v.len())));
        }
        out.push(EuclideanPoint::new(v[0], v[1], v[2]));
    }
    Ok(out)
}

pub fn render_points(points: &[EuclideanPoint]) -> String {
    let mut out = String::new();
    for p in points {
        let _ = writeln!(out, "{} {} {}", p.x, p.y, p.z);
    }
    out
}

/// `"x,y,z"`.
pub fn parse_point_arg(s: &str) -> Result<EuclideanPoint, String> {
    let v = numbers(&s.replace(',', " "))?;
    match v[..] {
        [x, y, z] => Ok(EuclideanPoint::new(x, y, z)),
        _ => Err(format!("expected x,y,z, got {s:?}")),
    }
}

/// `"px,py,pz;dx,dy,dz"`: a point on the line and its direction.
pub fn parse_line_arg(s: &str) -> Result<PluckerLine, String> {
    let (p, d) = s.split_once(';').ok_or_else(|| format!("expected px,py,pz;dx,dy,dz, got {s:?}"))?;
    let p = parse_point_arg(p)?;
    let d = parse_point_arg(d)?;
    PluckerLine::through(p, d.to_array()).map_err(|e| e.to_string())
}

fn numbers(s: &str) -> Result<Vec<f64>, String> {
    s.split_whitespace()
        .map(|w| {
            let v: f64 = w.parse().map_err(|_| format!("not a number: {w:?}"))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(format!("not finite: {w:?}"))
            }
        })
        .collect()
}
