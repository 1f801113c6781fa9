use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use quadric_ga::costmodel::{self, CostReport, Workload};
use quadric_ga::interop::{Framework, Frameworks};
use quadric_ga::oracle::{self, PluckerLine};
use quadric_ga::qcga::FitPath;
use quadric_ga::{EuclideanPoint, QuadricCoefficients};

use crate::error::CliError;
use crate::format::{self, QuadricDocument};
use crate::sample;

/// Quadric surfaces in DCGA, DPGA and QCGA.
#[derive(Debug, Parser)]
#[command(name = "quadric", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit a quadric to a point file (exactly 9 points: QCGA construction; more: least squares).
    Fit {
        points: PathBuf,
        #[arg(long, value_parser = parse_framework, default_value = "qcga")]
        framework: Framework,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Carry a quadric from one framework to another through the extraction operators.
    Convert {
        doc: PathBuf,
        #[arg(long, value_parser = parse_framework)]
        from: Framework,
        #[arg(long, value_parser = parse_framework)]
        to: Framework,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rotate a quadric with DPGA rotors; AXIS is x, y or z, DEG in degrees. Repeatable.
    Transform {
        doc: PathBuf,
        #[arg(long, num_args = 2, value_names = ["AXIS", "DEG"], required = true, allow_hyphen_values = true)]
        rotate: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the implicit function at a point.
    Eval {
        doc: PathBuf,
        #[arg(long, value_parser = format::parse_point_arg, allow_hyphen_values = true)]
        point: EuclideanPoint,
        /// Use this framework's membership product instead of the polynomial.
        #[arg(long, value_parser = parse_framework)]
        framework: Option<Framework>,
    },
    /// Tangent plane at a point of the surface.
    Tangent {
        doc: PathBuf,
        #[arg(long, value_parser = format::parse_point_arg, allow_hyphen_values = true)]
        point: EuclideanPoint,
        #[arg(long, value_parser = parse_framework)]
        framework: Option<Framework>,
    },
    /// Intersection points of the quadric with a line "px,py,pz;dx,dy,dz".
    Intersect {
        doc: PathBuf,
        #[arg(long, value_parser = format::parse_line_arg, allow_hyphen_values = true)]
        line: PluckerLine,
        /// Also build the framework's intersection entity and check each point against it.
        #[arg(long, value_parser = parse_framework)]
        framework: Option<Framework>,
    },
    /// Operation-count table: model values, instrumented counts and published values.
    Bench {
        #[arg(long)]
        tsv: bool,
    },
    /// Point cloud on the surface inside [-2, 2]³.
    Sample {
        doc: PathBuf,
        #[arg(long, default_value_t = 20)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_framework(s: &str) -> Result<Framework, String> {
    s.parse().map_err(|e: quadric_ga::interop::UnknownFramework| e.to_string())
}

/// What a command produced: text for stdout plus warnings for stderr.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub warnings: Vec<String>,
}

impl Outcome {
    fn text(stdout: String) -> Self {
        Outcome { stdout, warnings: Vec::new() }
    }
}

/// Residual bound for accepting a point against a GA intersection entity.
const PAIR_TOLERANCE: f64 = 1e-8;

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let f = Frameworks::new();
    match &cli.command {
        Command::Fit { points, framework, out } => {
            let pts = format::parse_points(&format::read_text(points)?, &points.display().to_string())?;
            let doc = fit(&f, &pts, *framework)?;
            emit(doc.render(), out.as_deref())
        }
        Command::Convert { doc, from, to, out } => {
            let d = QuadricDocument::read(doc)?;
            let source = f.from_coefficients(*from, &d.coefficients);
            let target = f.convert(&source, *from, *to)?;
            let q = f.to_coefficients(&target, *to)?;
            let mut outdoc = QuadricDocument { coefficients: q, notes: d.notes };
            outdoc.notes.push(format!("converted {from} -> {to}"));
            outdoc.notes.push(format!("{to} entity: {target}"));
            emit(outdoc.render(), out.as_deref())
        }
        Command::Transform { doc, rotate, out } => {
            let d = QuadricDocument::read(doc)?;
            let mut q = d.coefficients;
            let mut notes = d.notes;
            for pair in rotate.chunks(2) {
                let (axis, deg) = parse_rotation(&pair[0], &pair[1])?;
                q = rotate_about_axis(&f, &q, axis, deg.to_radians())?;
                notes.push(format!("rotated {deg} degrees about {}", ["x", "y", "z"][axis]));
            }
            emit(QuadricDocument { coefficients: q, notes }.render(), out.as_deref())
        }
        Command::Eval { doc, point, framework } => {
            let q = QuadricDocument::read(doc)?.coefficients;
            let v = match framework {
                None => q.eval(*point),
                Some(fw) => f.membership(&f.from_coefficients(*fw, &q), *fw, *point)?,
            };
            Ok(Outcome::text(format!("{v}\n")))
        }
        Command::Tangent { doc, point, framework } => {
            let q = QuadricDocument::read(doc)?.coefficients;
            tangent(&f, &q, *point, *framework).map(Outcome::text)
        }
        Command::Intersect { doc, line, framework } => {
            let q = QuadricDocument::read(doc)?.coefficients;
            intersect(&f, &q, line, *framework).map(Outcome::text)
        }
        Command::Bench { tsv } => Ok(Outcome::text(bench_table(&bench_reports(&f)?, *tsv))),
        Command::Sample { doc, grid, out } => {
            if *grid < 2 {
                return Err(CliError::Usage("--grid must be at least 2".into()));
            }
            let q = QuadricDocument::read(doc)?.coefficients;
            let pts = sample::sample_surface(&q, *grid, sample::DEFAULT_EXTENT);
            let mut outcome = emit(format::render_points(&pts), out.as_deref())?;
            if pts.is_empty() {
                outcome.warnings.push("warning: no surface points inside [-2, 2]^3".into());
            }
            Ok(outcome)
        }
    }
}

fn emit(text: String, out: Option<&Path>) -> Result<Outcome, CliError> {
    match out {
        Some(path) => {
            format::write_text(path, &text)?;
            Ok(Outcome::default())
        }
        None => Ok(Outcome::text(text)),
    }
}

/// Nine points go through the QCGA construction (wedge path in QCGA, the
/// design-matrix null space in the other two); more points are fitted by
/// least squares.
pub fn fit(f: &Frameworks, pts: &[EuclideanPoint], framework: Framework) -> Result<QuadricDocument, CliError> {
    if pts.len() < 9 {
        return Err(CliError::Usage(format!("fit needs at least 9 points, got {}", pts.len())));
    }
    let (q, how) = if pts.len() == 9 {
        let q = match framework {
            Framework::Qcga => {
                let entity = f.qcga.quadric_from_nine_points(pts, FitPath::Wedge)?;
                f.qcga.extract_coefficients(&entity)?
            }
            other => {
                let q = oracle::fit_nine_points(pts)?;
                f.to_coefficients(&f.from_coefficients(other, &q), other)?
            }
        };
        (q, format!("fit: 9 points, {framework} construction"))
    } else {
        (oracle::fit_points(pts)?, format!("fit: {} points, least squares", pts.len()))
    };
    Ok(QuadricDocument::new(q.canonical()?).with_note(how))
}

fn parse_rotation(axis: &str, deg: &str) -> Result<(usize, f64), CliError> {
    let a = match axis.to_ascii_lowercase().as_str() {
        "x" => 0,
        "y" => 1,
        "z" => 2,
        _ => return Err(CliError::Usage(format!("rotation axis must be x, y or z, got {axis:?}"))),
    };
    let d: f64 = deg.parse().map_err(|_| CliError::Usage(format!("rotation angle must be a number, got {deg:?}")))?;
    if !d.is_finite() {
        return Err(CliError::Usage(format!("rotation angle must be finite, got {deg:?}")));
    }
    Ok((a, d))
}

/// Right-handed rotation about a coordinate axis, applied as a DPGA rotor
/// to the quadric carried over from QCGA and converted back.
pub fn rotate_about_axis(
    f: &Frameworks,
    q: &QuadricCoefficients,
    axis: usize,
    theta: f64,
) -> Result<QuadricCoefficients, CliError> {
    // rotation about x turns y toward z, about y turns z toward x, about z turns x toward y
    let (i, j) = [(1, 2), (2, 0), (0, 1)][axis];
    let dual = f.from_coefficients(Framework::Qcga, q);
    let entity = f.convert(&dual, Framework::Qcga, Framework::Dpga)?;
    let rotated = f.dpga.apply(&f.dpga.rotor(theta, i, j)?, &entity)?;
    let back = f.convert(&rotated, Framework::Dpga, Framework::Qcga)?;
    Ok(f.to_coefficients(&back, Framework::Qcga)?)
}

fn tangent(f: &Frameworks, q: &QuadricCoefficients, p: EuclideanPoint, framework: Option<Framework>) -> Result<String, CliError> {
    let mut out = String::new();
    let (normal, entity) = match framework {
        None => {
            let plane = oracle::tangent_plane(q, p)?;
            (plane.normal, None)
        }
        Some(Framework::Dcga) => {
            let t = f.dcga.tangent_plane(&f.dcga.quadric_from_coefficients(q), p)?;
            (t.normal, Some(t.plane.to_string()))
        }
        Some(Framework::Dpga) => {
            oracle::tangent_plane(q, p)?;
            let plane = f.dpga.tangent_plane_dual(&f.dpga.quadric_from_coefficients(q), p)?;
            let v = f.dpga.plane_coordinates(&plane);
            (unit([v[0], v[1], v[2]])?, Some(plane.to_string()))
        }
        Some(Framework::Qcga) => {
            let t = f.qcga.tangent_plane(&f.qcga.dual_quadric_from_coefficients(q), p)?;
            (unit(t.normal)?, Some(t.plane.to_string()))
        }
    };
    let offset = oracle::dot3(normal, p.to_array());
    let _ = writeln!(out, "normal {} {} {}", normal[0], normal[1], normal[2]);
    let _ = writeln!(out, "offset {offset}");
    if let Some(e) = entity {
        let _ = writeln!(out, "# entity: {e}");
    }
    Ok(out)
}

fn unit(v: [f64; 3]) -> Result<[f64; 3], CliError> {
    let n = oracle::norm3(v);
    if n == 0.0 {
        return Err(quadric_ga::Error::SingularPoint.into());
    }
    Ok(v.map(|c| c / n))
}

fn intersect(f: &Frameworks, q: &QuadricCoefficients, line: &PluckerLine, framework: Option<Framework>) -> Result<String, CliError> {
    let roots = oracle::intersect_line(q, line)?;
    let mut out = String::new();
    if roots.is_empty() {
        out.push_str("# no real intersection\n");
    }
    let residual: Option<Box<dyn Fn(EuclideanPoint) -> quadric_ga::Result<f64>>> = match framework {
        None => None,
        Some(Framework::Dcga) => {
            let pair = f.dcga.intersect(&f.dcga.quadric_from_coefficients(q), &f.dcga.line_from_plucker(line)?)?;
            Some(Box::new(move |p| f.dcga.pair_point_residual(&pair, p)))
        }
        Some(Framework::Dpga) => {
            let (l, ls) = f.dpga.lines_from_plucker(line)?;
            let pair = f.dpga.intersect(&ls, &f.dpga.quadric_from_coefficients(q), &l)?;
            Some(Box::new(move |p| f.dpga.pair_point_residual(&pair, p)))
        }
        Some(Framework::Qcga) => {
            let pair = f.qcga.intersect(&f.qcga.dual_quadric_from_coefficients(q), &f.qcga.line_from_plucker(line)?)?;
            Some(Box::new(move |p| f.qcga.pair_point_residual(&pair, p)))
        }
    };
    for r in roots {
        if let Some(check) = &residual {
            let v = check(r)?;
            if v > PAIR_TOLERANCE {
                return Err(quadric_ga::Error::NotOnSurface { residual: v }.into());
            }
            let _ = writeln!(out, "# residual {v:e}");
        }
        let _ = writeln!(out, "{} {} {}", r.x, r.y, r.z);
    }
    Ok(out)
}

/// Fixed dense workload for the instrumented counts.
pub fn bench_workload() -> Workload {
    let mut quadric = QuadricCoefficients::from_array([0.9, 1.1, 0.7, 0.3, -0.2, 0.25, 0.4, -0.5, 0.6, 0.0]);
    let point = EuclideanPoint::new(0.6, -0.3, 0.5);
    quadric.j = -quadric.eval(point);
    let line = PluckerLine::through(point, [0.48, 0.6, 0.64]).expect("nonzero direction");
    Workload { quadric, point, line }
}

pub fn bench_reports(f: &Frameworks) -> Result<Vec<CostReport>, CliError> {
    let w = bench_workload();
    costmodel::table3()
        .into_iter()
        .map(|r| Ok(costmodel::measure(f, r.framework, r.operation, &w)?))
        .collect()
}

pub fn bench_table(rows: &[CostReport], tsv: bool) -> String {
    let header = ["framework", "operation", "symbolic", "measured", "paper", "note"];
    let cells: Vec<[String; 6]> = rows
        .iter()
        .map(|r| {
            let flag = r.discrepancy().map_or(String::new(), |v| format!("DISCREPANCY (printed {v}): "));
            [
                r.framework.to_string(),
                r.operation.to_string(),
                r.symbolic.to_string(),
                r.measured.map_or("-".into(), |m| m.to_string()),
                r.paper_value.to_string(),
                format!("{flag}{}", r.note.unwrap_or("")),
            ]
        })
        .collect();
    let mut out = String::new();
    if tsv {
        out.push_str(&header.join("\t"));
        out.push('\n');
        for c in &cells {
            out.push_str(&c.join("\t"));
            out.push('\n');
        }
        return out;
    }
    let mut width = header.map(str::len);
    for c in &cells {
        for (w, s) in width.iter_mut().zip(c) {
            *w = (*w).max(s.chars().count());
        }
    }
    let mut line = |row: [&str; 6]| {
        let mut s = String::new();
        for (k, cell) in row.iter().enumerate() {
            if k + 1 == row.len() {
                s.push_str(cell);
            } else {
                let _ = write!(s, "{cell:<w$}  ", w = width[k]);
            }
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(header);
    for c in &cells {
        line([&c[0], &c[1], &c[2], &c[3], &c[4], &c[5]]);
    }
    out
}
