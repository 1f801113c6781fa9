#![allow(dead_code)]

use quadric_ga::oracle::PluckerLine;
use quadric_ga::{EuclideanPoint, QuadricCoefficients};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn point(rng: &mut StdRng, r: f64) -> EuclideanPoint {
    EuclideanPoint::new(rng.gen_range(-r..r), rng.gen_range(-r..r), rng.gen_range(-r..r))
}

pub fn quadric(rng: &mut StdRng) -> QuadricCoefficients {
    QuadricCoefficients::from_array(core::array::from_fn(|_| rng.gen_range(-1.0..1.0)))
}

/// Random quadric shifted so that it passes through a random point.
pub fn quadric_through(rng: &mut StdRng) -> (QuadricCoefficients, EuclideanPoint) {
    loop {
        let mut q = quadric(rng);
        let p = point(rng, 1.5);
        q.j -= q.eval(p);
        let g = q.gradient(p);
        if (g[0] * g[0] + g[1] * g[1] + g[2] * g[2]).sqrt() > 0.1 {
            return (q, p);
        }
    }
}

pub fn direction(rng: &mut StdRng) -> [f64; 3] {
    loop {
        let d: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let n = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
        if n > 0.2 {
            return d.map(|v| v / n);
        }
    }
}

/// Random quadric and a line through one of its points, so the line has
/// real intersections.
pub fn quadric_and_secant(rng: &mut StdRng) -> (QuadricCoefficients, PluckerLine) {
    let (q, p) = quadric_through(rng);
    let line = PluckerLine::through(p, direction(rng)).unwrap();
    (q, line)
}

/// Nine points on the ellipsoid x²/rx² + y²/ry² + z²/rz² = 1.
pub fn ellipsoid_points(rng: &mut StdRng, rx: f64, ry: f64, rz: f64) -> Vec<EuclideanPoint> {
    (0..9)
        .map(|_| {
            let d = direction(rng);
            EuclideanPoint::new(rx * d[0], ry * d[1], rz * d[2])
        })
        .collect()
}

/// Nine generic points on the zero set of `q`, found by line search from
/// random starting points.
pub fn points_on(rng: &mut StdRng, q: &QuadricCoefficients, count: usize) -> Vec<EuclideanPoint> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = point(rng, 1.5);
        let line = PluckerLine::through(p, direction(rng)).unwrap();
        if let Ok(hits) = quadric_ga::oracle::intersect_line(q, &line) {
            if let Some(h) = hits.into_iter().find(|h| h.norm() < 4.0) {
                out.push(h);
            }
        }
    }
    out
}

pub fn angle(a: [f64; 3], b: [f64; 3]) -> f64 {
    quadric_ga::oracle::angle_between(a, b)
}
