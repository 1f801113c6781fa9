//! Point clouds on the zero set of a quadric.

use quadric_ga::{EuclideanPoint, QuadricCoefficients};

/// Half-width of the default sampling box `[−2, 2]³`.
pub const DEFAULT_EXTENT: f64 = 2.0;
/// Bisection stops once `|f| < SAMPLE_TOLERANCE`.
pub const SAMPLE_TOLERANCE: f64 = 1e-6;
const MAX_BISECTIONS: usize = 200;

/// One point per grid cell whose corner values straddle zero.
///
/// The cube `[−extent, extent]³` is split into `n³` cells. For every cell
/// with `min ≤ 0 ≤ max` over its corners, the segment from the cell centre
/// to a corner of opposite sign is bisected until `|f| < SAMPLE_TOLERANCE`.
pub fn sample_surface(q: &QuadricCoefficients, n: usize, extent: f64) -> Vec<EuclideanPoint> {
    assert!(n >= 2, "grid must have at least 2 cells per axis");
    let step = 2.0 * extent / n as f64;
    let coord = |k: usize| -extent + step * k as f64;
    let m = n + 1;
    let mut values = vec![0.0; m * m * m];
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                values[(i * m + j) * m + k] = q.eval(EuclideanPoint::new(coord(i), coord(j), coord(k)));
            }
        }
    }
    let mut out = Vec::new();
    // cells sharing a corner that lies exactly on the surface all return it
    let mut seen = std::collections::HashSet::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut corners = [(EuclideanPoint::ORIGIN, 0.0); 8];
                for (c, slot) in corners.iter_mut().enumerate() {
                    let (a, b, d) = (i + (c >> 2), j + ((c >> 1) & 1), k + (c & 1));
                    *slot = (EuclideanPoint::new(coord(a), coord(b), coord(d)), values[(a * m + b) * m + d]);
                }
                let lo = corners.iter().fold(f64::INFINITY, |x, c| x.min(c.1));
                let hi = corners.iter().fold(f64::NEG_INFINITY, |x, c| x.max(c.1));
                if !(lo <= 0.0 && 0.0 <= hi) {
                    continue;
                }
                let centre = EuclideanPoint::new(coord(i) + step / 2.0, coord(j) + step / 2.0, coord(k) + step / 2.0);
                if let Some(p) = refine(q, centre, &corners) {
                    if seen.insert(p.to_array().map(f64::to_bits)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn refine(q: &QuadricCoefficients, centre: EuclideanPoint, corners: &[(EuclideanPoint, f64)]) -> Option<EuclideanPoint> {
    let fc = q.eval(centre);
    if fc.abs() < SAMPLE_TOLERANCE {
        return Some(centre);
    }
    let &(target, ft) = corners.iter().find(|c| (c.1 <= 0.0) != (fc <= 0.0))?;
    if ft.abs() < SAMPLE_TOLERANCE {
        return Some(target);
    }
    let (mut a, mut b) = (centre, target);
    let positive_at_a = fc > 0.0;
    for _ in 0..MAX_BISECTIONS {
        let mid = (a + b) * 0.5;
        let f = q.eval(mid);
        if f.abs() < SAMPLE_TOLERANCE {
            return Some(mid);
        }
        if (f > 0.0) == positive_at_a {
            a = mid;
        } else {
            b = mid;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use quadric_ga::oracle::Monomial;

    #[test]
    fn sphere_samples() {
        let q = QuadricCoefficients::unit_sphere();
        let pts = sample_surface(&q, 20, DEFAULT_EXTENT);
        assert!(pts.len() > 100);
        for p in pts {
            assert!(q.eval(p).abs() < SAMPLE_TOLERANCE);
            assert!((0.99..=1.01).contains(&p.norm()));
        }
    }

    #[test]
    fn empty_quadric() {
        let q = QuadricCoefficients::from_array([1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        assert!(sample_surface(&q, 10, DEFAULT_EXTENT).is_empty());
    }

    #[test]
    fn plane_samples() {
        let q = QuadricCoefficients::unit(Monomial::Z);
        let pts = sample_surface(&q, 20, DEFAULT_EXTENT);
        assert!(!pts.is_empty());
        assert!(pts.iter().all(|p| p.z.abs() < 1e-6));
    }

    #[test]
    fn grid_points_on_surface_appear_once() {
        let pts = sample_surface(&QuadricCoefficients::unit_sphere(), 4, DEFAULT_EXTENT);
        for (k, p) in pts.iter().enumerate() {
            assert!(!pts[k + 1..].contains(p));
        }
    }
}
