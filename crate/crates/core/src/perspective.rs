//! Linear perspective of a tiled floor.
//!
//! The eye is at height 1 above the floor `z = 0`, one unit behind the
//! vertical image plane. One-point perspective looks along the tiles' `x`
//! axis; two-point perspective looks along a tile diagonal, with tile
//! lattice indices `(m, n)`. Both maps send lines to lines, so the image of
//! a tile is the polygon through its projected corners.

use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};

pub type Point2 = (f64, f64);

#[derive(Debug, Clone, PartialEq)]
pub struct ImagePolygon {
    pub vertices: Vec<Point2>,
}

impl ImagePolygon {
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::domain(
                "polygon",
                format!("need at least 3 vertices, got {}", vertices.len()),
            ));
        }
        if vertices.iter().any(|(y, z)| !y.is_finite() || !z.is_finite()) {
            return Err(Error::domain("polygon", "vertices must be finite"));
        }
        Ok(ImagePolygon { vertices })
    }
}

/// Floor point `(x, y)` to image coordinates `(Y, Z) = (y, x) / (1 + x)`.
pub fn project_one_point(x: f64, y: f64) -> Result<Point2> {
    if !(x > -1.0) || !y.is_finite() || !x.is_finite() {
        return Err(Error::domain("project_one_point", format!("need finite x > -1, got ({x}, {y})")));
    }
    let w = 1.0 + x;
    Ok((y / w, x / w))
}

/// Lattice point `(m, n)` to image coordinates
/// `(√2 (n − m), m + n) / (2 + m + n)`.
pub fn project_two_point(m: f64, n: f64) -> Result<Point2> {
    if !(m + n > -2.0) || !m.is_finite() || !n.is_finite() {
        return Err(Error::domain("project_two_point", format!("need finite m + n > -2, got ({m}, {n})")));
    }
    let w = 2.0 + m + n;
    Ok((SQRT_2 * (n - m) / w, (m + n) / w))
}

/// Absolute shoelace area.
pub fn polygon_area(p: &ImagePolygon) -> f64 {
    let v = &p.vertices;
    // Translating to the first vertex keeps the cross products small.
    let (y0, z0) = v[0];
    let twice: f64 = v
        .windows(2)
        .skip(1)
        .map(|w| (w[0].0 - y0) * (w[1].1 - z0) - (w[1].0 - y0) * (w[0].1 - z0))
        .sum();
    0.5 * twice.abs()
}

fn check_k(op: &'static str, k: u64) -> Result<f64> {
    if k < 1 {
        return Err(Error::domain(op, "cell index k must be >= 1"));
    }
    Ok(k as f64)
}

/// Image of the floor rectangle `[x0, x1] × [−1, 1]` in one-point perspective.
pub fn one_point_strip(x0: f64, x1: f64) -> Result<ImagePolygon> {
    if !(x0 < x1) {
        return Err(Error::domain("one_point_strip", "need x0 < x1"));
    }
    let corners = [(x0, -1.0), (x1, -1.0), (x1, 1.0), (x0, 1.0)];
    ImagePolygon::new(corners.iter().map(|&(x, y)| project_one_point(x, y)).collect::<Result<_>>()?)
}

/// The `k`-th trapezoid of the center strip: the image of `[k, k+1] × [−1, 1]`.
pub fn one_point_cell(k: u64) -> Result<ImagePolygon> {
    let k = check_k("one_point_cell", k)?;
    one_point_strip(k, k + 1.0)
}

/// The `k`-th quadrilateral of the right strip: the image of the lattice
/// cell `m ∈ [1, 2]`, `n ∈ [k, k+1]`.
pub fn two_point_cell(k: u64) -> Result<ImagePolygon> {
    let k = check_k("two_point_cell", k)?;
    let corners = [(1.0, k), (2.0, k), (2.0, k + 1.0), (1.0, k + 1.0)];
    ImagePolygon::new(corners.iter().map(|&(m, n)| project_two_point(m, n)).collect::<Result<_>>()?)
}

/// `(3 + 2k) / ((1 + k)² (2 + k)²)`, asymptotically `2/k³`.
pub fn trapezoid_area(k: u64) -> Result<f64> {
    let k = check_k("trapezoid_area", k)?;
    Ok((3.0 + 2.0 * k) / ((1.0 + k) * (2.0 + k)).powi(2))
}

/// `4√2 / ((3 + k)(4 + k)(5 + k))`, asymptotically `4√2/k³`.
pub fn quad_area(k: u64) -> Result<f64> {
    let k = check_k("quad_area", k)?;
    Ok(4.0 * SQRT_2 / ((3.0 + k) * (4.0 + k) * (5.0 + k)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projection_examples() {
        assert_eq!(project_one_point(1.0, 0.0).unwrap(), (0.0, 0.5));
        assert_eq!(project_one_point(0.0, 0.7).unwrap(), (0.7, 0.0));
        let (y, z) = project_one_point(1e6, 1.0).unwrap();
        assert!(y.abs() < 1e-5 && (z - 1.0).abs() < 1e-5);

        assert_eq!(project_two_point(1.0, 1.0).unwrap(), (0.0, 0.5));
        let (y, z) = project_two_point(1.0, 2.0).unwrap();
        assert!((y - SQRT_2 / 5.0).abs() < 1e-15 && (z - 0.6).abs() < 1e-15);
        let (y, z) = project_two_point(1.0, 1e6).unwrap();
        assert!((y - SQRT_2).abs() < 1e-5 && (z - 1.0).abs() < 1e-5);
        let (y, _) = project_two_point(1e6, 1.0).unwrap();
        assert!((y + SQRT_2).abs() < 1e-5);
    }

    #[test]
    fn shoelace_basics() {
        let sq = ImagePolygon::new(vec![(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]).unwrap();
        assert_eq!(polygon_area(&sq), 1.0);
        let mut rev = sq.clone();
        rev.vertices.reverse();
        assert_eq!(polygon_area(&rev), 1.0);
        let tri = ImagePolygon::new(vec![(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]).unwrap();
        assert_eq!(polygon_area(&tri), 0.5);
    }

    #[test]
    fn first_cells() {
        assert!((trapezoid_area(1).unwrap() - 5.0 / 36.0).abs() < 1e-16);
        assert!((trapezoid_area(2).unwrap() - 7.0 / 144.0).abs() < 1e-16);
        assert!((quad_area(1).unwrap() - SQRT_2 / 30.0).abs() < 1e-16);
        assert!((quad_area(2).unwrap() - 4.0 * SQRT_2 / 210.0).abs() < 1e-16);
        let shoe = polygon_area(&two_point_cell(1).unwrap());
        assert!((shoe - SQRT_2 / 30.0).abs() < 1e-15);
    }

    #[test]
    fn cubic_decay() {
        let k = 10_000u64;
        let k3 = (k as f64).powi(3);
        assert!((k3 * trapezoid_area(k).unwrap() - 2.0).abs() < 1e-3);
        assert!((k3 * quad_area(k).unwrap() - 4.0 * SQRT_2).abs() < 1e-2);
    }

    #[test]
    fn domain() {
        assert!(project_one_point(-1.0, 0.0).is_err());
        assert!(project_two_point(-1.0, -1.0).is_err());
        assert!(trapezoid_area(0).is_err());
        assert!(quad_area(0).is_err());
        assert!(ImagePolygon::new(vec![(0.0, 0.0), (1.0, 1.0)]).is_err());
    }
}
