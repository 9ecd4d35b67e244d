use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{blocking::is_x_blocking, distance_trace, half_diameter, TraceError};
use crate::geometry::{DistanceOracle, Element, Geometry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum PerpVariant {
    /// Points collinear with `x`, excluding `x`.
    Literal,
    /// Same, with `x` itself added to the lines through it.
    Augmented,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerpGeometry {
    pub base: usize,
    pub variant: PerpVariant,
    pub geometry: Geometry,
    /// Local point index to point of the ambient geometry.
    pub point_map: Vec<usize>,
}

/// Points of `P_2(x)` (plus `x` when augmented); lines are the lines through
/// `x` restricted to those points, then the traces `T(2, x, y)` for `y`
/// opposite `x`, each point set kept once.
pub fn perp_geometry(
    g: &Geometry,
    dist: &DistanceOracle,
    x: usize,
    variant: PerpVariant,
) -> Result<PerpGeometry, TraceError> {
    let m = half_diameter(dist)?;
    if x >= g.num_points() {
        return Err(TraceError::PointOutOfRange { point: x });
    }
    let point_map: Vec<usize> = match variant {
        PerpVariant::Literal => dist.points_at(Element::Point(x), 2),
        PerpVariant::Augmented => dist.points_within(Element::Point(x), 2),
    };
    let mut local = vec![usize::MAX; g.num_points()];
    for (i, &p) in point_map.iter().enumerate() {
        local[p] = i;
    }
    let to_local = |pts: &[usize]| -> Vec<usize> {
        let mut v: Vec<usize> = pts.iter().filter(|&&p| local[p] != usize::MAX).map(|&p| local[p]).collect();
        v.sort_unstable();
        v
    };

    let mut seen = HashSet::new();
    let mut lines = Vec::new();
    let mut push = |pts: Vec<usize>| {
        if !pts.is_empty() && seen.insert(pts.clone()) {
            lines.push(pts);
        }
    };
    for &l in g.lines_through(x) {
        push(to_local(g.points_of(l)));
    }
    if m >= 2 {
        for y in 0..g.num_points() {
            if dist.point_dist(x, y) == 2 * m {
                let t = distance_trace(g, dist, 2, Element::Point(x), Element::Point(y))?;
                push(to_local(&t.points));
            }
        }
    }
    let geometry = Geometry::from_lines(lines, point_map.len())
        .expect("perp lines cover every local point")
        .with_label(format!("perp({x}) of {}", g.label()));
    Ok(PerpGeometry { base: x, variant, geometry, point_map })
}

/// Two points on exactly one line, two lines through exactly one point, and
/// four points with no three collinear.
pub fn is_projective_plane(g: &Geometry) -> bool {
    let n = g.num_points();
    let mut pair_lines = vec![0u32; n * n];
    for pts in g.lines() {
        for (i, &a) in pts.iter().enumerate() {
            for &b in &pts[i + 1..] {
                pair_lines[a * n + b] += 1;
                pair_lines[b * n + a] += 1;
            }
        }
    }
    if (0..n).any(|a| (0..n).any(|b| a != b && pair_lines[a * n + b] != 1)) {
        return false;
    }
    let lines = g.lines();
    for (i, a) in lines.iter().enumerate() {
        for b in &lines[i + 1..] {
            if a.iter().filter(|p| b.contains(p)).count() != 1 {
                return false;
            }
        }
    }
    // a quadrangle: two points, a third off their line, a fourth off all three joins
    let on_line_of = |a: usize, b: usize, c: usize| lines.iter().any(|l| l.contains(&a) && l.contains(&b) && l.contains(&c));
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if on_line_of(a, b, c) {
                    continue;
                }
                let found = (c + 1..n).any(|d| {
                    !on_line_of(a, b, d) && !on_line_of(a, c, d) && !on_line_of(b, c, d)
                });
                if found {
                    return true;
                }
            }
        }
    }
    false
}

pub fn is_projective_point(
    g: &Geometry,
    dist: &DistanceOracle,
    x: usize,
    variant: PerpVariant,
) -> Result<bool, TraceError> {
    Ok(is_projective_plane(&perp_geometry(g, dist, x, variant)?.geometry))
}

/// Every `T(2, x, y)` with `y` opposite `x` is X-blocking. Returns the first
/// `y` whose trace is not.
pub fn projective_trace_blocking_check(
    g: &Geometry,
    dist: &DistanceOracle,
    x: usize,
) -> Result<Option<usize>, TraceError> {
    let m = half_diameter(dist)?;
    for y in 0..g.num_points() {
        if dist.point_dist(x, y) == 2 * m {
            let t = distance_trace(g, dist, 2, Element::Point(x), Element::Point(y))?;
            if !is_x_blocking(g, dist, &t.points)?.is_blocking {
                return Ok(Some(y));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{ordinary_ngon, projective_plane, split_cayley_hexagon, symplectic_quadrangle};
    use crate::geometry::distances;

    #[test]
    fn fano_from_symplectic() {
        let g = symplectic_quadrangle(2).unwrap();
        let d = distances(&g).unwrap();
        let aug = perp_geometry(&g, &d, 0, PerpVariant::Augmented).unwrap();
        assert_eq!((aug.geometry.num_points(), aug.geometry.num_lines()), (7, 7));
        assert!(is_projective_plane(&aug.geometry));
        let lit = perp_geometry(&g, &d, 0, PerpVariant::Literal).unwrap();
        assert_eq!(lit.geometry.num_points(), 6);
        let mut sizes: Vec<usize> = lit.geometry.lines().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 2, 2, 3, 3, 3, 3]);
        assert!(!is_projective_plane(&lit.geometry));
        assert_eq!(lit.point_map, d.points_at(Element::Point(0), 2));
    }

    #[test]
    fn plane_axioms() {
        assert!(is_projective_plane(&projective_plane(2).unwrap()));
        assert!(is_projective_plane(&projective_plane(3).unwrap()));
        // a triangle has unique joins and meets but no quadrangle
        assert!(!is_projective_plane(&ordinary_ngon(3).unwrap()));
    }

    #[test]
    fn ordinary_hexagon_is_degenerate() {
        let g = ordinary_ngon(6).unwrap();
        let d = distances(&g).unwrap();
        for x in 0..6 {
            let p = perp_geometry(&g, &d, x, PerpVariant::Literal).unwrap();
            assert_eq!(p.geometry.num_points(), 2);
            assert!(!is_projective_point(&g, &d, x, PerpVariant::Augmented).unwrap());
        }
    }

    #[test]
    fn hexagon_points_are_projective() {
        let g = split_cayley_hexagon(2).unwrap();
        let d = distances(&g).unwrap();
        for x in [0, 17, 62] {
            assert!(is_projective_point(&g, &d, x, PerpVariant::Augmented).unwrap());
            assert_eq!(projective_trace_blocking_check(&g, &d, x).unwrap(), None);
        }
    }
}
