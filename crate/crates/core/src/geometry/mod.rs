//! Finite point-line geometries and their incidence graphs.
//!
//! Vertices of the incidence graph are numbered with points first
//! (`0..P`) and lines after (`P..P+L`).

mod distance;
mod verify;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use distance::{
    closest_point_on_line, distances, opposite_pairs, shortest_cycle_through_edge, sphere,
    DistanceOracle, PairKind, SphereKind,
};
pub use verify::{
    expected_counts, validate_order, verify_polygon, AxiomReport, OrderParams, OrderValidation,
    Violation,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("geometry has no lines")]
    NoLines,
    #[error("line {line} is empty")]
    EmptyLine { line: usize },
    #[error("line {line} refers to point {point}, but there are only {num_points} points")]
    PointOutOfRange { line: usize, point: usize, num_points: usize },
    #[error("line {line} contains point {point} twice")]
    DuplicatePoint { line: usize, point: usize },
    #[error("point {point} lies on no line")]
    IsolatedPoint { point: usize },
    #[error("geometry is disconnected: {a} cannot reach {b}")]
    Disconnected { a: Element, b: Element },
    #[error("line {line} has {count} points closest to point {point}")]
    ClosestNotUnique { point: usize, line: usize, count: usize },
    #[error("ordinary counts apply when st = 1; formula needs st > 1")]
    OrdinaryCounts,
    #[error("gonality {0} is not supported by the count formula")]
    UnsupportedGonality(usize),
}

/// A point or a line of a geometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Element {
    Point(usize),
    Line(usize),
}

impl Element {
    pub fn is_point(self) -> bool {
        matches!(self, Element::Point(_))
    }

    pub fn index(self) -> usize {
        match self {
            Element::Point(i) | Element::Line(i) => i,
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Point(i) => write!(f, "p{i}"),
            Element::Line(i) => write!(f, "L{i}"),
        }
    }
}

/// Immutable incidence structure.
#[derive(Debug, Clone)]
pub struct Geometry {
    num_points: usize,
    points_on_line: Vec<Vec<usize>>,
    lines_on_point: Vec<Vec<usize>>,
    label: String,
}

impl PartialEq for Geometry {
    /// Compares incidence only; labels are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.num_points == other.num_points && self.points_on_line == other.points_on_line
    }
}

impl Eq for Geometry {}

impl Geometry {
    /// Builds a geometry from line point lists. Point order inside each line
    /// and line order are kept as given.
    pub fn from_lines(lines: Vec<Vec<usize>>, num_points: usize) -> Result<Self, GeometryError> {
        if lines.is_empty() {
            return Err(GeometryError::NoLines);
        }
        let mut lines_on_point = vec![Vec::new(); num_points];
        for (l, pts) in lines.iter().enumerate() {
            if pts.is_empty() {
                return Err(GeometryError::EmptyLine { line: l });
            }
            for (k, &p) in pts.iter().enumerate() {
                if p >= num_points {
                    return Err(GeometryError::PointOutOfRange { line: l, point: p, num_points });
                }
                if pts[..k].contains(&p) {
                    return Err(GeometryError::DuplicatePoint { line: l, point: p });
                }
                lines_on_point[p].push(l);
            }
        }
        if let Some(point) = lines_on_point.iter().position(Vec::is_empty) {
            return Err(GeometryError::IsolatedPoint { point });
        }
        Ok(Geometry { num_points, points_on_line: lines, lines_on_point, label: String::new() })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    #[inline]
    pub fn num_points(&self) -> usize {
        self.num_points
    }

    #[inline]
    pub fn num_lines(&self) -> usize {
        self.points_on_line.len()
    }

    #[inline]
    pub fn num_vertices(&self) -> usize {
        self.num_points + self.points_on_line.len()
    }

    #[inline]
    pub fn points_of(&self, line: usize) -> &[usize] {
        &self.points_on_line[line]
    }

    #[inline]
    pub fn lines_through(&self, point: usize) -> &[usize] {
        &self.lines_on_point[point]
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.points_on_line
    }

    pub fn is_incident(&self, point: usize, line: usize) -> bool {
        self.points_on_line[line].contains(&point)
    }

    #[inline]
    pub fn vertex(&self, e: Element) -> usize {
        match e {
            Element::Point(i) => i,
            Element::Line(j) => self.num_points + j,
        }
    }

    #[inline]
    pub fn element(&self, v: usize) -> Element {
        if v < self.num_points {
            Element::Point(v)
        } else {
            Element::Line(v - self.num_points)
        }
    }

    /// Incidence-graph neighbours of a vertex.
    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let (pts, lns): (&[usize], &[usize]) = if v < self.num_points {
            (&[], &self.lines_on_point[v])
        } else {
            (&self.points_on_line[v - self.num_points], &[])
        };
        let offset = self.num_points;
        pts.iter().copied().chain(lns.iter().map(move |&l| l + offset))
    }

    /// All incidences as `(point, line)` pairs, line by line.
    pub fn incidences(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.points_on_line
            .iter()
            .enumerate()
            .flat_map(|(l, pts)| pts.iter().map(move |&p| (p, l)))
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.num_vertices()).map(|v| self.element(v))
    }

    /// `(s, t)` when every line has `s+1` points and every point `t+1` lines.
    pub fn order(&self) -> Option<(usize, usize)> {
        let k = self.points_on_line[0].len();
        let r = self.lines_on_point[0].len();
        let uniform = self.points_on_line.iter().all(|l| l.len() == k)
            && self.lines_on_point.iter().all(|p| p.len() == r);
        (uniform && k >= 1 && r >= 1).then(|| (k - 1, r - 1))
    }

    /// Swaps the roles of points and lines.
    pub fn dual(&self) -> Geometry {
        Geometry {
            num_points: self.num_lines(),
            points_on_line: self.lines_on_point.clone(),
            lines_on_point: self.points_on_line.clone(),
            label: format!("dual {}", self.label),
        }
    }

    /// Drops one incidence; used to build negative controls.
    pub fn without_incidence(&self, point: usize, line: usize) -> Result<Geometry, GeometryError> {
        let lines = self
            .points_on_line
            .iter()
            .enumerate()
            .map(|(l, pts)| {
                if l == line {
                    pts.iter().copied().filter(|&p| p != point).collect()
                } else {
                    pts.clone()
                }
            })
            .collect();
        Ok(Geometry::from_lines(lines, self.num_points)?.with_label(format!("{} minus ({point},{line})", self.label)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quadrangle() -> Geometry {
        Geometry::from_lines(vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]], 4).unwrap()
    }

    #[test]
    fn build_ordinary_quadrangle() {
        let g = quadrangle();
        assert_eq!(g.num_points(), 4);
        assert_eq!(g.num_lines(), 4);
        assert_eq!(g.order(), Some((1, 1)));
        assert_eq!(g.lines_through(0), &[0, 3]);
        assert!(g.is_incident(3, 2));
        assert_eq!(g.neighbours(0).collect::<Vec<_>>(), vec![4, 7]);
        assert_eq!(g.neighbours(5).collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn build_errors() {
        assert_eq!(
            Geometry::from_lines(vec![vec![0, 0, 1]], 2).unwrap_err(),
            GeometryError::DuplicatePoint { line: 0, point: 0 }
        );
        assert_eq!(
            Geometry::from_lines(vec![vec![0, 5]], 3).unwrap_err(),
            GeometryError::PointOutOfRange { line: 0, point: 5, num_points: 3 }
        );
        assert_eq!(Geometry::from_lines(vec![], 3).unwrap_err(), GeometryError::NoLines);
        assert_eq!(
            Geometry::from_lines(vec![vec![0, 1]], 3).unwrap_err(),
            GeometryError::IsolatedPoint { point: 2 }
        );
    }

    #[test]
    fn input_order_preserved() {
        let g = Geometry::from_lines(vec![vec![2, 0], vec![1, 2], vec![0, 1]], 3).unwrap();
        assert_eq!(g.points_of(0), &[2, 0]);
    }

    #[test]
    fn double_dual_is_identity() {
        let g = quadrangle();
        assert_eq!(g.dual().dual(), g);
        assert_eq!(g.dual().order(), Some((1, 1)));
    }

    #[test]
    fn element_vertex_round_trip() {
        let g = quadrangle();
        for v in 0..g.num_vertices() {
            assert_eq!(g.vertex(g.element(v)), v);
        }
        assert!(Element::Point(9) < Element::Line(0));
    }
}
