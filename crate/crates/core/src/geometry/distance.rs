use std::collections::VecDeque;

use super::{Element, Geometry, GeometryError};
use crate::par;

const UNREACHABLE: u16 = u16::MAX;

/// All-pairs incidence-graph distances, stored densely.
#[derive(Debug, Clone)]
pub struct DistanceOracle {
    num_points: usize,
    num_vertices: usize,
    dist: Vec<u16>,
    diameter: usize,
    girth: Option<usize>,
    connected: bool,
}

fn bfs_row(g: &Geometry, source: usize) -> Vec<u16> {
    let mut row = vec![UNREACHABLE; g.num_vertices()];
    let mut queue = VecDeque::new();
    row[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let du = row[u];
        for w in g.neighbours(u) {
            if row[w] == UNREACHABLE {
                row[w] = du + 1;
                queue.push_back(w);
            }
        }
    }
    row
}

/// Shortest cycle through the incidence `(point, line)`, as the vertex path
/// from `point` round to `line`; `None` when the edge lies on no cycle.
pub fn shortest_cycle_through_edge(g: &Geometry, point: usize, line: usize) -> Option<Vec<Element>> {
    let start = point;
    let target = g.vertex(Element::Line(line));
    let n = g.num_vertices();
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    seen[start] = true;
    queue.push_back(start);
    while let Some(u) = queue.pop_front() {
        for w in g.neighbours(u) {
            if (u == start && w == target) || seen[w] {
                continue;
            }
            seen[w] = true;
            parent[w] = u;
            if w == target {
                let mut path = vec![g.element(w)];
                let mut cur = w;
                while cur != start {
                    cur = parent[cur];
                    path.push(g.element(cur));
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(w);
        }
    }
    None
}

impl DistanceOracle {
    /// Computes every BFS row; tolerates disconnected input (unreachable pairs
    /// are recorded and `is_connected` is false).
    pub fn compute(g: &Geometry) -> DistanceOracle {
        let n = g.num_vertices();
        let rows = par::map_range(0..n, |v| bfs_row(g, v));
        let mut dist = Vec::with_capacity(n * n);
        for row in rows {
            dist.extend_from_slice(&row);
        }
        let connected = !dist.contains(&UNREACHABLE);
        let diameter = dist.iter().filter(|&&d| d != UNREACHABLE).max().copied().unwrap_or(0) as usize;
        let edges: Vec<(usize, usize)> = g.incidences().collect();
        let girth = par::map_range(0..edges.len(), |i| {
            shortest_cycle_through_edge(g, edges[i].0, edges[i].1).map(|c| c.len())
        })
        .into_iter()
        .flatten()
        .min();
        DistanceOracle { num_points: g.num_points(), num_vertices: n, dist, diameter, girth, connected }
    }

    #[inline]
    pub fn between(&self, u: usize, v: usize) -> Option<usize> {
        let d = self.dist[u * self.num_vertices + v];
        (d != UNREACHABLE).then_some(d as usize)
    }

    /// Distance between two elements; `usize::MAX` when unreachable.
    #[inline]
    pub fn dist(&self, a: Element, b: Element) -> usize {
        self.between(self.vertex(a), self.vertex(b)).unwrap_or(usize::MAX)
    }

    /// Point-to-point distance.
    #[inline]
    pub fn point_dist(&self, a: usize, b: usize) -> usize {
        self.dist[a * self.num_vertices + b] as usize
    }

    #[inline]
    fn vertex(&self, e: Element) -> usize {
        match e {
            Element::Point(i) => i,
            Element::Line(j) => self.num_points + j,
        }
    }

    pub fn diameter(&self) -> usize {
        self.diameter
    }

    /// Length of the shortest cycle; `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        self.girth
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    /// First pair (in vertex order) that cannot reach each other.
    pub fn first_unreachable(&self) -> Option<(usize, usize)> {
        self.dist
            .iter()
            .position(|&d| d == UNREACHABLE)
            .map(|i| (i / self.num_vertices, i % self.num_vertices))
    }

    /// First pair (in vertex order) at the given distance.
    pub fn first_pair_at(&self, d: usize) -> Option<(usize, usize)> {
        self.dist
            .iter()
            .position(|&x| x as usize == d && x != UNREACHABLE)
            .map(|i| (i / self.num_vertices, i % self.num_vertices))
    }

    /// Points at distance exactly `i` from `x`, ascending.
    pub fn points_at(&self, x: Element, i: i64) -> Vec<usize> {
        if i < 0 {
            return Vec::new();
        }
        let row = self.vertex(x) * self.num_vertices;
        (0..self.num_points).filter(|&p| self.dist[row + p] as i64 == i).collect()
    }

    /// Points at distance at most `i` from `x`, ascending.
    pub fn points_within(&self, x: Element, i: i64) -> Vec<usize> {
        if i < 0 {
            return Vec::new();
        }
        let row = self.vertex(x) * self.num_vertices;
        (0..self.num_points)
            .filter(|&p| self.dist[row + p] != UNREACHABLE && self.dist[row + p] as i64 <= i)
            .collect()
    }

    /// Lines at distance at most `i` from `x`, ascending.
    pub fn lines_within(&self, x: Element, i: i64) -> Vec<usize> {
        if i < 0 {
            return Vec::new();
        }
        let row = self.vertex(x) * self.num_vertices;
        (self.num_points..self.num_vertices)
            .filter(|&v| self.dist[row + v] != UNREACHABLE && self.dist[row + v] as i64 <= i)
            .map(|v| v - self.num_points)
            .collect()
    }
}

/// All-pairs distances of a connected geometry.
pub fn distances(g: &Geometry) -> Result<DistanceOracle, GeometryError> {
    let oracle = DistanceOracle::compute(g);
    if let Some((a, b)) = oracle.first_unreachable() {
        return Err(GeometryError::Disconnected { a: g.element(a), b: g.element(b) });
    }
    Ok(oracle)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SphereKind {
    Points,
    Lines,
    Both,
}

/// Elements at distance `i` from `x` (or at most `i` when `cumulative`),
/// restricted to `kind`, in vertex order. Empty for negative `i`.
pub fn sphere(
    g: &Geometry,
    d: &DistanceOracle,
    x: Element,
    i: i64,
    kind: SphereKind,
    cumulative: bool,
) -> Vec<Element> {
    if i < 0 {
        return Vec::new();
    }
    let xv = g.vertex(x);
    let range = match kind {
        SphereKind::Points => 0..g.num_points(),
        SphereKind::Lines => g.num_points()..g.num_vertices(),
        SphereKind::Both => 0..g.num_vertices(),
    };
    range
        .filter(|&v| match d.between(xv, v) {
            Some(dv) if cumulative => dv as i64 <= i,
            Some(dv) => dv as i64 == i,
            None => false,
        })
        .map(|v| g.element(v))
        .collect()
}

/// The unique point of `line` nearest to `point`.
pub fn closest_point_on_line(
    g: &Geometry,
    d: &DistanceOracle,
    point: usize,
    line: usize,
) -> Result<usize, GeometryError> {
    let pts = g.points_of(line);
    let best = pts.iter().map(|&w| d.point_dist(point, w)).min().expect("lines are nonempty");
    let closest: Vec<usize> = pts.iter().copied().filter(|&w| d.point_dist(point, w) == best).collect();
    match closest.as_slice() {
        [w] => Ok(*w),
        _ => Err(GeometryError::ClosestNotUnique { point, line, count: closest.len() }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    PointPoint,
    LineLine,
}

/// Ordered pairs of the given kind at maximal distance (the diameter).
pub fn opposite_pairs(g: &Geometry, d: &DistanceOracle, kind: PairKind) -> Vec<(usize, usize)> {
    let n = d.diameter();
    let (count, to_element): (usize, fn(usize) -> Element) = match kind {
        PairKind::PointPoint => (g.num_points(), Element::Point),
        PairKind::LineLine => (g.num_lines(), Element::Line),
    };
    let mut out = Vec::new();
    for a in 0..count {
        for b in 0..count {
            if d.dist(to_element(a), to_element(b)) == n {
                out.push((a, b));
            }
        }
    }
    out
}
