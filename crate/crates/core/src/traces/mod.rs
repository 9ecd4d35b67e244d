//! Distance traces, X-blocking sets, perp-geometries and the classification
//! of small codeword supports.

mod blocking;
mod perp;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{opposite_pairs, DistanceOracle, Element, Geometry, PairKind};
use crate::par;

pub use blocking::{
    binomial, blocking_converse, blocking_sets_of_size, is_line_blocking, is_x_blocking, line_blocking_bound,
    line_meets_ball, min_x_blocking_size, star_witness, BlockingCertificate, BlockingVerdict, ConverseSummary,
    MinBlocking, StarWitness, DEFAULT_SUBSET_GUARD,
};
pub use perp::{
    is_projective_plane, is_projective_point, perp_geometry, projective_trace_blocking_check, PerpGeometry,
    PerpVariant,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("diameter {diameter} is odd; traces need a 2m-gon")]
    OddDiameter { diameter: usize },
    #[error("trace parameter {d} outside 1..={m}")]
    DOutOfRange { d: usize, m: usize },
    #[error("{x} and {y} are not opposite")]
    NotOpposite { x: Element, y: Element },
    #[error("trace parameter {d} needs {} but got {x}, {y}", if *d % 2 == 0 { "two points" } else { "two lines" })]
    KindMismatch { d: usize, x: Element, y: Element },
    #[error("trace T({d}, {x}, {y}) is empty")]
    EmptyTrace { d: usize, x: Element, y: Element },
    #[error("blocking test needs a nonempty set")]
    EmptySet,
    #[error("point {point} out of range")]
    PointOutOfRange { point: usize },
    #[error("line {line} out of range")]
    LineOutOfRange { line: usize },
    #[error("{requested} candidate subsets exceed the guard of {limit}")]
    CostGuard { requested: u128, limit: u128 },
    #[error("no X-blocking set of size at most {cap}")]
    NoBlockingSetWithinCap { cap: usize },
    #[error("geometry has no order (s, t) with st > 1")]
    NoOrder,
    #[error("no witness for line {line} at depth {d}")]
    NoStarWitness { line: usize, d: usize },
}

/// Identifies a trace by its parameter and the opposite pair that cuts it out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TraceLabel {
    pub d: usize,
    pub x: Element,
    pub y: Element,
}

/// `P_d(x) ∩ P_{2m-d}(y)` for opposite `x`, `y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceTrace {
    pub d: usize,
    pub x: Element,
    pub y: Element,
    pub points: Vec<usize>,
}

impl DistanceTrace {
    pub fn label(&self) -> TraceLabel {
        TraceLabel { d: self.d, x: self.x, y: self.y }
    }
}

pub(crate) fn half_diameter(d: &DistanceOracle) -> Result<usize, TraceError> {
    let diameter = d.diameter();
    if !diameter.is_multiple_of(2) || diameter == 0 {
        return Err(TraceError::OddDiameter { diameter });
    }
    Ok(diameter / 2)
}

fn check_range(d: usize, m: usize) -> Result<(), TraceError> {
    if d == 0 || d > m {
        return Err(TraceError::DOutOfRange { d, m });
    }
    Ok(())
}

fn kind_for(d: usize) -> PairKind {
    if d.is_multiple_of(2) {
        PairKind::PointPoint
    } else {
        PairKind::LineLine
    }
}

fn element_for(d: usize, i: usize) -> Element {
    if d.is_multiple_of(2) {
        Element::Point(i)
    } else {
        Element::Line(i)
    }
}

fn trace_points(dist: &DistanceOracle, m: usize, d: usize, x: Element, y: Element) -> Vec<usize> {
    dist.points_at(x, d as i64)
        .into_iter()
        .filter(|&p| dist.dist(y, Element::Point(p)) == 2 * m - d)
        .collect()
}

pub fn distance_trace(
    g: &Geometry,
    dist: &DistanceOracle,
    d: usize,
    x: Element,
    y: Element,
) -> Result<DistanceTrace, TraceError> {
    let m = half_diameter(dist)?;
    check_range(d, m)?;
    for e in [x, y] {
        match e {
            Element::Point(p) if p >= g.num_points() => return Err(TraceError::PointOutOfRange { point: p }),
            Element::Line(l) if l >= g.num_lines() => return Err(TraceError::LineOutOfRange { line: l }),
            _ => {}
        }
    }
    if x.is_point() != d.is_multiple_of(2) || y.is_point() != d.is_multiple_of(2) {
        return Err(TraceError::KindMismatch { d, x, y });
    }
    if dist.dist(x, y) != 2 * m {
        return Err(TraceError::NotOpposite { x, y });
    }
    let points = trace_points(dist, m, d, x, y);
    if points.is_empty() {
        return Err(TraceError::EmptyTrace { d, x, y });
    }
    Ok(DistanceTrace { d, x, y, points })
}

/// Every trace for parameter `d`, one per distinct point set, keeping the
/// least `(x, y)` that produces it. Ordered by that representative.
pub fn enumerate_traces(g: &Geometry, dist: &DistanceOracle, d: usize) -> Result<Vec<DistanceTrace>, TraceError> {
    let m = half_diameter(dist)?;
    check_range(d, m)?;
    let pairs = opposite_pairs(g, dist, kind_for(d));
    let all = par::map_range(0..pairs.len(), |i| {
        let (x, y) = (element_for(d, pairs[i].0), element_for(d, pairs[i].1));
        DistanceTrace { d, x, y, points: trace_points(dist, m, d, x, y) }
    });
    let mut seen = std::collections::HashSet::new();
    Ok(all.into_iter().filter(|t| !t.points.is_empty() && seen.insert(t.points.clone())).collect())
}

/// Lookup from sorted point sets to the least trace label producing them,
/// over all `d` in `1..=m`.
#[derive(Debug, Clone)]
pub struct TraceIndex {
    by_points: HashMap<Vec<usize>, TraceLabel>,
    all_d: HashMap<Vec<usize>, Vec<usize>>,
    sizes: Vec<(usize, Vec<usize>)>,
}

impl TraceIndex {
    pub fn build(g: &Geometry, dist: &DistanceOracle) -> Result<Self, TraceError> {
        let m = half_diameter(dist)?;
        let mut by_points = HashMap::new();
        let mut all_d: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        let mut sizes = Vec::with_capacity(m);
        for d in 1..=m {
            let traces = enumerate_traces(g, dist, d)?;
            let mut sz: Vec<usize> = traces.iter().map(|t| t.points.len()).collect();
            sz.sort_unstable();
            sz.dedup();
            sizes.push((d, sz));
            for t in traces {
                all_d.entry(t.points.clone()).or_default().push(d);
                by_points.entry(t.points.clone()).or_insert_with(|| t.label());
            }
        }
        Ok(TraceIndex { by_points, all_d, sizes })
    }

    /// `support` must be sorted ascending.
    pub fn classify(&self, support: &[usize]) -> Option<TraceLabel> {
        self.by_points.get(support).copied()
    }

    /// Every `d` for which `support` is a trace, ascending.
    pub fn trace_parameters(&self, support: &[usize]) -> &[usize] {
        self.all_d.get(support).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn len(&self) -> usize {
        self.by_points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_points.is_empty()
    }

    /// Distinct trace sizes seen for each `d`.
    pub fn sizes(&self) -> &[(usize, Vec<usize>)] {
        &self.sizes
    }
}

/// First trace (by `d`, then representative pair) whose point set equals `support`.
pub fn classify_support(
    g: &Geometry,
    dist: &DistanceOracle,
    support: &[usize],
) -> Result<Option<TraceLabel>, TraceError> {
    let mut sorted = support.to_vec();
    sorted.sort_unstable();
    Ok(TraceIndex::build(g, dist)?.classify(&sorted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{elliptic_quadrangle, ordinary_ngon, split_cayley_hexagon, symplectic_quadrangle};
    use crate::geometry::distances;

    #[test]
    fn line_traces_are_lines() {
        let g = symplectic_quadrangle(2).unwrap();
        let d = distances(&g).unwrap();
        let traces = enumerate_traces(&g, &d, 1).unwrap();
        assert_eq!(traces.len(), 15);
        for t in &traces {
            assert_eq!(t.points, g.points_of(t.x.index()));
        }
        let pairs = enumerate_traces(&g, &d, 2).unwrap();
        assert!(pairs.iter().all(|t| t.points.len() == 3));
    }

    #[test]
    fn quadrangle_trace() {
        let g = ordinary_ngon(4).unwrap();
        let d = distances(&g).unwrap();
        let t = distance_trace(&g, &d, 2, Element::Point(0), Element::Point(2)).unwrap();
        assert_eq!(t.points, vec![1, 3]);
    }

    #[test]
    fn trace_errors() {
        let g = ordinary_ngon(4).unwrap();
        let d = distances(&g).unwrap();
        assert!(matches!(
            distance_trace(&g, &d, 2, Element::Point(0), Element::Point(1)),
            Err(TraceError::NotOpposite { .. })
        ));
        assert!(matches!(
            distance_trace(&g, &d, 1, Element::Point(0), Element::Point(2)),
            Err(TraceError::KindMismatch { .. })
        ));
        assert!(matches!(enumerate_traces(&g, &d, 3), Err(TraceError::DOutOfRange { d: 3, m: 2 })));
    }

    #[test]
    fn hexagon_traces() {
        let g = split_cayley_hexagon(2).unwrap();
        let d = distances(&g).unwrap();
        for k in 1..=3 {
            let traces = enumerate_traces(&g, &d, k).unwrap();
            assert!(!traces.is_empty());
            if k == 3 {
                assert!(traces.iter().all(|t| t.points.len() == 3));
            }
        }
    }

    #[test]
    fn classification() {
        let g = symplectic_quadrangle(2).unwrap();
        let d = distances(&g).unwrap();
        let label = classify_support(&g, &d, g.points_of(4)).unwrap().unwrap();
        assert_eq!((label.d, label.x), (1, Element::Line(4)));
        // two collinear points plus a point opposite one of them
        let (a, b) = (g.points_of(0)[0], g.points_of(0)[1]);
        let c = (0..15).find(|&y| d.point_dist(a, y) == 4).unwrap();
        assert_eq!(classify_support(&g, &d, &[a, b, c]).unwrap(), None);

        let q = elliptic_quadrangle(2).unwrap();
        let dq = distances(&q).unwrap();
        let index = TraceIndex::build(&q, &dq).unwrap();
        assert_eq!(index.classify(q.points_of(0)).map(|l| l.d), Some(1));
    }
}
