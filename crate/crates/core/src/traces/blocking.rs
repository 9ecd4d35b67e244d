use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{half_diameter, TraceError, TraceIndex};
use crate::geometry::{DistanceOracle, Element, Geometry};
use crate::par;

/// Default ceiling on the number of candidate subsets an exhaustive search may visit.
pub const DEFAULT_SUBSET_GUARD: u128 = 50_000_000;

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
}

/// For each point, the set of points opposite it.
struct OppositeTable {
    rows: Vec<Bits>,
}

impl OppositeTable {
    fn new(g: &Geometry, dist: &DistanceOracle) -> Self {
        let n = g.num_points();
        let diameter = dist.diameter();
        let rows = par::map_range(0..n, |p| {
            let mut b = Bits::empty(n);
            for q in 0..n {
                if dist.point_dist(p, q) == diameter {
                    b.set(q);
                }
            }
            b
        });
        OppositeTable { rows }
    }

    fn opposite_all(&self, set: &[usize]) -> Bits {
        let mut acc = self.rows[set[0]].clone();
        for &b in &set[1..] {
            acc = acc.and(&self.rows[b]);
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockingVerdict {
    pub is_blocking: bool,
    /// Lowest point opposite every point of the set.
    pub witness: Option<usize>,
}

fn check_points(g: &Geometry, set: &[usize]) -> Result<(), TraceError> {
    if set.is_empty() {
        return Err(TraceError::EmptySet);
    }
    match set.iter().find(|&&p| p >= g.num_points()) {
        Some(&point) => Err(TraceError::PointOutOfRange { point }),
        None => Ok(()),
    }
}

pub fn is_x_blocking(g: &Geometry, dist: &DistanceOracle, set: &[usize]) -> Result<BlockingVerdict, TraceError> {
    check_points(g, set)?;
    let diameter = dist.diameter();
    let witness = (0..g.num_points()).find(|&v| set.iter().all(|&b| dist.point_dist(v, b) == diameter));
    Ok(BlockingVerdict { is_blocking: witness.is_none(), witness })
}

/// Every `k`-subset of points that is X-blocking, in lexicographic order.
pub fn blocking_sets_of_size(
    g: &Geometry,
    dist: &DistanceOracle,
    k: usize,
    guard: u128,
) -> Result<Vec<Vec<usize>>, TraceError> {
    let n = g.num_points();
    let requested = binomial(n, k);
    if requested > guard {
        return Err(TraceError::CostGuard { requested, limit: guard });
    }
    if k == 0 || k > n {
        return Ok(Vec::new());
    }
    let table = OppositeTable::new(g, dist);
    Ok(par::flat_map_range(0..n, |first| {
        let mut out = Vec::new();
        let mut chosen = vec![first];
        extend(&table, n, k, &mut chosen, table.rows[first].clone(), &mut out);
        out
    }))
}

fn extend(table: &OppositeTable, n: usize, k: usize, chosen: &mut Vec<usize>, opp: Bits, out: &mut Vec<Vec<usize>>) {
    if chosen.len() == k {
        if opp.is_empty() {
            out.push(chosen.clone());
        }
        return;
    }
    let last = *chosen.last().expect("nonempty prefix");
    let remaining = k - chosen.len();
    for next in last + 1..=n - remaining {
        chosen.push(next);
        extend(table, n, k, chosen, opp.and(&table.rows[next]), out);
        chosen.pop();
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "certificate", rename_all = "snake_case")]
pub enum BlockingCertificate {
    /// Every smaller size was ruled out by full enumeration.
    Exhaustive,
    /// A blocking set of this size exists; sizes below `checked_below` were ruled out.
    Found { checked_below: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinBlocking {
    pub size: usize,
    pub witness: Vec<usize>,
    #[serde(flatten)]
    pub certificate: BlockingCertificate,
}

/// Smallest X-blocking set, searching sizes `1..=cap` exhaustively. When a level
/// exceeds `guard`, falls back to a line (always blocking) and reports how far
/// the exhaustive search got.
pub fn min_x_blocking_size(
    g: &Geometry,
    dist: &DistanceOracle,
    cap: usize,
    guard: u128,
) -> Result<MinBlocking, TraceError> {
    let n = g.num_points();
    let table = OppositeTable::new(g, dist);
    for k in 1..=cap.min(n) {
        if binomial(n, k) > guard {
            let line = g.points_of(0).to_vec();
            if line.len() >= k && table.opposite_all(&line).is_empty() {
                return Ok(MinBlocking {
                    size: line.len(),
                    witness: line,
                    certificate: BlockingCertificate::Found { checked_below: k },
                });
            }
            return Err(TraceError::CostGuard { requested: binomial(n, k), limit: guard });
        }
        let found = par::find_first(0..n, |first| {
            let mut out = Vec::new();
            let mut chosen = vec![first];
            first_blocking(&table, n, k, &mut chosen, table.rows[first].clone(), &mut out);
            out.pop()
        });
        if let Some((_, witness)) = found {
            return Ok(MinBlocking { size: k, witness, certificate: BlockingCertificate::Exhaustive });
        }
    }
    Err(TraceError::NoBlockingSetWithinCap { cap })
}

fn first_blocking(
    table: &OppositeTable,
    n: usize,
    k: usize,
    chosen: &mut Vec<usize>,
    opp: Bits,
    out: &mut Vec<Vec<usize>>,
) -> bool {
    if chosen.len() == k {
        if opp.is_empty() {
            out.push(chosen.clone());
            return true;
        }
        return false;
    }
    let last = *chosen.last().expect("nonempty prefix");
    for next in last + 1..=n - (k - chosen.len()) {
        chosen.push(next);
        if first_blocking(table, n, k, chosen, opp.and(&table.rows[next]), out) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Result of matching every blocking set of size `s + 1` against the traces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConverseSummary {
    pub size: usize,
    pub candidates: u128,
    pub blocking_sets: usize,
    pub classified: usize,
    /// Blocking sets that match no trace.
    pub unclassified: Vec<Vec<usize>>,
    /// Count of blocking sets per least matching `d`.
    pub d_histogram: BTreeMap<usize, usize>,
    /// Classified sets that are traces only for even `d`.
    pub even_only: usize,
    /// Lowest point set of size at most `s` that blocks, if any.
    pub smaller_blocking: Option<Vec<usize>>,
}

pub fn blocking_converse(
    g: &Geometry,
    dist: &DistanceOracle,
    index: &TraceIndex,
    guard: u128,
) -> Result<ConverseSummary, TraceError> {
    let (s, _) = g.order().ok_or(TraceError::NoOrder)?;
    let size = s + 1;
    let smaller_blocking = match min_x_blocking_size(g, dist, s, guard) {
        Ok(min) => Some(min.witness),
        Err(TraceError::NoBlockingSetWithinCap { .. }) => None,
        Err(e) => return Err(e),
    };
    let sets = blocking_sets_of_size(g, dist, size, guard)?;
    let mut d_histogram = BTreeMap::new();
    let mut unclassified = Vec::new();
    let mut even_only = 0;
    for set in &sets {
        match index.classify(set) {
            Some(label) => {
                *d_histogram.entry(label.d).or_insert(0) += 1;
                if index.trace_parameters(set).iter().all(|d| d % 2 == 0) {
                    even_only += 1;
                }
            }
            None => unclassified.push(set.clone()),
        }
    }
    Ok(ConverseSummary {
        size,
        candidates: binomial(g.num_points(), size),
        blocking_sets: sets.len(),
        classified: sets.len() - unclassified.len(),
        unclassified,
        d_histogram,
        even_only,
        smaller_blocking,
    })
}

pub fn is_line_blocking(g: &Geometry, set: &[usize]) -> bool {
    let mut member = vec![false; g.num_points()];
    for &p in set {
        if let Some(m) = member.get_mut(p) {
            *m = true;
        }
    }
    g.lines().iter().all(|pts| pts.iter().any(|&p| member[p]))
}

/// `(s^m t^m - 1) / (st - 1)`.
pub fn line_blocking_bound(g: &Geometry, dist: &DistanceOracle) -> Result<u64, TraceError> {
    let (s, t) = g.order().ok_or(TraceError::NoOrder)?;
    let m = half_diameter(dist)? as u32;
    let st = (s * t) as u64;
    if st <= 1 {
        return Err(TraceError::NoOrder);
    }
    Ok((st.pow(m) - 1) / (st - 1))
}

/// `|P_1(L) ∩ P_{<=2m-2}(v)|`; always `1` or `s + 1` in a generalised `2m`-gon.
pub fn line_meets_ball(g: &Geometry, dist: &DistanceOracle, v: usize, line: usize) -> usize {
    let reach = dist.diameter().saturating_sub(2);
    g.points_of(line).iter().filter(|&&p| dist.point_dist(v, p) <= reach).count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarWitness {
    pub line: usize,
    pub point: usize,
}

/// For a set `C` of fewer than `s + 1` points and a line `L`, finds a line `M`
/// within distance `2d - 2` of `L` with `C ∩ P_{<=2d-1}(M) = C ∩ P_1(L)`, and a
/// point `v` within distance `2d - 1` of `L` with `C ∩ P_{<=2d}(v) = C ∩ P_1(L)`.
/// Candidates are tried nearest to `L` first, then by index.
pub fn star_witness(
    g: &Geometry,
    dist: &DistanceOracle,
    set: &[usize],
    line: usize,
    d: usize,
) -> Result<StarWitness, TraceError> {
    let m = half_diameter(dist)?;
    if d == 0 || d >= m {
        return Err(TraceError::DOutOfRange { d, m: m - 1 });
    }
    if line >= g.num_lines() {
        return Err(TraceError::LineOutOfRange { line });
    }
    let base = Element::Line(line);
    let on_line: Vec<usize> = set.iter().copied().filter(|&c| g.is_incident(c, line)).collect();
    let matches = |centre: Element, radius: usize| {
        set.iter().copied().filter(|&c| dist.dist(centre, Element::Point(c)) <= radius).eq(on_line.iter().copied())
    };
    let mut lines: Vec<usize> = dist.lines_within(base, 2 * d as i64 - 2);
    lines.sort_by_key(|&l| (dist.dist(base, Element::Line(l)), l));
    let witness_line = lines
        .into_iter()
        .find(|&l| matches(Element::Line(l), 2 * d - 1))
        .ok_or(TraceError::NoStarWitness { line, d })?;
    let mut points = dist.points_within(base, 2 * d as i64 - 1);
    points.sort_by_key(|&p| (dist.dist(base, Element::Point(p)), p));
    let witness_point = points
        .into_iter()
        .find(|&p| matches(Element::Point(p), 2 * d))
        .ok_or(TraceError::NoStarWitness { line, d })?;
    Ok(StarWitness { line: witness_line, point: witness_point })
}
