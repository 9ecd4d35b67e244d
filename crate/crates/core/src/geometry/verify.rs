use serde::{Deserialize, Serialize};

use super::distance::{shortest_cycle_through_edge, DistanceOracle};
use super::{Element, Geometry, GeometryError};

/// Gonality and order of a polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderParams {
    pub n: usize,
    pub s: usize,
    pub t: usize,
}

impl OrderParams {
    /// Half the gonality, for even gonality.
    pub fn m(&self) -> Option<usize> {
        self.n.is_multiple_of(2).then_some(self.n / 2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    TooFewPoints { count: usize },
    LowDegree { element: Element, degree: usize },
    NoOrder { element: Element, degree: usize, expected: usize },
    Disconnected { a: Element, b: Element },
    Diameter { observed: usize, expected: usize, witness: (Element, Element) },
    ShortCycle { length: usize, cycle: Vec<Element> },
    GirthTooLarge { observed: Option<usize>, expected: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub n: usize,
    pub has_order: bool,
    pub order: Option<OrderParams>,
    pub diameter: usize,
    pub girth: Option<usize>,
    pub diameter_ok: bool,
    pub girth_ok: bool,
    pub is_thick: bool,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Certifies `g` as a weak generalised `n`-gon with an order: every element
/// on at least two others, uniform degrees, incidence graph of diameter `n`
/// and girth `2n`. Failures come back as witnesses.
pub fn verify_polygon(g: &Geometry, n: usize) -> AxiomReport {
    assert!(n >= 3, "gonality must be at least 3");
    let mut violations = Vec::new();
    if g.num_points() < 2 {
        violations.push(Violation::TooFewPoints { count: g.num_points() });
    }
    for v in 0..g.num_vertices() {
        let degree = g.neighbours(v).count();
        if degree < 2 {
            violations.push(Violation::LowDegree { element: g.element(v), degree });
        }
    }

    let order = g.order();
    if order.is_none() {
        // first point and first line whose degree differs from element 0 of its kind
        let k = g.points_of(0).len();
        if let Some(l) = (0..g.num_lines()).find(|&l| g.points_of(l).len() != k) {
            violations.push(Violation::NoOrder { element: Element::Line(l), degree: g.points_of(l).len(), expected: k });
        }
        let r = g.lines_through(0).len();
        if let Some(p) = (0..g.num_points()).find(|&p| g.lines_through(p).len() != r) {
            violations.push(Violation::NoOrder { element: Element::Point(p), degree: g.lines_through(p).len(), expected: r });
        }
    }

    let d = DistanceOracle::compute(g);
    if let Some((a, b)) = d.first_unreachable() {
        violations.push(Violation::Disconnected { a: g.element(a), b: g.element(b) });
    }
    let diameter_ok = d.is_connected() && d.diameter() == n;
    if d.is_connected() && d.diameter() != n {
        let (a, b) = d.first_pair_at(d.diameter()).expect("diameter is attained");
        violations.push(Violation::Diameter {
            observed: d.diameter(),
            expected: n,
            witness: (g.element(a), g.element(b)),
        });
    }

    let girth_ok = d.girth() == Some(2 * n);
    match d.girth() {
        Some(len) if len < 2 * n => {
            let cycle = g
                .incidences()
                .find_map(|(p, l)| shortest_cycle_through_edge(g, p, l).filter(|c| c.len() == len))
                .expect("girth is attained on some edge");
            violations.push(Violation::ShortCycle { length: len, cycle });
        }
        Some(len) if len == 2 * n => {}
        observed => violations.push(Violation::GirthTooLarge { observed, expected: 2 * n }),
    }

    let is_thick = (0..g.num_points()).all(|p| g.lines_through(p).len() >= 3)
        && (0..g.num_lines()).all(|l| g.points_of(l).len() >= 3);

    AxiomReport {
        n,
        has_order: order.is_some(),
        order: order.map(|(s, t)| OrderParams { n, s, t }),
        diameter: d.diameter(),
        girth: d.girth(),
        diameter_ok,
        girth_ok,
        is_thick,
        violations,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderValidation {
    pub admissible: bool,
    pub reasons: Vec<String>,
}

fn is_square(x: u64) -> bool {
    let r = (x as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).any(|c| c * c == x)
}

/// Arithmetic restrictions on finite polygons with gonality `n` and order `(s, t)`.
pub fn validate_order(n: usize, s: u64, t: u64) -> OrderValidation {
    let mut reasons = Vec::new();
    let thick = s > 1 && t > 1;
    if !(s == 1 && t == 1) {
        match n {
            3 => {
                if s != t {
                    reasons.push(format!("projective plane needs s = t, got ({s}, {t})"));
                }
            }
            4 => {
                if !(s * t * (1 + s * t)).is_multiple_of(s + t) {
                    reasons.push(format!("st(1+st)/(s+t) = {}/{} is not an integer", s * t * (1 + s * t), s + t));
                }
                if thick {
                    if s > t * t {
                        reasons.push(format!("s = {s} exceeds t^2 = {}", t * t));
                    }
                    if t > s * s {
                        reasons.push(format!("t = {t} exceeds s^2 = {}", s * s));
                    }
                }
            }
            6 => {
                if thick {
                    if !is_square(s * t) {
                        reasons.push(format!("st = {} is not a perfect square", s * t));
                    }
                    if s > t.pow(3) {
                        reasons.push(format!("s = {s} exceeds t^3 = {}", t.pow(3)));
                    }
                    if t > s.pow(3) {
                        reasons.push(format!("t = {t} exceeds s^3 = {}", s.pow(3)));
                    }
                }
            }
            8 => {
                if thick {
                    if !is_square(2 * s * t) {
                        reasons.push(format!("2st = {} is not a perfect square", 2 * s * t));
                    }
                    if s > t * t {
                        reasons.push(format!("s = {s} exceeds t^2 = {}", t * t));
                    }
                    if t > s * s {
                        reasons.push(format!("t = {t} exceeds s^2 = {}", s * s));
                    }
                }
            }
            12 => {
                if s != 1 && t != 1 {
                    reasons.push(format!("12-gon needs s = 1 or t = 1, got ({s}, {t})"));
                }
            }
            _ => reasons.push(format!("no finite {n}-gon with order ({s}, {t}) other than s = t = 1")),
        }
    }
    OrderValidation { admissible: reasons.is_empty(), reasons }
}

/// `(points, lines)` of a generalised `n`-gon of order `(s, t)` with `st > 1`.
/// Even `n = 2m` uses `(1+s)(s^m t^m - 1)/(st - 1)` points and the dual
/// formula for lines; `n = 3` gives `s^2 + s + 1` of each.
pub fn expected_counts(n: usize, s: u64, t: u64) -> Result<(u64, u64), GeometryError> {
    if s * t == 1 {
        return Err(GeometryError::OrdinaryCounts);
    }
    if n == 3 && s == t {
        let c = s * s + s + 1;
        return Ok((c, c));
    }
    if !n.is_multiple_of(2) || n < 4 {
        return Err(GeometryError::UnsupportedGonality(n));
    }
    let m = (n / 2) as u32;
    let base = ((s * t).pow(m) - 1) / (s * t - 1);
    Ok(((1 + s) * base, (1 + t) * base))
}
