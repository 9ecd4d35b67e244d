//! Classical generalised polygons built from forms over GF(q), plus the
//! ordinary polygons and the gpg text interchange format.

pub mod gpg;
mod projective;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldElem, FieldError, FieldSpec};
use crate::geometry::{verify_polygon, Geometry, GeometryError, Violation};

pub use projective::{lines_in_subset, ProjectiveSpace};

/// Largest field order accepted by the form-based constructions.
pub const MAX_CONSTRUCTION_Q: u64 = 16;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("ordinary polygon needs n >= 3, got {0}")]
    TooFewSides(usize),
    #[error("unsupported field order {0}")]
    UnsupportedQ(u64),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("{family} failed certification: {violations:?}")]
    CertificationFailed { family: String, violations: Vec<Violation> },
}

/// Built-in families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Ngon,
    Pg2,
    Wq,
    Q4,
    Q5minus,
    Hexagon,
}

impl Family {
    /// Gonality of the family's members; for `Ngon` the parameter is the gonality.
    pub fn gonality(self, param: u64) -> usize {
        match self {
            Family::Ngon => param as usize,
            Family::Pg2 => 3,
            Family::Wq | Family::Q4 | Family::Q5minus => 4,
            Family::Hexagon => 6,
        }
    }

    pub fn build(self, param: u64) -> Result<Geometry, ConstructionError> {
        match self {
            Family::Ngon => ordinary_ngon(param as usize),
            Family::Pg2 => projective_plane(param),
            Family::Wq => symplectic_quadrangle(param),
            Family::Q4 => parabolic_quadrangle(param),
            Family::Q5minus => elliptic_quadrangle(param),
            Family::Hexagon => split_cayley_hexagon(param),
        }
    }
}

fn field_for(q: u64) -> Result<FieldSpec, ConstructionError> {
    if q > MAX_CONSTRUCTION_Q {
        return Err(ConstructionError::UnsupportedQ(q));
    }
    FieldSpec::of_order(q).map_err(|_| ConstructionError::UnsupportedQ(q))
}

/// Points of `space` on which `form` vanishes, with their lines.
fn quadric_geometry<Q>(space: &ProjectiveSpace, form: Q) -> Result<Geometry, ConstructionError>
where
    Q: Fn(&FieldSpec, &[FieldElem]) -> FieldElem,
{
    let f = space.field();
    let subset: Vec<usize> = (0..space.points().len()).filter(|&i| form(f, &space.points()[i]).is_zero()).collect();
    let lines = lines_in_subset(space, &subset, |_, _| true);
    Ok(Geometry::from_lines(lines, subset.len())?)
}

pub fn ordinary_ngon(n: usize) -> Result<Geometry, ConstructionError> {
    if n < 3 {
        return Err(ConstructionError::TooFewSides(n));
    }
    let lines = (0..n)
        .map(|i| {
            let (a, b) = (i, (i + 1) % n);
            vec![a.min(b), a.max(b)]
        })
        .collect();
    Ok(Geometry::from_lines(lines, n)?.with_label(format!("ordinary {n}-gon")))
}

/// PG(2, q): points and lines of the Desarguesian plane.
pub fn projective_plane(q: u64) -> Result<Geometry, ConstructionError> {
    let space = ProjectiveSpace::new(field_for(q)?, 2);
    let all: Vec<usize> = (0..space.points().len()).collect();
    let lines = lines_in_subset(&space, &all, |_, _| true);
    Ok(Geometry::from_lines(lines, all.len())?.with_label(format!("PG(2,{q})")))
}

/// Alternating form x0 y1 - x1 y0 + x2 y3 - x3 y2.
pub fn symplectic_form(f: &FieldSpec, x: &[FieldElem], y: &[FieldElem]) -> FieldElem {
    let a = f.sub(f.mul(x[0], y[1]), f.mul(x[1], y[0]));
    let b = f.sub(f.mul(x[2], y[3]), f.mul(x[3], y[2]));
    f.add(a, b)
}

/// W(q): all points of PG(3, q) and the totally isotropic lines.
pub fn symplectic_quadrangle(q: u64) -> Result<Geometry, ConstructionError> {
    let space = ProjectiveSpace::new(field_for(q)?, 3);
    let f = space.field().clone();
    let all: Vec<usize> = (0..space.points().len()).collect();
    let lines = lines_in_subset(&space, &all, |x, y| symplectic_form(&f, x, y).is_zero());
    Ok(Geometry::from_lines(lines, all.len())?.with_label(format!("W({q})")))
}

/// x0^2 + x1 x2 + x3 x4.
pub fn parabolic_form(f: &FieldSpec, x: &[FieldElem]) -> FieldElem {
    let sq = f.mul(x[0], x[0]);
    f.add(f.add(sq, f.mul(x[1], x[2])), f.mul(x[3], x[4]))
}

/// Q(4, q): points and lines of the parabolic quadric in PG(4, q).
pub fn parabolic_quadrangle(q: u64) -> Result<Geometry, ConstructionError> {
    let space = ProjectiveSpace::new(field_for(q)?, 4);
    Ok(quadric_geometry(&space, parabolic_form)?.with_label(format!("Q(4,{q})")))
}

/// Lexicographically first `(b, c)` with `x^2 + b x + c` irreducible over GF(q).
pub fn first_irreducible_quadratic(f: &FieldSpec) -> (FieldElem, FieldElem) {
    for b in f.elements() {
        for c in f.elements() {
            let has_root = f.elements().any(|x| f.add(f.add(f.mul(x, x), f.mul(b, x)), c).is_zero());
            if !has_root {
                return (b, c);
            }
        }
    }
    unreachable!("every finite field has an irreducible quadratic")
}

/// Q-(5, q) with the first irreducible binary quadratic.
pub fn elliptic_quadrangle(q: u64) -> Result<Geometry, ConstructionError> {
    let f = field_for(q)?;
    let (b, c) = first_irreducible_quadratic(&f);
    elliptic_quadrangle_with_form(q, b, c)
}

/// Points and lines in PG(5, q) of `x0^2 + b x0 x1 + c x1^2 + x2 x3 + x4 x5`.
/// Gives Q-(5, q) only when `x^2 + b x + c` is irreducible.
pub fn elliptic_quadrangle_with_form(q: u64, b: FieldElem, c: FieldElem) -> Result<Geometry, ConstructionError> {
    let space = ProjectiveSpace::new(field_for(q)?, 5);
    let g = quadric_geometry(&space, |f, x| {
        let bin = f.add(f.add(f.mul(x[0], x[0]), f.mul(b, f.mul(x[0], x[1]))), f.mul(c, f.mul(x[1], x[1])));
        f.add(bin, f.add(f.mul(x[2], x[3]), f.mul(x[4], x[5])))
    })?;
    Ok(g.with_label(format!("Q-(5,{q})")))
}

/// x0 x4 + x1 x5 + x2 x6 - x3^2.
pub fn hexagon_quadric(f: &FieldSpec, x: &[FieldElem]) -> FieldElem {
    let s = f.add(f.add(f.mul(x[0], x[4]), f.mul(x[1], x[5])), f.mul(x[2], x[6]));
    f.sub(s, f.mul(x[3], x[3]))
}

/// Grassmann coordinate `p_ij = x_i y_j - x_j y_i`.
fn plucker(f: &FieldSpec, x: &[FieldElem], y: &[FieldElem], i: usize, j: usize) -> FieldElem {
    f.sub(f.mul(x[i], y[j]), f.mul(x[j], y[i]))
}

/// Whether the line through `x` and `y` satisfies the six linear conditions
/// selecting split Cayley hexagon lines among the lines of Q(6, q).
pub fn is_hexagon_line(f: &FieldSpec, x: &[FieldElem], y: &[FieldElem]) -> bool {
    const CONDITIONS: [((usize, usize), (usize, usize)); 6] =
        [((1, 2), (3, 4)), ((5, 4), (3, 2)), ((2, 0), (3, 5)), ((6, 5), (3, 0)), ((0, 1), (3, 6)), ((4, 6), (3, 1))];
    CONDITIONS
        .iter()
        .all(|&((a, b), (c, d))| plucker(f, x, y, a, b) == plucker(f, x, y, c, d))
}

/// H(q): points of Q(6, q) with the quadric lines meeting the Grassmann
/// conditions, certified as a generalised hexagon of order (q, q).
pub fn split_cayley_hexagon(q: u64) -> Result<Geometry, ConstructionError> {
    let space = ProjectiveSpace::new(field_for(q)?, 6);
    let f = space.field().clone();
    let subset: Vec<usize> =
        (0..space.points().len()).filter(|&i| hexagon_quadric(&f, &space.points()[i]).is_zero()).collect();
    let lines = lines_in_subset(&space, &subset, |x, y| is_hexagon_line(&f, x, y));
    let g = Geometry::from_lines(lines, subset.len())?.with_label(format!("H({q})"));
    let report = verify_polygon(&g, 6);
    let order_ok = report.order.map(|o| (o.s, o.t)) == Some((q as usize, q as usize));
    if !report.passed() || !order_ok {
        return Err(ConstructionError::CertificationFailed { family: g.label().to_string(), violations: report.violations });
    }
    Ok(g)
}

/// Swaps points and lines.
pub fn dual_geometry(g: &Geometry) -> Geometry {
    g.dual()
}

/// Homogeneous coordinates of the points of a quadric family, in the same
/// order as the geometry built for it.
pub fn quadric_points(q: u64, k: usize, form: impl Fn(&FieldSpec, &[FieldElem]) -> FieldElem) -> Result<Vec<Vec<FieldElem>>, ConstructionError> {
    let space = ProjectiveSpace::new(field_for(q)?, k);
    let f = space.field().clone();
    Ok(space.points().iter().filter(|x| form(&f, x).is_zero()).cloned().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{expected_counts, verify_polygon};

    fn certify(g: &Geometry, n: usize, s: usize, t: usize) {
        let r = verify_polygon(g, n);
        assert!(r.passed(), "{}: {:?}", g.label(), r.violations);
        let o = r.order.unwrap();
        assert_eq!((o.s, o.t), (s, t), "{}", g.label());
        if s * t > 1 {
            let (np, nl) = expected_counts(n, s as u64, t as u64).unwrap();
            assert_eq!((g.num_points() as u64, g.num_lines() as u64), (np, nl));
        }
    }

    #[test]
    fn ordinary_polygons() {
        for n in 3..9 {
            certify(&ordinary_ngon(n).unwrap(), n, 1, 1);
        }
        assert!(matches!(ordinary_ngon(2), Err(ConstructionError::TooFewSides(2))));
    }

    #[test]
    fn planes() {
        let fano = projective_plane(2).unwrap();
        assert_eq!((fano.num_points(), fano.num_lines()), (7, 7));
        certify(&fano, 3, 2, 2);
        certify(&projective_plane(3).unwrap(), 3, 3, 3);
        certify(&projective_plane(4).unwrap(), 3, 4, 4);
        assert!(matches!(projective_plane(6), Err(ConstructionError::UnsupportedQ(6))));
    }

    #[test]
    fn symplectic_quadrangles() {
        let w2 = symplectic_quadrangle(2).unwrap();
        certify(&w2, 4, 2, 2);
        certify(&symplectic_quadrangle(3).unwrap(), 4, 3, 3);
        // lines are totally isotropic
        let space = ProjectiveSpace::new(FieldSpec::prime(2).unwrap(), 3);
        let f = space.field();
        for line in w2.lines() {
            for &a in line {
                for &b in line {
                    assert!(symplectic_form(f, &space.points()[a], &space.points()[b]).is_zero());
                }
            }
        }
    }

    #[test]
    fn symplectic_quadrangle_over_gf4() {
        certify(&symplectic_quadrangle(4).unwrap(), 4, 4, 4);
    }

    #[test]
    fn parabolic_quadrangles() {
        certify(&parabolic_quadrangle(2).unwrap(), 4, 2, 2);
        certify(&parabolic_quadrangle(3).unwrap(), 4, 3, 3);
    }

    #[test]
    fn elliptic_quadrangle_and_negative_control() {
        let g = elliptic_quadrangle(2).unwrap();
        certify(&g, 4, 2, 4);
        let d = dual_geometry(&g);
        assert_eq!(d.order(), Some((4, 2)));
        // x0 x1 is reducible: hyperbolic quadric, not an order (2,4) quadrangle
        let bad = elliptic_quadrangle_with_form(2, FieldElem(1), FieldElem(0)).unwrap();
        let r = verify_polygon(&bad, 4);
        assert!(!r.passed());
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(first_irreducible_quadratic(&f3), (FieldElem(0), FieldElem(1)));
    }

    #[test]
    fn split_cayley_hexagon_q2() {
        let h = split_cayley_hexagon(2).unwrap();
        certify(&h, 6, 2, 2);
    }
}
