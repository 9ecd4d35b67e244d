use serde::{Deserialize, Serialize};

use super::{dot, CodeError, LinearCode, PointVector};
use crate::field::{FieldElem, FieldSpec};
use crate::geometry::{DistanceOracle, Geometry};

/// The weighted vector of point `v` in a generalised `2m`-gon of order `(s, t)`:
/// a point at distance `2k < 2m` from `v` gets `sum_{j=0}^{m-k-1} (-s)^j`,
/// opposite points get zero.
pub fn weighted_vector(
    g: &Geometry,
    d: &DistanceOracle,
    v: usize,
    field: &FieldSpec,
) -> Result<PointVector, CodeError> {
    let (s, _) = g.order().ok_or(CodeError::NotAPolygon)?;
    if !d.diameter().is_multiple_of(2) {
        return Err(CodeError::NotAPolygon);
    }
    let m = d.diameter() / 2;
    let by_half_distance: Vec<FieldElem> =
        (0..m).map(|k| field.alternating_sum(s as i64, (m - k - 1) as u32)).collect();
    let coeffs = (0..g.num_points())
        .map(|x| {
            let k = d.point_dist(v, x) / 2;
            by_half_distance.get(k).copied().unwrap_or(FieldElem::ZERO)
        })
        .collect();
    Ok(PointVector::from_coeffs(field, coeffs))
}

/// A line on which a vector does not sum to one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CxViolation {
    pub line: usize,
    pub value: FieldElem,
}

/// Checks that `vector` has inner product one with every line indicator;
/// reports the first line where it does not.
pub fn check_line_sums(code: &LinearCode, vector: &PointVector) -> Result<(), CxViolation> {
    let f = code.field();
    for (line, pts) in code.lines().iter().enumerate() {
        let value = pts.iter().fold(FieldElem::ZERO, |acc, &p| f.add(acc, vector.get(p)));
        if value != FieldElem::ONE {
            return Err(CxViolation { line, value });
        }
    }
    Ok(())
}

/// `<c_v, i_L> = 1` for every line `L`.
pub fn verify_cx_line(
    code: &LinearCode,
    g: &Geometry,
    d: &DistanceOracle,
    v: usize,
) -> Result<Result<(), CxViolation>, CodeError> {
    let cv = weighted_vector(g, d, v, code.field())?;
    Ok(check_line_sums(code, &cv))
}

/// `c_v - c_w` lies in the dual code.
pub fn verify_cx_dual(
    code: &LinearCode,
    g: &Geometry,
    d: &DistanceOracle,
    v: usize,
    w: usize,
) -> Result<bool, CodeError> {
    let f = code.field();
    let diff = weighted_vector(g, d, v, f)?.sub(&weighted_vector(g, d, w, f)?)?;
    Ok(code.generators().iter().all(|row| dot(f, row, diff.coeffs()).is_zero()))
}

/// `f` is nonzero on every point of `line`.
pub fn covered(g: &Geometry, line: usize, f: &PointVector) -> bool {
    g.points_of(line).iter().all(|&p| !f.get(p).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{ordinary_ngon, split_cayley_hexagon, symplectic_quadrangle};
    use crate::geometry::{distances, Element};

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn quadrangle_coefficients() {
        // m = 2: (1 - s) on v, 1 on its collinear points
        let g = symplectic_quadrangle(3).unwrap();
        let d = distances(&g).unwrap();
        let f = gf(7);
        let cv = weighted_vector(&g, &d, 0, &f).unwrap();
        assert_eq!(cv.get(0), f.eval_integer(-2));
        for x in 1..g.num_points() {
            let expect = if d.point_dist(0, x) == 2 { f.one() } else { f.zero() };
            assert_eq!(cv.get(x), expect);
        }
    }

    #[test]
    fn hexagon_coefficients() {
        let g = split_cayley_hexagon(2).unwrap();
        let d = distances(&g).unwrap();
        let f = gf(7);
        let cv = weighted_vector(&g, &d, 5, &f).unwrap();
        for x in 0..g.num_points() {
            let expect = match d.point_dist(5, x) {
                0 => 3,  // s^2 - s + 1
                2 => -1, // 1 - s
                4 => 1,
                _ => 0,
            };
            assert_eq!(cv.get(x), f.eval_integer(expect));
        }
        // over GF(3) the coefficient at v vanishes
        let cv3 = weighted_vector(&g, &d, 5, &gf(3)).unwrap();
        assert!(cv3.get(5).is_zero());
        assert_eq!(cv3.weight(), d.points_within(Element::Point(5), 4).len() - 1);
    }

    #[test]
    fn line_sums_and_dual_differences() {
        let g = symplectic_quadrangle(2).unwrap();
        let d = distances(&g).unwrap();
        let code = LinearCode::build(&g, &gf(2)).unwrap();
        for v in 0..15 {
            assert_eq!(verify_cx_line(&code, &g, &d, v).unwrap(), Ok(()));
            assert!(verify_cx_dual(&code, &g, &d, v, v).unwrap());
            for w in 0..15 {
                assert!(verify_cx_dual(&code, &g, &d, v, w).unwrap());
            }
        }
    }

    #[test]
    fn perturbed_vector_fails_with_witness() {
        let g = symplectic_quadrangle(2).unwrap();
        let d = distances(&g).unwrap();
        let f = gf(2);
        let code = LinearCode::build(&g, &f).unwrap();
        let mut cv = weighted_vector(&g, &d, 0, &f).unwrap();
        let flip = f.add(cv.get(0), f.one());
        cv.set(0, flip);
        let err = check_line_sums(&code, &cv).unwrap_err();
        assert_eq!(err.line, g.lines_through(0)[0]);
    }

    #[test]
    fn covered_examples() {
        let g = ordinary_ngon(6).unwrap();
        let f = gf(3);
        let line = PointVector::indicator(&f, 6, g.points_of(2));
        assert!(covered(&g, 2, &line));
        assert!(!covered(&g, 2, &PointVector::indicator(&f, 6, &[2])));
        assert_eq!(line.inner_product(&line).unwrap(), f.eval_integer(2));
    }
}
