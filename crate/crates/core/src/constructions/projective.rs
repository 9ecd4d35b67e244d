use std::collections::HashMap;

use crate::field::{FieldElem, FieldSpec};
use crate::par;

/// Points of PG(k, q) as normalized homogeneous coordinates (first nonzero
/// coordinate equal to one), in lexicographic order.
#[derive(Debug, Clone)]
pub struct ProjectiveSpace {
    field: FieldSpec,
    coords: usize,
    points: Vec<Vec<FieldElem>>,
    index: HashMap<Vec<FieldElem>, usize>,
}

impl ProjectiveSpace {
    /// PG(k, q) with `k + 1` homogeneous coordinates.
    pub fn new(field: FieldSpec, k: usize) -> Self {
        let coords = k + 1;
        let q = field.order() as usize;
        let mut points = Vec::new();
        // Vectors enumerated in lexicographic order, keeping normalized ones.
        let total = q.pow(coords as u32);
        for mut code in 0..total {
            let mut v = vec![FieldElem::ZERO; coords];
            for slot in v.iter_mut().rev() {
                *slot = FieldElem((code % q) as u32);
                code /= q;
            }
            if v.iter().find(|c| !c.is_zero()) == Some(&FieldElem::ONE) {
                points.push(v);
            }
        }
        let index = points.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        ProjectiveSpace { field, coords, points, index }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn points(&self) -> &[Vec<FieldElem>] {
        &self.points
    }

    pub fn coords(&self) -> usize {
        self.coords
    }

    pub fn index_of(&self, v: &[FieldElem]) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn normalize(&self, v: &[FieldElem]) -> Option<Vec<FieldElem>> {
        let lead = *v.iter().find(|c| !c.is_zero())?;
        let inv = self.field.inv(lead)?;
        Some(v.iter().map(|&c| self.field.mul(c, inv)).collect())
    }

    /// The `q + 1` normalized points on the line spanned by `x` and `y`.
    pub fn line_through(&self, x: &[FieldElem], y: &[FieldElem]) -> Vec<Vec<FieldElem>> {
        let f = &self.field;
        let mut out = vec![self.normalize(y).expect("nonzero")];
        for lambda in f.elements() {
            let v: Vec<FieldElem> = x.iter().zip(y).map(|(&a, &b)| f.add(a, f.mul(lambda, b))).collect();
            out.push(self.normalize(&v).expect("distinct points span a line"));
        }
        out
    }
}

/// All projective lines whose points all lie in `subset` (a sorted list of
/// indices into `space`), among pairs accepted by `accept`. Each line is the
/// ascending list of positions in `subset`; lines are sorted.
pub fn lines_in_subset<F>(space: &ProjectiveSpace, subset: &[usize], accept: F) -> Vec<Vec<usize>>
where
    F: Fn(&[FieldElem], &[FieldElem]) -> bool + Sync + Send,
{
    let position: HashMap<usize, usize> = subset.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut lines = par::flat_map_range(0..subset.len(), |i| {
        let x = &space.points()[subset[i]];
        let mut found = Vec::new();
        for (j, &pj) in subset.iter().enumerate().skip(i + 1) {
            let y = &space.points()[pj];
            if !accept(x, y) {
                continue;
            }
            let on_line: Option<Vec<usize>> = space
                .line_through(x, y)
                .iter()
                .map(|v| space.index_of(v).and_then(|k| position.get(&k).copied()))
                .collect();
            if let Some(mut pts) = on_line {
                pts.sort_unstable();
                // keep each line once: only from its two smallest points
                if pts[0] == i && pts[1] == j {
                    found.push(pts);
                }
            }
        }
        found
    });
    lines.sort();
    lines
}
