//! The code spanned by line indicator vectors over a prime field, its dual,
//! and the weighted point vectors used to bound its minimum weight.

mod enumerate;
mod weighted;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldElem, FieldSpec};
use crate::geometry::Geometry;
use crate::traces::{TraceIndex, TraceLabel};

pub use enumerate::{
    default_weight_guard, dual_min_weight, kernel_words, low_weight_codewords, min_weight, DualMinWeight, MinWeight,
    Word,
    FULL_DUAL_ENUMERATION_LIMIT,
};
pub use weighted::{check_line_sums, covered, verify_cx_dual, verify_cx_line, weighted_vector, CxViolation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("codes are built over prime fields only, got {0}")]
    ExtensionField(String),
    #[error("vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("vectors live over different fields")]
    FieldMismatch,
    #[error("weight {requested} exceeds the cost guard {limit}; pass an explicit override")]
    CostGuard { requested: usize, limit: usize },
    #[error("no codeword of weight <= {limit}")]
    NoWordWithinGuard { limit: usize },
    #[error("dual of dimension {dimension} is too large to enumerate without a cap")]
    Infeasible { dimension: usize },
    #[error("weighted vectors need a polygon of even gonality with an order")]
    NotAPolygon,
}

/// An F-valued function on the points of a geometry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointVector {
    field: FieldSpec,
    coeffs: Vec<FieldElem>,
}

impl PointVector {
    pub fn zeros(field: &FieldSpec, len: usize) -> Self {
        PointVector { field: field.clone(), coeffs: vec![FieldElem::ZERO; len] }
    }

    pub fn from_coeffs(field: &FieldSpec, coeffs: Vec<FieldElem>) -> Self {
        PointVector { field: field.clone(), coeffs }
    }

    /// Indicator vector of a point set.
    pub fn indicator(field: &FieldSpec, len: usize, set: &[usize]) -> Self {
        let mut v = Self::zeros(field, len);
        for &p in set {
            v.coeffs[p] = FieldElem::ONE;
        }
        v
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, i: usize) -> FieldElem {
        self.coeffs[i]
    }

    pub fn set(&mut self, i: usize, value: FieldElem) {
        self.coeffs[i] = value;
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }

    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_compatible(&self, other: &PointVector) -> Result<(), CodeError> {
        if self.field != other.field {
            return Err(CodeError::FieldMismatch);
        }
        if self.len() != other.len() {
            return Err(CodeError::LengthMismatch { expected: self.len(), got: other.len() });
        }
        Ok(())
    }

    fn zip_with(&self, other: &PointVector, op: impl Fn(FieldElem, FieldElem) -> FieldElem) -> Result<PointVector, CodeError> {
        self.check_compatible(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| op(a, b)).collect();
        Ok(PointVector { field: self.field.clone(), coeffs })
    }

    pub fn add(&self, other: &PointVector) -> Result<PointVector, CodeError> {
        self.zip_with(other, |a, b| self.field.add(a, b))
    }

    pub fn sub(&self, other: &PointVector) -> Result<PointVector, CodeError> {
        self.zip_with(other, |a, b| self.field.sub(a, b))
    }

    /// Entrywise product.
    pub fn hadamard(&self, other: &PointVector) -> Result<PointVector, CodeError> {
        self.zip_with(other, |a, b| self.field.mul(a, b))
    }

    pub fn scale(&self, lambda: FieldElem) -> PointVector {
        let coeffs = self.coeffs.iter().map(|&a| self.field.mul(lambda, a)).collect();
        PointVector { field: self.field.clone(), coeffs }
    }

    /// `sum_x f(x) g(x)`.
    pub fn inner_product(&self, other: &PointVector) -> Result<FieldElem, CodeError> {
        self.check_compatible(other)?;
        Ok(dot(&self.field, &self.coeffs, &other.coeffs))
    }

    /// Scalar multiple whose first nonzero coefficient is one.
    pub fn normalized(&self) -> PointVector {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            Some(&lead) => self.scale(self.field.inv(lead).expect("nonzero")),
            None => self.clone(),
        }
    }
}

pub(crate) fn dot(f: &FieldSpec, a: &[FieldElem], b: &[FieldElem]) -> FieldElem {
    a.iter().zip(b).fold(FieldElem::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// `sum_x f(x) g(x)` for two point vectors.
pub fn inner_product(f: &PointVector, g: &PointVector) -> Result<FieldElem, CodeError> {
    f.inner_product(g)
}

/// Row-reduces `rows` in place to reduced echelon form with leftmost pivots,
/// taking the first available row for each pivot. Returns pivot columns.
pub(crate) fn row_reduce(f: &FieldSpec, rows: &mut Vec<Vec<FieldElem>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(rows[r][col]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = f.sub(*x, f.mul(factor, y));
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// The row space of the line-point incidence matrix.
#[derive(Debug, Clone)]
pub struct LinearCode {
    field: FieldSpec,
    num_points: usize,
    lines: Vec<Vec<usize>>,
    generators: Vec<Vec<FieldElem>>,
    reduced: Vec<Vec<FieldElem>>,
    pivots: Vec<usize>,
    parity_check: Vec<Vec<FieldElem>>,
}

impl LinearCode {
    /// Generator rows are the line indicators, in line order.
    pub fn build(g: &Geometry, field: &FieldSpec) -> Result<Self, CodeError> {
        Self::build_scaled(g, field, &vec![FieldElem::ONE; g.num_lines()])
    }

    /// Like [`LinearCode::build`] with generator row `L` multiplied by `scalars[L]`.
    pub fn build_scaled(g: &Geometry, field: &FieldSpec, scalars: &[FieldElem]) -> Result<Self, CodeError> {
        if !field.is_prime_field() {
            return Err(CodeError::ExtensionField(field.to_string()));
        }
        let n = g.num_points();
        let generators: Vec<Vec<FieldElem>> = g
            .lines()
            .iter()
            .zip(scalars)
            .map(|(pts, &lambda)| {
                let mut row = vec![FieldElem::ZERO; n];
                for &p in pts {
                    row[p] = lambda;
                }
                row
            })
            .collect();
        let mut reduced = generators.clone();
        let pivots = row_reduce(field, &mut reduced, n);

        // One dual basis vector per free column.
        let mut is_pivot = vec![false; n];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let parity_check = (0..n)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut h = vec![FieldElem::ZERO; n];
                h[free] = FieldElem::ONE;
                for (row, &pc) in reduced.iter().zip(&pivots) {
                    h[pc] = field.neg(row[free]);
                }
                h
            })
            .collect();

        Ok(LinearCode {
            field: field.clone(),
            num_points: n,
            lines: g.lines().to_vec(),
            generators,
            reduced,
            pivots,
            parity_check,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn length(&self) -> usize {
        self.num_points
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn dual_dimension(&self) -> usize {
        self.num_points - self.rank()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn generators(&self) -> &[Vec<FieldElem>] {
        &self.generators
    }

    pub fn reduced_rows(&self) -> &[Vec<FieldElem>] {
        &self.reduced
    }

    /// Rows spanning the dual code.
    pub fn parity_check(&self) -> &[Vec<FieldElem>] {
        &self.parity_check
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    /// Largest line size minus one; equals `s` for geometries with an order.
    pub fn s(&self) -> usize {
        self.lines.iter().map(Vec::len).max().unwrap_or(1) - 1
    }

    /// Generator row `L` as a point vector.
    pub fn line_vector(&self, line: usize) -> PointVector {
        PointVector::indicator(&self.field, self.num_points, &self.lines[line])
    }

    fn check_vector(&self, v: &PointVector) -> Result<(), CodeError> {
        if v.field() != &self.field {
            return Err(CodeError::FieldMismatch);
        }
        if v.len() != self.num_points {
            return Err(CodeError::LengthMismatch { expected: self.num_points, got: v.len() });
        }
        Ok(())
    }

    /// Whether `v` lies in the code: every parity check vanishes on it.
    pub fn contains(&self, v: &PointVector) -> Result<bool, CodeError> {
        self.check_vector(v)?;
        Ok(self.parity_check.iter().all(|h| dot(&self.field, h, v.coeffs()).is_zero()))
    }

    /// Whether `v` is orthogonal to every generator.
    pub fn dual_contains(&self, v: &PointVector) -> Result<bool, CodeError> {
        self.check_vector(v)?;
        Ok(self.reduced.iter().all(|g| dot(&self.field, g, v.coeffs()).is_zero()))
    }

    /// Whether `v` is a nonzero multiple of a line indicator.
    pub fn is_line_multiple(&self, support: &[usize], coeffs: &[FieldElem]) -> bool {
        !coeffs.is_empty()
            && coeffs.iter().all(|&c| c == coeffs[0])
            && self.lines.iter().any(|l| {
                let mut sorted = l.clone();
                sorted.sort_unstable();
                sorted == support
            })
    }
}

/// Parity-check membership test.
pub fn membership(code: &LinearCode, v: &PointVector) -> Result<bool, CodeError> {
    code.contains(v)
}

/// A low-weight codeword together with its geometric classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedWord {
    pub weight: usize,
    pub support: Vec<usize>,
    pub coefficients: Vec<FieldElem>,
    pub trace_match: Option<TraceLabel>,
    pub is_line_multiple: bool,
}

/// Attaches the least matching trace (if an index is given) and the
/// line-multiple flag to each word.
pub fn classify_words(code: &LinearCode, words: &[Word], index: Option<&TraceIndex>) -> Vec<ClassifiedWord> {
    words
        .iter()
        .map(|w| ClassifiedWord {
            weight: w.weight(),
            support: w.support.clone(),
            coefficients: w.coefficients.clone(),
            trace_match: index.and_then(|i| i.classify(&w.support)),
            is_line_multiple: code.is_line_multiple(&w.support, &w.coefficients),
        })
        .collect()
}
