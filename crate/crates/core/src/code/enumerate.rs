//! Exact low-weight enumeration of kernel words by meet-in-the-middle.
//!
//! A vector of weight `w` with support `i_1 < ... < i_w` and nonzero
//! coefficients lies in `ker(M)` iff the weighted columns of `M` sum to zero.
//! The support is split at its `ceil(w/2)`-th position: left halves are
//! hashed by syndrome, right halves look up the negated syndrome, and a match
//! counts only when the right half starts after the left half ends. Each word
//! is therefore produced exactly once, scaled so its first coefficient is one.

use std::collections::HashMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{CodeError, LinearCode};
use crate::field::{FieldElem, FieldSpec};
use crate::par;

/// A nonzero kernel vector, stored sparsely and normalized.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Word {
    pub support: Vec<usize>,
    pub coefficients: Vec<FieldElem>,
}

impl Word {
    pub fn weight(&self) -> usize {
        self.support.len()
    }

    pub fn to_dense(&self, len: usize) -> Vec<FieldElem> {
        let mut v = vec![FieldElem::ZERO; len];
        for (&p, &c) in self.support.iter().zip(&self.coefficients) {
            v[p] = c;
        }
        v
    }
}

struct Half {
    positions: Vec<usize>,
    coeffs: Vec<FieldElem>,
}

/// Columns of `check`, each pre-multiplied by every nonzero scalar:
/// `scaled[j][c-1] = c * column_j`.
fn scaled_columns(f: &FieldSpec, check: &[Vec<FieldElem>], n: usize) -> Vec<Vec<Vec<FieldElem>>> {
    (0..n)
        .map(|j| {
            f.nonzero_elements()
                .map(|c| check.iter().map(|row| f.mul(c, row[j])).collect())
                .collect()
        })
        .collect()
}

fn add_into(f: &FieldSpec, acc: &mut [FieldElem], v: &[FieldElem]) {
    for (a, &b) in acc.iter_mut().zip(v) {
        *a = f.add(*a, b);
    }
}

// Nonzero coefficient patterns of length k, optionally with the first fixed to one.
fn patterns(f: &FieldSpec, k: usize, first_is_one: bool) -> Vec<Vec<FieldElem>> {
    let nz: Vec<FieldElem> = f.nonzero_elements().collect();
    if k == 0 {
        return vec![Vec::new()];
    }
    let head: Vec<FieldElem> = if first_is_one { vec![FieldElem::ONE] } else { nz.clone() };
    let mut out: Vec<Vec<FieldElem>> = head.into_iter().map(|c| vec![c]).collect();
    for _ in 1..k {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                nz.iter().map(move |&c| {
                    let mut v = prefix.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out
}

// All halves of `size` positions whose first position is `first`.
fn halves_starting_at(
    f: &FieldSpec,
    scaled: &[Vec<Vec<FieldElem>>],
    rows: usize,
    first: usize,
    size: usize,
    pats: &[Vec<FieldElem>],
) -> Vec<(Vec<FieldElem>, Half)> {
    let n = scaled.len();
    let mut out = Vec::new();
    for rest in (first + 1..n).combinations(size - 1) {
        let mut positions = Vec::with_capacity(size);
        positions.push(first);
        positions.extend(rest);
        for pat in pats {
            let mut syn = vec![FieldElem::ZERO; rows];
            for (&pos, &c) in positions.iter().zip(pat) {
                add_into(f, &mut syn, &scaled[pos][c.index() - 1]);
            }
            out.push((syn, Half { positions: positions.clone(), coeffs: pat.clone() }));
        }
    }
    out
}

/// Every normalized nonzero vector of exactly `weight` with `check * v = 0`,
/// sorted by support then coefficients.
pub fn kernel_words(f: &FieldSpec, check: &[Vec<FieldElem>], n: usize, weight: usize) -> Vec<Word> {
    if weight == 0 || weight > n {
        return Vec::new();
    }
    let rows = check.len();
    let left_size = weight.div_ceil(2);
    let right_size = weight - left_size;
    let scaled = scaled_columns(f, check, n);
    let left_pats = patterns(f, left_size, true);
    let right_pats = patterns(f, right_size, false);

    let left = par::flat_map_range(0..n, |i| halves_starting_at(f, &scaled, rows, i, left_size, &left_pats));

    let mut words = if right_size == 0 {
        left.into_iter()
            .filter(|(syn, _)| syn.iter().all(|c| c.is_zero()))
            .map(|(_, h)| Word { support: h.positions, coefficients: h.coeffs })
            .collect::<Vec<_>>()
    } else {
        let mut table: HashMap<Vec<FieldElem>, Vec<Half>> = HashMap::new();
        for (syn, half) in left {
            table.entry(syn).or_default().push(half);
        }
        par::flat_map_range(1..n, |j| {
            let mut found = Vec::new();
            for (syn, right) in halves_starting_at(f, &scaled, rows, j, right_size, &right_pats) {
                let target: Vec<FieldElem> = syn.iter().map(|&c| f.neg(c)).collect();
                let Some(matches) = table.get(&target) else { continue };
                for l in matches.iter().filter(|l| *l.positions.last().unwrap() < j) {
                    let mut support = l.positions.clone();
                    support.extend_from_slice(&right.positions);
                    let mut coefficients = l.coeffs.clone();
                    coefficients.extend_from_slice(&right.coeffs);
                    found.push(Word { support, coefficients });
                }
            }
            found
        })
    };
    words.sort();
    words
}

/// Cost-guard limit on enumeration weight: `s + 2`.
pub fn default_weight_guard(code: &LinearCode) -> usize {
    code.s() + 2
}

fn check_guard(code: &LinearCode, w_max: usize, allow_override: bool) -> Result<(), CodeError> {
    let limit = default_weight_guard(code);
    if w_max > limit && !allow_override {
        return Err(CodeError::CostGuard { requested: w_max, limit });
    }
    Ok(())
}

/// All normalized codewords of weight `1..=w_max`, ordered by weight,
/// support, then coefficients.
pub fn low_weight_codewords(code: &LinearCode, w_max: usize, allow_override: bool) -> Result<Vec<Word>, CodeError> {
    check_guard(code, w_max, allow_override)?;
    Ok((1..=w_max)
        .flat_map(|w| kernel_words(code.field(), code.parity_check(), code.length(), w))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinWeight {
    pub weight: usize,
    pub words: Vec<Word>,
}

/// Smallest weight with a nonzero codeword, searching upwards to `limit`
/// (default `s + 2`).
pub fn min_weight(code: &LinearCode, limit: Option<usize>) -> Result<MinWeight, CodeError> {
    let limit = limit.unwrap_or_else(|| default_weight_guard(code));
    for w in 1..=limit {
        let words = kernel_words(code.field(), code.parity_check(), code.length(), w);
        if !words.is_empty() {
            return Ok(MinWeight { weight: w, words });
        }
    }
    Err(CodeError::NoWordWithinGuard { limit })
}

/// Dual spaces with at most this many vectors are enumerated in full.
pub const FULL_DUAL_ENUMERATION_LIMIT: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum DualMinWeight {
    /// Exact minimum weight of the dual code.
    Exact { weight: usize, full_enumeration: bool },
    /// No nonzero dual word of weight at most `cap`.
    ExceedsCap { cap: usize },
    /// The dual code is zero.
    Trivial,
}

/// With `cap`, searches dual words of weight up to `cap`; without it,
/// enumerates the whole dual when that is small enough.
pub fn dual_min_weight(code: &LinearCode, cap: Option<usize>) -> Result<DualMinWeight, CodeError> {
    let dim = code.dual_dimension();
    if dim == 0 {
        return Ok(DualMinWeight::Trivial);
    }
    if let Some(cap) = cap {
        for w in 1..=cap {
            if !kernel_words(code.field(), code.reduced_rows(), code.length(), w).is_empty() {
                return Ok(DualMinWeight::Exact { weight: w, full_enumeration: false });
            }
        }
        return Ok(DualMinWeight::ExceedsCap { cap });
    }
    let p = code.field().characteristic() as u64;
    let size = p.checked_pow(dim as u32).filter(|&s| s <= FULL_DUAL_ENUMERATION_LIMIT);
    let Some(size) = size else {
        return Err(CodeError::Infeasible { dimension: dim });
    };
    let f = code.field();
    let basis = code.parity_check();
    let n = code.length();
    // Chunks of combination indices, each reporting its own minimum.
    const CHUNK: u64 = 1 << 12;
    let chunks = size.div_ceil(CHUNK) as usize;
    let best = par::map_range(0..chunks, |chunk| {
        let mut best = usize::MAX;
        let start = (chunk as u64 * CHUNK).max(1);
        let end = ((chunk as u64 + 1) * CHUNK).min(size);
        for idx in start..end {
            let mut v = vec![FieldElem::ZERO; n];
            let mut rest = idx;
            for row in basis {
                let c = FieldElem((rest % p) as u32);
                rest /= p;
                if !c.is_zero() {
                    for (x, &y) in v.iter_mut().zip(row) {
                        *x = f.add(*x, f.mul(c, y));
                    }
                }
            }
            best = best.min(v.iter().filter(|c| !c.is_zero()).count());
        }
        best
    })
    .into_iter()
    .min()
    .unwrap_or(usize::MAX);
    debug_assert!(best > 0);
    Ok(DualMinWeight::Exact { weight: best, full_enumeration: true })
}

/// Whether `check * word = 0`.
#[cfg(test)]
pub(crate) fn in_kernel(f: &FieldSpec, check: &[Vec<FieldElem>], n: usize, word: &Word) -> bool {
    let dense = word.to_dense(n);
    check.iter().all(|row| super::dot(f, row, &dense).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{elliptic_quadrangle, ordinary_ngon, symplectic_quadrangle};

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    // Rank over GF(p) with plain integer arithmetic, independent of the
    // library's row reduction.
    fn oracle_rank(rows: &[Vec<u64>], p: u64) -> usize {
        let mut m = rows.to_vec();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(r) = (rank..m.len()).find(|&r| m[r][c] % p != 0) else { continue };
            m.swap(rank, r);
            let inv = (1..p).find(|x| x * m[rank][c] % p == 1).unwrap();
            for x in m[rank].iter_mut() {
                *x = *x * inv % p;
            }
            for i in 0..m.len() {
                if i != rank && m[i][c] != 0 {
                    let k = m[i][c];
                    for j in 0..cols {
                        m[i][j] = (m[i][j] + p * p - k * m[rank][j] % p) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    // Independent oracle: every normalized vector of the space, membership by rank.
    fn full_space_words(code: &LinearCode, w_max: usize) -> Vec<Word> {
        let n = code.length();
        let p = code.field().characteristic() as u64;
        let gens: Vec<Vec<u64>> = code.lines().iter().map(|l| {
            let mut r = vec![0u64; n];
            for &i in l { r[i] = 1; }
            r
        }).collect();
        let base = oracle_rank(&gens, p);
        let mut out = Vec::new();
        for idx in 1..p.pow(n as u32) {
            let mut v = Vec::with_capacity(n);
            let mut rest = idx;
            for _ in 0..n {
                v.push(rest % p);
                rest /= p;
            }
            let support: Vec<usize> = (0..n).filter(|&i| v[i] != 0).collect();
            if support.len() > w_max || v[support[0]] != 1 {
                continue;
            }
            let mut rows = gens.clone();
            rows.push(v.clone());
            if oracle_rank(&rows, p) == base {
                let coefficients = support.iter().map(|&i| FieldElem(v[i] as u32)).collect();
                out.push(Word { support, coefficients });
            }
        }
        out.sort_by(|a, b| (a.weight(), a).cmp(&(b.weight(), b)));
        out
    }

    #[test]
    fn quadrangle_matches_full_space_oracle() {
        let g = ordinary_ngon(4).unwrap();
        for p in [2, 3, 5] {
            let c = LinearCode::build(&g, &gf(p)).unwrap();
            let got = low_weight_codewords(&c, 3, false).unwrap();
            assert_eq!(got, full_space_words(&c, 3), "p={p}");
        }
    }

    #[test]
    fn w2_gf2_low_weight() {
        let g = symplectic_quadrangle(2).unwrap();
        let c = LinearCode::build(&g, &gf(2)).unwrap();
        let words = low_weight_codewords(&c, 3, false).unwrap();
        assert!(words.iter().all(|w| w.weight() == 3));
        for l in g.lines() {
            assert!(words.iter().any(|w| &w.support == l));
        }
        assert_eq!(min_weight(&c, None).unwrap().weight, 3);
        assert!(words.iter().all(|w| in_kernel(c.field(), c.parity_check(), 15, w)));
    }

    #[test]
    fn elliptic_weight_three_words_are_lines() {
        let g = elliptic_quadrangle(2).unwrap();
        let c = LinearCode::build(&g, &gf(2)).unwrap();
        let words = low_weight_codewords(&c, 3, false).unwrap();
        assert_eq!(words.len(), 45);
        assert!(words.iter().all(|w| c.is_line_multiple(&w.support, &w.coefficients)));
    }

    #[test]
    fn guard_requires_override() {
        let c = LinearCode::build(&symplectic_quadrangle(2).unwrap(), &gf(2)).unwrap();
        assert_eq!(
            low_weight_codewords(&c, 5, false).unwrap_err(),
            CodeError::CostGuard { requested: 5, limit: 4 }
        );
        assert!(low_weight_codewords(&c, 5, true).is_ok());
    }

    #[test]
    fn dual_of_w2() {
        let c = LinearCode::build(&symplectic_quadrangle(2).unwrap(), &gf(2)).unwrap();
        assert_eq!(dual_min_weight(&c, None).unwrap(), DualMinWeight::Exact { weight: 6, full_enumeration: true });
        assert_eq!(dual_min_weight(&c, Some(5)).unwrap(), DualMinWeight::ExceedsCap { cap: 5 });
        assert_eq!(dual_min_weight(&c, Some(6)).unwrap(), DualMinWeight::Exact { weight: 6, full_enumeration: false });
    }

    #[test]
    fn dual_of_cycle_code() {
        // ordinary 2m-gon over GF(2): the dual is spanned by the all-one vector
        for n in [4usize, 6, 8] {
            let c = LinearCode::build(&ordinary_ngon(n).unwrap(), &gf(2)).unwrap();
            assert_eq!(dual_min_weight(&c, None).unwrap(), DualMinWeight::Exact { weight: n, full_enumeration: true });
        }
    }

    #[test]
    fn patterns_count() {
        let f = gf(5);
        assert_eq!(patterns(&f, 3, true).len(), 16);
        assert_eq!(patterns(&f, 2, false).len(), 16);
        assert_eq!(patterns(&f, 0, false), vec![Vec::<FieldElem>::new()]);
    }
}
