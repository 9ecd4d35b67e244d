//! Reference implementations for the integration tests. Everything here works
//! on plain `u64` residues and line lists, and shares no code with the crate.

#![allow(dead_code)]

use std::collections::VecDeque;

use itertools::Itertools;

pub fn inv(a: u64, p: u64) -> u64 {
    (1..p).find(|&x| a * x % p == 1).expect("nonzero residue")
}

/// Incidence rows, one per line.
pub fn line_matrix(lines: &[Vec<usize>], n: usize) -> Vec<Vec<u64>> {
    lines
        .iter()
        .map(|l| {
            let mut r = vec![0; n];
            for &x in l {
                r[x] = 1;
            }
            r
        })
        .collect()
}

/// Reduced echelon form in place; returns pivot columns.
fn echelon(p: u64, m: &mut [Vec<u64>], n: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(k) = (r..m.len()).find(|&i| m[i][c] % p != 0) else { continue };
        m.swap(r, k);
        let s = inv(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * s % p;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..n {
                    m[i][j] = (m[i][j] + p * p - f * m[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

pub fn rank(p: u64, rows: &[Vec<u64>], n: usize) -> usize {
    echelon(p, &mut rows.to_vec(), n).len()
}

/// Basis of `{x : row . x = 0 for every row}`.
pub fn null_space(p: u64, rows: &[Vec<u64>], n: usize) -> Vec<Vec<u64>> {
    let mut m = rows.to_vec();
    let pivots = echelon(p, &mut m, n);
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![0; n];
            x[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = (p - m[i][free]) % p;
            }
            x
        })
        .collect()
}

fn orthogonal(p: u64, checks: &[Vec<u64>], support: &[usize], coeffs: &[u64]) -> bool {
    checks.iter().all(|h| support.iter().zip(coeffs).map(|(&i, &c)| h[i] * c).sum::<u64>() % p == 0)
}

/// Normalized words (first coefficient 1) of the code spanned by `lines`, for
/// weights `1..=w_max`, by trying every support and every coefficient pattern.
pub fn naive_words(p: u64, lines: &[Vec<usize>], n: usize, w_max: usize) -> Vec<(Vec<usize>, Vec<u64>)> {
    let checks = null_space(p, &line_matrix(lines, n), n);
    let mut out = Vec::new();
    for w in 1..=w_max {
        for support in (0..n).combinations(w) {
            for tail in (0..w - 1).map(move |_| 1..p).multi_cartesian_product_or_empty() {
                let coeffs: Vec<u64> = std::iter::once(1).chain(tail).collect();
                if orthogonal(p, &checks, &support, &coeffs) {
                    out.push((support.clone(), coeffs));
                }
            }
        }
    }
    out
}

/// Every nonzero codeword of the whole space `F_p^n`, normalized.
pub fn full_space_words(p: u64, lines: &[Vec<usize>], n: usize) -> Vec<(Vec<usize>, Vec<u64>)> {
    let checks = null_space(p, &line_matrix(lines, n), n);
    let total = p.pow(n as u32);
    let mut out = Vec::new();
    for idx in 1..total {
        let mut v = vec![0; n];
        let mut rest = idx;
        for x in v.iter_mut() {
            *x = rest % p;
            rest /= p;
        }
        let support: Vec<usize> = (0..n).filter(|&i| v[i] != 0).collect();
        if v[support[0]] != 1 {
            continue;
        }
        let coeffs: Vec<u64> = support.iter().map(|&i| v[i]).collect();
        if orthogonal(p, &checks, &support, &coeffs) {
            out.push((support, coeffs));
        }
    }
    out.sort_by(|a, b| (a.0.len(), &a.0, &a.1).cmp(&(b.0.len(), &b.0, &b.1)));
    out
}

trait OrEmpty: Iterator + Sized {
    /// Like `multi_cartesian_product`, but yields one empty vector for no factors.
    fn multi_cartesian_product_or_empty(self) -> Box<dyn Iterator<Item = Vec<u64>>>;
}

impl<I> OrEmpty for I
where
    I: Iterator<Item = std::ops::Range<u64>> + Sized + 'static,
{
    fn multi_cartesian_product_or_empty(self) -> Box<dyn Iterator<Item = Vec<u64>>> {
        let factors: Vec<_> = self.collect();
        if factors.is_empty() {
            Box::new(std::iter::once(Vec::new()))
        } else {
            Box::new(factors.into_iter().multi_cartesian_product())
        }
    }
}

/// All-pairs incidence-graph distances, points `0..P` then lines.
pub fn bfs_distances(lines: &[Vec<usize>], num_points: usize) -> Vec<Vec<usize>> {
    let nv = num_points + lines.len();
    let mut adj = vec![Vec::new(); nv];
    for (l, pts) in lines.iter().enumerate() {
        for &p in pts {
            adj[p].push(num_points + l);
            adj[num_points + l].push(p);
        }
    }
    (0..nv)
        .map(|src| {
            let mut d = vec![usize::MAX; nv];
            d[src] = 0;
            let mut q = VecDeque::from([src]);
            while let Some(u) = q.pop_front() {
                for &w in &adj[u] {
                    if d[w] == usize::MAX {
                        d[w] = d[u] + 1;
                        q.push_back(w);
                    }
                }
            }
            d
        })
        .collect()
}

/// Normalized vectors of weight `1..=w_max` orthogonal to every line.
pub fn naive_dual_words(p: u64, lines: &[Vec<usize>], n: usize, w_max: usize) -> Vec<(Vec<usize>, Vec<u64>)> {
    let checks = line_matrix(lines, n);
    let mut out = Vec::new();
    for w in 1..=w_max {
        for support in (0..n).combinations(w) {
            for tail in (0..w - 1).map(move |_| 1..p).multi_cartesian_product_or_empty() {
                let coeffs: Vec<u64> = std::iter::once(1).chain(tail).collect();
                if orthogonal(p, &checks, &support, &coeffs) {
                    out.push((support.clone(), coeffs));
                }
            }
        }
    }
    out
}

/// Smallest weight among all nonzero combinations of `basis`.
pub fn min_weight_of_span(p: u64, basis: &[Vec<u64>], n: usize) -> Option<usize> {
    let total = p.checked_pow(basis.len() as u32).expect("span too large");
    (1..total)
        .map(|mut idx| {
            let mut v = vec![0u64; n];
            for row in basis {
                let c = idx % p;
                idx /= p;
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = (*x + c * r) % p;
                }
            }
            v.iter().filter(|&&x| x != 0).count()
        })
        .min()
}

/// No point is opposite every member of `set`.
pub fn blocks(dist: &[Vec<usize>], num_points: usize, diameter: usize, set: &[usize]) -> bool {
    (0..num_points).all(|v| set.iter().any(|&b| dist[v][b] < diameter))
}

/// Point sets `P_d(x) ∩ P_{n-d}(y)` over all opposite pairs `x, y` of the
/// right kind, for every `d` in `1..=n/2`, keyed by point set.
pub fn all_traces(dist: &[Vec<usize>], num_points: usize, n: usize) -> std::collections::BTreeMap<Vec<usize>, Vec<usize>> {
    let nv = dist.len();
    let mut out: std::collections::BTreeMap<Vec<usize>, Vec<usize>> = Default::default();
    for d in 1..=n / 2 {
        let kind: Vec<usize> = if d % 2 == 0 { (0..num_points).collect() } else { (num_points..nv).collect() };
        for &x in &kind {
            for &y in &kind {
                if dist[x][y] != n {
                    continue;
                }
                let t: Vec<usize> = (0..num_points).filter(|&z| dist[x][z] == d && dist[y][z] == n - d).collect();
                let ds = out.entry(t).or_default();
                if !ds.contains(&d) {
                    ds.push(d);
                }
            }
        }
    }
    out
}

/// Two points on exactly one line, two lines through exactly one point, and
/// four points with no three on a line.
pub fn is_projective_plane(lines: &[Vec<usize>], num_points: usize) -> bool {
    let on = |l: &Vec<usize>, x: usize| l.contains(&x);
    let joins = (0..num_points)
        .tuple_combinations()
        .all(|(a, b)| lines.iter().filter(|l| on(l, a) && on(l, b)).count() == 1);
    let meets = lines.iter().tuple_combinations().all(|(l, k)| l.iter().filter(|&&x| on(k, x)).count() == 1);
    let collinear = |a: usize, b: usize, c: usize| lines.iter().any(|l| on(l, a) && on(l, b) && on(l, c));
    let frame = (0..num_points).combinations(4).any(|q| q.iter().copied().tuple_combinations().all(|(a, b, c)| !collinear(a, b, c)));
    joins && meets && frame
}
