//! Exact arithmetic over GF(p^h) for small p^h.
//!
//! Elements are stored as a single canonical integer: for a prime field this
//! is the residue in `[0, p)`, for an extension field it is the coefficient
//! vector `c_0 + c_1 p + ... + c_{h-1} p^{h-1}` of the reduced polynomial.
//! Multiplication in extension fields goes through discrete log tables built
//! from the smallest primitive element.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;
/// Largest supported extension degree.
pub const MAX_EXTENSION_DEGREE: u32 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("extension degree {0} outside 1..={MAX_EXTENSION_DEGREE}")]
    DegreeOutOfRange(u32),
    #[error("field order {0} exceeds {MAX_FIELD_ORDER}")]
    OrderTooLarge(u64),
    #[error("{0} is not a prime power supported here")]
    NotPrimePower(u64),
}

/// A field element in canonical form. Only meaningful together with the
/// [`FieldSpec`] that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElem(pub u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug)]
struct LogTables {
    // exp[i] = g^i for i in 0..q-1, log[exp[i]] = i; log[0] unused.
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A finite field GF(p^h).
#[derive(Debug, Clone)]
pub struct FieldSpec {
    p: u32,
    h: u32,
    q: u32,
    /// Monic modulus, lowest degree first, length `h + 1`; empty for prime fields.
    modulus: Vec<u32>,
    tables: Option<Arc<LogTables>>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.h == other.h && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, h)` with `q = p^h`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut h = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        h += 1;
    }
    (rest == 1).then_some((p, h))
}

impl FieldSpec {
    /// Builds GF(p^h) with the first monic irreducible modulus in the fixed
    /// enumeration order (constant-term-first base-p integer ascending).
    pub fn new(p: u64, h: u32) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if h == 0 || h > MAX_EXTENSION_DEGREE {
            return Err(FieldError::DegreeOutOfRange(h));
        }
        let q = p.checked_pow(h).filter(|&q| q <= MAX_FIELD_ORDER);
        let Some(q) = q else {
            return Err(FieldError::OrderTooLarge(p.saturating_pow(h)));
        };
        let p = p as u32;
        if h == 1 {
            return Ok(FieldSpec { p, h, q: q as u32, modulus: Vec::new(), tables: None });
        }
        let modulus = first_irreducible(p, h);
        let mut field = FieldSpec { p, h, q: q as u32, modulus, tables: None };
        field.tables = Some(Arc::new(field.build_log_tables()));
        Ok(field)
    }

    pub fn prime(p: u64) -> Result<Self, FieldError> {
        Self::new(p, 1)
    }

    /// GF(q) for a prime power `q`.
    pub fn of_order(q: u64) -> Result<Self, FieldError> {
        let (p, h) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        Self::new(p, h)
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.h
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.h == 1
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    #[inline]
    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElem> {
        (1..self.q).map(FieldElem)
    }

    /// Builds an element from its base-p coefficient vector (lowest degree first).
    pub fn from_coefficients(&self, coeffs: &[u32]) -> FieldElem {
        assert!(coeffs.len() <= self.h as usize, "too many coefficients");
        let mut value = 0u32;
        for &c in coeffs.iter().rev() {
            value = value * self.p + c % self.p;
        }
        FieldElem(value)
    }

    pub fn coefficients(&self, a: FieldElem) -> Vec<u32> {
        let mut v = a.0;
        (0..self.h)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.h == 1 {
            let s = a.0 + b.0;
            return FieldElem(if s >= self.p { s - self.p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.h {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElem(out)
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.h == 1 {
            return FieldElem(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let mut x = a.0;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.h {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        FieldElem(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        match &self.tables {
            None => FieldElem(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32),
            Some(t) => {
                let e = (t.log[a.index()] + t.log[b.index()]) % (self.q - 1);
                FieldElem(t.exp[e as usize])
            }
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        if a.is_zero() {
            return None;
        }
        match &self.tables {
            None => Some(self.pow(a, self.p as u64 - 2)),
            Some(t) => {
                let e = (self.q - 1 - t.log[a.index()]) % (self.q - 1);
                Some(FieldElem(t.exp[e as usize]))
            }
        }
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Option<FieldElem> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut base = a;
        let mut acc = FieldElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `k * 1_F`, reduced modulo the characteristic; `k` may be negative.
    pub fn eval_integer(&self, k: i128) -> FieldElem {
        FieldElem(k.rem_euclid(self.p as i128) as u32)
    }

    /// Evaluates `sum_{j=0}^{k} (-s)^j` in this field.
    pub fn alternating_sum(&self, s: i64, k: u32) -> FieldElem {
        self.eval_integer(alternating_sum_int(s, k))
    }

    // Polynomial multiplication of coefficient vectors modulo the modulus.
    fn poly_mul_mod(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let h = self.h as usize;
        let p = self.p;
        let mut prod = vec![0u32; 2 * h - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for deg in (h..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            // x^h = -(m_0 + ... + m_{h-1} x^{h-1})
            for k in 0..h {
                let sub = (c * self.modulus[k]) % p;
                let idx = deg - h + k;
                prod[idx] = (prod[idx] + p - sub) % p;
            }
        }
        prod.truncate(h);
        prod
    }

    fn build_log_tables(&self) -> LogTables {
        let q = self.q as usize;
        for g in 2..self.q {
            let gc = self.coefficients(FieldElem(g));
            let mut exp = Vec::with_capacity(q - 1);
            let mut cur = self.coefficients(FieldElem::ONE);
            let mut seen = vec![false; q];
            let mut ok = true;
            for _ in 0..q - 1 {
                let idx = self.from_coefficients(&cur).0;
                if seen[idx as usize] {
                    ok = false;
                    break;
                }
                seen[idx as usize] = true;
                exp.push(idx);
                cur = self.poly_mul_mod(&cur, &gc);
            }
            if ok {
                let mut log = vec![0u32; q];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                return LogTables { exp, log };
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }
}

/// `sum_{j=0}^{k} (-s)^j` over the integers.
pub fn alternating_sum_int(s: i64, k: u32) -> i128 {
    let mut term: i128 = 1;
    let mut total: i128 = 0;
    for _ in 0..=k {
        total += term;
        term *= -(s as i128);
    }
    total
}

// Remainder of `a` modulo monic `b`, both lowest degree first.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (k, &bk) in b.iter().enumerate() {
                r[shift + k] = (r[shift + k] + p - (lead * bk) % p) % p;
            }
        }
        r.pop();
    }
    r
}

/// Whether the monic polynomial `f` (lowest degree first) is irreducible over
/// GF(p), by trial division with every monic polynomial of degree up to deg/2.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut v = idx;
            for _ in 0..d {
                g.push((v % p as u64) as u32);
                v /= p as u64;
            }
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn first_irreducible(p: u32, h: u32) -> Vec<u32> {
    let count = (p as u64).pow(h);
    for idx in 0..count {
        let mut f = Vec::with_capacity(h as usize + 1);
        let mut v = idx;
        for _ in 0..h {
            f.push((v % p as u64) as u32);
            v /= p as u64;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Outcome of evaluating the alternating sums `1 - s + ... + (-s)^k`,
/// `k = 1..m-1`, in a field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldCondition {
    pub holds: bool,
    pub failing_k: Vec<u32>,
}

pub fn field_condition(s: u64, m: u32, field: &FieldSpec) -> FieldCondition {
    let failing_k: Vec<u32> = (1..m)
        .filter(|&k| field.alternating_sum(s as i64, k).is_zero())
        .collect();
    FieldCondition { holds: failing_k.is_empty(), failing_k }
}
