//! Exact sparse linear algebra over the rationals: rank by fraction-free
//! elimination, and a small solver used for chain fillings.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Q;

pub type SparseVec = Vec<(usize, Q)>;

/// A sparse rational matrix stored by columns.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn new(nrows: usize) -> Self {
        SparseMatrix { nrows, ncols: 0, cols: Vec::new() }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = SparseMatrix::new(nrows);
        for j in 0..ncols {
            let col = (0..nrows)
                .filter(|&i| rows[i][j] != 0)
                .map(|i| (i, Q::from_integer(rows[i][j].into())))
                .collect();
            m.push_col(col);
        }
        m
    }

    /// Entries are summed by row and zeros dropped.
    pub fn push_col(&mut self, mut col: SparseVec) {
        col.sort_by_key(|(i, _)| *i);
        let mut merged: SparseVec = Vec::with_capacity(col.len());
        for (i, q) in col {
            match merged.last_mut() {
                Some((j, p)) if *j == i => *p += q,
                _ => merged.push((i, q)),
            }
        }
        merged.retain(|(_, q)| !q.is_zero());
        self.cols.push(merged);
        self.ncols += 1;
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    /// `self · other`, used to audit `∂∂ = 0`.
    pub fn compose_is_zero(&self, other: &SparseMatrix) -> bool {
        other.cols.iter().all(|c| {
            let mut acc: HashMap<usize, Q> = HashMap::new();
            for (k, q) in c {
                for (i, p) in &self.cols[*k] {
                    *acc.entry(*i).or_insert_with(Q::zero) += p * q;
                }
            }
            acc.values().all(|v| v.is_zero())
        })
    }
}

trait Ring: Clone + PartialEq {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn gcd(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn is_unit(&self) -> bool;
}

impl Ring for i128 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_unit(&self) -> bool {
        self.abs() == 1
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

/// `a·x − b·y` on sorted sparse rows, then divided by the content.
fn combine<R: Ring>(a: &R, x: &[(usize, R)], b: &R, y: &[(usize, R)]) -> Option<Vec<(usize, R)>> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (k, v) = if j >= y.len() || (i < x.len() && x[i].0 < y[j].0) {
            i += 1;
            (x[i - 1].0, a.mul(&x[i - 1].1)?)
        } else if i >= x.len() || y[j].0 < x[i].0 {
            j += 1;
            (y[j - 1].0, R::zero().sub(&b.mul(&y[j - 1].1)?)?)
        } else {
            i += 1;
            j += 1;
            (x[i - 1].0, a.mul(&x[i - 1].1)?.sub(&b.mul(&y[j - 1].1)?)?)
        };
        if !v.is_zero() {
            out.push((k, v));
        }
    }
    let mut g = R::zero();
    for (_, v) in &out {
        g = g.gcd(v);
        if g.is_unit() {
            return Some(out);
        }
    }
    if !g.is_zero() {
        for (_, v) in out.iter_mut() {
            *v = v.div(&g);
        }
    }
    Some(out)
}

/// Rank of a family of integer rows; `None` on overflow.
fn rank_rows<R: Ring>(rows: impl Iterator<Item = Vec<(usize, R)>>) -> Option<usize> {
    let mut pivots: HashMap<usize, Vec<(usize, R)>> = HashMap::new();
    for mut r in rows {
        while let Some((lead, a)) = r.first().cloned() {
            match pivots.get(&lead) {
                None => {
                    pivots.insert(lead, r);
                    break;
                }
                Some(p) => {
                    let b = &p[0].1;
                    let g = b.gcd(&a);
                    r = combine(&b.div(&g), &r, &a.div(&g), p)?;
                }
            }
        }
    }
    Some(pivots.len())
}

fn integer_col(col: &SparseVec) -> Vec<(usize, BigInt)> {
    let lcm = col.iter().fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
    col.iter().map(|(i, q)| (*i, q.numer() * (&lcm / q.denom()))).collect()
}

/// Exact rank over the rationals.
pub fn exact_rank(m: &SparseMatrix) -> usize {
    let ints: Vec<Vec<(usize, BigInt)>> = m.cols.iter().map(integer_col).collect();
    let small: Option<Vec<Vec<(usize, i128)>>> = ints
        .iter()
        .map(|c| c.iter().map(|(i, v)| v.to_i128().map(|x| (*i, x))).collect())
        .collect();
    if let Some(rows) = small {
        if let Some(r) = rank_rows(rows.into_iter()) {
            return r;
        }
    }
    rank_rows(ints.into_iter()).expect("big integers do not overflow")
}

pub fn nullity(m: &SparseMatrix) -> usize {
    m.ncols - exact_rank(m)
}

/// Solve `Σ xⱼ·colⱼ = target` exactly; `None` when the target is not in the
/// column span. Meant for small systems.
pub fn solve(cols: &[SparseVec], target: &SparseVec) -> Option<Vec<(usize, Q)>> {
    // echelon rows keyed by leading index, each with the combination of
    // columns that produced it
    let mut pivots: HashMap<usize, (SparseVec, HashMap<usize, Q>)> = HashMap::new();
    let reduce = |mut v: SparseVec, mut comb: HashMap<usize, Q>, pivots: &HashMap<usize, (SparseVec, HashMap<usize, Q>)>| {
        while let Some((lead, a)) = v.first().cloned() {
            let Some((p, pc)) = pivots.get(&lead) else { break };
            let f = &a / &p[0].1;
            v = axpy(&v, &f, p);
            for (k, q) in pc {
                let e = comb.entry(*k).or_insert_with(Q::zero);
                *e -= &f * q;
            }
        }
        (v, comb)
    };
    for (j, c) in cols.iter().enumerate() {
        let mut sorted = c.clone();
        sorted.sort_by_key(|(i, _)| *i);
        let (v, comb) = reduce(sorted, HashMap::from([(j, Q::one())]), &pivots);
        if let Some((lead, _)) = v.first() {
            pivots.insert(*lead, (v, comb));
        }
    }
    let mut t = target.clone();
    t.sort_by_key(|(i, _)| *i);
    let (rest, comb) = reduce(t, HashMap::new(), &pivots);
    // what remains is target − Σ(−comb)·cols
    if !rest.is_empty() {
        return None;
    }
    let mut x: Vec<(usize, Q)> = comb.into_iter().filter(|(_, q)| !q.is_zero()).map(|(k, q)| (k, -q)).collect();
    x.sort_by_key(|(k, _)| *k);
    Some(x)
}

/// `x − f·y` on sorted sparse vectors.
fn axpy(x: &SparseVec, f: &Q, y: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j >= y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push(x[i].clone());
            i += 1;
        } else if i >= x.len() || y[j].0 < x[i].0 {
            out.push((y[j].0, -(f * &y[j].1)));
            j += 1;
        } else {
            let v = &x[i].1 - f * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
