use std::collections::btree_map::{self, BTreeMap};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::Q;

/// A finitely supported rational combination of basis elements. Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Chain<K: Ord> {
    terms: BTreeMap<K, Q>,
}

impl<K: Ord> Default for Chain<K> {
    fn default() -> Self {
        Chain {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Chain<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(k: K) -> Self {
        let mut c = Self::zero();
        c.add_term(k, Q::one());
        c
    }

    pub fn term(k: K, coef: Q) -> Self {
        let mut c = Self::zero();
        c.add_term(k, coef);
        c
    }

    pub fn add_term(&mut self, k: K, coef: Q) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            btree_map::Entry::Vacant(e) => {
                e.insert(coef);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coef;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_int(&mut self, k: K, coef: i64) {
        self.add_term(k, Q::from_integer(coef.into()));
    }

    pub fn add_chain(&mut self, other: &Chain<K>, scale: &Q) {
        if scale.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * scale);
        }
    }

    pub fn plus(&self, other: &Chain<K>) -> Chain<K> {
        let mut out = self.clone();
        out.add_chain(other, &Q::one());
        out
    }

    pub fn minus(&self, other: &Chain<K>) -> Chain<K> {
        let mut out = self.clone();
        out.add_chain(other, &-Q::one());
        out
    }

    pub fn scaled(&self, s: &Q) -> Chain<K> {
        let mut out = Chain::zero();
        out.add_chain(self, s);
        out
    }

    pub fn neg(&self) -> Chain<K> {
        self.scaled(&-Q::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Q> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn coef(&self, k: &K) -> Q {
        self.terms.get(k).cloned().unwrap_or_else(Q::zero)
    }

    /// ℓ¹ norm: sum of absolute coefficients.
    pub fn l1(&self) -> Q {
        self.terms.values().fold(Q::zero(), |acc, c| acc + c.abs())
    }

    /// Apply a linear map given on basis elements.
    pub fn map_linear<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Chain<L>) -> Chain<L> {
        let mut out = Chain::zero();
        for (k, c) in &self.terms {
            out.add_chain(&f(k), c);
        }
        out
    }

    /// Apply a map sending each basis element to at most one signed basis element.
    pub fn map_basis<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Option<(L, Q)>) -> Chain<L> {
        let mut out = Chain::zero();
        for (k, c) in &self.terms {
            if let Some((l, s)) = f(k) {
                out.add_term(l, c * s);
            }
        }
        out
    }

    pub fn filter(&self, mut keep: impl FnMut(&K) -> bool) -> Chain<K> {
        Chain {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }
}

impl<K: Ord + Clone> FromIterator<(K, Q)> for Chain<K> {
    fn from_iter<I: IntoIterator<Item = (K, Q)>>(iter: I) -> Self {
        let mut c = Chain::zero();
        for (k, q) in iter {
            c.add_term(k, q);
        }
        c
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for Chain<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c}){k:?}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_removes_terms() {
        let mut c: Chain<u32> = Chain::basis(3);
        c.add_int(3, -1);
        assert!(c.is_zero());
    }

    #[test]
    fn l1_triangle() {
        let a: Chain<u32> = [
            (1, Q::from_integer(2.into())),
            (2, Q::from_integer((-1).into())),
        ]
        .into_iter()
        .collect();
        let b: Chain<u32> = [(2, Q::from_integer(3.into()))].into_iter().collect();
        assert!(a.plus(&b).l1() <= a.l1() + b.l1());
    }
}
