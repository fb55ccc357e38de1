//! Operations on Bar chains of an arbitrary vertex set. A simplex is the
//! vertex tuple itself; the empty tuple spans the augmentation degree.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::Chain;
use crate::Q;

pub type BarChain<V> = Chain<Vec<V>>;

pub fn sign(i: usize) -> Q {
    if i.is_multiple_of(2) {
        Q::one()
    } else {
        -Q::one()
    }
}

pub fn face<V: Clone>(s: &[V], i: usize) -> Vec<V> {
    let mut out = Vec::with_capacity(s.len().saturating_sub(1));
    out.extend_from_slice(&s[..i]);
    out.extend_from_slice(&s[i + 1..]);
    out
}

/// Alternating sum of faces. Degree-zero simplices map to the empty simplex,
/// so this is the augmented differential.
pub fn boundary<V: Ord + Clone>(c: &BarChain<V>) -> BarChain<V> {
    let mut out = Chain::zero();
    for (s, coef) in c.iter() {
        for i in 0..s.len() {
            out.add_term(face(s, i), coef * sign(i));
        }
    }
    out
}

/// The cone operator `[x₀,…,xₙ] ↦ [x,x₀,…,xₙ]`, a contracting homotopy of
/// the augmented complex.
pub fn cone<V: Ord + Clone>(x: &V, c: &BarChain<V>) -> BarChain<V> {
    c.map_basis(|s| {
        let mut t = Vec::with_capacity(s.len() + 1);
        t.push(x.clone());
        t.extend_from_slice(s);
        Some((t, Q::one()))
    })
}

pub fn is_degenerate<V: PartialEq>(s: &[V]) -> bool {
    s.windows(2).any(|w| w[0] == w[1])
}

/// Projection to the reduced complex: drop degenerate simplices.
pub fn degenerate_reduce<V: Ord + Clone>(c: &BarChain<V>) -> BarChain<V> {
    c.filter(|s| !is_degenerate(s))
}

pub fn support<V: Ord + Clone>(c: &BarChain<V>) -> BTreeSet<V> {
    c.keys().flat_map(|s| s.iter().cloned()).collect()
}

/// Sum of the degree-zero coefficients.
pub fn augmentation<V: Ord + Clone>(c: &BarChain<V>) -> Q {
    c.iter()
        .filter(|(s, _)| s.len() == 1)
        .fold(Q::zero(), |acc, (_, q)| acc + q)
}

pub fn degree<V>(s: &[V]) -> isize {
    s.len() as isize - 1
}

/// Bilinear concatenation `[a, b]` of two chains.
pub fn join<V: Ord + Clone>(a: &BarChain<V>, b: &BarChain<V>) -> BarChain<V> {
    let mut out = Chain::zero();
    for (s, p) in a.iter() {
        for (t, q) in b.iter() {
            let mut u = s.clone();
            u.extend_from_slice(t);
            out.add_term(u, p * q);
        }
    }
    out
}

pub fn vertex_map<V: Ord + Clone, W: Ord + Clone>(
    c: &BarChain<V>,
    mut f: impl FnMut(&V) -> W,
) -> BarChain<W> {
    c.map_basis(|s| Some((s.iter().map(&mut f).collect(), Q::one())))
}

/// The natural homotopy between two augmentation-preserving chain maps:
/// `[x₀,…,xₙ] ↦ Σᵢ (−1)ⁱ [φ(x₀,…,xᵢ), ψ(xᵢ,…,xₙ)]`, so that
/// `ψ − φ = ∂h + h∂`.
pub fn homotopy_h<V, W, F, G>(mut phi: F, mut psi: G, c: &BarChain<V>) -> BarChain<W>
where
    V: Ord + Clone,
    W: Ord + Clone,
    F: FnMut(&[V]) -> BarChain<W>,
    G: FnMut(&[V]) -> BarChain<W>,
{
    let mut out = Chain::zero();
    for (s, coef) in c.iter() {
        for i in 0..s.len() {
            let left = phi(&s[..=i]);
            if left.is_zero() {
                continue;
            }
            let right = psi(&s[i..]);
            out.add_chain(&join(&left, &right), &(coef * sign(i)));
        }
    }
    out
}

/// `h(φ, ψ)` for two vertex maps.
pub fn homotopy_vertex<V, W>(
    phi: impl Fn(&V) -> W,
    psi: impl Fn(&V) -> W,
    c: &BarChain<V>,
) -> BarChain<W>
where
    V: Ord + Clone,
    W: Ord + Clone,
{
    homotopy_h(
        |s| Chain::basis(s.iter().map(&phi).collect()),
        |s| Chain::basis(s.iter().map(&psi).collect()),
        c,
    )
}

pub fn factorial(n: usize) -> Q {
    Q::from_integer((1..=n as u64).product::<u64>().into())
}

/// Sort a tuple, returning the sign of the sorting permutation, or `None`
/// when two entries coincide (the antisymmetrization then vanishes).
pub fn sort_with_sign<V: Ord + Clone>(verts: &[V]) -> Option<(Vec<V>, bool)> {
    let mut v = verts.to_vec();
    let mut odd = false;
    // insertion sort keeps track of transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, odd))
}

pub fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = vec![(vec![], false)];
    for k in 0..n {
        let mut next = Vec::new();
        for (p, odd) in &out {
            for pos in 0..=k {
                let mut q = p.clone();
                q.insert(pos, k);
                // inserting k at pos passes over k - pos larger-index entries
                let flips = (k - pos) % 2 == 1;
                next.push((q, *odd ^ flips));
            }
        }
        out = next;
    }
    out
}

/// Oriented form of an alternating chain: one sorted representative per
/// vertex set, with the signs folded in. Tuples with a repeated vertex drop.
pub fn orient<V: Ord + Clone>(c: &BarChain<V>) -> BarChain<V> {
    let mut out = Chain::zero();
    for (s, q) in c.iter() {
        if let Some((v, odd)) = sort_with_sign(s) {
            out.add_term(v, if odd { -q.clone() } else { q.clone() });
        }
    }
    out
}

/// Inverse of [`orient`] on alternating chains: spread each sorted simplex
/// over all its orderings with weight `1/(n+1)!`.
pub fn unorient<V: Ord + Clone>(c: &BarChain<V>) -> BarChain<V> {
    let mut out = Chain::zero();
    let mut perm_cache: std::collections::BTreeMap<usize, Vec<(Vec<usize>, bool)>> = Default::default();
    for (s, q) in c.iter() {
        let n = s.len();
        let scale = q / factorial(n);
        let perms = perm_cache.entry(n).or_insert_with(|| permutations(n));
        for (p, odd) in perms.iter() {
            let verts = p.iter().map(|&i| s[i].clone()).collect();
            out.add_term(verts, if *odd { -scale.clone() } else { scale.clone() });
        }
    }
    out
}

/// Antisymmetrization of an untwisted Bar chain.
pub fn antisymmetrize<V: Ord + Clone>(c: &BarChain<V>) -> BarChain<V> {
    unorient(&orient(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: &[u32]) -> BarChain<u32> {
        Chain::basis(v.to_vec())
    }

    #[test]
    fn boundary_of_triangle() {
        let d = boundary(&b(&[0, 1, 2]));
        let expect = b(&[1, 2]).minus(&b(&[0, 2])).plus(&b(&[0, 1]));
        assert_eq!(d, expect);
        assert!(boundary(&d).is_zero());
    }

    #[test]
    fn cone_contracts() {
        let c = b(&[3, 5]).plus(&b(&[5, 5, 1]));
        let lhs = boundary(&cone(&9, &c)).plus(&cone(&9, &boundary(&c)));
        assert_eq!(lhs, c);
        let x = b(&[4]);
        assert_eq!(boundary(&cone(&7, &x)), b(&[4]).minus(&b(&[7])));
    }

    #[test]
    fn identity_homotopy_is_degenerate() {
        let h = homotopy_vertex(|x: &u32| *x, |x| *x, &b(&[0, 1]));
        assert_eq!(h, b(&[0, 0, 1]).minus(&b(&[0, 1, 1])));
        assert!(degenerate_reduce(&h).is_zero());
    }

    #[test]
    fn homotopy_identity_for_vertex_maps() {
        let phi = |x: &u32| x % 3;
        let psi = |x: &u32| x + 10;
        let c = b(&[0, 4, 5]).plus(&b(&[2, 2, 7, 1]));
        let h = |c: &BarChain<u32>| homotopy_vertex(phi, psi, c);
        let lhs = boundary(&h(&c)).plus(&h(&boundary(&c)));
        let rhs = vertex_map(&c, psi).minus(&vertex_map(&c, phi));
        assert_eq!(lhs, rhs);
    }
}
