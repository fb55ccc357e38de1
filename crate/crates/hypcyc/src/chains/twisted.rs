//! Twisted Bar simplices `[g₀,…,gₙ; v]` and the operators of the
//! adjoint-twisted Bar complex.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::bar::{self, sign, BarChain};
use super::Chain;
use crate::error::{invalid, Result};
use crate::group::{Elem, GroupModel};
use crate::Q;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistedSimplex {
    pub verts: Vec<Elem>,
    pub twist: Elem,
}

pub type TwistedChain = Chain<TwistedSimplex>;

impl TwistedSimplex {
    pub fn new(verts: Vec<Elem>, twist: Elem) -> Self {
        TwistedSimplex { verts, twist }
    }

    pub fn degree(&self) -> usize {
        self.verts.len() - 1
    }

    pub fn is_degenerate(&self) -> bool {
        bar::is_degenerate(&self.verts)
    }

    /// Cyclic sum of consecutive distances, closing through `v·g₀`.
    pub fn weight(&self, model: &GroupModel) -> u32 {
        let n = self.verts.len();
        let inner: u32 = self
            .verts
            .windows(2)
            .map(|w| model.dist(&w[0], &w[1]))
            .sum();
        let close = model.dist(&self.verts[n - 1], &model.mul(&self.twist, &self.verts[0]));
        inner + close
    }

    pub fn display(&self, model: &GroupModel) -> String {
        let vs: Vec<String> = self.verts.iter().map(|g| model.format(g)).collect();
        format!("[{}; {}]", vs.join(","), model.format(&self.twist))
    }
}

/// Weight of the simplex in `C_*(Z(v))`: the twisted weight with trivial twist.
pub fn bar_weight(model: &GroupModel, verts: &[Elem]) -> u32 {
    TwistedSimplex::new(verts.to_vec(), Elem::identity()).weight(model)
}

pub fn max_weight(model: &GroupModel, c: &TwistedChain) -> u32 {
    c.keys().map(|s| s.weight(model)).max().unwrap_or(0)
}

pub fn with_twist(c: &BarChain<Elem>, v: &Elem) -> TwistedChain {
    c.map_basis(|s| {
        if s.is_empty() {
            None
        } else {
            Some((TwistedSimplex::new(s.clone(), v.clone()), Q::one()))
        }
    })
}

pub fn split_twists(c: &TwistedChain) -> BTreeMap<Elem, BarChain<Elem>> {
    let mut out: BTreeMap<Elem, BarChain<Elem>> = BTreeMap::new();
    for (s, q) in c.iter() {
        out.entry(s.twist.clone())
            .or_default()
            .add_term(s.verts.clone(), q.clone());
    }
    out
}

pub fn forget_twist(c: &TwistedChain) -> BarChain<Elem> {
    c.map_basis(|s| Some((s.verts.clone(), Q::one())))
}

/// Apply a twist-preserving Bar operator separately on each twist.
pub fn per_twist(
    c: &TwistedChain,
    mut f: impl FnMut(&BarChain<Elem>, &Elem) -> BarChain<Elem>,
) -> TwistedChain {
    let mut out = Chain::zero();
    for (v, part) in split_twists(c) {
        out.add_chain(&with_twist(&f(&part, &v), &v), &Q::one());
    }
    out
}

/// The (non-augmented) face differential.
pub fn boundary(c: &TwistedChain) -> TwistedChain {
    let mut out = Chain::zero();
    for (s, q) in c.iter() {
        if s.verts.len() < 2 {
            continue;
        }
        for i in 0..s.verts.len() {
            out.add_term(
                TwistedSimplex::new(bar::face(&s.verts, i), s.twist.clone()),
                q * sign(i),
            );
        }
    }
    out
}

pub fn degenerate_reduce(c: &TwistedChain) -> TwistedChain {
    c.filter(|s| !s.is_degenerate())
}

/// Left translation `g·[g₀,…,gₙ; v] = [gg₀,…,ggₙ; gvg⁻¹]`.
pub fn act(model: &GroupModel, g: &Elem, c: &TwistedChain) -> TwistedChain {
    c.map_basis(|s| {
        let verts = s.verts.iter().map(|x| model.mul(g, x)).collect();
        Some((
            TwistedSimplex::new(verts, model.conj(g, &s.twist)),
            Q::one(),
        ))
    })
}

/// One step of the cyclic shift without sign: `(g₀,…,gₙ) ↦ (v⁻¹gₙ, g₀,…,gₙ₋₁)`.
pub fn rotate(model: &GroupModel, verts: &[Elem], v_inv: &Elem) -> Vec<Elem> {
    let n = verts.len();
    let mut out = Vec::with_capacity(n);
    out.push(model.mul(v_inv, &verts[n - 1]));
    out.extend_from_slice(&verts[..n - 1]);
    out
}

/// The inverse shift `(h₀,…,hₙ) ↦ (h₁,…,hₙ, v h₀)`.
pub fn rotate_back(model: &GroupModel, verts: &[Elem], v: &Elem) -> Vec<Elem> {
    let mut out = verts[1..].to_vec();
    out.push(model.mul(v, &verts[0]));
    out
}

/// Lifted cyclic operator `T̃[g₀,…,gₙ; v] = (−1)ⁿ [v⁻¹gₙ, g₀,…,gₙ₋₁; v]`.
pub fn lifted_t(model: &GroupModel, c: &TwistedChain) -> TwistedChain {
    c.map_basis(|s| {
        let v_inv = model.inv(&s.twist);
        Some((
            TwistedSimplex::new(rotate(model, &s.verts, &v_inv), s.twist.clone()),
            sign(s.degree()),
        ))
    })
}

/// Lifted Connes operator
/// `B̃[g₀,…,gₙ; v] = Σᵢ (−1)^{in} [v⁻¹gᵢ,…,v⁻¹gₙ, g₀,…,gᵢ; v]`.
pub fn lifted_b(model: &GroupModel, c: &TwistedChain) -> TwistedChain {
    let mut out = Chain::zero();
    for (s, q) in c.iter() {
        let n = s.degree();
        let v_inv = model.inv(&s.twist);
        for i in 0..=n {
            let mut verts: Vec<Elem> = s.verts[i..].iter().map(|g| model.mul(&v_inv, g)).collect();
            verts.extend_from_slice(&s.verts[..=i]);
            out.add_term(TwistedSimplex::new(verts, s.twist.clone()), q * sign(i * n));
        }
    }
    out
}

/// Antisymmetrization `π_as`: the signed average over all vertex permutations.
pub fn pi_as(c: &TwistedChain) -> TwistedChain {
    let mut sorted: BTreeMap<TwistedSimplex, Q> = BTreeMap::new();
    for (s, q) in c.iter() {
        if let Some((v, odd)) = bar::sort_with_sign(&s.verts) {
            let e = sorted
                .entry(TwistedSimplex::new(v, s.twist.clone()))
                .or_insert_with(Q::zero);
            if odd {
                *e -= q;
            } else {
                *e += q;
            }
        }
    }
    let mut out = Chain::zero();
    let mut perm_cache: BTreeMap<usize, Vec<(Vec<usize>, bool)>> = BTreeMap::new();
    for (s, q) in sorted {
        if q.is_zero() {
            continue;
        }
        let n = s.verts.len();
        let scale = &q / bar::factorial(n);
        let perms = perm_cache.entry(n).or_insert_with(|| bar::permutations(n));
        for (p, odd) in perms.iter() {
            let verts = p.iter().map(|&i| s.verts[i].clone()).collect();
            let coef = if *odd { -scale.clone() } else { scale.clone() };
            out.add_term(TwistedSimplex::new(verts, s.twist.clone()), coef);
        }
    }
    out
}

/// The cyclic subgroup generated by a torsion element, identity first.
pub fn cyclic_subgroup(model: &GroupModel, v: &Elem) -> Result<Vec<Elem>> {
    let order = match model.torsion_order(v) {
        Some(n) => n,
        None => return invalid(format!("{} has infinite order", model.format(v))),
    };
    Ok((0..order as i64).map(|k| model.pow(v, k)).collect())
}

/// Averaging `π_U` over the finite cyclic group `U = ⟨v⟩` in each vertex.
pub fn pi_u(model: &GroupModel, c: &TwistedChain, v: &Elem) -> Result<TwistedChain> {
    let u = cyclic_subgroup(model, v)?;
    let mut out = Chain::zero();
    for (s, q) in c.iter() {
        if &s.twist != v {
            return invalid("averaging operator applied off its twist");
        }
        let n = s.verts.len();
        let scale = q / Q::from_integer((u.len() as u64).pow(n as u32).into());
        let mut idx = vec![0usize; n];
        loop {
            let verts = (0..n).map(|i| model.mul(&u[idx[i]], &s.verts[i])).collect();
            out.add_term(TwistedSimplex::new(verts, v.clone()), scale.clone());
            let mut k = 0;
            while k < n {
                idx[k] += 1;
                if idx[k] < u.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
    }
    Ok(out)
}

/// `μ_v = π_as ∘ π_U`.
pub fn mu_v(model: &GroupModel, c: &TwistedChain, v: &Elem) -> Result<TwistedChain> {
    Ok(pi_as(&pi_u(model, c, v)?))
}

impl fmt::Display for TwistedSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}
