//! The comparison maps between twisted Bar chains and differential forms.

use num_traits::One;

use super::forms::{Form, FormChain};
use super::twisted::{TwistedChain, TwistedSimplex};
use super::Chain;
use crate::error::{invalid, Error, Result};
use crate::group::{Elem, GroupModel};
use crate::Q;

/// A choice of conjugator `σ(u)` with `σ(u)·v·σ(u)⁻¹ = u` for class members `u`.
pub trait Section: Sync {
    fn rep(&self) -> &Elem;
    fn conjugator(&self, u: &Elem) -> Option<Elem>;
}

/// `p[g₀,…,gₙ; v] = (gₙ⁻¹vg₀) ⊗ g₀⁻¹g₁ ⊗ … ⊗ gₙ₋₁⁻¹gₙ`.
pub fn p_map(model: &GroupModel, c: &TwistedChain) -> FormChain {
    c.map_basis(|s| Some((p_simplex(model, s), Q::one())))
}

pub fn p_simplex(model: &GroupModel, s: &TwistedSimplex) -> Form {
    let n = s.verts.len();
    let head = model.mul3(&model.inv(&s.verts[n - 1]), &s.twist, &s.verts[0]);
    let tail = s
        .verts
        .windows(2)
        .map(|w| model.between(&w[0], &w[1]))
        .collect();
    Form::new(head, tail)
}

/// `q(h₀dh₁…dhₙ) = [h₀, h₀h₁, …, h₀⋯hₙ; h₀⋯hₙ]`, reading a formal-unit head as `e`.
pub fn q_map(model: &GroupModel, c: &FormChain) -> TwistedChain {
    c.map_basis(|f| Some((q_form(model, f), Q::one())))
}

fn q_form(model: &GroupModel, f: &Form) -> TwistedSimplex {
    let entries = f.entries();
    let mut verts = Vec::with_capacity(entries.len());
    let mut acc = Elem::identity();
    for g in &entries {
        acc = model.mul(&acc, g);
        verts.push(acc.clone());
    }
    TwistedSimplex::new(verts, acc)
}

/// `p` restricted to chains with twist `v`.
pub fn p_v(model: &GroupModel, c: &TwistedChain, v: &Elem) -> Result<FormChain> {
    if let Some(s) = c.keys().find(|s| &s.twist != v) {
        return invalid(format!(
            "twist {} differs from {}",
            model.format(&s.twist),
            model.format(v)
        ));
    }
    Ok(p_map(model, c))
}

/// `ι_{v,σ}(g₀⊗…⊗gₙ) = σ(g₀⋯gₙ)⁻¹ · [g₀, g₀g₁, …, g₀⋯gₙ; g₀⋯gₙ]`, a section of `p_v`.
pub fn iota(model: &GroupModel, c: &FormChain, sigma: &dyn Section) -> Result<TwistedChain> {
    let mut out = Chain::zero();
    for (f, q) in c.iter() {
        let s = q_form(model, f);
        let g = sigma.conjugator(&s.twist).ok_or_else(|| {
            Error::BoundaryTruncation(format!(
                "no conjugator recorded for {}",
                model.format(&s.twist)
            ))
        })?;
        let g_inv = model.inv(&g);
        let verts = s.verts.iter().map(|x| model.mul(&g_inv, x)).collect();
        let twist = model.conj(&g_inv, &s.twist);
        debug_assert_eq!(&twist, sigma.rep());
        out.add_term(TwistedSimplex::new(verts, twist), q.clone());
    }
    Ok(out)
}
