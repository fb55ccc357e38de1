//! The splitting of `I∘p_v` for classes of infinite order: cyclic averaging,
//! inversion of `Id − T̃` on its image, the contraction `χ`, and the chain
//! map `s_split`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::bar::sign;
use super::forms::{hochschild_b, Form, FormChain};
use super::maps::{iota, Section};
use super::twisted::{boundary, lifted_t, rotate, TwistedChain, TwistedSimplex};
use super::Chain;
use crate::conjugacy::exact_stable_length;
use crate::error::{invalid, Result};
use crate::group::{Elem, GroupModel};
use crate::Q;

/// Cyclic average `N_cyc(a⁰⊗…⊗aⁿ) = (n+1)⁻¹ Σᵢ (−1)^{in} aⁱ⊗…⊗aⁿ⊗a⁰⊗…⊗aⁱ⁻¹`.
pub fn n_cyc(c: &FormChain) -> FormChain {
    let mut out = Chain::zero();
    for (f, q) in c.iter() {
        let e = f.entries();
        let n = e.len() - 1;
        let scale = q / Q::from_integer((n as i64 + 1).into());
        for i in 0..=n {
            let mut r = e[i..].to_vec();
            r.extend_from_slice(&e[..i]);
            out.add_term(Form::tensor(&r), &scale * sign(i * n));
        }
    }
    out
}

/// Average over a set of coset representatives `σ′(N(v)) ⊂ Z(v)`.
pub fn n_sigma_prime(model: &GroupModel, c: &TwistedChain, sigma_prime: &[Elem]) -> TwistedChain {
    if sigma_prime.is_empty() {
        return c.clone();
    }
    let scale = Q::new(1.into(), (sigma_prime.len() as i64).into());
    let mut out = Chain::zero();
    for h in sigma_prime {
        let moved = c.map_basis(|s| {
            let verts = s.verts.iter().map(|g| model.mul(h, g)).collect();
            Some((TwistedSimplex::new(verts, s.twist.clone()), Q::one()))
        });
        out.add_chain(&moved, &scale);
    }
    out
}

/// `τᵐ` where `τ(g₀,…,gₙ) = (v⁻¹gₙ, g₀,…,gₙ₋₁)` and `τ^{n+1} = v⁻¹·`.
fn tau_pow(model: &GroupModel, verts: &[Elem], v: &Elem, m: i64) -> Vec<Elem> {
    let k = verts.len() as i64;
    let q = m.div_euclid(k);
    let r = m.rem_euclid(k);
    let v_inv = model.inv(v);
    let mut out = verts.to_vec();
    for _ in 0..r {
        out = rotate(model, &out, &v_inv);
    }
    let shift = model.pow(v, -q);
    out.iter().map(|g| model.mul(&shift, g)).collect()
}

/// Canonical element of the `τ`-orbit of `verts` and the exponent `m` with
/// `verts = τᵐ(canonical)`.
fn orbit_anchor(model: &GroupModel, verts: &[Elem], v: &Elem, eps: u32) -> (Vec<Elem>, i64) {
    let k = verts.len() as i64;
    let v_inv = model.inv(v);
    let mut best: Option<((u32, Vec<Elem>), i64)> = None;
    let mut rotated = verts.to_vec();
    for r in 0..k {
        let window = (2 * model.len(&rotated[0]) / eps + 1) as i64;
        for q in -window..=window {
            let shift = model.pow(v, -q);
            let cand: Vec<Elem> = rotated.iter().map(|g| model.mul(&shift, g)).collect();
            let key = (model.len(&cand[0]), cand);
            if best.as_ref().is_none_or(|(b, _)| key < *b) {
                best = Some((key, k * q + r));
            }
        }
        rotated = rotate(model, &rotated, &v_inv);
    }
    let ((_, anchor), m0) = best.unwrap();
    (anchor, -m0)
}

/// Solve `(Id − T̃) y = c` for a chain `c` in the image of `Id − T̃`, with
/// every twist of infinite order. Inputs outside the image are rejected: each
/// `T̃`-orbit must carry coefficient sum zero, which is the explicit
/// membership certificate.
pub fn invert_one_minus_t(model: &GroupModel, c: &TwistedChain) -> Result<TwistedChain> {
    // orbits keyed by (twist, anchor); entries are (m, a_m)
    let mut orbits: BTreeMap<(Elem, Vec<Elem>), BTreeMap<i64, Q>> = BTreeMap::new();
    for (s, coef) in c.iter() {
        if model.is_torsion(&s.twist) {
            return invalid(format!("twist {} has finite order", model.format(&s.twist)));
        }
        let eps = exact_stable_length(model, &s.twist).max(1);
        let (anchor, m) = orbit_anchor(model, &s.verts, &s.twist, eps);
        let n = s.degree();
        // s = τᵐC = (−1)^{nm} T̃ᵐC
        let a = coef * sign((n as i64 * m).rem_euclid(2) as usize);
        *orbits
            .entry((s.twist.clone(), anchor))
            .or_default()
            .entry(m)
            .or_insert_with(Q::zero) += a;
    }
    let mut out = Chain::zero();
    for ((v, anchor), coeffs) in orbits {
        let n = anchor.len() - 1;
        let total: Q = coeffs.values().fold(Q::zero(), |acc, x| acc + x);
        if !total.is_zero() {
            return invalid("chain is not in the image of Id − T̃ (orbit sum nonzero)");
        }
        let mut running = Q::zero();
        let lo = *coeffs.keys().next().unwrap();
        let hi = *coeffs.keys().last().unwrap();
        for m in lo..hi {
            running += coeffs.get(&m).cloned().unwrap_or_else(Q::zero);
            if running.is_zero() {
                continue;
            }
            let verts = tau_pow(model, &anchor, &v, m);
            let s = sign((n as i64 * m).rem_euclid(2) as usize);
            out.add_term(TwistedSimplex::new(verts, v.clone()), &running * s);
        }
    }
    Ok(out)
}

pub fn one_minus_t(model: &GroupModel, c: &TwistedChain) -> TwistedChain {
    c.minus(&lifted_t(model, c))
}

/// `χ`: the simplex `[g₀,…,gₙ; v]`, read as `[g₀,…,gₙ₋₁; v] ⊗ gₙ`, goes to
/// `[gₙ, g₀,…,gₙ₋₁, gₙ; v]`.
pub fn chi(c: &TwistedChain) -> TwistedChain {
    c.map_basis(|s| {
        let last = s.verts.last().unwrap().clone();
        let mut verts = Vec::with_capacity(s.verts.len() + 1);
        verts.push(last);
        verts.extend_from_slice(&s.verts);
        Some((TwistedSimplex::new(verts, s.twist.clone()), Q::one()))
    })
}

/// `χ_v = (Id − T̃)∘χ∘(Id − T̃)⁻¹` on `Ker(I_v)`.
pub fn chi_v(model: &GroupModel, c: &TwistedChain) -> Result<TwistedChain> {
    Ok(one_minus_t(model, &chi(&invert_one_minus_t(model, c)?)))
}

/// Everything the splitting needs for one class.
pub struct SplitData<'a> {
    pub sigma: &'a dyn Section,
    /// Coset representatives of `v^ℤ` in `Z(v)`.
    pub sigma_prime: &'a [Elem],
}

/// `s′ = N_σ′ ∘ ι_{v,σ} ∘ N_cyc`.
pub fn s_prime(model: &GroupModel, w: &FormChain, data: &SplitData) -> Result<TwistedChain> {
    Ok(n_sigma_prime(
        model,
        &iota(model, &n_cyc(w), data.sigma)?,
        data.sigma_prime,
    ))
}

/// `s = s′ − χ_v(∂s′ − s′b)`, a chain map splitting `I∘p_v`.
pub fn s_split(model: &GroupModel, w: &FormChain, data: &SplitData) -> Result<TwistedChain> {
    if model.is_torsion(data.sigma.rep()) {
        return invalid("the splitting needs a class of infinite order");
    }
    let sp = s_prime(model, w, data)?;
    let defect = boundary(&sp).minus(&s_prime(model, &hochschild_b(model, w), data)?);
    if defect.is_zero() {
        return Ok(sp);
    }
    Ok(sp.minus(&chi_v(model, &defect)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::maps::p_map;
    use crate::conjugacy::SigmaSection;

    fn simplex(m: &GroupModel, vs: &[&str], v: &str) -> TwistedSimplex {
        TwistedSimplex::new(
            vs.iter().map(|s| m.parse(s).unwrap()).collect(),
            m.parse(v).unwrap(),
        )
    }

    #[test]
    fn cyclic_average_degree_one() {
        let m = GroupModel::free_group(2);
        let f = Form::tensor(&[m.parse("a").unwrap(), m.parse("b").unwrap()]);
        let g = Form::tensor(&[m.parse("b").unwrap(), m.parse("a").unwrap()]);
        let half = Q::new(1.into(), 2.into());
        let expect = Chain::term(f.clone(), half.clone()).minus(&Chain::term(g, half));
        assert_eq!(n_cyc(&Chain::basis(f)), expect);
    }

    #[test]
    fn one_minus_t_degree_one() {
        let m = GroupModel::free_group(2);
        let s = simplex(&m, &["a", "ab"], "b");
        let out = one_minus_t(&m, &Chain::basis(s.clone()));
        // [g₀,g₁;v] + [v⁻¹g₁, g₀; v]
        let expect = Chain::basis(s).plus(&Chain::basis(simplex(&m, &["Bab", "a"], "b")));
        assert_eq!(out, expect);
    }

    #[test]
    fn inversion_roundtrip() {
        let m = GroupModel::free_group(2);
        let y = Chain::basis(simplex(&m, &["a", "ab", "e"], "b")).plus(&Chain::term(
            simplex(&m, &["bb", "A"], "ab"),
            Q::from_integer(3.into()),
        ));
        let c = one_minus_t(&m, &y);
        let back = invert_one_minus_t(&m, &c).unwrap();
        assert_eq!(back, y);
        assert!(invert_one_minus_t(&m, &Chain::basis(simplex(&m, &["a"], "b"))).is_err());
    }

    #[test]
    fn splitting_on_small_forms() {
        let m = GroupModel::free_group(2);
        let v = m.parse("b").unwrap();
        let sigma = SigmaSection::covering(&m, &v, 4).unwrap();
        let data = SplitData {
            sigma: &sigma,
            sigma_prime: &[],
        };
        for form in crate::chains::forms::reduced_forms(&m, 1, 3, Some(&v)) {
            let w = Chain::basis(form);
            let s = s_split(&m, &w, &data).unwrap();
            assert_eq!(n_cyc(&p_map(&m, &s)), n_cyc(&w));
            let lhs = boundary(&s);
            let rhs = s_split(&m, &hochschild_b(&m, &w), &data).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
