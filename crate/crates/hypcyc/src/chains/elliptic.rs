//! Operators attached to torsion classes: the chain isomorphism `ν_v` between
//! the cyclic and Hochschild components, and the comparison maps `j_v`, `κ_v`
//! with the Bar complex of the centralizer.

use num_traits::One;

use super::bar::{self, BarChain};
use super::forms::{reduce, reduced_connes_b, FormChain};
use super::maps::{iota, p_v, Section};
use super::twisted::{forget_twist, mu_v, with_twist, TwistedChain, TwistedSimplex};
use super::Chain;
use crate::error::{invalid, Error, Result};
use crate::group::{Elem, GroupModel};
use crate::Q;

/// `h(μ_v, id)` on chains with twist `v`.
pub fn h_mu(model: &GroupModel, c: &TwistedChain, v: &Elem) -> Result<TwistedChain> {
    let mut err = None;
    let out = bar::homotopy_h(
        |s: &[Elem]| match mu_v(
            model,
            &Chain::basis(TwistedSimplex::new(s.to_vec(), v.clone())),
            v,
        ) {
            Ok(m) => forget_twist(&m),
            Err(e) => {
                err = Some(e);
                Chain::zero()
            }
        },
        |s: &[Elem]| Chain::basis(s.to_vec()),
        &forget_twist(c),
    );
    match err {
        Some(e) => Err(e),
        None => Ok(with_twist(&out, v)),
    }
}

/// `h̄(μ_v, id)` on reduced forms of the class: lift, apply, project, reduce.
pub fn h_mu_bar(model: &GroupModel, w: &FormChain, sigma: &dyn Section) -> Result<FormChain> {
    let v = sigma.rep().clone();
    let lifted = iota(model, &reduce(w), sigma)?;
    Ok(reduce(&p_v(model, &h_mu(model, &lifted, &v)?, &v)?))
}

/// `ν_v = id + h̄(μ_v, id)∘B` on reduced forms of a torsion class.
pub fn nu_v(model: &GroupModel, w: &FormChain, sigma: &dyn Section) -> Result<FormChain> {
    if !model.is_torsion(sigma.rep()) {
        return invalid("ν_v needs a torsion class");
    }
    let bw = reduced_connes_b(w);
    Ok(reduce(w).plus(&h_mu_bar(model, &bw, sigma)?))
}

/// `μ̄_v` on reduced forms: lift, average, project, reduce.
pub fn mu_bar(model: &GroupModel, w: &FormChain, sigma: &dyn Section) -> Result<FormChain> {
    let v = sigma.rep().clone();
    let lifted = iota(model, &reduce(w), sigma)?;
    Ok(reduce(&p_v(model, &mu_v(model, &lifted, &v)?, &v)?))
}

/// Partial sums `Σ_{k ≤ depth} (−h̄∘B)ᵏ` of the inverse of `ν_v`.
pub fn nu_v_inverse(
    model: &GroupModel,
    w: &FormChain,
    sigma: &dyn Section,
    depth: usize,
) -> Result<FormChain> {
    let mut term = reduce(w);
    let mut out = term.clone();
    for _ in 0..depth {
        term = h_mu_bar(model, &reduced_connes_b(&term), sigma)?.neg();
        if term.is_zero() {
            break;
        }
        out = out.plus(&term);
    }
    Ok(out)
}

/// `j_v[h₀,…,hₙ] = [h₀,…,hₙ; v]`.
pub fn j_v(c: &BarChain<Elem>, v: &Elem) -> TwistedChain {
    with_twist(c, v)
}

/// `κ_v[g₀,…,gₙ; v] = [g₀σ(g₀⁻¹vg₀), …, gₙσ(gₙ⁻¹vgₙ)]`, landing in `Z(v)`.
pub fn kappa_v(
    model: &GroupModel,
    c: &TwistedChain,
    sigma: &dyn Section,
) -> Result<BarChain<Elem>> {
    let v = sigma.rep();
    let mut out = Chain::zero();
    for (s, q) in c.iter() {
        if &s.twist != v {
            return invalid("κ_v applied off its twist");
        }
        let mut verts = Vec::with_capacity(s.verts.len());
        for g in &s.verts {
            let u = model.conj(&model.inv(g), v);
            let k = sigma.conjugator(&u).ok_or_else(|| {
                Error::BoundaryTruncation(format!("no conjugator for {}", model.format(&u)))
            })?;
            verts.push(model.mul(g, &k));
        }
        out.add_term(verts, q.clone());
    }
    Ok(out)
}

/// `h(j_v∘κ_v, id)`, the homotopy from `j_v∘κ_v` to the identity.
pub fn h_j_kappa(
    model: &GroupModel,
    c: &TwistedChain,
    sigma: &dyn Section,
) -> Result<TwistedChain> {
    let v = sigma.rep().clone();
    let mut err = None;
    let out = bar::homotopy_h(
        |s: &[Elem]| match kappa_v(
            model,
            &Chain::basis(TwistedSimplex::new(s.to_vec(), v.clone())),
            sigma,
        ) {
            Ok(k) => k,
            Err(e) => {
                err = Some(e);
                Chain::zero()
            }
        },
        |s: &[Elem]| Chain::term(s.to_vec(), Q::one()),
        &forget_twist(c),
    );
    match err {
        Some(e) => Err(e),
        None => Ok(with_twist(&out, &v)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::forms::{reduced_b, reduced_forms};
    use crate::chains::twisted::boundary;
    use crate::conjugacy::SigmaSection;

    #[test]
    fn nu_intertwines_on_cyclic_group() {
        let m = GroupModel::cyclic(3);
        let v = m.parse("t").unwrap();
        let sigma = SigmaSection::covering(&m, &v, 4).unwrap();
        for n in 0..3 {
            for f in reduced_forms(&m, n, 4, Some(&v)) {
                let w = Chain::basis(f);
                let lhs = reduced_b(&m, &nu_v(&m, &w, &sigma).unwrap());
                let rhs = nu_v(&m, &reduced_b(&m, &w).plus(&reduced_connes_b(&w)), &sigma).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn kappa_after_j_is_identity() {
        let m = GroupModel::modular();
        let v = m.parse("a").unwrap();
        let sigma = SigmaSection::covering(&m, &v, 6).unwrap();
        let c: BarChain<Elem> = Chain::basis(vec![Elem::identity(), v.clone()]);
        assert_eq!(kappa_v(&m, &j_v(&c, &v), &sigma).unwrap(), c);
        let t = TwistedSimplex::new(
            vec![m.parse("t").unwrap(), m.parse("ta").unwrap()],
            v.clone(),
        );
        let x = Chain::basis(t);
        let h = h_j_kappa(&m, &x, &sigma).unwrap();
        let jk = j_v(&kappa_v(&m, &x, &sigma).unwrap(), &v);
        let lhs = boundary(&h).plus(&h_j_kappa(&m, &boundary(&x), &sigma).unwrap());
        assert_eq!(lhs, x.minus(&jk));
    }
}
