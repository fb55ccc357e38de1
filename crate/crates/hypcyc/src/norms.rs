//! Weights, weighted ℓ¹ norms, the `(ρ, m)` seminorms on forms, and scans
//! that measure operator bounds as exact empirical constants.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::ball::CayleyBall;
use crate::chains::bar;
use crate::chains::twisted::{self, TwistedChain, TwistedSimplex};
use crate::chains::{Chain, FormChain, Head};
use crate::error::{invalid, Result};
use crate::group::{Elem, GroupModel};
use crate::report::ser_q;
use crate::Q;

pub fn qpow(base: &Q, exp: u32) -> Q {
    num_traits::pow(base.clone(), exp as usize)
}

/// Parameters of the seminorm family on forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormParams {
    #[serde(serialize_with = "ser_q")]
    pub lambda: Q,
    #[serde(serialize_with = "ser_q")]
    pub rho: Q,
    pub m: u32,
}

impl NormParams {
    pub fn new(lambda: Q, rho: Q, m: u32) -> Result<Self> {
        if lambda < Q::one() || rho < Q::one() {
            return invalid("λ and ρ must be at least 1");
        }
        Ok(NormParams { lambda, rho, m })
    }

    /// `c(n) = ⌊n/2⌋`.
    pub fn c(n: usize) -> usize {
        n / 2
    }

    /// The factor `(2+2c)^m ρ^{−c} / c!` attached to degree `n`.
    pub fn degree_factor(&self, n: usize) -> Q {
        let c = Self::c(n);
        let grow = qpow(&Q::from_integer((2 + 2 * c as i64).into()), self.m);
        grow / qpow(&self.rho, c as u32) / bar::factorial(c)
    }
}

/// `Σ |a_α| λ^{|α|}`.
pub fn norm_lambda(model: &GroupModel, c: &TwistedChain, lambda: &Q) -> Q {
    c.iter().fold(Q::zero(), |acc, (s, q)| acc + q.abs() * qpow(lambda, s.weight(model)))
}

pub fn l1(c: &TwistedChain) -> Q {
    c.l1()
}

/// The `(ρ, m)` seminorm with the `ℓ¹_λ` element norm on each tensor factor.
pub fn seminorm_rho_m(model: &GroupModel, w: &FormChain, params: &NormParams) -> Q {
    let mut out = Q::zero();
    for (f, q) in w.iter() {
        let head = match &f.head {
            Head::Unit => 0,
            Head::G(g) => model.len(g),
        };
        let letters: u32 = head + f.tail.iter().map(|g| model.len(g)).sum::<u32>();
        out += q.abs() * params.degree_factor(f.degree()) * qpow(&params.lambda, letters);
    }
    out
}

/// Where a constant was measured.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleSpec {
    pub model: String,
    pub degree_cap: usize,
    pub weight_cap: u32,
    pub seed: u64,
    pub samples: usize,
    pub exhaustive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassMax {
    pub class: String,
    #[serde(serialize_with = "ser_q")]
    pub value: Q,
}

/// An exact maximum over a declared sample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmpiricalConstant {
    pub name: String,
    #[serde(serialize_with = "ser_q")]
    pub value: Q,
    pub sample: SampleSpec,
    pub per_class: Vec<ClassMax>,
    pub skipped: usize,
}

impl EmpiricalConstant {
    pub fn csv_header() -> &'static str {
        "name,value,model,degree_cap,weight_cap,seed,samples,exhaustive,skipped"
    }

    pub fn csv_row(&self) -> String {
        let s = &self.sample;
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.name, self.value, s.model, s.degree_cap, s.weight_cap, s.seed, s.samples, s.exhaustive, self.skipped
        )
    }
}

pub fn constants_csv(cs: &[EmpiricalConstant]) -> String {
    let mut out = String::from(EmpiricalConstant::csv_header());
    out.push('\n');
    for c in cs {
        out.push_str(&c.csv_row());
        out.push('\n');
    }
    out
}

/// Every nondegenerate `[e, g₁, …, gₙ; v]` with `n ≤ degree_cap` and weight
/// at most `weight_cap`, in a fixed order.
pub fn based_simplices(model: &GroupModel, degree_cap: usize, weight_cap: u32) -> Result<Vec<TwistedSimplex>> {
    let ball = CayleyBall::new(model, weight_cap)?;
    let steps: Vec<(Elem, u32)> = ball.elements().iter().map(|g| (g.clone(), model.len(g))).collect();
    let mut out = Vec::new();
    let mut verts = vec![Elem::identity()];
    fn rec(
        model: &GroupModel,
        steps: &[(Elem, u32)],
        degree_cap: usize,
        budget: u32,
        verts: &mut Vec<Elem>,
        out: &mut Vec<TwistedSimplex>,
    ) {
        let last = verts.last().unwrap().clone();
        // close the cycle with a twist
        for (u, l) in steps {
            if *l <= budget {
                out.push(TwistedSimplex::new(verts.clone(), model.mul(&last, u)));
            }
        }
        if verts.len() > degree_cap {
            return;
        }
        for (u, l) in steps {
            if *l == 0 || *l > budget {
                continue;
            }
            verts.push(model.mul(&last, u));
            rec(model, steps, degree_cap, budget - l, verts, out);
            verts.pop();
        }
    }
    rec(model, &steps, degree_cap, weight_cap, &mut verts, &mut out);
    Ok(out)
}

/// Nondegenerate simplices with a fixed twist, first vertex within distance
/// `⌊W/2⌋` of `e`, and weight at most `W`.
pub fn twisted_simplices(model: &GroupModel, v: &Elem, degree_cap: usize, weight_cap: u32) -> Result<Vec<TwistedSimplex>> {
    let ball = CayleyBall::new(model, weight_cap)?;
    let steps: Vec<(Elem, u32)> = ball.elements().iter().map(|g| (g.clone(), model.len(g))).collect();
    let mut out = Vec::new();
    for (g0, l0) in &steps {
        if 2 * l0 > weight_cap {
            continue;
        }
        let mut stack: Vec<(Vec<Elem>, u32)> = vec![(vec![g0.clone()], 0)];
        while let Some((verts, used)) = stack.pop() {
            let s = TwistedSimplex::new(verts.clone(), v.clone());
            if s.weight(model) <= weight_cap {
                out.push(s);
            }
            if verts.len() > degree_cap {
                continue;
            }
            let last = verts.last().unwrap();
            for (u, l) in &steps {
                if *l == 0 || used + l > weight_cap {
                    continue;
                }
                let mut next = verts.clone();
                next.push(model.mul(last, u));
                stack.push((next, used + l));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Maximum of a per-sample ratio, merged deterministically across threads.
/// Samples where the operator does not apply are counted and skipped.
pub fn scan_max<F>(samples: &[TwistedSimplex], f: F) -> (Q, usize)
where
    F: Fn(&TwistedSimplex) -> Result<Option<Q>> + Sync,
{
    let results: Vec<Result<Option<Q>>> = samples.par_iter().map(&f).collect();
    let mut best = Q::zero();
    let mut skipped = 0;
    for r in results {
        match r {
            Ok(Some(q)) if q > best => best = q,
            Ok(_) => {}
            Err(_) => skipped += 1,
        }
    }
    (best, skipped)
}

/// `max ‖op(α)‖_{λ₁} / ‖α‖_{λ₀}` over the samples.
pub fn bound_scan<F>(model: &GroupModel, samples: &[TwistedSimplex], lambda0: &Q, lambda1: &Q, op: F) -> Result<(Q, usize)>
where
    F: Fn(&TwistedChain) -> Result<TwistedChain> + Sync,
{
    if lambda0 <= lambda1 || lambda1 < &Q::one() {
        return invalid("norm scans need λ₀ > λ₁ ≥ 1");
    }
    Ok(scan_max(samples, |s| {
        let c: TwistedChain = Chain::basis(s.clone());
        let image = op(&c)?;
        Ok(Some(norm_lambda(model, &image, lambda1) / norm_lambda(model, &c, lambda0)))
    }))
}

/// Weight non-increase under `∂` and invariance under `T̃` on one simplex.
pub fn weight_audit(model: &GroupModel, s: &TwistedSimplex) -> bool {
    let c: TwistedChain = Chain::basis(s.clone());
    let w = s.weight(model);
    twisted::max_weight(model, &twisted::boundary(&c)) <= w
        && twisted::lifted_t(model, &c).keys().all(|t| t.weight(model) == w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::Form;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn lambda_norm_of_an_edge() {
        let m = GroupModel::free_group(2);
        let s = TwistedSimplex::new(vec![Elem::identity(), m.parse("a").unwrap()], Elem::identity());
        let c: TwistedChain = Chain::basis(s);
        assert_eq!(norm_lambda(&m, &c, &q(3, 1)), q(9, 1));
        assert_eq!(norm_lambda(&m, &twisted::lifted_t(&m, &c), &q(3, 1)), q(9, 1));
    }

    #[test]
    fn seminorm_degree_two() {
        let m = GroupModel::free_group(2);
        let p = NormParams::new(q(2, 1), q(5, 1), 0).unwrap();
        let f = Form::tensor(&[m.parse("a").unwrap(), m.parse("b").unwrap(), m.parse("A").unwrap()]);
        let w: FormChain = Chain::basis(f);
        assert_eq!(seminorm_rho_m(&m, &w, &p), q(8, 5));
        let p1 = NormParams::new(q(2, 1), q(5, 1), 1).unwrap();
        assert_eq!(seminorm_rho_m(&m, &w, &p1) / seminorm_rho_m(&m, &w, &p), q(4, 1));
    }

    #[test]
    fn identity_scan_is_one() {
        let m = GroupModel::cyclic(3);
        let samples = based_simplices(&m, 1, 2).unwrap();
        let (c, skipped) = bound_scan(&m, &samples, &q(2, 1), &(q(2, 1) - q(1, 2)), |c| Ok(c.clone())).unwrap();
        // the weight-zero simplex [e; e] attains the maximum
        assert_eq!(c, Q::one());
        assert_eq!(skipped, 0);
        let (c, _) = bound_scan(&m, &samples, &q(2, 1), &q(1, 1), |c| Ok(c.clone())).unwrap();
        assert_eq!(c, Q::one());
    }

    #[test]
    fn based_simplices_respect_caps() {
        let m = GroupModel::free_group(2);
        let s = based_simplices(&m, 1, 2).unwrap();
        assert!(s.iter().all(|t| t.weight(&m) <= 2 && !t.is_degenerate()));
        // [e; v] with ℓ(v) ≤ 2, and [e, x; v] with ℓ(x) + d(x, v) ≤ 2
        assert_eq!(s.iter().filter(|t| t.degree() == 0).count(), 17);
        assert_eq!(s.iter().filter(|t| t.degree() == 1).count(), 4 * 5 + 12);
        assert!(s.iter().all(|t| weight_audit(&m, t)));
    }
}
