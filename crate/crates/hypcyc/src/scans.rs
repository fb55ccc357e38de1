//! Named constant scans: the weight and norm bounds of the homotopy
//! operator `∇̃`, its iterates with the lifted Connes operator, and the
//! splitting of hyperbolic classes.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ball::CayleyBall;
use crate::chains::maps::p_v;
use crate::chains::splitting::{s_split, SplitData};
use crate::chains::twisted::{self, TwistedChain, TwistedSimplex};
use crate::chains::forms::{hochschild_b, reduced_forms};
use crate::chains::splitting::n_cyc;
use crate::chains::{bar, Chain, Form, FormChain};
use crate::conjugacy::{centralizer, SigmaSection};
use crate::error::{invalid, Result};
use crate::group::{Elem, GroupModel};
use crate::norms::{based_simplices, bound_scan, norm_lambda, scan_max, twisted_simplices, ClassMax, EmpiricalConstant, SampleSpec};
use crate::report::ser_q;
use crate::resolutions::ThetaPrime;
use crate::Q;

/// What to sample and with which norms.
#[derive(Clone, Debug, Serialize)]
pub struct ScanSpec {
    pub degree_cap: usize,
    pub weight_cap: u32,
    pub seed: u64,
    /// Above this many simplices a seeded subsample is used.
    pub budget: usize,
    #[serde(serialize_with = "ser_q")]
    pub lambda0: Q,
    #[serde(serialize_with = "ser_q")]
    pub lambda1: Q,
    pub rips: u32,
    /// Largest iterate `k` in the `(∇̃B̃)^k` scan.
    pub power_cap: u32,
    /// Infinite-order classes for the splitting scan.
    pub classes: Vec<String>,
}

impl ScanSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.lambda0 > self.lambda1 && self.lambda1 >= Q::one()) {
            return invalid("constant scans need λ₀ > λ₁ ≥ 1");
        }
        if num_traits::pow(self.lambda1.clone(), 3) >= self.lambda0 {
            return invalid("the splitting scan needs λ₁³ < λ₀");
        }
        Ok(())
    }

    fn sample(&self, mut all: Vec<TwistedSimplex>) -> (Vec<TwistedSimplex>, bool) {
        if all.len() <= self.budget {
            return (all, true);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        all.shuffle(&mut rng);
        all.truncate(self.budget);
        all.sort();
        (all, false)
    }

    fn spec(&self, model: &GroupModel, samples: usize, exhaustive: bool) -> SampleSpec {
        SampleSpec {
            model: model.name(),
            degree_cap: self.degree_cap,
            weight_cap: self.weight_cap,
            seed: self.seed,
            samples,
            exhaustive,
        }
    }
}

fn constant(name: &str, value: Q, sample: SampleSpec, skipped: usize) -> EmpiricalConstant {
    EmpiricalConstant { name: name.into(), value, sample, per_class: vec![], skipped }
}

/// Length of the vertex path `d(g₀,g₁)+…+d(gₙ₋₁,gₙ)`.
fn path_length(model: &GroupModel, s: &TwistedSimplex) -> u32 {
    s.verts.windows(2).map(|w| model.dist(&w[0], &w[1])).sum()
}

/// `C20`, `C21`, `C22` and `C25` on based twisted simplices.
pub fn scan_nabla(model: &GroupModel, spec: &ScanSpec) -> Result<Vec<EmpiricalConstant>> {
    spec.validate()?;
    let tp = ThetaPrime::new(model, spec.rips);
    let (samples, exhaustive) = spec.sample(based_simplices(model, spec.degree_cap, spec.weight_cap)?);
    let sample_spec = spec.spec(model, samples.len(), exhaustive);

    let (c20, skip20) = scan_max(&samples, |s| {
        let image = tp.nabla(&Chain::basis(s.clone()))?;
        let grow = twisted::max_weight(model, &image) as i64 - s.weight(model) as i64;
        Ok(Some(Q::from_integer(grow.max(0).into())))
    });
    let (c21, skip21) = scan_max(&samples, |s| {
        let image = tp.nabla(&Chain::basis(s.clone()))?;
        let len = path_length(model, s);
        if len == 0 {
            return if image.is_zero() { Ok(None) } else { invalid("nonzero image of a point") };
        }
        Ok(Some(image.l1() / Q::from_integer(len.into())))
    });
    let (c22, skip22) = bound_scan(model, &samples, &spec.lambda0, &spec.lambda1, |c| tp.nabla(c))?;

    let mut c25 = Q::one();
    let mut skip25 = 0;
    for k in 1..=spec.power_cap {
        let fact = bar::factorial(k as usize);
        let (r, skipped) = scan_max(&samples, |s| {
            let c: TwistedChain = Chain::basis(s.clone());
            let mut x = c.clone();
            for _ in 0..k {
                x = tp.nabla(&twisted::lifted_b(model, &x))?;
            }
            Ok(Some(norm_lambda(model, &x, &spec.lambda1) / (&fact * norm_lambda(model, &c, &spec.lambda0))))
        });
        // r ≤ C implies r^{1/k} ≤ max(1, C)
        if r > c25 {
            c25 = r;
        }
        skip25 += skipped;
    }
    Ok(vec![
        constant("C20", c20, sample_spec.clone(), skip20),
        constant("C21", c21, sample_spec.clone(), skip21),
        constant("C22", c22, sample_spec.clone(), skip22),
        constant("C25", c25, sample_spec, skip25),
    ])
}

/// `C26`: the splitting bound, with the maximum reported per class.
pub fn scan_splitting(model: &GroupModel, spec: &ScanSpec) -> Result<EmpiricalConstant> {
    spec.validate()?;
    if spec.classes.is_empty() {
        return invalid("the splitting scan needs at least one class");
    }
    let mut per_class = Vec::new();
    let mut total = 0;
    let mut skipped = 0;
    let mut all_exhaustive = true;
    for word in &spec.classes {
        let v = model.class_rep(&model.parse(word)?);
        if model.is_torsion(&v) {
            return invalid(format!("class of {word} has finite order"));
        }
        let sigma = SigmaSection::covering(model, &v, spec.weight_cap + 2)?;
        let ball = CayleyBall::new(model, spec.weight_cap.max(2 * model.len(&v) + 2))?;
        let cent = centralizer(model, &v, &ball);
        let data = SplitData { sigma: &sigma, sigma_prime: &cent.sigma_prime };
        let (samples, exhaustive) = spec.sample(twisted_simplices(model, &v, spec.degree_cap, spec.weight_cap)?);
        all_exhaustive &= exhaustive;
        total += samples.len();
        let (value, skip) = bound_scan(model, &samples, &spec.lambda0, &spec.lambda1, |c| {
            s_split(model, &p_v(model, c, &v)?, &data)
        })?;
        skipped += skip;
        per_class.push(ClassMax { class: model.format(&v), value });
    }
    let value = per_class.iter().map(|c| c.value.clone()).fold(Q::zero(), |a, b| if b > a { b } else { a });
    Ok(EmpiricalConstant {
        name: "C26".into(),
        value,
        sample: spec.spec(model, total, all_exhaustive),
        per_class,
        skipped,
    })
}

/// All constants of a run in a fixed order.
pub fn scan_all(model: &GroupModel, spec: &ScanSpec) -> Result<Vec<EmpiricalConstant>> {
    let mut out = scan_nabla(model, spec)?;
    if !spec.classes.is_empty() {
        out.push(scan_splitting(model, spec)?);
    }
    Ok(out)
}

/// Homotopy identity `∂∇̃ + ∇̃∂ = Id − Θ′⊗Id` on one simplex, in the reduced
/// complex; returns the defect.
pub fn nabla_defect(tp: &ThetaPrime, s: &TwistedSimplex) -> Result<TwistedChain> {
    let c: TwistedChain = Chain::basis(s.clone());
    let lhs = twisted::boundary(&tp.nabla(&c)?).plus(&tp.nabla(&twisted::boundary(&c))?);
    let theta = twisted::with_twist(&tp.apply(&Chain::basis(s.verts.clone()))?, &s.twist);
    let rhs = c.minus(&theta);
    Ok(twisted::degenerate_reduce(&lhs.minus(&rhs)))
}

/// Forms of the class of `v` (degree ≤ `degree_cap`, weight ≤ `weight_cap`)
/// on which `s_split` fails to be a section of the cyclic average of `p_v`
/// or fails to commute with the boundaries.
pub fn splitting_failures(model: &GroupModel, v: &Elem, degree_cap: usize, weight_cap: u32) -> Result<Vec<Form>> {
    let v = model.class_rep(v);
    let sigma = SigmaSection::covering(model, &v, weight_cap + 2)?;
    let ball = CayleyBall::new(model, weight_cap.max(2 * model.len(&v) + 2))?;
    let cent = centralizer(model, &v, &ball);
    let data = SplitData { sigma: &sigma, sigma_prime: &cent.sigma_prime };
    let mut bad = Vec::new();
    for n in 0..=degree_cap {
        for f in reduced_forms(model, n, weight_cap, Some(&v)) {
            let w: FormChain = Chain::basis(f.clone());
            let s = s_split(model, &w, &data)?;
            let section = n_cyc(&p_v(model, &s, &v)?) == n_cyc(&w);
            let chain_map = twisted::boundary(&s) == s_split(model, &hochschild_b(model, &w), &data)?;
            if !(section && chain_map) {
                bad.push(f);
            }
        }
    }
    Ok(bad)
}

/// Verdict for an infinite-order class: `zero` when both the splitting and
/// the homotopy identity of `∇̃` check out on its small simplices.
pub fn hyperbolic_verdict(model: &GroupModel, v: &Elem, degree_cap: usize, weight_cap: u32, rips: u32) -> Result<bool> {
    if !splitting_failures(model, v, degree_cap, weight_cap)?.is_empty() {
        return Ok(false);
    }
    let tp = ThetaPrime::new(model, rips);
    for s in twisted_simplices(model, &model.class_rep(v), degree_cap, weight_cap)? {
        if !nabla_defect(&tp, &s)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
