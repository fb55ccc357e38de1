//! Named pass/fail checks grouped into suites. Each check runs an exact
//! identity over an enumerated or seeded sample and records how many items
//! failed, so a report can list exactly what broke.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ball::CayleyBall;
use crate::chains::bar::{self, BarChain};
use crate::chains::elliptic::nu_v;
use crate::chains::forms::{reduced_b, reduced_connes_b, reduced_forms};
use crate::chains::twisted::TwistedSimplex;
use crate::chains::{Chain, FormChain};
use crate::conjugacy::SigmaSection;
use crate::error::Result;
use crate::geometry::{delta_estimate, in_hull};
use crate::group::{Elem, GroupModel};
use crate::homology::{burghelea_check, group_homology_rips, torsion_classes, TruncationSpec};
use crate::norms::{based_simplices, weight_audit};
use crate::resolutions::{bicombing_theta1, equivariance_defect, ThetaPrime};
use crate::scans::{nabla_defect, scan_all, splitting_failures, ScanSpec};
use crate::tree::{distortion, distortion_exponent, subset_metric, ApproxTree};
use crate::Q;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    /// Up to a handful of failing items, rendered.
    pub failures: Vec<String>,
    pub detail: String,
}

impl Check {
    fn new(name: &str) -> Self {
        Check { name: name.into(), passed: true, checked: 0, failures: vec![], detail: String::new() }
    }

    fn record(&mut self, ok: bool, item: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.passed = false;
            if self.failures.len() < 8 {
                self.failures.push(item());
            }
        }
    }

    fn fail(&mut self, why: String) {
        self.passed = false;
        self.failures.push(why);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failing(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }
}

/// `b² = 0`, `B² = 0` and `bB + Bb = 0` on every reduced form of degree at
/// most `degree_cap` and letter length at most `weight_cap`.
pub fn operator_identities(model: &GroupModel, degree_cap: usize, weight_cap: u32) -> Check {
    let mut check = Check::new("operator identities");
    for n in 0..=degree_cap {
        for f in reduced_forms(model, n, weight_cap, None) {
            let w: FormChain = Chain::basis(f.clone());
            let b = reduced_b(model, &w);
            let cb = reduced_connes_b(&w);
            let ok = reduced_b(model, &b).is_zero()
                && reduced_connes_b(&cb).is_zero()
                && reduced_connes_b(&b).plus(&reduced_b(model, &cb)).is_zero();
            check.record(ok, || f.display(model));
        }
    }
    check
}

/// Seeded simplices `[g₀,…,gₙ]` with vertices in the ball of `radius`,
/// degrees cycling through `0..=degree_cap`.
pub fn seeded_simplices(model: &GroupModel, count: usize, degree_cap: usize, radius: u32, seed: u64) -> Result<Vec<Vec<Elem>>> {
    let ball = CayleyBall::new(model, radius)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|i| {
            let n = i % (degree_cap + 1);
            (0..=n).map(|_| ball.elements().choose(&mut rng).expect("nonempty ball").clone()).collect()
        })
        .collect())
}

/// The cone contraction `∂s_x + s_x∂ = Id` of the augmented Bar complex.
pub fn cone_identity(model: &GroupModel, samples: &[Vec<Elem>], seed: u64) -> Result<Check> {
    let mut check = Check::new("cone contraction");
    let ball = CayleyBall::new(model, 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    for s in samples {
        let x = ball.elements().choose(&mut rng).expect("nonempty ball");
        let c: BarChain<Elem> = Chain::basis(s.clone());
        let lhs = bar::boundary(&bar::cone(x, &c)).plus(&bar::cone(x, &bar::boundary(&c)));
        check.record(lhs == c, || format!("{s:?}"));
    }
    Ok(check)
}

/// `Id − Θ′⊗Id = ∂∇̃ + ∇̃∂` on the samples, each with a seeded twist.
pub fn homotopy_identity(tp: &ThetaPrime, samples: &[Vec<Elem>], seed: u64) -> Result<Check> {
    let model = tp.model();
    let mut check = Check::new("homotopy identity");
    let ball = CayleyBall::new(model, 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7);
    for s in samples {
        let v = ball.elements().choose(&mut rng).expect("nonempty ball").clone();
        let t = TwistedSimplex::new(s.clone(), v);
        let ok = nabla_defect(tp, &t)?.is_zero();
        check.record(ok, || t.display(model));
    }
    Ok(check)
}

/// The bicombing conditions: boundary compatibility, support in the
/// geodesic hull (`λ = 0`), `ℓ¹ ≤ d + 1`, Rips-1 image and equivariance.
pub fn bicombing_checks(model: &GroupModel, radius: u32, count: usize, seed: u64) -> Result<Check> {
    let mut check = Check::new("bicombing");
    let ball = CayleyBall::new(model, radius)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let pick = |rng: &mut ChaCha8Rng| ball.elements().choose(rng).expect("nonempty ball").clone();
        let (g0, g1, h) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let c: BarChain<Elem> = Chain::basis(vec![g0.clone(), g1.clone()]);
        let image = bicombing_theta1(model, &c);
        let mut expect: BarChain<Elem> = Chain::basis(vec![g1.clone()]);
        expect.add_int(vec![g0.clone()], -1);
        let d = model.dist(&g0, &g1);
        let moved = bicombing_theta1(model, &Chain::basis(vec![model.mul(&h, &g0), model.mul(&h, &g1)]));
        let ok = bar::boundary(&image) == expect
            && bar::support(&image).iter().all(|x| in_hull(model, &[g0.clone(), g1.clone()], x, 0))
            && image.l1() <= Q::from_integer((d + 1).into())
            && image.keys().all(|s| model.dist(&s[0], &s[1]) <= 1)
            && moved == bar::vertex_map(&image, |x| model.mul(&h, x));
        check.record(ok, || format!("[{}, {}]", model.format(&g0), model.format(&g1)));
    }
    Ok(check)
}

/// `∂Θ = Θ∂`, `∂Θ′ = Θ′∂`, `Θ′ = Id` in degree 0, `Θ′ = 0` on degenerate
/// simplices and equivariance of `Θ′`.
pub fn chain_map_checks(tp: &ThetaPrime, samples: &[Vec<Elem>], seed: u64) -> Result<Check> {
    let model = tp.model();
    let mut check = Check::new("chain maps");
    let ball = CayleyBall::new(model, 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x11);
    for s in samples {
        let c: BarChain<Elem> = Chain::basis(s.clone());
        let ok = if s.len() == 1 {
            tp.apply(&c)? == c
        } else {
            let theta = bar::boundary(&tp.theta.apply(&c)?) == tp.theta.apply(&bar::boundary(&c))?;
            let prime = bar::boundary(&tp.apply(&c)?) == tp.apply(&bar::boundary(&c))?;
            let g = ball.elements().choose(&mut rng).expect("nonempty ball");
            let equi = equivariance_defect(tp, g, s)?.is_zero();
            let mut degen = s.clone();
            let i = rng.gen_range(0..degen.len());
            degen.insert(i, degen[i].clone());
            let vanish = tp.apply(&Chain::basis(degen))?.is_zero();
            theta && prime && equi && vanish
        };
        check.record(ok, || format!("{:?}", s.iter().map(|g| model.format(g)).collect::<Vec<_>>()));
    }
    Ok(check)
}

/// Tree approximation on seeded subsets of the ball: `Φ` non-expansive and
/// radially isometric, and `d − d_T ≤ 2kδ` with `k` from the subset size.
pub fn tree_checks(model: &GroupModel, radius: u32, count: usize, max_size: usize, delta: &Q, seed: u64) -> Result<Check> {
    let mut check = Check::new("tree approximation");
    let ball = CayleyBall::new(model, radius)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let size = rng.gen_range(1..=max_size);
        let f: Vec<Elem> = ball.elements().choose_multiple(&mut rng, size).cloned().collect();
        let dist = subset_metric(model, &f);
        let tree = ApproxTree::new(&dist, 0)?;
        let mut ok = true;
        for i in 0..f.len() {
            ok &= tree.dist(&tree.phi(i), &tree.phi(0)) == dist[i][0];
            for j in 0..f.len() {
                ok &= tree.dist(&tree.phi(i), &tree.phi(j)) <= dist[i][j];
            }
        }
        let k = distortion_exponent(f.len());
        let bound = Q::from_integer((2 * k as i64).into()) * delta;
        ok &= distortion(&dist, &tree) <= bound;
        check.record(ok, || format!("{:?}", f.iter().map(|g| model.format(g)).collect::<Vec<_>>()));
    }
    check.detail = format!("δ = {delta}");
    Ok(check)
}

/// `I∘p_v∘s_split = Id` and `∂s = s b` on the class of `v`.
pub fn splitting_check(model: &GroupModel, v: &Elem, degree_cap: usize, weight_cap: u32) -> Result<Check> {
    let mut check = Check::new(&format!("splitting ⟨{}⟩", model.format(v)));
    let bad = splitting_failures(model, v, degree_cap, weight_cap)?;
    let total: usize = (0..=degree_cap).map(|n| reduced_forms(model, n, weight_cap, Some(v)).len()).sum();
    check.checked = total;
    for f in bad {
        check.fail(f.display(model));
    }
    Ok(check)
}

/// `b∘ν_v = ν_v∘(b + B)` on the class of a torsion element.
pub fn elliptic_check(model: &GroupModel, v: &Elem, degree_cap: usize, weight_cap: u32) -> Result<Check> {
    let v = model.class_rep(v);
    let mut check = Check::new(&format!("elliptic ⟨{}⟩", model.format(&v)));
    let sigma = SigmaSection::covering(model, &v, weight_cap + 4)?;
    for n in 0..=degree_cap {
        for f in reduced_forms(model, n, weight_cap, Some(&v)) {
            let w: FormChain = Chain::basis(f.clone());
            let lhs = reduced_b(model, &nu_v(model, &w, &sigma)?);
            let rhs = nu_v(model, &reduced_b(model, &w).plus(&reduced_connes_b(&w)), &sigma)?;
            check.record(lhs == rhs, || f.display(model));
        }
    }
    Ok(check)
}

/// Everything a verify run needs besides the model.
#[derive(Clone, Debug)]
pub struct VerifyPlan {
    pub seed: u64,
    pub ball_radius: u32,
    pub samples: usize,
    pub truncation: TruncationSpec,
    pub scan: ScanSpec,
    /// Infinite-order classes for the splitting check.
    pub hyperbolic: Vec<Elem>,
}

pub fn operators_suite(model: &GroupModel, plan: &VerifyPlan) -> Result<SuiteReport> {
    let t = &plan.truncation;
    let mut checks = vec![operator_identities(model, t.degree_cap + 1, t.weight_cap)];
    let samples = seeded_simplices(model, plan.samples, 3.min(t.degree_cap + 1), 2, plan.seed)?;
    let tp = ThetaPrime::new(model, t.rips.max(1));
    checks.push(cone_identity(model, &samples, plan.seed)?);
    checks.push(homotopy_identity(&tp, &samples, plan.seed)?);
    checks.push(chain_map_checks(&tp, &samples, plan.seed)?);
    let mut audit = Check::new("weight audit");
    for s in based_simplices(model, t.degree_cap.min(2), t.weight_cap.min(4))? {
        audit.record(weight_audit(model, &s), || s.display(model));
    }
    checks.push(audit);
    for v in &plan.hyperbolic {
        checks.push(splitting_check(model, v, t.degree_cap.min(2), t.weight_cap)?);
    }
    for v in torsion_classes(model)?.iter().filter(|v| !v.is_identity()) {
        checks.push(elliptic_check(model, v, t.degree_cap.min(3), t.weight_cap.min(6))?);
    }
    Ok(SuiteReport { suite: "operators".into(), checks })
}

pub fn geometry_suite(model: &GroupModel, plan: &VerifyPlan) -> Result<SuiteReport> {
    let ball = CayleyBall::new(model, plan.ball_radius)?;
    let est = delta_estimate(model, &ball, 20_000, plan.seed);
    let mut delta = Check::new("delta estimate");
    delta.checked = est.triangles;
    delta.detail = format!("δ = {} over {} triangles (exhaustive: {})", est.delta, est.triangles, est.exhaustive);
    let checks = vec![
        delta,
        bicombing_checks(model, plan.ball_radius, plan.samples, plan.seed)?,
        tree_checks(model, plan.ball_radius, plan.samples.min(100), 6, &est.delta, plan.seed)?,
    ];
    Ok(SuiteReport { suite: "geometry".into(), checks })
}

pub fn constants_suite(model: &GroupModel, plan: &VerifyPlan) -> Result<SuiteReport> {
    let mut check = Check::new("constant scans");
    for c in scan_all(model, &plan.scan)? {
        check.record(c.skipped == 0, || format!("{}: {} samples skipped", c.name, c.skipped));
        check.detail.push_str(&format!("{}={} ", c.name, c.value));
    }
    check.detail = check.detail.trim_end().to_string();
    Ok(SuiteReport { suite: "constants".into(), checks: vec![check] })
}

pub fn homology_suite(model: &GroupModel, plan: &VerifyPlan) -> Result<SuiteReport> {
    let t = &plan.truncation;
    let mut rips = Check::new("Rips group homology");
    let h = group_homology_rips(model, t.rips, t.degree_cap)?;
    let mut expect = vec![0; t.degree_cap + 1];
    expect[0] = 1;
    if t.degree_cap >= 1 {
        expect[1] = crate::homology::centralizer_homology(model, &Elem::identity(), 1)[1];
    }
    rips.record(h == expect, || format!("{h:?} against {expect:?}"));
    rips.detail = format!("{h:?}");
    let mut burghelea = Check::new("centralizer comparison");
    for row in burghelea_check(model, &torsion_classes(model)?, t)? {
        burghelea.record(row.agree, || format!("{}: {:?} against {:?}", row.class, row.hochschild, row.centralizer));
    }
    Ok(SuiteReport { suite: "homology".into(), checks: vec![rips, burghelea] })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Operators,
    Geometry,
    Constants,
    Homology,
    All,
}

/// Run the requested suites in a fixed order.
pub fn run_suites(model: &GroupModel, suites: &[Suite], plan: &VerifyPlan) -> Result<Vec<SuiteReport>> {
    let want = |s: Suite| suites.contains(&s) || suites.contains(&Suite::All);
    let mut out = Vec::new();
    if want(Suite::Operators) {
        out.push(operators_suite(model, plan)?);
    }
    if want(Suite::Geometry) {
        out.push(geometry_suite(model, plan)?);
    }
    if want(Suite::Constants) {
        out.push(constants_suite(model, plan)?);
    }
    if want(Suite::Homology) {
        out.push(homology_suite(model, plan)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plan(w: u32) -> VerifyPlan {
        VerifyPlan {
            seed: 3,
            ball_radius: 3,
            samples: 12,
            truncation: TruncationSpec { degree_cap: 2, weight_cap: w, rips: 2 },
            scan: ScanSpec {
                degree_cap: 1,
                weight_cap: 2,
                seed: 3,
                budget: 1000,
                lambda0: Q::from_integer(2.into()),
                lambda1: Q::new(5.into(), 4.into()),
                rips: 2,
                power_cap: 1,
                classes: vec![],
            },
            hyperbolic: vec![],
        }
    }

    #[test]
    fn operators_pass_on_cyclic_three() {
        let m = GroupModel::cyclic(3);
        let r = operators_suite(&m, &plan(4)).unwrap();
        assert!(r.passed(), "{:?}", r.failing());
    }

    #[test]
    fn geometry_of_free_group_is_a_tree() {
        let m = GroupModel::free_group(2);
        let r = geometry_suite(&m, &plan(3)).unwrap();
        assert!(r.passed(), "{:?}", r.failing());
        assert!(r.checks[0].detail.starts_with("δ = 0"));
    }

    #[test]
    fn seeded_samples_are_reproducible() {
        let m = GroupModel::dihedral();
        assert_eq!(seeded_simplices(&m, 9, 3, 2, 5).unwrap(), seeded_simplices(&m, 9, 3, 2, 5).unwrap());
        assert_ne!(seeded_simplices(&m, 9, 3, 2, 5).unwrap(), seeded_simplices(&m, 9, 3, 2, 6).unwrap());
    }

    #[test]
    fn a_broken_identity_is_reported() {
        let mut c = Check::new("x");
        c.record(true, || unreachable!());
        c.record(false, || "bad".into());
        assert!(!c.passed);
        assert_eq!((c.checked, c.failures.clone()), (2, vec!["bad".to_string()]));
    }
}
