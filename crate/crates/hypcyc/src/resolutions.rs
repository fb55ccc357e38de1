//! Comparison maps between the Bar resolution and the Rips resolution of a
//! hyperbolic group: the averaged geodesic bicombing, its equivariant
//! extension through approximating trees, the Rips projection and the
//! homotopy operator on twisted chains built from it.
//!
//! Every map is computed on a canonical translate of each simplex (first
//! vertex `e`, or the smallest translate of an oriented vertex set) and then
//! moved back, so equivariance holds by construction.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Mutex;

use num_traits::One;
use serde::Serialize;

use crate::chains::bar::{self, sign, BarChain};
use crate::chains::twisted::{self, TwistedChain, TwistedSimplex};
use crate::chains::Chain;
use crate::error::{Error, Result};
use crate::geometry::{in_hull, interval_layers};
use crate::group::{Elem, GroupModel};
use crate::linalg::{self, SparseVec};
use crate::tree::{TreeContraction, TreeMaps, TreePoint};
use crate::Q;

fn translate(model: &GroupModel, g: &Elem, c: &BarChain<Elem>) -> BarChain<Elem> {
    bar::vertex_map(c, |x| model.mul(g, x))
}

/// Largest pairwise distance among the vertices.
pub fn diameter(model: &GroupModel, verts: &[Elem]) -> u32 {
    let mut d = 0;
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            d = d.max(model.dist(&verts[i], &verts[j]));
        }
    }
    d
}

/// Smallest `λ` with `x ∈ geod_λ(ys)`.
pub fn hull_slack(model: &GroupModel, ys: &[Elem], x: &Elem) -> u32 {
    let dx: Vec<u32> = ys.iter().map(|y| model.dist(y, x)).collect();
    let mut best = u32::MAX;
    for i in 0..ys.len() {
        for j in i..ys.len() {
            best = best.min(dx[i] + dx[j] - model.dist(&ys[i], &ys[j]));
        }
    }
    best
}

/// The averaged bicombing on `[e, g]`: every geodesic edge path from `e` to
/// `g` with equal weight, so edge `[z, z′]` carries
/// `#paths(e→z)·#paths(z′→g) / #paths(e→g)`.
pub fn bicombing_base(model: &GroupModel, g: &Elem) -> BarChain<Elem> {
    let mut out = Chain::zero();
    if g.is_identity() {
        return out;
    }
    let layers = interval_layers(model, &Elem::identity(), g);
    let adjacent = |x: &Elem, y: &Elem| model.dist(x, y) == 1;
    let mut fwd: Vec<Vec<num_bigint::BigInt>> = vec![vec![One::one()]];
    for k in 1..layers.len() {
        let row = layers[k]
            .iter()
            .map(|z| {
                layers[k - 1]
                    .iter()
                    .zip(&fwd[k - 1])
                    .filter(|(w, _)| adjacent(w, z))
                    .map(|(_, c)| c.clone())
                    .sum()
            })
            .collect();
        fwd.push(row);
    }
    let last = layers.len() - 1;
    let mut bwd: Vec<Vec<num_bigint::BigInt>> = vec![Vec::new(); layers.len()];
    bwd[last] = vec![One::one()];
    for k in (0..last).rev() {
        bwd[k] = layers[k]
            .iter()
            .map(|z| {
                layers[k + 1]
                    .iter()
                    .zip(&bwd[k + 1])
                    .filter(|(w, _)| adjacent(z, w))
                    .map(|(_, c)| c.clone())
                    .sum()
            })
            .collect();
    }
    let total = fwd[last][0].clone();
    for k in 0..last {
        for (a, z) in layers[k].iter().enumerate() {
            for (b, w) in layers[k + 1].iter().enumerate() {
                if adjacent(z, w) {
                    let n = &fwd[k][a] * &bwd[k + 1][b];
                    out.add_term(vec![z.clone(), w.clone()], Q::new(n, total.clone()));
                }
            }
        }
    }
    out
}

/// `Θ₁` on an arbitrary Bar 1-chain.
pub fn bicombing_theta1(model: &GroupModel, c: &BarChain<Elem>) -> BarChain<Elem> {
    let mut out = Chain::zero();
    for (s, q) in c.iter() {
        let base = bicombing_base(model, &model.between(&s[0], &s[1]));
        out.add_chain(&translate(model, &s[0], &base), q);
    }
    out
}

/// The equivariant chain map `Θ_*` extending the bicombing, memoized on
/// base simplices `[e, g₁, …, gₙ]`.
pub struct Theta<'m> {
    pub model: &'m GroupModel,
    cache: Mutex<HashMap<Vec<Elem>, BarChain<Elem>>>,
}

impl<'m> Theta<'m> {
    pub fn new(model: &'m GroupModel) -> Self {
        Theta { model, cache: Mutex::new(HashMap::new()) }
    }

    pub fn apply(&self, c: &BarChain<Elem>) -> Result<BarChain<Elem>> {
        let mut out = Chain::zero();
        for (s, q) in c.iter() {
            out.add_chain(&self.simplex(s)?, q);
        }
        Ok(out)
    }

    pub fn simplex(&self, s: &[Elem]) -> Result<BarChain<Elem>> {
        if s.len() <= 1 {
            return Ok(Chain::basis(s.to_vec()));
        }
        let g0 = &s[0];
        let g0_inv = self.model.inv(g0);
        let base: Vec<Elem> = s.iter().map(|x| self.model.mul(&g0_inv, x)).collect();
        let image = self.base(&base)?;
        Ok(translate(self.model, g0, &image))
    }

    fn base(&self, s: &[Elem]) -> Result<BarChain<Elem>> {
        if let Some(c) = self.cache.lock().expect("cache poisoned").get(s) {
            return Ok(c.clone());
        }
        let image = if s.len() == 2 {
            bicombing_base(self.model, &s[1])
        } else {
            self.fill(s)?
        };
        self.cache.lock().expect("cache poisoned").insert(s.to_vec(), image.clone());
        Ok(image)
    }

    /// `(ψ∘σ∘φ + h(ψ∘φ, id)) ∘ Θ ∘ ∂` over the approximating tree of the
    /// support, based at `e`.
    fn fill(&self, s: &[Elem]) -> Result<BarChain<Elem>> {
        let model = self.model;
        let cycle = self.apply(&bar::boundary(&Chain::basis(s.to_vec())))?;
        let mut support: Vec<Elem> = Vec::new();
        for x in s {
            if !support.contains(x) {
                support.push(x.clone());
            }
        }
        let maps = TreeMaps::new(model, &support)?;
        let mut phi: HashMap<Elem, TreePoint> = HashMap::new();
        for x in bar::support(&cycle) {
            let p = maps.phi(model, &x);
            phi.insert(x, p);
        }
        let in_tree = bar::vertex_map(&cycle, |x| phi[x].clone());
        let sigma = TreeContraction::new(&maps.tree).apply(&in_tree)?;
        let mut out = bar::vertex_map(&sigma, |y| maps.psi(y));
        let round = |x: &Elem| maps.psi(&phi[x]);
        out.add_chain(&bar::homotopy_vertex(round, |x: &Elem| x.clone(), &cycle), &Q::one());
        Ok(out)
    }

    pub fn cached(&self) -> usize {
        self.cache.lock().expect("cache poisoned").len()
    }
}

/// Rips parameter and membership: simplices whose vertices are pairwise
/// within distance `R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RipsComplex {
    pub radius: u32,
}

impl RipsComplex {
    pub fn new(radius: u32) -> Self {
        RipsComplex { radius }
    }

    pub fn contains(&self, model: &GroupModel, verts: &[Elem]) -> bool {
        diameter(model, verts) <= self.radius
    }

    /// Coinvariant basis in degree `n`: `[e, g₁, …, gₙ]` with no vertex equal
    /// to its neighbour, pairwise within `R`, listed in shortlex order.
    /// These are the nondegenerate simplices of the ordered Rips complex,
    /// which stays contractible when `R` is large, unlike the complex of
    /// simplices with all vertices distinct.
    pub fn coinvariant_basis(&self, model: &GroupModel, ball: &crate::CayleyBall, n: usize) -> Result<Vec<Vec<usize>>> {
        if ball.radius < self.radius {
            return Err(Error::BoundaryTruncation(format!(
                "ball of radius {} cannot hold Rips-{} simplices",
                ball.radius, self.radius
            )));
        }
        let r = self.radius;
        let cand: Vec<usize> = (0..ball.len()).filter(|&i| ball.length(i) <= r).collect();
        let mut out = Vec::new();
        let mut cur = vec![0usize];
        fn rec(
            ball: &crate::CayleyBall,
            model: &GroupModel,
            r: u32,
            n: usize,
            cand: &[usize],
            cur: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if cur.len() == n + 1 {
                out.push(cur.clone());
                return;
            }
            for &g in cand {
                if cur.last() == Some(&g) || cur.iter().any(|&h| ball.dist(model, h, g) > r) {
                    continue;
                }
                cur.push(g);
                rec(ball, model, r, n, cand, cur, out);
                cur.pop();
            }
        }
        rec(ball, model, r, n, &cand, &mut cur, &mut out);
        Ok(out)
    }
}

/// Equivariant chain map `η` from oriented Bar chains to oriented Rips
/// chains: the identity on Rips simplices, an exact filling elsewhere.
pub struct RipsFilling<'m> {
    pub model: &'m GroupModel,
    pub rips: RipsComplex,
    pub max_margin: u32,
    /// Bound on candidate simplices per linear system.
    pub budget: usize,
    cache: Mutex<HashMap<Vec<Elem>, BarChain<Elem>>>,
}

impl<'m> RipsFilling<'m> {
    pub fn new(model: &'m GroupModel, rips: RipsComplex) -> Self {
        RipsFilling { model, rips, max_margin: 4, budget: 200_000, cache: Mutex::new(HashMap::new()) }
    }

    /// Apply to an oriented chain (sorted, repetition-free simplices).
    pub fn apply(&self, c: &BarChain<Elem>) -> Result<BarChain<Elem>> {
        let mut out = Chain::zero();
        for (s, q) in c.iter() {
            if self.rips.contains(self.model, s) {
                out.add_term(s.clone(), q.clone());
            } else {
                out.add_chain(&self.simplex(s)?, q);
            }
        }
        Ok(out)
    }

    /// Smallest translate of an oriented simplex, with the translating element.
    fn canonical(&self, s: &[Elem]) -> (Vec<Elem>, Elem) {
        let model = self.model;
        let mut best: Option<(Vec<Elem>, Elem)> = None;
        for g in s {
            let gi = model.inv(g);
            let mut t: Vec<Elem> = s.iter().map(|x| model.mul(&gi, x)).collect();
            t.sort();
            if best.as_ref().is_none_or(|(b, _)| t < *b) {
                best = Some((t, g.clone()));
            }
        }
        best.expect("nonempty simplex")
    }

    fn simplex(&self, s: &[Elem]) -> Result<BarChain<Elem>> {
        let model = self.model;
        let (rep, g) = self.canonical(s);
        let w = self.base(&rep)?;
        // g·rep is `s` up to the sign of the sorting permutation
        let moved: Vec<Elem> = rep.iter().map(|x| model.mul(&g, x)).collect();
        let (_, odd) = bar::sort_with_sign(&moved).expect("translates keep vertices distinct");
        let eps = if odd { -Q::one() } else { Q::one() };
        Ok(bar::orient(&translate(model, &g, &w)).scaled(&eps))
    }

    fn base(&self, rep: &[Elem]) -> Result<BarChain<Elem>> {
        if let Some(c) = self.cache.lock().expect("cache poisoned").get(rep) {
            return Ok(c.clone());
        }
        let model = self.model;
        let target = self.apply(&bar::orient(&boundary_nonaug(&Chain::basis(rep.to_vec()))))?;
        let raw = self.solve(rep, &target)?;
        // average over the set stabilizer so the filling is equivariant
        let mut stab = Vec::new();
        let first_inv = model.inv(&rep[0]);
        for x in rep {
            let h = model.mul(x, &first_inv);
            let moved: Vec<Elem> = rep.iter().map(|y| model.mul(&h, y)).collect();
            if let Some((sorted, odd)) = bar::sort_with_sign(&moved) {
                if sorted == rep {
                    stab.push((h, if odd { -Q::one() } else { Q::one() }));
                }
            }
        }
        let mut w = Chain::zero();
        let count = Q::from_integer((stab.len() as i64).into());
        for (h, eps) in &stab {
            w.add_chain(&bar::orient(&translate(model, h, &raw)), &(eps / &count));
        }
        self.cache.lock().expect("cache poisoned").insert(rep.to_vec(), w.clone());
        Ok(w)
    }

    /// Exact filling of `target` by Rips simplices inside growing hulls of
    /// the support.
    fn solve(&self, rep: &[Elem], target: &BarChain<Elem>) -> Result<BarChain<Elem>> {
        let model = self.model;
        let n = rep.len();
        let needed: BTreeSet<Elem> = bar::support(target);
        for margin in 0..=self.max_margin {
            let region = hull_region(model, rep, margin);
            if !needed.iter().all(|x| region.contains(x)) {
                continue;
            }
            let verts: Vec<Elem> = region.into_iter().collect();
            let mut cands: Vec<Vec<Elem>> = Vec::new();
            let mut cur = Vec::new();
            rips_subsets(model, &verts, self.rips.radius, n, 0, &mut cur, &mut cands, self.budget)?;
            let mut faces: HashMap<Vec<Elem>, usize> = HashMap::new();
            let index = |f: Vec<Elem>, faces: &mut HashMap<Vec<Elem>, usize>| {
                let k = faces.len();
                *faces.entry(f).or_insert(k)
            };
            let cols: Vec<SparseVec> = cands
                .iter()
                .map(|s| (0..n).map(|i| (index(bar::face(s, i), &mut faces), sign(i))).collect())
                .collect();
            let mut t: SparseVec = Vec::new();
            for (f, q) in target.iter() {
                t.push((index(f.clone(), &mut faces), q.clone()));
            }
            if let Some(x) = linalg::solve(&cols, &t) {
                let mut w = Chain::zero();
                for (j, q) in x {
                    w.add_term(cands[j].clone(), q);
                }
                return Ok(w);
            }
        }
        Err(Error::MarginExhausted(format!(
            "no Rips-{} filling of a {}-simplex within hull margin {}",
            self.rips.radius,
            n - 1,
            self.max_margin
        )))
    }
}

fn boundary_nonaug(c: &BarChain<Elem>) -> BarChain<Elem> {
    bar::boundary(c).filter(|s| !s.is_empty())
}

/// `geod_C(ys)` by breadth-first search from `ys`; the hull is connected
/// through geodesics to its witnesses.
pub fn hull_region(model: &GroupModel, ys: &[Elem], margin: u32) -> BTreeSet<Elem> {
    let gens = model.generators();
    let mut seen: BTreeSet<Elem> = ys.iter().cloned().collect();
    let mut queue: VecDeque<Elem> = ys.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        for s in &gens {
            let y = model.mul(&x, s);
            if !seen.contains(&y) && in_hull(model, ys, &y, margin) {
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    seen
}

#[allow(clippy::too_many_arguments)]
fn rips_subsets(
    model: &GroupModel,
    verts: &[Elem],
    r: u32,
    size: usize,
    from: usize,
    cur: &mut Vec<Elem>,
    out: &mut Vec<Vec<Elem>>,
    budget: usize,
) -> Result<()> {
    if cur.len() == size {
        out.push(cur.clone());
        if out.len() > budget {
            return Err(Error::ResourceLimit(format!("more than {budget} filling candidates")));
        }
        return Ok(());
    }
    for k in from..verts.len() {
        if cur.iter().all(|x| model.dist(x, &verts[k]) <= r) {
            cur.push(verts[k].clone());
            rips_subsets(model, verts, r, size, k + 1, cur, out, budget)?;
            cur.pop();
        }
    }
    Ok(())
}

/// The Rips projection `Θ′ = π_as ∘ η ∘ π_as ∘ Θ ∘ π_as`. The outer
/// antisymmetrizations are taken through the oriented form.
pub struct ThetaPrime<'m> {
    pub theta: Theta<'m>,
    pub eta: RipsFilling<'m>,
}

impl<'m> ThetaPrime<'m> {
    pub fn new(model: &'m GroupModel, rips: u32) -> Self {
        ThetaPrime { theta: Theta::new(model), eta: RipsFilling::new(model, RipsComplex::new(rips)) }
    }

    pub fn model(&self) -> &'m GroupModel {
        self.theta.model
    }

    /// Oriented form of `Θ′(c)`.
    pub fn apply_oriented(&self, c: &BarChain<Elem>) -> Result<BarChain<Elem>> {
        let alt = bar::antisymmetrize(c);
        let image = self.theta.apply(&alt)?;
        self.eta.apply(&bar::orient(&image))
    }

    pub fn apply(&self, c: &BarChain<Elem>) -> Result<BarChain<Elem>> {
        Ok(bar::unorient(&self.apply_oriented(c)?))
    }

    /// `∇̃ = h(Θ′, Id) ⊗ Id` on twisted chains, in the reduced complex.
    pub fn nabla(&self, c: &TwistedChain) -> Result<TwistedChain> {
        let mut out = Chain::zero();
        for (s, q) in c.iter() {
            for i in 0..s.verts.len() {
                let left = self.apply(&Chain::basis(s.verts[..=i].to_vec()))?;
                if left.is_zero() {
                    continue;
                }
                let right: BarChain<Elem> = Chain::basis(s.verts[i..].to_vec());
                let joined = bar::join(&left, &right);
                out.add_chain(&twisted::with_twist(&joined, &s.twist), &(q * sign(i)));
            }
        }
        Ok(twisted::degenerate_reduce(&out))
    }
}

/// Measured support, Rips and norm constants of one map on a sample.
#[derive(Clone, Debug, Default, Serialize)]
pub struct DegreeWitness {
    pub degree: usize,
    pub samples: usize,
    /// Largest simplex diameter in the image.
    pub rips: u32,
    /// Smallest hull slack containing the image support.
    pub hull: u32,
    /// Largest `ℓ¹(image) / (diam(input) + 1)`.
    #[serde(serialize_with = "crate::report::ser_q")]
    pub weight: Q,
}

impl DegreeWitness {
    fn absorb(&mut self, model: &GroupModel, input: &[Elem], image: &BarChain<Elem>) {
        self.samples += 1;
        for s in image.keys() {
            self.rips = self.rips.max(diameter(model, s));
        }
        for x in bar::support(image) {
            self.hull = self.hull.max(hull_slack(model, input, &x));
        }
        let ratio = image.l1() / Q::from_integer((diameter(model, input) + 1).into());
        if ratio > self.weight {
            self.weight = ratio;
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct WitnessReport {
    pub theta: Vec<DegreeWitness>,
    pub theta_prime: Vec<DegreeWitness>,
}

/// Measure the per-degree constants of `Θ` and `Θ′` on the given simplices.
pub fn witness_report(tp: &ThetaPrime, samples: &[Vec<Elem>]) -> Result<WitnessReport> {
    let model = tp.model();
    let top = samples.iter().map(|s| s.len()).max().unwrap_or(0);
    let mut rep = WitnessReport {
        theta: (0..top).map(|d| DegreeWitness { degree: d, ..Default::default() }).collect(),
        theta_prime: (0..top).map(|d| DegreeWitness { degree: d, ..Default::default() }).collect(),
    };
    for s in samples {
        let c: BarChain<Elem> = Chain::basis(s.clone());
        let d = s.len() - 1;
        rep.theta[d].absorb(model, s, &tp.theta.apply(&c)?);
        rep.theta_prime[d].absorb(model, s, &tp.apply(&c)?);
    }
    Ok(rep)
}

/// Equivariance defect `Θ′(g·α) − g·Θ′(α)`, zero when equivariant.
pub fn equivariance_defect(tp: &ThetaPrime, g: &Elem, s: &[Elem]) -> Result<BarChain<Elem>> {
    let model = tp.model();
    let c: BarChain<Elem> = Chain::basis(s.to_vec());
    let moved = translate(model, g, &c);
    Ok(tp.apply(&moved)?.minus(&translate(model, g, &tp.apply(&c)?)))
}

/// Twisted counterpart of [`equivariance_defect`] for `∇̃`.
pub fn nabla_equivariance_defect(tp: &ThetaPrime, g: &Elem, s: &TwistedSimplex) -> Result<TwistedChain> {
    let model = tp.model();
    let c: TwistedChain = Chain::basis(s.clone());
    let lhs = tp.nabla(&twisted::act(model, g, &c))?;
    Ok(lhs.minus(&twisted::act(model, g, &tp.nabla(&c)?)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(m: &GroupModel, ws: &[&str]) -> Vec<Elem> {
        ws.iter().map(|w| m.parse(w).unwrap()).collect()
    }

    fn chain(m: &GroupModel, ws: &[&str]) -> BarChain<Elem> {
        Chain::basis(parse(m, ws))
    }

    #[test]
    fn bicombing_follows_unique_geodesic() {
        for m in [GroupModel::free_group(2), GroupModel::dihedral()] {
            let c = bicombing_theta1(&m, &chain(&m, &["e", "ab"]));
            assert_eq!(c, chain(&m, &["e", "a"]).plus(&chain(&m, &["a", "ab"])));
            assert!(bicombing_theta1(&m, &chain(&m, &["ab", "ab"])).is_zero());
        }
    }

    #[test]
    fn bicombing_averages_two_geodesics() {
        let m = GroupModel::cyclic(4);
        let c = bicombing_theta1(&m, &chain(&m, &["e", "tt"]));
        assert_eq!(c.len(), 4);
        assert_eq!(c.l1(), Q::from_integer(2.into()));
        assert_eq!(bar::boundary(&c), chain(&m, &["tt"]).minus(&chain(&m, &["e"])));
    }

    #[test]
    fn theta_is_a_chain_map_in_degree_two() {
        let m = GroupModel::free_group(2);
        let theta = Theta::new(&m);
        let a = chain(&m, &["e", "a", "ab"]);
        let lhs = bar::boundary(&theta.apply(&a).unwrap());
        let rhs = theta.apply(&bar::boundary(&a)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn theta_prime_basics() {
        let m = GroupModel::modular();
        let tp = ThetaPrime::new(&m, 4);
        let point = chain(&m, &["at"]);
        assert_eq!(tp.apply(&point).unwrap(), point);
        assert!(tp.apply(&chain(&m, &["a", "a", "t"])).unwrap().is_zero());
        let s = chain(&m, &["e", "atat", "T", "ata"]);
        let lhs = bar::boundary(&tp.apply(&s).unwrap());
        let rhs = tp.apply(&bar::boundary(&s)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn filling_handles_long_edges() {
        let m = GroupModel::free_group(2);
        let eta = RipsFilling::new(&m, RipsComplex::new(1));
        let edge = bar::orient(&chain(&m, &["e", "abA"]));
        let w = eta.apply(&edge).unwrap();
        assert!(w.keys().all(|s| diameter(&m, s) <= 1));
        assert_eq!(bar::boundary(&w), bar::boundary(&edge));
    }

    #[test]
    fn nabla_of_a_point_is_degenerate() {
        let m = GroupModel::free_group(2);
        let tp = ThetaPrime::new(&m, 4);
        let c: TwistedChain = Chain::basis(TwistedSimplex::new(parse(&m, &["ab"]), m.parse("b").unwrap()));
        assert!(tp.nabla(&c).unwrap().is_zero());
    }
}
