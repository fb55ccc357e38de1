//! Truncated chain complexes with exact boundary matrices, their Betti
//! numbers, and the comparisons built on them: group homology through Rips
//! coinvariants, per-class Hochschild, cyclic and periodic dimensions, the
//! centralizer comparison and the torsion-class report.

use std::collections::HashMap;
use std::fmt::Debug;

use rayon::prelude::*;
use serde::Serialize;

use crate::ball::CayleyBall;
use crate::chains::forms::{reduced_b, reduced_connes_b, reduced_forms};
use crate::chains::{Chain, Form, FormChain};
use crate::conjugacy::conjugacy_classes;
use crate::error::{invalid, Error, Result};
use crate::group::{Elem, GroupModel, ModelKind};
use crate::linalg::{exact_rank, SparseMatrix, SparseVec};
use crate::resolutions::RipsComplex;
use crate::Q;

/// Truncation gauges: a degree cap and either a weight cap (forms) or a
/// Rips parameter (group homology).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TruncationSpec {
    pub degree_cap: usize,
    pub weight_cap: u32,
    pub rips: u32,
}

/// A finite chain complex `C_0 ← C_1 ← …` with exact boundary matrices;
/// `boundaries[n]` maps degree `n` to degree `n − 1`.
#[derive(Clone, Debug)]
pub struct FiniteComplex {
    pub label: String,
    pub dims: Vec<usize>,
    pub boundaries: Vec<SparseMatrix>,
}

impl FiniteComplex {
    /// Assemble from per-degree bases and a differential, auditing that every
    /// image lands in the truncated basis one degree down.
    pub fn assemble<K, D>(label: &str, bases: Vec<Vec<K>>, d: D, show: impl Fn(&K) -> String + Sync) -> Result<Self>
    where
        K: Ord + Clone + Send + Sync + std::hash::Hash + Debug,
        D: Fn(&K) -> Chain<K> + Sync,
    {
        let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
        let mut boundaries = vec![SparseMatrix::new(0)];
        for n in 1..bases.len() {
            let index: HashMap<&K, usize> = bases[n - 1].iter().enumerate().map(|(i, k)| (k, i)).collect();
            let cols: Vec<std::result::Result<SparseVec, String>> = bases[n]
                .par_iter()
                .map(|k| {
                    let mut col = Vec::new();
                    for (t, q) in d(k).iter() {
                        match index.get(t) {
                            Some(&i) => col.push((i, q.clone())),
                            None => return Err(format!("{} maps outside the truncation to {}", show(k), show(t))),
                        }
                    }
                    Ok(col)
                })
                .collect();
            let mut m = SparseMatrix::new(dims[n - 1]);
            for c in cols {
                m.push_col(c.map_err(Error::ClosureAudit)?);
            }
            boundaries.push(m);
        }
        Ok(FiniteComplex { label: label.into(), dims, boundaries })
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    /// Betti numbers in degrees `0..top`, where the top degree is only used
    /// for its boundary.
    pub fn homology(&self) -> Result<Vec<usize>> {
        for n in 2..self.boundaries.len() {
            if !self.boundaries[n - 1].compose_is_zero(&self.boundaries[n]) {
                return Err(Error::Consistency(format!("{}: ∂∂ ≠ 0 in degree {n}", self.label)));
            }
        }
        let ranks: Vec<usize> = self
            .boundaries
            .par_iter()
            .enumerate()
            .map(|(n, m)| if n == 0 { 0 } else { exact_rank(m) })
            .collect();
        Ok((0..self.top_degree())
            .map(|n| self.dims[n] - ranks[n] - ranks[n + 1])
            .collect())
    }
}

/// Betti numbers of a complex.
pub fn homology(c: &FiniteComplex) -> Result<Vec<usize>> {
    c.homology()
}

/// Which complex to truncate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexKind {
    /// Coinvariants of the full Bar resolution of a finite group.
    BarCoinvariants,
    /// Coinvariants of the ordered Rips complex.
    RipsCoinvariants,
    /// The class component of the reduced Hochschild complex.
    Hochschild { class: Elem },
    /// The class component of the reduced `(b, B)` total complex.
    Cyclic { class: Elem },
}

/// Build a finite complex through degree `degree_cap + 1`.
pub fn truncate_complex(kind: &ComplexKind, model: &GroupModel, spec: &TruncationSpec) -> Result<FiniteComplex> {
    let top = spec.degree_cap + 1;
    match kind {
        ComplexKind::BarCoinvariants => bar_coinvariants(model, top),
        ComplexKind::RipsCoinvariants => rips_coinvariants(model, spec.rips, top),
        ComplexKind::Hochschild { class } => {
            let bases: Vec<Vec<Form>> = (0..=top).map(|n| sorted_forms(model, n, spec.weight_cap, class)).collect();
            FiniteComplex::assemble(
                &format!("HH {}", model.format(class)),
                bases,
                |f| reduced_b(model, &Chain::basis(f.clone())),
                |f| f.display(model),
            )
        }
        ComplexKind::Cyclic { class } => {
            let forms: Vec<Vec<Form>> = (0..=top).map(|n| sorted_forms(model, n, spec.weight_cap, class)).collect();
            let bases: Vec<Vec<(usize, Form)>> = (0..=top)
                .map(|k| {
                    (0..=k / 2)
                        .flat_map(|p| forms[k - 2 * p].iter().map(move |f| (p, f.clone())))
                        .collect()
                })
                .collect();
            FiniteComplex::assemble(
                &format!("HC {}", model.format(class)),
                bases,
                |(p, f)| {
                    let one: FormChain = Chain::basis(f.clone());
                    let mut out: Chain<(usize, Form)> = reduced_b(model, &one).map_basis(|g| Some(((*p, g.clone()), Q::from_integer(1.into()))));
                    if *p > 0 {
                        let up = reduced_connes_b(&one).map_basis(|g| Some(((p - 1, g.clone()), Q::from_integer(1.into()))));
                        out.add_chain(&up, &Q::from_integer(1.into()));
                    }
                    out
                },
                |(p, f)| format!("u^{p}·{}", f.display(model)),
            )
        }
    }
}

fn sorted_forms(model: &GroupModel, n: usize, cap: u32, class: &Elem) -> Vec<Form> {
    let mut v = reduced_forms(model, n, cap, Some(class));
    v.sort();
    v
}

fn bar_coinvariants(model: &GroupModel, top: usize) -> Result<FiniteComplex> {
    let Some(order) = model.order_of_group() else {
        return invalid("Bar coinvariants are only finite for finite groups");
    };
    let ball = CayleyBall::new(model, order as u32)?;
    let elems = ball.elements().to_vec();
    let mut bases: Vec<Vec<Vec<Elem>>> = vec![vec![vec![Elem::identity()]]];
    for n in 1..=top {
        let mut next = Vec::new();
        for s in &bases[n - 1] {
            for g in &elems {
                let mut t = s.clone();
                t.push(g.clone());
                next.push(t);
            }
        }
        bases.push(next);
    }
    FiniteComplex::assemble(
        "Bar coinvariants",
        bases,
        |s| coinvariant_boundary(model, s),
        |s| format!("{s:?}"),
    )
}

/// `∂` on a based simplex followed by moving each face back to base form.
fn coinvariant_boundary(model: &GroupModel, s: &[Elem]) -> Chain<Vec<Elem>> {
    let mut out = Chain::zero();
    if s.len() < 2 {
        return out;
    }
    let g1_inv = model.inv(&s[1]);
    out.add_int(s[1..].iter().map(|x| model.mul(&g1_inv, x)).collect(), 1);
    for i in 1..s.len() {
        out.add_int(crate::chains::bar::face(s, i), if i % 2 == 0 { 1 } else { -1 });
    }
    out
}

fn rips_coinvariants(model: &GroupModel, r: u32, top: usize) -> Result<FiniteComplex> {
    let ball = CayleyBall::new(model, r)?;
    let rips = RipsComplex::new(r);
    let mut bases = Vec::new();
    for n in 0..=top {
        let idx = rips.coinvariant_basis(model, &ball, n)?;
        bases.push(idx.into_iter().map(|s| s.into_iter().map(|i| ball.elem(i).clone()).collect::<Vec<Elem>>()).collect::<Vec<_>>());
    }
    FiniteComplex::assemble(
        &format!("Rips-{r} coinvariants"),
        bases,
        |s| {
            // Normalized chains: faces with a repeated adjacent vertex are degenerate.
            coinvariant_boundary(model, s).filter(|f| f.windows(2).all(|w| w[0] != w[1]))
        },
        |s| s.iter().map(|g| model.format(g)).collect::<Vec<_>>().join(","),
    )
}

/// `H_*(Γ; ℚ)` through degree `degree_cap` from the Rips coinvariants.
pub fn group_homology_rips(model: &GroupModel, rips: u32, degree_cap: usize) -> Result<Vec<usize>> {
    let spec = TruncationSpec { degree_cap, weight_cap: 0, rips };
    truncate_complex(&ComplexKind::RipsCoinvariants, model, &spec)?.homology()
}

/// One computed dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiRow {
    pub class: String,
    pub theory: String,
    pub degree: usize,
    pub dimension: usize,
    /// Equal at the last two truncation caps, or computed untruncated.
    pub stable: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub rows: Vec<BettiRow>,
}

impl BettiTable {
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.rows {
            w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv is utf-8"))
    }

    pub fn dims(&self, class: &str, theory: &str) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|r| r.class == class && r.theory == theory)
            .map(|r| r.dimension)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Theory {
    HH,
    HC,
    HP,
}

/// Largest letter length of a form of degree `n` in a finite group, so caps
/// at or above it leave the complex untruncated.
pub fn untruncated_cap(model: &GroupModel, n: usize) -> Option<u32> {
    let order = model.order_of_group()? as u32;
    let ball = CayleyBall::new(model, order).ok()?;
    let diam = (0..ball.len()).map(|i| ball.length(i)).max().unwrap_or(0);
    Some(diam * (n as u32 + 1))
}

fn betti_at(model: &GroupModel, class: &Elem, cyclic: bool, degree_cap: usize, cap: u32) -> Result<Vec<usize>> {
    let spec = TruncationSpec { degree_cap, weight_cap: cap, rips: 0 };
    let kind = if cyclic {
        ComplexKind::Cyclic { class: class.clone() }
    } else {
        ComplexKind::Hochschild { class: class.clone() }
    };
    truncate_complex(&kind, model, &spec)?.homology()
}

/// Homology of one class at weight cap `W`, flagged stable where it agrees
/// with cap `W − 2`. Finite groups are computed untruncated and always stable.
pub fn per_class_homology(model: &GroupModel, class: &Elem, theory: Theory, spec: &TruncationSpec) -> Result<Vec<BettiRow>> {
    let class = model.class_rep(class);
    let label = model.format(&class);
    // periodic dimensions need two cyclic degrees of each parity
    let degree_cap = if theory == Theory::HP { spec.degree_cap.max(3) } else { spec.degree_cap };
    // finite groups are never truncated: the cap is raised to cover every form
    let full_cap = untruncated_cap(model, degree_cap + 1);
    let weight_cap = full_cap.map_or(spec.weight_cap, |c| c.max(spec.weight_cap));
    let full = full_cap.is_some();
    let cyclic = theory != Theory::HH;
    let now = betti_at(model, &class, cyclic, degree_cap, weight_cap)?;
    let before = if full || weight_cap < 2 {
        None
    } else {
        Some(betti_at(model, &class, cyclic, degree_cap, weight_cap - 2)?)
    };
    let stable: Vec<bool> = (0..now.len())
        .map(|k| full || before.as_ref().is_some_and(|b| b[k] == now[k]))
        .collect();
    let name = match theory {
        Theory::HH => "HH",
        Theory::HC => "HC",
        Theory::HP => "HP",
    };
    if theory != Theory::HP {
        return Ok(now
            .iter()
            .enumerate()
            .map(|(k, d)| BettiRow { class: label.clone(), theory: name.into(), degree: k, dimension: *d, stable: stable[k] })
            .collect());
    }
    // periodic rows from the top cyclic degrees of each parity; stable only
    // if the periodicity map is already an isomorphism there
    let top = now.len() - 1;
    Ok((0..2)
        .filter(|i| *i <= top)
        .map(|i| {
            let k = if (top - i) % 2 == 0 { top } else { top - 1 };
            let periodic = k >= 2 && now[k] == now[k - 2];
            BettiRow { class: label.clone(), theory: name.into(), degree: i, dimension: now[k], stable: stable[k] && periodic }
        })
        .collect())
}

/// `H_*(Z(v); ℚ)` through `degree_cap` for the supported models: virtually
/// free groups have rational homology only in degrees 0 and 1, centralizers
/// of torsion elements other than `e` are finite, and centralizers of
/// infinite-order elements are infinite cyclic.
pub fn centralizer_homology(model: &GroupModel, v: &Elem, degree_cap: usize) -> Vec<usize> {
    let mut h = vec![0; degree_cap + 1];
    h[0] = 1;
    let h1 = if v.is_identity() {
        match model.kind() {
            ModelKind::FreeGroup { rank } => *rank as usize,
            ModelKind::FreeProduct { factors } => factors.iter().filter(|&&n| n == 0).count(),
            _ => 0,
        }
    } else if model.is_torsion(v) {
        0
    } else {
        1
    };
    if degree_cap >= 1 {
        h[1] = h1;
    }
    h
}

/// `(Σ even, Σ odd)` of a homology vector.
pub fn periodic_sums(h: &[usize]) -> (usize, usize) {
    h.iter().enumerate().fold((0, 0), |(e, o), (k, d)| if k % 2 == 0 { (e + d, o) } else { (e, o + d) })
}

/// Torsion class representatives, `e` first.
pub fn torsion_classes(model: &GroupModel) -> Result<Vec<Elem>> {
    let radius = model.orders().iter().map(|n| n / 2).max().unwrap_or(1).max(1);
    let ball = CayleyBall::new(model, radius)?;
    let mut reps: Vec<Elem> = conjugacy_classes(model, &ball, radius + 1)?
        .into_iter()
        .filter(|c| c.is_torsion())
        .map(|c| c.rep)
        .collect();
    reps.sort_by(|a, b| model.shortlex(a, b));
    Ok(reps)
}

#[derive(Clone, Debug, Serialize)]
pub struct BurgheleaRow {
    pub class: String,
    pub hochschild: Vec<usize>,
    pub stable: Vec<bool>,
    pub centralizer: Vec<usize>,
    pub agree: bool,
}

/// Per class, the Hochschild rows against `H_*(Z(v); ℚ)`, compared on the
/// stable rows.
pub fn burghelea_check(model: &GroupModel, classes: &[Elem], spec: &TruncationSpec) -> Result<Vec<BurgheleaRow>> {
    classes
        .iter()
        .map(|v| {
            let rows = per_class_homology(model, v, Theory::HH, spec)?;
            let hochschild: Vec<usize> = rows.iter().map(|r| r.dimension).collect();
            let stable: Vec<bool> = rows.iter().map(|r| r.stable).collect();
            let centralizer = centralizer_homology(model, &model.class_rep(v), spec.degree_cap);
            let agree = (0..hochschild.len()).all(|k| !stable[k] || hochschild[k] == centralizer[k]);
            Ok(BurgheleaRow { class: model.format(&model.class_rep(v)), hochschild, stable, centralizer, agree })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionRow {
    pub class: String,
    /// `(even, odd)` from the centralizer homology.
    pub left: (usize, usize),
    /// `(even, odd)` periodic dimensions of the class component.
    pub right: (usize, usize),
    pub stable: (bool, bool),
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HyperbolicRow {
    pub class: String,
    /// `zero` when the splitting and contraction checks pass at the
    /// current caps, `inconclusive` otherwise.
    pub status: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaTorsReport {
    pub model: String,
    pub spec: TruncationSpec,
    pub torsion: Vec<TorsionRow>,
    pub hyperbolic: Vec<HyperbolicRow>,
    pub left: (usize, usize),
    pub right: (usize, usize),
    pub agree: bool,
}

/// Finite groups are computed untruncated whatever the requested cap.
fn effective_spec(model: &GroupModel, spec: &TruncationSpec) -> TruncationSpec {
    let mut out = *spec;
    if let Some(cap) = untruncated_cap(model, spec.degree_cap.max(3) + 1) {
        out.weight_cap = out.weight_cap.max(cap);
    }
    out
}

/// Compare `⊕_{torsion ⟨v⟩} H_*(Z(v); ℚ)` folded into even and odd parts
/// with the periodic dimensions of the torsion class components. Each class
/// in `hyperbolic` is counted as 0 only if its splitting and contraction
/// checks pass at small caps.
pub fn gamma_tors_report(model: &GroupModel, spec: &TruncationSpec, hyperbolic: &[Elem]) -> Result<GammaTorsReport> {
    let spec = effective_spec(model, spec);
    let mut torsion = Vec::new();
    let (mut left, mut right) = ((0, 0), (0, 0));
    for v in torsion_classes(model)? {
        let l = periodic_sums(&centralizer_homology(model, &v, spec.degree_cap));
        let rows = per_class_homology(model, &v, Theory::HP, &spec)?;
        let r = (rows[0].dimension, rows.get(1).map_or(0, |x| x.dimension));
        let stable = (rows[0].stable, rows.get(1).is_some_and(|x| x.stable));
        let agree = (!stable.0 || l.0 == r.0) && (!stable.1 || l.1 == r.1);
        left = (left.0 + l.0, left.1 + l.1);
        right = (right.0 + r.0, right.1 + r.1);
        torsion.push(TorsionRow { class: model.format(&v), left: l, right: r, stable, agree });
    }
    let mut hyp = Vec::new();
    for v in hyperbolic {
        if model.is_torsion(v) {
            return invalid(format!("{} has finite order", model.format(v)));
        }
        let ok = crate::scans::hyperbolic_verdict(model, v, 1, spec.weight_cap.min(4), spec.rips.max(1))?;
        let status = if ok { "zero" } else { "inconclusive" };
        hyp.push(HyperbolicRow { class: model.format(&model.class_rep(v)), status: status.into() });
    }
    let agree = torsion.iter().all(|t| t.agree && t.stable.0 && t.stable.1)
        && hyp.iter().all(|h| h.status == "zero");
    Ok(GammaTorsReport { model: model.name(), spec, torsion, hyperbolic: hyp, left, right, agree })
}
