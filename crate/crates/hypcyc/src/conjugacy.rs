//! Conjugacy classes, conjugator sections, centralizers and stable length.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde::Serialize;

use crate::ball::CayleyBall;
use crate::chains::Section;
use crate::error::Result;
use crate::group::{Elem, GroupModel};
use crate::Q;

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    /// Canonical minimal-length representative.
    pub rep: Elem,
    /// Class members inside the ball, in ball order.
    pub members: Vec<Elem>,
    /// `conjugators[i]·rep·conjugators[i]⁻¹ = members[i]`.
    pub conjugators: Vec<Elem>,
    pub torsion_order: Option<u64>,
    /// Some member had no conjugator within the working radius.
    pub truncated: bool,
}

impl ConjugacyClass {
    pub fn is_torsion(&self) -> bool {
        self.torsion_order.is_some()
    }
}

/// Radius of the conjugator search needed to reach members of length `len`
/// in the class of `v`: a minimal conjugator is no longer than half the
/// member plus the representative.
pub fn conjugator_radius(model: &GroupModel, v: &Elem, len: u32) -> u32 {
    len.div_ceil(2) + model.len(v) + 1
}

/// Partition the ball into conjugacy classes, witnessing every membership
/// with a minimal conjugator of length at most `work_radius`.
pub fn conjugacy_classes(
    model: &GroupModel,
    ball: &CayleyBall,
    work_radius: u32,
) -> Result<Vec<ConjugacyClass>> {
    let mut by_rep: BTreeMap<Elem, Vec<Elem>> = BTreeMap::new();
    let mut order: Vec<Elem> = Vec::new();
    for g in ball.elements() {
        let r = model.class_rep(g);
        if !by_rep.contains_key(&r) {
            order.push(r.clone());
        }
        by_rep.entry(r).or_default().push(g.clone());
    }
    let mut out = Vec::new();
    for rep in order {
        let members = by_rep.remove(&rep).unwrap();
        let radius = work_radius.min(conjugator_radius(model, &rep, ball.radius));
        let sigma = SigmaSection::build(model, &rep, radius, Some(ball))?;
        let mut conjugators = Vec::with_capacity(members.len());
        let mut truncated = false;
        for m in &members {
            match sigma.table.get(m) {
                Some(g) => conjugators.push(g.clone()),
                None => {
                    truncated = true;
                    conjugators.push(Elem::identity());
                }
            }
        }
        out.push(ConjugacyClass {
            torsion_order: model.torsion_order(&rep),
            rep,
            members,
            conjugators,
            truncated,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassRow {
    pub rep: String,
    pub size_in_ball: usize,
    pub torsion: bool,
    pub order: String,
}

pub fn class_table_csv(model: &GroupModel, classes: &[ConjugacyClass]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for c in classes {
        w.serialize(ClassRow {
            rep: model.format(&c.rep),
            size_in_ball: c.members.len(),
            torsion: c.is_torsion(),
            order: c.torsion_order.map_or("inf".to_string(), |n| n.to_string()),
        })
        .map_err(|e| crate::Error::Io(e.to_string()))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| crate::Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

/// Table `u ↦ σ(u)` of minimal conjugators `σ(u)·v·σ(u)⁻¹ = u`, built by a
/// breadth-first sweep over conjugators in shortlex order so that `σ(v) = e`
/// and ties go to the earlier element.
#[derive(Clone, Debug)]
pub struct SigmaSection {
    pub v: Elem,
    pub radius: u32,
    pub table: HashMap<Elem, Elem>,
}

impl SigmaSection {
    /// Sweep conjugators of length at most `radius`. With `target` set, only
    /// class members inside that ball are recorded.
    pub fn build(
        model: &GroupModel,
        v: &Elem,
        radius: u32,
        target: Option<&CayleyBall>,
    ) -> Result<Self> {
        let conj = CayleyBall::new(model, radius)?;
        let mut table = HashMap::new();
        for g in conj.elements() {
            let u = model.conj(g, v);
            if target.is_some_and(|b| !b.contains(&u)) {
                continue;
            }
            table.entry(u).or_insert_with(|| g.clone());
        }
        Ok(SigmaSection {
            v: v.clone(),
            radius,
            table,
        })
    }

    /// A section covering every class member of length at most `len`.
    pub fn covering(model: &GroupModel, v: &Elem, len: u32) -> Result<Self> {
        Self::build(model, v, conjugator_radius(model, v, len), None)
    }

    /// `sup_u (ℓ(σ(u)) − ½ℓ(u))` over the table entries of length at most `len`.
    pub fn half_length_excess(&self, model: &GroupModel, len: u32) -> Q {
        let half = Q::new(1.into(), 2.into());
        self.table
            .iter()
            .filter(|(u, _)| model.len(u) <= len)
            .map(|(u, g)| {
                Q::from_integer(model.len(g).into()) - &half * Q::from_integer(model.len(u).into())
            })
            .max()
            .unwrap_or_else(Q::zero)
    }

    /// Largest `d(σ(gug⁻¹), g·σ(u)) − ℓ(g) − ℓ(v)` over `u` and `g` of length
    /// at most `len`, where both conjugates are covered.
    pub fn equivariance_defect(&self, model: &GroupModel, len: u32) -> Result<i64> {
        let gs = CayleyBall::new(model, len)?;
        let mut worst = i64::MIN;
        for (u, su) in &self.table {
            if model.len(u) > len {
                continue;
            }
            for g in gs.elements() {
                let w = model.conj(g, u);
                if let Some(sw) = self.table.get(&w) {
                    let d = model.dist(sw, &model.mul(g, su)) as i64;
                    worst = worst.max(d - model.len(g) as i64 - model.len(&self.v) as i64);
                }
            }
        }
        Ok(worst.max(0))
    }
}

impl Section for SigmaSection {
    fn rep(&self) -> &Elem {
        &self.v
    }
    fn conjugator(&self, u: &Elem) -> Option<Elem> {
        self.table.get(u).cloned()
    }
}

/// Stable length of an element: exactly `ℓ` of its cyclic reduction for
/// infinite-order elements of the supported models, zero for torsion.
pub fn exact_stable_length(model: &GroupModel, g: &Elem) -> u32 {
    if model.is_torsion(g) {
        return 0;
    }
    model.len(&model.cyclic_reduce(g).1)
}

#[derive(Clone, Debug)]
pub struct StableLength {
    /// `ℓ(gⁿ)/n` at the largest power.
    pub estimate: Q,
    /// `min_{k ≤ n} ℓ(gᵏ)/k` for `n = 1..=max_power`, a non-increasing upper bound.
    pub profile: Vec<Q>,
}

pub fn stable_length(model: &GroupModel, g: &Elem, max_power: u32) -> StableLength {
    let mut profile = Vec::new();
    let mut best: Option<Q> = None;
    let mut last = Q::zero();
    let mut p = Elem::identity();
    for n in 1..=max_power.max(1) {
        p = model.mul(&p, g);
        last = Q::new(model.len(&p).into(), n.into());
        best = Some(match best {
            Some(b) if b < last => b,
            _ => last.clone(),
        });
        profile.push(best.clone().unwrap());
    }
    if model.is_torsion(g) {
        last = Q::zero();
    }
    StableLength {
        estimate: last,
        profile,
    }
}

#[derive(Clone, Debug)]
pub struct CentralizerData {
    pub v: Elem,
    /// `Z(v) ∩ ball`, in ball order.
    pub elements: Vec<Elem>,
    /// For infinite-order `v`: shortest representatives of the cosets of `v^ℤ`.
    pub sigma_prime: Vec<Elem>,
    /// Number of cosets found, i.e. `|N(v)|` when the ball sees all of them.
    pub quotient_size: Option<usize>,
    /// `max ℓ(σ′) − ℓ(⟨v⟩)`.
    pub length_excess: i64,
}

pub fn centralizer(model: &GroupModel, v: &Elem, ball: &CayleyBall) -> CentralizerData {
    let elements: Vec<Elem> = ball
        .elements()
        .iter()
        .filter(|h| model.mul(h, v) == model.mul(v, h))
        .cloned()
        .collect();
    if model.is_torsion(v) {
        return CentralizerData {
            v: v.clone(),
            elements,
            sigma_prime: vec![],
            quotient_size: None,
            length_excess: 0,
        };
    }
    let eps = exact_stable_length(model, v).max(1);
    let mut reps: Vec<Elem> = Vec::new();
    for z in &elements {
        let window = (2 * model.len(z) / eps + 1) as i64;
        let best = (-window..=window)
            .map(|k| model.mul(z, &model.pow(v, k)))
            .min_by(|a, b| model.shortlex(a, b))
            .unwrap();
        if !reps.contains(&best) {
            reps.push(best);
        }
    }
    reps.sort_by(|a, b| model.shortlex(a, b));
    let class_len = model.len(&model.class_rep(v)) as i64;
    let length_excess = reps
        .iter()
        .map(|r| model.len(r) as i64 - class_len)
        .max()
        .unwrap_or(0)
        .max(0);
    CentralizerData {
        v: v.clone(),
        elements,
        quotient_size: Some(reps.len()),
        sigma_prime: reps,
        length_excess,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group_classes_are_singletons() {
        let m = GroupModel::cyclic(3);
        let ball = CayleyBall::new(&m, 2).unwrap();
        let cl = conjugacy_classes(&m, &ball, 4).unwrap();
        assert_eq!(cl.len(), 3);
        assert!(cl.iter().all(|c| c.members.len() == 1 && c.is_torsion()));
    }

    #[test]
    fn free_group_conjugates_merge() {
        let m = GroupModel::free_group(2);
        let ball = CayleyBall::new(&m, 3).unwrap();
        let cl = conjugacy_classes(&m, &ball, 6).unwrap();
        let b = m.parse("b").unwrap();
        let c = cl.iter().find(|c| c.rep == b).unwrap();
        let aba = m.parse("abA").unwrap();
        let i = c.members.iter().position(|x| x == &aba).unwrap();
        assert_eq!(m.format(&c.conjugators[i]), "a");
        assert!(!c.truncated);
        for (x, g) in c.members.iter().zip(&c.conjugators) {
            assert_eq!(&m.conj(g, &c.rep), x);
        }
    }

    #[test]
    fn modular_torsion_classes() {
        let m = GroupModel::modular();
        let ball = CayleyBall::new(&m, 4).unwrap();
        let cl = conjugacy_classes(&m, &ball, 8).unwrap();
        let torsion: Vec<(String, u64)> = cl
            .iter()
            .filter_map(|c| c.torsion_order.map(|n| (m.format(&c.rep), n)))
            .collect();
        assert_eq!(
            torsion,
            vec![
                ("e".into(), 1),
                ("a".into(), 2),
                ("t".into(), 3),
                ("T".into(), 3)
            ]
        );
    }

    #[test]
    fn dihedral_section() {
        let m = GroupModel::dihedral();
        let v = m.parse("ab").unwrap();
        let s = SigmaSection::covering(&m, &v, 4).unwrap();
        let u = m.parse("ba").unwrap(); // b(ab)b⁻¹, and also a(ab)a⁻¹
        let g = s.conjugator(&u).unwrap();
        assert_eq!(m.conj(&m.parse("b").unwrap(), &v), u);
        assert_eq!(m.conj(&g, &v), u);
        // both a and b are minimal; shortlex tie-breaking picks a
        assert_eq!(m.format(&g), "a");
        assert_eq!(s.conjugator(&v).unwrap(), Elem::identity());
    }

    #[test]
    fn centralizers() {
        let m = GroupModel::free_group(2);
        let ball = CayleyBall::new(&m, 3).unwrap();
        let z = centralizer(&m, &m.parse("b").unwrap(), &ball);
        assert_eq!(z.elements.len(), 7);
        assert_eq!(z.quotient_size, Some(1));
        let z2 = centralizer(&m, &m.parse("bb").unwrap(), &ball);
        assert_eq!(z2.quotient_size, Some(2));
        let md = GroupModel::modular();
        let ball = CayleyBall::new(&md, 4).unwrap();
        let za = centralizer(&md, &md.parse("a").unwrap(), &ball);
        assert_eq!(za.elements.len(), 2);
    }

    #[test]
    fn stable_lengths() {
        let m = GroupModel::dihedral();
        assert_eq!(
            stable_length(&m, &m.parse("ab").unwrap(), 5).estimate,
            Q::from_integer(2.into())
        );
        let md = GroupModel::modular();
        assert!(stable_length(&md, &md.parse("a").unwrap(), 4)
            .estimate
            .is_zero());
    }
}
