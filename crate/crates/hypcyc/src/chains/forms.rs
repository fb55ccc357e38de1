//! Algebraic differential forms `g₀ dg₁ … dgₙ` over the group ring, where the
//! head may also be the formal unit adjoined to the algebra. Forms with a
//! group-element head double as elementary tensors `g₀ ⊗ … ⊗ gₙ`.

use std::fmt;

use num_traits::One;

use super::bar::sign;
use super::Chain;
use crate::group::{Elem, GroupModel};
use crate::Q;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Head {
    Unit,
    G(Elem),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Form {
    pub head: Head,
    pub tail: Vec<Elem>,
}

pub type FormChain = Chain<Form>;

impl Form {
    pub fn new(head: Elem, tail: Vec<Elem>) -> Self {
        Form {
            head: Head::G(head),
            tail,
        }
    }

    pub fn unit(tail: Vec<Elem>) -> Self {
        Form {
            head: Head::Unit,
            tail,
        }
    }

    /// The tensor `g₀ ⊗ g₁ ⊗ … ⊗ gₙ`.
    pub fn tensor(entries: &[Elem]) -> Self {
        Form::new(entries[0].clone(), entries[1..].to_vec())
    }

    pub fn degree(&self) -> usize {
        self.tail.len()
    }

    /// The entries `g₀,…,gₙ`, reading a formal-unit head as `e`.
    pub fn entries(&self) -> Vec<Elem> {
        let mut out = Vec::with_capacity(self.tail.len() + 1);
        out.push(match &self.head {
            Head::Unit => Elem::identity(),
            Head::G(g) => g.clone(),
        });
        out.extend_from_slice(&self.tail);
        out
    }

    pub fn product(&self, model: &GroupModel) -> Elem {
        self.entries()
            .iter()
            .fold(Elem::identity(), |acc, g| model.mul(&acc, g))
    }

    /// Conjugacy class label: the canonical representative of the class of
    /// `g₀g₁⋯gₙ`.
    pub fn class_label(&self, model: &GroupModel) -> Elem {
        model.class_rep(&self.product(model))
    }

    /// Total letter length `Σ ℓ(gᵢ)`, the truncation gauge for form complexes.
    pub fn letter_length(&self, model: &GroupModel) -> u32 {
        self.entries().iter().map(|g| model.len(g)).sum()
    }

    pub fn is_degenerate(&self) -> bool {
        self.tail.iter().any(|g| g.is_identity())
    }

    pub fn display(&self, model: &GroupModel) -> String {
        let mut s = match &self.head {
            Head::Unit => String::from("1"),
            Head::G(g) => model.format(g),
        };
        for g in &self.tail {
            s.push_str(" d");
            s.push_str(&model.format(g));
        }
        s
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

fn times_head(model: &GroupModel, h: &Head, g: &Elem, head_first: bool) -> Elem {
    match h {
        Head::Unit => g.clone(),
        Head::G(x) if head_first => model.mul(x, g),
        Head::G(x) => model.mul(g, x),
    }
}

/// Hochschild boundary on unreduced forms:
/// `b(a⁰da¹…daⁿ) = a⁰a¹da²…daⁿ + Σᵢ(−1)ⁱ a⁰…d(aⁱaⁱ⁺¹)… + (−1)ⁿ aⁿa⁰da¹…daⁿ⁻¹`.
pub fn hochschild_b(model: &GroupModel, c: &FormChain) -> FormChain {
    let mut out = Chain::zero();
    for (f, q) in c.iter() {
        let n = f.tail.len();
        if n == 0 {
            continue;
        }
        out.add_term(
            Form::new(
                times_head(model, &f.head, &f.tail[0], true),
                f.tail[1..].to_vec(),
            ),
            q.clone(),
        );
        for i in 1..n {
            let mut tail = Vec::with_capacity(n - 1);
            tail.extend_from_slice(&f.tail[..i - 1]);
            tail.push(model.mul(&f.tail[i - 1], &f.tail[i]));
            tail.extend_from_slice(&f.tail[i + 1..]);
            out.add_term(
                Form {
                    head: f.head.clone(),
                    tail,
                },
                q * sign(i),
            );
        }
        let last = times_head(model, &f.head, &f.tail[n - 1], false);
        out.add_term(Form::new(last, f.tail[..n - 1].to_vec()), q * sign(n));
    }
    out
}

/// Connes' operator `B(a⁰da¹…daⁿ) = Σᵢ (−1)^{in} daⁱ…daⁿda⁰…daⁱ⁻¹`, zero on
/// forms with formal-unit head.
pub fn connes_b(c: &FormChain) -> FormChain {
    let mut out = Chain::zero();
    for (f, q) in c.iter() {
        let Head::G(h) = &f.head else { continue };
        let n = f.tail.len();
        let mut entries = Vec::with_capacity(n + 1);
        entries.push(h.clone());
        entries.extend_from_slice(&f.tail);
        for i in 0..=n {
            let mut tail = entries[i..].to_vec();
            tail.extend_from_slice(&entries[..i]);
            out.add_term(Form::unit(tail), q * sign(i * n));
        }
    }
    out
}

/// Cyclic operator on tensors `T(a⁰⊗…⊗aⁿ) = (−1)ⁿ aⁿ⊗a⁰⊗…⊗aⁿ⁻¹`.
pub fn cyclic_t(c: &FormChain) -> FormChain {
    c.map_basis(|f| {
        let e = f.entries();
        let n = e.len() - 1;
        let mut r = Vec::with_capacity(n + 1);
        r.push(e[n].clone());
        r.extend_from_slice(&e[..n]);
        Some((Form::tensor(&r), sign(n)))
    })
}

/// Projection to reduced forms: a formal-unit head becomes `e` and forms
/// with `de` in the tail vanish.
pub fn reduce(c: &FormChain) -> FormChain {
    c.map_basis(|f| {
        if f.is_degenerate() {
            return None;
        }
        let head = match &f.head {
            Head::Unit => Head::G(Elem::identity()),
            h => h.clone(),
        };
        Some((
            Form {
                head,
                tail: f.tail.clone(),
            },
            Q::one(),
        ))
    })
}

/// `b` on the reduced complex.
pub fn reduced_b(model: &GroupModel, c: &FormChain) -> FormChain {
    reduce(&hochschild_b(model, c))
}

/// `B` on the reduced complex.
pub fn reduced_connes_b(c: &FormChain) -> FormChain {
    reduce(&connes_b(c))
}

pub fn homogeneous_component(model: &GroupModel, c: &FormChain, class_rep: &Elem) -> FormChain {
    let rep = model.class_rep(class_rep);
    c.filter(|f| f.class_label(model) == rep)
}

/// Every reduced form `g₀dg₁…dgₙ` (with `gᵢ ≠ e` for `i ≥ 1`) of degree `n`
/// and total letter length at most `cap`. With `class` set, only that
/// homogeneous component is listed.
pub fn reduced_forms(model: &GroupModel, n: usize, cap: u32, class: Option<&Elem>) -> Vec<Form> {
    let ball = crate::ball::CayleyBall::new(model, cap).expect("form enumeration ball");
    let mut by_len: Vec<Vec<Elem>> = vec![Vec::new(); cap as usize + 1];
    for g in ball.elements() {
        by_len[model.len(g) as usize].push(g.clone());
    }
    let target = class.map(|v| {
        let rep = model.class_rep(v);
        let members: Vec<Elem> = ball
            .elements()
            .iter()
            .filter(|g| model.class_rep(g) == rep)
            .cloned()
            .collect();
        (rep, members)
    });
    let mut out = Vec::new();
    let mut stack: Vec<Elem> = Vec::new();
    let ctx = FormEnum { model, slots: n + 1, by_len: &by_len, target: &target };
    ctx.fill(cap, &Elem::identity(), &mut stack, &mut out);
    out
}

struct FormEnum<'a> {
    model: &'a GroupModel,
    slots: usize,
    by_len: &'a [Vec<Elem>],
    /// Class representative and its members inside the enumeration ball.
    target: &'a Option<(Elem, Vec<Elem>)>,
}

impl FormEnum<'_> {
    fn fill(&self, budget: u32, prefix: &Elem, stack: &mut Vec<Elem>, out: &mut Vec<Form>) {
        let start = if stack.is_empty() { 0 } else { 1 };
        if stack.len() + 1 == self.slots {
            if let Some((_, members)) = self.target {
                // the last entry is forced by the class: prefix·g = member
                let inv = self.model.inv(prefix);
                let mut last: Vec<Elem> = members
                    .iter()
                    .map(|u| self.model.mul(&inv, u))
                    .filter(|g| (start..=budget as usize).contains(&(self.model.len(g) as usize)))
                    .collect();
                last.sort_by(|x, y| self.model.shortlex(x, y));
                for g in last {
                    stack.push(g);
                    out.push(Form::tensor(stack));
                    stack.pop();
                }
                return;
            }
        }
        if stack.len() == self.slots {
            out.push(Form::tensor(stack));
            return;
        }
        for l in start..=budget as usize {
            for g in &self.by_len[l] {
                stack.push(g.clone());
                let next = self.model.mul(prefix, g);
                self.fill(budget - l as u32, &next, stack, out);
                stack.pop();
            }
        }
    }
}
