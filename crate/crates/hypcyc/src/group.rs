//! Group models with solvable word problems.
//!
//! Every supported model is a free product of cyclic factors: a free group is
//! a product of copies of ℤ, a finite cyclic group has one factor, and the
//! infinite dihedral group is ℤ/2 ∗ ℤ/2. Elements are stored as alternating
//! syllables, which is the unique normal form.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{invalid, Result};

pub const DEFAULT_BALL_CAP: usize = 50_000;

/// One syllable `x_factor^exp`. For a finite factor of order n the exponent
/// lies in `1..n`; for an infinite factor it is a nonzero integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Syl {
    pub factor: u8,
    pub exp: i32,
}

/// A group element in normal form. Interpret it only through the model that
/// produced it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub SmallVec<[Syl; 4]>);

impl Elem {
    pub fn identity() -> Self {
        Elem(SmallVec::new())
    }
    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }
    pub fn syllables(&self) -> &[Syl] {
        &self.0
    }
}

/// A generator letter: factor index plus orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub factor: u8,
    pub inverse: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelKind {
    FreeGroup { rank: u32 },
    FiniteCyclic { order: u32 },
    FreeProduct { factors: Vec<u32> },
    InfiniteDihedral,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupModel {
    kind: ModelKind,
    /// Factor orders, with 0 standing for ℤ.
    orders: Vec<u32>,
    names: Vec<char>,
    alphabet: Vec<Letter>,
    pub ball_cap: usize,
}

fn default_names(count: usize) -> Vec<char> {
    "abcdfghijkmnopqrsuvwxyz".chars().take(count).collect()
}

impl GroupModel {
    pub fn new(kind: ModelKind) -> Result<Self> {
        let (orders, names) = match &kind {
            ModelKind::FreeGroup { rank } => {
                if *rank == 0 || *rank > 20 {
                    return invalid(format!("free group rank {rank} outside 1..=20"));
                }
                (vec![0; *rank as usize], default_names(*rank as usize))
            }
            ModelKind::FiniteCyclic { order } => {
                if *order == 0 {
                    return invalid("cyclic order must be at least 1");
                }
                (vec![*order], vec!['t'])
            }
            ModelKind::FreeProduct { factors } => {
                if factors.is_empty() || factors.len() > 20 {
                    return invalid("free product needs between 1 and 20 factors");
                }
                if factors.contains(&0) {
                    return invalid("free product factors must be finite cyclic orders");
                }
                let names = if factors == &[2, 3] {
                    vec!['a', 't']
                } else {
                    default_names(factors.len())
                };
                (factors.clone(), names)
            }
            ModelKind::InfiniteDihedral => (vec![2, 2], vec!['a', 'b']),
        };
        Self::build(kind, orders, names)
    }

    /// Same model with caller-chosen generator names (lowercase letters).
    pub fn with_names(mut self, names: &[char]) -> Result<Self> {
        if names.len() != self.orders.len() {
            return invalid("one name per factor required");
        }
        if names.iter().any(|c| !c.is_ascii_lowercase() || *c == 'e') {
            return invalid("generator names must be lowercase letters other than e");
        }
        let mut sorted = names.to_vec();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != names.len() {
            return invalid("generator names must be distinct");
        }
        self.names = names.to_vec();
        Ok(self)
    }

    fn build(kind: ModelKind, orders: Vec<u32>, names: Vec<char>) -> Result<Self> {
        let mut alphabet = Vec::new();
        for (f, &n) in orders.iter().enumerate() {
            match n {
                1 => {}
                2 => alphabet.push(Letter {
                    factor: f as u8,
                    inverse: false,
                }),
                _ => {
                    alphabet.push(Letter {
                        factor: f as u8,
                        inverse: false,
                    });
                    alphabet.push(Letter {
                        factor: f as u8,
                        inverse: true,
                    });
                }
            }
        }
        Ok(GroupModel {
            kind,
            orders,
            names,
            alphabet,
            ball_cap: DEFAULT_BALL_CAP,
        })
    }

    pub fn free_group(rank: u32) -> Self {
        Self::new(ModelKind::FreeGroup { rank }).expect("valid rank")
    }
    pub fn cyclic(order: u32) -> Self {
        Self::new(ModelKind::FiniteCyclic { order }).expect("valid order")
    }
    pub fn free_product(factors: &[u32]) -> Self {
        Self::new(ModelKind::FreeProduct {
            factors: factors.to_vec(),
        })
        .expect("valid factors")
    }
    pub fn dihedral() -> Self {
        Self::new(ModelKind::InfiniteDihedral).expect("valid")
    }
    /// ℤ/2 ∗ ℤ/3 with generators a (order 2) and t (order 3).
    pub fn modular() -> Self {
        Self::free_product(&[2, 3])
    }

    pub fn kind(&self) -> &ModelKind {
        &self.kind
    }
    pub fn orders(&self) -> &[u32] {
        &self.orders
    }
    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }
    pub fn is_finite(&self) -> bool {
        self.order_of_group().is_some()
    }

    /// Order of the whole group when it is finite.
    pub fn order_of_group(&self) -> Option<u64> {
        let nontrivial: Vec<u32> = self.orders.iter().copied().filter(|&n| n != 1).collect();
        match nontrivial.len() {
            0 => Some(1),
            1 if nontrivial[0] != 0 => Some(nontrivial[0] as u64),
            _ => None,
        }
    }

    pub fn name(&self) -> String {
        match &self.kind {
            ModelKind::FreeGroup { rank } => format!("F{rank}"),
            ModelKind::FiniteCyclic { order } => format!("Z{order}"),
            ModelKind::FreeProduct { factors } => factors
                .iter()
                .map(|n| format!("Z{n}"))
                .collect::<Vec<_>>()
                .join("*"),
            ModelKind::InfiniteDihedral => "Dinf".to_string(),
        }
    }

    pub fn identity(&self) -> Elem {
        Elem::identity()
    }

    fn reduce_exp(&self, factor: u8, exp: i64) -> i32 {
        let n = self.orders[factor as usize];
        if n == 0 {
            exp as i32
        } else {
            exp.rem_euclid(n as i64) as i32
        }
    }

    pub fn letter_elem(&self, l: Letter) -> Elem {
        let e = self.reduce_exp(l.factor, if l.inverse { -1 } else { 1 });
        let mut w = SmallVec::new();
        if e != 0 {
            w.push(Syl {
                factor: l.factor,
                exp: e,
            });
        }
        Elem(w)
    }

    /// Generators as elements, in alphabet order.
    pub fn generators(&self) -> Vec<Elem> {
        self.alphabet.iter().map(|&l| self.letter_elem(l)).collect()
    }

    fn check_syl(&self, s: Syl) -> bool {
        let Some(&n) = self.orders.get(s.factor as usize) else {
            return false;
        };
        if n == 0 {
            s.exp != 0
        } else {
            s.exp > 0 && (s.exp as u32) < n
        }
    }

    /// Whether a raw syllable sequence is already in normal form for this model.
    pub fn is_normal(&self, g: &Elem) -> bool {
        g.0.iter().all(|&s| self.check_syl(s)) && g.0.windows(2).all(|w| w[0].factor != w[1].factor)
    }

    fn push_syl(&self, w: &mut SmallVec<[Syl; 4]>, s: Syl) {
        let mut cur = s;
        loop {
            match w.last() {
                Some(last) if last.factor == cur.factor => {
                    let last = w.pop().expect("nonempty");
                    let e = self.reduce_exp(cur.factor, last.exp as i64 + cur.exp as i64);
                    if e == 0 {
                        return;
                    }
                    cur = Syl {
                        factor: cur.factor,
                        exp: e,
                    };
                }
                _ => {
                    w.push(cur);
                    return;
                }
            }
        }
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        let mut w = x.0.clone();
        let mut i = 0;
        while i < y.0.len() {
            let s = y.0[i];
            match w.last() {
                Some(l) if l.factor == s.factor => {
                    let l = w.pop().expect("nonempty");
                    let e = self.reduce_exp(s.factor, l.exp as i64 + s.exp as i64);
                    i += 1;
                    if e != 0 {
                        w.push(Syl {
                            factor: s.factor,
                            exp: e,
                        });
                        break;
                    }
                }
                _ => break,
            }
        }
        w.extend_from_slice(&y.0[i..]);
        Elem(w)
    }

    pub fn mul3(&self, x: &Elem, y: &Elem, z: &Elem) -> Elem {
        self.mul(&self.mul(x, y), z)
    }

    pub fn inv(&self, x: &Elem) -> Elem {
        Elem(
            x.0.iter()
                .rev()
                .map(|s| Syl {
                    factor: s.factor,
                    exp: self.reduce_exp(s.factor, -(s.exp as i64)),
                })
                .collect(),
        )
    }

    /// x⁻¹·y, the element realizing the distance from x to y.
    pub fn between(&self, x: &Elem, y: &Elem) -> Elem {
        self.mul(&self.inv(x), y)
    }

    pub fn conj(&self, g: &Elem, v: &Elem) -> Elem {
        self.mul3(g, v, &self.inv(g))
    }

    pub fn pow(&self, x: &Elem, k: i64) -> Elem {
        let base = if k < 0 { self.inv(x) } else { x.clone() };
        let mut out = Elem::identity();
        for _ in 0..k.unsigned_abs() {
            out = self.mul(&out, &base);
        }
        out
    }

    fn syl_len(&self, s: Syl) -> u32 {
        let n = self.orders[s.factor as usize];
        if n == 0 {
            s.exp.unsigned_abs()
        } else {
            let k = s.exp as u32;
            k.min(n - k)
        }
    }

    /// Word length with respect to the symmetric alphabet.
    pub fn len(&self, x: &Elem) -> u32 {
        x.0.iter().map(|&s| self.syl_len(s)).sum()
    }

    pub fn dist(&self, x: &Elem, y: &Elem) -> u32 {
        self.len(&self.between(x, y))
    }

    /// Expand the normal form into generator letters (a geodesic word).
    pub fn letters(&self, x: &Elem) -> Vec<Letter> {
        let mut out = Vec::new();
        for &s in x.0.iter() {
            let n = self.orders[s.factor as usize];
            let (count, inverse) = if n == 0 {
                (s.exp.unsigned_abs(), s.exp < 0)
            } else {
                let k = s.exp as u32;
                if k <= n - k {
                    (k, false)
                } else {
                    (n - k, true)
                }
            };
            let inverse = inverse && n != 2;
            for _ in 0..count {
                out.push(Letter {
                    factor: s.factor,
                    inverse,
                });
            }
        }
        out
    }

    fn letter_rank(&self, l: &Letter) -> usize {
        self.alphabet
            .iter()
            .position(|a| a == l)
            .unwrap_or(usize::MAX)
    }

    /// Shortlex order: word length first, then letters in alphabet order.
    /// This is the order in which balls list their elements.
    pub fn shortlex(&self, x: &Elem, y: &Elem) -> Ordering {
        self.len(x).cmp(&self.len(y)).then_with(|| {
            let lx: Vec<usize> = self
                .letters(x)
                .iter()
                .map(|l| self.letter_rank(l))
                .collect();
            let ly: Vec<usize> = self
                .letters(y)
                .iter()
                .map(|l| self.letter_rank(l))
                .collect();
            lx.cmp(&ly)
        })
    }

    /// The unique normal form of a raw letter sequence.
    pub fn normalize(&self, letters: &[Letter]) -> Result<Elem> {
        let mut w: SmallVec<[Syl; 4]> = SmallVec::new();
        for &l in letters {
            if !self.alphabet.contains(&l) {
                return invalid(format!(
                    "letter {l:?} not in the alphabet of {}",
                    self.name()
                ));
            }
            let e = self.reduce_exp(l.factor, if l.inverse { -1 } else { 1 });
            if e != 0 {
                self.push_syl(
                    &mut w,
                    Syl {
                        factor: l.factor,
                        exp: e,
                    },
                );
            }
        }
        Ok(Elem(w))
    }

    pub fn letter_char(&self, l: Letter) -> char {
        let c = self.names[l.factor as usize];
        if l.inverse {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }

    pub fn parse_letters(&self, s: &str) -> Result<Vec<Letter>> {
        let s = s.trim();
        if s == "e" || s.is_empty() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for c in s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '.' && *c != '*')
        {
            let lower = c.to_ascii_lowercase();
            let Some(f) = self.names.iter().position(|&n| n == lower) else {
                return invalid(format!("unknown letter '{c}' for {}", self.name()));
            };
            let l = Letter {
                factor: f as u8,
                inverse: c.is_ascii_uppercase(),
            };
            if !self.alphabet.contains(&l) {
                // an involution written in upper case is its own inverse
                if self.orders[f] == 2 {
                    out.push(Letter {
                        factor: f as u8,
                        inverse: false,
                    });
                    continue;
                }
                return invalid(format!(
                    "letter '{c}' not in the alphabet of {}",
                    self.name()
                ));
            }
            out.push(l);
        }
        Ok(out)
    }

    /// Parse a word such as `abA` (upper case = inverse) or `e`.
    pub fn parse(&self, s: &str) -> Result<Elem> {
        let letters = self.parse_letters(s)?;
        self.normalize(&letters)
    }

    pub fn format(&self, x: &Elem) -> String {
        if x.is_identity() {
            return "e".to_string();
        }
        self.letters(x)
            .into_iter()
            .map(|l| self.letter_char(l))
            .collect()
    }

    /// Conjugate `x` to a cyclically reduced element. Returns `(c, r)` with
    /// `x = c·r·c⁻¹` and `r` cyclically reduced.
    pub fn cyclic_reduce(&self, x: &Elem) -> (Elem, Elem) {
        let mut r = x.clone();
        let mut c = Elem::identity();
        while r.0.len() >= 2 && r.0[0].factor == r.0[r.0.len() - 1].factor {
            let first = Elem(SmallVec::from_slice(&r.0[..1]));
            c = self.mul(&c, &first);
            r = self.mul3(&self.inv(&first), &r, &first);
        }
        (c, r)
    }

    /// Canonical representative of the conjugacy class of `x`: the shortlex
    /// least cyclic rotation of its cyclic reduction. It has minimal length
    /// in the class.
    pub fn class_rep(&self, x: &Elem) -> Elem {
        let (_, r) = self.cyclic_reduce(x);
        if r.0.len() < 2 {
            return r;
        }
        let k = r.0.len();
        let mut best = r.clone();
        for i in 1..k {
            let mut w: SmallVec<[Syl; 4]> = SmallVec::with_capacity(k);
            w.extend_from_slice(&r.0[i..]);
            w.extend_from_slice(&r.0[..i]);
            let cand = Elem(w);
            if self.shortlex(&cand, &best) == Ordering::Less {
                best = cand;
            }
        }
        best
    }

    pub fn conjugate_in_group(&self, x: &Elem, y: &Elem) -> bool {
        self.class_rep(x) == self.class_rep(y)
    }

    /// Order of `x` when finite, decided from the normal form: an element has
    /// finite order exactly when it is conjugate into a finite factor.
    pub fn torsion_order(&self, x: &Elem) -> Option<u64> {
        let (_, r) = self.cyclic_reduce(x);
        match r.0.len() {
            0 => Some(1),
            1 => {
                let s = r.0[0];
                let n = self.orders[s.factor as usize];
                if n == 0 {
                    None
                } else {
                    let g = num_integer::gcd(s.exp as u64, n as u64);
                    Some(n as u64 / g)
                }
            }
            _ => None,
        }
    }

    pub fn is_torsion(&self, x: &Elem) -> bool {
        self.torsion_order(x).is_some()
    }
}

impl fmt::Display for GroupModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// An element bundled with its model, for callers that mix models.
#[derive(Clone, Debug)]
pub struct GroupElement {
    pub model: Arc<GroupModel>,
    pub word: Elem,
}

impl GroupElement {
    pub fn new(model: Arc<GroupModel>, letters: &[Letter]) -> Result<Self> {
        let word = model.normalize(letters)?;
        Ok(GroupElement { model, word })
    }

    fn same_model(&self, other: &GroupElement) -> Result<()> {
        if Arc::ptr_eq(&self.model, &other.model) || *self.model == *other.model {
            Ok(())
        } else {
            invalid(format!("model mismatch: {} vs {}", self.model, other.model))
        }
    }

    pub fn multiply(&self, other: &GroupElement) -> Result<GroupElement> {
        self.same_model(other)?;
        Ok(GroupElement {
            model: self.model.clone(),
            word: self.model.mul(&self.word, &other.word),
        })
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            model: self.model.clone(),
            word: self.model.inv(&self.word),
        }
    }

    pub fn length(&self) -> u32 {
        self.model.len(&self.word)
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        *self.model == *other.model && self.word == other.word
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.model.format(&self.word))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction() {
        let g = GroupModel::free_group(2);
        assert_eq!(g.format(&g.parse("aAb").unwrap()), "b");
        assert_eq!(g.format(&g.inv(&g.parse("ab").unwrap())), "BA");
    }

    #[test]
    fn cyclic_exponents() {
        let g = GroupModel::cyclic(3);
        assert_eq!(g.parse("tttt").unwrap(), g.parse("t").unwrap());
        assert_eq!(g.len(&g.parse("tt").unwrap()), 1);
        assert_eq!(g.format(&g.parse("tt").unwrap()), "T");
    }

    #[test]
    fn dihedral_relations() {
        let g = GroupModel::dihedral();
        assert_eq!(g.format(&g.parse("aaba").unwrap()), "ba");
    }

    #[test]
    fn modular_product() {
        let g = GroupModel::modular();
        let x = g.parse("at").unwrap();
        let y = g.parse("tt").unwrap();
        assert_eq!(g.format(&g.mul(&x, &y)), "a");
    }

    #[test]
    fn unknown_letter_rejected() {
        let g = GroupModel::free_group(2);
        assert!(g.parse("az").is_err());
        let l = Letter {
            factor: 5,
            inverse: false,
        };
        assert!(g.normalize(&[l]).is_err());
    }

    #[test]
    fn class_reps_are_minimal() {
        let g = GroupModel::free_group(2);
        let x = g.parse("abA").unwrap();
        assert_eq!(g.class_rep(&x), g.parse("b").unwrap());
        let m = GroupModel::modular();
        let t = m.parse("atA").unwrap();
        assert_eq!(m.torsion_order(&t), Some(3));
        assert_eq!(m.torsion_order(&m.parse("at").unwrap()), None);
    }

    #[test]
    fn model_mismatch_is_an_error() {
        let f = Arc::new(GroupModel::free_group(2));
        let c = Arc::new(GroupModel::cyclic(3));
        let x = GroupElement::new(
            f,
            &[Letter {
                factor: 0,
                inverse: false,
            }],
        )
        .unwrap();
        let y = GroupElement::new(
            c,
            &[Letter {
                factor: 0,
                inverse: false,
            }],
        )
        .unwrap();
        assert!(x.multiply(&y).is_err());
    }
}
