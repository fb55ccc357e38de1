use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{Elem, GroupModel};

/// Above this many elements the distance table is computed on demand.
const TABLE_LIMIT: usize = 4096;

/// The ball `{g : ℓ(g) ≤ R}` listed in shortlex order, with its word metric.
#[derive(Clone, Debug)]
pub struct CayleyBall {
    pub radius: u32,
    elements: Vec<Elem>,
    index: HashMap<Elem, usize>,
    lengths: Vec<u32>,
    table: Option<Vec<u16>>,
}

impl CayleyBall {
    pub fn new(model: &GroupModel, radius: u32) -> Result<Self> {
        let mut elements = vec![Elem::identity()];
        let mut index = HashMap::new();
        index.insert(Elem::identity(), 0usize);
        let mut frontier = vec![Elem::identity()];
        let gens = model.generators();
        for k in 0..radius {
            let mut next = Vec::new();
            for g in &frontier {
                for s in &gens {
                    let h = model.mul(g, s);
                    if model.len(&h) == k + 1 && !index.contains_key(&h) {
                        index.insert(h.clone(), usize::MAX);
                        next.push(h);
                    }
                }
            }
            if elements.len() + next.len() > model.ball_cap {
                return Err(Error::ResourceLimit(format!(
                    "ball of radius {radius} in {} exceeds {} elements",
                    model.name(),
                    model.ball_cap
                )));
            }
            next.sort_by(|a, b| model.shortlex(a, b));
            for h in &next {
                index.insert(h.clone(), elements.len());
                elements.push(h.clone());
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        let lengths: Vec<u32> = elements.iter().map(|g| model.len(g)).collect();
        let n = elements.len();
        let table = if n <= TABLE_LIMIT {
            let mut t = vec![0u16; n * n];
            for i in 0..n {
                let gi = model.inv(&elements[i]);
                for j in (i + 1)..n {
                    let d = model.len(&model.mul(&gi, &elements[j])) as u16;
                    t[i * n + j] = d;
                    t[j * n + i] = d;
                }
            }
            Some(t)
        } else {
            None
        };
        Ok(CayleyBall {
            radius,
            elements,
            index,
            lengths,
            table,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }
    pub fn elem(&self, i: usize) -> &Elem {
        &self.elements[i]
    }
    pub fn index_of(&self, g: &Elem) -> Option<usize> {
        self.index.get(g).copied()
    }
    pub fn contains(&self, g: &Elem) -> bool {
        self.index.contains_key(g)
    }
    pub fn length(&self, i: usize) -> u32 {
        self.lengths[i]
    }
    /// Elements on the boundary sphere, where truncation effects appear.
    pub fn on_boundary(&self, i: usize) -> bool {
        self.lengths[i] == self.radius
    }

    pub fn dist(&self, model: &GroupModel, i: usize, j: usize) -> u32 {
        match &self.table {
            Some(t) => t[i * self.elements.len() + j] as u32,
            None => model.dist(&self.elements[i], &self.elements[j]),
        }
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    /// Shortlex comparison of two ball elements by index.
    pub fn index_order(&self, i: usize, j: usize) -> Ordering {
        i.cmp(&j)
    }

    pub fn sphere_sizes(&self) -> Vec<usize> {
        let mut out = vec![0usize; self.radius as usize + 1];
        for &l in &self.lengths {
            out[l as usize] += 1;
        }
        while out.len() > 1 && *out.last().unwrap() == 0 {
            out.pop();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_balls() {
        assert_eq!(
            CayleyBall::new(&GroupModel::free_group(2), 2)
                .unwrap()
                .len(),
            17
        );
        assert_eq!(
            CayleyBall::new(&GroupModel::cyclic(3), 10).unwrap().len(),
            3
        );
        assert_eq!(
            CayleyBall::new(&GroupModel::dihedral(), 3).unwrap().len(),
            7
        );
    }

    #[test]
    fn cap_is_enforced() {
        let mut m = GroupModel::free_group(2);
        m.ball_cap = 100;
        assert!(matches!(
            CayleyBall::new(&m, 4),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn shortlex_listing() {
        let m = GroupModel::free_group(2);
        let b = CayleyBall::new(&m, 1).unwrap();
        let names: Vec<String> = b.elements().iter().map(|g| m.format(g)).collect();
        assert_eq!(names, ["e", "a", "A", "b", "B"]);
    }
}
