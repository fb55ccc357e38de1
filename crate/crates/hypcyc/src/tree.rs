//! Approximating trees of finite pointed metric spaces, the maps between a
//! hull in the Cayley graph and the integer points of the tree, and the
//! contracting homotopy of the Bar complex of a tree.
//!
//! A tree point is `(i, t)`: the point at height `t` on the segment from the
//! base to the image of the `i`-th input point. Two segments share their
//! points up to height `mᵢⱼ`, the max-min chained Gromov product, and a point
//! is stored under the smallest segment index that contains it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use crate::ball::CayleyBall;
use crate::chains::bar::{self, BarChain};
use crate::chains::Chain;
use crate::error::{invalid, Result};
use crate::geometry::{geodesic_hull, interval_layers};
use crate::group::{Elem, GroupModel};
use crate::Q;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreePoint {
    pub seg: usize,
    pub t: Q,
}

#[derive(Clone, Debug)]
pub struct ApproxTree {
    pub base: usize,
    heights: Vec<Q>,
    merge: Vec<Vec<Q>>,
}

fn min_q(a: &Q, b: &Q) -> Q {
    if a < b {
        a.clone()
    } else {
        b.clone()
    }
}

impl ApproxTree {
    /// Gromov-product construction over an exact rational metric.
    pub fn new(dist: &[Vec<Q>], base: usize) -> Result<Self> {
        let n = dist.len();
        if base >= n.max(1) {
            return invalid("base point outside the metric space");
        }
        if dist.iter().any(|row| row.len() != n) {
            return invalid("distance matrix is not square");
        }
        let heights: Vec<Q> = (0..n).map(|i| dist[base][i].clone()).collect();
        let half = Q::new(1.into(), 2.into());
        let mut merge = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                merge[i][j] = if i == j {
                    heights[i].clone()
                } else {
                    &half * (&heights[i] + &heights[j] - &dist[i][j])
                };
            }
        }
        // max-min closure: the best chain of Gromov products
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let via = min_q(&merge[i][k], &merge[k][j]);
                    if via > merge[i][j] {
                        merge[i][j] = via;
                    }
                }
            }
        }
        Ok(ApproxTree {
            base,
            heights,
            merge,
        })
    }

    pub fn len(&self) -> usize {
        self.heights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heights.is_empty()
    }

    pub fn height(&self, i: usize) -> &Q {
        &self.heights[i]
    }

    /// Height up to which segments `i` and `j` coincide.
    pub fn merge_height(&self, i: usize, j: usize) -> &Q {
        &self.merge[i][j]
    }

    pub fn point(&self, seg: usize, t: Q) -> Result<TreePoint> {
        if t.is_negative() || t > self.heights[seg] {
            return invalid(format!("height {t} outside segment {seg}"));
        }
        let seg = (0..=seg).find(|&j| t <= self.merge[seg][j]).unwrap_or(seg);
        Ok(TreePoint { seg, t })
    }

    /// Image `Φ(xᵢ)`.
    pub fn phi(&self, i: usize) -> TreePoint {
        self.point(i, self.heights[i].clone())
            .expect("endpoint lies on its segment")
    }

    pub fn root(&self) -> TreePoint {
        TreePoint {
            seg: 0,
            t: Q::zero(),
        }
    }

    pub fn dist(&self, x: &TreePoint, y: &TreePoint) -> Q {
        let meet = min_q(&min_q(&x.t, &y.t), &self.merge[x.seg][y.seg]);
        &x.t + &y.t - meet.clone() - meet
    }

    /// Integer-height points `T′`, canonical and deduplicated.
    pub fn integer_points(&self) -> Vec<TreePoint> {
        let mut out = BTreeSet::new();
        for i in 0..self.len() {
            let top = self.heights[i].floor().to_integer();
            let mut k = num_bigint::BigInt::zero();
            while k <= top {
                out.insert(self.point(i, Q::from_integer(k.clone())).unwrap());
                k += 1;
            }
        }
        out.into_iter().collect()
    }

    /// Explicit edge-weighted tree: vertices at the root, the images of the
    /// input points and all branch points.
    pub fn metric_tree(&self) -> MetricTree {
        let n = self.len();
        let mut vertices: BTreeSet<TreePoint> = BTreeSet::new();
        vertices.insert(self.root());
        let mut per_seg: Vec<BTreeSet<Q>> = vec![BTreeSet::new(); n];
        for (i, hs) in per_seg.iter_mut().enumerate() {
            hs.insert(Q::zero());
            hs.insert(self.heights[i].clone());
            for j in 0..n {
                hs.insert(self.merge[i][j].clone());
            }
        }
        let mut edges = BTreeSet::new();
        for (i, hs) in per_seg.iter().enumerate() {
            let pts: Vec<TreePoint> = hs
                .iter()
                .map(|t| self.point(i, t.clone()).unwrap())
                .collect();
            for p in &pts {
                vertices.insert(p.clone());
            }
            for w in pts.windows(2) {
                edges.insert((w[0].clone(), w[1].clone()));
            }
        }
        let vertices: Vec<TreePoint> = vertices.into_iter().collect();
        let index: BTreeMap<&TreePoint, usize> =
            vertices.iter().enumerate().map(|(k, p)| (p, k)).collect();
        let edges = edges
            .iter()
            .map(|(a, b)| (index[a], index[b], self.dist(a, b)))
            .collect();
        MetricTree {
            base: index[&self.root()],
            vertices: vertices.clone(),
            edges,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MetricTree {
    pub vertices: Vec<TreePoint>,
    pub edges: Vec<(usize, usize, Q)>,
    pub base: usize,
}

impl MetricTree {
    /// Path-length distances from one vertex, by walking the edge list.
    pub fn distances_from(&self, from: usize) -> Vec<Option<Q>> {
        let mut adj: Vec<Vec<(usize, &Q)>> = vec![Vec::new(); self.vertices.len()];
        for (a, b, l) in &self.edges {
            adj[*a].push((*b, l));
            adj[*b].push((*a, l));
        }
        let mut out = vec![None; self.vertices.len()];
        out[from] = Some(Q::zero());
        let mut stack = vec![from];
        while let Some(x) = stack.pop() {
            let dx = out[x].clone().unwrap();
            for &(y, l) in &adj[x] {
                if out[y].is_none() {
                    out[y] = Some(&dx + l);
                    stack.push(y);
                }
            }
        }
        out
    }

    pub fn is_tree(&self) -> bool {
        let n = self.vertices.len();
        self.edges.len() + 1 == n
            && self.edges.iter().all(|(_, _, l)| l.is_positive())
            && self.distances_from(self.base).iter().all(|d| d.is_some())
    }

    /// Edge-list export: one `v <id> <seg> <height>` line per vertex, one
    /// `e <id> <id> <length>` line per edge, and `base <id>`.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        for (k, p) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "v {k} {} {}", p.seg, p.t);
        }
        for (a, b, l) in &self.edges {
            let _ = writeln!(s, "e {a} {b} {l}");
        }
        let _ = writeln!(s, "base {}", self.base);
        s
    }
}

/// Approximating tree of a finite pointed metric space with the image of
/// each point. Spaces with fewer than two points give a single vertex.
pub fn approximating_tree(
    dist: &[Vec<Q>],
    base: usize,
) -> Result<(ApproxTree, MetricTree, Vec<TreePoint>)> {
    let tree = ApproxTree::new(dist, base)?;
    let images = (0..tree.len()).map(|i| tree.phi(i)).collect();
    let mt = tree.metric_tree();
    Ok((tree, mt, images))
}

/// The word metric on a finite subset, as rationals.
pub fn subset_metric(model: &GroupModel, points: &[Elem]) -> Vec<Vec<Q>> {
    points
        .iter()
        .map(|x| {
            points
                .iter()
                .map(|y| Q::from_integer(model.dist(x, y).into()))
                .collect()
        })
        .collect()
}

/// `k` with `|F| ≤ 2ᵏ + 2`, the exponent in the distortion bound.
pub fn distortion_exponent(size: usize) -> u32 {
    let mut k = 0;
    while (1usize << k) + 2 < size {
        k += 1;
    }
    k
}

/// Largest `d(x,x′) − d(Φx,Φx′)` over pairs, for checking against `2kδ`.
pub fn distortion(dist: &[Vec<Q>], tree: &ApproxTree) -> Q {
    let n = dist.len();
    let mut worst = Q::zero();
    for i in 0..n {
        for j in 0..n {
            let gap = &dist[i][j] - tree.dist(&tree.phi(i), &tree.phi(j));
            if gap > worst {
                worst = gap;
            }
        }
    }
    worst
}

/// `φ` and `ψ` for a finite subset `F` with base `F[0]`, computed from the
/// group model alone. Ties in `φ` go to the shortlex-smaller radial point,
/// then to the smaller segment.
#[derive(Clone, Debug)]
pub struct TreeMaps {
    pub tree: ApproxTree,
    radial: Vec<Vec<Vec<Elem>>>,
}

impl TreeMaps {
    pub fn new(model: &GroupModel, f: &[Elem]) -> Result<Self> {
        if f.is_empty() {
            return invalid("tree maps need a base point");
        }
        let tree = ApproxTree::new(&subset_metric(model, f), 0)?;
        let radial = f
            .iter()
            .map(|xj| interval_layers(model, &f[0], xj))
            .collect();
        Ok(TreeMaps { tree, radial })
    }

    pub fn phi(&self, model: &GroupModel, x: &Elem) -> TreePoint {
        let mut best: Option<(u32, &Elem, usize, usize)> = None;
        for (j, layers) in self.radial.iter().enumerate() {
            for (t, layer) in layers.iter().enumerate() {
                for z in layer {
                    let d = model.dist(x, z);
                    let better = match &best {
                        None => true,
                        Some((bd, bz, bj, _)) => d
                            .cmp(bd)
                            .then_with(|| model.shortlex(z, bz))
                            .then(j.cmp(bj))
                            .is_lt(),
                    };
                    if better {
                        best = Some((d, z, j, t));
                    }
                }
            }
        }
        let (_, _, j, t) = best.expect("the base lies on every radial interval");
        self.tree
            .point(j, Q::from_integer(t.into()))
            .expect("radial layer within segment")
    }

    pub fn psi(&self, y: &TreePoint) -> Elem {
        let t: usize = y.t.to_integer().try_into().unwrap_or(0);
        self.radial[y.seg][t][0].clone()
    }
}

/// The pair of maps between `geod_λ(F)` and the integer points `T′`.
#[derive(Clone, Debug)]
pub struct Roundtrip {
    pub tree: ApproxTree,
    pub hull: Vec<Elem>,
    /// `φ_λ(hull[i])`.
    pub phi: Vec<TreePoint>,
    /// `T′` with `ψ(y)`.
    pub psi: Vec<(TreePoint, Elem)>,
    pub constant: Q,
    pub truncated: bool,
}

impl Roundtrip {
    pub fn psi_of(&self, y: &TreePoint) -> Option<&Elem> {
        self.psi.iter().find(|(p, _)| p == y).map(|(_, g)| g)
    }
}

/// Build `φ_λ` and `ψ` for `F ⊂ Γ` with base `F[0]` and report the smallest
/// constant for which the three approximation inequalities hold.
pub fn tree_roundtrip(
    model: &GroupModel,
    ball: &CayleyBall,
    f: &[Elem],
    lambda: u32,
) -> Result<Roundtrip> {
    if f.len() < 2 {
        let tree =
            ApproxTree::new(&subset_metric(model, f), 0).or_else(|_| ApproxTree::new(&[], 0));
        return Ok(Roundtrip {
            tree: tree.unwrap_or(ApproxTree {
                base: 0,
                heights: vec![],
                merge: vec![],
            }),
            hull: vec![],
            phi: vec![],
            psi: vec![],
            constant: Q::zero(),
            truncated: false,
        });
    }
    let maps = TreeMaps::new(model, f)?;
    let hull = geodesic_hull(model, ball, f, lambda);
    let hull_elems: Vec<Elem> = hull.members.iter().map(|&i| ball.elem(i).clone()).collect();
    let phi: Vec<TreePoint> = hull_elems.iter().map(|x| maps.phi(model, x)).collect();
    let psi: Vec<(TreePoint, Elem)> = maps
        .tree
        .integer_points()
        .into_iter()
        .map(|y| {
            let g = maps.psi(&y);
            (y, g)
        })
        .collect();
    let tree = maps.tree;

    let mut constant = Q::zero();
    let mut bump = |v: Q| {
        if v > constant {
            constant = v;
        }
    };
    for a in 0..hull_elems.len() {
        for b in 0..hull_elems.len() {
            let d = Q::from_integer(model.dist(&hull_elems[a], &hull_elems[b]).into());
            bump(tree.dist(&phi[a], &phi[b]) - d);
        }
    }
    for (y, gy) in &psi {
        for (z, gz) in &psi {
            bump(Q::from_integer(model.dist(gy, gz).into()) - tree.dist(y, z));
        }
    }
    for (x, p) in hull_elems.iter().zip(&phi) {
        let back = &psi.iter().find(|(y, _)| y == p).expect("φ lands in T′").1;
        bump(Q::from_integer(model.dist(back, x).into()));
    }
    Ok(Roundtrip {
        tree,
        hull: hull_elems,
        phi,
        psi,
        constant,
        truncated: hull.truncated,
    })
}

/// The contracting homotopy `σ_*` of the augmented Bar complex of `T′`,
/// built from radial paths towards the base.
pub struct TreeContraction<'a> {
    pub tree: &'a ApproxTree,
}

impl<'a> TreeContraction<'a> {
    pub fn new(tree: &'a ApproxTree) -> Self {
        TreeContraction { tree }
    }

    fn check(&self, p: &TreePoint) -> Result<()> {
        if !p.t.is_integer() || self.tree.point(p.seg, p.t.clone()).ok().as_ref() != Some(p) {
            return invalid(format!(
                "({}, {}) is not a canonical integer point",
                p.seg, p.t
            ));
        }
        Ok(())
    }

    /// `σ₀[x]`: the edge path from the base out to `x`.
    pub fn radial_path(&self, x: &TreePoint) -> Result<BarChain<TreePoint>> {
        self.check(x)?;
        let mut c = Chain::zero();
        let top: i64 = x.t.to_integer().try_into().unwrap_or(0);
        let mut prev = self.tree.root();
        for k in 1..=top {
            let p = self.tree.point(x.seg, Q::from_integer(k.into()))?;
            c.add_term(vec![prev.clone(), p.clone()], Q::one());
            prev = p;
        }
        Ok(c)
    }

    /// `σ` on a chain of any degree; the empty simplex stands for the
    /// augmentation unit, mapped to the base point.
    pub fn apply(&self, c: &BarChain<TreePoint>) -> Result<BarChain<TreePoint>> {
        let mut out = Chain::zero();
        for (s, q) in c.iter() {
            out.add_chain(&self.simplex(s)?, q);
        }
        Ok(out)
    }

    fn simplex(&self, s: &[TreePoint]) -> Result<BarChain<TreePoint>> {
        for p in s {
            self.check(p)?;
        }
        match s.len() {
            0 => Ok(Chain::basis(vec![self.tree.root()])),
            1 => self.radial_path(&s[0]),
            _ => {
                // σ_k(α) = s_{x₀}(α − σ_{k−1}∂α)
                let alpha: BarChain<TreePoint> = Chain::basis(s.to_vec());
                let rest = alpha.minus(&self.apply(&bar::boundary(&alpha))?);
                Ok(bar::cone(&s[0], &rest))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn path_metric_is_isometric() {
        let d = vec![
            vec![qi(0), qi(1), qi(3)],
            vec![qi(1), qi(0), qi(2)],
            vec![qi(3), qi(2), qi(0)],
        ];
        let (tree, mt, img) = approximating_tree(&d, 0).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(tree.dist(&img[i], &img[j]), d[i][j]);
            }
        }
        assert!(mt.is_tree());
    }

    #[test]
    fn tripod_in_free_group() {
        let m = GroupModel::free_group(2);
        let f: Vec<Elem> = ["e", "a", "b"]
            .iter()
            .map(|s| m.parse(s).unwrap())
            .collect();
        let (tree, mt, img) = approximating_tree(&subset_metric(&m, &f), 0).unwrap();
        assert_eq!(tree.merge_height(1, 2), &qi(0));
        assert_eq!(tree.dist(&img[1], &img[2]), qi(2));
        assert_eq!(mt.edges.len(), 2);
        assert!(mt.to_edge_list().contains("base"));
    }

    #[test]
    fn explicit_tree_matches_formula() {
        let m = GroupModel::modular();
        let f: Vec<Elem> = ["e", "atat", "ata", "tat", "T"]
            .iter()
            .map(|s| m.parse(s).unwrap())
            .collect();
        let (tree, mt, _) = approximating_tree(&subset_metric(&m, &f), 0).unwrap();
        assert!(mt.is_tree());
        for a in 0..mt.vertices.len() {
            let ds = mt.distances_from(a);
            for b in 0..mt.vertices.len() {
                assert_eq!(
                    ds[b].clone().unwrap(),
                    tree.dist(&mt.vertices[a], &mt.vertices[b])
                );
            }
        }
    }

    #[test]
    fn two_point_roundtrip_is_exact() {
        let m = GroupModel::free_group(2);
        let ball = CayleyBall::new(&m, 4).unwrap();
        let f = vec![Elem::identity(), m.parse("abA").unwrap()];
        let r = tree_roundtrip(&m, &ball, &f, 0).unwrap();
        assert_eq!(r.constant, qi(0));
        assert_eq!(r.hull.len(), 4);
        let single = tree_roundtrip(&m, &ball, &f[..1], 0).unwrap();
        assert!(single.phi.is_empty() && single.constant.is_zero());
    }

    #[test]
    fn contraction_identity() {
        let d = vec![
            vec![qi(0), qi(2), qi(3), qi(2)],
            vec![qi(2), qi(0), qi(3), qi(4)],
            vec![qi(3), qi(3), qi(0), qi(5)],
            vec![qi(2), qi(4), qi(5), qi(0)],
        ];
        let tree = ApproxTree::new(&d, 0).unwrap();
        let pts = tree.integer_points();
        let sigma = TreeContraction::new(&tree);
        let x = tree.phi(1);
        let path = sigma.radial_path(&x).unwrap();
        assert_eq!(path.len(), 2);
        assert_eq!(path.l1(), qi(2));
        for s in [
            vec![pts[1].clone()],
            vec![pts[2].clone(), pts[4].clone()],
            vec![pts[3].clone(), pts[0].clone(), pts[5].clone()],
        ] {
            let c: BarChain<TreePoint> = Chain::basis(s);
            let lhs = bar::boundary(&sigma.apply(&c).unwrap())
                .plus(&sigma.apply(&bar::boundary(&c)).unwrap());
            assert_eq!(lhs, c);
        }
    }
}
