//! Geodesics, hulls and the thin-triangle constant on Cayley balls.
//!
//! Distances are word-metric distances computed from normal forms, so they
//! are exact even for pairs whose geodesics leave the ball. Results that
//! depend on the ball carry a `truncated` flag instead of silently dropping
//! data.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ball::CayleyBall;
use crate::group::{Elem, GroupModel};
use crate::Q;

/// Layers of the interval between `x` and `y`: layer `k` holds every `z` with
/// `d(x,z) = k` and `d(z,y) = d(x,y) - k`, sorted shortlex.
pub fn interval_layers(model: &GroupModel, x: &Elem, y: &Elem) -> Vec<Vec<Elem>> {
    let total = model.dist(x, y);
    let gens = model.generators();
    let mut layers = vec![vec![x.clone()]];
    for k in 0..total {
        let mut next = BTreeSet::new();
        for z in &layers[k as usize] {
            for s in &gens {
                let w = model.mul(z, s);
                if model.dist(&w, y) + k + 1 == total {
                    next.insert(w);
                }
            }
        }
        let mut layer: Vec<Elem> = next.into_iter().collect();
        layer.sort_by(|a, b| model.shortlex(a, b));
        layers.push(layer);
    }
    layers
}

/// Every point lying on some geodesic from `x` to `y`.
pub fn interval(model: &GroupModel, x: &Elem, y: &Elem) -> Vec<Elem> {
    interval_layers(model, x, y).into_iter().flatten().collect()
}

#[derive(Clone, Debug)]
pub struct Geodesics {
    pub paths: Vec<Vec<Elem>>,
    /// Some path leaves the ball.
    pub truncated: bool,
}

/// All geodesic vertex paths from `x` to `y`, in shortlex order of their
/// vertex sequences.
pub fn geodesics(model: &GroupModel, ball: &CayleyBall, x: &Elem, y: &Elem) -> Geodesics {
    let layers = interval_layers(model, x, y);
    let mut paths = Vec::new();
    let mut stack = vec![x.clone()];
    extend_paths(model, &layers, &mut stack, &mut paths);
    let truncated = layers.iter().flatten().any(|z| !ball.contains(z));
    Geodesics { paths, truncated }
}

fn extend_paths(
    model: &GroupModel,
    layers: &[Vec<Elem>],
    stack: &mut Vec<Elem>,
    out: &mut Vec<Vec<Elem>>,
) {
    let k = stack.len();
    if k == layers.len() {
        out.push(stack.clone());
        return;
    }
    for z in &layers[k] {
        if model.dist(stack.last().unwrap(), z) == 1 {
            stack.push(z.clone());
            extend_paths(model, layers, stack, out);
            stack.pop();
        }
    }
}

/// The geodesic that always steps to the shortlex-least admissible neighbour.
pub fn canonical_geodesic(model: &GroupModel, x: &Elem, y: &Elem) -> Vec<Elem> {
    let total = model.dist(x, y);
    let gens = model.generators();
    let mut path = vec![x.clone()];
    for k in 0..total {
        let z = path.last().unwrap();
        let next = gens
            .iter()
            .map(|s| model.mul(z, s))
            .filter(|w| model.dist(w, y) + k + 1 == total)
            .min_by(|a, b| model.shortlex(a, b))
            .expect("a geodesic step always exists");
        path.push(next);
    }
    path
}

/// Number of geodesic edge paths from `x` to `y`.
pub fn count_geodesics(model: &GroupModel, x: &Elem, y: &Elem) -> num_bigint::BigUint {
    let layers = interval_layers(model, x, y);
    let mut counts: Vec<num_bigint::BigUint> = vec![1u32.into()];
    for k in 1..layers.len() {
        let row = layers[k]
            .iter()
            .map(|z| {
                layers[k - 1]
                    .iter()
                    .zip(&counts)
                    .filter(|(w, _)| model.dist(w, z) == 1)
                    .map(|(_, c)| c.clone())
                    .sum()
            })
            .collect();
        counts = row;
    }
    counts.into_iter().sum()
}

/// Membership in the λ-geodesic hull of `ys`.
pub fn in_hull(model: &GroupModel, ys: &[Elem], x: &Elem, lambda: u32) -> bool {
    let dx: Vec<u32> = ys.iter().map(|y| model.dist(y, x)).collect();
    for i in 0..ys.len() {
        for j in i..ys.len() {
            if dx[i] + dx[j] <= model.dist(&ys[i], &ys[j]) + lambda {
                return true;
            }
        }
    }
    false
}

#[derive(Clone, Debug)]
pub struct Hull {
    /// Ball indices of hull members, ascending.
    pub members: Vec<usize>,
    /// A member sits on the boundary sphere, so the true hull may be larger.
    pub truncated: bool,
}

/// The λ-geodesic hull of `ys`, restricted to the ball.
pub fn geodesic_hull(model: &GroupModel, ball: &CayleyBall, ys: &[Elem], lambda: u32) -> Hull {
    let members: Vec<usize> = (0..ball.len())
        .filter(|&i| in_hull(model, ys, ball.elem(i), lambda))
        .collect();
    let outside = ys.iter().any(|y| !ball.contains(y));
    let truncated = outside
        || members
            .iter()
            .any(|&i| ball.on_boundary(i) && ball.radius > 0);
    Hull { members, truncated }
}

#[derive(Clone, Debug)]
pub struct DeltaEstimate {
    pub delta: Q,
    pub triangles: usize,
    pub exhaustive: bool,
}

/// Thin-triangle constant of one triangle, using the canonical geodesic for
/// each side and measuring at vertices.
pub fn triangle_delta(model: &GroupModel, x: &Elem, y: &Elem, z: &Elem) -> u32 {
    let sides = [
        canonical_geodesic(model, x, y),
        canonical_geodesic(model, y, z),
        canonical_geodesic(model, z, x),
    ];
    let mut worst = 0;
    for (i, side) in sides.iter().enumerate() {
        for p in side {
            let near = sides
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .flat_map(|(_, s)| s.iter())
                .map(|q| model.dist(p, q))
                .min()
                .unwrap_or(0);
            worst = worst.max(near);
        }
    }
    worst
}

/// Thin-triangle constant over triangles `(e, y, z)` with `y, z` in the ball.
/// By left invariance this covers every triangle with two sides of length at
/// most the radius. Exhaustive when the pair count fits in `budget`,
/// otherwise a seeded sample of `budget` pairs.
pub fn delta_estimate(
    model: &GroupModel,
    ball: &CayleyBall,
    budget: usize,
    seed: u64,
) -> DeltaEstimate {
    let n = ball.len();
    let e = Elem::identity();
    let pairs = n * (n + 1) / 2;
    let mut worst = 0;
    let mut triangles = 0;
    if pairs <= budget {
        for i in 0..n {
            for j in i..n {
                worst = worst.max(triangle_delta(model, &e, ball.elem(i), ball.elem(j)));
                triangles += 1;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..budget {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            worst = worst.max(triangle_delta(model, &e, ball.elem(i), ball.elem(j)));
            triangles += 1;
        }
    }
    DeltaEstimate {
        delta: Q::from_integer(worst.into()),
        triangles,
        exhaustive: pairs <= budget,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_group_geodesic_is_unique() {
        let m = GroupModel::free_group(2);
        let ball = CayleyBall::new(&m, 3).unwrap();
        let g = geodesics(&m, &ball, &m.parse("A").unwrap(), &m.parse("b").unwrap());
        assert_eq!(g.paths.len(), 1);
        let words: Vec<String> = g.paths[0].iter().map(|x| m.format(x)).collect();
        assert_eq!(words, ["A", "e", "b"]);
        assert!(!g.truncated);
    }

    #[test]
    fn hull_matches_brute_force() {
        let m = GroupModel::free_group(2);
        let ball = CayleyBall::new(&m, 4).unwrap();
        let a2 = m.parse("aa").unwrap();
        let hull = geodesic_hull(&m, &ball, &[Elem::identity(), a2.clone()], 2);
        let brute: Vec<usize> = (0..ball.len())
            .filter(|&i| m.len(ball.elem(i)) + m.dist(ball.elem(i), &a2) <= 4)
            .collect();
        assert_eq!(hull.members, brute);
    }

    #[test]
    fn geodesic_counts_in_modular_group() {
        let m = GroupModel::modular();
        let x = m.parse("tt").unwrap();
        // t² = t⁻¹ has length 1, so there is one geodesic of one edge
        assert_eq!(count_geodesics(&m, &Elem::identity(), &x), 1u32.into());
    }

    #[test]
    fn trees_are_zero_hyperbolic() {
        let m = GroupModel::free_group(2);
        let ball = CayleyBall::new(&m, 3).unwrap();
        assert_eq!(
            delta_estimate(&m, &ball, 10_000, 1).delta,
            Q::from_integer(0.into())
        );
    }
}
