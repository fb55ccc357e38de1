//! Sizes and ranks checked against small independent oracles written here,
//! with no use of the library's group arithmetic.

use hypcyc::homology::{group_homology_rips, truncate_complex, ComplexKind, TruncationSpec};
use hypcyc::linalg::{exact_rank, nullity, SparseMatrix};
use hypcyc::{CayleyBall, GroupModel};

/// Free reduction on words in ±1, ±2.
fn reduce(w: &[i8]) -> Vec<i8> {
    let mut out: Vec<i8> = Vec::new();
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

fn inverse(w: &[i8]) -> Vec<i8> {
    w.iter().rev().map(|x| -x).collect()
}

fn free_ball(r: usize) -> Vec<Vec<i8>> {
    let mut all = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..r {
        let mut next = Vec::new();
        for w in &frontier {
            for x in [1, -1, 2, -2] {
                let mut v: Vec<i8> = w.clone();
                if v.last() == Some(&-x) {
                    continue;
                }
                v.push(x);
                next.push(v);
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

fn free_dist(x: &[i8], y: &[i8]) -> usize {
    let mut w = inverse(x);
    w.extend_from_slice(y);
    reduce(&w).len()
}

fn spec(degree_cap: usize, rips: u32) -> TruncationSpec {
    TruncationSpec { degree_cap, weight_cap: 0, rips }
}

#[test]
fn free_group_sphere_sizes() {
    let ball = CayleyBall::new(&GroupModel::free_group(2), 5).unwrap();
    let oracle: Vec<usize> = (0..=5).map(|k| free_ball(k).len() - if k == 0 { 0 } else { free_ball(k - 1).len() }).collect();
    assert_eq!(ball.sphere_sizes(), oracle);
    assert_eq!(oracle, vec![1, 4, 12, 36, 108, 324]);
}

#[test]
fn rips_basis_of_free_group_matches_enumeration() {
    let r = 4;
    let ball = free_ball(r);
    let edges = ball.iter().filter(|g| !g.is_empty()).count();
    let mut triangles = 0;
    for g1 in ball.iter().filter(|g| !g.is_empty()) {
        for g2 in &ball {
            if g2 != g1 && free_dist(g1, g2) <= r {
                triangles += 1;
            }
        }
    }
    let c = truncate_complex(&ComplexKind::RipsCoinvariants, &GroupModel::free_group(2), &spec(1, r as u32)).unwrap();
    assert_eq!(c.dims[1], edges);
    assert_eq!(c.dims[1], 160);
    assert_eq!(c.dims[2], triangles);
}

#[test]
fn cyclic_three_rips_boundary_rank() {
    // vertices e, t, t²; edges [e,t], [t,t²], [e,t²]
    let d1 = SparseMatrix::from_dense(&[vec![-1, 0, -1], vec![1, -1, 0], vec![0, 1, 1]]);
    assert_eq!(exact_rank(&d1), 2);
    assert_eq!(nullity(&d1), 1);
    assert_eq!(group_homology_rips(&GroupModel::cyclic(3), 1, 2).unwrap(), vec![1, 0, 0]);
}

#[test]
fn bar_coinvariants_of_cyclic_two() {
    let c = truncate_complex(&ComplexKind::BarCoinvariants, &GroupModel::cyclic(2), &spec(3, 0)).unwrap();
    assert_eq!(c.dims, vec![1, 2, 4, 8, 16]);
    assert_eq!(c.homology().unwrap(), vec![1, 0, 0, 0]);
}

#[test]
fn rips_homology_of_virtually_free_groups() {
    for (m, expected) in [
        (GroupModel::free_group(2), vec![1, 2, 0]),
        (GroupModel::dihedral(), vec![1, 0, 0]),
        (GroupModel::cyclic(2), vec![1, 0, 0]),
    ] {
        assert_eq!(group_homology_rips(&m, 4, 2).unwrap(), expected, "{}", m.name());
    }
}
