//! Exact rank and nullity of sparse rational matrices.

use hypcyc::linalg::{exact_rank, nullity, SparseMatrix};

fn main() {
    // Boundary of the triangle on {e, t, t²}.
    let d1 = SparseMatrix::from_dense(&[vec![-1, 0, -1], vec![1, -1, 0], vec![0, 1, 1]]);
    println!("rank {} nullity {}", exact_rank(&d1), nullity(&d1));
    let big: Vec<Vec<i64>> = (0..6).map(|i| (0..6).map(|j| (i * j + 1) % 7).collect()).collect();
    println!("rank of a 6x6 residue table: {}", exact_rank(&SparseMatrix::from_dense(&big)));
}
