//! Approximate a finite subset of the free group by a metric tree and map
//! back and forth between the geodesic hull and the tree.

use hypcyc::tree::{distortion, subset_metric, tree_roundtrip, ApproxTree};
use hypcyc::{CayleyBall, GroupModel, Result};

fn main() -> Result<()> {
    let m = GroupModel::free_product(&[2, 3]);
    let words = ["e", "atat", "aT", "ataT"];
    let f = words.iter().map(|w| m.parse(w)).collect::<Result<Vec<_>>>()?;

    let dist = subset_metric(&m, &f);
    let tree = ApproxTree::new(&dist, 0)?;
    println!("distortion {}", distortion(&dist, &tree));
    print!("{}", tree.metric_tree().to_edge_list());

    let ball = CayleyBall::new(&m, 6)?;
    let rt = tree_roundtrip(&m, &ball, &f, 1)?;
    println!("hull {} points, {} integer tree points, constant {}", rt.hull.len(), rt.psi.len(), rt.constant);
    for (p, g) in rt.psi.iter().take(6) {
        println!("  psi({p:?}) = {}", m.format(g));
    }
    Ok(())
}
