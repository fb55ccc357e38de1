//! Sphere sizes of word-metric balls and a thin-triangle estimate.

use hypcyc::geometry::delta_estimate;
use hypcyc::{CayleyBall, GroupModel, Result};

fn main() -> Result<()> {
    for model in [GroupModel::free_group(2), GroupModel::modular(), GroupModel::dihedral(), GroupModel::cyclic(5)] {
        let ball = CayleyBall::new(&model, 4)?;
        let delta = delta_estimate(&model, &ball, 5000, 1);
        println!(
            "{:<14} spheres {:?}  delta {} over {} triangles{}",
            model.name(),
            ball.sphere_sizes(),
            delta.delta,
            delta.triangles,
            if delta.exhaustive { "" } else { " (sampled)" }
        );
    }
    Ok(())
}
