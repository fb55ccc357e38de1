//! Rational group homology from Rips coinvariants and from bar coinvariants.

use hypcyc::homology::{group_homology_rips, truncate_complex, ComplexKind, TruncationSpec};
use hypcyc::{GroupModel, Result};

fn main() -> Result<()> {
    for model in [GroupModel::free_group(2), GroupModel::dihedral(), GroupModel::cyclic(4)] {
        println!("{:<10} H_* = {:?}", model.name(), group_homology_rips(&model, 4, 2)?);
    }
    let z2 = GroupModel::cyclic(2);
    let spec = TruncationSpec { degree_cap: 3, weight_cap: 0, rips: 0 };
    let bar = truncate_complex(&ComplexKind::BarCoinvariants, &z2, &spec)?;
    println!("Z2 bar coinvariants: dims {:?}, homology {:?}", bar.dims, bar.homology()?);
    Ok(())
}
