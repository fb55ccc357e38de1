//! Hochschild, cyclic and periodic homology per conjugacy class, compared
//! with centralizer homology.

use hypcyc::homology::{burghelea_check, per_class_homology, torsion_classes, BettiTable, Theory, TruncationSpec};
use hypcyc::{GroupModel, Result};

fn main() -> Result<()> {
    let m = GroupModel::cyclic(3);
    let spec = TruncationSpec { degree_cap: 3, weight_cap: 4, rips: 4 };
    let classes = torsion_classes(&m)?;
    let mut table = BettiTable::default();
    for v in &classes {
        for theory in [Theory::HH, Theory::HC, Theory::HP] {
            table.rows.extend(per_class_homology(&m, v, theory, &spec)?);
        }
    }
    print!("{}", table.to_csv()?);
    for row in burghelea_check(&m, &classes, &spec)? {
        println!("<{}> hochschild {:?} centralizer {:?} agree {}", row.class, row.hochschild, row.centralizer, row.agree);
    }
    Ok(())
}
