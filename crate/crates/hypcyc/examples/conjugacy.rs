//! Conjugacy classes in a ball, minimal conjugators and centralizers.

use hypcyc::conjugacy::{centralizer, class_table_csv, conjugacy_classes, exact_stable_length, stable_length, SigmaSection};
use hypcyc::{CayleyBall, GroupModel, Result};

fn main() -> Result<()> {
    let m = GroupModel::free_product(&[2, 3]);
    let ball = CayleyBall::new(&m, 4)?;
    let classes = conjugacy_classes(&m, &ball, 6)?;
    print!("{}", class_table_csv(&m, &classes)?);

    let v = m.parse("at")?;
    let sigma = SigmaSection::covering(&m, &v, 6)?;
    println!("sigma for <at>: {} members, length excess {}", sigma.table.len(), sigma.half_length_excess(&m, 6));
    let z = centralizer(&m, &v, &ball);
    let names: Vec<String> = z.elements.iter().map(|g| m.format(g)).collect();
    println!("Z(at) in ball: {}", names.join(" "));
    let st = stable_length(&m, &v, 8);
    println!("stable length of at: about {} (exact {})", st.estimate, exact_stable_length(&m, &v));
    Ok(())
}
