//! Multiply, invert and cyclically reduce words in a few free products.

use hypcyc::{GroupModel, Result};

fn main() -> Result<()> {
    let f2 = GroupModel::free_group(2);
    let x = f2.parse("abA")?;
    let y = f2.parse("aBA")?;
    println!("{}: ({}) * ({}) = {}", f2.name(), f2.format(&x), f2.format(&y), f2.format(&f2.mul(&x, &y)));
    let (conj, core) = f2.cyclic_reduce(&x);
    println!("cyclic reduction of {}: core {} via {}", f2.format(&x), f2.format(&core), f2.format(&conj));

    let modular = GroupModel::modular();
    let w = modular.parse("atatat")?;
    println!("{}: (at)^3 = {:?}", modular.name(), modular.format(&w));
    let at = modular.parse("at")?;
    println!("order of at: {:?}", modular.torsion_order(&at));

    let dinf = GroupModel::dihedral();
    let ab = dinf.parse("ab")?;
    let ba = dinf.parse("ba")?;
    println!("{}: ab ~ ba: {}", dinf.name(), dinf.conjugate_in_group(&ab, &ba));
    println!("shortlex(ab, ba) = {:?}", dinf.shortlex(&ab, &ba));
    Ok(())
}
