//! Splitting and elliptic checks on infinite-order and torsion classes.

use hypcyc::scans::{hyperbolic_verdict, splitting_failures};
use hypcyc::verify::elliptic_check;
use hypcyc::{GroupModel, Result};

fn main() -> Result<()> {
    let f2 = GroupModel::free_group(2);
    for w in ["b", "ab"] {
        let v = f2.parse(w)?;
        let bad = splitting_failures(&f2, &v, 1, 4)?;
        let zero = hyperbolic_verdict(&f2, &v, 1, 4, 4)?;
        println!("F2 <{w}>: {} splitting failures, local class vanishes: {zero}", bad.len());
    }

    let m = GroupModel::cyclic(3);
    let t = m.parse("t")?;
    let check = elliptic_check(&m, &t, 2, 6)?;
    println!("Z3 <t>: {} ({} checked) {}", if check.passed { "ok" } else { "FAIL" }, check.checked, check.detail);
    Ok(())
}
