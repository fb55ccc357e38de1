//! Compare the torsion part of periodic cyclic homology with the
//! centralizer side, and probe hyperbolic classes.

use hypcyc::homology::{gamma_tors_report, TruncationSpec};
use hypcyc::{GroupModel, Result};

fn main() -> Result<()> {
    let m = GroupModel::free_group(2);
    let spec = TruncationSpec { degree_cap: 1, weight_cap: 4, rips: 4 };
    let hyperbolic = vec![m.parse("b")?, m.parse("ab")?];
    let report = gamma_tors_report(&m, &spec, &hyperbolic)?;
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    Ok(())
}
