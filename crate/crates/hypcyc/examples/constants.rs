//! Exact empirical operator constants for the modular group.

use hypcyc::norms::constants_csv;
use hypcyc::scans::{scan_all, ScanSpec};
use hypcyc::{GroupModel, Q, Result};

fn main() -> Result<()> {
    let m = GroupModel::modular();
    let spec = ScanSpec {
        degree_cap: 1,
        weight_cap: 3,
        seed: 3,
        budget: 2000,
        lambda0: Q::from_integer(2.into()),
        lambda1: Q::new(5.into(), 4.into()),
        rips: 4,
        power_cap: 2,
        classes: vec!["at".into()],
    };
    spec.validate()?;
    print!("{}", constants_csv(&scan_all(&m, &spec)?));
    Ok(())
}
