//! The bicombing chain map on bar simplices and its per-degree witnesses.

use hypcyc::chains::bar;
use hypcyc::resolutions::{bicombing_base, witness_report, Theta, ThetaPrime};
use hypcyc::verify::seeded_simplices;
use hypcyc::{Chain, GroupModel, Result};

fn main() -> Result<()> {
    let m = GroupModel::free_group(2);
    let g = m.parse("abA")?;
    println!("bicombing path to {}:", m.format(&g));
    for (s, q) in bicombing_base(&m, &g).iter() {
        let names: Vec<String> = s.iter().map(|x| m.format(x)).collect();
        println!("  {q:>3} [{}]", names.join(","));
    }

    let theta = Theta::new(&m);
    let tri = vec![m.identity(), m.parse("ab")?, m.parse("bA")?];
    let image = theta.apply(&Chain::basis(tri.clone()))?;
    let lhs = bar::boundary(&image);
    let rhs = theta.apply(&bar::boundary(&Chain::basis(tri)))?;
    println!("image has {} simplices; chain map holds: {}", image.len(), lhs == rhs);

    let tp = ThetaPrime::new(&m, 4);
    let samples = seeded_simplices(&m, 40, 3, 3, 11)?;
    let report = witness_report(&tp, &samples)?;
    println!("{report:#?}");
    Ok(())
}
