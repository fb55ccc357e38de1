//! The twisted homotopy operator and its defect on sampled simplices.

use hypcyc::chains::twisted::TwistedSimplex;
use hypcyc::norms::twisted_simplices;
use hypcyc::resolutions::ThetaPrime;
use hypcyc::scans::nabla_defect;
use hypcyc::{Chain, GroupModel, Result};

fn main() -> Result<()> {
    let m = GroupModel::free_product(&[2, 3]);
    let tp = ThetaPrime::new(&m, 4);
    let s = TwistedSimplex::new(vec![m.identity(), m.parse("at")?], m.parse("ta")?);
    let h = tp.nabla(&Chain::basis(s.clone()))?;
    println!("nabla of {} has {} terms", s.display(&m), h.len());

    let v = m.parse("at")?;
    let samples = twisted_simplices(&m, &v, 1, 4)?;
    let failing = samples.iter().filter(|s| nabla_defect(&tp, s).map_or(true, |d| !d.is_zero())).count();
    println!("homotopy identity on {} class simplices: {} failures", samples.len(), failing);
    Ok(())
}
