//! Geodesic intervals, counts and hull membership in the modular group.

use hypcyc::geometry::{canonical_geodesic, count_geodesics, in_hull, interval_layers, triangle_delta};
use hypcyc::{GroupModel, Result};

fn main() -> Result<()> {
    let m = GroupModel::modular();
    let e = m.identity();
    let x = m.parse("atataT")?;
    let path: Vec<String> = canonical_geodesic(&m, &e, &x).iter().map(|g| m.format(g)).collect();
    println!("canonical geodesic e -> {}: {}", m.format(&x), path.join(" "));
    println!("geodesic count: {}", count_geodesics(&m, &e, &x));
    for (k, layer) in interval_layers(&m, &e, &x).iter().enumerate() {
        let names: Vec<String> = layer.iter().map(|g| m.format(g)).collect();
        println!("  layer {k}: {}", names.join(", "));
    }

    let y = m.parse("tat")?;
    println!("delta of (e, {}, {}) = {}", m.format(&x), m.format(&y), triangle_delta(&m, &e, &x, &y));
    let probe = m.parse("at")?;
    for lambda in 0..2 {
        println!("{} in hull_{lambda}: {}", m.format(&probe), in_hull(&m, &[e.clone(), x.clone(), y.clone()], &probe, lambda));
    }
    Ok(())
}
