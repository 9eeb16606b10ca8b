//! Seeded random distinguished systems of parameters on a sequentially
//! Cohen–Macaulay module; every adjusted coefficient vanishes.

use std::time::Instant;

use seqcm::filtration::dimension_filtration;
use seqcm::groebner::Ideal;
use seqcm::hilbert::{adjusted, FitConfig};
use seqcm::modpres::DiagonalModule;
use seqcm::parameters::random_distinguished_sop;
use seqcm::poly::PolyRing;

fn main() -> seqcm::Result<()> {
    let r = PolyRing::qq(&["X", "Y", "Z"]);
    let m = DiagonalModule::cyclic_sum(&r, vec![Ideal::zero(&r), Ideal::new(&r, vec![r.parse("Z^2")?])]);
    let d = dimension_filtration(&m);
    for seed in 0..5 {
        let t = Instant::now();
        let ps = random_distinguished_sop(&m, &d, seed, 1)?;
        let adj = adjusted(&m, &ps.ideal(&r), &FitConfig::default())?;
        let xs: Vec<String> = ps.elements.iter().map(|p| r.fmt(p)).collect();
        println!("seed {seed}: ({}) a = {:?}  [{:.1?}]", xs.join(", "), adj.a, t.elapsed());
    }
    Ok(())
}
