//! Minimal free resolution, graded Betti numbers and Ext of two skew lines,
//! then depth and local cohomology lengths from graded duality.

use seqcm::groebner::Ideal;
use seqcm::modpres::{minimal_free_resolution, PresentedModule};
use seqcm::poly::PolyRing;

fn main() -> seqcm::Result<()> {
    let r = PolyRing::qq(&["x", "y", "z", "w"]);
    let i = Ideal::new(&r, ["x*z", "x*w", "y*z", "y*w"].iter().map(|s| r.parse(s)).collect::<Result<_, _>>()?);
    let m = PresentedModule::cyclic(&i);
    let res = minimal_free_resolution(&m)?;
    println!("ranks {:?}, pd {}, exact {}", res.ranks(), res.pd(), res.verify());
    for (j, row) in res.graded_betti().iter().enumerate() {
        println!("  beta_{j}: {row:?}");
    }
    for j in 0..=4 {
        let e = res.ext(&r, j)?;
        println!("Ext^{j}(M, R): dim {}, length {}", e.dim(), e.length());
    }
    println!("depth {}", m.depth()?);
    for j in 0..3 {
        println!("l(H^{j}_m(M)) = {}", m.local_cohomology_length(j)?);
    }
    Ok(())
}
