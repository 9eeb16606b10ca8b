//! `a_2` over the power lattice `(X^i, Y^j, Z^k)` on `R ⊕ R/(Z^2)`: it is 0
//! exactly when `Z^k` kills the lower piece, and unbounded below otherwise.
//! Random distinguished systems all give 0.

use seqcm::corpus;
use seqcm::hilbert::{lambda_sample, FitConfig, Sampler};

fn main() -> seqcm::Result<()> {
    let e = corpus::entry("ex1", "M")?;
    let r = e.module.ring().clone();
    let fit = FitConfig::default();
    let x = vec![r.parse("X")?, r.parse("Y")?, r.parse("Z")?];
    for sampler in [
        Sampler::PowerLattice { x, cap: 2 },
        Sampler::RandomDistinguished { count: 4, seed: 7, degree_cap: 1 },
    ] {
        let s = lambda_sample(&e.module, "M", 2, &sampler, true, &fit)?;
        for en in &s.entries {
            println!("  ({}) a_2 = {}, distinguished {}", en.q.join(", "), en.value, en.distinguished);
        }
        println!("min {:?} max {:?} distinct {} rejected {}", s.min, s.max, s.distinct, s.rejected);
    }
    Ok(())
}
