//! Dimension filtrations and verdicts for the built-in modules.

use seqcm::corpus;
use seqcm::filtration::classify;

fn main() -> seqcm::Result<()> {
    for (s, m) in [("ex1", "M"), ("point", "M"), ("square", "M"), ("square", "N"), ("mono3", "I"), ("mono3", "J")] {
        let e = corpus::entry(s, m)?;
        let r = classify(&e.module)?;
        println!(
            "{:<9} dim {} depth {} dims {:?} l(W) {} -> {} (I = {:?})",
            e.label,
            r.dim,
            r.depth,
            r.dims,
            r.w_length,
            r.verdict,
            r.invariant_filtration.map(|i| i.to_string())
        );
        for p in &r.pieces {
            let h: Vec<String> = p.local_cohomology.iter().map(|l| l.to_string()).collect();
            println!("    C_{} dim {} depth {} H = [{}]", p.index, p.dim, p.depth, h.join(", "));
        }
    }
    Ok(())
}
