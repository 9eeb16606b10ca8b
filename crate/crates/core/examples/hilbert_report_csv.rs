//! Full Hilbert report on the skew lines with the bound columns, then the
//! value table as CSV.

use seqcm::corpus;
use seqcm::hilbert::{hilbert_report, ReportOptions};

fn main() -> seqcm::Result<()> {
    let e = corpus::entry("square", "M")?;
    let q = e.sop("dd")?;
    let rep = hilbert_report(&e.module, "M", &q, &ReportOptions::default())?;
    println!("q = ({}), verdict {}", rep.q.join(", "), rep.verdict);
    println!("e {:?}  adeg {:?}  a {:?}", rep.e, rep.adeg, rep.a);
    println!("flags {:?}", rep.flags);
    if let Some(b) = &rep.bounds {
        println!("I = {}, C = {}, threshold {:?}, upper ok {}", b.invariant, b.c, b.threshold, b.upper_ok);
    }
    print!("{}", rep.to_csv());
    Ok(())
}
