//! Which parameter systems on `R/(x*y, x*z)` (a plane and a line through
//! the origin) are parameters, distinguished, good, d-sequences and dd-sequences.

use seqcm::corpus;
use seqcm::filtration::dimension_filtration;
use seqcm::groebner::Ideal;
use seqcm::parameters::{is_d_sequence, is_dd_sequence_bounded, is_distinguished, is_filter_regular, is_good, is_sop, is_superficial_bounded};

fn main() -> seqcm::Result<()> {
    let e = corpus::entry("mono3", "G")?;
    let (m, r) = (&e.module, e.module.ring().clone());
    let f = dimension_filtration(m);
    println!("M = {m}, dims {:?}", f.dims());
    for q in [["y", "z"], ["x + y", "z"], ["z", "x + y"], ["x + y + z", "y - z"], ["x^2 + y", "z^2"]] {
        let xs = q.iter().map(|s| r.parse(s)).collect::<Result<Vec<_>, _>>()?;
        if !is_sop(&xs, m)? {
            println!("({}) not a system of parameters", q.join(", "));
            continue;
        }
        let dd = is_dd_sequence_bounded(&xs, m, 2);
        let qi = Ideal::new(&r, xs.clone());
        println!(
            "({}) distinguished {} good {} d-seq {} dd(<=2) {} filter-regular x1 {} superficial x1 {}",
            q.join(", "),
            is_distinguished(&xs, &f),
            is_good(&xs, &f),
            is_d_sequence(&xs, m),
            dd.holds,
            is_filter_regular(&xs[0], m),
            is_superficial_bounded(&xs[0], &qi, m, 2, 3),
        );
    }
    Ok(())
}
