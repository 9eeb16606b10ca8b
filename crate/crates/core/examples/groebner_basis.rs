//! Reduced Gröbner basis of the twisted cubic under grevlex and lex, with
//! membership, normal forms and pair-criterion counts.

use seqcm::groebner::{groebner_basis_with_stats, Ideal, Vector};
use seqcm::poly::{MonomialOrder, PolyRing};

fn main() -> seqcm::Result<()> {
    let r = PolyRing::qq(&["x", "y", "z", "w"]);
    let gens = vec![r.parse("x*z - y^2")?, r.parse("x*w - y*z")?, r.parse("y*w - z^2")?];
    for order in [MonomialOrder::Grevlex, MonomialOrder::Lex] {
        let vs: Vec<Vector> = gens.iter().map(|p| Vector::from_poly(p, 0, order)).collect();
        let (gb, stats) = groebner_basis_with_stats(&vs, 1, r.nvars(), order);
        println!("{order:?}: {} elements, reduced {}, {stats:?}", gb.elems().len(), gb.is_reduced());
        for v in gb.elems() {
            println!("  {}", r.fmt(&v.entry(0)));
        }
    }

    let i = Ideal::new(&r, gens);
    for s in ["x^2*w - y^3", "x*w^2 - z^3", "y^3 - x^2*w + z"] {
        let p = r.parse(s)?;
        println!("{s}: member {}, normal form {}", i.contains(&p), r.fmt(&i.normal_form(&p)));
    }
    println!("dim R/I = {}, leading ideal {}", i.quotient_dim(), i.leading_ideal().fmt_with(r.vars()));
    Ok(())
}
