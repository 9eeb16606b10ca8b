//! Irreducible decomposition and associated primes of monomial ideals,
//! with arithmetic degrees from the primes against the Hilbert-function fit.

use seqcm::groebner::Ideal;
use seqcm::hilbert::{arithmetic_degrees, FitConfig};
use seqcm::modpres::DiagonalModule;
use seqcm::monideal::{adeg_oracle, MonomialIdeal};
use seqcm::poly::PolyRing;

fn main() -> seqcm::Result<()> {
    let r = PolyRing::qq(&["x", "y", "z"]);
    let vars = r.vars();
    let ideals = [
        MonomialIdeal::from_exps(3, &[&[1, 0, 1], &[0, 1, 1], &[0, 0, 2]]),
        MonomialIdeal::from_exps(3, &[&[1, 1, 0], &[1, 0, 1]]),
        MonomialIdeal::from_exps(3, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2], &[1, 1, 1]]),
    ];
    for i in &ideals {
        let parts: Vec<String> = i.irreducible_decomposition()?.iter().map(|c| c.fmt_with(vars)).collect();
        println!("{} = {}", i.fmt_with(vars), parts.join(" ∩ "));
        for p in i.assoc_primes()? {
            let names: Vec<&str> = p.vars.iter().map(|&v| vars[v].as_str()).collect();
            println!("  P = ({}), dim {}, length {}", names.join(","), p.dim(3), i.local_h0_length(&p));
        }
    }

    let q = Ideal::maximal(&r);
    let cfg = FitConfig::default();
    let m = DiagonalModule::monomial(&r, &ideals);
    let fitted = arithmetic_degrees(&m, &q, &cfg)?;
    let direct: Vec<u64> = (0..=3).map(|j| adeg_oracle(&r, &ideals, &q, j, &cfg)).collect::<Result<_, _>>()?;
    println!("adeg from the fit {fitted:?}, from the primes {direct:?}");
    Ok(())
}
