//! The invariant `I`, the constant `C`, the coefficient bounds and the
//! nonnegativity threshold for the built-in sequentially generalized
//! Cohen–Macaulay modules, against one distinguished system each.

use seqcm::corpus;
use seqcm::filtration::{adjusted_upper_bound, coefficient_bound, dimension_filtration, i_of_filtration, nonnegativity_threshold, regularity_bound_c};
use seqcm::hilbert::{adjusted, FitConfig};
use seqcm::parameters::random_distinguished_sop;

fn main() -> seqcm::Result<()> {
    for e in corpus::sgcm_corpus()? {
        let m = &e.module;
        let f = dimension_filtration(m);
        let d = m.dim() as usize;
        let i = i_of_filtration(&f)?;
        let c = regularity_bound_c(&i, d);
        let ps = random_distinguished_sop(m, &f, 3, 1)?;
        let adj = adjusted(m, &ps.ideal(m.ring()), &FitConfig::default())?;
        let caps: Vec<String> = (1..=d).map(|k| coefficient_bound(&f, k).map(|b| b.to_string())).collect::<Result<_, _>>()?;
        let h5 = adj.function(5).unwrap();
        println!(
            "{:<9} d {d} I {i} C {c}  a {:?} <= [{}]  H^ad(5) {h5} <= {}  threshold {:?}",
            e.label,
            adj.a,
            caps.join(", "),
            adjusted_upper_bound(&f, 5)?,
            nonnegativity_threshold(&c, &i, d)
        );
    }
    Ok(())
}
