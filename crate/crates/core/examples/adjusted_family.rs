//! The family `q_m = (X^m, Y^m, Z)` on `M = R ⊕ R/(Z^2)`, `R = k[X,Y,Z]`:
//! none of these is distinguished, `a_1` stays 0 and `a_2 = -m^2`.

use seqcm::groebner::Ideal;
use seqcm::hilbert::{adjusted, FitConfig};
use seqcm::modpres::DiagonalModule;
use seqcm::parameters::is_distinguished;
use seqcm::filtration::dimension_filtration;
use seqcm::poly::PolyRing;

fn main() -> seqcm::Result<()> {
    let r = PolyRing::qq(&["X", "Y", "Z"]);
    let m = DiagonalModule::cyclic_sum(&r, vec![Ideal::zero(&r), Ideal::new(&r, vec![r.parse("Z^2")?])]);
    let d = dimension_filtration(&m);
    println!("M = {m}, dims {:?}", d.dims());
    println!("{:>2} {:>5} {:>14} {:>12}  H^ad(0..6)", "m", "dist", "e", "a");
    for k in 1..=5u32 {
        let xs = vec![r.parse(&format!("X^{k}"))?, r.parse(&format!("Y^{k}"))?, r.parse("Z")?];
        let adj = adjusted(&m, &Ideal::new(&r, xs.clone()), &FitConfig::default())?;
        let h: Vec<i64> = (0..=6).map(|n| adj.function(n).unwrap()).collect();
        println!(
            "{k:>2} {:>5} {:>14} {:>12}  {h:?}",
            is_distinguished(&xs, &d),
            format!("{:?}", adj.coefficients.e),
            format!("{:?}", adj.a)
        );
    }
    Ok(())
}
