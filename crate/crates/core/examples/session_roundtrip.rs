//! Parse a session, print it back and parse the printout again.

use seqcm::modpres::DiagonalModule;
use seqcm::session::{parse_session, print_session};

const TEXT: &str = "\
# a plane with an embedded line and an embedded point
ring R = QQ[x,y,z];
ideal P = (x, y);
module M = sum(R/(z), R/P, R/(x^2, y^2, z^2, x*y*z));
sop q = (x + z, y + z);
classify M;
hilbert M q;
";

fn main() -> seqcm::Result<()> {
    let s = parse_session(TEXT)?;
    let printed = print_session(&s);
    print!("{printed}");
    let again = parse_session(&printed)?;
    assert_eq!(print_session(&again), printed);
    for name in s.module_names() {
        let m = DiagonalModule::from_session(&s, name)?;
        println!("{name} = {m}, dim {}, {} summands", m.dim(), m.summands().len());
    }
    match parse_session("ring R = QQ[x];\nmodule M = R/(x^2 +);\n") {
        Err(e) => println!("bad input: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
