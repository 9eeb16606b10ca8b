//! Built-in sessions: the worked example, the derived examples and a small
//! monomial corpus. `repro` and the acceptance suite run on these.

use crate::error::{Error, Result};
use crate::modpres::DiagonalModule;
use crate::poly::Polynomial;
use crate::session::{parse_session, SessionModel};

/// `R ⊕ R/(Z^2)` with the family `q_m = (X^m, Y^m, Z)`.
pub const EX1: &str = "\
# R + R/(Z^2) over k[X,Y,Z]
ring R = QQ[X,Y,Z];
module M = sum(R, R/(Z^2));
sop q1 = (X, Y, Z);
sop q2 = (X^2, Y^2, Z);
sop q3 = (X^3, Y^3, Z);
sop q4 = (X^4, Y^4, Z);
sop q5 = (X^5, Y^5, Z);
sop dist = (X, Y, Z^2);
classify M;
hilbert M dist;
lambda M 2;
";

/// Two skew lines in projective 3-space: generalized but not Cohen–Macaulay.
pub const SQUARE: &str = "\
ring R = QQ[x,y,z,w];
ideal I = (x*z, x*w, y*z, y*w);
module M = R/I;
module N = sum(R/I, R/(x, y, z));
sop dd = (x - z, y - w);
classify M;
hilbert M dd;
";

/// A line with an embedded point.
pub const POINT: &str = "\
ring R = QQ[x,y];
module M = R/(x^2, x*y);
sop q = (y);
classify M;
hilbert M q;
";

pub const MONO2: &str = "\
ring R = QQ[x,y];
module A = R/(x^2, x*y);
module B = R/(x^2*y, x*y^2);
module C = sum(R/(x), R/(x^2, x*y));
module D = sum(R/(x^2), R);
module E = R/(x^3, x^2*y);
sop q1 = (x, y);
sop q2 = (x^2, y);
sop q3 = (x, y^3);
sop q4 = (x^2, x*y, y^2);
";

pub const MONO3: &str = "\
ring R = QQ[x,y,z];
module F = sum(R, R/(z^2));
module G = R/(x*y, x*z);
module H = sum(R/(x*y), R/(z^2), R/(x^2, y^2, z^2));
module I = R/(x*z, y*z, z^2);
module J = R/(x*y*z);
sop q1 = (x, y, z);
sop q2 = (x^2, y, z);
sop q3 = (x, y^2, z^3);
";

pub const MONO4: &str = "\
ring R = QQ[x,y,z,w];
module K = R/(x*z, x*w, y*z, y*w);
module L = R/(x*y, y*z, z*w);
module N = sum(R/(x*y), R/(z, w));
sop q1 = (x, y, z, w);
sop q2 = (x^2, y, z, w^2);
sop q3 = (x, y, z^2, w);
";

/// Every built-in session by name.
pub const SESSIONS: &[(&str, &str)] =
    &[("ex1", EX1), ("square", SQUARE), ("point", POINT), ("mono2", MONO2), ("mono3", MONO3), ("mono4", MONO4)];

pub fn session(name: &str) -> Result<SessionModel> {
    let text = SESSIONS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::UnknownName { line: 0, column: 0, name: name.to_string() })?;
    parse_session(text)
}

/// A module of a built-in session together with the session.
pub struct Entry {
    pub session: SessionModel,
    pub label: String,
    pub module: DiagonalModule,
}

impl Entry {
    pub fn sop(&self, name: &str) -> Result<Vec<Polynomial>> {
        self.session
            .sop(name)
            .map(<[Polynomial]>::to_vec)
            .ok_or_else(|| Error::UnknownName { line: 0, column: 0, name: name.to_string() })
    }

    /// All declared parameter lists.
    pub fn sops(&self) -> Vec<Vec<Polynomial>> {
        self.session.sops.iter().map(|(_, g)| g.clone()).collect()
    }
}

pub fn entry(session_name: &str, module: &str) -> Result<Entry> {
    let session = session(session_name)?;
    let m = DiagonalModule::from_session(&session, module)?;
    Ok(Entry { session, label: format!("{session_name}/{module}"), module: m })
}

/// The monomial direct sums used for the arithmetic-degree cross-check.
pub fn monomial_corpus() -> Result<Vec<Entry>> {
    let mut out = Vec::new();
    for name in ["mono2", "mono3", "mono4"] {
        let s = session(name)?;
        for module in s.module_names() {
            out.push(entry(name, module)?);
        }
    }
    Ok(out)
}

/// Modules that are sequentially generalized Cohen–Macaulay, small enough
/// for random parameter systems.
pub fn sgcm_corpus() -> Result<Vec<Entry>> {
    [("ex1", "M"), ("point", "M"), ("square", "M"), ("square", "N"), ("mono3", "G"), ("mono2", "D"), ("mono2", "C")]
        .iter()
        .map(|(s, m)| entry(s, m))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_session_parses() {
        for (name, _) in SESSIONS {
            session(name).unwrap();
        }
        assert_eq!(monomial_corpus().unwrap().len(), 13);
        for e in monomial_corpus().unwrap() {
            assert!(e.module.as_monomial().is_some(), "{}", e.label);
            assert!(e.sops().len() >= 3);
        }
    }
}
