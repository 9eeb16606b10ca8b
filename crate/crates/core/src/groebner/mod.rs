//! Gröbner bases of ideals and free-module submodules, and the primitives
//! built on them: normal forms, ideal arithmetic, lengths, dimensions, syzygies.

mod basis;
mod ideal;
mod vector;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use basis::{groebner_basis, groebner_basis_with_stats, GroebnerBasis, SPairStats};
pub use ideal::{ideal_op, Ideal, IdealOp};
pub use vector::{Term, Vector};

use crate::laurent::{length_and_dim, Laurent};
use crate::monideal::MonomialIdeal;
use crate::poly::{MonomialOrder, Polynomial};

/// Length of a module: a natural number or infinite. Serializes as a JSON
/// number or the string `"infinite"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Length {
    Finite(u64),
    Infinite,
}

impl Serialize for Length {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Length::Finite(n) => s.serialize_u64(*n),
            Length::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for Length {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) if s == "infinite" => Ok(Length::Infinite),
            serde_json::Value::Number(n) => {
                n.as_u64().map(Length::Finite).ok_or_else(|| serde::de::Error::custom("length must be a natural number"))
            }
            _ => Err(serde::de::Error::custom("expected a natural number or \"infinite\"")),
        }
    }
}

impl Length {
    pub fn finite(self) -> Option<u64> {
        match self {
            Length::Finite(n) => Some(n),
            Length::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Length::Finite(_))
    }

    pub fn from_option(v: Option<u64>) -> Self {
        v.map_or(Length::Infinite, Length::Finite)
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(n) => write!(f, "{n}"),
            Length::Infinite => write!(f, "inf"),
        }
    }
}

/// Hilbert series numerator of `F / N` where `F` has basis degrees `shifts`
/// and `gb` is a Gröbner basis of `N` (valid for graded `N`; for lengths and
/// dimensions any `N` works with zero shifts).
pub fn quotient_numerator(gb: &GroebnerBasis, shifts: &[i64]) -> Laurent {
    let mut acc = Laurent::zero();
    for (c, lead) in gb.leading_ideals().into_iter().enumerate() {
        let mi = MonomialIdeal::new(gb.nvars(), lead);
        acc = acc.add(&mi.hilbert_numerator().shift(shifts[c]));
    }
    acc
}

/// `ℓ(F/N)` for `gb` a basis of `N`: counts standard terms.
pub fn length_of_quotient(gb: &GroebnerBasis) -> Length {
    let zeros = vec![0; gb.rank()];
    Length::from_option(length_and_dim(&quotient_numerator(gb, &zeros), gb.nvars()).0)
}

/// `dim F/N` (-1 for the zero module).
pub fn krull_dim(gb: &GroebnerBasis) -> i64 {
    gb.leading_ideals()
        .into_iter()
        .map(|lead| MonomialIdeal::new(gb.nvars(), lead).dim())
        .max()
        .unwrap_or(-1)
}

/// Generators of the syzygy module of `vecs ⊂ R^rank`, as vectors in `R^vecs.len()`.
pub fn syzygies(vecs: &[Vector], rank: usize, nvars: usize) -> Vec<Vector> {
    let order = MonomialOrder::Grevlex;
    if vecs.is_empty() {
        return Vec::new();
    }
    let one = field_one(vecs);
    let mut gens = Vec::with_capacity(vecs.len());
    for (i, v) in vecs.iter().enumerate() {
        gens.push(v.with_order(order).add(&Vector::unit(nvars, rank + i, order, one.clone())));
    }
    eliminate_components(&gens, rank, rank + vecs.len(), nvars)
}

fn field_one(vecs: &[Vector]) -> crate::poly::Scalar {
    for v in vecs {
        if let Some(t) = v.lead() {
            return t.coef.field().one();
        }
    }
    crate::poly::Field::Rational.one()
}

/// Gröbner basis of the span of `gens ⊂ R^total`, keeping the elements that
/// vanish in the first `first` components (shifted down by `first`).
pub(crate) fn eliminate_components(gens: &[Vector], first: usize, total: usize, nvars: usize) -> Vec<Vector> {
    let gb = groebner_basis(gens, total, nvars, MonomialOrder::Grevlex);
    gb.elems()
        .iter()
        .filter(|v| v.min_comp().is_some_and(|c| c >= first))
        .map(|v| v.map_comps(|c| Some(c - first)))
        .collect()
}

/// `N :_F f = { u in F : f u in N }` for `N ⊂ R^rank` generated by `n`.
pub fn module_colon_element(n: &[Vector], f: &Polynomial, rank: usize, nvars: usize, one: crate::poly::Scalar) -> Vec<Vector> {
    let order = MonomialOrder::Grevlex;
    let mut gens = Vec::new();
    for k in 0..rank {
        let fe = Vector::from_poly(f, k, order);
        gens.push(fe.add(&Vector::unit(nvars, rank + k, order, one.clone())));
    }
    for v in n {
        gens.push(v.with_order(order));
    }
    eliminate_components(&gens, rank, 2 * rank, nvars)
}

/// `N :_R v = { r : r v in N }`.
pub fn module_colon_vector(n: &[Vector], v: &Vector, rank: usize, nvars: usize, one: crate::poly::Scalar) -> Vec<Polynomial> {
    let order = MonomialOrder::Grevlex;
    let mut gens = vec![v.with_order(order).add(&Vector::unit(nvars, rank, order, one))];
    gens.extend(n.iter().map(|u| u.with_order(order)));
    eliminate_components(&gens, rank, rank + 1, nvars).iter().map(|u| u.entry(0)).collect()
}

/// `A ∩ B` for submodules of `R^rank`.
pub fn module_intersection(a: &[Vector], b: &[Vector], rank: usize, nvars: usize) -> Vec<Vector> {
    let order = MonomialOrder::Grevlex;
    // (u, u) for u in A and (w, 0) for w in B: first block zero => second block in A ∩ B
    let mut gens = Vec::new();
    for u in a {
        let u = u.with_order(order);
        gens.push(u.add(&u.map_comps(|c| Some(c + rank))));
    }
    gens.extend(b.iter().map(|w| w.with_order(order)));
    eliminate_components(&gens, rank, 2 * rank, nvars)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;

    #[test]
    fn syzygy_examples() {
        let r = PolyRing::qq(&["x", "y"]);
        let o = MonomialOrder::Grevlex;
        let x2 = Vector::from_poly(&r.parse("x^2").unwrap(), 0, o);
        let xy = Vector::from_poly(&r.parse("x*y").unwrap(), 0, o);
        let s = syzygies(&[x2.clone(), xy.clone()], 1, 2);
        assert_eq!(s.len(), 1);
        let p = s[0].to_polys(2);
        // (y, -x) up to scaling
        assert!(p[0].mul(&r.parse("x^2").unwrap()).add(&p[1].mul(&r.parse("x*y").unwrap())).is_zero());
        assert_eq!(p[0].monic(), r.var(1));
        let x = Vector::from_poly(&r.var(0), 0, o);
        assert!(syzygies(std::slice::from_ref(&x), 1, 2).is_empty());
        let y = Vector::from_poly(&r.var(1), 0, o);
        let s = syzygies(&[x, y], 1, 2);
        assert_eq!(s.len(), 1);
        let p = s[0].to_polys(2);
        assert_eq!(p[0].monic(), r.var(1));
        assert_eq!(p[1].monic(), r.var(0));
    }

    #[test]
    fn lengths_and_dims() {
        let r = PolyRing::qq(&["x", "y"]);
        let gb = Ideal::new(&r, vec![r.parse("x^2").unwrap(), r.parse("x*y").unwrap(), r.parse("y^2").unwrap()]);
        assert_eq!(length_of_quotient(gb.gb()), Length::Finite(3));
        let gb2 = Ideal::new(&r, vec![r.parse("x^2").unwrap(), r.parse("x*y").unwrap()]);
        assert_eq!(length_of_quotient(gb2.gb()), Length::Infinite);
        assert_eq!(krull_dim(gb2.gb()), 1);
        let r3 = PolyRing::qq(&["x", "y", "z"]);
        assert_eq!(krull_dim(Ideal::zero(&r3).gb()), 3);
        assert_eq!(krull_dim(Ideal::unit(&r3).gb()), -1);
    }
}
