//! Exact scalars, monomials, monomial orders and polynomials.

mod monomial;
mod polynomial;
mod scalar;

use std::cmp::Ordering;
use std::sync::Arc;

pub use monomial::{Monomial, MonomialOrder};
pub use polynomial::{fmt_monomial, Polynomial};
pub use scalar::{is_prime, Field, Scalar};

use crate::error::{Error, Result};

/// A polynomial ring `k[x_1, ..., x_n]`; its homogeneous maximal ideal plays
/// the role of the maximal ideal of the local ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<String>,
    field: Field,
    order: MonomialOrder,
}

pub type Ring = Arc<PolyRing>;

impl PolyRing {
    pub fn new(vars: Vec<String>, field: Field) -> Result<Ring> {
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::RingMismatch(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(PolyRing { vars, field, order: MonomialOrder::Grevlex }))
    }

    /// Shorthand for tests and examples: `PolyRing::qq(&["x", "y"])`.
    pub fn qq(vars: &[&str]) -> Ring {
        Self::new(vars.iter().map(|s| s.to_string()).collect(), Field::Rational)
            .expect("distinct variable names")
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.nvars(), i, self.field)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.nvars())
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::constant(self.nvars(), self.field.one())
    }

    pub fn constant(&self, c: i64) -> Polynomial {
        Polynomial::constant(self.nvars(), self.field.from_i64(c))
    }

    pub fn monomial(&self, exps: &[u32]) -> Polynomial {
        Polynomial::monomial(Monomial::new(exps.to_vec()), self.field)
    }

    /// Parses a polynomial in this ring's variables, e.g. `"x^2 - 3/2*y*z"`.
    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        crate::session::parse_polynomial(self, text)
    }

    pub fn fmt(&self, p: &Polynomial) -> String {
        p.fmt_with(&self.vars)
    }

    fn check(&self, p: &Polynomial) -> Result<()> {
        if p.nvars() != self.nvars() {
            return Err(Error::RingMismatch(format!(
                "polynomial has {} variables, ring has {}",
                p.nvars(),
                self.nvars()
            )));
        }
        if let Some((_, c)) = p.terms().first() {
            if c.field() != self.field {
                return Err(Error::RingMismatch(format!(
                    "coefficient field {} differs from ring field {}",
                    c.field(),
                    self.field
                )));
            }
        }
        Ok(())
    }
}

/// Arithmetic request for [`poly_arith`].
#[derive(Clone, Debug)]
pub enum PolyOp<'a> {
    Add(&'a Polynomial, &'a Polynomial),
    Sub(&'a Polynomial, &'a Polynomial),
    Mul(&'a Polynomial, &'a Polynomial),
    Pow(&'a Polynomial, u32),
    /// Substitute: `(variable index, image)` pairs.
    Substitute(&'a Polynomial, &'a [(usize, Polynomial)]),
}

/// Checked polynomial arithmetic in `ring`.
pub fn poly_arith(ring: &PolyRing, op: PolyOp<'_>) -> Result<Polynomial> {
    match op {
        PolyOp::Add(a, b) => {
            ring.check(a)?;
            ring.check(b)?;
            Ok(a.add(b))
        }
        PolyOp::Sub(a, b) => {
            ring.check(a)?;
            ring.check(b)?;
            Ok(a.sub(b))
        }
        PolyOp::Mul(a, b) => {
            ring.check(a)?;
            ring.check(b)?;
            Ok(a.mul(b))
        }
        PolyOp::Pow(a, n) => {
            ring.check(a)?;
            Ok(a.pow(n, ring.field))
        }
        PolyOp::Substitute(a, subs) => {
            ring.check(a)?;
            let mut images = vec![None; ring.nvars()];
            for (i, p) in subs {
                ring.check(p)?;
                if *i >= ring.nvars() {
                    return Err(Error::RingMismatch(format!("no variable with index {i}")));
                }
                images[*i] = Some(p.clone());
            }
            Ok(a.substitute(&images, ring.field))
        }
    }
}

pub fn compare_monomials(order: MonomialOrder, a: &Monomial, b: &Monomial) -> Result<Ordering> {
    if a.nvars() != b.nvars() {
        return Err(Error::RingMismatch("monomials of different arity".into()));
    }
    Ok(order.cmp(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_examples() {
        let r = PolyRing::qq(&["x", "y", "z", "w"]);
        let x = r.var(0);
        let y = r.var(1);
        let z = r.var(2);
        let w = r.var(3);
        assert!(poly_arith(&r, PolyOp::Add(&x, &x.neg())).unwrap().is_zero());
        let p = poly_arith(&r, PolyOp::Mul(&x.add(&y), &x.sub(&y))).unwrap();
        assert_eq!(r.fmt(&p), "x^2 - y^2");
        // xz + w with z -> 1, checked term by term
        let f = x.mul(&z).add(&w);
        let g = poly_arith(&r, PolyOp::Substitute(&f, &[(2, r.one())])).unwrap();
        assert_eq!(g, x.add(&w));
    }

    #[test]
    fn ring_mismatch_detected() {
        let r = PolyRing::qq(&["x", "y"]);
        let s = PolyRing::qq(&["x"]);
        assert!(poly_arith(&r, PolyOp::Add(&r.var(0), &s.var(0))).is_err());
        let gf = PolyRing::new(vec!["x".into(), "y".into()], Field::Prime(7)).unwrap();
        assert!(poly_arith(&r, PolyOp::Mul(&r.var(0), &gf.var(1))).is_err());
    }

    #[test]
    fn duplicate_variables_rejected() {
        assert!(PolyRing::new(vec!["x".into(), "x".into()], Field::Rational).is_err());
    }
}
