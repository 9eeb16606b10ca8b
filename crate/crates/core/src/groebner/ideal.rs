use std::fmt;
use std::sync::OnceLock;

use super::basis::{groebner_basis, GroebnerBasis};
use super::vector::Vector;
use super::{eliminate_components, krull_dim, length_of_quotient, quotient_numerator, Length};
use crate::laurent::Laurent;
use crate::monideal::MonomialIdeal;
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring};

/// An ideal of a polynomial ring with a lazily computed reduced grevlex basis.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    gb: OnceLock<GroebnerBasis>,
}

/// The operations accepted by [`ideal_op`].
#[derive(Clone, Debug)]
pub enum IdealOp<'a> {
    Sum(&'a Ideal),
    Product(&'a Ideal),
    Power(u32),
    Intersection(&'a Ideal),
    Colon(&'a Ideal),
    Saturation(&'a Ideal),
    Eliminate(&'a [usize]),
}

pub fn ideal_op(a: &Ideal, op: IdealOp<'_>) -> Ideal {
    match op {
        IdealOp::Sum(b) => a.sum(b),
        IdealOp::Product(b) => a.product(b),
        IdealOp::Power(n) => a.power(n),
        IdealOp::Intersection(b) => a.intersection(b),
        IdealOp::Colon(b) => a.colon(b),
        IdealOp::Saturation(b) => a.saturation(b),
        IdealOp::Eliminate(vars) => a.eliminate(vars),
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "(0)");
        }
        let parts: Vec<String> = self.gens.iter().map(|g| self.ring.fmt(g)).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Ideal) -> bool {
        self.ring == other.ring && self.gb().same_module(other.gb())
    }
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Ideal {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { ring: ring.clone(), gens, gb: OnceLock::new() }
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::new(ring, Vec::new())
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::new(ring, vec![ring.one()])
    }

    /// The homogeneous maximal ideal `(x_1, ..., x_n)`.
    pub fn maximal(ring: &Ring) -> Ideal {
        Ideal::new(ring, (0..ring.nvars()).map(|i| ring.var(i)).collect())
    }

    pub fn from_monomial(ring: &Ring, m: &MonomialIdeal) -> Ideal {
        let field = ring.field();
        Ideal::new(ring, m.gens().iter().map(|g| Polynomial::monomial(g.clone(), field)).collect())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn gb(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| {
            let vs: Vec<Vector> =
                self.gens.iter().map(|g| Vector::from_poly(g, 0, MonomialOrder::Grevlex)).collect();
            groebner_basis(&vs, 1, self.ring.nvars(), MonomialOrder::Grevlex)
        })
    }

    /// Reduced basis elements as polynomials.
    pub fn basis(&self) -> Vec<Polynomial> {
        self.gb().elems().iter().map(|v| v.entry(0)).collect()
    }

    /// The same ideal with its reduced basis as generators.
    pub fn reduced(&self) -> Ideal {
        let out = Ideal::new(&self.ring, self.basis());
        let _ = out.gb.set(self.gb().clone());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.gb().is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.gb().is_unit_ideal()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    /// The ideal as a monomial ideal, when its reduced basis consists of monomials.
    pub fn as_monomial(&self) -> Option<MonomialIdeal> {
        let gb = self.gb();
        if gb.elems().iter().all(|v| v.is_term()) {
            Some(self.leading_ideal())
        } else {
            None
        }
    }

    pub fn leading_ideal(&self) -> MonomialIdeal {
        let lead = self.gb().leading_ideals().pop().unwrap_or_default();
        MonomialIdeal::new(self.ring.nvars(), lead)
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        self.gb().normal_form(&Vector::from_poly(p, 0, MonomialOrder::Grevlex)).entry(0)
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        if let (Some(a), Some(b)) = (self.as_monomial(), other.as_monomial()) {
            return Ideal::from_monomial(&self.ring, &a.product(&b));
        }
        let mut gens = Vec::new();
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f.mul(g));
            }
        }
        Ideal::new(&self.ring, gens)
    }

    pub fn power(&self, n: u32) -> Ideal {
        if n == 0 {
            return Ideal::unit(&self.ring);
        }
        if let Some(a) = self.as_monomial() {
            return Ideal::from_monomial(&self.ring, &a.power(n));
        }
        let base = self.reduced();
        let mut acc = base.clone();
        for _ in 1..n {
            acc = acc.product(&base).reduced();
        }
        acc
    }

    pub fn intersection(&self, other: &Ideal) -> Ideal {
        if let (Some(a), Some(b)) = (self.as_monomial(), other.as_monomial()) {
            return Ideal::from_monomial(&self.ring, &a.intersection(&b));
        }
        let order = MonomialOrder::Grevlex;
        let n = self.ring.nvars();
        // (f, f) for f in a, (0, g) for g in b: elements (0, h) have h in a ∩ b
        let mut gens: Vec<Vector> = self
            .gens
            .iter()
            .map(|f| Vector::from_polys(&[f.clone(), f.clone()], 0, n, order))
            .collect();
        gens.extend(other.gens.iter().map(|g| Vector::from_poly(g, 0, order)));
        let polys = eliminate_components(&gens, 1, 2, n).iter().map(|v| v.entry(0)).collect();
        Ideal::new(&self.ring, polys)
    }

    /// `a : f = { r : r f in a }`.
    pub fn colon_element(&self, f: &Polynomial) -> Ideal {
        if f.is_zero() {
            return Ideal::unit(&self.ring);
        }
        if let (Some(a), true) = (self.as_monomial(), f.is_monomial()) {
            return Ideal::from_monomial(&self.ring, &a.colon_monomial(&f.terms()[0].0));
        }
        let order = MonomialOrder::Grevlex;
        let basis: Vec<Vector> = self.gb().elems().to_vec();
        let one = self.ring.field().one();
        let polys = super::module_colon_vector(&basis, &Vector::from_poly(f, 0, order), 1, self.ring.nvars(), one);
        Ideal::new(&self.ring, polys)
    }

    /// `a : b`, intersecting the colons by each generator of `b`.
    pub fn colon(&self, other: &Ideal) -> Ideal {
        if let (Some(a), Some(b)) = (self.as_monomial(), other.as_monomial()) {
            return Ideal::from_monomial(&self.ring, &a.colon(&b));
        }
        let mut acc = Ideal::unit(&self.ring);
        for g in other.basis() {
            acc = acc.intersection(&self.colon_element(&g)).reduced();
        }
        acc
    }

    /// `a : b^∞`, iterating colons until two consecutive results agree.
    pub fn saturation(&self, other: &Ideal) -> Ideal {
        if let (Some(a), Some(b)) = (self.as_monomial(), other.as_monomial()) {
            return Ideal::from_monomial(&self.ring, &a.saturation(&b));
        }
        let mut cur = self.reduced();
        loop {
            let next = cur.colon(other).reduced();
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// `a ∩ k[x_j : j not in vars]`, via a block order eliminating `vars`.
    pub fn eliminate(&self, vars: &[usize]) -> Ideal {
        let n = self.ring.nvars();
        let mut perm: Vec<usize> = vars.to_vec();
        perm.sort_unstable();
        perm.dedup();
        let k = perm.len();
        perm.extend((0..n).filter(|i| !vars.contains(i)));
        // new position p holds old variable perm[p]
        let permute = |m: &Monomial, forward: bool| -> Monomial {
            let mut e = vec![0u32; n];
            for (p, &old) in perm.iter().enumerate() {
                if forward {
                    e[p] = m.exp(old);
                } else {
                    e[old] = m.exp(p);
                }
            }
            Monomial::new(e)
        };
        let order = MonomialOrder::Elimination(k);
        let gens: Vec<Vector> = self
            .gens
            .iter()
            .map(|g| {
                let terms = g.terms().iter().map(|(m, c)| (permute(m, true), c.clone())).collect();
                Vector::from_poly(&Polynomial::from_terms(n, terms), 0, order)
            })
            .collect();
        let gb = groebner_basis(&gens, 1, n, order);
        let polys = gb
            .elems()
            .iter()
            .map(|v| v.entry(0))
            .filter(|p| p.terms().iter().all(|(m, _)| (0..k).all(|i| m.exp(i) == 0)))
            .map(|p| {
                let terms = p.terms().iter().map(|(m, c)| (permute(m, false), c.clone())).collect();
                Polynomial::from_terms(n, terms)
            })
            .collect();
        Ideal::new(&self.ring, polys)
    }

    /// `ℓ(R/a)`.
    pub fn colength(&self) -> Length {
        length_of_quotient(self.gb())
    }

    /// `dim R/a` (-1 for the unit ideal).
    pub fn quotient_dim(&self) -> i64 {
        krull_dim(self.gb())
    }

    /// Hilbert series numerator of `R/a` (meaningful for homogeneous `a`).
    pub fn hilbert_numerator(&self) -> Laurent {
        quotient_numerator(self.gb(), &[0])
    }

    /// Largest generator degree.
    pub fn max_degree(&self) -> u32 {
        self.gens.iter().filter_map(|g| g.total_degree()).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;

    fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| r.parse(g).unwrap()).collect())
    }

    #[test]
    fn basis_of_small_system() {
        let r = PolyRing::qq(&["x", "y"]);
        let i = ideal(&r, &["x^2 - 1", "x*y - 1"]);
        // y - x is in the ideal: y(x^2-1) - x(xy-1) = x - y
        assert!(i.contains(&r.parse("y - x").unwrap()));
        assert!(i.contains(&r.parse("x^2 - 1").unwrap()));
        assert!(!i.contains(&r.parse("x - 1").unwrap()));
        assert!(i.gb().satisfies_buchberger_criterion());
    }

    #[test]
    fn normal_form_by_hand() {
        let r = PolyRing::qq(&["x", "y", "z"]);
        let i = ideal(&r, &["x^2 - z", "y^2"]);
        assert_eq!(i.normal_form(&r.parse("x^2*y").unwrap()), r.parse("y*z").unwrap());
    }

    #[test]
    fn ops_on_small_ideals() {
        let r = PolyRing::qq(&["x", "y"]);
        let a = ideal(&r, &["x^2", "x*y"]);
        assert_eq!(a.colon_element(&r.var(0)), ideal(&r, &["x", "y"]));
        assert_eq!(a.saturation(&Ideal::maximal(&r)), ideal(&r, &["x"]));
        assert_eq!(Ideal::maximal(&r).power(2), ideal(&r, &["x^2", "x*y", "y^2"]));
    }

    #[test]
    fn polynomial_ops_match_expectations() {
        let r = PolyRing::qq(&["x", "y", "z"]);
        let a = ideal(&r, &["x - y"]);
        let b = ideal(&r, &["x - z"]);
        let i = a.intersection(&b);
        assert_eq!(i, ideal(&r, &["(x - y)*(x - z)"]));
        let c = ideal(&r, &["x^2 - y^2", "x*z - y*z"]);
        // (x - y)(x + y, z) : (x - y) = (x + y, z)
        assert_eq!(c.colon_element(&r.parse("x - y").unwrap()), ideal(&r, &["x + y", "z"]));
        let sat = c.saturation(&ideal(&r, &["x + y", "z"]));
        assert_eq!(sat, ideal(&r, &["x - y"]));
        let e = ideal(&r, &["x - y^2", "z - y^3"]).eliminate(&[1]);
        assert!(e.contains(&r.parse("x^3 - z^2").unwrap()));
        assert!(e.gens().iter().all(|g| g.terms().iter().all(|(m, _)| m.exp(1) == 0)));
    }
}
