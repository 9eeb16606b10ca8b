use std::cmp::Ordering;
use std::fmt;

use super::monomial::{Monomial, MonomialOrder};
use super::scalar::{Field, Scalar};

/// Multivariate polynomial with terms strictly descending in grevlex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial { nvars, terms: vec![(m, c)] }
    }

    pub fn monomial(m: Monomial, field: Field) -> Self {
        Self::term(m, field.one())
    }

    pub fn var(nvars: usize, i: usize, field: Field) -> Self {
        Self::monomial(Monomial::var(nvars, i, 1), field)
    }

    /// Builds a polynomial from arbitrary terms, combining and sorting them.
    pub fn from_terms(nvars: usize, mut terms: Vec<(Monomial, Scalar)>) -> Self {
        terms.sort_by(|a, b| MonomialOrder::Grevlex.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { nvars, terms: out }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Nonzero constant term, if any.
    pub fn constant_term(&self) -> Option<&Scalar> {
        self.terms.last().filter(|(m, _)| m.is_one()).map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(n, _)| n.degree() == m.degree()),
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, ca) = &self.terms[i];
            let (b, cb) = &other.terms[j];
            match MonomialOrder::Grevlex.cmp(a, b) {
                Ordering::Greater => {
                    out.push((a.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b.clone(), if negate { cb.neg() } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { ca.sub(cb) } else { ca.add(cb) };
                    if !c.is_zero() {
                        out.push((a.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            other.terms[j..].iter().map(|(m, c)| (m.clone(), if negate { c.neg() } else { c.clone() })),
        );
        Polynomial { nvars: self.nvars, terms: out }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.merge(other, true)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d.mul(c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        // multiplication by a monomial preserves the order
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                terms.push((a.mul(b), ca.mul(cb)));
            }
        }
        Polynomial::from_terms(self.nvars, terms)
    }

    pub fn pow(&self, n: u32, field: Field) -> Polynomial {
        let mut acc = Polynomial::constant(self.nvars, field.one());
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Replaces variable `i` by `images[i]` wherever an image is given.
    pub fn substitute(&self, images: &[Option<Polynomial>], field: Field) -> Polynomial {
        let mut acc = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut kept = m.exps().to_vec();
            let mut factor = Polynomial::constant(self.nvars, c.clone());
            for (i, img) in images.iter().enumerate() {
                if let Some(p) = img {
                    if kept[i] > 0 {
                        factor = factor.mul(&p.pow(kept[i], field));
                        kept[i] = 0;
                    }
                }
            }
            acc = acc.add(&factor.mul_monomial(&Monomial::new(kept)));
        }
        acc
    }

    /// Monic rescaling (leading coefficient one); zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    pub fn fmt_with(&self, vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mon = fmt_monomial(m, vars);
            if m.is_one() {
                s.push_str(&abs.to_string());
            } else if abs.is_one() {
                s.push_str(&mon);
            } else {
                s.push_str(&format!("{abs}*{mon}"));
            }
        }
        s
    }
}

pub fn fmt_monomial(m: &Monomial, vars: &[String]) -> String {
    let parts: Vec<String> = m
        .exps()
        .iter()
        .enumerate()
        .filter(|(_, e)| **e > 0)
        .map(|(i, e)| if *e == 1 { vars[i].clone() } else { format!("{}^{}", vars[i], e) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = (0..self.nvars).map(|i| format!("x{}", i + 1)).collect();
        write!(f, "{}", self.fmt_with(&vars))
    }
}
