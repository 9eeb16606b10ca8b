use std::cmp::Ordering;

use crate::poly::{Monomial, MonomialOrder, Polynomial, Scalar};

/// One term `c * m * e_comp` of a free-module element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub comp: usize,
    pub mon: Monomial,
    pub coef: Scalar,
}

/// Position-over-term comparison: lower component index is larger.
pub fn cmp_terms(order: MonomialOrder, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    b.0.cmp(&a.0).then_with(|| order.cmp(a.1, b.1))
}

/// Element of a free module `R^r`, terms strictly descending in the
/// position-over-term order built on `order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector {
    order: MonomialOrder,
    nvars: usize,
    terms: Vec<Term>,
}

impl Vector {
    pub fn zero(nvars: usize, order: MonomialOrder) -> Self {
        Vector { order, nvars, terms: Vec::new() }
    }

    pub fn from_terms(nvars: usize, order: MonomialOrder, mut terms: Vec<Term>) -> Self {
        terms.sort_by(|a, b| cmp_terms(order, (b.comp, &b.mon), (a.comp, &a.mon)));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(l) if l.comp == t.comp && l.mon == t.mon => l.coef = l.coef.add(&t.coef),
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coef.is_zero());
        Vector { order, nvars, terms: out }
    }

    /// The polynomial `p` placed in component `comp`.
    pub fn from_poly(p: &Polynomial, comp: usize, order: MonomialOrder) -> Self {
        let terms = p
            .terms()
            .iter()
            .map(|(m, c)| Term { comp, mon: m.clone(), coef: c.clone() })
            .collect();
        Self::from_terms(p.nvars(), order, terms)
    }

    /// Column vector with entries `polys[i]` in component `i + offset`.
    pub fn from_polys(polys: &[Polynomial], offset: usize, nvars: usize, order: MonomialOrder) -> Self {
        let mut terms = Vec::new();
        for (i, p) in polys.iter().enumerate() {
            terms.extend(p.terms().iter().map(|(m, c)| Term {
                comp: i + offset,
                mon: m.clone(),
                coef: c.clone(),
            }));
        }
        Self::from_terms(nvars, order, terms)
    }

    pub fn unit(nvars: usize, comp: usize, order: MonomialOrder, one: Scalar) -> Self {
        Vector { order, nvars, terms: vec![Term { comp, mon: Monomial::one(nvars), coef: one }] }
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Entry in component `comp` as a polynomial.
    pub fn entry(&self, comp: usize) -> Polynomial {
        Polynomial::from_terms(
            self.nvars,
            self.terms
                .iter()
                .filter(|t| t.comp == comp)
                .map(|t| (t.mon.clone(), t.coef.clone()))
                .collect(),
        )
    }

    pub fn to_polys(&self, rank: usize) -> Vec<Polynomial> {
        (0..rank).map(|c| self.entry(c)).collect()
    }

    /// Same element, re-sorted under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Vector {
        Self::from_terms(self.nvars, order, self.terms.clone())
    }

    /// Maps components through `f`; entries mapped to `None` are dropped.
    pub fn map_comps(&self, f: impl Fn(usize) -> Option<usize>) -> Vector {
        let terms = self
            .terms
            .iter()
            .filter_map(|t| f(t.comp).map(|c| Term { comp: c, mon: t.mon.clone(), coef: t.coef.clone() }))
            .collect();
        Self::from_terms(self.nvars, self.order, terms)
    }

    pub fn max_comp(&self) -> Option<usize> {
        self.terms.iter().map(|t| t.comp).max()
    }

    pub fn min_comp(&self) -> Option<usize> {
        self.terms.first().map(|t| t.comp)
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        if c.is_zero() {
            return Vector::zero(self.nvars, self.order);
        }
        Vector {
            order: self.order,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|t| Term { comp: t.comp, mon: t.mon.clone(), coef: t.coef.mul(c) })
                .collect(),
        }
    }

    pub fn monic(&self) -> Vector {
        match self.terms.first() {
            Some(t) if !t.coef.is_one() => self.scale(&t.coef.inv()),
            _ => self.clone(),
        }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Vector {
        let mut terms = Vec::with_capacity(self.terms.len() * p.terms().len());
        for t in &self.terms {
            for (m, c) in p.terms() {
                terms.push(Term { comp: t.comp, mon: t.mon.mul(m), coef: t.coef.mul(c) });
            }
        }
        Self::from_terms(self.nvars, self.order, terms)
    }

    pub fn add(&self, other: &Vector) -> Vector {
        self.axpy(None, None, other, false)
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        self.axpy(None, None, other, true)
    }

    /// `self - c * m * other`.
    pub fn sub_scaled(&self, c: &Scalar, m: &Monomial, other: &Vector) -> Vector {
        self.axpy(Some(c), Some(m), other, true)
    }

    fn axpy(&self, c: Option<&Scalar>, m: Option<&Monomial>, other: &Vector, negate: bool) -> Vector {
        let order = self.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let scaled = |t: &Term| -> Term {
            let mon = match m {
                Some(m) => t.mon.mul(m),
                None => t.mon.clone(),
            };
            let mut coef = match c {
                Some(c) => t.coef.mul(c),
                None => t.coef.clone(),
            };
            if negate {
                coef = coef.neg();
            }
            Term { comp: t.comp, mon, coef }
        };
        let (mut i, mut j) = (0, 0);
        let mut pending: Option<Term> = None;
        loop {
            if pending.is_none() && j < other.terms.len() {
                pending = Some(scaled(&other.terms[j]));
                j += 1;
            }
            match (self.terms.get(i), pending.as_ref()) {
                (None, None) => break,
                (Some(a), None) => {
                    out.push(a.clone());
                    i += 1;
                }
                (None, Some(_)) => out.push(pending.take().unwrap()),
                (Some(a), Some(b)) => match cmp_terms(order, (a.comp, &a.mon), (b.comp, &b.mon)) {
                    Ordering::Greater => {
                        out.push(a.clone());
                        i += 1;
                    }
                    Ordering::Less => out.push(pending.take().unwrap()),
                    Ordering::Equal => {
                        let b = pending.take().unwrap();
                        let s = a.coef.add(&b.coef);
                        if !s.is_zero() {
                            out.push(Term { comp: a.comp, mon: b.mon, coef: s });
                        }
                        i += 1;
                    }
                },
            }
        }
        Vector { order, nvars: self.nvars, terms: out }
    }

    /// Degree of the leading term under the given component shifts.
    pub fn degree(&self, shifts: &[i64]) -> Option<i64> {
        self.lead().map(|t| t.mon.degree() as i64 + shifts[t.comp])
    }

    pub fn is_homogeneous(&self, shifts: &[i64]) -> bool {
        match self.degree(shifts) {
            None => true,
            Some(d) => self.terms.iter().all(|t| t.mon.degree() as i64 + shifts[t.comp] == d),
        }
    }

    /// True when every nonzero entry is a single monomial term.
    pub fn is_term(&self) -> bool {
        self.terms.len() == 1
    }
}
