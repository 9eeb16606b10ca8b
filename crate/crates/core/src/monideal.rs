//! Combinatorics of monomial ideals: decompositions, associated primes,
//! Hilbert series and localization at monomial primes.

use std::collections::BTreeSet;

use log::debug;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{length_and_dim, Laurent};
use crate::poly::{MonomialOrder, Monomial};

/// Monomial ideal stored by its minimal generators (sorted, an antichain).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

/// The prime generated by a subset of the variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonomialPrime {
    pub vars: Vec<usize>,
}

impl MonomialPrime {
    pub fn new(mut vars: Vec<usize>) -> Self {
        vars.sort_unstable();
        vars.dedup();
        MonomialPrime { vars }
    }

    pub fn maximal(nvars: usize) -> Self {
        MonomialPrime { vars: (0..nvars).collect() }
    }

    /// Dimension of `R/p`.
    pub fn dim(&self, nvars: usize) -> usize {
        nvars - self.vars.len()
    }

    pub fn ideal(&self, nvars: usize) -> MonomialIdeal {
        MonomialIdeal::new(nvars, self.vars.iter().map(|&i| Monomial::var(nvars, i, 1)).collect())
    }
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: Vec<Monomial>) -> Self {
        let mut sorted = gens;
        sorted.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| MonomialOrder::Grevlex.cmp(a, b)));
        sorted.dedup();
        let mut min: Vec<Monomial> = Vec::with_capacity(sorted.len());
        for g in sorted {
            if !min.iter().any(|m| m.divides(&g)) {
                min.push(g);
            }
        }
        min.sort_by(|a, b| MonomialOrder::Grevlex.cmp(b, a));
        MonomialIdeal { nvars, gens: min }
    }

    pub fn from_exps(nvars: usize, exps: &[&[u32]]) -> Self {
        Self::new(nvars, exps.iter().map(|e| Monomial::new(e.to_vec())).collect())
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: Vec::new() }
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: vec![Monomial::one(nvars)] }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_one())
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        MonomialIdeal::new(self.nvars, g)
    }

    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a.mul(b));
            }
        }
        MonomialIdeal::new(self.nvars, g)
    }

    pub fn power(&self, n: u32) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(self.nvars);
        for _ in 0..n {
            acc = acc.product(self);
        }
        acc
    }

    pub fn intersection(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a.lcm(b));
            }
        }
        MonomialIdeal::new(self.nvars, g)
    }

    pub fn colon_monomial(&self, m: &Monomial) -> MonomialIdeal {
        MonomialIdeal::new(self.nvars, self.gens.iter().map(|g| g.colon(m)).collect())
    }

    pub fn colon(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(self.nvars);
        for g in &other.gens {
            acc = acc.intersection(&self.colon_monomial(g));
        }
        acc
    }

    /// `I : J^infinity`.
    pub fn saturation(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut cur = self.clone();
        loop {
            let next = cur.colon(other);
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Irredundant decomposition into irreducible ideals generated by pure powers.
    pub fn irreducible_decomposition(&self) -> Result<Vec<MonomialIdeal>> {
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let mut out: Vec<MonomialIdeal> = Vec::new();
        let mut stack = vec![self.clone()];
        while let Some(i) = stack.pop() {
            match i.gens.iter().find(|g| g.support().len() > 1) {
                None => out.push(i),
                Some(g) => {
                    // I + (x^a h) = (I + x^a) ∩ (I + h) for coprime x^a, h
                    let v = g.support()[0];
                    let xa = Monomial::var(self.nvars, v, g.exp(v));
                    let h = xa.quotient_of(g);
                    let rest: Vec<Monomial> = i.gens.iter().filter(|m| *m != g).cloned().collect();
                    let mut a = rest.clone();
                    a.push(xa);
                    let mut b = rest;
                    b.push(h);
                    stack.push(MonomialIdeal::new(self.nvars, b));
                    stack.push(MonomialIdeal::new(self.nvars, a));
                }
            }
        }
        out.sort_by(|a, b| a.gens.cmp(&b.gens));
        out.dedup();
        let irredundant: Vec<MonomialIdeal> = out
            .iter()
            .filter(|q| !out.iter().any(|p| p != *q && q.contains_ideal(p)))
            .cloned()
            .collect();
        Ok(irredundant)
    }

    /// Radical support of an irreducible (pure-power generated) ideal.
    pub fn support_prime(&self) -> MonomialPrime {
        MonomialPrime::new(self.gens.iter().flat_map(|g| g.support()).collect())
    }

    pub fn assoc_primes(&self) -> Result<Vec<MonomialPrime>> {
        let set: BTreeSet<MonomialPrime> =
            self.irreducible_decomposition()?.iter().map(|q| q.support_prime()).collect();
        Ok(set.into_iter().collect())
    }

    /// Numerator `N(t)` of the Hilbert series `N(t)/(1-t)^n` of `S/I`.
    pub fn hilbert_numerator(&self) -> Laurent {
        if self.is_unit() {
            return Laurent::zero();
        }
        if self.gens.is_empty() {
            return Laurent::one();
        }
        let coprime = self
            .gens
            .iter()
            .enumerate()
            .all(|(i, a)| self.gens[i + 1..].iter().all(|b| a.is_coprime(b)));
        if coprime {
            let mut acc = Laurent::one();
            for g in &self.gens {
                acc = acc.mul(&Laurent::one().sub(&Laurent::monomial(g.degree() as i64, 1)));
            }
            return acc;
        }
        // pivot: most frequent variable among mixed generators, smallest exponent there
        let mixed: Vec<&Monomial> = self.gens.iter().filter(|g| g.support().len() > 1).collect();
        let mut counts = vec![0usize; self.nvars];
        for g in &mixed {
            for v in g.support() {
                counts[v] += 1;
            }
        }
        let v = (0..self.nvars).max_by_key(|&i| (counts[i], usize::MAX - i)).unwrap();
        let e = mixed.iter().filter(|g| g.exp(v) > 0).map(|g| g.exp(v)).min().unwrap();
        let p = Monomial::var(self.nvars, v, e);
        let with = self.sum(&MonomialIdeal::new(self.nvars, vec![p.clone()]));
        let colon = self.colon_monomial(&p);
        with.hilbert_numerator().add(&colon.hilbert_numerator().shift(e as i64))
    }

    /// Krull dimension of `S/I`; -1 for the unit ideal.
    pub fn dim(&self) -> i64 {
        if self.is_unit() {
            return -1;
        }
        // largest variable set avoiding the support of every generator
        let supports: Vec<u64> = self
            .gens
            .iter()
            .map(|g| g.support().iter().fold(0u64, |acc, &v| acc | (1 << v)))
            .collect();
        let n = self.nvars;
        let mut best = 0i64;
        for set in 0u64..(1u64 << n) {
            let size = set.count_ones() as i64;
            if size > best && supports.iter().all(|s| s & !set != 0) {
                best = size;
            }
        }
        best
    }

    /// Length of `S/I`, or `None` when infinite.
    pub fn colength(&self) -> Option<u64> {
        length_and_dim(&self.hilbert_numerator(), self.nvars).0
    }

    /// Sets the variables outside `p` to 1; result lives in the subring on `p`'s variables.
    pub fn localize(&self, p: &MonomialPrime) -> MonomialIdeal {
        MonomialIdeal::new(p.vars.len(), self.gens.iter().map(|g| g.restrict(&p.vars)).collect())
    }

    /// `ℓ(H^0_{pR_p}(S_p / I_p))`; zero (with a warning) when `p` is not associated.
    pub fn local_h0_length(&self, p: &MonomialPrime) -> u64 {
        let local = self.localize(p);
        let k = p.vars.len();
        if local.is_unit() {
            debug!("prime {:?} does not contain the ideal; local length is 0", p.vars);
            return 0;
        }
        let sat = if k == 0 {
            MonomialIdeal::unit(0)
        } else {
            local.saturation(&MonomialPrime::maximal(k).ideal(k))
        };
        let diff = local.hilbert_numerator().sub(&sat.hilbert_numerator());
        let len = length_and_dim(&diff, k).0.expect("H^0 has finite length");
        if len == 0 {
            debug!("prime {:?} is not associated; local length is 0", p.vars);
        }
        len
    }

    pub fn fmt_with(&self, vars: &[String]) -> String {
        if self.gens.is_empty() {
            return "(0)".into();
        }
        let parts: Vec<String> = self.gens.iter().map(|g| crate::poly::fmt_monomial(g, vars)).collect();
        format!("({})", parts.join(", "))
    }
}

/// Free functions mirroring the operations of this module.
pub fn irreducible_decomposition(i: &MonomialIdeal) -> Result<Vec<MonomialIdeal>> {
    i.irreducible_decomposition()
}

pub fn assoc_primes_monomial(i: &MonomialIdeal) -> Result<Vec<MonomialPrime>> {
    i.assoc_primes()
}

pub fn hilbert_series_numerator(i: &MonomialIdeal) -> Laurent {
    i.hilbert_numerator()
}

pub fn localize_monomial(i: &MonomialIdeal, p: &MonomialPrime) -> MonomialIdeal {
    i.localize(p)
}

pub fn local_h0_length(i: &MonomialIdeal, p: &MonomialPrime) -> u64 {
    i.local_h0_length(p)
}

/// `adeg_j(q; ⊕ R/I_k)` from the definition: the sum over associated primes
/// `p` with `dim R/p = j` of `Σ_k ℓ(H^0_p(R/I_k)_p) · e_0(q; R/p)`.
pub fn adeg_oracle(
    ring: &crate::poly::Ring,
    summands: &[MonomialIdeal],
    q: &crate::groebner::Ideal,
    j: usize,
    cfg: &crate::hilbert::FitConfig,
) -> Result<u64> {
    let n = ring.nvars();
    let mut primes = BTreeSet::new();
    for i in summands {
        primes.extend(i.assoc_primes()?.into_iter().filter(|p| p.dim(n) == j));
    }
    let mut total = 0u64;
    for p in primes {
        let local: u64 = summands.iter().map(|i| i.local_h0_length(&p)).sum();
        if local == 0 {
            continue;
        }
        let rp = crate::modpres::DiagonalModule::monomial(ring, &[p.ideal(n)]);
        let e0 = crate::hilbert::multiplicity(&rp, q, cfg)?;
        total += local * e0 as u64;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(n: usize, e: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exps(n, e)
    }

    /// Oracle: count standard monomials of each degree up to `max`.
    fn count_by_degree(i: &MonomialIdeal, max: u32) -> Vec<i128> {
        let n = i.nvars();
        let mut counts = vec![0i128; max as usize + 1];
        let mut exps = vec![0u32; n];
        fn rec(i: &MonomialIdeal, k: usize, left: u32, exps: &mut Vec<u32>, counts: &mut Vec<i128>, max: u32) {
            if k == exps.len() {
                let m = Monomial::new(exps.clone());
                if !i.contains(&m) {
                    counts[m.degree() as usize] += 1;
                }
                return;
            }
            for e in 0..=left {
                exps[k] = e;
                rec(i, k + 1, left - e, exps, counts, max);
            }
            exps[k] = 0;
        }
        rec(i, 0, max, &mut exps, &mut counts, max);
        counts
    }

    fn series_coeffs(num: &Laurent, n: usize, max: u32) -> Vec<i128> {
        // expand N(t) / (1-t)^n up to degree max
        let mut c: Vec<i128> = (0..=max as i64).map(|e| num.coeff(e)).collect();
        for _ in 0..n {
            for k in 1..c.len() {
                c[k] += c[k - 1];
            }
        }
        c
    }

    #[test]
    fn decomposition_examples() {
        let i = mi(2, &[&[2, 0], &[1, 1]]);
        let d = i.irreducible_decomposition().unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.contains(&mi(2, &[&[1, 0]])));
        assert!(d.contains(&mi(2, &[&[2, 0], &[0, 1]])));
        let inter = d.iter().skip(1).fold(d[0].clone(), |a, b| a.intersection(b));
        assert_eq!(inter, i);
        assert_eq!(mi(2, &[&[1, 1]]).irreducible_decomposition().unwrap().len(), 2);
        assert_eq!(mi(2, &[&[2, 0]]).irreducible_decomposition().unwrap(), vec![mi(2, &[&[2, 0]])]);
        assert!(MonomialIdeal::unit(2).irreducible_decomposition().is_err());
    }

    #[test]
    fn assoc_primes_examples() {
        let i = mi(2, &[&[2, 0], &[1, 1]]);
        assert_eq!(i.assoc_primes().unwrap(), vec![MonomialPrime::new(vec![0]), MonomialPrime::new(vec![0, 1])]);
        let sq = mi(4, &[&[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1]]);
        assert_eq!(sq.assoc_primes().unwrap(), vec![MonomialPrime::new(vec![0, 1]), MonomialPrime::new(vec![2, 3])]);
        assert_eq!(mi(3, &[&[0, 0, 2]]).assoc_primes().unwrap(), vec![MonomialPrime::new(vec![2])]);
    }

    #[test]
    fn hilbert_numerators() {
        assert_eq!(mi(2, &[&[1, 0]]).hilbert_numerator(), Laurent::from_coeffs(&[1, -1]));
        let i = mi(2, &[&[2, 0], &[1, 1]]);
        assert_eq!(i.hilbert_numerator(), Laurent::from_coeffs(&[1, 0, -2, 1]));
        assert_eq!(series_coeffs(&i.hilbert_numerator(), 2, 6), count_by_degree(&i, 6));
        assert!(MonomialIdeal::unit(2).hilbert_numerator().is_zero());
    }

    #[test]
    fn numerator_matches_enumeration_on_mixed_ideal() {
        let i = mi(3, &[&[2, 1, 0], &[0, 2, 2], &[1, 0, 3], &[1, 1, 1]]);
        assert_eq!(series_coeffs(&i.hilbert_numerator(), 3, 8), count_by_degree(&i, 8));
    }

    #[test]
    fn localization_examples() {
        let z2 = mi(3, &[&[0, 0, 2]]);
        assert_eq!(z2.localize(&MonomialPrime::new(vec![2])), mi(1, &[&[2]]));
        let sq = mi(4, &[&[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1]]);
        assert_eq!(sq.localize(&MonomialPrime::new(vec![0, 1])), mi(2, &[&[1, 0], &[0, 1]]));
        let i = mi(2, &[&[2, 0], &[1, 1]]);
        assert_eq!(i.localize(&MonomialPrime::new(vec![0])), mi(1, &[&[1]]));
    }

    #[test]
    fn local_lengths() {
        assert_eq!(mi(3, &[&[0, 0, 2]]).local_h0_length(&MonomialPrime::new(vec![2])), 2);
        assert_eq!(mi(2, &[&[2, 0], &[1, 1]]).local_h0_length(&MonomialPrime::new(vec![0, 1])), 1);
        assert_eq!(mi(2, &[&[1, 0]]).local_h0_length(&MonomialPrime::new(vec![0])), 1);
        // non-associated prime
        assert_eq!(mi(2, &[&[1, 0]]).local_h0_length(&MonomialPrime::new(vec![0, 1])), 0);
        // the zero ideal at the zero prime
        assert_eq!(MonomialIdeal::zero(3).local_h0_length(&MonomialPrime::new(vec![])), 1);
    }

    #[test]
    fn oracle_on_example_module() {
        let r = crate::poly::PolyRing::qq(&["X", "Y", "Z"]);
        let q = crate::groebner::Ideal::new(&r, vec![r.parse("X^2").unwrap(), r.parse("Y^2").unwrap(), r.parse("Z").unwrap()]);
        let summands = [MonomialIdeal::zero(3), mi(3, &[&[0, 0, 2]])];
        let cfg = crate::hilbert::FitConfig::default();
        let got: Vec<u64> = (0..4).map(|j| adeg_oracle(&r, &summands, &q, j, &cfg).unwrap()).collect();
        assert_eq!(got, vec![0, 0, 8, 4]);
    }

    #[test]
    fn dims_and_colength() {
        assert_eq!(mi(2, &[&[2, 0], &[1, 1]]).dim(), 1);
        assert_eq!(MonomialIdeal::zero(3).dim(), 3);
        assert_eq!(MonomialIdeal::unit(3).dim(), -1);
        assert_eq!(mi(2, &[&[2, 0], &[1, 1], &[0, 2]]).colength(), Some(3));
        assert_eq!(mi(2, &[&[2, 0], &[1, 1]]).colength(), None);
    }

    #[test]
    fn colon_and_saturation() {
        let i = mi(2, &[&[2, 0], &[1, 1]]);
        let x = mi(2, &[&[1, 0]]);
        assert_eq!(i.colon(&x), mi(2, &[&[1, 0], &[0, 1]]));
        assert_eq!(i.saturation(&mi(2, &[&[1, 0], &[0, 1]])), x);
    }
}
