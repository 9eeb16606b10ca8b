use std::fmt;

use super::PresentedModule;
use crate::error::{Error, Result};
use crate::groebner::{Ideal, Length};
use crate::laurent::{length_and_dim, Laurent};
use crate::monideal::MonomialIdeal;
use crate::poly::{Polynomial, Ring};

/// One summand `J / I` with `I ⊆ J`; `R/I` has `J = R`.
#[derive(Clone, Debug)]
pub struct Summand {
    pub num: Ideal,
    pub den: Ideal,
}

impl Summand {
    pub fn new(num: Ideal, den: Ideal) -> Result<Self> {
        if !num.contains_ideal(&den) {
            return Err(Error::Containment(format!("{den} is not contained in {num}")));
        }
        Ok(Summand { num, den })
    }

    pub fn cyclic(den: Ideal) -> Self {
        Summand { num: Ideal::unit(den.ring()), den }
    }

    pub fn is_cyclic(&self) -> bool {
        self.num.is_unit()
    }

    /// `HS(R/I) - HS(R/J)`.
    pub fn hilbert_numerator(&self) -> Laurent {
        self.den.hilbert_numerator().sub(&self.num.hilbert_numerator())
    }

    pub fn length(&self) -> Length {
        Length::from_option(length_and_dim(&self.hilbert_numerator(), self.den.ring().nvars()).0)
    }

    pub fn dim(&self) -> i64 {
        length_and_dim(&self.hilbert_numerator(), self.den.ring().nvars()).1
    }

    pub fn is_zero(&self) -> bool {
        self.den.contains_ideal(&self.num)
    }

    /// `I : J`.
    pub fn annihilator(&self) -> Ideal {
        self.den.colon(&self.num)
    }

    pub fn to_presented(&self) -> PresentedModule {
        if self.is_cyclic() {
            PresentedModule::cyclic(&self.den)
        } else {
            PresentedModule::from_ideals(&self.num, &self.den).expect("containment checked at construction")
        }
    }

    /// Both ideals as monomial ideals, when they are.
    pub fn as_monomial(&self) -> Option<(MonomialIdeal, MonomialIdeal)> {
        Some((self.num.as_monomial()?, self.den.as_monomial()?))
    }
}

/// A direct sum `⊕ J_k / I_k` of ideal subquotients. Submodules of the form
/// `⊕ J'_k / I_k` (same denominators) are the diagonal submodules.
#[derive(Clone, Debug)]
pub struct DiagonalModule {
    ring: Ring,
    summands: Vec<Summand>,
}

impl fmt::Display for DiagonalModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|s| match (s.is_cyclic(), s.den.gens().is_empty()) {
                (true, true) => "R".to_string(),
                (true, false) => format!("R/{}", s.den),
                _ => format!("{}/{}", s.num, s.den),
            })
            .collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

impl DiagonalModule {
    pub fn new(ring: &Ring, summands: Vec<Summand>) -> Self {
        DiagonalModule { ring: ring.clone(), summands }
    }

    /// `⊕ R/I_k`.
    pub fn cyclic_sum(ring: &Ring, ideals: Vec<Ideal>) -> Self {
        Self::new(ring, ideals.into_iter().map(Summand::cyclic).collect())
    }

    /// `⊕ R/I_k` for monomial ideals.
    pub fn monomial(ring: &Ring, ideals: &[MonomialIdeal]) -> Self {
        Self::cyclic_sum(ring, ideals.iter().map(|i| Ideal::from_monomial(ring, i)).collect())
    }

    /// Builds the module `name` of a parsed session.
    pub fn from_session(s: &crate::session::SessionModel, name: &str) -> Result<Self> {
        let Some(parts) = s.module(name) else {
            return Err(Error::UnknownName { line: 0, column: 0, name: name.to_string() });
        };
        let summands = parts.into_iter().map(|(j, i)| Summand::new(j, i)).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(&s.ring, summands))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn hilbert_numerator(&self) -> Laurent {
        self.summands.iter().fold(Laurent::zero(), |acc, s| acc.add(&s.hilbert_numerator()))
    }

    pub fn length(&self) -> Length {
        Length::from_option(length_and_dim(&self.hilbert_numerator(), self.ring.nvars()).0)
    }

    pub fn dim(&self) -> i64 {
        self.summands.iter().map(|s| s.dim()).max().unwrap_or(-1)
    }

    pub fn is_zero(&self) -> bool {
        self.summands.iter().all(|s| s.is_zero())
    }

    pub fn is_graded(&self) -> bool {
        self.summands.iter().all(|s| s.num.is_homogeneous() && s.den.is_homogeneous())
    }

    pub fn annihilator(&self) -> Ideal {
        self.summands
            .iter()
            .filter(|s| !s.is_zero())
            .fold(Ideal::unit(&self.ring), |acc, s| acc.intersection(&s.annihilator()).reduced())
    }

    /// `M / aM = ⊕ J_k / (I_k + a J_k)`.
    pub fn quotient_by_ideal(&self, a: &Ideal) -> DiagonalModule {
        let summands = self
            .summands
            .iter()
            .map(|s| Summand { num: s.num.clone(), den: s.den.sum(&a.product(&s.num)).reduced() })
            .collect();
        Self::new(&self.ring, summands)
    }

    /// `M / N` for a diagonal submodule `N = ⊕ J'_k / I_k`.
    pub fn quotient_by(&self, sub: &DiagonalModule) -> Result<DiagonalModule> {
        self.check_shape(sub)?;
        let summands = self
            .summands
            .iter()
            .zip(&sub.summands)
            .map(|(s, t)| Summand::new(s.num.clone(), t.num.sum(&s.den).reduced()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(&self.ring, summands))
    }

    /// `N / N'` for diagonal submodules `N' ⊆ N` of the same module.
    pub fn subquotient(&self, sub: &DiagonalModule) -> Result<DiagonalModule> {
        self.quotient_by(sub)
    }

    /// True when `sub` (same denominators) is contained in `self`.
    pub fn contains(&self, sub: &DiagonalModule) -> bool {
        self.summands.len() == sub.summands.len()
            && self.summands.iter().zip(&sub.summands).all(|(s, t)| s.num.sum(&s.den).contains_ideal(&t.num))
    }

    fn check_shape(&self, other: &DiagonalModule) -> Result<()> {
        if self.summands.len() != other.summands.len() {
            return Err(Error::Containment(format!(
                "{} summands against {}",
                self.summands.len(),
                other.summands.len()
            )));
        }
        Ok(())
    }

    /// The diagonal submodule `⊕ (J_k ∩ I'_k) / I_k` for numerators `I'_k` given per summand.
    pub fn intersect_numerators(&self, nums: &[Ideal]) -> DiagonalModule {
        let summands = self
            .summands
            .iter()
            .zip(nums)
            .map(|(s, n)| Summand { num: s.num.intersection(n).sum(&s.den).reduced(), den: s.den.clone() })
            .collect();
        Self::new(&self.ring, summands)
    }

    /// `0 :_M x = ⊕ ((I_k : x) ∩ J_k) / I_k`.
    pub fn zero_colon(&self, x: &Polynomial) -> DiagonalModule {
        let nums: Vec<Ideal> = self.summands.iter().map(|s| s.den.colon_element(x)).collect();
        self.intersect_numerators(&nums)
    }

    /// The zero submodule with the same denominators.
    pub fn zero_submodule(&self) -> DiagonalModule {
        let summands = self.summands.iter().map(|s| Summand { num: s.den.clone(), den: s.den.clone() }).collect();
        Self::new(&self.ring, summands)
    }

    pub fn to_presented(&self) -> PresentedModule {
        let parts: Vec<PresentedModule> = self.summands.iter().map(|s| s.to_presented()).collect();
        PresentedModule::direct_sum(&self.ring, &parts)
    }

    /// Minimum depth over the nonzero summands.
    pub fn depth(&self) -> Result<usize> {
        let mut best: Option<usize> = None;
        for s in self.summands.iter().filter(|s| !s.is_zero()) {
            let d = s.to_presented().depth()?;
            best = Some(best.map_or(d, |b| b.min(d)));
        }
        best.ok_or_else(|| Error::ZeroModule("depth of the zero module".into()))
    }

    /// `ℓ(H^i_m(M))`, summed over the summands.
    pub fn local_cohomology_length(&self, i: usize) -> Result<Length> {
        let mut total = 0u64;
        for s in self.summands.iter().filter(|s| !s.is_zero()) {
            match s.to_presented().local_cohomology_length(i)? {
                Length::Finite(l) => total += l,
                Length::Infinite => return Ok(Length::Infinite),
            }
        }
        Ok(Length::Finite(total))
    }

    /// Summands as monomial ideal pairs `(J_k, I_k)`, when all are monomial.
    pub fn as_monomial(&self) -> Option<Vec<(MonomialIdeal, MonomialIdeal)>> {
        self.summands.iter().map(|s| s.as_monomial()).collect()
    }
}
