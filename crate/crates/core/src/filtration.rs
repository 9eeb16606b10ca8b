//! Dimension filtrations, the filtration predicates, Cohen–Macaulay
//! classification of the pieces, and the invariants `I(M)`, `I(F,M)`, `C`.

use std::fmt;

use log::{debug, warn};
use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{Ideal, Length};
use crate::modpres::{minimal_free_resolution, DiagonalModule, Summand};
use crate::monideal::MonomialIdeal;
use crate::report::{opt_bigint_str, SCHEMA_VERSION};

/// A chain `M = M_0 ⊇ M_1 ⊇ ... ⊇ M_s` of diagonal submodules.
#[derive(Clone, Debug)]
pub struct Filtration {
    terms: Vec<DiagonalModule>,
    dims: Vec<i64>,
}

impl Filtration {
    /// Wraps a chain; `terms[0]` is the module itself.
    pub fn new(terms: Vec<DiagonalModule>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Containment("a filtration needs at least the module itself".into()));
        }
        for w in terms.windows(2) {
            if !w[0].contains(&w[1]) {
                return Err(Error::Containment("filtration terms are not nested".into()));
            }
        }
        let dims = terms.iter().map(|m| m.dim()).collect();
        Ok(Filtration { terms, dims })
    }

    pub fn module(&self) -> &DiagonalModule {
        &self.terms[0]
    }

    pub fn terms(&self) -> &[DiagonalModule] {
        &self.terms
    }

    pub fn dims(&self) -> &[i64] {
        &self.dims
    }

    /// The index of the last term (`t` for the dimension filtration).
    pub fn len(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `M_i / M_{i+1}`.
    pub fn piece(&self, i: usize) -> DiagonalModule {
        self.terms[i].quotient_by(&self.terms[i + 1]).expect("nested terms")
    }

    /// `M / M_k`.
    pub fn quotient(&self, k: usize) -> DiagonalModule {
        self.terms[0].quotient_by(&self.terms[k]).expect("nested terms")
    }

    pub fn last(&self) -> &DiagonalModule {
        self.terms.last().expect("nonempty")
    }

    /// Checks that every diagonal submodule strictly between `M_i` and
    /// `M_{i-1}` obtained by adding one generator of `M_{i-1}` has the
    /// dimension of `M_{i-1}`.
    pub fn maximality_probe(&self) -> bool {
        for i in 1..self.terms.len() {
            let (big, small) = (&self.terms[i - 1], &self.terms[i]);
            for (k, (sb, ss)) in big.summands().iter().zip(small.summands()).enumerate() {
                for g in sb.num.basis() {
                    if ss.num.contains(&g) {
                        continue;
                    }
                    let mut summands: Vec<Summand> = small.summands().to_vec();
                    summands[k].num = ss.num.sum(&Ideal::new(ss.num.ring(), vec![g])).reduced();
                    let enlarged = DiagonalModule::new(small.ring(), summands);
                    if enlarged.dim() != self.dims[i - 1] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// `I^{(s)}` with `I^{(s)}/I` the largest submodule of `R/I` of dimension `<= s`.
pub fn dimension_part(i: &Ideal, s: i64) -> Ideal {
    if s < 0 || i.is_unit() {
        return i.clone();
    }
    match i.as_monomial() {
        Some(m) => Ideal::from_monomial(i.ring(), &monomial_dimension_part(&m, s)),
        None => schenzel_dimension_part(i, s),
    }
}

/// Intersection of the irreducible components of dimension `> s`.
pub fn monomial_dimension_part(i: &MonomialIdeal, s: i64) -> MonomialIdeal {
    let comps = i.irreducible_decomposition().unwrap_or_default();
    let n = i.nvars();
    comps
        .into_iter()
        .filter(|q| q.dim() > s)
        .fold(MonomialIdeal::unit(n), |acc, q| acc.intersection(&q))
}

/// `I : a^∞` with `a = ∏_{j<=s} ann Ext^{n-j}(R/I, R)`.
pub fn schenzel_dimension_part(i: &Ideal, s: i64) -> Ideal {
    let ring = i.ring();
    let n = ring.nvars() as i64;
    let res = minimal_free_resolution(&crate::modpres::PresentedModule::cyclic(i)).expect("homogeneous ideal");
    let mut a = Ideal::unit(ring);
    for j in 0..=s.min(n) {
        let ext = res.ext(ring, (n - j) as usize).expect("index in range");
        if !ext.is_zero() {
            a = a.product(&ext.annihilator()).reduced();
        }
    }
    i.saturation(&a)
}

/// The dimension filtration `M = D_0 ⊃ D_1 ⊃ ... ⊃ D_t = H^0_m(M)`; when
/// `H^0_m(M) = 0` the last stored term is the zero submodule.
pub fn dimension_filtration(m: &DiagonalModule) -> Filtration {
    let mut terms = vec![m.clone()];
    let mut dims = vec![m.dim()];
    while *dims.last().unwrap() > 0 {
        let s = dims.last().unwrap() - 1;
        let nums: Vec<Ideal> = m.summands().iter().map(|sm| dimension_part(&sm.den, s)).collect();
        let next = m.intersect_numerators(&nums);
        let d = next.dim();
        debug!("dimension filtration: D_{} has dimension {d}", terms.len());
        terms.push(next);
        dims.push(d);
    }
    Filtration { terms, dims }
}

/// True iff the dimensions strictly decrease.
pub fn check_dimension_condition(f: &Filtration) -> bool {
    f.dims.windows(2).all(|w| w[0] > w[1])
}

/// `ℓ(D_i / M_i) < ∞` for all `i`, with `D` the dimension filtration.
pub fn in_calf(f: &Filtration) -> bool {
    let d = dimension_filtration(f.module());
    if d.len() != f.len() {
        warn!("filtration has length {} but the dimension filtration has length {}", f.len(), d.len());
        return false;
    }
    d.terms.iter().zip(&f.terms).all(|(di, mi)| di.contains(mi) && di.quotient_by(mi).is_ok_and(|q| q.length().is_finite()))
}

/// Classification verdict, most specific first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "CM")]
    Cm,
    #[serde(rename = "sCM")]
    SequentiallyCm,
    #[serde(rename = "gCM")]
    GeneralizedCm,
    #[serde(rename = "sgCM")]
    SequentiallyGeneralizedCm,
    #[serde(rename = "none")]
    None,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Cm => "CM",
            Verdict::SequentiallyCm => "sCM",
            Verdict::GeneralizedCm => "gCM",
            Verdict::SequentiallyGeneralizedCm => "sgCM",
            Verdict::None => "none",
        };
        write!(f, "{s}")
    }
}

/// Cohomological data of one piece `C_i = M_i / M_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceReport {
    pub index: usize,
    pub dim: i64,
    pub depth: usize,
    /// `ℓ(H^j_m(C_i))` for `j < dim C_i`.
    pub local_cohomology: Vec<Length>,
    pub cohen_macaulay: bool,
    pub generalized_cm: bool,
    /// `I(C_i)`, present when the piece is generalized Cohen–Macaulay.
    #[serde(with = "opt_bigint_str")]
    pub invariant: Option<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationReport {
    pub schema_version: u32,
    pub module: String,
    pub dim: i64,
    pub depth: usize,
    /// `d_i = dim D_i`, with `-1` for a zero last term.
    pub dims: Vec<i64>,
    pub t: usize,
    /// `ℓ(W)`, `W = H^0_m(M)`.
    pub w_length: u64,
    pub pieces: Vec<PieceReport>,
    pub is_cm: bool,
    pub is_gcm: bool,
    pub is_scm: bool,
    pub is_sgcm: bool,
    /// The finite-colength predicate against the dimension filtration.
    pub in_calf: bool,
    pub verdict: Verdict,
    /// `I(F,M)` for `F = D`, when every piece is generalized Cohen–Macaulay.
    #[serde(with = "opt_bigint_str")]
    pub invariant_filtration: Option<BigInt>,
    /// `C = (3I)^{d!} - 2I`, when `I(F,M)` is defined.
    #[serde(with = "opt_bigint_str")]
    pub bound_c: Option<BigInt>,
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `I(C) = Σ_{j<d} binom(d-1, j) ℓ(H^j_m(C))` for a generalized
/// Cohen–Macaulay module, `ℓ(C)` in dimension 0.
pub fn stuckrad_vogel_i(c: &DiagonalModule) -> Result<BigInt> {
    let d = c.dim();
    if d <= 0 {
        return Ok(BigInt::from(c.length().finite().unwrap_or(0)));
    }
    let mut acc = BigInt::zero();
    for j in 0..d as usize {
        match c.local_cohomology_length(j)? {
            Length::Finite(l) => acc += binomial(d as u64 - 1, j as u64) * l,
            Length::Infinite => {
                return Err(Error::NotGeneralizedCm(format!("H^{j}_m of {c} has infinite length")));
            }
        }
    }
    Ok(acc)
}

/// `I(F,M) = Σ_{i<t} I(M_i/M_{i+1}) + ℓ(M_t)`.
pub fn i_of_filtration(f: &Filtration) -> Result<BigInt> {
    let mut acc = BigInt::zero();
    for i in 0..f.len() {
        acc += stuckrad_vogel_i(&f.piece(i))?;
    }
    match f.last().length() {
        Length::Finite(l) if !f.is_empty() || f.dims[0] <= 0 => acc += l,
        Length::Finite(_) => {}
        Length::Infinite => {
            return Err(Error::NotGeneralizedCm("the last filtration term has infinite length".into()));
        }
    }
    Ok(acc)
}

fn factorial(d: u64) -> u64 {
    (1..=d).product()
}

/// `C = max(0, (3I)^{d!} - 2I)`.
pub fn regularity_bound_c(i: &BigInt, d: usize) -> BigInt {
    let three_i: BigInt = BigInt::from(3) * i;
    let c = Pow::pow(&three_i, factorial(d as u64)) - BigInt::from(2) * i;
    if c < BigInt::zero() {
        BigInt::zero()
    } else {
        c
    }
}

/// The coefficient bounds: `I(M/M_1)` for `i = 1`, otherwise
/// `2^{i-1} ((C+1)^{d-1} I + d + C + 2)^{i-1} I` (exponent `d-1` at `i = d`).
pub fn coefficient_bound(f: &Filtration, i: usize) -> Result<BigInt> {
    let d = f.dims[0].max(0) as usize;
    if i < 1 || i > d {
        return Err(Error::OutOfRange { index: i as i64, lo: 1, hi: d as i64 });
    }
    if i == 1 {
        return if f.is_empty() { stuckrad_vogel_i(f.module()) } else { stuckrad_vogel_i(&f.piece(0)) };
    }
    let big_i = i_of_filtration(f)?;
    let c = regularity_bound_c(&big_i, d);
    let base: BigInt = Pow::pow(&(&c + 1u32), (d - 1) as u64) * &big_i + BigInt::from(d) + &c + 2u32;
    let two: BigInt = BigInt::from(2);
    Ok(Pow::pow(&two, (i - 1) as u64) * Pow::pow(&base, (i - 1) as u64) * big_i)
}

/// The upper bound `Σ_{i<t} binom(n + d_i - 1, d_i - 1) I(M_i/M_{i+1}) + ℓ(M_t) - ℓ(W)`.
pub fn adjusted_upper_bound(f: &Filtration, n: u64) -> Result<BigInt> {
    let mut acc = BigInt::zero();
    for i in 0..f.len() {
        let di = f.dims[i];
        if di < 1 {
            continue;
        }
        acc += binomial(n + di as u64 - 1, di as u64 - 1) * stuckrad_vogel_i(&f.piece(i))?;
    }
    let last = f.last().length().finite().unwrap_or(0);
    let w = dimension_filtration(f.module());
    let wl = if w.dims.last().copied().unwrap_or(-1) <= 0 { w.last().length().finite().unwrap_or(0) } else { 0 };
    Ok(acc + last - wl)
}

/// The threshold `C + binom(C + d - 1, d - 1) I + d` past which `H^ad >= 0`.
pub fn nonnegativity_threshold(c: &BigInt, big_i: &BigInt, d: usize) -> Option<u64> {
    let cu: u64 = c.try_into().ok()?;
    let t = c + binomial(cu + d as u64 - 1, d as u64 - 1) * big_i + BigInt::from(d);
    t.try_into().ok()
}

fn piece_report(index: usize, c: &DiagonalModule) -> Result<PieceReport> {
    let dim = c.dim();
    let depth = c.depth()?;
    let mut lc = Vec::new();
    for j in 0..dim.max(0) as usize {
        lc.push(c.local_cohomology_length(j)?);
    }
    let gcm = lc.iter().all(|l| l.is_finite());
    let invariant = if gcm { Some(stuckrad_vogel_i(c)?) } else { None };
    Ok(PieceReport { index, dim, depth, local_cohomology: lc, cohen_macaulay: depth as i64 == dim, generalized_cm: gcm, invariant })
}

/// Builds the dimension filtration, examines every piece and decides the verdict.
pub fn classify(m: &DiagonalModule) -> Result<FiltrationReport> {
    if m.is_zero() {
        return Err(Error::ZeroModule("cannot classify the zero module".into()));
    }
    if !m.is_graded() {
        return Err(Error::NotGraded("classification needs homogeneous ideals".into()));
    }
    let d = dimension_filtration(m);
    let t = d.len();
    let dim = m.dim();
    let depth = m.depth()?;
    let mut pieces = Vec::new();
    for i in 0..t {
        pieces.push(piece_report(i, &d.piece(i))?);
    }
    let w_length = if d.dims[t] <= 0 { d.last().length().finite().unwrap_or(0) } else { 0 };
    let mut below_top = Vec::new();
    for j in 0..dim.max(0) as usize {
        below_top.push(m.local_cohomology_length(j)?);
    }
    let is_cm = depth as i64 == dim;
    let is_gcm = below_top.iter().all(|l| l.is_finite());
    let is_scm = pieces.iter().all(|p| p.cohen_macaulay);
    let is_sgcm = pieces.iter().all(|p| p.generalized_cm);
    let verdict = if is_cm {
        Verdict::Cm
    } else if is_scm {
        Verdict::SequentiallyCm
    } else if is_gcm {
        Verdict::GeneralizedCm
    } else if is_sgcm {
        Verdict::SequentiallyGeneralizedCm
    } else {
        Verdict::None
    };
    let invariant_filtration = if is_sgcm {
        Some(pieces.iter().filter_map(|p| p.invariant.clone()).sum::<BigInt>() + w_length)
    } else {
        None
    };
    let bound_c = invariant_filtration.as_ref().map(|i| regularity_bound_c(i, dim.max(0) as usize));
    Ok(FiltrationReport {
        schema_version: SCHEMA_VERSION,
        module: m.to_string(),
        dim,
        depth,
        dims: d.dims.clone(),
        t,
        w_length,
        pieces,
        is_cm,
        is_gcm,
        is_scm,
        is_sgcm,
        in_calf: true,
        verdict,
        invariant_filtration,
        bound_c,
    })
}
