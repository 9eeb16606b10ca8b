//! Hilbert–Samuel functions `ℓ(M/q^{n+1}M)`, their coefficients, arithmetic
//! degrees and the adjusted function and coefficients.
//!
//! Sign convention: `ℓ(M/q^{n+1}M) = Σ_i (-1)^i e_i binom(n+d-i, d-i)` for
//! large `n`, and `a_i = (-1)^i e_i - adeg_{d-i}`.

use log::debug;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filtration::dimension_filtration;
use crate::groebner::Ideal;
use crate::laurent::{length_and_dim, Laurent};
use crate::modpres::DiagonalModule;
use crate::monideal::MonomialIdeal;

mod report;

pub use report::{
    hilbert_report, lambda_sample, BoundColumns, HilbertReport, LambdaEntry, LambdaSample, ReportOptions, Sampler, TableRow,
};

/// Stabilization policy for coefficient fitting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitConfig {
    /// Extra consecutive values the fitted polynomial must reproduce.
    pub window: usize,
    /// Largest `n` ever evaluated.
    pub ncap: usize,
    /// First admissible window start; `None` means max generator degree of `q` times `d`.
    pub floor: Option<usize>,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig { window: 3, ncap: 40, floor: None }
    }
}

/// Where a fit was certified: the polynomial through `start..=start+d`
/// reproduced every value up to `last_checked`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub start: usize,
    pub window: usize,
    pub last_checked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertCoefficients {
    pub dim: usize,
    /// `e_0, ..., e_d`.
    pub e: Vec<i64>,
    pub certificate: Certificate,
    /// `ℓ(M/q^{n+1}M)` for `n = 0..=certificate.last_checked`.
    pub values: Vec<u64>,
}

impl HilbertCoefficients {
    /// The Hilbert–Samuel polynomial at `n`.
    pub fn polynomial(&self, n: i64) -> i64 {
        let d = self.dim as i64;
        let mut acc = 0i128;
        for (i, e) in self.e.iter().enumerate() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            acc += sign * *e as i128 * binom_i(n + d - i as i64, (d - i as i64) as u32);
        }
        acc as i64
    }
}

/// `binom(n, k)` for any integer `n`, as the polynomial `n(n-1)...(n-k+1)/k!`.
pub fn binom_i(n: i64, k: u32) -> i128 {
    let mut acc: i128 = 1;
    for j in 0..k as i128 {
        acc = acc * (n as i128 - j) / (j + 1);
    }
    acc
}

enum Chain {
    Monomial { den: MonomialIdeal, q: MonomialIdeal, k: MonomialIdeal, top: Laurent },
    General { den: Ideal, q: Ideal, k: Ideal, top: Laurent },
}

impl Chain {
    fn length(&self, nvars: usize) -> u64 {
        let (num, top) = match self {
            Chain::Monomial { k, top, .. } => (k.hilbert_numerator(), top),
            Chain::General { k, top, .. } => (k.hilbert_numerator(), top),
        };
        length_and_dim(&num.sub(top), nvars).0.expect("q is m-primary on the module")
    }

    // I + q^{n+1} J  ->  I + q^{n+2} J
    fn advance(&mut self) {
        match self {
            Chain::Monomial { den, q, k, .. } => *k = den.sum(&q.product(k)),
            Chain::General { den, q, k, .. } => *k = den.sum(&q.product(k)).reduced(),
        }
    }
}

/// Lazily evaluated values `ℓ(M/q^{n+1}M)`, one ideal chain
/// `I_k + q^{n+1} J_k` per summand.
pub struct HsSeries {
    nvars: usize,
    chains: Vec<Chain>,
    values: Vec<u64>,
}

impl HsSeries {
    pub fn new(m: &DiagonalModule, q: &Ideal) -> Result<Self> {
        check_parameter_ideal(m, q)?;
        let nvars = m.ring().nvars();
        let mq = q.as_monomial();
        let mut chains = Vec::new();
        for s in m.summands().iter().filter(|s| !s.is_zero()) {
            let top = s.num.hilbert_numerator();
            match (&mq, s.as_monomial()) {
                (Some(qm), Some((j, i))) => {
                    let k = i.sum(&qm.product(&j));
                    chains.push(Chain::Monomial { den: i, q: qm.clone(), k, top });
                }
                _ => {
                    let k = s.den.sum(&q.product(&s.num)).reduced();
                    chains.push(Chain::General { den: s.den.clone(), q: q.reduced(), k, top });
                }
            }
        }
        Ok(HsSeries { nvars, chains, values: Vec::new() })
    }

    /// `ℓ(M/q^{n+1}M)`.
    pub fn value(&mut self, n: usize) -> u64 {
        while self.values.len() <= n {
            if !self.values.is_empty() {
                for c in &mut self.chains {
                    c.advance();
                }
            }
            let v = self.chains.iter().map(|c| c.length(self.nvars)).sum();
            self.values.push(v);
        }
        self.values[n]
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }
}

/// Fails unless `ℓ(M/qM)` is finite.
pub fn check_parameter_ideal(m: &DiagonalModule, q: &Ideal) -> Result<()> {
    if !m.is_graded() || !q.is_homogeneous() {
        return Err(Error::NotGraded("Hilbert–Samuel data needs homogeneous input".into()));
    }
    if !m.quotient_by_ideal(q).length().is_finite() {
        return Err(Error::NotParameterIdeal(format!("{q} does not give M/qM finite length")));
    }
    Ok(())
}

/// `ℓ(M/q^{n+1}M)`.
pub fn hs_function(m: &DiagonalModule, q: &Ideal, n: usize) -> Result<u64> {
    Ok(HsSeries::new(m, q)?.value(n))
}

// forward differences of values[start..=start+d]
fn newton(values: &[u64], start: usize, d: usize) -> Vec<i128> {
    let mut row: Vec<i128> = values[start..=start + d].iter().map(|&v| v as i128).collect();
    let mut diffs = Vec::with_capacity(d + 1);
    for _ in 0..=d {
        diffs.push(row[0]);
        row = row.windows(2).map(|w| w[1] - w[0]).collect();
    }
    diffs
}

fn newton_eval(diffs: &[i128], start: usize, n: i64) -> i128 {
    diffs.iter().enumerate().map(|(j, c)| c * binom_i(n - start as i64, j as u32)).sum()
}

/// Coefficients `e_0..e_d` of the polynomial through `values[start..=start+d]`.
pub fn coefficients_from_values(values: &[u64], d: usize, start: usize) -> Vec<i64> {
    let diffs = newton(values, start, d);
    // c_k = (∇^k P)(-1) is the coefficient of binom(n+k, k)
    (0..=d)
        .map(|i| {
            let k = d - i;
            let ck: i128 = (0..=k)
                .map(|j| {
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    sign * binom_i(k as i64, j as u32) * newton_eval(&diffs, start, -1 - j as i64)
                })
                .sum();
            let sign = if i % 2 == 0 { 1 } else { -1 };
            (sign * ck) as i64
        })
        .collect()
}

/// Fits `e_0..e_d` and certifies the fit on `window` further values.
pub fn hilbert_coefficients(m: &DiagonalModule, q: &Ideal, cfg: &FitConfig) -> Result<HilbertCoefficients> {
    let dim = m.dim();
    if dim < 0 {
        return Err(Error::ZeroModule("Hilbert coefficients of the zero module".into()));
    }
    let d = dim as usize;
    let mut hs = HsSeries::new(m, q)?;
    let floor = cfg.floor.unwrap_or(q.max_degree() as usize * d);
    let mut start = floor;
    while start + d + cfg.window <= cfg.ncap {
        let last = start + d + cfg.window;
        hs.value(last);
        let diffs = newton(hs.values(), start, d);
        let ok = (start + d + 1..=last).all(|n| newton_eval(&diffs, start, n as i64) == hs.values()[n] as i128);
        if ok {
            let e = coefficients_from_values(hs.values(), d, start);
            debug!("Hilbert coefficients {e:?} certified from n = {start}");
            return Ok(HilbertCoefficients {
                dim: d,
                e,
                certificate: Certificate { start, window: cfg.window, last_checked: last },
                values: hs.values()[..=last].to_vec(),
            });
        }
        start += 1;
    }
    Err(Error::Unstable { ncap: cfg.ncap })
}

/// `e_0(q; M)`.
pub fn multiplicity(m: &DiagonalModule, q: &Ideal, cfg: &FitConfig) -> Result<i64> {
    Ok(hilbert_coefficients(m, q, cfg)?.e[0])
}

/// `adeg_0, ..., adeg_d` through the dimension filtration: `e_0(q; D_i)` in
/// degree `d_i >= 1`, `ℓ(H^0_m(M))` in degree 0.
pub fn arithmetic_degrees(m: &DiagonalModule, q: &Ideal, cfg: &FitConfig) -> Result<Vec<u64>> {
    let d = m.dim();
    if d < 0 {
        return Err(Error::ZeroModule("arithmetic degree of the zero module".into()));
    }
    check_parameter_ideal(m, q)?;
    let f = dimension_filtration(m);
    let mut adeg = vec![0u64; d as usize + 1];
    for (term, &di) in f.terms().iter().zip(f.dims()) {
        if di >= 1 {
            adeg[di as usize] = multiplicity(term, q, cfg)? as u64;
        } else if di == 0 {
            adeg[0] = term.length().finite().expect("dimension 0");
        }
    }
    Ok(adeg)
}

pub fn arithmetic_degree(m: &DiagonalModule, q: &Ideal, j: usize, cfg: &FitConfig) -> Result<u64> {
    Ok(arithmetic_degrees(m, q, cfg)?.get(j).copied().unwrap_or(0))
}

/// Everything derived from one certified fit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjusted {
    pub coefficients: HilbertCoefficients,
    pub adeg: Vec<u64>,
    /// `a_1..a_d` with `a_i = (-1)^i e_i - adeg_{d-i}`.
    pub a: Vec<i64>,
    /// `(-1)^i e_i - adeg_i`, the pairing written in the introduction.
    pub a_intro: Vec<i64>,
}

impl Adjusted {
    pub fn dim(&self) -> usize {
        self.coefficients.dim
    }

    /// `H^ad(n) = ℓ(M/q^{n+1}M) - Σ_i adeg_i binom(n+i, i)`, for `n` in the stored range.
    pub fn function(&self, n: usize) -> Option<i64> {
        let v = *self.coefficients.values.get(n)? as i128;
        Some((v - adeg_sum(&self.adeg, n as i64)) as i64)
    }

    /// `P^ad(n) = Σ_i a_i binom(n+d-i, d-i)`.
    pub fn polynomial(&self, n: i64) -> i64 {
        let d = self.dim() as i64;
        self.a
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let i = k as i64 + 1;
                *a as i128 * binom_i(n + d - i, (d - i) as u32)
            })
            .sum::<i128>() as i64
    }
}

fn adeg_sum(adeg: &[u64], n: i64) -> i128 {
    adeg.iter().enumerate().map(|(i, a)| *a as i128 * binom_i(n + i as i64, i as u32)).sum()
}

pub fn adjusted(m: &DiagonalModule, q: &Ideal, cfg: &FitConfig) -> Result<Adjusted> {
    let coefficients = hilbert_coefficients(m, q, cfg)?;
    let adeg = arithmetic_degrees(m, q, cfg)?;
    let d = coefficients.dim;
    let signed = |i: usize| if i % 2 == 0 { coefficients.e[i] } else { -coefficients.e[i] };
    let a = (1..=d).map(|i| signed(i) - adeg[d - i] as i64).collect();
    let a_intro = (1..=d).map(|i| signed(i) - adeg[i] as i64).collect();
    Ok(Adjusted { coefficients, adeg, a, a_intro })
}

/// `H^ad_{q,M}(n)`.
pub fn adjusted_function(m: &DiagonalModule, q: &Ideal, n: usize, cfg: &FitConfig) -> Result<i64> {
    let adeg = arithmetic_degrees(m, q, cfg)?;
    let v = hs_function(m, q, n)? as i128;
    Ok((v - adeg_sum(&adeg, n as i64)) as i64)
}

/// `a_1, ..., a_d`.
pub fn adjusted_coefficients(m: &DiagonalModule, q: &Ideal, cfg: &FitConfig) -> Result<Vec<i64>> {
    Ok(adjusted(m, q, cfg)?.a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{PolyRing, Ring};

    fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| r.parse(g).unwrap()).collect())
    }

    #[test]
    fn binomials() {
        assert_eq!(binom_i(5, 2), 10);
        assert_eq!(binom_i(-1, 3), -1);
        assert_eq!(binom_i(-2, 2), 3);
        assert_eq!(binom_i(0, 0), 1);
        assert_eq!(binom_i(2, 3), 0);
    }

    #[test]
    fn values_and_coefficients() {
        let r = PolyRing::qq(&["X", "Y", "Z"]);
        let m = DiagonalModule::cyclic_sum(&r, vec![Ideal::zero(&r), ideal(&r, &["Z^2"])]);
        let q = ideal(&r, &["X^2", "Y^2", "Z"]);
        assert_eq!(hs_function(&m, &q, 1).unwrap(), 32);
        let c = hilbert_coefficients(&m, &q, &FitConfig::default()).unwrap();
        assert_eq!(c.e, vec![4, -8, -4, 0]);
        assert_eq!(arithmetic_degrees(&m, &q, &FitConfig::default()).unwrap(), vec![0, 0, 8, 4]);
        let adj = adjusted(&m, &q, &FitConfig::default()).unwrap();
        assert_eq!(adj.a, vec![0, -4, 0]);
        assert_eq!(adjusted_function(&m, &q, 3, &FitConfig::default()).unwrap(), -16);

        let r2 = PolyRing::qq(&["x", "y"]);
        let m2 = DiagonalModule::cyclic_sum(&r2, vec![ideal(&r2, &["x^2", "x*y"])]);
        let q2 = ideal(&r2, &["y"]);
        assert_eq!(hs_function(&m2, &q2, 3).unwrap(), 5);
        let adj = adjusted(&m2, &q2, &FitConfig::default()).unwrap();
        assert_eq!(adj.coefficients.e, vec![1, -1]);
        assert_eq!(adj.adeg, vec![1, 1]);
        assert_eq!(adj.a, vec![0]);
        for n in 0..5 {
            assert_eq!(adj.function(n), Some(0));
        }
    }

    #[test]
    fn regular_ring_and_non_parameter() {
        let r = PolyRing::qq(&["x", "y"]);
        let m = DiagonalModule::cyclic_sum(&r, vec![Ideal::zero(&r)]);
        let c = hilbert_coefficients(&m, &ideal(&r, &["x", "y"]), &FitConfig::default()).unwrap();
        assert_eq!(c.e, vec![1, 0, 0]);
        assert!(matches!(hs_function(&m, &ideal(&r, &["x"]), 0), Err(Error::NotParameterIdeal(_))));
    }

    #[test]
    fn general_route_matches_direct_colength() {
        let r = PolyRing::qq(&["x", "y"]);
        let i = ideal(&r, &["x^2", "x*y"]);
        let m = DiagonalModule::cyclic_sum(&r, vec![i.clone()]);
        let q = ideal(&r, &["x+y"]);
        assert!(q.as_monomial().is_none());
        let mut hs = HsSeries::new(&m, &q).unwrap();
        for n in 0..5u32 {
            let direct = i.sum(&q.power(n + 1)).colength().finite().unwrap();
            assert_eq!(hs.value(n as usize), direct);
        }
    }
}
