use std::collections::BTreeSet;
use std::fmt::Write as _;

use log::warn;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{adjusted, Certificate, FitConfig};
use crate::error::{Error, Result};
use crate::filtration::{
    adjusted_upper_bound, classify, coefficient_bound, dimension_filtration, i_of_filtration,
    nonnegativity_threshold, regularity_bound_c, stuckrad_vogel_i,
};
use crate::modpres::DiagonalModule;
use crate::parameters::{
    is_dd_sequence_bounded, is_distinguished, random_distinguished_sop, Origin, ParamFlags, ParameterSystem,
};
use crate::poly::{Polynomial, Ring};
use crate::report::{bigint_str, opt_bigint_str, vec_bigint_str, SCHEMA_VERSION};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    pub length: u64,
    pub h_ad: i64,
    pub p_ad: i64,
}

/// Bound data, present when the module is sequentially generalized
/// Cohen–Macaulay and `q` is distinguished.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundColumns {
    /// `I(F,M)` for the dimension filtration.
    #[serde(with = "bigint_str")]
    pub invariant: BigInt,
    #[serde(with = "bigint_str")]
    pub c: BigInt,
    /// `I(M/M_1)`, the bound for `a_1`.
    #[serde(with = "bigint_str")]
    pub top_invariant: BigInt,
    /// `coefficient_bound(i)` for `i = 1..d`.
    #[serde(with = "vec_bigint_str")]
    pub coefficient_bounds: Vec<BigInt>,
    /// The upper bound for `H^ad(n)`, one per table row.
    #[serde(with = "vec_bigint_str")]
    pub upper: Vec<BigInt>,
    /// `n` past which `H^ad(n) >= 0`, when it fits in a machine word.
    pub threshold: Option<u64>,
    /// `0 <= a_1 <= I(M/M_1)`.
    pub first_coefficient_ok: bool,
    /// `|a_i| <= bound_i` for `2 <= i <= d-1` and `|e_d| <= bound_d`.
    pub coefficient_checks: Vec<bool>,
    /// `H^ad(n) <= upper[n]` on the table.
    pub upper_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertReport {
    pub schema_version: u32,
    pub module: String,
    pub q: Vec<String>,
    pub dim: usize,
    pub fit: FitConfig,
    pub certificate: Certificate,
    /// `e_0..e_d`.
    pub e: Vec<i64>,
    /// `adeg_0..adeg_d`.
    pub adeg: Vec<u64>,
    /// `a_1..a_d`, `a_i = (-1)^i e_i - adeg_{d-i}`.
    pub a: Vec<i64>,
    /// `(-1)^i e_i - adeg_i` for `i = 1..d`.
    pub a_intro: Vec<i64>,
    pub table: Vec<TableRow>,
    pub flags: ParamFlags,
    pub verdict: String,
    pub bounds: Option<BoundColumns>,
}

impl HilbertReport {
    /// `n,length,H_ad,P_ad` with a header row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,length,H_ad,P_ad\n");
        for r in &self.table {
            let _ = writeln!(out, "{},{},{},{}", r.n, r.length, r.h_ad, r.p_ad);
        }
        out
    }
}

/// Options for [`hilbert_report`].
#[derive(Clone, Copy, Debug)]
pub struct ReportOptions {
    pub fit: FitConfig,
    /// Exponent bound for the dd-sequence check; `None` skips it.
    pub dd_bound: Option<u32>,
    /// Compute the bound columns (needs `d <= 6` to stay printable).
    pub bounds: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { fit: FitConfig::default(), dd_bound: Some(3), bounds: true }
    }
}

fn abs(v: i64) -> BigInt {
    BigInt::from(v.unsigned_abs())
}

pub fn hilbert_report(m: &DiagonalModule, name: &str, sop: &[Polynomial], opts: &ReportOptions) -> Result<HilbertReport> {
    let ring = m.ring();
    let mut ps = ParameterSystem::explicit(sop.to_vec());
    ps.verify(m)?;
    if ps.flags.sop != Some(true) {
        return Err(Error::NotParameterIdeal(format!("({}) is not a system of parameters", fmt_list(ring, sop).join(", "))));
    }
    if let Some(b) = opts.dd_bound {
        let check = is_dd_sequence_bounded(sop, m, b);
        ps.flags.dd_sequence = Some((check.holds, b));
    }
    let q = ps.ideal(ring);
    let adj = adjusted(m, &q, &opts.fit)?;
    let d = adj.dim();
    let last = adj.coefficients.certificate.last_checked;
    let table: Vec<TableRow> = (0..=last)
        .map(|n| TableRow {
            n,
            length: adj.coefficients.values[n],
            h_ad: adj.function(n).expect("stored range"),
            p_ad: adj.polynomial(n as i64),
        })
        .collect();
    let cls = classify(m)?;
    let bounds = if opts.bounds && cls.is_sgcm && ps.flags.distinguished == Some(true) && d >= 1 {
        let f = dimension_filtration(m);
        let invariant = i_of_filtration(&f)?;
        let c = regularity_bound_c(&invariant, d);
        let top_invariant = if f.is_empty() { stuckrad_vogel_i(m)? } else { stuckrad_vogel_i(&f.piece(0))? };
        let coefficient_bounds = (1..=d).map(|i| coefficient_bound(&f, i)).collect::<Result<Vec<_>>>()?;
        let upper = table.iter().map(|r| adjusted_upper_bound(&f, r.n as u64)).collect::<Result<Vec<_>>>()?;
        let a1 = BigInt::from(adj.a[0]);
        let first_coefficient_ok = a1 >= BigInt::from(0) && a1 <= top_invariant;
        let coefficient_checks = (2..=d)
            .map(|i| {
                let v = if i == d { adj.coefficients.e[d] } else { adj.a[i - 1] };
                abs(v) <= coefficient_bounds[i - 1]
            })
            .collect();
        let upper_ok = table.iter().zip(&upper).all(|(r, u)| BigInt::from(r.h_ad) <= *u);
        let threshold = nonnegativity_threshold(&c, &invariant, d);
        Some(BoundColumns {
            invariant,
            c,
            top_invariant,
            coefficient_bounds,
            upper,
            threshold,
            first_coefficient_ok,
            coefficient_checks,
            upper_ok,
        })
    } else {
        None
    };
    Ok(HilbertReport {
        schema_version: SCHEMA_VERSION,
        module: name.to_string(),
        q: fmt_list(ring, sop),
        dim: d,
        fit: opts.fit,
        certificate: adj.coefficients.certificate,
        e: adj.coefficients.e.clone(),
        adeg: adj.adeg.clone(),
        a: adj.a.clone(),
        a_intro: adj.a_intro.clone(),
        table,
        flags: ps.flags,
        verdict: cls.verdict.to_string(),
        bounds,
    })
}

fn fmt_list(ring: &Ring, xs: &[Polynomial]) -> Vec<String> {
    xs.iter().map(|p| ring.fmt(p)).collect()
}

/// How parameter ideals are produced for a [`LambdaSample`].
#[derive(Clone, Debug)]
pub enum Sampler {
    /// `count` systems from seeds `seed, seed+1, ...`.
    RandomDistinguished { count: usize, seed: u64, degree_cap: u32 },
    /// `(x_1^{n_1}, ..., x_d^{n_d})` for every `n ∈ {1..cap}^d`.
    PowerLattice { x: Vec<Polynomial>, cap: u32 },
    Explicit(Vec<Vec<Polynomial>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaEntry {
    pub q: Vec<String>,
    /// `a_i(q; M)`.
    pub value: i64,
    /// `(-1)^i e_i - adeg_i`.
    pub intro_value: i64,
    pub distinguished: bool,
    pub origin: Origin,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaSample {
    pub schema_version: u32,
    pub module: String,
    pub index: usize,
    pub entries: Vec<LambdaEntry>,
    pub rejected: usize,
    pub min: Option<i64>,
    pub max: Option<i64>,
    pub distinct: usize,
    #[serde(with = "opt_bigint_str")]
    pub spread: Option<BigInt>,
    pub caveat: String,
}

/// Samples `a_i(q; M)` over parameter ideals from `sampler`. Systems that
/// are not distinguished are rejected unless `allow_non_distinguished`.
pub fn lambda_sample(
    m: &DiagonalModule,
    name: &str,
    i: usize,
    sampler: &Sampler,
    allow_non_distinguished: bool,
    fit: &FitConfig,
) -> Result<LambdaSample> {
    let ring = m.ring();
    let d = m.dim().max(0) as usize;
    if i < 1 || i > d {
        return Err(Error::OutOfRange { index: i as i64, lo: 1, hi: d as i64 });
    }
    let f = dimension_filtration(m);
    let systems: Vec<ParameterSystem> = match sampler {
        Sampler::RandomDistinguished { count, seed, degree_cap } => (0..*count as u64)
            .map(|k| random_distinguished_sop(m, &f, seed + k, *degree_cap))
            .collect::<Result<_>>()?,
        Sampler::PowerLattice { x, cap } => {
            let mut out = Vec::new();
            let mut ns = vec![1u32; x.len()];
            loop {
                out.push(ParameterSystem::explicit(x.iter().zip(&ns).map(|(p, &n)| p.pow(n, ring.field())).collect()));
                let Some(k) = ns.iter().position(|&n| n < *cap) else { break };
                ns[k] += 1;
                ns[..k].iter_mut().for_each(|n| *n = 1);
            }
            out
        }
        Sampler::Explicit(list) => list.iter().cloned().map(ParameterSystem::explicit).collect(),
    };
    let attempts = systems.len();
    let mut entries = Vec::new();
    let mut rejected = 0;
    for ps in systems {
        if !crate::parameters::is_sop(&ps.elements, m)? {
            warn!("rejecting ({}) : not a system of parameters", fmt_list(ring, &ps.elements).join(", "));
            rejected += 1;
            continue;
        }
        let distinguished = is_distinguished(&ps.elements, &f);
        if !distinguished && !allow_non_distinguished {
            rejected += 1;
            continue;
        }
        let adj = adjusted(m, &ps.ideal(ring), fit)?;
        entries.push(LambdaEntry {
            q: fmt_list(ring, &ps.elements),
            value: adj.a[i - 1],
            intro_value: adj.a_intro[i - 1],
            distinguished,
            origin: ps.origin,
        });
    }
    if entries.is_empty() {
        return Err(Error::SamplerExhausted { attempts, detail: "no admissible parameter ideal".into() });
    }
    let values: BTreeSet<i64> = entries.iter().map(|e| e.value).collect();
    let min = values.first().copied();
    let max = values.last().copied();
    Ok(LambdaSample {
        schema_version: SCHEMA_VERSION,
        module: name.to_string(),
        index: i,
        entries,
        rejected,
        min,
        max,
        distinct: values.len(),
        spread: min.zip(max).map(|(a, b)| BigInt::from(b) - BigInt::from(a)),
        caveat: "a finite sample cannot decide whether the full set is finite".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::Ideal;
    use crate::poly::PolyRing;
    use crate::report::{reserialize, to_json};

    #[test]
    fn report_round_trip_and_csv() {
        let r = PolyRing::qq(&["x", "y"]);
        let i = Ideal::new(&r, vec![r.parse("x^2").unwrap(), r.parse("x*y").unwrap()]);
        let m = DiagonalModule::cyclic_sum(&r, vec![i]);
        let rep = hilbert_report(&m, "M", &[r.parse("y").unwrap()], &ReportOptions::default()).unwrap();
        assert_eq!(rep.e, vec![1, -1]);
        assert_eq!(rep.a, vec![0]);
        assert_eq!(rep.flags.distinguished, Some(true));
        let b = rep.bounds.as_ref().unwrap();
        assert!(b.first_coefficient_ok && b.upper_ok);
        let json = to_json(&rep).unwrap();
        assert_eq!(reserialize::<HilbertReport>(&json).unwrap(), json);
        assert!(rep.to_csv().starts_with("n,length,H_ad,P_ad\n0,2,0,0\n"));
    }

    #[test]
    fn example_family_lambda() {
        let r = PolyRing::qq(&["X", "Y", "Z"]);
        let m = DiagonalModule::cyclic_sum(&r, vec![Ideal::zero(&r), Ideal::new(&r, vec![r.parse("Z^2").unwrap()])]);
        let family: Vec<Vec<Polynomial>> = (1..=3)
            .map(|k| vec![r.parse(&format!("X^{k}")).unwrap(), r.parse(&format!("Y^{k}")).unwrap(), r.var(2)])
            .collect();
        let fit = FitConfig::default();
        let s2 = lambda_sample(&m, "M", 2, &Sampler::Explicit(family.clone()), true, &fit).unwrap();
        assert_eq!(s2.entries.iter().map(|e| e.value).collect::<Vec<_>>(), vec![-1, -4, -9]);
        let s1 = lambda_sample(&m, "M", 1, &Sampler::Explicit(family.clone()), true, &fit).unwrap();
        assert_eq!(s1.distinct, 1);
        assert_eq!(s1.min, Some(0));
        assert!(lambda_sample(&m, "M", 1, &Sampler::Explicit(family), false, &fit).is_err());
        let json = to_json(&s2).unwrap();
        assert_eq!(reserialize::<LambdaSample>(&json).unwrap(), json);
    }
}
