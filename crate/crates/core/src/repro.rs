//! Built-in reproduction runs over the embedded corpus: the worked example,
//! the coefficient identities and the bound inequalities.

use std::fmt::Write as _;

use log::{info, warn};
use num_bigint::BigInt;
use serde::Serialize;

use crate::corpus::{self, Entry};
use crate::error::Result;
use crate::filtration::{
    adjusted_upper_bound, check_dimension_condition, classify, coefficient_bound, dimension_filtration,
    i_of_filtration, nonnegativity_threshold, regularity_bound_c, stuckrad_vogel_i, Filtration, Verdict,
};
use crate::groebner::Ideal;
use crate::hilbert::{adjusted, arithmetic_degrees, hilbert_coefficients, FitConfig, HsSeries};
use crate::modpres::{DiagonalModule, Summand};
use crate::monideal::adeg_oracle;
use crate::parameters::{
    is_dd_sequence_bounded, is_distinguished, is_filter_regular, is_sop, is_superficial_bounded,
    random_distinguished_sop,
};
use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Target {
    Ex1,
    Lemmas,
    Bounds,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub group: String,
    pub instance: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(group: &str, instance: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
        Check { group: group.into(), instance: instance.into(), pass, detail: detail.into() }
    }

    fn from_result(group: &str, instance: impl Into<String>, r: Result<(bool, String)>) -> Check {
        match r {
            Ok((pass, detail)) => Check::new(group, instance, pass, detail),
            Err(e) => Check::new(group, instance, false, format!("error: {e}")),
        }
    }
}

/// One row of the worked-example table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ex1Row {
    pub m: u32,
    pub n: usize,
    pub h_ad: i64,
    pub expected: i64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Repro {
    pub checks: Vec<Check>,
    pub table: Vec<Ex1Row>,
}

impl Repro {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// The pass/fail matrix, plus the example table when present.
    pub fn render(&self) -> String {
        let mut out = String::new();
        if !self.table.is_empty() {
            out.push_str("   m    n     H_ad  -m^2(n+1)\n");
            for r in &self.table {
                let _ = writeln!(out, "{:>4} {:>4} {:>8} {:>10}", r.m, r.n, r.h_ad, r.expected);
            }
            out.push('\n');
        }
        let w = self.checks.iter().map(|c| c.group.len()).max().unwrap_or(0);
        for c in &self.checks {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{mark}  {:<w$}  {}  {}", c.group, c.instance, c.detail);
        }
        let failed = self.failures().count();
        let _ = writeln!(out, "\n{} checks, {} failed: {}", self.checks.len(), failed, if failed == 0 { "PASS" } else { "FAIL" });
        out
    }
}

pub fn run(target: Target, cfg: &FitConfig) -> Result<Repro> {
    match target {
        Target::Ex1 => ex1(cfg),
        Target::Lemmas => lemmas(cfg),
        Target::Bounds => bounds(cfg),
    }
}

/// `H^ad_{q_m}(n) = -m^2 (n+1)` for `m = 1..5`, `n = 0..6`, plus the verdict
/// and the failure of distinguishedness.
pub fn ex1(cfg: &FitConfig) -> Result<Repro> {
    let e = corpus::entry("ex1", "M")?;
    let mut out = Repro::default();
    let report = classify(&e.module)?;
    out.checks.push(Check::new("ex1 verdict", "M", report.verdict == Verdict::SequentiallyCm, format!("{}", report.verdict)));
    let f = dimension_filtration(&e.module);
    for m in 1..=5u32 {
        let sop = e.sop(&format!("q{m}"))?;
        let q = Ideal::new(e.module.ring(), sop.clone());
        let dist = is_distinguished(&sop, &f);
        out.checks.push(Check::new("ex1 not distinguished", format!("q{m}"), !dist, format!("distinguished = {dist}")));
        let mut hs = HsSeries::new(&e.module, &q)?;
        let adeg = arithmetic_degrees(&e.module, &q, cfg)?;
        let mut ok = true;
        for n in 0..=6usize {
            let h_ad = hs.value(n) as i64 - adeg_sum(&adeg, n);
            let expected = -(m as i64 * m as i64) * (n as i64 + 1);
            ok &= h_ad == expected;
            out.table.push(Ex1Row { m, n, h_ad, expected });
        }
        out.checks.push(Check::new("ex1 H_ad = -m^2(n+1)", format!("q{m}"), ok, format!("adeg = {adeg:?}")));
    }
    Ok(out)
}

fn adeg_sum(adeg: &[u64], n: usize) -> i64 {
    adeg.iter()
        .enumerate()
        .map(|(i, a)| *a as i64 * crate::hilbert::binom_i(n as i64 + i as i64, i as u32) as i64)
        .sum()
}

pub fn lemmas(cfg: &FitConfig) -> Result<Repro> {
    let mut out = Repro::default();
    for e in corpus::monomial_corpus()? {
        out.checks.extend(adeg_definition_checks(&e, cfg));
    }
    for (s, m, q, x) in ADEG_SHIFT {
        let e = corpus::entry(s, m)?;
        out.checks.push(Check::from_result("adeg shift", format!("{}, {q}, x = {x}", e.label), adeg_shift(&e, q, x, cfg)));
    }
    for (s, m, q, x) in SUPERFICIAL_IDENTITY {
        let e = corpus::entry(s, m)?;
        out.checks.push(Check::from_result("superficial e", format!("{}, {q}, x = {x}", e.label), superficial_identity(&e, q, x, cfg)));
    }
    for (s, m) in QUOTIENT_IDENTITY {
        let e = corpus::entry(s, m)?;
        let f = dimension_filtration(&e.module);
        for k in 1..=f.len() {
            if f.dims()[k] < 0 {
                continue;
            }
            for q in e.session.sop_names() {
                let r = quotient_identity(&e, &f, k, q, cfg);
                out.checks.push(Check::from_result("quotient e", format!("{}, N = D_{k}, {q}", e.label), r));
            }
        }
    }
    for (s, m, q) in DD_FORMULA {
        let e = corpus::entry(s, m)?;
        out.checks.push(Check::from_result("dd formula", format!("{}, {q}", e.label), dd_formula(&e, q, cfg)));
    }
    Ok(out)
}

/// Instances for the arithmetic-degree shift: `(session, module, sop, x)`.
pub const ADEG_SHIFT: &[(&str, &str, &str, &str)] = &[
    ("ex1", "M", "dist", "X"),
    ("ex1", "M", "q2", "X^2"),
    ("mono2", "D", "q1", "y"),
    ("mono2", "D", "q2", "y"),
    ("mono3", "I", "q1", "x"),
    ("mono3", "F", "q3", "x"),
];

/// Instances for the superficial-element identity.
pub const SUPERFICIAL_IDENTITY: &[(&str, &str, &str, &str)] = &[
    ("ex1", "M", "q1", "X"),
    ("ex1", "M", "dist", "Y"),
    ("ex1", "M", "q2", "X^2"),
    ("square", "M", "dd", "x - z"),
    ("mono2", "D", "q1", "y"),
    ("mono3", "G", "q1", "x + y + z"),
    ("mono3", "I", "q1", "x"),
    ("mono3", "J", "q1", "x + y + z"),
];

/// Modules whose filtration tails serve as `N`.
pub const QUOTIENT_IDENTITY: &[(&str, &str)] = &[("ex1", "M"), ("point", "M"), ("mono3", "G"), ("mono2", "C"), ("mono3", "H")];

/// dd-sequence instances.
pub const DD_FORMULA: &[(&str, &str, &str)] = &[("square", "M", "dd"), ("point", "M", "q")];

/// `adeg_j` through the filtration against the definition, for every sop and `j`.
pub fn adeg_definition_checks(e: &Entry, cfg: &FitConfig) -> Vec<Check> {
    let dens: Vec<_> = match e.module.as_monomial() {
        Some(s) if s.iter().all(|(num, _)| num.is_unit()) => s.into_iter().map(|(_, den)| den).collect(),
        _ => return vec![Check::new("adeg definition", e.label.clone(), false, "not a cyclic monomial module")],
    };
    let ring = e.module.ring();
    e.session
        .sops
        .iter()
        .map(|(name, gens)| {
            let q = Ideal::new(ring, gens.clone());
            let r = (|| {
                let filt = arithmetic_degrees(&e.module, &q, cfg)?;
                let mut oracle = Vec::new();
                for j in 0..filt.len() {
                    oracle.push(adeg_oracle(ring, &dens, &q, j, cfg)?);
                }
                Ok((filt == oracle, format!("filtration {filt:?}, definition {oracle:?}")))
            })();
            Check::from_result("adeg definition", format!("{}, {name}", e.label), r)
        })
        .collect()
}

fn parse_x(e: &Entry, x: &str) -> Result<Polynomial> {
    e.module.ring().parse(x)
}

/// `M/xM` inside the diagonal model: `J/(I + xJ)` summand-wise.
pub fn mod_element(m: &DiagonalModule, x: &Polynomial) -> DiagonalModule {
    m.quotient_by_ideal(&Ideal::new(m.ring(), vec![x.clone()]))
}

/// The image of a filtration term `N ⊆ M` in `M/xM`.
fn image_mod_x(m: &DiagonalModule, n: &DiagonalModule, x: &Polynomial) -> DiagonalModule {
    let xi = Ideal::new(m.ring(), vec![x.clone()]);
    let summands = m
        .summands()
        .iter()
        .zip(n.summands())
        .map(|(sm, sn)| {
            let den = sm.den.sum(&xi.product(&sm.num)).reduced();
            let num = sn.num.sum(&den).reduced();
            Summand { num, den }
        })
        .collect();
    DiagonalModule::new(m.ring(), summands)
}

/// `adeg_j(q; M/xM) = adeg_{j+1}(q; M)` for `j >= 1`, and
/// `adeg_0(q; M/xM) >= adeg_1(q; M)` when `q` is distinguished with `x` first.
/// The hypothesis on `D/xD` is checked, not assumed.
pub fn adeg_shift(e: &Entry, sop: &str, x: &str, cfg: &FitConfig) -> Result<(bool, String)> {
    let gens = e.sop(sop)?;
    let x = parse_x(e, x)?;
    let m = &e.module;
    let q = Ideal::new(m.ring(), gens.clone());
    if !q.contains(&x) || !is_filter_regular(&x, m) {
        return Ok((false, "x is not a filter regular element of q".into()));
    }
    let f = dimension_filtration(m);
    let mut terms: Vec<DiagonalModule> = Vec::new();
    for t in f.terms() {
        let img = image_mod_x(m, t, &x);
        if terms.last().is_some_and(|p| p.contains(&img) && img.contains(p)) {
            continue;
        }
        terms.push(img);
    }
    let fx = Filtration::new(terms)?;
    if !check_dimension_condition(&fx) {
        return Ok((false, format!("hypothesis fails: D/xD has dimensions {:?}", fx.dims())));
    }
    let mx = mod_element(m, &x);
    let a = arithmetic_degrees(m, &q, cfg)?;
    let b = arithmetic_degrees(&mx, &q, cfg)?;
    let mut ok = (1..b.len()).all(|j| b[j] == a[j + 1]);
    let mut detail = format!("adeg(M) = {a:?}, adeg(M/xM) = {b:?}");
    let mut first = gens.clone();
    if let Some(pos) = first.iter().position(|g| *g == x) {
        first.swap(0, pos);
        if is_distinguished(&first, &f) {
            let ineq = a.len() < 2 || b[0] >= a[1];
            ok &= ineq;
            detail.push_str(&format!(", adeg_0(M/xM) >= adeg_1(M): {ineq}"));
        }
    }
    Ok((ok, detail))
}

/// `e_i(q;M) = e_i(q;M/xM)` for `i <= d-2` and
/// `(-1)^{d-1} (e_{d-1}(q;M) - e_{d-1}(q;M/xM)) = -ℓ(0 :_M x)`, with `x`
/// certified superficial for `c = 2`, `w = 3`.
pub fn superficial_identity(e: &Entry, sop: &str, x: &str, cfg: &FitConfig) -> Result<(bool, String)> {
    let m = &e.module;
    let d = m.dim();
    if d < 2 {
        return Ok((false, format!("needs d >= 2, got {d}")));
    }
    let d = d as usize;
    let q = Ideal::new(m.ring(), e.sop(sop)?);
    let x = parse_x(e, x)?;
    if !is_superficial_bounded(&x, &q, m, 2, 3) {
        return Ok((false, "x not certified superficial".into()));
    }
    let em = hilbert_coefficients(m, &q, cfg)?.e;
    let ex = hilbert_coefficients(&mod_element(m, &x), &q, cfg)?.e;
    let Some(colon) = m.zero_colon(&x).length().finite() else {
        return Ok((false, "0 :_M x has infinite length".into()));
    };
    let low = (0..=d - 2).all(|i| em[i] == ex[i]);
    let sign = if (d - 1) % 2 == 0 { 1 } else { -1 };
    let diff = sign * (em[d - 1] - ex[d - 1]);
    // the correction enters with a minus sign: Δ ℓ(M/q^{n+1}M) = ℓ(M/(x, q^{n+1})M) - ℓ(0 :_M x) for n >> 0
    let top = diff == -(colon as i64);
    let plus = diff == colon as i64;
    Ok((low && top, format!("e(M) = {em:?}, e(M/xM) = {ex:?}, l(0:x) = {colon}, +l(0:x) form holds: {plus}")))
}

/// `e_j(q;M) = e_j(q;M/N)` for `j < d-s` and
/// `e_{d-s}(q;M) = e_{d-s}(q;M/N) + (-1)^{d-s} e_0(q;N)` with `N = D_k`, `s = dim N`.
pub fn quotient_identity(e: &Entry, f: &Filtration, k: usize, sop: &str, cfg: &FitConfig) -> Result<(bool, String)> {
    let m = &e.module;
    let q = Ideal::new(m.ring(), e.sop(sop)?);
    let d = f.dims()[0] as usize;
    let s = f.dims()[k] as usize;
    let n = &f.terms()[k];
    let em = hilbert_coefficients(m, &q, cfg)?.e;
    let eq = hilbert_coefficients(&f.quotient(k), &q, cfg)?.e;
    let e0n = hilbert_coefficients(n, &q, cfg)?.e[0];
    let low = (0..d - s).all(|j| em[j] == eq[j]);
    let sign = if (d - s) % 2 == 0 { 1 } else { -1 };
    let top = em[d - s] == eq[d - s] + sign * e0n;
    Ok((low && top, format!("e(M) = {em:?}, e(M/N) = {eq:?}, e_0(N) = {e0n}")))
}

/// The expected `a_1..a_d` from local cohomology of the quotients `M/D_k`;
/// `None` where no formula applies.
pub fn dd_prediction(f: &Filtration) -> Result<Vec<Option<i64>>> {
    let d = f.dims()[0] as usize;
    let mut pred = vec![None; d + 1];
    pred[d] = Some(0);
    let sum_h = |quot: &DiagonalModule, i: usize| -> Result<Option<i64>> {
        let mut acc = 0i64;
        for j in 1..=i {
            let Some(l) = quot.local_cohomology_length(j)?.finite() else { return Ok(None) };
            acc += crate::hilbert::binom_i(i as i64 - 1, j as u32 - 1) as i64 * l as i64;
        }
        Ok(Some(acc))
    };
    for k in 1..=f.len() {
        let dk = f.dims()[k];
        let quot = f.quotient(k);
        if dk >= 0 && (dk as usize) < d {
            pred[d - dk as usize] = sum_h(&quot, dk as usize)?;
        }
        for i in (dk.max(0) + 1)..f.dims()[k - 1] {
            pred[d - i as usize] = sum_h(&quot, i as usize)?;
        }
    }
    Ok(pred)
}

/// The dd-sequence formula for `a_i`, after verifying the sop is
/// distinguished and a dd-sequence with exponents up to 3.
pub fn dd_formula(e: &Entry, sop: &str, cfg: &FitConfig) -> Result<(bool, String)> {
    let m = &e.module;
    let gens = e.sop(sop)?;
    let f = dimension_filtration(m);
    if !is_sop(&gens, m)? || !is_distinguished(&gens, &f) {
        return Ok((false, "not a distinguished sop".into()));
    }
    let dd = is_dd_sequence_bounded(&gens, m, 3);
    if !dd.holds {
        return Ok((false, format!("dd-sequence check fails: {:?}", dd.witness)));
    }
    let adj = adjusted(m, &Ideal::new(m.ring(), gens), cfg)?;
    let pred = dd_prediction(&f)?;
    let d = adj.dim();
    let mut ok = true;
    for i in 1..=d {
        if let Some(p) = pred[i] {
            ok &= adj.a[i - 1] == p;
        }
    }
    ok &= pred[1..].iter().any(Option::is_some);
    Ok((ok, format!("a = {:?}, predicted {:?}", adj.a, &pred[1..])))
}

/// Distinguished parameter systems for the bound checks: the declared ones
/// that are distinguished, or one seeded random system when none is.
pub fn distinguished_sops(e: &Entry) -> Result<Vec<(String, Vec<Polynomial>)>> {
    let f = dimension_filtration(&e.module);
    let mut out = Vec::new();
    for (name, gens) in &e.session.sops {
        if gens.len() as i64 == e.module.dim() && is_sop(gens, &e.module)? && is_distinguished(gens, &f) {
            out.push((name.clone(), gens.clone()));
        }
    }
    if out.is_empty() {
        let ps = random_distinguished_sop(&e.module, &f, 0, 2)?;
        out.push(("random(seed 0)".into(), ps.elements));
    }
    Ok(out)
}

pub fn bounds(cfg: &FitConfig) -> Result<Repro> {
    let mut out = Repro::default();
    for e in corpus::sgcm_corpus()? {
        for (name, gens) in distinguished_sops(&e)? {
            let inst = format!("{}, {name}", e.label);
            out.checks.extend(bound_checks(&e.module, &gens, cfg).unwrap_or_else(|err| {
                vec![Check::new("bounds", inst.clone(), false, format!("error: {err}"))]
            }).into_iter().map(|mut c| {
                c.instance = inst.clone();
                c
            }));
        }
    }
    Ok(out)
}

/// The bound inequalities for one distinguished `q`.
pub fn bound_checks(m: &DiagonalModule, gens: &[Polynomial], cfg: &FitConfig) -> Result<Vec<Check>> {
    let f = dimension_filtration(m);
    let d = f.dims()[0] as usize;
    let q = Ideal::new(m.ring(), gens.to_vec());
    let adj = adjusted(m, &q, cfg)?;
    let big_i = i_of_filtration(&f)?;
    let c = regularity_bound_c(&big_i, d);
    let mut out = Vec::new();

    let top = if f.is_empty() { stuckrad_vogel_i(m)? } else { stuckrad_vogel_i(&f.piece(0))? };
    let a1 = BigInt::from(adj.a[0]);
    out.push(Check::new("a_1 range", "", a1 >= BigInt::from(0) && a1 <= top, format!("0 <= a_1 = {a1} <= I(M/M_1) = {top}")));

    for i in 2..=d {
        let b = coefficient_bound(&f, i)?;
        let ai = BigInt::from(adj.a[i - 1].unsigned_abs());
        let mut pass = ai <= b;
        let mut detail = format!("|a_{i}| = {ai} <= bound");
        if i == d {
            let ed = BigInt::from(adj.coefficients.e[d].unsigned_abs());
            pass &= ed <= b;
            detail.push_str(&format!(", |e_{d}| = {ed} <= bound"));
        }
        out.push(Check::new("coefficient bounds", "", pass, detail));
    }

    let mut hs = HsSeries::new(m, &q)?;
    let mut upper_ok = true;
    for n in 0..=10u64 {
        let h = hs.value(n as usize) as i64 - adeg_sum(&adj.adeg, n as usize);
        upper_ok &= BigInt::from(h) <= adjusted_upper_bound(&f, n)?;
    }
    out.push(Check::new("H_ad upper bound", "", upper_ok, "n = 0..10"));

    match nonnegativity_threshold(&c, &big_i, d) {
        Some(t) if (t as usize) + cfg.window <= cfg.ncap => {
            let t = t as usize;
            let ok = (t..=t + cfg.window).all(|n| hs.value(n) as i64 >= adeg_sum(&adj.adeg, n));
            out.push(Check::new("H_ad >= 0 past threshold", "", ok, format!("n = {t}..={}", t + cfg.window)));
        }
        t => {
            warn!("nonnegativity threshold {t:?} exceeds the n-cap {}; skipped", cfg.ncap);
            info!("C = {c}, I = {big_i}");
        }
    }
    Ok(out)
}
