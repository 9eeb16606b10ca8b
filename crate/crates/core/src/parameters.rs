//! Systems of parameters: sop, distinguished, good, d- and dd-sequences,
//! the lattice `N(x;M)`, filter-regular and superficial elements, and a
//! seeded sampler of distinguished systems.

use log::{debug, info};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filtration::{dimension_filtration, Filtration};
use crate::groebner::Ideal;
use crate::modpres::DiagonalModule;
use crate::poly::{Monomial, Polynomial, Ring};

/// Where a system of parameters came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Origin {
    Explicit,
    Random { seed: u64, degree_cap: u32, attempts: usize },
}

/// Cached verdicts; each can be recomputed from the elements.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamFlags {
    pub sop: Option<bool>,
    pub distinguished: Option<bool>,
    pub good: Option<bool>,
    pub d_sequence: Option<bool>,
    /// `Some((holds, B))` for the dd-sequence check over `{1..B}^d`.
    pub dd_sequence: Option<(bool, u32)>,
}

#[derive(Clone, Debug)]
pub struct ParameterSystem {
    pub elements: Vec<Polynomial>,
    pub origin: Origin,
    pub flags: ParamFlags,
}

/// Serializable view of a [`ParameterSystem`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterRecord {
    pub elements: Vec<String>,
    pub origin: Origin,
    pub flags: ParamFlags,
}

impl ParameterSystem {
    pub fn explicit(elements: Vec<Polynomial>) -> Self {
        ParameterSystem { elements, origin: Origin::Explicit, flags: ParamFlags::default() }
    }

    pub fn ideal(&self, ring: &Ring) -> Ideal {
        Ideal::new(ring, self.elements.clone())
    }

    pub fn record(&self, ring: &Ring) -> ParameterRecord {
        ParameterRecord {
            elements: self.elements.iter().map(|p| ring.fmt(p)).collect(),
            origin: self.origin.clone(),
            flags: self.flags.clone(),
        }
    }

    /// Fills every flag except the dd-sequence one, which needs a bound.
    pub fn verify(&mut self, m: &DiagonalModule) -> Result<()> {
        let sop = is_sop(&self.elements, m)?;
        self.flags.sop = Some(sop);
        if sop {
            let d = dimension_filtration(m);
            self.flags.distinguished = Some(is_distinguished(&self.elements, &d));
            self.flags.good = Some(is_good(&self.elements, &d));
        }
        self.flags.d_sequence = Some(is_d_sequence(&self.elements, m));
        Ok(())
    }
}

fn in_maximal(x: &Polynomial) -> bool {
    !x.is_zero() && x.constant_term().is_none()
}

fn span(ring: &Ring, xs: &[Polynomial]) -> Ideal {
    Ideal::new(ring, xs.to_vec())
}

/// `ℓ(M/(xs)M) < ∞` with `|xs| = dim M`.
pub fn is_sop(xs: &[Polynomial], m: &DiagonalModule) -> Result<bool> {
    let d = m.dim().max(0) as usize;
    if xs.len() != d {
        return Err(Error::WrongCount { expected: d, got: xs.len() });
    }
    if !xs.iter().all(in_maximal) {
        return Ok(false);
    }
    Ok(m.quotient_by_ideal(&span(m.ring(), xs)).length().is_finite())
}

/// `(x_j : j > dim M_i) M_i = 0` for every term of `f` (indices from 1).
pub fn is_distinguished(xs: &[Polynomial], f: &Filtration) -> bool {
    for (term, &di) in f.terms().iter().zip(f.dims()) {
        if term.is_zero() {
            continue;
        }
        let ann = term.annihilator();
        let from = di.max(0) as usize;
        if !xs.iter().skip(from).all(|x| ann.contains(x)) {
            return false;
        }
    }
    true
}

/// `(x_j : j > d_i) M ∩ D_i = 0` for every term of `f`.
pub fn is_good(xs: &[Polynomial], f: &Filtration) -> bool {
    let m = f.module();
    let ring = m.ring();
    for (term, &di) in f.terms().iter().zip(f.dims()).skip(1) {
        let tail = span(ring, &xs[di.max(0) as usize..]);
        for (s, t) in m.summands().iter().zip(term.summands()) {
            let xm = s.den.sum(&tail.product(&s.num));
            if !s.den.contains_ideal(&xm.intersection(&t.num)) {
                return false;
            }
        }
    }
    true
}

/// Numerators of `N :_M f` for a diagonal submodule `N` given by numerators.
fn colon_numerators(m: &DiagonalModule, nums: &[Ideal], f: &Polynomial) -> Vec<Ideal> {
    m.summands().iter().zip(nums).map(|(s, n)| n.colon_element(f).intersection(&s.num).reduced()).collect()
}

fn same_numerators(a: &[Ideal], b: &[Ideal]) -> bool {
    a.iter().zip(b).all(|(x, y)| x == y)
}

/// `(x_1..x_{i-1})M : x_i x_k = (x_1..x_{i-1})M : x_k` for all `i <= k`.
pub fn is_d_sequence(xs: &[Polynomial], m: &DiagonalModule) -> bool {
    let ring = m.ring();
    for i in 0..xs.len() {
        let prefix = span(ring, &xs[..i]);
        let nums: Vec<Ideal> = m.summands().iter().map(|s| s.den.sum(&prefix.product(&s.num)).reduced()).collect();
        for k in i..xs.len() {
            let lhs = colon_numerators(m, &nums, &xs[i].mul(&xs[k]));
            let rhs = colon_numerators(m, &nums, &xs[k]);
            if !same_numerators(&lhs, &rhs) {
                debug!("d-sequence condition fails at i = {}, k = {}", i + 1, k + 1);
                return false;
            }
        }
    }
    true
}

/// Outcome of a bounded check, with the first failing exponent tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundedCheck {
    pub holds: bool,
    pub bound: u32,
    pub witness: Option<Vec<u32>>,
    /// Split point `i` of the failing condition (1-based), or failing stage.
    pub stage: Option<usize>,
}

fn tuples(len: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..=bound).map(move |e| {
                    let mut t = t.clone();
                    t.push(e);
                    t
                })
            })
            .collect();
    }
    out
}

fn powers(ring: &Ring, xs: &[Polynomial], ns: &[u32]) -> Vec<Polynomial> {
    xs.iter().zip(ns).map(|(x, &n)| x.pow(n, ring.field())).collect()
}

/// For each `i` and each `n ∈ {1..B}^s`: `x_1^{n_1}..x_i^{n_i}` is a
/// d-sequence on `M/(x_{i+1}^{n_{i+1}}..x_s^{n_s})M`.
pub fn is_dd_sequence_bounded(xs: &[Polynomial], m: &DiagonalModule, bound: u32) -> BoundedCheck {
    let ring = m.ring();
    let s = xs.len();
    for i in 1..=s {
        for head in tuples(i, bound) {
            let head_pows = powers(ring, &xs[..i], &head);
            for tail in tuples(s - i, bound) {
                let tail_pows = powers(ring, &xs[i..], &tail);
                let quot = m.quotient_by_ideal(&span(ring, &tail_pows));
                if !is_d_sequence(&head_pows, &quot) {
                    let mut witness = head.clone();
                    witness.extend(tail);
                    return BoundedCheck { holds: false, bound, witness: Some(witness), stage: Some(i) };
                }
            }
        }
    }
    BoundedCheck { holds: true, bound, witness: None, stage: None }
}

/// For `0 <= i < d`: the residual system `x_{i+1}..x_d` is distinguished on
/// `M/(x_1^{n_1}..x_i^{n_i})M`.
pub fn in_n_bounded(xs: &[Polynomial], ns: &[u32], m: &DiagonalModule) -> Result<BoundedCheck> {
    if ns.len() != xs.len() {
        return Err(Error::WrongCount { expected: xs.len(), got: ns.len() });
    }
    let ring = m.ring();
    let bound = ns.iter().copied().max().unwrap_or(0);
    for i in 0..xs.len() {
        let q = span(ring, &powers(ring, &xs[..i], &ns[..i]));
        let quot = m.quotient_by_ideal(&q);
        let rest = &xs[i..];
        let ok = quot.dim().max(0) as usize == rest.len()
            && is_sop(rest, &quot)?
            && is_distinguished(rest, &dimension_filtration(&quot));
        if !ok {
            return Ok(BoundedCheck { holds: false, bound, witness: Some(ns.to_vec()), stage: Some(i) });
        }
    }
    Ok(BoundedCheck { holds: true, bound, witness: None, stage: None })
}

/// `ℓ(0 :_M x) < ∞`.
pub fn is_filter_regular(x: &Polynomial, m: &DiagonalModule) -> bool {
    m.zero_colon(x).length().is_finite()
}

/// `(q^{n+1}M : x) ∩ q^c M = q^n M` for `n = c..=c+w`.
pub fn is_superficial_bounded(x: &Polynomial, q: &Ideal, m: &DiagonalModule, c: u32, w: u32) -> bool {
    if !q.contains(x) {
        return false;
    }
    let q_pow = |k: u32| -> Vec<Ideal> {
        let qk = q.power(k);
        m.summands().iter().map(|s| s.den.sum(&qk.product(&s.num)).reduced()).collect()
    };
    let qc = q_pow(c);
    for n in c..=c + w {
        let lhs: Vec<Ideal> = colon_numerators(m, &q_pow(n + 1), x)
            .iter()
            .zip(&qc)
            .map(|(a, b)| a.intersection(b).reduced())
            .collect();
        if !same_numerators(&lhs, &q_pow(n)) {
            debug!("superficiality fails at n = {n}");
            return false;
        }
    }
    true
}

fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    fn rec(k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if k + 1 == cur.len() {
            cur[k] = left;
            out.push(Monomial::new(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[k] = e;
            rec(k + 1, left - e, cur, out);
        }
    }
    if nvars == 0 {
        return if deg == 0 { vec![Monomial::one(0)] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(0, deg, &mut vec![0; nvars], &mut out);
    out
}

// homogeneous elements of `ann` of degree `deg`, spanning that graded piece
fn graded_piece(ring: &Ring, ann: &Ideal, deg: u32) -> Vec<Polynomial> {
    let mut out = Vec::new();
    for g in ann.basis() {
        let Some(gd) = g.total_degree() else { continue };
        if gd == 0 || gd > deg {
            continue;
        }
        for mu in monomials_of_degree(ring.nvars(), deg - gd) {
            out.push(g.mul_monomial(&mu));
        }
    }
    out
}

/// Draws `x_j` from `ann(M_i) ∩ m` for the least `i` with `d_i < j`, as a random
/// combination (coefficients in `[-10, 10]`) of the homogeneous elements of
/// the lowest degree available there, which must be `<= cap`; retries until
/// the system is a distinguished sop. The cap rises by one whenever some `x_j`
/// has no candidate or 50 draws fail.
pub fn random_distinguished_sop(m: &DiagonalModule, f: &Filtration, seed: u64, degree_cap: u32) -> Result<ParameterSystem> {
    const BUDGET: usize = 200;
    let ring = m.ring();
    let d = m.dim();
    if d < 1 {
        return Ok(ParameterSystem { elements: Vec::new(), origin: Origin::Random { seed, degree_cap, attempts: 0 }, flags: ParamFlags::default() });
    }
    let d = d as usize;
    let maximal = Ideal::maximal(ring);
    // the ideal each x_j is drawn from
    let targets: Vec<Ideal> = (1..=d)
        .map(|j| {
            let term = f.terms().iter().zip(f.dims()).find(|(_, &di)| di < j as i64).map(|(t, _)| t);
            match term {
                Some(t) if !t.is_zero() => t.annihilator().intersection(&maximal).reduced(),
                _ => maximal.clone(),
            }
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cap = degree_cap.max(1);
    let mut failures_at_cap = 0;
    for attempt in 1..=BUDGET {
        let mut xs = Vec::with_capacity(d);
        let mut starved = false;
        for target in &targets {
            let lowest = target.basis().iter().filter_map(|g| g.total_degree()).min().unwrap_or(u32::MAX);
            if lowest > cap {
                starved = true;
                break;
            }
            let deg = lowest.max(1);
            let piece = graded_piece(ring, target, deg);
            let mut x = ring.zero();
            while x.is_zero() {
                for p in &piece {
                    let c: i64 = rng.gen_range(-10..=10);
                    if c != 0 {
                        x = x.add(&p.scale(&ring.field().from_i64(c)));
                    }
                }
            }
            xs.push(x);
        }
        if starved {
            info!("no candidates of degree <= {cap}; raising the degree cap");
            cap += 1;
            failures_at_cap = 0;
            continue;
        }
        if is_sop(&xs, m)? && is_distinguished(&xs, f) {
            let mut flags = ParamFlags { sop: Some(true), distinguished: Some(true), ..ParamFlags::default() };
            flags.good = Some(is_good(&xs, f));
            return Ok(ParameterSystem { elements: xs, origin: Origin::Random { seed, degree_cap: cap, attempts: attempt }, flags });
        }
        failures_at_cap += 1;
        if failures_at_cap == 50 {
            cap += 1;
            failures_at_cap = 0;
        }
    }
    Err(Error::SamplerExhausted { attempts: BUDGET, detail: format!("last degree cap {cap} on {m}") })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;

    fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| r.parse(g).unwrap()).collect())
    }

    fn polys(r: &Ring, gens: &[&str]) -> Vec<Polynomial> {
        gens.iter().map(|g| r.parse(g).unwrap()).collect()
    }

    fn ex1() -> (Ring, DiagonalModule) {
        let r = PolyRing::qq(&["X", "Y", "Z"]);
        let m = DiagonalModule::cyclic_sum(&r, vec![Ideal::zero(&r), ideal(&r, &["Z^2"])]);
        (r, m)
    }

    #[test]
    fn sop_examples() {
        let (r, m) = ex1();
        assert!(is_sop(&polys(&r, &["X^2", "Y^2", "Z"]), &m).unwrap());
        assert!(matches!(is_sop(&polys(&r, &["X"]), &m), Err(Error::WrongCount { .. })));
        let r2 = PolyRing::qq(&["x", "y"]);
        let m2 = DiagonalModule::cyclic_sum(&r2, vec![ideal(&r2, &["x*y"])]);
        assert!(!is_sop(&polys(&r2, &["x"]), &m2).unwrap());
        assert!(is_sop(&polys(&r2, &["x+y"]), &m2).unwrap());
    }

    #[test]
    fn distinguished_and_good() {
        let (r, m) = ex1();
        let d = dimension_filtration(&m);
        assert!(is_distinguished(&polys(&r, &["X", "Y", "Z^2"]), &d));
        assert!(is_good(&polys(&r, &["X", "Y", "Z^2"]), &d));
        for k in 1..=3 {
            let xs = polys(&r, &[&format!("X^{k}"), &format!("Y^{k}"), "Z"]);
            assert!(!is_distinguished(&xs, &d));
        }
        let r2 = PolyRing::qq(&["x", "y"]);
        let m2 = DiagonalModule::cyclic_sum(&r2, vec![ideal(&r2, &["x^2", "x*y"])]);
        let d2 = dimension_filtration(&m2);
        assert!(is_distinguished(&polys(&r2, &["y"]), &d2));
        assert!(is_good(&polys(&r2, &["y"]), &d2));
        assert!(is_good(&polys(&r2, &["x+y"]), &d2));
    }

    #[test]
    fn d_sequences() {
        let r = PolyRing::qq(&["x", "y"]);
        let free = DiagonalModule::cyclic_sum(&r, vec![Ideal::zero(&r)]);
        assert!(is_d_sequence(&polys(&r, &["x", "y"]), &free));
        let m = DiagonalModule::cyclic_sum(&r, vec![ideal(&r, &["x^2", "x*y"])]);
        assert!(is_d_sequence(&polys(&r, &["y"]), &m));
        assert!(is_dd_sequence_bounded(&polys(&r, &["y"]), &m, 3).holds);
        assert!(is_dd_sequence_bounded(&polys(&r, &["x", "y"]), &free, 3).holds);
        let r4 = PolyRing::qq(&["x", "y", "z", "w"]);
        let sq = DiagonalModule::cyclic_sum(&r4, vec![ideal(&r4, &["x*z", "x*w", "y*z", "y*w"])]);
        assert!(is_d_sequence(&polys(&r4, &["x-z", "y-w"]), &sq));
        let bad = DiagonalModule::cyclic_sum(&r, vec![ideal(&r, &["x^2"])]);
        let check = is_dd_sequence_bounded(&polys(&r, &["x", "y"]), &bad, 3);
        assert!(!check.holds);
        assert!(check.witness.is_some());
    }

    #[test]
    fn lattice_membership() {
        let (r, m) = ex1();
        let xs = polys(&r, &["X", "Y", "Z^2"]);
        assert!(in_n_bounded(&xs, &[1, 1, 1], &m).unwrap().holds);
        let r2 = PolyRing::qq(&["x", "y"]);
        let free = DiagonalModule::cyclic_sum(&r2, vec![Ideal::zero(&r2)]);
        assert!(in_n_bounded(&polys(&r2, &["x", "y"]), &[7, 1], &free).unwrap().holds);
        // Z first: M/ZM has D_1 = 0 ⊕ (Z)/(Z^2) ≠ 0 of dim 2 not killed by Y
        let bad = in_n_bounded(&polys(&r, &["Z", "X", "Y"]), &[1, 1, 1], &m).unwrap();
        assert!(!bad.holds);
    }

    #[test]
    fn filter_regular_and_superficial() {
        let (r, m) = ex1();
        assert!(!is_filter_regular(&r.parse("Z").unwrap(), &m));
        assert!(is_filter_regular(&r.parse("X").unwrap(), &m));
        let free = DiagonalModule::cyclic_sum(&r, vec![Ideal::zero(&r)]);
        let q = ideal(&r, &["X^2", "Y^2", "Z"]);
        assert!(is_superficial_bounded(&r.parse("X^2").unwrap(), &q, &free, 2, 3));
        let r2 = PolyRing::qq(&["x", "y"]);
        let f2 = DiagonalModule::cyclic_sum(&r2, vec![Ideal::zero(&r2)]);
        let m2 = ideal(&r2, &["x", "y"]);
        assert!(is_superficial_bounded(&r2.parse("x+2*y").unwrap(), &m2, &f2, 2, 3));
        assert!(!is_superficial_bounded(&r2.parse("x^2").unwrap(), &m2, &f2, 2, 3));
        let xm = DiagonalModule::cyclic_sum(&r2, vec![ideal(&r2, &["x"])]);
        assert!(!is_filter_regular(&r2.parse("x").unwrap(), &xm));
    }

    #[test]
    fn sampler_is_deterministic_and_escalates() {
        let (_, m) = ex1();
        let d = dimension_filtration(&m);
        let a = random_distinguished_sop(&m, &d, 7, 1).unwrap();
        let b = random_distinguished_sop(&m, &d, 7, 1).unwrap();
        assert_eq!(a.elements, b.elements);
        assert!(matches!(a.origin, Origin::Random { degree_cap: 2, .. }));
        assert!(is_distinguished(&a.elements, &d));
    }
}
