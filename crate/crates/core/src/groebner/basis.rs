use std::collections::HashSet;

use log::trace;

use super::vector::{cmp_terms, Vector};
use crate::poly::{Monomial, MonomialOrder};

/// Reduced Gröbner basis of a submodule of `R^rank` under position-over-term
/// order on top of `order` (rank 1 is the ideal case).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    rank: usize,
    nvars: usize,
    order: MonomialOrder,
    elems: Vec<Vector>,
    reduced: bool,
}

/// Statistics of one Buchberger run.
#[derive(Clone, Copy, Debug, Default)]
pub struct SPairStats {
    pub considered: usize,
    pub skipped_product: usize,
    pub skipped_chain: usize,
    pub zero_reductions: usize,
}

impl GroebnerBasis {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn elems(&self) -> &[Vector] {
        &self.elems
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_zero(&self) -> bool {
        self.elems.is_empty()
    }

    /// True when some element is a unit vector up to scaling in every component,
    /// i.e. for rank 1 the ideal is the whole ring.
    pub fn is_unit_ideal(&self) -> bool {
        self.rank == 1 && self.elems.iter().any(|v| v.lead().is_some_and(|t| t.mon.is_one()))
    }

    /// Minimal generators of the leading monomial ideal in each component.
    pub fn leading_ideals(&self) -> Vec<Vec<Monomial>> {
        let mut out = vec![Vec::new(); self.rank];
        for v in &self.elems {
            let t = v.lead().expect("basis elements are nonzero");
            out[t.comp].push(t.mon.clone());
        }
        out
    }

    pub fn normal_form(&self, v: &Vector) -> Vector {
        let v = if v.order() == self.order { v.clone() } else { v.with_order(self.order) };
        reduce(&v, &self.elems, true)
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.normal_form(v).is_zero()
    }

    /// Runs the full S-pair check: every S-vector reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        for i in 0..self.elems.len() {
            for j in i + 1..self.elems.len() {
                if let Some(s) = s_vector(&self.elems[i], &self.elems[j]) {
                    if !reduce(&s, &self.elems, false).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Equality of the generated submodules (both bases reduced under the same order).
    pub fn same_module(&self, other: &GroebnerBasis) -> bool {
        self.rank == other.rank && self.elems == other.elems
    }
}

/// S-vector of two elements with leading terms in the same component.
pub(crate) fn s_vector(f: &Vector, g: &Vector) -> Option<Vector> {
    let (a, b) = (f.lead()?, g.lead()?);
    if a.comp != b.comp {
        return None;
    }
    let l = a.mon.lcm(&b.mon);
    let fa = a.mon.quotient_of(&l);
    let gb = b.mon.quotient_of(&l);
    let lhs = Vector::zero(f.nvars(), f.order()).sub_scaled(&a.coef.inv().neg(), &fa, f);
    Some(lhs.sub_scaled(&b.coef.inv(), &gb, g))
}

/// Division of `v` by `basis`; `full` also reduces non-leading terms.
pub(crate) fn reduce(v: &Vector, basis: &[Vector], full: bool) -> Vector {
    let mut p = v.clone();
    let mut rem: Vec<super::vector::Term> = Vec::new();
    loop {
        let Some(lt) = p.lead().cloned() else { break };
        let divisor = basis.iter().find(|g| {
            let gl = g.lead().unwrap();
            gl.comp == lt.comp && gl.mon.divides(&lt.mon)
        });
        match divisor {
            Some(g) => {
                let gl = g.lead().unwrap();
                let c = lt.coef.div(&gl.coef);
                let m = gl.mon.quotient_of(&lt.mon);
                p = p.sub_scaled(&c, &m, g);
            }
            None => {
                if !full {
                    rem.push(lt);
                    rem.extend(p.terms()[1..].iter().cloned());
                    break;
                }
                rem.push(lt);
                p = Vector::from_terms(p.nvars(), p.order(), p.terms()[1..].to_vec());
            }
        }
    }
    Vector::from_terms(v.nvars(), v.order(), rem)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: usize,
}

/// Buchberger's algorithm with the normal selection strategy, the product
/// criterion (rank 1 only) and the chain criterion; returns a reduced basis.
pub fn groebner_basis(gens: &[Vector], rank: usize, nvars: usize, order: MonomialOrder) -> GroebnerBasis {
    let (gb, stats) = groebner_basis_with_stats(gens, rank, nvars, order);
    trace!(
        "buchberger: {} pairs, {} product-skipped, {} chain-skipped, {} zero reductions, {} elements",
        stats.considered,
        stats.skipped_product,
        stats.skipped_chain,
        stats.zero_reductions,
        gb.elems.len()
    );
    gb
}

pub fn groebner_basis_with_stats(
    gens: &[Vector],
    rank: usize,
    nvars: usize,
    order: MonomialOrder,
) -> (GroebnerBasis, SPairStats) {
    let gens: Vec<Vector> = gens
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| if v.order() == order { v.clone() } else { v.with_order(order) })
        .collect();
    let mut stats = SPairStats::default();
    if gens.iter().all(|v| v.is_term()) {
        let elems = minimalize_terms(gens);
        return (GroebnerBasis { rank, nvars, order, elems, reduced: true }, stats);
    }

    let mut basis: Vec<Vector> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut done: HashSet<(usize, usize)> = HashSet::new();

    let insert = |h: Vector, basis: &mut Vec<Vector>, pairs: &mut Vec<Pair>| {
        let h = h.monic();
        let k = basis.len();
        let hl = h.lead().unwrap().clone();
        for (i, g) in basis.iter().enumerate() {
            let gl = g.lead().unwrap();
            if gl.comp == hl.comp {
                pairs.push(Pair { i, j: k, lcm: gl.mon.lcm(&hl.mon), comp: hl.comp });
            }
        }
        basis.push(h);
    };

    for g in gens {
        let h = reduce(&g, &basis, true);
        if !h.is_zero() {
            insert(h, &mut basis, &mut pairs);
        }
    }

    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pairs[a], &pairs[b]);
                pa.lcm
                    .degree()
                    .cmp(&pb.lcm.degree())
                    .then_with(|| cmp_terms(order, (pa.comp, &pa.lcm), (pb.comp, &pb.lcm)))
                    .then_with(|| (pa.j, pa.i).cmp(&(pb.j, pb.i)))
            })
            .unwrap();
        let pair = pairs.swap_remove(best);
        stats.considered += 1;
        let (fi, fj) = (&basis[pair.i], &basis[pair.j]);
        let (li, lj) = (&fi.lead().unwrap().mon, &fj.lead().unwrap().mon);
        if rank == 1 && li.is_coprime(lj) {
            stats.skipped_product += 1;
            done.insert((pair.i, pair.j));
            continue;
        }
        let pending = |a: usize, b: usize, pairs: &[Pair]| {
            let (a, b) = (a.min(b), a.max(b));
            pairs.iter().any(|p| p.i == a && p.j == b)
        };
        let chain = basis.iter().enumerate().any(|(k, g)| {
            let gl = g.lead().unwrap();
            k != pair.i
                && k != pair.j
                && gl.comp == pair.comp
                && gl.mon.divides(&pair.lcm)
                && !pending(pair.i, k, &pairs)
                && !pending(pair.j, k, &pairs)
        });
        done.insert((pair.i, pair.j));
        if chain {
            stats.skipped_chain += 1;
            continue;
        }
        let s = s_vector(fi, fj).expect("same component");
        let h = reduce(&s, &basis, true);
        if h.is_zero() {
            stats.zero_reductions += 1;
        } else {
            insert(h, &mut basis, &mut pairs);
        }
    }

    let elems = interreduce(basis);
    (GroebnerBasis { rank, nvars, order, elems, reduced: true }, stats)
}

fn minimalize_terms(gens: Vec<Vector>) -> Vec<Vector> {
    let mut uniq: Vec<Vector> = Vec::new();
    for g in gens {
        let t = g.lead().unwrap();
        if !uniq.iter().any(|u| {
            let ut = u.lead().unwrap();
            ut.comp == t.comp && ut.mon.divides(&t.mon)
        }) {
            uniq.retain(|u| {
                let ut = u.lead().unwrap();
                !(ut.comp == t.comp && t.mon.divides(&ut.mon))
            });
            uniq.push(g.monic());
        }
    }
    sort_basis(&mut uniq);
    uniq
}

fn sort_basis(elems: &mut [Vector]) {
    elems.sort_by(|a, b| {
        let (ta, tb) = (a.lead().unwrap(), b.lead().unwrap());
        cmp_terms(a.order(), (tb.comp, &tb.mon), (ta.comp, &ta.mon))
    });
}

fn interreduce(basis: Vec<Vector>) -> Vec<Vector> {
    // drop elements whose leading term is divisible by another's
    let mut minimal: Vec<Vector> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let gl = g.lead().unwrap();
        let redundant = basis.iter().enumerate().any(|(l, h)| {
            if l == k {
                return false;
            }
            let hl = h.lead().unwrap();
            hl.comp == gl.comp
                && hl.mon.divides(&gl.mon)
                && (hl.mon != gl.mon || l < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Vector> =
            minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, v)| v.clone()).collect();
        out.push(reduce(&minimal[k], &others, true).monic());
    }
    sort_basis(&mut out);
    out
}
