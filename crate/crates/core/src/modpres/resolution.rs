use std::collections::BTreeMap;

use super::{PresentedModule, Provenance};
use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, syzygies, Vector};
use crate::poly::{MonomialOrder, Polynomial, Ring};

/// A graded minimal free resolution `0 <- F_0 <- F_1 <- ... <- F_p <- 0`.
///
/// `maps[k]` holds the columns of `F_{k+1} -> F_k` as vectors in `F_k`.
#[derive(Clone, Debug)]
pub struct Resolution {
    nvars: usize,
    shifts: Vec<Vec<i64>>,
    maps: Vec<Vec<Vector>>,
}

impl Resolution {
    pub fn ranks(&self) -> Vec<usize> {
        self.shifts.iter().map(|s| s.len()).collect()
    }

    pub fn shifts(&self) -> &[Vec<i64>] {
        &self.shifts
    }

    pub fn maps(&self) -> &[Vec<Vector>] {
        &self.maps
    }

    /// Projective dimension (0 for a free module; 0 also for the zero module).
    pub fn pd(&self) -> usize {
        self.maps.len()
    }

    /// Graded Betti numbers: `betti[i][j]` is the number of degree-`j` generators of `F_i`.
    pub fn graded_betti(&self) -> Vec<BTreeMap<i64, usize>> {
        self.shifts
            .iter()
            .map(|s| {
                let mut m = BTreeMap::new();
                for d in s {
                    *m.entry(*d).or_insert(0) += 1;
                }
                m
            })
            .collect()
    }

    /// True when consecutive maps compose to zero and no map has a unit entry.
    pub fn verify(&self) -> bool {
        for k in 1..self.maps.len() {
            for col in &self.maps[k] {
                let mut acc = Vector::zero(self.nvars, MonomialOrder::Grevlex);
                for (b, image) in self.maps[k - 1].iter().enumerate() {
                    acc = acc.add(&image.mul_poly(&col.entry(b)));
                }
                if !acc.is_zero() {
                    return false;
                }
            }
        }
        self.maps.iter().flatten().all(|v| v.terms().iter().all(|t| !t.mon.is_one()))
    }

    /// `Ext^j(M, R) = ker(d_{j+1}^T) / im(d_j^T)` inside `F_j^*`.
    pub fn ext(&self, ring: &Ring, j: usize) -> Result<PresentedModule> {
        let n = ring.nvars();
        if j > n {
            return Err(Error::OutOfRange { index: j as i64, lo: 0, hi: n as i64 });
        }
        let Some(fj) = self.shifts.get(j) else {
            return Ok(PresentedModule::build(ring, Vec::new(), None, Vec::new(), Provenance::Ext(j)));
        };
        let dual: Vec<i64> = fj.iter().map(|s| -s).collect();
        let kernel = match self.maps.get(j) {
            Some(cols) => syzygies(&rows(cols, fj.len(), self.nvars), cols.len(), self.nvars),
            None => (0..fj.len())
                .map(|c| Vector::unit(self.nvars, c, MonomialOrder::Grevlex, ring.field().one()))
                .collect(),
        };
        let image = match j.checked_sub(1).and_then(|k| self.maps.get(k)) {
            Some(cols) => rows(cols, self.shifts[j - 1].len(), self.nvars),
            None => Vec::new(),
        };
        Ok(PresentedModule::build(ring, dual, Some(kernel), image, Provenance::Ext(j)))
    }
}

/// Rows of the matrix whose columns are `cols` (each with `nrows` entries).
fn rows(cols: &[Vector], nrows: usize, nvars: usize) -> Vec<Vector> {
    let mut entries: Vec<Vec<Polynomial>> = vec![Vec::with_capacity(cols.len()); nrows];
    for col in cols {
        for (a, e) in col.to_polys(nrows).into_iter().enumerate() {
            entries[a].push(e);
        }
    }
    entries.iter().map(|r| Vector::from_polys(r, 0, nvars, MonomialOrder::Grevlex)).collect()
}

/// Removes basis vectors that a relation with a unit entry expresses through
/// the others, until no relation has a constant entry.
fn prune(mut shifts: Vec<i64>, mut rels: Vec<Vector>) -> (Vec<i64>, Vec<Vector>) {
    loop {
        let hit = rels.iter().enumerate().find_map(|(k, v)| {
            v.terms().iter().find(|t| t.mon.is_one()).map(|t| (k, t.comp, t.coef.clone()))
        });
        let Some((k, c, u)) = hit else {
            return (shifts, rels);
        };
        let v = rels.swap_remove(k);
        let uinv = u.inv();
        rels = rels
            .into_iter()
            .map(|w| {
                let wc = w.entry(c);
                if wc.is_zero() {
                    w
                } else {
                    w.sub(&v.mul_poly(&wc.scale(&uinv)))
                }
            })
            .map(|w| w.map_comps(|d| if d == c { None } else if d > c { Some(d - 1) } else { Some(d) }))
            .filter(|w| !w.is_zero())
            .collect();
        shifts.remove(c);
    }
}

/// A minimal homogeneous generating set, chosen greedily by degree.
fn minimal_generators(vecs: &[Vector], shifts: &[i64], nvars: usize) -> Vec<Vector> {
    let mut sorted: Vec<(i64, usize, &Vector)> = vecs
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(k, v)| (v.degree(shifts).unwrap_or(0), k, v))
        .collect();
    sorted.sort_by_key(|(d, k, _)| (*d, *k));
    let mut kept: Vec<Vector> = Vec::new();
    for (_, _, v) in sorted {
        let gb = groebner_basis(&kept, shifts.len(), nvars, MonomialOrder::Grevlex);
        if !gb.contains(v) {
            kept.push(v.clone());
        }
    }
    kept
}

/// Minimal graded free resolution of a graded module.
pub fn minimal_free_resolution(m: &PresentedModule) -> Result<Resolution> {
    if !m.is_graded() {
        return Err(Error::NotGraded("resolutions need homogeneous generators and relations".into()));
    }
    let nvars = m.ring().nvars();
    let p = m.present();
    let (shifts, rels) = prune(p.shifts().to_vec(), p.relations().to_vec());
    let mut all_shifts = vec![shifts];
    let mut maps = Vec::new();
    let mut cur = minimal_generators(&rels, &all_shifts[0], nvars);
    while !cur.is_empty() {
        let prev = all_shifts.last().unwrap();
        let next_shifts: Vec<i64> = cur.iter().map(|v| v.degree(prev).unwrap()).collect();
        let syz = syzygies(&cur, prev.len(), nvars);
        maps.push(cur);
        cur = minimal_generators(&syz, &next_shifts, nvars);
        all_shifts.push(next_shifts);
        if maps.len() > nvars + 1 {
            return Err(Error::NotGraded("resolution longer than the number of variables".into()));
        }
    }
    Ok(Resolution { nvars, shifts: all_shifts, maps })
}
