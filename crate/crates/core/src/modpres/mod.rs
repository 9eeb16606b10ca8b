//! Finitely presented graded modules and direct sums of ideal subquotients.

mod diagonal;
mod resolution;

use std::fmt;
use std::sync::OnceLock;

pub use diagonal::{DiagonalModule, Summand};
pub use resolution::{minimal_free_resolution, Resolution};

use crate::error::{Error, Result};
use crate::groebner::{
    groebner_basis, krull_dim, module_colon_element, module_colon_vector, module_intersection, quotient_numerator,
    GroebnerBasis, Ideal, Length, Vector,
};
use crate::laurent::{length_and_dim, Laurent};
use crate::poly::{MonomialOrder, Ring};

/// How a presented module came about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    DirectSum,
    Subquotient,
    Quotient,
    Ext(usize),
}

/// The subquotient `(K + N) / N` of a graded free module `F = ⊕ R(-shift_c)`.
/// With `generators = None`, `K = F` and this is the cokernel of `N`.
#[derive(Clone)]
pub struct PresentedModule {
    ring: Ring,
    rank: usize,
    shifts: Vec<i64>,
    generators: Option<Vec<Vector>>,
    relations: Vec<Vector>,
    provenance: Provenance,
    rel_gb: OnceLock<GroebnerBasis>,
    num_gb: OnceLock<GroebnerBasis>,
}

impl fmt::Debug for PresentedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PresentedModule")
            .field("rank", &self.rank)
            .field("shifts", &self.shifts)
            .field("generators", &self.generators.as_ref().map(|g| g.len()))
            .field("relations", &self.relations.len())
            .field("provenance", &self.provenance)
            .finish()
    }
}

fn grevlex(v: &Vector) -> Vector {
    if v.order() == MonomialOrder::Grevlex {
        v.clone()
    } else {
        v.with_order(MonomialOrder::Grevlex)
    }
}

impl PresentedModule {
    /// `F / N` with `N` spanned by `relations`.
    pub fn cokernel(ring: &Ring, shifts: Vec<i64>, relations: Vec<Vector>) -> Self {
        Self::build(ring, shifts, None, relations, Provenance::Quotient)
    }

    /// `(K + N) / N`.
    pub fn subquotient(ring: &Ring, shifts: Vec<i64>, generators: Vec<Vector>, relations: Vec<Vector>) -> Self {
        Self::build(ring, shifts, Some(generators), relations, Provenance::Subquotient)
    }

    pub(crate) fn build(
        ring: &Ring,
        shifts: Vec<i64>,
        generators: Option<Vec<Vector>>,
        relations: Vec<Vector>,
        provenance: Provenance,
    ) -> Self {
        let clean = |vs: Vec<Vector>| vs.into_iter().filter(|v| !v.is_zero()).map(|v| grevlex(&v)).collect();
        PresentedModule {
            ring: ring.clone(),
            rank: shifts.len(),
            shifts,
            generators: generators.map(clean),
            relations: clean(relations),
            provenance,
            rel_gb: OnceLock::new(),
            num_gb: OnceLock::new(),
        }
    }

    /// `J / I` for ideals `I ⊆ J`.
    pub fn from_ideals(j: &Ideal, i: &Ideal) -> Result<Self> {
        if !j.contains_ideal(i) {
            return Err(Error::Containment(format!("{i} is not contained in {j}")));
        }
        let o = MonomialOrder::Grevlex;
        let gens = j.basis().iter().map(|g| Vector::from_poly(g, 0, o)).collect();
        let rels = i.basis().iter().map(|g| Vector::from_poly(g, 0, o)).collect();
        Ok(Self::subquotient(j.ring(), vec![0], gens, rels))
    }

    /// `R / I`.
    pub fn cyclic(i: &Ideal) -> Self {
        let o = MonomialOrder::Grevlex;
        let rels = i.basis().iter().map(|g| Vector::from_poly(g, 0, o)).collect();
        Self::cokernel(i.ring(), vec![0], rels)
    }

    pub fn direct_sum(ring: &Ring, parts: &[PresentedModule]) -> Self {
        let mut shifts = Vec::new();
        let mut gens = Vec::new();
        let mut rels = Vec::new();
        let mut any_sub = false;
        for p in parts {
            let off = shifts.len();
            shifts.extend(p.shifts.iter().copied());
            let shift = |v: &Vector| v.map_comps(|c| Some(c + off));
            match &p.generators {
                Some(g) => {
                    any_sub = true;
                    gens.extend(g.iter().map(shift));
                }
                None => gens.extend((0..p.rank).map(|c| {
                    Vector::unit(ring.nvars(), c + off, MonomialOrder::Grevlex, ring.field().one())
                })),
            }
            rels.extend(p.relations.iter().map(shift));
        }
        Self::build(ring, shifts, any_sub.then_some(gens), rels, Provenance::DirectSum)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    pub fn relations(&self) -> &[Vector] {
        &self.relations
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Generators of `K` (the unit vectors for a cokernel).
    pub fn generators(&self) -> Vec<Vector> {
        match &self.generators {
            Some(g) => g.clone(),
            None => (0..self.rank)
                .map(|c| Vector::unit(self.ring.nvars(), c, MonomialOrder::Grevlex, self.ring.field().one()))
                .collect(),
        }
    }

    pub fn relations_gb(&self) -> &GroebnerBasis {
        self.rel_gb
            .get_or_init(|| groebner_basis(&self.relations, self.rank, self.ring.nvars(), MonomialOrder::Grevlex))
    }

    /// Basis of `K + N`.
    pub fn numerator_gb(&self) -> &GroebnerBasis {
        self.num_gb.get_or_init(|| {
            let mut all = self.generators();
            all.extend(self.relations.iter().cloned());
            groebner_basis(&all, self.rank, self.ring.nvars(), MonomialOrder::Grevlex)
        })
    }

    pub fn is_graded(&self) -> bool {
        let hom = |v: &Vector| v.is_homogeneous(&self.shifts);
        self.relations.iter().all(hom) && self.generators.as_ref().is_none_or(|g| g.iter().all(hom))
    }

    /// Hilbert series numerator `HS(F/N) - HS(F/(K+N))`.
    pub fn hilbert_numerator(&self) -> Laurent {
        let a = quotient_numerator(self.relations_gb(), &self.shifts);
        match &self.generators {
            None => a,
            Some(_) => a.sub(&quotient_numerator(self.numerator_gb(), &self.shifts)),
        }
    }

    pub fn length(&self) -> Length {
        Length::from_option(length_and_dim(&self.hilbert_numerator(), self.ring.nvars()).0)
    }

    /// Krull dimension, -1 for the zero module.
    pub fn dim(&self) -> i64 {
        match &self.generators {
            None => krull_dim(self.relations_gb()),
            Some(_) => length_and_dim(&self.hilbert_numerator(), self.ring.nvars()).1,
        }
    }

    pub fn is_zero(&self) -> bool {
        let gb = self.relations_gb();
        self.generators().iter().all(|g| gb.contains(g))
    }

    /// `ann M = ∩_k (N : k)` over the generators `k` of `K`.
    pub fn annihilator(&self) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        let basis = self.relations_gb().elems().to_vec();
        for g in self.generators() {
            if self.relations_gb().contains(&g) {
                continue;
            }
            let col = module_colon_vector(&basis, &g, self.rank, self.ring.nvars(), self.ring.field().one());
            acc = acc.intersection(&Ideal::new(&self.ring, col)).reduced();
        }
        acc
    }

    /// `M / aM`.
    pub fn quotient_by_ideal(&self, a: &Ideal) -> PresentedModule {
        let mut rels = self.relations.clone();
        for k in self.generators() {
            for f in a.gens() {
                rels.push(k.mul_poly(f));
            }
        }
        Self::build(&self.ring, self.shifts.clone(), self.generators.clone(), rels, Provenance::Quotient)
    }

    /// `M / (image of extra in F)`.
    pub fn quotient_by(&self, extra: &[Vector]) -> PresentedModule {
        let mut rels = self.relations.clone();
        rels.extend(extra.iter().cloned());
        Self::build(&self.ring, self.shifts.clone(), self.generators.clone(), rels, Provenance::Quotient)
    }

    /// `H^0_a(M) = ∪_t (0 :_M a^t)`, as a subquotient with the same relations.
    pub fn torsion_submodule(&self, a: &Ideal) -> PresentedModule {
        let n = self.ring.nvars();
        let one = self.ring.field().one();
        let mut cur = self.relations_gb().clone();
        loop {
            let mut next: Option<Vec<Vector>> = None;
            for g in a.basis() {
                let c = module_colon_element(cur.elems(), &g, self.rank, n, one.clone());
                next = Some(match next {
                    None => c,
                    Some(prev) => module_intersection(&prev, &c, self.rank, n),
                });
            }
            let next = next.unwrap_or_else(|| self.generators());
            let gb = groebner_basis(&next, self.rank, n, MonomialOrder::Grevlex);
            if gb.same_module(&cur) {
                break;
            }
            cur = gb;
        }
        let sat = cur.elems().to_vec();
        let gens = match &self.generators {
            None => sat,
            Some(_) => module_intersection(&sat, self.numerator_gb().elems(), self.rank, n),
        };
        Self::subquotient(&self.ring, self.shifts.clone(), gens, self.relations.clone())
    }

    /// An equivalent cokernel presentation: the generators of `K` become the
    /// basis and the relations are the kernel of `R^k -> F/N`.
    pub fn present(&self) -> PresentedModule {
        let Some(gens) = &self.generators else {
            return self.clone();
        };
        let gens: Vec<Vector> = gens.iter().filter(|g| !self.relations_gb().contains(g)).cloned().collect();
        let shifts: Vec<i64> = gens.iter().map(|g| g.degree(&self.shifts).unwrap_or(0)).collect();
        let k = gens.len();
        let mut all = gens.clone();
        all.extend(self.relations_gb().elems().iter().cloned());
        let syz = crate::groebner::syzygies(&all, self.rank, self.ring.nvars());
        let rels = syz.iter().map(|v| v.map_comps(|c| (c < k).then_some(c))).collect();
        Self::build(&self.ring, shifts, None, rels, self.provenance)
    }

    /// `Ext^j_R(M, R)` as a subquotient of the dual of the `j`-th free module.
    pub fn ext_module(&self, j: usize) -> Result<PresentedModule> {
        let res = minimal_free_resolution(self)?;
        res.ext(&self.ring, j)
    }

    /// `depth M = n - pd M`.
    pub fn depth(&self) -> Result<usize> {
        let res = minimal_free_resolution(self)?;
        if res.ranks()[0] == 0 {
            return Err(Error::ZeroModule("depth of the zero module".into()));
        }
        Ok(self.ring.nvars() - res.pd())
    }

    /// `ℓ(H^i_m(M))` by graded local duality: `ℓ(Ext^{n-i}(M, R))` when finite.
    pub fn local_cohomology_length(&self, i: usize) -> Result<Length> {
        let n = self.ring.nvars();
        if i > n {
            return Ok(Length::Finite(0));
        }
        let res = minimal_free_resolution(self)?;
        Ok(res.ext(&self.ring, n - i)?.length())
    }

    /// True when `v` lies in `N`, i.e. represents zero in `F/N`.
    pub fn is_zero_element(&self, v: &Vector) -> bool {
        self.relations_gb().contains(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;

    fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| r.parse(g).unwrap()).collect())
    }

    #[test]
    fn cyclic_and_subquotient() {
        let r = PolyRing::qq(&["x", "y"]);
        let i = ideal(&r, &["x^2", "x*y"]);
        let m = PresentedModule::cyclic(&i);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.relations().len(), 2);
        assert_eq!(m.dim(), 1);
        let s = PresentedModule::from_ideals(&ideal(&r, &["x"]), &i).unwrap();
        assert_eq!(s.length(), Length::Finite(1));
        assert_eq!(s.dim(), 0);
        assert_eq!(s.annihilator(), Ideal::maximal(&r));
        let p = s.present();
        assert_eq!(p.length(), Length::Finite(1));
        assert!(PresentedModule::from_ideals(&i, &ideal(&r, &["y"])).is_err());
    }

    #[test]
    fn quotient_of_example_module() {
        let r = PolyRing::qq(&["X", "Y", "Z"]);
        let m = PresentedModule::direct_sum(
            &r,
            &[PresentedModule::cyclic(&Ideal::zero(&r)), PresentedModule::cyclic(&ideal(&r, &["Z^2"]))],
        );
        assert_eq!(m.dim(), 3);
        assert_eq!(m.annihilator(), Ideal::zero(&r));
        // (R ⊕ R/(Z^2)) / (X, Y, Z^2) M: bases {1, Z} and {1, Z}
        let q = m.quotient_by_ideal(&ideal(&r, &["X", "Y", "Z^2"]));
        assert_eq!(q.length(), Length::Finite(4));
        assert_eq!(PresentedModule::cyclic(&ideal(&r, &["Z^2"])).annihilator(), ideal(&r, &["Z^2"]));
    }

    #[test]
    fn torsion_examples() {
        let r = PolyRing::qq(&["x", "y"]);
        let m = PresentedModule::cyclic(&ideal(&r, &["x^2", "x*y"]));
        let h0 = m.torsion_submodule(&Ideal::maximal(&r));
        assert_eq!(h0.length(), Length::Finite(1));
        assert!(h0.generators().iter().all(|g| ideal(&r, &["x"]).contains(&g.entry(0))));
        assert!(PresentedModule::cyclic(&Ideal::zero(&r)).torsion_submodule(&Ideal::maximal(&r)).is_zero());
        let z = PresentedModule::cyclic(&ideal(&r, &["y^2"]));
        let t = z.torsion_submodule(&ideal(&r, &["y"]));
        assert_eq!(t.hilbert_numerator(), z.hilbert_numerator());
    }
}
