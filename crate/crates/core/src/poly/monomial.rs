use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

/// A monomial given by its exponent vector, with the total degree cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars], degree: 0 }
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = e;
        Monomial { exps, degree: e }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { exps, degree: self.degree + other.degree }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let exps = other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect();
        Monomial { exps, degree: other.degree - self.degree }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Exponentwise colon `self : other`, i.e. the generator of `(self) : (other)`.
    pub fn colon(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps.iter().zip(&other.exps).map(|(a, b)| a.saturating_sub(*b)).collect(),
        )
    }

    pub fn pow(&self, n: u32) -> Monomial {
        Monomial { exps: self.exps.iter().map(|e| e * n).collect(), degree: self.degree * n }
    }

    /// Support: indices of variables with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        self.exps.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i).collect()
    }

    /// Pure power `x_i^e` if this monomial has a single variable in its support.
    pub fn as_pure_power(&self) -> Option<(usize, u32)> {
        let s = self.support();
        (s.len() == 1).then(|| (s[0], self.exps[s[0]]))
    }

    /// Drops the variables not in `keep`, in order.
    pub fn restrict(&self, keep: &[usize]) -> Monomial {
        Monomial::new(keep.iter().map(|&i| self.exps[i]).collect())
    }
}

/// A monomial order on exponent vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    /// Grevlex on the first `k` variables, then grevlex on the rest: eliminates the first block.
    Elimination(usize),
}

impl MonomialOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => grevlex(&a.exps, &b.exps),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Elimination(k) => {
                let k = k.min(a.exps.len());
                grevlex(&a.exps[..k], &b.exps[..k]).then_with(|| grevlex(&a.exps[k..], &b.exps[k..]))
            }
        }
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn order_examples() {
        // x^2 vs xy under grevlex
        assert_eq!(MonomialOrder::Grevlex.cmp(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        // y^3 vs x under lex
        assert_eq!(MonomialOrder::Lex.cmp(&m(&[0, 3]), &m(&[1, 0])), Ordering::Less);
        for o in [MonomialOrder::Grevlex, MonomialOrder::Lex, MonomialOrder::Elimination(1)] {
            assert_eq!(o.cmp(&m(&[1, 2]), &m(&[1, 2])), Ordering::Equal);
        }
    }

    #[test]
    fn elimination_block_dominates() {
        let o = MonomialOrder::Elimination(1);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
    }

    #[test]
    fn grevlex_reverse_last_variable() {
        // xz vs y^2 in k[x,y,z]: same degree, last variable z: xz has more, so xz < y^2
        assert_eq!(MonomialOrder::Grevlex.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }
}
