//! Integer Laurent polynomials in one variable `t`, used for Hilbert series
//! numerators `N(t)` with `HS = N(t) / (1 - t)^n`.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Laurent {
    coeffs: BTreeMap<i64, i128>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exp: i64, c: i128) -> Self {
        let mut l = Laurent::default();
        l.add_term(exp, c);
        l
    }

    /// From coefficients of `1, t, t^2, ...`.
    pub fn from_coeffs(cs: &[i128]) -> Self {
        let mut l = Laurent::default();
        for (i, c) in cs.iter().enumerate() {
            l.add_term(i as i64, *c);
        }
        l
    }

    fn add_term(&mut self, exp: i64, c: i128) {
        if c == 0 {
            return;
        }
        let e = self.coeffs.entry(exp).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> i128 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i128)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, *c))
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn sub(&self, other: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, -c);
        }
        out
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let mut out = Laurent::default();
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Laurent {
        Laurent { coeffs: self.coeffs.iter().map(|(e, c)| (e + k, *c)).collect() }
    }

    pub fn eval_one(&self) -> i128 {
        self.coeffs.values().sum()
    }

    /// Exact division by `(1 - t)`; `None` when `(1 - t)` does not divide.
    pub fn div_one_minus_t(&self) -> Option<Laurent> {
        if self.eval_one() != 0 {
            return None;
        }
        // p(t) = (1 - t) q(t): q_e = sum of p_k for k <= e
        let mut out = Laurent::default();
        let mut running = 0i128;
        let (Some(&lo), Some(&hi)) = (self.coeffs.keys().next(), self.coeffs.keys().last()) else {
            return Some(Laurent::default());
        };
        for e in lo..hi {
            running += self.coeff(e);
            out.add_term(e, running);
        }
        Some(out)
    }

    /// Largest `k <= max` with `(1 - t)^k` dividing, and the quotient.
    pub fn strip_one_minus_t(&self, max: usize) -> (usize, Laurent) {
        let mut cur = self.clone();
        let mut k = 0;
        while k < max && !cur.is_zero() {
            match cur.div_one_minus_t() {
                Some(q) => {
                    cur = q;
                    k += 1;
                }
                None => break,
            }
        }
        (k, cur)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(e, c)| match e {
                0 => format!("{c}"),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{e}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Length and dimension read off a numerator `N(t)` of `N / (1-t)^n`:
/// dimension is `n - k` with `(1-t)^k` the largest dividing power.
pub fn length_and_dim(num: &Laurent, n: usize) -> (Option<u64>, i64) {
    if num.is_zero() {
        return (Some(0), -1);
    }
    let (k, q) = num.strip_one_minus_t(n);
    let dim = (n - k) as i64;
    if dim == 0 {
        (Some(q.eval_one() as u64), 0)
    } else {
        (None, dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_by_one_minus_t() {
        // 1 - 2t^2 + t^3 = (1 - t)(1 + t - t^2)
        let p = Laurent::from_coeffs(&[1, 0, -2, 1]);
        let q = p.div_one_minus_t().unwrap();
        assert_eq!(q, Laurent::from_coeffs(&[1, 1, -1]));
        assert!(q.div_one_minus_t().is_none());
    }

    #[test]
    fn length_of_point_with_embedded() {
        // k[x,y]/(x^2,xy,y^2): numerator 1 - 3t^2 + 2t^3 = (1-t)^2 (1 + 2t)
        let p = Laurent::from_coeffs(&[1, 0, -3, 2]);
        assert_eq!(length_and_dim(&p, 2), (Some(3), 0));
    }
}
