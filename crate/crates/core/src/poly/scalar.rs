use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficient field of a polynomial ring: the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Fp(v.rem_euclid(p as i64) as u64, p),
        }
    }

    /// Embeds a rational number; fails in characteristic p when p divides the denominator.
    pub fn from_rational(self, q: &BigRational) -> Option<Scalar> {
        match self {
            Field::Rational => Some(Scalar::Q(q.clone())),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let num = residue(q.numer(), &pb);
                let den = residue(q.denom(), &pb);
                if den == 0 {
                    return None;
                }
                Some(Scalar::Fp(num, p).mul(&Scalar::Fp(den, p).inv()))
            }
        }
    }
}

fn residue(v: &BigInt, p: &BigInt) -> u64 {
    let r = ((v % p) + p) % p;
    r.to_u64().unwrap_or(0)
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// An exact field element in canonical form.
///
/// Rationals are kept reduced with positive denominator; prime-field
/// elements are the least nonnegative residue.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp(u64, u64),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp(_, p) => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp(v, _) => *v == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp(a, p), Scalar::Fp(b, q)) if p == q => Scalar::Fp((a + b) % p, *p),
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp(a, p) => Scalar::Fp((p - a) % p, *p),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp(a, p), Scalar::Fp(b, q)) if p == q => {
                Scalar::Fp(((*a as u128 * *b as u128) % *p as u128) as u64, *p)
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Q(a) => Scalar::Q(a.recip()),
            Scalar::Fp(a, p) => Scalar::Fp(pow_mod(*a, p - 2, *p), *p),
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv())
    }

    /// True when the printed form needs a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(a) => a.is_negative(),
            Scalar::Fp(..) => false,
        }
    }

    /// Integer value, if this is an integral rational.
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            Scalar::Q(a) if a.is_integer() => Some(a.to_integer()),
            Scalar::Q(_) => None,
            Scalar::Fp(v, _) => Some(BigInt::from(*v)),
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let m = p as u128;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(a) => {
                if a.is_integer() {
                    write!(f, "{}", a.numer())
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())
                }
            }
            Scalar::Fp(v, _) => write!(f, "{v}"),
        }
    }
}

/// Deterministic primality test for the field constructor.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let f = Field::Prime(32003);
        let a = f.from_i64(12345);
        assert!(a.mul(&a.inv()).is_one());
        assert_eq!(f.from_i64(-1), Scalar::Fp(32002, 32003));
    }

    #[test]
    fn rationals_are_reduced() {
        let f = Field::Rational;
        let half = f.one().div(&f.from_i64(2));
        let q = half.add(&half);
        assert!(q.is_one());
        assert_eq!(f.from_i64(-3).div(&f.from_i64(6)).to_string(), "-1/2");
    }

    #[test]
    fn embed_rational_mod_p() {
        let q = BigRational::new(BigInt::from(1), BigInt::from(2));
        let s = Field::Prime(7).from_rational(&q).unwrap();
        assert_eq!(s, Scalar::Fp(4, 7));
        let bad = BigRational::new(BigInt::from(1), BigInt::from(7));
        assert!(Field::Prime(7).from_rational(&bad).is_none());
    }
}
