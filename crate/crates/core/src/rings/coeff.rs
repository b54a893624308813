use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficients are stored as rationals for every domain. Integer domains keep
/// denominator one and prime fields keep the numerator reduced into `[0, p)`.
pub type Coeff = BigRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CoeffDomain {
    Integers,
    Rationals,
    PrimeField(u64),
}

pub(crate) fn big(n: BigInt) -> Coeff {
    BigRational::from_integer(n)
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl CoeffDomain {
    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::usage(format!("modulus {p} is not prime")));
        }
        Ok(CoeffDomain::PrimeField(p))
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoeffDomain::Integers)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CoeffDomain::PrimeField(p) => *p,
            _ => 0,
        }
    }

    fn modp(&self, n: &BigInt) -> BigInt {
        match self {
            CoeffDomain::PrimeField(p) => n.mod_floor(&BigInt::from(*p)),
            _ => n.clone(),
        }
    }

    /// Brings an arbitrary rational into the domain's canonical storage.
    pub fn normalize(&self, c: Coeff) -> Result<Coeff> {
        match self {
            CoeffDomain::Integers => {
                if c.is_integer() {
                    Ok(c)
                } else {
                    Err(Error::usage(format!("{c} is not an integer")))
                }
            }
            CoeffDomain::Rationals => Ok(c),
            CoeffDomain::PrimeField(p) => {
                let pb = BigInt::from(*p);
                let den = c.denom().mod_floor(&pb);
                if den.is_zero() {
                    return Err(Error::usage(format!("denominator of {c} vanishes mod {p}")));
                }
                let inv = den.modpow(&(&pb - 2u32), &pb);
                Ok(big((c.numer() * inv).mod_floor(&pb)))
            }
        }
    }

    pub fn from_int(&self, n: i64) -> Coeff {
        big(self.modp(&BigInt::from(n)))
    }

    pub fn from_bigint(&self, n: BigInt) -> Coeff {
        big(self.modp(&n))
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.fix(a + b)
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.fix(a - b)
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.fix(a * b)
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        self.fix(-a)
    }

    fn fix(&self, c: Coeff) -> Coeff {
        match self {
            CoeffDomain::PrimeField(_) => big(self.modp(c.numer())),
            _ => c,
        }
    }

    pub fn is_unit(&self, c: &Coeff) -> bool {
        match self {
            CoeffDomain::Integers => c.abs().is_one(),
            _ => !c.is_zero(),
        }
    }

    pub fn inv(&self, c: &Coeff) -> Option<Coeff> {
        if c.is_zero() {
            return None;
        }
        match self {
            CoeffDomain::Integers => {
                if c.abs().is_one() {
                    Some(c.clone())
                } else {
                    None
                }
            }
            CoeffDomain::Rationals => Some(c.recip()),
            CoeffDomain::PrimeField(p) => {
                let pb = BigInt::from(*p);
                Some(big(c.numer().modpow(&(&pb - 2u32), &pb)))
            }
        }
    }

    /// `a / b` when the quotient lies in the domain.
    pub fn div_exact(&self, a: &Coeff, b: &Coeff) -> Option<Coeff> {
        if b.is_zero() {
            return None;
        }
        match self {
            CoeffDomain::Integers => {
                let (q, r) = a.numer().div_rem(b.numer());
                if r.is_zero() {
                    Some(big(q))
                } else {
                    None
                }
            }
            _ => Some(self.mul(a, &self.inv(b)?)),
        }
    }

    /// Unit `u` such that `c / u` is the canonical associate of `c`.
    pub fn unit_part(&self, c: &Coeff) -> Coeff {
        if c.is_zero() {
            return Coeff::one();
        }
        match self {
            CoeffDomain::Integers => {
                if c.is_negative() {
                    -Coeff::one()
                } else {
                    Coeff::one()
                }
            }
            _ => c.clone(),
        }
    }

    pub fn gcd(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match self {
            CoeffDomain::Integers => big(a.numer().gcd(b.numer())),
            _ => {
                if a.is_zero() && b.is_zero() {
                    Coeff::zero()
                } else {
                    Coeff::one()
                }
            }
        }
    }

    /// Extended gcd over the integers: `(d, u, v)` with `d = u*a + v*b`, `d >= 0`.
    pub fn ext_gcd(&self, a: &Coeff, b: &Coeff) -> (Coeff, Coeff, Coeff) {
        match self {
            CoeffDomain::Integers => {
                let e = a.numer().extended_gcd(b.numer());
                let (mut d, mut x, mut y) = (e.gcd, e.x, e.y);
                if d.is_negative() {
                    d = -d;
                    x = -x;
                    y = -y;
                }
                (big(d), big(x), big(y))
            }
            _ => {
                if !a.is_zero() {
                    (Coeff::one(), self.inv(a).unwrap(), Coeff::zero())
                } else if !b.is_zero() {
                    (Coeff::one(), Coeff::zero(), self.inv(b).unwrap())
                } else {
                    (Coeff::zero(), Coeff::zero(), Coeff::zero())
                }
            }
        }
    }

    /// Division with remainder. Over the integers the remainder lies in `[0, |b|)`;
    /// over fields the remainder is zero.
    pub fn div_rem(&self, a: &Coeff, b: &Coeff) -> (Coeff, Coeff) {
        match self {
            CoeffDomain::Integers => {
                let bn = b.numer();
                let r = a.numer().mod_floor(&bn.abs());
                let q = (a.numer() - &r) / bn;
                (big(q), big(r))
            }
            _ => (self.div_exact(a, b).expect("nonzero divisor"), Coeff::zero()),
        }
    }

    /// Absolute value used as a Euclidean size for integer coefficients.
    pub fn height(&self, c: &Coeff) -> BigInt {
        match self {
            CoeffDomain::Integers => c.numer().abs(),
            CoeffDomain::Rationals => c.numer().abs().max(c.denom().abs()),
            CoeffDomain::PrimeField(_) => {
                if c.is_zero() {
                    BigInt::zero()
                } else {
                    BigInt::one()
                }
            }
        }
    }
}

impl fmt::Display for CoeffDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffDomain::Integers => write!(f, "Z"),
            CoeffDomain::Rationals => write!(f, "Q"),
            CoeffDomain::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Coeff {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn prime_field_rejects_composites() {
        assert!(CoeffDomain::prime_field(7).is_ok());
        assert!(CoeffDomain::prime_field(9).is_err());
        assert!(CoeffDomain::prime_field(1).is_err());
    }

    #[test]
    fn field_normalization_maps_fractions() {
        let f = CoeffDomain::PrimeField(7);
        let half = f.normalize(BigRational::new(1.into(), 2.into())).unwrap();
        assert_eq!(half, int(4));
        assert_eq!(f.from_int(-1), int(6));
    }

    #[test]
    fn integer_div_rem_has_nonnegative_remainder() {
        let z = CoeffDomain::Integers;
        assert_eq!(z.div_rem(&int(-7), &int(3)), (int(-3), int(2)));
        assert_eq!(z.div_rem(&int(7), &int(-3)), (int(-2), int(1)));
    }
}
