//! Scalar traits for the exact matrix code.
//!
//! Everything here is exact: rationals (`BigRational`, `Ratio<i64>`) for
//! field computations and integers (`BigInt`, `i64`, `i128`) for Smith
//! normal forms. There is deliberately no floating point implementation.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A commutative ring element with exact arithmetic.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_i64(v: i64) -> Self;
}

/// A scalar with exact division by nonzero elements.
pub trait Field: Scalar {
    fn inv(&self) -> Self;

    fn div(&self, other: &Self) -> Self {
        self.clone() * other.inv()
    }
}

/// A Euclidean domain with a norm (absolute value) used for pivot choice.
pub trait EuclideanRing: Scalar + Integer + Signed {
    /// Norm used to rank pivots; larger values compare greater.
    fn norm(&self) -> Self {
        self.abs()
    }
}

impl Scalar for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
}

impl Scalar for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
}

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

impl EuclideanRing for i64 {}
impl EuclideanRing for i128 {}
impl EuclideanRing for BigInt {}

impl<T> Scalar for Ratio<T>
where
    T: Clone + Integer + Signed + Debug + Send + Sync + Scalar,
{
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(T::from_i64(v))
    }
}

impl<T> Field for Ratio<T>
where
    T: Clone + Integer + Signed + Debug + Send + Sync + Scalar,
{
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// Scalars that embed in the rationals, used to move integer data into
/// field computations (and to reduce it modulo a prime).
pub trait ToRational {
    fn to_rational(&self) -> num_rational::BigRational;
}

impl ToRational for i64 {
    fn to_rational(&self) -> num_rational::BigRational {
        num_rational::BigRational::from_integer(BigInt::from(*self))
    }
}

impl ToRational for i128 {
    fn to_rational(&self) -> num_rational::BigRational {
        num_rational::BigRational::from_integer(BigInt::from(*self))
    }
}

impl ToRational for BigInt {
    fn to_rational(&self) -> num_rational::BigRational {
        num_rational::BigRational::from_integer(self.clone())
    }
}

impl ToRational for num_rational::BigRational {
    fn to_rational(&self) -> num_rational::BigRational {
        self.clone()
    }
}

impl ToRational for Ratio<i64> {
    fn to_rational(&self) -> num_rational::BigRational {
        num_rational::BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
}

/// Residue of a rational number modulo a prime `p`, or `None` when `p`
/// divides the denominator.
pub fn rational_mod_p(q: &num_rational::BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let num = q.numer().mod_floor(&pb).to_u64()?;
    let den = q.denom().mod_floor(&pb).to_u64()?;
    if den == 0 {
        return None;
    }
    Some(mul_mod(num, inv_mod(den, p), p))
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime.
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
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
    use num_rational::BigRational;

    #[test]
    fn residues() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(rational_mod_p(&half, 5), Some(3));
        assert_eq!(rational_mod_p(&half, 2), None);
        let neg = BigRational::from_integer(BigInt::from(-1));
        assert_eq!(rational_mod_p(&neg, 7), Some(6));
    }

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..20).filter(|n| is_prime(*n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }
}
