//! Exact scalar fields.
//!
//! Everything in the crate is generic over [`Field`]. Two implementations ship:
//! [`Rational`] (arbitrary-precision rationals, the default) and [`Fp`], the
//! prime field of order `P`, which is much cheaper and handy for property tests.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub trait Field:
    Clone
    + Eq
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    fn from_i64(n: i64) -> Self;

    fn parse_scalar(text: &str) -> Option<Self>;

    /// Splits off a printable sign: `(true, |self|)` when the value is
    /// naturally written with a leading minus.
    fn sign_split(&self) -> (bool, Self) {
        (false, self.clone())
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }
}

/// Reduced fraction with positive denominator.
pub type Rational = BigRational;

impl Field for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn parse_scalar(text: &str) -> Option<Self> {
        let text = text.trim();
        match text.split_once('/') {
            Some((num, den)) => {
                let num = BigInt::from_str(num).ok()?;
                let den = BigInt::from_str(den).ok()?;
                if den.is_zero() {
                    return None;
                }
                Some(BigRational::new(num, den))
            }
            None => BigInt::from_str(text).ok().map(BigRational::from_integer),
        }
    }

    fn sign_split(&self) -> (bool, Self) {
        if self.is_negative() {
            (true, -self.clone())
        } else {
            (false, self.clone())
        }
    }
}

/// Residue class modulo the prime `P`, stored as `0 <= value < P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(value: i128) -> Self {
        Fp(value.rem_euclid(P as i128) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1 % P);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 + rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 + P as u128 - rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    /// Panics on division by zero, like integer division.
    fn div(self, rhs: Self) -> Self {
        assert!(rhs.0 != 0, "division by zero in F_{P}");
        self * rhs.pow(P - 2)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn from_i64(n: i64) -> Self {
        Fp::new(n as i128)
    }

    fn parse_scalar(text: &str) -> Option<Self> {
        let text = text.trim();
        match text.split_once('/') {
            Some((num, den)) => {
                let num = Self::from_i64(num.parse().ok()?);
                let den = Self::from_i64(den.parse().ok()?);
                (!den.is_zero()).then(|| num / den)
            }
            None => Some(Self::from_i64(text.parse().ok()?)),
        }
    }
}

/// Primes accepted by the `gf:<p>` field mode of the command-line tool.
pub const SUPPORTED_PRIMES: &[u64] = &[2, 3, 5, 7, 11, 13, 101, 65_521, 1_000_003, 2_147_483_647];

#[cfg(test)]
mod tests {
    use super::*;

    type F7 = Fp<7>;

    #[test]
    fn rational_parse_and_sign() {
        let q = Rational::parse_scalar("-6/4").unwrap();
        assert_eq!(q, Rational::new((-3).into(), 2.into()));
        assert_eq!(q.sign_split(), (true, Rational::new(3.into(), 2.into())));
        assert!(Rational::parse_scalar("1/0").is_none());
        assert!(Rational::parse_scalar("x").is_none());
    }

    #[test]
    fn prime_field_inverse() {
        for a in 1..7 {
            let x = F7::from_i64(a);
            assert_eq!(x * x.inverse().unwrap(), F7::one());
        }
        assert!(F7::zero().inverse().is_none());
        assert_eq!(F7::from_i64(-1), F7::from_i64(6));
        assert_eq!(
            F7::parse_scalar("3/2").unwrap() * F7::from_i64(2),
            F7::from_i64(3)
        );
    }
}
