//! The scalar abstraction shared by every layer of the tower
//! `Q ⊂ Q(c1, c2) ⊂ Q(c1, c2)(n) ⊂ Q(c1, c2)(n)(z)`.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision exact rational number.
pub type Rational = BigRational;

/// Prime modulus used for the cheap coprimality pre-check in polynomial gcds.
pub const MODP: u64 = (1 << 61) - 1;

/// A commutative field of characteristic zero with exact arithmetic.
///
/// `Div` panics on a zero divisor; callers that can see a zero divisor at
/// runtime go through [`Field::checked_inv`].
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    fn from_rational(q: &Rational) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)))
    }

    fn checked_inv(&self) -> Option<Self>;

    /// Image under a fixed ring homomorphism into `Z/MODP`, when it is
    /// defined at this element.
    fn modp_image(&self) -> Option<u64> {
        None
    }

    /// True when the display form is a single signed product or quotient,
    /// so it can be written as a factor without parentheses.
    fn is_atomic(&self) -> bool;

    fn latex(&self) -> String;

    /// The value as a plain rational, if it is one.
    fn as_rational(&self) -> Option<Rational>;
}

/// Coefficient embedding `F -> Self`.
pub trait Embed<F: Field>: Field {
    fn embed(c: &F) -> Self;
}

impl<F: Field> Embed<F> for F {
    fn embed(c: &F) -> Self {
        c.clone()
    }
}

impl Field for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn modp_image(&self) -> Option<u64> {
        let den = bigint_mod(self.denom());
        if den == 0 {
            return None;
        }
        Some(mulmod(bigint_mod(self.numer()), powmod(den, MODP - 2)))
    }

    fn is_atomic(&self) -> bool {
        true
    }

    fn latex(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            let sign = if self.is_negative() { "-" } else { "" };
            format!("{}\\frac{{{}}}{{{}}}", sign, self.numer().abs(), self.denom())
        }
    }

    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

/// Shorthand for an integer-valued rational.
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn bigint_mod(v: &BigInt) -> u64 {
    let m = BigInt::from(MODP);
    v.mod_floor(&m).to_u64().expect("residue fits in u64")
}

pub(crate) fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODP as u128) as u64
}

pub(crate) fn addmod(a: u64, b: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % MODP as u128) as u64
}

pub(crate) fn submod(a: u64, b: u64) -> u64 {
    addmod(a, MODP - b % MODP)
}

pub(crate) fn powmod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    base %= MODP;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base);
        }
        base = mulmod(base, base);
        exp >>= 1;
    }
    acc
}

pub(crate) fn invmod(a: u64) -> Option<u64> {
    if a.is_multiple_of(MODP) {
        None
    } else {
        Some(powmod(a, MODP - 2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modp_image_respects_arithmetic() {
        let a = ratio(3, 7);
        let b = ratio(-5, 11);
        let ia = a.modp_image().unwrap();
        let ib = b.modp_image().unwrap();
        assert_eq!((&a * &b).modp_image().unwrap(), mulmod(ia, ib));
        assert_eq!((&a + &b).modp_image().unwrap(), addmod(ia, ib));
        assert_eq!((&a - &b).modp_image().unwrap(), submod(ia, ib));
    }

    #[test]
    fn latex_of_rationals() {
        assert_eq!(ratio(-3, 4).latex(), "-\\frac{3}{4}");
        assert_eq!(rat(7).latex(), "7");
    }
}
