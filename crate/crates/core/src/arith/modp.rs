//! Prime fields `Z/P`, used to find reconstruction degrees and denominators
//! cheaply before working exactly.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::field::{Field, Rational, MODP};

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct Zp<const P: u64>(u64);

/// The field behind [`Field::modp_image`].
pub type ModP = Zp<MODP>;

/// Primes just below `2^62` for multi-modular reconstruction.
pub const PRIMES62: [u64; 24] = [
    4611686018427387847,
    4611686018427387817,
    4611686018427387787,
    4611686018427387761,
    4611686018427387751,
    4611686018427387737,
    4611686018427387733,
    4611686018427387709,
    4611686018427387701,
    4611686018427387631,
    4611686018427387617,
    4611686018427387587,
    4611686018427387461,
    4611686018427387421,
    4611686018427387409,
    4611686018427387329,
    4611686018427387323,
    4611686018427387301,
    4611686018427387271,
    4611686018427387241,
    4611686018427387139,
    4611686018427387131,
    4611686018427387127,
    4611686018427387113,
];

impl<const P: u64> Zp<P> {
    pub fn new(v: u64) -> Self {
        Zp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    /// `q mod P`, or `None` when `P` divides the denominator.
    pub fn from_rational_checked(q: &Rational) -> Option<Self> {
        let den = Self::from_bigint(q.denom());
        if den.is_zero() {
            return None;
        }
        Some(Self::from_bigint(q.numer()) / den)
    }

    fn from_bigint(v: &BigInt) -> Self {
        Zp(v.mod_floor(&BigInt::from(P)).to_u64().expect("residue fits in u64"))
    }

    fn pow(self, mut e: u64) -> Self {
        let (mut base, mut acc) = (self, Self::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> fmt::Display for Zp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Zero for Zp<P> {
    fn zero() -> Self {
        Zp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Zp<P> {
    fn one() -> Self {
        Zp(1)
    }
}

impl<const P: u64> Neg for Zp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Zp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Add for Zp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Zp(((self.0 as u128 + rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Zp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<const P: u64> Mul for Zp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Zp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Div for Zp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.checked_inv().expect("division by zero in Z/p")
    }
}

macro_rules! by_ref {
    ($tr:ident, $m:ident) => {
        impl<'a, const P: u64> $tr<&'a Zp<P>> for Zp<P> {
            type Output = Zp<P>;
            fn $m(self, rhs: &'a Zp<P>) -> Zp<P> {
                $tr::$m(self, *rhs)
            }
        }
    };
}

by_ref!(Add, add);
by_ref!(Sub, sub);
by_ref!(Mul, mul);
by_ref!(Div, div);

impl<const P: u64> Field for Zp<P> {
    /// Rationals whose denominator is divisible by `P` map to zero.
    fn from_rational(q: &Rational) -> Self {
        Self::from_rational_checked(q).unwrap_or_else(Self::zero)
    }

    fn checked_inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }

    fn modp_image(&self) -> Option<u64> {
        (P == MODP).then_some(self.0)
    }

    fn is_atomic(&self) -> bool {
        true
    }

    fn latex(&self) -> String {
        self.0.to_string()
    }

    fn as_rational(&self) -> Option<Rational> {
        None
    }
}
