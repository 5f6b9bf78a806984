//! Elements `x + y·s` of `F[s]/(s² - d)` for a fixed `d ∈ F`.
//!
//! When `d` is not a square this is the quadratic field `F(√d)`. No
//! operation here needs `d` to be a non-square except [`QuadExt::checked_inv`].

use std::fmt;


use super::field::Field;

#[derive(Clone, PartialEq)]
pub struct QuadExt<F> {
    pub re: F,
    pub im: F,
    d: F,
}

impl<F: Field> QuadExt<F> {
    pub fn new(re: F, im: F, d: F) -> Self {
        QuadExt { re, im, d }
    }

    pub fn from_base(re: F, d: F) -> Self {
        QuadExt { re, im: F::zero(), d }
    }

    /// The generator `s` with `s² = d`.
    pub fn sqrt_of(d: F) -> Self {
        QuadExt { re: F::zero(), im: F::one(), d }
    }

    pub fn zero_in(d: F) -> Self {
        QuadExt { re: F::zero(), im: F::zero(), d }
    }

    pub fn modulus(&self) -> &F {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn base(&self, c: F) -> Self {
        Self::from_base(c, self.d.clone())
    }

    fn check(&self, rhs: &Self) {
        debug_assert!(self.d == rhs.d, "mixing quadratic extensions");
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check(rhs);
        QuadExt { re: self.re.clone() + &rhs.re, im: self.im.clone() + &rhs.im, d: self.d.clone() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.check(rhs);
        QuadExt { re: self.re.clone() - &rhs.re, im: self.im.clone() - &rhs.im, d: self.d.clone() }
    }

    pub fn neg(&self) -> Self {
        QuadExt { re: -self.re.clone(), im: -self.im.clone(), d: self.d.clone() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let re = self.re.clone() * &rhs.re + &(self.im.clone() * &rhs.im * &self.d);
        let im = self.re.clone() * &rhs.im + &(self.im.clone() * &rhs.re);
        QuadExt { re, im, d: self.d.clone() }
    }

    pub fn scale(&self, c: &F) -> Self {
        QuadExt { re: self.re.clone() * c, im: self.im.clone() * c, d: self.d.clone() }
    }

    /// `x - y·s`
    pub fn conj(&self) -> Self {
        QuadExt { re: self.re.clone(), im: -self.im.clone(), d: self.d.clone() }
    }

    /// `x² - d y²`
    pub fn norm(&self) -> F {
        self.re.clone() * &self.re - &(self.im.clone() * &self.im * &self.d)
    }

    pub fn checked_inv(&self) -> Option<Self> {
        let n = self.norm().checked_inv()?;
        Some(self.conj().scale(&n))
    }
}

impl<F: Field> fmt::Display for QuadExt<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |c: &F| if c.is_atomic() { c.to_string() } else { format!("({})", c) };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}*s", wrap(&self.im)),
            (false, false) => write!(f, "{} + {}*s", self.re, wrap(&self.im)),
        }
    }
}

impl<F: Field> fmt::Debug for QuadExt<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadExt({}; s^2 = {})", self, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{rat, ratio};

    #[test]
    fn generator_squares_to_modulus() {
        let s = QuadExt::sqrt_of(ratio(21, 16));
        let sq = s.mul(&s);
        assert_eq!(sq, QuadExt::from_base(ratio(21, 16), ratio(21, 16)));
    }

    #[test]
    fn inverse() {
        let x = QuadExt::new(rat(1), rat(2), rat(3));
        let y = x.checked_inv().unwrap();
        assert_eq!(x.mul(&y), QuadExt::from_base(rat(1), rat(3)));
    }
}
