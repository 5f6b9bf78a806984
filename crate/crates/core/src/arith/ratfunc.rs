//! Univariate rational functions in canonical form: coprime numerator and
//! monic denominator. Canonical forms make equality structural, and the type
//! is itself a [`Field`], so the tower `Q(c1)(c2)(n)(z)` is built by nesting.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::field::{invmod, mulmod, Embed, Field, Rational};
use super::poly::{Poly, Variable};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct RatFunc<F, V> {
    num: Poly<F, V>,
    den: Poly<F, V>,
}

/// Build the canonical form of `num / den`.
pub fn ratfunc_normalize<F: Field, V: Variable>(
    num: Poly<F, V>,
    den: Poly<F, V>,
) -> Result<RatFunc<F, V>> {
    RatFunc::new(num, den)
}

impl<F: Field, V: Variable> RatFunc<F, V> {
    pub fn new(num: Poly<F, V>, den: Poly<F, V>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        Ok(Self::from_coprime(num, den))
    }

    /// Assumes `gcd(num, den) = 1`; only rescales to a monic denominator.
    fn from_coprime(num: Poly<F, V>, den: Poly<F, V>) -> Self {
        let l = den.lead().expect("nonzero denominator").clone();
        if l.is_one() {
            RatFunc { num, den }
        } else {
            let inv = l.checked_inv().expect("nonzero leading coefficient");
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn from_poly(p: Poly<F, V>) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn var() -> Self {
        Self::from_poly(Poly::var())
    }

    pub fn num(&self) -> &Poly<F, V> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F, V> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&Poly<F, V>> {
        self.is_polynomial().then_some(&self.num)
    }

    /// The value when the function is constant.
    pub fn as_constant(&self) -> Option<F> {
        if self.is_polynomial() && self.num.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    /// Evaluation; a pole is reported as division by zero.
    pub fn eval(&self, x: &F) -> Result<F> {
        let d = self.den.eval(x);
        let inv = d.checked_inv().ok_or(Error::DivisionByZero)?;
        Ok(self.num.eval(x) * &inv)
    }

    pub fn has_pole_at(&self, x: &F) -> bool {
        self.den.eval(x).is_zero()
    }

    /// `r(x + k)`
    pub fn shift(&self, k: &F) -> Self {
        if self.num.is_constant() && self.den.is_constant() {
            return self.clone();
        }
        // Shifting preserves both coprimality and the leading coefficient.
        RatFunc { num: self.num.shift(k), den: self.den.shift(k) }
    }

    pub fn shift_int(&self, k: i64) -> Self {
        self.shift(&F::from_i64(k))
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.checked_inv().ok_or(Error::DivisionByZero)? } else { self.clone() };
        let e = e.unsigned_abs();
        Ok(RatFunc { num: base.num.pow(e), den: base.den.pow(e) })
    }

    /// Apply a coefficient map and renormalize.
    pub fn try_map<G: Field, W: Variable>(
        &self,
        f: impl Fn(&F) -> Result<G>,
    ) -> Result<RatFunc<G, W>> {
        let num = self.num.try_map(&f)?;
        let den = self.den.try_map(&f)?;
        RatFunc::new(num, den)
    }

    /// Apply a field embedding (an injective homomorphism such as a shift of
    /// an inner variable) to every coefficient. Coprimality and the monic
    /// denominator survive, so no gcd is recomputed.
    pub fn map_embedding<G: Field, W: Variable>(&self, f: impl Fn(&F) -> G) -> RatFunc<G, W> {
        RatFunc { num: self.num.map(&f), den: self.den.map(&f) }
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        if self.num.is_zero() {
            return rhs.clone();
        }
        if rhs.num.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return RatFunc { num, den: self.den.clone() };
            }
            return Self::new(num, self.den.clone()).expect("nonzero denominator");
        }
        if self.den.is_one() {
            let num = &(&self.num * &rhs.den) + &rhs.num;
            return RatFunc { num, den: rhs.den.clone() };
        }
        if rhs.den.is_one() {
            let num = &self.num + &(&rhs.num * &self.den);
            return RatFunc { num, den: self.den.clone() };
        }
        // Henrici: with g = gcd(d1, d2), only g can share factors with the
        // new numerator.
        let g = self.den.gcd(&rhs.den);
        let (d1, d2) = if g.is_one() {
            (self.den.clone(), rhs.den.clone())
        } else {
            (self.den.exact_div(&g), rhs.den.exact_div(&g))
        };
        let num = &(&self.num * &d2) + &(&rhs.num * &d1);
        if num.is_zero() {
            return Self::zero();
        }
        let den = &d1 * &rhs.den;
        if g.is_one() {
            return RatFunc { num, den };
        }
        let h = num.gcd(&g);
        if h.is_one() {
            RatFunc { num, den }
        } else {
            RatFunc { num: num.exact_div(&h), den: den.exact_div(&h) }
        }
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.num.is_zero() || rhs.num.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc { num: &self.num * &rhs.num, den: Poly::one() };
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let cut = |p: &Poly<F, V>, g: &Poly<F, V>| if g.is_one() { p.clone() } else { p.exact_div(g) };
        let num = &cut(&self.num, &g1) * &cut(&rhs.num, &g2);
        let den = &cut(&self.den, &g2) * &cut(&rhs.den, &g1);
        Self::from_coprime(num, den)
    }

    fn inv_ref(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Some(Self::from_coprime(self.den.clone(), self.num.clone()))
    }
}

impl<F: Field, V: Variable> Zero for RatFunc<F, V> {
    fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<F: Field, V: Variable> One for RatFunc<F, V> {
    fn one() -> Self {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
}

macro_rules! rf_binop {
    ($tr:ident, $m:ident, |$a:ident, $b:ident| $body:expr) => {
        impl<F: Field, V: Variable> $tr<&RatFunc<F, V>> for &RatFunc<F, V> {
            type Output = RatFunc<F, V>;
            fn $m(self, $b: &RatFunc<F, V>) -> RatFunc<F, V> {
                let $a = self;
                $body
            }
        }
        impl<F: Field, V: Variable> $tr<RatFunc<F, V>> for RatFunc<F, V> {
            type Output = RatFunc<F, V>;
            fn $m(self, rhs: RatFunc<F, V>) -> RatFunc<F, V> {
                let $a = &self;
                let $b = &rhs;
                $body
            }
        }
        impl<'r, F: Field, V: Variable> $tr<&'r RatFunc<F, V>> for RatFunc<F, V> {
            type Output = RatFunc<F, V>;
            fn $m(self, $b: &'r RatFunc<F, V>) -> RatFunc<F, V> {
                let $a = &self;
                $body
            }
        }
    };
}

rf_binop!(Add, add, |a, b| a.add_ref(b));
rf_binop!(Sub, sub, |a, b| a.add_ref(&-b.clone()));
rf_binop!(Mul, mul, |a, b| a.mul_ref(b));
rf_binop!(Div, div, |a, b| a.mul_ref(&b.inv_ref().expect("division by zero rational function")));

impl<F: Field, V: Variable> Neg for RatFunc<F, V> {
    type Output = Self;
    fn neg(self) -> Self {
        RatFunc { num: -self.num, den: self.den }
    }
}

impl<F: Field, V: Variable> Neg for &RatFunc<F, V> {
    type Output = RatFunc<F, V>;
    fn neg(self) -> RatFunc<F, V> {
        -self.clone()
    }
}

impl<F: Field, V: Variable> Field for RatFunc<F, V> {
    fn from_rational(q: &Rational) -> Self {
        Self::constant(F::from_rational(q))
    }

    fn checked_inv(&self) -> Option<Self> {
        self.inv_ref()
    }

    fn modp_image(&self) -> Option<u64> {
        let n = self.num.modp_eval()?;
        let d = invmod(self.den.modp_eval()?)?;
        Some(mulmod(n, d))
    }

    fn is_atomic(&self) -> bool {
        !self.den.is_one() || self.num.term_count() <= 1 && self.num.coeffs().iter().all(|c| c.is_zero() || c.is_atomic())
    }

    fn latex(&self) -> String {
        if self.den.is_one() {
            self.num.latex()
        } else {
            format!("\\frac{{{}}}{{{}}}", self.num.latex(), self.den.latex())
        }
    }

    fn as_rational(&self) -> Option<Rational> {
        self.as_constant()?.as_rational()
    }
}

impl<F: Field, V: Variable> Embed<F> for RatFunc<F, V> {
    fn embed(c: &F) -> Self {
        Self::constant(c.clone())
    }
}

impl<F: Field, V: Variable> fmt::Display for RatFunc<F, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Poly<F, V>| {
            let single = p.term_count() == 1 && p.coeffs().iter().all(|c| c.is_zero() || c.is_atomic());
            if single {
                p.to_string()
            } else {
                format!("({})", p)
            }
        };
        let num = wrap(&self.num);
        // A single-term monic denominator is a bare power of the variable.
        let den = if self.den.term_count() == 1 { format!("{}", self.den) } else { format!("({})", self.den) };
        write!(f, "{}/{}", num, den)
    }
}

impl<F: Field, V: Variable> fmt::Debug for RatFunc<F, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc[{}]({})", V::NAME, self)
    }
}
