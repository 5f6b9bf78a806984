//! Dense univariate polynomials over a [`Field`].

use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::field::{addmod, invmod, mulmod, submod, Field};

/// Marker for the name of a polynomial variable.
pub trait Variable:
    Copy + Clone + fmt::Debug + Default + PartialEq + Eq + Send + Sync + 'static
{
    const NAME: &'static str;
    /// Evaluation point for the modular image used by the gcd pre-check.
    const MODP_POINT: u64;
}

macro_rules! variable {
    ($(#[$meta:meta])* $ty:ident, $name:expr, $pt:expr) => {
        $(#[$meta])*
        #[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
        pub struct $ty;
        impl Variable for $ty {
            const NAME: &'static str = $name;
            const MODP_POINT: u64 = $pt;
        }
    };
}

variable!(
    /// The discrete variable of the difference operators.
    N, "n", 1_000_000_007
);
variable!(
    /// The affine coordinate on the spectral curve.
    Z, "z", 998_244_353
);
variable!(
    /// First curve coefficient, as an indeterminate.
    C1, "c1", 1_234_567_891
);
variable!(
    /// Second curve coefficient, as an indeterminate.
    C2, "c2", 2_147_483_647
);

/// Dense polynomial `Σ coeffs[k] x^k`; trailing zeros are always trimmed, so
/// the zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq)]
pub struct Poly<F, V> {
    coeffs: Vec<F>,
    _var: PhantomData<V>,
}

impl<F: Field, V: Variable> Poly<F, V> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs, _var: PhantomData }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new(), _var: PhantomData }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn monomial(c: F, k: usize) -> Self {
        let mut coeffs = vec![F::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `x + k`
    pub fn linear(k: F) -> Self {
        Self::new(vec![k, F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn lead(&self) -> Option<&F> {
        self.coeffs.last()
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a.clone() * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => {
                let inv = l.checked_inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Multiply by `x^k`.
    pub fn mul_xk(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    /// Divide by `x^k`, discarding lower terms.
    pub fn div_xk(&self, k: usize) -> Self {
        Self::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Evaluate in an extension of the coefficient field.
    pub fn eval_in<G>(&self, x: &G, embed: impl Fn(&F) -> G) -> G
    where
        G: Clone + Zero + Mul<Output = G> + for<'a> Add<&'a G, Output = G>,
    {
        let mut acc = G::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + &embed(c);
        }
        acc
    }

    /// `p(x + k)` by Horner's scheme.
    pub fn shift(&self, k: &F) -> Self {
        if k.is_zero() || self.is_constant() {
            return self.clone();
        }
        let lin = Self::linear(k.clone());
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * F::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division; `None` when `d` is zero.
    pub fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let dl = d.lead()?.checked_inv()?;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() < d.coeffs.len() {
            return Some((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![F::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let q = top * &dl;
            for (j, dc) in d.coeffs.iter().enumerate() {
                if dc.is_zero() {
                    continue;
                }
                let t = q.clone() * dc;
                rem[k + j] = rem[k + j].clone() - &t;
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        Some((Self::new(quot), Self::new(rem)))
    }

    /// Quotient of a division known to be exact.
    pub fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Self::one();
        }
        if modp_coprime(self, other) {
            return Self::one();
        }
        let (mut a, mut b) = if self.coeffs.len() >= other.coeffs.len() {
            (self.monic(), other.monic())
        } else {
            (other.monic(), self.monic())
        };
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn try_map<G: Field, W: Variable, E>(
        &self,
        f: impl Fn(&F) -> Result<G, E>,
    ) -> Result<Poly<G, W>, E> {
        Ok(Poly::new(self.coeffs.iter().map(f).collect::<Result<Vec<_>, E>>()?))
    }

    pub fn map<G: Field, W: Variable>(&self, f: impl Fn(&F) -> G) -> Poly<G, W> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Image of the polynomial under `Field::modp_image` composed with
    /// evaluation at this variable's fixed point.
    pub fn modp_eval(&self) -> Option<u64> {
        let mut acc = 0u64;
        for c in self.coeffs.iter().rev() {
            acc = addmod(mulmod(acc, V::MODP_POINT), c.modp_image()?);
        }
        Some(acc)
    }

    pub fn latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        if self.coeffs.len() == 1 {
            return self.coeffs[0].latex();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, body) = split_sign(c.latex(), c.is_atomic(), true);
            let mono = match k {
                0 => String::new(),
                1 => V::NAME.to_string(),
                _ => format!("{}^{{{}}}", V::NAME, k),
            };
            let term = match (k, body.as_str()) {
                (0, _) => body,
                (_, "1") => mono,
                _ => format!("{} {}", body, mono),
            };
            push_term(&mut out, neg, &term);
        }
        out
    }
}

fn split_sign(s: String, atomic: bool, latex: bool) -> (bool, String) {
    if atomic {
        match s.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, s),
        }
    } else if latex {
        (false, format!("\\left({}\\right)", s))
    } else {
        (false, format!("({})", s))
    }
}

fn push_term(out: &mut String, neg: bool, term: &str) {
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    out.push_str(term);
}

/// Coprimality certificate: the images of `a` and `b` in `Z/p[x]` (with the
/// leading coefficients surviving) are coprime, so `a` and `b` are.
fn modp_coprime<F: Field, V: Variable>(a: &Poly<F, V>, b: &Poly<F, V>) -> bool {
    let img = |p: &Poly<F, V>| -> Option<Vec<u64>> {
        let v: Option<Vec<u64>> = p.coeffs.iter().map(|c| c.modp_image()).collect();
        let v = v?;
        if *v.last()? == 0 {
            None
        } else {
            Some(v)
        }
    };
    let (Some(mut x), Some(mut y)) = (img(a), img(b)) else {
        return false;
    };
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    loop {
        trim_modp(&mut y);
        if y.is_empty() {
            return x.len() == 1;
        }
        if y.len() == 1 {
            return true;
        }
        let r = rem_modp(&x, &y);
        x = y;
        y = r;
    }
}

fn trim_modp(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn rem_modp(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = invmod(b[db]).expect("trimmed leading coefficient");
    while r.len() > db {
        let top = *r.last().unwrap();
        if top != 0 {
            let q = mulmod(top, inv);
            let off = r.len() - 1 - db;
            for (j, bc) in b.iter().enumerate() {
                r[off + j] = submod(r[off + j], mulmod(q, *bc));
            }
        }
        r.pop();
    }
    trim_modp(&mut r);
    r
}

impl<F: Field, V: Variable> Poly<F, V> {
    fn add_ref(&self, rhs: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(short.coeffs.iter()) {
            *c = c.clone() + s;
        }
        Self::new(coeffs)
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(a), Some(b)) => a.clone() - b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => -b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(coeffs)
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].clone() + &(a.clone() * b);
            }
        }
        Self::new(coeffs)
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl<F: Field, V: Variable> $tr<&Poly<F, V>> for &Poly<F, V> {
            type Output = Poly<F, V>;
            fn $m(self, rhs: &Poly<F, V>) -> Poly<F, V> {
                self.$inner(rhs)
            }
        }
        impl<F: Field, V: Variable> $tr<Poly<F, V>> for Poly<F, V> {
            type Output = Poly<F, V>;
            fn $m(self, rhs: Poly<F, V>) -> Poly<F, V> {
                self.$inner(&rhs)
            }
        }
        impl<F: Field, V: Variable> $tr<&Poly<F, V>> for Poly<F, V> {
            type Output = Poly<F, V>;
            fn $m(self, rhs: &Poly<F, V>) -> Poly<F, V> {
                self.$inner(rhs)
            }
        }
    };
}

poly_binop!(Add, add, add_ref);
poly_binop!(Sub, sub, sub_ref);
poly_binop!(Mul, mul, mul_ref);

impl<F: Field, V: Variable> Neg for Poly<F, V> {
    type Output = Self;
    fn neg(self) -> Self {
        Poly { coeffs: self.coeffs.into_iter().map(|c| -c).collect(), _var: PhantomData }
    }
}

impl<F: Field, V: Variable> Neg for &Poly<F, V> {
    type Output = Poly<F, V>;
    fn neg(self) -> Poly<F, V> {
        -self.clone()
    }
}

/// Canonical text form: expanded, descending degree, `*` between factors.
/// The output re-parses to the same polynomial.
impl<F: Field, V: Variable> fmt::Display for Poly<F, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        if self.coeffs.len() == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, body) = split_sign(c.to_string(), c.is_atomic(), false);
            let mono = match k {
                0 => String::new(),
                1 => V::NAME.to_string(),
                _ => format!("{}^{}", V::NAME, k),
            };
            let term = match (k, body.as_str()) {
                (0, _) => body,
                (_, "1") => mono,
                _ => format!("{}*{}", body, mono),
            };
            push_term(&mut out, neg, &term);
        }
        f.write_str(&out)
    }
}

impl<F: Field, V: Variable> fmt::Debug for Poly<F, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", V::NAME, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{rat, ratio, Rational};

    type P = Poly<Rational, N>;

    fn p(c: &[i64]) -> P {
        P::new(c.iter().map(|&v| rat(v)).collect())
    }

    #[test]
    fn trims_trailing_zeros() {
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[1, 2, 0]).degree(), Some(1));
        assert_eq!(P::zero().degree(), None);
    }

    #[test]
    fn division_and_gcd() {
        // (n^2 - 1) = (n - 1)(n + 1)
        let a = p(&[-1, 0, 1]);
        let b = p(&[-1, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[-2, -1, 1])), p(&[1, 1]));
        assert_eq!(a.gcd(&p(&[5, 1])), P::one());
    }

    #[test]
    fn shift_and_eval() {
        let a = p(&[1, 2, 3]);
        let s = a.shift(&rat(2));
        for x in -3..4 {
            assert_eq!(s.eval(&rat(x)), a.eval(&rat(x + 2)));
        }
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(p(&[-5, 0, 2, -1]).to_string(), "-n^3 + 2*n^2 - 5");
        let q = P::new(vec![ratio(1, 2), ratio(-3, 4)]);
        assert_eq!(q.to_string(), "-3/4*n + 1/2");
        assert_eq!(q.latex(), "-\\frac{3}{4} n + \\frac{1}{2}");
    }
}
