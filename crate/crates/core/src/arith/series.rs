//! Truncated Laurent series in the local coordinate `z`.

use std::fmt;

use num_traits::Zero;

use super::field::Field;
use super::poly::{Poly, Z};
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

/// `Σ_{k=low}^{order} coeffs[k - low] z^k + O(z^{order+1})`.
///
/// The coefficient at `low` is nonzero; a series that vanishes up to its
/// order has no coefficients and `low = order + 1`.
#[derive(Clone, PartialEq)]
pub struct LaurentSeries<F> {
    low: i64,
    coeffs: Vec<F>,
    order: i64,
}

impl<F: Field> LaurentSeries<F> {
    /// Coefficients for degrees `low, low + 1, ...`; anything past `order`
    /// is dropped.
    pub fn new(low: i64, mut coeffs: Vec<F>, order: i64) -> Self {
        let keep = (order - low + 1).max(0) as usize;
        coeffs.truncate(keep);
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => Self::zero_to(order),
            Some(i) => {
                coeffs.drain(..i);
                coeffs.resize(keep - i, F::zero());
                LaurentSeries { low: low + i as i64, coeffs, order }
            }
        }
    }

    /// The series known to vanish through `z^order`.
    pub fn zero_to(order: i64) -> Self {
        LaurentSeries { low: order + 1, coeffs: Vec::new(), order }
    }

    pub fn constant(c: F, order: i64) -> Self {
        Self::new(0, vec![c], order)
    }

    pub fn from_poly(p: &Poly<F, Z>, order: i64) -> Self {
        Self::new(0, p.coeffs().to_vec(), order)
    }

    /// Expansion of a rational function at `z = 0`, exact through `z^order`.
    pub fn from_ratfunc(r: &RatFunc<F, Z>, order: i64) -> Self {
        if r.is_zero() {
            return Self::zero_to(order);
        }
        let k = r.den().valuation().expect("nonzero denominator");
        let d1 = r.den().div_xk(k);
        let target = order + k as i64;
        let num = Self::from_poly(r.num(), target);
        let den = Self::from_poly(&d1, target);
        let q = num.div(&den).expect("unit denominator at z = 0");
        q.mul_zk(-(k as i64))
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// Lowest degree with a nonzero coefficient, if one is known.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.low)
        }
    }

    pub fn is_zero_to_order(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `z^k`, or `None` past the truncation order.
    pub fn coeff(&self, k: i64) -> Option<F> {
        if k > self.order {
            None
        } else if k < self.low {
            Some(F::zero())
        } else {
            Some(self.coeffs[(k - self.low) as usize].clone())
        }
    }

    pub fn lowest(&self) -> i64 {
        self.low
    }

    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.order {
            return self.clone();
        }
        Self::new(self.low, self.coeffs.clone(), order)
    }

    /// Multiply by `z^k`.
    pub fn mul_zk(&self, k: i64) -> Self {
        LaurentSeries { low: self.low + k, coeffs: self.coeffs.clone(), order: self.order + k }
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.low, self.coeffs.iter().map(|a| a.clone() * c).collect(), self.order)
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            low: self.low,
            coeffs: self.coeffs.iter().map(|a| -a.clone()).collect(),
            order: self.order,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        let low = self.low.min(rhs.low);
        if low > order {
            return Self::zero_to(order);
        }
        let coeffs = (low..=order)
            .map(|k| {
                let a = self.coeff(k).unwrap_or_else(F::zero);
                let b = rhs.coeff(k).unwrap_or_else(F::zero);
                a + &b
            })
            .collect();
        Self::new(low, coeffs, order)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = (self.order + rhs.low).min(rhs.order + self.low);
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::zero_to(order);
        }
        let low = self.low + rhs.low;
        let len = (order - low + 1).max(0) as usize;
        let mut coeffs = vec![F::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len || a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(len - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].clone() + &(a.clone() * b);
            }
        }
        Self::new(low, coeffs, order)
    }

    pub fn inv(&self) -> Result<Self> {
        let v = self.valuation().ok_or_else(|| Error::TruncationInsufficient {
            order: self.order,
            what: "cannot invert a series that vanishes to its truncation order".into(),
        })?;
        let len = self.coeffs.len();
        let b0 = self.coeffs[0].checked_inv().expect("nonzero leading coefficient");
        let mut out: Vec<F> = Vec::with_capacity(len);
        for k in 0..len {
            let mut acc = if k == 0 { F::one() } else { F::zero() };
            for i in 1..=k {
                if self.coeffs[i].is_zero() {
                    continue;
                }
                acc = acc - &(self.coeffs[i].clone() * &out[k - i]);
            }
            out.push(acc * &b0);
        }
        Ok(Self::new(-v, out, self.order - 2 * v))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// Coefficients from `from` through `to`, zero-filled below the lowest
    /// degree. Errors when `to` exceeds the truncation order.
    pub fn coeff_range(&self, from: i64, to: i64) -> Result<Vec<F>> {
        (from..=to)
            .map(|k| {
                self.coeff(k).ok_or_else(|| Error::TruncationInsufficient {
                    order: self.order,
                    what: format!("coefficient of z^{} requested", k),
                })
            })
            .collect()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> LaurentSeries<G> {
        LaurentSeries::new(self.low, self.coeffs.iter().map(f).collect(), self.order)
    }

    pub fn try_map<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<LaurentSeries<G>> {
        Ok(LaurentSeries::new(
            self.low,
            self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?,
            self.order,
        ))
    }
}

/// Square root with constant term `+1` of a series `1 + O(z)`, exact
/// through `z^order`.
pub fn series_sqrt<F: Field>(s: &LaurentSeries<F>, order: i64) -> Result<LaurentSeries<F>> {
    let c0 = s.coeff(0).ok_or_else(|| Error::TruncationInsufficient {
        order: s.order,
        what: "constant term unknown".into(),
    })?;
    if s.low < 0 || !num_traits::One::is_one(&c0) {
        return Err(Error::UnsupportedBranch(c0.to_string()));
    }
    let order = order.min(s.order);
    let half = F::from_i64(2).checked_inv().expect("characteristic zero");
    let mut t: Vec<F> = vec![F::one()];
    for k in 1..=order {
        let mut acc = s.coeff(k).expect("within order");
        for i in 1..k {
            acc = acc - &(t[i as usize].clone() * &t[(k - i) as usize]);
        }
        t.push(acc * &half);
    }
    Ok(LaurentSeries::new(0, t, order))
}

impl<F: Field> fmt::Display for LaurentSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let k = self.low + i as i64;
            let body = if c.is_atomic() { c.to_string() } else { format!("({})", c) };
            match k {
                0 => write!(f, "{}", body)?,
                1 => write!(f, "{}*z", body)?,
                _ => write!(f, "{}*z^{}", body, k)?,
            }
        }
        if !first {
            f.write_str(" + ")?;
        }
        write!(f, "O(z^{})", self.order + 1)
    }
}

impl<F: Field> fmt::Debug for LaurentSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentSeries({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{rat, ratio, Rational};

    fn s(low: i64, c: &[Rational], order: i64) -> LaurentSeries<Rational> {
        LaurentSeries::new(low, c.to_vec(), order)
    }

    #[test]
    fn sqrt_of_one_plus_z2_plus_z4() {
        let f = s(0, &[rat(1), rat(0), rat(1), rat(0), rat(1)], 10);
        let t = series_sqrt(&f, 4).unwrap();
        // Independent check: square back.
        let sq = t.mul(&t);
        assert_eq!(sq.coeff_range(0, 4).unwrap(), f.coeff_range(0, 4).unwrap());
        assert_eq!(t.coeff_range(0, 4).unwrap(), vec![rat(1), rat(0), ratio(1, 2), rat(0), ratio(3, 8)]);
    }

    #[test]
    fn sqrt_identity_and_branch_error() {
        let one = LaurentSeries::constant(rat(1), 5);
        assert_eq!(series_sqrt(&one, 5).unwrap(), one);
        let two = LaurentSeries::constant(rat(2), 5);
        assert!(matches!(series_sqrt(&two, 5), Err(Error::UnsupportedBranch(_))));
    }

    #[test]
    fn inverse_of_pole() {
        // 1/(z^2 + z^3) = z^-2 (1 - z + z^2 - ...)
        let a = s(2, &[rat(1), rat(1)], 8);
        let i = a.inv().unwrap();
        assert_eq!(i.valuation(), Some(-2));
        assert_eq!(i.order(), 4);
        assert_eq!(i.coeff_range(-2, 1).unwrap(), vec![rat(1), rat(-1), rat(1), rat(-1)]);
        let one = a.mul(&i);
        assert_eq!(one.coeff_range(0, 4).unwrap(), vec![rat(1), rat(0), rat(0), rat(0), rat(0)]);
    }

    #[test]
    fn pessimistic_order_tracking() {
        let a = s(-1, &[rat(1)], 3);
        let b = s(0, &[rat(1), rat(1)], 5);
        assert_eq!(a.mul(&b).order(), 3);
        assert_eq!(a.add(&b).order(), 3);
        let z = LaurentSeries::<Rational>::zero_to(2);
        assert!(z.inv().is_err());
    }
}
