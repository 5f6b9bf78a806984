//! The spectral curve `w² = F(z) = z⁴ + c2 z² + c1 z + 1`, its function field,
//! and expansions at the marked point `Q = (0, 1)`.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::arith::{series_sqrt, Embed, Field, LaurentSeries, Poly, QuadExt, RatFunc, Z};
use crate::error::{Error, Result};
use crate::SymbolicCoeff;

/// Coefficients `c1, c2` of the quartic.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveParams<F> {
    c1: F,
    c2: F,
}

impl<F: Field> CurveParams<F> {
    /// Rejects curves where `F(z)` has a repeated root. For symbolic
    /// coefficients this holds generically and the check passes.
    pub fn new(c1: F, c2: F) -> Result<Self> {
        let curve = CurveParams { c1, c2 };
        let f: Poly<F, Z> = curve.f_poly();
        if !f.gcd(&f.derivative()).is_one() {
            return Err(Error::SingularCurve { c1: curve.c1.to_string(), c2: curve.c2.to_string() });
        }
        Ok(curve)
    }

    pub fn c1(&self) -> &F {
        &self.c1
    }

    pub fn c2(&self) -> &F {
        &self.c2
    }

    /// `F(z)` with coefficients embedded in `K`.
    pub fn f_poly<K: Embed<F>>(&self) -> Poly<K, Z> {
        Poly::new(vec![K::one(), K::embed(&self.c1), K::embed(&self.c2), K::zero(), K::one()])
    }

    pub fn f_shared<K: Embed<F>>(&self) -> Arc<Poly<K, Z>> {
        Arc::new(self.f_poly())
    }

    pub fn eval_f(&self, z: &F) -> F {
        self.f_poly::<F>().eval(z)
    }

    /// Coefficient of `z⁻¹` in the expansion of `λ₁` at `Q`.
    pub fn p1(&self) -> F {
        self.c1.clone() / F::from_i64(2)
    }

    /// Constant term of the expansion of `λ₁` at `Q`.
    pub fn p0(&self) -> F {
        -(self.c1.clone() * &self.c1) / F::from_i64(16) + &(self.c2.clone() / F::from_i64(4))
    }
}

impl CurveParams<SymbolicCoeff> {
    /// The curve with `c1`, `c2` kept as indeterminates.
    pub fn symbolic() -> Self {
        let c1 = SymbolicCoeff::constant(RatFunc::var());
        let c2 = SymbolicCoeff::var();
        CurveParams { c1, c2 }
    }
}

/// The branch `w = √F(z)` with `w(0) = +1`, exact through `z^order`.
pub fn branch_w_series<F: Field>(curve: &CurveParams<F>, order: i64) -> LaurentSeries<F> {
    branch_series(&curve.f_poly::<F>(), order)
}

fn branch_series<K: Field>(f: &Poly<K, Z>, order: i64) -> LaurentSeries<K> {
    series_sqrt(&LaurentSeries::from_poly(f, order), order).expect("F(0) = 1")
}

/// `A(z) + B(z)·w` in `K(z)[w]/(w² - F(z))`.
#[derive(Clone)]
pub struct FieldElement<K> {
    a: RatFunc<K, Z>,
    b: RatFunc<K, Z>,
    f: Arc<Poly<K, Z>>,
}

impl<K: Field> PartialEq for FieldElement<K> {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b
    }
}

/// Which point over `z = 0` an expansion is taken at.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Branch {
    /// `Q = (0, 1)`
    Q,
    /// `σQ = (0, -1)`
    SigmaQ,
}

impl<K: Field> FieldElement<K> {
    pub fn new(a: RatFunc<K, Z>, b: RatFunc<K, Z>, f: Arc<Poly<K, Z>>) -> Self {
        FieldElement { a, b, f }
    }

    pub fn constant(c: K, f: Arc<Poly<K, Z>>) -> Self {
        Self::new(RatFunc::constant(c), RatFunc::zero(), f)
    }

    pub fn zero(f: Arc<Poly<K, Z>>) -> Self {
        Self::constant(K::zero(), f)
    }

    pub fn one(f: Arc<Poly<K, Z>>) -> Self {
        Self::constant(K::one(), f)
    }

    pub fn z(f: Arc<Poly<K, Z>>) -> Self {
        Self::new(RatFunc::var(), RatFunc::zero(), f)
    }

    pub fn w(f: Arc<Poly<K, Z>>) -> Self {
        Self::new(RatFunc::zero(), RatFunc::one(), f)
    }

    pub fn from_rational_part(a: RatFunc<K, Z>, f: Arc<Poly<K, Z>>) -> Self {
        Self::new(a, RatFunc::zero(), f)
    }

    /// Rational part `A`.
    pub fn a(&self) -> &RatFunc<K, Z> {
        &self.a
    }

    /// Coefficient `B` of `w`.
    pub fn b(&self) -> &RatFunc<K, Z> {
        &self.b
    }

    pub fn curve_poly(&self) -> &Arc<Poly<K, Z>> {
        &self.f
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Image under `(z, w) ↦ (z, -w)`.
    pub fn sigma(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone(), self.f.clone())
    }

    fn f_rat(&self) -> RatFunc<K, Z> {
        RatFunc::from_poly((*self.f).clone())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::new(self.a.clone() + &rhs.a, self.b.clone() + &rhs.b, self.f.clone())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::new(self.a.clone() - &rhs.a, self.b.clone() - &rhs.b, self.f.clone())
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.a.clone(), -self.b.clone(), self.f.clone())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.b.is_zero() && rhs.b.is_zero() {
            return Self::new(self.a.clone() * &rhs.a, RatFunc::zero(), self.f.clone());
        }
        let bb = if self.b.is_zero() || rhs.b.is_zero() {
            RatFunc::zero()
        } else {
            self.b.clone() * &rhs.b * &self.f_rat()
        };
        let a = self.a.clone() * &rhs.a + &bb;
        let b = self.a.clone() * &rhs.b + &(self.b.clone() * &rhs.a);
        Self::new(a, b, self.f.clone())
    }

    /// Multiply by a scalar of the coefficient ring.
    pub fn scale(&self, c: &K) -> Self {
        let c = RatFunc::constant(c.clone());
        Self::new(self.a.clone() * &c, self.b.clone() * &c, self.f.clone())
    }

    /// `A² - B² F`
    pub fn norm(&self) -> RatFunc<K, Z> {
        self.a.clone() * &self.a - &(self.b.clone() * &self.b * &self.f_rat())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.b.is_zero() {
            let a = self.a.checked_inv().ok_or(Error::ZeroFieldElement)?;
            return Ok(Self::new(a, RatFunc::zero(), self.f.clone()));
        }
        let n = self.norm().checked_inv().ok_or(Error::ZeroFieldElement)?;
        Ok(Self::new(self.a.clone() * &n, -(self.b.clone() * &n), self.f.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// Apply a map to every coefficient (of `A`, `B` and `F`).
    pub fn try_map<K2: Field>(
        &self,
        f2: &Arc<Poly<K2, Z>>,
        map: impl Fn(&K) -> Result<K2>,
    ) -> Result<FieldElement<K2>> {
        Ok(FieldElement::new(self.a.try_map(&map)?, self.b.try_map(&map)?, f2.clone()))
    }

    /// Apply a field embedding to every coefficient; see
    /// [`RatFunc::map_embedding`].
    pub fn map_embedding<K2: Field>(&self, f2: &Arc<Poly<K2, Z>>, map: impl Fn(&K) -> K2) -> FieldElement<K2> {
        FieldElement::new(self.a.map_embedding(&map), self.b.map_embedding(&map), f2.clone())
    }

    /// Value at the point `(z0, w0)`; `w0` must satisfy `w0² = F(z0)`.
    pub fn eval_at(&self, z0: &K, w0: &QuadExt<K>) -> Result<QuadExt<K>> {
        let pole = || Error::Pole(format!("z = {}", z0));
        let a = self.a.eval(z0).map_err(|_| pole())?;
        let b = self.b.eval(z0).map_err(|_| pole())?;
        Ok(w0.scale(&b).add(&w0.base(a)))
    }

    /// Residue at `(z0, w0)` where `F(z0) ≠ 0`, so `z - z0` is a local
    /// parameter. Only simple poles are supported.
    pub fn residue_at(&self, z0: &K, w0: &QuadExt<K>) -> Result<QuadExt<K>> {
        let ra = simple_residue(&self.a, z0)?;
        let rb = simple_residue(&self.b, z0)?;
        Ok(w0.scale(&rb).add(&w0.base(ra)))
    }

    /// Laurent expansion at `Q` (or `σQ`) in the local coordinate `z`.
    ///
    /// A nonzero element whose expansion vanishes through `z^order` is an
    /// error: its lowest degree cannot be determined at that order.
    pub fn expand(&self, branch: Branch, order: i64) -> Result<LaurentSeries<K>> {
        let a = LaurentSeries::from_ratfunc(&self.a, order);
        let s = if self.b.is_zero() {
            a
        } else {
            let b = LaurentSeries::from_ratfunc(&self.b, order);
            let vb = b.valuation().unwrap_or(order + 1).min(0);
            let mut w = branch_series(&self.f, order - vb);
            if branch == Branch::SigmaQ {
                w = w.neg();
            }
            a.add(&b.mul(&w))
        };
        if s.is_zero_to_order() && !self.is_zero() {
            return Err(Error::TruncationInsufficient {
                order,
                what: "expansion vanishes to the truncation order; lowest degree undetermined".into(),
            });
        }
        Ok(s)
    }

    pub fn latex(&self) -> String {
        let wrap = |r: &RatFunc<K, Z>| {
            if r.is_atomic() {
                r.latex()
            } else {
                format!("\\left({}\\right)", r.latex())
            }
        };
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => self.a.latex(),
            (true, false) => format!("{} w", wrap(&self.b)),
            (false, false) => format!("{} + {} w", self.a.latex(), wrap(&self.b)),
        }
    }
}

fn simple_residue<K: Field>(r: &RatFunc<K, Z>, z0: &K) -> Result<K> {
    let lin: Poly<K, Z> = Poly::linear(-z0.clone());
    let (q, rem) = r.den().div_rem(&lin).expect("nonzero divisor");
    if !rem.is_zero() {
        return Ok(K::zero());
    }
    let q0 = q.eval(z0);
    let inv = q0
        .checked_inv()
        .ok_or_else(|| Error::Pole(format!("pole of order > 1 at z = {}", z0)))?;
    Ok(r.num().eval(z0) * &inv)
}

/// Expansion at `Q` of an element, exact through `z^order`.
pub fn expand_at_q<K: Field>(elem: &FieldElement<K>, order: i64) -> Result<LaurentSeries<K>> {
    elem.expand(Branch::Q, order)
}

/// Binary operation selector for [`ff_arith`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FfOp {
    Add,
    Mul,
    Div,
}

pub fn ff_arith<K: Field>(x: &FieldElement<K>, y: &FieldElement<K>, op: FfOp) -> Result<FieldElement<K>> {
    match op {
        FfOp::Add => Ok(x.add(y)),
        FfOp::Mul => Ok(x.mul(y)),
        FfOp::Div => x.checked_div(y),
    }
}

/// `λ_m = (G_{m-1}(z) + w) / (2 z^m)`, where `G_{m-1}` is the Taylor
/// polynomial of degree `m - 1` of the branch of `w` at `Q`. Its only pole is
/// at `Q`, of order `m`; at `σQ` the principal part cancels.
pub fn lambda_m<F: Field>(curve: &CurveParams<F>, m: usize) -> Result<FieldElement<F>> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("lambda_m needs m >= 2, got {}", m)));
    }
    let w = branch_w_series(curve, m as i64 - 1);
    let g: Poly<F, Z> = Poly::new(w.coeff_range(0, m as i64 - 1)?);
    let den: Poly<F, Z> = Poly::monomial(F::from_i64(2), m);
    let a = RatFunc::new(g, den.clone())?;
    let b = RatFunc::new(Poly::one(), den)?;
    Ok(FieldElement::new(a, b, curve.f_shared()))
}

impl<K: Field> fmt::Display for FieldElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |r: &RatFunc<K, Z>| if r.is_atomic() { r.to_string() } else { format!("({})", r) };
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*w", wrap(&self.b)),
            (false, false) => write!(f, "{} + {}*w", self.a, wrap(&self.b)),
        }
    }
}

impl<K: Field> fmt::Debug for FieldElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio, Rational};

    fn example_curve() -> CurveParams<Rational> {
        CurveParams::new(rat(0), rat(1)).unwrap()
    }

    #[test]
    fn singular_curve_rejected() {
        // (z² + 1)² and (z² - 1)²
        assert!(matches!(CurveParams::new(rat(0), rat(2)), Err(Error::SingularCurve { .. })));
        assert!(matches!(CurveParams::new(rat(0), rat(-2)), Err(Error::SingularCurve { .. })));
        assert!(CurveParams::new(rat(1), rat(2)).is_ok());
    }

    #[test]
    fn branch_series_squares_to_f() {
        let c = example_curve();
        let w = branch_w_series(&c, 4);
        assert_eq!(w.coeff_range(0, 4).unwrap(), vec![rat(1), rat(0), ratio(1, 2), rat(0), ratio(3, 8)]);
        let sq = w.mul(&w);
        let f = LaurentSeries::from_poly(&c.f_poly::<Rational>(), 4);
        assert_eq!(sq, f);
        assert_eq!(branch_w_series(&c, 0).coeff_range(0, 0).unwrap(), vec![rat(1)]);
    }

    #[test]
    fn symbolic_branch_to_first_order() {
        let c = CurveParams::symbolic();
        let w = branch_w_series(&c, 1);
        let half_c1 = c.c1().clone() / SymbolicCoeff::from_i64(2);
        assert_eq!(w.coeff_range(0, 1).unwrap(), vec![SymbolicCoeff::one(), half_c1]);
    }

    #[test]
    fn w_squared_is_f() {
        let c = example_curve();
        let f = c.f_shared::<Rational>();
        let w = FieldElement::w(f.clone());
        let ww = ff_arith(&w, &w, FfOp::Mul).unwrap();
        assert_eq!(ww, FieldElement::from_rational_part(RatFunc::from_poly((*f).clone()), f.clone()));
        let inv = ff_arith(&FieldElement::one(f.clone()), &w, FfOp::Div).unwrap();
        assert_eq!(inv.mul(&w), FieldElement::one(f.clone()));
        assert!(inv.a().is_zero());
        assert_eq!(inv.b(), &RatFunc::new(Poly::one(), (*f).clone()).unwrap());
        let zero = FieldElement::zero(f);
        assert_eq!(ff_arith(&w, &zero, FfOp::Div), Err(Error::ZeroFieldElement));
    }

    #[test]
    fn lambda_two_matches_closed_form() {
        let c = CurveParams::symbolic();
        let l = lambda_m(&c, 2).unwrap();
        let f = c.f_shared();
        let z = FieldElement::z(f.clone());
        let two = SymbolicCoeff::from_i64(2);
        let four = SymbolicCoeff::from_i64(4);
        let z2 = z.mul(&z);
        let expect = FieldElement::one(f.clone())
            .scale(&(SymbolicCoeff::one() / &two))
            .checked_div(&z2)
            .unwrap()
            .add(&FieldElement::constant(c.c1().clone() / &four, f.clone()).checked_div(&z).unwrap())
            .add(&FieldElement::w(f.clone()).scale(&(SymbolicCoeff::one() / two)).checked_div(&z2).unwrap());
        assert_eq!(l, expect);
        assert!(matches!(lambda_m(&c, 1), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn lambda_poles_only_at_q() {
        let c = CurveParams::new(ratio(1, 3), ratio(-2, 5)).unwrap();
        for m in 2..=4 {
            let l = lambda_m(&c, m).unwrap();
            let at_q = expand_at_q(&l, 4).unwrap();
            assert_eq!(at_q.valuation(), Some(-(m as i64)));
            assert_eq!(at_q.coeff(-(m as i64)), Some(rat(1)));
            let at_sq = l.expand(Branch::SigmaQ, 4).unwrap();
            assert!(at_sq.valuation().unwrap() >= 0);
        }
    }

    #[test]
    fn sigma_is_an_involution() {
        let c = example_curve();
        let f = c.f_shared::<Rational>();
        let x = FieldElement::z(f.clone()).add(&FieldElement::w(f.clone()).scale(&rat(3)));
        assert_eq!(x.sigma().sigma(), x);
        assert_ne!(x.sigma(), x);
    }
}
