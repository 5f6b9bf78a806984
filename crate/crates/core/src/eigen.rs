//! Common eigenfunctions from the `χ` recurrence at a point of the curve,
//! and exact residual checks of the eigenvalue equations.

use std::fmt;

use crate::arith::{Field, QuadExt};
use crate::curve::{CurveParams, FieldElement};
use crate::error::{Error, Result};
use crate::operator::{apply_window, DifferenceOperator, SeqWindow};
use crate::spectral::{chi_pair, ChiPair, ParameterSequences};

/// A point `(z0, w0)` with `w0² = F(z0)`, where `w0` lives in
/// `K = F[w]/(w² - F(z0))`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvePoint<F: Field> {
    pub z0: F,
    pub w0: QuadExt<F>,
}

impl<F: Field> CurvePoint<F> {
    /// The point over `z0` with `w0` the generator of `K`.
    pub fn new(curve: &CurveParams<F>, z0: F) -> Result<Self> {
        let w0 = QuadExt::sqrt_of(curve.eval_f(&z0));
        Self::with_w(curve, z0, w0)
    }

    /// A point with an explicit `w0`, e.g. a rational root of `F(z0)`.
    pub fn with_w(curve: &CurveParams<F>, z0: F, w0: QuadExt<F>) -> Result<Self> {
        if z0.is_zero() {
            return Err(Error::InvalidArgument("z0 = 0 is a pole of every λ_m".into()));
        }
        let fz = curve.eval_f(&z0);
        if w0.mul(&w0) != w0.base(fz.clone()) {
            return Err(Error::InvalidArgument(format!("w0² ≠ F(z0) = {}", fz)));
        }
        Ok(CurvePoint { z0, w0 })
    }

    /// `σ(z0, w0) = (z0, -w0)`.
    pub fn sigma(&self) -> Self {
        CurvePoint { z0: self.z0.clone(), w0: self.w0.neg() }
    }

    pub fn eval(&self, x: &FieldElement<F>) -> Result<QuadExt<F>> {
        x.eval_at(&self.z0, &self.w0)
    }

    /// The constant `c` of `K`.
    pub fn scalar(&self, c: F) -> QuadExt<F> {
        self.w0.base(c)
    }
}

/// `ψ(n₀ - 1), ψ(n₀), …` satisfying `ψ(n+1) = χ₁(n)ψ(n-1) + χ₂(n)ψ(n)`.
pub type PsiWindow<F> = SeqWindow<QuadExt<F>>;

/// The window seeded with `ψ(n₀ - 1) = s0`, `ψ(n₀) = s1` and extended
/// `len` steps forward.
pub fn psi_window<F: Field>(
    params: &ParameterSequences<F>,
    curve: &CurveParams<F>,
    point: &CurvePoint<F>,
    n0: i64,
    len: usize,
    seed: (QuadExt<F>, QuadExt<F>),
) -> Result<PsiWindow<F>> {
    psi_window_from(&chi_pair(params, curve)?, point, n0, len, seed)
}

pub fn psi_window_from<F: Field>(
    chis: &ChiPair<F>,
    point: &CurvePoint<F>,
    n0: i64,
    len: usize,
    seed: (QuadExt<F>, QuadExt<F>),
) -> Result<PsiWindow<F>> {
    if seed.0.is_zero() && seed.1.is_zero() {
        return Err(Error::InvalidArgument("seed (0, 0) gives the zero sequence".into()));
    }
    let mut values = vec![seed.0, seed.1];
    for k in 0..len {
        let n = n0 + k as i64;
        let pole = |_| Error::Domain { n, what: format!("χ has a pole at z = {}", point.z0) };
        let (c1, c2) = chis.at(n)?;
        let (x1, x2) = (point.eval(&c1).map_err(pole)?, point.eval(&c2).map_err(pole)?);
        let next = x1.mul(&values[k]).add(&x2.mul(&values[k + 1]));
        values.push(next);
    }
    Ok(SeqWindow::new(n0 - 1, values))
}

/// Residuals `(Lψ)(n) - λ(P)ψ(n)` over every `n` whose stencil fits.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport<F: Field> {
    pub eigenvalue: QuadExt<F>,
    pub residuals: SeqWindow<QuadExt<F>>,
}

impl<F: Field> ResidualReport<F> {
    pub fn checked(&self) -> usize {
        self.residuals.values.len()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (i64, &QuadExt<F>)> {
        let start = self.residuals.start;
        self.residuals.values.iter().enumerate().filter(|(_, r)| !r.is_zero()).map(move |(k, r)| (start + k as i64, r))
    }

    pub fn all_zero(&self) -> bool {
        self.nonzero().next().is_none()
    }

    /// The first nonzero residual as an error.
    pub fn into_result(self) -> Result<Self> {
        let first = self.nonzero().next().map(|(n, r)| (n, r.to_string()));
        match first {
            Some((n, value)) => Err(Error::Residual { n, value }),
            None => Ok(self),
        }
    }
}

impl<F: Field> fmt::Display for ResidualReport<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bad = self.nonzero().count();
        write!(f, "eigenvalue = {}; {} of {} residuals nonzero", self.eigenvalue, bad, self.checked())
    }
}

pub fn residual_check<F: Field>(
    op: &DifferenceOperator<F>,
    lambda: &FieldElement<F>,
    psi: &PsiWindow<F>,
    point: &CurvePoint<F>,
) -> Result<ResidualReport<F>> {
    let eigenvalue = point.eval(lambda)?;
    let applied = apply_window(op, psi)?;
    let values = applied
        .values
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let n = applied.start + k as i64;
            v.sub(&eigenvalue.mul(psi.get(n).expect("stencil covers n")))
        })
        .collect();
    Ok(ResidualReport { eigenvalue, residuals: SeqWindow::new(applied.start, values) })
}
