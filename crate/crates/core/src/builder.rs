//! Construction of the commuting operators from spectral data: the closed
//! form of the second-order operator, and a generic order-`m` builder that
//! eliminates `ψ(n + k)` in favour of the basis `ψ(n - 1)`, `ψ(n)`.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::arith::linalg::solve_unique;
use crate::arith::{poly_interpolate, rational_reconstruct, Embed, Field, LaurentSeries, Poly, Z};
use crate::curve::{lambda_m, Branch, CurveParams, FieldElement};
use crate::error::{Error, Result};
use crate::operator::DifferenceOperator;
use crate::spectral::{chi_pair, series_coeffs_closed, ChiPair, ParameterSequences};
use crate::RatFuncN;

/// `L = T² + u₁T + u₀ + u₋₁T⁻¹ + u₋₂T⁻²` with eigenvalue `λ₁`, from the
/// expansion coefficients of `χ₁`, `χ₂` at `Q`.
pub fn build_l2_closed<F: Field>(
    params: &ParameterSequences<F>,
    curve: &CurveParams<F>,
) -> Result<DifferenceOperator<F>> {
    let s = series_coeffs_closed(params, curve)?;
    let p1 = RatFuncN::<F>::constant(curve.p1());
    let p0 = RatFuncN::<F>::constant(curve.p0());
    let b0m = s.b0.shift_int(-1);
    if b0m.is_zero() {
        return Err(Error::Degenerate("b₀ vanishes identically".into()));
    }
    let u1 = p1.clone() - &s.e0 - &s.e0.shift_int(1);
    let u0 = p0 - &s.b0 - &s.b0.shift_int(1) - &(p1.clone() * &s.e0) + &(s.e0.clone() * &s.e0)
        - &s.e1
        - &s.e1.shift_int(1);
    let inner = -p1 - &(s.b1.shift_int(-1) / b0m.clone()) + &s.e0.shift_int(-1) + &s.e0;
    let um1 = -s.b1.clone() + &(s.b0.clone() * &inner);
    let um2 = s.b0.clone() * &b0m;
    Ok(DifferenceOperator::from_terms([
        (2, RatFuncN::one()),
        (1, u1),
        (0, u0),
        (-1, um1),
        (-2, um2),
    ]))
}

/// `ψ(n + k) = r₁ᵏ ψ(n - 1) + r₂ᵏ ψ(n)` for `k ∈ [-m, m]`.
#[derive(Clone)]
pub struct BasisReduction<K: Field> {
    m: i64,
    pairs: Vec<(FieldElement<K>, FieldElement<K>)>,
}

impl<K: Field> BasisReduction<K> {
    /// `(r₁ᵏ, r₂ᵏ)`
    pub fn get(&self, k: i64) -> &(FieldElement<K>, FieldElement<K>) {
        assert!((-self.m..=self.m).contains(&k), "shift {} outside [-{}, {}]", k, self.m, self.m);
        &self.pairs[(k + self.m) as usize]
    }

    pub fn order(&self) -> i64 {
        self.m
    }

    /// `(P₁, P₂)` with `Lψ(n) = P₁ ψ(n) + P₂ ψ(n - 1)`, given the
    /// coefficients `u_i` of `L` for `i ∈ [-m, m]`.
    pub fn substitute(&self, u: impl Fn(i64) -> K) -> (FieldElement<K>, FieldElement<K>) {
        let f = self.pairs[0].0.curve_poly().clone();
        let mut p1 = FieldElement::zero(f.clone());
        let mut p2 = FieldElement::zero(f);
        for k in -self.m..=self.m {
            let c = u(k);
            if c.is_zero() {
                continue;
            }
            let (r1, r2) = self.get(k);
            p1 = p1.add(&r2.scale(&c));
            p2 = p2.add(&r1.scale(&c));
        }
        (p1, p2)
    }
}

/// Basis reduction from `χ(n + k)` supplied by `chi`, using
/// `ψ(n+k+1) = χ₁(n+k) ψ(n+k-1) + χ₂(n+k) ψ(n+k)` in both directions.
pub fn reduce_basis_with<K: Field>(
    chi: impl Fn(i64) -> Result<(FieldElement<K>, FieldElement<K>)>,
    f: &Arc<Poly<K, Z>>,
    m: usize,
) -> Result<BasisReduction<K>> {
    let m = m as i64;
    let zero = FieldElement::zero(f.clone());
    let one = FieldElement::one(f.clone());
    let idx = |k: i64| (k + m) as usize;
    let mut pairs = vec![(zero.clone(), zero.clone()); (2 * m + 1) as usize];
    pairs[idx(-1)] = (one.clone(), zero.clone());
    pairs[idx(0)] = (zero, one);
    for k in 0..m {
        let (c1, c2) = chi(k)?;
        let (a, b) = (&pairs[idx(k - 1)], &pairs[idx(k)]);
        pairs[idx(k + 1)] = (c1.mul(&a.0).add(&c2.mul(&b.0)), c1.mul(&a.1).add(&c2.mul(&b.1)));
    }
    for k in (-m + 1..=-1).rev() {
        let (c1, c2) = chi(k)?;
        let inv = c1.inv().map_err(|_| Error::Degenerate(format!("χ₁(n{:+}) vanishes", k)))?;
        let (hi, mid) = (&pairs[idx(k + 1)], &pairs[idx(k)]);
        pairs[idx(k - 1)] = (hi.0.sub(&c2.mul(&mid.0)).mul(&inv), hi.1.sub(&c2.mul(&mid.1)).mul(&inv));
    }
    Ok(BasisReduction { m, pairs })
}

/// Basis reduction with coefficients in `Q(c1, c2)(n)`.
pub fn reduce_basis<F: Field>(chis: &ChiPair<F>, m: usize) -> Result<BasisReduction<RatFuncN<F>>> {
    if m < 1 {
        return Err(Error::InvalidArgument("reduction order must be positive".into()));
    }
    let f = chis.chi1.curve_poly().clone();
    reduce_basis_with(|k| Ok(chis.shifted(k)), &f, m)
}

/// How the coefficient functions were recovered from samples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reconstruction {
    /// Polynomial interpolation with the given degree bound.
    Polynomial { bound: usize },
    /// Cauchy interpolation from the given number of samples, checked on
    /// further samples.
    Rational { samples: usize },
    /// Samples did not suffice; the linear system was solved over `Q(c1,c2)(n)`.
    Symbolic,
}

/// Sampling and reconstruction controls for [`build_l_generic`].
#[derive(Clone, Debug, PartialEq)]
pub struct BuildOptions {
    /// First sampled `n`.
    pub base: i64,
    /// Truncation order of the expansions at `Q`; `None` means `2m + 6`.
    pub series_order: Option<i64>,
    /// Starting interpolation degree bound; `None` means `4m + 2`.
    pub degree_bound: Option<usize>,
    /// Largest polynomial degree bound tried before rational reconstruction.
    pub max_degree_bound: Option<usize>,
    /// Total-degree cap of rational reconstruction; `None` means `20m`.
    pub rational_cap: Option<usize>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { base: 20, series_order: None, degree_bound: None, max_degree_bound: None, rational_cap: None }
    }
}

/// An operator `L = T^m + …` with its eigenvalue `λ` on the common
/// eigenfunctions: `Lψ = λψ`.
#[derive(Clone)]
pub struct BuiltOperator<F: Field> {
    pub order: usize,
    pub operator: DifferenceOperator<F>,
    pub lambda: FieldElement<F>,
    /// Constant added to `λ_m` (and subtracted from `u₀`) by normalization.
    pub shift: F,
    pub reconstruction: Reconstruction,
}

impl<F: Field> BuiltOperator<F> {
    /// `L - s`, with `λ - s`.
    pub fn shifted_by(&self, s: &F) -> Self {
        let f = self.lambda.curve_poly().clone();
        BuiltOperator {
            order: self.order,
            operator: self.operator.sub(&DifferenceOperator::multiplication(RatFuncN::constant(s.clone()))),
            lambda: self.lambda.sub(&FieldElement::constant(s.clone(), f)),
            shift: self.shift.clone() - s,
            reconstruction: self.reconstruction.clone(),
        }
    }

    /// Subtract `u₀(0)` so that the `T⁰` coefficient vanishes at `n = 0`.
    pub fn normalized_at_origin(&self) -> Result<Self> {
        let u0 = self.operator.coeff(0).eval(&F::zero()).map_err(|_| Error::Domain {
            n: 0,
            what: "u₀ has a pole at the origin".into(),
        })?;
        Ok(self.shifted_by(&u0))
    }
}

fn linear_system<K: Field>(
    red: &BasisReduction<K>,
    lambda: &FieldElement<K>,
    order: i64,
) -> Result<(Vec<Vec<K>>, Vec<K>)> {
    let m = red.order();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let lam = lambda.expand(Branch::Q, order)?;
    for part in 0..2 {
        let series: Vec<LaurentSeries<K>> = (-m..=m)
            .map(|k| {
                let (r1, r2) = red.get(k);
                let e = if part == 0 { r2 } else { r1 };
                if e.is_zero() {
                    Ok(LaurentSeries::zero_to(order))
                } else {
                    e.expand(Branch::Q, order)
                }
            })
            .collect::<Result<_>>()?;
        let target = if part == 0 { lam.clone() } else { LaurentSeries::zero_to(order) };
        let low = series.iter().chain([&target]).map(|s| s.lowest()).min().expect("nonempty");
        for deg in low..=order {
            let at = |s: &LaurentSeries<K>| {
                s.coeff(deg).ok_or_else(|| Error::TruncationInsufficient {
                    order,
                    what: format!("coefficient of z^{}", deg),
                })
            };
            // unknowns u_{m-1}, …, u_{-m}
            let row = (0..2 * m)
                .map(|t| at(&series[(2 * m - 1 - t) as usize]))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
            rhs.push(at(&target)? - &at(&series[(2 * m) as usize])?);
        }
    }
    Ok((rows, rhs))
}

fn check_identities<K: Field>(
    red: &BasisReduction<K>,
    lambda: &FieldElement<K>,
    u: impl Fn(i64) -> K,
) -> std::result::Result<(), String> {
    let (p1, p2) = red.substitute(u);
    let d1 = p1.sub(lambda);
    if !d1.is_zero() {
        return Err(format!("P1 - lambda = {}", d1));
    }
    if !p2.is_zero() {
        return Err(format!("P2 = {}", p2));
    }
    Ok(())
}

/// Solve for `u_{m-1}(n0), …, u_{-m}(n0)` at one integer, and verify the
/// identities exactly in the function field at that `n0`.
fn solve_at<F: Field>(chis: &ChiPair<F>, lambda: &FieldElement<F>, m: usize, n0: i64, order: i64) -> Result<Vec<F>> {
    let f: Arc<Poly<F, Z>> = chis.curve.f_shared();
    let red = reduce_basis_with(|k| chis.at(n0 + k), &f, m)?;
    let (rows, rhs) = linear_system(&red, lambda, order)?;
    let x = solve_unique(&rows, &rhs)?;
    let mi = m as i64;
    let u = |k: i64| if k == mi { F::one() } else { x[(mi - 1 - k) as usize].clone() };
    check_identities(&red, lambda, u)
        .map_err(|d| Error::Verification(format!("sampled solve at n = {}: {}", n0, d)))?;
    Ok(x)
}

/// The operator `L = T^m + Σ_{i<m} u_i(n) T^i` with `Lψ = λ_m ψ`, found by
/// sampling, reconstruction, and exact symbolic verification.
pub fn build_l_generic<F: Field>(
    params: &ParameterSequences<F>,
    curve: &CurveParams<F>,
    m: usize,
    opts: &BuildOptions,
) -> Result<BuiltOperator<F>> {
    let lambda = lambda_m(curve, m)?;
    let chis = chi_pair(params, curve)?;
    build_from_chis(&chis, &lambda, m, opts)
}

/// As [`build_l_generic`] for a given pair and eigenvalue.
pub fn build_from_chis<F: Field>(
    chis: &ChiPair<F>,
    lambda: &FieldElement<F>,
    m: usize,
    opts: &BuildOptions,
) -> Result<BuiltOperator<F>> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("operator order must be at least 2, got {}", m)));
    }
    let order = opts.series_order.unwrap_or(2 * m as i64 + 6);
    let bound0 = opts.degree_bound.unwrap_or(4 * m + 2);
    let max_bound = opts.max_degree_bound.unwrap_or(2 * bound0);
    let cap = opts.rational_cap.unwrap_or(20 * m);
    let unknowns = 2 * m;

    let mut samples: Vec<(i64, Vec<F>)> = Vec::new();
    let mut next = opts.base;
    let mut take = |needed: usize, samples: &mut Vec<(i64, Vec<F>)>| -> Result<()> {
        let mut skipped = 0;
        while samples.len() < needed {
            let n0 = next;
            next += 1;
            match solve_at(chis, lambda, m, n0, order) {
                Ok(x) => samples.push((n0, x)),
                Err(Error::Domain { .. } | Error::Singular | Error::Pole(_)) if skipped < 64 => skipped += 1,
                Err(e) => return Err(e),
            }
        }
        Ok(())
    };

    let column = |samples: &[(i64, Vec<F>)], t: usize| -> Vec<(F, F)> {
        samples.iter().map(|(n, x)| (F::from_i64(*n), x[t].clone())).collect()
    };

    let mut found: Option<(Vec<RatFuncN<F>>, Reconstruction)> = None;
    let mut bound = bound0;
    while bound <= max_bound {
        take(bound + 2, &mut samples)?;
        let polys: Result<Vec<_>> = (0..unknowns).map(|t| poly_interpolate(&column(&samples, t), bound)).collect();
        match polys {
            Ok(ps) => {
                found = Some((ps.into_iter().map(RatFuncN::from_poly).collect(), Reconstruction::Polynomial { bound }));
                break;
            }
            Err(Error::InconsistentInterpolation { .. }) => bound += bound0.max(1),
            Err(e) => return Err(e),
        }
    }
    // Rational reconstruction from a growing prefix of the samples, each
    // candidate checked on the next few. Columns that succeed are kept.
    const HELD_OUT: usize = 3;
    let mut fit = samples.len().saturating_sub(HELD_OUT).max(bound0 + 2);
    let mut columns: Vec<Option<RatFuncN<F>>> = vec![None; unknowns];
    while found.is_none() {
        take(fit + HELD_OUT, &mut samples)?;
        let (head, tail) = samples.split_at(fit);
        for (t, slot) in columns.iter_mut().enumerate() {
            if slot.is_some() {
                continue;
            }
            let r: RatFuncN<F> = match rational_reconstruct(&column(head, t), cap) {
                Ok(r) => r,
                Err(Error::ReconstructionFailed { .. }) => break,
                Err(e) => return Err(e),
            };
            if tail[..HELD_OUT].iter().any(|(n, x)| r.eval(&F::from_i64(*n)).ok().as_ref() != Some(&x[t])) {
                break;
            }
            *slot = Some(r);
        }
        if columns.iter().all(Option::is_some) {
            let us = columns.iter().flatten().cloned().collect();
            found = Some((us, Reconstruction::Rational { samples: fit }));
        } else if fit >= cap + 2 {
            break;
        } else {
            fit = (fit + (fit / 4).max(4)).min(cap + 2);
        }
    }

    let red = reduce_basis(chis, m)?;
    let lam_k = embed_element(lambda);
    let (us, how) = match found {
        Some(v) => v,
        None => (solve_symbolic(&red, &lam_k, order)?, Reconstruction::Symbolic),
    };
    let mi = m as i64;
    let operator = DifferenceOperator::from_terms(
        std::iter::once((mi, RatFuncN::one())).chain(us.iter().enumerate().map(|(t, u)| (mi - 1 - t as i64, u.clone()))),
    );
    verify_identities(&red, &lam_k, &operator)?;
    Ok(BuiltOperator { order: m, operator, lambda: lambda.clone(), shift: F::zero(), reconstruction: how })
}

/// `λ` with coefficients viewed as constants in `n`.
pub fn embed_element<F: Field>(x: &FieldElement<F>) -> FieldElement<RatFuncN<F>> {
    let f: Arc<Poly<RatFuncN<F>, Z>> = Arc::new(x.curve_poly().map(RatFuncN::<F>::embed));
    x.map_embedding(&f, RatFuncN::<F>::embed)
}

fn solve_symbolic<F: Field>(
    red: &BasisReduction<RatFuncN<F>>,
    lambda: &FieldElement<RatFuncN<F>>,
    order: i64,
) -> Result<Vec<RatFuncN<F>>> {
    let (rows, rhs) = linear_system(red, lambda, order)?;
    solve_unique(&rows, &rhs)
}

/// `P₁ - λ = 0` and `P₂ = 0` as identities in `n`.
pub fn verify_identities<F: Field>(
    red: &BasisReduction<RatFuncN<F>>,
    lambda: &FieldElement<RatFuncN<F>>,
    op: &DifferenceOperator<F>,
) -> Result<()> {
    check_identities(red, lambda, |k| op.coeff(k)).map_err(Error::Verification)
}

/// The pair of commuting operators of orders 2 and 3 for `a(n) = n + 1`,
/// `γ(n) = n`, each shifted so that its `T⁰` coefficient vanishes at
/// `n = 0`. Every coefficient must come out polynomial in `n`.
pub fn dixmier_pair<F: Field>(curve: &CurveParams<F>) -> Result<(BuiltOperator<F>, BuiltOperator<F>)> {
    let params = ParameterSequences::polynomial_family();
    let chis = chi_pair(&params, curve)?;
    let red = reduce_basis(&chis, 2)?;
    let lam1 = lambda_m(curve, 2)?;
    let l2 = build_l2_closed(&params, curve)?;
    verify_identities(&red, &embed_element(&lam1), &l2)?;
    let l2 = BuiltOperator { order: 2, operator: l2, lambda: lam1, shift: F::zero(), reconstruction: Reconstruction::Symbolic };
    let l3 = build_from_chis(&chis, &lambda_m(curve, 3)?, 3, &BuildOptions::default())?;
    let pair = (l2.normalized_at_origin()?, l3.normalized_at_origin()?);
    for b in [&pair.0, &pair.1] {
        if !b.operator.has_polynomial_coeffs() {
            return Err(Error::Verification(format!(
                "order-{} operator has a non-polynomial coefficient: {}",
                b.order, b.operator
            )));
        }
    }
    Ok(pair)
}

/// Outcome of matching `reference = L + αL₂ + β`.
#[derive(Clone, Debug, PartialEq)]
pub enum AffineMatch<F: Field> {
    Exact { alpha: F, beta: F },
    /// No constants work; `reference - L - αL₂ - β` for the best `α`, `β`
    /// read off the `T²` and `T⁰` coefficients.
    Residual(DifferenceOperator<F>),
}

/// Find constants with `reference = built + α·l2 + β`, where `l2` has
/// leading term `T²`.
pub fn affine_match<F: Field>(
    built: &DifferenceOperator<F>,
    reference: &DifferenceOperator<F>,
    l2: &DifferenceOperator<F>,
) -> AffineMatch<F> {
    let diff = reference.sub(built);
    let at_origin = |r: &RatFuncN<F>| r.as_constant().or_else(|| r.eval(&F::zero()).ok()).unwrap_or_else(F::zero);
    let alpha = at_origin(&diff.coeff(2));
    let rest = diff.sub(&l2.scale_const(&alpha));
    let beta = at_origin(&rest.coeff(0));
    let residual = rest.sub(&DifferenceOperator::multiplication(RatFuncN::constant(beta.clone())));
    if residual.is_zero() {
        AffineMatch::Exact { alpha, beta }
    } else {
        AffineMatch::Residual(residual)
    }
}
