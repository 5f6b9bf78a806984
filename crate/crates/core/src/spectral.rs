//! Spectral data: the functions `χ₁`, `χ₂` built from parameter sequences
//! `a(n)`, `γ(n)`, their expansion coefficients at `Q`, and the residue,
//! determinant and `α`-dynamics constraints they satisfy.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::arith::{Embed, Field, LaurentSeries, Poly, QuadExt, RatFunc, Z};
use crate::curve::{expand_at_q, CurveParams, FieldElement};
use crate::error::{Error, Result};
use crate::RatFuncN;

/// The free functional parameters `a(n)` and `γ(n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParameterSequences<F: Field> {
    pub a: RatFuncN<F>,
    pub gamma: RatFuncN<F>,
}

impl<F: Field> ParameterSequences<F> {
    pub fn new(a: RatFuncN<F>, gamma: RatFuncN<F>) -> Self {
        ParameterSequences { a, gamma }
    }

    /// `a(n) = n + 1`, `γ(n) = n`: the choice giving polynomial coefficients.
    pub fn polynomial_family() -> Self {
        let n = RatFuncN::<F>::var();
        ParameterSequences { a: n.clone() + &RatFuncN::one(), gamma: n }
    }

    /// Checks the pointwise invariants at `n`: `γ(n) ≠ 0` and
    /// `γ(n) ≠ γ(n ± 1)`, with every value finite.
    pub fn check_domain(&self, n: i64) -> Result<()> {
        let dom = |what: String| Error::Domain { n, what };
        let g = |k: i64| eval_n(&self.gamma, n + k).map_err(|_| dom(format!("γ has a pole at n = {}", n + k)));
        let (gm, g0, gp) = (g(-1)?, g(0)?, g(1)?);
        eval_n(&self.a, n).map_err(|_| dom("a has a pole".into()))?;
        if g0.is_zero() {
            return Err(dom("γ(n) = 0".into()));
        }
        if g0 == gp {
            return Err(dom("γ(n) = γ(n+1)".into()));
        }
        if g0 == gm {
            return Err(dom("γ(n) = γ(n-1)".into()));
        }
        Ok(())
    }
}

fn eval_n<F: Field>(r: &RatFuncN<F>, n: i64) -> Result<F> {
    r.eval(&F::from_i64(n))
}

fn nonzero<F: Field>(r: RatFuncN<F>, what: &str) -> Result<RatFuncN<F>> {
    if r.is_zero() {
        Err(Error::Degenerate(format!("{} vanishes identically", what)))
    } else {
        Ok(r)
    }
}

/// `F(γ(n))` as a function of `n`.
fn f_of_gamma<F: Field>(params: &ParameterSequences<F>, curve: &CurveParams<F>) -> RatFuncN<F> {
    curve.f_poly::<RatFuncN<F>>().eval(&params.gamma)
}

/// `c(n)` and `d(n)`:
///
/// `c = γ(n-1)(a² - F(γ)) / (4γ(γ - γ(n-1)))`,
/// `d = ((a(n+1) - 1)γ + (a + 1)γ(n+1)) / (2(γ - γ(n+1))γ(n+1))`.
pub fn cd_coeffs<F: Field>(
    params: &ParameterSequences<F>,
    curve: &CurveParams<F>,
) -> Result<(RatFuncN<F>, RatFuncN<F>)> {
    let g = &params.gamma;
    let a = &params.a;
    let (gm, gp) = (g.shift_int(-1), g.shift_int(1));
    let one = RatFuncN::<F>::one();
    let two = RatFuncN::<F>::from_i64(2);
    let four = RatFuncN::<F>::from_i64(4);

    let c_den = nonzero(four * g * &nonzero(g.clone() - &gm, "γ(n) - γ(n-1)")?, "γ(n)")?;
    let c = gm * &(a.clone() * a - &f_of_gamma(params, curve)) / c_den;

    let gap = nonzero(g.clone() - &gp, "γ(n) - γ(n+1)")?;
    let d_den = nonzero(two * &gap * &gp, "γ(n+1)")?;
    let d_num = (a.shift_int(1) - &one) * g + &((a.clone() + &one) * &gp);
    Ok((c, d_num / d_den))
}

/// `χ₁`, `χ₂` as function-field elements with coefficients in `Q(c1,c2)(n)`.
#[derive(Clone)]
pub struct ChiPair<F: Field> {
    pub params: ParameterSequences<F>,
    pub curve: CurveParams<F>,
    pub c: RatFuncN<F>,
    pub d: RatFuncN<F>,
    pub chi1: FieldElement<RatFuncN<F>>,
    pub chi2: FieldElement<RatFuncN<F>>,
}

/// Builds `χ₁ = c/(z - γ) + c/(γ - γ(n+1))` and
/// `χ₂ = 1/(2z) + a/(2(z - γ)) + wγ/(2z(γ - z)) + d`.
pub fn chi_pair<F: Field>(params: &ParameterSequences<F>, curve: &CurveParams<F>) -> Result<ChiPair<F>> {
    let (c, d) = cd_coeffs(params, curve)?;
    ChiPair::from_cd(params, curve, c, d)
}

impl<F: Field> ChiPair<F> {
    /// Assemble the pair from given `c(n)`, `d(n)`; [`chi_pair`] supplies
    /// the consistent ones.
    pub fn from_cd(
        params: &ParameterSequences<F>,
        curve: &CurveParams<F>,
        c: RatFuncN<F>,
        d: RatFuncN<F>,
    ) -> Result<Self> {
        type K<F> = RatFuncN<F>;
        let fz: Arc<Poly<K<F>, Z>> = curve.f_shared();
        let g = params.gamma.clone();
        let gap = nonzero(g.clone() - &g.shift_int(1), "γ(n) - γ(n+1)")?;
        let z_minus_g: Poly<K<F>, Z> = Poly::linear(-g.clone());
        let cst = |x: K<F>| RatFunc::<K<F>, Z>::constant(x);

        let a1 = RatFunc::new(Poly::constant(c.clone()), z_minus_g.clone())? + &cst(c.clone() / gap);
        let chi1 = FieldElement::from_rational_part(a1, fz.clone());

        let two = K::<F>::from_i64(2);
        let z2: Poly<K<F>, Z> = Poly::monomial(two.clone(), 1);
        let a2 = RatFunc::new(Poly::one(), z2.clone())?
            + &RatFunc::new(Poly::constant(params.a.clone()), z_minus_g.scale(&two))?
            + &cst(d.clone());
        // γ / (2z(γ - z))
        let b2 = RatFunc::new(Poly::constant(-g), &z2 * &z_minus_g)?;
        let chi2 = FieldElement::new(a2, b2, fz);
        Ok(ChiPair { params: params.clone(), curve: curve.clone(), c, d, chi1, chi2 })
    }

    /// `χ(n + k)` as functions of `n`.
    pub fn shifted(&self, k: i64) -> (FieldElement<RatFuncN<F>>, FieldElement<RatFuncN<F>>) {
        let f = self.chi1.curve_poly().clone();
        let s = |x: &RatFuncN<F>| x.shift_int(k);
        (self.chi1.map_embedding(&f, s), self.chi2.map_embedding(&f, s))
    }

    /// `χ₁(n)`, `χ₂(n)` at an integer `n`; a coefficient pole is a domain error.
    pub fn at(&self, n: i64) -> Result<(FieldElement<F>, FieldElement<F>)> {
        let f: Arc<Poly<F, Z>> = self.curve.f_shared();
        let dom = |_| Error::Domain { n, what: "χ has a coefficient pole".into() };
        let ev = |x: &RatFuncN<F>| eval_n(x, n);
        Ok((self.chi1.try_map(&f, ev).map_err(dom)?, self.chi2.try_map(&f, ev).map_err(dom)?))
    }
}

/// Expansion coefficients `χ₁ = b₀ + b₁z + …`, `χ₂ = 1/z + e₀ + e₁z + …`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesCoeffs<F: Field> {
    pub b0: RatFuncN<F>,
    pub b1: RatFuncN<F>,
    pub e0: RatFuncN<F>,
    pub e1: RatFuncN<F>,
}

/// Closed forms of `b₀, b₁, e₀, e₁` in terms of `a`, `γ`.
pub fn series_coeffs_closed<F: Field>(
    params: &ParameterSequences<F>,
    curve: &CurveParams<F>,
) -> Result<SeriesCoeffs<F>> {
    type K<F> = RatFuncN<F>;
    let g = &params.gamma;
    let a = &params.a;
    let (gm, gp) = (g.shift_int(-1), g.shift_int(1));
    let k = |v: i64| K::<F>::from_i64(v);
    let fg = f_of_gamma(params, curve);
    let a2_minus_f = a.clone() * a - &fg;
    let lo = nonzero(gm.clone() - g, "γ(n-1) - γ(n)")?;
    let hi = nonzero(g.clone() - &gp, "γ(n) - γ(n+1)")?;
    let g = nonzero(g.clone(), "γ(n)")?;
    let gp = nonzero(gp, "γ(n+1)")?;
    let g2 = g.clone() * &g;
    let c1 = K::<F>::embed(curve.c1());
    let c2 = K::<F>::embed(curve.c2());

    let b0 = gm.clone() * &gp * &(-a2_minus_f.clone()) / (k(4) * &lo * &hi * &g2);
    let b1 = gm * &a2_minus_f / (k(4) * &lo * &g2 * &g);
    let inner = (a.shift_int(1) - &k(1)) * &g + &((a.clone() + &k(1)) * &gp);
    let e0 = (c1.clone() / k(2) + &(k(1) / g.clone()) - &(a.clone() / g.clone()) + &(inner / (hi * &gp)))
        / k(2);
    let e1_num = k(8) - &(k(8) * a) + &(k(4) * &c1 * &g) - &((c1.clone() * &c1 - &(k(4) * &c2)) * &g2);
    let e1 = e1_num / (k(16) * &g2);
    Ok(SeriesCoeffs { b0, b1, e0, e1 })
}

/// The same coefficients read off the expansions of `χ₁`, `χ₂` at `Q`,
/// together with `Res_Q χ₂`.
pub fn series_coeffs_expanded<F: Field>(chis: &ChiPair<F>) -> Result<(SeriesCoeffs<F>, RatFuncN<F>)> {
    let s1: LaurentSeries<RatFuncN<F>> = expand_at_q(&chis.chi1, 1)?;
    let s2 = expand_at_q(&chis.chi2, 1)?;
    let [res, e0, e1]: [RatFuncN<F>; 3] = s2.coeff_range(-1, 1)?.try_into().expect("three coefficients");
    let [b0, b1]: [RatFuncN<F>; 2] = s1.coeff_range(0, 1)?.try_into().expect("two coefficients");
    if s1.lowest() < 0 {
        return Err(Error::Verification("χ₁ has a pole at Q".into()));
    }
    Ok((SeriesCoeffs { b0, b1, e0, e1 }, res))
}

/// Which of the two points over a given `z` a check concerns.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Sheet {
    /// `(γ, +√F(γ))`
    P,
    /// `(γ, -√F(γ))`
    SigmaP,
}

impl Sheet {
    fn sign(self) -> i64 {
        match self {
            Sheet::P => 1,
            Sheet::SigmaP => -1,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum KnConstraint {
    /// `Res χ₁ = a_j(n) Res χ₂` at `P(n)`, `σP(n)`, with `Res χ₂` equal to
    /// `(a(n) ∓ √F(γ(n)))/2`.
    Residue,
    /// `χ₁(n, ·)` vanishes at both points over `γ(n+1)`.
    DeterminantZero,
    /// `α_j(n+1) χ(n, P_j(n+1)) = 0`.
    AlphaDynamics,
}

impl fmt::Display for KnConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KnConstraint::Residue => "residue relation",
            KnConstraint::DeterminantZero => "determinant zero",
            KnConstraint::AlphaDynamics => "alpha dynamics",
        })
    }
}

/// One evaluated constraint. `n` is `None` for a symbolic identity in `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct KnCheck {
    pub n: Option<i64>,
    pub constraint: KnConstraint,
    pub sheet: Sheet,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct KnReport {
    pub checks: Vec<KnCheck>,
}

impl KnReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &KnCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// The first failure as an error naming `n` and the constraint.
    pub fn into_result(self) -> Result<Self> {
        if let Some(c) = self.failures().next() {
            return Err(Error::Constraint {
                n: c.n.unwrap_or(0),
                constraint: c.constraint.to_string(),
                detail: c.detail.clone(),
            });
        }
        Ok(self)
    }
}

/// `χ(n + k)`, `γ(n + k)`, `a(n + k)` over some field `G`.
struct Slice<G: Field> {
    chi1: FieldElement<G>,
    chi2: FieldElement<G>,
    gamma: G,
    a: G,
}

/// Evaluates the three constraints at one `n`; `slice(k)` supplies the data
/// at `n + k`. A degeneracy is returned as `Err(description)`.
fn constraints_at<G: Field>(
    slice: impl Fn(i64) -> Result<Slice<G>>,
    f: &Poly<G, Z>,
    n: Option<i64>,
) -> Result<std::result::Result<Vec<KnCheck>, String>> {
    let (sm, s0, sp) = (slice(-1)?, slice(0)?, slice(1)?);
    if s0.gamma.is_zero() || sp.gamma.is_zero() {
        return Ok(Err("γ vanishes at n or n+1".into()));
    }
    if s0.gamma == sp.gamma || s0.gamma == sm.gamma {
        return Ok(Err("γ(n) coincides with a neighbour".into()));
    }
    let (f0, fp) = (f.eval(&s0.gamma), f.eval(&sp.gamma));
    if f0.is_zero() || fp.is_zero() {
        return Ok(Err("γ lands on a branch point of the curve".into()));
    }
    let mut out = Vec::new();
    let mut push = |constraint, sheet, ok: bool, detail: String| {
        out.push(KnCheck { n, constraint, sheet, passed: ok, detail })
    };
    let pole = |e: Error| e;

    for sheet in [Sheet::P, Sheet::SigmaP] {
        let sgn = G::from_i64(sheet.sign());
        // (i) at P_j(n)
        let w = QuadExt::sqrt_of(f0.clone()).scale(&sgn);
        let a_j = sm.chi2.eval_at(&s0.gamma, &w).map_err(pole)?.neg();
        let r1 = s0.chi1.residue_at(&s0.gamma, &w)?;
        let r2 = s0.chi2.residue_at(&s0.gamma, &w)?;
        let half = G::from_i64(2).checked_inv().expect("characteristic zero");
        let expected_r2 = w.base(s0.a.clone()).sub(&w).scale(&half);
        let lhs = r1.sub(&a_j.mul(&r2));
        let ok = lhs.is_zero() && r2 == expected_r2;
        push(
            KnConstraint::Residue,
            sheet,
            ok,
            format!("Res χ₁ - a_j Res χ₂ = {}; Res χ₂ = {} (expected {})", lhs, r2, expected_r2),
        );

        // (ii) and (iii) at P_j(n+1)
        let wp = QuadExt::sqrt_of(fp.clone()).scale(&sgn);
        let v1 = s0.chi1.eval_at(&sp.gamma, &wp)?;
        push(KnConstraint::DeterminantZero, sheet, v1.is_zero(), format!("χ₁(n, ·) = {}", v1));

        // α_j(n+1) is proportional to (Res χ₁(n+1), Res χ₂(n+1)) at P_j(n+1).
        let q1 = sp.chi1.residue_at(&sp.gamma, &wp)?;
        let q2 = sp.chi2.residue_at(&sp.gamma, &wp)?;
        if q1.is_zero() && q2.is_zero() {
            return Ok(Err("residues at P_j(n+1) vanish, α_j(n+1) undetermined".into()));
        }
        let v2 = s0.chi2.eval_at(&sp.gamma, &wp)?;
        let first = q2.mul(&v1);
        let second = q1.add(&q2.mul(&v2));
        push(
            KnConstraint::AlphaDynamics,
            sheet,
            first.is_zero() && second.is_zero(),
            format!("α χ = ({}, {})", first, second),
        );
    }
    Ok(Ok(out))
}

/// Checks the constraints for the pair built from `params` at every `n` in
/// the window.
pub fn check_kn_constraints<F: Field>(
    params: &ParameterSequences<F>,
    curve: &CurveParams<F>,
    window: std::ops::RangeInclusive<i64>,
) -> Result<KnReport> {
    check_kn_window(&chi_pair(params, curve)?, window)
}

/// As [`check_kn_constraints`] for a given (possibly altered) pair.
pub fn check_kn_window<F: Field>(chis: &ChiPair<F>, window: std::ops::RangeInclusive<i64>) -> Result<KnReport> {
    let f: Poly<F, Z> = chis.curve.f_poly();
    let mut report = KnReport::default();
    for n in window {
        chis.params.check_domain(n)?;
        let slice = |k: i64| -> Result<Slice<F>> {
            let (chi1, chi2) = chis.at(n + k)?;
            let dom = |_| Error::Domain { n, what: format!("parameter pole at n = {}", n + k) };
            Ok(Slice {
                chi1,
                chi2,
                gamma: eval_n(&chis.params.gamma, n + k).map_err(dom)?,
                a: eval_n(&chis.params.a, n + k).map_err(dom)?,
            })
        };
        match constraints_at(slice, &f, Some(n))? {
            Ok(checks) => report.checks.extend(checks),
            Err(what) => return Err(Error::Domain { n, what }),
        }
    }
    Ok(report)
}

/// The constraints as identities of rational functions of `n`, with the
/// square roots adjoined symbolically.
pub fn check_kn_symbolic<F: Field>(chis: &ChiPair<F>) -> Result<KnReport> {
    let f: Poly<RatFuncN<F>, Z> = chis.curve.f_poly();
    let slice = |k: i64| -> Result<Slice<RatFuncN<F>>> {
        let (chi1, chi2) = chis.shifted(k);
        Ok(Slice { chi1, chi2, gamma: chis.params.gamma.shift_int(k), a: chis.params.a.shift_int(k) })
    };
    match constraints_at(slice, &f, None)? {
        Ok(checks) => Ok(KnReport { checks }),
        Err(what) => Err(Error::Degenerate(what)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio, Rational};
    use crate::SymbolicCoeff;

    type K = RatFuncN<Rational>;

    fn example() -> (ParameterSequences<Rational>, CurveParams<Rational>) {
        (ParameterSequences::polynomial_family(), CurveParams::new(rat(0), rat(1)).unwrap())
    }

    fn poly_n(c: &[i64]) -> K {
        K::from_poly(Poly::new(c.iter().map(|&v| rat(v)).collect()))
    }

    #[test]
    fn c_and_d_for_the_polynomial_family() {
        let (p, curve) = example();
        let (c, d) = cd_coeffs(&p, &curve).unwrap();
        assert_eq!(c.eval(&rat(2)).unwrap(), ratio(-3, 2));
        assert_eq!(d, poly_n(&[-1, -1]));
        assert_eq!(d.eval(&rat(2)).unwrap(), rat(-3));

        let sym = CurveParams::<SymbolicCoeff>::symbolic();
        let (_, d) = cd_coeffs(&ParameterSequences::polynomial_family(), &sym).unwrap();
        assert_eq!(d.to_string(), "-n - 1");
    }

    #[test]
    fn c_vanishes_where_a_squared_is_f_of_gamma() {
        // a ≡ 1, γ = n on F = z⁴ + z² - 2z + 1, where F(1) = 1 = a(1)².
        let curve = CurveParams::new(rat(-2), rat(1)).unwrap();
        let p = ParameterSequences::new(K::one(), poly_n(&[0, 1]));
        let (c, _) = cd_coeffs(&p, &curve).unwrap();
        assert_eq!(c.eval(&rat(1)).unwrap(), rat(0));
        assert_ne!(c.eval(&rat(2)).unwrap(), rat(0));
    }

    #[test]
    fn degenerate_gamma_rejected() {
        let (_, curve) = example();
        let p = ParameterSequences::new(poly_n(&[1, 1]), poly_n(&[5]));
        assert!(matches!(cd_coeffs(&p, &curve), Err(Error::Degenerate(_))));
    }

    #[test]
    fn chi_pair_structure() {
        let (p, curve) = example();
        let chis = chi_pair(&p, &curve).unwrap();
        assert!(chis.chi1.b().is_zero());
        assert_eq!(chis.chi1.sigma(), chis.chi1);
        let (_, res) = series_coeffs_expanded(&chis).unwrap();
        assert_eq!(res, K::one());
        // odd part of χ₂
        let odd = chis.chi2.sub(&chis.chi2.sigma());
        let fz = chis.chi1.curve_poly().clone();
        let z = FieldElement::z(fz.clone());
        let g = FieldElement::constant(p.gamma.clone(), fz.clone());
        let expected = FieldElement::w(fz.clone())
            .mul(&g)
            .checked_div(&z.mul(&g.sub(&z)))
            .unwrap();
        assert_eq!(odd, expected);
    }

    #[test]
    fn chi1_vanishes_over_next_gamma() {
        let (p, curve) = example();
        let chis = chi_pair(&p, &curve).unwrap();
        for n in 3..6 {
            let (chi1, _) = chis.at(n).unwrap();
            let z0 = rat(n + 1);
            let w = QuadExt::sqrt_of(curve.eval_f(&z0));
            assert!(chi1.eval_at(&z0, &w).unwrap().is_zero());
            assert!(chi1.eval_at(&z0, &w.neg()).unwrap().is_zero());
        }
    }

    #[test]
    fn closed_series_coefficients() {
        let (p, curve) = example();
        let s = series_coeffs_closed(&p, &curve).unwrap();
        assert_eq!(s.b0.eval(&rat(2)).unwrap(), ratio(9, 4));
        assert_eq!(s.b1.eval(&rat(2)).unwrap(), ratio(3, 8));
        assert_eq!(s.e1.eval(&rat(2)).unwrap(), rat(0));
        // b₀ = (n² - 1)(n³ - 2)/(4n)
        let expected = poly_n(&[1, 0, -1]) * &poly_n(&[2, 0, 0, -1]) / poly_n(&[0, 4]);
        assert_eq!(s.b0, expected);

        let sym = CurveParams::<SymbolicCoeff>::symbolic();
        let s = series_coeffs_closed(&ParameterSequences::polynomial_family(), &sym).unwrap();
        assert_eq!(s.e0.to_string(), "-n + (1/4*c1 - 3/2)");
        let at1 = s.e0.eval(&SymbolicCoeff::one()).unwrap();
        let c1_zero = at1.num().coeff(0).eval(&Rational::zero()).unwrap();
        assert_eq!(c1_zero, ratio(-5, 2));
    }

    #[test]
    fn closed_forms_match_expansion() {
        let curve = CurveParams::new(ratio(1, 3), ratio(-2, 5)).unwrap();
        let p = ParameterSequences::new(poly_n(&[2, -1, 3]), poly_n(&[1, 2, 1]));
        let chis = chi_pair(&p, &curve).unwrap();
        let (expanded, res) = series_coeffs_expanded(&chis).unwrap();
        assert_eq!(res, K::one());
        assert_eq!(expanded, series_coeffs_closed(&p, &curve).unwrap());
    }

    #[test]
    fn kn_window_passes() {
        let (p, curve) = example();
        let report = check_kn_constraints(&p, &curve, 5..=15).unwrap();
        assert_eq!(report.checks.len(), 11 * 6);
        assert!(report.all_passed(), "{:?}", report.failures().next());
    }

    #[test]
    fn kn_symbolic_identities() {
        let (p, curve) = example();
        let report = check_kn_symbolic(&chi_pair(&p, &curve).unwrap()).unwrap();
        assert!(report.all_passed(), "{:?}", report.failures().next());
    }

    #[test]
    fn perturbed_c_breaks_the_residue_relation() {
        let (p, curve) = example();
        let (c, d) = cd_coeffs(&p, &curve).unwrap();
        let bad = ChiPair::from_cd(&p, &curve, c + &K::one(), d).unwrap();
        let report = check_kn_window(&bad, 5..=8).unwrap();
        assert!(report.failures().any(|f| f.constraint == KnConstraint::Residue));
        let err = report.into_result().unwrap_err();
        assert!(matches!(err, Error::Constraint { n: 5, .. }));
    }

    #[test]
    fn colliding_gamma_is_a_domain_error() {
        // γ = n² - 3n + 5 has γ(1) = γ(2) = 3.
        let (_, curve) = example();
        let p = ParameterSequences::new(poly_n(&[1, 1]), poly_n(&[5, -3, 1]));
        let err = check_kn_constraints(&p, &curve, 0..=3).unwrap_err();
        assert!(matches!(err, Error::Domain { n: 1, .. }), "{}", err);
    }
}
