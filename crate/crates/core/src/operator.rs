//! Difference operators `Σ u_i(n) T^i` with `T f(n) = f(n + 1)`.

use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::linalg::{kernel, rref};
use crate::arith::{Field, QuadExt, Rational};
use crate::error::{Error, Result};
use crate::RatFuncN;

/// A finitely supported operator; coefficients at both ends of the support
/// are nonzero, and the zero operator has empty support.
#[derive(Clone, PartialEq)]
pub struct DifferenceOperator<F: Field> {
    low: i64,
    coeffs: Vec<RatFuncN<F>>,
}

impl<F: Field> DifferenceOperator<F> {
    fn from_raw(low: i64, mut coeffs: Vec<RatFuncN<F>>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(coeffs.len());
        coeffs.drain(..lead);
        if coeffs.is_empty() {
            return Self::zero();
        }
        DifferenceOperator { low: low + lead as i64, coeffs }
    }

    pub fn zero() -> Self {
        DifferenceOperator { low: 0, coeffs: Vec::new() }
    }

    pub fn identity() -> Self {
        Self::monomial(RatFuncN::one(), 0)
    }

    /// `T^k`
    pub fn shift(k: i64) -> Self {
        Self::monomial(RatFuncN::one(), k)
    }

    /// `u(n) T^i`
    pub fn monomial(u: RatFuncN<F>, i: i64) -> Self {
        Self::from_raw(i, vec![u])
    }

    /// Multiplication by `u(n)`.
    pub fn multiplication(u: RatFuncN<F>) -> Self {
        Self::monomial(u, 0)
    }

    /// Sum of `u_i T^i` over the given terms; repeated degrees add up.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, RatFuncN<F>)>) -> Self {
        let terms: Vec<_> = terms.into_iter().collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let hi = terms.iter().map(|t| t.0).max().expect("nonempty");
        let mut coeffs = vec![RatFuncN::zero(); (hi - lo + 1) as usize];
        for (i, u) in terms {
            let slot = &mut coeffs[(i - lo) as usize];
            *slot = slot.clone() + &u;
        }
        Self::from_raw(lo, coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `(i_min, i_max)`, or `None` for the zero operator.
    pub fn support(&self) -> Option<(i64, i64)> {
        if self.is_zero() {
            None
        } else {
            Some((self.low, self.low + self.coeffs.len() as i64 - 1))
        }
    }

    pub fn coeff(&self, i: i64) -> RatFuncN<F> {
        let k = i - self.low;
        if k < 0 || k >= self.coeffs.len() as i64 {
            RatFuncN::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// Nonzero terms `(i, u_i)` from the lowest degree up.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &RatFuncN<F>)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i64, c))
    }

    /// `(u T^i)(v T^j) = u(n) v(n + i) T^{i+j}`.
    pub fn compose(&self, rhs: &Self) -> Self {
        let (Some((a0, a1)), Some((b0, b1))) = (self.support(), rhs.support()) else {
            return Self::zero();
        };
        let lo = a0 + b0;
        let mut out = vec![RatFuncN::<F>::zero(); (a1 + b1 - lo + 1) as usize];
        for (i, u) in self.terms() {
            for (j, v) in rhs.terms() {
                let slot = &mut out[(i + j - lo) as usize];
                *slot = slot.clone() + &(u.clone() * &v.shift_int(i));
            }
        }
        Self::from_raw(lo, out)
    }

    /// `[L, M] = LM - ML`
    pub fn commutator(&self, rhs: &Self) -> Self {
        self.compose(rhs).sub(&rhs.compose(self))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::from_terms(self.terms().chain(rhs.terms()).map(|(i, u)| (i, u.clone())))
    }

    pub fn neg(&self) -> Self {
        DifferenceOperator { low: self.low, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Left multiplication by `u(n)`.
    pub fn scale(&self, u: &RatFuncN<F>) -> Self {
        Self::from_raw(self.low, self.coeffs.iter().map(|c| c.clone() * u).collect())
    }

    pub fn scale_const(&self, c: &F) -> Self {
        self.scale(&RatFuncN::constant(c.clone()))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(), |acc, _| acc.compose(self))
    }

    /// Apply a map to every coefficient.
    pub fn try_map<G: Field>(&self, f: impl Fn(&RatFuncN<F>) -> Result<RatFuncN<G>>) -> Result<DifferenceOperator<G>> {
        Ok(DifferenceOperator::from_raw(self.low, self.coeffs.iter().map(f).collect::<Result<_>>()?))
    }

    /// True when every coefficient is a polynomial in `n`.
    pub fn has_polynomial_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_polynomial())
    }

    /// `(i, u_i(n))` for every nonzero term, highest degree first.
    pub fn to_canonical(&self) -> Vec<(i64, String)> {
        self.terms().rev().map(|(i, u)| (i, u.to_string())).collect()
    }

    /// Coefficient values at the integer `n`, indexed by degree from the low
    /// end of the support.
    pub fn values_at(&self, n: i64) -> Result<Vec<F>> {
        let x = F::from_i64(n);
        self.coeffs
            .iter()
            .map(|c| c.eval(&x).map_err(|_| Error::Domain { n, what: "operator coefficient has a pole".into() }))
            .collect()
    }

    pub fn latex(&self) -> String {
        render(self, true)
    }
}

fn render<F: Field>(op: &DifferenceOperator<F>, latex: bool) -> String {
    if op.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, u) in op.terms().rev() {
        let shift = match (i, latex) {
            (0, _) => String::new(),
            (1, _) => "T".into(),
            (_, true) => format!("T^{{{}}}", i),
            (_, false) => format!("T^{}", i),
        };
        let body = if latex { u.latex() } else { u.to_string() };
        let (neg, body) = match body.strip_prefix('-') {
            Some(rest) if u.is_atomic() => (true, rest.to_string()),
            _ => (false, body),
        };
        let factor = if u.is_atomic() {
            body
        } else if latex {
            format!("\\left({}\\right)", body)
        } else {
            format!("({})", body)
        };
        let term = match (shift.is_empty(), factor.as_str()) {
            (true, _) => factor,
            (false, "1") => shift,
            (false, _) if latex => format!("{} {}", factor, shift),
            (false, _) => format!("{}*{}", factor, shift),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&term);
    }
    out
}

impl<F: Field> fmt::Display for DifferenceOperator<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, false))
    }
}

impl<F: Field> fmt::Debug for DifferenceOperator<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DifferenceOperator({})", self)
    }
}

/// Scalars a sequence window can hold: a vector space over `F`.
pub trait WindowScalar<F: Field>: Clone + PartialEq + fmt::Display {
    fn zero_like(&self) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn scale(&self, c: &F) -> Self;
}

impl<F: Field> WindowScalar<F> for F {
    fn zero_like(&self) -> Self {
        F::zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        self.clone() + rhs
    }
    fn scale(&self, c: &F) -> Self {
        self.clone() * c
    }
}

impl<F: Field> WindowScalar<F> for QuadExt<F> {
    fn zero_like(&self) -> Self {
        QuadExt::zero_in(self.modulus().clone())
    }
    fn add(&self, rhs: &Self) -> Self {
        QuadExt::add(self, rhs)
    }
    fn scale(&self, c: &F) -> Self {
        QuadExt::scale(self, c)
    }
}

/// Values `ψ(start), ψ(start + 1), …`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeqWindow<S> {
    pub start: i64,
    pub values: Vec<S>,
}

impl<S> SeqWindow<S> {
    pub fn new(start: i64, values: Vec<S>) -> Self {
        SeqWindow { start, values }
    }

    /// Last index covered.
    pub fn end(&self) -> i64 {
        self.start + self.values.len() as i64 - 1
    }

    pub fn get(&self, n: i64) -> Option<&S> {
        if n < self.start {
            return None;
        }
        self.values.get((n - self.start) as usize)
    }
}

/// `(Lψ)(n) = Σ u_i(n) ψ(n + i)` at every `n` whose stencil fits in the
/// window.
pub fn apply_window<F: Field, S: WindowScalar<F>>(
    op: &DifferenceOperator<F>,
    psi: &SeqWindow<S>,
) -> Result<SeqWindow<S>> {
    let Some(first) = psi.values.first() else {
        return Err(Error::Window("empty input".into()));
    };
    let Some((lo, hi)) = op.support() else {
        return Ok(SeqWindow::new(psi.start, psi.values.iter().map(|v| v.zero_like()).collect()));
    };
    let (from, to) = (psi.start - lo, psi.end() - hi);
    if from > to {
        return Err(Error::Window(format!(
            "support [{}, {}] needs more than {} values",
            lo,
            hi,
            psi.values.len()
        )));
    }
    let mut out = Vec::with_capacity((to - from + 1) as usize);
    for n in from..=to {
        let us = op.values_at(n)?;
        let mut acc = first.zero_like();
        for (k, u) in us.iter().enumerate() {
            if u.is_zero() {
                continue;
            }
            let v = psi.get(n + lo + k as i64).expect("inside window");
            acc = acc.add(&v.scale(u));
        }
        out.push(acc);
    }
    Ok(SeqWindow::new(from, out))
}

/// `Q(λ, μ) = Σ q_{ij} λ^i μ^j` with rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct BcRelation {
    /// `((i, j), q_ij)` with `q_ij ≠ 0`, largest monomial first.
    pub terms: Vec<((u32, u32), Rational)>,
}

impl BcRelation {
    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms
            .iter()
            .find(|(m, _)| *m == (i, j))
            .map_or_else(Rational::zero, |(_, q)| q.clone())
    }

    pub fn has_monomial(&self, i: u32, j: u32) -> bool {
        !self.coeff(i, j).is_zero()
    }

    /// `2i + 3j` maximized over the terms.
    pub fn weighted_degree(&self) -> u32 {
        self.terms.iter().map(|((i, j), _)| 2 * i + 3 * j).max().unwrap_or(0)
    }

    /// `Q(L2, L3)`
    pub fn evaluate(&self, l2: &DifferenceOperator<Rational>, l3: &DifferenceOperator<Rational>) -> DifferenceOperator<Rational> {
        self.terms.iter().fold(DifferenceOperator::zero(), |acc, ((i, j), q)| {
            acc.add(&l2.pow(*i).compose(&l3.pow(*j)).scale_const(q))
        })
    }
}

impl fmt::Display for BcRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, ((i, j), q)) in self.terms.iter().enumerate() {
            let neg = q < &Rational::zero();
            let a = q.abs();
            let mut mono = Vec::new();
            match i {
                0 => {}
                1 => mono.push("lambda".to_string()),
                _ => mono.push(format!("lambda^{}", i)),
            }
            match j {
                0 => {}
                1 => mono.push("mu".to_string()),
                _ => mono.push(format!("mu^{}", j)),
            }
            let mono = mono.join("*");
            let body = match (mono.is_empty(), a.is_one()) {
                (true, _) => a.to_string(),
                (false, true) => mono,
                (false, false) => format!("{}*{}", a, mono),
            };
            match (k, neg) {
                (0, true) => write!(f, "-{}", body)?,
                (0, false) => write!(f, "{}", body)?,
                (_, true) => write!(f, " - {}", body)?,
                (_, false) => write!(f, " + {}", body)?,
            }
        }
        Ok(())
    }
}

/// Sampling controls for [`bc_relation`].
#[derive(Clone, Debug, PartialEq)]
pub struct BcOptions {
    /// First sample point.
    pub base: i64,
    /// Further attempts at shifted bases after a failed exact check.
    pub retries: u32,
    pub seed: u64,
}

impl Default for BcOptions {
    fn default() -> Self {
        BcOptions { base: 25, retries: 3, seed: 0 }
    }
}

/// A nonzero `Q` with `2i + 3j ≤ weighted_degree` and `Q(L2, L3) = 0`,
/// found from sampled coefficient values and then verified by exact
/// composition. When several relations exist the one with the largest
/// leading monomial (ordered by `μ`-degree, then `λ`-degree) is returned,
/// normalized to leading coefficient 1 and reduced against the others.
pub fn bc_relation(
    l2: &DifferenceOperator<Rational>,
    l3: &DifferenceOperator<Rational>,
    weighted_degree: u32,
    opts: &BcOptions,
) -> Result<BcRelation> {
    if !l2.commutator(l3).is_zero() {
        return Err(Error::InvalidArgument("operators do not commute".into()));
    }
    let mut monos: Vec<(u32, u32)> = (0..=weighted_degree / 3)
        .flat_map(|j| (0..=(weighted_degree - 3 * j) / 2).map(move |i| (i, j)))
        .collect();
    monos.sort_by_key(|&(i, j)| std::cmp::Reverse((j, i)));
    let ops: Vec<DifferenceOperator<Rational>> =
        monos.iter().map(|&(i, j)| l2.pow(i).compose(&l3.pow(j))).collect();
    let (lo, hi) = ops
        .iter()
        .filter_map(|o| o.support())
        .fold((0, 0), |(a, b), (c, d)| (a.min(c), b.max(d)));
    let width = (hi - lo + 1) as usize;
    let samples = monos.len() + width;

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut base = opts.base;
    for _ in 0..=opts.retries {
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(samples * width);
        for n in base..base + samples as i64 {
            let vals = ops.iter().map(|o| o.values_at(n)).collect::<Result<Vec<_>>>()?;
            for s in lo..=hi {
                let row = ops
                    .iter()
                    .zip(&vals)
                    .map(|(o, v)| match o.support() {
                        Some((a, b)) if a <= s && s <= b => v[(s - a) as usize].clone(),
                        _ => Rational::zero(),
                    })
                    .collect();
                rows.push(row);
            }
        }
        let mut basis = kernel(&rows, monos.len());
        if basis.is_empty() {
            return Err(Error::NoRelation(weighted_degree as i64));
        }
        rref(&mut basis);
        let q = &basis[0];
        let rel = BcRelation {
            terms: monos
                .iter()
                .zip(q)
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        };
        let check = monos
            .iter()
            .zip(&ops)
            .zip(q)
            .fold(DifferenceOperator::zero(), |acc, ((_, o), c)| acc.add(&o.scale_const(c)));
        if check.is_zero() {
            return Ok(rel);
        }
        base += rng.gen_range(1..=1000);
    }
    Err(Error::Verification("sampled relation failed exact composition at every base".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Poly};

    type Op = DifferenceOperator<Rational>;
    type K = RatFuncN<Rational>;

    fn n_plus(k: i64) -> K {
        K::from_poly(Poly::linear(rat(k)))
    }

    #[test]
    fn shift_rules() {
        let u = K::constant(rat(3));
        let v = n_plus(0);
        let lhs = Op::monomial(u.clone(), 1).compose(&Op::monomial(v.clone(), -1));
        assert_eq!(lhs, Op::multiplication(u * &n_plus(1)));
        let t_n = Op::shift(1).compose(&Op::multiplication(n_plus(0)));
        assert_eq!(t_n, Op::monomial(n_plus(1), 1));
        let l = Op::from_terms([(2, K::one()), (-1, n_plus(2))]);
        assert_eq!(l.compose(&Op::identity()), l);
    }

    #[test]
    fn commutators() {
        let c = Op::shift(1).commutator(&Op::multiplication(n_plus(0)));
        assert_eq!(c, Op::shift(1));
        let l = Op::from_terms([(1, n_plus(1)), (-1, n_plus(-3))]);
        assert!(l.commutator(&l.pow(2)).is_zero());
        assert_eq!(Op::zero().support(), None);
    }

    #[test]
    fn support_is_trimmed() {
        let l = Op::from_terms([(3, K::zero()), (1, n_plus(0)), (-2, K::zero())]);
        assert_eq!(l.support(), Some((1, 1)));
        assert_eq!(l.sub(&l), Op::zero());
    }

    #[test]
    fn display_forms() {
        let l = Op::from_terms([(2, K::one()), (1, n_plus(4) * &K::constant(rat(2))), (0, K::constant(rat(-3)))]);
        assert_eq!(l.to_string(), "T^2 + (2*n + 8)*T - 3");
        assert_eq!(l.latex(), "T^{2} + \\left(2 n + 8\\right) T - 3");
        assert_eq!(l.to_canonical()[1], (1, "2*n + 8".to_string()));
    }

    #[test]
    fn window_application() {
        let psi = SeqWindow::new(0, (0..10).map(rat).collect::<Vec<_>>());
        let out = apply_window(&Op::shift(2), &psi).unwrap();
        // (T²ψ)(n) = n + 2 wherever ψ(n + 2) is known.
        assert_eq!(out.start, -2);
        assert_eq!(out.end(), 7);
        assert!((-2..=7).all(|n| out.get(n) == Some(&rat(n + 2))));
        let id = apply_window(&Op::identity(), &psi).unwrap();
        assert_eq!(id, psi);
        let short = SeqWindow::new(0, vec![rat(1), rat(2)]);
        let wide = Op::from_terms([(1, K::one()), (-1, K::one())]);
        assert!(matches!(apply_window(&wide, &short), Err(Error::Window(_))));
    }

    #[test]
    fn relation_of_a_power() {
        let l = Op::from_terms([(1, K::one()), (0, n_plus(0)), (-1, K::constant(rat(2)))]);
        let rel = bc_relation(&l, &l.pow(2), 4, &BcOptions::default()).unwrap();
        assert_eq!(rel.to_string(), "mu - lambda^2");
    }

    #[test]
    fn relation_of_constants() {
        let two = Op::multiplication(K::constant(rat(2)));
        let three = Op::multiplication(K::constant(rat(3)));
        let rel = bc_relation(&two, &three, 2, &BcOptions::default()).unwrap();
        assert_eq!(rel.to_string(), "lambda - 2");
        let rel = bc_relation(&two, &three, 3, &BcOptions::default()).unwrap();
        assert_eq!(rel.to_string(), "mu - 3");
        assert!(rel.evaluate(&two, &three).is_zero());
    }
}
