//! Reconstruction of polynomials and rational functions from samples.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{Field, Rational};
use super::linalg::kernel;
use super::modp::{ModP, Zp, PRIMES62};
use super::poly::{Poly, Variable, N};
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

fn check_distinct<F: Field>(points: &[(F, F)]) -> Result<()> {
    for (i, (x, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(y, _)| y == x) {
            return Err(Error::DuplicateNode(x.to_string()));
        }
    }
    Ok(())
}

/// The unique polynomial of degree `<= degree_bound` through the first
/// `degree_bound + 1` points; every further point must lie on it too.
pub fn poly_interpolate<F: Field, V: Variable>(
    points: &[(F, F)],
    degree_bound: usize,
) -> Result<Poly<F, V>> {
    let needed = degree_bound + 1;
    if points.len() < needed {
        return Err(Error::TooFewPoints { needed, got: points.len() });
    }
    check_distinct(points)?;
    let (fit, rest) = points.split_at(needed);

    // Newton divided differences.
    let xs: Vec<F> = fit.iter().map(|(x, _)| x.clone()).collect();
    let mut dd: Vec<F> = fit.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..needed {
        for i in (level..needed).rev() {
            let num = dd[i].clone() - &dd[i - 1];
            let den = xs[i].clone() - &xs[i - level];
            dd[i] = num / den;
        }
    }
    let mut p = Poly::constant(dd[needed - 1].clone());
    for i in (0..needed - 1).rev() {
        p = &(&p * &Poly::linear(-xs[i].clone())) + &Poly::constant(dd[i].clone());
    }

    if rest.iter().any(|(x, y)| p.eval(x) != *y) {
        return Err(Error::InconsistentInterpolation { bound: degree_bound });
    }
    Ok(p)
}

/// Cauchy interpolation: a rational function `p/q` with
/// `deg p + deg q <= cap` through every sample, with at least one sample
/// beyond the number of free coefficients.
///
/// The degrees are found from the images of the samples in `Z/p`, then `q`
/// and `p` are solved for exactly. Samples without an image in `Z/p` are
/// handled by the extended Euclidean algorithm over `F`.
pub fn rational_reconstruct<F: Field, V: Variable>(
    points: &[(F, F)],
    cap: usize,
) -> Result<RatFunc<F, V>> {
    check_distinct(points)?;
    if points.len() < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: points.len() });
    }
    let images: Option<Vec<(ModP, ModP)>> = points
        .iter()
        .map(|(x, y)| Some((ModP::new(x.modp_image()?), ModP::new(y.modp_image()?))))
        .collect();
    let found = match images {
        Some(images) => euclid_candidate::<ModP, V>(&images, cap).and_then(|(p, q)| {
            let (dn, dq) = (p.degree().unwrap_or(0), q.degree().unwrap_or(0));
            multimodular(points, cap, dn, dq).or_else(|| rational_with_degrees(points, dn, dq).ok())
        }),
        // Some sample has no image in Z/p.
        None => euclid_candidate::<F, V>(points, cap).and_then(|(p, q)| RatFunc::new(p, q).ok()),
    };
    found.ok_or(Error::ReconstructionFailed { cap })
}

/// The least-total-degree `(p, q)` in the remainder sequence of
/// `(∏(x - x_i), P)`, where `P` interpolates all samples. The sequence holds
/// a solution for every numerator/denominator degree split.
fn euclid_candidate<F: Field, V: Variable>(points: &[(F, F)], cap: usize) -> Option<(Poly<F, V>, Poly<F, V>)> {
    let count = points.len();
    let interp: Poly<F, V> = poly_interpolate(points, count - 1).ok()?;
    let mut modulus: Poly<F, V> = Poly::one();
    for (x, _) in points {
        modulus = &modulus * &Poly::linear(-x.clone());
    }
    let limit = cap.min(count - 2);
    let (mut r0, mut r1) = (modulus, interp);
    let (mut t0, mut t1): (Poly<F, V>, Poly<F, V>) = (Poly::zero(), Poly::one());
    type Candidate<F, V> = (usize, Poly<F, V>, Poly<F, V>);
    let mut best: Option<Candidate<F, V>> = None;
    loop {
        let total = r1.degree().unwrap_or(0) + t1.degree().unwrap_or(0);
        let better = best.as_ref().is_none_or(|(d, _, _)| total < *d);
        if total <= limit && better && points.iter().all(|(x, _)| !t1.eval(x).is_zero()) {
            best = Some((total, r1.clone(), t1.clone()));
        }
        if r1.is_zero() {
            break;
        }
        let (q, r) = r0.div_rem(&r1)?;
        let t = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    best.map(|(_, p, q)| (p, q))
}

/// The rational function with `deg p <= dn`, `deg q <= dq` through every
/// sample. `q` spans the kernel of the divided differences of order
/// `dn + 1 … dn + dq + 1` of `y·q(x)`; `p` then interpolates `y·q(x)`.
pub fn rational_with_degrees<F: Field, V: Variable>(
    points: &[(F, F)],
    dn: usize,
    dq: usize,
) -> Result<RatFunc<F, V>> {
    let used = dn + dq + 2;
    if points.len() < used {
        return Err(Error::TooFewPoints { needed: used, got: points.len() });
    }
    check_distinct(points)?;
    let xs: Vec<F> = points[..used].iter().map(|(x, _)| x.clone()).collect();
    // columns[l][j - dn - 1] = f[x_0 … x_j] of y·x^l
    let columns: Vec<Vec<F>> = (0..=dq)
        .map(|l| {
            let mut dd: Vec<F> = points[..used].iter().map(|(x, y)| y.clone() * &pow(x, l)).collect();
            for level in 1..used {
                for i in (level..used).rev() {
                    dd[i] = (dd[i].clone() - &dd[i - 1]) / (xs[i].clone() - &xs[i - level]);
                }
            }
            dd.split_off(dn + 1)
        })
        .collect();
    let rows: Vec<Vec<F>> = (0..=dq).map(|j| columns.iter().map(|c| c[j].clone()).collect()).collect();
    let ker = kernel(&rows, dq + 1);
    if ker.len() != 1 {
        return Err(Error::ReconstructionFailed { cap: dn + dq });
    }
    with_denominator(points, Poly::new(ker[0].clone()), dn).ok_or(Error::ReconstructionFailed { cap: dn + dq })
}

/// `p/q` with `p` of degree `<= dn` interpolating `y·q(x)` at every sample.
fn with_denominator<F: Field, V: Variable>(points: &[(F, F)], q: Poly<F, V>, dn: usize) -> Option<RatFunc<F, V>> {
    if points.iter().any(|(x, _)| q.eval(x).is_zero()) {
        return None;
    }
    let values: Vec<(F, F)> = points.iter().map(|(x, y)| (x.clone(), y.clone() * &q.eval(x))).collect();
    let p = poly_interpolate(&values, dn).ok()?;
    RatFunc::new(p, q).ok()
}

type DenominatorImage = fn(&[(Rational, Rational)], usize, usize, usize) -> Option<(u64, Vec<u64>)>;

/// Coefficients of the monic denominator modulo `P`, when the candidate in
/// `Z/P` has the expected degrees.
fn denominator_mod<const P: u64>(
    points: &[(Rational, Rational)],
    cap: usize,
    dn: usize,
    dq: usize,
) -> Option<(u64, Vec<u64>)> {
    let images = points
        .iter()
        .map(|(x, y)| Some((Zp::<P>::from_rational_checked(x)?, Zp::<P>::from_rational_checked(y)?)))
        .collect::<Option<Vec<_>>>()?;
    let (p, q) = euclid_candidate::<Zp<P>, N>(&images, cap)?;
    if p.degree().unwrap_or(0) != dn || q.degree().unwrap_or(0) != dq {
        return None;
    }
    Some((P, q.monic().coeffs().iter().map(|c| c.value()).collect()))
}

macro_rules! denominator_images {
    ($($i:literal),*) => {
        [$(denominator_mod::<{ PRIMES62[$i] }> as DenominatorImage),*]
    };
}

const DENOMINATOR_IMAGES: [DenominatorImage; 24] =
    denominator_images!(0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23);

/// Exact reconstruction for rational samples: the monic denominator is
/// recovered from its images modulo several primes by Chinese remaindering
/// and rational reconstruction, confirmed by one further prime, and the
/// numerator is then interpolated exactly.
fn multimodular<F: Field, V: Variable>(points: &[(F, F)], cap: usize, dn: usize, dq: usize) -> Option<RatFunc<F, V>> {
    let rational: Vec<(Rational, Rational)> =
        points.iter().map(|(x, y)| Some((x.as_rational()?, y.as_rational()?))).collect::<Option<_>>()?;
    let mut modulus = BigInt::one();
    let mut acc = vec![BigInt::zero(); dq + 1];
    let mut candidate: Option<Vec<Rational>> = None;
    for image in DENOMINATOR_IMAGES {
        let Some((p, residues)) = image(&rational, cap, dn, dq) else { continue };
        let pb = BigInt::from(p);
        if let Some(c) = &candidate {
            let agrees = c.iter().zip(&residues).all(|(ci, r)| {
                (ci.numer() - ci.denom() * BigInt::from(*r)).mod_floor(&pb).is_zero()
            });
            if agrees {
                let q = Poly::new(c.iter().map(F::from_rational).collect());
                return with_denominator(points, q, dn);
            }
        }
        let inv = modulus.mod_floor(&pb).modpow(&(&pb - 2u32), &pb);
        for (a, r) in acc.iter_mut().zip(&residues) {
            let t = ((BigInt::from(*r) - &*a) * &inv).mod_floor(&pb);
            *a += &modulus * t;
        }
        modulus *= &pb;
        candidate = acc.iter().map(|a| rational_from_residue(a, &modulus)).collect();
    }
    None
}

/// The fraction `a/b` with `|a|, |b| <= sqrt(m/2)` and `a ≡ b·r (mod m)`.
fn rational_from_residue(r: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}

fn pow<F: Field>(x: &F, e: usize) -> F {
    (0..e).fold(F::one(), |acc, _| acc * x)
}
