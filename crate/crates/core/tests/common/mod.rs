//! Seeded random parameter draws shared by the integration tests.

#![allow(dead_code)]

use dixq::arith::{ratio, Poly, Rational};
use dixq::curve::CurveParams;
use dixq::spectral::ParameterSequences;
use dixq::RatFuncN;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small rational `p/q` with `|p| <= 5`, `1 <= q <= 4`.
pub fn small_rational(r: &mut ChaCha8Rng) -> Rational {
    ratio(r.gen_range(-5..=5), r.gen_range(1..=4))
}

/// A polynomial in `n` of degree at most 2 with small rational
/// coefficients, not constant.
pub fn small_poly(r: &mut ChaCha8Rng) -> RatFuncN<Rational> {
    loop {
        let c: Vec<Rational> = (0..3).map(|_| small_rational(r)).collect();
        let p = Poly::new(c);
        if p.degree().unwrap_or(0) >= 1 {
            return RatFuncN::from_poly(p);
        }
    }
}

pub struct Draw {
    pub params: ParameterSequences<Rational>,
    pub curve: CurveParams<Rational>,
}

/// A random smooth curve with random polynomial `a`, `γ`.
pub fn draw(r: &mut ChaCha8Rng) -> Draw {
    loop {
        let (c1, c2) = (small_rational(r), small_rational(r));
        let Ok(curve) = CurveParams::new(c1, c2) else { continue };
        let params = ParameterSequences::new(small_poly(r), small_poly(r));
        return Draw { params, curve };
    }
}
