//! Property tests for the exact arithmetic and the operator algebra.

use dixq::arith::{poly_interpolate, ratfunc_normalize, ratio, rat, Poly, QuadExt, RatFunc, Rational, Z};
use dixq::curve::{Branch, CurveParams, FieldElement};
use dixq::operator::DifferenceOperator;
use dixq::parse::{parse_ratfunc, parse_symbolic};
use dixq::{PolyN, RatFuncN};
use num_traits::{One, Zero};
use proptest::prelude::*;

type K = RatFuncN<Rational>;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=5).prop_map(|(p, q)| ratio(p, q))
}

fn small_poly(max_len: usize) -> impl Strategy<Value = PolyN<Rational>> {
    prop::collection::vec(small_rational(), 0..=max_len).prop_map(Poly::new)
}

fn small_poly_z(max_len: usize) -> impl Strategy<Value = Poly<Rational, Z>> {
    prop::collection::vec(small_rational(), 0..=max_len).prop_map(Poly::new)
}

fn nonzero_poly(max_len: usize) -> impl Strategy<Value = PolyN<Rational>> {
    small_poly(max_len).prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = K> {
    (small_poly(4), nonzero_poly(3)).prop_map(|(p, q)| RatFunc::new(p, q).unwrap())
}

fn nonzero_ratfunc() -> impl Strategy<Value = K> {
    ratfunc().prop_filter("nonzero", |r| !r.is_zero())
}

fn operator() -> impl Strategy<Value = DifferenceOperator<Rational>> {
    prop::collection::vec((-2i64..=2, ratfunc()), 0..4).prop_map(DifferenceOperator::from_terms)
}

fn curve() -> CurveParams<Rational> {
    CurveParams::new(ratio(1, 2), rat(-1)).unwrap()
}

fn element() -> impl Strategy<Value = FieldElement<Rational>> {
    (small_poly_z(3), small_poly_z(3), 0usize..3).prop_map(|(a, b, k)| {
        let f = curve().f_shared();
        let den = Poly::monomial(rat(1), k);
        FieldElement::new(RatFunc::new(a, den.clone()).unwrap(), RatFunc::new(b, den).unwrap(), f)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratfunc_field_axioms(a in ratfunc(), b in ratfunc(), c in nonzero_ratfunc()) {
        prop_assert_eq!(a.clone() + &b, b.clone() + &a);
        prop_assert_eq!(a.clone() * &b, b.clone() * &a);
        prop_assert_eq!((a.clone() + &b) * &c, a.clone() * &c + &(b.clone() * &c));
        prop_assert_eq!(a.clone() * &c / c.clone(), a.clone());
        prop_assert_eq!(a.clone() - &a, K::zero());
        prop_assert_eq!(c.clone() / c.clone(), K::one());
    }

    #[test]
    fn normalization_is_invariant_under_common_factors(
        p in small_poly(4), q in nonzero_poly(3), g in nonzero_poly(3)
    ) {
        let r = ratfunc_normalize(p.clone(), q.clone()).unwrap();
        let s = ratfunc_normalize(p * &g, q * &g).unwrap();
        prop_assert_eq!(&r, &s);
        prop_assert!(r.den().lead().unwrap().is_one());
    }

    #[test]
    fn quadratic_sqrt_squares_back(d in small_rational(), x in small_rational(), y in small_rational()) {
        let s = QuadExt::sqrt_of(d.clone());
        prop_assert_eq!(s.mul(&s), s.base(d.clone()));
        let v = QuadExt::new(x, y, d);
        if let Some(inv) = v.checked_inv() {
            prop_assert_eq!(v.mul(&inv), v.base(rat(1)));
        }
        prop_assert_eq!(v.mul(&v.conj()), v.base(v.norm()));
    }

    #[test]
    fn interpolation_recovers_the_polynomial(p in small_poly(6), extra in 0usize..3) {
        let bound = p.degree().unwrap_or(0) + extra;
        let points: Vec<(Rational, Rational)> =
            (0..bound as i64 + 2).map(|n| (rat(n), p.eval(&rat(n)))).collect();
        prop_assert_eq!(poly_interpolate::<Rational, dixq::arith::N>(&points, bound).unwrap(), p);
    }

    #[test]
    fn composition_is_associative(a in operator(), b in operator(), c in operator()) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert!(a.commutator(&a).is_zero());
    }

    #[test]
    fn display_reparses(r in ratfunc()) {
        prop_assert_eq!(parse_ratfunc(&r.to_string(), &rat(0), &rat(0)).unwrap(), r);
    }

    #[test]
    fn symbolic_display_reparses(p in small_poly(3), q in nonzero_poly(2)) {
        let src = format!("({})*c1 + ({})/({})*c2", p, p, q);
        let r = parse_symbolic(&src).unwrap();
        prop_assert_eq!(parse_symbolic(&r.to_string()).unwrap(), r);
    }

    #[test]
    fn expansion_is_a_ring_homomorphism(x in element(), y in element()) {
        let order = 4;
        let ex = x.expand(Branch::Q, order + 8).unwrap();
        let ey = y.expand(Branch::Q, order + 8).unwrap();
        prop_assert_eq!(x.add(&y).expand(Branch::Q, order).unwrap(), ex.add(&ey).truncate(order));
        prop_assert_eq!(x.mul(&y).expand(Branch::Q, order).unwrap(), ex.mul(&ey).truncate(order));
    }

    #[test]
    fn sigma_is_an_involution(x in element(), y in element()) {
        prop_assert_eq!(x.sigma().sigma(), x.clone());
        prop_assert_eq!(x.mul(&y).sigma(), x.sigma().mul(&y.sigma()));
        let norm: RatFunc<Rational, Z> = x.norm();
        prop_assert_eq!(x.mul(&x.sigma()), FieldElement::from_rational_part(norm, x.curve_poly().clone()));
    }
}
