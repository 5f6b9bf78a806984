pub mod arith;
pub mod builder;
pub mod cli;
pub mod curve;
pub mod eigen;
pub mod error;
pub mod golden;
pub mod operator;
pub mod parse;
pub mod spectral;

pub use arith::{Field, Rational};
pub use error::{Error, Result};

use arith::{Poly, RatFunc, C1, C2, N};

/// `Q(c1, c2)` with both curve coefficients kept as indeterminates.
pub type SymbolicCoeff = RatFunc<RatFunc<Rational, C1>, C2>;

/// Polynomial in the discrete variable `n`.
pub type PolyN<F> = Poly<F, N>;

/// Rational function of `n` over the coefficient field.
pub type RatFuncN<F> = RatFunc<F, N>;
