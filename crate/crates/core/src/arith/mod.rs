//! Exact scalar, polynomial, rational-function and truncated-series arithmetic.

pub mod field;
pub mod interp;
pub mod linalg;
pub mod modp;
pub mod poly;
pub mod quadext;
pub mod ratfunc;
pub mod series;

pub use field::{rat, ratio, Embed, Field, Rational};
pub use interp::{poly_interpolate, rational_reconstruct, rational_with_degrees};
pub use modp::ModP;
pub use poly::{Poly, Variable, C1, C2, N, Z};
pub use quadext::QuadExt;
pub use ratfunc::{ratfunc_normalize, RatFunc};
pub use series::{series_sqrt, LaurentSeries};
