//! Exact rationals, sparse polynomials, truncated power series and the
//! small amount of linear algebra the fitting code needs.

pub mod linsolve;
pub mod poly;
pub mod series;

pub use linsolve::{interpolate, null_vector, rank, solve_exact};
pub use poly::{Poly, PolyRing};
pub use series::{binomial_series, lagrange_transform, BinomialKind, LagrangeForms, TruncatedSeries};
