//! Exact generating series of tautological invariants on Hilbert schemes of
//! points on surfaces.

/// Version string mixed into cache keys.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub mod algebra;
pub mod chern;
pub mod chi;
pub mod error;
pub mod fock;
pub mod scalar;
pub mod surface;
pub mod trees;
pub mod universal;

pub use algebra::{Poly, PolyRing, TruncatedSeries};
pub use error::Error;
pub use scalar::{Field, Rat, Scalar};
pub use surface::{CohClass, SurfaceModel};

/// Rational power series.
pub type Series = TruncatedSeries<Rat>;
/// Power series with coefficients polynomial in a rank parameter.
pub type PolySeries = TruncatedSeries<Poly<Rat>>;
