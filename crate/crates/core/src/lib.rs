//! Self-intersection numbers of curves on Fermat surfaces, computed exactly from
//! local invariants of plane curve germs.

pub mod cli;
pub mod curves;
pub mod error;
pub mod exact_arith;
pub mod fermat_selfint;
pub mod local_invariants;
pub mod puiseux;

pub use error::{ArithError, Error, Result};
pub use exact_arith::{Field, NfElem, Rational, Ring, SeriesOrder, TruncSeries, UniPoly};

/// Polynomials over ℚ.
pub type QPoly = UniPoly<Rational>;
/// Polynomials over a number field.
pub type NfPoly = UniPoly<NfElem>;
/// Truncated power series over ℚ.
pub type QSeries = TruncSeries<Rational>;
/// Truncated power series over a number field.
pub type NfSeries = TruncSeries<NfElem>;
