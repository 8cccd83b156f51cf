//! Exact coefficient domains, polynomials, resultants and truncated power series.

pub mod bivariate;
pub mod det;
pub mod factor;
pub mod hensel;
pub mod numfield;
pub mod poly;
pub mod resultant;
pub mod scalar;
pub mod series;

pub use factor::{factor_over, factor_rational};
pub use hensel::{hensel_lift_pair, weierstrass, BiPoly, Weierstrass};
pub use numfield::{field_extend, Embedding, Extension, FieldRef, NfElem, NumberField};
pub use poly::{squarefree_decompose, uni_gcd, UniPoly};
pub use resultant::{discriminant, resultant, resultant_field};
pub use scalar::{Field, Rational, Ring};
pub use series::{SeriesOrder, SeriesPoly, TruncSeries, EXACT};
