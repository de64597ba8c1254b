//! The Bar-Natan skein module of the solid torus `A×I` with boundary `2n`
//! parallel longitudes, computed exactly over the integers.
//!
//! * [`matchings`]: crossingless matchings, arrows, order, distance.
//! * [`skein`]: dotted configurations, Type I/II relations, the graded
//!   quotient, and the constructive rewriting lemmas.
//! * [`homology`]: cell bases of sphere products, inclusion-induced maps,
//!   the image/kernel comparisons, and the comultiplication.
//! * [`springer`]: the ring `Z[x_1..x_2n]/(x_i^2, e_1..e_2n)` and the
//!   Frobenius obstruction.
//! * [`intlinalg`]: Hermite/Smith normal forms and lattices.

pub mod error;
pub mod homology;
pub mod intlinalg;
pub mod matchings;
pub mod serde_int;
pub mod skein;
pub mod springer;

pub use error::{Error, Result};
