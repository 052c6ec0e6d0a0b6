//! Divisor class groups of graded hypersurfaces `k[z, x_1, ..., x_d] / (z^n - g)`.
//!
//! The ring is presented as a generalized section ring `R(X, D)` over the
//! weighted projective space `X = Proj k[x_1, ..., x_d]`, where `D` is an
//! explicit rational-coefficient Weil divisor built from Bezout data for the
//! weights and for `(deg g, n)`. The class group then falls out of the exact
//! sequence `0 -> Z -> Cl(X) -> Cl(R) -> coker(alpha) -> 0`, and every claim
//! along the way (section bases, generator ideals `(z, h_t)`, their relations)
//! is re-checked degree by degree with exact linear algebra.
//!
//! Module map:
//!
//! * [`exactmath`]: Bezout data, Smith normal form, finite abelian groups.
//! * [`wpoly`]: fields, weighted polynomials, univariate factoring helpers.
//! * [`hyperring`]: normal forms and graded components of `R`.
//! * [`qdivisor`]: the prime-component registry and Q-divisor calculus.
//! * [`sections`]: global sections and the section-ring presentation.
//! * [`classgroup`]: hypothesis checks and the class group pipeline.
//! * [`oracle`]: independent brute-force cross-checks.
//! * [`job`]: polynomial parser, job files and reports used by the CLI.

pub mod classgroup;
pub mod error;
pub mod exactmath;
pub mod hyperring;
pub mod job;
pub mod oracle;
pub mod qdivisor;
pub mod sections;
pub mod wpoly;

pub use error::{Error, Result};
