//! Weighted multivariate polynomials and the factor bookkeeping for `g`.

pub mod cyclotomic;
mod factor;
mod field;
mod poly;
pub mod univariate;
mod weights;

pub use cyclotomic::{count_factors_one_plus_tc, factor_one_plus_tc, FactorCount};
pub use factor::{
    as_diagonal_binomial, dehomogenize_pair, split_diagonal_binomial, validate_factorization, Certification,
    Factor, FactoredForm,
};
pub use field::{int, is_prime, Field, FieldSpec};
pub use poly::{default_names, monomial_degree, Exponents, WPolynomial};
pub use weights::{count_monomials_of_degree, enumerate_monomials, normalize_weights, WeightedRing};
