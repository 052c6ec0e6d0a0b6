//! Exact integer arithmetic: Bezout data, Smith normal form and the finite
//! abelian groups presented by integer matrices.
//!
//! Everything here works over [`BigInt`]; there is no fixed-width arithmetic
//! that could overflow silently.

mod bezout;
mod group;
mod snf;

pub use bezout::{bezout_vector, xgcd, BezoutPair};
pub use group::{cokernel, cokernel_of_alpha, AbelianGroup, FiniteAbelianGroup};
pub use snf::{smith_normal_form, IntMatrix, SmithForm};

pub use num_bigint::BigInt;

/// `lcm` of a list of positive integers; 1 for the empty list.
pub fn lcm_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::from(1), |acc, v| acc.lcm(v))
}
