//! Factor counts and explicit factors of `1 + t^c`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{Field, FieldSpec};
use super::univariate::FpPoly;
use crate::error::{Error, Result};

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    for p in super::univariate::prime_factors(n) {
        result = result / p * (p - 1);
    }
    result
}

/// Order of `p` in `(Z/e)^*`; `gcd(p, e)` must be 1.
pub fn multiplicative_order(p: u64, e: u64) -> u64 {
    if e == 1 {
        return 1;
    }
    let base = p % e;
    let mut x = base;
    let mut k = 1;
    while x != 1 {
        x = (x as u128 * base as u128 % e as u128) as u64;
        k += 1;
        assert!(k <= e, "{p} is not invertible mod {e}");
    }
    k
}

/// Integer coefficients (low to high) of the cyclotomic polynomial `Phi_e`.
pub fn cyclotomic_polynomial(e: u64) -> Vec<BigInt> {
    // t^e - 1 divided by Phi_d for all proper divisors d
    let mut num = vec![BigInt::zero(); e as usize + 1];
    num[0] = -BigInt::one();
    num[e as usize] = BigInt::one();
    for d in divisors(e).into_iter().filter(|&d| d < e) {
        num = exact_div_monic(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn exact_div_monic(a: &[BigInt], d: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let dd = d.len() - 1;
    let mut q = vec![BigInt::zero(); r.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd].clone();
        for (j, b) in d.iter().enumerate() {
            r[k + j] -= &c * b;
        }
        q[k] = c;
    }
    debug_assert!(r.iter().all(Zero::is_zero));
    q
}

/// Orders `e` of the roots of `1 + t^c` in characteristic `char` (with
/// `char` not dividing `c`).
fn root_orders(c: u64, char: u64) -> Vec<u64> {
    if char == 2 {
        divisors(c)
    } else {
        divisors(2 * c).into_iter().filter(|e| c % e != 0).collect()
    }
}

/// Number of distinct irreducible factors of `1 + t^c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorCount {
    pub count: u64,
    /// `1 + t^c` has repeated factors (the characteristic divides `c`).
    pub repeated: bool,
}

/// Splits `c = c' * p^k` with `p` not dividing `c'`.
fn prime_to_part(c: u64, p: u64) -> (u64, u32) {
    let (mut c, mut k) = (c, 0);
    if p >= 2 {
        while c % p == 0 {
            c /= p;
            k += 1;
        }
    }
    (c, k)
}

pub fn count_factors_one_plus_tc(c: u64, field: &FieldSpec) -> Result<FactorCount> {
    if c == 0 {
        return Err(Error::DegenerateInput("1 + t^0 is constant".into()));
    }
    let char = field.characteristic();
    let (cp, k) = prime_to_part(c, char);
    let repeated = k > 0;
    let count = match field {
        FieldSpec::AlgebraicallyClosed(_) => cp,
        FieldSpec::Rationals => root_orders(c, 0).len() as u64,
        FieldSpec::PrimeField(p) => root_orders(cp, *p)
            .into_iter()
            .map(|e| euler_phi(e) / multiplicative_order(*p, e))
            .sum(),
    };
    Ok(FactorCount { count, repeated })
}

/// Monic irreducible factors of `1 + t^c` over `Q` or `F_p`, as rational
/// coefficient vectors (low to high) in canonical field representation.
///
/// Over `F_p` with `p | c` the polynomial is not squarefree and this fails.
pub fn factor_one_plus_tc(c: u64, field: Field) -> Result<Vec<Vec<BigRational>>> {
    if c == 0 {
        return Err(Error::DegenerateInput("1 + t^0 is constant".into()));
    }
    match field {
        Field::Rationals => Ok(root_orders(c, 0)
            .into_iter()
            .map(|e| cyclotomic_polynomial(e).into_iter().map(BigRational::from_integer).collect())
            .collect()),
        Field::Prime(p) => {
            if c % p == 0 {
                return Err(Error::RepeatedFactor(format!("1 + t^{c} over GF({p})")));
            }
            Ok(one_plus_tc_mod_p(c, p)
                .berlekamp_factor()
                .into_iter()
                .map(|h| h.coeffs().iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect())
        }
    }
}

/// `1 + t^c` over `F_p`, `c >= 1`.
pub fn one_plus_tc_mod_p(c: u64, p: u64) -> FpPoly {
    let mut coeffs = vec![0u64; c as usize + 1];
    coeffs[0] = 1;
    coeffs[c as usize] = 1;
    FpPoly::new(p, coeffs)
}
