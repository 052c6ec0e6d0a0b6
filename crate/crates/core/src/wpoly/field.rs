use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Coefficient arithmetic: the rationals or a prime field `F_p`.
///
/// Elements are always [`BigRational`]; over `F_p` they are the canonical
/// residues `0..p` with denominator 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::InvalidField(format!("{p} is not prime")))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    /// Maps a rational number into the field; fails over `F_p` when `p`
    /// divides the denominator.
    pub fn element(&self, x: &BigRational) -> Result<BigRational> {
        match self {
            Field::Rationals => Ok(x.clone()),
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                let den = x.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(Error::InvalidField(format!("{x} has no image in F_{p}")));
                }
                let inv = den.modpow(&(&p - 2u32), &p);
                Ok(BigRational::from_integer((x.numer() * inv).mod_floor(&p)))
            }
        }
    }

    pub fn from_int(&self, x: i64) -> BigRational {
        self.reduce(BigRational::from_integer(BigInt::from(x)))
    }

    /// Canonical representative of a value that is already integral over `F_p`.
    pub(crate) fn reduce(&self, x: BigRational) -> BigRational {
        match self {
            Field::Rationals => x,
            Field::Prime(p) => {
                debug_assert!(x.is_integer());
                let p = BigInt::from(*p);
                if x.numer().sign() != num_bigint::Sign::Minus && x.numer() < &p {
                    return x;
                }
                BigRational::from_integer(x.numer().mod_floor(&p))
            }
        }
    }

    // Integer operands skip the gcd normalization `Ratio` performs.
    pub fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_integer() && b.is_integer() {
            return self.reduce(BigRational::from_integer(a.numer() + b.numer()));
        }
        self.reduce(a + b)
    }

    pub fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_integer() && b.is_integer() {
            return self.reduce(BigRational::from_integer(a.numer() - b.numer()));
        }
        self.reduce(a - b)
    }

    pub fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_one() {
            return b.clone();
        }
        if b.is_one() {
            return a.clone();
        }
        if a.is_integer() && b.is_integer() {
            return self.reduce(BigRational::from_integer(a.numer() * b.numer()));
        }
        self.reduce(a * b)
    }

    pub fn neg(&self, a: &BigRational) -> BigRational {
        if a.is_integer() {
            return self.reduce(BigRational::from_integer(-a.numer()));
        }
        self.reduce(-a)
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        match self {
            Field::Rationals => a.recip(),
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                BigRational::from_integer(a.to_integer().modpow(&(&p - 2u32), &p))
            }
        }
    }

    pub fn pow(&self, a: &BigRational, e: i64) -> BigRational {
        let mut base = if e < 0 { self.inv(a) } else { a.clone() };
        let mut acc = BigRational::one();
        if base.is_one() {
            return acc;
        }
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// The coefficient field as declared by the user.
///
/// `AlgebraicallyClosed(base)` does arithmetic in `base`; the closure is only
/// consulted when counting factors of `1 + t^c` and for two-variable diagonal
/// polynomials, where the splitting is known without explicit factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
    AlgebraicallyClosed(Field),
}

impl FieldSpec {
    pub fn arithmetic(&self) -> Field {
        match self {
            FieldSpec::Rationals => Field::Rationals,
            FieldSpec::PrimeField(p) => Field::Prime(*p),
            FieldSpec::AlgebraicallyClosed(base) => *base,
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.arithmetic().characteristic()
    }

    pub fn is_algebraically_closed(&self) -> bool {
        matches!(self, FieldSpec::AlgebraicallyClosed(_))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "GF({p})"),
            FieldSpec::AlgebraicallyClosed(base) => write!(f, "closure({base})"),
        }
    }
}

fn parse_base(s: &str) -> Result<Field> {
    let t = s.trim();
    match t {
        "Q" | "QQ" => return Ok(Field::Rationals),
        _ => {}
    }
    let digits = if let Some(rest) = t.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
        rest
    } else if let Some(rest) = t.strip_prefix("F_") {
        rest
    } else if let Some(rest) = t.strip_prefix('F') {
        rest
    } else {
        return Err(Error::InvalidField(format!("unrecognized field '{s}'")));
    };
    let p: u64 = digits
        .trim()
        .parse()
        .map_err(|_| Error::InvalidField(format!("unrecognized field '{s}'")))?;
    Field::prime(p)
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q`, `GF(p)`, `F_p`, `Fp`, `closure(<base>)`, and the shorthands
    /// `C`, `Qbar`, `closure` for `closure(Q)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "C" | "Qbar" | "closure" => return Ok(FieldSpec::AlgebraicallyClosed(Field::Rationals)),
            _ => {}
        }
        if let Some(inner) = t.strip_prefix("closure(").and_then(|r| r.strip_suffix(')')) {
            return Ok(FieldSpec::AlgebraicallyClosed(parse_base(inner)?));
        }
        Ok(match parse_base(t)? {
            Field::Rationals => FieldSpec::Rationals,
            Field::Prime(p) => FieldSpec::PrimeField(p),
        })
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Convenience used by tests and the parser.
pub fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}
