use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Extended Euclid: returns `(g, a, b)` with `a*m + b*n = g = gcd(|m|, |n|) > 0`.
pub fn xgcd(m: &BigInt, n: &BigInt) -> Result<(BigInt, BigInt, BigInt)> {
    if m.is_zero() && n.is_zero() {
        return Err(Error::DegenerateInput("xgcd(0, 0) is undefined".into()));
    }
    let (mut r0, mut r1) = (m.abs(), n.abs());
    let (mut a0, mut a1) = (BigInt::one(), BigInt::zero());
    let (mut b0, mut b1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let a2 = &a0 - &q * &a1;
        let b2 = &b0 - &q * &b1;
        r0 = std::mem::replace(&mut r1, r2);
        a0 = std::mem::replace(&mut a1, a2);
        b0 = std::mem::replace(&mut b1, b2);
    }
    if m.is_negative() {
        a0 = -a0;
    }
    if n.is_negative() {
        b0 = -b0;
    }
    Ok((r0, a0, b0))
}

/// Integers `s` with `sum s_i c_i = gcd(c)`, by a left fold of [`xgcd`].
///
/// A weight already divisible by the running gcd gets coefficient 0, so unit
/// weights produce a standard basis vector.
pub fn bezout_vector(c: &[BigInt]) -> Result<Vec<BigInt>> {
    let (first, rest) = c
        .split_first()
        .ok_or_else(|| Error::DegenerateInput("empty weight vector".into()))?;
    let mut g = first.abs();
    let mut s = vec![if first.is_negative() { -BigInt::one() } else { BigInt::one() }];
    for ci in rest {
        if g.is_zero() || !ci.is_multiple_of(&g) {
            let (g2, x, y) = xgcd(&g, ci)?;
            for si in s.iter_mut() {
                *si *= &x;
            }
            s.push(y);
            g = g2;
        } else {
            s.push(BigInt::zero());
        }
    }
    Ok(s)
}

/// Bezout data `a*m + b*n = 1` for coprime `m, n` with `a` canonical in `[1, n-1]`.
///
/// For `n = 1` the only residue is 0, so the pair is `(a, b) = (0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BezoutPair {
    pub a: BigInt,
    pub b: BigInt,
    pub m: BigInt,
    pub n: BigInt,
}

impl BezoutPair {
    pub fn new(m: &BigInt, n: &BigInt) -> Result<Self> {
        if !m.is_positive() || !n.is_positive() {
            return Err(Error::DegenerateInput(format!(
                "Bezout pair needs positive m, n (got {m}, {n})"
            )));
        }
        let (g, a, _) = xgcd(m, n)?;
        if !g.is_one() {
            return Err(Error::DegenerateInput(format!("gcd({m}, {n}) = {g} != 1")));
        }
        Ok(Self::with_representative(m, n, &a.mod_floor(n)))
    }

    /// Pair built from an arbitrary representative `a` of `m^{-1} mod n`;
    /// `b` is recomputed as `(1 - a m) / n`. Used to test choice independence.
    pub fn with_representative(m: &BigInt, n: &BigInt, a: &BigInt) -> Self {
        let b = (BigInt::one() - a * m) / n;
        BezoutPair { a: a.clone(), b, m: m.clone(), n: n.clone() }
    }

    pub fn holds(&self) -> bool {
        &self.a * &self.m + &self.b * &self.n == BigInt::one()
    }

    pub fn is_canonical(&self) -> bool {
        if self.n.is_one() {
            return self.a.is_zero();
        }
        self.a >= BigInt::one() && self.a < self.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn xgcd_examples() {
        assert_eq!(xgcd(&bi(3), &bi(2)).unwrap(), (bi(1), bi(1), bi(-1)));
        assert_eq!(xgcd(&bi(15), &bi(2)).unwrap(), (bi(1), bi(1), bi(-7)));
        assert!(matches!(xgcd(&bi(0), &bi(0)), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn xgcd_signs() {
        for (m, n) in [(-4, 6), (4, -6), (-4, -6), (0, -5), (7, 0)] {
            let (g, a, b) = xgcd(&bi(m), &bi(n)).unwrap();
            assert!(g > bi(0));
            assert_eq!(a * bi(m) + b * bi(n), g);
        }
    }

    #[test]
    fn canonical_pair() {
        let p = BezoutPair::new(&bi(2), &bi(3)).unwrap();
        assert_eq!((p.a.clone(), p.b.clone()), (bi(2), bi(-1)));
        assert!(p.holds() && p.is_canonical());
        let p = BezoutPair::new(&bi(15), &bi(2)).unwrap();
        assert_eq!((p.a.clone(), p.b.clone()), (bi(1), bi(-7)));
        let p = BezoutPair::new(&bi(7), &bi(1)).unwrap();
        assert_eq!((p.a.clone(), p.b.clone()), (bi(0), bi(1)));
        assert!(BezoutPair::new(&bi(3), &bi(3)).is_err());
    }

    #[test]
    fn bezout_vectors() {
        assert_eq!(bezout_vector(&[bi(1), bi(1)]).unwrap(), vec![bi(1), bi(0)]);
        for c in [vec![2, 3], vec![6, 10, 15], vec![5, 3], vec![4, 6, 9], vec![12]] {
            let c: Vec<BigInt> = c.into_iter().map(bi).collect();
            let s = bezout_vector(&c).unwrap();
            let dot: BigInt = s.iter().zip(&c).map(|(x, y)| x * y).sum();
            let g = c.iter().fold(bi(0), |acc, v| acc.gcd(v));
            assert_eq!(dot, g);
        }
        assert!(bezout_vector(&[]).is_err());
    }
}
