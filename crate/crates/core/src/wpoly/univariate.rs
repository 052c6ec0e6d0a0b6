//! Dense univariate polynomials over `F_p` and `Q`: just enough to decide
//! irreducibility and to split `1 + t^c`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Polynomial over `F_p`, coefficients low to high, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero mod {p}");
    powmod(a, p - 2, p)
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut out = FpPoly { p, coeffs: coeffs.into_iter().map(|c| c % p).collect() };
        out.trim();
        out
    }

    /// Reduces integer coefficients mod `p`.
    pub fn from_ints(p: u64, coeffs: &[BigInt]) -> Self {
        let pb = BigInt::from(p);
        Self::new(p, coeffs.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = invmod(self.lead(), self.p);
        Self::new(self.p, self.coeffs.iter().map(|&c| mulmod(c, inv, self.p)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| (self.coeffs.get(i).unwrap_or(&0) + o.coeffs.get(i).unwrap_or(&0)) % self.p)
            .collect();
        Self::new(self.p, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| (self.coeffs.get(i).unwrap_or(&0) + self.p - o.coeffs.get(i).unwrap_or(&0)) % self.p)
            .collect();
        Self::new(self.p, c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let mut c = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + mulmod(a, b, self.p)) % self.p;
            }
        }
        Self::new(self.p, c)
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let mut r = self.coeffs.clone();
        let dd = d.deg();
        if r.len() < d.coeffs.len() {
            return (Self::zero(p), self.clone());
        }
        let inv = invmod(d.lead(), p);
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = mulmod(r[k + dd], inv, p);
            q[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in d.coeffs.iter().enumerate() {
                r[k + j] = (r[k + j] + p - mulmod(c, b, p)) % p;
            }
        }
        r.truncate(dd);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    /// `(g, s, t)` with `s * self + t * o = g`, `g` the monic gcd.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let c = Self::new(p, vec![invmod(r0.lead(), p)]);
        (r0.mul(&c), s0.mul(&c), t0.mul(&c))
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        let c = self.coeffs.iter().enumerate().skip(1).map(|(i, &a)| mulmod(a, i as u64 % p, p)).collect();
        Self::new(p, c)
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| (mulmod(acc, x, self.p) + c) % self.p)
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).deg() == 0
    }

    fn mulmod_poly(&self, o: &Self, f: &Self) -> Self {
        self.mul(o).rem(f)
    }

    /// `self^e mod f`.
    pub fn powmod(&self, mut e: u64, f: &Self) -> Self {
        let mut acc = Self::one(self.p).rem(f);
        let mut base = self.rem(f);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod_poly(&base, f);
            }
            base = base.mulmod_poly(&base, f);
            e >>= 1;
        }
        acc
    }

    /// Rabin's test.
    pub fn is_irreducible(&self) -> bool {
        let Some(k) = self.degree() else { return false };
        if k == 0 {
            return false;
        }
        if k == 1 {
            return true;
        }
        let f = self.monic();
        let x = Self::x(self.p);
        // frob[i] = x^{p^i} mod f
        let mut frob = vec![x.rem(&f)];
        for i in 1..=k {
            let next = frob[i - 1].powmod(self.p, &f);
            frob.push(next);
        }
        if frob[k] != x.rem(&f) {
            return false;
        }
        prime_factors(k as u64).into_iter().all(|q| {
            let h = frob[k / q as usize].sub(&x);
            f.gcd(&h).deg() == 0
        })
    }

    /// Distinct-degree factorization of a squarefree polynomial:
    /// `(d, number of irreducible factors of degree d)` for each degree that occurs.
    pub fn distinct_degree_counts(&self) -> Vec<(usize, usize)> {
        assert!(self.is_squarefree(), "distinct-degree factorization needs a squarefree input");
        let mut out = Vec::new();
        let mut f = self.monic();
        let x = Self::x(self.p);
        let mut h = x.rem(&f);
        let mut i = 0;
        while f.deg() > 0 {
            i += 1;
            if 2 * i > f.deg() {
                out.push((f.deg(), 1));
                break;
            }
            h = h.powmod(self.p, &f);
            let g = f.gcd(&h.sub(&x));
            if g.deg() > 0 {
                out.push((i, g.deg() / i));
                f = f.divrem(&g).0;
                h = h.rem(&f);
            }
        }
        out
    }

    /// Berlekamp subalgebra `{v : v^p = v mod f}` as a basis of polynomials.
    fn berlekamp_kernel(&self) -> Vec<FpPoly> {
        let p = self.p;
        let f = self.monic();
        let k = f.deg();
        let xp = Self::x(p).powmod(p, &f);
        // rows[i] = x^{ip} mod f, minus the identity
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(k);
        let mut cur = Self::one(p);
        for i in 0..k {
            let mut row = vec![0u64; k];
            for (j, &c) in cur.coeffs.iter().enumerate() {
                row[j] = c;
            }
            row[i] = (row[i] + p - 1) % p;
            rows.push(row);
            cur = cur.mulmod_poly(&xp, &f);
        }
        // left kernel of rows: solve v * M = 0, i.e. kernel of M^T
        let mut mt: Vec<Vec<u64>> = (0..k).map(|j| (0..k).map(|i| rows[i][j]).collect()).collect();
        kernel_mod_p(&mut mt, p).into_iter().map(|v| Self::new(p, v)).collect()
    }

    /// Number of distinct irreducible factors of a squarefree polynomial (Berlekamp).
    pub fn berlekamp_factor_count(&self) -> usize {
        self.berlekamp_kernel().len()
    }

    /// Monic irreducible factors of a squarefree polynomial, sorted.
    pub fn berlekamp_factor(&self) -> Vec<FpPoly> {
        assert!(self.is_squarefree(), "Berlekamp factoring needs a squarefree input");
        let p = self.p;
        let basis = self.berlekamp_kernel();
        let target = basis.len();
        let mut factors = vec![self.monic()];
        for v in &basis {
            if factors.len() == target {
                break;
            }
            if v.deg() == 0 {
                continue;
            }
            let mut next = Vec::new();
            for h in factors {
                if h.deg() <= 1 {
                    next.push(h);
                    continue;
                }
                let mut rest = h.clone();
                for s in 0..p {
                    if rest.deg() == 0 {
                        break;
                    }
                    let g = rest.gcd(&v.sub(&Self::new(p, vec![s])));
                    if g.deg() > 0 && g.deg() < rest.deg() {
                        rest = rest.divrem(&g).0.monic();
                        next.push(g);
                    } else if g.deg() == rest.deg() {
                        break;
                    }
                }
                if rest.deg() > 0 {
                    next.push(rest);
                }
            }
            factors = next;
        }
        factors.sort();
        factors
    }
}

/// Kernel of a square matrix over `F_p` (kernel of `m` acting on column vectors).
fn kernel_mod_p(m: &mut [Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pr);
        let inv = invmod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] + p - mulmod(f, m[r][j], p)) % p;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (i, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = (p - m[i][fc]) % p;
            }
            v
        })
        .collect()
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---------------------------------------------------------------------------
// Over Q

/// Coefficients (low to high) of a rational polynomial scaled to a primitive
/// integer polynomial with positive leading coefficient.
pub fn primitive_part(coeffs: &[BigRational]) -> Vec<BigInt> {
    let mut c: Vec<BigRational> = coeffs.to_vec();
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    let den = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = c.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if content.is_zero() {
        return Vec::new();
    }
    let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
    ints.iter().map(|x| x / &content * &sign).collect()
}

fn rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

fn q_trim(c: &mut Vec<BigRational>) {
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
}

fn q_divrem(a: &[BigRational], d: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    q_trim(&mut r);
    let mut d = d.to_vec();
    q_trim(&mut d);
    assert!(!d.is_empty(), "division by zero polynomial");
    if r.len() < d.len() {
        return (Vec::new(), r);
    }
    let dd = d.len() - 1;
    let mut q = vec![BigRational::zero(); r.len() - dd];
    for k in (0..q.len()).rev() {
        let c = &r[k + dd] / &d[dd];
        if !c.is_zero() {
            for (j, b) in d.iter().enumerate() {
                r[k + j] = &r[k + j] - &c * b;
            }
        }
        q[k] = c;
    }
    r.truncate(dd);
    q_trim(&mut r);
    q_trim(&mut q);
    (q, r)
}

fn q_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    q_trim(&mut a);
    q_trim(&mut b);
    while !b.is_empty() {
        let r = q_divrem(&a, &b).1;
        a = std::mem::replace(&mut b, r);
    }
    a
}

pub fn q_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] = &c[i + j] + x * y;
        }
    }
    q_trim(&mut c);
    c
}

/// Irreducibility over `Q` of a polynomial given by rational coefficients
/// (low to high).
///
/// Factor degrees mod several primes rule out most splittings. Whatever
/// survives is settled by Hensel lifting the factorization mod the most
/// economical prime past the Mignotte bound and testing every product of at
/// most half the lifted factors as a divisor, so the answer is always exact.
pub fn is_irreducible_over_q(coeffs: &[BigRational]) -> bool {
    let f = primitive_part(coeffs);
    let Some(k) = f.len().checked_sub(1) else { return false };
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let fq: Vec<BigRational> = f.iter().map(rat).collect();
    let df: Vec<BigRational> = fq.iter().enumerate().skip(1).map(|(i, c)| c * rat(&BigInt::from(i))).collect();
    if q_gcd(&fq, &df).len() > 1 {
        return false;
    }

    let mut candidates: BTreeSet<usize> = (1..=k / 2).collect();
    let mut good_primes = 0;
    let mut best: Option<(usize, u64)> = None;
    for p in (2u64..5000).filter(|&p| super::field::is_prime(p)) {
        if candidates.is_empty() || good_primes >= 12 {
            break;
        }
        let fp = FpPoly::from_ints(p, &f);
        if fp.degree() != Some(k) || !fp.is_squarefree() {
            continue;
        }
        good_primes += 1;
        let mut degrees = Vec::new();
        for (d, count) in fp.distinct_degree_counts() {
            degrees.extend(std::iter::repeat_n(d, count));
        }
        if best.is_none_or(|(n, _)| degrees.len() < n) {
            best = Some((degrees.len(), p));
        }
        let sums = subset_sums(&degrees, k);
        candidates.retain(|&e| sums.contains(&e));
    }
    if candidates.is_empty() {
        return true;
    }
    let (_, p) = best.expect("some prime keeps f squarefree");
    !has_factor_by_lifting(&f, p)
}

fn subset_sums(degrees: &[usize], k: usize) -> BTreeSet<usize> {
    let mut reach = vec![false; k + 1];
    reach[0] = true;
    for &d in degrees {
        for s in (d..=k).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    (1..k).filter(|&s| reach[s]).collect()
}

// Polynomials over Z/M with coefficients in [0, M), low to high.

fn zm_trim(mut c: Vec<BigInt>) -> Vec<BigInt> {
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    c
}

fn zm_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    zm_trim(c.into_iter().map(|x| x.mod_floor(m)).collect())
}

fn zm_add_scaled(a: &[BigInt], c: &BigInt, b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    zm_trim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&zero) + c * b.get(i).unwrap_or(&zero)).mod_floor(m))
            .collect(),
    )
}

fn zm_from_fp(f: &FpPoly) -> Vec<BigInt> {
    f.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

/// Lifts `f = g h (mod p)`, `g` monic and coprime to `h`, to `mod p^a`.
fn hensel_lift(f: &[BigInt], g: &FpPoly, h: &FpPoly, a: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let p = g.modulus();
    let m = BigInt::from(p).pow(a);
    let (one, s, t) = g.ext_gcd(h);
    debug_assert_eq!(one.degree(), Some(0));
    let (mut big_g, mut big_h) = (zm_from_fp(g), zm_from_fp(h));
    let mut pk = BigInt::from(p);
    for _ in 1..a {
        let e = zm_add_scaled(f, &-BigInt::one(), &zm_mul(&big_g, &big_h, &m), &m);
        let ep = FpPoly::from_ints(p, &e.iter().map(|c| c / &pk).collect::<Vec<_>>());
        // g dH + h dG = e with deg dG < deg g keeps G monic
        let (q, dg) = t.mul(&ep).divrem(g);
        let dh = s.mul(&ep).add(&q.mul(h));
        big_g = zm_add_scaled(&big_g, &pk, &zm_from_fp(&dg), &m);
        big_h = zm_add_scaled(&big_h, &pk, &zm_from_fp(&dh), &m);
        pk *= p;
    }
    (big_g, big_h)
}

/// Monic lifts mod `p^a` of the monic factors of `f mod p`.
fn lift_all(f: &[BigInt], factors: &[FpPoly], a: u32) -> Vec<Vec<BigInt>> {
    let p = factors[0].modulus();
    let m = BigInt::from(p).pow(a);
    if factors.len() == 1 {
        let lc = f.last().expect("nonzero").clone();
        let inv = lc.modpow(&(&m / p * (p - 1) - 1), &m);
        return vec![f.iter().map(|c| (c * &inv).mod_floor(&m)).collect()];
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let g = left.iter().fold(FpPoly::one(p), |acc, x| acc.mul(x));
    let (h, r) = FpPoly::from_ints(p, f).divrem(&g);
    debug_assert!(r.is_zero());
    let (big_g, big_h) = hensel_lift(f, &g, &h, a);
    let mut out = lift_all(&big_g, left, a);
    out.extend(lift_all(&big_h, right, a));
    out
}

/// Advances to the next `subset.len()`-subset of `0..s` in lexicographic order.
fn next_combination(subset: &mut [usize], s: usize) -> bool {
    let size = subset.len();
    for i in (0..size).rev() {
        if subset[i] < s - size + i {
            subset[i] += 1;
            for j in i + 1..size {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Whether the primitive squarefree `f` has a proper factor over `Z`, by
/// recombining lifted factors mod a power of `p` (`p` must keep `f`
/// squarefree of full degree).
fn has_factor_by_lifting(f: &[BigInt], p: u64) -> bool {
    let k = f.len() - 1;
    let lc = f[k].clone();
    let factors = FpPoly::from_ints(p, f).berlekamp_factor();
    if factors.len() < 2 {
        return false;
    }
    // Every factor of f has coefficients below 2^k ||f||_1; scaled by lc and
    // doubled for the symmetric range.
    let norm: BigInt = f.iter().map(|c| c.abs()).sum();
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << k) * norm;
    let pb = BigInt::from(p);
    let mut a = 1u32;
    while pb.pow(a) <= bound {
        a += 1;
    }
    let m = pb.pow(a);
    let half = &m / 2;
    let lifted = lift_all(f, &factors, a);
    let fq: Vec<BigRational> = f.iter().map(rat).collect();
    let s = lifted.len();
    for size in 1..=s / 2 {
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let prod = subset.iter().fold(vec![lc.mod_floor(&m)], |acc, &i| zm_mul(&acc, &lifted[i], &m));
            let sym: Vec<BigRational> =
                prod.iter().map(|c| rat(&if c > &half { c - &m } else { c.clone() })).collect();
            let cand: Vec<BigRational> = primitive_part(&sym).iter().map(rat).collect();
            if cand.len() > 1 && cand.len() <= k && q_divrem(&fq, &cand).1.is_empty() {
                return true;
            }
            if !next_combination(&mut subset, s) {
                break;
            }
        }
    }
    false
}
