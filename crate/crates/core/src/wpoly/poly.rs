use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::Field;
use crate::error::{Error, Result};

/// Exponent vector of a monomial.
pub type Exponents = Vec<u32>;

/// Sparse multivariate polynomial over a [`Field`].
///
/// Terms are keyed by exponent vector in lexicographic order (`x_1` most
/// significant); zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WPolynomial {
    nvars: usize,
    field: Field,
    terms: BTreeMap<Exponents, BigRational>,
}

impl WPolynomial {
    pub fn zero(nvars: usize, field: Field) -> Self {
        WPolynomial { nvars, field, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, field: Field, c: BigRational) -> Self {
        Self::monomial(nvars, field, vec![0; nvars], c)
    }

    pub fn one(nvars: usize, field: Field) -> Self {
        Self::constant(nvars, field, BigRational::one())
    }

    pub fn var(nvars: usize, field: Field, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, field, e, BigRational::one())
    }

    pub fn monomial(nvars: usize, field: Field, exps: Exponents, c: BigRational) -> Self {
        assert_eq!(exps.len(), nvars);
        let c = field.reduce(c);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        WPolynomial { nvars, field, terms }
    }

    /// Sums the given terms; coefficients must already be field elements.
    pub fn from_terms(nvars: usize, field: Field, terms: impl IntoIterator<Item = (Exponents, BigRational)>) -> Self {
        let mut p = Self::zero(nvars, field);
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    fn add_term(&mut self, e: Exponents, c: &BigRational) {
        debug_assert_eq!(e.len(), self.nvars);
        let field = self.field;
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                let c = field.reduce(c.clone());
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = field.add(o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &BigRational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn coefficient(&self, e: &[u32]) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Exponents, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let field = self.field;
        Self::from_terms(self.nvars, field, self.terms.iter().map(|(e, x)| (e.clone(), field.mul(x, c))))
    }

    pub fn mul_monomial(&self, exps: &[u32]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        WPolynomial { nvars: self.nvars, field: self.field, terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars, self.field);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Leading coefficient scaled to 1; used to detect scalar multiples.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.field.inv(c)),
        }
    }

    pub fn is_scalar_multiple_of(&self, other: &WPolynomial) -> bool {
        !self.is_zero() && !other.is_zero() && self.monic() == other.monic()
    }

    /// The weighted degree shared by all terms.
    pub fn weighted_degree(&self, weights: &[u64]) -> Result<u64> {
        let mut degrees = self.terms.keys().map(|e| monomial_degree(e, weights));
        let first = degrees.next().ok_or(Error::ZeroPolynomial)?;
        if degrees.all(|d| d == first) {
            Ok(first)
        } else {
            Err(Error::InhomogeneousPolynomial(self.to_string()))
        }
    }

    pub fn is_weighted_homogeneous(&self, weights: &[u64]) -> bool {
        self.weighted_degree(weights).is_ok()
    }

    /// Smallest exponent of `x_i` over all terms.
    pub fn min_exponent(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).min().unwrap_or(0)
    }

    pub fn max_exponent(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Indices of the variables that occur in some term.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.max_exponent(i) > 0).collect()
    }

    /// `Some((i, c))` when the polynomial is `c * x_i`.
    pub fn as_scaled_variable(&self) -> Option<(usize, BigRational)> {
        if !self.is_monomial() {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        let mut ones = e.iter().enumerate().filter(|(_, &x)| x > 0);
        match (ones.next(), ones.next()) {
            (Some((i, &1)), None) => Some((i, c.clone())),
            _ => None,
        }
    }

    /// Re-expresses the polynomial in a ring with `total` variables, placing
    /// variable `i` at position `positions[i]`.
    pub fn embed(&self, total: usize, positions: &[usize]) -> Self {
        assert_eq!(positions.len(), self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = vec![0; total];
                for (i, &x) in e.iter().enumerate() {
                    ne[positions[i]] = x;
                }
                (ne, c.clone())
            })
            .collect();
        WPolynomial { nvars: total, field: self.field, terms }
    }

    /// Keeps only the listed variables; all other exponents must be zero.
    pub fn restrict(&self, keep: &[usize]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (keep.iter().map(|&i| e[i]).collect(), c.clone()))
            .collect();
        WPolynomial { nvars: keep.len(), field: self.field, terms }
    }

    /// Rendering with the given variable names, largest term first.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono = render_monomial(e, names);
            let (neg, mag) = match self.field {
                Field::Rationals if c.is_negative() => (true, -c),
                _ => (false, c.clone()),
            };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(out, "{mag}").unwrap(),
                (false, true) => out.push_str(&mono),
                (false, false) => write!(out, "{mag}*{mono}").unwrap(),
            }
        }
        out
    }
}

pub fn monomial_degree(e: &[u32], weights: &[u64]) -> u64 {
    e.iter().zip(weights).map(|(&a, &w)| a as u64 * w).sum()
}

fn render_monomial(e: &[u32], names: &[String]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &x)| x > 0)
        .map(|(i, &x)| if x == 1 { names[i].clone() } else { format!("{}^{x}", names[i]) })
        .collect();
    parts.join("*")
}

/// Default names `x1, ..., xd`.
pub fn default_names(nvars: usize) -> Vec<String> {
    (1..=nvars).map(|i| format!("x{i}")).collect()
}

impl std::fmt::Display for WPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.display_with(&default_names(self.nvars)))
    }
}

fn check_compatible(a: &WPolynomial, b: &WPolynomial) {
    assert_eq!(a.nvars, b.nvars, "polynomials in different rings");
    assert_eq!(a.field, b.field, "polynomials over different fields");
}

impl Add for &WPolynomial {
    type Output = WPolynomial;
    fn add(self, rhs: &WPolynomial) -> WPolynomial {
        check_compatible(self, rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl Sub for &WPolynomial {
    type Output = WPolynomial;
    fn sub(self, rhs: &WPolynomial) -> WPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &WPolynomial {
    type Output = WPolynomial;
    fn neg(self) -> WPolynomial {
        let field = self.field;
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), field.neg(c))).collect();
        WPolynomial { nvars: self.nvars, field, terms }
    }
}

impl Mul for &WPolynomial {
    type Output = WPolynomial;
    fn mul(self, rhs: &WPolynomial) -> WPolynomial {
        check_compatible(self, rhs);
        let field = self.field;
        let mut out = WPolynomial::zero(self.nvars, field);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, &field.mul(ca, cb));
            }
        }
        out
    }
}

impl Add for WPolynomial {
    type Output = WPolynomial;
    fn add(self, rhs: WPolynomial) -> WPolynomial {
        &self + &rhs
    }
}

impl Sub for WPolynomial {
    type Output = WPolynomial;
    fn sub(self, rhs: WPolynomial) -> WPolynomial {
        &self - &rhs
    }
}

impl Mul for WPolynomial {
    type Output = WPolynomial;
    fn mul(self, rhs: WPolynomial) -> WPolynomial {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::super::field::int;
    use super::*;

    fn x(i: usize) -> WPolynomial {
        WPolynomial::var(2, Field::Rationals, i)
    }

    #[test]
    fn weighted_degree_examples() {
        let f = &x(0).pow(3) + &x(1).pow(2);
        assert_eq!(f.weighted_degree(&[2, 3]).unwrap(), 6);
        let f = &x(0).pow(2) * &x(1);
        assert_eq!(f.weighted_degree(&[1, 1]).unwrap(), 3);
        let f = &x(0) + &x(1);
        assert!(matches!(f.weighted_degree(&[2, 3]), Err(Error::InhomogeneousPolynomial(_))));
        assert_eq!(WPolynomial::zero(2, Field::Rationals).weighted_degree(&[1, 1]), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn arithmetic_and_display() {
        let f = &(&x(0) - &x(1)) * &(&x(0) + &x(1));
        assert_eq!(f.to_string(), "x1^2 - x2^2");
        let g = f.scale(&int(-3));
        assert_eq!(g.to_string(), "-3*x1^2 + 3*x2^2");
        assert!(g.is_scalar_multiple_of(&f));
        assert_eq!((&f - &f).to_string(), "0");
        let p5 = Field::Prime(5);
        let y = WPolynomial::var(2, p5, 1);
        let h = &WPolynomial::var(2, p5, 0) - &y.scale(&int(2));
        assert_eq!(h.to_string(), "x1 + 3*x2");
    }

    #[test]
    fn variables_and_embedding() {
        let f = x(1).scale(&int(4));
        assert_eq!(f.as_scaled_variable(), Some((1, int(4))));
        assert_eq!((&x(0) * &x(1)).as_scaled_variable(), None);
        let e = f.embed(3, &[1, 2]);
        assert_eq!(e.as_scaled_variable(), Some((2, int(4))));
        assert_eq!(e.restrict(&[1, 2]), f);
    }
}
