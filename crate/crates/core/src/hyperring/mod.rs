//! Arithmetic and graded linear algebra in `R = k[z, x] / (z^n - g)`, graded
//! by `deg x_i = n c_i` and `deg z = m = deg_c g`.

mod echelon;

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use echelon::{axpy, SparseVec, Subspace};

use crate::error::{Error, Result};
use crate::wpoly::{enumerate_monomials, monomial_degree, Exponents, FactoredForm, Field, WPolynomial, WeightedRing};

/// The data of a hypersurface `z^n = g` with `g = h_1 ... h_r`.
#[derive(Clone, Debug)]
pub struct Hypersurface {
    ring: WeightedRing,
    n: u64,
    g: WPolynomial,
    factored: FactoredForm,
    m: u64,
    m_inv: u64,
}

impl Hypersurface {
    /// Requires `gcd(deg g, n) = 1`; the weights are used as given.
    pub fn new(ring: WeightedRing, n: u64, g: WPolynomial, factored: FactoredForm) -> Result<Self> {
        if n == 0 {
            return Err(Error::DegenerateInput("n must be at least 1".into()));
        }
        if g.nvars() != ring.nvars() || g.field() != ring.field.arithmetic() {
            return Err(Error::ContextMismatch);
        }
        if g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let m = g
            .weighted_degree(&ring.weights)
            .map_err(|_| Error::InhomogeneousPolynomial(g.display_with(&ring.names)))?;
        let gcd = m.gcd(&n);
        if gcd != 1 {
            return Err(Error::GcdViolation { m, n, gcd });
        }
        if factored.product != g {
            return Err(Error::ProductMismatch {
                product: factored.product.display_with(&ring.names),
                expected: g.display_with(&ring.names),
            });
        }
        let m_inv = if n == 1 {
            0
        } else {
            let (_, a, _) = crate::exactmath::xgcd(&BigInt::from(m), &BigInt::from(n))?;
            let a: BigInt = a.mod_floor(&BigInt::from(n));
            u64::try_from(a).expect("residue below n")
        };
        Ok(Hypersurface { ring, n, g, factored, m, m_inv })
    }

    pub fn ring(&self) -> &WeightedRing {
        &self.ring
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn g(&self) -> &WPolynomial {
        &self.g
    }

    pub fn factored(&self) -> &FactoredForm {
        &self.factored
    }

    pub fn field(&self) -> Field {
        self.g.field()
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn names(&self) -> &[String] {
        &self.ring.names
    }

    /// Default verification depth: covers every degree in which the
    /// generator relations live, with margin.
    pub fn default_depth(&self) -> u64 {
        let max_gamma = self.factored.factors.iter().map(|f| f.degree).max().unwrap_or(0);
        200u64.max(4 * self.m * self.n).max(self.n * max_gamma + self.m * self.n)
    }

    /// `j = u m + v n` with `0 <= u < n`; `v` may be negative.
    pub fn decompose(&self, j: i64) -> (u64, i64) {
        let n = self.n as i64;
        let u = ((j.rem_euclid(n) as u128 * self.m_inv as u128) % self.n as u128) as i64;
        let v = (j - u * self.m as i64) / n;
        (u as u64, v)
    }

    /// R-degree of `z^u * x^e`.
    pub fn monomial_degree(&self, u: u64, e: &[u32]) -> i64 {
        (u * self.m + self.n * monomial_degree(e, &self.ring.weights)) as i64
    }

    pub fn zero(&self) -> RingElement {
        RingElement { coeffs: vec![WPolynomial::zero(self.nvars(), self.field()); self.n as usize] }
    }

    pub fn from_poly(&self, f: &WPolynomial) -> Result<RingElement> {
        self.from_z_coefficients(vec![f.clone()])
    }

    pub fn one(&self) -> RingElement {
        self.from_poly(&WPolynomial::one(self.nvars(), self.field())).expect("same ring")
    }

    pub fn z(&self) -> RingElement {
        self.z_power_times(1, &WPolynomial::one(self.nvars(), self.field()))
    }

    pub fn x(&self, i: usize) -> RingElement {
        self.from_poly(&WPolynomial::var(self.nvars(), self.field(), i)).expect("same ring")
    }

    /// `f * z^k`, reduced.
    pub fn z_power_times(&self, k: u64, f: &WPolynomial) -> RingElement {
        let mut out = self.zero();
        let (q, u) = (k / self.n, (k % self.n) as usize);
        let mut f = f.clone();
        for _ in 0..q {
            f = &f * &self.g;
        }
        out.coeffs[u] = f;
        out
    }

    /// The element `sum_u f_u z^u`; higher powers of `z` are reduced.
    pub fn from_z_coefficients(&self, fs: Vec<WPolynomial>) -> Result<RingElement> {
        let mut out = self.zero();
        for (k, f) in fs.into_iter().enumerate() {
            self.check_poly(&f)?;
            let t = self.z_power_times(k as u64, &f);
            out = self.add(&out, &t)?;
        }
        Ok(out)
    }

    fn check_poly(&self, f: &WPolynomial) -> Result<()> {
        if f.nvars() != self.nvars() || f.field() != self.field() {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    fn check(&self, e: &RingElement) -> Result<()> {
        if e.coeffs.len() != self.n as usize {
            return Err(Error::ContextMismatch);
        }
        e.coeffs.iter().try_for_each(|f| self.check_poly(f))
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(RingElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect() })
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(RingElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect() })
    }

    pub fn scale(&self, a: &RingElement, c: &BigRational) -> RingElement {
        RingElement { coeffs: a.coeffs.iter().map(|f| f.scale(c)).collect() }
    }

    /// Product in normal form: `z^n` is replaced by `g`.
    pub fn mul(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        self.check(a)?;
        self.check(b)?;
        let n = self.n as usize;
        let zero = WPolynomial::zero(self.nvars(), self.field());
        let mut wide = vec![zero; 2 * n - 1];
        for (i, f) in a.coeffs.iter().enumerate().filter(|(_, f)| !f.is_zero()) {
            for (j, h) in b.coeffs.iter().enumerate().filter(|(_, h)| !h.is_zero()) {
                wide[i + j] = &wide[i + j] + &(f * h);
            }
        }
        let mut coeffs = wide[..n].to_vec();
        for k in n..2 * n - 1 {
            if !wide[k].is_zero() {
                coeffs[k - n] = &coeffs[k - n] + &(&wide[k] * &self.g);
            }
        }
        Ok(RingElement { coeffs })
    }

    /// `a * z^u * x^e`, without a general multiplication.
    pub fn mul_monomial(&self, a: &RingElement, u: u64, e: &[u32]) -> RingElement {
        let n = self.n as usize;
        let mut out = self.zero();
        for (k, f) in a.coeffs.iter().enumerate().filter(|(_, f)| !f.is_zero()) {
            let shifted = f.mul_monomial(e);
            let t = k + u as usize;
            if t < n {
                out.coeffs[t] = &out.coeffs[t] + &shifted;
            } else {
                let extra = self.z_power_times(t as u64, &shifted);
                for (c, x) in out.coeffs.iter_mut().zip(extra.coeffs) {
                    if !x.is_zero() {
                        *c = &*c + &x;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &RingElement, k: u32) -> Result<RingElement> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// Degree of a nonzero homogeneous element; `None` for zero.
    pub fn degree(&self, a: &RingElement) -> Result<Option<i64>> {
        let mut deg = None;
        for (u, f) in a.coeffs.iter().enumerate() {
            for (e, _) in f.terms() {
                let d = self.monomial_degree(u as u64, e);
                match deg {
                    None => deg = Some(d),
                    Some(x) if x != d => return Err(Error::InhomogeneousPolynomial(self.display(a))),
                    _ => {}
                }
            }
        }
        Ok(deg)
    }

    /// Renders with the highest power of `z` first, e.g. `z^2 + x1*z`.
    pub fn display(&self, a: &RingElement) -> String {
        let mut out = String::new();
        for (u, f) in a.coeffs.iter().enumerate().rev().filter(|(_, f)| !f.is_zero()) {
            let body = f.display_with(&self.ring.names);
            let (neg, body) = match body.strip_prefix('-') {
                Some(rest) if f.num_terms() == 1 => (true, rest.to_string()),
                _ => (false, body),
            };
            if !out.is_empty() {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let zpart = match u {
                0 => String::new(),
                1 => "z".into(),
                _ => format!("z^{u}"),
            };
            if u == 0 {
                out.push_str(&body);
            } else if body == "1" {
                out.push_str(&zpart);
            } else if f.num_terms() > 1 {
                let _ = write!(out, "({body})*{zpart}");
            } else {
                let _ = write!(out, "{body}*{zpart}");
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Monomial basis `{z^u x^e : deg_c x^e = v}` of `R_j`.
    pub fn graded_component_basis(&self, j: i64) -> GradedBasis {
        let (u, v) = self.decompose(j);
        let monomials = if v < 0 { Vec::new() } else { enumerate_monomials(&self.ring.weights, v) };
        GradedBasis { degree: j, u, v, monomials }
    }

    /// The degree-`j` part of the ideal generated by homogeneous elements,
    /// as a subspace of `R_j` in the monomial basis.
    pub fn ideal_graded_component(&self, generators: &[RingElement], j: i64) -> Result<Subspace> {
        let target = self.graded_component_basis(j);
        let mut out = Subspace::zero(target.len(), self.field());
        for w in generators {
            let Some(e) = self.degree(w)? else { continue };
            let source = self.graded_component_basis(j - e);
            for mono in source.monomials() {
                if out.is_full() {
                    return Ok(out);
                }
                let prod = self.mul_monomial(w, source.u, mono);
                out.insert(target.to_vector(self, &prod)?);
            }
        }
        Ok(out)
    }

    /// Coefficients `0..=depth` of the Hilbert series
    /// `(1 - t^{mn}) / ((1 - t^m) prod_i (1 - t^{n c_i}))`.
    pub fn hilbert_series(&self, depth: usize) -> Vec<BigInt> {
        let mut s = vec![BigInt::zero(); depth + 1];
        s[0] = BigInt::one();
        let mn = (self.m * self.n) as usize;
        if mn <= depth {
            s[mn] -= 1;
        }
        let mut divide = |step: usize| {
            for k in step..=depth {
                let prev = s[k - step].clone();
                s[k] += prev;
            }
        };
        divide(self.m as usize);
        for &c in &self.ring.weights {
            divide((self.n * c) as usize);
        }
        s
    }
}

/// `sum_u f_u z^u` with `0 <= u < n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    coeffs: Vec<WPolynomial>,
}

impl RingElement {
    pub fn z_coefficients(&self) -> &[WPolynomial] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(WPolynomial::is_zero)
    }
}

/// Monomial basis of one graded component `R_j`.
#[derive(Clone, Debug)]
pub struct GradedBasis {
    pub degree: i64,
    pub u: u64,
    pub v: i64,
    monomials: Vec<Exponents>,
}

impl GradedBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// The `x`-parts of the basis, in descending lexicographic order.
    pub fn monomials(&self) -> &[Exponents] {
        &self.monomials
    }

    pub fn index_of(&self, e: &[u32]) -> Option<usize> {
        self.monomials.binary_search_by(|m| e.cmp(m.as_slice())).ok()
    }

    pub fn element(&self, hs: &Hypersurface, k: usize) -> RingElement {
        let mono = WPolynomial::monomial(hs.nvars(), hs.field(), self.monomials[k].clone(), BigRational::one());
        hs.z_power_times(self.u, &mono)
    }

    pub fn elements(&self, hs: &Hypersurface) -> Vec<RingElement> {
        (0..self.len()).map(|k| self.element(hs, k)).collect()
    }

    /// Coordinates of a degree-`j` element; fails if it has other components.
    pub fn to_vector(&self, hs: &Hypersurface, a: &RingElement) -> Result<SparseVec> {
        let mut out = Vec::new();
        for (u, f) in a.coeffs.iter().enumerate() {
            for (e, c) in f.terms() {
                match self.index_of(e) {
                    Some(k) if u as u64 == self.u => out.push((k, c.clone())),
                    _ => {
                        return Err(Error::InhomogeneousPolynomial(format!(
                            "{} has a term outside degree {}",
                            hs.display(a),
                            self.degree
                        )))
                    }
                }
            }
        }
        out.sort_by_key(|(k, _)| *k);
        Ok(out)
    }

    pub fn from_vector(&self, hs: &Hypersurface, v: &[(usize, BigRational)]) -> RingElement {
        let f = WPolynomial::from_terms(
            hs.nvars(),
            hs.field(),
            v.iter().map(|(k, c)| (self.monomials[*k].clone(), c.clone())),
        );
        hs.z_power_times(self.u, &f)
    }
}
