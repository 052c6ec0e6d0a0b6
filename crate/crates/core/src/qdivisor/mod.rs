//! Rational Weil divisors on `X = Proj k[x_1, ..., x_d]` supported on the
//! coordinate hyperplanes and the factor hypersurfaces, and the divisor `D`
//! with `R = R(X, D)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{bezout_vector, lcm_all, BezoutPair};
use crate::hyperring::Hypersurface;
use crate::wpoly::WPolynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentKind {
    /// `V(x_i)`, 0-based.
    Coordinate(usize),
    /// `V(h_t)` for a factor that is not a multiple of a variable, 0-based.
    Factor(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeComponent {
    pub kind: ComponentKind,
    /// Defining form; `None` for factors known only over the algebraic closure.
    pub form: Option<WPolynomial>,
    pub label: String,
    pub degree: u64,
}

/// One entry per prime divisor. A factor `h_t = lambda * x_i` is merged into
/// `V(x_i)`, with the scalar recorded so that `h_t = lambda_t * phi_P`.
#[derive(Clone, Debug)]
pub struct Registry {
    components: Vec<PrimeComponent>,
    factor_component: Vec<usize>,
    factor_scalar: Vec<BigRational>,
}

impl Registry {
    pub fn new(hs: &Hypersurface) -> Self {
        let (nvars, field) = (hs.nvars(), hs.field());
        let mut components: Vec<PrimeComponent> = (0..nvars)
            .map(|i| PrimeComponent {
                kind: ComponentKind::Coordinate(i),
                form: Some(WPolynomial::var(nvars, field, i)),
                label: hs.names()[i].clone(),
                degree: hs.ring().weights[i],
            })
            .collect();
        let mut factor_component = Vec::new();
        let mut factor_scalar = Vec::new();
        for (t, f) in hs.factored().factors.iter().enumerate() {
            if let Some((i, lambda)) = f.poly.as_ref().and_then(WPolynomial::as_scaled_variable) {
                factor_component.push(i);
                factor_scalar.push(lambda);
            } else {
                factor_component.push(components.len());
                factor_scalar.push(BigRational::one());
                components.push(PrimeComponent {
                    kind: ComponentKind::Factor(t),
                    form: f.poly.clone(),
                    label: f.label.clone(),
                    degree: f.degree,
                });
            }
        }
        Registry { components, factor_component, factor_scalar }
    }

    pub fn components(&self) -> &[PrimeComponent] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component(&self, k: usize) -> &PrimeComponent {
        &self.components[k]
    }

    pub fn factor_count(&self) -> usize {
        self.factor_component.len()
    }

    /// Registry index of the component carrying factor `t` (0-based).
    pub fn component_of_factor(&self, t: usize) -> usize {
        self.factor_component[t]
    }

    /// `lambda_t` with `h_t = lambda_t * phi_P`.
    pub fn factor_scalar(&self, t: usize) -> &BigRational {
        &self.factor_scalar[t]
    }

    pub fn is_factor_component(&self, k: usize) -> bool {
        self.factor_component.contains(&k)
    }
}

/// Finite formal sum `sum_P c_P P` with rational coefficients over registry
/// indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QDivisor {
    coeffs: BTreeMap<usize, BigRational>,
}

impl QDivisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(component: usize, c: BigRational) -> Self {
        let mut d = Self::zero();
        d.add_term(component, &c);
        d
    }

    pub fn add_term(&mut self, component: usize, c: &BigRational) {
        let e = self.coeffs.entry(component).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&component);
        }
    }

    pub fn coefficient(&self, component: usize) -> BigRational {
        self.coeffs.get(&component).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn add(&self, other: &QDivisor) -> QDivisor {
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(*k, c);
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> QDivisor {
        let mut out = QDivisor::zero();
        for (k, x) in &self.coeffs {
            out.add_term(*k, &(x * c));
        }
        out
    }

    pub fn scale_int(&self, j: i64) -> QDivisor {
        self.scale(&BigRational::from_integer(j.into()))
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(BigRational::is_integer)
    }

    /// lcm of the coefficient denominators (1 for the zero divisor).
    pub fn denominator_lcm(&self) -> BigInt {
        lcm_all(self.coeffs.values().map(|c| c.denom()))
    }

    /// Componentwise floor.
    pub fn floor(&self) -> WeilDivisor {
        WeilDivisor {
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, c)| (*k, c.floor().to_integer()))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// `sum_P c_P deg_c(P)`.
    pub fn degree(&self, registry: &Registry) -> BigRational {
        self.coeffs
            .iter()
            .map(|(k, c)| c * BigRational::from_integer(registry.component(*k).degree.into()))
            .sum()
    }

    pub fn display(&self, registry: &Registry) -> String {
        format_terms(self.coeffs.iter().map(|(k, c)| (registry.component(*k).label.as_str(), c.to_string(), c.is_negative())))
    }
}

/// Integral divisor on the registry.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WeilDivisor {
    coeffs: BTreeMap<usize, BigInt>,
}

impl WeilDivisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn coefficient(&self, component: usize) -> BigInt {
        self.coeffs.get(&component).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn degree(&self, registry: &Registry) -> BigInt {
        self.coeffs.iter().map(|(k, c)| c * BigInt::from(registry.component(*k).degree)).sum()
    }

    pub fn to_q(&self) -> QDivisor {
        let mut d = QDivisor::zero();
        for (k, c) in &self.coeffs {
            d.add_term(*k, &BigRational::from_integer(c.clone()));
        }
        d
    }

    pub fn display(&self, registry: &Registry) -> String {
        format_terms(self.coeffs.iter().map(|(k, c)| (registry.component(*k).label.as_str(), c.to_string(), c.is_negative())))
    }
}

fn format_terms<'a>(terms: impl Iterator<Item = (&'a str, String, bool)>) -> String {
    let mut out = String::new();
    for (label, c, neg) in terms {
        let mag = c.trim_start_matches('-');
        if out.is_empty() {
            out.push_str(if neg { "-" } else { "" });
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != "1" {
            out.push_str(mag);
            out.push('*');
        }
        out.push_str(&format!("V({label})"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `floor(j D)` together with `j = u m + v n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Floor {
    pub divisor: WeilDivisor,
    pub u: u64,
    pub v: i64,
    pub degree: BigInt,
}

/// Bezout data and the divisor
/// `D = b sum_i s_i V(x_i) + (a / n) sum_t V(h_t)`.
#[derive(Clone, Debug)]
pub struct Construction {
    pub registry: Registry,
    pub bezout: BezoutPair,
    pub s: Vec<BigInt>,
    pub d: QDivisor,
}

impl Construction {
    /// Canonical choices: `a` in `[1, n - 1]` and the left-fold Bezout vector.
    pub fn new(hs: &Hypersurface) -> Result<Self> {
        Self::with_choices(hs, None, None)
    }

    /// Any representative `a` of `m^{-1}` mod `n` and any `s` with
    /// `sum s_i c_i = 1` may be supplied.
    pub fn with_choices(hs: &Hypersurface, a: Option<BigInt>, s: Option<Vec<BigInt>>) -> Result<Self> {
        let (m, n) = (BigInt::from(hs.m()), BigInt::from(hs.n()));
        let bezout = match a {
            None => BezoutPair::new(&m, &n)?,
            Some(a) => {
                if !((&a * &m - 1u32) % &n).is_zero() {
                    return Err(Error::DegenerateInput(format!("a = {a} is not an inverse of {m} mod {n}")));
                }
                BezoutPair::with_representative(&m, &n, &a)
            }
        };
        let weights: Vec<BigInt> = hs.ring().weights.iter().map(|&c| c.into()).collect();
        let s = match s {
            None => bezout_vector(&weights)?,
            Some(s) => s,
        };
        let dot: BigInt = s.iter().zip(&weights).map(|(x, c)| x * c).sum();
        if s.len() != weights.len() || !dot.is_one() {
            return Err(Error::DegenerateInput("the weights need a Bezout vector with sum s_i c_i = 1".into()));
        }
        let registry = Registry::new(hs);
        let mut d = QDivisor::zero();
        for (i, si) in s.iter().enumerate() {
            d.add_term(i, &BigRational::from_integer(&bezout.b * si));
        }
        let a_over_n = BigRational::new(bezout.a.clone(), n.clone());
        for t in 0..registry.factor_count() {
            d.add_term(registry.component_of_factor(t), &a_over_n);
        }
        let expected = BigRational::new(BigInt::one(), n.clone());
        if d.degree(&registry) != expected {
            return Err(Error::InternalInconsistency(format!("deg D = {} != 1/{n}", d.degree(&registry))));
        }
        Ok(Construction { registry, bezout, s, d })
    }

    pub fn n(&self) -> BigInt {
        self.bezout.n.clone()
    }

    /// `floor(E0 + j D)`.
    pub fn floor_shifted(&self, e0: &QDivisor, j: i64) -> WeilDivisor {
        e0.add(&self.d.scale_int(j)).floor()
    }

    /// `floor(j D)` with its decomposition; checks `deg floor(j D) = v`.
    pub fn floor_of_multiple(&self, hs: &Hypersurface, j: i64) -> Result<Floor> {
        let divisor = self.d.scale_int(j).floor();
        let degree = divisor.degree(&self.registry);
        let (u, v) = hs.decompose(j);
        if degree != BigInt::from(v) {
            return Err(Error::InternalInconsistency(format!("deg floor({j} D) = {degree}, expected {v}")));
        }
        Ok(Floor { divisor, u, v, degree })
    }

    /// `E_t = -(1/n) V(h_t)`, `t` 1-based.
    pub fn generator_divisor(&self, t: usize) -> Result<QDivisor> {
        let r = self.registry.factor_count();
        if t == 0 || t > r {
            return Err(Error::IndexOutOfRange { index: t, len: r });
        }
        Ok(QDivisor::single(
            self.registry.component_of_factor(t - 1),
            -BigRational::new(BigInt::one(), self.n()),
        ))
    }
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentKind::Coordinate(i) => write!(f, "V(x{})", i + 1),
            ComponentKind::Factor(t) => write!(f, "V(h{})", t + 1),
        }
    }
}

/// Whether `sum c_k D_k` has integer coefficients.
pub fn is_integral_combination(parts: &[(&QDivisor, BigRational)]) -> bool {
    parts.iter().fold(QDivisor::zero(), |acc, (d, c)| acc.add(&d.scale(c))).is_integral()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::wpoly::{validate_factorization, Field, FieldSpec, WeightedRing};

    fn hs(weights: &[u64], n: u64, factors: Vec<WPolynomial>) -> Hypersurface {
        let ring = WeightedRing::with_weights(weights, FieldSpec::Rationals).unwrap();
        let ff = validate_factorization(None, &factors, &ring, n).unwrap();
        Hypersurface::new(ring, n, ff.product.clone(), ff).unwrap()
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn merged_canonical_divisor() {
        let f = Field::Rationals;
        let h = hs(&[1, 1], 3, vec![WPolynomial::var(2, f, 0), WPolynomial::var(2, f, 1)]);
        let c = Construction::new(&h).unwrap();
        assert_eq!(c.registry.len(), 2);
        assert_eq!((c.bezout.a.clone(), c.bezout.b.clone()), (2.into(), (-1).into()));
        assert_eq!(c.d.coefficient(0), q(-1, 3));
        assert_eq!(c.d.coefficient(1), q(2, 3));
        assert_eq!(c.d.display(&c.registry), "-1/3*V(x1) + 2/3*V(x2)");
        let fl = c.floor_of_multiple(&h, 2).unwrap();
        assert_eq!((fl.u, fl.v, fl.degree.clone()), (1, 0, 0.into()));
        assert_eq!(fl.divisor.display(&c.registry), "-V(x1) + V(x2)");
        let fl = c.floor_of_multiple(&h, 6).unwrap();
        assert_eq!(fl.divisor.display(&c.registry), "-2*V(x1) + 4*V(x2)");
        assert_eq!(c.floor_of_multiple(&h, 0).unwrap().divisor, WeilDivisor::zero());
    }

    #[test]
    fn factorial_example_divisor() {
        let f = Field::Rationals;
        let g = &WPolynomial::var(2, f, 0).pow(3) + &WPolynomial::var(2, f, 1).pow(5);
        let h = hs(&[5, 3], 2, vec![g]);
        let s = vec![BigInt::from(-1), BigInt::from(2)];
        let c = Construction::with_choices(&h, None, Some(s)).unwrap();
        assert_eq!((c.bezout.a.clone(), c.bezout.b.clone()), (1.into(), (-7).into()));
        assert_eq!(c.d.coefficient(0), q(7, 1));
        assert_eq!(c.d.coefficient(1), q(-14, 1));
        assert_eq!(c.d.coefficient(2), q(1, 2));
        assert_eq!(c.d.denominator_lcm(), 2.into());
        let e1 = c.generator_divisor(1).unwrap();
        assert_eq!(e1, QDivisor::single(2, q(-1, 2)));
        assert!(c.generator_divisor(2).is_err());
        // n E_1 + n gamma_1 D and E_1 + m D are integral
        assert!(is_integral_combination(&[(&e1, q(2, 1)), (&c.d, q(30, 1))]));
        let sum_rel = e1.add(&c.d.scale_int(15));
        assert_eq!(sum_rel.floor().to_q(), sum_rel);
        assert_eq!(sum_rel.floor(), c.d.scale_int(15).floor());
    }
}
