use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::cyclotomic::{count_factors_one_plus_tc, factor_one_plus_tc};
use super::field::FieldSpec;
use super::poly::WPolynomial;
use super::univariate::{is_irreducible_over_q, FpPoly};
use super::weights::WeightedRing;
use crate::error::{Error, Result};

/// How irreducibility of the factors is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certification {
    /// Every factor was checked exactly (it involves at most two variables).
    Exact,
    /// Some factor involves three or more variables; irreducibility is taken on trust.
    Attested,
    /// Factors are the splitting of a diagonal binomial over the algebraic closure;
    /// they are counted, not written down.
    OverClosure,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    /// Explicit form; `None` for factors that only exist over the algebraic closure.
    pub poly: Option<WPolynomial>,
    pub label: String,
    /// Weighted degree `gamma_t` with respect to the ring weights.
    pub degree: u64,
}

/// `g = h_1 ... h_r` with validated factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredForm {
    pub product: WPolynomial,
    pub factors: Vec<Factor>,
    pub certification: Certification,
}

impl FactoredForm {
    pub fn count(&self) -> usize {
        self.factors.len()
    }

    pub fn is_explicit(&self) -> bool {
        self.factors.iter().all(|f| f.poly.is_some())
    }
}

/// Checks a user-supplied factorization of `g`.
///
/// Factors in at most two variables are certified irreducible exactly: a
/// weighted form in `x_i, x_j` not divisible by either variable is a form in
/// `x_i^{c_j}, x_j^{c_i}`, so it is irreducible exactly when its
/// dehomogenization in one variable is. Factors in more variables are accepted
/// as attested.
pub fn validate_factorization(
    g: Option<&WPolynomial>,
    factors: &[WPolynomial],
    ring: &WeightedRing,
    n: u64,
) -> Result<FactoredForm> {
    let names = &ring.names;
    if factors.is_empty() {
        return Err(Error::DegenerateInput("empty factor list".into()));
    }
    let field = ring.field.arithmetic();
    let mut out = Vec::with_capacity(factors.len());
    for h in factors {
        let label = h.display_with(names);
        if h.is_zero() || h.is_constant() {
            return Err(Error::DegenerateInput(format!("factor {label} is a constant")));
        }
        let degree = h.weighted_degree(&ring.weights).map_err(|_| Error::InhomogeneousFactor(label.clone()))?;
        out.push(Factor { poly: Some(h.clone()), label, degree });
    }

    let product = factors.iter().skip(1).fold(factors[0].clone(), |acc, h| &acc * h);
    if let Some(g) = g {
        if &product != g {
            return Err(Error::ProductMismatch {
                product: product.display_with(names),
                expected: g.display_with(names),
            });
        }
    }

    for (t, h) in factors.iter().enumerate() {
        let label = &out[t].label;
        if h.as_scaled_variable().is_some() {
            continue;
        }
        if h.is_monomial() {
            let support = h.support();
            if support.len() == 1 {
                if n >= 2 {
                    return Err(Error::RepeatedFactor(label.clone()));
                }
                return Err(Error::NotIrreducible(label.clone()));
            }
        }
        if (0..h.nvars()).any(|i| h.min_exponent(i) > 0) {
            return Err(Error::FactorDivisibleByVariable(label.clone()));
        }
    }
    if n >= 2 {
        for i in 0..factors.len() {
            for j in i + 1..factors.len() {
                if factors[i].is_scalar_multiple_of(&factors[j]) {
                    return Err(Error::RepeatedFactor(out[i].label.clone()));
                }
            }
        }
    }

    let mut certification = Certification::Exact;
    for (t, h) in factors.iter().enumerate() {
        let support = h.support();
        match support.len() {
            1 => {} // a scaled variable; powers were rejected above
            2 => {
                let uni = dehomogenize_pair(h, support[0], support[1], &ring.weights)?;
                let irreducible = match ring.field {
                    FieldSpec::Rationals => is_irreducible_over_q(&uni),
                    FieldSpec::PrimeField(p) => fp_from_field_coeffs(p, &uni).is_irreducible(),
                    FieldSpec::AlgebraicallyClosed(_) => uni.len() == 2,
                };
                if !irreducible {
                    return Err(Error::NotIrreducible(out[t].label.clone()));
                }
            }
            _ => certification = Certification::Attested,
        }
    }
    debug_assert!(out.iter().all(|f| f.poly.as_ref().is_some_and(|p| p.field() == field)));
    Ok(FactoredForm { product, factors: out, certification })
}

fn fp_from_field_coeffs(p: u64, coeffs: &[BigRational]) -> FpPoly {
    FpPoly::from_ints(p, &coeffs.iter().map(|c| c.to_integer()).collect::<Vec<_>>())
}

/// For a weighted form in `x_i, x_j` divisible by neither, the coefficients
/// (low to high) of `P(1, t)` where `f = P(x_i^{c_j}, x_j^{c_i})` with the
/// pair's weights made coprime.
pub fn dehomogenize_pair(f: &WPolynomial, i: usize, j: usize, weights: &[u64]) -> Result<Vec<BigRational>> {
    let g = weights[i].gcd(&weights[j]);
    let (ci, cj) = (weights[i] / g, weights[j] / g);
    let mut coeffs: Vec<BigRational> = Vec::new();
    for (e, c) in f.terms() {
        let (a, b) = (e[i] as u64, e[j] as u64);
        if a % cj != 0 || b % ci != 0 {
            return Err(Error::InternalInconsistency(format!(
                "{f} is not a form in x^{cj}, y^{ci}"
            )));
        }
        let k = (b / ci) as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, BigRational::zero());
        }
        coeffs[k] = c.clone();
    }
    Ok(coeffs)
}

/// Recognizes `g = x_i^{m_i} + x_j^{m_j}` (unit coefficients, `i < j`).
pub fn as_diagonal_binomial(g: &WPolynomial) -> Option<(usize, usize, u32, u32)> {
    if g.num_terms() != 2 {
        return None;
    }
    let mut pure = Vec::new();
    for (e, c) in g.terms() {
        if !c.is_one() {
            return None;
        }
        let nz: Vec<usize> = (0..e.len()).filter(|&k| e[k] > 0).collect();
        if nz.len() != 1 {
            return None;
        }
        pure.push((nz[0], e[nz[0]]));
    }
    pure.sort();
    let [(i, mi), (j, mj)] = [pure[0], pure[1]];
    (i != j).then_some((i, j, mi, mj))
}

/// Factors `x_i^{m_i} + x_j^{m_j}` through `1 + t^c`, `c = gcd(m_i, m_j)`:
/// each factor `f(t)` of `1 + t^c` gives the form `S^{deg f} f(T / S)` with
/// `S = x_i^{m_i / c}`, `T = x_j^{m_j / c}`.
///
/// Over an algebraically closed field the `c` linear factors `S - zeta T` are
/// only counted. Fails with [`Error::RepeatedFactor`] when the characteristic
/// divides `c`.
pub fn split_diagonal_binomial(g: &WPolynomial, ring: &WeightedRing) -> Result<FactoredForm> {
    let (i, j, mi, mj) = as_diagonal_binomial(g)
        .ok_or_else(|| Error::MissingFactors(g.display_with(&ring.names)))?;
    let c = mi.gcd(&mj);
    let (ai, bj) = (mi / c, mj / c);
    let total = g.weighted_degree(&ring.weights)?;
    let nvars = g.nvars();
    let field = ring.field.arithmetic();
    let label = g.display_with(&ring.names);

    if ring.field.is_algebraically_closed() {
        let fc = count_factors_one_plus_tc(c as u64, &ring.field)?;
        if fc.repeated {
            return Err(Error::RepeatedFactor(format!("{label} over {}", ring.field)));
        }
        let r = fc.count;
        let factors = (1..=r)
            .map(|t| Factor {
                poly: None,
                label: format!("[{label}]_{t}"),
                degree: total / r,
            })
            .collect();
        return Ok(FactoredForm { product: g.clone(), factors, certification: Certification::OverClosure });
    }

    let unis = factor_one_plus_tc(c as u64, field)?;
    let mut forms = Vec::with_capacity(unis.len());
    for f in &unis {
        let deg = (f.len() - 1) as u32;
        let mut terms = Vec::new();
        for (k, coeff) in f.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let mut e = vec![0u32; nvars];
            e[i] = ai * (deg - k as u32);
            e[j] = bj * k as u32;
            terms.push((e, field.element(coeff)?));
        }
        forms.push(WPolynomial::from_terms(nvars, field, terms));
    }
    validate_factorization(Some(g), &forms, ring, 2)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::wpoly::field::{int, Field};

    fn ring(weights: &[u64], field: &str) -> WeightedRing {
        WeightedRing::with_weights(weights, field.parse().unwrap()).unwrap()
    }

    fn x(i: usize, field: Field) -> WPolynomial {
        WPolynomial::var(2, field, i)
    }

    #[test]
    fn difference_of_squares() {
        let q = Field::Rationals;
        let g = &x(0, q).pow(2) - &x(1, q).pow(2);
        let fs = [&x(0, q) - &x(1, q), &x(0, q) + &x(1, q)];
        let ff = validate_factorization(Some(&g), &fs, &ring(&[1, 1], "Q"), 3).unwrap();
        assert_eq!(ff.count(), 2);
        assert_eq!(ff.certification, Certification::Exact);
        let bad = [&x(0, q) - &x(1, q), &x(0, q) - &x(1, q)];
        assert!(matches!(
            validate_factorization(None, &bad, &ring(&[1, 1], "Q"), 2),
            Err(Error::RepeatedFactor(_))
        ));
        assert!(matches!(
            validate_factorization(Some(&g), &fs[..1], &ring(&[1, 1], "Q"), 2),
            Err(Error::ProductMismatch { .. })
        ));
    }

    #[test]
    fn weighted_irreducible_binomial() {
        let q = Field::Rationals;
        let f = &x(0, q).pow(2) + &x(1, q).pow(3);
        let ff = validate_factorization(None, &[f.clone()], &ring(&[3, 2], "Q"), 2).unwrap();
        assert_eq!(ff.certification, Certification::Exact);
        assert_eq!(ff.factors[0].degree, 6);
        assert_eq!(dehomogenize_pair(&f, 0, 1, &[3, 2]).unwrap(), vec![int(1), int(1)]);
        // x1^2 + x2^2 splits over GF(5) and over the closure
        let f = &x(0, Field::Prime(5)).pow(2) + &x(1, Field::Prime(5)).pow(2);
        assert!(matches!(
            validate_factorization(None, &[f], &ring(&[1, 1], "GF(5)"), 2),
            Err(Error::NotIrreducible(_))
        ));
        let f = &x(0, q).pow(2) + &x(1, q).pow(2);
        assert!(validate_factorization(None, &[f.clone()], &ring(&[1, 1], "Q"), 2).is_ok());
        assert!(validate_factorization(None, &[f], &ring(&[1, 1], "closure(Q)"), 2).is_err());
    }

    #[test]
    fn structural_rejections() {
        let q = Field::Rationals;
        let sq = x(0, q).pow(2);
        assert!(matches!(
            validate_factorization(None, &[sq, x(1, q)], &ring(&[1, 1], "Q"), 2),
            Err(Error::RepeatedFactor(_))
        ));
        let f = &(&x(0, q) + &x(1, q)) * &x(0, q);
        assert!(matches!(
            validate_factorization(None, &[f], &ring(&[1, 1], "Q"), 2),
            Err(Error::FactorDivisibleByVariable(_))
        ));
        assert!(matches!(
            validate_factorization(None, &[&x(0, q) + &x(1, q)], &ring(&[2, 3], "Q"), 2),
            Err(Error::InhomogeneousFactor(_))
        ));
        let f = &(&x(0, q) + &x(1, q)) * &(&x(0, q) - &x(1, q));
        assert!(matches!(
            validate_factorization(None, &[f], &ring(&[1, 1], "Q"), 2),
            Err(Error::NotIrreducible(_))
        ));
    }

    #[test]
    fn diagonal_splitting() {
        let q = Field::Rationals;
        let g = &x(0, q).pow(6) + &x(1, q).pow(9);
        let ff = split_diagonal_binomial(&g, &ring(&[3, 2], "Q")).unwrap();
        let labels: Vec<String> = ff.factors.iter().map(|f| f.label.clone()).collect();
        assert_eq!(labels, vec!["x1^2 + x2^3", "x1^4 - x1^2*x2^3 + x2^6"]);
        let g = &x(0, q).pow(4) + &x(1, q).pow(6);
        let ff = split_diagonal_binomial(&g, &ring(&[3, 2], "closure(Q)")).unwrap();
        assert_eq!((ff.count(), ff.certification), (2, Certification::OverClosure));
        assert_eq!(ff.factors[0].degree, 6);
        let p5 = Field::Prime(5);
        let g = &x(0, p5).pow(2) + &x(1, p5).pow(2);
        assert_eq!(split_diagonal_binomial(&g, &ring(&[1, 1], "GF(5)")).unwrap().count(), 2);
        let p3 = Field::Prime(3);
        let g = &x(0, p3).pow(3) + &x(1, p3).pow(6);
        assert!(matches!(
            split_diagonal_binomial(&g, &ring(&[2, 1], "GF(3)")),
            Err(Error::RepeatedFactor(_))
        ));
    }
}
