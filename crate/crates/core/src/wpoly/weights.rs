use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::field::FieldSpec;
use super::poly::Exponents;
use crate::error::{Error, Result};

/// Variable names, positive weights `c_i`, and the coefficient field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedRing {
    pub names: Vec<String>,
    pub weights: Vec<u64>,
    pub field: FieldSpec,
}

impl WeightedRing {
    pub fn new(names: Vec<String>, weights: Vec<u64>, field: FieldSpec) -> Result<Self> {
        if names.len() != weights.len() {
            return Err(Error::DegenerateInput("one weight per variable is required".into()));
        }
        if names.is_empty() {
            return Err(Error::DegenerateInput("at least one variable is required".into()));
        }
        if weights.contains(&0) {
            return Err(Error::DegenerateInput("weights must be positive".into()));
        }
        Ok(WeightedRing { names, weights, field })
    }

    /// Ring `x1..xd` with the given weights.
    pub fn with_weights(weights: &[u64], field: FieldSpec) -> Result<Self> {
        Self::new(super::poly::default_names(weights.len()), weights.to_vec(), field)
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn weight_gcd(&self) -> u64 {
        self.weights.iter().fold(0, |g, &w| g.gcd(&w))
    }

    pub fn is_normalized(&self) -> bool {
        self.weight_gcd() == 1
    }
}

/// Divides the weights by their gcd, and the supplied degrees along with them.
pub fn normalize_weights(ring: &WeightedRing, degrees: &[u64]) -> Result<(WeightedRing, Vec<u64>)> {
    let g = ring.weight_gcd();
    if g == 0 {
        return Err(Error::DegenerateInput("weights must be positive".into()));
    }
    let rescaled = degrees
        .iter()
        .map(|&d| {
            if d % g == 0 {
                Ok(d / g)
            } else {
                Err(Error::InternalInconsistency(format!(
                    "degree {d} is not divisible by the weight gcd {g}"
                )))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = ring.clone();
    for w in &mut out.weights {
        *w /= g;
    }
    Ok((out, rescaled))
}

/// Number of monomials of weighted degree `v` (the denumerant), by dynamic
/// programming over the weights.
pub fn count_monomials_of_degree(weights: &[u64], v: i64) -> BigUint {
    if v < 0 {
        return BigUint::zero();
    }
    let v = v as usize;
    let mut table = vec![BigUint::zero(); v + 1];
    table[0] = BigUint::one();
    for &w in weights {
        let w = w as usize;
        for k in w..=v {
            let prev = table[k - w].clone();
            table[k] += prev;
        }
    }
    table.swap_remove(v)
}

/// All exponent vectors of weighted degree `v`, in descending lexicographic
/// order (`x_1^k` first).
pub fn enumerate_monomials(weights: &[u64], v: i64) -> Vec<Exponents> {
    let mut out = Vec::new();
    if v < 0 {
        return out;
    }
    let mut current = vec![0u32; weights.len()];
    fill(weights, 0, v as u64, &mut current, &mut out);
    out
}

fn fill(weights: &[u64], i: usize, remaining: u64, current: &mut Exponents, out: &mut Vec<Exponents>) {
    if i == weights.len() {
        if remaining == 0 {
            out.push(current.clone());
        }
        return;
    }
    let w = weights[i];
    if i + 1 == weights.len() {
        if remaining % w == 0 {
            current[i] = (remaining / w) as u32;
            out.push(current.clone());
            current[i] = 0;
        }
        return;
    }
    for k in (0..=remaining / w).rev() {
        current[i] = k as u32;
        fill(weights, i + 1, remaining - k * w, current, out);
    }
    current[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn normalization() {
        let ring = WeightedRing::with_weights(&[4, 6], FieldSpec::Rationals).unwrap();
        let (r, d) = normalize_weights(&ring, &[12]).unwrap();
        assert_eq!((r.weights, d), (vec![2, 3], vec![6]));
        let ring = WeightedRing::with_weights(&[15, 10, 6], FieldSpec::Rationals).unwrap();
        assert_eq!(normalize_weights(&ring, &[]).unwrap().0.weights, vec![15, 10, 6]);
        let ring = WeightedRing::with_weights(&[3, 6], FieldSpec::Rationals).unwrap();
        let (r, d) = normalize_weights(&ring, &[9]).unwrap();
        assert_eq!((r.weights, d), (vec![1, 2], vec![3]));
        assert!(normalize_weights(&ring, &[4]).is_err());
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(count_monomials_of_degree(&[2, 3], 6).to_u64(), Some(2));
        assert_eq!(count_monomials_of_degree(&[1, 1], 4).to_u64(), Some(5));
        assert_eq!(count_monomials_of_degree(&[2, 3], 1).to_u64(), Some(0));
        assert_eq!(count_monomials_of_degree(&[2, 3], -1).to_u64(), Some(0));
        assert_eq!(count_monomials_of_degree(&[5, 7], 0).to_u64(), Some(1));
        assert_eq!(enumerate_monomials(&[2, 3], 6), vec![vec![3, 0], vec![0, 2]]);
        assert_eq!(enumerate_monomials(&[1, 1], 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }
}
