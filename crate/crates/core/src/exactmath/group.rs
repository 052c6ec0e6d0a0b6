use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::snf::{smith_normal_form, IntMatrix};

/// Finite abelian group `Z/d_1 + ... + Z/d_k` in invariant-factor form:
/// every `d_i >= 2` and `d_i | d_{i+1}`. The empty list is the trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<BigInt>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup { invariant_factors: Vec::new() }
    }

    /// Canonicalizes an arbitrary direct sum of cyclic groups `Z/orders[i]`.
    /// Orders must be positive.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        assert!(orders.iter().all(|o| o.is_positive()), "cyclic orders must be positive");
        let k = orders.len();
        let mut m = IntMatrix::zeros(k, k);
        for (i, o) in orders.iter().enumerate() {
            m[(i, i)] = o.clone();
        }
        let torsion = smith_normal_form(&m).diagonal();
        FiniteAbelianGroup { invariant_factors: torsion.into_iter().filter(|d| !d.is_one()).collect() }
    }

    /// `(Z/n)^count`.
    pub fn elementary(n: u64, count: usize) -> Self {
        if n <= 1 {
            return Self::trivial();
        }
        FiniteAbelianGroup { invariant_factors: vec![BigInt::from(n); count] }
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Minimal number of generators.
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// `#{x : k x = 0}`, which determines a finite abelian group up to isomorphism.
    pub fn count_killed_by(&self, k: &BigInt) -> BigInt {
        self.invariant_factors.iter().map(|d| d.gcd(k)).product()
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "0");
        }
        // group equal factors: (Z/2)^2 + Z/4
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.invariant_factors.len() {
            let d = &self.invariant_factors[i];
            let run = self.invariant_factors[i..].iter().take_while(|x| *x == d).count();
            parts.push(if run == 1 { format!("Z/{d}") } else { format!("(Z/{d})^{run}") });
            i += run;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// A finitely generated abelian group `Z^free_rank + torsion`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: FiniteAbelianGroup,
}

/// Cokernel `Z^rows / M Z^cols` of an integer matrix, via Smith normal form.
pub fn cokernel(m: &IntMatrix) -> AbelianGroup {
    let diag = smith_normal_form(m).diagonal();
    let nonzero: Vec<BigInt> = diag.iter().filter(|d| !d.is_zero()).cloned().collect();
    let free_rank = m.rows() - nonzero.len();
    let torsion = FiniteAbelianGroup { invariant_factors: nonzero.into_iter().filter(|d| !d.is_one()).collect() };
    AbelianGroup { free_rank, torsion }
}

/// Cokernel of `alpha: Z -> sum Z/q_i`, `1 -> (p_i mod q_i)`.
///
/// Presented by the `r x (r+1)` matrix whose columns are `q_i e_i` and `(p_1, ..., p_r)`.
pub fn cokernel_of_alpha(numerators: &[BigInt], moduli: &[BigInt]) -> FiniteAbelianGroup {
    assert_eq!(numerators.len(), moduli.len(), "one modulus per numerator");
    assert!(moduli.iter().all(|q| q.is_positive()), "moduli must be positive");
    let r = moduli.len();
    let mut m = IntMatrix::zeros(r, r + 1);
    for i in 0..r {
        m[(i, i)] = moduli[i].clone();
        m[(i, r)] = numerators[i].clone();
    }
    let g = cokernel(&m);
    debug_assert_eq!(g.free_rank, 0);
    g.torsion
}

impl FiniteAbelianGroup {
    /// Order as `u64` when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bis(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn alpha_examples() {
        assert!(cokernel_of_alpha(&bis(&[2]), &bis(&[5])).is_trivial());
        assert_eq!(cokernel_of_alpha(&bis(&[2, 2]), &bis(&[3, 3])), FiniteAbelianGroup::elementary(3, 1));
        assert_eq!(cokernel_of_alpha(&bis(&[1, 1, 1]), &bis(&[4, 4, 4])), FiniteAbelianGroup::elementary(4, 2));
        // representative choice does not matter
        assert_eq!(cokernel_of_alpha(&bis(&[-1, 5]), &bis(&[3, 3])), FiniteAbelianGroup::elementary(3, 1));
    }

    #[test]
    fn alpha_mixed_moduli() {
        // D = 1/2 V1 + 1/3 V2: Z/2 + Z/3 mod (1,1) is trivial
        assert!(cokernel_of_alpha(&bis(&[1, 1]), &bis(&[2, 3])).is_trivial());
        // integral coefficients contribute nothing
        assert_eq!(cokernel_of_alpha(&bis(&[7, 1, 1]), &bis(&[1, 2, 2])), FiniteAbelianGroup::elementary(2, 1));
    }

    #[test]
    fn canonical_forms() {
        let g = FiniteAbelianGroup::from_cyclic_orders(&bis(&[2, 3, 4]));
        assert_eq!(g.invariant_factors(), bis(&[2, 12]).as_slice());
        assert_eq!(g.to_string(), "Z/2 + Z/12");
        assert_eq!(FiniteAbelianGroup::elementary(5, 3).to_string(), "(Z/5)^3");
        assert_eq!(FiniteAbelianGroup::trivial().to_string(), "0");
        assert_eq!(g.count_killed_by(&BigInt::from(2)), BigInt::from(4));
    }

    #[test]
    fn free_part() {
        let g = cokernel(&IntMatrix::from_i64(&[&[2, 0], &[0, 0], &[0, 0]]));
        assert_eq!(g.free_rank, 2);
        assert_eq!(g.torsion, FiniteAbelianGroup::elementary(2, 1));
    }
}
