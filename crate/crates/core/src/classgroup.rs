//! Hypothesis checks and the class group pipeline.
//!
//! With `D` as in [`crate::qdivisor`], the `n`-th Veronese subring of `R` is a
//! polynomial ring, so `Cl(X) = Z nD` and the exact sequence collapses to
//! `Cl(R) = coker(Z -> sum_P Z/q_P, 1 -> (p_P))` where `p_P / q_P` are the
//! coefficients of `D`. The class of `E_t = -(1/n) V(h_t)` is the class of the
//! ideal `(z, h_t)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{cokernel, cokernel_of_alpha, FiniteAbelianGroup, IntMatrix};
use crate::hyperring::Hypersurface;
use crate::qdivisor::Construction;
use crate::sections::SectionRing;
use crate::wpoly::{
    as_diagonal_binomial, normalize_weights, split_diagonal_binomial, validate_factorization, Certification, Factor,
    FactoredForm, WPolynomial, WeightedRing,
};

/// Input as supplied: weights need not be normalized, `g` and the factors
/// may each be absent (not both).
#[derive(Clone, Debug)]
pub struct HypersurfaceSpec {
    pub ring: WeightedRing,
    pub n: u64,
    pub g: Option<WPolynomial>,
    pub factors: Option<Vec<WPolynomial>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HypothesisFlags {
    pub assume_normal: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalityStatus {
    /// `n = 1`: `R` is a polynomial ring.
    PolynomialRing,
    /// `g = sum a_i x_i^{m_i}` in at least two variables, characteristic
    /// dividing no `m_i`: the singular locus has codimension at least two.
    VerifiedDiagonal,
    /// `g` is a product of distinct certified irreducibles and the
    /// characteristic does not divide `n`: the singular locus lies in
    /// `z = 0, Sing V(g)`, of codimension at least two.
    VerifiedReduced,
    Attested,
    Unverified,
    Rejected,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub code: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub field: String,
    pub n: u64,
    pub variables: Vec<String>,
    /// Weights after normalization, in the final variable order.
    pub weights: Vec<u64>,
    pub m: Option<u64>,
    pub gcd: Option<u64>,
    pub x0_weight: Option<u64>,
    pub factor_count: Option<usize>,
    pub factorization: Option<Certification>,
    pub normality: Option<NormalityStatus>,
    pub violations: Vec<Violation>,
}

/// Checks, in order: homogeneity of `g`, weight normalization, `gcd(m, n) = 1`,
/// the factorization, normality. The report is filled as far as the checks
/// got.
pub fn validate_hypotheses(spec: &HypersurfaceSpec, flags: &HypothesisFlags) -> (HypothesisReport, Result<Hypersurface>) {
    validate_inner(spec, flags, None)
}

fn validate_inner(
    spec: &HypersurfaceSpec,
    flags: &HypothesisFlags,
    x0: Option<&str>,
) -> (HypothesisReport, Result<Hypersurface>) {
    let mut report = HypothesisReport {
        field: spec.ring.field.to_string(),
        n: spec.n,
        variables: spec.ring.names.clone(),
        weights: spec.ring.weights.clone(),
        m: None,
        gcd: None,
        x0_weight: None,
        factor_count: None,
        factorization: None,
        normality: None,
        violations: Vec::new(),
    };
    let result = validate_steps(spec, flags, x0, &mut report);
    if let Err(e) = &result {
        report.violations.push(Violation { code: e.code().into(), message: e.to_string() });
        if matches!(e, Error::NotNormal(_)) {
            report.normality = Some(NormalityStatus::Rejected);
        }
        if matches!(e, Error::NormalityUnverified) {
            report.normality = Some(NormalityStatus::Unverified);
        }
    }
    (report, result)
}

fn validate_steps(
    spec: &HypersurfaceSpec,
    flags: &HypothesisFlags,
    x0: Option<&str>,
    report: &mut HypothesisReport,
) -> Result<Hypersurface> {
    let n = spec.n;
    if n == 0 {
        return Err(Error::DegenerateInput("n must be at least 1".into()));
    }
    let field = spec.ring.field.arithmetic();
    let g = match (&spec.g, &spec.factors) {
        (Some(g), _) => g.clone(),
        (None, Some(fs)) if !fs.is_empty() => fs.iter().skip(1).fold(fs[0].clone(), |acc, h| &acc * h),
        _ => return Err(Error::InvalidJob("either g or factors is required".into())),
    };
    if g.field() != field || g.nvars() != spec.ring.nvars() {
        return Err(Error::ContextMismatch);
    }
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if g.is_constant() {
        return Err(Error::DegenerateInput("g is a constant".into()));
    }
    let names = &spec.ring.names;
    let m_raw = g
        .weighted_degree(&spec.ring.weights)
        .map_err(|_| Error::InhomogeneousPolynomial(g.display_with(names)))?;
    let (small, degs) = normalize_weights(&spec.ring, &[m_raw])?;
    let m_g = degs[0];
    report.weights = small.weights.clone();

    let (ring, m) = match x0 {
        None => (small.clone(), m_g),
        Some(name) => {
            if small.names.iter().any(|v| v == name) || name == "z" {
                return Err(Error::InvalidJob(format!("x0 name '{name}' clashes with another variable")));
            }
            let c0 = (1..).find(|c: &u64| (c + m_g).gcd(&n) == 1).expect("some shift is coprime");
            report.x0_weight = Some(c0);
            let mut names = vec![name.to_string()];
            names.extend(small.names.iter().cloned());
            let mut weights = vec![c0];
            weights.extend(&small.weights);
            (WeightedRing::new(names, weights, small.field)?, m_g + c0)
        }
    };
    report.variables = ring.names.clone();
    report.weights = ring.weights.clone();
    report.m = Some(m);
    let gcd = m.gcd(&n);
    report.gcd = Some(gcd);
    if gcd != 1 {
        return Err(Error::GcdViolation { m, n, gcd });
    }

    let factored_small = resolve_factors(&g, spec.factors.as_deref(), &small, n)?;
    let (g_full, factored) = match x0 {
        None => (g.clone(), factored_small),
        Some(_) => {
            let positions: Vec<usize> = (1..=small.nvars()).collect();
            let total = ring.nvars();
            let x0v = WPolynomial::var(total, field, 0);
            let g_full = &x0v * &g.embed(total, &positions);
            let mut factors: Vec<Factor> = factored_small
                .factors
                .iter()
                .map(|f| Factor {
                    poly: f.poly.as_ref().map(|p| p.embed(total, &positions)),
                    label: f.label.clone(),
                    degree: f.degree,
                })
                .collect();
            factors.push(Factor { poly: Some(x0v), label: ring.names[0].clone(), degree: ring.weights[0] });
            (g_full.clone(), FactoredForm { product: g_full, factors, certification: factored_small.certification })
        }
    };
    report.factor_count = Some(factored.count());
    report.factorization = Some(factored.certification);

    let normality = normality_status(&g_full, &factored, &ring, n, flags)?;
    report.normality = Some(normality);
    Hypersurface::new(ring, n, g_full, factored)
}

fn resolve_factors(g: &WPolynomial, factors: Option<&[WPolynomial]>, ring: &WeightedRing, n: u64) -> Result<FactoredForm> {
    if let Some(fs) = factors {
        return validate_factorization(Some(g), fs, ring, n);
    }
    if as_diagonal_binomial(g).is_some() {
        return split_diagonal_binomial(g, ring);
    }
    if g.support().len() <= 2 {
        return match validate_factorization(Some(g), std::slice::from_ref(g), ring, n) {
            Err(Error::NotIrreducible(_)) => Err(Error::MissingFactors(g.display_with(&ring.names))),
            other => other,
        };
    }
    Err(Error::MissingFactors(g.display_with(&ring.names)))
}

/// Exponents `(i, m_i)` when every term of `g` is a pure power of its own variable.
fn diagonal_exponents(g: &WPolynomial) -> Option<Vec<(usize, u32)>> {
    let mut seen = Vec::new();
    for (e, _) in g.terms() {
        let nz: Vec<usize> = (0..e.len()).filter(|&k| e[k] > 0).collect();
        if nz.len() != 1 || seen.iter().any(|(i, _)| *i == nz[0]) {
            return None;
        }
        seen.push((nz[0], e[nz[0]]));
    }
    Some(seen)
}

fn normality_status(
    g: &WPolynomial,
    factored: &FactoredForm,
    ring: &WeightedRing,
    n: u64,
    flags: &HypothesisFlags,
) -> Result<NormalityStatus> {
    if n == 1 {
        return Ok(NormalityStatus::PolynomialRing);
    }
    let p = ring.field.characteristic();
    let divides = |x: u64| p != 0 && x % p == 0;
    if let Some(diag) = diagonal_exponents(g) {
        if diag.len() == 1 && diag[0].1 >= 2 {
            return Err(Error::NotNormal(format!("z^{n} = {} is a cusp", g.display_with(&ring.names))));
        }
        if !diag.iter().any(|&(_, mi)| divides(mi as u64)) {
            return Ok(NormalityStatus::VerifiedDiagonal);
        }
    }
    if factored.certification != Certification::Attested && !divides(n) {
        return Ok(NormalityStatus::VerifiedReduced);
    }
    if flags.assume_normal {
        return Ok(NormalityStatus::Attested);
    }
    Err(Error::NormalityUnverified)
}

/// The ideal `(z, h_t)` as a class group generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorIdeal {
    /// 1-based factor index.
    pub index: usize,
    pub elements: [String; 2],
    /// `[m, n gamma_t]`.
    pub degrees: [u64; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RelationKind {
    /// `n [p_t] = 0`, witnessed by `p_t^(n) = h_t R`.
    Order { index: usize },
    /// `sum_t [p_t] = 0`, witnessed by `p_1 ∩ ... ∩ p_r = z R`.
    Sum,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    #[serde(flatten)]
    pub kind: RelationKind,
    pub statement: String,
    pub divisor_identity: String,
    /// The divisor on the right is integral of degree zero, hence principal on `X`.
    pub divisor_identity_holds: bool,
    pub witness: String,
}

#[derive(Clone, Debug)]
pub struct ClassGroupResult {
    pub group: FiniteAbelianGroup,
    /// `(p_P, q_P)` over the registry, from the coefficients of `D`.
    pub alpha_numerators: Vec<BigInt>,
    pub alpha_moduli: Vec<BigInt>,
    /// The group presented by the generators `[p_1..p_r]` and the relations.
    pub relation_group: FiniteAbelianGroup,
    pub generators: Vec<GeneratorIdeal>,
    pub relations: Vec<Relation>,
    pub section_ring: SectionRing,
}

impl ClassGroupResult {
    pub fn factor_count(&self) -> usize {
        self.section_ring.hs.factored().count()
    }

    pub fn hypersurface(&self) -> &Hypersurface {
        &self.section_ring.hs
    }
}

pub fn compute_class_group(hs: &Hypersurface) -> Result<ClassGroupResult> {
    compute_class_group_with(hs, None, None)
}

/// As [`compute_class_group`] with a chosen representative `a` of `m^{-1}`
/// mod `n` and Bezout vector `s`.
pub fn compute_class_group_with(hs: &Hypersurface, a: Option<BigInt>, s: Option<Vec<BigInt>>) -> Result<ClassGroupResult> {
    let construction = Construction::with_choices(hs, a, s)?;
    let n = hs.n();
    let nb = BigInt::from(n);
    let r = hs.factored().count();
    let lcm = construction.d.denominator_lcm();
    let expected_lcm = if n == 1 { BigInt::one() } else { nb.clone() };
    if lcm != expected_lcm {
        return Err(Error::InternalInconsistency(format!("lcm of denominators of D is {lcm}, expected {n}")));
    }
    let reg = &construction.registry;
    let (mut nums, mut mods) = (Vec::new(), Vec::new());
    for k in 0..reg.len() {
        let c = construction.d.coefficient(k);
        nums.push(c.numer().clone());
        mods.push(c.denom().clone());
    }
    let group = cokernel_of_alpha(&nums, &mods);
    let expected = FiniteAbelianGroup::elementary(n, r.saturating_sub(1));
    if group != expected {
        return Err(Error::InternalInconsistency(format!("coker alpha = {group}, expected {expected}")));
    }
    let relation_group = relation_presentation(n, r);
    if relation_group != expected {
        return Err(Error::InternalInconsistency(format!("relation presentation gives {relation_group}")));
    }

    let factors = &hs.factored().factors;
    let generators = (1..r)
        .map(|t| GeneratorIdeal {
            index: t,
            elements: ["z".into(), factors[t - 1].label.clone()],
            degrees: [hs.m(), n * factors[t - 1].degree],
        })
        .collect();
    let mut relations = Vec::new();
    if n > 1 {
        for t in 1..=r {
            let label = &factors[t - 1].label;
            let e_t = construction.generator_divisor(t)?;
            let gamma = BigInt::from(factors[t - 1].degree);
            let combo = e_t.scale_int(n as i64).add(&construction.d.scale(&(&nb * &gamma).into()));
            relations.push(Relation {
                kind: RelationKind::Order { index: t },
                statement: format!("{n}*[(z, {label})] = 0"),
                divisor_identity: format!("{n}*E_{t} + {}*D ~ 0", &nb * &gamma),
                divisor_identity_holds: combo.is_integral() && combo.degree(reg).is_zero(),
                witness: format!("(z, {label})^({n}) = ({label})R"),
            });
        }
        let mut combo = construction.d.scale_int(hs.m() as i64);
        for t in 1..=r {
            combo = combo.add(&construction.generator_divisor(t)?);
        }
        let sum = (1..=r).map(|t| format!("[(z, {})]", factors[t - 1].label)).collect::<Vec<_>>().join(" + ");
        let meet = (1..=r).map(|t| format!("(z, {})", factors[t - 1].label)).collect::<Vec<_>>().join(" ∩ ");
        relations.push(Relation {
            kind: RelationKind::Sum,
            statement: format!("{sum} = 0"),
            divisor_identity: format!("sum_t E_t + {}*D ~ 0", hs.m()),
            divisor_identity_holds: combo.is_integral() && combo.degree(reg).is_zero(),
            witness: format!("{meet} = zR"),
        });
    }
    Ok(ClassGroupResult {
        group,
        alpha_numerators: nums,
        alpha_moduli: mods,
        relation_group,
        generators,
        relations,
        section_ring: SectionRing::with_construction(hs.clone(), construction),
    })
}

/// `Z^r / <n e_t, e_1 + ... + e_r>`.
pub fn relation_presentation(n: u64, r: usize) -> FiniteAbelianGroup {
    if r == 0 {
        return FiniteAbelianGroup::trivial();
    }
    let mut rows = vec![vec![BigInt::zero(); r + 1]; r];
    for (t, row) in rows.iter_mut().enumerate() {
        row[t] = BigInt::from(n);
        row[r] = BigInt::one();
    }
    let ab = cokernel(&IntMatrix::from_rows(rows));
    assert_eq!(ab.free_rank, 0, "n e_t relations kill the free part");
    ab.torsion
}

/// Hypothesis checks for `z^n - x0 g` with `x0` prepended to the variables.
pub fn validate_hypotheses_x0(
    spec: &HypersurfaceSpec,
    x0: &str,
    flags: &HypothesisFlags,
) -> (HypothesisReport, Result<Hypersurface>) {
    validate_inner(spec, flags, Some(x0))
}

/// Runs `z^n - x0 g` with `x0` a new variable of the smallest weight `c0`
/// making `gcd(c0 + deg g, n) = 1`. Factors are `h_1, ..., h_r, x0`; the
/// generator `(z, x0)` is the one eliminated by the sum relation.
pub fn corollary_x0_mode(
    spec: &HypersurfaceSpec,
    x0: &str,
    flags: &HypothesisFlags,
) -> (HypothesisReport, Result<ClassGroupResult>) {
    let (report, hs) = validate_inner(spec, flags, Some(x0));
    let result = hs.and_then(|hs| compute_class_group(&hs));
    (report, result)
}

/// Validates and computes in one go.
pub fn classify(spec: &HypersurfaceSpec, flags: &HypothesisFlags) -> (HypothesisReport, Result<ClassGroupResult>) {
    let (report, hs) = validate_hypotheses(spec, flags);
    let result = hs.and_then(|hs| compute_class_group(&hs));
    (report, result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wpoly::Field;

    fn var(d: usize, f: Field, i: usize) -> WPolynomial {
        WPolynomial::var(d, f, i)
    }

    fn spec(weights: &[u64], field: &str, n: u64, g: Option<WPolynomial>, factors: Option<Vec<WPolynomial>>) -> HypersurfaceSpec {
        HypersurfaceSpec { ring: WeightedRing::with_weights(weights, field.parse().unwrap()).unwrap(), n, g, factors }
    }

    #[test]
    fn cubic_node_group() {
        let q = Field::Rationals;
        let s = spec(&[1, 1], "Q", 3, None, Some(vec![var(2, q, 0), var(2, q, 1)]));
        let (rep, res) = classify(&s, &HypothesisFlags::default());
        let res = res.unwrap();
        assert_eq!(res.group.to_string(), "Z/3");
        assert_eq!(res.generators[0].elements, ["z".to_string(), "x1".to_string()]);
        assert_eq!(rep.normality, Some(NormalityStatus::VerifiedReduced));
        assert!(res.relations.iter().all(|r| r.divisor_identity_holds));
        assert_eq!(res.relations.len(), 3);
    }

    #[test]
    fn fermat_cubic_is_rejected() {
        let q = Field::Rationals;
        let g = (0..3).map(|i| var(3, q, i).pow(3)).fold(WPolynomial::zero(3, q), |a, b| &a + &b);
        let (rep, res) = classify(&spec(&[1, 1, 1], "closure(Q)", 3, Some(g), None), &HypothesisFlags::default());
        assert!(matches!(res, Err(Error::GcdViolation { m: 3, n: 3, gcd: 3 })));
        assert_eq!(rep.violations[0].code, "GCD_VIOLATION");
        assert!(rep.violations[0].message.contains("Z^6"));
    }

    #[test]
    fn diagonal_factorial() {
        let q = Field::Rationals;
        let g = &var(2, q, 0).pow(3) + &var(2, q, 1).pow(5);
        let (rep, res) = classify(&spec(&[5, 3], "Q", 2, Some(g), None), &HypothesisFlags::default());
        assert!(res.unwrap().group.is_trivial());
        assert_eq!(rep.normality, Some(NormalityStatus::VerifiedDiagonal));
    }

    #[test]
    fn repeated_factor() {
        let q = Field::Rationals;
        let g = &var(2, q, 0).pow(2) * &var(2, q, 1);
        let s = spec(&[1, 1], "Q", 2, Some(g), Some(vec![var(2, q, 0).pow(2), var(2, q, 1)]));
        assert!(matches!(classify(&s, &HypothesisFlags::default()).1, Err(Error::RepeatedFactor(_))));
    }

    #[test]
    fn corollary_mode() {
        let q = Field::Rationals;
        let h = &var(2, q, 0).pow(2) + &var(2, q, 1).pow(3);
        let s = spec(&[3, 2], "Q", 3, Some(h), None);
        let (rep, res) = corollary_x0_mode(&s, "x0", &HypothesisFlags::default());
        let res = res.unwrap();
        assert_eq!(rep.x0_weight, Some(1));
        assert_eq!(res.group.to_string(), "Z/3");
        assert_eq!(res.generators[0].elements[1], "x1^2 + x2^3");
        let h = &var(2, q, 0).pow(2) + &var(2, q, 1).pow(2);
        let s = spec(&[1, 1], "closure(Q)", 2, Some(h), None);
        let (_, res) = corollary_x0_mode(&s, "x0", &HypothesisFlags::default());
        assert_eq!(res.unwrap().group.to_string(), "(Z/2)^2");
    }

    #[test]
    fn choices_do_not_matter() {
        let q = Field::Rationals;
        let fs = vec![var(2, q, 0), var(2, q, 1), &var(2, q, 0) + &var(2, q, 1)];
        let (_, hs) = validate_hypotheses(&spec(&[1, 1], "Q", 4, None, Some(fs)), &HypothesisFlags::default());
        let hs = hs.unwrap();
        let base = compute_class_group(&hs).unwrap();
        let alt = compute_class_group_with(&hs, Some(BigInt::from(-1)), Some(vec![BigInt::from(3), BigInt::from(-2)])).unwrap();
        assert_eq!(base.group, alt.group);
        assert_eq!(base.generators, alt.generators);
        assert_eq!(relation_presentation(4, 3).to_string(), "(Z/4)^2");
    }
}
