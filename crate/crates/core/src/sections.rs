//! Global sections of integral divisors on the registry, their images in `R`
//! under multiplication by `T^j = (z^a x^b)^j`, and the check that these
//! images reproduce `R` degree by degree.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperring::{Hypersurface, RingElement, Subspace};
use crate::qdivisor::{ComponentKind, Construction, QDivisor, WeilDivisor};
use crate::wpoly::{enumerate_monomials, Exponents, WPolynomial};

/// The rational function `x^numerator / prod_P phi_P^{E_P}`, a section of
/// `O_X(E)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub numerator: Exponents,
    pub divisor: WeilDivisor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionSpace {
    pub divisor: WeilDivisor,
    pub degree: BigInt,
    pub basis: Vec<Section>,
}

impl SectionSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Sections `x^mu / prod phi_P^{E_P}` of a fixed `E` map to `z^u * x^mu * factor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageMap {
    pub u: u64,
    pub factor: WPolynomial,
}

impl ImageMap {
    pub fn apply(&self, hs: &Hypersurface, mu: &[u32]) -> RingElement {
        hs.z_power_times(self.u, &self.factor.mul_monomial(mu))
    }
}

/// A degree whose section data disagrees with `R`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeFailure {
    pub degree: i64,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionRingReport {
    pub depth: u64,
    /// `dim H^0(floor(jD))` against `dim R_j` and the image bijection.
    pub section_failures: Vec<DegreeFailure>,
    /// `dim R_j` against the Hilbert series coefficient.
    pub hilbert_failures: Vec<DegreeFailure>,
}

impl SectionRingReport {
    pub fn sections_pass(&self) -> bool {
        self.section_failures.is_empty()
    }

    pub fn hilbert_pass(&self) -> bool {
        self.hilbert_failures.is_empty()
    }
}

/// `R(X, D) = sum_j H^0(X, O(floor(jD))) T^j` realized inside `R`.
#[derive(Clone, Debug)]
pub struct SectionRing {
    pub hs: Hypersurface,
    pub construction: Construction,
}

impl SectionRing {
    pub fn new(hs: Hypersurface) -> Result<Self> {
        let construction = Construction::new(&hs)?;
        Ok(SectionRing { hs, construction })
    }

    pub fn with_construction(hs: Hypersurface, construction: Construction) -> Self {
        SectionRing { hs, construction }
    }

    /// Sections of `E` are `F / prod phi_P^{E_P}` with `F` a form of degree
    /// `deg E`; the numerators run over the monomials of that degree.
    pub fn h0_basis(&self, e: &WeilDivisor) -> SectionSpace {
        let degree = e.degree(&self.construction.registry);
        let basis = match degree.to_i64() {
            Some(v) if v >= 0 => enumerate_monomials(&self.hs.ring().weights, v)
                .into_iter()
                .map(|numerator| Section { numerator, divisor: e.clone() })
                .collect(),
            _ => Vec::new(),
        };
        SectionSpace { divisor: e.clone(), degree, basis }
    }

    /// `sec * T^j` in normal form. Powers of the factor components common to
    /// all of them are traded for `z^n = g`.
    pub fn section_to_ring_element(&self, sec: &Section, j: i64) -> Result<RingElement> {
        Ok(self.image_map(&sec.divisor, j)?.apply(&self.hs, &sec.numerator))
    }

    /// The part of `x^mu / prod phi_P^{E_P} * T^j` that does not depend on
    /// `mu`: sections of `E` map to `z^u * mu * q` for a fixed form `q`.
    pub fn image_map(&self, e: &WeilDivisor, j: i64) -> Result<ImageMap> {
        let c = &self.construction;
        let reg = &c.registry;
        let hs = &self.hs;
        let field = hs.field();
        let jb = BigInt::from(j) * &c.bezout.b;
        let eps: Vec<BigInt> = (0..reg.len())
            .map(|k| {
                let mut x = -e.coefficient(k);
                if let ComponentKind::Coordinate(i) = reg.component(k).kind {
                    x += &jb * &c.s[i];
                }
                x
            })
            .collect();
        let factor_comps: Vec<usize> = (0..reg.factor_count()).map(|t| reg.component_of_factor(t)).collect();
        let k = factor_comps.iter().map(|&p| eps[p].clone()).min().unwrap_or_else(BigInt::zero);
        let zexp = BigInt::from(j) * &c.bezout.a + &c.n() * &k;
        let zexp = zexp
            .to_u64()
            .ok_or_else(|| Error::InternalInconsistency(format!("negative power of z clearing a section in degree {j}")))?;
        let mut poly = WPolynomial::one(hs.nvars(), field);
        for p in 0..reg.len() {
            let rem = if factor_comps.contains(&p) { &eps[p] - &k } else { eps[p].clone() };
            let rem = rem.to_u32().ok_or_else(|| {
                Error::InternalInconsistency(format!("section in degree {j} keeps a pole along {}", reg.component(p).label))
            })?;
            if rem == 0 {
                continue;
            }
            match (&reg.component(p).kind, &reg.component(p).form) {
                (ComponentKind::Coordinate(i), _) => {
                    let mut e = vec![0; hs.nvars()];
                    e[*i] = rem;
                    poly = poly.mul_monomial(&e);
                }
                (_, Some(form)) => poly = &poly * &form.pow(rem),
                (_, None) => {
                    return Err(Error::InternalInconsistency(format!(
                        "factor {} has no explicit form",
                        reg.component(p).label
                    )))
                }
            }
        }
        let lambda = (0..reg.factor_count()).fold(BigRational::one(), |acc, t| field.mul(&acc, reg.factor_scalar(t)));
        let kk = k.to_i64().ok_or_else(|| Error::Overflow("section exponent".into()))?;
        let poly = poly.scale(&field.pow(&lambda, -kk));
        let reduced = hs.z_power_times(zexp, &poly);
        let u = zexp % hs.n();
        Ok(ImageMap { u, factor: reduced.z_coefficients()[u as usize].clone() })
    }

    /// Sections of `floor(j D)` mapped into `R_j`.
    pub fn degree_component(&self, j: i64) -> Result<Vec<RingElement>> {
        let floor = self.construction.floor_of_multiple(&self.hs, j)?;
        let space = self.h0_basis(&floor.divisor);
        let map = self.image_map(&floor.divisor, j)?;
        Ok(space.basis.iter().map(|s| map.apply(&self.hs, &s.numerator)).collect())
    }

    /// For every `j <= depth`: `dim H^0(floor(jD)) = dim R_j = ` Hilbert
    /// coefficient, and the images of the section basis are (up to nonzero
    /// scalars) exactly the monomial basis `{z^u mu}` of `R_j`.
    pub fn verify(&self, depth: u64) -> Result<SectionRingReport> {
        let hilbert = self.hs.hilbert_series(depth as usize);
        let mut section_failures = Vec::new();
        let mut hilbert_failures = Vec::new();
        for j in 0..=depth as i64 {
            let basis = self.hs.graded_component_basis(j);
            if BigInt::from(basis.len()) != hilbert[j as usize] {
                hilbert_failures.push(DegreeFailure {
                    degree: j,
                    message: format!("dim R_j = {}, Hilbert coefficient {}", basis.len(), hilbert[j as usize]),
                });
            }
            let floor = self.construction.floor_of_multiple(&self.hs, j)?;
            let space = self.h0_basis(&floor.divisor);
            if space.dim() != basis.len() {
                section_failures.push(DegreeFailure {
                    degree: j,
                    message: format!("dim H^0 = {}, dim R_j = {}", space.dim(), basis.len()),
                });
                continue;
            }
            let mut hit = vec![false; basis.len()];
            let map = self.image_map(&floor.divisor, j)?;
            for sec in &space.basis {
                let img = map.apply(&self.hs, &sec.numerator);
                let idx = basis.to_vector(&self.hs, &img).ok().filter(|v| v.len() == 1).map(|v| v[0].0);
                match idx {
                    Some(i) if !hit[i] => hit[i] = true,
                    _ => {
                        section_failures.push(DegreeFailure {
                            degree: j,
                            message: format!("section image {} is not a new basis monomial", self.hs.display(&img)),
                        });
                        break;
                    }
                }
            }
        }
        Ok(SectionRingReport { depth, section_failures, hilbert_failures })
    }

    /// `H^0(X, O(floor(E0 + jD))) T^j` as a subspace of `R_j`.
    pub fn divisorial_module_component(&self, e0: &QDivisor, j: i64) -> Result<Subspace> {
        let target = self.hs.graded_component_basis(j);
        let e = self.construction.floor_shifted(e0, j);
        let space = self.h0_basis(&e);
        let mut out = Subspace::zero(target.len(), self.hs.field());
        if space.basis.is_empty() {
            return Ok(out);
        }
        let map = self.image_map(&e, j)?;
        for sec in &space.basis {
            let img = map.apply(&self.hs, &sec.numerator);
            out.insert(target.to_vector(&self.hs, &img)?);
        }
        Ok(out)
    }
}
