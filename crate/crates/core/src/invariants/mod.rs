//! Invariant polynomials in the A-variables: Q, Weyl-type contractions,
//! brute-force classification and the jet isomorphism check.

mod classify;
mod jetiso;
mod schemes;

pub use classify::{
    ansatz_monomials, classify_invariants, invariance_defect, n0_action, ClassifyOptions, Classification,
};
pub use jetiso::{jet_isomorphism_report, JetIsoReport, JetIsoStratum};
pub use schemes::{enumerate_schemes, evaluate_contraction, ContractionScheme};

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::algebra::{row_basis, AMonomial, CoeffPoly, Matrix, Scalar};
use crate::ambient::{harmonic_extension, q_value, AmbientSpace, BasepointJets};
use crate::error::Result;
use crate::jets::{generic_n0_jet, BoundaryJet, JetSpace};

/// Where an invariant polynomial came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Q,
    Scheme(String),
    Classified(usize),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Q => write!(f, "Q"),
            Provenance::Scheme(s) => write!(f, "scheme {s}"),
            Provenance::Classified(i) => write!(f, "classified #{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvariantPolynomial {
    pub poly: CoeffPoly,
    pub weight: i32,
    pub provenance: Provenance,
}

impl InvariantPolynomial {
    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.poly.is_real()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.poly.is_weight_homogeneous(self.weight)
    }
}

/// Scheme identifiers `S1, S2, …` in enumeration order.
pub fn scheme_id(k: usize) -> String {
    format!("S{}", k + 1)
}

/// `Q` at the base point on the generic 𝓝₀ jet valid below `2n + 1`.
pub fn q_polynomial(n: usize) -> Result<InvariantPolynomial> {
    let amb = AmbientSpace::new(n)?;
    let jets = JetSpace::new(n)?;
    let f = generic_n0_jet(&jets, 2 * n as i32 + 1);
    Ok(InvariantPolynomial { poly: q_value(&amb, &f)?, weight: 2 * n as i32, provenance: Provenance::Q })
}

/// Evaluates `scheme` on the harmonic extension of one jet.
pub fn contraction_of_jet(scheme: &ContractionScheme, f: &BoundaryJet) -> Result<CoeffPoly> {
    let amb = AmbientSpace::new(f.n())?;
    let need = 2 * f.n() as i32;
    let ext = harmonic_extension(&amb, &f.truncate(need))?;
    evaluate_contraction(scheme, &BasepointJets::from_extension(&ext))
}

/// Every scheme evaluated on the generic 𝓝₀ jet; in enumeration order.
pub fn weyl_invariants(n: usize) -> Result<Vec<(ContractionScheme, InvariantPolynomial)>> {
    let amb = AmbientSpace::new(n)?;
    let jets = JetSpace::new(n)?;
    let f = generic_n0_jet(&jets, 2 * n as i32);
    let ext = harmonic_extension(&amb, &f)?;
    let bj = BasepointJets::from_extension(&ext);
    let schemes = enumerate_schemes(n);
    let polys: Vec<Result<CoeffPoly>> = schemes.par_iter().map(|s| evaluate_contraction(s, &bj)).collect();
    schemes
        .into_iter()
        .zip(polys)
        .enumerate()
        .map(|(k, (s, p))| {
            Ok((s, InvariantPolynomial { poly: p?, weight: 2 * n as i32, provenance: Provenance::Scheme(scheme_id(k)) }))
        })
        .collect()
}

/// Coefficient vectors of `polys` over the union of their monomials.
pub fn coefficient_matrix(polys: &[CoeffPoly]) -> (Vec<AMonomial>, Matrix) {
    let mut monos: Vec<AMonomial> = polys.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
    monos.sort();
    monos.dedup();
    let index: BTreeMap<&AMonomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut mat = Matrix::zeros(polys.len(), monos.len());
    for (r, p) in polys.iter().enumerate() {
        for (m, c) in p.terms() {
            mat.set(r, index[m], c.clone());
        }
    }
    (monos, mat)
}

/// Dimension of the span of the given polynomials.
pub fn span_rank(polys: &[CoeffPoly]) -> usize {
    if polys.is_empty() {
        return 0;
    }
    coefficient_matrix(polys).1.rank()
}

/// Linear relations `Σ c_i p_i = 0` among `polys`, as a basis of coefficient vectors.
pub fn linear_relations(polys: &[CoeffPoly]) -> Vec<Vec<Scalar>> {
    if polys.is_empty() {
        return Vec::new();
    }
    let (_, mat) = coefficient_matrix(polys);
    let rel = crate::algebra::nullspace(&mat.transpose());
    row_basis(&rel)
}

/// Result of comparing Q and the contractions against the classified space.
#[derive(Clone, Debug, PartialEq)]
pub struct CompletenessReport {
    pub n: usize,
    pub q: InvariantPolynomial,
    pub schemes: Vec<(ContractionScheme, InvariantPolynomial)>,
    pub span_dim: usize,
    pub relations: Vec<Vec<Scalar>>,
    pub classified_dim: usize,
    /// Rank of the union of both families.
    pub joint_rank: usize,
}

impl CompletenessReport {
    /// Both families span the same space.
    pub fn spans_agree(&self) -> bool {
        self.span_dim == self.classified_dim && self.joint_rank == self.span_dim
    }
}

pub fn completeness_report(n: usize, options: &ClassifyOptions) -> Result<CompletenessReport> {
    let q = q_polynomial(n)?;
    let schemes = weyl_invariants(n)?;
    let mut polys = vec![q.poly.clone()];
    polys.extend(schemes.iter().map(|(_, p)| p.poly.clone()));
    let span_dim = span_rank(&polys);
    let relations = linear_relations(&polys);
    let classified = classify_invariants(n, 2 * n as i32, options)?;
    let mut joint = polys.clone();
    joint.extend(classified.basis.iter().map(|b| b.poly.clone()));
    Ok(CompletenessReport {
        n,
        q,
        schemes,
        span_dim,
        relations,
        classified_dim: classified.basis.len(),
        joint_rank: span_rank(&joint),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AVariable;

    #[test]
    fn q_at_n2_is_multiple_of_a22() {
        let q = q_polynomial(2).unwrap();
        let vars = q.poly.variables();
        assert_eq!(vars, vec![AVariable::new(vec![2], vec![2], 0)]);
        assert!(q.is_real());
        assert!(q.is_homogeneous());
    }

    #[test]
    fn n2_schemes_vanish() {
        for (_, p) in weyl_invariants(2).unwrap() {
            assert!(p.is_zero());
        }
    }

    #[test]
    fn relations_of_dependent_family() {
        let a = CoeffPoly::var(AVariable::new(vec![1], vec![2], 0));
        let b = a.scale(&Scalar::from_int(3));
        let rel = linear_relations(&[a.clone(), b, CoeffPoly::zero()]);
        assert_eq!(rel.len(), 2);
        assert_eq!(span_rank(&[a]), 1);
    }
}
