//! Brute-force classification of polynomials in the 𝓝₀ coordinates that are
//! invariant under the λ = 1 part of the parabolic subgroup.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{coefficient_matrix, InvariantPolynomial, Provenance};
use crate::algebra::{nullspace, row_basis, AMonomial, AVariable, CoeffPoly, Scalar};
use crate::ambient::GroupElement;
use crate::error::{Error, Result};
use crate::jets::{
    boundary_action, free_n0_variables, generic_n0_jet, n0_coordinates, project_normal_form, JetSpace,
    NormalFormSlice, SliceKind,
};
use crate::sampling::Sampler;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub seed: u64,
    pub rotations: usize,
    pub unipotents: usize,
    /// Fresh samples used only to re-verify the basis.
    pub verify: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { seed: 1, rotations: 4, unipotents: 8, verify: 10 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub n: usize,
    pub weight: i32,
    pub seed: u64,
    pub ansatz_size: usize,
    /// Dimension of the solution space after each constraint sample.
    pub dims_after_sample: Vec<usize>,
    pub samples: Vec<String>,
    pub verified_with: Vec<String>,
    pub basis: Vec<InvariantPolynomial>,
}

/// Monomials of weight exactly `weight` in the free 𝓝₀ variables.
///
/// Variables of weight `2n` can only enter linearly once `weight ≤ 2n`.
pub fn ansatz_monomials(space: &JetSpace, weight: i32) -> Vec<AMonomial> {
    if weight < 0 {
        return Vec::new();
    }
    let vars = free_n0_variables(space, weight + 1);
    let mut out = Vec::new();
    fn rec(vars: &[AVariable], start: usize, left: i32, cur: &mut Vec<AVariable>, out: &mut Vec<AMonomial>) {
        if left == 0 {
            let mut m = AMonomial::one();
            for v in cur.iter() {
                m = m.mul(&AMonomial::var(v.clone()));
            }
            out.push(m);
            return;
        }
        for k in start..vars.len() {
            if vars[k].weight() <= left {
                cur.push(vars[k].clone());
                rec(vars, k, left - vars[k].weight(), cur, out);
                cur.pop();
            }
        }
    }
    rec(&vars, 0, weight, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// The 𝓝₀ coordinates of `h·f` for the generic jet `f` valid to `weight + 1`,
/// as polynomials in the coordinates of `f`. Coordinates of weight `w` only
/// depend on coordinates of weight `≤ w`, so the bound may be raised freely.
pub fn n0_action(h: &GroupElement, space: &JetSpace, weight: i32) -> Result<BTreeMap<AVariable, CoeffPoly>> {
    // the Siegel map needs room for v, of weight 2
    let valid = weight.max(2) + 1;
    let f = generic_n0_jet(space, valid);
    let moved = boundary_action(h, &f)?;
    let slice = NormalFormSlice::new(SliceKind::N0, space.n(), valid);
    n0_coordinates(&project_normal_form(&moved, &slice)?.nf)
}

/// `I(A(h·f)) − I(A(f))` for the substitution `action` returned by [`n0_action`].
pub fn invariance_defect(poly: &CoeffPoly, action: &BTreeMap<AVariable, CoeffPoly>) -> CoeffPoly {
    &poly.substitute(action) - poly
}

fn combine(basis: &[Vec<Scalar>], monos: &[AMonomial]) -> Vec<CoeffPoly> {
    basis
        .iter()
        .map(|b| {
            let mut p = CoeffPoly::zero();
            for (c, m) in b.iter().zip(monos) {
                if !c.is_zero() {
                    p.add_term(m.clone(), c.clone());
                }
            }
            p
        })
        .collect()
}

/// Restricts a basis (as rows over `monos`) to the combinations killed by `h`.
fn constrain(
    basis: Vec<Vec<Scalar>>,
    monos: &[AMonomial],
    action: &BTreeMap<AVariable, CoeffPoly>,
) -> Vec<Vec<Scalar>> {
    if basis.is_empty() {
        return basis;
    }
    let defects: Vec<CoeffPoly> =
        combine(&basis, monos).par_iter().map(|p| invariance_defect(p, action)).collect();
    if defects.iter().all(CoeffPoly::is_zero) {
        return basis;
    }
    // y with Σ y_b D_b = 0, then the new rows are yᵀB
    let (_, dm) = coefficient_matrix(&defects);
    let ys = nullspace(&dm.transpose());
    let rows: Vec<Vec<Scalar>> = ys
        .iter()
        .map(|y| {
            let mut row = vec![Scalar::zero(); monos.len()];
            for (yb, b) in y.iter().zip(&basis) {
                if yb.is_zero() {
                    continue;
                }
                for (r, x) in row.iter_mut().zip(b) {
                    if !x.is_zero() {
                        *r += &(yb * x);
                    }
                }
            }
            row
        })
        .collect();
    row_basis(&rows)
}

/// A basis of real polynomials with the same complex span as `polys`,
/// which must be closed under conjugation.
fn real_basis(polys: &[CoeffPoly]) -> Vec<CoeffPoly> {
    let half = Scalar::frac(1, 2);
    let half_i = Scalar::gauss(0, 1, -1, 2);
    let mut cands = Vec::new();
    for p in polys {
        let c = p.conj();
        cands.push((p + &c).scale(&half));
        cands.push((p - &c).scale(&half_i));
    }
    let mut chosen: Vec<CoeffPoly> = Vec::new();
    let mut rank = 0;
    for c in cands {
        if c.is_zero() {
            continue;
        }
        let mut trial = chosen.clone();
        trial.push(c.clone());
        let r = coefficient_matrix(&trial).1.rank();
        if r > rank {
            rank = r;
            chosen.push(c);
        }
    }
    chosen
}

/// P-invariant polynomials of weight `weight` on 𝓝₀, by exact elimination
/// against sampled λ = 1 elements, re-verified on fresh samples.
pub fn classify_invariants(n: usize, weight: i32, options: &ClassifyOptions) -> Result<Classification> {
    if weight < 0 || weight % 2 != 0 || weight > 2 * n as i32 {
        return Err(Error::Invalid(format!("target weight must be even and in 0..={}", 2 * n)));
    }
    let space = JetSpace::new(n)?;
    let monos = ansatz_monomials(&space, weight);
    let mut sampler = Sampler::new(options.seed);
    let solve_with = sampler.unit_elements(n, options.rotations, options.unipotents)?;
    let verify_with = sampler.unit_elements(n, options.verify / 2, options.verify - options.verify / 2)?;

    let actions: Vec<BTreeMap<AVariable, CoeffPoly>> =
        solve_with.par_iter().map(|h| n0_action(h, &space, weight)).collect::<Result<_>>()?;
    let mut basis: Vec<Vec<Scalar>> = (0..monos.len())
        .map(|k| {
            let mut e = vec![Scalar::zero(); monos.len()];
            e[k] = Scalar::one();
            e
        })
        .collect();
    let mut dims = Vec::with_capacity(actions.len());
    for action in &actions {
        basis = constrain(basis, &monos, action);
        dims.push(basis.len());
    }

    let found = combine(&basis, &monos);
    let real = real_basis(&found);
    let (cols, mat) = coefficient_matrix(&real);
    let rows: Vec<Vec<Scalar>> = (0..mat.rows()).map(|r| mat.row(r).to_vec()).collect();
    let rref = row_basis(&rows);
    let mut polys = combine(&rref, &cols);
    if polys.iter().any(|p| !p.is_real()) {
        polys = real;
    }

    for h in &verify_with {
        let action = n0_action(h, &space, weight)?;
        if polys.iter().any(|p| !invariance_defect(p, &action).is_zero()) {
            return Err(Error::InsufficientSampling { element: h.to_string() });
        }
    }

    let basis = polys
        .into_iter()
        .enumerate()
        .map(|(k, poly)| InvariantPolynomial { poly, weight, provenance: Provenance::Classified(k) })
        .collect();
    Ok(Classification {
        n,
        weight,
        seed: options.seed,
        ansatz_size: monos.len(),
        dims_after_sample: dims,
        samples: solve_with.iter().map(|h| h.to_string()).collect(),
        verified_with: verify_with.iter().map(|h| h.to_string()).collect(),
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ansatz_sizes_at_n2() {
        let s = JetSpace::new(2).unwrap();
        assert_eq!(ansatz_monomials(&s, 0).len(), 1);
        assert_eq!(ansatz_monomials(&s, 2).len(), 0);
        // weight 4: the three linear variables only, since weight 2 is empty
        assert_eq!(ansatz_monomials(&s, 4).len(), 3);
    }

    #[test]
    fn identity_action_is_trivial() {
        let s = JetSpace::new(2).unwrap();
        let act = n0_action(&GroupElement::identity(2).unwrap(), &s, 4).unwrap();
        for (v, p) in act {
            assert_eq!(p, CoeffPoly::var(v));
        }
    }

    #[test]
    fn weight_zero_gives_constants() {
        let c = classify_invariants(2, 0, &ClassifyOptions::default()).unwrap();
        assert_eq!(c.basis.len(), 1);
        assert_eq!(c.basis[0].poly, CoeffPoly::one());
    }

    #[test]
    fn n2_weight_two_is_empty() {
        let c = classify_invariants(2, 2, &ClassifyOptions::default()).unwrap();
        assert!(c.basis.is_empty());
    }

    #[test]
    fn n2_weight_four_is_a22() {
        let c = classify_invariants(2, 4, &ClassifyOptions::default()).unwrap();
        assert_eq!(c.basis.len(), 1);
        assert_eq!(c.basis[0].poly, CoeffPoly::var(AVariable::new(vec![2], vec![2], 0)));
    }

    #[test]
    fn odd_weight_rejected() {
        assert!(classify_invariants(2, 3, &ClassifyOptions::default()).is_err());
    }
}
