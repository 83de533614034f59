//! The generic jet of the slice 𝓝₀ with one A-variable per free coefficient.

use std::collections::BTreeMap;

use super::{multi_indices, BoundaryJet, JetSpace};
use crate::algebra::{AVariable, CoeffPoly, Scalar, Validity};
use crate::error::Result;

/// Free coordinates of 𝓝₀ of weight `< below`: all `A^l_{αβ̄}` with
/// `|α|, |β| ≥ 1`, except that in the `(1,1)` block the diagonal entry of the
/// last index is eliminated by the trace condition. At `n = 2` this removes
/// the whole `(1,1)` block.
pub fn free_n0_variables(space: &JetSpace, below: i32) -> Vec<AVariable> {
    let m = space.m();
    let mut out = Vec::new();
    for w in 2..below {
        for l in 0..=((w - 2) / 2) as u32 {
            let rest = w as u32 - 2 * l;
            for p in 1..rest {
                let q = rest - p;
                for alpha in multi_indices(m, p) {
                    for beta in multi_indices(m, q) {
                        let v = AVariable::new(alpha.clone(), beta, l);
                        if !is_eliminated(m, &v) {
                            out.push(v);
                        }
                    }
                }
            }
        }
    }
    out
}

fn unit(m: usize, j: usize) -> Vec<u32> {
    let mut e = vec![0; m];
    e[j] = 1;
    e
}

fn is_eliminated(m: usize, v: &AVariable) -> bool {
    v.block() == (1, 1) && v.alpha == unit(m, m - 1) && v.beta == unit(m, m - 1)
}

/// `Σ A · w'^α w̄'^β v^l` over the free variables of weight `< valid`, with the
/// eliminated diagonal coefficient `A^l_{(m)(m)} = −Σ_{j<m} A^l_{(j)(j)}`.
pub fn generic_n0_jet(space: &JetSpace, valid: i32) -> BoundaryJet {
    let m = space.m();
    let mut f = BoundaryJet::zero(space, Validity::Below(valid));
    for v in free_n0_variables(space, valid) {
        f.add_term(&v.alpha, &v.beta, v.l, CoeffPoly::var(v.clone()));
    }
    let mut l = 0u32;
    while 2 + 2 * (l as i32) < valid {
        let mut c = CoeffPoly::zero();
        for j in 0..m - 1 {
            c.add_scaled(&CoeffPoly::var(AVariable::new(unit(m, j), unit(m, j), l)), &Scalar::from_int(-1));
        }
        f.add_term(&unit(m, m - 1), &unit(m, m - 1), l, c);
        l += 1;
    }
    f
}

/// Coordinates of a jet on the free 𝓝₀ variables of weight below its validity.
/// Meaningful for jets already in 𝓝₀.
pub fn n0_coordinates(f: &BoundaryJet) -> Result<BTreeMap<AVariable, CoeffPoly>> {
    let below = f.valid().bound().unwrap_or_else(|| f.body().max_weight().unwrap_or(0) + 1);
    let mut out = BTreeMap::new();
    for v in free_n0_variables(f.space(), below) {
        let c = f.coeff(&v.alpha, &v.beta, v.l)?;
        out.insert(v, c);
    }
    Ok(out)
}

/// Replaces every A-variable `a` by `t^{weight(a)} a`.
pub fn substitute_weights(poly: &CoeffPoly, t: &Scalar) -> CoeffPoly {
    poly.scale_by_weight(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_at_n2() {
        let s = JetSpace::new(2).unwrap();
        let by_weight = |w: i32| free_n0_variables(&s, w + 1).into_iter().filter(|v| v.weight() == w).count();
        assert_eq!(by_weight(2), 0);
        assert_eq!(by_weight(3), 2);
        assert_eq!(by_weight(4), 3);
    }

    #[test]
    fn counts_at_n3() {
        let s = JetSpace::new(3).unwrap();
        let by_weight = |w: i32| free_n0_variables(&s, w + 1).into_iter().filter(|v| v.weight() == w).count();
        assert_eq!(by_weight(2), 3);
        assert_eq!(by_weight(3), 12);
        assert_eq!(by_weight(4), 28);
        assert_eq!(by_weight(5), 56);
    }

    #[test]
    fn generic_jet_is_real_and_traceless() {
        let s = JetSpace::new(3).unwrap();
        let f = generic_n0_jet(&s, 6);
        assert!(f.is_real());
        for l in 0..2 {
            let tr = &f.coeff(&[1, 0], &[1, 0], l).unwrap() + &f.coeff(&[0, 1], &[0, 1], l).unwrap();
            assert!(tr.is_zero());
        }
    }

    #[test]
    fn weight_substitution() {
        let a = CoeffPoly::var(AVariable::new(vec![2], vec![2], 0));
        assert_eq!(substitute_weights(&a, &Scalar::from_int(3)), a.scale(&Scalar::from_int(81)));
        assert_eq!(substitute_weights(&CoeffPoly::one(), &Scalar::from_int(5)), CoeffPoly::one());
    }
}
