//! The action of the parabolic subgroup on boundary jets.

use super::{BoundaryJet, JetSpace};
use crate::algebra::{CoeffPoly, GradedSeries, Scalar, Validity};
use crate::ambient::GroupElement;
use crate::error::{Error, Result};

/// The map `φ_h(w', v) = (w'', v'')` as substitutions for `w_j`, `w̄_j`, `v`,
/// valid below `w`.
///
/// `ξ = (1, w', |w'|²/2 + iv)` is mapped to `η = hξ`, rescaled to `η/η_0`,
/// and `v''` is read off as the imaginary part of the last coordinate.
pub fn siegel_map(h: &GroupElement, space: &JetSpace, w: i32) -> Result<Vec<GradedSeries>> {
    let n = space.n();
    if h.n() != n {
        return Err(Error::Invalid("dimension mismatch in boundary action".into()));
    }
    let lambda = h.lambda().ok_or(Error::NotInParabolic)?.clone();
    let alpha = space.alphabet();
    let valid = Validity::Below(w);
    let m = space.m();

    let mut xi = Vec::with_capacity(n + 1);
    xi.push(GradedSeries::constant(alpha, CoeffPoly::one(), Validity::Exact));
    for j in 0..m {
        xi.push(space.w(j, Validity::Exact));
    }
    xi.push(space.siegel_u());

    let a = h.matrix();
    let eta: Vec<GradedSeries> = (0..=n)
        .map(|r| {
            let mut s = GradedSeries::zero(alpha, Validity::Exact);
            for (k, x) in xi.iter().enumerate() {
                if !a.get(r, k).is_zero() {
                    s = s.add(&x.scale(a.get(r, k))).expect("same alphabet");
                }
            }
            s
        })
        .collect();

    // 1/η_0 = λ⁻¹ Σ_k (−ε/λ)^k with ε = η_0 − λ of positive weight.
    let inv_lambda = lambda.inv()?;
    let eps = eta[0].sub(&GradedSeries::constant(alpha, CoeffPoly::constant(lambda.clone()), Validity::Exact))?;
    let ratio = eps.scale(&-&inv_lambda).truncate(w);
    let mut inv = GradedSeries::zero(alpha, valid);
    let mut pow = GradedSeries::constant(alpha, CoeffPoly::one(), valid);
    for _ in 0..w.max(0) + 1 {
        if pow.is_zero() {
            break;
        }
        inv = inv.add(&pow)?;
        pow = pow.mul(&ratio)?.truncate(w);
    }
    let inv = inv.scale(&inv_lambda);

    let mut subs = Vec::with_capacity(2 * m + 1);
    let wpp: Vec<GradedSeries> = (1..=n).map(|j| eta[j].mul(&inv).map(|s| s.truncate(w))).collect::<Result<_>>()?;
    for s in &wpp[..m] {
        subs.push(s.clone());
    }
    for s in &wpp[..m] {
        subs.push(s.conj());
    }
    let last = &wpp[m];
    // v'' = (w''_n − conj w''_n) / (2i)
    let v = last.sub(&last.conj())?.scale(&Scalar::gauss(0, 1, -1, 2));
    subs.push(v);
    Ok(subs)
}

/// `f ∘ φ_h`, valid to the validity of `f`. The density tag is kept.
///
/// With this convention `action(h1, action(h2, f)) = action(h2·h1, f)`.
pub fn boundary_action(h: &GroupElement, f: &BoundaryJet) -> Result<BoundaryJet> {
    let w = match f.valid() {
        Validity::Below(w) => w,
        Validity::Exact => {
            return Err(Error::Invalid("boundary action needs a jet with a finite validity bound".into()))
        }
    };
    let space = f.space();
    let subs = siegel_map(h, space, w)?;
    let body = f.body().compose(&subs, space.alphabet())?;
    Ok(BoundaryJet::from_series(space, body)?.with_density(f.density()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn jet_v(space: &JetSpace, w: i32) -> BoundaryJet {
        let mut f = BoundaryJet::zero(space, Validity::Below(w));
        f.add_term(&vec![0; space.m()], &vec![0; space.m()], 1, CoeffPoly::one());
        f
    }

    #[test]
    fn identity_acts_trivially() {
        let s = JetSpace::new(3).unwrap();
        let mut f = jet_v(&s, 6);
        f.add_term(&[1, 0], &[0, 2], 0, CoeffPoly::constant(Scalar::i()));
        let g = boundary_action(&GroupElement::identity(3).unwrap(), &f).unwrap();
        assert_eq!(g, f);
    }

    #[test]
    fn dilation_scales_v() {
        let s = JetSpace::new(2).unwrap();
        let f = jet_v(&s, 6);
        let g = boundary_action(&GroupElement::dilation(2, Scalar::from_int(2)).unwrap(), &f).unwrap();
        assert_eq!(g, f.scale(&Scalar::frac(1, 4)));
    }

    #[test]
    fn unipotent_fixes_constants() {
        let s = JetSpace::new(2).unwrap();
        let f = BoundaryJet::from_series(
            &s,
            GradedSeries::constant(s.alphabet(), CoeffPoly::constant(Scalar::from_int(3)), Validity::Below(6)),
        )
        .unwrap();
        let h = GroupElement::unipotent(2, &[Scalar::gauss(1, 2, 1, 3)], &BigRational::new(1.into(), 2.into())).unwrap();
        assert_eq!(boundary_action(&h, &f).unwrap(), f);
    }

    #[test]
    fn non_parabolic_rejected() {
        let s = JetSpace::new(2).unwrap();
        // Swap ξ_0 and ξ_n: an isometry that moves the base direction.
        let m = crate::algebra::Matrix::from_ints(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]);
        let h = GroupElement::new(2, m).unwrap();
        assert!(matches!(boundary_action(&h, &jet_v(&s, 4)), Err(Error::NotInParabolic)));
    }
}
