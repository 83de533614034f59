//! Spanning sets for jets of CR-pluriharmonic functions and of the space
//! removed by the Moser slice.

use super::{multi_indices, BoundaryJet, JetSpace};
use crate::algebra::{CoeffPoly, GradedSeries, Scalar, Validity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PluriKind {
    /// `Re(c w'^α (|w'|² + 2iv)^l)`.
    P,
    /// `Re(c ξ̄_j w'^α u^l)` with `ξ̄_0 = 1`, `ξ̄_j = w̄_j`, `ξ̄_n = ū`, `u = |w'|²/2 + iv`.
    P1,
}

fn holomorphic(space: &JetSpace, alpha: &[u32], l: u32) -> GradedSeries {
    let mut g = GradedSeries::monomial(
        space.alphabet(),
        space.exps(alpha, &vec![0; space.m()], 0),
        CoeffPoly::one(),
        Validity::Exact,
    );
    if l > 0 {
        let u = space.siegel_u();
        g = g.mul(&u.pow(l).expect("same alphabet")).expect("same alphabet");
    }
    g
}

fn real_parts(space: &JetSpace, g: GradedSeries, out: &mut Vec<BoundaryJet>) {
    for c in [Scalar::one(), Scalar::i()] {
        let cg = g.scale(&c);
        let re = cg.add(&cg.conj()).expect("same alphabet").scale(&Scalar::frac(1, 2));
        if !re.is_zero() {
            out.push(BoundaryJet::from_series(space, re).expect("same alphabet"));
        }
    }
}

/// Real generators homogeneous of weight exactly `w`.
pub fn generators_at_weight(space: &JetSpace, w: i32, kind: PluriKind) -> Vec<BoundaryJet> {
    let m = space.m();
    let mut out = Vec::new();
    if w < 0 {
        return out;
    }
    match kind {
        PluriKind::P => {
            let two = Scalar::from_int(2);
            for l in 0..=(w / 2) as u32 {
                for alpha in multi_indices(m, w as u32 - 2 * l) {
                    let g = holomorphic(space, &alpha, l).scale(&two.pow(l));
                    real_parts(space, g, &mut out);
                }
            }
        }
        PluriKind::P1 => {
            // j = 0, then j = 1..n-1 (weight 1), then j = n (weight 2).
            for (shift, conj_factor) in conj_factors(space) {
                let rest = w - shift;
                if rest < 0 {
                    continue;
                }
                for l in 0..=(rest / 2) as u32 {
                    for alpha in multi_indices(m, rest as u32 - 2 * l) {
                        let g = holomorphic(space, &alpha, l).mul(&conj_factor).expect("same alphabet");
                        real_parts(space, g, &mut out);
                    }
                }
            }
        }
    }
    out
}

fn conj_factors(space: &JetSpace) -> Vec<(i32, GradedSeries)> {
    let mut out = vec![(0, GradedSeries::constant(space.alphabet(), CoeffPoly::one(), Validity::Exact))];
    for j in 0..space.m() {
        out.push((1, space.wbar(j, Validity::Exact)));
    }
    out.push((2, space.siegel_u().conj()));
    out
}

/// All generators of weight `< max_weight`.
pub fn pluriharmonic_span(space: &JetSpace, max_weight: i32, kind: PluriKind) -> Vec<BoundaryJet> {
    (0..max_weight).flat_map(|w| generators_at_weight(space, w, kind)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_two_generators() {
        let s = JetSpace::new(2).unwrap();
        let gens = generators_at_weight(&s, 2, PluriKind::P);
        let mut norm = BoundaryJet::zero(&s, Validity::Exact);
        norm.add_term(&[1], &[1], 0, CoeffPoly::one());
        let mut v = BoundaryJet::zero(&s, Validity::Exact);
        v.add_term(&[0], &[0], 1, CoeffPoly::constant(Scalar::from_int(-2)));
        assert!(gens.contains(&norm));
        assert!(gens.contains(&v));
    }

    #[test]
    fn real_part_of_w1() {
        let s = JetSpace::new(2).unwrap();
        let gens = generators_at_weight(&s, 1, PluriKind::P);
        let mut re = BoundaryJet::zero(&s, Validity::Exact);
        re.add_term(&[1], &[0], 0, CoeffPoly::constant(Scalar::frac(1, 2)));
        re.add_term(&[0], &[1], 0, CoeffPoly::constant(Scalar::frac(1, 2)));
        assert_eq!(gens[0], re);
        assert!(gens.iter().all(BoundaryJet::is_real));
    }

    #[test]
    fn constants_have_one_real_generator() {
        let s = JetSpace::new(3).unwrap();
        assert_eq!(generators_at_weight(&s, 0, PluriKind::P).len(), 1);
        assert_eq!(generators_at_weight(&s, 0, PluriKind::P1).len(), 1);
    }
}
