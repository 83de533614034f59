use std::collections::BTreeMap;

use crinv::algebra::{AVariable, CoeffPoly, Scalar};
use crinv::ambient::{q_value, AmbientSpace};
use crinv::invariants::{
    completeness_report, contraction_of_jet, jet_isomorphism_report, q_polynomial, weyl_invariants,
    ClassifyOptions,
};
use crinv::jets::{free_n0_variables, generic_n0_jet, substitute_weights, BoundaryJet, JetSpace};
use crinv::sampling::Sampler;

/// Random values for the free 𝓝₀ coordinates, conjugate-consistent so the
/// specialized jet is real.
fn real_values(space: &JetSpace, below: i32, seed: u64) -> BTreeMap<AVariable, Scalar> {
    let mut smp = Sampler::new(seed);
    let mut out = BTreeMap::new();
    for v in free_n0_variables(space, below) {
        if out.contains_key(&v) {
            continue;
        }
        if v.is_real() {
            out.insert(v, Scalar::from_rational(smp.rational()));
        } else {
            let c = smp.scalar();
            out.insert(v.conj(), c.conj());
            out.insert(v, c);
        }
    }
    out
}

fn specialize(f: &BoundaryJet, values: &BTreeMap<AVariable, Scalar>) -> BoundaryJet {
    f.map_coeffs(|c| CoeffPoly::constant(c.eval(values)))
}

#[test]
fn generic_polynomials_match_numeric_evaluation_n3() {
    let n = 3;
    let js = JetSpace::new(n).unwrap();
    let sp = AmbientSpace::new(n).unwrap();
    let generic = generic_n0_jet(&js, 2 * n as i32 + 1);
    let q = q_polynomial(n).unwrap();
    let w = weyl_invariants(n).unwrap();
    for seed in [11, 12, 13] {
        let values = real_values(&js, 2 * n as i32 + 1, seed);
        let f = specialize(&generic, &values);
        assert!(f.is_real());
        assert_eq!(q_value(&sp, &f).unwrap(), CoeffPoly::constant(q.poly.eval(&values)));
        for (s, p) in &w {
            let numeric = contraction_of_jet(s, &f).unwrap();
            assert_eq!(numeric, CoeffPoly::constant(p.poly.eval(&values)), "{s}");
        }
    }
}

#[test]
fn weight_substitution_scales_by_t_2n() {
    for n in [2usize, 3] {
        let t = Scalar::frac(-3, 2);
        let scale = t.pow(2 * n as u32);
        let q = q_polynomial(n).unwrap();
        assert_eq!(substitute_weights(&q.poly, &t), q.poly.scale(&scale));
        for (_, p) in weyl_invariants(n).unwrap() {
            assert_eq!(substitute_weights(&p.poly, &t), p.poly.scale(&scale));
        }
    }
}

// At n = 2 the components T_{I,J} with entries in {1, 2} and weight w are
// counted by hand: w = 2 has only T_{1,1}, w = 3 has T_{1,2}, T_{2,1},
// T_{11,1} and T_{1,11}. The relations come from weight w − 2 index pairs:
// one at w = 2 (the empty pair), two at w = 3 (I = 1 or J = 1).
#[test]
fn jet_isomorphism_numbers_n2() {
    let r = jet_isomorphism_report(2).unwrap();
    let rows: Vec<_> =
        r.strata.iter().map(|s| (s.weight, s.n0_dim, s.components, s.relation_rank, s.t_rank)).collect();
    assert_eq!(rows, vec![(2, 0, 1, 1, 0), (3, 2, 4, 2, 2)]);
    assert!(r.holds());
}

#[test]
fn completeness_n2() {
    let r = completeness_report(2, &ClassifyOptions::default()).unwrap();
    assert_eq!((r.span_dim, r.classified_dim, r.joint_rank), (1, 1, 1));
    assert!(r.spans_agree());
    assert!(r.schemes.iter().all(|(_, p)| p.is_zero()));
}
