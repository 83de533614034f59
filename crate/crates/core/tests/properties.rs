use proptest::prelude::*;

use crinv::algebra::{CoeffPoly, Scalar, Validity};
use crinv::ambient::{harmonic_extension, AmbientSeries, AmbientSpace};
use crinv::jets::{project_normal_form, JetSpace, NormalFormSlice, SliceKind};
use crinv::sampling::Sampler;

fn gauss() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3, -4i64..=4, 1i64..=3).prop_map(|(a, b, c, d)| Scalar::gauss(a, b, c, d))
}

fn linear(sp: &AmbientSpace, u: &[Scalar], bar: bool) -> AmbientSeries {
    let mut out = AmbientSeries::zero(sp, if bar { (0, 1) } else { (1, 0) }, Validity::Exact);
    for (j, c) in u.iter().enumerate() {
        let x = if bar { sp.xi_bar(j) } else { sp.xi(j) };
        out = out.add(&x.scale(c)).unwrap();
    }
    out
}

fn pow(s: &AmbientSeries, e: u32) -> AmbientSeries {
    let mut out = AmbientSeries::constant(s.space(), CoeffPoly::one(), Validity::Exact);
    for _ in 0..e {
        out = out.mul(s).unwrap();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // Δ[(ξ·u)^p (ξ̄·v)^q] = p q ⟨u, v⟩ (ξ·u)^{p−1} (ξ̄·v)^{q−1} with ⟨u, v⟩ = Σ g^{JK̄} u_J v_K,
    // computed through products and the inverse metric rather than termwise.
    #[test]
    fn laplacian_of_plane_wave_powers(
        n in 2usize..=3,
        u in proptest::collection::vec(gauss(), 4),
        v in proptest::collection::vec(gauss(), 4),
        p in 1u32..=3,
        q in 1u32..=3,
    ) {
        let sp = AmbientSpace::new(n).unwrap();
        let (u, v) = (&u[..n + 1], &v[..n + 1]);
        let a = linear(&sp, u, false);
        let b = linear(&sp, v, true);
        let f = pow(&a, p).mul(&pow(&b, q)).unwrap();
        let g = sp.inverse_metric();
        let mut pair = Scalar::zero();
        for j in 0..=n {
            for k in 0..=n {
                pair += &(g.get(j, k) * &(&u[j] * &v[k]));
            }
        }
        let expect = pow(&a, p - 1).mul(&pow(&b, q - 1)).unwrap().scale(&(&pair * &Scalar::from_int((p * q) as i64)));
        prop_assert!(f.laplacian().agrees_with(&expect).unwrap());
    }

    #[test]
    fn commutator_with_l(n in 2usize..=3, seed in any::<u64>(), p in -2i32..=1, q in -2i32..=1) {
        let sp = AmbientSpace::new(n).unwrap();
        let h = Sampler::new(seed).ambient(&sp, (p, q), 0..4, Validity::Exact, 0.5);
        let lhs = h.mul_l().laplacian().sub(&h.laplacian().mul_l()).unwrap();
        let rhs = h.euler_z().add(&h.euler_zbar()).unwrap().add(&h.scale(&Scalar::from_int(n as i64 + 1))).unwrap();
        prop_assert!(lhs.agrees_with(&rhs).unwrap());
    }

    #[test]
    fn division_inverts_multiplication(n in 2usize..=3, seed in any::<u64>(), k in 1usize..=3) {
        let sp = AmbientSpace::new(n).unwrap();
        let h = Sampler::new(seed).ambient(&sp, (-1, 0), 0..5, Validity::Exact, 0.4);
        let g = h.mul_l_pow(k);
        prop_assert!(g.div_l_pow(k).unwrap().agrees_with(&h).unwrap());
        prop_assert!(g.div_l_by_solve().unwrap().agrees_with(&h.mul_l_pow(k - 1)).unwrap());
    }

    #[test]
    fn sampled_jets_and_extensions_are_real(n in 2usize..=3, seed in any::<u64>()) {
        let js = JetSpace::new(n).unwrap();
        let f = Sampler::new(seed).real_jet(&js, 2 * n as i32 + 1, 0.3);
        prop_assert!(f.is_real());
        let ext = harmonic_extension(&AmbientSpace::new(n).unwrap(), &f).unwrap();
        prop_assert!(ext.series.is_real());
    }

    #[test]
    fn projection_splits_and_is_idempotent(seed in any::<u64>(), slice in prop_oneof![Just(SliceKind::N0), Just(SliceKind::N1)]) {
        let js = JetSpace::new(2).unwrap();
        let top = 7;
        let f = Sampler::new(seed).real_jet(&js, top, 0.4);
        let sl = NormalFormSlice::new(slice, 2, top);
        let p = project_normal_form(&f, &sl).unwrap();
        prop_assert_eq!(p.nf.add(&p.ph).unwrap(), f.truncate(top));
        let again = project_normal_form(&p.nf, &sl).unwrap();
        prop_assert_eq!(again.nf, p.nf);
        prop_assert!(again.ph.is_zero());
    }
}
