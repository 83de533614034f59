//! Seeded verification routines shared by the `selfcheck` command and the
//! acceptance suite. Each returns a [`Check`] naming the first counterexample.

use std::fmt;

use crate::algebra::{Scalar, Validity};
use crate::ambient::{
    check_harmonic_relations, harmonic_extension, harmonic_extension_from, initial_extension, q_operator,
    q_value, AmbientSeries, AmbientSpace, BasepointJets,
};
use crate::error::Result;
use crate::invariants::{contraction_of_jet, enumerate_schemes, evaluate_contraction};
use crate::jets::{
    check_conditions, generators_at_weight, project_normal_form, JetSpace, NormalFormSlice,
    PluriKind, SliceKind,
};
use crate::sampling::Sampler;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub counterexample: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>) -> Self {
        Check { name: name.into(), cases: 0, counterexample: None }
    }

    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    /// Records one case; only the first failure is kept.
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(what());
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "{}: ok ({} cases)", self.name, self.cases),
            Some(c) => write!(f, "{}: FAILED after {} cases: {}", self.name, self.cases, c),
        }
    }
}

fn same(a: &AmbientSeries, b: &AmbientSeries) -> bool {
    a.agrees_with(b).unwrap_or(false)
}

/// `ΔL = n + 1`.
pub fn startup_identity(n: usize) -> Result<Check> {
    let sp = AmbientSpace::new(n)?;
    let mut c = Check::new(format!("startup identity n={n}"));
    let dl = sp.defining_form().laplacian();
    let expect = AmbientSeries::constant(&sp, Scalar::from_int(n as i64 + 1).into(), Validity::Exact);
    c.record(same(&dl, &expect), || format!("ΔL = {}", dl.body()));
    Ok(c)
}

/// `[Δ, L^k]h = k L^{k−1}(Z + Z̄ + n + k)h` for `k = 1..n` on random
/// homogeneous `h`.
pub fn commutator_identities(n: usize, seed: u64, samples: usize) -> Result<Check> {
    let sp = AmbientSpace::new(n)?;
    let mut smp = Sampler::new(seed);
    let mut c = Check::new(format!("commutator [Δ, L^k] n={n}"));
    for k in 1..=n {
        for s in 0..samples {
            let bideg = (s as i32 % 4 - 2, (s as i32 / 2) % 3 - 1);
            let h = smp.ambient(&sp, bideg, 0..5, Validity::Exact, 0.4);
            let lhs = h.mul_l_pow(k).laplacian().sub(&h.laplacian().mul_l_pow(k))?;
            let inner = h.euler_z().add(&h.euler_zbar())?.add(&h.scale(&Scalar::from_int((n + k) as i64)))?;
            let rhs = inner.mul_l_pow(k - 1).scale(&Scalar::from_int(k as i64));
            c.record(same(&lhs, &rhs), || format!("k={k}, h of bidegree {bideg:?}: {}", h.body()));
        }
    }
    Ok(c)
}

/// `Δⁿ(Lh) ∈ (L)` for random `h` of bidegree `(−1, −1)`, with both division
/// routes agreeing on the quotient.
pub fn laplacian_power_preserves_ideal(n: usize, seed: u64, samples: usize) -> Result<Check> {
    let sp = AmbientSpace::new(n)?;
    let mut smp = Sampler::new(seed);
    let mut c = Check::new(format!("Δⁿ(L·h) ∈ (L) n={n}"));
    for _ in 0..samples {
        let h = smp.ambient(&sp, (-1, -1), 0..2 * n as i32 + 3, Validity::Exact, 0.3);
        let g = h.mul_l().laplacian_pow(n);
        let ok = match (g.div_l(), g.div_l_by_solve()) {
            (Ok(a), Ok(b)) => same(&a, &b),
            _ => false,
        };
        c.record(ok, || format!("h = {}", h.body()));
    }
    Ok(c)
}

fn tensor_orders(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|p| (1..=n).map(move |q| (p, q))).collect()
}

/// Harmonicity `Δf̃ ∈ (L^{n−1})` and independence of the tensor components
/// of weight `< 2n` and of `Q` from the initial extension.
pub fn harmonic_extensions(n: usize, seed: u64, samples: usize) -> Result<Check> {
    let sp = AmbientSpace::new(n)?;
    let js = JetSpace::new(n)?;
    let mut smp = Sampler::new(seed);
    let mut c = Check::new(format!("harmonic extension n={n}"));
    let top = 2 * n as i32 + 1;
    for s in 0..samples {
        let f = smp.real_jet(&js, top, 0.3);
        let ext = harmonic_extension(&sp, &f)?;
        c.record(ext.series.laplacian().div_l_pow(n - 1).is_ok(), || format!("sample {s}: Δf̃ ∉ (L^{})", n - 1));

        let r = smp.ambient(&sp, (-1, -1), 0..top - 2, Validity::Below(top - 2), 0.3);
        let r = r.add(&r.conj())?;
        let init = initial_extension(&sp, &f)?;
        let moved = init.add(&r.mul_l())?;
        let other = harmonic_extension_from(moved.clone())?;
        let a = BasepointJets::from_extension(&ext);
        let b = BasepointJets::from_extension(&other);
        let mut diff = None;
        'outer: for (p, q) in tensor_orders(n) {
            for i in crate::ambient::multisets(n, p) {
                for j in crate::ambient::multisets(n, q) {
                    if a.weight(&i, &j) >= 2 * n as i32 {
                        continue;
                    }
                    if a.component(&i, &j)? != b.component(&i, &j)? {
                        diff = Some(format!("sample {s}: T[{i:?};{j:?}] depends on the extension"));
                        break 'outer;
                    }
                }
            }
        }
        c.record(diff.is_none(), || diff.clone().unwrap_or_default());
        let q0 = init.laplacian_pow(n).eval_at_base()?;
        let q1 = moved.laplacian_pow(n).eval_at_base()?;
        c.record(q0 == q1 && q0 == q_value(&sp, &f)?, || format!("sample {s}: Q depends on the extension"));
    }
    Ok(c)
}

/// Reality, Euler and trace relations for components of weight `< 2n`.
pub fn tensor_relations(n: usize, seed: u64, samples: usize) -> Result<Check> {
    let sp = AmbientSpace::new(n)?;
    let js = JetSpace::new(n)?;
    let mut smp = Sampler::new(seed);
    let mut c = Check::new(format!("tensor relations n={n}"));
    for s in 0..samples {
        let f = smp.real_jet(&js, 2 * n as i32, 0.4);
        let rep = check_harmonic_relations(&harmonic_extension(&sp, &f)?, n)?;
        c.record(rep.passed(), || {
            let first = rep.reality.iter().chain(&rep.euler).chain(&rep.trace).next().cloned().unwrap_or_default();
            format!("sample {s}: {first}")
        });
    }
    Ok(c)
}

/// `Q(g) = 0` and `W(f + g) = W(f)` for every pluriharmonic generator `g` of
/// weight `≤ 2n + 2` and every scheme.
pub fn pluriharmonic_annihilation(n: usize, seed: u64) -> Result<Check> {
    let sp = AmbientSpace::new(n)?;
    let js = JetSpace::new(n)?;
    let mut smp = Sampler::new(seed);
    let mut c = Check::new(format!("pluriharmonic annihilation n={n}"));
    let top = 2 * n as i32 + 3;
    let f = smp.real_jet(&js, 2 * n as i32, 0.5);
    let schemes = enumerate_schemes(n);
    let base: Vec<_> = schemes.iter().map(|s| contraction_of_jet(s, &f)).collect::<Result<_>>()?;
    for w in 0..top {
        for (k, g) in generators_at_weight(&js, w, PluriKind::P).into_iter().enumerate() {
            let g = g.with_validity(Validity::Below(top));
            let q = q_operator(&sp, &g)?;
            c.record(q.is_zero(), || format!("Q of generator {k} at weight {w} is {}", q.body()));
            let fg = f.add(&g.truncate(2 * n as i32))?;
            for (s, b) in schemes.iter().zip(&base) {
                let v = contraction_of_jet(s, &fg)?;
                c.record(v == *b, || format!("scheme {s} moves under generator {k} at weight {w}"));
            }
        }
    }
    Ok(c)
}

/// Round trip, slice membership and idempotence of both projections. At
/// `n = 2` the 𝓝₁ blocks `(2,2)`, `(2,3)`, `(3,2)`, `(3,3)` must vanish.
pub fn normal_forms(n: usize, seed: u64, samples: usize, max_weight: i32) -> Result<Check> {
    let js = JetSpace::new(n)?;
    let mut smp = Sampler::new(seed);
    let mut c = Check::new(format!("normal forms n={n}"));
    for s in 0..samples {
        let f = smp.real_jet(&js, max_weight, 0.4);
        for kind in [SliceKind::N0, SliceKind::N1] {
            let slice = NormalFormSlice::new(kind, n, max_weight);
            let p = project_normal_form(&f, &slice)?;
            let sum = p.nf.add(&p.ph)?;
            c.record(sum == f.truncate(max_weight), || format!("sample {s} {kind:?}: nf + ph ≠ f"));
            let cond = check_conditions(&p.nf, kind)?;
            c.record(cond.passed(), || format!("sample {s} {kind:?}: nf leaves the slice"));
            let again = project_normal_form(&p.nf, &slice)?;
            c.record(again.nf == p.nf && again.ph.is_zero(), || format!("sample {s} {kind:?}: not idempotent"));
            c.record(p.nf.is_real() && p.ph.is_real(), || format!("sample {s} {kind:?}: projection not real"));
            if kind == SliceKind::N1 && n == 2 {
                for (a, b) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
                    c.record(p.nf.block(a, b).is_zero(), || format!("sample {s}: A_({a},{b}) of the 𝓝₁ part"));
                }
            }
        }
    }
    Ok(c)
}

fn norm_pow(lambda: &Scalar, e: i64) -> Result<Scalar> {
    Scalar::from_rational(lambda.norm_sqr()).powi(e)
}

/// Contractions of `h*f̃` at `ẽ_0` equal `|λ|^{−2n}` times those of `f̃` for
/// random numeric jets and random parabolic `h`.
pub fn ambient_equivariance(n: usize, seed: u64, samples: usize) -> Result<Check> {
    let sp = AmbientSpace::new(n)?;
    let js = JetSpace::new(n)?;
    let mut smp = Sampler::new(seed);
    let schemes = enumerate_schemes(n);
    let mut c = Check::new(format!("ambient equivariance n={n}"));
    for s in 0..samples {
        let f = smp.real_jet(&js, 2 * n as i32, 0.5);
        let h = if s % 2 == 0 { smp.dilation(n)? } else { smp.parabolic(n)? };
        let lambda = h.lambda().cloned().expect("parabolic");
        let ext = harmonic_extension(&sp, &f)?;
        let moved = h.pullback(&ext.series)?;
        let a = BasepointJets::from_extension(&ext);
        let b = BasepointJets::new(&moved, ext.determined_below());
        let factor = norm_pow(&lambda, -(n as i64))?;
        for sc in &schemes {
            let x = evaluate_contraction(sc, &a)?;
            let y = evaluate_contraction(sc, &b)?;
            c.record(y == x.scale(&factor), || format!("sample {s}, {h}, scheme {sc}: {y} vs {x}"));
        }
    }
    Ok(c)
}
