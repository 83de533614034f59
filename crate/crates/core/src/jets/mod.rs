//! Jets of functions on the sphere at the base point, in Siegel coordinates
//! `(w', w̄', v)`.

mod action;
mod generic;
mod normal;
mod pluri;

pub use action::{boundary_action, siegel_map};
pub use generic::{free_n0_variables, generic_n0_jet, n0_coordinates, substitute_weights};
pub use normal::{
    check_conditions, check_n1_conditions, delta_prime, jet_monomials, project_normal_form, verify_direct_sum,
    ConditionReport, ConditionResult, DirectSumReport, NormalFormSlice, Projection, SliceKind, StratumCounts,
};
pub use pluri::{generators_at_weight, pluriharmonic_span, PluriKind};

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{Alphabet, AVariable, CoeffPoly, GradedSeries, Scalar, Validity, VarSpec};
use crate::error::{Error, Result};

/// All multi-indices of length `m` with `|α| = total`, in lexicographic order.
pub fn multi_indices(m: usize, total: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; m];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    if m == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, total, &mut cur, &mut out);
    out
}

/// Variable layout for jets at dimension `n`: `w_1..w_{n-1}`, then
/// `w̄_1..w̄_{n-1}`, then `v`.
#[derive(Clone, Debug)]
pub struct JetSpace {
    n: usize,
    alphabet: Arc<Alphabet>,
}

impl PartialEq for JetSpace {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
    }
}

impl JetSpace {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid(format!("dimension n must be at least 2, got {n}")));
        }
        let m = n - 1;
        let mut vars = Vec::with_capacity(2 * m + 1);
        for j in 0..m {
            vars.push(VarSpec { name: format!("w{}", j + 1), weight: 1, conj: m + j, laurent: false });
        }
        for j in 0..m {
            vars.push(VarSpec { name: format!("wb{}", j + 1), weight: 1, conj: j, laurent: false });
        }
        vars.push(VarSpec { name: "v".into(), weight: 2, conj: 2 * m, laurent: false });
        Ok(JetSpace { n, alphabet: Alphabet::new(format!("jets(n={n})"), vars)? })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of `w'` variables, `n - 1`.
    pub fn m(&self) -> usize {
        self.n - 1
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn exps(&self, alpha: &[u32], beta: &[u32], l: u32) -> Vec<i32> {
        let mut e: Vec<i32> = alpha.iter().map(|&a| a as i32).collect();
        e.extend(beta.iter().map(|&b| b as i32));
        e.push(l as i32);
        e
    }

    pub fn split(&self, exps: &[i32]) -> (Vec<u32>, Vec<u32>, u32) {
        let m = self.m();
        (
            exps[..m].iter().map(|&e| e as u32).collect(),
            exps[m..2 * m].iter().map(|&e| e as u32).collect(),
            exps[2 * m] as u32,
        )
    }

    pub fn w(&self, j: usize, valid: Validity) -> GradedSeries {
        GradedSeries::variable(&self.alphabet, j, valid)
    }

    pub fn wbar(&self, j: usize, valid: Validity) -> GradedSeries {
        GradedSeries::variable(&self.alphabet, self.m() + j, valid)
    }

    pub fn v(&self, valid: Validity) -> GradedSeries {
        GradedSeries::variable(&self.alphabet, 2 * self.m(), valid)
    }

    /// `|w'|² = Σ w_j w̄_j`.
    pub fn norm_sq(&self) -> GradedSeries {
        let mut s = GradedSeries::zero(&self.alphabet, Validity::Exact);
        for j in 0..self.m() {
            let mut a = vec![0; self.m()];
            a[j] = 1;
            s.add_term(self.exps(&a, &a, 0), CoeffPoly::one());
        }
        s
    }

    /// `u = |w'|²/2 + i v`, the value of `ξ_n` on the null cone at `ξ_0 = 1`.
    pub fn siegel_u(&self) -> GradedSeries {
        let half = self.norm_sq().scale(&Scalar::frac(1, 2));
        half.add(&self.v(Validity::Exact).scale(&Scalar::i())).expect("same alphabet")
    }
}

/// A weight-truncated jet at `e_0` with a density tag `(p, q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryJet {
    space: JetSpace,
    body: GradedSeries,
    density: (i32, i32),
}

impl BoundaryJet {
    pub fn zero(space: &JetSpace, valid: Validity) -> Self {
        BoundaryJet { space: space.clone(), body: GradedSeries::zero(space.alphabet(), valid), density: (0, 0) }
    }

    pub fn from_series(space: &JetSpace, body: GradedSeries) -> Result<Self> {
        if !body.same_alphabet(&GradedSeries::zero(space.alphabet(), Validity::Exact)) {
            return Err(Error::AlphabetMismatch(body.alphabet().label.clone(), space.alphabet().label.clone()));
        }
        Ok(BoundaryJet { space: space.clone(), body, density: (0, 0) })
    }

    pub fn with_density(mut self, density: (i32, i32)) -> Self {
        self.density = density;
        self
    }

    pub fn space(&self) -> &JetSpace {
        &self.space
    }

    pub fn n(&self) -> usize {
        self.space.n
    }

    pub fn body(&self) -> &GradedSeries {
        &self.body
    }

    pub fn density(&self) -> (i32, i32) {
        self.density
    }

    pub fn valid(&self) -> Validity {
        self.body.valid()
    }

    pub fn add_term(&mut self, alpha: &[u32], beta: &[u32], l: u32, c: CoeffPoly) {
        let e = self.space.exps(alpha, beta, l);
        self.body.add_term(e, c);
    }

    pub fn coeff(&self, alpha: &[u32], beta: &[u32], l: u32) -> Result<CoeffPoly> {
        self.body.coeff(&self.space.exps(alpha, beta, l))
    }

    /// Terms as `(α, β, l, coefficient)` in canonical order.
    pub fn terms(&self) -> Vec<(Vec<u32>, Vec<u32>, u32, CoeffPoly)> {
        self.body
            .terms()
            .map(|(k, c)| {
                let (a, b, l) = self.space.split(&k.exps);
                (a, b, l, c.clone())
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.body.is_real()
    }

    pub fn conj(&self) -> Self {
        BoundaryJet { space: self.space.clone(), body: self.body.conj(), density: (self.density.1, self.density.0) }
    }

    /// `(f + conj f) / 2`.
    pub fn real_part(&self) -> Self {
        let s = self.body.add(&self.body.conj()).expect("same alphabet").scale(&Scalar::frac(1, 2));
        BoundaryJet { space: self.space.clone(), body: s, density: self.density }
    }

    pub fn add(&self, other: &BoundaryJet) -> Result<Self> {
        Ok(BoundaryJet { space: self.space.clone(), body: self.body.add(&other.body)?, density: self.density })
    }

    pub fn sub(&self, other: &BoundaryJet) -> Result<Self> {
        Ok(BoundaryJet { space: self.space.clone(), body: self.body.sub(&other.body)?, density: self.density })
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        BoundaryJet { space: self.space.clone(), body: self.body.scale(s), density: self.density }
    }

    pub fn truncate(&self, w: i32) -> Self {
        BoundaryJet { space: self.space.clone(), body: self.body.truncate(w), density: self.density }
    }

    pub fn with_validity(&self, v: Validity) -> Self {
        BoundaryJet { space: self.space.clone(), body: self.body.with_validity(v), density: self.density }
    }

    pub fn map_coeffs(&self, f: impl Fn(&CoeffPoly) -> CoeffPoly) -> Self {
        BoundaryJet { space: self.space.clone(), body: self.body.map_coeffs(f), density: self.density }
    }

    /// Terms of weight exactly `w`.
    pub fn stratum(&self, w: i32) -> Self {
        BoundaryJet { space: self.space.clone(), body: self.body.stratum(w), density: self.density }
    }

    /// Regroups the jet into blocks `A_{p,q}(v)` by `(|α|, |β|)`.
    pub fn a_expansion(&self) -> Vec<ABlock> {
        let mut blocks: BTreeMap<(u32, u32), ABlock> = BTreeMap::new();
        for (alpha, beta, l, c) in self.terms() {
            let key = (alpha.iter().sum(), beta.iter().sum());
            blocks
                .entry(key)
                .or_insert_with(|| ABlock { p: key.0, q: key.1, coefficients: BTreeMap::new() })
                .coefficients
                .insert(AVariable::new(alpha, beta, l), c);
        }
        blocks.into_values().collect()
    }

    pub fn block(&self, p: u32, q: u32) -> ABlock {
        self.a_expansion()
            .into_iter()
            .find(|b| b.p == p && b.q == q)
            .unwrap_or(ABlock { p, q, coefficients: BTreeMap::new() })
    }

    /// Inverse of [`BoundaryJet::a_expansion`].
    pub fn reassemble(space: &JetSpace, blocks: &[ABlock], valid: Validity) -> Self {
        let mut f = BoundaryJet::zero(space, valid);
        for b in blocks {
            for (idx, c) in &b.coefficients {
                f.add_term(&idx.alpha, &idx.beta, idx.l, c.clone());
            }
        }
        f
    }

    /// Substitutes numbers for A-variables in every coefficient.
    pub fn evaluate(&self, values: &BTreeMap<AVariable, Scalar>) -> Self {
        self.map_coeffs(|c| CoeffPoly::constant(c.eval(values)))
    }
}

/// The block `A_{p,q}(v) = Σ A^l_{αβ̄} w'^α w̄'^β v^l` with `|α| = p`, `|β| = q`.
#[derive(Clone, Debug, PartialEq)]
pub struct ABlock {
    pub p: u32,
    pub q: u32,
    /// Keyed by the index triple `(α, β, l)`.
    pub coefficients: BTreeMap<AVariable, CoeffPoly>,
}

impl ABlock {
    pub fn is_zero(&self) -> bool {
        self.coefficients.values().all(CoeffPoly::is_zero)
    }
}
