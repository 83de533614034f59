//! The slices 𝓝₀ and 𝓝₁ and the decomposition of a jet into a slice part
//! plus a pluriharmonic part.
//!
//! Each slice is the common kernel of a finite list of linear functionals on
//! each weight stratum. Projection solves `Φ(Σ c_k g_k) = Φ(f)` over the
//! spanning generators `g_k` of that stratum.

use std::collections::BTreeMap;

use super::pluri::generators_at_weight;
use super::{multi_indices, BoundaryJet, JetSpace, PluriKind};
use crate::algebra::{exact_solve, CoeffPoly, GradedSeries, Matrix, Scalar, Validity};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SliceKind {
    N0,
    N1,
}

impl SliceKind {
    /// The pluriharmonic span complementary to the slice.
    pub fn complement(self) -> PluriKind {
        match self {
            SliceKind::N0 => PluriKind::P,
            SliceKind::N1 => PluriKind::P1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormSlice {
    pub kind: SliceKind,
    pub n: usize,
    /// Strata of weight `< max_weight` are projected.
    pub max_weight: i32,
}

impl NormalFormSlice {
    pub fn new(kind: SliceKind, n: usize, max_weight: i32) -> Self {
        NormalFormSlice { kind, n, max_weight }
    }
}

/// `f = nf + ph` with `nf` in the slice and `ph` in the pluriharmonic span.
#[derive(Clone, Debug, PartialEq)]
pub struct Projection {
    pub nf: BoundaryJet,
    pub ph: BoundaryJet,
}

type Monomial = (Vec<u32>, Vec<u32>, u32);
type Functional = BTreeMap<Monomial, Scalar>;

/// All `(α, β, l)` of weight exactly `w`.
pub fn jet_monomials(space: &JetSpace, w: i32) -> Vec<Monomial> {
    let m = space.m();
    let mut out = Vec::new();
    for l in 0..=(w.max(0) / 2) as u32 {
        let rest = w as u32 - 2 * l;
        for p in 0..=rest {
            for alpha in multi_indices(m, p) {
                for beta in multi_indices(m, rest - p) {
                    out.push((alpha.clone(), beta, l));
                }
            }
        }
    }
    out
}

fn block(mono: &Monomial) -> (u32, u32) {
    (mono.0.iter().sum(), mono.1.iter().sum())
}

/// `Δ' = Σ ∂_{w_j} ∂_{w̄_j}` on a single monomial.
fn delta_prime_monomial(mono: &Monomial) -> Vec<(Monomial, i64)> {
    let mut out = Vec::new();
    for i in 0..mono.0.len() {
        let (a, b) = (mono.0[i], mono.1[i]);
        if a > 0 && b > 0 {
            let mut t = mono.clone();
            t.0[i] -= 1;
            t.1[i] -= 1;
            out.push((t, (a * b) as i64));
        }
    }
    out
}

fn delta_prime_pow(mono: &Monomial, k: u32) -> BTreeMap<Monomial, Scalar> {
    let mut cur: BTreeMap<Monomial, Scalar> = BTreeMap::new();
    cur.insert(mono.clone(), Scalar::one());
    for _ in 0..k {
        let mut next: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in &cur {
            for (t, e) in delta_prime_monomial(m) {
                *next.entry(t).or_insert_with(Scalar::zero) += &(c * &Scalar::from_int(e));
            }
        }
        next.retain(|_, c| !c.is_zero());
        cur = next;
    }
    cur
}

/// `Δ'` on a whole jet; weight and validity drop by 2.
pub fn delta_prime(f: &BoundaryJet) -> BoundaryJet {
    let space = f.space();
    let mut out = BoundaryJet::zero(space, f.valid().shift(-2)).with_density(f.density());
    for (a, b, l, c) in f.terms() {
        for (t, e) in delta_prime_monomial(&(a, b, l)) {
            out.add_term(&t.0, &t.1, t.2, c.scale(&Scalar::from_int(e)));
        }
    }
    out
}

struct Condition {
    name: String,
    functionals: Vec<(Functional, String)>,
}

/// The slice conditions at weight `w`, grouped by the statement they encode.
fn conditions(kind: SliceKind, space: &JetSpace, w: i32) -> Vec<Condition> {
    let m = space.m();
    let monos = jet_monomials(space, w);
    let mut out = Vec::new();
    let cutoff = match kind {
        SliceKind::N0 => 0,
        SliceKind::N1 => 1,
    };
    let vanish: Vec<(Functional, String)> = monos
        .iter()
        .filter(|mono| {
            let (p, q) = block(mono);
            p.min(q) <= cutoff
        })
        .map(|mono| (BTreeMap::from([(mono.clone(), Scalar::one())]), describe(mono)))
        .collect();
    out.push(Condition { name: format!("A_(p,q) = 0 for min(p,q) <= {cutoff}"), functionals: vanish });
    match kind {
        SliceKind::N0 => {
            let mut tr = Vec::new();
            if w >= 2 && w % 2 == 0 {
                let l = ((w - 2) / 2) as u32;
                let mut phi = Functional::new();
                for j in 0..m {
                    let mut e = vec![0; m];
                    e[j] = 1;
                    phi.insert((e.clone(), e, l), Scalar::one());
                }
                tr.push((phi, format!("trace of A_(1,1) at v^{l}")));
            }
            out.push(Condition { name: "Δ'A_(1,1) = 0".into(), functionals: tr });
        }
        SliceKind::N1 => {
            for j in 0..=1u32 {
                for k in 0..=1u32 {
                    let power = j + k + 1;
                    let mut images: BTreeMap<Monomial, Functional> = BTreeMap::new();
                    for mono in monos.iter().filter(|mono| block(mono) == (2 + j, 2 + k)) {
                        for (t, c) in delta_prime_pow(mono, power) {
                            images.entry(t).or_default().insert(mono.clone(), c);
                        }
                    }
                    let fs = images.into_iter().map(|(t, phi)| (phi, format!("coefficient of {}", describe(&t)))).collect();
                    out.push(Condition { name: format!("(Δ')^{power} A_({},{}) = 0", 2 + j, 2 + k), functionals: fs });
                }
            }
        }
    }
    out
}

fn describe(mono: &Monomial) -> String {
    let idx = |v: &[u32]| v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",");
    format!("w^({}) wb^({}) v^{}", idx(&mono.0), idx(&mono.1), mono.2)
}

fn apply(phi: &Functional, f: &BoundaryJet) -> Result<CoeffPoly> {
    let mut acc = CoeffPoly::zero();
    for ((a, b, l), c) in phi {
        acc.add_scaled(&f.coeff(a, b, *l)?, c);
    }
    Ok(acc)
}

fn projection_bound(f: &BoundaryJet, max_weight: i32) -> i32 {
    match f.valid() {
        Validity::Below(w) => w.min(max_weight),
        Validity::Exact => max_weight,
    }
}

/// Splits `f` weight by weight; the result is valid below
/// `min(validity of f, slice.max_weight)`.
pub fn project_normal_form(f: &BoundaryJet, slice: &NormalFormSlice) -> Result<Projection> {
    let space = f.space();
    if space.n() != slice.n {
        return Err(Error::Invalid("dimension mismatch in normal-form projection".into()));
    }
    let bound = projection_bound(f, slice.max_weight);
    let mut ph = GradedSeries::zero(space.alphabet(), Validity::Below(bound));
    for w in 0..bound {
        let gens = generators_at_weight(space, w, slice.kind.complement());
        let phis: Vec<Functional> =
            conditions(slice.kind, space, w).into_iter().flat_map(|c| c.functionals.into_iter().map(|(p, _)| p)).collect();
        if phis.is_empty() {
            continue;
        }
        let mut mat = Matrix::zeros(phis.len(), gens.len());
        for (c, g) in gens.iter().enumerate() {
            for (r, phi) in phis.iter().enumerate() {
                let v = apply(phi, g)?.as_constant().unwrap_or_else(Scalar::zero);
                mat.set(r, c, v);
            }
        }
        let rhs: Vec<CoeffPoly> = phis.iter().map(|phi| apply(phi, f)).collect::<Result<_>>()?;
        let sol = exact_solve(&mat, &rhs).map_err(|e| match e {
            Error::NoSolution => Error::Internal(format!("slice and pluriharmonic span do not cover weight {w}")),
            e => e,
        })?;
        for (g, c) in gens.iter().zip(&sol.particular) {
            if !c.is_zero() {
                ph = ph.add(&g.body().scale_poly(c))?;
            }
        }
    }
    let ph = BoundaryJet::from_series(space, ph)?.with_density(f.density());
    let nf = f.truncate(bound).sub(&ph)?.with_density(f.density());
    Ok(Projection { nf, ph })
}

/// Per-condition outcome for one slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionResult {
    pub name: String,
    pub passed: bool,
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub kind: SliceKind,
    pub conditions: Vec<ConditionResult>,
}

impl ConditionReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }
}

/// Evaluates the slice conditions on every known stratum of `f`.
pub fn check_conditions(f: &BoundaryJet, kind: SliceKind) -> Result<ConditionReport> {
    let space = f.space();
    let bound = projection_bound(f, f.body().max_weight().map(|w| w + 1).unwrap_or(0));
    let mut merged: Vec<ConditionResult> = Vec::new();
    for w in 0..bound {
        for (i, cond) in conditions(kind, space, w).into_iter().enumerate() {
            if merged.len() <= i {
                merged.push(ConditionResult { name: cond.name.clone(), passed: true, first_failure: None });
            }
            if !merged[i].passed {
                continue;
            }
            for (phi, label) in &cond.functionals {
                let v = apply(phi, f)?;
                if !v.is_zero() {
                    merged[i].passed = false;
                    merged[i].first_failure = Some(format!("{label} = {v}"));
                    break;
                }
            }
        }
    }
    if merged.is_empty() {
        for cond in conditions(kind, space, 0) {
            merged.push(ConditionResult { name: cond.name, passed: true, first_failure: None });
        }
    }
    Ok(ConditionReport { kind, conditions: merged })
}

pub fn check_n1_conditions(f: &BoundaryJet) -> Result<ConditionReport> {
    check_conditions(f, SliceKind::N1)
}

/// Ranks behind the direct-sum claim on one weight stratum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumCounts {
    pub weight: i32,
    /// Number of monomials, the complex dimension of the stratum.
    pub total: usize,
    pub span_rank: usize,
    pub functional_rank: usize,
    /// Rank of the functionals restricted to the span.
    pub image_rank: usize,
}

impl StratumCounts {
    pub fn slice_dim(&self) -> usize {
        self.total - self.functional_rank
    }

    /// Injective on the span and complementary dimension.
    pub fn is_direct_sum(&self) -> bool {
        self.image_rank == self.span_rank && self.span_rank == self.functional_rank
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectSumReport {
    pub kind: SliceKind,
    pub n: usize,
    pub strata: Vec<StratumCounts>,
}

impl DirectSumReport {
    pub fn holds(&self) -> bool {
        self.strata.iter().all(StratumCounts::is_direct_sum)
    }
}

/// Checks `J𝓔 = slice ⊕ span` on each stratum of weight `< max_weight`.
pub fn verify_direct_sum(space: &JetSpace, kind: SliceKind, max_weight: i32) -> DirectSumReport {
    let mut strata = Vec::new();
    for w in 0..max_weight {
        let monos = jet_monomials(space, w);
        let index: BTreeMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let gens = generators_at_weight(space, w, kind.complement());
        let phis: Vec<Functional> =
            conditions(kind, space, w).into_iter().flat_map(|c| c.functionals.into_iter().map(|(p, _)| p)).collect();
        let mut span = Matrix::zeros(gens.len(), monos.len());
        for (r, g) in gens.iter().enumerate() {
            for (a, b, l, c) in g.terms() {
                span.set(r, index[&(a, b, l)], c.as_constant().expect("numeric generator"));
            }
        }
        let mut func = Matrix::zeros(phis.len(), monos.len());
        for (r, phi) in phis.iter().enumerate() {
            for (mono, c) in phi {
                func.set(r, index[mono], c.clone());
            }
        }
        let image = span.mul(&func.transpose()).expect("conformable");
        strata.push(StratumCounts {
            weight: w,
            total: monos.len(),
            span_rank: span.rank(),
            functional_rank: func.rank(),
            image_rank: image.rank(),
        });
    }
    DirectSumReport { kind, n: space.n(), strata }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(space: &JetSpace, a: &[u32], b: &[u32], l: u32, valid: i32) -> BoundaryJet {
        let mut f = BoundaryJet::zero(space, Validity::Below(valid));
        f.add_term(a, b, l, CoeffPoly::one());
        f
    }

    #[test]
    fn v_is_pluriharmonic() {
        let s = JetSpace::new(2).unwrap();
        let f = single(&s, &[0], &[0], 1, 6);
        let p = project_normal_form(&f, &NormalFormSlice::new(SliceKind::N0, 2, 6)).unwrap();
        assert!(p.nf.is_zero());
        assert_eq!(p.ph, f);
    }

    #[test]
    fn norm_square_is_pluriharmonic() {
        let s = JetSpace::new(2).unwrap();
        let f = single(&s, &[1], &[1], 0, 6);
        let p = project_normal_form(&f, &NormalFormSlice::new(SliceKind::N0, 2, 6)).unwrap();
        assert!(p.nf.is_zero());
    }

    #[test]
    fn slice_element_is_fixed() {
        let s = JetSpace::new(2).unwrap();
        let f = single(&s, &[2], &[2], 0, 6);
        let p = project_normal_form(&f, &NormalFormSlice::new(SliceKind::N0, 2, 6)).unwrap();
        assert_eq!(p.nf, f);
        assert!(p.ph.is_zero());
    }

    #[test]
    fn n1_condition_examples() {
        let s2 = JetSpace::new(2).unwrap();
        assert!(!check_n1_conditions(&single(&s2, &[2], &[2], 0, 8)).unwrap().passed());
        assert!(check_n1_conditions(&BoundaryJet::zero(&s2, Validity::Below(8))).unwrap().passed());
        let s3 = JetSpace::new(3).unwrap();
        assert!(check_n1_conditions(&single(&s3, &[2, 0], &[0, 2], 0, 8)).unwrap().passed());
    }

    #[test]
    fn direct_sums_at_small_weight() {
        for n in 2..=3 {
            let s = JetSpace::new(n).unwrap();
            assert!(verify_direct_sum(&s, SliceKind::N0, 7).holds());
            assert!(verify_direct_sum(&s, SliceKind::N1, 7).holds());
        }
    }

    #[test]
    fn moser_slice_at_n2_starts_at_weight_six() {
        let s = JetSpace::new(2).unwrap();
        let rep = verify_direct_sum(&s, SliceKind::N1, 7);
        for st in &rep.strata {
            assert_eq!(st.slice_dim(), if st.weight == 6 { 2 } else { 0 }, "weight {}", st.weight);
        }
    }
}
