//! Extension of boundary jets to the ambient space and the Q-operator.

use super::{AmbientSeries, AmbientSpace};
use crate::algebra::{CoeffPoly, GradedSeries, Scalar, Validity};
use crate::error::{Error, Result};
use crate::jets::BoundaryJet;

/// A harmonic extension together with the weight from which it is no longer
/// determined by the boundary data.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicExtension {
    pub series: AmbientSeries,
    /// Components and strata at weight `>= ambiguity` depend on choices.
    pub ambiguity: i32,
}

impl HarmonicExtension {
    /// Weights below this bound are both valid and independent of choices.
    pub fn determined_below(&self) -> i32 {
        match self.series.valid() {
            Validity::Exact => self.ambiguity,
            Validity::Below(w) => w.min(self.ambiguity),
        }
    }
}

/// The bidegree-(0,0) extension `w_j ↦ ξ_j/ξ_0`, `w̄_j ↦ ξ̄_j/ξ̄_0`,
/// `v ↦ (ξ_n/ξ_0 − ξ̄_n/ξ̄_0)/(2i)`.
pub fn initial_extension(space: &AmbientSpace, f: &BoundaryJet) -> Result<AmbientSeries> {
    let n = space.n();
    if f.n() != n {
        return Err(Error::Invalid(format!("jet has n = {} but ambient space has n = {n}", f.n())));
    }
    let alpha = space.alphabet();
    let ratio = |num: usize, den: usize, c: Scalar| {
        let mut e = vec![0; 2 * n + 2];
        e[num] = 1;
        e[den] = -1;
        GradedSeries::monomial(alpha, e, CoeffPoly::constant(c), Validity::Exact)
    };
    let m = n - 1;
    let mut subs = Vec::with_capacity(2 * m + 1);
    for j in 1..n {
        subs.push(ratio(space.hol(j), space.hol(0), Scalar::one()));
    }
    for j in 1..n {
        subs.push(ratio(space.anti(j), space.anti(0), Scalar::one()));
    }
    let half_i = Scalar::gauss(0, 1, -1, 2); // 1/(2i) = −i/2
    let v = ratio(space.hol(n), space.hol(0), half_i.clone())
        .add(&ratio(space.anti(n), space.anti(0), -&half_i))?;
    subs.push(v);
    let body = f.body().compose(&subs, alpha)?;
    AmbientSeries::from_body(space, (0, 0), body)
}

/// Harmonic extension of `f`: `Δf̃ = O(L^{n−1})`, determined modulo `O(L^n)`.
pub fn harmonic_extension(space: &AmbientSpace, f: &BoundaryJet) -> Result<HarmonicExtension> {
    let need = 2 * space.n() as i32;
    if !f.valid().at_least(need) {
        return Err(Error::InsufficientValidity { required: need, available: f.valid().bound().unwrap_or(0) });
    }
    harmonic_extension_from(initial_extension(space, f)?)
}

/// Runs the correction `f̃_{k+1} = f̃_k − L^k · div_L^{k−1}(Δf̃_k) / (k(n−k))`
/// for `k = 1, …, n−1` starting from any bidegree-(0,0) series.
pub fn harmonic_extension_from(initial: AmbientSeries) -> Result<HarmonicExtension> {
    if initial.bidegree() != (0, 0) && !initial.is_zero() {
        return Err(Error::Bidegree { expected: (0, 0), found: initial.bidegree() });
    }
    let n = initial.n();
    let mut f = initial;
    for k in 1..n {
        let h = f.laplacian().div_l_pow(k - 1)?;
        let g = h.scale(&Scalar::frac(-1, (k * (n - k)) as i64));
        f = f.add(&g.mul_l_pow(k))?;
    }
    Ok(HarmonicExtension { series: f, ambiguity: 2 * n as i32 })
}

/// `Q(f) = (Δⁿ f̃)|_𝓝` for the initial extension, tagged with density `(−n, −n)`.
/// Valid below `W − 2n` where `W` is the validity of `f`.
pub fn q_operator(space: &AmbientSpace, f: &BoundaryJet) -> Result<BoundaryJet> {
    let n = space.n();
    let need = 2 * n as i32 + 1;
    if !f.valid().at_least(need) {
        return Err(Error::InsufficientValidity { required: need, available: f.valid().bound().unwrap_or(0) });
    }
    let jets = f.space();
    let qf = initial_extension(space, f)?.laplacian_pow(n).restrict(jets)?;
    Ok(qf.with_density((-(n as i32), -(n as i32))))
}

/// `Q(f)` at the base point: the weight-0 coefficient of `Δⁿ f̃`.
pub fn q_value(space: &AmbientSpace, f: &BoundaryJet) -> Result<CoeffPoly> {
    let n = space.n();
    let need = 2 * n as i32 + 1;
    if !f.valid().at_least(need) {
        return Err(Error::InsufficientValidity { required: need, available: f.valid().bound().unwrap_or(0) });
    }
    initial_extension(space, &f.truncate(need))?.laplacian_pow(n).eval_at_base()
}
