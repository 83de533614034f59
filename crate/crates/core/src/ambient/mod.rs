//! Homogeneous series on the ambient space `ℂ^{n+1} \ {0}` in the
//! coordinates `ξ_0, …, ξ_n` centred at the base direction `ẽ_0`.
//!
//! The defining form is `2L = ξ_0 ξ̄_n + ξ_n ξ̄_0 − Σ_{j=1}^{n-1} |ξ_j|²` and
//! the Laplacian is `Δ = 2(∂_0 ∂̄_n + ∂_n ∂̄_0 − Σ ∂_j ∂̄_j)`, normalized so
//! that `ΔL = n + 1`.

mod extension;
mod group;
mod tensor;

pub use extension::{
    harmonic_extension, harmonic_extension_from, initial_extension, q_operator, q_value, HarmonicExtension,
};
pub use group::{GroupElement, GroupKind};
pub use tensor::{check_harmonic_relations, multisets, trace, BasepointJets, HarmonicTensor, IndexList, RelationReport};

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{exact_solve, Alphabet, CoeffPoly, GradedSeries, Matrix, Scalar, Validity, VarSpec};
use crate::error::{Error, Result};
use crate::jets::{BoundaryJet, JetSpace};

/// Variable layout: `ξ_0..ξ_n` at indices `0..=n`, `ξ̄_0..ξ̄_n` at `n+1..=2n+1`.
#[derive(Clone, Debug)]
pub struct AmbientSpace {
    n: usize,
    alphabet: Arc<Alphabet>,
}

impl PartialEq for AmbientSpace {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
    }
}

impl AmbientSpace {
    /// Builds the space and runs the `ΔL = n + 1` self-check.
    pub fn new(n: usize) -> Result<Self> {
        let space = AmbientSpace::unchecked(n)?;
        let dl = space.defining_form().laplacian();
        let expected = AmbientSeries::constant(&space, CoeffPoly::constant(Scalar::from_int(n as i64 + 1)), Validity::Exact);
        if dl.body != expected.body {
            return Err(Error::Internal(format!("ΔL = {} but expected {}", dl.body, n + 1)));
        }
        Ok(space)
    }

    fn unchecked(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid(format!("dimension n must be at least 2, got {n}")));
        }
        let mut vars = Vec::with_capacity(2 * n + 2);
        for bar in [false, true] {
            for j in 0..=n {
                vars.push(VarSpec {
                    name: if bar { format!("xb{j}") } else { format!("x{j}") },
                    weight: index_weight(n, j),
                    conj: if bar { j } else { n + 1 + j },
                    laurent: j == 0,
                });
            }
        }
        Ok(AmbientSpace { n, alphabet: Alphabet::new(format!("ambient(n={n})"), vars)? })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn hol(&self, j: usize) -> usize {
        j
    }

    pub fn anti(&self, j: usize) -> usize {
        self.n + 1 + j
    }

    /// Exponent vector from holomorphic and antiholomorphic parts.
    pub fn exps(&self, hol: &[i32], anti: &[i32]) -> Vec<i32> {
        debug_assert_eq!(hol.len(), self.n + 1);
        debug_assert_eq!(anti.len(), self.n + 1);
        let mut e = hol.to_vec();
        e.extend_from_slice(anti);
        e
    }

    pub fn xi(&self, j: usize) -> AmbientSeries {
        let mut e = vec![0; 2 * self.n + 2];
        e[j] = 1;
        AmbientSeries::monomial(self, e, CoeffPoly::one(), Validity::Exact)
    }

    pub fn xi_bar(&self, j: usize) -> AmbientSeries {
        let mut e = vec![0; 2 * self.n + 2];
        e[self.anti(j)] = 1;
        AmbientSeries::monomial(self, e, CoeffPoly::one(), Validity::Exact)
    }

    /// The defining form `L`, bidegree (1,1), exact.
    pub fn defining_form(&self) -> AmbientSeries {
        let n = self.n;
        let half = Scalar::frac(1, 2);
        let mut l = AmbientSeries::zero(self, (1, 1), Validity::Exact);
        let mut put = |h: usize, a: usize, c: &Scalar| {
            let mut e = vec![0; 2 * n + 2];
            e[h] = 1;
            e[n + 1 + a] = 1;
            l.body.add_term(e, CoeffPoly::constant(c.clone()));
        };
        put(0, n, &half);
        put(n, 0, &half);
        for j in 1..n {
            put(j, j, &-&half);
        }
        l
    }

    /// Hermitian matrix `g̃_{JK̄}` with `L = Σ g̃_{JK̄} ξ_J ξ̄_K`.
    pub fn metric(&self) -> Matrix {
        let n = self.n;
        let mut g = Matrix::zeros(n + 1, n + 1);
        g.set(0, n, Scalar::frac(1, 2));
        g.set(n, 0, Scalar::frac(1, 2));
        for j in 1..n {
            g.set(j, j, Scalar::frac(-1, 2));
        }
        g
    }

    /// Inverse metric `g̃^{JK̄}`.
    pub fn inverse_metric(&self) -> Matrix {
        let n = self.n;
        let mut g = Matrix::zeros(n + 1, n + 1);
        g.set(0, n, Scalar::from_int(2));
        g.set(n, 0, Scalar::from_int(2));
        for j in 1..n {
            g.set(j, j, Scalar::from_int(-2));
        }
        g
    }

    /// The index `K̄` paired with holomorphic index `K` by the inverse metric.
    pub fn partner(&self, k: usize) -> usize {
        if k == 0 {
            self.n
        } else if k == self.n {
            0
        } else {
            k
        }
    }

    /// Monomials `ξ^a ξ̄^b` of bidegree `(p, q)` and weight exactly `w`.
    pub fn monomial_basis(&self, bidegree: (i32, i32), w: i32) -> Vec<Vec<i32>> {
        let n = self.n;
        // Exponents of ξ_1..ξ_n and ξ̄_1..ξ̄_n with weighted sum w.
        let weights: Vec<i32> = (1..=n).chain(1..=n).map(|j| index_weight(n, j)).collect();
        let mut out = Vec::new();
        let mut cur = vec![0i32; 2 * n];
        fn rec(i: usize, left: i32, weights: &[i32], cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
            if i == weights.len() {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let mut e = 0;
            while e * weights[i] <= left {
                cur[i] = e;
                rec(i + 1, left - e * weights[i], weights, cur, out);
                e += 1;
            }
            cur[i] = 0;
        }
        rec(0, w, &weights, &mut cur, &mut out);
        out.into_iter()
            .map(|c| {
                let hol_rest: i32 = c[..n].iter().sum();
                let anti_rest: i32 = c[n..].iter().sum();
                let mut hol = vec![bidegree.0 - hol_rest];
                hol.extend_from_slice(&c[..n]);
                let mut anti = vec![bidegree.1 - anti_rest];
                anti.extend_from_slice(&c[n..]);
                self.exps(&hol, &anti)
            })
            .collect()
    }
}

/// `‖0‖ = 0`, `‖j‖ = 1` for `1 ≤ j ≤ n−1`, `‖n‖ = 2`.
pub fn index_weight(n: usize, j: usize) -> i32 {
    if j == 0 {
        0
    } else if j == n {
        2
    } else {
        1
    }
}

/// A series of fixed bidegree `(p, q)`: `f(λξ) = λ^p λ̄^q f(ξ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AmbientSeries {
    space: AmbientSpace,
    bidegree: (i32, i32),
    body: GradedSeries,
}

impl AmbientSeries {
    pub fn zero(space: &AmbientSpace, bidegree: (i32, i32), valid: Validity) -> Self {
        AmbientSeries { space: space.clone(), bidegree, body: GradedSeries::zero(space.alphabet(), valid) }
    }

    pub fn constant(space: &AmbientSpace, c: CoeffPoly, valid: Validity) -> Self {
        AmbientSeries { space: space.clone(), bidegree: (0, 0), body: GradedSeries::constant(space.alphabet(), c, valid) }
    }

    pub fn monomial(space: &AmbientSpace, exps: Vec<i32>, c: CoeffPoly, valid: Validity) -> Self {
        let bidegree = bidegree_of(space.n, &exps);
        AmbientSeries { space: space.clone(), bidegree, body: GradedSeries::monomial(space.alphabet(), exps, c, valid) }
    }

    /// Wraps a series after checking bidegree homogeneity.
    pub fn from_body(space: &AmbientSpace, bidegree: (i32, i32), body: GradedSeries) -> Result<Self> {
        for (k, _) in body.terms() {
            let found = bidegree_of(space.n, &k.exps);
            if found != bidegree {
                return Err(Error::Bidegree { expected: bidegree, found });
            }
        }
        Ok(AmbientSeries { space: space.clone(), bidegree, body })
    }

    pub fn space(&self) -> &AmbientSpace {
        &self.space
    }

    pub fn n(&self) -> usize {
        self.space.n
    }

    pub fn bidegree(&self) -> (i32, i32) {
        self.bidegree
    }

    pub fn body(&self) -> &GradedSeries {
        &self.body
    }

    pub fn valid(&self) -> Validity {
        self.body.valid()
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn add_term(&mut self, exps: Vec<i32>, c: CoeffPoly) -> Result<()> {
        let found = bidegree_of(self.space.n, &exps);
        if found != self.bidegree {
            return Err(Error::Bidegree { expected: self.bidegree, found });
        }
        self.body.add_term(exps, c);
        Ok(())
    }

    fn same_bidegree(&self, other: &AmbientSeries) -> Result<()> {
        if self.bidegree != other.bidegree && !(self.is_zero() || other.is_zero()) {
            return Err(Error::Bidegree { expected: self.bidegree, found: other.bidegree });
        }
        Ok(())
    }

    pub fn add(&self, other: &AmbientSeries) -> Result<Self> {
        self.same_bidegree(other)?;
        let bidegree = if self.is_zero() { other.bidegree } else { self.bidegree };
        Ok(AmbientSeries { space: self.space.clone(), bidegree, body: self.body.add(&other.body)? })
    }

    pub fn sub(&self, other: &AmbientSeries) -> Result<Self> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        AmbientSeries { space: self.space.clone(), bidegree: self.bidegree, body: self.body.scale(s) }
    }

    pub fn scale_poly(&self, p: &CoeffPoly) -> Self {
        AmbientSeries { space: self.space.clone(), bidegree: self.bidegree, body: self.body.scale_poly(p) }
    }

    pub fn mul(&self, other: &AmbientSeries) -> Result<Self> {
        Ok(AmbientSeries {
            space: self.space.clone(),
            bidegree: (self.bidegree.0 + other.bidegree.0, self.bidegree.1 + other.bidegree.1),
            body: self.body.mul(&other.body)?,
        })
    }

    pub fn conj(&self) -> Self {
        AmbientSeries { space: self.space.clone(), bidegree: (self.bidegree.1, self.bidegree.0), body: self.body.conj() }
    }

    pub fn is_real(&self) -> bool {
        self.bidegree.0 == self.bidegree.1 && self.body.is_real()
    }

    pub fn truncate(&self, w: i32) -> Self {
        AmbientSeries { space: self.space.clone(), bidegree: self.bidegree, body: self.body.truncate(w) }
    }

    pub fn map_coeffs(&self, f: impl Fn(&CoeffPoly) -> CoeffPoly) -> Self {
        AmbientSeries { space: self.space.clone(), bidegree: self.bidegree, body: self.body.map_coeffs(f) }
    }

    pub fn agrees_with(&self, other: &AmbientSeries) -> Result<bool> {
        Ok((self.bidegree == other.bidegree || self.is_zero() && other.is_zero()) && self.body.agrees_with(&other.body)?)
    }

    /// The ambient Laplacian; bidegree drops by (1,1), weight by 2.
    pub fn laplacian(&self) -> Self {
        let n = self.space.n;
        let mut out = AmbientSeries::zero(&self.space, (self.bidegree.0 - 1, self.bidegree.1 - 1), self.valid().shift(-2));
        let mut apply = |key: &[i32], c: &CoeffPoly, h: usize, a: usize, sign: i64| {
            let eh = key[h];
            let ea = key[n + 1 + a];
            if eh == 0 || ea == 0 {
                return;
            }
            let mut e = key.to_vec();
            e[h] -= 1;
            e[n + 1 + a] -= 1;
            out.body.add_scaled_term(e, c, &Scalar::from_int(2 * sign * eh as i64 * ea as i64));
        };
        for (k, c) in self.body.terms() {
            apply(&k.exps, c, 0, n, 1);
            apply(&k.exps, c, n, 0, 1);
            for j in 1..n {
                apply(&k.exps, c, j, j, -1);
            }
        }
        out
    }

    pub fn laplacian_pow(&self, k: usize) -> Self {
        let mut f = self.clone();
        for _ in 0..k {
            f = f.laplacian();
        }
        f
    }

    /// `Z f = Σ ξ_j ∂_{ξ_j} f`.
    pub fn euler_z(&self) -> Self {
        self.euler(false)
    }

    /// `Z̄ f = Σ ξ̄_j ∂_{ξ̄_j} f`.
    pub fn euler_zbar(&self) -> Self {
        self.euler(true)
    }

    fn euler(&self, bar: bool) -> Self {
        let n = self.space.n;
        let range = if bar { n + 1..2 * n + 2 } else { 0..n + 1 };
        let mut out = AmbientSeries::zero(&self.space, self.bidegree, self.valid());
        for (k, c) in self.body.terms() {
            let d: i32 = k.exps[range.clone()].iter().sum();
            out.body.add_scaled_term(k.exps.clone(), c, &Scalar::from_int(d as i64));
        }
        out
    }

    pub fn mul_l(&self) -> Self {
        self.mul(&self.space.defining_form()).expect("same alphabet")
    }

    pub fn mul_l_pow(&self, k: usize) -> Self {
        let mut f = self.clone();
        for _ in 0..k {
            f = f.mul_l();
        }
        f
    }

    /// Exact quotient by `L`.
    ///
    /// Writing `2L = ξ_0 (ξ̄_n − R)` with `R = (Σ ξ_j ξ̄_j − ξ_n ξ̄_0)/ξ_0`
    /// free of `ξ̄_n`, the quotient is obtained by synthetic division of
    /// `2f/ξ_0` by the monic linear polynomial `ξ̄_n − R`. A nonzero remainder
    /// within validity means `f ∉ (L)`.
    pub fn div_l(&self) -> Result<Self> {
        let n = self.space.n;
        let sp = &self.space;
        let alpha = sp.alphabet();
        let valid = self.valid();
        let xbn = sp.anti(n);

        // R = (Σ ξ_j ξ̄_j − ξ_n ξ̄_0) ξ_0^{-1}
        let mut r = GradedSeries::zero(alpha, Validity::Exact);
        for j in 1..n {
            let mut e = vec![0; 2 * n + 2];
            e[0] = -1;
            e[j] = 1;
            e[sp.anti(j)] = 1;
            r.add_term(e, CoeffPoly::one());
        }
        let mut e = vec![0; 2 * n + 2];
        e[0] = -1;
        e[n] = 1;
        e[sp.anti(0)] = 1;
        r.add_term(e, CoeffPoly::constant(Scalar::from_int(-1)));

        // c_k: coefficient of ξ̄_n^k in 2 f / ξ_0, each with its own validity.
        let mut coeffs: BTreeMap<i32, GradedSeries> = BTreeMap::new();
        let mut degree = 0;
        for (k, c) in self.body.terms() {
            let d = k.exps[xbn];
            degree = degree.max(d);
            let mut e = k.exps.clone();
            e[0] -= 1;
            e[xbn] = 0;
            coeffs
                .entry(d)
                .or_insert_with(|| GradedSeries::zero(alpha, valid.shift(-2 * d)))
                .add_scaled_term(e, c, &Scalar::from_int(2));
        }
        let coeff_at = |d: i32| coeffs.get(&d).cloned().unwrap_or_else(|| GradedSeries::zero(alpha, valid.shift(-2 * d)));

        // Horner: b_{d-1} = c_d, b_{k-1} = c_k + R b_k, remainder = c_0 + R b_0.
        let mut quotient = AmbientSeries::zero(sp, (self.bidegree.0 - 1, self.bidegree.1 - 1), valid.shift(-2));
        let mut b = GradedSeries::zero(alpha, valid.shift(-2 * (degree + 1)));
        for k in (1..=degree).rev() {
            b = coeff_at(k).add(&r.mul(&b)?)?;
            // b is b_{k-1}; place it at ξ̄_n^{k-1}.
            for (key, c) in b.terms() {
                let mut e = key.exps.clone();
                e[xbn] += k - 1;
                quotient.body.add_term(e, c.clone());
            }
        }
        let remainder = coeff_at(0).add(&r.mul(&b)?)?;
        if let Some(w) = remainder.min_weight() {
            return Err(Error::NotDivisible { weight: w });
        }
        Ok(quotient)
    }

    pub fn div_l_pow(&self, k: usize) -> Result<Self> {
        let mut f = self.clone();
        for _ in 0..k {
            f = f.div_l()?;
        }
        Ok(f)
    }

    /// Quotient by `L` via an exact linear solve on each weight stratum.
    ///
    /// Slower than [`AmbientSeries::div_l`]; kept as an independent route.
    pub fn div_l_by_solve(&self) -> Result<Self> {
        let sp = &self.space;
        let target = (self.bidegree.0 - 1, self.bidegree.1 - 1);
        let l = sp.defining_form();
        let mut quotient = AmbientSeries::zero(sp, target, self.valid().shift(-2));
        let top = match self.valid() {
            Validity::Below(w) => w,
            Validity::Exact => self.body.max_weight().map(|w| w + 1).unwrap_or(0),
        };
        for w in 2..top {
            let rows = sp.monomial_basis(self.bidegree, w);
            let cols = sp.monomial_basis(target, w - 2);
            let row_index: BTreeMap<&Vec<i32>, usize> = rows.iter().enumerate().map(|(i, r)| (r, i)).collect();
            let mut m = Matrix::zeros(rows.len(), cols.len());
            for (j, col) in cols.iter().enumerate() {
                let prod = AmbientSeries::monomial(sp, col.clone(), CoeffPoly::one(), Validity::Exact).mul(&l)?;
                for (k, c) in prod.body.terms() {
                    let i = row_index[&k.exps];
                    m.set(i, j, c.as_constant().expect("numeric"));
                }
            }
            let rhs: Vec<CoeffPoly> = rows.iter().map(|r| self.body.coeff(r)).collect::<Result<_>>()?;
            let sol = exact_solve(&m, &rhs).map_err(|_| Error::NotDivisible { weight: w })?;
            for (col, c) in cols.iter().zip(sol.particular) {
                quotient.body.add_term(col.clone(), c);
            }
        }
        // Weight-0 and weight-1 strata of a multiple of L are empty.
        for (k, _) in self.body.terms() {
            if k.weight < 2 {
                return Err(Error::NotDivisible { weight: k.weight });
            }
        }
        Ok(quotient)
    }

    /// Value at `ẽ_0`: the weight-0 part with `ξ_0 = ξ̄_0 = 1`.
    pub fn eval_at_base(&self) -> Result<CoeffPoly> {
        if !self.valid().contains(0) {
            return Err(Error::InsufficientValidity { required: 1, available: self.valid().bound().unwrap_or(0) });
        }
        let mut acc = CoeffPoly::zero();
        for (k, c) in self.body.terms() {
            if k.weight == 0 && k.exps.iter().enumerate().all(|(i, e)| *e == 0 || i == 0 || i == self.space.n + 1) {
                acc.add_assign(c);
            }
        }
        Ok(acc)
    }

    /// Restriction to the null cone at `ξ_0 = 1`: `ξ' = w'`, `ξ_n = |w'|²/2 + iv`.
    /// The density tag of the result is the bidegree.
    pub fn restrict(&self, jets: &JetSpace) -> Result<BoundaryJet> {
        let n = self.space.n;
        if jets.n() != n {
            return Err(Error::Invalid("dimension mismatch in restriction".into()));
        }
        let valid = self.valid();
        let u = jets.siegel_u();
        let ubar = u.conj();
        let mut upow: BTreeMap<(bool, i32), GradedSeries> = BTreeMap::new();
        let mut out = GradedSeries::zero(jets.alphabet(), valid);
        for (k, c) in self.body.terms() {
            let mut alpha = vec![0u32; n - 1];
            let mut beta = vec![0u32; n - 1];
            for j in 1..n {
                alpha[j - 1] = k.exps[j] as u32;
                beta[j - 1] = k.exps[n + 1 + j] as u32;
            }
            let an = k.exps[n];
            let bn = k.exps[2 * n + 1];
            let mut term = GradedSeries::monomial(jets.alphabet(), jets.exps(&alpha, &beta, 0), c.clone(), Validity::Exact);
            for (bar, e) in [(false, an), (true, bn)] {
                if e == 0 {
                    continue;
                }
                let p = upow
                    .entry((bar, e))
                    .or_insert_with(|| if bar { ubar.pow(e as u32) } else { u.pow(e as u32) }.expect("same alphabet"));
                term = term.mul(p)?;
            }
            for (tk, tc) in term.terms() {
                out.add_term(tk.exps.clone(), tc.clone());
            }
        }
        Ok(BoundaryJet::from_series(jets, out)?.with_density(self.bidegree))
    }
}

fn bidegree_of(n: usize, exps: &[i32]) -> (i32, i32) {
    (exps[..=n].iter().sum(), exps[n + 1..].iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(n: usize) -> AmbientSpace {
        AmbientSpace::new(n).unwrap()
    }

    fn mono(sp: &AmbientSpace, hol: &[i32], anti: &[i32], c: Scalar) -> AmbientSeries {
        AmbientSeries::monomial(sp, sp.exps(hol, anti), CoeffPoly::constant(c), Validity::Exact)
    }

    #[test]
    fn laplacian_of_defining_form() {
        for n in 2..=4 {
            let sp = space(n);
            let dl = sp.defining_form().laplacian();
            assert_eq!(dl.body().coeff(&vec![0; 2 * n + 2]).unwrap(), CoeffPoly::constant(Scalar::from_int(n as i64 + 1)));
            assert_eq!(dl.body().len(), 1);
        }
    }

    #[test]
    fn laplacian_kills_holomorphic() {
        let sp = space(3);
        let err = mono(&sp, &[-3, 2, 0, 1], &[0; 4], Scalar::one())
            .add(&mono(&sp, &[-1, 0, 1, 0], &[0, 1, 0, 0], Scalar::i()))
            .unwrap_err();
        assert!(matches!(err, Error::Bidegree { .. }));
        let g = mono(&sp, &[-3, 2, 0, 1], &[0; 4], Scalar::from_int(5));
        assert!(g.laplacian().is_zero());
    }

    #[test]
    fn laplacian_of_w1_w1bar() {
        for n in 2..=4 {
            let sp = space(n);
            let mut hol = vec![0; n + 1];
            let mut anti = vec![0; n + 1];
            hol[0] = -1;
            hol[1] = 1;
            anti[0] = -1;
            anti[1] = 1;
            let f = mono(&sp, &hol, &anti, Scalar::one());
            let mut h0 = vec![0; n + 1];
            h0[0] = -1;
            let expected = mono(&sp, &h0, &h0, Scalar::from_int(-2));
            assert_eq!(f.laplacian().body(), expected.body());
        }
    }

    #[test]
    fn euler_operators() {
        let sp = space(2);
        let l = sp.defining_form();
        assert_eq!(l.euler_z(), l);
        assert_eq!(l.euler_zbar(), l);
        let f = mono(&sp, &[-1, 0, 1], &[0, 0, 0], Scalar::one());
        assert!(f.euler_z().is_zero());
        let g = mono(&sp, &[-2, 2, 0], &[0, 1, 0], Scalar::one());
        assert!(g.euler_z().is_zero());
        assert_eq!(g.euler_zbar(), g);
    }

    #[test]
    fn division_examples() {
        let sp = space(2);
        let l = sp.defining_form();
        assert_eq!(l.div_l().unwrap().body(), AmbientSeries::constant(&sp, CoeffPoly::one(), Validity::Exact).body());
        let x = mono(&sp, &[-1, 1, 0], &[0, 0, 0], Scalar::one());
        assert_eq!(x.mul_l().div_l().unwrap().body(), x.body());
        let bad = mono(&sp, &[0, 1, 0], &[1, 0, 0], Scalar::one());
        assert!(matches!(bad.div_l(), Err(Error::NotDivisible { .. })));
        assert!(matches!(bad.div_l_by_solve(), Err(Error::NotDivisible { .. })));
    }

    #[test]
    fn division_routes_agree() {
        let sp = space(3);
        let mut h = AmbientSeries::zero(&sp, (-1, -1), Validity::Below(5));
        for (i, e) in sp.monomial_basis((-1, -1), 2).into_iter().enumerate() {
            h.add_term(e, CoeffPoly::constant(Scalar::gauss(i as i64 + 1, 3, 1 - i as i64, 2))).unwrap();
        }
        for e in sp.monomial_basis((-1, -1), 1) {
            h.add_term(e, CoeffPoly::constant(Scalar::from_int(7))).unwrap();
        }
        let lh = h.mul_l();
        let a = lh.div_l().unwrap();
        let b = lh.div_l_by_solve().unwrap();
        assert_eq!(a.body(), b.body());
        assert!(a.agrees_with(&h).unwrap());
    }

    #[test]
    fn restriction_of_defining_form_vanishes() {
        for n in 2..=3 {
            let sp = space(n);
            let jets = JetSpace::new(n).unwrap();
            let r = sp.defining_form().truncate(9).restrict(&jets).unwrap();
            assert!(r.is_zero());
        }
    }

    #[test]
    fn metric_inverse() {
        let sp = space(4);
        assert_eq!(sp.metric().mul(&sp.inverse_metric()).unwrap(), Matrix::identity(5));
    }
}
