//! Linear isometries of the defining form and their action on ambient series.

use std::fmt;

use num_rational::BigRational;

use super::{AmbientSeries, AmbientSpace};
use crate::algebra::{CoeffPoly, GradedSeries, Matrix, Scalar, Validity};
use crate::error::{Error, Result};

/// How an element was constructed; carried for reporting only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Identity,
    Dilation,
    Rotation,
    Unipotent,
    Product,
    General,
}

/// A matrix `h` acting on column vectors `ξ` with `L(hξ) = L(ξ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    n: usize,
    matrix: Matrix,
    lambda: Option<Scalar>,
    kind: GroupKind,
    label: String,
}

impl GroupElement {
    /// Checks `hᵀ G h̄ = G` and reads off `λ` when `h ẽ_0 = λ ẽ_0`.
    pub fn new(n: usize, matrix: Matrix) -> Result<Self> {
        GroupElement::build(n, matrix, GroupKind::General, "general".into())
    }

    fn build(n: usize, matrix: Matrix, kind: GroupKind, label: String) -> Result<Self> {
        if matrix.rows() != n + 1 || matrix.cols() != n + 1 {
            return Err(Error::Invalid(format!("group element must be {0}x{0}", n + 1)));
        }
        let g = AmbientSpace::unchecked(n)?.metric();
        if matrix.transpose().mul(&g)?.mul(&matrix.conj())? != g {
            return Err(Error::NotIsometry);
        }
        let first = (1..=n).all(|r| matrix.get(r, 0).is_zero());
        let lambda = if first { Some(matrix.get(0, 0).clone()) } else { None };
        Ok(GroupElement { n, matrix, lambda, kind, label })
    }

    pub fn identity(n: usize) -> Result<Self> {
        GroupElement::build(n, Matrix::identity(n + 1), GroupKind::Identity, "identity".into())
    }

    /// `diag(λ, I, λ̄⁻¹)`.
    pub fn dilation(n: usize, lambda: Scalar) -> Result<Self> {
        let inv = lambda.conj().inv()?;
        let mut m = Matrix::identity(n + 1);
        m.set(0, 0, lambda.clone());
        m.set(n, n, inv);
        GroupElement::build(n, m, GroupKind::Dilation, format!("dilation({lambda})"))
    }

    /// `diag(1, U, 1)` for a unitary `(n−1)×(n−1)` matrix `U`.
    pub fn rotation(n: usize, u: &Matrix) -> Result<Self> {
        if u.rows() != n - 1 || u.cols() != n - 1 {
            return Err(Error::Invalid(format!("rotation block must be {0}x{0}", n - 1)));
        }
        let mut m = Matrix::identity(n + 1);
        for i in 0..n - 1 {
            for j in 0..n - 1 {
                m.set(i + 1, j + 1, u.get(i, j).clone());
            }
        }
        let rows: Vec<String> = (0..n - 1)
            .map(|i| u.row(i).iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        GroupElement::build(n, m, GroupKind::Rotation, format!("rotation[{}]", rows.join(";")))
    }

    /// `ξ_0 ↦ ξ_0 + Σ ā_j ξ_j + (|a|²/2 + is) ξ_n`, `ξ' ↦ ξ' + a ξ_n`, `ξ_n ↦ ξ_n`.
    pub fn unipotent(n: usize, a: &[Scalar], s: &BigRational) -> Result<Self> {
        if a.len() != n - 1 {
            return Err(Error::Invalid(format!("unipotent parameter a must have length {}", n - 1)));
        }
        let mut m = Matrix::identity(n + 1);
        let mut norm = BigRational::from_integer(0.into());
        for (j, aj) in a.iter().enumerate() {
            m.set(0, j + 1, aj.conj());
            m.set(j + 1, n, aj.clone());
            norm += aj.norm_sqr();
        }
        let c = Scalar::new(norm / BigRational::from_integer(2.into()), s.clone());
        m.set(0, n, c);
        let label = format!(
            "unipotent(a=[{}], s={})",
            a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
            crate::algebra::format_rational(s)
        );
        GroupElement::build(n, m, GroupKind::Unipotent, label)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `λ` with `h ẽ_0 = λ ẽ_0`, or `None` outside `P`.
    pub fn lambda(&self) -> Option<&Scalar> {
        self.lambda.as_ref()
    }

    pub fn in_parabolic(&self) -> bool {
        self.lambda.is_some()
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Matrix product `self · other`: apply `other` first.
    pub fn compose(&self, other: &GroupElement) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Invalid("dimension mismatch in group product".into()));
        }
        GroupElement::build(
            self.n,
            self.matrix.mul(&other.matrix)?,
            GroupKind::Product,
            format!("{}*{}", self.label, other.label),
        )
    }

    pub fn inverse(&self) -> Result<Self> {
        GroupElement::build(self.n, self.matrix.inverse()?, GroupKind::General, format!("inv({})", self.label))
    }

    /// `(f ∘ h)(ξ) = f(hξ)`.
    ///
    /// For `h ∈ P` the `ξ_0` component of `hξ` is `λξ_0 + r` with `r` of
    /// positive weight, and negative powers are expanded as a binomial series
    /// to the validity of `f`. Outside `P` only exact polynomial inputs are
    /// accepted.
    pub fn pullback(&self, f: &AmbientSeries) -> Result<AmbientSeries> {
        let sp = f.space();
        if sp.n() != self.n {
            return Err(Error::Invalid("dimension mismatch in pullback".into()));
        }
        let n = self.n;
        let alpha = sp.alphabet();
        let valid = f.valid();
        let laurent = f.body().terms().any(|(k, _)| k.exps[0] < 0 || k.exps[n + 1] < 0);
        if !self.in_parabolic() && (laurent || valid != Validity::Exact) {
            return Err(Error::NotInParabolic);
        }

        // Images of ξ_J and ξ̄_J as exact linear forms.
        let mut images = Vec::with_capacity(2 * n + 2);
        for bar in [false, true] {
            for j in 0..=n {
                let mut s = GradedSeries::zero(alpha, Validity::Exact);
                for k in 0..=n {
                    let c = self.matrix.get(j, k);
                    if c.is_zero() {
                        continue;
                    }
                    let mut e = vec![0; 2 * n + 2];
                    e[if bar { n + 1 + k } else { k }] = 1;
                    s.add_term(e, CoeffPoly::constant(if bar { c.conj() } else { c.clone() }));
                }
                images.push(s);
            }
        }

        let needs_series = laurent && images[0].len() > 1;
        if needs_series && valid == Validity::Exact {
            return Err(Error::Invalid("pullback of an exact Laurent series needs a finite validity bound".into()));
        }

        let mut cache: std::collections::BTreeMap<(usize, i32), GradedSeries> = std::collections::BTreeMap::new();
        let mut power = |slot: usize, e: i32| -> Result<GradedSeries> {
            if let Some(p) = cache.get(&(slot, e)) {
                return Ok(p.clone());
            }
            let p = if e >= 0 {
                trunc(&images[slot].pow(e as u32)?, valid)
            } else {
                // (λ ξ_0 + r)^e = λ^e ξ_0^e Σ_k C(e,k) (r / (λ ξ_0))^k
                let bar = slot == n + 1;
                let lam = self.lambda.clone().ok_or(Error::NotInParabolic)?;
                let lam = if bar { lam.conj() } else { lam };
                let mut r = images[slot].clone();
                let mut lead = vec![0; 2 * n + 2];
                lead[slot] = 1;
                r.add_term(lead, CoeffPoly::constant(-&lam));
                let mut shift = vec![0; 2 * n + 2];
                shift[slot] = -1;
                let inv_lam = lam.inv()?;
                let ratio = r.mul(&GradedSeries::monomial(alpha, shift, CoeffPoly::constant(inv_lam), Validity::Exact))?;
                let bound = valid.bound().unwrap_or(0);
                let mut acc = GradedSeries::zero(alpha, valid);
                let mut rk = GradedSeries::constant(alpha, CoeffPoly::one(), Validity::Exact);
                let mut binom = Scalar::one();
                for k in 0..bound.max(0) + 1 {
                    if k > 0 {
                        rk = trunc(&rk.mul(&ratio)?, valid);
                        binom = &binom * &Scalar::frac(e as i64 - k as i64 + 1, k as i64);
                    }
                    if rk.is_zero() {
                        break;
                    }
                    acc = acc.add(&rk.scale(&binom))?;
                }
                let mut head = vec![0; 2 * n + 2];
                head[slot] = e;
                acc.mul(&GradedSeries::monomial(alpha, head, CoeffPoly::constant(lam.powi(e as i64)?), Validity::Exact))?
            };
            cache.insert((slot, e), p.clone());
            Ok(p)
        };

        let mut out = GradedSeries::zero(alpha, valid);
        for (k, c) in f.body().terms() {
            let mut term = GradedSeries::constant(alpha, c.clone(), Validity::Exact);
            for (slot, &e) in k.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                term = trunc(&term.mul(&power(slot, e)?)?, valid);
            }
            for (tk, tc) in term.terms() {
                out.add_term(tk.exps.clone(), tc.clone());
            }
        }
        AmbientSeries::from_body(sp, f.bidegree(), out)
    }
}

fn trunc(s: &GradedSeries, v: Validity) -> GradedSeries {
    match v {
        Validity::Exact => s.clone(),
        Validity::Below(w) => s.truncate(w),
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn constructors_are_isometries() {
        let d = GroupElement::dilation(3, Scalar::from_int(2)).unwrap();
        assert_eq!(d.lambda(), Some(&Scalar::from_int(2)));
        let u = GroupElement::unipotent(3, &[Scalar::gauss(1, 2, 1, 1), Scalar::frac(-2, 3)], &q(1, 3)).unwrap();
        assert_eq!(u.lambda(), Some(&Scalar::one()));
        let perm = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        let r = GroupElement::rotation(3, &perm).unwrap();
        assert!(r.in_parabolic());
        assert!(u.compose(&r).unwrap().compose(&d).unwrap().in_parabolic());
    }

    #[test]
    fn broken_unipotent_rejected() {
        let mut m = GroupElement::unipotent(2, &[Scalar::one()], &q(0, 1)).unwrap().matrix().clone();
        m.set(0, 2, Scalar::from_int(7));
        assert_eq!(GroupElement::new(2, m), Err(Error::NotIsometry));
    }

    #[test]
    fn pullback_fixes_defining_form() {
        let sp = AmbientSpace::new(3).unwrap();
        let l = sp.defining_form();
        for h in [
            GroupElement::identity(3).unwrap(),
            GroupElement::dilation(3, Scalar::gauss(1, 1, 1, 1)).unwrap(),
            GroupElement::unipotent(3, &[Scalar::i(), Scalar::frac(1, 2)], &q(-1, 2)).unwrap(),
        ] {
            assert_eq!(h.pullback(&l).unwrap().body(), l.body());
        }
    }

    #[test]
    fn laurent_pullback_unipotent_inverse() {
        let sp = AmbientSpace::new(2).unwrap();
        let mut e = vec![0; 6];
        e[0] = -1;
        e[1] = 1;
        let f = AmbientSeries::monomial(&sp, e, CoeffPoly::one(), Validity::Below(6));
        let h = GroupElement::unipotent(2, &[Scalar::gauss(1, 1, -1, 2)], &q(1, 1)).unwrap();
        let hi = h.inverse().unwrap();
        let back = hi.pullback(&h.pullback(&f).unwrap()).unwrap();
        assert!(back.agrees_with(&f).unwrap());
    }
}
