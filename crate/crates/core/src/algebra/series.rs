//! Weight-truncated sparse series over a weighted variable alphabet.
//!
//! A [`GradedSeries`] stores its terms below a validity bound: every term of
//! weight `< valid` is exact, nothing is known at or above it. Reading an
//! unknown coefficient is an error rather than a silent zero.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::coeff::CoeffPoly;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// One variable of an alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarSpec {
    pub name: String,
    pub weight: i32,
    /// Index of the conjugate variable (itself for real variables).
    pub conj: usize,
    /// Whether negative exponents are allowed. Only weight-0 variables may be Laurent.
    pub laurent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    pub label: String,
    pub vars: Vec<VarSpec>,
}

impl Alphabet {
    pub fn new(label: impl Into<String>, vars: Vec<VarSpec>) -> Result<Arc<Self>> {
        for (i, v) in vars.iter().enumerate() {
            if v.conj >= vars.len() || vars[v.conj].conj != i {
                return Err(Error::Invalid(format!("conjugation of {} is not an involution", v.name)));
            }
            if v.laurent && v.weight != 0 {
                return Err(Error::Invalid(format!("Laurent variable {} must have weight 0", v.name)));
            }
            if v.weight < 0 {
                return Err(Error::Invalid(format!("negative weight on {}", v.name)));
            }
        }
        Ok(Arc::new(Alphabet { label: label.into(), vars }))
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn weight_of(&self, exps: &[i32]) -> i32 {
        exps.iter().zip(&self.vars).map(|(e, v)| e * v.weight).sum()
    }

    pub fn conj_exps(&self, exps: &[i32]) -> Vec<i32> {
        let mut out = vec![0; exps.len()];
        for (i, e) in exps.iter().enumerate() {
            out[self.vars[i].conj] = *e;
        }
        out
    }
}

/// Weight bound below which a series is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Validity {
    /// Terms of weight `< w` are exact.
    Below(i32),
    /// The series is an exact finite sum.
    Exact,
}

impl Validity {
    pub fn min(self, other: Validity) -> Validity {
        match (self, other) {
            (Validity::Exact, o) | (o, Validity::Exact) => o,
            (Validity::Below(a), Validity::Below(b)) => Validity::Below(a.min(b)),
        }
    }

    pub fn shift(self, by: i32) -> Validity {
        match self {
            Validity::Exact => Validity::Exact,
            Validity::Below(w) => Validity::Below(w + by),
        }
    }

    pub fn plus(self, other: Validity) -> Validity {
        match (self, other) {
            (Validity::Below(a), Validity::Below(b)) => Validity::Below(a + b),
            _ => Validity::Exact,
        }
    }

    pub fn contains(self, weight: i32) -> bool {
        match self {
            Validity::Exact => true,
            Validity::Below(w) => weight < w,
        }
    }

    /// `Some(w)` for a finite bound.
    pub fn bound(self) -> Option<i32> {
        match self {
            Validity::Exact => None,
            Validity::Below(w) => Some(w),
        }
    }

    pub fn at_least(self, w: i32) -> bool {
        match self {
            Validity::Exact => true,
            Validity::Below(b) => b >= w,
        }
    }
}

impl fmt::Display for Validity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Validity::Exact => write!(f, "exact"),
            Validity::Below(w) => write!(f, "<{w}"),
        }
    }
}

/// Term key ordered graded-lexicographically: weight first, then exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Key {
    pub weight: i32,
    pub exps: Vec<i32>,
}

#[derive(Clone)]
pub struct GradedSeries {
    alphabet: Arc<Alphabet>,
    terms: BTreeMap<Key, CoeffPoly>,
    valid: Validity,
}

impl PartialEq for GradedSeries {
    fn eq(&self, other: &Self) -> bool {
        self.same_alphabet(other) && self.valid == other.valid && self.terms == other.terms
    }
}

impl GradedSeries {
    pub fn zero(alphabet: &Arc<Alphabet>, valid: Validity) -> Self {
        GradedSeries { alphabet: alphabet.clone(), terms: BTreeMap::new(), valid }
    }

    pub fn constant(alphabet: &Arc<Alphabet>, c: CoeffPoly, valid: Validity) -> Self {
        let mut s = GradedSeries::zero(alphabet, valid);
        s.add_term(vec![0; alphabet.len()], c);
        s
    }

    pub fn monomial(alphabet: &Arc<Alphabet>, exps: Vec<i32>, c: CoeffPoly, valid: Validity) -> Self {
        let mut s = GradedSeries::zero(alphabet, valid);
        s.add_term(exps, c);
        s
    }

    /// The single variable `x_k` with coefficient 1.
    pub fn variable(alphabet: &Arc<Alphabet>, k: usize, valid: Validity) -> Self {
        let mut e = vec![0; alphabet.len()];
        e[k] = 1;
        GradedSeries::monomial(alphabet, e, CoeffPoly::one(), valid)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn valid(&self) -> Validity {
        self.valid
    }

    pub fn same_alphabet(&self, other: &GradedSeries) -> bool {
        Arc::ptr_eq(&self.alphabet, &other.alphabet) || *self.alphabet == *other.alphabet
    }

    fn check_alphabet(&self, other: &GradedSeries) -> Result<()> {
        if self.same_alphabet(other) {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch(self.alphabet.label.clone(), other.alphabet.label.clone()))
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True if every known term vanishes.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &CoeffPoly)> {
        self.terms.iter()
    }

    /// Adds `c · x^exps`. Terms at or above the validity bound are discarded.
    pub fn add_term(&mut self, exps: Vec<i32>, c: CoeffPoly) {
        debug_assert_eq!(exps.len(), self.alphabet.len());
        debug_assert!(exps.iter().zip(&self.alphabet.vars).all(|(e, v)| *e >= 0 || v.laurent));
        if c.is_zero() {
            return;
        }
        let weight = self.alphabet.weight_of(&exps);
        if !self.valid.contains(weight) {
            return;
        }
        let key = Key { weight, exps };
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += s · (coefficient poly) · x^exps`, avoiding a temporary.
    pub fn add_scaled_term(&mut self, exps: Vec<i32>, c: &CoeffPoly, s: &Scalar) {
        if s.is_zero() || c.is_zero() {
            return;
        }
        self.add_term(exps, c.scale(s));
    }

    /// Coefficient of `x^exps`; an error if that weight is not known.
    pub fn coeff(&self, exps: &[i32]) -> Result<CoeffPoly> {
        let weight = self.alphabet.weight_of(exps);
        if !self.valid.contains(weight) {
            return Err(Error::Validity { requested: weight, valid: self.valid.bound().unwrap_or(i32::MAX) });
        }
        Ok(self
            .terms
            .get(&Key { weight, exps: exps.to_vec() })
            .cloned()
            .unwrap_or_else(CoeffPoly::zero))
    }

    /// Lower bound on the weight of any term, known or unknown.
    pub fn support_floor(&self) -> Validity {
        let low = self.terms.keys().next().map(|k| k.weight);
        match (low, self.valid) {
            (Some(w), v) => Validity::Below(w).min(v),
            (None, v) => v,
        }
    }

    pub fn min_weight(&self) -> Option<i32> {
        self.terms.keys().next().map(|k| k.weight)
    }

    pub fn max_weight(&self) -> Option<i32> {
        self.terms.keys().map(|k| k.weight).max()
    }

    pub fn truncate(&self, w: i32) -> GradedSeries {
        let valid = self.valid.min(Validity::Below(w));
        GradedSeries {
            alphabet: self.alphabet.clone(),
            terms: self.terms.iter().filter(|(k, _)| k.weight < w).map(|(k, c)| (k.clone(), c.clone())).collect(),
            valid,
        }
    }

    /// Replaces the validity bound, discarding terms beyond a lower one.
    /// Raising the bound is only meaningful for series known to be exact there.
    pub fn with_validity(&self, valid: Validity) -> GradedSeries {
        let mut out = GradedSeries::zero(&self.alphabet, valid);
        for (k, c) in &self.terms {
            out.add_term(k.exps.clone(), c.clone());
        }
        out
    }

    /// Terms of exactly weight `w`, with the series' own validity.
    pub fn stratum(&self, w: i32) -> GradedSeries {
        GradedSeries {
            alphabet: self.alphabet.clone(),
            terms: self.terms.iter().filter(|(k, _)| k.weight == w).map(|(k, c)| (k.clone(), c.clone())).collect(),
            valid: self.valid,
        }
    }

    pub fn add(&self, other: &GradedSeries) -> Result<GradedSeries> {
        self.check_alphabet(other)?;
        let valid = self.valid.min(other.valid);
        let mut out = self.with_validity(valid);
        for (k, c) in &other.terms {
            out.add_term(k.exps.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GradedSeries) -> Result<GradedSeries> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GradedSeries {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn scale(&self, s: &Scalar) -> GradedSeries {
        if s.is_zero() {
            return GradedSeries::zero(&self.alphabet, self.valid);
        }
        GradedSeries {
            alphabet: self.alphabet.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.scale(s))).collect(),
            valid: self.valid,
        }
    }

    pub fn scale_poly(&self, p: &CoeffPoly) -> GradedSeries {
        let mut out = GradedSeries::zero(&self.alphabet, self.valid);
        for (k, c) in &self.terms {
            out.add_term(k.exps.clone(), c.mul(p));
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&CoeffPoly) -> CoeffPoly) -> GradedSeries {
        let mut out = GradedSeries::zero(&self.alphabet, self.valid);
        for (k, c) in &self.terms {
            out.add_term(k.exps.clone(), f(c));
        }
        out
    }

    /// Product; valid below `min(W_f + floor(g), W_g + floor(f))`.
    pub fn mul(&self, other: &GradedSeries) -> Result<GradedSeries> {
        self.check_alphabet(other)?;
        let valid = self.valid.plus(other.support_floor()).min(other.valid.plus(self.support_floor()));
        let mut out = GradedSeries::zero(&self.alphabet, valid);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                if !valid.contains(ka.weight + kb.weight) {
                    continue;
                }
                let exps: Vec<i32> = ka.exps.iter().zip(&kb.exps).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<GradedSeries> {
        let mut acc = GradedSeries::constant(&self.alphabet, CoeffPoly::one(), Validity::Exact);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Swaps each variable with its conjugate and conjugates coefficients.
    pub fn conj(&self) -> GradedSeries {
        let mut out = GradedSeries::zero(&self.alphabet, self.valid);
        for (k, c) in &self.terms {
            out.add_term(self.alphabet.conj_exps(&k.exps), c.conj());
        }
        out
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// `∂/∂x_k`; lowers weight by `weight(x_k)`.
    pub fn derivative(&self, k: usize) -> GradedSeries {
        let wk = self.alphabet.vars[k].weight;
        let mut out = GradedSeries::zero(&self.alphabet, self.valid.shift(-wk));
        for (key, c) in &self.terms {
            let e = key.exps[k];
            if e == 0 {
                continue;
            }
            let mut exps = key.exps.clone();
            exps[k] -= 1;
            out.add_term(exps, c.scale(&Scalar::from_int(e as i64)));
        }
        out
    }

    /// Substitutes `x_k ↦ subs[k]` (a series over `target`). Requires
    /// nonnegative exponents and that every substitute starts at weight at
    /// least `weight(x_k)`, so truncation is respected.
    pub fn compose(&self, subs: &[GradedSeries], target: &Arc<Alphabet>) -> Result<GradedSeries> {
        if subs.len() != self.alphabet.len() {
            return Err(Error::Invalid("substitution arity mismatch".into()));
        }
        let mut valid = self.valid;
        for (k, s) in subs.iter().enumerate() {
            if !(Arc::ptr_eq(s.alphabet(), target) || **s.alphabet() == **target) {
                return Err(Error::AlphabetMismatch(s.alphabet.label.clone(), target.label.clone()));
            }
            let w = self.alphabet.vars[k].weight;
            if let Validity::Below(f) = s.support_floor() {
                if f < w {
                    return Err(Error::Invalid(format!(
                        "substitute for {} has support below its weight",
                        self.alphabet.vars[k].name
                    )));
                }
            }
            valid = valid.min(s.valid);
        }
        let subs: Vec<GradedSeries> = subs.iter().map(|s| s.truncate_to(valid)).collect();
        // images of monomials, built from images of their divisors
        let mut images: BTreeMap<Vec<i32>, GradedSeries> = BTreeMap::new();
        images.insert(vec![0; subs.len()], GradedSeries::constant(target, CoeffPoly::one(), Validity::Exact));
        let mut out = GradedSeries::zero(target, valid);
        for (key, c) in &self.terms {
            if key.exps.iter().any(|&e| e < 0) {
                return Err(Error::Invalid("compose requires nonnegative exponents".into()));
            }
            let image = monomial_image(&key.exps, &subs, valid, &mut images)?;
            for (tk, tc) in &image.terms {
                out.add_term(tk.exps.clone(), tc.mul(c));
            }
        }
        Ok(out)
    }

    fn truncate_to(&self, v: Validity) -> GradedSeries {
        match v {
            Validity::Exact => self.clone(),
            Validity::Below(w) => self.truncate(w),
        }
    }

    /// Checks that `other` agrees with `self` on every weight both know.
    pub fn agrees_with(&self, other: &GradedSeries) -> Result<bool> {
        self.check_alphabet(other)?;
        let v = self.valid.min(other.valid);
        let d = self.truncate_to(v).sub(&other.truncate_to(v))?;
        Ok(d.is_zero())
    }
}

fn monomial_image<'a>(
    exps: &[i32],
    subs: &[GradedSeries],
    valid: Validity,
    images: &'a mut BTreeMap<Vec<i32>, GradedSeries>,
) -> Result<&'a GradedSeries> {
    if !images.contains_key(exps) {
        let k = exps.iter().position(|&e| e > 0).expect("the empty monomial is cached");
        let mut lower = exps.to_vec();
        lower[k] -= 1;
        let img = monomial_image(&lower, subs, valid, images)?.mul(&subs[k])?.truncate_to(valid);
        images.insert(exps.to_vec(), img);
    }
    Ok(&images[exps])
}

impl fmt::Debug for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 + O({})", self.valid);
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, e) in k.exps.iter().enumerate() {
                if *e == 1 {
                    write!(f, "*{}", self.alphabet.vars[i].name)?;
                } else if *e != 0 {
                    write!(f, "*{}^{}", self.alphabet.vars[i].name, e)?;
                }
            }
        }
        write!(f, " + O({})", self.valid)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_var() -> Arc<Alphabet> {
        Alphabet::new("x", vec![VarSpec { name: "x".into(), weight: 1, conj: 0, laurent: false }]).unwrap()
    }

    fn poly(alpha: &Arc<Alphabet>, coeffs: &[i64], valid: Validity) -> GradedSeries {
        let mut s = GradedSeries::zero(alpha, valid);
        for (i, c) in coeffs.iter().enumerate() {
            s.add_term(vec![i as i32], CoeffPoly::constant(Scalar::from_int(*c)));
        }
        s
    }

    #[test]
    fn truncated_difference_of_squares() {
        let x = one_var();
        let a = poly(&x, &[1, 1], Validity::Below(2));
        let b = poly(&x, &[1, -1], Validity::Below(2));
        let p = a.mul(&b).unwrap();
        assert_eq!(p.valid(), Validity::Below(2));
        assert_eq!(p, GradedSeries::constant(&x, CoeffPoly::one(), Validity::Below(2)));
    }

    #[test]
    fn truncation_bounds_products() {
        let x = one_var();
        let f = poly(&x, &[1, 2, 3], Validity::Exact);
        let g = poly(&x, &[0, 1], Validity::Exact);
        let p = f.truncate(2).mul(&g).unwrap();
        // floor(g) = 1 so the truncation error begins at weight 3.
        assert_eq!(p.valid(), Validity::Below(3));
        assert!(!p.valid().contains(3));
    }

    #[test]
    fn reading_past_validity_is_an_error() {
        let x = one_var();
        let f = poly(&x, &[1, 2, 3], Validity::Below(2));
        assert!(f.coeff(&[1]).is_ok());
        assert!(matches!(f.coeff(&[2]), Err(Error::Validity { requested: 2, valid: 2 })));
    }

    #[test]
    fn alphabet_mismatch() {
        let x = one_var();
        let y = Alphabet::new("y", vec![VarSpec { name: "y".into(), weight: 2, conj: 0, laurent: false }]).unwrap();
        let a = GradedSeries::variable(&x, 0, Validity::Exact);
        let b = GradedSeries::variable(&y, 0, Validity::Exact);
        assert!(matches!(a.add(&b), Err(Error::AlphabetMismatch(_, _))));
    }

    #[test]
    fn composition_respects_validity() {
        let x = one_var();
        let f = poly(&x, &[0, 1, 1], Validity::Below(4));
        // x ↦ x + x^2
        let s = poly(&x, &[0, 1, 1], Validity::Exact);
        let c = f.compose(&[s], &x).unwrap();
        // (x+x²) + (x+x²)² = x + 2x² + 2x³ + x⁴
        assert_eq!(c, poly(&x, &[0, 1, 2, 2], Validity::Below(4)));
    }
}
