//! Iterated derivatives `∂_I ∂̄_J f̃` at the base point `ẽ_0 = (1, 0, …, 0)`.
//!
//! The connection is flat, so `T_{IJ̄}` is a plain partial derivative. For a
//! series of bidegree `(P, Q)` exactly one monomial contributes to a given
//! component, and its weight is `‖IJ̄‖`.

use std::collections::BTreeMap;

use super::{index_weight, AmbientSeries, HarmonicExtension};
use crate::algebra::{CoeffPoly, Scalar};
use crate::error::{Error, Result};

/// A sorted list of indices in `0..=n`.
pub type IndexList = Vec<usize>;

/// On-demand access to the base-point derivatives of one series.
#[derive(Clone, Debug)]
pub struct BasepointJets<'a> {
    series: &'a AmbientSeries,
    bound: i32,
}

impl<'a> BasepointJets<'a> {
    /// Components of weight `>= bound` are refused.
    pub fn new(series: &'a AmbientSeries, bound: i32) -> Self {
        let bound = match series.valid().bound() {
            Some(w) => w.min(bound),
            None => bound,
        };
        BasepointJets { series, bound }
    }

    pub fn from_extension(ext: &'a HarmonicExtension) -> Self {
        BasepointJets::new(&ext.series, ext.ambiguity)
    }

    pub fn n(&self) -> usize {
        self.series.n()
    }

    pub fn bound(&self) -> i32 {
        self.bound
    }

    pub fn weight(&self, hol: &[usize], anti: &[usize]) -> i32 {
        let n = self.n();
        hol.iter().chain(anti).map(|&j| index_weight(n, j)).sum()
    }

    /// `∂_{hol} ∂̄_{anti} f̃ (ẽ_0)`.
    pub fn component(&self, hol: &[usize], anti: &[usize]) -> Result<CoeffPoly> {
        let w = self.weight(hol, anti);
        if w >= self.bound {
            return Err(Error::Validity { requested: w, valid: self.bound });
        }
        Ok(self.raw(hol, anti)?.unwrap_or_else(CoeffPoly::zero))
    }

    fn raw(&self, hol: &[usize], anti: &[usize]) -> Result<Option<CoeffPoly>> {
        let n = self.n();
        let (p, q) = self.series.bidegree();
        let mut exps = vec![0i32; 2 * n + 2];
        let mut factor = Scalar::one();
        for (side, idx, total) in [(0usize, hol, p), (n + 1, anti, q)] {
            let mut counts = vec![0i32; n + 1];
            for &j in idx {
                counts[j] += 1;
            }
            let rest: i32 = counts[1..].iter().sum();
            let a0 = total - rest;
            exps[side] = a0;
            for j in 1..=n {
                exps[side + j] = counts[j];
                factor = &factor * &Scalar::from_int(factorial(counts[j]));
            }
            // ∂_0^k ξ_0^{a0} at ξ_0 = 1
            for t in 0..counts[0] {
                factor = &factor * &Scalar::from_int((a0 - t) as i64);
            }
        }
        if factor.is_zero() {
            return Ok(None);
        }
        let c = self.series.body().coeff(&exps)?;
        Ok(Some(c.scale(&factor)))
    }
}

fn factorial(k: i32) -> i64 {
    (1..=k as i64).product()
}

/// All sorted index lists of length `len` over `0..=n`.
pub fn multisets(n: usize, len: usize) -> Vec<IndexList> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(start: usize, n: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<IndexList>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for j in start..=n {
            cur.push(j);
            rec(j, n, len, cur, out);
            cur.pop();
        }
    }
    rec(0, n, len, &mut cur, &mut out);
    out
}

/// The components of `∇^{p,q} f̃ (ẽ_0)` of weight below the determined bound.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicTensor {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub valid_below: i32,
    pub components: BTreeMap<(IndexList, IndexList), CoeffPoly>,
}

impl HarmonicTensor {
    pub fn at_basepoint(ext: &HarmonicExtension, p: usize, q: usize) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::Invalid("harmonic tensors need p, q >= 1".into()));
        }
        let jets = BasepointJets::from_extension(ext);
        let n = jets.n();
        let mut components = BTreeMap::new();
        for i in multisets(n, p) {
            for j in multisets(n, q) {
                if jets.weight(&i, &j) < jets.bound() {
                    let c = jets.component(&i, &j)?;
                    components.insert((i.clone(), j.clone()), c);
                }
            }
        }
        Ok(HarmonicTensor { n, p, q, valid_below: jets.bound(), components })
    }

    /// Component for unsorted index lists; an error outside the valid range.
    pub fn get(&self, hol: &[usize], anti: &[usize]) -> Result<&CoeffPoly> {
        let mut i = hol.to_vec();
        let mut j = anti.to_vec();
        i.sort_unstable();
        j.sort_unstable();
        let w: i32 = i.iter().chain(&j).map(|&k| index_weight(self.n, k)).sum();
        self.components.get(&(i, j)).ok_or(Error::Validity { requested: w, valid: self.valid_below })
    }
}

/// Outcome of checking reality, the Euler relations and trace-freeness.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationReport {
    pub checked: usize,
    pub reality: Vec<String>,
    pub euler: Vec<String>,
    pub trace: Vec<String>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.reality.is_empty() && self.euler.is_empty() && self.trace.is_empty()
    }
}

fn show(i: &[usize], j: &[usize]) -> String {
    let f = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("");
    format!("T[{};{}]", f(i), f(j))
}

/// Checks the relations for every `(p, q)` with `1 <= p, q <= max_order`:
/// `conj T_{IJ̄} = T_{JĪ}`, `T_{I0,J̄} = −|I| T_{IJ̄}` (and its conjugate) and
/// `g̃^{KL̄} T_{IK,L̄J̄} = 0` whenever `‖IJ̄‖ + 2` is below the bound.
pub fn check_harmonic_relations(ext: &HarmonicExtension, max_order: usize) -> Result<RelationReport> {
    let jets = BasepointJets::from_extension(ext);
    let n = jets.n();
    let bound = jets.bound();
    let mut rep = RelationReport::default();
    let with = |v: &[usize], k: usize| {
        let mut o = v.to_vec();
        o.push(k);
        o.sort_unstable();
        o
    };
    for p in 1..=max_order {
        for q in 1..=max_order {
            for i in multisets(n, p) {
                for j in multisets(n, q) {
                    let w = jets.weight(&i, &j);
                    if w >= bound {
                        continue;
                    }
                    rep.checked += 1;
                    let t = jets.component(&i, &j)?;
                    if t.conj() != jets.component(&j, &i)? {
                        rep.reality.push(show(&i, &j));
                    }
                    let lhs = jets.component(&with(&i, 0), &j)?;
                    if lhs != t.scale(&Scalar::from_int(-(p as i64))) {
                        rep.euler.push(show(&with(&i, 0), &j));
                    }
                    let lhs = jets.component(&i, &with(&j, 0))?;
                    if lhs != t.scale(&Scalar::from_int(-(q as i64))) {
                        rep.euler.push(show(&i, &with(&j, 0)));
                    }
                }
            }
        }
    }
    // Traces are over a contracted pair of weight 2; the remaining indices
    // may be empty on either side.
    for p in 0..max_order {
        for q in 0..max_order {
            for i in multisets(n, p) {
                for j in multisets(n, q) {
                    if jets.weight(&i, &j) + 2 >= bound.min(ext.ambiguity) {
                        continue;
                    }
                    let tr = trace(&jets, &i, &j)?;
                    rep.checked += 1;
                    if !tr.is_zero() {
                        rep.trace.push(format!("trace of {}", show(&i, &j)));
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// `Σ g̃^{KL̄} T_{IK, L̄J}`.
pub fn trace(jets: &BasepointJets<'_>, i: &[usize], j: &[usize]) -> Result<CoeffPoly> {
    let n = jets.n();
    let with = |v: &[usize], k: usize| {
        let mut o = v.to_vec();
        o.push(k);
        o
    };
    let two = Scalar::from_int(2);
    let mut acc = jets.component(&with(i, 0), &with(j, n))?.scale(&two);
    acc.add_assign(&jets.component(&with(i, n), &with(j, 0))?.scale(&two));
    for k in 1..n {
        acc.add_assign(&jets.component(&with(i, k), &with(j, k))?.scale(&-&two));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Validity;
    use crate::ambient::AmbientSpace;

    #[test]
    fn components_of_norm_square_monomial() {
        let sp = AmbientSpace::new(2).unwrap();
        let mut e = vec![0; 6];
        e[0] = -1;
        e[1] = 1;
        e[3] = -1;
        e[4] = 1;
        let f = AmbientSeries::monomial(&sp, e, CoeffPoly::one(), Validity::Below(4));
        let jets = BasepointJets::new(&f, 4);
        assert_eq!(jets.component(&[1], &[1]).unwrap(), CoeffPoly::one());
        assert_eq!(jets.component(&[0, 1], &[1]).unwrap(), CoeffPoly::constant(Scalar::from_int(-1)));
        assert!(jets.component(&[2], &[2]).is_err());
    }

    #[test]
    fn constant_has_no_components() {
        let sp = AmbientSpace::new(3).unwrap();
        let f = AmbientSeries::constant(&sp, CoeffPoly::one(), Validity::Below(6));
        let ext = HarmonicExtension { series: f, ambiguity: 6 };
        let t = HarmonicTensor::at_basepoint(&ext, 1, 2).unwrap();
        assert!(t.components.values().all(CoeffPoly::is_zero));
        assert!(check_harmonic_relations(&ext, 2).unwrap().passed());
    }

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(2, 2).len(), 6);
        assert_eq!(multisets(3, 0), vec![Vec::<usize>::new()]);
    }
}
