//! Complete contractions `contr(∇^{p_1,q_1} f̃ ⊗ ⋯ ⊗ ∇^{p_r,q_r} f̃)` and their
//! enumeration up to symmetry.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::algebra::CoeffPoly;
use crate::ambient::BasepointJets;
use crate::error::{Error, Result};

/// Factors `(p_i, q_i)` sorted, and `matching[i][j]` = number of holomorphic
/// slots of factor `i` contracted against antiholomorphic slots of factor `j`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ContractionScheme {
    pub factors: Vec<(usize, usize)>,
    pub matching: Vec<Vec<usize>>,
}

impl ContractionScheme {
    pub fn new(factors: Vec<(usize, usize)>, matching: Vec<Vec<usize>>) -> Result<Self> {
        let r = factors.len();
        if matching.len() != r || matching.iter().any(|row| row.len() != r) {
            return Err(Error::Invalid("matching must be an r x r matrix".into()));
        }
        for (i, &(p, q)) in factors.iter().enumerate() {
            let row: usize = matching[i].iter().sum();
            let col: usize = matching.iter().map(|m| m[i]).sum();
            if row != p || col != q {
                return Err(Error::Invalid(format!("matching does not saturate factor {i}")));
            }
        }
        let mut s = ContractionScheme { factors, matching };
        s.canonicalize();
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.factors.iter().map(|f| f.0).sum()
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Every slot of some factor is contracted with the same factor.
    pub fn has_self_trace(&self) -> bool {
        (0..self.rank()).any(|i| self.matching[i][i] > 0)
    }

    /// Replaces `(factors, matching)` by the lex-least representative under
    /// simultaneous permutation of identical factors.
    fn canonicalize(&mut self) {
        let r = self.rank();
        let mut order: Vec<usize> = (0..r).collect();
        order.sort_by_key(|&i| self.factors[i]);
        let factors: Vec<(usize, usize)> = order.iter().map(|&i| self.factors[i]).collect();
        let base: Vec<Vec<usize>> =
            order.iter().map(|&i| order.iter().map(|&j| self.matching[i][j]).collect()).collect();
        let mut best: Option<Vec<Vec<usize>>> = None;
        for perm in permutations(r) {
            if (0..r).any(|i| factors[perm[i]] != factors[i]) {
                continue;
            }
            let cand: Vec<Vec<usize>> = (0..r).map(|i| (0..r).map(|j| base[perm[i]][perm[j]]).collect()).collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
        self.factors = factors;
        self.matching = best.expect("identity permutation");
    }
}

impl fmt::Display for ContractionScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fs: Vec<String> = self.factors.iter().map(|(p, q)| format!("({p},{q})")).collect();
        let rows: Vec<String> = self
            .matching
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{} m=[{}]", fs.join(""), rows.join(";"))
    }
}

fn permutations(r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(r - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, r - 1);
            out.push(q);
        }
    }
    out
}

fn factor_multisets(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|p| (1..n).map(move |q| (p, q))).collect();
    let mut out = Vec::new();
    fn rec(
        pairs: &[(usize, usize)],
        start: usize,
        left: (usize, usize),
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if left == (0, 0) {
            if cur.len() >= 2 {
                out.push(cur.clone());
            }
            return;
        }
        for (k, &(p, q)) in pairs.iter().enumerate().skip(start) {
            if p <= left.0 && q <= left.1 {
                cur.push((p, q));
                rec(pairs, k, (left.0 - p, left.1 - q), cur, out);
                cur.pop();
            }
        }
    }
    rec(&pairs, 0, (n, n), &mut Vec::new(), &mut out);
    out
}

fn matrices(rows: &[usize], cols: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let r = rows.len();
    let mut out = Vec::new();
    let mut m = vec![vec![0; r]; r];
    fn rec(
        i: usize,
        j: usize,
        rows: &[usize],
        col_left: &mut Vec<usize>,
        row_left: usize,
        m: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        let r = rows.len();
        if i == r {
            if col_left.iter().all(|&c| c == 0) {
                out.push(m.clone());
            }
            return;
        }
        if j == r {
            if row_left == 0 {
                let next = if i + 1 < r { rows[i + 1] } else { 0 };
                rec(i + 1, 0, rows, col_left, next, m, out);
            }
            return;
        }
        for v in 0..=row_left.min(col_left[j]) {
            m[i][j] = v;
            col_left[j] -= v;
            rec(i, j + 1, rows, col_left, row_left - v, m, out);
            col_left[j] += v;
        }
        m[i][j] = 0;
    }
    let mut col_left = cols.to_vec();
    rec(0, 0, rows, &mut col_left, rows[0], &mut m, &mut out);
    out
}

/// All canonical schemes with `r >= 2` factors, `p_i, q_i >= 1` and
/// `Σp_i = Σq_i = n`, in sorted order.
pub fn enumerate_schemes(n: usize) -> Vec<ContractionScheme> {
    let mut set = BTreeSet::new();
    for factors in factor_multisets(n) {
        let rows: Vec<usize> = factors.iter().map(|f| f.0).collect();
        let cols: Vec<usize> = factors.iter().map(|f| f.1).collect();
        for m in matrices(&rows, &cols) {
            set.insert(ContractionScheme::new(factors.clone(), m).expect("saturated by construction"));
        }
    }
    set.into_iter().collect()
}

/// Evaluates the contraction at `ẽ_0` against `g̃^{KL̄}`.
///
/// Index assignments in which some factor has only index 0 on one side are
/// skipped: those components vanish by the Euler relation for bidegree
/// `(0,0)`. Every remaining factor has weight below `2n`.
pub fn evaluate_contraction(scheme: &ContractionScheme, jets: &BasepointJets<'_>) -> Result<CoeffPoly> {
    let n = jets.n();
    if scheme.n() != n {
        return Err(Error::Invalid(format!("scheme is for n = {}, tensors for n = {n}", scheme.n())));
    }
    let r = scheme.rank();
    let mut edges = Vec::new();
    for i in 0..r {
        for j in 0..r {
            for _ in 0..scheme.matching[i][j] {
                edges.push((i, j));
            }
        }
    }
    let partner = |k: usize| if k == 0 { n } else if k == n { 0 } else { k };
    let mut cache: BTreeMap<(Vec<usize>, Vec<usize>), CoeffPoly> = BTreeMap::new();
    let mut acc = CoeffPoly::zero();
    let mut assign = vec![0usize; edges.len()];
    loop {
        let mut hol = vec![Vec::new(); r];
        let mut anti = vec![Vec::new(); r];
        let mut sign = 1i64;
        for (e, &(i, j)) in edges.iter().enumerate() {
            let k = assign[e];
            hol[i].push(k);
            anti[j].push(partner(k));
            sign *= if k == 0 || k == n { 2 } else { -2 };
        }
        let degenerate = (0..r).any(|i| hol[i].iter().all(|&k| k == 0) || anti[i].iter().all(|&k| k == 0));
        if !degenerate {
            let mut term = CoeffPoly::constant(crate::algebra::Scalar::from_int(sign));
            for i in 0..r {
                hol[i].sort_unstable();
                anti[i].sort_unstable();
                let key = (hol[i].clone(), anti[i].clone());
                if !cache.contains_key(&key) {
                    let c = jets.component(&key.0, &key.1)?;
                    cache.insert(key.clone(), c);
                }
                let c = &cache[&key];
                if c.is_zero() {
                    term = CoeffPoly::zero();
                    break;
                }
                term = term.mul(c);
            }
            acc.add_assign(&term);
        }
        // next assignment
        let mut e = 0;
        loop {
            if e == edges.len() {
                return Ok(acc);
            }
            assign[e] += 1;
            if assign[e] <= n {
                break;
            }
            assign[e] = 0;
            e += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(enumerate_schemes(2).len(), 2);
        let s3 = enumerate_schemes(3);
        assert_eq!(s3.len(), 7);
        let cubic: Vec<_> = s3.iter().filter(|s| s.rank() == 3).collect();
        assert_eq!(cubic.len(), 3);
    }

    #[test]
    fn canonical_form_identifies_relabelings() {
        let a = ContractionScheme::new(vec![(1, 1); 3], vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]).unwrap();
        let b = ContractionScheme::new(vec![(1, 1); 3], vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert_eq!(a, b);
        let c = ContractionScheme::new(vec![(2, 1), (1, 2)], vec![vec![0, 2], vec![1, 0]]).unwrap();
        assert_eq!(c.factors, vec![(1, 2), (2, 1)]);
        assert_eq!(c.matching, vec![vec![0, 1], vec![2, 0]]);
    }

    #[test]
    fn self_traces_present() {
        let s2 = enumerate_schemes(2);
        assert_eq!(s2.iter().filter(|s| s.has_self_trace()).count(), 1);
    }
}
