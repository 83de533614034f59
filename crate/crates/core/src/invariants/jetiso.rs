//! Stratum-by-stratum check that `T: 𝓝₀^{[2n]} → 𝓗₀^{[2n]}` is bijective.

use std::collections::BTreeMap;

use crate::algebra::{AVariable, Matrix, Scalar};
use crate::ambient::{harmonic_extension, index_weight, multisets, AmbientSpace, BasepointJets};
use crate::error::Result;
use crate::jets::{free_n0_variables, generic_n0_jet, JetSpace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetIsoStratum {
    pub weight: i32,
    /// Real dimension of the 𝓝₀ stratum.
    pub n0_dim: usize,
    /// Components `T_{IJ̄}` with indices in `1..=n`, `|I|, |J| ≥ 1`.
    pub components: usize,
    /// Rank of the trace relations among those components.
    pub relation_rank: usize,
    /// Rank of the linear part of `T` on the stratum.
    pub t_rank: usize,
}

impl JetIsoStratum {
    pub fn h0_dim(&self) -> usize {
        self.components - self.relation_rank
    }

    pub fn agrees(&self) -> bool {
        self.n0_dim == self.h0_dim() && self.t_rank == self.n0_dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetIsoReport {
    pub n: usize,
    pub strata: Vec<JetIsoStratum>,
}

impl JetIsoReport {
    pub fn holds(&self) -> bool {
        self.strata.iter().all(JetIsoStratum::agrees)
    }
}

type Component = (Vec<usize>, Vec<usize>);

fn list_weight(n: usize, idx: &[usize]) -> i32 {
    idx.iter().map(|&k| index_weight(n, k)).sum()
}

/// Sorted index lists over `1..=n` of total weight `w`, with both sides of
/// size at least `min_len`.
fn components_of_weight(n: usize, w: i32, min_len: usize) -> Vec<Component> {
    let mut out = Vec::new();
    let max_len = w.max(0) as usize;
    for p in min_len..=max_len {
        for q in min_len..=max_len {
            for i in multisets(n, p) {
                if i.contains(&0) {
                    continue;
                }
                let wi = list_weight(n, &i);
                if wi > w {
                    continue;
                }
                for j in multisets(n, q) {
                    if !j.contains(&0) && wi + list_weight(n, &j) == w {
                        out.push((i.clone(), j));
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn with(idx: &[usize], k: usize) -> Vec<usize> {
    let mut v = idx.to_vec();
    v.push(k);
    v.sort_unstable();
    v
}

/// Trace relations at `ẽ₀` reduced by the Euler relations: for each `(I, J)`
/// of weight `w − 2`,
/// `−|I|·T_{I,nJ} − |J|·T_{In,J} − Σ_j T_{Ij,jJ} = 0`.
fn relation_matrix(n: usize, w: i32, index: &BTreeMap<Component, usize>) -> Matrix {
    let mut rows = Vec::new();
    for (i, j) in components_of_weight(n, w - 2, 0) {
        let mut row = vec![Scalar::zero(); index.len()];
        let mut put = |c: Component, s: i64| {
            if let Some(&k) = index.get(&c) {
                row[k] += &Scalar::from_int(s);
            }
        };
        put((i.clone(), with(&j, n)), -(i.len() as i64));
        put((with(&i, n), j.clone()), -(j.len() as i64));
        for t in 1..n {
            put((with(&i, t), with(&j, t)), -1);
        }
        if row.iter().any(|x| !x.is_zero()) {
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Matrix::zeros(0, index.len());
    }
    Matrix::from_rows(rows).expect("rectangular")
}

pub fn jet_isomorphism_report(n: usize) -> Result<JetIsoReport> {
    let amb = AmbientSpace::new(n)?;
    let space = JetSpace::new(n)?;
    let top = 2 * n as i32;
    let f = generic_n0_jet(&space, top);
    let ext = harmonic_extension(&amb, &f)?;
    let jets = BasepointJets::from_extension(&ext);
    let vars = free_n0_variables(&space, top);

    let mut strata = Vec::new();
    for w in 2..top {
        let comps = components_of_weight(n, w, 1);
        let index: BTreeMap<Component, usize> = comps.iter().cloned().enumerate().map(|(k, c)| (c, k)).collect();
        let rel = relation_matrix(n, w, &index);
        let relation_rank = if rel.rows() == 0 { 0 } else { rel.rank() };

        let wvars: Vec<&AVariable> = vars.iter().filter(|v| v.weight() == w).collect();
        let col: BTreeMap<&AVariable, usize> = wvars.iter().enumerate().map(|(k, v)| (*v, k)).collect();
        let mut tm = Matrix::zeros(comps.len(), wvars.len());
        for (r, (i, j)) in comps.iter().enumerate() {
            let c = jets.component(i, j)?;
            for (m, s) in c.terms() {
                if m.degree() != 1 {
                    continue;
                }
                let v = m.variables().next().expect("degree one");
                if let Some(&k) = col.get(v) {
                    tm.set(r, k, s.clone());
                }
            }
        }
        let t_rank = if comps.is_empty() || wvars.is_empty() { 0 } else { tm.rank() };
        strata.push(JetIsoStratum { weight: w, n0_dim: wvars.len(), components: comps.len(), relation_rank, t_rank });
    }
    Ok(JetIsoReport { n, strata })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n2_report() {
        let r = jet_isomorphism_report(2).unwrap();
        let dims: Vec<usize> = r.strata.iter().map(|s| s.n0_dim).collect();
        assert_eq!(dims, vec![0, 2]);
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn n2_weight_two_relation() {
        // T_{11̄} alone, killed by the trace relation at weight 0
        let r = jet_isomorphism_report(2).unwrap();
        assert_eq!(r.strata[0].components, 1);
        assert_eq!(r.strata[0].relation_rank, 1);
    }
}
