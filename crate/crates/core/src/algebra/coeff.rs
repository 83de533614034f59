//! Polynomials in A-variables with Gaussian-rational coefficients.
//!
//! Every series coefficient in the pipeline is a `CoeffPoly`; numeric
//! computations use constant polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::avar::AVariable;
use super::scalar::Scalar;

/// A monomial `∏ a_k^{e_k}` with variables sorted and exponents positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AMonomial(pub Vec<(AVariable, u32)>);

impl AMonomial {
    pub fn one() -> Self {
        AMonomial(Vec::new())
    }

    pub fn var(v: AVariable) -> Self {
        AMonomial(vec![(v, 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn weight(&self) -> i32 {
        self.0.iter().map(|(v, e)| v.weight() * *e as i32).sum()
    }

    pub fn mul(&self, other: &AMonomial) -> AMonomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        AMonomial(out)
    }

    pub fn conj(&self) -> AMonomial {
        let mut v: Vec<_> = self.0.iter().map(|(a, e)| (a.conj(), *e)).collect();
        v.sort();
        AMonomial(v)
    }

    pub fn variables(&self) -> impl Iterator<Item = &AVariable> {
        self.0.iter().map(|(v, _)| v)
    }
}

impl fmt::Display for AMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Sparse polynomial in [`AVariable`]s. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CoeffPoly {
    terms: BTreeMap<AMonomial, Scalar>,
}

impl CoeffPoly {
    pub fn zero() -> Self {
        CoeffPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = CoeffPoly::zero();
        p.add_term(AMonomial::one(), c);
        p
    }

    pub fn one() -> Self {
        CoeffPoly::constant(Scalar::one())
    }

    pub fn var(v: AVariable) -> Self {
        let mut p = CoeffPoly::zero();
        p.add_term(AMonomial::var(v), Scalar::one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (AMonomial, Scalar)>>(it: I) -> Self {
        let mut p = CoeffPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &AMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: AMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += s · other`.
    pub fn add_scaled(&mut self, other: &CoeffPoly, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * s);
        }
    }

    pub fn add_assign(&mut self, other: &CoeffPoly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn scale(&self, s: &Scalar) -> CoeffPoly {
        if s.is_zero() {
            return CoeffPoly::zero();
        }
        CoeffPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn conj(&self) -> CoeffPoly {
        CoeffPoly::from_terms(self.terms.iter().map(|(m, c)| (m.conj(), c.conj())))
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Weights of the monomials present, in increasing order.
    pub fn weights(&self) -> Vec<i32> {
        let mut w: Vec<i32> = self.terms.keys().map(|m| m.weight()).collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    pub fn is_weight_homogeneous(&self, weight: i32) -> bool {
        self.terms.keys().all(|m| m.weight() == weight)
    }

    pub fn variables(&self) -> Vec<AVariable> {
        let mut v: Vec<AVariable> =
            self.terms.keys().flat_map(|m| m.variables().cloned()).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn mul(&self, other: &CoeffPoly) -> CoeffPoly {
        let mut out = CoeffPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> CoeffPoly {
        let mut acc = CoeffPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Replaces each variable present in `map` by its image.
    pub fn substitute(&self, map: &BTreeMap<AVariable, CoeffPoly>) -> CoeffPoly {
        let mut powers: BTreeMap<(AVariable, u32), CoeffPoly> = BTreeMap::new();
        let mut out = CoeffPoly::zero();
        for (m, c) in &self.terms {
            let mut term = CoeffPoly::constant(c.clone());
            let mut kept = AMonomial::one();
            for (v, e) in &m.0 {
                match map.get(v) {
                    Some(img) => {
                        let key = (v.clone(), *e);
                        if !powers.contains_key(&key) {
                            powers.insert(key.clone(), img.pow(*e));
                        }
                        term = term.mul(&powers[&key]);
                    }
                    None => kept = kept.mul(&AMonomial(vec![(v.clone(), *e)])),
                }
            }
            if !kept.is_one() {
                term = term.mul(&CoeffPoly::from_terms([(kept, Scalar::one())]));
            }
            out.add_assign(&term);
        }
        out
    }

    /// Evaluates with variables absent from `values` set to zero.
    pub fn eval(&self, values: &BTreeMap<AVariable, Scalar>) -> Scalar {
        let mut acc = Scalar::zero();
        'terms: for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in &m.0 {
                match values.get(v) {
                    Some(x) => t = &t * &x.pow(*e),
                    None => continue 'terms,
                }
            }
            acc += &t;
        }
        acc
    }

    /// Replaces every variable `a` by `t^{weight(a)} · a`.
    pub fn scale_by_weight(&self, t: &Scalar) -> CoeffPoly {
        CoeffPoly::from_terms(
            self.terms.iter().map(|(m, c)| (m.clone(), c * &t.pow(m.weight() as u32))),
        )
    }

    /// Splits into weight-homogeneous parts.
    pub fn weight_strata(&self) -> BTreeMap<i32, CoeffPoly> {
        let mut out: BTreeMap<i32, CoeffPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weight()).or_default().add_term(m.clone(), c.clone());
        }
        out
    }
}

impl From<Scalar> for CoeffPoly {
    fn from(s: Scalar) -> Self {
        CoeffPoly::constant(s)
    }
}

impl<'a> Add<&'a CoeffPoly> for &'a CoeffPoly {
    type Output = CoeffPoly;
    fn add(self, rhs: &CoeffPoly) -> CoeffPoly {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl<'a> Sub<&'a CoeffPoly> for &'a CoeffPoly {
    type Output = CoeffPoly;
    fn sub(self, rhs: &CoeffPoly) -> CoeffPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::from_int(-1));
        out
    }
}

impl<'a> Mul<&'a CoeffPoly> for &'a CoeffPoly {
    type Output = CoeffPoly;
    fn mul(self, rhs: &CoeffPoly) -> CoeffPoly {
        CoeffPoly::mul(self, rhs)
    }
}

impl Neg for &CoeffPoly {
    type Output = CoeffPoly;
    fn neg(self) -> CoeffPoly {
        self.scale(&Scalar::from_int(-1))
    }
}

impl fmt::Display for CoeffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| if m.is_one() { c.to_string() } else { format!("{c}*{m}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for CoeffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(alpha: &[u32], beta: &[u32], l: u32) -> AVariable {
        AVariable::new(alpha.to_vec(), beta.to_vec(), l)
    }

    #[test]
    fn conjugation_swaps_indices() {
        let p = CoeffPoly::var(a(&[2], &[1], 0)).scale(&Scalar::i());
        let q = p.conj();
        assert_eq!(q, CoeffPoly::var(a(&[1], &[2], 0)).scale(&Scalar::gauss(0, 1, -1, 1)));
        assert_eq!(q.conj(), p);
    }

    #[test]
    fn real_combination() {
        let x = CoeffPoly::var(a(&[2], &[1], 0));
        let s = &x + &x.conj();
        assert!(s.is_real());
        assert!(!x.is_real());
    }

    #[test]
    fn weight_scaling() {
        let x = CoeffPoly::var(a(&[2], &[1], 0));
        let y = CoeffPoly::var(a(&[1], &[1], 1));
        let p = &x.mul(&y) + &CoeffPoly::one();
        let scaled = p.scale_by_weight(&Scalar::from_int(2));
        assert_eq!(scaled, &x.mul(&y).scale(&Scalar::from_int(128)) + &CoeffPoly::one());
    }

    #[test]
    fn substitution_and_evaluation_agree() {
        let x = a(&[2], &[1], 0);
        let y = a(&[1], &[2], 0);
        let p = &CoeffPoly::var(x.clone()).mul(&CoeffPoly::var(y.clone())) + &CoeffPoly::var(x.clone());
        let mut values = BTreeMap::new();
        values.insert(x.clone(), Scalar::gauss(1, 2, 1, 1));
        values.insert(y.clone(), Scalar::gauss(1, 2, -1, 1));
        let mut map = BTreeMap::new();
        for (k, v) in &values {
            map.insert(k.clone(), CoeffPoly::constant(v.clone()));
        }
        let via_sub = p.substitute(&map).as_constant().unwrap();
        assert_eq!(via_sub, p.eval(&values));
        assert_eq!(via_sub, &Scalar::frac(5, 4) + &Scalar::gauss(1, 2, 1, 1));
    }
}
