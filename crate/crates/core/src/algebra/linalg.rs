//! Exact Gaussian elimination over ℚ(i).
//!
//! Right-hand sides may be any [`Module`] over the scalars, so one
//! elimination solves for polynomial-valued unknowns as well as numbers.

use super::coeff::CoeffPoly;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// A vector space over ℚ(i).
pub trait Module: Clone {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add_scaled(&mut self, other: &Self, s: &Scalar);
    fn scale(&self, s: &Scalar) -> Self;
}

impl Module for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add_scaled(&mut self, other: &Self, s: &Scalar) {
        *self += &(other * s);
    }
    fn scale(&self, s: &Scalar) -> Self {
        self * s
    }
}

impl Module for Vec<Scalar> {
    fn zero() -> Self {
        Vec::new()
    }
    fn is_zero(&self) -> bool {
        self.iter().all(Scalar::is_zero)
    }
    fn add_scaled(&mut self, other: &Self, s: &Scalar) {
        if self.len() < other.len() {
            self.resize(other.len(), Scalar::zero());
        }
        for (a, b) in self.iter_mut().zip(other) {
            *a += &(b * s);
        }
    }
    fn scale(&self, s: &Scalar) -> Self {
        self.iter().map(|v| v * s).collect()
    }
}

impl Module for CoeffPoly {
    fn zero() -> Self {
        CoeffPoly::zero()
    }
    fn is_zero(&self) -> bool {
        CoeffPoly::is_zero(self)
    }
    fn add_scaled(&mut self, other: &Self, s: &Scalar) {
        CoeffPoly::add_scaled(self, other, s)
    }
    fn scale(&self, s: &Scalar) -> Self {
        CoeffPoly::scale(self, s)
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![vec![Scalar::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Invalid("ragged matrix".into()));
        }
        Ok(Matrix { rows: rows.len(), cols, data: rows })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect()).collect())
            .expect("rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r][c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r]
    }

    pub fn push_row(&mut self, row: Vec<Scalar>) -> Result<()> {
        if self.rows > 0 && row.len() != self.cols {
            return Err(Error::Invalid("row length mismatch".into()));
        }
        self.cols = row.len();
        self.rows += 1;
        self.data.push(row);
        Ok(())
    }

    pub fn mul_vec<T: Module>(&self, x: &[T]) -> Vec<T> {
        (0..self.rows)
            .map(|r| {
                let mut acc = T::zero();
                for (c, xc) in x.iter().enumerate() {
                    if !self.data[r][c].is_zero() {
                        acc.add_scaled(xc, &self.data[r][c]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Invalid("dimension mismatch in matrix product".into()));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if !other.data[k][j].is_zero() {
                        out.data[i][j] += &(a * &other.data[k][j]);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j][i] = self.data[i][j].clone();
            }
        }
        out
    }

    /// Entrywise conjugate.
    pub fn conj(&self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|r| r.iter().map(Scalar::conj).collect()).collect() }
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::Invalid("inverse of a non-square matrix".into()));
        }
        let mut work = self.clone();
        let mut rhs: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|i| (0..self.rows).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
            .collect();
        if reduce(&mut work, &mut rhs).len() < self.rows {
            return Err(Error::DivisionByZero);
        }
        Matrix::from_rows(rhs)
    }

    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        let mut rhs: Vec<Scalar> = vec![Scalar::zero(); self.rows];
        reduce(&mut work, &mut rhs).len()
    }
}

/// Reduced row echelon form in place; returns pivot columns. The pivot of
/// each column is the first row at or below the current one with a nonzero
/// entry, so the result depends only on the input.
fn reduce<T: Module>(m: &mut Matrix, rhs: &mut [T]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !m.data[i][c].is_zero()) else {
            continue;
        };
        m.data.swap(r, p);
        rhs.swap(r, p);
        let inv = m.data[r][c].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for v in m.data[r][c..].iter_mut() {
                if !v.is_zero() {
                    *v = &*v * &inv;
                }
            }
            rhs[r] = rhs[r].scale(&inv);
        }
        let pivot_row = m.data[r].clone();
        let pivot_rhs = rhs[r].clone();
        for i in 0..m.rows {
            if i == r || m.data[i][c].is_zero() {
                continue;
            }
            let factor = -&m.data[i][c];
            for (j, pv) in pivot_row.iter().enumerate().skip(c) {
                if !pv.is_zero() {
                    let d = &factor * pv;
                    m.data[i][j] += &d;
                }
            }
            rhs[i].add_scaled(&pivot_rhs, &factor);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// One particular solution plus a nullspace basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution<T> {
    pub particular: Vec<T>,
    pub nullspace: Vec<Vec<Scalar>>,
}

/// Solves `M·x = b` exactly. Free variables are set to zero in the
/// particular solution; the nullspace basis has one vector per free column.
pub fn exact_solve<T: Module>(m: &Matrix, b: &[T]) -> Result<Solution<T>> {
    if b.len() != m.rows {
        return Err(Error::Invalid("right-hand side length mismatch".into()));
    }
    let mut work = m.clone();
    let mut rhs = b.to_vec();
    let pivots = reduce(&mut work, &mut rhs);
    if rhs[pivots.len()..].iter().any(|v| !v.is_zero()) {
        return Err(Error::NoSolution);
    }
    let mut particular = vec![T::zero(); m.cols];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = rhs[r].clone();
    }
    Ok(Solution { particular, nullspace: nullspace_from_rref(&work, &pivots) })
}

fn nullspace_from_rref(work: &Matrix, pivots: &[usize]) -> Vec<Vec<Scalar>> {
    let mut is_pivot = vec![false; work.cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..work.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Scalar::zero(); work.cols];
        v[free] = Scalar::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -&work.data[r][free];
        }
        basis.push(v);
    }
    basis
}

pub fn nullspace(m: &Matrix) -> Vec<Vec<Scalar>> {
    let mut work = m.clone();
    let mut rhs = vec![Scalar::zero(); m.rows];
    let pivots = reduce(&mut work, &mut rhs);
    nullspace_from_rref(&work, &pivots)
}

/// Row-reduces a list of vectors to a basis of their span (RREF rows).
pub fn row_basis(vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut work = Matrix::from_rows(vectors.to_vec()).expect("rectangular");
    let mut rhs = vec![Scalar::zero(); work.rows];
    let k = reduce(&mut work, &mut rhs).len();
    work.data.truncate(k);
    work.data
}
