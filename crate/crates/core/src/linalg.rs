//! Dense exact linear algebra: row reduction, kernels, images, quotients.
//!
//! Subspaces are stored by the reduced row-echelon form of a spanning set, so
//! two equal subspaces always have identical data.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{GvError, Result};
use crate::scalar::Scalar;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<S: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(GvError::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(GvError::Dimension("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor from small integer literals.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let c = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == c), "ragged rows");
        Matrix {
            rows: rows.len(),
            cols: c,
            data: rows.iter().flat_map(|r| r.iter().map(|&v| S::from_i64(v))).collect(),
        }
    }

    /// Column vector.
    pub fn column(v: Vec<S>) -> Self {
        Matrix { rows: v.len(), cols: 1, data: v }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut S {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn into_data(self) -> Vec<S> {
        self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(S::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = self.get(r, c);
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v.mul_ref(s)).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = S::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    acc.add_mul_assign(a, b);
                }
                acc
            })
            .collect()
    }

    /// Kronecker product. The basis vector `e_i ⊗ e_j` has index
    /// `i * other_dim + j`, matching the global tensor index convention.
    pub fn kron(&self, other: &Self) -> Self {
        let (r2, c2) = (other.rows, other.cols);
        let mut out = Matrix::zeros(self.rows * r2, self.cols * c2);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..r2 {
                    for l in 0..c2 {
                        let b = other.get(j, l);
                        if !b.is_zero() {
                            out.set(i * r2 + j, k * c2 + l, a.mul_ref(b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn hstack(blocks: &[&Self]) -> Self {
        let rows = blocks.first().map_or(0, |b| b.rows);
        assert!(blocks.iter().all(|b| b.rows == rows), "hstack row mismatch");
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            for r in 0..rows {
                for c in 0..b.cols {
                    out.set(r, off + c, b.get(r, c).clone());
                }
            }
            off += b.cols;
        }
        out
    }

    pub fn vstack(blocks: &[&Self]) -> Self {
        let cols = blocks.first().map_or(0, |b| b.cols);
        assert!(blocks.iter().all(|b| b.cols == cols), "vstack column mismatch");
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            data.extend(b.data.iter().cloned());
        }
        Matrix { rows, cols, data }
    }

    /// Block-diagonal sum.
    pub fn block_diag(blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out.set(ro + r, co + c, b.get(r, c).clone());
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        Matrix { rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Matrix::from_fn(self.rows, idx.len(), |r, c| self.get(r, idx[c]).clone())
    }

    pub fn rref(&self) -> RowEchelon<S> {
        rref(self)
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    /// Rank computed by column reduction (row reduction of the transpose).
    pub fn column_rank(&self) -> usize {
        rref(&self.transpose()).rank
    }

    pub fn kernel(&self) -> Subspace<S> {
        kernel(self)
    }

    pub fn image(&self) -> Subspace<S> {
        image(self)
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        solve(self, &Matrix::identity(self.rows)).filter(|x| (self * x).is_identity())
    }
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(S::to_exact_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<'a, S: Scalar> Mul<&'a Matrix<S>> for &'a Matrix<S> {
    type Output = Matrix<S>;

    fn mul(self, rhs: &'a Matrix<S>) -> Matrix<S> {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Matrix::<S>::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let row_out = i * rhs.cols;
                for (j, b) in rhs.row(k).iter().enumerate() {
                    if !b.is_zero() {
                        out.data[row_out + j].add_mul_assign(a, b);
                    }
                }
            }
        }
        out
    }
}

impl<'a, S: Scalar> Add<&'a Matrix<S>> for &'a Matrix<S> {
    type Output = Matrix<S>;

    fn add(self, rhs: &'a Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.add_ref(b)).collect(),
        }
    }
}

impl<'a, S: Scalar> Sub<&'a Matrix<S>> for &'a Matrix<S> {
    type Output = Matrix<S>;

    fn sub(self, rhs: &'a Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub_ref(b)).collect(),
        }
    }
}

impl<S: Scalar> Neg for &Matrix<S> {
    type Output = Matrix<S>;

    fn neg(self) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a.clone()).collect(),
        }
    }
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowEchelon<S: Scalar> {
    pub matrix: Matrix<S>,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Reduced row-echelon form, its pivot columns and the rank.
pub fn rref<S: Scalar>(m: &Matrix<S>) -> RowEchelon<S> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut lead = 0;
    for col in 0..cols {
        if lead == rows {
            break;
        }
        let Some(p) = (lead..rows).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        if p != lead {
            for c in 0..cols {
                a.data.swap(p * cols + c, lead * cols + c);
            }
        }
        let inv = a.get(lead, col).inverse().expect("nonzero pivot");
        for c in col..cols {
            let v = a.get(lead, c).mul_ref(&inv);
            a.set(lead, c, v);
        }
        let support: Vec<usize> = (col..cols).filter(|&c| !a.get(lead, c).is_zero()).collect();
        let pivot_row: Vec<S> = support.iter().map(|&c| a.get(lead, c).clone()).collect();
        for r in 0..rows {
            if r == lead {
                continue;
            }
            let f = a.get(r, col).clone();
            if f.is_zero() {
                continue;
            }
            for (&c, pv) in support.iter().zip(&pivot_row) {
                a.entry_mut(r, c).sub_mul_assign(&f, pv);
            }
        }
        pivots.push(col);
        lead += 1;
    }
    let rank = pivots.len();
    RowEchelon { matrix: a, pivots, rank }
}

/// Null space of `m`, as a subspace of the domain.
pub fn kernel<S: Scalar>(m: &Matrix<S>) -> Subspace<S> {
    let re = rref(m);
    let cols = m.cols;
    let mut is_pivot = vec![false; cols];
    for &p in &re.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for f in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![S::zero(); cols];
        v[f] = S::one();
        for (i, &p) in re.pivots.iter().enumerate() {
            v[p] = -re.matrix.get(i, f).clone();
        }
        basis.push(v);
    }
    Subspace::from_spanning_rows(cols, basis)
}

/// Common null space of several maps out of `k^domain_dim`.
///
/// Each map is restricted to the kernel found so far, so the systems solved
/// stay small.
pub fn joint_kernel<S: Scalar>(domain_dim: usize, maps: impl IntoIterator<Item = Matrix<S>>) -> Subspace<S> {
    let mut current = Subspace::full(domain_dim);
    for m in maps {
        if current.dim() == 0 {
            break;
        }
        assert_eq!(m.cols, domain_dim, "joint_kernel: domain mismatch");
        let restricted = &m * &current.inclusion();
        if restricted.is_zero() {
            continue;
        }
        let k = kernel(&restricted);
        current = Subspace::from_row_span(&(&k.basis * &current.basis));
    }
    current
}

/// Column space of `m`, as a subspace of the codomain.
pub fn image<S: Scalar>(m: &Matrix<S>) -> Subspace<S> {
    Subspace::span_of_columns(m)
}

/// A particular solution `X` of `m * X = rhs`, or `None` if inconsistent.
pub fn solve<S: Scalar>(m: &Matrix<S>, rhs: &Matrix<S>) -> Option<Matrix<S>> {
    assert_eq!(m.rows, rhs.rows, "solve: row count mismatch");
    let aug = Matrix::hstack(&[m, rhs]);
    let re = rref(&aug);
    if re.pivots.iter().any(|&p| p >= m.cols) {
        return None;
    }
    let mut x = Matrix::zeros(m.cols, rhs.cols);
    for (i, &p) in re.pivots.iter().enumerate() {
        for j in 0..rhs.cols {
            x.set(p, j, re.matrix.get(i, m.cols + j).clone());
        }
    }
    Some(x)
}

/// Quotient of `k^ambient_dim` by `sub`, with the canonical complement spanned
/// by the non-pivot coordinates of `sub`'s basis.
pub fn quotient<S: Scalar>(ambient_dim: usize, sub: &Subspace<S>) -> Result<Quotient<S>> {
    if sub.ambient_dim != ambient_dim {
        return Err(GvError::Dimension(format!(
            "subspace of k^{} used as a subspace of k^{ambient_dim}",
            sub.ambient_dim
        )));
    }
    Ok(sub.quotient())
}

/// A subspace of `k^n`, stored as its RREF basis (rows).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace<S: Scalar> {
    ambient_dim: usize,
    basis: Matrix<S>,
    pivots: Vec<usize>,
}

impl<S: Scalar> Subspace<S> {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Matrix::zeros(0, ambient_dim), pivots: vec![] }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn from_spanning_rows(ambient_dim: usize, rows: Vec<Vec<S>>) -> Self {
        if rows.is_empty() {
            return Self::zero(ambient_dim);
        }
        let m = Matrix::from_rows(rows).expect("spanning vectors of equal length");
        assert_eq!(m.cols, ambient_dim, "spanning vector length");
        Self::from_row_span(&m)
    }

    /// Row span of `m`.
    pub fn from_row_span(m: &Matrix<S>) -> Self {
        let re = rref(m);
        let basis = re.matrix.select_rows(&(0..re.rank).collect::<Vec<_>>());
        Subspace { ambient_dim: m.cols, basis, pivots: re.pivots }
    }

    /// Column span of `m`.
    pub fn span_of_columns(m: &Matrix<S>) -> Self {
        Self::from_row_span(&m.transpose())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    /// RREF basis vectors as rows.
    pub fn basis(&self) -> &Matrix<S> {
        &self.basis
    }

    pub fn basis_vector(&self, i: usize) -> Vec<S> {
        self.basis.row(i).to_vec()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Inclusion map `k^dim -> k^ambient` (basis vectors as columns).
    pub fn inclusion(&self) -> Matrix<S> {
        self.basis.transpose()
    }

    /// Coordinates of `v` in the RREF basis, or `None` if `v` is not in the
    /// subspace.
    pub fn coordinates(&self, v: &[S]) -> Option<Vec<S>> {
        assert_eq!(v.len(), self.ambient_dim, "vector length");
        let coords: Vec<S> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = vec![S::zero(); self.ambient_dim];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, b) in rebuilt.iter_mut().zip(self.basis.row(i)) {
                slot.add_mul_assign(c, b);
            }
        }
        (rebuilt.as_slice() == v).then_some(coords)
    }

    /// Coordinates of every column of `m`; `None` if some column lies outside.
    pub fn coordinates_of_columns(&self, m: &Matrix<S>) -> Option<Matrix<S>> {
        assert_eq!(m.rows, self.ambient_dim, "column length");
        let coords = m.select_rows(&self.pivots);
        (&self.inclusion() * &coords == *m).then_some(coords)
    }

    pub fn contains(&self, v: &[S]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.ambient_dim == self.ambient_dim
            && (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.ambient_dim, other.ambient_dim, "subspace sum ambient mismatch");
        Self::from_row_span(&Matrix::vstack(&[&self.basis, &other.basis]))
    }

    pub fn intersection(&self, other: &Self) -> Self {
        assert_eq!(self.ambient_dim, other.ambient_dim, "intersection ambient mismatch");
        let stacked = Matrix::hstack(&[&self.inclusion(), &-&other.inclusion()]);
        let ker = kernel(&stacked);
        let d = self.dim();
        let coeffs = ker.basis.select_cols(&(0..d).collect::<Vec<_>>());
        Self::from_row_span(&(&coeffs * &self.basis))
    }

    /// Image of the subspace under a linear map.
    pub fn map(&self, m: &Matrix<S>) -> Self {
        assert_eq!(m.cols, self.ambient_dim, "map domain mismatch");
        Self::span_of_columns(&(m * &self.inclusion()))
    }

    pub fn quotient(&self) -> Quotient<S> {
        let n = self.ambient_dim;
        let mut is_pivot = vec![false; n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let complement: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let q = complement.len();
        let mut projection = Matrix::zeros(q, n);
        let mut section = Matrix::zeros(n, q);
        for (t, &c) in complement.iter().enumerate() {
            projection.set(t, c, S::one());
            section.set(c, t, S::one());
            for (s, &p) in self.pivots.iter().enumerate() {
                let b = self.basis.get(s, c);
                if !b.is_zero() {
                    projection.set(t, p, -b.clone());
                }
            }
        }
        Quotient { projection, section, kernel: self.clone() }
    }
}

/// A quotient space `k^n / kernel` with canonical projection and section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient<S: Scalar> {
    pub projection: Matrix<S>,
    pub section: Matrix<S>,
    pub kernel: Subspace<S>,
}

impl<S: Scalar> Quotient<S> {
    pub fn dim(&self) -> usize {
        self.projection.rows
    }

    pub fn ambient_dim(&self) -> usize {
        self.projection.cols
    }

    /// Descends a map `f` out of the ambient space through the projection,
    /// failing when `f` does not vanish on the kernel.
    pub fn descend(&self, f: &Matrix<S>) -> Option<Matrix<S>> {
        let killed = &(f * &self.kernel.inclusion());
        killed.is_zero().then(|| f * &self.section)
    }
}

/// Serializable view of a subspace: its RREF basis rows as exact strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceSummary {
    pub ambient_dim: usize,
    pub dim: usize,
    pub basis: Vec<Vec<String>>,
}

impl<S: Scalar> From<&Subspace<S>> for SubspaceSummary {
    fn from(s: &Subspace<S>) -> Self {
        SubspaceSummary {
            ambient_dim: s.ambient_dim,
            dim: s.dim(),
            basis: matrix_to_strings(&s.basis),
        }
    }
}

pub fn matrix_to_strings<S: Scalar>(m: &Matrix<S>) -> Vec<Vec<String>> {
    (0..m.rows).map(|r| m.row(r).iter().map(S::to_exact_string).collect()).collect()
}

pub fn matrix_from_strings<S: Scalar>(rows: &[Vec<String>], cols: usize) -> Result<Matrix<S>> {
    let mut data = Vec::with_capacity(rows.len() * cols);
    for row in rows {
        if row.len() != cols {
            return Err(GvError::Dimension(format!(
                "row of length {} where {cols} expected",
                row.len()
            )));
        }
        for e in row {
            data.push(S::parse_exact(e)?);
        }
    }
    Matrix::from_vec(rows.len(), cols, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type M = Matrix<Rational>;

    #[test]
    fn rref_identity_and_zero() {
        let id = M::identity(3);
        let re = rref(&id);
        assert_eq!(re.matrix, id);
        assert_eq!(re.pivots, vec![0, 1, 2]);
        assert_eq!(re.rank, 3);

        let z = M::zeros(2, 4);
        let re = rref(&z);
        assert_eq!(re.matrix, z);
        assert!(re.pivots.is_empty());
        assert_eq!(re.rank, 0);
    }

    #[test]
    fn rref_rank_one() {
        let m = M::from_i64_rows(&[&[1, 2], &[2, 4]]);
        let re = rref(&m);
        assert_eq!(re.matrix, M::from_i64_rows(&[&[1, 2], &[0, 0]]));
        assert_eq!(re.rank, 1);
        assert_eq!(image(&m).dim(), 1);
    }

    #[test]
    fn kernel_extremes() {
        assert_eq!(kernel(&M::identity(4)).dim(), 0);
        assert_eq!(kernel(&M::zeros(3, 5)).dim(), 5);
        assert_eq!(image(&M::identity(3)), Subspace::full(3));
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let b = M::from_i64_rows(&[&[3], &[-1]]);
        assert_eq!(solve(&M::identity(2), &b), Some(b.clone()));
        let m = M::from_i64_rows(&[&[1, 1], &[1, 1]]);
        let rhs = M::from_i64_rows(&[&[1], &[2]]);
        assert!(solve(&m, &rhs).is_none());
    }

    #[test]
    fn solve_recovers_known_solution() {
        let m = M::from_i64_rows(&[&[2, 1, 0, 3], &[0, 1, 4, 1], &[1, 0, 1, 0], &[5, 2, 0, 1]]);
        assert!(m.is_invertible());
        let x = M::from_i64_rows(&[&[1, -2], &[0, 3], &[7, 1], &[-1, 0]]);
        let rhs = &m * &x;
        assert_eq!(solve(&m, &rhs), Some(x));
    }

    #[test]
    fn quotient_cases() {
        let q = quotient(3, &Subspace::<Rational>::zero(3)).unwrap();
        assert!(q.projection.is_identity());
        let q = quotient(3, &Subspace::<Rational>::full(3)).unwrap();
        assert_eq!(q.dim(), 0);

        let sub = Subspace::from_spanning_rows(
            3,
            vec![vec![Rational::from_i64(1), Rational::from_i64(0), Rational::from_i64(0)]],
        );
        let q = quotient(3, &sub).unwrap();
        assert_eq!(q.dim(), 2);
        assert_eq!(q.section, M::from_i64_rows(&[&[0, 0], &[1, 0], &[0, 1]]));
        assert!((&q.projection * &q.section).is_identity());
        assert_eq!(kernel(&q.projection), sub);
        assert!(quotient(4, &sub).is_err());
    }

    #[test]
    fn intersection_and_sum() {
        let r = |v: &[i64]| v.iter().map(|&x| Rational::from_i64(x)).collect::<Vec<_>>();
        let u = Subspace::from_spanning_rows(3, vec![r(&[1, 0, 0]), r(&[0, 1, 0])]);
        let w = Subspace::from_spanning_rows(3, vec![r(&[0, 1, 1]), r(&[1, 1, 0])]);
        let i = u.intersection(&w);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&r(&[1, 1, 0])));
        assert_eq!(u.sum(&w).dim(), 3);
    }

    #[test]
    fn subspace_coordinates() {
        let r = |v: &[i64]| v.iter().map(|&x| Rational::from_i64(x)).collect::<Vec<_>>();
        let u = Subspace::from_spanning_rows(3, vec![r(&[1, 2, 0]), r(&[2, 4, 1])]);
        assert_eq!(u.coordinates(&r(&[3, 6, 1])), Some(r(&[3, 1])));
        assert_eq!(u.coordinates(&r(&[0, 1, 0])), None);
    }
}
