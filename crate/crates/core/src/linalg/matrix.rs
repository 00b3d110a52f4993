use std::fmt;

use super::field::{Field, Fp, PrimeField, Rat, Rationals};
use super::LinalgError;

/// Dense row-major matrix over a single field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    ctx: F::Ctx,
    data: Vec<F>,
}

pub type QMatrix = Matrix<Rat>;

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(ctx: &F::Ctx, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, ctx: ctx.clone(), data: vec![F::zero(ctx); rows * cols] }
    }

    pub fn identity(ctx: &F::Ctx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one(ctx);
        }
        m
    }

    /// Builds a matrix from rows, checking shape and that all entries share `ctx`.
    pub fn from_rows(ctx: &F::Ctx, rows: Vec<Vec<F>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(LinalgError::Ragged);
            }
            data.extend(row);
        }
        let m = Matrix { rows: r, cols: c, ctx: ctx.clone(), data };
        m.check_field()?;
        Ok(m)
    }

    pub fn from_fn(ctx: &F::Ctx, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, ctx: ctx.clone(), data }
    }

    pub fn from_i64_rows(ctx: &F::Ctx, rows: &[&[i64]]) -> Self {
        let c = rows.first().map_or(0, |r| r.len());
        Self::from_fn(ctx, rows.len(), c, |i, j| F::from_i64(ctx, rows[i][j]))
    }

    pub fn column_vector(ctx: &F::Ctx, v: &[F]) -> Self {
        Self::from_fn(ctx, v.len(), 1, |i, _| v[i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Errors when any entry lives in a different field than the matrix.
    pub fn check_field(&self) -> Result<(), LinalgError> {
        for x in &self.data {
            if x.ctx() != self.ctx {
                return Err(LinalgError::MixedField);
            }
        }
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ctx, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn neg(&self) -> Self {
        self.map(F::neg)
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map(|x| x.mul(s))
    }

    pub fn map(&self, f: impl Fn(&F) -> F) -> Self {
        Matrix { rows: self.rows, cols: self.cols, ctx: self.ctx.clone(), data: self.data.iter().map(f).collect() }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, LinalgError> {
        self.same_shape(rhs)?;
        Ok(self.zip(rhs, F::add))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, LinalgError> {
        self.same_shape(rhs)?;
        Ok(self.zip(rhs, F::sub))
    }

    fn zip(&self, rhs: &Self, f: impl Fn(&F, &F) -> F) -> Self {
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, ctx: self.ctx.clone(), data }
    }

    fn same_shape(&self, rhs: &Self) -> Result<(), LinalgError> {
        if self.ctx != rhs.ctx {
            return Err(LinalgError::MixedField);
        }
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(LinalgError::Dimension {
                expected: format!("{}x{}", self.rows, self.cols),
                found: format!("{}x{}", rhs.rows, rhs.cols),
            });
        }
        Ok(())
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.ctx != rhs.ctx {
            return Err(LinalgError::MixedField);
        }
        if self.cols != rhs.rows {
            return Err(LinalgError::Dimension {
                expected: format!("{} rows", self.cols),
                found: format!("{} rows", rhs.rows),
            });
        }
        let mut out = Self::zeros(&self.ctx, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    /// Matrix product; panics on shape or field mismatch.
    pub fn mul(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("matrix product")
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.try_add(rhs).expect("matrix sum")
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.try_sub(rhs).expect("matrix difference")
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(F::zero(&self.ctx), |acc, (a, b)| if a.is_zero() { acc } else { acc.add(&a.mul(b)) })
            })
            .collect()
    }

    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Self {
        Self::from_fn(&self.ctx, h, w, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.ctx, idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.ctx, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows);
        Self::from_fn(&self.ctx, self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.cols);
        Self::from_fn(&self.ctx, self.rows + rhs.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                rhs.get(i - self.rows, j).clone()
            }
        })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_skew(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| self.get(i, i).is_zero() && (0..i).all(|j| *self.get(i, j) == self.get(j, i).neg()))
    }

    /// Inverse by Gauss–Jordan; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(&self.ctx, n));
        let r = super::solve::rref(&aug);
        if r.pivots.len() < n || r.pivots[n - 1] >= n {
            return None;
        }
        Some(r.reduced.block(0, n, n, n))
    }

    pub fn determinant(&self) -> F {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = F::one(&self.ctx);
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a.get(r, c).is_zero()) else {
                return F::zero(&self.ctx);
            };
            if p != c {
                a.swap_rows(p, c);
                det = det.neg();
            }
            let piv = a.get(c, c).clone();
            det = det.mul(&piv);
            let inv = piv.inverse().expect("nonzero pivot");
            for r in (c + 1)..n {
                let f = a.get(r, c).mul(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = a.get(r, j).sub(&f.mul(a.get(c, j)));
                    a.set(r, j, v);
                }
            }
        }
        det
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn data_mut(&mut self) -> &mut [F] {
        &mut self.data
    }
}

impl QMatrix {
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_i64_rows(&Rationals, rows)
    }

    pub fn q_zeros(rows: usize, cols: usize) -> Self {
        Self::zeros(&Rationals, rows, cols)
    }

    pub fn q_identity(n: usize) -> Self {
        Self::identity(&Rationals, n)
    }

    /// Entrywise reduction mod p; `None` if p divides some denominator.
    pub fn reduce_mod(&self, field: &PrimeField) -> Option<Matrix<Fp>> {
        let data = self.data.iter().map(|q| field.reduce(q)).collect::<Option<Vec<_>>>()?;
        Some(Matrix { rows: self.rows, cols: self.cols, ctx: *field, data })
    }
}

/// A matrix known to equal its transpose.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix<F: Field>(Matrix<F>);

impl<F: Field> SymMatrix<F> {
    pub fn new(m: Matrix<F>) -> Result<Self, LinalgError> {
        if m.is_symmetric() {
            Ok(SymMatrix(m))
        } else {
            Err(LinalgError::NotSymmetric)
        }
    }
    pub fn zeros(ctx: &F::Ctx, n: usize) -> Self {
        SymMatrix(Matrix::zeros(ctx, n, n))
    }
    pub fn identity(ctx: &F::Ctx, n: usize) -> Self {
        SymMatrix(Matrix::identity(ctx, n))
    }
    pub fn size(&self) -> usize {
        self.0.rows()
    }
    pub fn as_matrix(&self) -> &Matrix<F> {
        &self.0
    }
    pub fn into_matrix(self) -> Matrix<F> {
        self.0
    }
}

/// A matrix known to satisfy M + Mᵀ = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewMatrix<F: Field>(Matrix<F>);

impl<F: Field> SkewMatrix<F> {
    pub fn new(m: Matrix<F>) -> Result<Self, LinalgError> {
        if m.is_skew() {
            Ok(SkewMatrix(m))
        } else {
            Err(LinalgError::NotSkew)
        }
    }
    pub fn size(&self) -> usize {
        self.0.rows()
    }
    pub fn as_matrix(&self) -> &Matrix<F> {
        &self.0
    }
    pub fn into_matrix(self) -> Matrix<F> {
        self.0
    }
}

impl<F: Field> std::ops::Deref for SymMatrix<F> {
    type Target = Matrix<F>;
    fn deref(&self) -> &Matrix<F> {
        &self.0
    }
}

impl<F: Field> std::ops::Deref for SkewMatrix<F> {
    type Target = Matrix<F>;
    fn deref(&self) -> &Matrix<F> {
        &self.0
    }
}
