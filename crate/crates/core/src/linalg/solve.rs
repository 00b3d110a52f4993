//! Reduced row echelon form, rank/kernel and affine solving.

use serde::{Deserialize, Serialize};

use super::field::Field;
use super::matrix::Matrix;
use super::LinalgError;

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref<F: Field> {
    pub reduced: Matrix<F>,
    pub pivots: Vec<usize>,
}

/// Canonical RREF: pivot is the first nonzero entry at or below the current
/// row in column order. The output is independent of the input row order.
pub fn rref<F: Field>(m: &Matrix<F>) -> Rref<F> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(p, r);
        let inv = a.get(r, c).inverse().expect("pivot is nonzero");
        {
            let data = a.data_mut();
            for j in c..cols {
                let v = data[r * cols + j].mul(&inv);
                data[r * cols + j] = v;
            }
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            let data = a.data_mut();
            for j in c..cols {
                let pv = &data[r * cols + j];
                if pv.is_zero() {
                    continue;
                }
                let v = data[i * cols + j].sub(&f.mul(pv));
                data[i * cols + j] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { reduced: a, pivots }
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    rref(m).pivots.len()
}

/// Rank together with a basis of the right kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankKernel<F: Field> {
    pub rank: usize,
    pub kernel: Vec<Vec<F>>,
}

pub fn rank_kernel<F: Field>(m: &Matrix<F>) -> Result<RankKernel<F>, LinalgError> {
    m.check_field()?;
    let r = rref(m);
    let kernel = kernel_from_rref(&r);
    Ok(RankKernel { rank: r.pivots.len(), kernel })
}

fn kernel_from_rref<F: Field>(r: &Rref<F>) -> Vec<Vec<F>> {
    let cols = r.reduced.cols();
    let ctx = r.reduced.ctx();
    let mut is_pivot = vec![None; cols];
    for (row, &c) in r.pivots.iter().enumerate() {
        is_pivot[c] = Some(row);
    }
    (0..cols)
        .filter(|&c| is_pivot[c].is_none())
        .map(|free| {
            let mut v = vec![F::zero(ctx); cols];
            v[free] = F::one(ctx);
            for (row, &pc) in r.pivots.iter().enumerate() {
                v[pc] = r.reduced.get(row, free).neg();
            }
            v
        })
        .collect()
}

/// A particular solution plus a basis of the homogeneous solutions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineSolutionSpace<F> {
    pub particular: Vec<F>,
    pub basis: Vec<Vec<F>>,
}

impl<F: Field> AffineSolutionSpace<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// particular + Σ coeffs[k]·basis[k]
    pub fn point(&self, coeffs: &[F]) -> Vec<F> {
        assert_eq!(coeffs.len(), self.basis.len());
        let mut x = self.particular.clone();
        for (c, b) in coeffs.iter().zip(&self.basis) {
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi = xi.add(&c.mul(bi));
            }
        }
        x
    }

    /// Whether `x - particular` lies in the span of the basis.
    pub fn contains(&self, x: &[F]) -> bool {
        if x.len() != self.particular.len() {
            return false;
        }
        let Some(ctx) = x.first().map(F::ctx) else {
            return true;
        };
        let diff: Vec<F> = x.iter().zip(&self.particular).map(|(a, b)| a.sub(b)).collect();
        if diff.iter().all(F::is_zero) {
            return true;
        }
        let k = self.basis.len();
        let aug = Matrix::from_fn(&ctx, diff.len(), k + 1, |i, j| if j < k { self.basis[j][i].clone() } else { diff[i].clone() });
        rank(&aug) == k
    }
}

/// Outcome of an affine solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineSolve<F: Field> {
    Consistent(AffineSolutionSpace<F>),
    Inconsistent,
}

impl<F: Field> AffineSolve<F> {
    pub fn space(&self) -> Option<&AffineSolutionSpace<F>> {
        match self {
            AffineSolve::Consistent(s) => Some(s),
            AffineSolve::Inconsistent => None,
        }
    }
}

/// Solves M·x = rhs exactly.
pub fn solve_affine<F: Field>(m: &Matrix<F>, rhs: &[F]) -> Result<AffineSolve<F>, LinalgError> {
    if rhs.len() != m.rows() {
        return Err(LinalgError::Dimension { expected: format!("rhs of length {}", m.rows()), found: rhs.len().to_string() });
    }
    m.check_field()?;
    if rhs.iter().any(|x| x.ctx() != *m.ctx()) {
        return Err(LinalgError::MixedField);
    }
    let n = m.cols();
    let aug = m.hstack(&Matrix::column_vector(m.ctx(), rhs));
    let r = rref(&aug);
    if r.pivots.last() == Some(&n) {
        return Ok(AffineSolve::Inconsistent);
    }
    let ctx = m.ctx();
    let mut particular = vec![F::zero(ctx); n];
    for (row, &c) in r.pivots.iter().enumerate() {
        particular[c] = r.reduced.get(row, n).clone();
    }
    let homog = Rref { reduced: r.reduced.block(0, 0, r.reduced.rows(), n), pivots: r.pivots };
    let basis = kernel_from_rref(&homog);
    Ok(AffineSolve::Consistent(AffineSolutionSpace { particular, basis }))
}
