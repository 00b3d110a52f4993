//! Congruence, the standard symplectic form, and symplectic framings.

use super::field::Field;
use super::matrix::{Matrix, SkewMatrix};
use super::LinalgError;

/// The standard symplectic matrix of even size `m = 2k + 2`:
/// off-diagonal ±1ₖ blocks followed by a 2×2 tail `[[0,1],[-1,0]]`.
/// For `m = 2` only the tail remains.
pub fn standard_symplectic<F: Field>(ctx: &F::Ctx, m: usize) -> Result<Matrix<F>, LinalgError> {
    if m == 0 || m % 2 == 1 {
        return Err(LinalgError::OddSize(m));
    }
    let k = m / 2 - 1;
    let mut q = Matrix::zeros(ctx, m, m);
    for i in 0..k {
        q.set(i, k + i, F::one(ctx));
        q.set(k + i, i, F::one(ctx).neg());
    }
    q.set(2 * k, 2 * k + 1, F::one(ctx));
    q.set(2 * k + 1, 2 * k, F::one(ctx).neg());
    Ok(q)
}

/// g·M·gᵀ
pub fn congruence<F: Field>(m: &Matrix<F>, g: &Matrix<F>) -> Result<Matrix<F>, LinalgError> {
    if !g.is_square() || !m.is_square() || g.cols() != m.rows() {
        return Err(LinalgError::Dimension {
            expected: format!("square {}x{}", m.rows(), m.rows()),
            found: format!("{}x{}", g.rows(), g.cols()),
        });
    }
    g.try_mul(m)?.try_mul(&g.transpose())
}

fn form<F: Field>(s: &Matrix<F>, x: &[F], y: &[F]) -> F {
    let sy = s.mul_vec(y);
    x.iter().zip(&sy).fold(F::zero(s.ctx()), |acc, (a, b)| acc.add(&a.mul(b)))
}

/// Invertible ψ with ψᵀ·S·ψ equal to the standard symplectic matrix.
///
/// Symplectic Gram–Schmidt over the standard basis in index order, so the
/// result is deterministic and equals the identity when S is already standard.
pub fn symplectic_framing<F: Field>(s: &SkewMatrix<F>) -> Result<Matrix<F>, LinalgError> {
    let m = s.size();
    if m == 0 || m % 2 == 1 {
        return Err(LinalgError::OddSize(m));
    }
    let ctx = s.ctx().clone();
    let sm = s.as_matrix();
    let mut pending: Vec<Vec<F>> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { F::one(&ctx) } else { F::zero(&ctx) }).collect())
        .collect();
    let mut pairs: Vec<(Vec<F>, Vec<F>)> = Vec::with_capacity(m / 2);
    while !pending.is_empty() {
        let u = pending.remove(0);
        let Some(pos) = pending.iter().position(|w| !form(sm, &u, w).is_zero()) else {
            return Err(LinalgError::Degenerate);
        };
        let w = pending.remove(pos);
        let scale = form(sm, &u, &w).inverse().expect("nonzero pairing");
        let v: Vec<F> = w.iter().map(|x| x.mul(&scale)).collect();
        // r <- r - S(r,v) u + S(r,u) v
        pending = pending
            .into_iter()
            .map(|r| {
                let rv = form(sm, &r, &v);
                let ru = form(sm, &r, &u);
                r.iter()
                    .zip(u.iter().zip(&v))
                    .map(|(ri, (ui, vi))| ri.sub(&rv.mul(ui)).add(&ru.mul(vi)))
                    .collect::<Vec<F>>()
            })
            .filter(|r| !r.iter().all(F::is_zero))
            .collect();
        pairs.push((u, v));
    }
    if pairs.len() * 2 != m {
        return Err(LinalgError::Degenerate);
    }
    let k = m / 2 - 1;
    let mut psi = Matrix::zeros(&ctx, m, m);
    let mut put = |col: usize, v: &[F]| {
        for (i, x) in v.iter().enumerate() {
            psi.set(i, col, x.clone());
        }
    };
    for (i, (u, v)) in pairs.iter().take(k).enumerate() {
        put(i, u);
        put(k + i, v);
    }
    let (u, v) = &pairs[k];
    put(2 * k, u);
    put(2 * k + 1, v);
    Ok(psi)
}

/// Cayley transform (I − X)⁻¹(I + X); `None` when I − X is singular.
pub fn cayley<F: Field>(x: &Matrix<F>) -> Option<Matrix<F>> {
    let id = Matrix::identity(x.ctx(), x.rows());
    let inv = id.sub(x).inverse()?;
    Some(inv.mul(&id.add(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::{rat, Rat, Rationals};
    use crate::linalg::matrix::QMatrix;

    fn q(m: usize) -> QMatrix {
        standard_symplectic::<Rat>(&Rationals, m).unwrap()
    }

    #[test]
    fn standard_form_shape() {
        let q4 = q(4);
        assert_eq!(q4, QMatrix::from_int_rows(&[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]]));
        let q8 = q(8);
        assert!(q8.is_skew());
        assert_eq!(q8.mul(&q8), QMatrix::q_identity(8).neg());
        assert!(standard_symplectic::<Rat>(&Rationals, 5).is_err());
    }

    #[test]
    fn standard_input_gives_identity_frame() {
        for m in [2, 4, 6, 8] {
            let psi = symplectic_framing(&SkewMatrix::new(q(m)).unwrap()).unwrap();
            assert_eq!(psi, QMatrix::q_identity(m));
        }
    }

    #[test]
    fn single_scaling_frame() {
        let s = SkewMatrix::new(QMatrix::from_int_rows(&[&[0, 5], &[-5, 0]])).unwrap();
        let psi = symplectic_framing(&s).unwrap();
        let mut want = QMatrix::q_identity(2);
        want.set(1, 1, rat(1, 5));
        assert_eq!(psi, want);
        assert_eq!(psi.transpose().mul(s.as_matrix()).mul(&psi), q(2));
    }

    #[test]
    fn degenerate_and_odd_rejected() {
        let z = SkewMatrix::new(QMatrix::q_zeros(4, 4)).unwrap();
        assert_eq!(symplectic_framing(&z).unwrap_err(), LinalgError::Degenerate);
        let odd = SkewMatrix::new(QMatrix::q_zeros(3, 3)).unwrap();
        assert_eq!(symplectic_framing(&odd).unwrap_err(), LinalgError::OddSize(3));
    }

    #[test]
    fn congruence_by_identity_and_minus_identity() {
        let m = QMatrix::from_int_rows(&[&[1, 2], &[2, 7]]);
        let id = QMatrix::q_identity(2);
        assert_eq!(congruence(&m, &id).unwrap(), m);
        assert_eq!(congruence(&m, &id.neg()).unwrap(), m);
        assert!(congruence(&m, &QMatrix::q_identity(3)).is_err());
    }

    #[test]
    fn cayley_of_skew_is_orthogonal() {
        let x = QMatrix::from_int_rows(&[&[0, 1, -2], &[-1, 0, 3], &[2, -3, 0]]);
        let g = cayley(&x).unwrap();
        assert_eq!(g.mul(&g.transpose()), QMatrix::q_identity(3));
    }
}
