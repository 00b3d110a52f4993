//! Exact random test elements: integral matrices, orthogonal and
//! symplectic group elements over ℚ via Cayley transforms.

use rand::Rng;

use super::field::{int, Rat, Rationals};
use super::matrix::QMatrix;
use super::symplectic::{cayley, standard_symplectic};

pub fn int_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> QMatrix {
    QMatrix::from_fn(&Rationals, rows, cols, |_, _| int(rng.gen_range(-bound..=bound)))
}

pub fn int_vector<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> Vec<Rat> {
    (0..n).map(|_| int(rng.gen_range(-bound..=bound))).collect()
}

pub fn symmetric<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> QMatrix {
    let a = int_matrix(rng, n, n, bound);
    QMatrix::from_fn(&Rationals, n, n, |i, j| if i <= j { a.get(i, j).clone() } else { a.get(j, i).clone() })
}

pub fn skew<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> QMatrix {
    let a = int_matrix(rng, n, n, bound);
    QMatrix::from_fn(&Rationals, n, n, |i, j| {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => a.get(i, j).clone(),
            Greater => -a.get(j, i).clone(),
            Equal => int(0),
        }
    })
}

/// g with g·gᵀ = 1, from the Cayley transform of a random skew matrix.
pub fn orthogonal<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> QMatrix {
    loop {
        if let Some(g) = cayley(&skew(rng, n, bound)) {
            return g;
        }
    }
}

/// s with sᵀ·Q·s = Q for the standard symplectic Q of size m, from the
/// Cayley transform of a random Hamiltonian matrix −Q·S (S symmetric).
pub fn symplectic<R: Rng + ?Sized>(rng: &mut R, m: usize, bound: i64) -> QMatrix {
    let q = standard_symplectic::<Rat>(&Rationals, m).expect("even size");
    loop {
        let x = q.mul(&symmetric(rng, m, bound)).neg();
        if let Some(s) = cayley(&x) {
            return s;
        }
    }
}

/// A 2×2 matrix of determinant 1.
pub fn sl2<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> QMatrix {
    symplectic(rng, 2, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_land_in_their_groups() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..5 {
            let g = orthogonal(&mut rng, n, 3);
            assert_eq!(g.mul(&g.transpose()), QMatrix::q_identity(n));
        }
        for m in [2, 4, 6] {
            let q = standard_symplectic::<Rat>(&Rationals, m).unwrap();
            let s = symplectic(&mut rng, m, 3);
            assert_eq!(s.transpose().mul(&q).mul(&s), q);
        }
        assert_eq!(sl2(&mut rng, 4).determinant(), int(1));
    }
}
