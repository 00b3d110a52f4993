//! Restriction to the plane span(e₂,e₃,e₄): plane nets, Σ-points
//! (B₁,B₂,C,a,b), and the linear fiber system for (A₁,A₂).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::frame::FrameError;
use crate::linalg::{int, rank, solve_affine, AffineSolve, Field, LinalgError, Matrix, Rat, SymMatrix};
use crate::net::{barth_verify, NetError, QuadricNet};
use crate::report::{Verdict, VerificationReport, VerifyOptions};
use crate::slice::{c_of_octuple, closed_identities, gamma_conditions, wedge, BarthOctuple, SliceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlaneError {
    #[error("C is not symmetric")]
    NotSymmetric,
    #[error("expected a net on P{expected}, got ambient {found}")]
    Ambient { expected: usize, found: usize },
    #[error("Σ-point component {0} has the wrong size for n = {1}")]
    Size(&'static str, usize),
    #[error("solution vector has length {found}, expected {expected}")]
    Coordinates { expected: usize, found: usize },
    #[error(transparent)]
    Slice(#[from] SliceError),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Net(#[from] NetError),
}

/// (B₁, B₂, C, a₁, a₂, b₁, b₂) with C symmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaPoint<F: Field> {
    n: usize,
    pub mat_b: [SymMatrix<F>; 2],
    pub c: SymMatrix<F>,
    pub vec_a: [Vec<F>; 2],
    pub vec_b: [Vec<F>; 2],
}

impl<F: Field> SigmaPoint<F> {
    pub fn new(mat_b: [SymMatrix<F>; 2], c: SymMatrix<F>, vec_a: [Vec<F>; 2], vec_b: [Vec<F>; 2]) -> Result<Self, PlaneError> {
        let n = c.size();
        for (m, name) in mat_b.iter().zip(["B1", "B2"]) {
            if m.size() != n {
                return Err(PlaneError::Size(name, n));
            }
        }
        for (v, name) in vec_a.iter().chain(&vec_b).zip(["a1", "a2", "b1", "b2"]) {
            if v.len() != n {
                return Err(PlaneError::Size(name, n));
            }
        }
        Ok(SigmaPoint { n, mat_b, c, vec_a, vec_b })
    }

    pub fn zero(ctx: &F::Ctx, n: usize) -> Self {
        let z = SymMatrix::zeros(ctx, n);
        let v = vec![F::zero(ctx); n];
        SigmaPoint { n, mat_b: [z.clone(), z.clone()], c: z, vec_a: [v.clone(), v.clone()], vec_b: [v.clone(), v] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ctx(&self) -> &F::Ctx {
        self.c.ctx()
    }

    pub fn b(&self, i: usize) -> &Matrix<F> {
        self.mat_b[i].as_matrix()
    }
}

/// (A₁,A₂,B₁,B₂,a,b) ↦ (B₁, B₂, C(𝒜), a, b).
pub fn psi_project<F: Field>(o: &BarthOctuple<F>) -> Result<SigmaPoint<F>, PlaneError> {
    let c = SymMatrix::new(c_of_octuple(o)).map_err(|_| PlaneError::NotSymmetric)?;
    SigmaPoint::new(o.mat_b.clone(), c, o.vec_a.clone(), o.vec_b.clone())
}

/// The plane net with blocks (B₁, B₂, C) on e₂∧e₃, e₂∧e₄, e₃∧e₄.
pub fn plane_net<F: Field>(s: &SigmaPoint<F>) -> QuadricNet<F> {
    QuadricNet::new(s.n, 3, vec![s.mat_b[0].clone(), s.mat_b[1].clone(), s.c.clone()]).expect("three blocks of size n")
}

/// Drops the blocks touching e₁.
pub fn phi_restrict<F: Field>(net: &QuadricNet<F>) -> Result<QuadricNet<F>, PlaneError> {
    if net.ambient() != 4 {
        return Err(PlaneError::Ambient { expected: 3, found: net.ambient() });
    }
    let blocks = vec![net.block(1, 2).clone(), net.block(1, 3).clone(), net.block(2, 3).clone()];
    Ok(QuadricNet::new(net.n(), 3, blocks)?)
}

/// O(n) acts by congruence and on vectors; Sp₂ mixes the vector pairs and fixes C.
pub fn sigma_h_action<F: Field>(g: &Matrix<F>, m: &Matrix<F>, s: &SigmaPoint<F>) -> Result<SigmaPoint<F>, PlaneError> {
    let ctx = s.ctx().clone();
    if g.rows() != s.n || !g.is_square() || g.mul(&g.transpose()) != Matrix::identity(&ctx, s.n) {
        return Err(FrameError::NotOrthogonal.into());
    }
    if m.rows() != 2 || m.cols() != 2 || !m.determinant().is_one() {
        return Err(FrameError::NotSl2.into());
    }
    let conj = |x: &SymMatrix<F>| SymMatrix::new(g.mul(x.as_matrix()).mul(&g.transpose())).expect("congruence keeps symmetry");
    let (ms, mt, mu, mv) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    let mix = |x: &[F], y: &[F], p: &F, q: &F| -> Vec<F> { x.iter().zip(y).map(|(a, b)| p.mul(a).add(&q.mul(b))).collect() };
    let ga = [g.mul_vec(&s.vec_a[0]), g.mul_vec(&s.vec_a[1])];
    let gb = [g.mul_vec(&s.vec_b[0]), g.mul_vec(&s.vec_b[1])];
    Ok(SigmaPoint {
        n: s.n,
        mat_b: [conj(&s.mat_b[0]), conj(&s.mat_b[1])],
        c: conj(&s.c),
        vec_a: [mix(&ga[0], &gb[0], ms, mu), mix(&ga[1], &gb[1], ms, mu)],
        vec_b: [mix(&ga[0], &gb[0], mt, mv), mix(&ga[1], &gb[1], mt, mv)],
    })
}

/// Upper-triangle index pairs (i ≤ j), row-major.
pub fn sym_index(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

fn sym_basis<F: Field>(ctx: &F::Ctx, n: usize, i: usize, j: usize) -> Matrix<F> {
    let mut e = Matrix::zeros(ctx, n, n);
    e.set(i, j, F::one(ctx));
    e.set(j, i, F::one(ctx));
    e
}

fn sym_from_coords<F: Field>(ctx: &F::Ctx, n: usize, x: &[F]) -> SymMatrix<F> {
    let mut m = Matrix::zeros(ctx, n, n);
    for (k, &(i, j)) in sym_index(n).iter().enumerate() {
        m.set(i, j, x[k].clone());
        m.set(j, i, x[k].clone());
    }
    SymMatrix::new(m).expect("filled symmetrically")
}

/// Coordinates of (A₁, A₂): upper triangle of A₁ then of A₂.
pub fn sym_pair_coords<F: Field>(o: &BarthOctuple<F>) -> Vec<F> {
    let idx = sym_index(o.n());
    (0..2).flat_map(|k| idx.iter().map(move |&(i, j)| o.a(k).get(i, j).clone())).collect()
}

/// The linear system in (A₁, A₂): [A₁,B₁] = −a₁∧b₁ and [A₂,B₂] = −a₂∧b₂
/// (entries i < j), then A₁B₂ − B₁A₂ = C − a₁b₂ᵀ + b₁a₂ᵀ (all entries).
pub fn fiber_system<F: Field>(s: &SigmaPoint<F>) -> (Matrix<F>, Vec<F>) {
    let (n, ctx) = (s.n, s.ctx());
    let idx = sym_index(n);
    let strict: Vec<(usize, usize)> = idx.iter().copied().filter(|(i, j)| i < j).collect();
    let half = idx.len();
    let rows = 2 * strict.len() + n * n;
    let mut m = Matrix::zeros(ctx, rows, 2 * half);
    let skew_rows = strict.len();
    for (k, &(i, j)) in idx.iter().enumerate() {
        let e = sym_basis::<F>(ctx, n, i, j);
        for unknown in 0..2 {
            let col = unknown * half + k;
            let comm = e.mul(s.b(unknown)).sub(&s.b(unknown).mul(&e));
            for (r, &(p, q)) in strict.iter().enumerate() {
                m.set(unknown * skew_rows + r, col, comm.get(p, q).clone());
            }
            let third = if unknown == 0 { e.mul(s.b(1)) } else { s.b(0).mul(&e).neg() };
            for p in 0..n {
                for q in 0..n {
                    m.set(2 * skew_rows + p * n + q, col, third.get(p, q).clone());
                }
            }
        }
    }
    let mut rhs = Vec::with_capacity(rows);
    for i in 0..2 {
        let w = wedge(ctx, &s.vec_a[i], &s.vec_b[i]).expect("lengths checked");
        rhs.extend(strict.iter().map(|&(p, q)| w.get(p, q).neg()));
    }
    let outer = |a: &[F], b: &[F]| Matrix::column_vector(ctx, a).mul(&Matrix::column_vector(ctx, b).transpose());
    let target = s.c.as_matrix().sub(&outer(&s.vec_a[0], &s.vec_b[1])).add(&outer(&s.vec_b[0], &s.vec_a[1]));
    rhs.extend(target.entries().iter().cloned());
    (m, rhs)
}

pub fn fiber_solve<F: Field>(s: &SigmaPoint<F>) -> Result<AffineSolve<F>, PlaneError> {
    let (m, rhs) = fiber_system(s);
    Ok(solve_affine(&m, &rhs)?)
}

/// The octuple with (A₁, A₂) read from fiber coordinates and the rest from σ.
pub fn assemble<F: Field>(s: &SigmaPoint<F>, x: &[F]) -> Result<BarthOctuple<F>, PlaneError> {
    let half = s.n * (s.n + 1) / 2;
    if x.len() != 2 * half {
        return Err(PlaneError::Coordinates { expected: 2 * half, found: x.len() });
    }
    let ctx = s.ctx();
    let a = [sym_from_coords(ctx, s.n, &x[..half]), sym_from_coords(ctx, s.n, &x[half..])];
    Ok(BarthOctuple::new(a, s.mat_b.clone(), s.vec_a.clone(), s.vec_b.clone())?)
}

/// Shape, dimension and sampling outcome of one fiber.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    pub n: usize,
    pub equations: usize,
    pub unknowns: usize,
    pub rank: usize,
    pub consistent: bool,
    pub dim: Option<usize>,
    pub claimed_dim: usize,
    pub source_member: Option<bool>,
    pub samples: usize,
    pub closed_pass: usize,
    /// Samples passing every Γ condition; zero when open conditions were not run.
    pub open_pass: usize,
}

impl FiberReport {
    pub fn matches_claim(&self) -> bool {
        self.dim == Some(self.claimed_dim)
    }
}

/// Solves the fiber, checks the source pair, and runs `samples` random
/// points through the closed identities and, given options, the full Γ conditions.
pub fn fiber_report(s: &SigmaPoint<Rat>, source: Option<&BarthOctuple<Rat>>, samples: usize, seed: u64, open: Option<&VerifyOptions>) -> Result<FiberReport, PlaneError> {
    let (m, _) = fiber_system(s);
    let solved = fiber_solve(s)?;
    let space = solved.space();
    let mut report = FiberReport {
        n: s.n,
        equations: m.rows(),
        unknowns: m.cols(),
        rank: rank(&m),
        consistent: space.is_some(),
        dim: space.map(|sp| sp.dim()),
        claimed_dim: 4 * s.n,
        source_member: source.map(|o| space.is_some_and(|sp| sp.contains(&sym_pair_coords(o)))),
        samples: 0,
        closed_pass: 0,
        open_pass: 0,
    };
    let Some(space) = space else {
        return Ok(report);
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let coeffs: Vec<Rat> = (0..space.dim()).map(|_| int(rng.gen_range(-3..=3))).collect();
        let o = assemble(s, &space.point(&coeffs))?;
        report.samples += 1;
        if closed_identities(&o) == [true; 3] {
            report.closed_pass += 1;
        }
        if let Some(opts) = open {
            if matches!(gamma_conditions(&o, opts).overall(), Verdict::Pass | Verdict::Probable) {
                report.open_pass += 1;
            }
        }
    }
    Ok(report)
}

/// Barth's conditions for a plane net.
pub fn mx_verify(pnet: &QuadricNet<Rat>, opts: &VerifyOptions) -> Result<VerificationReport, PlaneError> {
    if pnet.ambient() != 3 {
        return Err(PlaneError::Ambient { expected: 3, found: pnet.ambient() });
    }
    Ok(barth_verify(pnet, opts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{QMatrix, Rationals};
    use crate::slice::net_of_octuple;

    #[test]
    fn null_correlation_restricts_to_one_block() {
        let mut net = QuadricNet::zero(&Rationals, 1, 4).unwrap();
        net.set_block(0, 1, SymMatrix::identity(&Rationals, 1));
        net.set_block(2, 3, SymMatrix::identity(&Rationals, 1));
        let p = phi_restrict(&net).unwrap();
        assert!(p.block(0, 1).is_zero() && p.block(0, 2).is_zero());
        assert_eq!(*p.block(1, 2).as_matrix(), QMatrix::q_identity(1));
        let zero = QuadricNet::<Rat>::zero(&Rationals, 2, 4).unwrap();
        assert_eq!(phi_restrict(&zero).unwrap(), QuadricNet::zero(&Rationals, 2, 3).unwrap());
    }

    #[test]
    fn zero_sigma_has_full_fiber() {
        let s = SigmaPoint::<Rat>::zero(&Rationals, 2);
        let (m, rhs) = fiber_system(&s);
        assert!(m.is_zero());
        assert!(rhs.iter().all(|x| x.is_zero()));
        assert_eq!(fiber_solve(&s).unwrap().space().unwrap().dim(), 6);
    }

    #[test]
    fn n1_system_is_one_scalar_equation() {
        let mut o = BarthOctuple::<Rat>::zero(&Rationals, 1);
        o.mat_a[0] = SymMatrix::new(QMatrix::from_int_rows(&[&[2]])).unwrap();
        o.mat_b[1] = SymMatrix::new(QMatrix::from_int_rows(&[&[3]])).unwrap();
        let s = psi_project(&o).unwrap();
        let (m, rhs) = fiber_system(&s);
        assert_eq!(m, QMatrix::from_int_rows(&[&[3, 0]]));
        assert_eq!(rhs, vec![int(6)]);
        assert!(fiber_solve(&s).unwrap().space().unwrap().contains(&sym_pair_coords(&o)));
    }

    #[test]
    fn zero_plane_net_fails_rank() {
        let r = mx_verify(&QuadricNet::zero(&Rationals, 2, 3).unwrap(), &VerifyOptions::exact()).unwrap();
        assert_eq!(r.verdict("(i)"), Some(Verdict::Fail));
        let mut o = BarthOctuple::<Rat>::zero(&Rationals, 1);
        o.mat_a[0] = SymMatrix::identity(&Rationals, 1);
        o.mat_b[1] = SymMatrix::identity(&Rationals, 1);
        let net = net_of_octuple(&o).unwrap();
        assert_eq!(plane_net(&psi_project(&o).unwrap()), phi_restrict(&net).unwrap());
    }
}
