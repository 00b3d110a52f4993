//! Framed points γ: H⊗V → W of the symplectic monad space, the skew matrix
//! A(γ) = γᵀ·Q·γ, lifts of nets to framed points and the GL(H)×Sp(W) action.

use thiserror::Error;

use crate::forms::LinearFormMatrix;
use crate::linalg::{rank, standard_symplectic, symplectic_framing, Field, LinalgError, Matrix, Rat, SkewMatrix};
use crate::net::verify::{open_conditions, surjectivity_certificate, RANK_DESC, SECTIONS_DESC, SURJ_DESC};
use crate::net::{decompose_pr2, section_count, NetError, NetPresentation};
use crate::report::{ReportEntry, Verdict, VerificationReport, VerifyOptions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("ambient dimension must be 3 or 4, got {0}")]
    Ambient(usize),
    #[error("framed point for n={n}, ambient={ambient} must be {rows}x{cols}, got {found}")]
    Shape { n: usize, ambient: usize, rows: usize, cols: usize, found: String },
    #[error("presentation has dim W = {found}, expected {expected}")]
    WDim { expected: usize, found: usize },
    #[error("g is singular")]
    SingularG,
    #[error("s does not preserve the standard symplectic form")]
    NotSymplectic,
    #[error("g is not orthogonal")]
    NotOrthogonal,
    #[error("m must be 2x2 with determinant 1")]
    NotSl2,
    #[error("group element and point have incompatible sizes")]
    SizeMismatch,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Net(#[from] NetError),
}

/// γ as a (2n+2)×(ambient·n) matrix, columns grouped by e₁, …, e_ambient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaPoint<F: Field> {
    n: usize,
    ambient: usize,
    gamma: Matrix<F>,
}

impl<F: Field> GammaPoint<F> {
    pub fn new(n: usize, ambient: usize, gamma: Matrix<F>) -> Result<Self, FrameError> {
        if ambient != 3 && ambient != 4 {
            return Err(FrameError::Ambient(ambient));
        }
        let (rows, cols) = (2 * n + 2, ambient * n);
        if gamma.rows() != rows || gamma.cols() != cols {
            return Err(FrameError::Shape { n, ambient, rows, cols, found: format!("{}x{}", gamma.rows(), gamma.cols()) });
        }
        Ok(GammaPoint { n, ambient, gamma })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.gamma
    }

    pub fn q(&self) -> Matrix<F> {
        standard_symplectic(self.gamma.ctx(), 2 * self.n + 2).expect("even size")
    }

    /// Membership in U₀: γ has full row rank.
    pub fn is_surjective(&self) -> bool {
        rank(&self.gamma) == 2 * self.n + 2
    }

    /// The presentation (c, q) = (γ, Q).
    pub fn presentation(&self) -> NetPresentation<F> {
        let q = SkewMatrix::new(self.q()).expect("standard form is skew");
        NetPresentation { n: self.n, ambient: self.ambient, c: self.gamma.clone(), q_w: q }
    }
}

/// γᵀ·Q·γ.
pub fn a_of_gamma<F: Field>(g: &GammaPoint<F>) -> SkewMatrix<F> {
    let a = g.gamma.transpose().mul(&g.q()).mul(&g.gamma);
    SkewMatrix::new(a).expect("γᵀQγ is skew")
}

/// An element (g, s) of GL(H)×Sp(W).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElementG<F: Field> {
    g: Matrix<F>,
    g_inv: Matrix<F>,
    s: Matrix<F>,
}

impl<F: Field> GroupElementG<F> {
    pub fn new(g: Matrix<F>, s: Matrix<F>) -> Result<Self, FrameError> {
        let g_inv = g.inverse().ok_or(FrameError::SingularG)?;
        if !s.is_square() || s.rows() % 2 == 1 {
            return Err(FrameError::NotSymplectic);
        }
        let q = standard_symplectic(s.ctx(), s.rows())?;
        if s.transpose().mul(&q).mul(&s) != q {
            return Err(FrameError::NotSymplectic);
        }
        Ok(GroupElementG { g, g_inv, s })
    }

    pub fn identity(ctx: &F::Ctx, n: usize) -> Self {
        let id = Matrix::identity(ctx, n);
        GroupElementG { g: id.clone(), g_inv: id, s: Matrix::identity(ctx, 2 * n + 2) }
    }

    pub fn g(&self) -> &Matrix<F> {
        &self.g
    }

    pub fn s(&self) -> &Matrix<F> {
        &self.s
    }
}

/// (g, s)·γ = s·γ·(g⁻¹⊗1).
pub fn g_action<F: Field>(e: &GroupElementG<F>, p: &GammaPoint<F>) -> Result<GammaPoint<F>, FrameError> {
    let n = p.n;
    if e.g.rows() != n || e.s.rows() != 2 * n + 2 {
        return Err(FrameError::SizeMismatch);
    }
    let sg = e.s.mul(&p.gamma);
    let mut out = Matrix::zeros(p.gamma.ctx(), sg.rows(), sg.cols());
    for i in 0..p.ambient {
        out.set_block(0, i * n, &sg.block(0, i * n, sg.rows(), n).mul(&e.g_inv));
    }
    GammaPoint::new(n, p.ambient, out)
}

/// (g, m) ↦ (g, diag(g, g, mᵀ)) for orthogonal g and m = [[s,t],[u,v]] of determinant 1.
pub fn embed_h_in_g<F: Field>(g: &Matrix<F>, m: &Matrix<F>) -> Result<GroupElementG<F>, FrameError> {
    let ctx = g.ctx().clone();
    if !g.is_square() || g.mul(&g.transpose()) != Matrix::identity(&ctx, g.rows()) {
        return Err(FrameError::NotOrthogonal);
    }
    if m.rows() != 2 || m.cols() != 2 || !m.determinant().is_one() {
        return Err(FrameError::NotSl2);
    }
    let n = g.rows();
    let mut s = Matrix::zeros(&ctx, 2 * n + 2, 2 * n + 2);
    s.set_block(0, 0, g);
    s.set_block(n, n, g);
    s.set_block(2 * n, 2 * n, &m.transpose());
    let e = GroupElementG::new(g.clone(), s)?;
    Ok(e)
}

/// γ = ψ⁻¹·c for the canonical framing ψᵀ·q_W·ψ = Q.
pub fn lift_from_net<F: Field>(p: &NetPresentation<F>) -> Result<GammaPoint<F>, FrameError> {
    let expected = 2 * p.n + 2;
    if p.w_dim() != expected {
        return Err(FrameError::WDim { expected, found: p.w_dim() });
    }
    let psi = symplectic_framing(&p.q_w)?;
    let psi_inv = psi.inverse().ok_or(LinalgError::Singular)?;
    GammaPoint::new(p.n, p.ambient, psi_inv.mul(&p.c))
}

const CLOSED_DESC: &str = "α(γ)^∨∘q∘α(γ) = 0";

/// Verdicts for the four conditions on a framed point; ambient 3 or 4.
pub fn misp_verify(p: &GammaPoint<Rat>, opts: &VerifyOptions) -> VerificationReport {
    let subject = if p.ambient == 4 { "framed point" } else { "framed plane point" };
    let mut report = VerificationReport::new(format!("{subject} n={}", p.n), opts.mode);
    let a = a_of_gamma(p);
    let r = rank(a.as_matrix());
    let want = 2 * p.n + 2;
    report.push(ReportEntry::exact("(i)", RANK_DESC, r == want, format!("rank {r}, expected {want}")));
    let (_, rest) = decompose_pr2(&a, p.n, p.ambient).expect("shape checked on construction");
    let closed = rest.is_zero();
    report.push(ReportEntry::exact("(ii)", CLOSED_DESC, closed, if closed { "pr2 vanishes".into() } else { "pr2 is nonzero".to_string() }));
    let pres = p.presentation();
    if closed {
        let (surj, sect) = open_conditions(&pres, opts, "(iii)", "(iv)");
        report.push(surj);
        report.push(sect);
    } else {
        let blocks = (0..p.ambient).map(|i| pres.c_block(i)).collect();
        let adual = LinearFormMatrix::new(blocks).expect("uniform blocks").transpose().mul_const_right(&pres.q_w.transpose()).expect("shapes agree");
        report.push(ReportEntry::from_certificate("(iii)", SURJ_DESC, surjectivity_certificate(&adual, opts)));
        let mut sect = ReportEntry::exact("(iv)", SECTIONS_DESC, false, format!("not a complex; raw h0 = {}", section_count(&pres)));
        sect.verdict = Verdict::Indeterminate;
        report.push(sect);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, random, QMatrix, Rationals};
    use crate::net::{presentation, QuadricNet};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn null_gamma() -> GammaPoint<Rat> {
        GammaPoint::new(1, 4, QMatrix::q_identity(4)).unwrap()
    }

    #[test]
    fn identity_gamma_gives_standard_form() {
        let a = a_of_gamma(&null_gamma());
        assert_eq!(*a.as_matrix(), standard_symplectic::<Rat>(&Rationals, 4).unwrap());
        let zero = GammaPoint::new(1, 4, QMatrix::q_zeros(4, 4)).unwrap();
        assert!(a_of_gamma(&zero).is_zero());
    }

    #[test]
    fn null_gamma_verifies() {
        let r = misp_verify(&null_gamma(), &VerifyOptions::exact());
        assert!(r.all_pass(), "{r:?}");
    }

    #[test]
    fn repeated_row_fails_rank() {
        let mut m = QMatrix::q_identity(4);
        m.set(1, 1, int(0));
        m.set(1, 0, int(1));
        let r = misp_verify(&GammaPoint::new(1, 4, m).unwrap(), &VerifyOptions::exact());
        assert_eq!(r.verdict("(i)"), Some(Verdict::Fail));
    }

    #[test]
    fn lift_round_trips_and_sp_invariance() {
        let mut net = QuadricNet::zero(&Rationals, 1, 4).unwrap();
        net.set_block(0, 1, crate::linalg::SymMatrix::identity(&Rationals, 1));
        net.set_block(2, 3, crate::linalg::SymMatrix::identity(&Rationals, 1));
        let p = presentation(&net).unwrap();
        let g = lift_from_net(&p).unwrap();
        assert_eq!(*g.matrix(), QMatrix::q_identity(4));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = random::symplectic(&mut rng, 4, 3);
        let e = GroupElementG::new(QMatrix::q_identity(1), s).unwrap();
        let moved = g_action(&e, &g).unwrap();
        assert_eq!(a_of_gamma(&moved), net.flatten());
    }

    #[test]
    fn action_is_congruence_and_minus_one_is_trivial() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 2;
        let gamma = GammaPoint::new(n, 4, random::int_matrix(&mut rng, 6, 8, 3)).unwrap();
        let g = loop {
            let g = random::int_matrix(&mut rng, n, n, 3);
            if g.inverse().is_some() {
                break g;
            }
        };
        let s = random::symplectic(&mut rng, 6, 2);
        let e = GroupElementG::new(g.clone(), s).unwrap();
        let moved = a_of_gamma(&g_action(&e, &gamma).unwrap());
        let g_inv = g.inverse().unwrap();
        let mut big = QMatrix::q_zeros(4 * n, 4 * n);
        for i in 0..4 {
            big.set_block(i * n, i * n, &g_inv);
        }
        assert_eq!(*moved.as_matrix(), big.transpose().mul(a_of_gamma(&gamma).as_matrix()).mul(&big));

        let minus = embed_h_in_g(&QMatrix::q_identity(n).neg(), &QMatrix::q_identity(2).neg()).unwrap();
        assert_eq!(g_action(&minus, &gamma).unwrap(), gamma);
    }

    #[test]
    fn embedding_lands_in_sp() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..4 {
            let g = random::orthogonal(&mut rng, n, 3);
            let m = random::sl2(&mut rng, 3);
            let e = embed_h_in_g(&g, &m).unwrap();
            let q = standard_symplectic::<Rat>(&Rationals, 2 * n + 2).unwrap();
            assert_eq!(e.s().transpose().mul(&q).mul(e.s()), q);
        }
        assert_eq!(embed_h_in_g(&QMatrix::from_int_rows(&[&[2]]), &QMatrix::q_identity(2)), Err(FrameError::NotOrthogonal));
        assert_eq!(embed_h_in_g(&QMatrix::q_identity(1), &QMatrix::from_int_rows(&[&[2, 0], &[0, 1]])), Err(FrameError::NotSl2));
    }
}
