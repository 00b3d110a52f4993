//! Barth octuples 𝒜 = (A₁,A₂,B₁,B₂,a₁,a₂,b₁,b₂), the matrices Ã and
//! A(𝒜) = Ãᵀ·Q·Ã, the Γ conditions and the O(n)×Sp₂ action.

use serde::Serialize;
use thiserror::Error;

use crate::frame::{FrameError, GammaPoint};
use crate::linalg::{rank, standard_symplectic, Field, LinalgError, Matrix, Rat, SkewMatrix, SymMatrix};
use crate::net::verify::open_conditions;
use crate::net::{presentation_of_skew, NetError, QuadricNet};
use crate::report::{ReportEntry, Verdict, VerificationReport, VerifyOptions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SliceError {
    #[error("octuple component {0} has the wrong size for n = {1}")]
    Size(&'static str, usize),
    #[error("vectors of lengths {0} and {1}")]
    Length(usize, usize),
    #[error("A(𝒜) is not a net: {0}")]
    BlockMismatch(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Net(#[from] NetError),
}

/// Symmetric n×n matrices A₁,A₂,B₁,B₂ and column vectors a₁,a₂,b₁,b₂.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarthOctuple<F: Field> {
    n: usize,
    pub mat_a: [SymMatrix<F>; 2],
    pub mat_b: [SymMatrix<F>; 2],
    pub vec_a: [Vec<F>; 2],
    pub vec_b: [Vec<F>; 2],
}

impl<F: Field> BarthOctuple<F> {
    pub fn new(mat_a: [SymMatrix<F>; 2], mat_b: [SymMatrix<F>; 2], vec_a: [Vec<F>; 2], vec_b: [Vec<F>; 2]) -> Result<Self, SliceError> {
        let n = mat_a[0].size();
        let names = ["A1", "A2", "B1", "B2"];
        for (m, name) in mat_a.iter().chain(&mat_b).zip(names) {
            if m.size() != n {
                return Err(SliceError::Size(name, n));
            }
        }
        for (v, name) in vec_a.iter().chain(&vec_b).zip(["a1", "a2", "b1", "b2"]) {
            if v.len() != n {
                return Err(SliceError::Size(name, n));
            }
        }
        Ok(BarthOctuple { n, mat_a, mat_b, vec_a, vec_b })
    }

    pub fn zero(ctx: &F::Ctx, n: usize) -> Self {
        let z = SymMatrix::zeros(ctx, n);
        let v = vec![F::zero(ctx); n];
        BarthOctuple { n, mat_a: [z.clone(), z.clone()], mat_b: [z.clone(), z], vec_a: [v.clone(), v.clone()], vec_b: [v.clone(), v] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ctx(&self) -> &F::Ctx {
        self.mat_a[0].ctx()
    }

    pub fn a(&self, i: usize) -> &Matrix<F> {
        self.mat_a[i].as_matrix()
    }

    pub fn b(&self, i: usize) -> &Matrix<F> {
        self.mat_b[i].as_matrix()
    }

    fn col(&self, v: &[F]) -> Matrix<F> {
        Matrix::column_vector(self.ctx(), v)
    }

    /// a·bᵀ as a matrix.
    fn outer(&self, a: &[F], b: &[F]) -> Matrix<F> {
        self.col(a).mul(&self.col(b).transpose())
    }

    pub fn try_map<G: Field>(&self, ctx: &G::Ctx, f: impl Fn(&F) -> Option<G>) -> Option<BarthOctuple<G>> {
        let m = |s: &SymMatrix<F>| -> Option<SymMatrix<G>> {
            let rows = s.to_rows().iter().map(|r| r.iter().map(&f).collect::<Option<Vec<_>>>()).collect::<Option<Vec<_>>>()?;
            SymMatrix::new(Matrix::from_rows(ctx, rows).ok()?).ok()
        };
        let v = |x: &Vec<F>| x.iter().map(&f).collect::<Option<Vec<G>>>();
        Some(BarthOctuple {
            n: self.n,
            mat_a: [m(&self.mat_a[0])?, m(&self.mat_a[1])?],
            mat_b: [m(&self.mat_b[0])?, m(&self.mat_b[1])?],
            vec_a: [v(&self.vec_a[0])?, v(&self.vec_a[1])?],
            vec_b: [v(&self.vec_b[0])?, v(&self.vec_b[1])?],
        })
    }
}

/// a·bᵀ − b·aᵀ.
pub fn wedge<F: Field>(ctx: &F::Ctx, a: &[F], b: &[F]) -> Result<SkewMatrix<F>, SliceError> {
    if a.len() != b.len() {
        return Err(SliceError::Length(a.len(), b.len()));
    }
    let m = Matrix::from_fn(ctx, a.len(), a.len(), |i, j| a[i].mul(&b[j]).sub(&b[i].mul(&a[j])));
    Ok(SkewMatrix::new(m).expect("wedge is skew"))
}

fn commutator<F: Field>(x: &Matrix<F>, y: &Matrix<F>) -> Matrix<F> {
    x.mul(y).sub(&y.mul(x))
}

/// The (2n+2)×4n matrix Ã.
pub fn tilde_matrix<F: Field>(o: &BarthOctuple<F>) -> Matrix<F> {
    let (n, ctx) = (o.n, o.ctx());
    let id = Matrix::identity(ctx, n);
    let mut t = Matrix::zeros(ctx, 2 * n + 2, 4 * n);
    t.set_block(0, n, &id);
    t.set_block(n, 0, &id.neg());
    for i in 0..2 {
        t.set_block(0, (2 + i) * n, o.a(i));
        t.set_block(n, (2 + i) * n, o.b(i));
        t.set_block(2 * n, (2 + i) * n, &o.col(&o.vec_a[i]).transpose());
        t.set_block(2 * n + 1, (2 + i) * n, &o.col(&o.vec_b[i]).transpose());
    }
    t
}

/// C = A₁B₂ − B₁A₂ + a₁b₂ᵀ − b₁a₂ᵀ.
pub fn c_of_octuple<F: Field>(o: &BarthOctuple<F>) -> Matrix<F> {
    o.a(0).mul(o.b(1)).sub(&o.b(0).mul(o.a(1))).add(&o.outer(&o.vec_a[0], &o.vec_b[1])).sub(&o.outer(&o.vec_b[0], &o.vec_a[1]))
}

/// [Aᵢ,Bᵢ] + aᵢ∧bᵢ.
pub fn diagonal_defect<F: Field>(o: &BarthOctuple<F>, i: usize) -> Matrix<F> {
    let w = wedge(o.ctx(), &o.vec_a[i], &o.vec_b[i]).expect("lengths checked");
    commutator(o.a(i), o.b(i)).add(w.as_matrix())
}

/// [A(t),B(t)] + a(t)∧b(t) for the pencil A(t) = A₁ + t·A₂ etc.
pub fn pencil_residual<F: Field>(o: &BarthOctuple<F>, t: &F) -> Matrix<F> {
    let ctx = o.ctx();
    let a = o.a(0).add(&o.a(1).scale(t));
    let b = o.b(0).add(&o.b(1).scale(t));
    let va: Vec<F> = o.vec_a[0].iter().zip(&o.vec_a[1]).map(|(x, y)| x.add(&y.mul(t))).collect();
    let vb: Vec<F> = o.vec_b[0].iter().zip(&o.vec_b[1]).map(|(x, y)| x.add(&y.mul(t))).collect();
    commutator(&a, &b).add(wedge(ctx, &va, &vb).expect("lengths checked").as_matrix())
}

/// The three closed identities: two diagonal defects vanish and C = Cᵀ.
pub fn closed_identities<F: Field>(o: &BarthOctuple<F>) -> [bool; 3] {
    let c = c_of_octuple(o);
    [diagonal_defect(o, 0).is_zero(), diagonal_defect(o, 1).is_zero(), c.is_symmetric()]
}

/// A(𝒜) written blockwise, including the diagonal corrections and −Cᵀ.
pub fn block_form<F: Field>(o: &BarthOctuple<F>) -> Matrix<F> {
    let (n, ctx) = (o.n, o.ctx());
    let id = Matrix::identity(ctx, n);
    let c = c_of_octuple(o);
    let mut m = Matrix::zeros(ctx, 4 * n, 4 * n);
    let upper = [(0, 1, id), (0, 2, o.a(0).clone()), (0, 3, o.a(1).clone()), (1, 2, o.b(0).clone()), (1, 3, o.b(1).clone())];
    for (i, j, b) in upper {
        m.set_block(i * n, j * n, &b);
        m.set_block(j * n, i * n, &b.neg());
    }
    m.set_block(2 * n, 2 * n, &diagonal_defect(o, 0));
    m.set_block(3 * n, 3 * n, &diagonal_defect(o, 1));
    m.set_block(2 * n, 3 * n, &c);
    m.set_block(3 * n, 2 * n, &c.transpose().neg());
    m
}

/// Ãᵀ·Q·Ã, checked against the block form.
pub fn a_of_octuple<F: Field>(o: &BarthOctuple<F>) -> SkewMatrix<F> {
    let t = tilde_matrix(o);
    let q = standard_symplectic(o.ctx(), 2 * o.n + 2).expect("even size");
    let prod = t.transpose().mul(&q).mul(&t);
    assert_eq!(prod, block_form(o), "product and block form of A(𝒜) disagree");
    SkewMatrix::new(prod).expect("ÃᵀQÃ is skew")
}

/// The net with blocks (1ₙ, A₁, A₂, B₁, B₂, C); requires the closed identities.
pub fn net_of_octuple<F: Field>(o: &BarthOctuple<F>) -> Result<QuadricNet<F>, SliceError> {
    let failed = failed_identities(o);
    if !failed.is_empty() {
        return Err(SliceError::BlockMismatch(failed.join(", ")));
    }
    Ok(QuadricNet::from_flat(a_of_octuple(o).as_matrix(), o.n, 4)?)
}

const IDENTITY_NAMES: [&str; 3] = ["[A1,B1]+a1∧b1 ≠ 0", "[A2,B2]+a2∧b2 ≠ 0", "C ≠ Cᵀ"];

fn failed_identities<F: Field>(o: &BarthOctuple<F>) -> Vec<&'static str> {
    closed_identities(o).iter().zip(IDENTITY_NAMES).filter(|(ok, _)| !**ok).map(|(_, name)| name).collect()
}

/// rk(a₁∧a₂) and rk(b₁∧b₂).
pub fn wedge_ranks<F: Field>(o: &BarthOctuple<F>) -> (usize, usize) {
    let ctx = o.ctx();
    let ra = rank(wedge(ctx, &o.vec_a[0], &o.vec_a[1]).expect("lengths").as_matrix());
    let rb = rank(wedge(ctx, &o.vec_b[0], &o.vec_b[1]).expect("lengths").as_matrix());
    (ra, rb)
}

pub fn satisfies_iv<F: Field>(o: &BarthOctuple<F>) -> bool {
    wedge_ranks(o) == (2, 2)
}

/// D·A(𝒜) = [[J, *], [0, α∧β]] with α = (a₁;a₂), β = (b₁;b₂), so
/// rank A(𝒜) = 2n + rank(α∧β).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DCertificate {
    pub n: usize,
    pub d: Vec<Vec<String>>,
    pub product: Vec<Vec<String>>,
    pub tail_rank: usize,
    pub rank: usize,
    pub iv_holds: bool,
}

impl DCertificate {
    pub fn full_rank(&self) -> bool {
        self.rank == 2 * self.n + 2
    }
}

fn strings<F: Field>(m: &Matrix<F>) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

pub fn d_certificate<F: Field>(o: &BarthOctuple<F>) -> Result<DCertificate, SliceError> {
    let ok = closed_identities(o);
    if !ok[0] || !ok[1] {
        return Err(SliceError::Precondition(failed_identities(o).join(", ")));
    }
    let (n, ctx) = (o.n, o.ctx());
    let id = Matrix::identity(ctx, n);
    let mut d = Matrix::identity(ctx, 4 * n);
    d.set_block(2 * n, 0, o.b(0));
    d.set_block(2 * n, n, &o.a(0).neg());
    d.set_block(3 * n, 0, o.b(1));
    d.set_block(3 * n, n, &o.a(1).neg());
    let product = d.mul(a_of_octuple(o).as_matrix());

    let alpha: Vec<F> = o.vec_a[0].iter().chain(&o.vec_a[1]).cloned().collect();
    let beta: Vec<F> = o.vec_b[0].iter().chain(&o.vec_b[1]).cloned().collect();
    let tail = wedge(ctx, &alpha, &beta)?.into_matrix();
    let mut expected = Matrix::zeros(ctx, 4 * n, 4 * n);
    expected.set_block(0, n, &id);
    expected.set_block(n, 0, &id.neg());
    for i in 0..2 {
        expected.set_block(0, (2 + i) * n, o.a(i));
        expected.set_block(n, (2 + i) * n, o.b(i));
    }
    expected.set_block(2 * n, 2 * n, &tail);
    if product != expected {
        return Err(SliceError::Precondition("D·A(𝒜) does not have the factored form".into()));
    }
    let tail_rank = rank(&tail);
    Ok(DCertificate { n, d: strings(&d), product: strings(&product), tail_rank, rank: 2 * n + tail_rank, iv_holds: satisfies_iv(o) })
}

/// g·(A,B,a,b) = (gAgᵀ, gBgᵀ, ga, gb), then aᵢ' = s·aᵢ + u·bᵢ, bᵢ' = t·aᵢ + v·bᵢ
/// for m = [[s,t],[u,v]].
pub fn h_action<F: Field>(g: &Matrix<F>, m: &Matrix<F>, o: &BarthOctuple<F>) -> Result<BarthOctuple<F>, SliceError> {
    let ctx = o.ctx().clone();
    if g.rows() != o.n || !g.is_square() || g.mul(&g.transpose()) != Matrix::identity(&ctx, o.n) {
        return Err(FrameError::NotOrthogonal.into());
    }
    if m.rows() != 2 || m.cols() != 2 || !m.determinant().is_one() {
        return Err(FrameError::NotSl2.into());
    }
    let conj = |s: &SymMatrix<F>| SymMatrix::new(g.mul(s.as_matrix()).mul(&g.transpose())).expect("congruence keeps symmetry");
    let gv = |v: &Vec<F>| g.mul_vec(v);
    let (s, t, u, v) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    let mix = |x: &[F], y: &[F], p: &F, q: &F| -> Vec<F> { x.iter().zip(y).map(|(a, b)| p.mul(a).add(&q.mul(b))).collect() };
    let ga = [gv(&o.vec_a[0]), gv(&o.vec_a[1])];
    let gb = [gv(&o.vec_b[0]), gv(&o.vec_b[1])];
    Ok(BarthOctuple {
        n: o.n,
        mat_a: [conj(&o.mat_a[0]), conj(&o.mat_a[1])],
        mat_b: [conj(&o.mat_b[0]), conj(&o.mat_b[1])],
        vec_a: [mix(&ga[0], &gb[0], s, u), mix(&ga[1], &gb[1], s, u)],
        vec_b: [mix(&ga[0], &gb[0], t, v), mix(&ga[1], &gb[1], t, v)],
    })
}

/// jₙ(𝒜): the framed point with matrix Ã.
pub fn gamma_of_octuple<F: Field>(o: &BarthOctuple<F>) -> GammaPoint<F> {
    GammaPoint::new(o.n, 4, tilde_matrix(o)).expect("Ã has the framed shape")
}

const CLOSED_DESC: &str = "[A(t),B(t)] + a(t)∧b(t) = 0 for all t";
const IV_DESC: &str = "rk(a1∧a2) = rk(b1∧b2) = 2";
const RANK_DESC: &str = "rank A(𝒜) = 2n+2";

/// Verdicts for (i)_Γ–(iv)_Γ plus the derived rank check.
pub fn gamma_conditions(o: &BarthOctuple<Rat>, opts: &VerifyOptions) -> VerificationReport {
    let n = o.n;
    let mut report = VerificationReport::new(format!("octuple n={n}"), opts.mode);
    let failed = failed_identities(o);
    let closed = failed.is_empty();
    let detail = if closed { "all three identities hold".to_string() } else { failed.join(", ") };
    report.push(ReportEntry::exact("(i)_Γ", CLOSED_DESC, closed, detail));

    let a = a_of_octuple(o);
    if closed {
        let p = presentation_of_skew(&a, n, 4);
        let (surj, sect) = open_conditions(&p, opts, "(ii)_Γ", "(iii)_Γ");
        report.push(surj);
        report.push(sect);
    } else {
        for (label, desc) in [("(ii)_Γ", crate::net::verify::SURJ_DESC), ("(iii)_Γ", crate::net::verify::SECTIONS_DESC)] {
            let mut e = ReportEntry::exact(label, desc, false, "A(𝒜) is not a net");
            e.verdict = Verdict::Indeterminate;
            report.push(e);
        }
    }

    let (ra, rb) = wedge_ranks(o);
    report.push(ReportEntry::exact("(iv)_Γ", IV_DESC, ra == 2 && rb == 2, format!("rk(a1∧a2) = {ra}, rk(b1∧b2) = {rb}")));
    let r = rank(a.as_matrix());
    report.push(ReportEntry::exact("rank A", RANK_DESC, r == 2 * n + 2, format!("rank {r}, expected {}", 2 * n + 2)));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{a_of_gamma, embed_h_in_g, g_action};
    use crate::linalg::{int, random, QMatrix, Rationals};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sym(rows: &[&[i64]]) -> SymMatrix<Rat> {
        SymMatrix::new(QMatrix::from_int_rows(rows)).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn random_octuple(rng: &mut ChaCha8Rng, n: usize) -> BarthOctuple<Rat> {
        let s = |rng: &mut ChaCha8Rng| SymMatrix::new(random::symmetric(rng, n, 3)).unwrap();
        let v = |rng: &mut ChaCha8Rng| random::int_vector(rng, n, 3);
        BarthOctuple::new([s(rng), s(rng)], [s(rng), s(rng)], [v(rng), v(rng)], [v(rng), v(rng)]).unwrap()
    }

    #[test]
    fn zero_octuple_layout() {
        let o = BarthOctuple::zero(&Rationals, 2);
        let t = tilde_matrix(&o);
        assert_eq!(t.block(0, 2, 2, 2), QMatrix::q_identity(2));
        assert_eq!(t.block(2, 0, 2, 2), QMatrix::q_identity(2).neg());
        assert_eq!(rank(&t), 4);
        let net = net_of_octuple(&o).unwrap();
        assert_eq!(*net.block(0, 1).as_matrix(), QMatrix::q_identity(2));
        assert!(net.block(2, 3).as_matrix().is_zero());
        let cert = d_certificate(&o).unwrap();
        assert!(!cert.full_rank());
        assert_eq!(cert.rank, 4);
    }

    #[test]
    fn wedge_examples() {
        let e1 = ints(&[1, 0]);
        let e2 = ints(&[0, 1]);
        assert_eq!(*wedge(&Rationals, &e1, &e2).unwrap().as_matrix(), QMatrix::from_int_rows(&[&[0, 1], &[-1, 0]]));
        assert!(wedge(&Rationals, &e1, &e1).unwrap().is_zero());
        assert!(wedge(&Rationals, &ints(&[3]), &ints(&[5])).unwrap().is_zero());
        assert!(wedge(&Rationals, &e1, &ints(&[1])).is_err());
    }

    #[test]
    fn c_identity_case() {
        let mut o = BarthOctuple::zero(&Rationals, 2);
        o.mat_a[0] = SymMatrix::identity(&Rationals, 2);
        o.mat_b[1] = SymMatrix::identity(&Rationals, 2);
        assert_eq!(c_of_octuple(&o), QMatrix::q_identity(2));
    }

    #[test]
    fn pencil_matches_identities_and_block_form_holds_off_gamma() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let o = random_octuple(&mut rng, 3);
            let r0 = pencil_residual(&o, &int(0));
            let r1 = pencil_residual(&o, &int(1));
            let rm = pencil_residual(&o, &int(-1));
            assert_eq!(r0, diagonal_defect(&o, 0));
            // t² coefficient and t coefficient from three samples
            let half = crate::linalg::rat(1, 2);
            let t2 = r1.add(&rm).sub(&r0.scale(&int(2))).scale(&half);
            let t1 = r1.sub(&rm).scale(&half);
            assert_eq!(t2, diagonal_defect(&o, 1));
            let c = c_of_octuple(&o);
            assert_eq!(t1, c.sub(&c.transpose()));
            let _ = a_of_octuple(&o);
        }
    }

    #[test]
    fn asymmetric_c_fails_third_identity() {
        let mut o = BarthOctuple::zero(&Rationals, 2);
        o.mat_a[0] = sym(&[&[1, 0], &[0, 2]]);
        o.mat_b[1] = sym(&[&[0, 1], &[1, 0]]);
        let r = gamma_conditions(&o, &VerifyOptions::exact());
        assert_eq!(r.verdict("(i)_Γ"), Some(Verdict::Fail));
        assert!(r.entry("(i)_Γ").unwrap().detail.contains("C ≠ Cᵀ"));
        assert!(matches!(net_of_octuple(&o), Err(SliceError::BlockMismatch(_))));
    }

    #[test]
    fn n1_fails_iv() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let o = random_octuple(&mut rng, 1);
        let r = gamma_conditions(&o, &VerifyOptions::exact());
        assert_eq!(r.verdict("(iv)_Γ"), Some(Verdict::Fail));
    }

    #[test]
    fn iv_alone_does_not_force_full_rank() {
        // b = 2a keeps both wedges of rank 2 but makes α∧β vanish.
        let mut o = BarthOctuple::zero(&Rationals, 2);
        o.vec_a = [ints(&[1, 0]), ints(&[0, 1])];
        o.vec_b = [ints(&[2, 0]), ints(&[0, 2])];
        assert!(satisfies_iv(&o));
        assert_eq!(closed_identities(&o), [true, true, true]);
        let cert = d_certificate(&o).unwrap();
        assert!(cert.iv_holds);
        assert_eq!(cert.rank, 4);
        assert_eq!(rank(a_of_octuple(&o).as_matrix()), 4);
        let r = gamma_conditions(&o, &VerifyOptions::exact());
        assert_eq!(r.verdict("(iv)_Γ"), Some(Verdict::Pass));
        assert_eq!(r.verdict("rank A"), Some(Verdict::Fail));
    }

    #[test]
    fn sp2_mixing_can_break_iv() {
        let mut o = BarthOctuple::zero(&Rationals, 2);
        o.vec_a = [ints(&[1, 0]), ints(&[0, 1])];
        o.vec_b = [ints(&[1, 0]), ints(&[0, -1])];
        assert!(satisfies_iv(&o));
        let m = QMatrix::from_int_rows(&[&[1, 0], &[1, 1]]);
        let moved = h_action(&QMatrix::q_identity(2), &m, &o).unwrap();
        assert_eq!(moved.vec_a, [ints(&[2, 0]), ints(&[0, 0])]);
        assert!(!satisfies_iv(&moved));
        assert_eq!(a_of_octuple(&moved), a_of_octuple(&o));
    }

    #[test]
    fn h_action_commutes_and_intertwines() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in 2..4 {
            let o = random_octuple(&mut rng, n);
            let g = random::orthogonal(&mut rng, n, 3);
            let m = random::sl2(&mut rng, 3);
            let id_n = QMatrix::q_identity(n);
            let id2 = QMatrix::q_identity(2);
            let both = h_action(&g, &m, &o).unwrap();
            let o_then_sp = h_action(&id_n, &m, &h_action(&g, &id2, &o).unwrap()).unwrap();
            let sp_then_o = h_action(&g, &id2, &h_action(&id_n, &m, &o).unwrap()).unwrap();
            assert_eq!(both, o_then_sp);
            assert_eq!(both, sp_then_o);
            assert_eq!(h_action(&id_n.neg(), &id2.neg(), &o).unwrap(), o);

            let e = embed_h_in_g(&g, &m).unwrap();
            assert_eq!(gamma_of_octuple(&both), g_action(&e, &gamma_of_octuple(&o)).unwrap());
            assert_eq!(a_of_gamma(&gamma_of_octuple(&o)), a_of_octuple(&o));
        }
    }
}
