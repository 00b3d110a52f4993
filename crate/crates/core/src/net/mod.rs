//! Nets of quadrics, their flattened skew matrices, quotient presentations
//! and monad maps, on P³ (ambient 4) and P² (ambient 3).

pub mod cohomology;
pub mod verify;

use thiserror::Error;

use crate::forms::{FormError, LinearFormMatrix};
use crate::linalg::{rank, rref, Field, LinalgError, Matrix, SkewMatrix, SymMatrix};

pub use cohomology::{chi_expected, cohomology_table, line_splitting, CohomologyTable, LineSplitting, Monad};
pub use verify::{barth_verify, section_count};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetError {
    #[error("flattened net has rank {actual}, expected {expected}")]
    WrongRank { expected: usize, actual: usize },
    #[error("ambient dimension must be 3 or 4, got {0}")]
    Ambient(usize),
    #[error("expected {expected} blocks of size {n}, got {found}")]
    Blocks { expected: usize, n: usize, found: usize },
    #[error("block ({0},{1}) is not symmetric")]
    BlockNotSymmetric(usize, usize),
    #[error("diagonal block {0} is nonzero")]
    DiagonalBlock(usize),
    #[error("twist range {0}..{1} exceeds the cap |t| <= {2}")]
    TwistRange(i64, i64, i64),
    #[error("line points are linearly dependent")]
    CoincidentPoints,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Form(#[from] FormError),
}

/// Index pairs (i, j), i < j, in lexicographic order.
pub fn pairs(ambient: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..ambient {
        for j in i + 1..ambient {
            out.push((i, j));
        }
    }
    out
}

/// A net: one symmetric n×n block per basis pair eᵢ∧eⱼ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricNet<F: Field> {
    n: usize,
    ambient: usize,
    blocks: Vec<SymMatrix<F>>,
}

impl<F: Field> QuadricNet<F> {
    /// Blocks in the order of [`pairs`].
    pub fn new(n: usize, ambient: usize, blocks: Vec<SymMatrix<F>>) -> Result<Self, NetError> {
        if ambient != 3 && ambient != 4 {
            return Err(NetError::Ambient(ambient));
        }
        let expected = ambient * (ambient - 1) / 2;
        if blocks.len() != expected || blocks.iter().any(|b| b.size() != n) {
            return Err(NetError::Blocks { expected, n, found: blocks.len() });
        }
        Ok(QuadricNet { n, ambient, blocks })
    }

    pub fn zero(ctx: &F::Ctx, n: usize, ambient: usize) -> Result<Self, NetError> {
        let count = ambient * ambient.saturating_sub(1) / 2;
        Self::new(n, ambient, (0..count).map(|_| SymMatrix::zeros(ctx, n)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn blocks(&self) -> &[SymMatrix<F>] {
        &self.blocks
    }
    pub fn ctx(&self) -> &F::Ctx {
        self.blocks[0].ctx()
    }

    /// The block on eᵢ∧eⱼ for i < j (0-based).
    pub fn block(&self, i: usize, j: usize) -> &SymMatrix<F> {
        let k = pairs(self.ambient).iter().position(|&p| p == (i, j)).expect("i < j < ambient");
        &self.blocks[k]
    }

    pub fn set_block(&mut self, i: usize, j: usize, m: SymMatrix<F>) {
        assert_eq!(m.size(), self.n);
        let k = pairs(self.ambient).iter().position(|&p| p == (i, j)).expect("i < j < ambient");
        self.blocks[k] = m;
    }

    /// The skew (ambient·n)² matrix with block (i,j) = M_ij, (j,i) = −M_ij.
    pub fn flatten(&self) -> SkewMatrix<F> {
        let n = self.n;
        let mut a = Matrix::zeros(self.ctx(), self.ambient * n, self.ambient * n);
        for ((i, j), b) in pairs(self.ambient).into_iter().zip(&self.blocks) {
            a.set_block(i * n, j * n, b.as_matrix());
            a.set_block(j * n, i * n, &b.as_matrix().neg());
        }
        SkewMatrix::new(a).expect("flattening is skew")
    }

    /// Inverse of [`flatten`](Self::flatten).
    pub fn from_flat(a: &Matrix<F>, n: usize, ambient: usize) -> Result<Self, NetError> {
        if a.rows() != ambient * n || a.cols() != ambient * n {
            return Err(LinalgError::Dimension { expected: format!("{0}x{0}", ambient * n), found: format!("{}x{}", a.rows(), a.cols()) }.into());
        }
        if !a.is_skew() {
            return Err(LinalgError::NotSkew.into());
        }
        for i in 0..ambient {
            if !a.block(i * n, i * n, n, n).is_zero() {
                return Err(NetError::DiagonalBlock(i));
            }
        }
        let mut blocks = Vec::new();
        for (i, j) in pairs(ambient) {
            let b = a.block(i * n, j * n, n, n);
            blocks.push(SymMatrix::new(b).map_err(|_| NetError::BlockNotSymmetric(i, j))?);
        }
        Self::new(n, ambient, blocks)
    }

    /// Coefficient-wise map into another field.
    pub fn try_map<G: Field>(&self, ctx: &G::Ctx, f: impl Fn(&F) -> Option<G>) -> Option<QuadricNet<G>> {
        let blocks: Option<Vec<SymMatrix<G>>> = self
            .blocks
            .iter()
            .map(|b| {
                let rows: Option<Vec<Vec<G>>> = b.to_rows().iter().map(|r| r.iter().map(&f).collect()).collect();
                SymMatrix::new(Matrix::from_rows(ctx, rows?).ok()?).ok()
            })
            .collect();
        Some(QuadricNet { n: self.n, ambient: self.ambient, blocks: blocks? })
    }
}

/// Splits a skew (ambient·n)² matrix into its net part (symmetric
/// off-diagonal blocks) and its complementary part (skew off-diagonal blocks
/// paired symmetrically, plus the diagonal blocks).
pub fn decompose_pr2<F: Field>(t: &SkewMatrix<F>, n: usize, ambient: usize) -> Result<(QuadricNet<F>, Matrix<F>), NetError> {
    let m = t.size();
    if m != n * ambient {
        return Err(LinalgError::Dimension { expected: format!("size {}", n * ambient), found: m.to_string() }.into());
    }
    let ctx = t.ctx().clone();
    let half = F::one(&ctx).add(&F::one(&ctx)).inverse().expect("characteristic is not 2");
    let mut net_flat = Matrix::zeros(&ctx, m, m);
    let mut rest = Matrix::zeros(&ctx, m, m);
    for i in 0..ambient {
        for j in 0..ambient {
            let b = t.block(i * n, j * n, n, n);
            if i == j {
                rest.set_block(i * n, j * n, &b);
                continue;
            }
            let sym = b.add(&b.transpose()).scale(&half);
            let skw = b.sub(&b.transpose()).scale(&half);
            net_flat.set_block(i * n, j * n, &sym);
            rest.set_block(i * n, j * n, &skw);
        }
    }
    Ok((QuadricNet::from_flat(&net_flat, n, ambient)?, rest))
}

/// The quotient W = (H⊗V)/ker A with its induced form: cᵀ·q·c = flatten(A).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetPresentation<F: Field> {
    pub n: usize,
    pub ambient: usize,
    /// (dim W)×(ambient·n), the reduced row-echelon basis of the row space.
    pub c: Matrix<F>,
    pub q_w: SkewMatrix<F>,
}

impl<F: Field> NetPresentation<F> {
    pub fn w_dim(&self) -> usize {
        self.c.rows()
    }

    /// The block of c belonging to eᵢ.
    pub fn c_block(&self, i: usize) -> Matrix<F> {
        self.c.block(0, i * self.n, self.c.rows(), self.n)
    }

    /// The monad maps (a, a^∨_q): a(x) = Σ xᵢ·cᵢ and a^∨_q(x) = a(x)ᵀ·qᵀ.
    pub fn monad_maps(&self) -> (LinearFormMatrix<F>, LinearFormMatrix<F>) {
        let a = LinearFormMatrix::new((0..self.ambient).map(|i| self.c_block(i)).collect()).expect("uniform blocks");
        let adual = a.transpose().mul_const_right(&self.q_w.transpose()).expect("shapes agree");
        debug_assert!(adual.product_is_zero(&a).unwrap());
        (a, adual)
    }

    /// cᵀ·q·c.
    pub fn reconstruct(&self) -> Matrix<F> {
        self.c.transpose().mul(self.q_w.as_matrix()).mul(&self.c)
    }
}

/// Presentation of whatever rank the flattened net has.
pub fn presentation_any_rank<F: Field>(net: &QuadricNet<F>) -> NetPresentation<F> {
    presentation_of_skew(&net.flatten(), net.n(), net.ambient())
}

/// c = nonzero rows of RREF(a), q = a restricted to the pivot indices.
pub fn presentation_of_skew<F: Field>(a: &SkewMatrix<F>, n: usize, ambient: usize) -> NetPresentation<F> {
    let r = rref(a.as_matrix());
    let k = r.pivots.len();
    let c = r.reduced.block(0, 0, k, a.size());
    let q = a.select_rows(&r.pivots).select_cols(&r.pivots);
    let p = NetPresentation { n, ambient, c, q_w: SkewMatrix::new(q).expect("principal submatrix of a skew matrix") };
    debug_assert!(p.reconstruct() == *a.as_matrix());
    p
}

/// Presentation with dim W = 2n+2.
pub fn presentation<F: Field>(net: &QuadricNet<F>) -> Result<NetPresentation<F>, NetError> {
    let p = presentation_any_rank(net);
    let expected = 2 * net.n() + 2;
    if p.w_dim() != expected {
        return Err(NetError::WrongRank { expected, actual: p.w_dim() });
    }
    Ok(p)
}

/// h¹(E⊗Ω¹), realized as the rank of the flattened net.
#[allow(non_snake_case)]
pub fn h1_E_omega<F: Field>(net: &QuadricNet<F>) -> usize {
    rank(net.flatten().as_matrix())
}
