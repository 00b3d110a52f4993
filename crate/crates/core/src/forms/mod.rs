//! Homogeneous forms, matrices of linear forms, minor ideals, Gröbner bases
//! and projective emptiness certificates.

pub mod emptiness;
pub mod groebner;
pub mod monomial;
pub mod poly;
pub mod univariate;

use std::collections::HashMap;

use thiserror::Error;

use crate::linalg::{Field, LinalgError, Matrix};

pub use emptiness::{projective_emptiness, CertificateKind, CertificateMode, EmptinessCertificate, Witness};
pub use groebner::{groebner, GroebnerBasis, GroebnerCaps};
pub use monomial::{Monomial, MonomialOrder, MAX_VARS};
pub use poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("point has {found} coordinates, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error("minor size {k} out of range 1..={max}")]
    MinorSize { k: usize, max: usize },
    #[error("linear form matrix needs between 1 and {MAX_VARS} coefficient matrices of one shape")]
    Shape,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A homogeneous polynomial of a declared degree. The zero form has every degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Form<F: Field> {
    degree: u32,
    poly: Poly<F>,
}

impl<F: Field> Form<F> {
    pub fn new(poly: Poly<F>, degree: u32) -> Result<Self, FormError> {
        match poly.homogeneous_degree() {
            None if poly.is_zero() => Ok(Form { degree, poly }),
            Some(d) if d == degree => Ok(Form { degree, poly }),
            Some(d) => Err(FormError::DegreeMismatch(d, degree)),
            None => Err(FormError::NotHomogeneous),
        }
    }

    /// Wraps a homogeneous polynomial, reading off its degree (0 for zero).
    pub fn from_poly(poly: Poly<F>) -> Result<Self, FormError> {
        let d = if poly.is_zero() { 0 } else { poly.homogeneous_degree().ok_or(FormError::NotHomogeneous)? };
        Ok(Form { degree: d, poly })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }
    pub fn poly(&self) -> &Poly<F> {
        &self.poly
    }
    pub fn into_poly(self) -> Poly<F> {
        self.poly
    }
    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }
    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, FormError> {
        if self.degree != rhs.degree && !self.is_zero() && !rhs.is_zero() {
            return Err(FormError::DegreeMismatch(self.degree, rhs.degree));
        }
        let degree = if self.is_zero() { rhs.degree } else { self.degree };
        let out = Form { degree, poly: self.poly.add(&rhs.poly) };
        assert!(out.poly.is_homogeneous());
        Ok(out)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let out = Form { degree: self.degree + rhs.degree, poly: self.poly.mul(&rhs.poly) };
        assert!(out.poly.is_zero() || out.poly.homogeneous_degree() == Some(out.degree));
        out
    }

    pub fn eval(&self, point: &[F]) -> Result<F, FormError> {
        if point.len() != self.nvars() {
            return Err(FormError::Length { expected: self.nvars(), found: point.len() });
        }
        Ok(self.poly.eval(point))
    }
}

/// Homogeneous ideal given by generators in a common ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ideal<F: Field> {
    nvars: usize,
    generators: Vec<Form<F>>,
}

impl<F: Field> Ideal<F> {
    pub fn new(nvars: usize, generators: Vec<Form<F>>) -> Self {
        assert!(generators.iter().all(|g| g.nvars() == nvars), "generators in different rings");
        Ideal { nvars, generators }
    }

    pub fn from_polys(nvars: usize, polys: Vec<Poly<F>>) -> Result<Self, FormError> {
        let gens = polys.into_iter().map(Form::from_poly).collect::<Result<_, _>>()?;
        Ok(Self::new(nvars, gens))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn generators(&self) -> &[Form<F>] {
        &self.generators
    }

    /// Generators with zeros dropped, as polynomials.
    pub fn polys(&self) -> Vec<Poly<F>> {
        self.generators.iter().filter(|g| !g.is_zero()).map(|g| g.poly().clone()).collect()
    }

    pub fn groebner(&self, caps: &GroebnerCaps) -> Result<GroebnerBasis<F>, groebner::GroebnerError> {
        groebner(&self.polys(), MonomialOrder::DegRevLex, caps)
    }

    /// Whether every generator vanishes at `point`.
    pub fn vanishes_at(&self, point: &[F]) -> bool {
        self.generators.iter().all(|g| g.poly().eval(point).is_zero())
    }
}

/// A matrix of linear forms stored as Σ x_i·M_i.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearFormMatrix<F: Field> {
    coeffs: Vec<Matrix<F>>,
}

impl<F: Field> LinearFormMatrix<F> {
    pub fn new(coeffs: Vec<Matrix<F>>) -> Result<Self, FormError> {
        let first = coeffs.first().ok_or(FormError::Shape)?;
        if coeffs.len() > MAX_VARS || coeffs.iter().any(|m| m.rows() != first.rows() || m.cols() != first.cols() || m.ctx() != first.ctx()) {
            return Err(FormError::Shape);
        }
        for m in &coeffs {
            m.check_field()?;
        }
        Ok(LinearFormMatrix { coeffs })
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }
    pub fn rows(&self) -> usize {
        self.coeffs[0].rows()
    }
    pub fn cols(&self) -> usize {
        self.coeffs[0].cols()
    }
    pub fn ctx(&self) -> &F::Ctx {
        self.coeffs[0].ctx()
    }
    pub fn coefficient_matrices(&self) -> &[Matrix<F>] {
        &self.coeffs
    }

    pub fn eval_at(&self, point: &[F]) -> Result<Matrix<F>, FormError> {
        if point.len() != self.nvars() {
            return Err(FormError::Length { expected: self.nvars(), found: point.len() });
        }
        let mut acc = Matrix::zeros(self.ctx(), self.rows(), self.cols());
        for (x, m) in point.iter().zip(&self.coeffs) {
            acc = acc.try_add(&m.scale(x))?;
        }
        Ok(acc)
    }

    pub fn entry(&self, i: usize, j: usize) -> Form<F> {
        let ctx = self.ctx();
        let n = self.nvars();
        let p = Poly::from_terms(ctx, n, MonomialOrder::DegRevLex, self.coeffs.iter().enumerate().map(|(k, m)| (Monomial::var(k), m.get(i, j).clone())));
        Form::new(p, 1).expect("linear")
    }

    pub fn transpose(&self) -> Self {
        LinearFormMatrix { coeffs: self.coeffs.iter().map(Matrix::transpose).collect() }
    }

    /// L·M for a constant matrix M.
    pub fn mul_const_right(&self, m: &Matrix<F>) -> Result<Self, FormError> {
        Ok(LinearFormMatrix { coeffs: self.coeffs.iter().map(|c| c.try_mul(m)).collect::<Result<_, _>>()? })
    }

    /// M·L for a constant matrix M.
    pub fn mul_const_left(&self, m: &Matrix<F>) -> Result<Self, FormError> {
        Ok(LinearFormMatrix { coeffs: self.coeffs.iter().map(|c| m.try_mul(c)).collect::<Result<_, _>>()? })
    }

    /// Whether self·rhs vanishes as a matrix of quadratic forms.
    pub fn product_is_zero(&self, rhs: &Self) -> Result<bool, FormError> {
        let n = self.nvars();
        for i in 0..n {
            for j in i..n {
                let mut s = self.coeffs[i].try_mul(&rhs.coeffs[j])?;
                if i != j {
                    s = s.try_add(&self.coeffs[j].try_mul(&rhs.coeffs[i])?)?;
                }
                if !s.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The ideal of all k×k minors, row subsets then column subsets in
    /// lexicographic order.
    pub fn minor_ideal(&self, k: usize) -> Result<Ideal<F>, FormError> {
        let max = self.rows().min(self.cols());
        if k == 0 || k > max {
            return Err(FormError::MinorSize { k, max });
        }
        let entries: Vec<Vec<Poly<F>>> = (0..self.rows()).map(|i| (0..self.cols()).map(|j| self.entry(i, j).into_poly()).collect()).collect();
        let mut gens = Vec::new();
        for rows in subsets(self.rows(), k) {
            let sub: Vec<&Vec<Poly<F>>> = rows.iter().map(|&r| &entries[r]).collect();
            let dets = all_column_minors(&sub, self.cols(), self.nvars(), self.ctx());
            for cols in subsets(self.cols(), k) {
                let mask = cols.iter().fold(0u64, |m, &c| m | (1 << c));
                let d = dets[&mask].clone();
                gens.push(Form::new(d, k as u32)?);
            }
        }
        Ok(Ideal::new(self.nvars(), gens))
    }

    /// Reduction of every coefficient through `f`; `None` if any entry fails.
    pub fn try_map<G: Field>(&self, ctx: &G::Ctx, f: impl Fn(&F) -> Option<G>) -> Option<LinearFormMatrix<G>> {
        let coeffs: Option<Vec<Matrix<G>>> = self
            .coeffs
            .iter()
            .map(|m| {
                let rows: Option<Vec<Vec<G>>> = m.to_rows().iter().map(|r| r.iter().map(&f).collect()).collect();
                Matrix::from_rows(ctx, rows?).ok()
            })
            .collect();
        Some(LinearFormMatrix { coeffs: coeffs? })
    }
}

/// All k-element subsets of 0..n in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Determinants of every square column selection of the given rows, keyed by
/// column bitmask, via Laplace expansion along the last row with memoization.
fn all_column_minors<F: Field>(rows: &[&Vec<Poly<F>>], ncols: usize, nvars: usize, ctx: &F::Ctx) -> HashMap<u64, Poly<F>> {
    let k = rows.len();
    let mut table: HashMap<u64, Poly<F>> = HashMap::new();
    table.insert(0, Poly::constant(ctx, nvars, MonomialOrder::DegRevLex, F::one(ctx)));
    for size in 1..=k {
        let r = size - 1;
        for cols in subsets(ncols, size) {
            let mask = cols.iter().fold(0u64, |m, &c| m | (1 << c));
            let mut acc = Poly::zero(ctx, nvars, MonomialOrder::DegRevLex);
            for (pos, &c) in cols.iter().enumerate() {
                let e = &rows[r][c];
                if e.is_zero() {
                    continue;
                }
                let t = e.mul(&table[&(mask & !(1 << c))]);
                acc = if (r + pos) % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
            }
            table.insert(mask, acc);
        }
    }
    table
}
