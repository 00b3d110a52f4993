//! Cohomology of the monad H⊗O(−1) → W⊗O → H^∨⊗O(1) from its section maps.
//!
//! On P^k, with M₁(t): H⊗S_{t−1} → W⊗S_t and M₂(t): W⊗S_t → H^∨⊗S_{t+1},
//! h⁰(E(t)) = dim ker M₂(t) − rank M₁(t) and h¹(E(t)) = dim coker M₂(t).
//! The h¹ formula needs H²(O(t−1)) = 0, which on P² fails for t ≤ −2;
//! there Serre duality with E ≅ E^∨ gives h¹(t) = h¹(−3−t).

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::forms::monomial::{count_monomials, monomials_of_degree, Monomial};
use crate::linalg::{rank, Field, Matrix};
use crate::par::{self, Execution};

use super::{NetError, NetPresentation};

/// Largest positive twist at which section maps are built.
pub const TWIST_CAP: i64 = 10;

/// A monad given by blocks cᵢ: H → W (one per variable) and a skew form q on W.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monad<F: Field> {
    pub n: usize,
    pub c: Vec<Matrix<F>>,
    pub q: Matrix<F>,
}

impl<F: Field> Monad<F> {
    pub fn from_presentation(p: &NetPresentation<F>) -> Self {
        Monad { n: p.n, c: (0..p.ambient).map(|i| p.c_block(i)).collect(), q: p.q_w.as_matrix().clone() }
    }

    pub fn nvars(&self) -> usize {
        self.c.len()
    }

    pub fn w_dim(&self) -> usize {
        self.q.rows()
    }

    fn ctx(&self) -> &F::Ctx {
        self.q.ctx()
    }

    fn index(nvars: usize, d: i64) -> (Vec<Monomial>, HashMap<Monomial, usize>) {
        if d < 0 {
            return (Vec::new(), HashMap::new());
        }
        let list = monomials_of_degree(nvars, d as u32);
        let map = list.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        (list, map)
    }

    /// M₁(t): H⊗S_{t−1} → W⊗S_t.
    pub fn m1(&self, t: i64) -> Matrix<F> {
        let (k, r, n) = (self.nvars(), self.w_dim(), self.n);
        let (src, _) = Self::index(k, t - 1);
        let (dst, dst_ix) = Self::index(k, t);
        let mut m = Matrix::<F>::zeros(self.ctx(), r * dst.len(), n * src.len());
        for h in 0..n {
            for (si, mon) in src.iter().enumerate() {
                for (i, ci) in self.c.iter().enumerate() {
                    let di = dst_ix[&mon.mul(&Monomial::var(i))];
                    for w in 0..r {
                        let v = ci.get(w, h);
                        if !v.is_zero() {
                            let (row, col) = (w * dst.len() + di, h * src.len() + si);
                            m.set(row, col, m.get(row, col).add(v));
                        }
                    }
                }
            }
        }
        m
    }

    /// M₂(t): W⊗S_t → H^∨⊗S_{t+1}, built from φᵢ = cᵢᵀ·q.
    pub fn m2(&self, t: i64) -> Matrix<F> {
        let (k, r, n) = (self.nvars(), self.w_dim(), self.n);
        let (src, _) = Self::index(k, t);
        let (dst, dst_ix) = Self::index(k, t + 1);
        let phis: Vec<Matrix<F>> = self.c.iter().map(|ci| ci.transpose().mul(&self.q)).collect();
        let mut m = Matrix::<F>::zeros(self.ctx(), n * dst.len(), r * src.len());
        for w in 0..r {
            for (si, mon) in src.iter().enumerate() {
                for (i, phi) in phis.iter().enumerate() {
                    let di = dst_ix[&mon.mul(&Monomial::var(i))];
                    for h in 0..n {
                        let v = phi.get(h, w);
                        if !v.is_zero() {
                            let (row, col) = (h * dst.len() + di, w * src.len() + si);
                            m.set(row, col, m.get(row, col).add(v));
                        }
                    }
                }
            }
        }
        m
    }

    /// (h⁰(t), h¹(t)) from the section maps, without duality corrections.
    pub fn raw_h0_h1(&self, t: i64) -> (u64, u64) {
        let k = self.nvars();
        let r2 = rank(&self.m2(t));
        let r1 = rank(&self.m1(t));
        let st = count_monomials(k, t);
        let st1 = count_monomials(k, t + 1);
        let h0 = self.w_dim() * st - r2 - r1;
        let h1 = self.n * st1 - r2;
        (h0 as u64, h1 as u64)
    }
}

/// h^i(E(t)) for i = 0..ambient−1 and t in [t_min, t_max].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyTable {
    pub n: usize,
    pub ambient: usize,
    pub w_dim: usize,
    pub t_min: i64,
    pub t_max: i64,
    /// h[i][t − t_min].
    pub h: Vec<Vec<u64>>,
    /// Whether the subbundle condition was certified before computing.
    pub subbundle_certified: bool,
}

impl CohomologyTable {
    pub fn get(&self, i: usize, t: i64) -> Option<u64> {
        if t < self.t_min || t > self.t_max {
            return None;
        }
        self.h.get(i).map(|row| row[(t - self.t_min) as usize])
    }

    pub fn twists(&self) -> impl Iterator<Item = i64> {
        self.t_min..=self.t_max
    }

    pub fn chi(&self, t: i64) -> i64 {
        (0..self.ambient).map(|i| if i % 2 == 0 { 1 } else { -1 } * self.get(i, t).unwrap() as i64).sum()
    }

    /// Twists where the alternating sum differs from the monad's χ.
    pub fn chi_failures(&self) -> Vec<i64> {
        self.twists().filter(|&t| self.chi(t) != chi_expected(self.ambient, self.w_dim, self.n, t)).collect()
    }

    /// Twists where a duality pair inside the range disagrees.
    pub fn duality_failures(&self) -> Vec<i64> {
        let shift = -(self.ambient as i64);
        let top = self.ambient - 1;
        self.twists()
            .filter(|&t| {
                let d = shift - t;
                if d < self.t_min || d > self.t_max {
                    return false;
                }
                let ok = if self.ambient == 4 {
                    self.get(2, t) == self.get(1, d) && self.get(3, t) == self.get(0, d)
                } else {
                    self.get(top, t) == self.get(0, d) && self.get(1, t) == self.get(1, d)
                };
                !ok
            })
            .collect()
    }
}

/// χ(O(t)) on P^{ambient−1} as the binomial polynomial, valid for every t.
pub fn line_bundle_chi(ambient: usize, t: i64) -> i64 {
    match ambient {
        4 => (t + 1) * (t + 2) * (t + 3) / 6,
        3 => (t + 1) * (t + 2) / 2,
        2 => t + 1,
        _ => panic!("unsupported ambient {ambient}"),
    }
}

/// Σ(−1)^i h^i(E(t)) = dim W·χ(O(t)) − n·χ(O(t−1)) − n·χ(O(t+1)).
pub fn chi_expected(ambient: usize, w_dim: usize, n: usize, t: i64) -> i64 {
    let (w, n) = (w_dim as i64, n as i64);
    w * line_bundle_chi(ambient, t) - n * line_bundle_chi(ambient, t - 1) - n * line_bundle_chi(ambient, t + 1)
}

pub fn cohomology_table<F: Field>(p: &NetPresentation<F>, t_min: i64, t_max: i64, subbundle_certified: bool, exec: Execution) -> Result<CohomologyTable, NetError> {
    let ambient = p.ambient;
    let dual = -(ambient as i64);
    if t_min > t_max || t_max > TWIST_CAP || dual - t_min > TWIST_CAP {
        return Err(NetError::TwistRange(t_min, t_max, TWIST_CAP));
    }
    let monad = Monad::from_presentation(p);
    let mut needed: Vec<i64> = (t_min..=t_max).flat_map(|t| [t, dual - t]).collect();
    if ambient == 3 {
        needed.extend((t_min..=t_max).chain(dual - t_max..=dual - t_min).filter(|&t| t <= -2).map(|t| -3 - t));
    }
    needed.sort_unstable();
    needed.dedup();
    let values = par::map(exec, needed.clone(), |t| monad.raw_h0_h1(t));
    let raw: HashMap<i64, (u64, u64)> = needed.into_iter().zip(values).collect();
    let h0 = |t: i64| raw[&t].0;
    let h1 = |t: i64| if ambient == 3 && t <= -2 { raw[&(-3 - t)].1 } else { raw[&t].1 };
    let rows: Vec<Vec<u64>> = if ambient == 4 {
        vec![
            (t_min..=t_max).map(h0).collect(),
            (t_min..=t_max).map(h1).collect(),
            (t_min..=t_max).map(|t| h1(dual - t)).collect(),
            (t_min..=t_max).map(|t| h0(dual - t)).collect(),
        ]
    } else {
        vec![(t_min..=t_max).map(h0).collect(), (t_min..=t_max).map(h1).collect(), (t_min..=t_max).map(|t| h0(dual - t)).collect()]
    };
    Ok(CohomologyTable { n: p.n, ambient, w_dim: p.w_dim(), t_min, t_max, h: rows, subbundle_certified })
}

/// Splitting type O(d)⊕O(−d) of E restricted to a line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineSplitting {
    pub d: usize,
    /// Rank of the pairing a(P)ᵀ·qᵀ·a(Q) on H.
    pub pairing_rank: usize,
    /// (t, h⁰(E|_L(t)) from section maps, value predicted by d) for t = 0..=d+1.
    pub checks: Vec<(i64, u64, u64)>,
}

impl LineSplitting {
    pub fn consistent(&self) -> bool {
        self.checks.iter().all(|(_, a, b)| a == b)
    }
}

/// Restricts the monad to the line s·P + t·Q.
///
/// On the line, H⁰(E|_L(−1)) is the kernel of the connecting map
/// H¹(H⊗O(−2)) ≅ H → H¹(K(−1)) ≅ H^∨, which is the pairing
/// a(P)ᵀ·qᵀ·a(Q); hence d = n − rank of that pairing. Section counts for
/// t ≥ 0 are computed independently as a cross-check.
pub fn line_splitting<F: Field>(p: &NetPresentation<F>, p1: &[F], p2: &[F]) -> Result<LineSplitting, NetError> {
    let ctx = p.c.ctx();
    let amb = p.ambient;
    if p1.len() != amb || p2.len() != amb {
        return Err(crate::linalg::LinalgError::Dimension { expected: format!("points with {amb} coordinates"), found: format!("{} and {}", p1.len(), p2.len()) }.into());
    }
    let pts = Matrix::from_rows(ctx, vec![p1.to_vec(), p2.to_vec()])?;
    if rank(&pts) < 2 {
        return Err(NetError::CoincidentPoints);
    }
    let at = |x: &[F]| {
        (0..amb).fold(Matrix::zeros(ctx, p.w_dim(), p.n), |acc, i| acc.add(&p.c_block(i).scale(&x[i])))
    };
    let (ap, aq) = (at(p1), at(p2));
    let pairing = ap.transpose().mul(&p.q_w.transpose()).mul(&aq);
    let pr = rank(&pairing);
    let d = p.n - pr;
    let line = Monad { n: p.n, c: vec![ap, aq], q: p.q_w.as_matrix().clone() };
    let checks = (0..=d as i64 + 1)
        .map(|t| {
            let (h0, _) = line.raw_h0_h1(t);
            let d = d as i64;
            let want = (t + d + 1).max(0) + (t - d + 1).max(0);
            (t, h0, want as u64)
        })
        .collect();
    Ok(LineSplitting { d, pairing_rank: pr, checks })
}
