//! Projective emptiness of homogeneous ideals.
//!
//! EMPTY comes with a Nullstellensatz exponent per variable. Otherwise a
//! projective witness is searched: small-height points first, then affine
//! charts solved by lex elimination with coordinate-hyperplane slicing.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::linalg::{rank, Field, FieldTag, Fp, Matrix, PrimeField, Rat};

use super::groebner::{groebner, GroebnerBasis, GroebnerCaps};
use super::monomial::{count_monomials, monomials_of_degree, Monomial, MonomialOrder};
use super::poly::Poly;
use super::Ideal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CertificateKind {
    Empty,
    NonEmpty,
    ProbableEmpty,
    ProbableNonEmpty,
    Indeterminate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateMode {
    Certified,
    Probabilistic,
}

/// A projective point, first nonzero coordinate scaled to 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub field: FieldTag,
    pub coords: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmptinessCertificate {
    pub kind: CertificateKind,
    pub mode: CertificateMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl EmptinessCertificate {
    pub fn is_empty(&self) -> bool {
        matches!(self.kind, CertificateKind::Empty | CertificateKind::ProbableEmpty)
    }
}

enum Outcome<F: Field> {
    Empty(Vec<u32>),
    NonEmpty(Option<Vec<F>>),
    Capped(String),
}

const WITNESS_BUDGET: usize = 400;

/// Decides whether the projective zero set of `ideal` is empty.
///
/// Certified mode works over ℚ; probabilistic mode reduces modulo `prime`
/// after clearing denominators and reports PROBABLE verdicts.
pub fn projective_emptiness(ideal: &Ideal<Rat>, mode: CertificateMode, prime: &PrimeField, caps: &GroebnerCaps) -> EmptinessCertificate {
    let nvars = ideal.nvars();
    match mode {
        CertificateMode::Certified => match decide(&ideal.polys(), nvars, caps) {
            Outcome::Empty(e) => cert(CertificateKind::Empty, mode, Some(e), None, None),
            Outcome::NonEmpty(Some(w)) => cert(CertificateKind::NonEmpty, mode, None, Some(witness(FieldTag::Rational, &w)), None),
            Outcome::NonEmpty(None) => {
                let fp = reduce_polys(&ideal.polys(), prime);
                let w = find_witness(&fp, nvars, caps).map(|w| witness(FieldTag::Prime(prime.modulus()), &w));
                let detail = "zero set is nonempty over the algebraic closure; no rational point found".to_string();
                cert(CertificateKind::NonEmpty, mode, None, w, Some(detail))
            }
            Outcome::Capped(msg) => modular_certificate(ideal, prime, caps, msg),
        },
        CertificateMode::Probabilistic => {
            let fp = reduce_polys(&ideal.polys(), prime);
            match decide(&fp, nvars, caps) {
                Outcome::Empty(e) => cert(CertificateKind::ProbableEmpty, mode, Some(e), None, None),
                Outcome::NonEmpty(w) => {
                    let w = w.map(|w| witness(FieldTag::Prime(prime.modulus()), &w));
                    cert(CertificateKind::ProbableNonEmpty, mode, None, w, None)
                }
                Outcome::Capped(msg) => cert(CertificateKind::Indeterminate, mode, None, None, Some(msg)),
            }
        }
    }
}

/// Falls back to a Macaulay-matrix certificate when the rational basis is
/// capped. An integral matrix has rank over ℚ at least its rank modulo p,
/// so if the degree-D part of the reduced ideal fills all of S_D modulo p,
/// the same holds over ℚ and x_i^D lies in the ideal for every i.
fn modular_certificate(ideal: &Ideal<Rat>, prime: &PrimeField, caps: &GroebnerCaps, capped: String) -> EmptinessCertificate {
    let mode = CertificateMode::Certified;
    let nvars = ideal.nvars();
    let fp = reduce_polys(&ideal.polys(), prime);
    let Outcome::Empty(exps) = decide(&fp, nvars, caps) else {
        return cert(CertificateKind::Indeterminate, mode, None, None, Some(format!("{capped}; zero set is nonempty modulo {}", prime.modulus())));
    };
    let start = fp.iter().filter_map(Poly::total_degree).min().unwrap_or(0).max(1);
    let bound = (exps.iter().map(|e| e.saturating_sub(1)).sum::<u32>() + 1).max(start);
    match (start..=bound).find(|&d| macaulay_rank(&fp, nvars, d) == count_monomials(nvars, d as i64)) {
        Some(d) => {
            let detail = format!("{capped}; degree-{d} Macaulay matrix has full rank modulo {}", prime.modulus());
            cert(CertificateKind::Empty, mode, Some(vec![d; nvars]), None, Some(detail))
        }
        None => cert(CertificateKind::Indeterminate, mode, None, None, Some(capped)),
    }
}

/// Rank of the degree-d part of the ideal generated by homogeneous `polys`.
fn macaulay_rank(polys: &[Poly<Fp>], nvars: usize, d: u32) -> usize {
    let Some(ctx) = polys.first().map(|p| *p.ctx()) else {
        return 0;
    };
    let cols = monomials_of_degree(nvars, d);
    let index: HashMap<Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut rows = Vec::new();
    for p in polys {
        let Some(deg) = p.total_degree().filter(|&g| g <= d) else {
            continue;
        };
        for m in monomials_of_degree(nvars, d - deg) {
            let mut row = vec![Fp::zero(&ctx); cols.len()];
            for (t, c) in p.terms() {
                row[index[&t.mul(&m)]] = *c;
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return 0;
    }
    rank(&Matrix::from_rows(&ctx, rows).expect("rows share a length"))
}

fn cert(kind: CertificateKind, mode: CertificateMode, exponents: Option<Vec<u32>>, witness: Option<Witness>, detail: Option<String>) -> EmptinessCertificate {
    EmptinessCertificate { kind, mode, exponents, witness, detail }
}

fn witness<F: Field>(field: FieldTag, w: &[F]) -> Witness {
    Witness { field, coords: w.iter().map(ToString::to_string).collect() }
}

/// Clears denominators and reduces modulo p.
pub fn reduce_polys(polys: &[Poly<Rat>], prime: &PrimeField) -> Vec<Poly<Fp>> {
    polys
        .iter()
        .map(|p| {
            let l = p.terms().iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
            let scaled = p.scale(&Rat::from_integer(l));
            scaled.try_map(prime, |c| prime.reduce(c)).expect("integral coefficients reduce")
        })
        .filter(|p| !p.is_zero())
        .collect()
}

fn decide<F: Field>(polys: &[Poly<F>], nvars: usize, caps: &GroebnerCaps) -> Outcome<F> {
    let gb = match groebner(polys, MonomialOrder::DegRevLex, caps) {
        Ok(gb) => gb,
        Err(e) => return Outcome::Capped(e.to_string()),
    };
    if gb.is_one() {
        return Outcome::Empty(vec![0; nvars]);
    }
    let lms = gb.leading_monomials();
    let pure: Vec<Option<u16>> = (0..nvars)
        .map(|i| lms.iter().filter_map(|m| m.pure_power_var().filter(|(v, _)| *v == i).map(|(_, e)| e)).min())
        .collect();
    if pure.iter().all(Option::is_some) {
        let bound: u32 = pure.iter().map(|e| e.unwrap() as u32 - 1).sum::<u32>() + 1;
        let exps = (0..nvars).map(|i| nullstellensatz_exponent(&gb, i, nvars, pure[i].unwrap() as u32, bound)).collect();
        return Outcome::Empty(exps);
    }
    Outcome::NonEmpty(find_witness(polys, nvars, caps))
}

/// Smallest e with x_i^e in the ideal. The quotient by the initial ideal is
/// finite, so every monomial of degree ≥ `bound` lies in the ideal.
fn nullstellensatz_exponent<F: Field>(gb: &GroebnerBasis<F>, i: usize, nvars: usize, from: u32, bound: u32) -> u32 {
    let ctx = gb.polys()[0].ctx().clone();
    let lo = 1.max(from.min(bound));
    for e in 1..=bound.max(lo) {
        let p = Poly::term(&ctx, nvars, MonomialOrder::DegRevLex, Monomial::pure_power(i, e as u16), F::one(&ctx));
        if gb.contains(&p) {
            return e;
        }
    }
    unreachable!("pure power of degree {bound} must lie in a zero-dimensional initial ideal")
}

/// Searches for a common projective zero with first nonzero coordinate 1.
pub fn find_witness<F: Field>(polys: &[Poly<F>], nvars: usize, caps: &GroebnerCaps) -> Option<Vec<F>> {
    let ctx = polys.first()?.ctx().clone();
    if let Some(w) = small_height_point(polys, nvars, &ctx) {
        return Some(w);
    }
    let mut budget = WITNESS_BUDGET;
    for chart in 0..nvars {
        let k = nvars - chart - 1;
        let images: Vec<Poly<F>> = (0..nvars)
            .map(|j| match j.cmp(&chart) {
                std::cmp::Ordering::Less => Poly::zero(&ctx, k, MonomialOrder::Lex),
                std::cmp::Ordering::Equal => Poly::constant(&ctx, k, MonomialOrder::Lex, F::one(&ctx)),
                std::cmp::Ordering::Greater => Poly::var(&ctx, k, MonomialOrder::Lex, j - chart - 1),
            })
            .collect();
        let affine: Vec<Poly<F>> = polys.iter().map(|p| p.compose(&images)).collect();
        if let Some(rest) = solve_affine_system(affine, k, &ctx, caps, &mut budget) {
            let mut w = vec![F::zero(&ctx); chart];
            w.push(F::one(&ctx));
            w.extend(rest);
            return Some(w);
        }
    }
    None
}

fn small_height_point<F: Field>(polys: &[Poly<F>], nvars: usize, ctx: &F::Ctx) -> Option<Vec<F>> {
    let mut pts: Vec<Vec<i64>> = Vec::new();
    for code in 0..5usize.pow(nvars as u32) {
        let mut c = code;
        let mut v = vec![0i64; nvars];
        for slot in v.iter_mut().rev() {
            *slot = (c % 5) as i64 - 2;
            c /= 5;
        }
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            pts.push(v);
        }
    }
    pts.sort_by_key(|v| (v.iter().map(|x| x.abs()).max(), v.iter().map(|x| x.abs()).sum::<i64>(), v.clone()));
    pts.into_iter()
        .map(|v| v.into_iter().map(|x| F::from_i64(ctx, x)).collect::<Vec<F>>())
        .find(|pt| polys.iter().all(|p| p.eval(pt).is_zero()))
}

/// A point of the affine zero set in k variables, if one is found.
fn solve_affine_system<F: Field>(polys: Vec<Poly<F>>, k: usize, ctx: &F::Ctx, caps: &GroebnerCaps, budget: &mut usize) -> Option<Vec<F>> {
    if *budget == 0 {
        return None;
    }
    *budget -= 1;
    let polys: Vec<Poly<F>> = polys.into_iter().filter(|p| !p.is_zero()).collect();
    if polys.iter().any(Poly::is_constant) {
        return None;
    }
    if k == 0 || polys.is_empty() {
        return Some(vec![F::zero(ctx); k]);
    }
    if groebner(&polys, MonomialOrder::DegRevLex, caps).ok()?.is_one() {
        return None;
    }
    let gb = groebner(&polys, MonomialOrder::Lex, caps).ok()?;
    if gb.is_one() {
        return None;
    }
    let last = k - 1;
    let univariate = gb.polys().iter().find(|p| p.support_vars() == [last]);
    let candidates: Vec<F> = match univariate {
        Some(u) => {
            let deg = u.terms().iter().map(|(m, _)| m.0[last] as usize).max().unwrap_or(0);
            let mut coeffs = vec![F::zero(ctx); deg + 1];
            for (m, c) in u.terms() {
                coeffs[m.0[last] as usize] = c.clone();
            }
            F::univariate_roots(ctx, &coeffs)
        }
        None => [0i64, 1, -1, 2, -2, 3].iter().map(|&c| F::from_i64(ctx, c)).collect(),
    };
    for r in candidates {
        let images: Vec<Poly<F>> = (0..k)
            .map(|j| if j == last { Poly::constant(ctx, last, MonomialOrder::Lex, r.clone()) } else { Poly::var(ctx, last, MonomialOrder::Lex, j) })
            .collect();
        let sub: Vec<Poly<F>> = gb.polys().iter().map(|p| p.compose(&images)).collect();
        if let Some(mut rest) = solve_affine_system(sub, last, ctx, caps, budget) {
            rest.push(r);
            return Some(rest);
        }
        if *budget == 0 {
            return None;
        }
    }
    None
}

/// Evaluates the generators at random 𝔽_p points; true when no common zero
/// turns up.
pub fn spot_check_empty<R: Rng + ?Sized>(ideal: &Ideal<Rat>, prime: &PrimeField, points: usize, rng: &mut R) -> bool {
    let fp = reduce_polys(&ideal.polys(), prime);
    (0..points).all(|_| {
        let pt: Vec<Fp> = (0..ideal.nvars()).map(|_| prime.element(rng.gen_range(0..prime.modulus()))).collect();
        pt.iter().all(Field::is_zero) || !fp.iter().all(|p| p.eval(&pt).is_zero())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::Form;
    use crate::linalg::{int, Rationals, DEFAULT_PRIME};

    fn x(i: usize) -> Poly<Rat> {
        Poly::var(&Rationals, 4, MonomialOrder::DegRevLex, i)
    }

    fn ideal(polys: Vec<Poly<Rat>>) -> Ideal<Rat> {
        Ideal::new(4, polys.into_iter().map(|p| Form::from_poly(p).unwrap()).collect())
    }

    fn run(i: &Ideal<Rat>, mode: CertificateMode) -> EmptinessCertificate {
        projective_emptiness(i, mode, &PrimeField::new(DEFAULT_PRIME).unwrap(), &GroebnerCaps::default())
    }

    #[test]
    fn coordinate_ideal_is_empty() {
        let c = run(&ideal((0..4).map(x).collect()), CertificateMode::Certified);
        assert_eq!(c.kind, CertificateKind::Empty);
        assert_eq!(c.exponents, Some(vec![1, 1, 1, 1]));
    }

    #[test]
    fn three_coordinates_meet_at_a_point() {
        let c = run(&ideal((0..3).map(x).collect()), CertificateMode::Certified);
        assert_eq!(c.kind, CertificateKind::NonEmpty);
        assert_eq!(c.witness.unwrap().coords, vec!["0", "0", "0", "1"]);
    }

    #[test]
    fn exponents_exceed_one_when_needed() {
        // x2^2 ≡ x1 x3 modulo the ideal, so x2 needs a power above 2
        let i = ideal(vec![x(0).pow(2), x(1).pow(2).sub(&x(0).mul(&x(2))), x(2).pow(2), x(3).pow(2)]);
        let c = run(&i, CertificateMode::Certified);
        assert_eq!(c.kind, CertificateKind::Empty);
        let e = c.exponents.unwrap();
        assert_eq!(e[0], 2);
        assert!(e[1] > 2);
        let p = run(&i, CertificateMode::Probabilistic);
        assert_eq!(p.kind, CertificateKind::ProbableEmpty);
    }

    #[test]
    fn coefficient_cap_falls_back_to_macaulay_rank() {
        let i = ideal(vec![x(0).pow(2), x(1).pow(2).sub(&x(0).mul(&x(2)).scale(&int(97))), x(2).pow(2), x(3).pow(2)]);
        let caps = GroebnerCaps { max_coeff_bits: 4, ..GroebnerCaps::default() };
        let c = projective_emptiness(&i, CertificateMode::Certified, &PrimeField::new(DEFAULT_PRIME).unwrap(), &caps);
        assert_eq!(c.kind, CertificateKind::Empty);
        let e = c.exponents.unwrap();
        assert!(e.iter().all(|&d| d == e[0] && d > 2));
        assert!(c.detail.unwrap().contains("Macaulay"));
    }

    #[test]
    fn irrational_point_still_nonempty() {
        // x1^2 - 2 x2^2 = 0, x3 = x4 = 0: points [±√2 : 1 : 0 : 0]
        let i = ideal(vec![x(0).pow(2).sub(&x(1).pow(2).scale(&int(2))), x(2), x(3)]);
        let c = run(&i, CertificateMode::Certified);
        assert_eq!(c.kind, CertificateKind::NonEmpty);
        assert!(c.detail.is_some());
    }

    #[test]
    fn conic_witness_by_elimination() {
        // x1 x2 - 7 x3^2 = 0 and x4 = 5 x3: contains [7 : 1 : 1 : 5] outside small height
        let i = ideal(vec![x(0).mul(&x(1)).sub(&x(2).pow(2).scale(&int(7))), x(3).sub(&x(2).scale(&int(5))), x(1).sub(&x(2))]);
        let c = run(&i, CertificateMode::Certified);
        assert_eq!(c.kind, CertificateKind::NonEmpty);
        let w = c.witness.unwrap();
        assert_eq!(w.field, FieldTag::Rational);
        let pt: Vec<Rat> = w.coords.iter().map(|s| crate::linalg::parse_rat(s).unwrap()).collect();
        assert!(i.vanishes_at(&pt));
    }
}
