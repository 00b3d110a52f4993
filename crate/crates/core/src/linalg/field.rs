//! Scalar fields: arbitrary-precision rationals and word-sized prime fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::LinalgError;

/// Exact rational scalar. Always stored reduced with a positive denominator.
pub type Rat = BigRational;

/// Which field a scalar lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldTag {
    Rational,
    Prime(u64),
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rational => write!(f, "Q"),
            FieldTag::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// A field whose elements carry enough context to rebuild constants.
///
/// `Ctx` identifies the field instance (unit for ℚ, the modulus for 𝔽_p);
/// two elements can only be combined when their contexts agree.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    type Ctx: Clone + PartialEq + Eq + fmt::Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn tag(ctx: &Self::Ctx) -> FieldTag;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_i64(ctx: &Self::Ctx, v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn inverse(&self) -> Option<Self>;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inverse().map(|inv| self.mul(&inv))
    }

    /// Roots in the field of the univariate polynomial with coefficients
    /// `coeffs[i]` for `x^i`, sorted and without repetition. May be
    /// incomplete when the search is capped (rationals with huge constants).
    fn univariate_roots(ctx: &Self::Ctx, coeffs: &[Self]) -> Vec<Self>;

    /// Storage size in bits; zero for fixed-size elements.
    fn bits(&self) -> u64 {
        0
    }
}

/// Context marker for ℚ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rat {
    type Ctx = Rationals;

    fn ctx(&self) -> Rationals {
        Rationals
    }
    fn tag(_: &Rationals) -> FieldTag {
        FieldTag::Rational
    }
    fn zero(_: &Rationals) -> Self {
        Zero::zero()
    }
    fn one(_: &Rationals) -> Self {
        One::one()
    }
    fn from_i64(_: &Rationals, v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn add(&self, rhs: &Self) -> Self {
        Add::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Sub::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Mul::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        Neg::neg(self)
    }
    fn univariate_roots(_: &Rationals, coeffs: &[Self]) -> Vec<Self> {
        rational_roots(coeffs)
    }
    fn bits(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }
}

/// Largest prime below 2⁶².
pub const DEFAULT_PRIME: u64 = (1u64 << 62) - 57;

/// Context for a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, LinalgError> {
        if p >= (1u64 << 62) || !is_prime(p) {
            return Err(LinalgError::BadPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn element(&self, v: u64) -> Fp {
        Fp { v: v % self.p, p: self.p }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Fp {
        let m = BigInt::from(self.p);
        let r = v.mod_floor(&m);
        Fp { v: r.to_u64().expect("residue fits"), p: self.p }
    }

    /// Reduction of a rational; `None` when p divides the denominator.
    pub fn reduce(&self, q: &Rat) -> Option<Fp> {
        let den = self.from_bigint(q.denom());
        if den.v == 0 {
            return None;
        }
        let num = self.from_bigint(q.numer());
        Some(Mul::mul(&num, &den.inverse().expect("nonzero")))
    }
}

/// Element of 𝔽_p for p < 2⁶².
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    pub fn value(&self) -> u64 {
        self.v
    }
    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn same(&self, rhs: &Fp) {
        assert_eq!(self.p, rhs.p, "mixed-field arithmetic: F_{} vs F_{}", self.p, rhs.p);
    }

    pub fn pow(&self, mut e: u64) -> Fp {
        let mut base = *self;
        let mut acc = Fp { v: 1 % self.p, p: self.p };
        while e > 0 {
            if e & 1 == 1 {
                acc = Mul::mul(&acc, &base);
            }
            base = Mul::mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.v, self.p)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl Add for &Fp {
    type Output = Fp;
    fn add(self, rhs: &Fp) -> Fp {
        self.same(rhs);
        let s = self.v + rhs.v;
        Fp { v: if s >= self.p { s - self.p } else { s }, p: self.p }
    }
}

impl Sub for &Fp {
    type Output = Fp;
    fn sub(self, rhs: &Fp) -> Fp {
        self.same(rhs);
        let v = if self.v >= rhs.v { self.v - rhs.v } else { self.v + self.p - rhs.v };
        Fp { v, p: self.p }
    }
}

impl Mul for &Fp {
    type Output = Fp;
    fn mul(self, rhs: &Fp) -> Fp {
        self.same(rhs);
        Fp { v: mulmod(self.v, rhs.v, self.p), p: self.p }
    }
}

impl Neg for &Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }
}

impl Field for Fp {
    type Ctx = PrimeField;

    fn ctx(&self) -> PrimeField {
        PrimeField { p: self.p }
    }
    fn tag(ctx: &PrimeField) -> FieldTag {
        FieldTag::Prime(ctx.p)
    }
    fn zero(ctx: &PrimeField) -> Self {
        Fp { v: 0, p: ctx.p }
    }
    fn one(ctx: &PrimeField) -> Self {
        Fp { v: 1, p: ctx.p }
    }
    fn from_i64(ctx: &PrimeField, v: i64) -> Self {
        let p = ctx.p as i128;
        let r = (v as i128).rem_euclid(p);
        Fp { v: r as u64, p: ctx.p }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn inverse(&self) -> Option<Self> {
        if self.v == 0 {
            return None;
        }
        // extended Euclid on i128
        let (mut r0, mut r1) = (self.p as i128, self.v as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(Fp { v: t0.rem_euclid(self.p as i128) as u64, p: self.p })
    }
    fn add(&self, rhs: &Self) -> Self {
        Add::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Sub::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Mul::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        Neg::neg(self)
    }
    fn univariate_roots(ctx: &PrimeField, coeffs: &[Self]) -> Vec<Self> {
        crate::forms::univariate::fp_roots(ctx, coeffs)
    }
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

/// A uniformly drawn prime with exactly `bits` bits (2 ≤ bits ≤ 62).
pub fn random_prime<R: rand::Rng + ?Sized>(rng: &mut R, bits: u32) -> u64 {
    assert!((2..=62).contains(&bits));
    let lo = 1u64 << (bits - 1);
    loop {
        let c = lo | (rng.gen::<u64>() & (lo - 1)) | 1;
        if is_prime(c) {
            return c;
        }
    }
}

/// Canonical decimal form: `p/q`, `q` omitted when 1, sign on the numerator.
pub fn rat_to_string(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<Rat, LinalgError> {
    let bad = || LinalgError::Parse(s.to_string());
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t, "1"),
    };
    let num = BigInt::from_str(n.trim()).map_err(|_| bad())?;
    let den = BigInt::from_str(d.trim()).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

const ROOT_DIVISOR_CAP: u64 = 1_000_000;

/// Rational roots via the rational root theorem. Gives up (returns what it
/// has) when the constant or leading coefficient cannot be factored by trial
/// division below `ROOT_DIVISOR_CAP`.
fn rational_roots(coeffs: &[Rat]) -> Vec<Rat> {
    let mut c: Vec<Rat> = coeffs.to_vec();
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    let shift = c.iter().take_while(|x| Zero::is_zero(*x)).count();
    if shift > 0 {
        roots.push(<Rat as Zero>::zero());
        c.drain(..shift);
    }
    if c.len() > 1 {
        let lcm = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = c.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        let a0 = ints[0].abs();
        let an = ints[ints.len() - 1].abs();
        if let (Some(ps), Some(qs)) = (small_divisors(&a0), small_divisors(&an)) {
            for p in &ps {
                for q in &qs {
                    for sign in [1i64, -1] {
                        let cand = BigRational::new(BigInt::from(*p) * sign, BigInt::from(*q));
                        if Zero::is_zero(&eval_rat(&c, &cand)) && !roots.contains(&cand) {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
    }
    roots.sort();
    roots
}

fn eval_rat(c: &[Rat], x: &Rat) -> Rat {
    c.iter().rev().fold(<Rat as Zero>::zero(), |acc, a| acc * x + a)
}

fn small_divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.to_u64()?;
    if n == 0 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if d > ROOT_DIVISOR_CAP {
            return None;
        }
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_prime_is_largest_below_2_62() {
        assert!(is_prime(DEFAULT_PRIME));
        for c in (DEFAULT_PRIME + 1)..(1u64 << 62) {
            assert!(!is_prime(c), "{c}");
        }
    }

    #[test]
    fn miller_rabin_small_range() {
        let sieve: Vec<u64> = (2..2000u64).filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)).collect();
        let mr: Vec<u64> = (0..2000u64).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieve, mr);
    }

    #[test]
    fn fp_inverse_and_neg() {
        let f = PrimeField::new(101).unwrap();
        for v in 1..101 {
            let x = f.element(v);
            assert!(Field::is_one(&Field::mul(&x, &x.inverse().unwrap())));
            assert!(Field::is_zero(&Field::add(&x, &Field::neg(&x))));
        }
        assert!(f.element(0).inverse().is_none());
    }

    #[test]
    fn reduce_rational() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.reduce(&rat(1, 2)).unwrap().value(), 4);
        assert!(f.reduce(&rat(1, 14)).is_none());
        assert_eq!(f.reduce(&rat(-3, 1)).unwrap().value(), 4);
    }

    #[test]
    fn rational_strings() {
        assert_eq!(rat_to_string(&rat(6, -4)), "-3/2");
        assert_eq!(rat_to_string(&int(5)), "5");
        assert_eq!(parse_rat("-3/2").unwrap(), rat(-3, 2));
        assert_eq!(parse_rat("4/2").unwrap(), int(2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn rational_root_theorem() {
        // (2x - 1)(x + 3) x = 2x^3 + 5x^2 - 3x
        let c = vec![int(0), int(-3), int(5), int(2)];
        assert_eq!(rational_roots(&c), vec![int(-3), int(0), rat(1, 2)]);
        // x^2 - 2 has no rational roots
        assert!(rational_roots(&[int(-2), int(0), int(1)]).is_empty());
    }

    #[test]
    #[should_panic(expected = "mixed-field")]
    fn mixed_prime_arithmetic_panics() {
        let a = PrimeField::new(5).unwrap().element(1);
        let b = PrimeField::new(7).unwrap().element(1);
        let _ = &a + &b;
    }
}
