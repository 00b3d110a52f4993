use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

/// Upper bound on the number of variables (P³ has four homogeneous coordinates).
pub const MAX_VARS: usize = 4;

/// Exponent vector; unused trailing slots stay zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub [u16; MAX_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; MAX_VARS])
    }

    pub fn var(i: usize) -> Self {
        Self::pure_power(i, 1)
    }

    pub fn pure_power(i: usize, e: u16) -> Self {
        let mut m = [0; MAX_VARS];
        m[i] = e;
        Monomial(m)
    }

    pub fn from_exponents(e: &[u16]) -> Self {
        assert!(e.len() <= MAX_VARS, "too many variables");
        let mut m = [0; MAX_VARS];
        m[..e.len()].copy_from_slice(e);
        Monomial(m)
    }

    pub fn exponents(&self, nvars: usize) -> &[u16] {
        &self.0[..nvars]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0) {
            *a += b;
        }
        Monomial(m)
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(o.0).all(|(a, b)| *a <= b)
    }

    /// self / o, assuming o divides self.
    pub fn div(&self, o: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0) {
            debug_assert!(*a >= b);
            *a -= b;
        }
        Monomial(m)
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0) {
            *a = (*a).max(b);
        }
        Monomial(m)
    }

    pub fn coprime(&self, o: &Monomial) -> bool {
        self.0.iter().zip(o.0).all(|(a, b)| *a == 0 || b == 0)
    }

    /// The variable index if this is a pure power x_i^e with e > 0.
    pub fn pure_power_var(&self) -> Option<(usize, u16)> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }
}

/// Monomial order. Variables are ranked x₁ > x₂ > ⋯ in both orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonomialOrder {
    DegRevLex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::DegRevLex => a.degree().cmp(&b.degree()).then_with(|| {
                for i in (0..MAX_VARS).rev() {
                    if a.0[i] != b.0[i] {
                        return b.0[i].cmp(&a.0[i]);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

/// All exponent vectors of total degree `d` in `nvars` variables, in
/// descending degrevlex order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = [0u16; MAX_VARS];
    fn rec(i: usize, nvars: usize, left: u32, cur: &mut [u16; MAX_VARS], out: &mut Vec<Monomial>) {
        if i + 1 == nvars {
            cur[i] = left as u16;
            out.push(Monomial(*cur));
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u16;
            rec(i + 1, nvars, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::one());
        }
        return out;
    }
    rec(0, nvars, d, &mut cur, &mut out);
    out.sort_by(|a, b| MonomialOrder::DegRevLex.cmp(b, a));
    out
}

/// Number of monomials of degree d in k variables: C(d+k−1, k−1), zero for d < 0.
pub fn count_monomials(nvars: usize, d: i64) -> usize {
    if d < 0 || nvars == 0 {
        return usize::from(d == 0 && nvars == 0);
    }
    let (n, k) = (d as u128 + nvars as u128 - 1, nvars as u128 - 1);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrevlex_ranks_variables() {
        let o = MonomialOrder::DegRevLex;
        let x = |i| Monomial::var(i);
        assert_eq!(o.cmp(&x(0), &x(1)), Ordering::Greater);
        assert_eq!(o.cmp(&x(2), &x(3)), Ordering::Greater);
        // x1*x3 vs x2^2: degrevlex puts x2^2 below x1x3? last var equal (0), x3: 1 vs 0 => x1x3 smaller
        let a = Monomial::from_exponents(&[1, 0, 1, 0]);
        let b = Monomial::from_exponents(&[0, 2, 0, 0]);
        assert_eq!(o.cmp(&a, &b), Ordering::Less);
        assert_eq!(MonomialOrder::Lex.cmp(&a, &b), Ordering::Greater);
    }

    #[test]
    fn enumerate_and_count() {
        for k in 1..=4 {
            for d in 0..5 {
                assert_eq!(monomials_of_degree(k, d).len(), count_monomials(k, d as i64));
            }
        }
        assert_eq!(count_monomials(4, 3), 20);
        assert_eq!(count_monomials(3, -1), 0);
        let m = monomials_of_degree(3, 2);
        assert_eq!(m[0], Monomial::from_exponents(&[2, 0, 0]));
        assert_eq!(*m.last().unwrap(), Monomial::from_exponents(&[0, 0, 2]));
    }

    #[test]
    fn divisibility() {
        let a = Monomial::from_exponents(&[1, 2, 0, 0]);
        let b = Monomial::from_exponents(&[2, 2, 1, 0]);
        assert!(a.divides(&b));
        assert_eq!(b.div(&a), Monomial::from_exponents(&[1, 0, 1, 0]));
        assert_eq!(a.lcm(&Monomial::var(3)), Monomial::from_exponents(&[1, 2, 0, 1]));
        assert_eq!(Monomial::pure_power(2, 3).pure_power_var(), Some((2, 3)));
        assert_eq!(a.pure_power_var(), None);
    }
}
