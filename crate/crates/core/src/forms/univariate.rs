//! Roots of univariate polynomials over 𝔽_p: gcd with x^p − x, then
//! Cantor–Zassenhaus equal-degree splitting.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{Field, Fp, PrimeField};

type U = Vec<Fp>;

fn trim(mut a: U) -> U {
    while a.last().is_some_and(Fp::is_zero) {
        a.pop();
    }
    a
}

fn deg(a: &U) -> Option<usize> {
    a.len().checked_sub(1)
}

fn sub(a: &U, b: &U) -> U {
    let n = a.len().max(b.len());
    let z = |v: &U, i: usize, ctx: &PrimeField| v.get(i).copied().unwrap_or_else(|| Fp::zero(ctx));
    let ctx = a.first().or(b.first()).map(Fp::ctx).expect("nonempty operand");
    trim((0..n).map(|i| Field::sub(&z(a, i, &ctx), &z(b, i, &ctx))).collect())
}

fn mul(a: &U, b: &U) -> U {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let ctx = a[0].ctx();
    let mut out = vec![Fp::zero(&ctx); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = Field::add(&out[i + j], &Field::mul(x, y));
        }
    }
    trim(out)
}

fn rem(a: &U, m: &U) -> U {
    let mut r = trim(a.clone());
    let dm = deg(m).expect("nonzero modulus");
    let inv = m[dm].inverse().expect("nonzero leading coefficient");
    while let Some(dr) = deg(&r) {
        if dr < dm {
            break;
        }
        let f = Field::mul(&r[dr], &inv);
        let shift = dr - dm;
        for (i, c) in m.iter().enumerate() {
            r[shift + i] = Field::sub(&r[shift + i], &Field::mul(&f, c));
        }
        r = trim(r);
    }
    r
}

fn monic(a: U) -> U {
    match a.last() {
        None => a,
        Some(l) => {
            let inv = l.inverse().expect("nonzero");
            a.iter().map(|c| Field::mul(c, &inv)).collect()
        }
    }
}

fn gcd(a: &U, b: &U) -> U {
    let (mut x, mut y) = (trim(a.clone()), trim(b.clone()));
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    monic(x)
}

fn powmod(base: &U, mut e: u64, m: &U) -> U {
    let ctx = m[0].ctx();
    let mut acc = rem(&vec![Fp::one(&ctx)], m);
    let mut b = rem(base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &b), m);
        }
        b = rem(&mul(&b, &b), m);
        e >>= 1;
    }
    acc
}

/// Distinct roots of Σ coeffs[i]·xⁱ in 𝔽_p, sorted by representative.
pub fn fp_roots(ctx: &PrimeField, coeffs: &[Fp]) -> Vec<Fp> {
    let f = trim(coeffs.to_vec());
    let Some(d) = deg(&f) else {
        return Vec::new();
    };
    if d == 0 {
        return Vec::new();
    }
    let p = ctx.modulus();
    let mut roots: Vec<Fp> = if p < 4096 {
        (0..p).map(|v| ctx.element(v)).filter(|x| eval(&f, x).is_zero()).collect()
    } else {
        let f = monic(f);
        let x = vec![Fp::zero(ctx), Fp::one(ctx)];
        let xp = powmod(&x, p, &f);
        let g = gcd(&f, &sub(&xp, &x));
        let mut out = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        split(&g, p, &mut rng, &mut out);
        out
    };
    roots.sort_by_key(Fp::value);
    roots.dedup();
    roots
}

fn eval(f: &U, x: &Fp) -> Fp {
    f.iter().rev().fold(Fp::zero(&x.ctx()), |acc, c| Field::add(&Field::mul(&acc, x), c))
}

/// Splits a squarefree product of distinct linear factors.
fn split(g: &U, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Fp>) {
    match deg(g) {
        None | Some(0) => {}
        Some(1) => out.push(Field::neg(&Field::mul(&g[0], &g[1].inverse().expect("nonzero")))),
        Some(dg) => loop {
            let ctx = g[0].ctx();
            let a = ctx.element(rng.gen_range(0..p));
            let h = powmod(&vec![a, Fp::one(&ctx)], (p - 1) / 2, g);
            let d = gcd(g, &sub(&h, &vec![Fp::one(&ctx)]));
            let dd = deg(&d).unwrap_or(0);
            if dd > 0 && dd < dg {
                let (q, _) = divide(g, &d);
                split(&d, p, rng, out);
                split(&q, p, rng, out);
                return;
            }
        },
    }
}

fn divide(a: &U, m: &U) -> (U, U) {
    let ctx = m[0].ctx();
    let dm = deg(m).expect("nonzero");
    let inv = m[dm].inverse().expect("nonzero");
    let mut r = trim(a.clone());
    let mut q = vec![Fp::zero(&ctx); r.len().saturating_sub(dm).max(1)];
    while let Some(dr) = deg(&r) {
        if dr < dm {
            break;
        }
        let f = Field::mul(&r[dr], &inv);
        let shift = dr - dm;
        q[shift] = f;
        for (i, c) in m.iter().enumerate() {
            r[shift + i] = Field::sub(&r[shift + i], &Field::mul(&f, c));
        }
        r = trim(r);
    }
    (trim(q), r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::DEFAULT_PRIME;

    fn ints(ctx: &PrimeField, c: &[i64]) -> Vec<Fp> {
        c.iter().map(|&v| Fp::from_i64(ctx, v)).collect()
    }

    #[test]
    fn roots_of_split_polynomial_large_prime() {
        let ctx = PrimeField::new(DEFAULT_PRIME).unwrap();
        // (x-1)(x-2)(x+3)(x^2+1)^? -- x^2+1 has roots iff p = 1 mod 4
        let f = mul(&mul(&ints(&ctx, &[-1, 1]), &ints(&ctx, &[-2, 1])), &ints(&ctx, &[3, 1]));
        let r = fp_roots(&ctx, &f);
        let mut want: Vec<Fp> = ints(&ctx, &[1, 2, -3]);
        want.sort_by_key(Fp::value);
        assert_eq!(r, want);
    }

    #[test]
    fn irreducible_quadratic_has_no_roots() {
        let ctx = PrimeField::new(1_000_003).unwrap();
        // p = 3 mod 4, so x^2 + 1 is irreducible
        assert_eq!(1_000_003 % 4, 3);
        assert!(fp_roots(&ctx, &ints(&ctx, &[1, 0, 1])).is_empty());
        let sq = fp_roots(&ctx, &ints(&ctx, &[-4, 0, 1]));
        assert_eq!(sq.len(), 2);
    }

    #[test]
    fn repeated_roots_and_small_prime() {
        let ctx = PrimeField::new(7).unwrap();
        let f = mul(&ints(&ctx, &[-1, 1]), &ints(&ctx, &[-1, 1]));
        assert_eq!(fp_roots(&ctx, &f), ints(&ctx, &[1]));
        let big = PrimeField::new(1_000_003).unwrap();
        let g = mul(&ints(&big, &[-5, 1]), &ints(&big, &[-5, 1]));
        assert_eq!(fp_roots(&big, &g), ints(&big, &[5]));
    }
}
