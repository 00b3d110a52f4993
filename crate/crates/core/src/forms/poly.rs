use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::linalg::Field;

use super::monomial::{Monomial, MonomialOrder, MAX_VARS};

/// Sparse polynomial with terms kept strictly descending in `order`.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<F: Field> {
    nvars: usize,
    ctx: F::Ctx,
    order: MonomialOrder,
    terms: Vec<(Monomial, F)>,
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c:?})")?;
            for (i, e) in m.exponents(self.nvars).iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

impl<F: Field> Poly<F> {
    pub fn zero(ctx: &F::Ctx, nvars: usize, order: MonomialOrder) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        Poly { nvars, ctx: ctx.clone(), order, terms: Vec::new() }
    }

    pub fn constant(ctx: &F::Ctx, nvars: usize, order: MonomialOrder, c: F) -> Self {
        Self::term(ctx, nvars, order, Monomial::one(), c)
    }

    pub fn var(ctx: &F::Ctx, nvars: usize, order: MonomialOrder, i: usize) -> Self {
        assert!(i < nvars);
        Self::term(ctx, nvars, order, Monomial::var(i), F::one(ctx))
    }

    pub fn term(ctx: &F::Ctx, nvars: usize, order: MonomialOrder, m: Monomial, c: F) -> Self {
        let mut p = Self::zero(ctx, nvars, order);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Collects arbitrary terms, combining duplicates and dropping zeros.
    pub fn from_terms(ctx: &F::Ctx, nvars: usize, order: MonomialOrder, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut acc: HashMap<Monomial, F> = HashMap::new();
        for (m, c) in terms {
            debug_assert!(m.0[nvars..].iter().all(|&e| e == 0));
            match acc.get_mut(&m) {
                Some(v) => *v = v.add(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Poly { nvars, ctx: ctx.clone(), order, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }
    pub fn order(&self) -> MonomialOrder {
        self.order
    }
    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.degree() == 0)
    }

    pub fn leading(&self) -> Option<&(Monomial, F)> {
        self.terms.first()
    }

    /// Removes and returns the leading term.
    pub fn pop_leading(&mut self) -> Option<(Monomial, F)> {
        (!self.terms.is_empty()).then(|| self.terms.remove(0))
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms.iter().find(|(t, _)| t == m).map_or_else(|| F::zero(&self.ctx), |(_, c)| c.clone())
    }

    /// Maximum total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Common degree of all terms (zero counts as homogeneous of any degree).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    fn merge(&self, rhs: &Self, negate_rhs: bool) -> Self {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        assert_eq!(self.order, rhs.order, "monomial order mismatch");
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        let fix = |c: &F| if negate_rhs { c.neg() } else { c.clone() };
        while i < self.terms.len() && j < rhs.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &rhs.terms[j];
            match self.order.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((*mb, fix(cb)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_rhs { ca.sub(cb) } else { ca.add(cb) };
                    if !c.is_zero() {
                        out.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(rhs.terms[j..].iter().map(|(m, c)| (*m, fix(c))));
        Poly { nvars: self.nvars, ctx: self.ctx.clone(), order: self.order, terms: out }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.merge(rhs, false)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.merge(rhs, true)
    }

    pub fn neg(&self) -> Self {
        self.map_terms(|c| c.neg())
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return Self::zero(&self.ctx, self.nvars, self.order);
        }
        self.map_terms(|c| c.mul(s))
    }

    fn map_terms(&self, f: impl Fn(&F) -> F) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, f(c))).collect(), ..self.clone_empty() }
    }

    fn clone_empty(&self) -> Self {
        Self::zero(&self.ctx, self.nvars, self.order)
    }

    /// self · c·m; order is preserved since monomial orders are multiplicative.
    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return self.clone_empty();
        }
        Poly { terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.mul(c))).collect(), ..self.clone_empty() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut acc: HashMap<Monomial, F> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = v.add(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        Poly { terms, ..self.clone_empty() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(&self.ctx, self.nvars, self.order, F::one(&self.ctx));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inverse().expect("nonzero leading coefficient")),
        }
    }

    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars, "point length");
        let mut acc = F::zero(&self.ctx);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents(self.nvars)) {
                for _ in 0..e {
                    t = t.mul(x);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    pub fn with_order(&self, order: MonomialOrder) -> Self {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Poly { nvars: self.nvars, ctx: self.ctx.clone(), order, terms }
    }

    /// Substitutes x_i ↦ images[i]; all images share one ring.
    pub fn compose(&self, images: &[Poly<F>]) -> Poly<F> {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().expect("at least one variable");
        let mut acc = Poly::zero(&self.ctx, target.nvars, target.order);
        let mut powers: Vec<Vec<Poly<F>>> = images.iter().map(|p| vec![Poly::constant(&self.ctx, p.nvars, p.order, F::one(&self.ctx))]).collect();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&self.ctx, target.nvars, target.order, c.clone());
            for (i, &e) in m.exponents(self.nvars).iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Coefficient-wise map into another field; `None` if any coefficient fails.
    pub fn try_map<G: Field>(&self, ctx: &G::Ctx, f: impl Fn(&F) -> Option<G>) -> Option<Poly<G>> {
        let terms: Option<Vec<_>> = self.terms.iter().map(|(m, c)| f(c).map(|g| (*m, g))).collect();
        Some(Poly::from_terms(ctx, self.nvars, self.order, terms?))
    }

    /// Variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.terms.iter().any(|(m, _)| m.0[i] > 0)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, Rat, Rationals};

    type P = Poly<Rat>;
    const O: MonomialOrder = MonomialOrder::DegRevLex;

    fn x(i: usize) -> P {
        P::var(&Rationals, 4, O, i)
    }

    #[test]
    fn ring_identities() {
        let a = x(0).add(&x(1));
        let b = x(0).sub(&x(1));
        let lhs = a.mul(&b);
        let rhs = x(0).mul(&x(0)).sub(&x(1).mul(&x(1)));
        assert_eq!(lhs, rhs);
        assert!(a.sub(&a).is_zero());
        assert_eq!(lhs.homogeneous_degree(), Some(2));
        assert!(!a.add(&P::constant(&Rationals, 4, O, int(1))).is_homogeneous());
    }

    #[test]
    fn eval_and_compose() {
        let p = x(0).mul(&x(2)).sub(&x(1).pow(2));
        let pt = [int(2), int(3), int(5), int(7)];
        assert_eq!(p.eval(&pt), int(1));
        // x1 -> x2 + x3, others fixed
        let images = vec![x(1).add(&x(2)), x(1), x(2), x(3)];
        let q = p.compose(&images);
        assert_eq!(q.eval(&pt), int(8 * 5 - 9));
    }

    #[test]
    fn reorder_keeps_value() {
        let p = x(0).mul(&x(2)).sub(&x(1).pow(2)).add(&x(3).pow(2));
        let l = p.with_order(MonomialOrder::Lex);
        assert_eq!(l.leading_monomial(), Some(Monomial::from_exponents(&[1, 0, 1, 0])));
        assert_eq!(p.leading_monomial(), Some(Monomial::from_exponents(&[0, 2, 0, 0])));
        assert_eq!(l.with_order(O), p);
    }
}
