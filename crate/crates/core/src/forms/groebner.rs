//! Buchberger's algorithm with the Gebauer–Möller criteria and the normal
//! selection strategy.

use std::cmp::Ordering;

use thiserror::Error;

use crate::linalg::Field;

use super::monomial::{Monomial, MonomialOrder};
use super::poly::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("generator cap of {0} exceeded")]
    TooManyGenerators(usize),
    #[error("pair queue cap of {0} exceeded")]
    TooManyPairs(usize),
    #[error("coefficient size cap of {0} bits exceeded")]
    CoefficientGrowth(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroebnerCaps {
    pub max_generators: usize,
    pub max_pairs: usize,
    /// Largest coefficient, numerator plus denominator bits, in a basis element.
    pub max_coeff_bits: u64,
}

impl Default for GroebnerCaps {
    fn default() -> Self {
        GroebnerCaps { max_generators: 5000, max_pairs: 200_000, max_coeff_bits: 256 }
    }
}

/// A reduced Gröbner basis: monic, sorted by descending leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis<F: Field> {
    order: MonomialOrder,
    polys: Vec<Poly<F>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn polys(&self) -> &[Poly<F>] {
        &self.polys
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().filter_map(Poly::leading_monomial).collect()
    }

    /// The unit ideal.
    pub fn is_one(&self) -> bool {
        self.polys.iter().any(Poly::is_constant)
    }

    pub fn normal_form(&self, f: &Poly<F>) -> Poly<F> {
        normal_form(&f.with_order(self.order), &self.polys.iter().collect::<Vec<_>>())
    }

    pub fn contains(&self, f: &Poly<F>) -> bool {
        self.normal_form(f).is_zero()
    }
}

/// Full reduction of `f` modulo `basis`.
pub fn normal_form<F: Field>(f: &Poly<F>, basis: &[&Poly<F>]) -> Poly<F> {
    let mut p = f.clone();
    let mut rest: Vec<(Monomial, F)> = Vec::new();
    while let Some((m, c)) = p.leading().cloned() {
        match basis.iter().find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(&m))) {
            Some(g) => {
                let (lm, lc) = g.leading().expect("nonzero");
                let coef = c.div(lc).expect("nonzero leading coefficient");
                p = p.sub(&g.mul_term(&m.div(lm), &coef));
            }
            None => {
                p.pop_leading();
                rest.push((m, c));
            }
        }
    }
    Poly::from_terms(f.ctx(), f.nvars(), f.order(), rest)
}

fn s_poly<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Poly<F> {
    let (mf, cf) = f.leading().expect("nonzero");
    let (mg, cg) = g.leading().expect("nonzero");
    let l = mf.lcm(mg);
    let a = f.mul_term(&l.div(mf), &cf.inverse().expect("nonzero"));
    let b = g.mul_term(&l.div(mg), &cg.inverse().expect("nonzero"));
    a.sub(&b)
}

struct State<F: Field> {
    order: MonomialOrder,
    arena: Vec<Poly<F>>,
    lms: Vec<Monomial>,
    basis: Vec<usize>,
    pairs: Vec<(usize, usize)>,
    caps: GroebnerCaps,
}

impl<F: Field> State<F> {
    fn lcm(&self, i: usize, j: usize) -> Monomial {
        self.lms[i].lcm(&self.lms[j])
    }

    fn update(&mut self, h: Poly<F>) -> Result<(), GroebnerError> {
        if h.terms().iter().any(|(_, c)| c.bits() > self.caps.max_coeff_bits) {
            return Err(GroebnerError::CoefficientGrowth(self.caps.max_coeff_bits));
        }
        let hi = self.arena.len();
        self.lms.push(h.leading_monomial().expect("nonzero"));
        self.arena.push(h);
        if self.arena.len() > self.caps.max_generators {
            return Err(GroebnerError::TooManyGenerators(self.caps.max_generators));
        }
        let lh = self.lms[hi];

        let mut c: Vec<usize> = self.basis.clone();
        let mut d: Vec<usize> = Vec::new();
        while let Some(g1) = (!c.is_empty()).then(|| c.remove(0)) {
            let l1 = self.lcm(hi, g1);
            let keep = lh.coprime(&self.lms[g1])
                || (!c.iter().any(|&g2| self.lcm(hi, g2).divides(&l1)) && !d.iter().any(|&g2| self.lcm(hi, g2).divides(&l1)));
            if keep {
                d.push(g1);
            }
        }
        let e: Vec<(usize, usize)> = d.into_iter().filter(|&g| !lh.coprime(&self.lms[g])).map(|g| (g, hi)).collect();

        self.pairs.retain(|&(g1, g2)| {
            let l = self.lms[g1].lcm(&self.lms[g2]);
            !lh.divides(&l) || self.lms[g1].lcm(&lh) == l || lh.lcm(&self.lms[g2]) == l
        });
        self.pairs.extend(e);
        if self.pairs.len() > self.caps.max_pairs {
            return Err(GroebnerError::TooManyPairs(self.caps.max_pairs));
        }
        self.basis.retain(|&g| !lh.divides(&self.lms[g]));
        self.basis.push(hi);
        Ok(())
    }

    fn pop_pair(&mut self) -> Option<(usize, usize)> {
        if self.pairs.is_empty() {
            return None;
        }
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = self.pairs[k];
            let (c, d) = self.pairs[best];
            let ord = self.order.cmp(&self.lcm(a, b), &self.lcm(c, d)).then((a, b).cmp(&(c, d)));
            if ord == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` for `order`.
pub fn groebner<F: Field>(gens: &[Poly<F>], order: MonomialOrder, caps: &GroebnerCaps) -> Result<GroebnerBasis<F>, GroebnerError> {
    let mut st = State { order, arena: Vec::new(), lms: Vec::new(), basis: Vec::new(), pairs: Vec::new(), caps: *caps };
    for g in gens {
        let g = g.with_order(order);
        let r = {
            let current: Vec<&Poly<F>> = st.basis.iter().map(|&i| &st.arena[i]).collect();
            normal_form(&g, &current)
        };
        if !r.is_zero() {
            st.update(r.monic())?;
        }
    }
    while let Some((i, j)) = st.pop_pair() {
        let s = s_poly(&st.arena[i], &st.arena[j]);
        let h = {
            let current: Vec<&Poly<F>> = st.basis.iter().map(|&k| &st.arena[k]).collect();
            normal_form(&s, &current)
        };
        if !h.is_zero() {
            st.update(h.monic())?;
        }
    }
    let mut polys: Vec<Poly<F>> = st.basis.iter().map(|&i| st.arena[i].clone()).collect();
    // minimalize, then interreduce
    polys.sort_by(|a, b| order.cmp(&a.leading_monomial().unwrap(), &b.leading_monomial().unwrap()));
    let mut minimal: Vec<Poly<F>> = Vec::new();
    for p in polys {
        let lm = p.leading_monomial().unwrap();
        if !minimal.iter().any(|q| q.leading_monomial().unwrap().divides(&lm)) {
            minimal.push(p);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for (k, p) in minimal.iter().enumerate() {
        let others: Vec<&Poly<F>> = minimal.iter().enumerate().filter(|&(l, _)| l != k).map(|(_, q)| q).collect();
        let (lm, lc) = p.leading().cloned().unwrap();
        let mut tail = p.clone();
        tail.pop_leading();
        let tail = normal_form(&tail, &others);
        let head = Poly::term(p.ctx(), p.nvars(), order, lm, lc);
        reduced.push(head.add(&tail).monic());
    }
    reduced.sort_by(|a, b| order.cmp(&b.leading_monomial().unwrap(), &a.leading_monomial().unwrap()));
    Ok(GroebnerBasis { order, polys: reduced })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, Rat, Rationals};

    const O: MonomialOrder = MonomialOrder::DegRevLex;

    fn x(i: usize) -> Poly<Rat> {
        Poly::var(&Rationals, 4, O, i)
    }

    #[test]
    fn coordinate_ideal_is_its_own_basis() {
        let gb = groebner(&[x(0), x(1)], O, &GroebnerCaps::default()).unwrap();
        assert_eq!(gb.polys(), &[x(0), x(1)]);
        let all = groebner(&[x(0), x(1), x(2), x(3)], O, &GroebnerCaps::default()).unwrap();
        for i in 0..4 {
            assert!(all.normal_form(&x(i)).is_zero());
        }
    }

    #[test]
    fn s_pair_produces_x2_squared() {
        let f = x(0).mul(&x(2)).sub(&x(1).mul(&x(1)));
        let gb = groebner(&[f, x(0)], O, &GroebnerCaps::default()).unwrap();
        assert!(gb.polys().contains(&x(1).mul(&x(1))));
        assert!(gb.contains(&x(1).pow(3)));
        assert!(!gb.contains(&x(1)));
    }

    #[test]
    fn normal_form_idempotent_and_membership() {
        let f = x(0).mul(&x(1)).sub(&x(2).mul(&x(3)));
        let g = x(0).mul(&x(0)).add(&x(3).mul(&x(3)));
        let gb = groebner(&[f.clone(), g.clone()], O, &GroebnerCaps::default()).unwrap();
        let h = x(1).pow(3).add(&x(0).mul(&x(2)).mul(&x(3)));
        let nf = gb.normal_form(&h);
        assert_eq!(gb.normal_form(&nf), nf);
        let combo = f.mul(&x(2)).add(&g.mul(&x(1))).scale(&int(3));
        assert!(gb.contains(&combo));
    }

    #[test]
    fn unit_ideal_detected() {
        let one = Poly::constant(&Rationals, 4, O, int(1));
        let gb = groebner(&[x(0), x(0).sub(&one)], O, &GroebnerCaps::default()).unwrap();
        assert!(gb.is_one());
    }

    #[test]
    fn caps_are_reported() {
        let f = x(0).mul(&x(2)).sub(&x(1).mul(&x(1)));
        let g = x(1).mul(&x(3)).sub(&x(2).mul(&x(2)));
        let caps = GroebnerCaps { max_generators: 2, max_pairs: 10, ..GroebnerCaps::default() };
        assert_eq!(groebner(&[f, g, x(3).mul(&x(0))], O, &caps), Err(GroebnerError::TooManyGenerators(2)));
    }
}
