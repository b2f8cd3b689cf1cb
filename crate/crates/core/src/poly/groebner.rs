//! Buchberger's algorithm with the Gebauer–Möller pair update and the normal
//! selection strategy.

use std::cmp::Ordering;
use std::sync::Arc;

use super::multipoly::{divides, lcm, MultiPoly};
use super::order::MonomialOrder;
use super::space::{same_space, VarSpace};
use super::PolyError;
use crate::scalar::Scalar;

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Upper bound on reduction steps for a single Gröbner computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget(u64::MAX)
    }
}

struct Meter {
    limit: u64,
    used: u64,
}

impl Meter {
    fn step(&mut self) -> Result<(), PolyError> {
        self.used += 1;
        if self.used > self.limit {
            Err(PolyError::BudgetExceeded(self.limit))
        } else {
            Ok(())
        }
    }
}

type Term = (Vec<u32>, Scalar);

/// Terms sorted by decreasing monomial; leading coefficient 1 once in a basis.
#[derive(Debug, Clone)]
struct GPoly {
    terms: Vec<Term>,
}

impl GPoly {
    fn from_multi(p: &MultiPoly, order: &MonomialOrder) -> GPoly {
        let mut terms: Vec<Term> = p.terms().iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        GPoly { terms }
    }

    fn to_multi(&self, space: &Arc<VarSpace>) -> MultiPoly {
        MultiPoly::from_terms(space, self.terms.iter().cloned())
    }

    fn lm(&self) -> &[u32] {
        &self.terms[0].0
    }

    fn make_monic(&mut self) {
        let inv = self.terms[0].1.inv().unwrap();
        if inv.is_one() {
            return;
        }
        for t in self.terms.iter_mut() {
            t.1 = &t.1 * &inv;
        }
    }

    fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0)
    }
}

/// a - c·x^shift·b over the tail slices (both sorted descending).
fn sub_scaled(order: &MonomialOrder, a: &[Term], c: &Scalar, shift: &[u32], b: &[Term]) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let shifted = |t: &Term| -> Vec<u32> { t.0.iter().zip(shift).map(|(x, y)| x + y).collect() };
    let mut i = 0;
    let mut j = 0;
    let mut bj = b.first().map(shifted);
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), &bj) {
            (Some(ta), Some(mb)) => order.cmp(&ta.0, mb),
            (Some(_), None) => Ordering::Greater,
            (None, _) => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let m = bj.take().unwrap();
                out.push((m, -&(c * &b[j].1)));
                j += 1;
                bj = b.get(j).map(shifted);
            }
            Ordering::Equal => {
                let v = &a[i].1 - &(c * &b[j].1);
                if !v.is_zero() {
                    out.push((bj.take().unwrap(), v));
                }
                i += 1;
                j += 1;
                bj = b.get(j).map(shifted);
            }
        }
    }
    out
}

fn find_divisor<'a>(basis: &'a [&GPoly], m: &[u32]) -> Option<&'a GPoly> {
    basis.iter().copied().find(|g| divides(g.lm(), m))
}

/// Full reduction of `p` by monic `basis`.
fn reduce(
    order: &MonomialOrder,
    mut p: Vec<Term>,
    basis: &[&GPoly],
    meter: &mut Meter,
) -> Result<Vec<Term>, PolyError> {
    let mut rem: Vec<Term> = Vec::new();
    let mut start = 0;
    while start < p.len() {
        let (m, c) = &p[start];
        match find_divisor(basis, m) {
            Some(g) => {
                meter.step()?;
                let shift: Vec<u32> = m.iter().zip(g.lm()).map(|(a, b)| a - b).collect();
                let c = c.clone();
                p = sub_scaled(order, &p[start + 1..], &c, &shift, &g.terms[1..]);
                start = 0;
            }
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    Ok(rem)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Vec<u32>,
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

struct Buchberger<'o> {
    order: &'o MonomialOrder,
    polys: Vec<GPoly>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Buchberger<'_> {
    fn active_refs(&self) -> Vec<&GPoly> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, &a)| a)
            .map(|(p, _)| p)
            .collect()
    }

    /// Gebauer–Möller installation of a new basis element.
    fn update(&mut self, h: GPoly) {
        let hi = self.polys.len();
        let h_lm = h.lm().to_vec();
        let mut c: Vec<Pair> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| Pair {
                i: g,
                j: hi,
                lcm: lcm(self.polys[g].lm(), &h_lm),
            })
            .collect();
        let mut d: Vec<(Pair, bool)> = Vec::new();
        while let Some(p) = (!c.is_empty()).then(|| c.remove(0)) {
            let cop = coprime(self.polys[p.i].lm(), &h_lm);
            let dominated = c.iter().any(|q| divides(&q.lcm, &p.lcm))
                || d.iter().any(|(q, _)| divides(&q.lcm, &p.lcm));
            if cop || !dominated {
                d.push((p, cop));
            }
        }
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(divides(&h_lm, &p.lcm)
                && lcm(polys[p.i].lm(), &h_lm) != p.lcm
                && lcm(polys[p.j].lm(), &h_lm) != p.lcm)
        });
        self.pairs.extend(d.into_iter().filter(|(_, cop)| !cop).map(|(p, _)| p));
        for g in 0..hi {
            if self.active[g] && divides(&h_lm, self.polys[g].lm()) {
                self.active[g] = false;
            }
        }
        self.polys.push(h);
        self.active.push(true);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = self.order;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let ord = order.cmp(&a.lcm, &b.lcm).then((a.j, a.i).cmp(&(b.j, b.i)));
            if ord == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> Vec<Term> {
        let f = &self.polys[p.i];
        let g = &self.polys[p.j];
        let sf: Vec<u32> = p.lcm.iter().zip(f.lm()).map(|(a, b)| a - b).collect();
        let sg: Vec<u32> = p.lcm.iter().zip(g.lm()).map(|(a, b)| a - b).collect();
        let left: Vec<Term> = f.terms[1..]
            .iter()
            .map(|(m, c)| (m.iter().zip(&sf).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        sub_scaled(self.order, &left, &Scalar::one(), &sg, &g.terms[1..])
    }
}

/// A reduced Gröbner basis together with its order.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    space: Arc<VarSpace>,
    order: MonomialOrder,
    polys: Vec<MultiPoly>,
    internal: Vec<GPoly>,
}

impl GroebnerBasis {
    pub fn space(&self) -> &Arc<VarSpace> {
        &self.space
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Basis elements, monic, sorted by decreasing leading monomial.
    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    pub fn is_unit(&self) -> bool {
        self.internal.len() == 1 && self.internal[0].is_constant()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.internal.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Vec<u32>> {
        self.internal.iter().map(|g| g.lm().to_vec()).collect()
    }

    pub fn normal_form(&self, f: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if !same_space(f.space(), &self.space) {
            return Err(PolyError::SpaceMismatch);
        }
        let refs: Vec<&GPoly> = self.internal.iter().collect();
        let mut meter = Meter {
            limit: u64::MAX,
            used: 0,
        };
        let rem = reduce(&self.order, GPoly::from_multi(f, &self.order).terms, &refs, &mut meter)?;
        Ok(MultiPoly::from_terms(&self.space, rem))
    }

    pub fn contains(&self, f: &MultiPoly) -> Result<bool, PolyError> {
        Ok(self.normal_form(f)?.is_zero())
    }
}

/// Reduced Gröbner basis of the ideal generated by `polys` in `space`.
pub fn groebner_basis(
    space: &Arc<VarSpace>,
    polys: &[MultiPoly],
    order: &MonomialOrder,
    budget: Budget,
) -> Result<GroebnerBasis, PolyError> {
    if polys.iter().any(|p| !same_space(p.space(), space)) {
        return Err(PolyError::SpaceMismatch);
    }
    let unit = |space: &Arc<VarSpace>| GroebnerBasis {
        space: space.clone(),
        order: order.clone(),
        polys: vec![MultiPoly::one(space)],
        internal: vec![GPoly {
            terms: vec![(vec![0; space.len()], Scalar::one())],
        }],
    };
    let mut meter = Meter {
        limit: budget.0,
        used: 0,
    };
    let mut inputs: Vec<GPoly> = polys
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| GPoly::from_multi(p, order))
        .collect();
    inputs.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let mut bb = Buchberger {
        order,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for p in inputs {
        let rem = reduce(order, p.terms, &bb.active_refs(), &mut meter)?;
        if rem.is_empty() {
            continue;
        }
        let mut h = GPoly { terms: rem };
        if h.is_constant() {
            return Ok(unit(space));
        }
        h.make_monic();
        bb.update(h);
    }
    while let Some(pair) = bb.next_pair() {
        let s = bb.spoly(&pair);
        let rem = reduce(order, s, &bb.active_refs(), &mut meter)?;
        if rem.is_empty() {
            continue;
        }
        let mut h = GPoly { terms: rem };
        if h.is_constant() {
            return Ok(unit(space));
        }
        h.make_monic();
        bb.update(h);
    }
    // interreduce the minimal basis
    let minimal: Vec<GPoly> = bb
        .polys
        .iter()
        .zip(&bb.active)
        .filter(|(_, &a)| a)
        .map(|(p, _)| p.clone())
        .collect();
    let mut reduced = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        let others: Vec<&GPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != k)
            .map(|(_, p)| p)
            .collect();
        let tail = reduce(order, g.terms[1..].to_vec(), &others, &mut meter)?;
        let mut terms = vec![g.terms[0].clone()];
        terms.extend(tail);
        reduced.push(GPoly { terms });
    }
    reduced.sort_by(|a, b| order.cmp(b.lm(), a.lm()));
    Ok(GroebnerBasis {
        space: space.clone(),
        order: order.clone(),
        polys: reduced.iter().map(|g| g.to_multi(space)).collect(),
        internal: reduced,
    })
}
