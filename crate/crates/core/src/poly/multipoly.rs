use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::order::MonomialOrder;
use super::space::{same_space, VarSpace};
use super::PolyError;
use crate::scalar::{NumberField, Scalar};

/// Sparse polynomial over [`Scalar`] in the variables of a [`VarSpace`].
#[derive(Debug, Clone)]
pub struct MultiPoly {
    space: Arc<VarSpace>,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space) && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl Hash for MultiPoly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
    /// ∂/∂ of the variable with this index.
    Partial(usize),
}

/// Checked arithmetic entry point; the operator impls panic on mismatched spaces instead.
pub fn poly_arith(f: &MultiPoly, g: &MultiPoly, kind: PolyOp) -> Result<MultiPoly, PolyError> {
    match kind {
        PolyOp::Partial(i) => {
            if i >= f.space.len() {
                return Err(PolyError::UnknownVariable(format!("#{i}")));
            }
            Ok(f.partial(i))
        }
        _ if !same_space(&f.space, &g.space) => Err(PolyError::SpaceMismatch),
        PolyOp::Add => Ok(f + g),
        PolyOp::Mul => Ok(f * g),
    }
}

impl MultiPoly {
    pub fn zero(space: &Arc<VarSpace>) -> Self {
        MultiPoly {
            space: space.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(space: &Arc<VarSpace>, c: Scalar) -> Self {
        let mut p = MultiPoly::zero(space);
        if !c.is_zero() {
            p.terms.insert(vec![0; space.len()], c);
        }
        p
    }

    pub fn one(space: &Arc<VarSpace>) -> Self {
        MultiPoly::constant(space, Scalar::one())
    }

    pub fn var(space: &Arc<VarSpace>, i: usize) -> Self {
        let mut e = vec![0; space.len()];
        e[i] = 1;
        MultiPoly::monomial(space, e, Scalar::one())
    }

    pub fn monomial(space: &Arc<VarSpace>, exps: Vec<u32>, c: Scalar) -> Self {
        assert_eq!(exps.len(), space.len());
        let mut p = MultiPoly::zero(space);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// Sums the given terms; repeated exponents accumulate.
    pub fn from_terms(
        space: &Arc<VarSpace>,
        terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>,
    ) -> Self {
        let mut p = MultiPoly::zero(space);
        for (m, c) in terms {
            assert_eq!(m.len(), space.len());
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn space(&self) -> &Arc<VarSpace> {
        &self.space
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Scalar> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Scalar> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(Scalar::zero))
    }

    pub fn coeff(&self, exps: &[u32]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    /// Largest combined degree in the given variables.
    pub fn degree_in(&self, vars: &[usize]) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| vars.iter().map(|&i| m[i]).sum())
            .max()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.values().all(|c| c.is_rational())
    }

    pub fn field(&self) -> Option<Arc<NumberField>> {
        self.terms.values().find_map(|c| c.field().cloned())
    }

    /// True when only the flagged variables occur.
    pub fn uses_only(&self, allowed: impl Fn(usize) -> bool) -> bool {
        self.terms
            .keys()
            .all(|m| m.iter().enumerate().all(|(i, &e)| e == 0 || allowed(i)))
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.space);
        }
        MultiPoly {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by the single term c·x^exps.
    pub fn mul_term(&self, exps: &[u32], c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.space);
        }
        MultiPoly {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.iter().zip(exps).map(|(a, b)| a + b).collect(), x * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.space);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial(&self, i: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.space);
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2[i] -= 1;
            out.add_term(m2, c * &Scalar::from(m[i] as i64));
        }
        out
    }

    /// Sets variable `i` to the scalar `v`.
    pub fn substitute_scalar(&self, i: usize, v: &Scalar) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.space);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let e = std::mem::replace(&mut m2[i], 0);
            out.add_term(m2, c * &v.pow(e));
        }
        out
    }

    /// Replaces variable `i` by the polynomial `g` of the same space.
    pub fn substitute(&self, i: usize, g: &MultiPoly) -> MultiPoly {
        assert!(same_space(&self.space, &g.space));
        let mut by_power: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let e = std::mem::replace(&mut m2[i], 0);
            by_power
                .entry(e)
                .or_insert_with(|| MultiPoly::zero(&self.space))
                .add_term(m2, c.clone());
        }
        let mut out = MultiPoly::zero(&self.space);
        let mut gp = MultiPoly::one(&self.space);
        let mut current = 0;
        for (e, part) in by_power {
            while current < e {
                gp = &gp * g;
                current += 1;
            }
            out = &out + &(&part * &gp);
        }
        out
    }

    /// Evaluates at a full point.
    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.space.len());
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Simultaneous substitution: variable i goes to `images[i]` (all in `target`).
    pub fn compose(&self, target: &Arc<VarSpace>, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.space.len());
        let mut cache: Vec<Vec<MultiPoly>> = vec![vec![MultiPoly::one(target)]; images.len()];
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = cache[i].last().unwrap() * &images[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][e as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Moves the polynomial into `target`, matching variables by name.
    pub fn embed(&self, target: &Arc<VarSpace>) -> Result<MultiPoly, PolyError> {
        if same_space(&self.space, target) {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.space.len());
        for name in self.space.names() {
            map.push(target.index_of(name));
        }
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut m2 = vec![0; target.len()];
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => m2[j] = e,
                    None => return Err(PolyError::UnknownVariable(self.space.name(i).to_string())),
                }
            }
            out.add_term(m2, c.clone());
        }
        Ok(out)
    }

    /// Terms satisfying `keep`.
    pub fn filter_terms(&self, keep: impl Fn(&[u32]) -> bool) -> MultiPoly {
        MultiPoly {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Homogeneous components with respect to the degree in `vars`.
    pub fn components_in(&self, vars: &[usize]) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let d: u32 = vars.iter().map(|&i| m[i]).sum();
            out.entry(d)
                .or_insert_with(|| MultiPoly::zero(&self.space))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Total-degree homogeneous part of degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> MultiPoly {
        self.filter_terms(|m| m.iter().sum::<u32>() == d)
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Vec<u32>, &Scalar)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp(a, b))
    }

    /// Divides by the leading coefficient for `order`.
    pub fn monic(&self, order: &MonomialOrder) -> MultiPoly {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inv().unwrap();
                self.scale(&inv)
            }
        }
    }

    /// Exact quotient self / g, or `None` if g does not divide self.
    pub fn exact_div(&self, g: &MultiPoly) -> Option<MultiPoly> {
        assert!(same_space(&self.space, &g.space));
        let order = MonomialOrder::GrevLex;
        let (gm, gc) = g.leading_term(&order)?;
        let (gm, gc_inv) = (gm.clone(), gc.inv().unwrap());
        let mut p = self.clone();
        let mut q = MultiPoly::zero(&self.space);
        while let Some((pm, pc)) = p.leading_term(&order) {
            if !pm.iter().zip(&gm).all(|(a, b)| a >= b) {
                return None;
            }
            let m: Vec<u32> = pm.iter().zip(&gm).map(|(a, b)| a - b).collect();
            let c = pc * &gc_inv;
            p = &p - &g.mul_term(&m, &c);
            q.add_term(m, c);
        }
        Some(q)
    }

    /// Terms sorted descending by grevlex, the canonical print order.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Vec<u32>, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| order.cmp(b, a));
        v
    }

    fn monomial_string(&self, m: &[u32]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.space.name(i).to_string()),
                _ => parts.push(format!("{}^{}", self.space.name(i), e)),
            }
        }
        parts.join("*")
    }
}

fn term_string(coeff: &Scalar, mono: &str) -> String {
    if mono.is_empty() {
        return coeff.to_string();
    }
    if coeff.is_one() {
        return mono.to_string();
    }
    if *coeff == Scalar::from(-1) {
        return format!("-{mono}");
    }
    format!("{coeff}*{mono}")
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.sorted_terms(&MonomialOrder::GrevLex).into_iter().enumerate() {
            let mono = self.monomial_string(m);
            if k == 0 {
                write!(f, "{}", term_string(c, &mono))?;
            } else if c.is_negative_for_print() {
                write!(f, " - {}", term_string(&-c, &mono))?;
            } else {
                write!(f, " + {}", term_string(c, &mono))?;
            }
        }
        Ok(())
    }
}

fn check_space(a: &MultiPoly, b: &MultiPoly) {
    assert!(
        same_space(&a.space, &b.space),
        "polynomial arithmetic across different variable spaces"
    );
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        check_space(self, rhs);
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        check_space(self, rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        check_space(self, rhs);
        let mut out = MultiPoly::zero(&self.space);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m: Vec<u32> = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

/// Comparison helper shared with the Gröbner code.
pub(crate) fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}
