//! Polynomial differential forms on the first `dim` variables of a space.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{MonomialOrder, MultiPoly, PolyError, VarSpace};
use crate::scalar::Scalar;

/// A q-form Σ c_I dx_I with I strictly increasing (0-based indices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyForm {
    space: Arc<VarSpace>,
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, MultiPoly>,
}

/// Sign of the permutation sorting `idx`, or `None` on a repeated index.
fn sort_sign(idx: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = idx.to_vec();
    let mut neg = false;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                neg = !neg;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, neg))
}

/// Increasing index tuples of length k in 0..n.
pub fn index_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

impl PolyForm {
    pub fn zero(space: &Arc<VarSpace>, dim: usize, degree: usize) -> PolyForm {
        assert!(dim <= space.len());
        PolyForm {
            space: space.clone(),
            dim,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// The 0-form f.
    pub fn function(f: &MultiPoly, dim: usize) -> PolyForm {
        let mut w = PolyForm::zero(f.space(), dim, 0);
        w.add_term(Vec::new(), f.clone());
        w
    }

    /// c · dx_{idx[0]} ∧ … in any index order; repeated indices give zero.
    pub fn term(space: &Arc<VarSpace>, dim: usize, idx: &[usize], c: MultiPoly) -> PolyForm {
        let mut w = PolyForm::zero(space, dim, idx.len());
        assert!(idx.iter().all(|&i| i < dim));
        if let Some((sorted, neg)) = sort_sign(idx) {
            w.add_term(sorted, if neg { -&c } else { c });
        }
        w
    }

    /// dx_i
    pub fn differential(space: &Arc<VarSpace>, dim: usize, i: usize) -> PolyForm {
        PolyForm::term(space, dim, &[i], MultiPoly::one(space))
    }

    fn add_term(&mut self, idx: Vec<usize>, c: MultiPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.remove(&idx);
        let s = match entry {
            Some(old) => &old + &c,
            None => c,
        };
        if !s.is_zero() {
            self.coeffs.insert(idx, s);
        }
    }

    pub fn space(&self) -> &Arc<VarSpace> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &BTreeMap<Vec<usize>, MultiPoly> {
        &self.coeffs
    }

    pub fn coeff(&self, idx: &[usize]) -> MultiPoly {
        self.coeffs
            .get(idx)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(&self.space))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check(&self, other: &PolyForm) -> Result<()> {
        if self.space != other.space || self.dim != other.dim {
            return Err(PolyError::SpaceMismatch.into());
        }
        Ok(())
    }

    pub fn add(&self, other: &PolyForm) -> Result<PolyForm> {
        self.check(other)?;
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::InvalidInput("sum of forms of different degrees".into()));
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let mut out = self.clone();
        for (i, c) in &other.coeffs {
            out.add_term(i.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> PolyForm {
        self.mul_poly(&-&MultiPoly::one(&self.space))
    }

    pub fn sub(&self, other: &PolyForm) -> Result<PolyForm> {
        self.add(&other.neg())
    }

    /// f · ω
    pub fn mul_poly(&self, f: &MultiPoly) -> PolyForm {
        let mut out = PolyForm::zero(&self.space, self.dim, self.degree);
        for (i, c) in &self.coeffs {
            out.add_term(i.clone(), c * f);
        }
        out
    }

    /// ω ∧ η; beyond degree `dim` the result is the zero form.
    pub fn wedge(&self, other: &PolyForm) -> Result<PolyForm> {
        self.check(other)?;
        let mut out = PolyForm::zero(&self.space, self.dim, self.degree + other.degree);
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                let mut cat = i.clone();
                cat.extend_from_slice(j);
                if let Some((sorted, neg)) = sort_sign(&cat) {
                    let p = a * b;
                    out.add_term(sorted, if neg { -&p } else { p });
                }
            }
        }
        Ok(out)
    }

    /// Exterior derivative.
    pub fn d(&self) -> PolyForm {
        let mut out = PolyForm::zero(&self.space, self.dim, self.degree + 1);
        for (i, c) in &self.coeffs {
            for j in 0..self.dim {
                if i.contains(&j) {
                    continue;
                }
                let dc = c.partial(j);
                if dc.is_zero() {
                    continue;
                }
                let mut cat = vec![j];
                cat.extend_from_slice(i);
                let (sorted, neg) = sort_sign(&cat).unwrap();
                out.add_term(sorted, if neg { -&dc } else { dc });
            }
        }
        out
    }

    /// i_{∂_j} ω (the vector fills the first slot).
    pub fn contract_basis(&self, j: usize) -> PolyForm {
        let mut out = PolyForm::zero(&self.space, self.dim, self.degree.saturating_sub(1));
        if self.degree == 0 {
            return out;
        }
        for (i, c) in &self.coeffs {
            if let Some(pos) = i.iter().position(|&x| x == j) {
                let mut rest = i.clone();
                rest.remove(pos);
                out.add_term(rest, if pos % 2 == 1 { -c } else { c.clone() });
            }
        }
        out
    }

    /// i_{∂_J} ω for a basis multivector: slots are filled in the order of `idx`.
    pub fn contract_multi(&self, idx: &[usize]) -> PolyForm {
        let mut w = self.clone();
        for &j in idx {
            w = w.contract_basis(j);
        }
        w
    }

    /// i_ξ ω for a vector field with components on the `dim` differentials.
    pub fn interior(&self, xi: &[MultiPoly]) -> Result<PolyForm> {
        if xi.len() != self.dim {
            return Err(Error::SizeMismatch);
        }
        let mut out = PolyForm::zero(&self.space, self.dim, self.degree.saturating_sub(1));
        for (j, a) in xi.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if a.space() != &self.space {
                return Err(PolyError::SpaceMismatch.into());
            }
            let c = self.contract_basis(j).mul_poly(a);
            out = out.add(&c)?;
        }
        Ok(out)
    }

    fn display_index(&self, idx: &[usize]) -> String {
        idx.iter()
            .map(|&i| format!("d{}", self.space.name(i)))
            .collect::<Vec<_>>()
            .join("^")
    }
}

/// L_ξ ω = d(i_ξ ω) + i_ξ(dω).
pub fn lie_derivative(xi: &[MultiPoly], w: &PolyForm) -> Result<PolyForm> {
    let a = w.d().interior(xi)?;
    if w.degree() == 0 {
        return Ok(a);
    }
    let b = w.interior(xi)?.d();
    a.add(&b)
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, c) in &self.coeffs {
            let basis = self.display_index(idx);
            let wrapped = if idx.len() > 1 { format!("({basis})") } else { basis };
            let single = c.num_terms() == 1;
            let (neg, body) = if single {
                let neg = c.terms().values().next().unwrap().is_negative_for_print();
                (neg, if neg { -c } else { c.clone() })
            } else {
                (false, c.clone())
            };
            let text = if idx.is_empty() {
                body.to_string()
            } else if body.is_constant() && body.constant_value().unwrap().is_one() {
                wrapped
            } else if single {
                format!("{body}*{wrapped}")
            } else {
                format!("({body})*{wrapped}")
            };
            if first {
                write!(f, "{}{}", if neg { "-" } else { "" }, text)?;
                first = false;
            } else {
                write!(f, " {} {}", if neg { "-" } else { "+" }, text)?;
            }
        }
        Ok(())
    }
}

/// (i_{∂_J} ω) ∧ ω = 0 for every increasing J with |J| = q − 1.
pub fn is_distribution(w: &PolyForm) -> Result<bool> {
    if w.is_zero() {
        return Err(Error::ZeroForm);
    }
    if w.degree() == 0 {
        return Err(Error::InvalidInput("a distribution needs a form of degree at least 1".into()));
    }
    for j in index_tuples(w.dim(), w.degree() - 1) {
        if !w.contract_multi(&j).wedge(w)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Distribution test plus (i_{∂_J} ω) ∧ dω = 0.
pub fn is_integrable(w: &PolyForm) -> Result<bool> {
    if !is_distribution(w)? {
        return Err(Error::NotADistribution);
    }
    let dw = w.d();
    for j in index_tuples(w.dim(), w.degree() - 1) {
        if !w.contract_multi(&j).wedge(&dw)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// α = g·β for a rational function g, tested by the 2×2 coefficient minors.
pub fn proportional_forms(a: &PolyForm, b: &PolyForm) -> Result<bool> {
    if b.is_zero() {
        return Err(Error::ZeroForm);
    }
    a.check(b)?;
    if a.is_zero() {
        return Ok(true);
    }
    if a.degree() != b.degree() {
        return Ok(false);
    }
    let keys: BTreeSet<&Vec<usize>> = a.coeffs.keys().chain(b.coeffs.keys()).collect();
    let keys: Vec<&Vec<usize>> = keys.into_iter().collect();
    for (s, i) in keys.iter().enumerate() {
        for j in &keys[s + 1..] {
            let minor = &(&a.coeff(i) * &b.coeff(j)) - &(&a.coeff(j) * &b.coeff(i));
            if !minor.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// L_ξ ω proportional to ω (including L_ξ ω = 0).
pub fn is_infinitesimal_automorphism(xi: &[MultiPoly], w: &PolyForm) -> Result<bool> {
    if w.is_zero() {
        return Err(Error::ZeroForm);
    }
    proportional_forms(&lie_derivative(xi, w)?, w)
}

/// Pulls ω back by x_i ↦ t_i x_i over the space extended by t_1 … t_dim.
fn torus_pullback(w: &PolyForm) -> Result<(PolyForm, PolyForm)> {
    let n = w.dim();
    let mut names = Vec::with_capacity(n);
    for i in 1..=n {
        let mut t = format!("__t{i}");
        while w.space().index_of(&t).is_some() {
            t.push('_');
        }
        names.push(t);
    }
    let ext = w.space().with_aux(&names).map_err(Error::from)?;
    let base = w.space().len();
    let images: Vec<MultiPoly> = (0..w.space().len())
        .map(|i| {
            let xi = MultiPoly::var(&ext, i);
            if i < n {
                &MultiPoly::var(&ext, base + i) * &xi
            } else {
                xi
            }
        })
        .collect();
    let mut pulled = PolyForm::zero(&ext, n, w.degree());
    let mut same = PolyForm::zero(&ext, n, w.degree());
    for (idx, c) in w.coeffs() {
        let mut factor = MultiPoly::one(&ext);
        for &i in idx {
            factor = &factor * &MultiPoly::var(&ext, base + i);
        }
        pulled.add_term(idx.clone(), &c.compose(&ext, &images) * &factor);
        same.add_term(idx.clone(), c.embed(&ext).map_err(Error::from)?);
    }
    Ok((pulled, same))
}

pub fn is_torus_invariant_form(w: &PolyForm) -> Result<bool> {
    if w.is_zero() {
        return Err(Error::ZeroForm);
    }
    let (pulled, same) = torus_pullback(w)?;
    proportional_forms(&pulled, &same)
}

/// A coordinate subspace {x_i = 0 : i ∈ indices} contained in the singular set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularWitness {
    pub indices: Vec<usize>,
    pub dimension: usize,
    /// Every coefficient of ω vanishes identically on the subspace.
    pub verified: bool,
}

/// ω = h · Σ λ_I dx_I / x_I with h a polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogNormalForm {
    pub h: MultiPoly,
    pub lambdas: Vec<(Vec<usize>, Scalar)>,
    /// Ī: indices occurring in some I with λ_I ≠ 0.
    pub support: Vec<usize>,
    pub witness: Option<SingularWitness>,
}

impl LogNormalForm {
    pub fn k(&self) -> usize {
        self.support.len()
    }

    /// The invariant hyperplanes are {x_i = 0} for i in the support.
    pub fn hyperplanes(&self) -> &[usize] {
        &self.support
    }
}

pub fn logarithmic_normal_form(w: &PolyForm) -> Result<LogNormalForm> {
    if !is_torus_invariant_form(w)? {
        return Err(Error::NotTorusInvariant);
    }
    let space = w.space();
    let order = MonomialOrder::GrevLex;
    let products: Vec<(Vec<usize>, MultiPoly)> = w
        .coeffs()
        .iter()
        .map(|(idx, c)| {
            let mut p = c.clone();
            for &i in idx {
                p = &p * &MultiPoly::var(space, i);
            }
            (idx.clone(), p)
        })
        .collect();
    let h = products[0].1.monic(&order);
    let (_, h_lc) = h.leading_term(&order).unwrap();
    let h_lc = h_lc.clone();
    let mut lambdas = Vec::new();
    for (idx, p) in &products {
        let (_, lc) = p.leading_term(&order).unwrap();
        let lambda = lc.checked_div(&h_lc).unwrap();
        if *p != h.scale(&lambda) {
            let shown: Vec<String> = idx.iter().map(|i| space.name(*i).to_string()).collect();
            return Err(Error::NotLogarithmic(format!(
                "c_I*x_I for I = ({}) is not a scalar multiple of {}",
                shown.join(","),
                h
            )));
        }
        lambdas.push((idx.clone(), lambda));
    }
    let support: BTreeSet<usize> = lambdas.iter().flat_map(|(i, _)| i.iter().copied()).collect();
    let support: Vec<usize> = support.into_iter().collect();
    let n = w.dim();
    let q = w.degree();
    let witness = if support.len() > q && q + 2 <= n {
        let indices: Vec<usize> = support[..q + 1].to_vec();
        let verified = w.coeffs().values().all(|c| {
            indices
                .iter()
                .fold(c.clone(), |acc, &i| acc.substitute_scalar(i, &Scalar::zero()))
                .is_zero()
        });
        Some(SingularWitness {
            dimension: n - q - 1,
            indices,
            verified,
        })
    } else {
        None
    };
    Ok(LogNormalForm {
        h,
        lambdas,
        support,
        witness,
    })
}

/// Discriminant of Σ a_j u^{k−j} v^j as (−1)^{k(k−1)/2} Res(φ, ∂φ/∂u) / a_0,
/// computed for generic coefficients and then specialized.
pub fn binary_discriminant(coeffs: &[MultiPoly]) -> Result<MultiPoly> {
    let k = coeffs.len().saturating_sub(1);
    if k < 2 {
        return Err(Error::InvalidInput("a binary form of degree at least 2 is required".into()));
    }
    if coeffs.iter().all(|c| c.is_zero()) {
        return Err(Error::DegeneratePencil);
    }
    let target = coeffs[0].space().clone();
    if coeffs.iter().any(|c| c.space() != &target) {
        return Err(PolyError::SpaceMismatch.into());
    }
    let generic = generic_discriminant(k);
    Ok(generic.compose(&target, coeffs))
}

/// Discriminant in the generic coefficients A0 … Ak.
pub fn generic_discriminant(k: usize) -> MultiPoly {
    let names: Vec<String> = (0..=k).map(|j| format!("A{j}")).collect();
    let gs = VarSpace::aux_only(names).unwrap();
    // f(u) = Σ A_j u^{k−j}: coefficient list from the top degree down
    let f: Vec<MultiPoly> = (0..=k).map(|j| MultiPoly::var(&gs, j)).collect();
    let fp: Vec<MultiPoly> = (0..k)
        .map(|j| MultiPoly::var(&gs, j).scale(&Scalar::from((k - j) as i64)))
        .collect();
    let size = 2 * k - 1;
    let mut m: Vec<Vec<MultiPoly>> = vec![vec![MultiPoly::zero(&gs); size]; size];
    // k − 1 shifted rows of f, then k shifted rows of f'
    for r in 0..k - 1 {
        for (j, c) in f.iter().enumerate() {
            m[r][r + j] = c.clone();
        }
    }
    for r in 0..k {
        for (j, c) in fp.iter().enumerate() {
            m[k - 1 + r][r + j] = c.clone();
        }
    }
    let res = bareiss_det(m);
    let q = res.exact_div(&MultiPoly::var(&gs, 0)).expect("a_0 divides the resultant");
    if (k * (k - 1) / 2) % 2 == 1 {
        -&q
    } else {
        q
    }
}

/// Fraction-free determinant over a polynomial ring.
fn bareiss_det(mut m: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = m.len();
    let space = m[0][0].space().clone();
    let mut sign_neg = false;
    let mut prev = MultiPoly::one(&space);
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_neg = !sign_neg;
                }
                None => return MultiPoly::zero(&space),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_neg {
        -&det
    } else {
        det
    }
}

/// The canonical symplectic form Σ dx_i ∧ dy_i on a phase space.
pub fn symplectic_form(space: &Arc<VarSpace>) -> PolyForm {
    let n = space.n();
    let mut w = PolyForm::zero(space, 2 * n, 2);
    for i in 0..n {
        w.add_term(vec![space.x(i), space.y(i)], MultiPoly::one(space));
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Ctx {
        s: Arc<VarSpace>,
        n: usize,
    }

    impl Ctx {
        fn new(n: usize) -> Ctx {
            Ctx {
                s: VarSpace::affine(n),
                n,
            }
        }
        fn x(&self, i: usize) -> MultiPoly {
            MultiPoly::var(&self.s, i - 1)
        }
        fn c(&self, v: i64) -> MultiPoly {
            MultiPoly::constant(&self.s, Scalar::from(v))
        }
        fn dx(&self, idx: &[usize], c: MultiPoly) -> PolyForm {
            let idx: Vec<usize> = idx.iter().map(|i| i - 1).collect();
            PolyForm::term(&self.s, self.n, &idx, c)
        }
        fn sum(&self, parts: &[PolyForm]) -> PolyForm {
            parts.iter().skip(1).fold(parts[0].clone(), |a, b| a.add(b).unwrap())
        }
        fn field(&self, comps: &[MultiPoly]) -> Vec<MultiPoly> {
            comps.to_vec()
        }
    }

    #[test]
    fn basic_operations() {
        let c = Ctx::new(2);
        let w = c.dx(&[2], c.x(1));
        assert_eq!(w.d(), c.dx(&[1, 2], c.c(1)));
        let dx1 = c.dx(&[1], c.c(1));
        assert!(dx1.wedge(&dx1).unwrap().is_zero());
        assert_eq!(c.dx(&[1, 2], c.c(1)).contract_basis(0), c.dx(&[2], c.c(1)));
        assert_eq!(c.dx(&[2, 1], c.c(1)), c.dx(&[1, 2], c.c(-1)));
    }

    #[test]
    fn lie_derivative_examples() {
        let c = Ctx::new(2);
        let zero = c.c(0);
        let xi = c.field(&[c.x(1), zero.clone()]);
        let dx1 = c.dx(&[1], c.c(1));
        assert_eq!(lie_derivative(&xi, &dx1).unwrap(), dx1);
        let xi = c.field(&[c.c(1), zero.clone()]);
        let w = c.dx(&[2], c.x(1));
        assert_eq!(lie_derivative(&xi, &w).unwrap(), c.dx(&[2], c.c(1)));
        let z = PolyForm::zero(&c.s, 2, 1);
        assert!(lie_derivative(&xi, &z).unwrap().is_zero());
    }

    #[test]
    fn distributions_and_integrability() {
        let c = Ctx::new(4);
        let w = c.sum(&[c.dx(&[1, 2], c.c(1)), c.dx(&[3, 4], c.c(1))]);
        assert!(!is_distribution(&w).unwrap());
        assert!(is_distribution(&c.dx(&[1, 2], c.c(1))).unwrap());
        assert!(is_distribution(&c.dx(&[1], c.x(3))).unwrap());
        assert_eq!(is_integrable(&w), Err(Error::NotADistribution));

        let c = Ctx::new(3);
        let closed = c.sum(&[c.dx(&[1], c.x(1)), c.dx(&[2], c.x(2))]);
        assert!(is_integrable(&closed).unwrap());
        let contact = c.sum(&[c.dx(&[3], c.c(1)), c.dx(&[1], -&c.x(2))]);
        assert!(!is_integrable(&contact).unwrap());
        let w = c.sum(&[c.dx(&[1], c.c(1)), c.dx(&[2], c.x(1))]);
        assert!(is_integrable(&w).unwrap());
    }

    #[test]
    fn proportionality_examples() {
        let c = Ctx::new(2);
        let w = c.sum(&[c.dx(&[1], c.x(2)), c.dx(&[2], c.x(1))]);
        assert!(proportional_forms(&w.mul_poly(&c.x(1)), &w).unwrap());
        assert!(!proportional_forms(&c.dx(&[1], c.c(1)), &c.dx(&[2], c.c(1))).unwrap());
        let beta = c.sum(&[c.dx(&[1], &c.x(1) * &c.x(2)), c.dx(&[2], &c.x(1) * &c.x(1))]);
        assert!(proportional_forms(&w, &beta).unwrap());
        assert_eq!(proportional_forms(&w, &PolyForm::zero(&c.s, 2, 1)), Err(Error::ZeroForm));
    }

    #[test]
    fn automorphism_examples() {
        let c = Ctx::new(3);
        let zero = c.c(0);
        let xi = [c.c(1), zero.clone(), zero.clone()];
        assert!(is_infinitesimal_automorphism(&xi, &c.dx(&[2], c.c(1))).unwrap());
        let xi = [c.x(1), zero.clone(), zero.clone()];
        assert!(is_infinitesimal_automorphism(&xi, &c.dx(&[1], c.x(2))).unwrap());
        let radial = [c.x(1), c.x(2), c.x(3)];
        let contact = c.sum(&[c.dx(&[3], c.c(1)), c.dx(&[1], -&c.x(2))]);
        assert!(!is_infinitesimal_automorphism(&radial, &contact).unwrap());
    }

    #[test]
    fn torus_and_log_normal_form() {
        let c = Ctx::new(2);
        let w = c.sum(&[c.dx(&[1], c.x(2)), c.dx(&[2], c.x(1))]);
        assert!(is_torus_invariant_form(&w).unwrap());
        let w2 = c.sum(&[c.dx(&[1], c.c(1)), c.dx(&[2], c.c(1))]);
        assert!(!is_torus_invariant_form(&w2).unwrap());
        assert!(is_torus_invariant_form(&c.dx(&[1], c.c(1))).unwrap());

        let w = c.sum(&[c.dx(&[1], c.x(2).scale(&Scalar::from(2))), c.dx(&[2], c.x(1).scale(&Scalar::from(3)))]);
        let lnf = logarithmic_normal_form(&w).unwrap();
        assert_eq!(lnf.h.to_string(), "x1*x2");
        let l: Vec<String> = lnf.lambdas.iter().map(|(_, s)| s.to_string()).collect();
        assert_eq!(l, vec!["2", "3"]);
        let lnf = logarithmic_normal_form(&c.dx(&[1], c.x(2))).unwrap();
        assert_eq!(lnf.h.to_string(), "x1*x2");
        assert_eq!(lnf.lambdas.len(), 1);
        assert_eq!(logarithmic_normal_form(&w2), Err(Error::NotTorusInvariant));

        let c = Ctx::new(3);
        let w = c.sum(&[c.dx(&[1], &c.x(2) * &c.x(3)), c.dx(&[2], &c.x(1) * &c.x(3))]);
        let lnf = logarithmic_normal_form(&w).unwrap();
        assert_eq!(lnf.support, vec![0, 1]);
        assert_eq!(lnf.k(), 2);
        let wit = lnf.witness.unwrap();
        assert_eq!(wit.indices, vec![0, 1]);
        assert_eq!(wit.dimension, 1);
        assert!(wit.verified);
    }

    #[test]
    fn discriminants() {
        let s = VarSpace::aux_only(vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let v: Vec<MultiPoly> = (0..3).map(|i| MultiPoly::var(&s, i)).collect();
        assert_eq!(binary_discriminant(&v).unwrap().to_string(), "b^2 - 4*a*c");

        let c = Ctx::new(1);
        let d = binary_discriminant(&[c.c(1), c.c(0), -&(&c.x(1) * &c.x(1))]).unwrap();
        assert_eq!(d.to_string(), "4*x1^2");

        let s = VarSpace::aux_only(vec!["p".into(), "q".into()]).unwrap();
        let p = MultiPoly::var(&s, 0);
        let q = MultiPoly::var(&s, 1);
        let one = MultiPoly::one(&s);
        let zero = MultiPoly::zero(&s);
        let d = binary_discriminant(&[one, zero.clone(), p, q]).unwrap();
        assert_eq!(d.to_string(), "-4*p^3 - 27*q^2");
        assert_eq!(binary_discriminant(&[zero.clone(), zero.clone(), zero]), Err(Error::DegeneratePencil));
    }
}
