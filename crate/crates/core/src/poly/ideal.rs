use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use super::groebner::{groebner_basis, Budget, GroebnerBasis};
use super::multipoly::{divides, MultiPoly};
use super::order::MonomialOrder;
use super::space::{same_space, VarSpace};
use super::PolyError;
use crate::scalar::Scalar;

/// A polynomial ideal given by generators, optionally with a cached Gröbner basis.
#[derive(Debug, Clone)]
pub struct Ideal {
    space: Arc<VarSpace>,
    generators: Vec<MultiPoly>,
    basis: Option<GroebnerBasis>,
}

impl Ideal {
    pub fn new(space: &Arc<VarSpace>, generators: Vec<MultiPoly>) -> Result<Ideal, PolyError> {
        if generators.iter().any(|g| !same_space(g.space(), space)) {
            return Err(PolyError::SpaceMismatch);
        }
        Ok(Ideal {
            space: space.clone(),
            generators,
            basis: None,
        })
    }

    pub fn zero(space: &Arc<VarSpace>) -> Ideal {
        Ideal {
            space: space.clone(),
            generators: Vec::new(),
            basis: None,
        }
    }

    pub fn space(&self) -> &Arc<VarSpace> {
        &self.space
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn cached_basis(&self) -> Option<&GroebnerBasis> {
        self.basis.as_ref()
    }

    /// Copy of this ideal carrying a reduced Gröbner basis for `order`.
    pub fn groebner(&self, order: &MonomialOrder, budget: Budget) -> Result<Ideal, PolyError> {
        let gb = self.basis_for(order, budget)?;
        Ok(Ideal {
            space: self.space.clone(),
            generators: self.generators.clone(),
            basis: Some(gb),
        })
    }

    /// The cached basis if it uses `order`, else a fresh computation.
    pub fn basis_for(&self, order: &MonomialOrder, budget: Budget) -> Result<GroebnerBasis, PolyError> {
        match &self.basis {
            Some(b) if b.order() == order => Ok(b.clone()),
            _ => groebner_basis(&self.space, &self.generators, order, budget),
        }
    }

    /// Grevlex basis, cached or computed.
    pub fn basis(&self, budget: Budget) -> Result<GroebnerBasis, PolyError> {
        match &self.basis {
            Some(b) => Ok(b.clone()),
            None => self.basis_for(&MonomialOrder::GrevLex, budget),
        }
    }

    pub fn normal_form(&self, f: &MultiPoly, budget: Budget) -> Result<MultiPoly, PolyError> {
        self.basis(budget)?.normal_form(f)
    }

    pub fn contains(&self, f: &MultiPoly, budget: Budget) -> Result<bool, PolyError> {
        Ok(self.normal_form(f, budget)?.is_zero())
    }

    pub fn is_unit(&self, budget: Budget) -> Result<bool, PolyError> {
        Ok(self.basis(budget)?.is_unit())
    }

    /// The cached basis and the generators reduce to zero modulo each other.
    pub fn cache_is_consistent(&self, budget: Budget) -> Result<bool, PolyError> {
        let Some(b) = &self.basis else {
            return Ok(true);
        };
        for g in &self.generators {
            if !b.contains(g)? {
                return Ok(false);
            }
        }
        let fresh = groebner_basis(&self.space, &self.generators, b.order(), budget)?;
        for p in b.polys() {
            if !fresh.contains(p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Sum of ideals.
    pub fn plus(&self, extra: &[MultiPoly]) -> Result<Ideal, PolyError> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.space, gens)
    }

    /// Same generators moved into `target` by variable name.
    pub fn embed(&self, target: &Arc<VarSpace>) -> Result<Ideal, PolyError> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.embed(target))
            .collect::<Result<Vec<_>, _>>()?;
        Ideal::new(target, gens)
    }
}

/// f vanishes on V(I), decided by 1 ∈ I + (1 − w·f).
pub fn radical_membership(f: &MultiPoly, ideal: &Ideal, budget: Budget) -> Result<bool, PolyError> {
    if !same_space(f.space(), ideal.space()) {
        return Err(PolyError::SpaceMismatch);
    }
    if f.is_zero() {
        return Ok(true);
    }
    let mut w = "__w".to_string();
    while ideal.space().index_of(&w).is_some() {
        w.push('_');
    }
    let ext = ideal.space().with_aux(&[w])?;
    let mut gens = Vec::with_capacity(ideal.generators().len() + 1);
    for g in ideal.generators() {
        gens.push(g.embed(&ext)?);
    }
    let fe = f.embed(&ext)?;
    let wv = MultiPoly::var(&ext, ext.len() - 1);
    gens.push(&MultiPoly::one(&ext) - &(&wv * &fe));
    Ok(groebner_basis(&ext, &gens, &MonomialOrder::GrevLex, budget)?.is_unit())
}

/// I ∩ k[keep], computed with a block order eliminating the other variables.
pub fn eliminate(ideal: &Ideal, keep: &[usize], budget: Budget) -> Result<Ideal, PolyError> {
    let n = ideal.space().len();
    let keep_set: HashSet<usize> = keep.iter().copied().collect();
    let mask: Vec<bool> = (0..n).map(|i| !keep_set.contains(&i)).collect();
    let order = MonomialOrder::Block(mask);
    let gb = ideal.basis_for(&order, budget)?;
    let gens: Vec<MultiPoly> = gb
        .polys()
        .iter()
        .filter(|p| p.uses_only(|i| keep_set.contains(&i)))
        .cloned()
        .collect();
    Ideal::new(ideal.space(), gens)
}

/// (true, number of standard monomials) when V(I) is finite; the unit ideal gives (true, 0).
pub fn krull_dim_zero_check(ideal: &Ideal, budget: Budget) -> Result<(bool, Option<u64>), PolyError> {
    let gb = ideal.basis(budget)?;
    let lms = gb.leading_monomials();
    Ok(zero_dim_from_leading(&lms, ideal.space().len()))
}

pub(crate) fn zero_dim_from_leading(lms: &[Vec<u32>], n: usize) -> (bool, Option<u64>) {
    if lms.iter().any(|m| m.iter().all(|&e| e == 0)) {
        return (true, Some(0));
    }
    for i in 0..n {
        let pure = lms
            .iter()
            .any(|m| m[i] > 0 && m.iter().enumerate().all(|(j, &e)| j == i || e == 0));
        if !pure {
            return (false, None);
        }
    }
    // enumerate standard monomials from 1 upward
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut frontier = vec![vec![0u32; n]];
    seen.insert(vec![0; n]);
    while let Some(m) = frontier.pop() {
        for i in 0..n {
            let mut next = m.clone();
            next[i] += 1;
            if seen.contains(&next) || lms.iter().any(|l| divides(l, &next)) {
                continue;
            }
            seen.insert(next.clone());
            frontier.push(next);
        }
    }
    (true, Some(seen.len() as u64))
}

/// The monomial summands of f.
pub fn multigrade_decompose(f: &MultiPoly) -> Vec<MultiPoly> {
    f.sorted_terms(&MonomialOrder::GrevLex)
        .into_iter()
        .map(|(m, c)| MultiPoly::monomial(f.space(), m.clone(), c.clone()))
        .collect()
}

/// Monic gcd of two polynomials via the elimination ideal of (t·f, (1 − t)·g).
pub fn poly_gcd(f: &MultiPoly, g: &MultiPoly, budget: Budget) -> Result<MultiPoly, PolyError> {
    if f.is_zero() {
        return Ok(g.monic(&MonomialOrder::GrevLex));
    }
    if g.is_zero() {
        return Ok(f.monic(&MonomialOrder::GrevLex));
    }
    if f.is_constant() || g.is_constant() {
        return Ok(MultiPoly::one(f.space()));
    }
    let mut t = "__t".to_string();
    while f.space().index_of(&t).is_some() {
        t.push('_');
    }
    let ext = f.space().with_aux(&[t])?;
    let tv = MultiPoly::var(&ext, ext.len() - 1);
    let fe = f.embed(&ext)?;
    let ge = g.embed(&ext)?;
    let gens = vec![&tv * &fe, &(&MultiPoly::one(&ext) - &tv) * &ge];
    let ideal = Ideal::new(&ext, gens)?;
    let keep: Vec<usize> = (0..ext.len() - 1).collect();
    let lcm_ideal = eliminate(&ideal, &keep, budget)?;
    let l = lcm_ideal
        .generators()
        .iter()
        .min_by_key(|p| p.num_terms())
        .cloned()
        .expect("intersection of principal ideals is principal and nonzero");
    let l = l.embed(f.space())?;
    let prod = f * g;
    let q = prod
        .exact_div(&l)
        .expect("lcm divides the product");
    Ok(q.monic(&MonomialOrder::GrevLex))
}

/// Scalar helper: the ideal generated by x_i − p_i.
pub fn point_ideal(space: &Arc<VarSpace>, vars: &[usize], point: &[Scalar]) -> Ideal {
    let gens = vars
        .iter()
        .zip(point)
        .map(|(&i, p)| &MultiPoly::var(space, i) - &MultiPoly::constant(space, p.clone()))
        .collect();
    Ideal::new(space, gens).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(names: &[&str]) -> (Arc<VarSpace>, Vec<MultiPoly>) {
        let s = VarSpace::aux_only(names.iter().map(|s| s.to_string()).collect()).unwrap();
        let v = (0..names.len()).map(|i| MultiPoly::var(&s, i)).collect();
        (s, v)
    }

    #[test]
    fn radical_examples() {
        let (s, v) = setup(&["x", "y"]);
        let (x, y) = (&v[0], &v[1]);
        let b = Budget::default();
        let i = Ideal::new(&s, vec![x * x]).unwrap();
        assert!(radical_membership(x, &i, b).unwrap());
        assert!(!radical_membership(y, &i, b).unwrap());
        let j = Ideal::new(&s, vec![x * x, y * y]).unwrap();
        assert!(radical_membership(&(x + y), &j, b).unwrap());
    }

    #[test]
    fn elimination_examples() {
        let (s, v) = setup(&["x", "y", "z"]);
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let i = Ideal::new(&s, vec![y - &(x * x), z - &(&(x * x) * x)]).unwrap();
        let e = eliminate(&i, &[1, 2], Budget::default()).unwrap();
        let strs: Vec<String> = e.generators().iter().map(|p| p.to_string()).collect();
        assert_eq!(strs, vec!["y^3 - z^2"]);
        let one = MultiPoly::one(&s);
        let i = Ideal::new(&s, vec![x - &one]).unwrap();
        assert!(eliminate(&i, &[], Budget::default()).unwrap().generators().is_empty());

        let p = VarSpace::phase(2);
        let i = Ideal::new(&p, vec![MultiPoly::var(&p, 1), MultiPoly::var(&p, 2)]).unwrap();
        let e = eliminate(&i, &[0, 1], Budget::default()).unwrap();
        let strs: Vec<String> = e.generators().iter().map(|p| p.to_string()).collect();
        assert_eq!(strs, vec!["x2"]);
    }

    #[test]
    fn dimension_zero_examples() {
        let s = VarSpace::affine(2);
        let x1 = MultiPoly::var(&s, 0);
        let x2 = MultiPoly::var(&s, 1);
        let b = Budget::default();
        let i = Ideal::new(&s, vec![x1.clone(), x2.clone()]).unwrap();
        assert_eq!(krull_dim_zero_check(&i, b).unwrap(), (true, Some(1)));
        let i = Ideal::new(&s, vec![x1.clone()]).unwrap();
        assert_eq!(krull_dim_zero_check(&i, b).unwrap(), (false, None));
        let i = Ideal::new(&s, vec![&x1 * &x1, x2.clone()]).unwrap();
        assert_eq!(krull_dim_zero_check(&i, b).unwrap(), (true, Some(2)));
    }

    #[test]
    fn multigrade_examples() {
        let s = VarSpace::phase(2);
        let x1 = MultiPoly::var(&s, 0);
        let x2 = MultiPoly::var(&s, 1);
        let y1 = MultiPoly::var(&s, 2);
        let y2 = MultiPoly::var(&s, 3);
        let parts: Vec<String> = multigrade_decompose(&(&y1 + &y2)).iter().map(|p| p.to_string()).collect();
        assert_eq!(parts, vec!["y1", "y2"]);
        let f = (&(&x1 * &x1) * &y2).scale(&Scalar::from(3));
        assert_eq!(multigrade_decompose(&f), vec![f.clone()]);
        let g = &(&x1 * &y1) + &(&x2 * &y2);
        assert_eq!(multigrade_decompose(&g).len(), 2);
    }

    #[test]
    fn gcd_by_elimination() {
        let s = VarSpace::affine(2);
        let x1 = MultiPoly::var(&s, 0);
        let x2 = MultiPoly::var(&s, 1);
        let g = poly_gcd(&(&x1 * &x2), &(&x1 * &x1), Budget::default()).unwrap();
        assert_eq!(g, x1);
        let g = poly_gcd(&x1, &x2, Budget::default()).unwrap();
        assert!(g.is_constant());
    }
}
