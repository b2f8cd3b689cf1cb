//! The Weyl algebra A_n of polynomial differential operators, its two
//! filtrations and their symbol maps.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::foliation::{characteristic_polynomial, PolyVectorField};
use crate::poly::{Ideal, MonomialOrder, MultiPoly, VarSpace};
use crate::scalar::Scalar;

/// Normally ordered: x^a ∂^b with all x's to the left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylOperator {
    space: Arc<VarSpace>,
    terms: BTreeMap<(Vec<u32>, Vec<u32>), Scalar>,
}

fn phase_space(space: &Arc<VarSpace>) -> Arc<VarSpace> {
    if space.has_y() && space.aux_vars().is_empty() {
        space.clone()
    } else {
        let ys = (1..=space.n()).map(|i| format!("y{i}")).collect();
        VarSpace::new(space.x_vars().to_vec(), ys, Vec::new()).expect("fresh y names")
    }
}

impl WeylOperator {
    pub fn zero(space: &Arc<VarSpace>) -> WeylOperator {
        WeylOperator {
            space: phase_space(space),
            terms: BTreeMap::new(),
        }
    }

    pub fn term(space: &Arc<VarSpace>, xexp: Vec<u32>, dexp: Vec<u32>, c: Scalar) -> WeylOperator {
        let mut w = WeylOperator::zero(space);
        assert_eq!(xexp.len(), w.n());
        assert_eq!(dexp.len(), w.n());
        w.add_term(xexp, dexp, c);
        w
    }

    pub fn constant(space: &Arc<VarSpace>, c: Scalar) -> WeylOperator {
        let n = space.n();
        WeylOperator::term(space, vec![0; n], vec![0; n], c)
    }

    pub fn x(space: &Arc<VarSpace>, i: usize) -> WeylOperator {
        let n = space.n();
        let mut e = vec![0; n];
        e[i] = 1;
        WeylOperator::term(space, e, vec![0; n], Scalar::one())
    }

    pub fn d(space: &Arc<VarSpace>, i: usize) -> WeylOperator {
        let n = space.n();
        let mut e = vec![0; n];
        e[i] = 1;
        WeylOperator::term(space, vec![0; n], e, Scalar::one())
    }

    /// Multiplication by a polynomial in the x-variables.
    pub fn from_poly(f: &MultiPoly) -> Result<WeylOperator> {
        let n = f.space().n();
        if !f.uses_only(|i| i < n) {
            return Err(Error::InvalidInput(format!("{f} is not a polynomial in x")));
        }
        let mut w = WeylOperator::zero(f.space());
        for (m, c) in f.terms() {
            w.add_term(m[..n].to_vec(), vec![0; n], c.clone());
        }
        Ok(w)
    }

    /// Σ a_i ∂_i.
    pub fn from_vector_field(xi: &PolyVectorField) -> WeylOperator {
        let mut w = WeylOperator::zero(xi.space());
        let n = xi.n();
        for (i, a) in xi.components().iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            for (m, c) in a.terms() {
                w.add_term(m[..n].to_vec(), e.clone(), c.clone());
            }
        }
        w
    }

    fn add_term(&mut self, xexp: Vec<u32>, dexp: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (xexp, dexp);
        let sum = match self.terms.get(&key) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    /// The phase space that receives symbols.
    pub fn space(&self) -> &Arc<VarSpace> {
        &self.space
    }

    pub fn terms(&self) -> &BTreeMap<(Vec<u32>, Vec<u32>), Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> WeylOperator {
        let mut w = WeylOperator::zero(&self.space);
        for ((a, b), v) in &self.terms {
            w.add_term(a.clone(), b.clone(), v * c);
        }
        w
    }

    pub fn add(&self, other: &WeylOperator) -> Result<WeylOperator> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch);
        }
        let mut w = self.clone();
        for ((a, b), v) in &other.terms {
            w.add_term(a.clone(), b.clone(), v.clone());
        }
        Ok(w)
    }

    pub fn sub(&self, other: &WeylOperator) -> Result<WeylOperator> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn pow(&self, e: u32) -> WeylOperator {
        let mut acc = WeylOperator::constant(&self.space, Scalar::one());
        for _ in 0..e {
            acc = weyl_mul(&acc, self).expect("same n");
        }
        acc
    }

    /// Action on k[x]; `f` lives in any space whose first n variables are x.
    pub fn apply(&self, f: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(f.space());
        for ((a, b), c) in &self.terms {
            let mut g = f.clone();
            for (i, &k) in b.iter().enumerate() {
                for _ in 0..k {
                    g = g.partial(i);
                }
            }
            let mut e = vec![0; f.space().len()];
            e[..a.len()].copy_from_slice(a);
            out = &out + &g.mul_term(&e, c);
        }
        out
    }

    /// Terms as phase-space monomials x^a y^b.
    fn as_phase_poly(&self, keep: impl Fn(&[u32], &[u32]) -> bool) -> MultiPoly {
        MultiPoly::from_terms(
            &self.space,
            self.terms.iter().filter(|((a, b), _)| keep(a, b)).map(|((a, b), c)| {
                let mut m = a.clone();
                m.extend(b.iter().copied());
                (m, c.clone())
            }),
        )
    }
}

fn binom(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::from(1);
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::from(1), |acc, i| acc * BigInt::from(i))
}

/// Normally ordered product, using ∂^s x^r = Σ_k C(s,k) C(r,k) k! x^{r−k} ∂^{s−k} per variable.
pub fn weyl_mul(a: &WeylOperator, b: &WeylOperator) -> Result<WeylOperator> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch);
    }
    let n = a.n();
    let mut out = WeylOperator::zero(&a.space);
    for ((ax, ad), ac) in &a.terms {
        for ((bx, bd), bc) in &b.terms {
            // expand ∂^{ad} x^{bx} variable by variable
            let mut partial: Vec<(Vec<u32>, Vec<u32>, BigInt)> = vec![(ax.clone(), vec![0; n], BigInt::from(1))];
            for i in 0..n {
                let (s, r) = (ad[i], bx[i]);
                let mut next = Vec::new();
                for (xe, de, w) in &partial {
                    for k in 0..=s.min(r) {
                        let coef = binom(s, k) * binom(r, k) * factorial(k);
                        let mut xe = xe.clone();
                        let mut de = de.clone();
                        xe[i] += r - k;
                        de[i] += s - k + bd[i];
                        next.push((xe, de, w * coef));
                    }
                }
                partial = next;
            }
            let c = ac * bc;
            for (xe, de, w) in partial {
                out.add_term(xe, de, &c * &Scalar::from(BigRational::from_integer(w)));
            }
        }
    }
    Ok(out)
}

impl fmt::Display for WeylOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let n = self.n();
        let poly = self.as_phase_poly(|_, _| true);
        for (k, (m, c)) in poly.sorted_terms(&MonomialOrder::GrevLex).into_iter().enumerate() {
            let neg = c.is_negative_for_print();
            let mag = if neg { -c } else { c.clone() };
            let mut factors = Vec::new();
            if !mag.is_one() || m.iter().all(|&e| e == 0) {
                factors.push(if mag.is_atomic_for_print() { mag.to_string() } else { format!("({mag})") });
            }
            for (i, &e) in m[..n].iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.space.name(i).to_string()),
                    _ => factors.push(format!("{}^{e}", self.space.name(i))),
                }
            }
            for (i, &e) in m[n..].iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("d{}", i + 1)),
                    _ => factors.push(format!("d{}^{e}", i + 1)),
                }
            }
            let body = factors.join("*");
            match (k == 0, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

/// (k, σ_k): top part for the Bernstein filtration, ∂_i ↦ y_i.
pub fn bernstein_symbol(d: &WeylOperator) -> Result<(u32, MultiPoly)> {
    let deg = |a: &[u32], b: &[u32]| a.iter().chain(b).sum::<u32>();
    let k = d.terms.keys().map(|(a, b)| deg(a, b)).max().ok_or(Error::ZeroOperator)?;
    Ok((k, d.as_phase_poly(|a, b| deg(a, b) == k)))
}

/// (m, symbol): top part for the order filtration, ∂_i ↦ y_i.
pub fn principal_symbol(d: &WeylOperator) -> Result<(u32, MultiPoly)> {
    let ord = |b: &[u32]| b.iter().sum::<u32>();
    let m = d.terms.keys().map(|(_, b)| ord(b)).max().ok_or(Error::ZeroOperator)?;
    Ok((m, d.as_phase_poly(|_, b| ord(b) == m)))
}

#[derive(Debug, Clone)]
pub struct PrincipalCharVariety {
    pub order: u32,
    pub symbol: MultiPoly,
    pub ideal: Ideal,
    /// The order-one part read as a vector field, when the order is 1.
    pub field: Option<PolyVectorField>,
    /// symbol = characteristic polynomial of `field`.
    pub matches_foliation: Option<bool>,
}

/// ch(A_n/A_n·d) = {σ(d) = 0}.
pub fn charvariety_of_principal_ideal(d: &WeylOperator) -> Result<PrincipalCharVariety> {
    let (order, symbol) = principal_symbol(d)?;
    let ideal = Ideal::new(&d.space, vec![symbol.clone()])?;
    let mut field = None;
    let mut matches = None;
    if order == 1 {
        let n = d.n();
        let comps: Vec<MultiPoly> = (0..n)
            .map(|i| {
                MultiPoly::from_terms(
                    &d.space,
                    d.terms.iter().filter(|((_, b), _)| b[i] == 1 && b.iter().sum::<u32>() == 1).map(|((a, _), c)| {
                        let mut m = a.clone();
                        m.extend(std::iter::repeat(0).take(n));
                        (m, c.clone())
                    }),
                )
            })
            .collect();
        let xi = PolyVectorField::new(&d.space, comps)?;
        matches = Some(characteristic_polynomial(&xi).p == symbol);
        field = Some(xi);
    }
    Ok(PrincipalCharVariety {
        order,
        symbol,
        ideal,
        field,
        matches_foliation: matches,
    })
}
