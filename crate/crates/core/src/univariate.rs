//! Dense univariate polynomials over [`Scalar`], plus exact rational root isolation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

/// Coefficients lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_rationals(c: &[BigRational]) -> Self {
        UniPoly::new(c.iter().cloned().map(Scalar::Rat).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        UniPoly::new(vec![c])
    }

    /// t - r
    pub fn linear_root(r: &Scalar) -> Self {
        UniPoly::new(vec![-r, Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_rational())
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &Scalar) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> UniPoly {
        match self.lead().inv() {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Scalar::from(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Quotient and remainder; panics on division by the zero polynomial.
    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lead().inv().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut q = vec![Scalar::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&c * dc);
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.divrem(d).1
    }

    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = gcd(self, &self.derivative());
        self.divrem(&g).0.monic()
    }

    /// Multiplicity of `r` as a root.
    pub fn root_multiplicity(&self, r: &Scalar) -> usize {
        let lin = UniPoly::linear_root(r);
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() {
            let (q, rem) = p.divrem(&lin);
            if !rem.is_zero() {
                break;
            }
            p = q;
            m += 1;
        }
        m
    }

    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative_for_print();
            let abs = if neg { -c } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_in("t"))
    }
}

/// Monic gcd; gcd(0, 0) = 0.
pub fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let r = a.rem(&b);
        a = b;
        b = r;
    }
    a.monic()
}

/// Returns (g, s, t) with s·a + t·b = g, g monic.
pub fn ext_gcd(a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (UniPoly::constant(Scalar::one()), UniPoly::zero());
    let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::constant(Scalar::one()));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1);
        let s = s0.sub(&q.mul(&s1));
        let t = t0.sub(&q.mul(&t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    match r0.lead().inv() {
        Some(inv) => (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)),
        None => (r0, s0, t0),
    }
}

fn to_integer_coeffs(p: &UniPoly) -> Vec<BigInt> {
    let rats: Vec<BigRational> = p
        .coeffs()
        .iter()
        .map(|c| c.as_rational().expect("rational coefficients required"))
        .collect();
    let l = rats.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    rats.iter()
        .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
        .collect()
}

/// Sign of 2^deg · q(a + 1/2), evaluated by homogeneous Horner on (2a + 1, 2).
fn sign_at_half(q: &[BigInt], a: &BigInt) -> i8 {
    let x = BigInt::from(2) * a + 1;
    let mut acc = BigInt::zero();
    let mut two_pow = BigInt::one();
    for c in q.iter().rev() {
        acc = acc * &x + c * &two_pow;
        two_pow *= 2;
    }
    if acc.is_positive() {
        1
    } else if acc.is_negative() {
        -1
    } else {
        0
    }
}

fn sturm_variations(chain: &[Vec<BigInt>], a: &BigInt) -> usize {
    let mut last = 0i8;
    let mut v = 0;
    for p in chain {
        let s = sign_at_half(p, a);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

/// Distinct rational roots of a polynomial with rational coefficients,
/// in increasing order. Exact: Sturm isolation on the monic integer transform.
pub fn rational_roots(p: &UniPoly) -> Vec<BigRational> {
    assert!(p.is_rational(), "rational_roots needs rational coefficients");
    let mut roots = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return roots;
    }
    let mut sq = p.squarefree_part();
    if sq.coeff(0).is_zero() {
        roots.push(BigRational::zero());
        sq = sq.divrem(&UniPoly::linear_root(&Scalar::zero())).0;
    }
    if sq.degree().unwrap_or(0) == 0 {
        return roots;
    }
    let ints = to_integer_coeffs(&sq);
    let n = ints.len() - 1;
    let lead = ints[n].clone();
    // q(s) = lead^(n-1) p(s / lead) is monic with integer coefficients.
    let mut q = Vec::with_capacity(n + 1);
    for (i, c) in ints.iter().enumerate() {
        if i == n {
            q.push(BigInt::one());
        } else {
            q.push(c * num_traits::pow(lead.clone(), n - 1 - i));
        }
    }
    let qpoly = UniPoly::new(
        q.iter()
            .map(|c| Scalar::Rat(BigRational::from_integer(c.clone())))
            .collect(),
    );
    // Sturm chain
    let mut chain_polys = vec![qpoly.clone(), qpoly.derivative()];
    loop {
        let len = chain_polys.len();
        let r = chain_polys[len - 2].rem(&chain_polys[len - 1]);
        if r.is_zero() {
            break;
        }
        chain_polys.push(r.scale(&Scalar::from(-1)));
    }
    // to_integer_coeffs scales by a positive integer, so signs are kept.
    let chain: Vec<Vec<BigInt>> = chain_polys.iter().map(to_integer_coeffs).collect();
    let bound = q.iter().map(|c| c.abs()).max().unwrap() + BigInt::one();
    // Intervals (a + 1/2, b + 1/2] with integer a < b.
    let mut stack = vec![(-bound.clone() - 1, bound.clone())];
    let mut int_roots = Vec::new();
    while let Some((a, b)) = stack.pop() {
        let count = sturm_variations(&chain, &a) as i64 - sturm_variations(&chain, &b) as i64;
        if count <= 0 {
            continue;
        }
        if &b - &a == BigInt::one() {
            let cand = Scalar::Rat(BigRational::from_integer(b.clone()));
            if qpoly.eval(&cand).is_zero() {
                int_roots.push(b);
            }
            continue;
        }
        let mid = (&a + &b).div_floor(&BigInt::from(2));
        stack.push((a, mid.clone()));
        stack.push((mid, b));
    }
    for s in int_roots {
        roots.push(BigRational::new(s, lead.clone()));
    }
    roots.sort();
    roots
}
