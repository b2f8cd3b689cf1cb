//! Exact scalars: rationals and elements of a simple number field ℚ(α).
//!
//! A [`Scalar`] is either a plain rational or an element of a declared
//! [`NumberField`]. Elements whose coordinates on α, α², … all vanish are
//! always stored as rationals, so structural equality is field equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::linalg;
use crate::univariate::{self, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("minimal polynomial must be monic of degree at least 1")]
    NotMonic,
    #[error("minimal polynomial is not squarefree")]
    NotSquarefree,
    #[error("minimal polynomial has the rational root {0}")]
    RationalRootFound(String),
    #[error("minimal polynomial is reducible: {0}")]
    ReducibleDetected(String),
    #[error("irreducibility of a degree {0} minimal polynomial cannot be screened; pass --assume-irreducible")]
    AttestationRequired(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different number fields")]
    FieldMismatch,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A simple algebraic extension ℚ(α) given by the monic minimal polynomial of α.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberField {
    name: String,
    /// Coefficients, lowest degree first; the last entry is 1.
    min_poly: Vec<BigRational>,
}

impl NumberField {
    /// Validates `min_poly` (lowest degree first) and builds the field.
    ///
    /// Irreducibility is screened, not proven: squarefreeness, the rational
    /// root test and, up to degree 4, an exhaustive split into monic integer
    /// quadratics. Degree 5 and above is accepted only with `assume_irreducible`.
    pub fn new(
        name: &str,
        min_poly: Vec<BigRational>,
        assume_irreducible: bool,
    ) -> Result<Arc<NumberField>, FieldError> {
        let mut min_poly = min_poly;
        while min_poly.len() > 1 && min_poly.last().is_some_and(|c| c.is_zero()) {
            min_poly.pop();
        }
        if min_poly.len() < 2 || !min_poly.last().unwrap().is_one() {
            return Err(FieldError::NotMonic);
        }
        let degree = min_poly.len() - 1;
        let as_uni = UniPoly::from_rationals(&min_poly);
        if univariate::gcd(&as_uni, &as_uni.derivative()).degree() != Some(0) {
            return Err(FieldError::NotSquarefree);
        }
        if degree >= 2 {
            if let Some(r) = univariate::rational_roots(&as_uni).into_iter().next() {
                return Err(FieldError::RationalRootFound(r.to_string()));
            }
        }
        if degree == 4 {
            if let Some((a, b)) = quadratic_pair_split(&min_poly) {
                return Err(FieldError::ReducibleDetected(format!("({a})*({b})")));
            }
        }
        if degree >= 5 && !assume_irreducible {
            return Err(FieldError::AttestationRequired(degree));
        }
        Ok(Arc::new(NumberField {
            name: name.to_string(),
            min_poly,
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    pub fn min_poly(&self) -> &[BigRational] {
        &self.min_poly
    }

    pub fn min_poly_string(&self) -> String {
        UniPoly::from_rationals(&self.min_poly).to_string_in(&self.name)
    }

    pub fn generator(self: &Arc<Self>) -> Scalar {
        let mut coords = vec![BigRational::zero(); self.degree()];
        if self.degree() == 1 {
            coords[0] = -self.min_poly[0].clone();
        } else {
            coords[1] = BigRational::one();
        }
        Scalar::from_coords(self, coords)
    }

    /// Element with the given coordinates in the basis 1, α, α², …
    /// Longer coordinate vectors are reduced modulo the minimal polynomial.
    pub fn element(self: &Arc<Self>, coords: Vec<BigRational>) -> Scalar {
        let reduced = self.reduce(coords);
        Scalar::from_coords(self, reduced)
    }

    fn reduce(&self, mut p: Vec<BigRational>) -> Vec<BigRational> {
        let d = self.degree();
        while p.len() > d {
            let top = p.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = p.len() - d;
            for (i, c) in self.min_poly[..d].iter().enumerate() {
                p[shift + i] -= &top * c;
            }
        }
        p.resize(d, BigRational::zero());
        p
    }

    fn mul_coords(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.reduce(out)
    }

    /// Inverse by the extended Euclidean algorithm against the minimal polynomial.
    fn inv_coords(&self, a: &[BigRational]) -> Option<Vec<BigRational>> {
        let a = UniPoly::from_rationals(a);
        let m = UniPoly::from_rationals(&self.min_poly);
        let (g, s, _) = univariate::ext_gcd(&a, &m);
        if g.degree() != Some(0) {
            return None;
        }
        let c = g.coeff(0).inv()?;
        let s = s.scale(&c);
        Some(self.reduce(s.coeffs().iter().map(|c| c.as_rational().unwrap()).collect()))
    }
}

/// Free-function form of [`NumberField::new`].
pub fn make_number_field(
    name: &str,
    min_poly: Vec<BigRational>,
    assume_irreducible: bool,
) -> Result<Arc<NumberField>, FieldError> {
    NumberField::new(name, min_poly, assume_irreducible)
}

/// Tries to write a monic quartic as a product of two monic quadratics over ℚ.
fn quadratic_pair_split(min_poly: &[BigRational]) -> Option<(String, String)> {
    // Scale t = s / D so the quartic becomes a monic integer polynomial.
    let denom = min_poly
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let d = BigRational::from_integer(denom.clone());
    let mut m = Vec::with_capacity(5);
    for (i, c) in min_poly.iter().enumerate() {
        let scaled = c * num_traits::pow(d.clone(), 4 - i);
        m.push(scaled.to_integer());
    }
    let (m0, m1, m2, m3) = (&m[0], &m[1], &m[2], &m[3]);
    if m0.is_zero() {
        return None;
    }
    // Mignotte bound on the coefficients of a factor.
    let norm2: BigInt = m.iter().map(|c| c * c).sum();
    let bound = norm2.sqrt() + BigInt::one();
    let abs0 = m0.abs();
    let mut divisors = Vec::new();
    let mut k = BigInt::one();
    while &k * &k <= abs0 && k <= bound {
        if (&abs0 % &k).is_zero() {
            divisors.push(k.clone());
            let other = &abs0 / &k;
            if other != k && other <= bound {
                divisors.push(other);
            }
        }
        k += 1;
    }
    for base in divisors {
        for c in [base.clone(), -base] {
            let c2 = m0 / &c;
            // (s^2 + b s + c)(s^2 + b' s + c2) with b + b' = m3, c + c2 + b b' = m2.
            // b^2 - m3 b + (m2 - c - c2) = 0
            let disc = m3 * m3 - BigInt::from(4) * (m2 - &c - &c2);
            if disc.is_negative() {
                continue;
            }
            let root = disc.sqrt();
            if &root * &root != disc {
                continue;
            }
            for r in [root.clone(), -root.clone()] {
                let twice = m3 + r;
                if twice.is_odd() {
                    continue;
                }
                let b = twice / 2;
                let b2 = m3 - &b;
                if &b * &c2 + &b2 * &c == *m1 {
                    let fmt_factor = |b: &BigInt, c: &BigInt| {
                        // back to t: s = D t, divide by D^2
                        let dd = &d * &d;
                        let coeffs = vec![
                            BigRational::from_integer(c.clone()) / &dd,
                            BigRational::from_integer(b.clone()) / &d,
                            BigRational::one(),
                        ];
                        UniPoly::from_rationals(&coeffs).to_string_in("t")
                    };
                    return Some((fmt_factor(&b, &c), fmt_factor(&b2, &c2)));
                }
            }
        }
    }
    None
}

/// Element of a number field, coordinates on 1, α, …, α^{d-1}.
#[derive(Debug, Clone)]
pub struct NfElement {
    field: Arc<NumberField>,
    coords: Vec<BigRational>,
}

impl NfElement {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }
}

fn same_field(a: &Arc<NumberField>, b: &Arc<NumberField>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Exact scalar of ℚ or of a declared ℚ(α).
#[derive(Debug, Clone)]
pub enum Scalar {
    Rat(BigRational),
    Alg(NfElement),
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a == b,
            (Scalar::Alg(a), Scalar::Alg(b)) => same_field(&a.field, &b.field) && a.coords == b.coords,
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Scalar::Rat(r) => {
                0u8.hash(state);
                r.hash(state);
            }
            Scalar::Alg(e) => {
                1u8.hash(state);
                e.coords.hash(state);
            }
        }
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rat(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::Rat(int(n))
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(BigRational::one())
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::Rat(rat(n, d))
    }

    fn from_coords(field: &Arc<NumberField>, coords: Vec<BigRational>) -> Self {
        if coords.iter().skip(1).all(|c| c.is_zero()) {
            Scalar::Rat(coords.into_iter().next().unwrap_or_else(BigRational::zero))
        } else {
            Scalar::Alg(NfElement {
                field: field.clone(),
                coords,
            })
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_one())
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rat(_))
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rat(r) => Some(r.clone()),
            Scalar::Alg(_) => None,
        }
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Alg(e) => Some(&e.field),
        }
    }

    /// Coordinates padded to length `d` (rationals sit in the first slot).
    pub fn coords(&self, d: usize) -> Vec<BigRational> {
        let mut out = match self {
            Scalar::Rat(r) => vec![r.clone()],
            Scalar::Alg(e) => e.coords.clone(),
        };
        out.resize(d.max(out.len()), BigRational::zero());
        out
    }

    fn lift_pair(&self, other: &Scalar) -> Option<(Arc<NumberField>, Vec<BigRational>, Vec<BigRational>)> {
        let field = match (self, other) {
            (Scalar::Alg(a), Scalar::Alg(b)) => {
                assert!(
                    same_field(&a.field, &b.field),
                    "arithmetic between different number fields"
                );
                a.field.clone()
            }
            (Scalar::Alg(a), _) => a.field.clone(),
            (_, Scalar::Alg(b)) => b.field.clone(),
            _ => return None,
        };
        let d = field.degree();
        Some((field, self.coords(d), other.coords(d)))
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(r.recip()))
                }
            }
            Scalar::Alg(e) => e
                .field
                .inv_coords(&e.coords)
                .map(|c| Scalar::from_coords(&e.field, c)),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|i| self * &i)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Sign used by printers: rationals and single-coordinate field elements
    /// have a sign, general field elements print as positive.
    pub fn is_negative_for_print(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_negative(),
            Scalar::Alg(e) => {
                let nz: Vec<_> = e.coords.iter().filter(|c| !c.is_zero()).collect();
                nz.len() == 1 && nz[0].is_negative()
            }
        }
    }

    /// True when the printed form is a single factor (no `+` inside).
    pub fn is_atomic_for_print(&self) -> bool {
        match self {
            Scalar::Rat(_) => true,
            Scalar::Alg(e) => e.coords.iter().filter(|c| !c.is_zero()).count() == 1,
        }
    }

    /// Deterministic total order used to sort reports; not a field order.
    pub fn canonical_cmp(&self, other: &Scalar) -> Ordering {
        let d = self
            .field()
            .or(other.field())
            .map(|f| f.degree())
            .unwrap_or(1);
        let a = self.coords(d);
        let b = other.coords(d);
        for (x, y) in a.iter().zip(b.iter()).rev() {
            match x.cmp(y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// Small integer value if this scalar is one.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rat(r) if r.is_integer() => r.to_integer().to_i64(),
            _ => None,
        }
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{}", fmt_rational(r)),
            Scalar::Alg(e) => {
                let uni = UniPoly::from_rationals(&e.coords);
                let body = uni.to_string_in(e.field.name());
                if self.is_atomic_for_print() {
                    write!(f, "{body}")
                } else {
                    write!(f, "({body})")
                }
            }
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => {
                let (field, a, b) = self.lift_pair(other).unwrap();
                let c = a.iter().zip(b.iter()).map(|(x, y)| x + y).collect();
                Scalar::from_coords(&field, c)
            }
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            _ => {
                let (field, a, b) = self.lift_pair(other).unwrap();
                let c = a.iter().zip(b.iter()).map(|(x, y)| x - y).collect();
                Scalar::from_coords(&field, c)
            }
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Rat(a), Scalar::Alg(e)) | (Scalar::Alg(e), Scalar::Rat(a)) => {
                if a.is_zero() {
                    return Scalar::zero();
                }
                let c = e.coords.iter().map(|x| x * a).collect();
                Scalar::from_coords(&e.field, c)
            }
            (Scalar::Alg(x), Scalar::Alg(_)) => {
                let (field, a, b) = self.lift_pair(other).unwrap();
                let c = x.field.mul_coords(&a, &b);
                Scalar::from_coords(&field, c)
            }
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Alg(e) => Scalar::Alg(NfElement {
                field: e.field.clone(),
                coords: e.coords.iter().map(|c| -c).collect(),
            }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, other: Scalar) -> Scalar {
        &self + &other
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, other: Scalar) -> Scalar {
        &self - &other
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, other: Scalar) -> Scalar {
        &self * &other
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
    Div,
}

fn check_same_field(a: &Scalar, b: &Scalar) -> Result<(), FieldError> {
    if let (Some(fa), Some(fb)) = (a.field(), b.field()) {
        if !same_field(fa, fb) {
            return Err(FieldError::FieldMismatch);
        }
    }
    Ok(())
}

/// Checked field arithmetic on two scalars.
pub fn nf_arith(a: &Scalar, b: &Scalar, kind: ArithKind) -> Result<Scalar, FieldError> {
    check_same_field(a, b)?;
    Ok(match kind {
        ArithKind::Add => a + b,
        ArithKind::Sub => a - b,
        ArithKind::Mul => a * b,
        ArithKind::Div => a.checked_div(b).ok_or(FieldError::DivisionByZero)?,
    })
}

/// Rank of the ℤ-module generated by `elements`, i.e. the ℚ-rank of their
/// coordinate vectors.
pub fn zrank(elements: &[Scalar]) -> Result<usize, FieldError> {
    let mut field: Option<&Arc<NumberField>> = None;
    for e in elements {
        if let Some(f) = e.field() {
            match field {
                Some(g) if !same_field(f, g) => return Err(FieldError::FieldMismatch),
                _ => field = Some(f),
            }
        }
    }
    let d = field.map(|f| f.degree()).unwrap_or(1);
    let rows: Vec<Vec<Scalar>> = elements
        .iter()
        .map(|e| e.coords(d).into_iter().map(Scalar::Rat).collect())
        .collect();
    Ok(linalg::rank(&rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2() -> Arc<NumberField> {
        NumberField::new("a", vec![int(-2), int(0), int(1)], false).unwrap()
    }

    #[test]
    fn field_screen() {
        assert_eq!(sqrt2().degree(), 2);
        assert!(matches!(
            NumberField::new("t", vec![int(-1), int(0), int(1)], false),
            Err(FieldError::RationalRootFound(_))
        ));
        let err = NumberField::new("t", vec![int(4), int(0), int(0), int(0), int(1)], false).unwrap_err();
        match err {
            FieldError::ReducibleDetected(s) => {
                assert!(s.contains("t^2 + 2*t + 2") && s.contains("t^2 - 2*t + 2"), "{s}");
            }
            e => panic!("unexpected {e:?}"),
        }
        assert_eq!(
            NumberField::new("t", vec![int(0), int(0), int(1)], false).unwrap_err(),
            FieldError::NotSquarefree
        );
        assert_eq!(
            NumberField::new("t", vec![int(1), int(2)], false).unwrap_err(),
            FieldError::NotMonic
        );
        // x^4 - 10x^2 + 1 is irreducible (minimal polynomial of √2 + √3)
        assert!(NumberField::new("t", vec![int(1), int(0), int(-10), int(0), int(1)], false).is_ok());
        // non-integral quartic: t^4 - 1/4 = (t^2 - 1/2)(t^2 + 1/2)
        assert!(matches!(
            NumberField::new("t", vec![rat(-1, 4), int(0), int(0), int(0), int(1)], false),
            Err(FieldError::ReducibleDetected(_))
        ));
        assert!(matches!(
            NumberField::new("t", vec![int(-2), int(0), int(0), int(0), int(0), int(1)], false),
            Err(FieldError::AttestationRequired(5))
        ));
        assert!(NumberField::new("t", vec![int(-2), int(0), int(0), int(0), int(0), int(1)], true).is_ok());
    }

    #[test]
    fn degree_one_collapses() {
        let k = NumberField::new("a", vec![int(-3), int(1)], false).unwrap();
        assert_eq!(k.generator(), Scalar::from(3));
    }

    #[test]
    fn arithmetic_in_sqrt2() {
        let k = sqrt2();
        let a = k.generator();
        assert_eq!(&a * &a, Scalar::from(2));
        let one_plus = &Scalar::one() + &a;
        let inv = one_plus.inv().unwrap();
        assert_eq!(inv, &a - &Scalar::one());
        assert_eq!(
            nf_arith(&Scalar::one(), &Scalar::zero(), ArithKind::Add).unwrap(),
            Scalar::one()
        );
        assert_eq!(
            nf_arith(&a, &Scalar::zero(), ArithKind::Div).unwrap_err(),
            FieldError::DivisionByZero
        );
        let other = NumberField::new("b", vec![int(-3), int(0), int(1)], false).unwrap();
        assert_eq!(
            nf_arith(&a, &other.generator(), ArithKind::Mul).unwrap_err(),
            FieldError::FieldMismatch
        );
    }

    #[test]
    fn zrank_examples() {
        let k = sqrt2();
        let a = k.generator();
        assert_eq!(zrank(&[Scalar::from(1), Scalar::from(2)]).unwrap(), 1);
        assert_eq!(zrank(&[Scalar::one(), a.clone()]).unwrap(), 2);
        assert_eq!(zrank(&[a.clone(), &Scalar::from(2) * &a]).unwrap(), 1);
        assert_eq!(zrank(&[]).unwrap(), 0);
    }

    #[test]
    fn display() {
        let k = sqrt2();
        let a = k.generator();
        assert_eq!(a.to_string(), "a");
        assert_eq!((&Scalar::one() + &a).to_string(), "(a + 1)");
        assert_eq!((-&a).to_string(), "-a");
        assert_eq!(Scalar::from_ratio(-3, 6).to_string(), "-1/2");
    }
}
