//! Points of zero-dimensional ideals with coordinates in ℚ or in a declared ℚ(α).

use std::sync::Arc;

use num_rational::BigRational;

use super::groebner::{groebner_basis, Budget};
use super::ideal::{eliminate, Ideal};
use super::multipoly::MultiPoly;
use super::order::MonomialOrder;
use super::space::VarSpace;
use super::PolyError;
use crate::scalar::{NumberField, Scalar};
use crate::univariate::{rational_roots, UniPoly};

/// Coefficients of a polynomial that only involves variable `i`.
fn as_univariate(p: &MultiPoly, i: usize) -> UniPoly {
    let deg = p.degree_in(&[i]).unwrap_or(0) as usize;
    let mut coeffs = vec![Scalar::zero(); deg + 1];
    for (m, c) in p.terms() {
        coeffs[m[i] as usize] = c.clone();
    }
    UniPoly::new(coeffs)
}

/// All points with rational coordinates of a zero-dimensional ideal with
/// rational coefficients, sorted lexicographically.
pub fn rational_points(ideal: &Ideal, budget: Budget) -> Result<Vec<Vec<BigRational>>, PolyError> {
    let n = ideal.space().len();
    let gens: Vec<MultiPoly> = ideal.generators().to_vec();
    let mut out = Vec::new();
    solve_from(ideal.space(), gens, n, &mut vec![None; n], &mut out, budget, true)?;
    out.sort();
    Ok(out)
}

fn solve_from(
    space: &Arc<VarSpace>,
    gens: Vec<MultiPoly>,
    remaining: usize,
    assignment: &mut Vec<Option<BigRational>>,
    out: &mut Vec<Vec<BigRational>>,
    budget: Budget,
    check_dim: bool,
) -> Result<(), PolyError> {
    let gb = groebner_basis(space, &gens, &MonomialOrder::Lex, budget)?;
    if gb.is_unit() {
        return Ok(());
    }
    if remaining == 0 {
        out.push(assignment.iter().map(|a| a.clone().unwrap()).collect());
        return Ok(());
    }
    if check_dim {
        let (zero_dim, _) = super::ideal::zero_dim_from_leading(&gb.leading_monomials(), space.len());
        if !zero_dim {
            return Err(PolyError::PositiveDimensional);
        }
    }
    let k = remaining - 1;
    let uni = gb
        .polys()
        .iter()
        .find(|p| !p.is_constant() && p.uses_only(|i| i == k))
        .ok_or(PolyError::PositiveDimensional)?;
    let u = as_univariate(uni, k);
    if !u.is_rational() {
        return Err(PolyError::Field(crate::scalar::FieldError::FieldMismatch));
    }
    for r in rational_roots(&u) {
        let v = Scalar::from(r.clone());
        let next: Vec<MultiPoly> = gb.polys().iter().map(|p| p.substitute_scalar(k, &v)).collect();
        assignment[k] = Some(r);
        solve_from(space, next, k, assignment, out, budget, false)?;
        assignment[k] = None;
    }
    Ok(())
}

/// Points of a zero-dimensional ideal with coordinates in `field`, found by
/// restriction of scalars to ℚ. Coefficients may lie in `field`.
pub fn field_points(
    ideal: &Ideal,
    field: &Arc<NumberField>,
    budget: Budget,
) -> Result<Vec<Vec<Scalar>>, PolyError> {
    let n = ideal.space().len();
    let d = field.degree();
    if d == 1 {
        return Ok(rational_points(ideal, budget)?
            .into_iter()
            .map(|p| p.into_iter().map(Scalar::from).collect())
            .collect());
    }
    // variables v_{i,k} (coordinate k of variable i) followed by alpha
    let mut names: Vec<String> = Vec::with_capacity(n * d + 1);
    for i in 0..n {
        for k in 0..d {
            names.push(format!("__v{i}_{k}"));
        }
    }
    names.push("__alpha".into());
    let big = VarSpace::aux_only(names)?;
    let alpha_idx = n * d;
    let alpha = MultiPoly::var(&big, alpha_idx);
    let min_poly = {
        let mut p = MultiPoly::zero(&big);
        let mut pw = MultiPoly::one(&big);
        for c in field.min_poly() {
            p = &p + &pw.scale(&Scalar::from(c.clone()));
            pw = &pw * &alpha;
        }
        p
    };
    let reducer = groebner_basis(&big, &[min_poly], &MonomialOrder::Lex, Budget::unlimited())?;
    // x_i = Σ_k v_{i,k} α^k
    let images: Vec<MultiPoly> = (0..n)
        .map(|i| {
            let mut acc = MultiPoly::zero(&big);
            let mut pw = MultiPoly::one(&big);
            for k in 0..d {
                acc = &acc + &(&MultiPoly::var(&big, i * d + k) * &pw);
                pw = &pw * &alpha;
            }
            acc
        })
        .collect();
    let mut restricted = Vec::new();
    for g in ideal.generators() {
        // coefficients in ℚ(α) become polynomials in alpha
        let mut lifted = MultiPoly::zero(&big);
        for (m, c) in g.terms() {
            let coords = c.coords(d);
            let mut cpoly = MultiPoly::zero(&big);
            let mut pw = MultiPoly::one(&big);
            for ck in coords {
                cpoly = &cpoly + &pw.scale(&Scalar::from(ck));
                pw = &pw * &alpha;
            }
            let mono = MultiPoly::monomial(g.space(), m.clone(), Scalar::one());
            lifted = &lifted + &(&cpoly * &mono.compose(&big, &images));
        }
        let reduced = reducer.normal_form(&lifted)?;
        for k in 0..d as u32 {
            let part = reduced.filter_terms(|m| m[alpha_idx] == k);
            let part = MultiPoly::from_terms(
                &big,
                part.terms().iter().map(|(m, c)| {
                    let mut m = m.clone();
                    m[alpha_idx] = 0;
                    (m, c.clone())
                }),
            );
            if !part.is_zero() {
                restricted.push(part);
            }
        }
    }
    // alpha is not a coordinate; pin it to keep the ideal zero-dimensional
    restricted.push(alpha.clone());
    let rideal = Ideal::new(&big, restricted)?;
    let pts = rational_points(&rideal, budget)?;
    let mut out: Vec<Vec<Scalar>> = pts
        .into_iter()
        .map(|p| {
            (0..n)
                .map(|i| field.element(p[i * d..(i + 1) * d].to_vec()))
                .collect()
        })
        .collect();
    out.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.canonical_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(out)
}

/// For each variable the monic generator of I ∩ k[x_i]; requires dimension zero.
pub fn squarefree_eliminants(ideal: &Ideal, budget: Budget) -> Result<Vec<(usize, UniPoly)>, PolyError> {
    let mut out = Vec::new();
    for i in 0..ideal.space().len() {
        let e = eliminate(ideal, &[i], budget)?;
        let g = e
            .generators()
            .iter()
            .find(|p| !p.is_zero())
            .ok_or(PolyError::PositiveDimensional)?;
        out.push((i, as_univariate(g, i).monic()));
    }
    Ok(out)
}
