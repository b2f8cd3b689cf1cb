//! Local analysis at singular points: linear part, resonance, linear holonomy,
//! Bott's partial connection along an axis, and torus-invariant fibers.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::foliation::{prolong, PolyVectorField};
use crate::linalg;
use crate::poly::{
    field_points, multigrade_decompose, Budget, Ideal, MultiPoly, VarSpace,
};
use crate::scalar::{zrank, FieldError, NumberField, Scalar};
use crate::univariate::{rational_roots, UniPoly};

/// Dξ(p), rows indexed by component: J[i][j] = ∂a_i/∂x_j (p).
pub fn jacobian_at(xi: &PolyVectorField, p: &[Scalar]) -> Result<Vec<Vec<Scalar>>> {
    let base = xi.on_base();
    if p.len() != base.n() {
        return Err(Error::SizeMismatch);
    }
    for (i, a) in base.components().iter().enumerate() {
        if !a.evaluate(p).is_zero() {
            return Err(Error::NotASingularPoint(i + 1));
        }
    }
    Ok(base
        .components()
        .iter()
        .map(|a| (0..base.n()).map(|j| a.partial(j).evaluate(p)).collect())
        .collect())
}

#[derive(Debug, Clone)]
pub struct EigenData {
    pub point: Vec<Scalar>,
    pub jacobian: Vec<Vec<Scalar>>,
    /// det(tI − Dξ(p)).
    pub char_poly: UniPoly,
    /// Roots in the working field, repeated by multiplicity.
    pub eigenvalues: Vec<Scalar>,
    /// Kernel basis of Dξ(p) − λ for each distinct eigenvalue.
    pub eigenvectors: Vec<(Scalar, Vec<Vec<Scalar>>)>,
    /// Part of the characteristic polynomial without roots in the working field.
    pub residual: Option<UniPoly>,
    pub invertible: bool,
    pub field: Option<Arc<NumberField>>,
}

impl EigenData {
    pub fn resolved(&self) -> bool {
        self.residual.is_none()
    }

    pub fn require_resolved(&self) -> Result<&[Scalar]> {
        match &self.residual {
            None => Ok(&self.eigenvalues),
            Some(r) => Err(Error::UnresolvedFactor(r.to_string_in("t"))),
        }
    }

    /// ℚ(name) from a rational residual factor, for a second pass.
    pub fn extension_from_residual(&self, name: &str, assume_irreducible: bool) -> Result<Arc<NumberField>> {
        let r = self
            .residual
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("the characteristic polynomial already splits".into()))?;
        if !r.is_rational() {
            return Err(Error::UnresolvedFactor(r.to_string_in("t")));
        }
        let coeffs = r.monic().coeffs().iter().map(|c| c.as_rational().unwrap()).collect();
        Ok(NumberField::new(name, coeffs, assume_irreducible)?)
    }
}

fn is_triangular(m: &[Vec<Scalar>]) -> bool {
    let n = m.len();
    let upper = (0..n).all(|i| (0..i).all(|j| m[i][j].is_zero()));
    let lower = (0..n).all(|i| (i + 1..n).all(|j| m[i][j].is_zero()));
    upper || lower
}

fn working_field(
    xi: &PolyVectorField,
    p: &[Scalar],
    extension: Option<&Arc<NumberField>>,
) -> Result<Option<Arc<NumberField>>> {
    let mut field = extension.cloned();
    let others = xi.field().into_iter().chain(p.iter().filter_map(|s| s.field().cloned()));
    for f in others {
        match &field {
            None => field = Some(f),
            Some(g) if **g != *f => return Err(FieldError::FieldMismatch.into()),
            _ => {}
        }
    }
    Ok(field)
}

/// Eigendata that keeps any unresolved factor as `residual` instead of failing.
pub fn jacobian_eigendata_partial(
    xi: &PolyVectorField,
    p: &[Scalar],
    extension: Option<&Arc<NumberField>>,
    budget: Budget,
) -> Result<EigenData> {
    let field = working_field(xi, p, extension)?;
    let jac = jacobian_at(xi, p)?;
    let cp = linalg::char_poly(&jac);
    let n = jac.len();

    let mut roots: Vec<Scalar> = match &field {
        Some(f) if cp.degree().unwrap_or(0) > 0 => {
            let ts = VarSpace::aux_only(vec!["t".into()])?;
            let t = MultiPoly::var(&ts, 0);
            let mut poly = MultiPoly::zero(&ts);
            let mut pw = MultiPoly::one(&ts);
            for c in cp.coeffs() {
                poly = &poly + &pw.scale(c);
                pw = &pw * &t;
            }
            let ideal = Ideal::new(&ts, vec![poly])?;
            field_points(&ideal, f, budget)?.into_iter().map(|mut v| v.remove(0)).collect()
        }
        _ if cp.is_rational() => rational_roots(&cp).into_iter().map(Scalar::from).collect(),
        _ => Vec::new(),
    };
    roots.sort_by(|a, b| a.canonical_cmp(b));
    roots.dedup();

    let mut eigenvalues = Vec::new();
    let mut residual = cp.clone();
    let mut eigenvectors = Vec::new();
    for r in &roots {
        let m = cp.root_multiplicity(r);
        for _ in 0..m {
            eigenvalues.push(r.clone());
            residual = residual.divrem(&UniPoly::linear_root(r)).0;
        }
        let shifted: Vec<Vec<Scalar>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { &jac[i][j] - r } else { jac[i][j].clone() }).collect())
            .collect();
        eigenvectors.push((r.clone(), linalg::kernel(&shifted, n)));
    }
    if is_triangular(&jac) && residual.degree() == Some(0) {
        eigenvalues = (0..n).map(|i| jac[i][i].clone()).collect();
    }
    let invertible = !cp.coeff(0).is_zero();
    Ok(EigenData {
        point: p.to_vec(),
        jacobian: jac,
        char_poly: cp,
        eigenvalues,
        eigenvectors,
        residual: (residual.degree().unwrap_or(0) > 0).then_some(residual),
        invertible,
        field,
    })
}

/// Eigendata at a singular point; irreducible factors of degree ≥ 2 must come with a declared extension.
pub fn jacobian_eigendata(
    xi: &PolyVectorField,
    p: &[Scalar],
    extension: Option<&Arc<NumberField>>,
    budget: Budget,
) -> Result<EigenData> {
    let e = jacobian_eigendata_partial(xi, p, extension, budget)?;
    e.require_resolved()?;
    Ok(e)
}

#[derive(Debug, Clone)]
pub struct ResonanceReport {
    pub eigen: EigenData,
    pub zrank: usize,
    pub nonresonant: bool,
}

pub fn nonresonance_of(eigen: EigenData) -> Result<ResonanceReport> {
    let ev = eigen.require_resolved()?;
    let r = zrank(ev)?;
    let nonresonant = eigen.invertible && r == ev.len();
    Ok(ResonanceReport {
        zrank: r,
        nonresonant,
        eigen,
    })
}

pub fn is_nonresonant(
    xi: &PolyVectorField,
    p: &[Scalar],
    extension: Option<&Arc<NumberField>>,
    budget: Budget,
) -> Result<ResonanceReport> {
    nonresonance_of(jacobian_eigendata(xi, p, extension, budget)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HolonomyEntry {
    /// 1-based index j of λ_j.
    pub index: usize,
    pub ratio: Scalar,
    /// exp(2πi·ratio) is a root of unity iff the ratio is rational.
    pub root_of_unity: bool,
    /// Denominator of a rational ratio: the order of the root of unity.
    pub order: Option<BigInt>,
}

impl HolonomyEntry {
    pub fn symbol(&self) -> String {
        let r = &self.ratio;
        if r.is_rational() && r.as_rational().unwrap().is_integer() {
            return "1".into();
        }
        if r.is_atomic_for_print() {
            format!("exp(2*pi*i*{r})")
        } else {
            format!("exp(2*pi*i*({r}))")
        }
    }
}

#[derive(Debug, Clone)]
pub struct HolonomyReport {
    pub axis: usize,
    pub entries: Vec<HolonomyEntry>,
    pub maximal_torus: bool,
    pub resonance: ResonanceReport,
}

/// Linear holonomy around the separatrix tangent to the eigenvalue λ_axis (1-based).
pub fn holonomy_spectrum(
    xi: &PolyVectorField,
    p: &[Scalar],
    axis: usize,
    extension: Option<&Arc<NumberField>>,
    budget: Budget,
) -> Result<HolonomyReport> {
    let res = is_nonresonant(xi, p, extension, budget)?;
    let ev = &res.eigen.eigenvalues;
    if axis == 0 || axis > ev.len() {
        return Err(Error::InvalidInput(format!("axis {axis} out of range 1..={}", ev.len())));
    }
    let li = &ev[axis - 1];
    let inv = li.inv().ok_or(Error::ZeroEigenvalue)?;
    let entries = ev
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != axis - 1)
        .map(|(j, lj)| {
            let ratio = lj * &inv;
            let q = ratio.as_rational();
            HolonomyEntry {
                index: j + 1,
                root_of_unity: q.is_some(),
                order: q.map(|q| q.denom().clone()),
                ratio,
            }
        })
        .collect();
    Ok(HolonomyReport {
        axis,
        entries,
        maximal_torus: res.nonresonant,
        resonance: res,
    })
}

fn check_axis_invariant(xi: &PolyVectorField) -> Result<PolyVectorField> {
    let base = xi.on_base();
    let n = base.n();
    if n < 2 {
        return Err(Error::InvalidInput("a leaf needs n ≥ 2".into()));
    }
    let zero = Scalar::zero();
    for (j, a) in base.components().iter().enumerate().skip(1) {
        let on_leaf = (1..n).fold(a.clone(), |acc, i| acc.substitute_scalar(i, &zero));
        if !on_leaf.is_zero() {
            return Err(Error::LeafNotInvariant(format!(
                "component {} restricts to {on_leaf} on the x1-axis",
                j + 1
            )));
        }
    }
    Ok(base)
}

fn restrict_to_axis(f: &MultiPoly, vars: impl Iterator<Item = usize>) -> MultiPoly {
    let zero = Scalar::zero();
    vars.fold(f.clone(), |acc, i| acc.substitute_scalar(i, &zero))
}

/// A(x_1) with A_ij = ∂a_j/∂x_i (x_1, 0, …, 0), i, j ≥ 2, on the base space.
pub fn bott_connection(xi: &PolyVectorField) -> Result<Vec<Vec<MultiPoly>>> {
    let base = check_axis_invariant(xi)?;
    let n = base.n();
    Ok((1..n)
        .map(|i| {
            (1..n)
                .map(|j| restrict_to_axis(&base.components()[j].partial(i), 1..n))
                .collect()
        })
        .collect())
}

#[derive(Debug, Clone)]
pub struct DualityReport {
    pub a: Vec<Vec<MultiPoly>>,
    /// B_ij = coefficient of y_i in the ∂/∂y_j part of the restricted prolongation.
    pub b: Vec<Vec<MultiPoly>>,
    pub holds: bool,
}

pub fn verify_prolongation_duality(xi: &PolyVectorField) -> Result<DualityReport> {
    let a = bott_connection(xi)?;
    let xh = prolong(xi);
    let space = xh.space().clone();
    let base = space.base();
    let n = space.n();
    let zero = Scalar::zero();
    let kill = |f: &MultiPoly| {
        let f = f.substitute_scalar(space.y(0), &zero);
        restrict_to_axis(&f, 1..n)
    };
    let mut b = vec![vec![MultiPoly::zero(&base); n - 1]; n - 1];
    for j in 1..n {
        let comp = kill(&xh.y_components[j]);
        for i in 1..n {
            let yi = space.y(i);
            let coeff = comp.filter_terms(|m| m[yi] == 1).substitute_scalar(yi, &Scalar::one());
            b[i - 1][j - 1] = coeff.embed(&base)?;
        }
    }
    let holds = (0..n - 1).all(|i| (0..n - 1).all(|j| b[i][j] == -&a[j][i]));
    Ok(DualityReport { a, b, holds })
}

fn invert(m: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Scalar>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            r
        })
        .collect();
    let pivots = linalg::rref(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// ξ in coordinates x = M·x' + b, i.e. M⁻¹·ξ(M·x' + b).
pub fn affine_change(xi: &PolyVectorField, m: &[Vec<Scalar>], b: &[Scalar]) -> Result<PolyVectorField> {
    let space = xi.space().clone();
    let n = xi.n();
    if m.len() != n || m.iter().any(|r| r.len() != n) || b.len() != n {
        return Err(Error::SizeMismatch);
    }
    let minv = invert(m).ok_or_else(|| Error::InvalidInput("the linear part is singular".into()))?;
    let mut images: Vec<MultiPoly> = (0..n)
        .map(|i| {
            let mut acc = MultiPoly::constant(&space, b[i].clone());
            for (k, c) in m[i].iter().enumerate() {
                acc = &acc + &MultiPoly::var(&space, space.x(k)).scale(c);
            }
            acc
        })
        .collect();
    images.extend((n..space.len()).map(|k| MultiPoly::var(&space, k)));
    let moved: Vec<MultiPoly> = xi.components().iter().map(|a| a.compose(&space, &images)).collect();
    let comps = (0..n)
        .map(|i| {
            (0..n).fold(MultiPoly::zero(&space), |acc, k| &acc + &moved[k].scale(&minv[i][k]))
        })
        .collect();
    PolyVectorField::new(&space, comps)
}

/// Coordinate subspace {v = 0 : v ∈ vanishing}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateSubspace {
    pub vanishing: Vec<usize>,
    pub dimension: usize,
}

#[derive(Debug, Clone)]
pub struct TorusFiberReport {
    pub torus_invariant: bool,
    /// The variables the torus acts on.
    pub variables: Vec<usize>,
    pub monomial_generators: Vec<MultiPoly>,
    pub components: Vec<CoordinateSubspace>,
    pub equidimensional: bool,
    /// A multigraded piece not in I, when torus_invariant fails.
    pub witness: Option<MultiPoly>,
}

impl TorusFiberReport {
    /// Every monomial generator vanishes identically on every component.
    pub fn verify(&self) -> bool {
        self.components.iter().all(|c| {
            self.monomial_generators.iter().all(|g| {
                g.terms().keys().all(|m| c.vanishing.iter().any(|&v| m[v] > 0))
            })
        })
    }

    pub fn describe(&self, space: &VarSpace, c: &CoordinateSubspace) -> String {
        if c.vanishing.is_empty() {
            return "{everything}".into();
        }
        let names: Vec<&str> = c.vanishing.iter().map(|&v| space.name(v)).collect();
        format!("{{{} = 0}}", names.join(" = "))
    }
}

/// V(I) for a torus-invariant I as a union of coordinate subspaces.
pub fn coordinate_subspace_decomposition(ideal: &Ideal, budget: Budget) -> Result<TorusFiberReport> {
    let space = ideal.space();
    let vars: Vec<usize> = if space.has_y() {
        space.y_indices().collect()
    } else {
        (0..space.len()).collect()
    };
    if vars.len() > 16 {
        return Err(Error::InvalidInput("too many variables for subset enumeration".into()));
    }
    for g in ideal.generators() {
        if !g.uses_only(|i| vars.contains(&i)) {
            return Err(Error::InvalidInput(format!("{g} involves variables outside the fiber")));
        }
    }
    let mut pieces: Vec<MultiPoly> = Vec::new();
    for g in ideal.generators() {
        for piece in multigrade_decompose(g) {
            if !ideal.contains(&piece, budget)? {
                return Ok(TorusFiberReport {
                    torus_invariant: false,
                    variables: vars,
                    monomial_generators: Vec::new(),
                    components: Vec::new(),
                    equidimensional: false,
                    witness: Some(piece),
                });
            }
            let mono = MultiPoly::monomial(space, piece.terms().keys().next().unwrap().clone(), Scalar::one());
            if !pieces.contains(&mono) {
                pieces.push(mono);
            }
        }
    }
    let supports: Vec<u32> = pieces
        .iter()
        .map(|m| {
            let e = m.terms().keys().next().unwrap();
            vars.iter().enumerate().filter(|(_, &v)| e[v] > 0).fold(0u32, |acc, (k, _)| acc | (1 << k))
        })
        .collect();
    let k = vars.len();
    let covers: Vec<u32> = (0u32..(1 << k)).filter(|s| supports.iter().all(|t| s & t != 0)).collect();
    let mut minimal: Vec<u32> = covers
        .iter()
        .copied()
        .filter(|&s| !covers.iter().any(|&t| t != s && t & s == t))
        .collect();
    minimal.sort_by_key(|s| (s.count_ones(), (0..k).map(|b| u32::from(s & (1 << b) == 0)).collect::<Vec<_>>()));
    let components: Vec<CoordinateSubspace> = minimal
        .iter()
        .map(|&s| {
            let vanishing: Vec<usize> = (0..k).filter(|b| s & (1 << b) != 0).map(|b| vars[b]).collect();
            CoordinateSubspace {
                dimension: k - vanishing.len(),
                vanishing,
            }
        })
        .collect();
    let equidimensional = components.windows(2).all(|w| w[0].dimension == w[1].dimension);
    Ok(TorusFiberReport {
        torus_invariant: true,
        variables: vars,
        monomial_generators: pieces,
        components,
        equidimensional,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field2(a: MultiPoly, b: MultiPoly) -> PolyVectorField {
        let s = a.space().clone();
        PolyVectorField::new(&s, vec![a, b]).unwrap()
    }

    fn origin(n: usize) -> Vec<Scalar> {
        vec![Scalar::zero(); n]
    }

    #[test]
    fn eigendata_examples() {
        let s = VarSpace::phase(2);
        let x = |i| MultiPoly::var(&s, i);
        let lin = field2(x(0), x(1).scale(&Scalar::from(2)));
        let e = jacobian_eigendata(&lin, &origin(2), None, Budget::default()).unwrap();
        assert_eq!(e.char_poly.to_string_in("t"), "t^2 - 3*t + 2");
        assert_eq!(e.eigenvalues, vec![Scalar::from(1), Scalar::from(2)]);
        assert!(e.invertible);

        let rot = field2(x(1), -&x(0));
        let err = jacobian_eigendata(&rot, &origin(2), None, Budget::default()).unwrap_err();
        assert_eq!(err, Error::UnresolvedFactor("t^2 + 1".into()));
        let qi = NumberField::new("i", vec![1.into(), 0.into(), 1.into()].into_iter().map(num_rational::BigRational::from_integer).collect(), false).unwrap();
        let e = jacobian_eigendata(&rot, &origin(2), Some(&qi), Budget::default()).unwrap();
        let shown: Vec<String> = e.eigenvalues.iter().map(|v| v.to_string()).collect();
        assert_eq!(shown, vec!["-i", "i"]);
        let r = nonresonance_of(e).unwrap();
        assert_eq!((r.zrank, r.nonresonant), (1, false));

        let bad = field2(&x(0) + &MultiPoly::one(&s), x(1));
        assert_eq!(
            jacobian_eigendata(&bad, &origin(2), None, Budget::default()).unwrap_err(),
            Error::NotASingularPoint(1)
        );
    }

    #[test]
    fn sqrt2_resonance_and_holonomy() {
        let q2 = NumberField::new(
            "a",
            vec![(-2).into(), 0.into(), 1.into()].into_iter().map(num_rational::BigRational::from_integer).collect(),
            false,
        )
        .unwrap();
        let s = VarSpace::phase(2);
        let x = |i| MultiPoly::var(&s, i);
        let xi = field2(x(0), x(1).scale(&q2.generator()));
        let h = holonomy_spectrum(&xi, &origin(2), 1, None, Budget::default()).unwrap();
        assert_eq!(h.resonance.zrank, 2);
        assert!(h.maximal_torus);
        assert_eq!(h.entries.len(), 1);
        assert!(!h.entries[0].root_of_unity);
        assert_eq!(h.entries[0].symbol(), "exp(2*pi*i*a)");

        let lin = field2(x(0), x(1).scale(&Scalar::from(2)));
        let h = holonomy_spectrum(&lin, &origin(2), 1, None, Budget::default()).unwrap();
        assert_eq!(h.entries[0].ratio, Scalar::from(2));
        assert_eq!(h.entries[0].symbol(), "1");
        assert!(!h.maximal_torus);
    }

    #[test]
    fn bott_and_duality() {
        let s = VarSpace::phase(2);
        let x = |i| MultiPoly::var(&s, i);
        let xi = field2(x(0), &x(1).scale(&Scalar::from(2)) + &(&x(0) * &x(1)));
        let a = bott_connection(&xi).unwrap();
        assert_eq!(a[0][0].to_string(), "x1 + 2");
        let d = verify_prolongation_duality(&xi).unwrap();
        assert_eq!(d.b[0][0].to_string(), "-x1 - 2");
        assert!(d.holds);
        let rot = field2(x(1), -&x(0));
        assert!(matches!(bott_connection(&rot), Err(Error::LeafNotInvariant(_))));

        let s3 = VarSpace::phase(3);
        let x3 = |i| MultiPoly::var(&s3, i);
        let diag = PolyVectorField::new(
            &s3,
            vec![x3(0), x3(1).scale(&Scalar::from(3)), x3(2).scale(&Scalar::from_ratio(-1, 2))],
        )
        .unwrap();
        let a = bott_connection(&diag).unwrap();
        assert_eq!(a[0][0].to_string(), "3");
        assert!(a[0][1].is_zero());
        assert_eq!(a[1][1].to_string(), "-1/2");
        assert!(verify_prolongation_duality(&diag).unwrap().holds);
    }

    #[test]
    fn affine_change_moves_singular_point() {
        let s = VarSpace::phase(2);
        let x = |i| MultiPoly::var(&s, i);
        let one = MultiPoly::one(&s);
        let xi = field2(&x(0) - &one, &x(1) + &one);
        let id = vec![vec![Scalar::one(), Scalar::zero()], vec![Scalar::zero(), Scalar::one()]];
        let moved = affine_change(&xi, &id, &[Scalar::one(), -Scalar::one()]).unwrap();
        assert_eq!(moved.components(), &[x(0), x(1)]);
        let swap = vec![vec![Scalar::zero(), Scalar::one()], vec![Scalar::one(), Scalar::zero()]];
        let lin = field2(x(0), x(1).scale(&Scalar::from(2)));
        let sw = affine_change(&lin, &swap, &origin(2)).unwrap();
        assert_eq!(sw.components(), &[x(0).scale(&Scalar::from(2)), x(1)]);
    }

    #[test]
    fn torus_fibers() {
        let s = VarSpace::phase(3);
        let y = |i| MultiPoly::var(&s, s.y(i));
        let b = Budget::default();
        let i = Ideal::new(&s, vec![&y(0) * &y(1), &y(0) * &y(2), &y(1) * &y(2)]).unwrap();
        let r = coordinate_subspace_decomposition(&i, b).unwrap();
        assert!(r.torus_invariant && r.equidimensional && r.verify());
        let shown: Vec<String> = r.components.iter().map(|c| r.describe(&s, c)).collect();
        assert_eq!(shown, vec!["{y1 = y2 = 0}", "{y1 = y3 = 0}", "{y2 = y3 = 0}"]);
        assert!(r.components.iter().all(|c| c.dimension == 1));

        let s2 = VarSpace::phase(2);
        let y2 = |i| MultiPoly::var(&s2, s2.y(i));
        let r = coordinate_subspace_decomposition(&Ideal::new(&s2, vec![&y2(0) * &y2(1)]).unwrap(), b).unwrap();
        assert_eq!(r.components.len(), 2);
        assert!(r.equidimensional);
        let r = coordinate_subspace_decomposition(&Ideal::new(&s2, vec![&y2(0) + &y2(1)]).unwrap(), b).unwrap();
        assert!(!r.torus_invariant);
        assert_eq!(r.witness.unwrap().to_string(), "y1");
    }
}
