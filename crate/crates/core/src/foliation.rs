//! Polynomial vector fields as foliation data and their Hamiltonian prolongation.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{
    eliminate, field_points, krull_dim_zero_check, poly_gcd, radical_membership, rational_points,
    squarefree_eliminants, Budget, Ideal, MonomialOrder, MultiPoly, PolyError, VarSpace,
};
use crate::scalar::{NumberField, Scalar};

/// A derivation Σ c_j ∂/∂v_j with one component per variable of its space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    space: Arc<VarSpace>,
    components: Vec<MultiPoly>,
}

impl Derivation {
    pub fn new(space: &Arc<VarSpace>, components: Vec<MultiPoly>) -> Result<Derivation> {
        if components.len() != space.len() || components.iter().any(|c| c.space() != space) {
            return Err(PolyError::SpaceMismatch.into());
        }
        Ok(Derivation {
            space: space.clone(),
            components,
        })
    }

    pub fn space(&self) -> &Arc<VarSpace> {
        &self.space
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    pub fn apply(&self, f: &MultiPoly) -> Result<MultiPoly> {
        if f.space() != &self.space {
            return Err(PolyError::SpaceMismatch.into());
        }
        let mut out = MultiPoly::zero(&self.space);
        for (j, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let df = f.partial(j);
            if !df.is_zero() {
                out = &out + &(c * &df);
            }
        }
        Ok(out)
    }
}

fn phase_of(space: &Arc<VarSpace>) -> Arc<VarSpace> {
    if space.has_y() && space.aux_vars().is_empty() {
        return space.clone();
    }
    let ys: Vec<String> = (1..=space.n()).map(|i| format!("y{i}")).collect();
    VarSpace::new(space.x_vars().to_vec(), ys, Vec::new()).expect("y names are fresh")
}

/// ξ = Σ a_i ∂/∂x_i with components in the x-variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyVectorField {
    space: Arc<VarSpace>,
    components: Vec<MultiPoly>,
}

impl PolyVectorField {
    /// `space` may be the base space or a phase space; components may only use x-variables.
    pub fn new(space: &Arc<VarSpace>, components: Vec<MultiPoly>) -> Result<PolyVectorField> {
        if components.len() != space.n() {
            return Err(Error::SizeMismatch);
        }
        let n = space.n();
        for c in &components {
            if c.space() != space {
                return Err(PolyError::SpaceMismatch.into());
            }
            if !c.uses_only(|i| i < n) {
                return Err(Error::InvalidInput(format!(
                    "vector field component {c} involves non-base variables"
                )));
            }
        }
        if components.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroField);
        }
        Ok(PolyVectorField {
            space: space.clone(),
            components,
        })
    }

    pub fn space(&self) -> &Arc<VarSpace> {
        &self.space
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    /// Affine degree: the largest total degree of a component.
    pub fn degree(&self) -> u32 {
        self.components.iter().filter_map(|c| c.total_degree()).max().unwrap_or(0)
    }

    /// The number field of the coefficients, if any.
    pub fn field(&self) -> Option<Arc<NumberField>> {
        self.components.iter().find_map(|c| c.field())
    }

    /// Same field with components moved into `target` (which must contain the x-block).
    pub fn in_space(&self, target: &Arc<VarSpace>) -> Result<PolyVectorField> {
        let comps = self
            .components
            .iter()
            .map(|c| c.embed(target))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        PolyVectorField::new(target, comps)
    }

    pub fn on_base(&self) -> PolyVectorField {
        self.in_space(&self.space.base()).expect("x-block embeds")
    }

    pub fn on_phase(&self) -> PolyVectorField {
        self.in_space(&phase_of(&self.space)).expect("x-block embeds")
    }

    pub fn scale(&self, c: &Scalar) -> Result<PolyVectorField> {
        PolyVectorField::new(&self.space, self.components.iter().map(|a| a.scale(c)).collect())
    }

    /// The derivation on the field's own space.
    pub fn derivation(&self) -> Derivation {
        let mut comps = self.components.clone();
        comps.resize(self.space.len(), MultiPoly::zero(&self.space));
        Derivation {
            space: self.space.clone(),
            components: comps,
        }
    }

    pub fn apply(&self, f: &MultiPoly) -> Result<MultiPoly> {
        self.derivation().apply(f)
    }
}

impl fmt::Display for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, a) in self.components.iter().enumerate() {
            for (m, c) in a.sorted_terms(&MonomialOrder::GrevLex) {
                let mono = MultiPoly::monomial(&self.space, m.clone(), Scalar::one());
                let neg = c.is_negative_for_print();
                let mag = if neg { -c } else { c.clone() };
                let mut factors = Vec::new();
                if !mag.is_one() {
                    factors.push(mag.to_string());
                }
                if !mono.is_constant() {
                    factors.push(mono.to_string());
                }
                factors.push(format!("d{}", i + 1));
                let body = factors.join("*");
                match (first, neg) {
                    (true, true) => write!(f, "-{body}")?,
                    (true, false) => write!(f, "{body}")?,
                    (false, true) => write!(f, " - {body}")?,
                    (false, false) => write!(f, " + {body}")?,
                }
                first = false;
            }
        }
        Ok(())
    }
}

/// The hypersurface {P = 0} with P = Σ a_i y_i in the phase space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharVariety {
    pub p: MultiPoly,
    pub source: PolyVectorField,
}

pub fn characteristic_polynomial(xi: &PolyVectorField) -> CharVariety {
    let xi = xi.on_phase();
    let space = xi.space().clone();
    let mut p = MultiPoly::zero(&space);
    for (i, a) in xi.components().iter().enumerate() {
        p = &p + &(a * &MultiPoly::var(&space, space.y(i)));
    }
    CharVariety { p, source: xi }
}

/// A vector field on the phase space split into its ∂_x and ∂_y parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProlongedField {
    space: Arc<VarSpace>,
    pub x_components: Vec<MultiPoly>,
    pub y_components: Vec<MultiPoly>,
}

impl ProlongedField {
    pub fn space(&self) -> &Arc<VarSpace> {
        &self.space
    }

    pub fn derivation(&self) -> Derivation {
        let mut comps = self.x_components.clone();
        comps.extend(self.y_components.iter().cloned());
        Derivation {
            space: self.space.clone(),
            components: comps,
        }
    }

    pub fn apply(&self, f: &MultiPoly) -> Result<MultiPoly> {
        self.derivation().apply(f)
    }

    /// All 2n components, x-part first.
    pub fn all_components(&self) -> Vec<MultiPoly> {
        self.derivation().components
    }
}

impl fmt::Display for ProlongedField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let names = self.space.names().map(|s| s.to_string()).collect::<Vec<_>>();
        for (k, c) in self.all_components().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(format!("({c})*D{}", names[k]));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// ξ_F = Σ ∂F/∂y_i ∂_{x_i} − Σ ∂F/∂x_i ∂_{y_i}.
pub fn hamiltonian(f: &MultiPoly) -> Result<ProlongedField> {
    let space = f.space();
    if !space.has_y() {
        return Err(Error::InvalidInput("a Hamiltonian needs the phase space".into()));
    }
    if f.is_constant() {
        return Err(Error::ConstantFunction);
    }
    let n = space.n();
    Ok(ProlongedField {
        space: space.clone(),
        x_components: (0..n).map(|i| f.partial(space.y(i))).collect(),
        y_components: (0..n).map(|i| -&f.partial(space.x(i))).collect(),
    })
}

/// ξ̂ = Σ a_i ∂_{x_i} − Σ_{i,j} (∂a_i/∂x_j) y_i ∂_{y_j}.
pub fn prolong(xi: &PolyVectorField) -> ProlongedField {
    let xi = xi.on_phase();
    let space = xi.space().clone();
    let n = xi.n();
    let y_components = (0..n)
        .map(|j| {
            let mut acc = MultiPoly::zero(&space);
            for (i, a) in xi.components().iter().enumerate() {
                let da = a.partial(space.x(j));
                if !da.is_zero() {
                    acc = &acc - &(&da * &MultiPoly::var(&space, space.y(i)));
                }
            }
            acc
        })
        .collect();
    ProlongedField {
        space,
        x_components: xi.components().to_vec(),
        y_components,
    }
}

/// Points of a zero-dimensional ideal in the working field (ℚ when `field` is `None`).
pub fn points_in_field(
    ideal: &Ideal,
    field: Option<&Arc<NumberField>>,
    budget: Budget,
) -> Result<Vec<Vec<Scalar>>> {
    match field {
        Some(f) => Ok(field_points(ideal, f, budget)?),
        None => {
            if ideal.generators().iter().any(|g| !g.is_rational()) {
                return Err(Error::InvalidInput("algebraic coefficients need a declared field".into()));
            }
            Ok(rational_points(ideal, budget)?
                .into_iter()
                .map(|p| p.into_iter().map(Scalar::from).collect())
                .collect())
        }
    }
}

/// Number of distinct points of a zero-dimensional ideal.
pub fn distinct_point_count(ideal: &Ideal, budget: Budget) -> Result<Option<u64>> {
    let (zero_dim, vecdim) = krull_dim_zero_check(ideal, budget)?;
    if !zero_dim {
        return Ok(None);
    }
    if vecdim == Some(0) {
        return Ok(Some(0));
    }
    let radical = seidenberg_radical(ideal, budget)?;
    Ok(krull_dim_zero_check(&radical, budget)?.1)
}

/// √I for zero-dimensional I: add the squarefree parts of the univariate eliminants.
fn seidenberg_radical(ideal: &Ideal, budget: Budget) -> Result<Ideal> {
    let space = ideal.space().clone();
    let mut extra = Vec::new();
    for (i, u) in squarefree_eliminants(ideal, budget)? {
        let sq = u.squarefree_part();
        let x = MultiPoly::var(&space, i);
        let mut p = MultiPoly::zero(&space);
        let mut pw = MultiPoly::one(&space);
        for c in sq.coeffs() {
            p = &p + &pw.scale(c);
            pw = &pw * &x;
        }
        extra.push(p);
    }
    Ok(ideal.plus(&extra)?)
}

#[derive(Debug, Clone)]
pub struct SingularScheme {
    /// (a_1, …, a_n) in the base space.
    pub ideal: Ideal,
    pub isolated: bool,
    pub vecdim: Option<u64>,
    /// Distinct singular points over an algebraic closure (when isolated).
    pub distinct_points: Option<u64>,
    /// Multiplicity-free: vecdim equals the number of distinct points.
    pub reduced: Option<bool>,
    /// Singular points with coordinates in the working field.
    pub points: Vec<Vec<Scalar>>,
    /// Nonconstant common factor of the components.
    pub divisorial_part: Option<MultiPoly>,
}

impl SingularScheme {
    /// A foliation representative has no divisorial singular part.
    pub fn valid_representative(&self) -> bool {
        self.divisorial_part.is_none()
    }
}

pub fn singular_scheme(xi: &PolyVectorField, budget: Budget) -> Result<SingularScheme> {
    let base = xi.on_base();
    let ideal = Ideal::new(base.space(), base.components().to_vec())?;
    let (isolated, vecdim) = krull_dim_zero_check(&ideal, budget)?;
    let mut distinct = None;
    let mut reduced = None;
    let mut points = Vec::new();
    if isolated {
        distinct = distinct_point_count(&ideal, budget)?;
        reduced = Some(distinct == vecdim);
        points = points_in_field(&ideal, xi.field().as_ref(), budget)?;
    }
    let mut g = MultiPoly::zero(base.space());
    for c in base.components() {
        g = poly_gcd(&g, c, budget)?;
        if g.is_constant() {
            break;
        }
    }
    let divisorial_part = (!g.is_constant()).then_some(g);
    Ok(SingularScheme {
        ideal,
        isolated,
        vecdim,
        distinct_points: distinct,
        reduced,
        points,
        divisorial_part,
    })
}

#[derive(Debug, Clone)]
pub struct ChSingularLocus {
    /// (P, ∂P/∂x_1, …, ∂P/∂y_n).
    pub ideal: Ideal,
    /// Every singular point of {P = 0} lies on the zero section.
    pub smooth_away_from_zero_section: bool,
    /// y_i for which y_i ∉ √J (empty when the verdict holds).
    pub offending: Vec<MultiPoly>,
    /// Reduced isolated singular scheme, which forces the verdict.
    pub criterion_applies: bool,
}

pub fn ch_singular_locus(xi: &PolyVectorField, budget: Budget) -> Result<ChSingularLocus> {
    let ch = characteristic_polynomial(xi);
    let space = ch.p.space().clone();
    let mut gens = vec![ch.p.clone()];
    for i in 0..space.len() {
        gens.push(ch.p.partial(i));
    }
    let ideal = Ideal::new(&space, gens)?.groebner(&MonomialOrder::GrevLex, budget)?;
    let mut offending = Vec::new();
    for i in 0..space.n() {
        let y = MultiPoly::var(&space, space.y(i));
        if !radical_membership(&y, &ideal, budget)? {
            offending.push(y);
        }
    }
    let sing = singular_scheme(xi, budget)?;
    Ok(ChSingularLocus {
        ideal,
        smooth_away_from_zero_section: offending.is_empty(),
        offending,
        criterion_applies: sing.isolated && sing.reduced == Some(true),
    })
}

/// (g, D(g), normal form of D(g)) for one basis element g.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvarianceCheck {
    pub generator: MultiPoly,
    pub image: MultiPoly,
    pub remainder: MultiPoly,
}

#[derive(Debug, Clone)]
pub struct InvarianceReport {
    pub invariant: bool,
    pub checks: Vec<InvarianceCheck>,
}

/// D(J) ⊆ J, tested on a grevlex Gröbner basis of J.
pub fn is_invariant(d: &Derivation, ideal: &Ideal, budget: Budget) -> Result<InvarianceReport> {
    if ideal.space() != d.space() {
        return Err(PolyError::SpaceMismatch.into());
    }
    let gb = ideal.basis(budget)?;
    if gb.is_unit() {
        return Err(Error::EmptyVariety);
    }
    let mut checks = Vec::new();
    for g in gb.polys() {
        let image = d.apply(g)?;
        let remainder = gb.normal_form(&image)?;
        checks.push(InvarianceCheck {
            generator: g.clone(),
            image,
            remainder,
        });
    }
    Ok(InvarianceReport {
        invariant: checks.iter().all(|c| c.remainder.is_zero()),
        checks,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassTag {
    ZeroSection,
    FiberOverSingularPoint,
    WholeCharVariety,
    EmptyVariety,
    NotContained,
    NotInvariant,
    NotYHomogeneous,
    QuasiMinimalityViolation,
}

impl ClassTag {
    pub fn name(&self) -> &'static str {
        match self {
            ClassTag::ZeroSection => "ZeroSection",
            ClassTag::FiberOverSingularPoint => "FiberOverSingularPoint",
            ClassTag::WholeCharVariety => "WholeCharVariety",
            ClassTag::EmptyVariety => "EmptyVariety",
            ClassTag::NotContained => "NotContained",
            ClassTag::NotInvariant => "NotInvariant",
            ClassTag::NotYHomogeneous => "NotYHomogeneous",
            ClassTag::QuasiMinimalityViolation => "QuasiMinimalityViolation",
        }
    }

    /// Tags that fail one of the preconditions of the trichotomy.
    pub fn is_negative(&self) -> bool {
        matches!(
            self,
            ClassTag::NotContained | ClassTag::NotInvariant | ClassTag::NotYHomogeneous
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertKind {
    /// `poly` reduces to `remainder` modulo the ideal.
    NormalForm,
    /// `poly` vanishes on the variety of the ideal named by `against`.
    Radical,
}

#[derive(Debug, Clone)]
pub struct CertEntry {
    pub kind: CertKind,
    pub label: String,
    /// "J" or "(P)".
    pub against: &'static str,
    pub poly: MultiPoly,
    pub remainder: Option<MultiPoly>,
    pub holds: bool,
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub tag: ClassTag,
    /// Singular points over which V(J) lies (FiberOverSingularPoint).
    pub points: Vec<Vec<Scalar>>,
    /// x-elimination ideal when the base points are not all in the working field.
    pub residual: Option<Ideal>,
    pub certificate: Vec<CertEntry>,
    pub notes: Vec<String>,
}

impl Classification {
    fn new(tag: ClassTag, certificate: Vec<CertEntry>) -> Classification {
        Classification {
            tag,
            points: Vec::new(),
            residual: None,
            certificate,
            notes: Vec::new(),
        }
    }

    /// The single base point, when there is exactly one.
    pub fn point(&self) -> Option<&[Scalar]> {
        (self.points.len() == 1 && self.residual.is_none()).then(|| self.points[0].as_slice())
    }
}

/// Re-checks every certificate entry against the library.
pub fn verify_certificate(
    xi: &PolyVectorField,
    ideal: &Ideal,
    cls: &Classification,
    budget: Budget,
) -> Result<bool> {
    let ch = characteristic_polynomial(xi);
    let j = ideal.embed(ch.p.space())?;
    let pj = Ideal::new(ch.p.space(), vec![ch.p.clone()])?;
    for e in &cls.certificate {
        let target = if e.against == "J" { &j } else { &pj };
        let ok = match e.kind {
            CertKind::NormalForm => {
                let nf = target.normal_form(&e.poly, budget)?;
                Some(&nf) == e.remainder.as_ref() && nf.is_zero() == e.holds
            }
            CertKind::Radical => radical_membership(&e.poly, target, budget)? == e.holds,
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

fn nf_entry(label: String, against: &'static str, ideal: &Ideal, poly: MultiPoly, budget: Budget) -> Result<CertEntry> {
    let remainder = ideal.normal_form(&poly, budget)?;
    Ok(CertEntry {
        kind: CertKind::NormalForm,
        label,
        against,
        holds: remainder.is_zero(),
        poly,
        remainder: Some(remainder),
    })
}

fn radical_entry(label: String, against: &'static str, ideal: &Ideal, poly: MultiPoly, budget: Budget) -> Result<CertEntry> {
    Ok(CertEntry {
        kind: CertKind::Radical,
        label,
        against,
        holds: radical_membership(&poly, ideal, budget)?,
        poly,
        remainder: None,
    })
}

/// Places V(J) ⊆ ch(F) in the quasi-minimality trichotomy.
pub fn classify_ch_subvariety(xi: &PolyVectorField, ideal: &Ideal, budget: Budget) -> Result<Classification> {
    let ch = characteristic_polynomial(xi);
    let space = ch.p.space().clone();
    let n = space.n();
    let j = ideal.embed(&space)?.groebner(&MonomialOrder::GrevLex, budget)?;
    let mut cert = Vec::new();

    if j.cached_basis().unwrap().is_unit() {
        let mut c = Classification::new(ClassTag::EmptyVariety, cert);
        c.notes.push("J is the unit ideal".into());
        return Ok(c);
    }

    // (1) containment in ch(F)
    let e = radical_entry("P vanishes on V(J)".into(), "J", &j, ch.p.clone(), budget)?;
    let contained = e.holds;
    cert.push(e);
    if !contained {
        return Ok(Classification::new(ClassTag::NotContained, cert));
    }

    // (2) homogeneity along the fibers
    let ys: Vec<usize> = space.y_indices().collect();
    for (k, g) in j.generators().iter().enumerate() {
        let parts = g.components_in(&ys);
        if parts.len() < 2 {
            continue;
        }
        for (deg, part) in parts {
            let e = nf_entry(format!("y-degree {deg} part of generator {}", k + 1), "J", &j, part, budget)?;
            let ok = e.holds;
            cert.push(e);
            if !ok {
                return Ok(Classification::new(ClassTag::NotYHomogeneous, cert));
            }
        }
    }

    // (3) invariance under the prolongation
    let xh = prolong(xi);
    let inv = is_invariant(&xh.derivation(), &j, budget)?;
    for (k, chk) in inv.checks.iter().enumerate() {
        cert.push(CertEntry {
            kind: CertKind::NormalForm,
            label: format!("prolongation applied to basis element {}", k + 1),
            against: "J",
            poly: chk.image.clone(),
            holds: chk.remainder.is_zero(),
            remainder: Some(chk.remainder.clone()),
        });
    }
    if !inv.invariant {
        return Ok(Classification::new(ClassTag::NotInvariant, cert));
    }

    // (4a) zero section: V(J) = {y = 0}
    let mut zero_section = true;
    let mut zs_entries = Vec::new();
    for i in 0..n {
        let y = MultiPoly::var(&space, space.y(i));
        let e = radical_entry(format!("y{} vanishes on V(J)", i + 1), "J", &j, y, budget)?;
        zero_section &= e.holds;
        zs_entries.push(e);
        if !zero_section {
            break;
        }
    }
    if zero_section {
        let zero = Scalar::zero();
        let on_zero_section = j.generators().iter().all(|g| {
            ys.iter().fold(g.clone(), |acc, &i| acc.substitute_scalar(i, &zero)).is_zero()
        });
        if on_zero_section {
            cert.extend(zs_entries);
            return Ok(Classification::new(ClassTag::ZeroSection, cert));
        }
    }

    // (4b) fibers over singular points
    let xs: Vec<usize> = space.x_indices().collect();
    let jx = eliminate(&j, &xs, budget)?;
    if !jx.generators().is_empty() {
        let base = space.base();
        let jx_base = jx.embed(&base)?;
        let (zero_dim, _) = krull_dim_zero_check(&jx_base, budget)?;
        if zero_dim {
            let mut sing_entries = Vec::new();
            let mut all_singular = true;
            for (i, a) in xi.on_phase().components().iter().enumerate() {
                let e = radical_entry(format!("a{} vanishes on V(J)", i + 1), "J", &j, a.clone(), budget)?;
                all_singular &= e.holds;
                sing_entries.push(e);
            }
            if all_singular {
                let distinct = distinct_point_count(&jx_base, budget)?.unwrap_or(0);
                let pts = points_in_field(&jx_base, xi.field().as_ref(), budget)?;
                cert.extend(sing_entries);
                let mut c = Classification::new(ClassTag::FiberOverSingularPoint, Vec::new());
                if pts.len() as u64 == distinct {
                    if pts.len() == 1 {
                        for (i, v) in pts[0].iter().enumerate() {
                            let lin = &MultiPoly::var(&space, space.x(i)) - &MultiPoly::constant(&space, v.clone());
                            cert.push(radical_entry(format!("x{} - p{} vanishes on V(J)", i + 1, i + 1), "J", &j, lin, budget)?);
                        }
                    } else {
                        c.notes.push(format!("V(J) lies over {} singular points", pts.len()));
                    }
                } else {
                    c.residual = Some(jx.clone());
                    c.notes.push("some base points lie outside the working field; see the residual ideal".into());
                }
                c.points = pts;
                c.certificate = cert;
                return Ok(c);
            }
        }
    }

    // (4c) the whole characteristic variety: √J = √(P)
    let pideal = Ideal::new(&space, vec![ch.p.clone()])?;
    let mut whole = true;
    let mut whole_entries = Vec::new();
    for (k, g) in j.generators().iter().enumerate() {
        let e = radical_entry(format!("generator {} vanishes on ch(F)", k + 1), "(P)", &pideal, g.clone(), budget)?;
        whole &= e.holds;
        whole_entries.push(e);
        if !whole {
            break;
        }
    }
    cert.extend(whole_entries);
    if whole {
        return Ok(Classification::new(ClassTag::WholeCharVariety, cert));
    }

    let mut c = Classification::new(ClassTag::QuasiMinimalityViolation, cert);
    c.notes.push(
        "irreducibility of V(J) is not certified; a reducible V(J) may split into benign components".into(),
    );
    Ok(c)
}

/// A Darboux polynomial g with ξ(g) = c·g.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DarbouxPair {
    pub g: MultiPoly,
    pub cofactor: MultiPoly,
}

#[derive(Debug, Clone, Default)]
pub struct DarbouxResult {
    /// For each cofactor, a basis of its Darboux polynomials (reduced echelon form, lex-leading monic).
    pub pairs: Vec<DarbouxPair>,
    /// Cofactor systems whose solutions leave the working field.
    pub unresolved: Vec<String>,
}

/// Monomials of total degree ≤ d in n variables, lex-descending.
fn monomials_upto(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

/// Degree-bounded search for Darboux polynomials with cofactors in the working field.
pub fn darboux_search(
    xi: &PolyVectorField,
    max_deg: u32,
    max_cofactor: u32,
    budget: Budget,
) -> Result<DarbouxResult> {
    let base = xi.on_base();
    let space = base.space().clone();
    let n = base.n();
    let mut result = DarbouxResult::default();
    if max_deg == 0 {
        return Ok(result);
    }
    let cdeg = max_cofactor.min(base.degree().saturating_sub(1));
    let gmons = monomials_upto(n, max_deg);
    let cmons = monomials_upto(n, cdeg);
    let images: Vec<MultiPoly> = gmons
        .iter()
        .map(|m| base.apply(&MultiPoly::monomial(&space, m.clone(), Scalar::one())))
        .collect::<Result<_>>()?;
    let field = base.field();

    let mut cofactors: Vec<Vec<Scalar>> = Vec::new();
    // each nonzero g has a unique lex-leading monomial; gmons is lex-descending
    for lead in 0..gmons.len() {
        if gmons[lead].iter().all(|&e| e == 0) {
            continue;
        }
        let lower = &gmons[lead + 1..];
        let mut names: Vec<String> = (0..lower.len()).map(|k| format!("g{k}")).collect();
        names.extend((0..cmons.len()).map(|k| format!("c{k}")));
        let us = VarSpace::aux_only(names)?;
        let gvar = |k: usize| MultiPoly::var(&us, k);
        let cvar = |k: usize| MultiPoly::var(&us, lower.len() + k);
        // coefficient of x^mu in ξ(g) − c·g
        let mut eqs: BTreeMap<Vec<u32>, MultiPoly> = BTreeMap::new();
        let mut add = |mu: Vec<u32>, p: MultiPoly| {
            let e = eqs.entry(mu).or_insert_with(|| MultiPoly::zero(&us));
            *e = &*e + &p;
        };
        for (k, img) in images[lead..].iter().enumerate() {
            let gk = if k == 0 { MultiPoly::one(&us) } else { gvar(k - 1) };
            let gm = &gmons[lead + k];
            for (mu, a) in img.terms() {
                add(mu.clone(), gk.scale(a));
            }
            for (l, cm) in cmons.iter().enumerate() {
                let mu: Vec<u32> = gm.iter().zip(cm).map(|(a, b)| a + b).collect();
                add(mu, -&(&gk * &cvar(l)));
            }
        }
        let gens: Vec<MultiPoly> = eqs.into_values().filter(|p| !p.is_zero()).collect();
        let system = Ideal::new(&us, gens)?;
        if system.is_unit(budget)? {
            continue;
        }
        let keep: Vec<usize> = (lower.len()..us.len()).collect();
        let elim = eliminate(&system, &keep, budget)?;
        let cnames: Vec<String> = (0..cmons.len()).map(|k| format!("c{k}")).collect();
        let cs = VarSpace::aux_only(cnames)?;
        let celim = elim.embed(&cs)?;
        let (zero_dim, _) = krull_dim_zero_check(&celim, budget)?;
        if !zero_dim {
            return Err(Error::InfiniteFamily(format!(
                "cofactors of Darboux polynomials led by {} form a positive-dimensional family",
                MultiPoly::monomial(&space, gmons[lead].clone(), Scalar::one())
            )));
        }
        let pts = points_in_field(&celim, field.as_ref(), budget)?;
        let distinct = distinct_point_count(&celim, budget)?.unwrap_or(0);
        if (pts.len() as u64) < distinct {
            let shown: Vec<String> = celim.generators().iter().map(|g| g.to_string()).collect();
            result.unresolved.push(format!(
                "cofactor system for leading monomial {}: ({})",
                MultiPoly::monomial(&space, gmons[lead].clone(), Scalar::one()),
                shown.join(", ")
            ));
        }
        for p in pts {
            if !cofactors.contains(&p) {
                cofactors.push(p);
            }
        }
    }

    cofactors.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.canonical_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    // each cofactor: the kernel of g ↦ ξ(g) − c·g on polynomials of degree ≤ max_deg
    let rows_mons = monomials_upto(n, max_deg + cdeg.max(base.degree().saturating_sub(1)) + 1);
    let row_index: BTreeMap<&Vec<u32>, usize> = rows_mons.iter().enumerate().map(|(i, m)| (m, i)).collect();
    for c in cofactors {
        let cpoly = MultiPoly::from_terms(&space, cmons.iter().cloned().zip(c.iter().cloned()));
        let mut matrix = vec![vec![Scalar::zero(); gmons.len()]; rows_mons.len()];
        for (col, m) in gmons.iter().enumerate() {
            let mono = MultiPoly::monomial(&space, m.clone(), Scalar::one());
            let v = &images[col] - &(&cpoly * &mono);
            for (mu, a) in v.terms() {
                matrix[row_index[mu]][col] = a.clone();
            }
        }
        let mut basis = linalg::kernel(&matrix, gmons.len());
        linalg::rref(&mut basis);
        for row in basis {
            let g = MultiPoly::from_terms(&space, gmons.iter().cloned().zip(row));
            if g.is_constant() {
                continue;
            }
            result.pairs.push(DarbouxPair {
                g: g.embed(xi.space())?,
                cofactor: cpoly.embed(xi.space())?,
            });
        }
    }
    Ok(result)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfinityReport {
    pub invariant: bool,
    pub projective_degree: u32,
    /// g with a_i^{(d)} = x_i·g when the top part is radial.
    pub radial_factor: Option<MultiPoly>,
}

pub fn hyperplane_at_infinity(xi: &PolyVectorField) -> InfinityReport {
    let base = xi.on_base();
    let space = base.space().clone();
    let d = base.degree();
    let top: Vec<MultiPoly> = base.components().iter().map(|a| a.homogeneous_part(d)).collect();
    let n = base.n();
    let mut radial = true;
    'outer: for i in 0..n {
        for j in i + 1..n {
            let xi_ = MultiPoly::var(&space, i);
            let xj = MultiPoly::var(&space, j);
            if !(&(&xj * &top[i]) - &(&xi_ * &top[j])).is_zero() {
                radial = false;
                break 'outer;
            }
        }
    }
    // a constant field is never a radial multiple
    if d == 0 {
        radial = false;
    }
    let radial_factor = if radial {
        (0..n).find_map(|i| {
            (!top[i].is_zero())
                .then(|| top[i].exact_div(&MultiPoly::var(&space, i)))
                .flatten()
        })
    } else {
        None
    };
    InfinityReport {
        invariant: !radial,
        projective_degree: if radial { d - 1 } else { d },
        radial_factor: radial_factor.map(|g| g.embed(xi.space()).expect("x-block embeds")),
    }
}
