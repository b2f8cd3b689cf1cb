//! Subcommands. Each returns a JSON body plus whether the verdict is negative.

use std::sync::Arc;

use clap::{Args, Subcommand, ValueEnum};
use folichar_core::exterior::{
    binary_discriminant, is_distribution, is_infinitesimal_automorphism, is_integrable,
    logarithmic_normal_form,
};
use folichar_core::foliation::{
    ch_singular_locus, characteristic_polynomial, classify_ch_subvariety, darboux_search, hamiltonian,
    hyperplane_at_infinity, is_invariant, prolong, singular_scheme, verify_certificate, CertKind, ClassTag,
    PolyVectorField,
};
use folichar_core::poly::groebner_basis;
use folichar_core::singularity::{
    affine_change, bott_connection, coordinate_subspace_decomposition, holonomy_spectrum,
    jacobian_eigendata_partial, nonresonance_of, verify_prolongation_duality, EigenData,
};
use folichar_core::weyl::{bernstein_symbol, principal_symbol, weyl_mul};
use folichar_core::{Budget, Error, MonomialOrder, MultiPoly, NumberField, Scalar};
use serde_json::{json, Map, Value as Json};

use crate::error::CliError;
use crate::session::{Session, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Lex,
    Grevlex,
}

#[derive(Debug, Clone, Args)]
#[group(required = false, multiple = false)]
pub struct SymbolKind {
    /// Top part for the total-degree filtration
    #[arg(long)]
    pub bernstein: bool,
    /// Top part for the order filtration (default)
    #[arg(long)]
    pub order: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Characteristic polynomial P = Σ a_i y_i
    Ch,
    /// Hamiltonian prolongation of the field
    Prolong,
    /// Hamiltonian vector field of a function on the phase space
    Hamiltonian { function: String },
    /// Singular scheme of the field
    Sing,
    /// Singular locus of the characteristic variety
    ChSing,
    /// Invariance of an ideal (under the prolongation when it involves y)
    Invariant { ideal: String },
    /// Place V(J) in the quasi-minimality trichotomy
    Classify { ideal: String },
    /// Degree-bounded Darboux polynomial search
    Darboux {
        #[arg(long, default_value_t = 2)]
        max_deg: u32,
        #[arg(long)]
        max_cofactor: Option<u32>,
    },
    /// Degree bookkeeping at the hyperplane at infinity
    Degree,
    /// Linear part at a singular point
    Eigen {
        point: String,
        /// Adjoin a root of the unresolved factor under this name
        #[arg(long)]
        extend: Option<String>,
    },
    /// Non-resonance at a singular point
    Nonres {
        point: String,
        #[arg(long)]
        extend: Option<String>,
    },
    /// Linear holonomy around the separatrix of eigenvalue number `axis`
    Holonomy {
        point: String,
        axis: usize,
        #[arg(long)]
        extend: Option<String>,
    },
    /// Bott connection matrix along the x_axis coordinate axis
    Bott {
        axis: usize,
        /// Translate this point to the origin first
        #[arg(long)]
        at: Option<String>,
    },
    /// Check that the restricted prolongation is dual to the Bott connection
    Duality {
        axis: usize,
        #[arg(long)]
        at: Option<String>,
    },
    /// Coordinate-subspace decomposition of a torus-invariant ideal
    TorusFiber { ideal: String },
    /// Whether a form defines a distribution
    FormDist { form: String },
    /// Whether a form defines an integrable distribution
    FormInt { form: String },
    /// Logarithmic normal form of a torus-invariant form
    FormLognf { form: String },
    /// Whether a field is an infinitesimal automorphism of a form
    InfAuto { field: String, form: String },
    /// Discriminant of a binary form given by its coefficient tuple
    Disc { binary_form: String },
    /// Product of two Weyl operators
    WeylMul { a: String, b: String },
    /// Symbol of an operator (the session field when omitted)
    Symbol {
        #[command(flatten)]
        kind: SymbolKind,
        op: Option<String>,
    },
    /// Reduced Gröbner basis
    Gb {
        ideal: String,
        #[arg(long, value_enum, default_value_t = OrderArg::Grevlex)]
        order: OrderArg,
    },
    /// Canonical forms of every declaration
    Show,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Ch => "ch",
            Command::Prolong => "prolong",
            Command::Hamiltonian { .. } => "hamiltonian",
            Command::Sing => "sing",
            Command::ChSing => "ch-sing",
            Command::Invariant { .. } => "invariant",
            Command::Classify { .. } => "classify",
            Command::Darboux { .. } => "darboux",
            Command::Degree => "degree",
            Command::Eigen { .. } => "eigen",
            Command::Nonres { .. } => "nonres",
            Command::Holonomy { .. } => "holonomy",
            Command::Bott { .. } => "bott",
            Command::Duality { .. } => "duality",
            Command::TorusFiber { .. } => "torus-fiber",
            Command::FormDist { .. } => "form-dist",
            Command::FormInt { .. } => "form-int",
            Command::FormLognf { .. } => "form-lognf",
            Command::InfAuto { .. } => "inf-auto",
            Command::Disc { .. } => "disc",
            Command::WeylMul { .. } => "weyl-mul",
            Command::Symbol { .. } => "symbol",
            Command::Gb { .. } => "gb",
            Command::Show => "show",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Options {
    pub budget: Budget,
    pub assume_irreducible: bool,
    /// Declaration to use as the vector field.
    pub xi: Option<String>,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub inputs: Map<String, Json>,
    pub body: Map<String, Json>,
    pub negative: bool,
}

fn s<T: ToString>(v: &T) -> Json {
    Json::String(v.to_string())
}

fn strs<T: ToString>(v: &[T]) -> Json {
    Json::Array(v.iter().map(s).collect())
}

fn matrix<T: ToString>(m: &[Vec<T>]) -> Json {
    Json::Array(m.iter().map(|r| strs(r)).collect())
}

fn obj(v: Json) -> Map<String, Json> {
    match v {
        Json::Object(m) => m,
        _ => unreachable!("bodies are objects"),
    }
}

struct Ctx<'a> {
    session: &'a Session,
    opts: &'a Options,
    inputs: Map<String, Json>,
}

impl Ctx<'_> {
    fn arg(&mut self, key: &str, src: &str) -> Result<Value, CliError> {
        let v = self.session.eval_str(src)?;
        self.inputs.insert(key.into(), s(&v));
        Ok(v)
    }

    fn field(&mut self) -> Result<PolyVectorField, CliError> {
        let xi = self.session.vector_field(self.opts.xi.as_deref())?;
        self.inputs.insert("field".into(), s(&xi));
        Ok(xi)
    }

    fn budget(&self) -> Budget {
        self.opts.budget
    }

    fn extension(&self, eigen: &EigenData, name: &Option<String>) -> Result<Option<Arc<NumberField>>, CliError> {
        match name {
            Some(n) if !eigen.resolved() => Ok(Some(eigen.extension_from_residual(n, self.opts.assume_irreducible)?)),
            _ => Ok(None),
        }
    }

    fn eigendata(&mut self, point: &str, extend: &Option<String>) -> Result<EigenData, CliError> {
        let xi = self.field()?;
        let pv = self.arg("point", point)?;
        let p = self.session.to_point(&pv)?;
        let e = jacobian_eigendata_partial(&xi, &p, None, self.budget())?;
        match self.extension(&e, extend)? {
            Some(f) => {
                self.inputs.insert("extension".into(), json!(format!("{} where {} = 0", f.name(), f.min_poly_string())));
                Ok(jacobian_eigendata_partial(&xi, &p, Some(&f), self.budget())?)
            }
            None => Ok(e),
        }
    }

    fn moved_field(&mut self, axis: usize, at: &Option<String>) -> Result<PolyVectorField, CliError> {
        let xi = self.field()?;
        let n = xi.n();
        if axis == 0 || axis > n {
            return Err(CliError::Usage(format!("axis must be between 1 and {n}")));
        }
        self.inputs.insert("axis".into(), json!(axis));
        let shift = match at {
            Some(src) => {
                let v = self.arg("at", src)?;
                self.session.to_point(&v)?
            }
            None => vec![Scalar::zero(); n],
        };
        // x = P·x' + p with P swapping coordinates 1 and axis
        let perm: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let src = if i == 0 { axis - 1 } else if i == axis - 1 { 0 } else { i };
                (0..n).map(|j| if j == src { Scalar::one() } else { Scalar::zero() }).collect()
            })
            .collect();
        Ok(affine_change(&xi, &perm, &shift)?)
    }
}

fn eigen_json(e: &EigenData) -> Json {
    let vectors: Vec<Json> = e
        .eigenvectors
        .iter()
        .map(|(l, vs)| json!({"eigenvalue": s(l), "basis": matrix(vs)}))
        .collect();
    json!({
        "char_poly": e.char_poly.to_string_in("t"),
        "jacobian": matrix(&e.jacobian),
        "eigenvalues": strs(&e.eigenvalues),
        "eigenvectors": vectors,
        "residual": e.residual.as_ref().map(|r| r.to_string_in("t")),
        "invertible": e.invertible,
    })
}

fn tag_negative(tag: ClassTag) -> bool {
    tag.is_negative() || tag == ClassTag::EmptyVariety
}

pub fn run(session: &Session, cmd: &Command, opts: &Options) -> Result<Outcome, CliError> {
    let mut c = Ctx {
        session,
        opts,
        inputs: Map::new(),
    };
    let b = opts.budget;
    let (body, negative) = match cmd {
        Command::Ch => {
            let xi = c.field()?;
            let ch = characteristic_polynomial(&xi);
            (json!({"P": s(&ch.p), "ideal": [s(&ch.p)]}), false)
        }
        Command::Prolong => {
            let xi = c.field()?;
            let xh = prolong(&xi);
            let ham = hamiltonian(&characteristic_polynomial(&xi).p)?;
            (
                json!({
                    "x_components": strs(&xh.x_components),
                    "y_components": strs(&xh.y_components),
                    "equals_hamiltonian_of_P": ham == xh,
                }),
                false,
            )
        }
        Command::Hamiltonian { function } => {
            let f = match c.arg("function", function)? {
                Value::Poly(p) => p,
                other => return Err(CliError::Usage(format!("expected a function, found a {}", other.kind()))),
            };
            let h = hamiltonian(&f)?;
            (json!({"x_components": strs(&h.x_components), "y_components": strs(&h.y_components)}), false)
        }
        Command::Sing => {
            let xi = c.field()?;
            let sc = singular_scheme(&xi, b)?;
            (
                json!({
                    "ideal": strs(sc.ideal.generators()),
                    "isolated": sc.isolated,
                    "vecdim": sc.vecdim,
                    "distinct_points": sc.distinct_points,
                    "reduced": sc.reduced,
                    "points": matrix(&sc.points),
                    "divisorial_part": sc.divisorial_part.as_ref().map(|g| g.to_string()),
                    "valid_representative": sc.valid_representative(),
                }),
                false,
            )
        }
        Command::ChSing => {
            let xi = c.field()?;
            let r = ch_singular_locus(&xi, b)?;
            (
                json!({
                    "verdict": r.smooth_away_from_zero_section,
                    "smooth_away_from_zero_section": r.smooth_away_from_zero_section,
                    "offending": strs(&r.offending),
                    "criterion_applies": r.criterion_applies,
                    "jacobian_ideal": strs(r.ideal.cached_basis().map(|g| g.polys()).unwrap_or(&[])),
                }),
                !r.smooth_away_from_zero_section,
            )
        }
        Command::Invariant { ideal } => {
            let xi = c.field()?;
            let v = c.arg("ideal", ideal)?;
            let j = session.to_ideal(&v)?;
            let uses_y = j.generators().iter().any(|g| !g.uses_only(|i| i < session.n()));
            let (d, which) = if uses_y {
                (prolong(&xi).derivation(), "prolongation")
            } else {
                (xi.derivation(), "field")
            };
            let r = is_invariant(&d, &j, b)?;
            let checks: Vec<Json> = r
                .checks
                .iter()
                .map(|k| json!({"generator": s(&k.generator), "image": s(&k.image), "remainder": s(&k.remainder)}))
                .collect();
            (json!({"verdict": r.invariant, "invariant": r.invariant, "derivation": which, "checks": checks}), !r.invariant)
        }
        Command::Classify { ideal } => {
            let xi = c.field()?;
            let v = c.arg("ideal", ideal)?;
            let j = session.to_ideal(&v)?;
            let cls = classify_ch_subvariety(&xi, &j, b)?;
            let verified = verify_certificate(&xi, &j, &cls, b)?;
            let cert: Vec<Json> = cls
                .certificate
                .iter()
                .map(|e| {
                    json!({
                        "kind": match e.kind { CertKind::NormalForm => "normal_form", CertKind::Radical => "radical" },
                        "label": e.label,
                        "ideal": e.against,
                        "poly": s(&e.poly),
                        "remainder": e.remainder.as_ref().map(|r| r.to_string()),
                        "holds": e.holds,
                    })
                })
                .collect();
            (
                json!({
                    "tag": cls.tag.name(),
                    "point": cls.point().map(strs),
                    "points": matrix(&cls.points),
                    "residual": cls.residual.as_ref().map(|r| strs(r.generators())),
                    "certificate": cert,
                    "certificate_verified": verified,
                    "notes": cls.notes,
                }),
                tag_negative(cls.tag),
            )
        }
        Command::Darboux { max_deg, max_cofactor } => {
            let xi = c.field()?;
            let mc = max_cofactor.unwrap_or_else(|| xi.degree().saturating_sub(1));
            c.inputs.insert("max_deg".into(), json!(max_deg));
            c.inputs.insert("max_cofactor".into(), json!(mc));
            let r = darboux_search(&xi, *max_deg, mc, b)?;
            let pairs: Vec<Json> = r.pairs.iter().map(|p| json!({"g": s(&p.g), "cofactor": s(&p.cofactor)})).collect();
            (json!({"pairs": pairs, "unresolved": r.unresolved}), false)
        }
        Command::Degree => {
            let xi = c.field()?;
            let r = hyperplane_at_infinity(&xi);
            (
                json!({
                    "affine_degree": xi.degree(),
                    "invariant": r.invariant,
                    "projective_degree": r.projective_degree,
                    "radial_factor": r.radial_factor.as_ref().map(|g| g.to_string()),
                }),
                false,
            )
        }
        Command::Eigen { point, extend } => {
            let e = c.eigendata(point, extend)?;
            e.require_resolved()?;
            (eigen_json(&e), false)
        }
        Command::Nonres { point, extend } => {
            let e = c.eigendata(point, extend)?;
            let r = nonresonance_of(e)?;
            let mut body = obj(eigen_json(&r.eigen));
            body.insert("zrank".into(), json!(r.zrank));
            body.insert("nonresonant".into(), json!(r.nonresonant));
            body.insert("verdict".into(), json!(r.nonresonant));
            (Json::Object(body), !r.nonresonant)
        }
        Command::Holonomy { point, axis, extend } => {
            let e = c.eigendata(point, extend)?;
            c.inputs.insert("axis".into(), json!(axis));
            let xi = session.vector_field(opts.xi.as_deref())?;
            let h = holonomy_spectrum(&xi, &e.point, *axis, e.field.as_ref(), b)?;
            let entries: Vec<Json> = h
                .entries
                .iter()
                .map(|en| {
                    json!({
                        "index": en.index,
                        "ratio": s(&en.ratio),
                        "multiplier": en.symbol(),
                        "root_of_unity": en.root_of_unity,
                        "order": en.order.as_ref().map(|o| o.to_string()),
                    })
                })
                .collect();
            (
                json!({
                    "eigenvalues": strs(&h.resonance.eigen.eigenvalues),
                    "spectrum": entries,
                    "zrank": h.resonance.zrank,
                    "maximal_torus": h.maximal_torus,
                }),
                false,
            )
        }
        Command::Bott { axis, at } => {
            let moved = c.moved_field(*axis, at)?;
            let a = bott_connection(&moved)?;
            (json!({"moved_field": s(&moved), "matrix": matrix(&a)}), false)
        }
        Command::Duality { axis, at } => {
            let moved = c.moved_field(*axis, at)?;
            let r = verify_prolongation_duality(&moved)?;
            (
                json!({"moved_field": s(&moved), "A": matrix(&r.a), "B": matrix(&r.b), "verdict": r.holds, "holds": r.holds}),
                !r.holds,
            )
        }
        Command::TorusFiber { ideal } => {
            let v = c.arg("ideal", ideal)?;
            let j = session.to_ideal(&v)?;
            let r = coordinate_subspace_decomposition(&j, b)?;
            let comps: Vec<Json> = r
                .components
                .iter()
                .map(|cs| json!({"subspace": r.describe(&session.space, cs), "dimension": cs.dimension}))
                .collect();
            (
                json!({
                    "verdict": r.torus_invariant,
                    "torus_invariant": r.torus_invariant,
                    "monomial_generators": strs(&r.monomial_generators),
                    "components": comps,
                    "equidimensional": r.equidimensional,
                    "verified": r.verify(),
                    "witness": r.witness.as_ref().map(|w| w.to_string()),
                }),
                !r.torus_invariant,
            )
        }
        Command::FormDist { form } => {
            let v = c.arg("form", form)?;
            let w = session.to_form(&v)?;
            let ok = is_distribution(&w)?;
            (json!({"verdict": ok, "distribution": ok, "degree": w.degree()}), !ok)
        }
        Command::FormInt { form } => {
            let v = c.arg("form", form)?;
            let w = session.to_form(&v)?;
            match is_integrable(&w) {
                Ok(ok) => (json!({"verdict": ok, "distribution": true, "integrable": ok}), !ok),
                Err(Error::NotADistribution) => {
                    (json!({"verdict": false, "distribution": false, "integrable": false}), true)
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::FormLognf { form } => {
            let v = c.arg("form", form)?;
            let w = session.to_form(&v)?;
            match logarithmic_normal_form(&w) {
                Ok(l) => {
                    let lambdas: Vec<Json> = l
                        .lambdas
                        .iter()
                        .map(|(idx, lam)| {
                            let i: Vec<usize> = idx.iter().map(|k| k + 1).collect();
                            json!({"index": i, "lambda": s(lam)})
                        })
                        .collect();
                    let names: Vec<String> = l.support.iter().map(|&i| session.space.name(i).to_string()).collect();
                    let witness = l.witness.as_ref().map(|wt| {
                        let vars: Vec<String> = wt.indices.iter().map(|&i| session.space.name(i).to_string()).collect();
                        json!({"subspace": format!("{{{} = 0}}", vars.join(" = ")), "dimension": wt.dimension, "verified": wt.verified})
                    });
                    (
                        json!({
                            "verdict": true,
                            "h": s(&l.h),
                            "lambdas": lambdas,
                            "support": names,
                            "k": l.k(),
                            "q": w.degree(),
                            "witness": witness,
                        }),
                        false,
                    )
                }
                Err(e @ (Error::NotTorusInvariant | Error::NotLogarithmic(_))) => {
                    (json!({"verdict": false, "reason": e.to_string()}), true)
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::InfAuto { field, form } => {
            let fv = c.arg("field", field)?;
            let xi = session.to_field(&fv)?;
            let v = c.arg("form", form)?;
            let w = session.to_form(&v)?;
            let ok = is_infinitesimal_automorphism(xi.components(), &w)?;
            (json!({"verdict": ok, "automorphism": ok}), !ok)
        }
        Command::Disc { binary_form } => {
            let v = c.arg("binary_form", binary_form)?;
            let coeffs: Vec<MultiPoly> = match v {
                Value::Tuple(items) => items
                    .into_iter()
                    .map(|i| match i {
                        Value::Poly(p) => Ok(p),
                        other => Err(CliError::Usage(format!("coefficients must be polynomials, found {other}"))),
                    })
                    .collect::<Result<_, _>>()?,
                other => return Err(CliError::Usage(format!("expected a coefficient tuple, found a {}", other.kind()))),
            };
            let d = binary_discriminant(&coeffs)?;
            (json!({"discriminant": s(&d), "k": coeffs.len() - 1}), false)
        }
        Command::WeylMul { a, b: bsrc } => {
            let x = c.arg("a", a)?;
            let y = c.arg("b", bsrc)?;
            let p = weyl_mul(&session.to_op(&x)?, &session.to_op(&y)?)?;
            (json!({"product": s(&p)}), false)
        }
        Command::Symbol { kind, op } => {
            let d = match op {
                Some(src) => {
                    let v = c.arg("op", src)?;
                    session.to_op(&v)?
                }
                None => {
                    let xi = c.field()?;
                    folichar_core::weyl::WeylOperator::from_vector_field(&xi)
                }
            };
            if kind.bernstein {
                let (k, sym) = bernstein_symbol(&d)?;
                (json!({"filtration": "bernstein", "degree": k, "symbol": s(&sym)}), false)
            } else {
                let (m, sym) = principal_symbol(&d)?;
                (json!({"filtration": "order", "order": m, "symbol": s(&sym)}), false)
            }
        }
        Command::Gb { ideal, order } => {
            let v = c.arg("ideal", ideal)?;
            let j = session.to_ideal(&v)?;
            let ord = match order {
                OrderArg::Lex => MonomialOrder::Lex,
                OrderArg::Grevlex => MonomialOrder::GrevLex,
            };
            let gb = groebner_basis(j.space(), j.generators(), &ord, b)?;
            (json!({"order": ord.name(), "basis": strs(gb.polys())}), false)
        }
        Command::Show => {
            let decls: Vec<Json> = session
                .decls
                .iter()
                .map(|d| json!({"name": d.name, "kind": d.value.kind(), "value": s(&d.value)}))
                .collect();
            (
                json!({
                    "vars": session.space.x_vars(),
                    "field": session.field.as_ref().map(|f| format!("{} where {} = 0", f.name(), f.min_poly_string())),
                    "declarations": decls,
                }),
                false,
            )
        }
    };
    Ok(Outcome {
        inputs: c.inputs,
        body: obj(body),
        negative,
    })
}
