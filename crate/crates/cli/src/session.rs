//! Session files: a `vars:` header, an optional number field, and named declarations.

use std::fmt;
use std::sync::Arc;

use folichar_core::exterior::PolyForm;
use folichar_core::foliation::PolyVectorField;
use folichar_core::weyl::{weyl_mul, WeylOperator};
use folichar_core::{Ideal, MultiPoly, NumberField, Scalar, VarSpace};
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::CliError;
use crate::syntax::{parse_expr, BinOp, Expr};

/// A declared object. Operators carry ∂'s, forms carry dx's.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Poly(MultiPoly),
    Op(WeylOperator),
    Form(PolyForm),
    Tuple(Vec<Value>),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Poly(_) => "polynomial",
            Value::Op(_) => "operator",
            Value::Form(_) => "form",
            Value::Tuple(_) => "tuple",
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Poly(p) => write!(f, "{p}"),
            Value::Op(o) => write!(f, "{o}"),
            // keep the degree of a zero form visible
            Value::Form(w) if w.is_zero() && w.degree() == 1 => write!(f, "0*dx1"),
            Value::Form(w) if w.is_zero() && w.degree() > 1 => {
                let basis: Vec<String> = (1..=w.degree()).map(|i| format!("dx{i}")).collect();
                write!(f, "0*({})", basis.join("^"))
            }
            Value::Form(w) => write!(f, "{w}"),
            Value::Tuple(items) if items.len() == 1 => write!(f, "({},)", items[0]),
            Value::Tuple(items) => {
                let parts: Vec<String> = items.iter().map(|v| v.to_string()).collect();
                write!(f, "({})", parts.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decl {
    pub name: String,
    pub value: Value,
    pub line: usize,
}

#[derive(Debug, Clone)]
pub struct Session {
    /// x-block from the header plus y1 … yn.
    pub space: Arc<VarSpace>,
    pub field: Option<Arc<NumberField>>,
    pub decls: Vec<Decl>,
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn char_col(line: &str, byte: usize) -> usize {
    line[..byte].chars().count()
}

impl Session {
    pub fn parse(text: &str) -> Result<Session, CliError> {
        Session::parse_with(text, false)
    }

    pub fn parse_with(text: &str, assume_irreducible: bool) -> Result<Session, CliError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (hline, header) = loop {
            match lines.next() {
                None => {
                    return Err(CliError::Syntax {
                        line: 1,
                        column: 0,
                        expected: "expected a 'vars:' header".into(),
                    })
                }
                Some((_, l)) if strip_comment(l).trim().is_empty() => {}
                Some((i, l)) => break (i, l),
            }
        };
        let body = strip_comment(header);
        let trimmed = body.trim_start();
        if !trimmed.starts_with("vars:") {
            return Err(CliError::Syntax {
                line: hline,
                column: char_col(body, body.len() - trimmed.len()),
                expected: "expected a 'vars:' header".into(),
            });
        }
        let after = body.find("vars:").unwrap() + 5;
        let (vars_part, field_part) = match body[after..].find("field:") {
            Some(k) => (&body[after..after + k], Some((hline, after + k + 6, body))),
            None => (&body[after..], None),
        };
        let mut names = Vec::new();
        for (k, name) in vars_part.split_whitespace().enumerate() {
            if !is_ident(name) || names.contains(&name.to_string()) {
                let pos = body[after..].find(name).map(|p| after + p).unwrap_or(after);
                return Err(CliError::Syntax {
                    line: hline,
                    column: char_col(body, pos),
                    expected: format!("expected a fresh variable name (position {})", k + 1),
                });
            }
            names.push(name.to_string());
        }
        if names.is_empty() {
            return Err(CliError::Syntax {
                line: hline,
                column: char_col(body, body.len()),
                expected: "expected at least one variable".into(),
            });
        }
        let ys: Vec<String> = (1..=names.len()).map(|i| format!("y{i}")).collect();
        let space = VarSpace::new(names, ys, Vec::new()).map_err(|e| CliError::Syntax {
            line: hline,
            column: char_col(body, after),
            expected: e.to_string(),
        })?;
        let mut session = Session {
            space,
            field: None,
            decls: Vec::new(),
        };
        if let Some((l, start, src)) = field_part {
            session.field = Some(parse_field(&src[start..], l, char_col(src, start), assume_irreducible)?);
        }

        for (lno, raw) in lines {
            let line = strip_comment(raw);
            if line.trim().is_empty() {
                continue;
            }
            let lead = line.trim_start();
            if lead.starts_with("field:") {
                if session.field.is_some() || !session.decls.is_empty() {
                    return Err(CliError::Syntax {
                        line: lno,
                        column: char_col(line, line.len() - lead.len()),
                        expected: "the field must be declared once, before any declaration".into(),
                    });
                }
                let start = line.find("field:").unwrap() + 6;
                session.field = Some(parse_field(&line[start..], lno, char_col(line, start), assume_irreducible)?);
                continue;
            }
            let Some(colon) = line.find(':') else {
                return Err(CliError::Syntax {
                    line: lno,
                    column: char_col(line, line.len()),
                    expected: "expected 'name: expression'".into(),
                });
            };
            let name = line[..colon].trim();
            let name_col = char_col(line, line.len() - lead.len());
            if !is_ident(name) || session.is_reserved(name) || session.get(name).is_some() {
                return Err(CliError::Syntax {
                    line: lno,
                    column: name_col,
                    expected: format!("expected a fresh declaration name, found '{name}'"),
                });
            }
            let value = session.eval_at(&line[colon + 1..], lno, char_col(line, colon + 1))?;
            session.decls.push(Decl {
                name: name.to_string(),
                value,
                line: lno,
            });
        }
        Ok(session)
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.decls.iter().find(|d| d.name == name).map(|d| &d.value)
    }

    fn generator_name(&self) -> Option<&str> {
        self.field.as_ref().map(|f| f.name())
    }

    /// Names with a built-in meaning: variables, y_i, d_i, d<var>, the field generator.
    pub fn is_reserved(&self, name: &str) -> bool {
        self.space.index_of(name).is_some()
            || self.generator_name() == Some(name)
            || self.index_suffix(name, "d").is_some()
            || name.strip_prefix('d').is_some_and(|rest| self.space.x_vars().iter().any(|v| v == rest))
    }

    fn index_suffix(&self, name: &str, prefix: &str) -> Option<usize> {
        let rest = name.strip_prefix(prefix)?;
        if rest.starts_with('0') {
            return None;
        }
        let i: usize = rest.parse().ok()?;
        (1..=self.n()).contains(&i).then_some(i - 1)
    }

    /// Evaluates a command-line argument; reported positions use line 0.
    pub fn eval_str(&self, src: &str) -> Result<Value, CliError> {
        self.eval_at(src, 0, 0)
    }

    fn eval_at(&self, src: &str, line: usize, offset: usize) -> Result<Value, CliError> {
        let expr = parse_expr(src, line, offset)?;
        Ok(self.canonical(Evaluator { session: self, line }.eval(&expr)?))
    }

    /// An operator without ∂ terms is the polynomial it multiplies by.
    fn canonical(&self, v: Value) -> Value {
        match v {
            Value::Op(o) if o.terms().keys().all(|(_, b)| b.iter().all(|&e| e == 0)) => {
                let n = self.n();
                Value::Poly(MultiPoly::from_terms(
                    &self.space,
                    o.terms().iter().map(|((a, _), c)| {
                        let mut m = a.clone();
                        m.resize(2 * n, 0);
                        (m, c.clone())
                    }),
                ))
            }
            Value::Tuple(items) => Value::Tuple(items.into_iter().map(|i| self.canonical(i)).collect()),
            other => other,
        }
    }

    /// Canonical session text; parsing it back gives the same declarations.
    pub fn print(&self) -> String {
        let mut out = format!("vars: {}", self.space.x_vars().join(" "));
        if let Some(f) = &self.field {
            out.push_str(&format!("\nfield: {} where {} = 0", f.name(), f.min_poly_string()));
        }
        for d in &self.decls {
            out.push_str(&format!("\n{}: {}", d.name, d.value));
        }
        out.push('\n');
        out
    }

    pub fn to_ideal(&self, v: &Value) -> Result<Ideal, CliError> {
        let gens = match v {
            Value::Poly(p) => vec![p.clone()],
            Value::Tuple(items) => items
                .iter()
                .map(|i| match i {
                    Value::Poly(p) => Ok(p.clone()),
                    other => Err(CliError::Usage(format!("an ideal needs polynomials, found a {}", other.kind()))),
                })
                .collect::<Result<_, _>>()?,
            other => return Err(CliError::Usage(format!("expected an ideal, found a {}", other.kind()))),
        };
        Ok(Ideal::new(&self.space, gens)?)
    }

    pub fn to_point(&self, v: &Value) -> Result<Vec<Scalar>, CliError> {
        let items = match v {
            Value::Tuple(items) => items.clone(),
            single => vec![single.clone()],
        };
        if items.len() != self.n() {
            return Err(CliError::Usage(format!("a point needs {} coordinates, found {}", self.n(), items.len())));
        }
        items
            .iter()
            .map(|i| match i {
                Value::Poly(p) if p.is_constant() => Ok(p.constant_value().unwrap_or_else(Scalar::zero)),
                other => Err(CliError::Usage(format!("point coordinates must be constants, found {other}"))),
            })
            .collect()
    }

    pub fn to_form(&self, v: &Value) -> Result<PolyForm, CliError> {
        match v {
            Value::Form(w) => Ok(w.clone()),
            other => Err(CliError::Usage(format!("expected a form, found a {}", other.kind()))),
        }
    }

    pub fn to_op(&self, v: &Value) -> Result<WeylOperator, CliError> {
        match v {
            Value::Op(o) => Ok(o.clone()),
            Value::Poly(p) => WeylOperator::from_poly(p).map_err(|e| CliError::Usage(e.to_string())),
            other => Err(CliError::Usage(format!("expected an operator, found a {}", other.kind()))),
        }
    }

    pub fn to_field(&self, v: &Value) -> Result<PolyVectorField, CliError> {
        let comps: Vec<MultiPoly> = match v {
            Value::Op(o) => {
                let n = self.n();
                let mut comps = vec![MultiPoly::zero(&self.space); n];
                for ((a, b), c) in o.terms() {
                    let ord: u32 = b.iter().sum();
                    if ord != 1 {
                        return Err(CliError::Usage(format!("{o} is not a vector field (a term has order {ord})")));
                    }
                    let i = b.iter().position(|&e| e == 1).unwrap();
                    let mut m = a.clone();
                    m.extend(std::iter::repeat(0).take(n));
                    comps[i] = &comps[i] + &MultiPoly::monomial(&self.space, m, c.clone());
                }
                comps
            }
            Value::Tuple(items) => items
                .iter()
                .map(|i| match i {
                    Value::Poly(p) => Ok(p.clone()),
                    other => Err(CliError::Usage(format!("field components must be polynomials, found {other}"))),
                })
                .collect::<Result<_, _>>()?,
            other => return Err(CliError::Usage(format!("expected a vector field, found a {}", other.kind()))),
        };
        Ok(PolyVectorField::new(&self.space, comps)?)
    }

    /// The session's vector field: `name`, else `xi`, else the only declared vector field.
    pub fn vector_field(&self, name: Option<&str>) -> Result<PolyVectorField, CliError> {
        if let Some(name) = name {
            let v = self.get(name).ok_or_else(|| CliError::Usage(format!("no declaration named '{name}'")))?;
            return self.to_field(v);
        }
        if let Some(v) = self.get("xi") {
            return self.to_field(v);
        }
        let fields: Vec<PolyVectorField> = self
            .decls
            .iter()
            .filter(|d| matches!(d.value, Value::Op(_)))
            .filter_map(|d| self.to_field(&d.value).ok())
            .collect();
        match fields.len() {
            1 => Ok(fields.into_iter().next().unwrap()),
            0 => Err(CliError::Usage("the session declares no vector field".into())),
            _ => Err(CliError::Usage("several vector fields are declared; pick one with --xi".into())),
        }
    }
}

fn parse_field(src: &str, line: usize, offset: usize, assume_irreducible: bool) -> Result<Arc<NumberField>, CliError> {
    let err = |column: usize, expected: &str| CliError::Syntax {
        line,
        column,
        expected: expected.into(),
    };
    let lead = src.len() - src.trim_start().len();
    let rest = src.trim_start();
    let name_len = rest.find(char::is_whitespace).unwrap_or(rest.len());
    let name = &rest[..name_len];
    if !is_ident(name) {
        return Err(err(offset + char_col(src, lead), "expected the generator name"));
    }
    let after_name = &rest[name_len..];
    let w = after_name.trim_start();
    let wcol = offset + char_col(src, src.len() - w.len());
    let Some(poly_src) = w.strip_prefix("where") else {
        return Err(err(wcol, "expected 'where'"));
    };
    let Some(eq) = poly_src.find('=') else {
        return Err(err(offset + char_col(src, src.len()), "expected '= 0'"));
    };
    let rhs = poly_src[eq + 1..].trim();
    if rhs != "0" {
        let col = offset + char_col(src, src.len() - poly_src.len() + eq + 1);
        return Err(err(col, "expected '= 0'"));
    }
    let pcol = offset + char_col(src, src.len() - poly_src.len());
    let expr = parse_expr(&poly_src[..eq], line, pcol)?;
    let space = VarSpace::aux_only(vec![name.to_string()]).expect("one name");
    let scratch = Session {
        space,
        field: None,
        decls: Vec::new(),
    };
    let value = Evaluator { session: &scratch, line }.eval(&expr)?;
    let Value::Poly(p) = value else {
        return Err(err(pcol, "expected a polynomial in the generator"));
    };
    let deg = p.total_degree().unwrap_or(0) as usize;
    let mut coeffs = vec![BigRational::from_integer(0.into()); deg + 1];
    for (m, c) in p.terms() {
        coeffs[m[0] as usize] = c
            .as_rational()
            .ok_or_else(|| err(pcol, "expected rational coefficients"))?;
    }
    NumberField::new(name, coeffs, assume_irreducible).map_err(|e| CliError::Lib(e.into()))
}

struct Evaluator<'a> {
    session: &'a Session,
    line: usize,
}

impl Evaluator<'_> {
    fn mixed(&self, col: usize, message: impl Into<String>) -> CliError {
        CliError::MixedContext {
            message: message.into(),
            line: self.line,
            column: col,
        }
    }

    fn space(&self) -> &Arc<VarSpace> {
        &self.session.space
    }

    fn dim(&self) -> usize {
        self.session.n()
    }

    fn eval(&self, e: &Expr) -> Result<Value, CliError> {
        match e {
            Expr::Num(n, _) => Ok(Value::Poly(MultiPoly::constant(
                self.space(),
                Scalar::from(BigRational::from_integer(n.clone())),
            ))),
            Expr::Name(name, col) => self.resolve(name, *col),
            Expr::Neg(inner, col) => self.negate(self.eval(inner)?, *col),
            Expr::Tuple(items, _) => Ok(Value::Tuple(items.iter().map(|i| self.eval(i)).collect::<Result<_, _>>()?)),
            Expr::Bin(op, l, r, col) => {
                let a = self.eval(l)?;
                let b = self.eval(r)?;
                match op {
                    BinOp::Add => self.add(a, b, *col),
                    BinOp::Sub => {
                        let nb = self.negate(b, *col)?;
                        self.add(a, nb, *col)
                    }
                    BinOp::Mul => self.mul(a, b, *col),
                    BinOp::Div => self.div(a, b, r.col()),
                    BinOp::Pow => self.pow(a, b, *col, r.col()),
                }
            }
        }
    }

    fn resolve(&self, name: &str, col: usize) -> Result<Value, CliError> {
        let s = self.session;
        if let Some(i) = s.space.index_of(name) {
            return Ok(Value::Poly(MultiPoly::var(&s.space, i)));
        }
        if let Some(f) = &s.field {
            if f.name() == name {
                return Ok(Value::Poly(MultiPoly::constant(&s.space, f.generator())));
            }
        }
        if s.space.n() > 0 {
            if let Some(i) = s.index_suffix(name, "d") {
                return Ok(Value::Op(WeylOperator::d(&s.space, i)));
            }
            if let Some(rest) = name.strip_prefix('d') {
                if let Some(i) = s.space.x_vars().iter().position(|v| v == rest) {
                    return Ok(Value::Form(PolyForm::differential(&s.space, self.dim(), i)));
                }
            }
        }
        if let Some(v) = s.get(name) {
            return Ok(v.clone());
        }
        Err(CliError::UnknownVariable {
            name: name.to_string(),
            line: self.line,
            column: col,
        })
    }

    fn to_op(&self, v: &Value, col: usize) -> Result<WeylOperator, CliError> {
        match v {
            Value::Op(o) => Ok(o.clone()),
            Value::Poly(p) => WeylOperator::from_poly(p)
                .map_err(|_| self.mixed(col, "operators only combine with polynomials in the x-variables")),
            other => Err(self.mixed(col, format!("cannot combine an operator with a {}", other.kind()))),
        }
    }

    fn negate(&self, v: Value, col: usize) -> Result<Value, CliError> {
        Ok(match v {
            Value::Poly(p) => Value::Poly(-&p),
            Value::Op(o) => Value::Op(o.scale(&-Scalar::one())),
            Value::Form(w) => Value::Form(w.neg()),
            Value::Tuple(_) => return Err(self.mixed(col, "arithmetic on a tuple")),
        })
    }

    fn add(&self, a: Value, b: Value, col: usize) -> Result<Value, CliError> {
        match (&a, &b) {
            (Value::Poly(p), Value::Poly(q)) => Ok(Value::Poly(p + q)),
            (Value::Op(_), Value::Op(_) | Value::Poly(_)) | (Value::Poly(_), Value::Op(_)) => {
                let x = self.to_op(&a, col)?;
                let y = self.to_op(&b, col)?;
                Ok(Value::Op(x.add(&y)?))
            }
            (Value::Form(v), Value::Form(w)) => {
                v.add(w).map(Value::Form).map_err(|_| self.mixed(col, "sum of forms of different degrees"))
            }
            _ => Err(self.mixed(col, format!("cannot add a {} and a {}", a.kind(), b.kind()))),
        }
    }

    fn mul(&self, a: Value, b: Value, col: usize) -> Result<Value, CliError> {
        match (&a, &b) {
            (Value::Poly(p), Value::Poly(q)) => Ok(Value::Poly(p * q)),
            (Value::Op(_), Value::Op(_) | Value::Poly(_)) | (Value::Poly(_), Value::Op(_)) => {
                let x = self.to_op(&a, col)?;
                let y = self.to_op(&b, col)?;
                Ok(Value::Op(weyl_mul(&x, &y)?))
            }
            (Value::Poly(p), Value::Form(w)) | (Value::Form(w), Value::Poly(p)) => Ok(Value::Form(w.mul_poly(p))),
            (Value::Form(_), Value::Form(_)) => Err(self.mixed(col, "forms multiply with '^' (wedge)")),
            _ => Err(self.mixed(col, format!("cannot multiply a {} and a {}", a.kind(), b.kind()))),
        }
    }

    fn constant_of(&self, v: &Value) -> Option<Scalar> {
        match v {
            Value::Poly(p) if p.is_constant() => Some(p.constant_value().unwrap_or_else(Scalar::zero)),
            _ => None,
        }
    }

    fn div(&self, a: Value, b: Value, col: usize) -> Result<Value, CliError> {
        let c = self
            .constant_of(&b)
            .ok_or_else(|| CliError::Syntax {
                line: self.line,
                column: col,
                expected: "expected a constant divisor".into(),
            })?;
        let inv = c.inv().ok_or_else(|| CliError::Syntax {
            line: self.line,
            column: col,
            expected: "expected a nonzero divisor".into(),
        })?;
        let invp = Value::Poly(MultiPoly::constant(self.space(), inv));
        self.mul(a, invp, col)
    }

    fn pow(&self, a: Value, b: Value, col: usize, ecol: usize) -> Result<Value, CliError> {
        if let (Value::Form(v), Value::Form(w)) = (&a, &b) {
            return v.wedge(w).map(Value::Form).map_err(|e| self.mixed(col, e.to_string()));
        }
        if matches!(a, Value::Form(_)) || matches!(b, Value::Form(_)) {
            return Err(self.mixed(col, "'^' between a form and a non-form"));
        }
        let e = self
            .constant_of(&b)
            .and_then(|c| c.as_rational())
            .filter(|r| r.is_integer())
            .and_then(|r| r.to_integer().to_u32())
            .filter(|&e| e <= 10_000)
            .ok_or_else(|| CliError::Syntax {
                line: self.line,
                column: ecol,
                expected: "expected a small nonnegative integer exponent".into(),
            })?;
        match a {
            Value::Poly(p) => Ok(Value::Poly(p.pow(e))),
            Value::Op(o) => Ok(Value::Op(o.pow(e))),
            _ => Err(self.mixed(col, "power of a tuple")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let s = Session::parse("vars: x1 x2\nxi: x2*d1 - x1*d2\nf: (1/2)*x1^2\n").unwrap();
        let xi = s.vector_field(None).unwrap();
        assert_eq!(xi.to_string(), "x2*d1 - x1*d2");
        assert_eq!(s.get("f").unwrap().to_string(), "1/2*x1^2");
        let err = Session::parse("vars: x1 x2\ng: x1 + * 2\n").unwrap_err();
        assert!(matches!(err, CliError::Syntax { line: 2, column: 8, .. }), "{err:?}");
    }

    #[test]
    fn contexts() {
        let s = Session::parse("vars: x1 x2 x3\nw: x3*(dx1^dx2)\nv: x2*dx1 + x1*dx2\nop: d1*x1\n").unwrap();
        assert_eq!(s.get("w").unwrap().to_string(), "x3*(dx1^dx2)");
        assert_eq!(s.get("op").unwrap().to_string(), "x1*d1 + 1");
        let err = Session::parse("vars: x1\nbad: d1^dx1\n").unwrap_err();
        assert!(matches!(err, CliError::MixedContext { line: 2, .. }));
        let err = Session::parse("vars: x1\nbad: z + 1\n").unwrap_err();
        assert!(matches!(err, CliError::UnknownVariable { line: 2, column: 5, .. }));
    }

    #[test]
    fn field_header() {
        let s = Session::parse("vars: x1 x2 field: a where a^2 - 2 = 0\nxi: x1*d1 + a*x2*d2\n").unwrap();
        assert_eq!(s.field.as_ref().unwrap().name(), "a");
        let again = Session::parse(&s.print()).unwrap();
        let strip = |s: &Session| s.decls.iter().map(|d| (d.name.clone(), d.value.clone())).collect::<Vec<_>>();
        assert_eq!(strip(&again), strip(&s));
        let err = Session::parse("vars: x1\nfield: a where a^2 - 1 = 0\n").unwrap_err();
        assert!(matches!(err, CliError::Lib(_)));
    }
}
