//! Acceptance run: one line per criterion, non-zero exit if any fails.
//!
//! Runs without the libtest harness so the verdict lines always reach the log.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::*;
use folichar_core::exterior::{
    is_distribution, is_integrable, lie_derivative, logarithmic_normal_form, symplectic_form, PolyForm,
};
use folichar_core::foliation::{
    characteristic_polynomial, classify_ch_subvariety, darboux_search, hamiltonian, hyperplane_at_infinity,
    is_invariant, prolong, verify_certificate, ClassTag, PolyVectorField,
};
use folichar_core::poly::{eliminate, point_ideal};
use folichar_core::scalar::rat;
use folichar_core::singularity::{
    coordinate_subspace_decomposition, holonomy_spectrum, is_nonresonant, verify_prolongation_duality,
};
use folichar_core::weyl::{bernstein_symbol, principal_symbol, weyl_mul, WeylOperator};
use folichar_core::{Budget, Ideal, MultiPoly, NumberField, Scalar, VarSpace};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn b() -> Budget {
    Budget::default()
}

fn lib<T>(r: folichar_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

struct Vars(Arc<VarSpace>);

impl Vars {
    fn phase(n: usize) -> Vars {
        Vars(VarSpace::phase(n))
    }
    fn x(&self, i: usize) -> MultiPoly {
        MultiPoly::var(&self.0, self.0.x(i - 1))
    }
    fn y(&self, i: usize) -> MultiPoly {
        MultiPoly::var(&self.0, self.0.y(i - 1))
    }
    fn c(&self, v: i64) -> MultiPoly {
        MultiPoly::constant(&self.0, int(v))
    }
    fn field(&self, comps: Vec<MultiPoly>) -> PolyVectorField {
        PolyVectorField::new(&self.0, comps).unwrap()
    }
    fn ideal(&self, gens: Vec<MultiPoly>) -> Ideal {
        Ideal::new(&self.0, gens).unwrap()
    }
}

fn tangency() -> Outcome {
    let mut rng = rng("tangency");
    for case in 0..200 {
        let n = [2, 3, 4][case % 3];
        let xi = rand_field(&mut rng, n, 3);
        let p = characteristic_polynomial(&xi).p;
        let hat = prolong(&xi);
        ensure!(lib(hat.apply(&p))?.is_zero(), "prolongation not tangent to P for {xi}");
        let h = lib(hamiltonian(&p))?;
        ensure!(
            h.x_components == hat.x_components && h.y_components == hat.y_components,
            "prolongation differs from the Hamiltonian of P for {xi}"
        );
    }
    Ok("200 fields, n in {2,3,4}, degree <= 3".into())
}

fn symplectic() -> Outcome {
    let mut rng = rng("symplectic");
    for case in 0..100 {
        let n = 2 + case % 2;
        let hat = prolong(&rand_field(&mut rng, n, 3));
        let omega = symplectic_form(hat.space());
        ensure!(lib(lie_derivative(&hat.all_components(), &omega))?.is_zero(), "L_xi Omega != 0");

        let space = VarSpace::phase(n);
        let vars: Vec<usize> = (0..space.len()).collect();
        let (u, f) = loop {
            let u = rand_poly(&mut rng, &space, &vars, 2, 3);
            let f = rand_poly(&mut rng, &space, &vars, 2, 3);
            if !u.is_constant() && !f.is_constant() && !(&u * &f).is_constant() {
                break (u, f);
            }
        };
        let huf = lib(hamiltonian(&(&u * &f)))?.all_components();
        let hu = lib(hamiltonian(&u))?.all_components();
        let hf = lib(hamiltonian(&f))?.all_components();
        for k in 0..huf.len() {
            ensure!(huf[k] == &(&u * &hf[k]) + &(&f * &hu[k]), "Leibniz fails for u = {u}, F = {f}");
        }
    }
    Ok("100 symplectic-invariance and 100 Leibniz instances".into())
}

fn duality() -> Outcome {
    let v = Vars::phase(2);
    let worked = v.field(vec![v.x(1), &(&v.c(2) * &v.x(2)) + &(&v.x(1) * &v.x(2))]);
    let r = lib(verify_prolongation_duality(&worked))?;
    // A and B live on the x1-axis, so compare printed forms
    ensure!(r.a[0][0].to_string() == "x1 + 2", "A = {} for the worked example", r.a[0][0]);
    ensure!(r.b[0][0].to_string() == "-x1 - 2", "B = {} for the worked example", r.b[0][0]);
    ensure!(r.holds, "worked example rejected");

    let mut rng = rng("duality");
    let mut count = 1;
    while count < 50 {
        let n = 2 + count % 2;
        let space = VarSpace::phase(n);
        let xs = x_vars(&space);
        // a_j ∈ (x_2, …, x_n) for j ≥ 2 keeps the x1-axis invariant
        let mut comps = vec![rand_poly(&mut rng, &space, &xs, 2, 3)];
        for _ in 1..n {
            let mut a = MultiPoly::zero(&space);
            for k in 1..n {
                a = &a + &(&MultiPoly::var(&space, k) * &rand_poly(&mut rng, &space, &xs, 1, 3));
            }
            comps.push(a);
        }
        let Ok(xi) = PolyVectorField::new(&space, comps) else { continue };
        let r = lib(verify_prolongation_duality(&xi))?;
        for i in 0..n - 1 {
            for j in 0..n - 1 {
                ensure!(r.b[i][j] == -&r.a[j][i], "B != -A^T for {xi}");
            }
        }
        ensure!(r.holds, "duality rejected for {xi}");
        count += 1;
    }
    Ok("worked example A = [x1 + 2] and 49 seeded axis-preserving fields".into())
}

fn classifier() -> Outcome {
    let v = Vars::phase(2);
    let xi = v.field(vec![v.x(1), &v.c(2) * &v.x(2)]);
    let p = characteristic_polynomial(&xi).p;
    let cases = [
        (vec![v.y(1), v.y(2)], ClassTag::ZeroSection),
        (vec![v.x(1), v.x(2)], ClassTag::FiberOverSingularPoint),
        (vec![p.clone()], ClassTag::WholeCharVariety),
        (vec![v.x(2), v.y(1)], ClassTag::QuasiMinimalityViolation),
    ];
    for (gens, tag) in cases {
        let j = v.ideal(gens);
        let cls = lib(classify_ch_subvariety(&xi, &j, b()))?;
        ensure!(cls.tag == tag, "expected {tag:?}, got {:?}", cls.tag);
        ensure!(lib(verify_certificate(&xi, &j, &cls, b()))?, "certificate for {tag:?} does not re-verify");
        if tag == ClassTag::FiberOverSingularPoint {
            ensure!(cls.points == vec![vec![Scalar::zero(), Scalar::zero()]], "fiber point {:?}", cls.points);
        }
    }
    Ok("ZeroSection, FiberOverSingularPoint((0,0)), WholeCharVariety, QuasiMinimalityViolation".into())
}

/// ξ̂-invariant candidates; only those certified invariant enter the check.
fn projection_corpus() -> Vec<(PolyVectorField, Ideal)> {
    let v = Vars::phase(2);
    let mut out = Vec::new();
    let diag = v.field(vec![v.x(1), &v.c(2) * &v.x(2)]);
    let rot = v.field(vec![v.x(2), -&v.x(1)]);
    let circle = &(&(&v.x(1) * &v.x(1)) + &(&v.x(2) * &v.x(2))) - &v.c(1);
    for xi in [&diag, &rot] {
        let p = characteristic_polynomial(xi).p;
        out.push((xi.clone(), v.ideal(vec![v.y(1), v.y(2)])));
        out.push((xi.clone(), v.ideal(vec![v.x(1), v.x(2)])));
        out.push((xi.clone(), v.ideal(vec![p.clone()])));
        out.push((xi.clone(), v.ideal(vec![p, v.x(1)])));
    }
    out.push((diag.clone(), v.ideal(vec![v.x(2), v.y(1)])));
    out.push((diag.clone(), v.ideal(vec![v.x(1), v.y(2)])));
    out.push((diag.clone(), v.ideal(vec![&v.x(1) * &v.y(1), v.x(2)])));
    out.push((diag.clone(), v.ideal(vec![&(&v.x(1) * &v.x(1)) - &v.x(2), v.y(2)])));
    out.push((rot.clone(), v.ideal(vec![circle.clone()])));
    // conormal of the invariant circle
    let conormal = &(&v.x(1) * &v.y(2)) - &(&v.x(2) * &v.y(1));
    out.push((rot.clone(), v.ideal(vec![circle, conormal])));

    let mut rng = rng("projection");
    for _ in 0..40 {
        let lambdas: Vec<Scalar> = (0..2).map(|_| nonzero_scalar(&mut rng)).collect();
        let xi = v.field(vec![v.x(1).scale(&lambdas[0]), v.x(2).scale(&lambdas[1])]);
        let gens: Vec<MultiPoly> = (0..rng.gen_range(1..4))
            .map(|_| {
                let e = (0..4).map(|_| rng.gen_range(0..3)).collect();
                MultiPoly::monomial(&v.0, e, Scalar::one())
            })
            .collect();
        out.push((xi, v.ideal(gens)));
    }
    // zero sections and fibers over singular points of random fields
    for _ in 0..20 {
        let xi = rand_field(&mut rng, 2, 2);
        out.push((xi.clone(), v.ideal(vec![v.y(1), v.y(2)])));
        out.push((xi.clone(), v.ideal(vec![characteristic_polynomial(&xi).p])));
        let origin = [Scalar::zero(), Scalar::zero()];
        if xi.components().iter().all(|a| a.evaluate(&vec![Scalar::zero(); 4]).is_zero()) {
            out.push((xi, point_ideal(&v.0, &[0, 1], &origin)));
        }
    }
    out
}

fn projection() -> Outcome {
    let mut tested = 0;
    for (xi, j) in projection_corpus() {
        if j.is_unit(b()).unwrap_or(true) {
            continue;
        }
        let hat = prolong(&xi);
        if !lib(is_invariant(&hat.derivation(), &j, b()))?.invariant {
            continue;
        }
        let proj = eliminate(&j, &x_vars(xi.space()), b()).map_err(|e| e.to_string())?;
        tested += 1;
        if proj.generators().is_empty() {
            continue;
        }
        let rep = lib(is_invariant(&xi.derivation(), &proj, b()))?;
        ensure!(rep.invariant, "projection of an invariant ideal is not invariant under {xi}");
    }
    ensure!(tested >= 40, "only {tested} invariant ideals in the corpus");
    Ok(format!("{tested} certified invariant ideals project to invariant ideals"))
}

fn field(name: &str, min_poly: &[i64]) -> Arc<NumberField> {
    NumberField::new(name, min_poly.iter().map(|&c| rat(c, 1)).collect(), false).unwrap()
}

fn resonance() -> Outcome {
    let v = Vars::phase(2);
    let origin = [Scalar::zero(), Scalar::zero()];
    let diag = v.field(vec![v.x(1), &v.c(2) * &v.x(2)]);
    let r = lib(is_nonresonant(&diag, &origin, None, b()))?;
    ensure!(!r.nonresonant && r.zrank == 1, "{{1,2}}: nonresonant={} zrank={}", r.nonresonant, r.zrank);

    let k = field("s", &[-2, 0, 1]);
    let s = k.generator();
    let sq = v.field(vec![v.x(1), v.x(2).scale(&s)]);
    let r = lib(is_nonresonant(&sq, &origin, Some(&k), b()))?;
    ensure!(r.nonresonant && r.zrank == 2, "{{1,sqrt2}}: nonresonant={} zrank={}", r.nonresonant, r.zrank);

    let ki = field("i", &[1, 0, 1]);
    let rot = v.field(vec![v.x(2), -&v.x(1)]);
    let r = lib(is_nonresonant(&rot, &origin, Some(&ki), b()))?;
    ensure!(!r.nonresonant && r.zrank == 1, "{{i,-i}}: nonresonant={} zrank={}", r.nonresonant, r.zrank);

    let h = lib(holonomy_spectrum(&sq, &origin, 1, Some(&k), b()))?;
    ensure!(h.entries.len() == 1, "expected one holonomy eigenvalue");
    let e = &h.entries[0];
    ensure!(e.ratio == s, "ratio {}", e.ratio);
    ensure!(e.symbol() == "exp(2*pi*i*s)", "symbol {}", e.symbol());
    ensure!(!e.root_of_unity && h.maximal_torus, "root_of_unity={} maximal_torus={}", e.root_of_unity, h.maximal_torus);
    Ok("{1,2} resonant (zrank 1), {1,sqrt2} non-resonant (zrank 2), {i,-i} resonant (zrank 1); exp(2*pi*i*sqrt2)".into())
}

fn integrability() -> Outcome {
    let s3 = VarSpace::affine(3);
    let x = |i: usize| MultiPoly::var(&s3, i);
    let dx = |i: usize, c: MultiPoly| PolyForm::term(&s3, 3, &[i], c);
    let contact = dx(2, MultiPoly::one(&s3)).sub(&dx(0, x(1))).unwrap();
    ensure!(!lib(is_integrable(&contact))?, "contact form accepted");

    let mut r = rng("closed-forms");
    let mut closed = 0;
    while closed < 30 {
        let n = 3 + closed % 2;
        let space = VarSpace::affine(n);
        let vars: Vec<usize> = (0..n).collect();
        let f = rand_poly(&mut r, &space, &vars, 3, 4);
        let df = PolyForm::function(&f, n).d();
        let w = if closed % 3 == 2 {
            let g = rand_poly(&mut r, &space, &vars, 2, 3);
            df.wedge(&PolyForm::function(&g, n).d()).unwrap()
        } else {
            df
        };
        if w.is_zero() {
            continue;
        }
        ensure!(w.d().is_zero(), "corpus form is not closed");
        ensure!(lib(is_distribution(&w))?, "closed decomposable form {w} not a distribution");
        ensure!(lib(is_integrable(&w))?, "closed form {w} rejected");
        closed += 1;
    }

    let mut log_checked = 0;
    let mut rng = rng("log-acceptance");
    for _ in 0..60 {
        let n = rng.gen_range(3..=5);
        let q = rng.gen_range(1..=n - 2);
        let space = VarSpace::affine(n);
        let m: Vec<u32> = (0..n).map(|_| rng.gen_range(1..3)).collect();
        // wedge of q logarithmic 1-forms, times x^m
        let mut w = PolyForm::function(&MultiPoly::one(&space), n);
        for _ in 0..q {
            let mut alpha = PolyForm::zero(&space, n, 1);
            for i in 0..n {
                let mut e = m.clone();
                e[i] -= 1;
                let c = MultiPoly::monomial(&space, e, rand_scalar(&mut rng));
                alpha = alpha.add(&PolyForm::term(&space, n, &[i], c)).unwrap();
            }
            w = w.wedge(&alpha).unwrap();
        }
        if w.is_zero() || logarithmic_normal_form(&w).is_err() {
            continue;
        }
        ensure!(lib(is_distribution(&w))?, "accepted log form {w} is not a distribution");
        ensure!(lib(is_integrable(&w))?, "accepted log form {w} is not integrable");
        log_checked += 1;
    }
    ensure!(log_checked >= 30, "only {log_checked} logarithmic forms accepted");

    let w = dx(0, &x(1) * &x(2)).add(&dx(1, &x(0) * &x(2))).unwrap();
    let lnf = lib(logarithmic_normal_form(&w))?;
    let wit = lnf.witness.ok_or("no singular witness")?;
    ensure!(wit.indices == vec![0, 1] && wit.dimension == 1 && wit.verified, "witness {wit:?}");
    Ok(format!(
        "contact form rejected, 30 closed forms accepted, {log_checked} log forms integrable, witness {{x1 = x2 = 0}} dim 1"
    ))
}

fn torus_fibers() -> Outcome {
    let v = Vars::phase(3);
    let j = v.ideal(vec![&v.y(1) * &v.y(2), &v.y(1) * &v.y(3), &v.y(2) * &v.y(3)]);
    let r = lib(coordinate_subspace_decomposition(&j, b()))?;
    let mut got: Vec<String> = r.components.iter().map(|c| r.describe(&v.0, c)).collect();
    got.sort();
    let want = ["{y1 = y2 = 0}", "{y1 = y3 = 0}", "{y2 = y3 = 0}"];
    ensure!(got == want, "components {got:?}");
    ensure!(r.components.iter().all(|c| c.dimension == 1) && r.verify(), "not three verified axes");
    let r = lib(coordinate_subspace_decomposition(&v.ideal(vec![&v.y(1) + &v.y(2)]), b()))?;
    ensure!(!r.torus_invariant, "(y1 + y2) accepted as torus-invariant");
    Ok("three coordinate axes; (y1 + y2) rejected".into())
}

fn weyl_bridge() -> Outcome {
    let mut rng = rng("weyl-bridge");
    for case in 0..100 {
        let n = 1 + case % 3;
        let xi = rand_field(&mut rng, n, 3);
        let f = rand_poly(&mut rng, xi.space(), &x_vars(xi.space()), 3, 3);
        let d = WeylOperator::from_vector_field(&xi).add(&lib(WeylOperator::from_poly(&f))?).unwrap();
        let (m, sym) = lib(principal_symbol(&d))?;
        ensure!(m == 1 && sym == characteristic_polynomial(&xi).p, "symbol of {d} is {sym}");
    }
    let v = Vars::phase(1);
    let s = &v.0;
    let d1x1 = weyl_mul(&WeylOperator::d(s, 0), &WeylOperator::x(s, 0)).unwrap();
    ensure!(d1x1.to_string() == "x1*d1 + 1", "d1*x1 = {d1x1}");
    let one = WeylOperator::constant(s, Scalar::one());
    let x1d1 = weyl_mul(&WeylOperator::x(s, 0), &WeylOperator::d(s, 0)).unwrap();
    let table = [
        (x1d1.add(&one).unwrap(), 2, &v.x(1) * &v.y(1)),
        (
            WeylOperator::d(s, 0).pow(2).add(&WeylOperator::x(s, 0).pow(3)).unwrap(),
            3,
            v.x(1).pow(3),
        ),
        (WeylOperator::d(s, 0).add(&WeylOperator::x(s, 0)).unwrap(), 1, &v.y(1) + &v.x(1)),
    ];
    for (d, k, sigma) in table {
        let (got_k, got) = lib(bernstein_symbol(&d))?;
        ensure!(got_k == k && got == sigma, "bernstein symbol of {d}: ({got_k}, {got})");
    }
    Ok("100 seeded (xi, f), d1*x1 = x1*d1 + 1, Bernstein table".into())
}

fn degrees() -> Outcome {
    let v = Vars::phase(2);
    let radial = hyperplane_at_infinity(&v.field(vec![v.x(1), v.x(2)]));
    ensure!(!radial.invariant && radial.projective_degree == 0, "radial: {radial:?}");
    let rot = hyperplane_at_infinity(&v.field(vec![v.x(2), -&v.x(1)]));
    ensure!(rot.invariant && rot.projective_degree == 1, "rotation: {rot:?}");
    let g = hyperplane_at_infinity(&v.field(vec![&v.c(1) + &(&v.x(1) * &v.x(1)), &v.x(1) * &v.x(2)]));
    ensure!(!g.invariant && g.projective_degree == 1, "g = x1 example: {g:?}");
    ensure!(g.radial_factor.as_ref() == Some(&v.x(1)), "radial factor {:?}", g.radial_factor);
    Ok("radial (no, 0), rotation (yes, 1), g = x1 example (no, 1)".into())
}

/// Independent membership oracle: solve Σ q_i g_i = f with deg q_i ≤ deg f + slack by exact elimination.
/// A solution certifies membership; no solution only rules out certificates of that degree.
fn oracle_member(space: &Arc<VarSpace>, gens: &[MultiPoly], f: &MultiPoly, slack: u32) -> bool {
    if f.is_zero() {
        return true;
    }
    let nv = space.len();
    let bound = f.total_degree().unwrap() + slack;
    let mut monos: Vec<Vec<u32>> = Vec::new();
    fn rec(nv: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == nv {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(nv, left - e, cur, out);
            cur.pop();
        }
    }
    rec(nv, bound, &mut Vec::new(), &mut monos);
    // rows indexed by monomials of the products; columns by (generator, multiplier monomial)
    let mut row_of = std::collections::HashMap::new();
    let mut columns: Vec<Vec<(usize, BigRational)>> = Vec::new();
    let key = |m: Vec<u32>, row_of: &mut std::collections::HashMap<Vec<u32>, usize>| {
        let next = row_of.len();
        *row_of.entry(m).or_insert(next)
    };
    for g in gens {
        for m in &monos {
            let col = g
                .terms()
                .iter()
                .map(|(e, c)| {
                    let prod: Vec<u32> = e.iter().zip(m).map(|(a, b)| a + b).collect();
                    (key(prod, &mut row_of), c.as_rational().unwrap())
                })
                .collect();
            columns.push(col);
        }
    }
    let rhs: Vec<(usize, BigRational)> =
        f.terms().iter().map(|(e, c)| (key(e.clone(), &mut row_of), c.as_rational().unwrap())).collect();
    let rows = row_of.len();
    let ncols = columns.len();
    let mut mat = vec![vec![BigRational::zero(); ncols + 1]; rows];
    for (j, col) in columns.iter().enumerate() {
        for (i, c) in col {
            mat[*i][j] = c.clone();
        }
    }
    for (i, c) in rhs {
        mat[i][ncols] = c;
    }
    // Gaussian elimination; inconsistent iff a pivot lands in the augmented column
    let mut r = 0;
    for c in 0..=ncols {
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else { continue };
        if c == ncols {
            return false;
        }
        mat.swap(r, p);
        let inv = BigRational::one() / mat[r][c].clone();
        for k in c..=ncols {
            mat[r][k] = &mat[r][k] * &inv;
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let factor = mat[i][c].clone();
                for k in c..=ncols {
                    let t = &mat[r][k] * &factor;
                    mat[i][k] -= t;
                }
            }
        }
        r += 1;
    }
    true
}

fn groebner_oracle() -> Outcome {
    let space = VarSpace::affine(3);
    let x = |i: usize| MultiPoly::var(&space, i);
    let c = |v: i64| MultiPoly::constant(&space, int(v));
    let sq = |p: &MultiPoly| p * p;
    let pool = vec![
        x(0),
        x(1),
        &x(2) - &c(1),
        sq(&x(0)),
        &x(0) * &x(1),
        &sq(&x(1)) - &x(2),
        &sq(&x(0)) - &x(1),
        &(&x(0) * &x(2)) - &c(1),
        &(&x(0) + &x(1)) + &x(2),
        &(&x(1) * &x(2)) - &x(0),
        &(&sq(&x(0)) + &sq(&x(1))) - &c(1),
        &(&x(0) * &x(1)) - &sq(&x(2)),
    ];
    let probes = vec![
        &(&x(0) * &x(1)) * &x(2),
        &x(0).pow(3) - &(&x(1) * &x(2)),
        c(1),
        &x(1).pow(3) - &x(0),
        &(&x(0) * &x(2)) + &x(1),
        &sq(&x(2)) - &c(1),
    ];
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    for i in 0..pool.len() {
        subsets.push(vec![i]);
        for j in i + 1..pool.len() {
            subsets.push(vec![i, j]);
            for k in j + 1..pool.len() {
                subsets.push(vec![i, j, k]);
            }
        }
    }
    let vars: Vec<usize> = (0..3).collect();
    let mut rng = rng("oracle");
    let (mut cases, mut members) = (0, 0);
    for (idx, s) in subsets.iter().enumerate() {
        let gens: Vec<MultiPoly> = s.iter().map(|&i| pool[i].clone()).collect();
        let ideal = Ideal::new(&space, gens.clone()).unwrap();
        let mut queries = vec![probes[idx % probes.len()].clone()];
        // a planted member of degree ≤ 3
        let mut planted = MultiPoly::zero(&space);
        for g in &gens {
            planted = &planted + &(g * &rand_poly(&mut rng, &space, &vars, 1, 2));
        }
        queries.push(planted);
        for f in queries {
            let gb = ideal.contains(&f, b()).map_err(|e| e.to_string())?;
            // members need a certificate of some degree; non-members must have none at the base degree
            let oracle = if gb {
                (2..=6).any(|slack| oracle_member(&space, &gens, &f, slack))
            } else {
                oracle_member(&space, &gens, &f, 2)
            };
            ensure!(gb == oracle, "ideal {s:?}, f = {f}: groebner {gb}, oracle {oracle}");
            cases += 1;
            members += gb as usize;
        }
    }
    ensure!(cases >= 500, "only {cases} cases");
    Ok(format!("{cases} membership queries over {} ideals, {members} members", subsets.len()))
}

fn darboux() -> Outcome {
    let v = Vars::phase(2);
    let diag = v.field(vec![v.x(1), &v.c(2) * &v.x(2)]);
    let r = darboux_search(&diag, 1, 1, b()).map_err(|e| e.to_string())?;
    let got: Vec<(String, String)> = r.pairs.iter().map(|p| (p.g.to_string(), p.cofactor.to_string())).collect();
    let want = [("x1".to_string(), "1".to_string()), ("x2".to_string(), "2".to_string())];
    ensure!(got == want, "diagonal field: {got:?}");

    let rot = v.field(vec![v.x(2), -&v.x(1)]);
    let r = darboux_search(&rot, 2, 1, b()).map_err(|e| e.to_string())?;
    let got: Vec<(String, String)> = r.pairs.iter().map(|p| (p.g.to_string(), p.cofactor.to_string())).collect();
    ensure!(got == [("x1^2 + x2^2".to_string(), "0".to_string())], "rotation: {got:?}");

    let mut rng = rng("darboux-generic");
    // dense integer coefficients on every monomial of degree <= 2
    let dense = |rng: &mut rand_chacha::ChaCha8Rng| {
        let mut a = MultiPoly::zero(&v.0);
        for (i, j) in [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)] {
            let c = loop {
                let c = rng.gen_range(-5i64..=5);
                if c != 0 {
                    break c;
                }
            };
            a = &a + &MultiPoly::monomial(&v.0, vec![i, j, 0, 0], int(c));
        }
        a
    };
    let xi = v.field(vec![dense(&mut rng), dense(&mut rng)]);
    let r = darboux_search(&xi, 3, 1, b()).map_err(|e| e.to_string())?;
    ensure!(
        r.pairs.is_empty() && r.unresolved.is_empty(),
        "seeded field {xi}: found {} pairs, {} unresolved systems",
        r.pairs.len(),
        r.unresolved.len()
    );
    Ok(format!("listed results reproduced; seeded field {xi} has none up to degree 3"))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let five = Duration::from_secs(5);
    let criteria = [
        Criterion { id: 1, name: "tangency", limit: five, run: tangency },
        Criterion { id: 2, name: "symplectic", limit: five, run: symplectic },
        Criterion { id: 3, name: "duality", limit: five, run: duality },
        Criterion { id: 4, name: "quasi-minimality classifier", limit: five, run: classifier },
        Criterion { id: 5, name: "projection lemma", limit: five, run: projection },
        Criterion { id: 6, name: "resonance", limit: five, run: resonance },
        Criterion { id: 7, name: "integrability", limit: five, run: integrability },
        Criterion { id: 8, name: "torus fibers", limit: five, run: torus_fibers },
        Criterion { id: 9, name: "weyl bridge", limit: five, run: weyl_bridge },
        Criterion { id: 10, name: "degree bookkeeping", limit: five, run: degrees },
        Criterion { id: 11, name: "groebner oracle", limit: Duration::from_secs(60), run: groebner_oracle },
        Criterion { id: 12, name: "darboux", limit: Duration::from_secs(120), run: darboux },
    ];
    let only: Option<u32> = std::env::var("FOLICHAR_CRITERION").ok().and_then(|s| s.parse().ok());
    println!("acceptance (seed {})", seed());
    let mut failed = 0;
    for c in criteria.iter().filter(|c| only.is_none_or(|o| o == c.id)) {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let took = start.elapsed();
        let res = match res {
            Ok(msg) if took > c.limit => Err(format!("{msg}; took {took:.2?}, limit {:?}", c.limit)),
            other => other,
        };
        match res {
            Ok(msg) => println!("PASS criterion {:>2} {}: {msg} ({took:.2?})", c.id, c.name),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {:>2} {}: {msg} ({took:.2?})", c.id, c.name);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
