//! Seeded generators shared by the integration tests.
//!
//! `FOLICHAR_SEED` selects the seed; without it every run uses the same one.
#![allow(dead_code)]

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use folichar_core::exterior::{index_tuples, PolyForm};
use folichar_core::foliation::PolyVectorField;
use folichar_core::{MultiPoly, Scalar, VarSpace};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 20_241;

pub fn seed() -> u64 {
    std::env::var("FOLICHAR_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

/// Independent stream per suite, so adding cases to one suite leaves the others alone.
pub fn rng(tag: &str) -> ChaCha8Rng {
    let mut h = DefaultHasher::new();
    tag.hash(&mut h);
    ChaCha8Rng::seed_from_u64(seed() ^ h.finish())
}

pub fn runner(cases: u32) -> TestRunner {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed().to_le_bytes());
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::from_seed(RngAlgorithm::ChaCha, &bytes),
    )
}

pub fn int(v: i64) -> Scalar {
    Scalar::from_ratio(v, 1)
}

pub fn rand_scalar(rng: &mut impl Rng) -> Scalar {
    let p = rng.gen_range(-6i64..=6);
    let q = *[1i64, 1, 1, 2, 3].get(rng.gen_range(0..5)).unwrap();
    Scalar::from_ratio(p, q)
}

pub fn nonzero_scalar(rng: &mut impl Rng) -> Scalar {
    loop {
        let c = rand_scalar(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Random polynomial in the listed variables with total degree ≤ `max_deg`.
pub fn rand_poly(rng: &mut impl Rng, space: &Arc<VarSpace>, vars: &[usize], max_deg: u32, terms: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(space);
    for _ in 0..terms {
        let d = rng.gen_range(0..=max_deg);
        let mut e = vec![0u32; space.len()];
        for _ in 0..d {
            e[vars[rng.gen_range(0..vars.len())]] += 1;
        }
        out = &out + &MultiPoly::monomial(space, e, rand_scalar(rng));
    }
    out
}

pub fn x_vars(space: &Arc<VarSpace>) -> Vec<usize> {
    space.x_indices().collect()
}

/// Nonzero field with components of degree ≤ `deg` on the phase space of dimension n.
pub fn rand_field(rng: &mut impl Rng, n: usize, deg: u32) -> PolyVectorField {
    let space = VarSpace::phase(n);
    let xs = x_vars(&space);
    loop {
        let comps: Vec<MultiPoly> = (0..n).map(|_| rand_poly(rng, &space, &xs, deg, 4)).collect();
        if let Ok(xi) = PolyVectorField::new(&space, comps) {
            return xi;
        }
    }
}

/// Random homogeneous q-form over the first `dim` variables.
pub fn rand_form(rng: &mut impl Rng, space: &Arc<VarSpace>, dim: usize, q: usize, deg: u32) -> PolyForm {
    let vars: Vec<usize> = (0..dim).collect();
    let mut w = PolyForm::zero(space, dim, q);
    for idx in index_tuples(dim, q) {
        if rng.gen_bool(0.6) {
            let c = rand_poly(rng, space, &vars, deg, 3);
            w = w.add(&PolyForm::term(space, dim, &idx, c)).unwrap();
        }
    }
    w
}
