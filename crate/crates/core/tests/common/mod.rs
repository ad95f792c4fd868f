#![allow(dead_code)]

use qbd_tails::asymptotics::Asymptotics;
use qbd_tails::model::{check_stability, drifts, validate, Face, Model, TransitionKernel, ValidatedModel};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use qbd_tails::netgen::{independent_mm1, jackson_model, x_shaped_example, JacksonParams};

const X_SHAPE: [(i64, i64); 5] = [(1, 1), (-1, 1), (1, -1), (-1, -1), (0, 0)];

fn random_kernel(rng: &mut ChaCha8Rng, face: Face, incs: &[(i64, i64)], down_bias: u32) -> TransitionKernel {
    loop {
        let mut triples = Vec::new();
        for &(di, dj) in incs {
            if rng.gen_bool(0.65) {
                let mut w = rng.gen_range(1..=9u32);
                if di < 0 || dj < 0 {
                    w += down_bias;
                }
                triples.push((di, dj, w as f64));
            }
        }
        let total: f64 = triples.iter().map(|t| t.2).sum();
        if triples.is_empty() {
            continue;
        }
        let triples: Vec<_> = triples.into_iter().map(|(a, b, w)| (a, b, w / total)).collect();
        if let Ok(k) = TransitionKernel::from_triples(face, &triples) {
            return k;
        }
    }
}

fn increments(face: Face) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for di in -1..=1 {
        for dj in -1..=1 {
            let ok = match face {
                Face::Interior => true,
                Face::Boundary1 => dj >= 0,
                Face::Boundary2 => di >= 0,
                Face::Origin => di >= 0 && dj >= 0,
            };
            if ok {
                out.push((di, dj));
            }
        }
    }
    out
}

/// A random valid, stable model whose geometry and classes compute.
/// About one in five has an X-shaped interior.
pub fn random_stable(rng: &mut ChaCha8Rng) -> ValidatedModel {
    loop {
        let x = rng.gen_bool(0.2);
        let interior_incs = if x { X_SHAPE.to_vec() } else { increments(Face::Interior) };
        let bias = rng.gen_range(0..6);
        let kernels = vec![
            random_kernel(rng, Face::Interior, &interior_incs, bias),
            random_kernel(rng, Face::Boundary1, &increments(Face::Boundary1), bias),
            random_kernel(rng, Face::Boundary2, &increments(Face::Boundary2), bias),
            random_kernel(rng, Face::Origin, &increments(Face::Origin), 0),
        ];
        let Ok(m) = Model::new(kernels) else { continue };
        let Ok(v) = validate(m) else { continue };
        if !check_stability(&drifts(&v)).stable {
            continue;
        }
        if Asymptotics::new(&v).is_ok() {
            return v;
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The fixed 20-model random stable corpus.
pub fn corpus() -> Vec<ValidatedModel> {
    let mut r = rng(20);
    (0..20).map(|_| random_stable(&mut r)).collect()
}

pub fn product() -> ValidatedModel {
    validate(independent_mm1(0.1, 0.3, 0.15, 0.45).unwrap()).unwrap()
}

pub fn network(lambda: f64, mu1: f64, mu2: f64, p: f64, q: f64) -> ValidatedModel {
    validate(jackson_model(&JacksonParams::new(lambda, mu1, mu2, p, q).unwrap()).unwrap()).unwrap()
}

pub fn x_shaped() -> ValidatedModel {
    validate(x_shaped_example()).unwrap()
}

/// Fixed-seed proptest settings that write no regression files.
pub fn config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        failure_persistence: None,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0x5eed),
        ..Default::default()
    }
}
