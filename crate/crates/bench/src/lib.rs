//! Shared fixtures for the benchmarks.

use hyperjac_core::sampling::{random_bpf_subspace, rng_from_seed, DEFAULT_ATTEMPTS};
use hyperjac_core::{GradedSubspace, PolyRing, PrimeField, SparseMatrix, DEFAULT_PRIME};
use rand::Rng;

pub fn field() -> PrimeField {
    PrimeField::new(DEFAULT_PRIME as u64).expect("default prime")
}

pub fn ring(n: usize) -> PolyRing {
    PolyRing::new(n, field()).expect("n >= 1")
}

/// Random `rows x cols` matrix with about `density * cols` nonzeros per row.
pub fn random_sparse(rows: usize, cols: usize, density: f64, seed: u64) -> SparseMatrix {
    let mut rng = rng_from_seed(seed);
    let p = field().modulus();
    let mut triplets = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_bool(density) {
                triplets.push((i as u32, j as u32, rng.gen_range(1..p)));
            }
        }
    }
    SparseMatrix::from_triplets(field(), rows, cols, triplets)
}

/// A certified base-point-free system of codimension `codim` in `S^N`.
pub fn bpf_system(n: usize, degree: usize, codim: usize, seed: u64) -> GradedSubspace {
    random_bpf_subspace(ring(n), degree, codim, &mut rng_from_seed(seed), DEFAULT_ATTEMPTS)
        .expect("sampling succeeds")
        .0
}

