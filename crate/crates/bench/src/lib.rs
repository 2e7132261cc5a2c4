//! Shared fixtures for the benchmarks.

use nilcoh_core::linalg::IntMatrix;
use nilcoh_core::RootSystem;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use nilcoh_core;

pub fn root_system(ty: &str) -> RootSystem {
    RootSystem::from_type(ty.parse().expect("valid type")).expect("supported type")
}

/// A reproducible `rows x cols` matrix with entries in `-bound..=bound`.
pub fn random_matrix(rows: usize, cols: usize, bound: i64, seed: u64) -> IntMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = IntMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, rng.gen_range(-bound..=bound));
        }
    }
    m
}
