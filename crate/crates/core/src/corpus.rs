//! Seeded test corpora.
//!
//! Every randomized check in the workspace draws its codes from here, so a
//! failure can be reproduced from the seed alone.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::ClassicalCode;
use crate::f2::BinaryMatrix;

/// Seed of the random code corpus.
pub const CORPUS_SEED: u64 = 0x7a11_e5c0;
/// Seed of the square full-rank corpus.
pub const FULL_RANK_SEED: u64 = 0xf011_4a4c;
/// Probability of a one in a random parity-check entry.
pub const DENSITY: f64 = 0.4;

/// `count` random codes with `n, m` drawn uniformly from `1..=6`.
pub fn random_codes(seed: u64, count: usize) -> Vec<ClassicalCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(1..=6);
            let m = rng.random_range(1..=6);
            random_code(&mut rng, m, n)
        })
        .collect()
}

/// `count` random invertible `n x n` codes with `n` drawn from `1..=6`.
pub fn full_rank_codes(seed: u64, count: usize) -> Vec<ClassicalCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(1..=6);
            loop {
                let c = random_code(&mut rng, n, n);
                if c.rank() == n {
                    break c;
                }
            }
        })
        .collect()
}

fn random_code(rng: &mut ChaCha8Rng, m: usize, n: usize) -> ClassicalCode {
    ClassicalCode::from_matrix(BinaryMatrix::from_fn(m, n, |_, _| rng.random_bool(DENSITY)))
}

/// Hand-picked codes with known structure.
pub fn named_codes() -> Vec<(&'static str, ClassicalCode)> {
    let hamming = BinaryMatrix::from_rows(&[
        [1, 0, 1, 0, 1, 0, 1],
        [0, 1, 1, 0, 0, 1, 1],
        [0, 0, 0, 1, 1, 1, 1],
    ]);
    vec![
        ("ising3", ClassicalCode::ising_ring(3)),
        ("ising4", ClassicalCode::ising_ring(4)),
        ("chain4", ClassicalCode::ising_chain(4)),
        ("ising5", ClassicalCode::ising_ring(5)),
        ("hamming7", ClassicalCode::from_matrix(hamming)),
        ("identity3", ClassicalCode::from_matrix(BinaryMatrix::identity(3))),
        ("zero-check", ClassicalCode::from_matrix(BinaryMatrix::zeros(1, 2))),
    ]
}

/// The 50-code random corpus followed by the named codes.
pub fn verification_corpus() -> Vec<ClassicalCode> {
    random_codes(CORPUS_SEED, 50)
        .into_iter()
        .chain(named_codes().into_iter().map(|(_, c)| c))
        .collect()
}
