//! Shared fixtures for the benches under `benches/`.

use tanner_zx::corpus::named_codes;
use tanner_zx::{pq_product, ClassicalCode};

/// A named corpus code.
pub fn named(name: &str) -> ClassicalCode {
    named_codes()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, c)| c)
        .unwrap_or_else(|| panic!("no corpus code named {name}"))
}

/// The cubic (3,2) product of three `n`-site rings: `3n²·n` checks on `n³` bits.
pub fn cubic_ring(n: usize) -> ClassicalCode {
    let ring = ClassicalCode::ising_ring(n);
    pq_product(&[ring.clone(), ring.clone(), ring], 2).expect("q = 2 is valid for three codes")
}
