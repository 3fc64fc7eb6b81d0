//! Shared input generators for the benchmark targets.

use num_bigint::BigInt;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use cacime_core::{FramedLink, IntMatrix, Letter, Presentation, Word};

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, span: i64) -> IntMatrix {
    IntMatrix::from_fn(rows, cols, |_, _| {
        BigInt::from(rng.random_range(-span..=span))
    })
}

pub fn random_word(rng: &mut ChaCha8Rng, rank: usize, len: usize) -> Word {
    Word::reduce((0..len).map(|_| Letter {
        gen: rng.random_range(0..rank),
        exp: if rng.random_bool(0.5) { 1 } else { -1 },
    }))
}

/// A mid-sized verified link: the Σ2 × D² picture stabilized a few times,
/// which gives the slide benchmarks something nontrivial to chew on.
pub fn benchmark_link() -> FramedLink {
    let surface = cacime_core::surface_presentation(2).expect("genus 2");
    let mut link = FramedLink::verified_zero_linking(&surface.presentation);
    for _ in 0..4 {
        link = link.stabilize();
    }
    link
}

pub fn cacime_presentation() -> Presentation {
    cacime_core::build_cacime_default().presentation().clone()
}
