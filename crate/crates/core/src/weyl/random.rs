use super::generator::{WeylGenerator, WeylWord};
use crate::lattice::PointId;
use rand::seq::SliceRandom;
use rand::Rng;

/// Random word of the given length: each letter is σ0 on a random triple or a random transposition.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, points: &[PointId], len: usize) -> WeylWord {
    assert!(points.len() >= 3, "need at least three points");
    let letters = (0..len)
        .map(|_| {
            let pick: Vec<PointId> = points.choose_multiple(rng, 3).copied().collect();
            if rng.gen_bool(0.5) {
                WeylGenerator::Sigma0([pick[0], pick[1], pick[2]])
            } else {
                WeylGenerator::Tau(pick[0], pick[1])
            }
        })
        .collect();
    WeylWord::new(letters)
}
