//! Seeded pseudo-random elements with small integer coefficients.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bimodule::HomSpace;
use crate::linalg::{Matrix, Vector};
use crate::scalar::Field;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Coefficients drawn uniformly from `-2..=2`.
pub fn random_vector(field: Field, dim: usize, rng: &mut SampleRng) -> Vector {
    (0..dim).map(|_| field.from_i64(rng.random_range(-2..=2))).collect()
}

pub fn random_map(hom: &HomSpace, rng: &mut SampleRng) -> Matrix {
    let c = random_vector(hom.field(), hom.dim(), rng);
    hom.element(&c)
}
