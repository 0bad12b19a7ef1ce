//! Seeded generators of structure tensors used by the property suite and tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomposition::{g5_model, project_all, ClassSet};
use crate::space::ApcSpace;
use crate::tensor::Tensor3;

/// Floor on the max-abs component below which a sampled class member is
/// treated as a null draw.
pub const GENERIC_FLOOR: f64 = 1e-6;

const MAX_DRAWS: usize = 8;

/// Deterministic RNG for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform random components in `[-1, 1]`, projected onto 𝓕.
pub fn random_f_member<R: Rng + ?Sized>(space: ApcSpace, rng: &mut R) -> Tensor3 {
    let d = space.dim();
    let comps = (0..d * d * d)
        .map(|_| rng.random_range(-1.0..=1.0))
        .collect();
    Tensor3::from_vec(space, comps).project_to_f_space()
}

/// A random member of `Gi`, or `None` when the class is trivial at this `n`.
pub fn random_class_member<R: Rng + ?Sized>(
    space: ApcSpace,
    class: usize,
    rng: &mut R,
) -> Option<Tensor3> {
    for _ in 0..MAX_DRAWS {
        let f = random_f_member(space, rng);
        let part = project_all(&f).expect("projected tensor is in 𝓕").g_parts[class - 1].clone();
        if part.max_abs() > GENERIC_FLOOR {
            return Some(part);
        }
    }
    None
}

/// Sum of one random member from each class in `classes` that is nontrivial
/// at this `n`. Returns the tensor and the classes actually present.
pub fn random_mixture<R: Rng + ?Sized>(
    space: ApcSpace,
    classes: ClassSet,
    rng: &mut R,
) -> (Tensor3, ClassSet) {
    let mut total = Tensor3::zeros(space);
    let mut present = ClassSet::EMPTY;
    for i in classes.iter() {
        if let Some(part) = random_class_member(space, i, rng) {
            total += &part;
            present.insert(i).expect("valid index");
        }
    }
    (total, present)
}

/// A random nonempty subset of `1..=12`.
pub fn random_class_set<R: Rng + ?Sized>(rng: &mut R) -> ClassSet {
    loop {
        let mut set = ClassSet::EMPTY;
        for i in 1..=12 {
            if rng.random_bool(0.3) {
                set.insert(i).expect("valid index");
            }
        }
        if !set.is_empty() {
            return set;
        }
    }
}

/// The `Ḡ5` member, `θ(ξ) = 2n`.
pub fn g5bar_member(space: ApcSpace) -> Tensor3 {
    g5_model(space, 2.0 * space.n() as f64)
}
