//! Seeded sampling helpers. Everything randomized in this crate and its
//! tests flows through a `ChaCha8Rng` so runs are reproducible from a
//! single seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform subset: an independent coin per item.
pub fn random_subset<T: Clone, R: Rng>(rng: &mut R, items: &[T]) -> Vec<T> {
    items
        .iter()
        .filter(|_| rng.gen_bool(0.5))
        .cloned()
        .collect()
}

/// Subset with a given inclusion probability per item.
pub fn random_subset_biased<T: Clone, R: Rng>(rng: &mut R, items: &[T], p: f64) -> Vec<T> {
    items.iter().filter(|_| rng.gen_bool(p)).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_subsets() {
        let items: Vec<u32> = (0..40).collect();
        let mut a = seeded_rng(7);
        let mut b = seeded_rng(7);
        for _ in 0..20 {
            assert_eq!(random_subset(&mut a, &items), random_subset(&mut b, &items));
        }
        let mut c = seeded_rng(8);
        let runs: Vec<_> = (0..20).map(|_| random_subset(&mut c, &items)).collect();
        let mut d = seeded_rng(7);
        let other: Vec<_> = (0..20).map(|_| random_subset(&mut d, &items)).collect();
        assert_ne!(runs, other);
    }

    #[test]
    fn bias_extremes() {
        let items: Vec<u32> = (0..10).collect();
        let mut rng = seeded_rng(1);
        assert!(random_subset_biased(&mut rng, &items, 0.0).is_empty());
        assert_eq!(random_subset_biased(&mut rng, &items, 1.0), items);
    }
}
