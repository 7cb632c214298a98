mod common;

use gkm_core::exactlin::{canonical_subspace, Rational, SubspaceQ};
use gkm_core::symalg::{restriction_matrix, sym_dim, MonomialBasis};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random subspace of `parent` of dimension at most `dim`.
fn random_sub(parent: &SubspaceQ, dim: usize, rng: &mut ChaCha8Rng) -> SubspaceQ {
    let n = parent.ambient_dim();
    let rows: Vec<Vec<Rational>> = (0..dim)
        .map(|_| {
            let coeffs: Vec<Rational> = (0..parent.dim()).map(|_| common::random_rational(rng, 3)).collect();
            (0..n)
                .map(|c| (0..parent.dim()).map(|j| &coeffs[j] * parent.basis().get(j, c)).sum())
                .collect()
        })
        .collect();
    canonical_subspace(&rows, n).unwrap()
}

/// Chain `c ⊆ b ⊆ a` inside `Q^n`.
fn chain(seed: u64) -> (SubspaceQ, SubspaceQ, SubspaceQ) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=4);
    let a = random_sub(&SubspaceQ::full(n), rng.gen_range(0..=n), &mut rng);
    let b = random_sub(&a, rng.gen_range(0..=a.dim()), &mut rng);
    let c = random_sub(&b, rng.gen_range(0..=b.dim()), &mut rng);
    (a, b, c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn restriction_is_functorial(seed in any::<u64>(), d in 0usize..=6) {
        let (a, b, c) = chain(seed);
        let ab = restriction_matrix(&a, &b, d).unwrap().matrix;
        let bc = restriction_matrix(&b, &c, d).unwrap().matrix;
        let ac = restriction_matrix(&a, &c, d).unwrap().matrix;
        prop_assert_eq!(bc.mul(&ab).unwrap(), ac);
    }

    #[test]
    fn restriction_is_surjective(seed in any::<u64>(), d in 0usize..=5) {
        let (a, b, _) = chain(seed);
        let m = restriction_matrix(&a, &b, d).unwrap().matrix;
        prop_assert_eq!(m.rows(), sym_dim(b.dim(), d));
        prop_assert_eq!(m.cols(), sym_dim(a.dim(), d));
        prop_assert_eq!(m.rank(), sym_dim(b.dim(), d));
    }

    #[test]
    fn basis_size_matches_enumeration(k in 0usize..6, d in 0usize..8) {
        prop_assert_eq!(MonomialBasis::new(k, d).len(), common::compositions(k, d).len());
        prop_assert_eq!(sym_dim(k, d), common::compositions(k, d).len());
    }
}
