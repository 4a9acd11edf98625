//! Property tests for the tensor index machinery, checked against naive
//! loop-based oracles.

use proptest::prelude::*;
use ssnmc::{Slot, Tensor};

fn components(dim: usize, rank: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0..10.0f64, dim.pow(rank as u32))
}

fn variance(rank: usize) -> impl Strategy<Value = Vec<Slot>> {
    prop::collection::vec(prop_oneof![Just(Slot::Upper), Just(Slot::Lower)], rank)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn contraction_matches_naive_loops(
        (dim, comps) in (2usize..=4).prop_flat_map(|d| components(d, 3).prop_map(move |c| (d, c))),
    ) {
        let t = Tensor::new(dim, vec![Slot::Upper, Slot::Lower, Slot::Lower], comps).unwrap();
        let c = t.contract(0, 2).unwrap();
        for j in 0..dim {
            let mut expect = 0.0;
            for m in 0..dim {
                expect += t.get(&[m, j, m]);
            }
            prop_assert!((c.get(&[j]) - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn permutation_inverse_round_trips(
        dim in 2usize..=3,
        var in variance(4),
        perm_seed in 0usize..24,
    ) {
        let comps: Vec<f64> = (0..dim.pow(4)).map(|i| i as f64 * 0.5 - 3.0).collect();
        let t = Tensor::new(dim, var, comps).unwrap();
        // enumerate the 24 permutations of 4 slots deterministically
        let mut slots = vec![0usize, 1, 2, 3];
        let mut k = perm_seed;
        let mut perm = Vec::new();
        for f in [6usize, 2, 1, 1] {
            perm.push(slots.remove(k / f));
            k %= f;
        }
        let mut inv = vec![0usize; 4];
        for (p, &o) in perm.iter().enumerate() {
            inv[o] = p;
        }
        let round = t.permute(&perm).unwrap().permute(&inv).unwrap();
        prop_assert_eq!(t.max_diff(&round), 0.0);
    }

    #[test]
    fn raise_then_lower_is_identity(
        dim in 2usize..=4,
        seed in 0u64..256,
    ) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let a: Vec<f64> = (0..dim * dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let g = Tensor::from_fn(dim, vec![Slot::Lower, Slot::Lower], |idx| {
            let (i, j) = (idx[0], idx[1]);
            let mut s = if i == j { 1.0 } else { 0.0 };
            for k in 0..dim {
                s += a[k * dim + i] * a[k * dim + j];
            }
            s
        });
        let g_inv = g.matrix_inverse().unwrap();
        let t = Tensor::from_fn(dim, vec![Slot::Lower, Slot::Lower], |_| rng.gen_range(-5.0..5.0));
        let round = t
            .raise(1, &g_inv)
            .unwrap()
            .lower(1, &g)
            .unwrap();
        prop_assert!(t.max_diff(&round) < 1e-10);
    }

    #[test]
    fn cyclic_sum_is_invariant_under_rotating_the_slot_triple(
        dim in 2usize..=3,
        comps in (2usize..=3).prop_flat_map(|d| components(d, 3).prop_map(move |c| (d, c))),
    ) {
        let (dim, comps) = comps;
        let t = Tensor::new(dim, vec![Slot::Lower, Slot::Lower, Slot::Lower], comps).unwrap();
        let a = t.cyclic_sum((0, 1, 2)).unwrap();
        let b = t.cyclic_sum((1, 2, 0)).unwrap();
        prop_assert!(a.max_diff(&b) < 1e-14);
    }
}
