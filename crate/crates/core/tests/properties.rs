mod common;

use nilcoh_core::kostant::{arrangements, orbit_count, PermutationGroup, WeylMultiset};
use nilcoh_core::linalg::int::{big_mul, determinant, is_unimodular, IntMatrix};
use nilcoh_core::linalg::smith_normal_form;
use nilcoh_core::specseq::{e_infinity, gr_of_cohomology, pages, pages_as_table, stabilization_page, FilteredComplex};
use nilcoh_core::unipotent::make_group;
use nilcoh_core::{RootSystem, Weight};
use num_integer::Integer;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix_strategy() -> impl Strategy<Value = IntMatrix> {
    (0usize..=7, 0usize..=7).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-30i64..=30, r * c).prop_map(move |v| {
            let mut m = IntMatrix::zeros(r, c);
            for i in 0..r {
                for j in 0..c {
                    m.set(i, j, v[i * c + j]);
                }
            }
            m
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn snf_postcondition(m in matrix_strategy()) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(big_mul(&big_mul(&s.u, &m.to_big()), &s.v), s.diagonal(m.rows, m.cols));
        prop_assert!(is_unimodular(&s.u) && is_unimodular(&s.v));
        for w in s.invariant_factors.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
    }

    #[test]
    fn snf_product_is_determinant(n in 0usize..=6, v in proptest::collection::vec(-9i64..=9, 36)) {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, v[i * 6 + j]);
            }
        }
        let s = smith_normal_form(&m);
        let det = determinant(&m.to_big());
        if s.rank() == n {
            let prod = s.invariant_factors.iter().fold(num_bigint::BigInt::from(1), |a, b| a * b);
            prop_assert_eq!(prod, num_traits::Signed::abs(&det));
        } else {
            prop_assert_eq!(det, num_bigint::BigInt::from(0));
        }
    }

    #[test]
    fn burnside_equals_enumeration(entries in proptest::collection::vec(0usize..4, 1..=5), seed in any::<u64>()) {
        let mut entries = entries;
        entries.sort_unstable();
        let d = entries.len();
        let m = WeylMultiset { entries, total_length: 0, character: Weight::zero(1) };
        let cyclic = orbit_count(&m, &PermutationGroup::cyclic(d));
        prop_assert_eq!(cyclic.orbits, cyclic.burnside_orbits);
        prop_assert_eq!(cyclic.stabilizer_profile.iter().sum::<usize>(), arrangements(&m).len());
        // a random second generator, closing up to some transitive group
        let mut perm: Vec<usize> = (0..d).collect();
        let mut s = seed;
        for i in (1..d).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let rot: Vec<usize> = (0..d).map(|i| (i + 1) % d).collect();
        let g = PermutationGroup::generated_by(d, &[rot, perm]).unwrap();
        let r = orbit_count(&m, &g);
        prop_assert_eq!(r.orbits, r.burnside_orbits);
        prop_assert!(r.orbits <= cyclic.orbits);
    }

    #[test]
    fn spectral_sequence_converges(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let planted = common::random_planted_complex(&mut rng, 5, 5, 8, 3);
        let c = planted.build();
        let inf = e_infinity(&c);
        prop_assert_eq!(&inf.totals, &c.cohomology_dims());
        prop_assert_eq!(pages_as_table(&inf, &c), planted.expected_page(None));
        prop_assert_eq!(gr_of_cohomology(&c), planted.expected_page(None));
        let ps = pages(&c, c.filtration_length() + 1);
        for w in ps.windows(2) {
            for e in &w[1].entries {
                prop_assert!(e.dim <= w[0].dim(e.level, e.degree));
            }
        }
        prop_assert!(ps.last().unwrap().stable);
        prop_assert!(stabilization_page(&c) <= c.filtration_length().max(1));
    }

    #[test]
    fn one_step_filtrations_stabilise_at_once(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let planted = common::random_planted_complex(&mut rng, 5, 4, 6, 1);
        let c = planted.build();
        prop_assert_eq!(c.filtration_length(), 1);
        let first = pages(&c, 1).remove(0);
        prop_assert!(first.stable);
        prop_assert_eq!(first.totals, c.cohomology_dims());
    }

    #[test]
    fn b2_group_is_associative(a in proptest::collection::vec(0u64..25, 4), b in proptest::collection::vec(0u64..25, 4), c in proptest::collection::vec(0u64..25, 4)) {
        let g = make_group(&RootSystem::from_type("B2".parse().unwrap()).unwrap(), 5, 2).unwrap();
        prop_assert_eq!(g.mul(&g.mul(&a, &b), &c), g.mul(&a, &g.mul(&b, &c)));
        prop_assert_eq!(g.mul(&a, &g.inverse(&a)), g.identity());
    }

    #[test]
    fn g2_group_is_associative(a in proptest::collection::vec(0u64..7, 6), b in proptest::collection::vec(0u64..7, 6), c in proptest::collection::vec(0u64..7, 6)) {
        let g = make_group(&RootSystem::from_type("G2".parse().unwrap()).unwrap(), 7, 1).unwrap();
        prop_assert_eq!(g.mul(&g.mul(&a, &b), &c), g.mul(&a, &g.mul(&b, &c)));
        prop_assert_eq!(g.mul(&g.inverse(&a), &a), g.identity());
    }

    #[test]
    fn collection_ignores_bracketing(letters in proptest::collection::vec((0usize..4, 1i64..25), 1..12), split in 0usize..12) {
        // The same word of root letters collected left to right and as two halves.
        let g = make_group(&RootSystem::from_type("B2".parse().unwrap()).unwrap(), 5, 2).unwrap();
        let collect = |ls: &[(usize, i64)]| ls.iter().fold(g.identity(), |acc, &(r, t)| g.mul(&acc, &g.root_element(r, 0, t)));
        let split = split.min(letters.len());
        let whole = collect(&letters);
        let halves = g.mul(&collect(&letters[..split]), &collect(&letters[split..]));
        prop_assert_eq!(whole, halves);
    }
}

#[test]
fn trivial_filtration_gives_homology() {
    let c =
        FilteredComplex::new(3, vec![1, 2, 1], &[vec![vec![1], vec![0]], vec![vec![0, 1]]], &[vec![], vec![], vec![]])
            .unwrap();
    assert_eq!(pages(&c, 1)[0].totals, vec![0, 0, 0]);
    assert_eq!(gr_of_cohomology(&c), vec![vec![0], vec![0], vec![0]]);
}
