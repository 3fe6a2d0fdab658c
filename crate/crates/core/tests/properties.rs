use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::sample::subsequence;

use semistable::cohss::coherent_cohomology;
use semistable::dcomplex::DeltaComplex;
use semistable::exactla::{nilpotency_index, rank, smith_normal_form, wedge_square, NilpotentOperator};
use semistable::fixtures::{self, fixture, NAMES};
use semistable::sncl::dual_graph;
use semistable::wss::{build_e1, compute_e2};
use semistable::{IntMatrix, QMatrix};

fn complex_strategy() -> impl Strategy<Value = DeltaComplex> {
    (4usize..9).prop_flat_map(|n| {
        let simplex = subsequence((0..n).collect::<Vec<_>>(), 1..=4);
        prop::collection::vec(simplex, 1..14)
            .prop_map(|s| DeltaComplex::from_simplices(&s).expect("subsets of a vertex set"))
    })
}

fn int_matrix_strategy() -> impl Strategy<Value = IntMatrix> {
    (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| {
        prop::collection::vec(-6i64..=6, r * c).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = v.chunks(c).map(|x| x.to_vec()).collect();
            IntMatrix::from_i64_rows(&rows)
        })
    })
}

fn betti_euler(b: &[usize]) -> i64 {
    b.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn boundary_squares_to_zero(g in complex_strategy()) {
        for n in 2..=g.dim().unwrap_or(0) {
            prop_assert!((&g.boundary_matrix(n - 1) * &g.boundary_matrix(n)).is_zero());
        }
    }

    #[test]
    fn smith_form_reconstructs(m in int_matrix_strategy()) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(&(&s.u * &m) * &s.v, s.d.clone());
        for w in [&s.u, &s.v] {
            prop_assert_eq!(w.to_rational().determinant().abs(), One::one());
        }
        let f = s.invariant_factors();
        prop_assert!(f.iter().all(|x: &BigInt| x.is_positive()));
        prop_assert!(f.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        prop_assert_eq!(f.len(), rank(&m.to_rational()));
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                prop_assert!(i == j || s.d.get(i, j).is_zero());
            }
        }
    }

    #[test]
    fn euler_poincare_and_free_rank(g in complex_strategy()) {
        let q = g.homology(0).unwrap();
        prop_assert_eq!(betti_euler(&q), g.euler_characteristic());
        prop_assert_eq!(betti_euler(&g.homology(5).unwrap()), g.euler_characteristic());
        let z: Vec<usize> = g.integer_homology().iter().map(|a| a.rank).collect();
        prop_assert_eq!(z, q);
        prop_assert_eq!(g.vertex_components().len(), g.homology(0).unwrap()[0]);
    }

    #[test]
    fn relabelling_keeps_homology(g in complex_strategy(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let perms: Vec<Vec<usize>> = g
            .counts()
            .iter()
            .map(|&n| {
                let mut p: Vec<usize> = (0..n).collect();
                p.shuffle(&mut rng);
                p
            })
            .collect();
        let h = g.relabeled(&perms).unwrap();
        prop_assert_eq!(h.homology(0).unwrap(), g.homology(0).unwrap());
        prop_assert_eq!(h.integer_homology(), g.integer_homology());
    }
}

fn unimodular(seed: u64, dim: usize) -> QMatrix {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut p = IntMatrix::identity(dim);
    for _ in 0..12 {
        let (i, j) = (rng.gen_range(0..dim), rng.gen_range(0..dim));
        if i == j {
            p.negate_row(i);
        } else {
            p.add_row_multiple(i, j, &BigInt::from(rng.gen_range(-3i64..=3)));
        }
    }
    p.to_rational()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn conjugation_keeps_wedge_index(seed in any::<u64>()) {
        let p = unimodular(seed, 4);
        prop_assert_eq!(p.determinant().abs(), One::one());
        for (blocks, r) in [(vec![1, 1, 1, 1], 0), (vec![2, 1, 1], 1), (vec![2, 2], 2)] {
            let n = NilpotentOperator::jordan(&blocks).conjugate(&p).unwrap();
            prop_assert!((n.matrix() * n.matrix()).is_zero());
            prop_assert_eq!(rank(n.matrix()), r);
            prop_assert_eq!(nilpotency_index(&wedge_square(&n)).unwrap(), r + 1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn e2_is_independent_of_numbering(seed in any::<u64>(), which in 0usize..3) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let c = match which {
            0 => fixtures::abelian_csaszar(),
            1 => fixtures::k3_chain(4).unwrap(),
            _ => fixtures::abelian_cycle(4).unwrap(),
        };
        let mut shuffle = |n: usize| {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(&mut rng);
            p
        };
        let p = c
            .permuted(
                &shuffle(c.components().len()),
                &shuffle(c.double_curves().len()),
                &shuffle(c.triple_points().len()),
            )
            .unwrap();
        let t = Default::default();
        let a = compute_e2(&build_e1(&c, &t).unwrap()).unwrap();
        let b = compute_e2(&build_e1(&p, &t).unwrap()).unwrap();
        prop_assert_eq!(a.dims, b.dims);
    }
}

#[test]
fn fixture_complexes() {
    for name in NAMES {
        let g = dual_graph(&fixture(name, None).unwrap().config).unwrap();
        let q = g.homology(0).unwrap();
        assert_eq!(betti_euler(&q), g.euler_characteristic(), "{name}");
        let z: Vec<usize> = g.integer_homology().iter().map(|a| a.rank).collect();
        assert_eq!(z, q, "{name}");
    }
    for c in [fixtures::cy3_simplex_boundary(), fixtures::cy3_three_torus()] {
        let g = c.dual_complex();
        assert_eq!(betti_euler(&g.homology(0).unwrap()), g.euler_characteristic());
    }
}

#[test]
fn rational_strata_give_cochain_cohomology() {
    for name in ["k3_tetrahedron", "k3_icosahedron", "abelian_csaszar", "abelian_grid", "enriques_rp2", "bielliptic_klein"] {
        let f = fixture(name, None).unwrap();
        let g = dual_graph(&f.config).unwrap();
        for p in [0, 5, 7] {
            let h = coherent_cohomology(&f.config, &f.transfers, p).unwrap().h;
            assert_eq!(h.to_vec(), g.homology(p).unwrap(), "{name} char {p}");
        }
    }
}
