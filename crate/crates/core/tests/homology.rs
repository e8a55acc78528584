mod common;

use formality_core::complex::{connected_sum, product_complex, sphere, surface, torus};
use formality_core::homology::{
    apply_coboundary, betti_numbers, betti_numbers_float, coboundary, cohomology_basis, to_cochain,
};
use formality_core::Cochain;
use proptest::prelude::*;

#[test]
fn betti_numbers_match_rational_oracle() {
    for k in common::small_zoo() {
        assert_eq!(betti_numbers(&k).0, common::betti_oracle(&k), "{}", k.name());
    }
}

#[test]
fn float_route_agrees_with_exact_route() {
    for k in common::zoo() {
        assert_eq!(betti_numbers_float(&k), betti_numbers(&k), "{}", k.name());
    }
}

#[test]
fn coboundary_matches_oracle_entrywise() {
    for k in common::small_zoo() {
        for d in 0..k.dimension() {
            let lib = coboundary(&k, d).unwrap().to_dense();
            assert_eq!(lib, common::coboundary(&k, d), "{} degree {d}", k.name());
        }
    }
}

#[test]
fn coboundary_squares_to_zero() {
    for k in common::zoo() {
        for d in 0..k.dimension().saturating_sub(1) {
            let dd = coboundary(&k, d + 1).unwrap().to_dense() * coboundary(&k, d).unwrap().to_dense();
            assert!(dd.iter().all(|&x| x == 0.0), "{} degree {d}", k.name());
        }
    }
}

#[test]
fn euler_characteristic_is_alternating_betti_sum() {
    for k in common::zoo() {
        assert_eq!(k.euler_characteristic(), betti_numbers(&k).euler_characteristic(), "{}", k.name());
    }
}

#[test]
fn cohomology_basis_consists_of_independent_cocycles() {
    for k in common::small_zoo() {
        let b = betti_numbers(&k);
        for d in 0..=k.dimension() {
            let basis = cohomology_basis(&k, d).unwrap();
            assert_eq!(basis.len(), b.get(d), "{} degree {d}", k.name());
            for col in &basis {
                let c = to_cochain(&k, d, col);
                if d < k.dimension() {
                    assert!(common::apply_d(&k, d, &c.values).iter().all(|&x| x == 0.0));
                }
            }
        }
    }
}

#[test]
fn connected_sum_adds_first_betti_numbers() {
    let k = connected_sum(&surface(1), &surface(2)).unwrap();
    assert_eq!(betti_numbers(&k).0, [1, 6, 1]);
}

fn small_factor(i: usize) -> formality_core::SimplicialComplex {
    match i {
        0 => sphere(1),
        1 => sphere(2),
        2 => torus(1),
        _ => surface(1),
    }
}

fn kunneth(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn products_obey_kunneth(i in 0usize..4, j in 0usize..4) {
        let (a, b) = (small_factor(i), small_factor(j));
        let p = product_complex(&a, &b);
        prop_assert_eq!(betti_numbers(&p).0, kunneth(&betti_numbers(&a).0, &betti_numbers(&b).0));
    }

    #[test]
    fn library_coboundary_matches_oracle_on_random_cochains(seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let k = torus(3);
        for d in 0..3 {
            let values: Vec<f64> = (0..k.count(d)).map(|_| rng.random_range(-1.0..1.0)).collect();
            let lib = apply_coboundary(&k, &Cochain { degree: d, values: values.clone() }).unwrap();
            let oracle = common::apply_d(&k, d, &values);
            for (x, y) in lib.values.iter().zip(&oracle) {
                prop_assert!((x - y).abs() <= 1e-12);
            }
        }
    }
}
