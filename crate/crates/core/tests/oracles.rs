use auk_core::linalg::{enumerate_subspaces, random_subspace};
use auk_core::presentation::{polynomial_presentation, random_graded_commutative};
use auk_core::{
    canonical_subalgebra, cd1_presentation, check_universal_koszul, colon, exterior_presentation, ideal_from_degree_one, verify_report,
    Budget, Fp, GradedAlgebraModel, GradedElement, Strategy, UkVerdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;

#[test]
fn hilbert_dims_match_span_oracle() {
    for p in [2u32, 3] {
        let field = Fp::new(p).unwrap();
        for n in 1..=2 {
            for pres in [
                exterior_presentation(n, field),
                cd1_presentation(n, field),
                polynomial_presentation(n, field),
            ] {
                for cap in 2..=4 {
                    let model = GradedAlgebraModel::build(pres.clone(), cap, &Budget::default()).unwrap();
                    assert_eq!(model.hilbert_dims(), common::hilbert_oracle(&pres, cap), "n={n} p={p} cap={cap}");
                }
            }
        }
    }
}

#[test]
fn hilbert_dims_of_random_algebras_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..25 {
        let n = rng.gen_range(1..=3);
        let field = Fp::new([2, 3, 5][rng.gen_range(0..3)]).unwrap();
        let pres = random_graded_commutative(n, field, &mut rng);
        let model = GradedAlgebraModel::build(pres.clone(), 4, &Budget::default()).unwrap();
        assert_eq!(model.hilbert_dims(), common::hilbert_oracle(&pres, 4));
    }
}

#[test]
fn colon_dims_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..15 {
        let n = rng.gen_range(2..=3);
        let pres = random_graded_commutative(n, Fp::F2, &mut rng);
        let model = GradedAlgebraModel::build(pres, 4, &Budget::default()).unwrap();
        let k = rng.gen_range(0..n);
        let gens = random_subspace(Fp::F2, n, k, &mut rng);
        let ideal = ideal_from_degree_one(&model, &gens).unwrap();
        let mut x = vec![0u16; n];
        x[gens.complement_columns()[0]] = 1;
        let result = colon(
            &model,
            &ideal,
            &GradedElement {
                degree: 1,
                coords: x.clone(),
            },
        )
        .unwrap();
        for d in 0..=2 {
            assert_eq!(
                result.components[d].dim(),
                common::colon_dim_oracle(&model, &gens, &x, d),
                "degree {d}"
            );
        }
    }
}

#[test]
fn subalgebra_relations_match_multiplication_kernel() {
    for p in [2u32, 3] {
        let field = Fp::new(p).unwrap();
        let model = GradedAlgebraModel::build_ref(exterior_presentation(3, field), 3, &Budget::default()).unwrap();
        for w in enumerate_subspaces(3, field, &Budget::default()).unwrap() {
            let b = canonical_subalgebra(&model, &w).unwrap();
            assert_eq!(b.relation_dim(), common::ww_kernel_dim_oracle(&model, &w));
        }
    }
}

#[test]
fn uk_result_is_independent_of_pool_size() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let pres = random_graded_commutative(3, Fp::F2, &mut rng);
        let model = GradedAlgebraModel::build(pres, 4, &Budget::default()).unwrap();
        let run = |threads: usize, strategy: Strategy| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| check_universal_koszul(&model, strategy, 3, &Budget::default()).unwrap())
        };
        for strategy in [Strategy::Exhaustive, Strategy::Randomized { seed: 8, samples: 50 }] {
            assert_eq!(run(1, strategy), run(8, strategy));
        }
    }
}

#[test]
fn every_not_uk_witness_verifies() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut failures = 0;
    for _ in 0..40 {
        let pres = random_graded_commutative(3, Fp::F2, &mut rng);
        let model = GradedAlgebraModel::build(pres, 4, &Budget::default()).unwrap();
        let report = check_universal_koszul(&model, Strategy::Exhaustive, 3, &Budget::default()).unwrap();
        if report.verdict == UkVerdict::NotUk {
            failures += 1;
            assert_eq!(verify_report(&model, &report), Some(true));
        } else {
            assert_eq!(verify_report(&model, &report), None);
        }
    }
    assert!(failures > 0);
}

#[test]
fn colon_is_invariant_under_scaling_and_translation() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for p in [3u32, 5] {
        let field = Fp::new(p).unwrap();
        for _ in 0..20 {
            let n = rng.gen_range(2..=3);
            let model = GradedAlgebraModel::build(random_graded_commutative(n, field, &mut rng), 4, &Budget::default()).unwrap();
            let k = rng.gen_range(0..n);
            let gens = random_subspace(field, n, k, &mut rng);
            let ideal = ideal_from_degree_one(&model, &gens).unwrap();
            let mut x = vec![0u16; n];
            x[gens.complement_columns()[0]] = 1;
            let base = colon(
                &model,
                &ideal,
                &GradedElement {
                    degree: 1,
                    coords: x.clone(),
                },
            )
            .unwrap();
            for lambda in 1..p as u16 {
                let mut y: Vec<u16> = x.iter().map(|&c| field.mul(c, lambda)).collect();
                for row in gens.basis() {
                    let t = rng.gen_range(0..p as u16);
                    for (s, &r) in y.iter_mut().zip(row) {
                        *s = field.mul_add(*s, t, r);
                    }
                }
                let other = colon(&model, &ideal, &GradedElement { degree: 1, coords: y }).unwrap();
                assert_eq!(other.components, base.components);
            }
        }
    }
}
