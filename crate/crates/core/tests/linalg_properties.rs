use auk_core::linalg::{kernel, random_subspace, rref, Matrix, Subspace};
use auk_core::Fp;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

mod common;

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5, 7])
}

fn matrix() -> impl Strategy<Value = Matrix> {
    (prime(), 1usize..6, 1usize..7).prop_flat_map(|(p, r, c)| {
        prop::collection::vec(0u16..p as u16, r * c).prop_map(move |entries| {
            let rows = entries.chunks(c).map(<[u16]>::to_vec).collect();
            Matrix::from_rows(Fp::new(p).unwrap(), c, rows).unwrap()
        })
    })
}

/// Three random subspaces of a common `F_p^n`.
fn triple() -> impl Strategy<Value = (Subspace, Subspace, Subspace)> {
    (prime(), 1usize..6, any::<u64>()).prop_map(|(p, n, seed)| {
        let field = Fp::new(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let draw = |rng: &mut ChaCha8Rng| {
            let k = rand::Rng::gen_range(rng, 0..=n);
            random_subspace(field, n, k, rng)
        };
        (draw(&mut rng), draw(&mut rng), draw(&mut rng))
    })
}

proptest! {
    #[test]
    fn rref_is_idempotent(m in matrix()) {
        let (r, rank) = rref(&m);
        let (rr, rank2) = rref(&r);
        prop_assert_eq!(&r, &rr);
        prop_assert_eq!(rank, rank2);
    }

    #[test]
    fn rank_matches_oracle(m in matrix()) {
        prop_assert_eq!(m.rank(), common::rank_mod_p(&m.to_rows(), m.field().p()));
    }

    #[test]
    fn rank_nullity(m in matrix()) {
        let k = kernel(&m);
        prop_assert_eq!(m.rank() + k.dim(), m.cols());
        for v in k.basis() {
            prop_assert!(m.apply(v).iter().all(|&c| c == 0));
        }
    }

    #[test]
    fn transpose_preserves_rank(m in matrix()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn grassmann_formula((a, b, _) in triple()) {
        let s = a.sum(&b).unwrap();
        let i = a.intersect(&b).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
        prop_assert!(i.is_subspace_of(&a).unwrap() && i.is_subspace_of(&b).unwrap());
        prop_assert!(a.is_subspace_of(&s).unwrap() && b.is_subspace_of(&s).unwrap());
    }

    #[test]
    fn modular_law((a, b, x) in triple()) {
        // A ⊆ C forces A + (B ∩ C) = (A + B) ∩ C
        let c = a.sum(&x).unwrap();
        let left = a.sum(&b.intersect(&c).unwrap()).unwrap();
        let right = a.sum(&b).unwrap().intersect(&c).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn subspaces_are_canonical((a, b, _) in triple()) {
        // equal spans give equal values regardless of the spanning set
        let s1 = a.sum(&b).unwrap();
        let s2 = b.sum(&a).unwrap();
        prop_assert_eq!(&s1, &s2);
        let rows: Vec<Vec<u16>> = s1.basis().iter().rev().cloned().chain(a.basis().iter().cloned()).collect();
        prop_assert_eq!(Subspace::from_rows(s1.field(), s1.ambient_dim(), rows).unwrap(), s1);
    }

    #[test]
    fn reduce_decides_membership((a, _, x) in triple()) {
        for v in x.basis() {
            let mut r = v.clone();
            a.reduce(&mut r);
            let in_a = r.iter().all(|&c| c == 0);
            prop_assert_eq!(in_a, a.contains_slice(v));
            let mut rows = a.basis().to_vec();
            let before = common::rank_mod_p(&rows, a.field().p());
            rows.push(v.clone());
            prop_assert_eq!(in_a, common::rank_mod_p(&rows, a.field().p()) == before);
        }
    }

    #[test]
    fn inverse_round_trips(m in matrix()) {
        if m.rows() == m.cols() {
            if let Some(inv) = m.inverse() {
                prop_assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(m.field(), m.rows()));
            } else {
                prop_assert!(m.rank() < m.rows());
            }
        }
    }
}
