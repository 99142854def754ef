//! Quadratic presentations T(V)/<R>.

use std::collections::HashSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::linalg::{kernel, random_subspace, Matrix, Subspace};

/// Generators `x_1..x_n` and a relation space `R ⊆ V⊗V`.
///
/// Tensor coordinates follow `x_i ⊗ x_j ↦ i·n + j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadraticPresentation {
    field: Fp,
    labels: Vec<String>,
    relations: Subspace,
}

pub fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

impl QuadraticPresentation {
    pub fn new(field: Fp, labels: Vec<String>, relations: Subspace) -> Result<Self> {
        let n = labels.len();
        let mut seen = HashSet::new();
        for l in &labels {
            if l.is_empty() {
                return Err(Error::InvalidPresentation("empty generator label".into()));
            }
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidPresentation(format!("duplicate generator label `{l}`")));
            }
        }
        if relations.field() != field {
            return Err(Error::ModulusMismatch {
                left: field.p(),
                right: relations.field().p(),
            });
        }
        if relations.ambient_dim() != n * n {
            return Err(Error::AmbientMismatch {
                left: n * n,
                right: relations.ambient_dim(),
            });
        }
        Ok(QuadraticPresentation { field, labels, relations })
    }

    /// Presentation on default labels `x1..xn`.
    pub fn with_default_labels(field: Fp, n: usize, relations: Subspace) -> Result<Self> {
        Self::new(field, default_labels(n), relations)
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn num_generators(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// True iff the canonical graded-commutativity relations lie in R.
    pub fn is_graded_commutative(&self) -> bool {
        graded_commutative_canonical_relations(self.num_generators(), self.field)
            .is_subspace_of(&self.relations)
            .expect("same ambient")
    }

    /// Same relations plus the canonical graded-commutativity relations.
    pub fn with_canonical_relations(&self) -> Self {
        let canon = graded_commutative_canonical_relations(self.num_generators(), self.field);
        QuadraticPresentation {
            field: self.field,
            labels: self.labels.clone(),
            relations: self.relations.sum(&canon).expect("same ambient"),
        }
    }
}

fn tensor_vector(n: usize, terms: &[(usize, usize, u16)]) -> Vec<u16> {
    let mut v = vec![0u16; n * n];
    for &(i, j, c) in terms {
        v[i * n + j] = c;
    }
    v
}

/// Relations forced by graded-commutativity.
///
/// For odd p these are `x_i⊗x_j + x_j⊗x_i` (i<j) and the squares `x_i⊗x_i`.
/// Over F_2 graded-commutativity is plain commutativity, so only the
/// symmetric commutators are returned and squares are left free.
pub fn graded_commutative_canonical_relations(n: usize, field: Fp) -> Subspace {
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            rows.push(tensor_vector(n, &[(i, j, 1), (j, i, 1)]));
        }
        if !field.is_two() {
            rows.push(tensor_vector(n, &[(i, i, 1)]));
        }
    }
    Subspace::from_rows_unchecked(field, n * n, rows)
}

/// The free algebra T(V), R = 0.
pub fn free_presentation(n: usize, field: Fp) -> QuadraticPresentation {
    QuadraticPresentation::with_default_labels(field, n, Subspace::zero(field, n * n)).expect("valid")
}

/// The symmetric algebra: R = span{x_i⊗x_j − x_j⊗x_i : i<j}.
pub fn polynomial_presentation(n: usize, field: Fp) -> QuadraticPresentation {
    let minus_one = field.neg(1);
    let rows = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| tensor_vector(n, &[(i, j, 1), (j, i, minus_one)]))
        .collect();
    let relations = Subspace::from_rows_unchecked(field, n * n, rows);
    QuadraticPresentation::with_default_labels(field, n, relations).expect("valid")
}

/// Relations = ker(cup), for a cup product `V⊗V -> H^2` given as an
/// `m x n²` matrix.
pub fn presentation_from_cup(field: Fp, n: usize, m: usize, cup: &Matrix) -> Result<QuadraticPresentation> {
    if cup.field() != field {
        return Err(Error::ModulusMismatch {
            left: field.p(),
            right: cup.field().p(),
        });
    }
    if cup.rows() != m || cup.cols() != n * n {
        return Err(Error::MalformedMatrix(format!(
            "cup matrix is {}x{}, expected {m}x{}",
            cup.rows(),
            cup.cols(),
            n * n
        )));
    }
    QuadraticPresentation::with_default_labels(field, n, kernel(cup))
}

/// A random graded-commutative presentation: the canonical relations plus a
/// random subspace of a complement, whose dimension is drawn uniformly.
pub fn random_graded_commutative<R: Rng + ?Sized>(n: usize, field: Fp, rng: &mut R) -> QuadraticPresentation {
    let canon = graded_commutative_canonical_relations(n, field);
    let comp = canon.complement_columns();
    let extra_dim = rng.gen_range(0..=comp.len());
    let extra = random_subspace(field, comp.len(), extra_dim, rng);
    let mut rows: Vec<Vec<u16>> = canon.basis().to_vec();
    for r in extra.basis() {
        let mut v = vec![0u16; n * n];
        for (k, &c) in r.iter().enumerate() {
            v[comp[k]] = c;
        }
        rows.push(v);
    }
    let relations = Subspace::from_rows_unchecked(field, n * n, rows);
    QuadraticPresentation::with_default_labels(field, n, relations).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_relation_dims() {
        assert_eq!(graded_commutative_canonical_relations(1, Fp::F2).dim(), 0);
        let two = graded_commutative_canonical_relations(2, Fp::F2);
        assert_eq!(two.basis(), &[vec![0, 1, 1, 0]]);
        assert_eq!(graded_commutative_canonical_relations(2, Fp::new(3).unwrap()).dim(), 3);
    }

    #[test]
    fn graded_commutativity_detection() {
        assert!(!free_presentation(2, Fp::F2).is_graded_commutative());
        assert!(polynomial_presentation(2, Fp::F2).is_graded_commutative());
        assert!(!polynomial_presentation(2, Fp::new(3).unwrap()).is_graded_commutative());
    }

    #[test]
    fn cup_kernels() {
        let zero = Matrix::zeros(Fp::F2, 1, 4);
        let p = presentation_from_cup(Fp::F2, 2, 1, &zero).unwrap();
        assert!(p.relations().is_full());

        let wedge = Matrix::from_rows(Fp::F2, 4, vec![vec![0, 1, 1, 0]]).unwrap();
        let p = presentation_from_cup(Fp::F2, 2, 1, &wedge).unwrap();
        assert_eq!(p.relations().dim(), 3);
        assert!(p.is_graded_commutative());

        // kills the commutator, injective on x1x1, x1x2, x2x2
        let cup = Matrix::from_rows(Fp::F2, 4, vec![vec![1, 0, 0, 0], vec![0, 1, 1, 0], vec![0, 0, 0, 1]]).unwrap();
        let p = presentation_from_cup(Fp::F2, 2, 3, &cup).unwrap();
        assert_eq!(p.relations(), &graded_commutative_canonical_relations(2, Fp::F2));
    }

    #[test]
    fn labels_must_be_distinct() {
        let r = Subspace::zero(Fp::F2, 4);
        let err = QuadraticPresentation::new(Fp::F2, vec!["a".into(), "a".into()], r).unwrap_err();
        assert!(matches!(err, Error::InvalidPresentation(_)));
    }

    #[test]
    fn random_presentations_are_graded_commutative() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for p in [2, 3] {
            for _ in 0..20 {
                let pres = random_graded_commutative(3, Fp::new(p).unwrap(), &mut rng);
                assert!(pres.is_graded_commutative());
            }
        }
    }
}
