//! Subalgebras generated by a degree-1 subspace, and split-relation descent.

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::Fp;
use crate::koszul::{check_universal_koszul, Strategy, UkReport, UkVerdict};
use crate::linalg::{kernel, Matrix, Subspace};
use crate::map::{kron, GradedMap};
use crate::model::{GradedAlgebraModel, GradedElement, ModelRef};
use crate::presentation::QuadraticPresentation;

/// `B_W`: the quadratic algebra on a basis of `W` with relations
/// `R ∩ (W⊗W)`, together with its map into the parent.
#[derive(Clone, Debug)]
pub struct CanonicalSubalgebra {
    parent: ModelRef,
    w: Subspace,
    induced: ModelRef,
    embedding: GradedMap,
}

fn check_degree_one(model: &GradedAlgebraModel, w: &Subspace) -> Result<()> {
    if w.field() != model.field() {
        return Err(Error::ModulusMismatch {
            left: model.field().p(),
            right: w.field().p(),
        });
    }
    if w.ambient_dim() != model.num_generators() {
        return Err(Error::AmbientMismatch {
            left: model.num_generators(),
            right: w.ambient_dim(),
        });
    }
    Ok(())
}

/// `(n² x k²)` matrix whose column `a·k + b` is `w_a ⊗ w_b`.
fn tensor_embedding(field: Fp, basis: &[Vec<u16>], n: usize) -> Matrix {
    let mut cols = Vec::with_capacity(basis.len() * basis.len());
    for a in basis {
        for b in basis {
            cols.push(kron(field, a, b));
        }
    }
    Matrix::from_columns(field, n * n, &cols).expect("consistent dimensions")
}

/// Span of `{a⊗b : a, b ∈ basis}` inside `V⊗V`.
fn tensor_square_span(field: Fp, basis: &[Vec<u16>], n: usize) -> Subspace {
    let rows = basis.iter().flat_map(|a| basis.iter().map(move |b| kron(field, a, b))).collect();
    Subspace::from_rows_unchecked(field, n * n, rows)
}

fn induced_labels(parent: &GradedAlgebraModel, w: &Subspace) -> Vec<String> {
    let coordinate = w.basis().iter().all(|r| r.iter().filter(|&&c| c != 0).count() == 1);
    if coordinate {
        w.pivots().iter().map(|&i| parent.presentation().labels()[i].clone()).collect()
    } else {
        (1..=w.dim()).map(|i| format!("w{i}")).collect()
    }
}

/// Builds `B_W` at the parent's cap, generated by the echelon basis of `W`.
pub fn canonical_subalgebra(parent: &ModelRef, w: &Subspace) -> Result<CanonicalSubalgebra> {
    check_degree_one(parent, w)?;
    let field = parent.field();
    let n = parent.num_generators();
    let e = tensor_embedding(field, w.basis(), n);
    let relations = parent.presentation().relations().preimage_under(&e)?;
    let presentation = QuadraticPresentation::new(field, induced_labels(parent, w), relations)?;
    // tensor sizes are bounded by the parent's, which already passed its budget
    let unbounded = Budget {
        max_tensor_dim: usize::MAX,
        ..Budget::default()
    };
    let induced = GradedAlgebraModel::build_ref(presentation, parent.cap(), &unbounded)?;
    let inclusion = Matrix::from_columns(field, n, w.basis())?;
    let embedding = GradedMap::new(induced.clone(), parent.clone(), inclusion)?;
    Ok(CanonicalSubalgebra {
        parent: parent.clone(),
        w: w.clone(),
        induced,
        embedding,
    })
}

impl CanonicalSubalgebra {
    pub fn parent(&self) -> &ModelRef {
        &self.parent
    }

    pub fn generating_space(&self) -> &Subspace {
        &self.w
    }

    pub fn induced(&self) -> &ModelRef {
        &self.induced
    }

    pub fn induced_presentation(&self) -> &QuadraticPresentation {
        self.induced.presentation()
    }

    pub fn embedding(&self) -> &GradedMap {
        &self.embedding
    }

    pub fn relation_dim(&self) -> usize {
        self.induced.presentation().relations().dim()
    }

    /// `R_B` pushed into `V⊗V`; equals `R ∩ (W⊗W)`.
    pub fn relations_in_parent(&self) -> Subspace {
        let n = self.parent.num_generators();
        let e = tensor_embedding(self.parent.field(), self.w.basis(), n);
        self.induced.presentation().relations().image_under(&e).expect("shapes agree")
    }

    /// Image of `(B_W)_d` in `A_d`.
    pub fn image_in_degree(&self, d: usize) -> Subspace {
        self.embedding.image_in_degree(d)
    }

    /// First degree `≤ cap` where `B_W → A` has a kernel, with a witness.
    pub fn embedding_kernel(&self) -> Option<GradedElement> {
        (0..=self.embedding.top_degree()).find_map(|d| self.embedding.kernel_witness(d))
    }

    /// Piecewise containment of images, `B_W ⊆ B_{W'}` inside `A`.
    pub fn is_contained_in(&self, other: &CanonicalSubalgebra) -> bool {
        let top = self.embedding.top_degree().min(other.embedding.top_degree());
        (0..=top).all(|d| self.image_in_degree(d).is_subspace_of(&other.image_in_degree(d)).unwrap_or(false))
    }
}

/// `ker(W⊗W → A_2)`, computed with the parent multiplication only.
pub fn relations_via_multiplication(parent: &GradedAlgebraModel, w: &Subspace) -> Result<Subspace> {
    check_degree_one(parent, w)?;
    let field = parent.field();
    let mut cols = Vec::with_capacity(w.dim() * w.dim());
    for a in w.basis() {
        for b in w.basis() {
            let ea = GradedElement {
                degree: 1,
                coords: a.clone(),
            };
            let eb = GradedElement {
                degree: 1,
                coords: b.clone(),
            };
            cols.push(parent.multiply(&ea, &eb)?.coords);
        }
    }
    let m = Matrix::from_columns(field, parent.dim(2), &cols)?;
    Ok(kernel(&m))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "clause")]
pub enum SplitFailure {
    /// `W + U ≠ C_1` or `W ∩ U ≠ 0`.
    NotComplementary {
        sum_dim: usize,
        intersection_dim: usize,
        ambient: usize,
    },
    /// A relation outside `(R ∩ W⊗W) + (R ∩ U⊗U)`, split into its parts.
    /// All four vectors are in `V⊗V` coordinates.
    RelationNotSplit {
        relation: Vec<u16>,
        ww_part: Vec<u16>,
        uu_part: Vec<u16>,
        mixed_part: Vec<u16>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCheck {
    pub holds: bool,
    pub relation_dim: usize,
    pub ww_dim: usize,
    pub uu_dim: usize,
    pub failure: Option<SplitFailure>,
}

/// Parts of `r` along `W⊗W`, `U⊗U` and the mixed blocks, for `C_1 = W ⊕ U`.
fn decompose(field: Fp, w: &Subspace, u: &Subspace, r: &[u16]) -> (Vec<u16>, Vec<u16>, Vec<u16>) {
    let n = w.ambient_dim();
    let k = w.dim();
    let rows: Vec<Vec<u16>> = w.basis().iter().chain(u.basis()).cloned().collect();
    let b = Matrix::from_rows(field, n, rows).expect("square");
    let b_inv = b.inverse().expect("complementary");
    let rm = Matrix::from_rows(field, n, r.chunks(n).map(<[u16]>::to_vec).collect()).expect("square");
    // coordinates in the basis (w_1..w_k, u_1..): C = B^{-T} R B^{-1}
    let c = b_inv.transpose().mul(&rm).and_then(|m| m.mul(&b_inv)).expect("square");
    let back = |keep: &dyn Fn(usize, usize) -> bool| -> Vec<u16> {
        let mut part = Matrix::zeros(field, n, n);
        for i in 0..n {
            for j in 0..n {
                if keep(i, j) {
                    part.set(i, j, c.get(i, j));
                }
            }
        }
        let x = b.transpose().mul(&part).and_then(|m| m.mul(&b)).expect("square");
        x.to_rows().concat()
    };
    (
        back(&|i, j| i < k && j < k),
        back(&|i, j| i >= k && j >= k),
        back(&|i, j| (i < k) != (j < k)),
    )
}

/// Tests `C_1 = W ⊕ U` and `R = (R ∩ W⊗W) ⊕ (R ∩ U⊗U)`.
pub fn check_split_relations(c: &GradedAlgebraModel, w: &Subspace, u: &Subspace) -> Result<SplitCheck> {
    check_degree_one(c, w)?;
    check_degree_one(c, u)?;
    let field = c.field();
    let n = c.num_generators();
    let r = c.presentation().relations();
    let sum = w.sum(u)?;
    let meet = w.intersect(u)?;
    if !sum.is_full() || !meet.is_zero() {
        return Ok(SplitCheck {
            holds: false,
            relation_dim: r.dim(),
            ww_dim: 0,
            uu_dim: 0,
            failure: Some(SplitFailure::NotComplementary {
                sum_dim: sum.dim(),
                intersection_dim: meet.dim(),
                ambient: n,
            }),
        });
    }
    let ww = tensor_square_span(field, w.basis(), n);
    let uu = tensor_square_span(field, u.basis(), n);
    let r_ww = r.intersect(&ww)?;
    let r_uu = r.intersect(&uu)?;
    let holds = r_ww.dim() + r_uu.dim() == r.dim();
    let failure = if holds {
        None
    } else {
        // prefer a relation with mixed support, reduced modulo the split part
        let split = r_ww.sum(&r_uu)?;
        let blocks = ww.sum(&uu)?;
        let mut witness = r
            .first_outside(&blocks)
            .or_else(|| r.first_outside(&split))
            .expect("dimension count says R is larger");
        split.reduce(&mut witness);
        let (ww_part, uu_part, mixed_part) = decompose(field, w, u, &witness);
        Some(SplitFailure::RelationNotSplit {
            relation: witness,
            ww_part,
            uu_part,
            mixed_part,
        })
    };
    Ok(SplitCheck {
        holds,
        relation_dim: r.dim(),
        ww_dim: r_ww.dim(),
        uu_dim: r_uu.dim(),
        failure,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "reason")]
pub enum Refusal {
    SplitFailed { split: SplitCheck },
    ParentNotUk { report: UkReport },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Descent {
    pub split: SplitCheck,
    pub parent_report: UkReport,
    /// Verdict for `D` inherited from `C` through the split hypothesis.
    pub derived: UkVerdict,
    /// Independent check of `D = B_W`.
    pub direct: UkReport,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
#[allow(clippy::large_enum_variant)]
pub enum DescentOutcome {
    Refused(Refusal),
    Completed(Box<Descent>),
}

/// Universal Koszulity of `D = ⟨W⟩` from that of `C`, when the relations of
/// `C` split along `C_1 = W ⊕ U`. `D` is also checked directly.
pub fn descend_uk(
    c: &ModelRef,
    w: &Subspace,
    u: &Subspace,
    strategy: Strategy,
    colon_cap: usize,
    budget: &Budget,
) -> Result<DescentOutcome> {
    let split = check_split_relations(c, w, u)?;
    if !split.holds {
        return Ok(DescentOutcome::Refused(Refusal::SplitFailed { split }));
    }
    let parent_report = check_universal_koszul(c, strategy, colon_cap, budget)?;
    if !parent_report.verdict.holds() {
        return Ok(DescentOutcome::Refused(Refusal::ParentNotUk { report: parent_report }));
    }
    let d = canonical_subalgebra(c, w)?;
    let direct = check_universal_koszul(d.induced(), strategy, colon_cap, budget)?;
    let derived = parent_report.verdict;
    let agree = derived.holds() == direct.verdict.holds();
    Ok(DescentOutcome::Completed(Box::new(Descent {
        split,
        parent_report,
        derived,
        direct,
        agree,
    })))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exterior(n: usize) -> ModelRef {
        let mut rows = Vec::new();
        for i in 0..n {
            for j in i..n {
                let mut v = vec![0u16; n * n];
                v[i * n + j] = 1;
                v[j * n + i] = 1;
                if i == j {
                    v[i * n + i] = 1;
                }
                rows.push(v);
            }
        }
        let rel = Subspace::from_rows(Fp::F2, n * n, rows).unwrap();
        GradedAlgebraModel::build_ref(
            QuadraticPresentation::with_default_labels(Fp::F2, n, rel).unwrap(),
            4,
            &Budget::default(),
        )
        .unwrap()
    }

    fn span(n: usize, rows: Vec<Vec<u16>>) -> Subspace {
        Subspace::from_rows(Fp::F2, n, rows).unwrap()
    }

    #[test]
    fn full_w_gives_parent() {
        let a = exterior(3);
        let b = canonical_subalgebra(&a, &Subspace::full(Fp::F2, 3)).unwrap();
        assert_eq!(b.induced_presentation(), a.presentation());
        assert_eq!(b.induced().hilbert_dims(), a.hilbert_dims());
    }

    #[test]
    fn coordinate_plane_in_exterior() {
        let a = exterior(3);
        let b = canonical_subalgebra(&a, &span(3, vec![vec![1, 0, 0], vec![0, 1, 0]])).unwrap();
        assert_eq!(b.relation_dim(), 3);
        assert_eq!(b.induced().hilbert_dims(), vec![1, 2, 1, 0, 0]);
        assert_eq!(b.induced_presentation().labels(), &["x1".to_string(), "x2".to_string()]);
        assert!(b.embedding_kernel().is_none());
    }

    #[test]
    fn single_generator() {
        let a = exterior(3);
        let b = canonical_subalgebra(&a, &span(3, vec![vec![1, 0, 0]])).unwrap();
        assert_eq!(b.induced_presentation().relations().basis(), &[vec![1]]);
        assert_eq!(&b.induced().hilbert_dims()[..3], &[1, 1, 0]);
    }

    #[test]
    fn diagonal_line_uses_fresh_label() {
        let a = exterior(2);
        let b = canonical_subalgebra(&a, &span(2, vec![vec![1, 1]])).unwrap();
        assert_eq!(b.induced_presentation().labels(), &["w1".to_string()]);
        assert_eq!(b.relation_dim(), 1);
    }

    #[test]
    fn relations_agree_with_multiplication_kernel() {
        let a = exterior(3);
        for w in [
            span(3, vec![vec![1, 1, 0]]),
            span(3, vec![vec![1, 1, 0], vec![0, 1, 1]]),
            Subspace::zero(Fp::F2, 3),
        ] {
            let b = canonical_subalgebra(&a, &w).unwrap();
            assert_eq!(b.induced_presentation().relations(), &relations_via_multiplication(&a, &w).unwrap());
        }
    }

    #[test]
    fn containment_follows_generators() {
        let a = exterior(3);
        let small = canonical_subalgebra(&a, &span(3, vec![vec![1, 0, 0]])).unwrap();
        let big = canonical_subalgebra(&a, &span(3, vec![vec![1, 0, 0], vec![0, 1, 0]])).unwrap();
        assert!(small.is_contained_in(&big));
        assert!(!big.is_contained_in(&small));
    }

    fn squares_only() -> ModelRef {
        let rel = span(4, vec![vec![1, 0, 0, 0], vec![0, 0, 0, 1]]);
        GradedAlgebraModel::build_ref(
            QuadraticPresentation::with_default_labels(Fp::F2, 2, rel).unwrap(),
            4,
            &Budget::default(),
        )
        .unwrap()
    }

    #[test]
    fn split_relations_hold_for_squares() {
        let c = squares_only();
        let check = check_split_relations(&c, &span(2, vec![vec![1, 0]]), &span(2, vec![vec![0, 1]])).unwrap();
        assert!(check.holds);
        assert_eq!((check.ww_dim, check.uu_dim), (1, 1));
    }

    #[test]
    fn exterior_commutator_mixes() {
        let c = exterior(2);
        let check = check_split_relations(&c, &span(2, vec![vec![1, 0]]), &span(2, vec![vec![0, 1]])).unwrap();
        assert!(!check.holds);
        match check.failure {
            Some(SplitFailure::RelationNotSplit {
                relation,
                ww_part,
                uu_part,
                mixed_part,
            }) => {
                assert_eq!(relation, vec![0, 1, 1, 0]);
                assert_eq!(mixed_part, vec![0, 1, 1, 0]);
                assert!(ww_part.iter().all(|&c| c == 0));
                assert!(uu_part.iter().all(|&c| c == 0));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn decomposition_in_skew_basis() {
        // W = <x1 + x2>, U = <x2>: x1⊗x1 = (w - u)⊗(w - u)
        let (w, u) = (span(2, vec![vec![1, 1]]), span(2, vec![vec![0, 1]]));
        let (ww, uu, mixed) = decompose(Fp::F2, &w, &u, &[1, 0, 0, 0]);
        assert_eq!(ww, vec![1, 1, 1, 1]);
        assert_eq!(uu, vec![0, 0, 0, 1]);
        assert_eq!(mixed, vec![0, 1, 1, 0]);
    }

    #[test]
    fn overlapping_spaces_fail_clause_a() {
        let c = squares_only();
        let w = span(2, vec![vec![1, 0]]);
        let check = check_split_relations(&c, &w, &w).unwrap();
        assert!(matches!(
            check.failure,
            Some(SplitFailure::NotComplementary { intersection_dim: 1, .. })
        ));
    }

    #[test]
    fn descent_on_split_squares() {
        let c = squares_only();
        let out = descend_uk(
            &c,
            &span(2, vec![vec![1, 0]]),
            &span(2, vec![vec![0, 1]]),
            Strategy::Exhaustive,
            2,
            &Budget::default(),
        )
        .unwrap();
        match out {
            DescentOutcome::Completed(d) => {
                assert!(d.agree);
                assert_eq!(d.direct.hilbert_dims, vec![1, 1, 0, 0, 0]);
            }
            DescentOutcome::Refused(r) => panic!("refused: {r:?}"),
        }
    }

    #[test]
    fn descent_refuses_exterior() {
        let c = exterior(2);
        let out = descend_uk(
            &c,
            &span(2, vec![vec![1, 0]]),
            &span(2, vec![vec![0, 1]]),
            Strategy::Exhaustive,
            3,
            &Budget::default(),
        )
        .unwrap();
        assert!(matches!(out, DescentOutcome::Refused(Refusal::SplitFailed { .. })));
    }

    #[test]
    fn descent_with_trivial_complement_reproduces_parent() {
        let c = exterior(2);
        let out = descend_uk(
            &c,
            &Subspace::full(Fp::F2, 2),
            &Subspace::zero(Fp::F2, 2),
            Strategy::Exhaustive,
            3,
            &Budget::default(),
        )
        .unwrap();
        let DescentOutcome::Completed(d) = out else { panic!() };
        assert_eq!(d.direct, d.parent_report);
    }
}
