//! Filtered systems of degree-1 subspaces and the asymptotic check.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::koszul::{check_universal_koszul, Counterexample, Strategy, UkReport};
use crate::linalg::Subspace;
use crate::model::{GradedAlgebraModel, GradedElement, ModelRef};
use crate::subalgebra::canonical_subalgebra;

/// An upper bound `W_k ⊇ W_i + W_j` for a pair `i < j`, if one exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub i: usize,
    pub j: usize,
    pub upper: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilteredSystem {
    items: Vec<Subspace>,
    /// Every `(i, j)` with `W_i ⊆ W_j`, including `i = j`.
    inclusions: Vec<(usize, usize)>,
    certificates: Vec<Certificate>,
    closed_under_sums: bool,
}

/// Collects `family` in order and, when asked, drops duplicates and adds
/// pairwise sums until nothing new appears.
pub fn build_filtered_system(
    model: &GradedAlgebraModel,
    family: &[Subspace],
    close_under_sums: bool,
    budget: &Budget,
) -> Result<FilteredSystem> {
    let n = model.num_generators();
    for w in family {
        if w.field() != model.field() {
            return Err(Error::ModulusMismatch {
                left: model.field().p(),
                right: w.field().p(),
            });
        }
        if w.ambient_dim() != n {
            return Err(Error::AmbientMismatch {
                left: n,
                right: w.ambient_dim(),
            });
        }
    }
    let mut items: Vec<Subspace> = Vec::new();
    for w in family {
        if !close_under_sums || !items.contains(w) {
            items.push(w.clone());
        }
    }
    let over = |len: usize| Error::BudgetExceeded {
        what: "filtered system items",
        required: len as u128,
        limit: budget.max_system_items as u128,
    };
    if items.len() > budget.max_system_items {
        return Err(over(items.len()));
    }
    if close_under_sums {
        // pairs (i, j) with j < done are already saturated
        let mut done = 0;
        while done < items.len() {
            let j = done;
            for i in 0..=j {
                let s = items[i].sum(&items[j])?;
                if !items.contains(&s) {
                    items.push(s);
                    if items.len() > budget.max_system_items {
                        return Err(over(items.len()));
                    }
                }
            }
            done += 1;
        }
    }
    let m = items.len();
    let mut contained = vec![false; m * m];
    for i in 0..m {
        for j in 0..m {
            contained[i * m + j] = i == j || items[i].is_subspace_of(&items[j])?;
        }
    }
    let inclusions = (0..m)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .filter(|&(i, j)| contained[i * m + j])
        .collect();
    let mut certificates = Vec::with_capacity(m * m.saturating_sub(1) / 2);
    for i in 0..m {
        for j in i + 1..m {
            let s = items[i].sum(&items[j])?;
            let upper = (0..m).find(|&k| contained[i * m + k] && contained[j * m + k] && s.is_subspace_of(&items[k]).unwrap_or(false));
            certificates.push(Certificate { i, j, upper });
        }
    }
    Ok(FilteredSystem {
        items,
        inclusions,
        certificates,
        closed_under_sums: close_under_sums,
    })
}

impl FilteredSystem {
    pub fn items(&self) -> &[Subspace] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn inclusions(&self) -> &[(usize, usize)] {
        &self.inclusions
    }

    pub fn certificates(&self) -> &[Certificate] {
        &self.certificates
    }

    pub fn closed_under_sums(&self) -> bool {
        self.closed_under_sums
    }

    pub fn is_directed(&self) -> bool {
        self.certificates.iter().all(|c| c.upper.is_some())
    }

    pub fn missing_certificate(&self) -> Option<(usize, usize)> {
        self.certificates.iter().find(|c| c.upper.is_none()).map(|c| (c.i, c.j))
    }

    /// Re-checks every recorded certificate against the items.
    pub fn verify_certificates(&self) -> bool {
        self.certificates.iter().all(|c| match c.upper {
            None => true,
            Some(k) => self.items[c.i]
                .sum(&self.items[c.j])
                .and_then(|s| s.is_subspace_of(&self.items[k]))
                .unwrap_or(false),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AukCondition {
    #[serde(rename = "i")]
    I,
    #[serde(rename = "ii")]
    Ii,
    #[serde(rename = "iii")]
    Iii,
    #[serde(rename = "iv")]
    Iv,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum AukFailure {
    /// `T(W)/(R ∩ W⊗W) → A` has a kernel, so `⟨W⟩` is not that quadratic algebra.
    NotQuadratic {
        item: usize,
        witness: GradedElement,
    },
    ItemNotUk {
        item: usize,
        counterexample: Box<Counterexample>,
    },
    MissingCertificate {
        i: usize,
        j: usize,
    },
    UnionGap {
        degree: usize,
        union_dim: usize,
        target_dim: usize,
        witness: GradedElement,
    },
    /// `uncovered` is `A_1` itself, contained in no item.
    NotCovered {
        largest_item_dim: usize,
        uncovered: Subspace,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AukVerdict {
    #[serde(rename = "AUK_VerifiedUpTo")]
    VerifiedUpTo(usize),
    Fails {
        condition: AukCondition,
        detail: AukFailure,
    },
}

impl AukVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, AukVerdict::VerifiedUpTo(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ItemReport {
    pub generators: usize,
    pub relation_dim: usize,
    pub uk: UkReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCoverage {
    pub degree: usize,
    pub union_dim: usize,
    pub target_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AukReport {
    pub verdict: AukVerdict,
    pub colon_cap: usize,
    pub union_cap: usize,
    pub items: Vec<ItemReport>,
    pub coverage: Vec<DegreeCoverage>,
    pub notes: Vec<String>,
}

const NOTE_I: &str = "(i): every item is the quadratic algebra on a finite basis of W_i with relations R ∩ (W_i⊗W_i); its map onto the subalgebra generated by W_i is checked injective through the model cap";
const NOTE_III: &str = "(iii): items are subalgebras, so the colimit map is injective; surjectivity is checked as equality of the sum of item images with A_d for each degree up to the union cap";
const NOTE_IV: &str = "(iv): A_1 is finite-dimensional, so covering every finite-dimensional subspace reduces to some item containing A_1";

/// Verifies the four conditions for the system at the given caps.
///
/// Item models share the parent's cap, which must reach both `union_cap`
/// and `colon_cap + 1`. Conditions are evaluated in order and the first
/// failure is reported.
pub fn check_asymptotic_uk(
    model: &ModelRef,
    system: &FilteredSystem,
    strategy: Strategy,
    colon_cap: usize,
    union_cap: usize,
    budget: &Budget,
) -> Result<AukReport> {
    if union_cap > model.cap() || colon_cap + 1 > model.cap() {
        return Err(Error::CapTooSmall(format!(
            "union cap {union_cap} and colon cap {colon_cap} need a model built through degree {}, model cap is {}",
            union_cap.max(colon_cap + 1),
            model.cap()
        )));
    }
    for w in system.items() {
        if w.field() != model.field() || w.ambient_dim() != model.num_generators() {
            return Err(Error::AmbientMismatch {
                left: model.num_generators(),
                right: w.ambient_dim(),
            });
        }
    }
    let subalgebras = system
        .items()
        .par_iter()
        .map(|w| canonical_subalgebra(model, w))
        .collect::<Result<Vec<_>>>()?;
    let uk = subalgebras
        .par_iter()
        .map(|b| check_universal_koszul(b.induced(), strategy, colon_cap, budget))
        .collect::<Result<Vec<_>>>()?;
    let items: Vec<ItemReport> = subalgebras
        .iter()
        .zip(uk)
        .map(|(b, uk)| ItemReport {
            generators: b.generating_space().dim(),
            relation_dim: b.relation_dim(),
            uk,
        })
        .collect();

    let field = model.field();
    let mut coverage = Vec::with_capacity(union_cap + 1);
    let mut gap = None;
    for d in 0..=union_cap {
        let mut union = Subspace::zero(field, model.dim(d));
        for b in &subalgebras {
            union = union.sum(&b.image_in_degree(d))?;
        }
        if gap.is_none() && !union.is_full() {
            let col = union.complement_columns()[0];
            let mut coords = vec![0u16; model.dim(d)];
            coords[col] = 1;
            gap = Some(AukFailure::UnionGap {
                degree: d,
                union_dim: union.dim(),
                target_dim: model.dim(d),
                witness: GradedElement { degree: d, coords },
            });
        }
        coverage.push(DegreeCoverage {
            degree: d,
            union_dim: union.dim(),
            target_dim: model.dim(d),
        });
    }

    let not_uk = items.iter().enumerate().find_map(|(k, it)| {
        it.uk.counterexample.as_ref().map(|ce| AukFailure::ItemNotUk {
            item: k,
            counterexample: Box::new(ce.clone()),
        })
    });
    let covering = system.items().iter().any(Subspace::is_full);
    let not_quadratic = subalgebras
        .iter()
        .enumerate()
        .find_map(|(k, b)| b.embedding_kernel().map(|witness| AukFailure::NotQuadratic { item: k, witness }));
    let verdict = if let Some(detail) = not_quadratic {
        AukVerdict::Fails {
            condition: AukCondition::I,
            detail,
        }
    } else if let Some(detail) = not_uk {
        AukVerdict::Fails {
            condition: AukCondition::Ii,
            detail,
        }
    } else if let Some((i, j)) = system.missing_certificate() {
        AukVerdict::Fails {
            condition: AukCondition::Iii,
            detail: AukFailure::MissingCertificate { i, j },
        }
    } else if let Some(detail) = gap {
        AukVerdict::Fails {
            condition: AukCondition::Iii,
            detail,
        }
    } else if !covering {
        AukVerdict::Fails {
            condition: AukCondition::Iv,
            detail: AukFailure::NotCovered {
                largest_item_dim: system.items().iter().map(Subspace::dim).max().unwrap_or(0),
                uncovered: Subspace::full(field, model.num_generators()),
            },
        }
    } else {
        AukVerdict::VerifiedUpTo(union_cap)
    };
    Ok(AukReport {
        verdict,
        colon_cap,
        union_cap,
        items,
        coverage,
        notes: vec![NOTE_I.into(), NOTE_III.into(), NOTE_IV.into()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::presentation::QuadraticPresentation;

    fn exterior(n: usize, cap: usize) -> ModelRef {
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
            cap,
            &Budget::default(),
        )
        .unwrap()
    }

    fn coordinate_lines(n: usize) -> Vec<Subspace> {
        (0..n)
            .map(|i| {
                let mut v = vec![0u16; n];
                v[i] = 1;
                Subspace::from_rows(Fp::F2, n, vec![v]).unwrap()
            })
            .collect()
    }

    #[test]
    fn sum_closure_of_coordinate_lines() {
        let a = exterior(3, 4);
        let sys = build_filtered_system(&a, &coordinate_lines(3), true, &Budget::default()).unwrap();
        assert_eq!(sys.len(), 7);
        assert!(sys.is_directed());
        assert!(sys.verify_certificates());
        assert!(sys.items().iter().any(Subspace::is_full));
    }

    #[test]
    fn saturation_is_idempotent() {
        let a = exterior(3, 4);
        let sys = build_filtered_system(&a, &coordinate_lines(3), true, &Budget::default()).unwrap();
        let again = build_filtered_system(&a, sys.items(), true, &Budget::default()).unwrap();
        assert_eq!(again.items(), sys.items());
    }

    #[test]
    fn unsaturated_pair_lacks_certificate() {
        let a = exterior(3, 4);
        let lines = coordinate_lines(3);
        let sys = build_filtered_system(&a, &lines[..2], false, &Budget::default()).unwrap();
        assert_eq!(sys.certificates(), &[Certificate { i: 0, j: 1, upper: None }]);
        assert!(!sys.is_directed());
    }

    #[test]
    fn single_item_is_directed() {
        let a = exterior(2, 4);
        let sys = build_filtered_system(&a, &[Subspace::full(Fp::F2, 2)], false, &Budget::default()).unwrap();
        assert!(sys.is_directed());
        assert_eq!(sys.inclusions(), &[(0, 0)]);
    }

    #[test]
    fn saturation_respects_budget() {
        let a = exterior(3, 4);
        let tight = Budget {
            max_system_items: 5,
            ..Budget::default()
        };
        let err = build_filtered_system(&a, &coordinate_lines(3), true, &tight).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn exterior_coordinate_system_passes() {
        let a = exterior(3, 4);
        let sys = build_filtered_system(&a, &coordinate_lines(3), true, &Budget::default()).unwrap();
        let r = check_asymptotic_uk(&a, &sys, Strategy::Exhaustive, 3, 4, &Budget::default()).unwrap();
        assert_eq!(r.verdict, AukVerdict::VerifiedUpTo(4));
        assert_eq!(r.items.len(), 7);
        assert!(r.coverage.iter().all(|c| c.union_dim == c.target_dim));
    }

    #[test]
    fn whole_space_alone_passes() {
        let a = exterior(2, 4);
        let sys = build_filtered_system(&a, &[Subspace::full(Fp::F2, 2)], false, &Budget::default()).unwrap();
        let r = check_asymptotic_uk(&a, &sys, Strategy::Exhaustive, 3, 4, &Budget::default()).unwrap();
        assert!(r.verdict.holds());
    }

    #[test]
    fn lines_without_sums_fail() {
        let a = exterior(3, 4);
        let sys = build_filtered_system(&a, &coordinate_lines(3), false, &Budget::default()).unwrap();
        let r = check_asymptotic_uk(&a, &sys, Strategy::Exhaustive, 3, 4, &Budget::default()).unwrap();
        assert!(matches!(
            r.verdict,
            AukVerdict::Fails {
                condition: AukCondition::Iii,
                detail: AukFailure::MissingCertificate { i: 0, j: 1 }
            }
        ));
    }

    #[test]
    fn chain_without_top_fails_coverage() {
        let a = exterior(3, 4);
        let lines = coordinate_lines(3);
        let plane = lines[0].sum(&lines[1]).unwrap();
        let sys = build_filtered_system(&a, &[lines[0].clone(), plane], false, &Budget::default()).unwrap();
        let r = check_asymptotic_uk(&a, &sys, Strategy::Exhaustive, 3, 4, &Budget::default()).unwrap();
        match r.verdict {
            AukVerdict::Fails {
                condition: AukCondition::Iii,
                detail: AukFailure::UnionGap { degree: 1, witness, .. },
            } => assert_eq!(witness.coords, vec![0, 0, 1]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn hidden_cubic_relation_fails_condition_i() {
        // F_2[x,y,z]/(xy + z², xz): x²y = xz² = 0, but not among x, y alone
        let n = 3;
        let t = |terms: &[(usize, usize)]| {
            let mut v = vec![0u16; n * n];
            for &(i, j) in terms {
                v[i * n + j] = 1;
            }
            v
        };
        let rel = Subspace::from_rows(
            Fp::F2,
            9,
            vec![
                t(&[(0, 1), (1, 0)]),
                t(&[(0, 2), (2, 0)]),
                t(&[(1, 2), (2, 1)]),
                t(&[(0, 1), (2, 2)]),
                t(&[(0, 2)]),
            ],
        )
        .unwrap();
        let a = GradedAlgebraModel::build_ref(
            QuadraticPresentation::with_default_labels(Fp::F2, n, rel).unwrap(),
            4,
            &Budget::default(),
        )
        .unwrap();
        let w = Subspace::from_rows(Fp::F2, 3, vec![vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let sys = build_filtered_system(&a, &[w, Subspace::full(Fp::F2, 3)], false, &Budget::default()).unwrap();
        let r = check_asymptotic_uk(&a, &sys, Strategy::Exhaustive, 3, 4, &Budget::default()).unwrap();
        match r.verdict {
            AukVerdict::Fails {
                condition: AukCondition::I,
                detail: AukFailure::NotQuadratic { item: 0, witness },
            } => assert_eq!(witness.degree, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn caps_are_checked() {
        let a = exterior(2, 3);
        let sys = build_filtered_system(&a, &[Subspace::full(Fp::F2, 2)], false, &Budget::default()).unwrap();
        assert!(check_asymptotic_uk(&a, &sys, Strategy::Exhaustive, 3, 3, &Budget::default()).is_err());
    }
}
