//! Local-global descent at the level of algebras: each finite-dimensional
//! `W ⊆ A_1` comes with local models and maps `λ_v : A → L_v`.
//!
//! The product of the local algebras is never formed; injectivity into it
//! is injectivity of the stacked maps, i.e. a trivial joint kernel.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::cohomology::{Stage, Witness};
use crate::error::{Error, Result};
use crate::filtered::{build_filtered_system, check_asymptotic_uk, AukCondition, AukReport, AukVerdict};
use crate::koszul::{check_universal_koszul, Strategy, UkReport};
use crate::linalg::{kernel, Matrix, Subspace};
use crate::map::GradedMap;
use crate::model::{GradedElement, ModelRef};
use crate::subalgebra::{canonical_subalgebra, CanonicalSubalgebra};

#[derive(Clone, Debug)]
pub struct LocalMap {
    pub name: String,
    pub map: GradedMap,
}

#[derive(Clone, Debug)]
pub struct LocalGlobalDatum {
    pub name: String,
    pub w: Subspace,
    pub locals: Vec<LocalMap>,
    /// A presentation the user claims is isomorphic to `⟨W⟩`.
    pub external: Option<ModelRef>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumReport {
    pub name: String,
    pub w_dim: usize,
    pub passed: bool,
    pub stages: Vec<Stage>,
    pub uk: UkReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub external_uk: Option<UkReport>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Gap {
    /// `W_i ⊆ W_j` but `⟨W_i⟩ ⊄ ⟨W_j⟩` in some degree.
    NotContained { i: usize, j: usize },
    /// No datum contains `W_i + W_j`.
    NoUpperBound { i: usize, j: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum LocalGlobalVerdict {
    AukConcluded { cap: usize },
    DatumFails { datum: usize, stage: String },
    CompatibilityGap { gap: Gap },
    AukFails { condition: AukCondition },
}

impl LocalGlobalVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, LocalGlobalVerdict::AukConcluded { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalGlobalReport {
    pub verdict: LocalGlobalVerdict,
    pub cap: usize,
    pub data: Vec<DatumReport>,
    pub gaps: Vec<Gap>,
    pub aggregate: Option<AukReport>,
}

/// Kernel of `(λ_v)_v` on `A_d`, from the stacked matrices.
pub fn joint_kernel(global: &ModelRef, locals: &[LocalMap], d: usize) -> Result<Subspace> {
    let field = global.field();
    let mut stacked = Matrix::zeros(field, 0, global.dim(d));
    for l in locals {
        stacked = stacked.vstack(l.map.piece(d))?;
    }
    Ok(kernel(&stacked))
}

fn joint_injectivity(global: &ModelRef, datum: &LocalGlobalDatum, b: &CanonicalSubalgebra, cap: usize) -> Result<Stage> {
    for d in 0..=cap {
        let killed = joint_kernel(global, &datum.locals, d)?.intersect(&b.image_in_degree(d))?;
        if let Some(coords) = killed.basis().first() {
            let element = GradedElement {
                degree: d,
                coords: coords.clone(),
            };
            return Ok(Stage::fail(
                "joint_injectivity",
                Some(d),
                Some(Witness::Element { item: None, element }),
            ));
        }
    }
    Ok(Stage::pass("joint_injectivity"))
}

fn check_datum(
    global: &ModelRef,
    datum: &LocalGlobalDatum,
    cap: usize,
    strategy: Strategy,
    colon_cap: usize,
    budget: &Budget,
) -> Result<(DatumReport, CanonicalSubalgebra)> {
    let b = canonical_subalgebra(global, &datum.w)?;
    let mut stages = vec![joint_injectivity(global, datum, &b, cap)?];
    stages.push(match b.embedding_kernel() {
        None => Stage::pass("quadratic_identification"),
        Some(element) => Stage::fail(
            "quadratic_identification",
            Some(element.degree),
            Some(Witness::Element { item: None, element }),
        ),
    });
    let uk = check_universal_koszul(b.induced(), strategy, colon_cap, budget)?;
    stages.push(match uk.counterexample.as_ref().and_then(|ce| ce.witness()) {
        None => Stage::pass("universally_koszul"),
        Some(w) => Stage::fail(
            "universally_koszul",
            Some(w.degree),
            Some(Witness::Element {
                item: None,
                element: w.clone(),
            }),
        ),
    });
    let mut external_uk = None;
    if let Some(ext) = &datum.external {
        // invariants only: an explicit isomorphism is not searched for
        let top = cap.min(ext.cap());
        let same_shape = ext.num_generators() == datum.w.dim()
            && ext.presentation().relations().dim() == b.relation_dim()
            && (0..=top).all(|d| ext.dim(d) == b.image_in_degree(d).dim());
        let report = check_universal_koszul(ext, strategy, colon_cap, budget)?;
        stages.push(if same_shape && report.verdict.holds() {
            Stage::pass("external_target")
        } else {
            Stage::fail("external_target", None, None)
        });
        external_uk = Some(report);
    }
    let passed = stages.iter().all(|s| s.passed);
    Ok((
        DatumReport {
            name: datum.name.clone(),
            w_dim: datum.w.dim(),
            passed,
            stages,
            uk,
            external_uk,
        },
        b,
    ))
}

/// Per-datum stages, then compatibility across data, then the asymptotic
/// conclusion for the family of `W`s.
pub fn check_local_global(
    global: &ModelRef,
    data: &[LocalGlobalDatum],
    strategy: Strategy,
    colon_cap: usize,
    union_cap: usize,
    budget: &Budget,
) -> Result<LocalGlobalReport> {
    let mut cap = global.cap();
    for (k, datum) in data.iter().enumerate() {
        if datum.locals.is_empty() {
            return Err(Error::MalformedSystem(format!("datum {k} `{}` has no local maps", datum.name)));
        }
        for l in &datum.locals {
            if !l.map.source().same_as(global) {
                return Err(Error::MalformedSystem(format!(
                    "local map `{}` of datum {k} does not start at the global algebra",
                    l.name
                )));
            }
            cap = cap.min(l.map.top_degree());
        }
    }
    if cap < 2 {
        return Err(Error::CapTooSmall(format!("local maps are only computed through degree {cap}")));
    }
    let checked = data
        .par_iter()
        .map(|datum| check_datum(global, datum, cap, strategy, colon_cap, budget))
        .collect::<Result<Vec<_>>>()?;
    let (reports, subalgebras): (Vec<DatumReport>, Vec<CanonicalSubalgebra>) = checked.into_iter().unzip();

    let m = data.len();
    let mut gaps = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if i != j && data[i].w.is_subspace_of(&data[j].w)? && !subalgebras[i].is_contained_in(&subalgebras[j]) {
                gaps.push(Gap::NotContained { i, j });
            }
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            let s = data[i].w.sum(&data[j].w)?;
            if !data.iter().any(|d| s.is_subspace_of(&d.w).unwrap_or(false)) {
                gaps.push(Gap::NoUpperBound { i, j });
            }
        }
    }

    let failing = reports.iter().enumerate().find(|(_, r)| !r.passed);
    let (verdict, aggregate) = if let Some((k, r)) = failing {
        let stage = r.stages.iter().find(|s| !s.passed).expect("a stage failed").name.clone();
        (LocalGlobalVerdict::DatumFails { datum: k, stage }, None)
    } else if let Some(&gap) = gaps.first() {
        (LocalGlobalVerdict::CompatibilityGap { gap }, None)
    } else {
        let spaces: Vec<Subspace> = data.iter().map(|d| d.w.clone()).collect();
        let system = build_filtered_system(global, &spaces, false, budget)?;
        let auk = check_asymptotic_uk(global, &system, strategy, colon_cap, union_cap, budget)?;
        let verdict = match &auk.verdict {
            AukVerdict::VerifiedUpTo(c) => LocalGlobalVerdict::AukConcluded { cap: *c },
            AukVerdict::Fails { condition, .. } => LocalGlobalVerdict::AukFails { condition: *condition },
        };
        (verdict, Some(auk))
    };
    Ok(LocalGlobalReport {
        verdict,
        cap,
        data: reports,
        gaps,
        aggregate,
    })
}
