//! Whether a quadratic `Q` mapping into `A` is captured as the subalgebra
//! generated by its degree-1 image.

use serde::{Deserialize, Serialize};

use crate::cohomology::Witness;
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::map::{tensor_square_apply, GradedMap};
use crate::model::GradedElement;
use crate::subalgebra::canonical_subalgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaptureStage {
    #[serde(rename = "injectivity_1")]
    Injectivity1,
    #[serde(rename = "injectivity_2")]
    Injectivity2,
    #[serde(rename = "image_neq_BW")]
    ImageNeqBw,
    RelationsMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaptureVerdict {
    Captured,
    Fails { stage: CaptureStage, witness: Witness },
}

impl CaptureVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, CaptureVerdict::Captured)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimComparison {
    pub degree: usize,
    pub source_dim: usize,
    pub image_dim: usize,
    pub subalgebra_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaptureReport {
    pub verdict: CaptureVerdict,
    pub cap: usize,
    /// Degree-1 image of the map.
    pub w: Subspace,
    pub source_relation_dim: usize,
    pub subalgebra_relation_dim: usize,
    pub dims: Vec<DimComparison>,
}

/// Runs the four stages in order through degree `cap`.
///
/// `pi` goes from `Q` to `A`. The first failing stage is reported; the
/// dimension table is always filled.
pub fn check_quotient_capture(pi: &GradedMap, cap: usize) -> Result<CaptureReport> {
    if cap < 2 || cap > pi.top_degree() {
        return Err(Error::CapTooSmall(format!(
            "capture cap must lie in 2..={}, got {cap}",
            pi.top_degree()
        )));
    }
    let (q, a) = (pi.source(), pi.target());
    let w = pi.image_in_degree(1);
    let b = canonical_subalgebra(a, &w)?;

    let mut dims = Vec::with_capacity(cap + 1);
    let mut image_gap = None;
    for d in 0..=cap {
        let image = pi.image_in_degree(d);
        let sub = b.image_in_degree(d);
        if image_gap.is_none() {
            let outside = image.first_outside(&sub).or_else(|| sub.first_outside(&image));
            image_gap = outside.map(|coords| GradedElement { degree: d, coords });
        }
        dims.push(DimComparison {
            degree: d,
            source_dim: q.dim(d),
            image_dim: image.dim(),
            subalgebra_dim: sub.dim(),
        });
    }

    let n = a.num_generators();
    let pushed = Subspace::from_rows_unchecked(
        a.field(),
        n * n,
        q.presentation()
            .relations()
            .basis()
            .iter()
            .map(|r| tensor_square_apply(pi.degree1_matrix(), r))
            .collect(),
    );
    let target_relations = b.relations_in_parent();
    let source_relation_dim = q.presentation().relations().dim();

    let verdict = if let Some(element) = pi.kernel_witness(1) {
        CaptureVerdict::Fails {
            stage: CaptureStage::Injectivity1,
            witness: Witness::Element { item: None, element },
        }
    } else if let Some(element) = pi.kernel_witness(2) {
        CaptureVerdict::Fails {
            stage: CaptureStage::Injectivity2,
            witness: Witness::Element { item: None, element },
        }
    } else if let Some(element) = image_gap {
        CaptureVerdict::Fails {
            stage: CaptureStage::ImageNeqBw,
            witness: Witness::Element { item: None, element },
        }
    } else if source_relation_dim != b.relation_dim() || pushed != target_relations {
        let coords = target_relations
            .first_outside(&pushed)
            .or_else(|| pushed.first_outside(&target_relations))
            .unwrap_or_else(|| vec![0; n * n]);
        CaptureVerdict::Fails {
            stage: CaptureStage::RelationsMismatch,
            witness: Witness::Tensor { coords },
        }
    } else {
        CaptureVerdict::Captured
    };
    Ok(CaptureReport {
        verdict,
        cap,
        w,
        source_relation_dim,
        subalgebra_relation_dim: b.relation_dim(),
        dims,
    })
}
