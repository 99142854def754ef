use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::axpy;
use crate::linalg::{image, kernel, Matrix, Subspace};
use crate::model::{GradedAlgebraModel, GradedElement, ModelRef};

/// Algebra map determined by its degree-1 matrix (`n_target x n_source`).
///
/// Construction verifies that the relations of the source land in the
/// relations of the target, so the map descends to every piece.
#[derive(Clone, Debug)]
pub struct GradedMap {
    source: ModelRef,
    target: ModelRef,
    degree1: Matrix,
    /// `pieces[d]` is the induced `dim target A_d x dim source A_d` matrix.
    pieces: Vec<Matrix>,
}

/// Image of `Σ c_ij x_i⊗x_j` under `m ⊗ m`.
pub(crate) fn tensor_square_apply(m: &Matrix, t: &[u16]) -> Vec<u16> {
    let (ns, nt) = (m.cols(), m.rows());
    let field = m.field();
    let mut out = vec![0u16; nt * nt];
    let cols: Vec<Vec<u16>> = (0..ns).map(|j| m.column(j)).collect();
    for i in 0..ns {
        for j in 0..ns {
            let c = t[i * ns + j];
            if c == 0 {
                continue;
            }
            for (a, &ca) in cols[i].iter().enumerate() {
                if ca == 0 {
                    continue;
                }
                axpy(field, &mut out[a * nt..(a + 1) * nt], field.mul(c, ca), &cols[j]);
            }
        }
    }
    out
}

/// Kronecker product `u ⊗ v` in tensor coordinates.
pub(crate) fn kron(field: crate::field::Fp, u: &[u16], v: &[u16]) -> Vec<u16> {
    let mut out = vec![0u16; u.len() * v.len()];
    for (a, &ca) in u.iter().enumerate() {
        if ca != 0 {
            axpy(field, &mut out[a * v.len()..(a + 1) * v.len()], ca, v);
        }
    }
    out
}

impl GradedMap {
    pub fn new(source: ModelRef, target: ModelRef, degree1: Matrix) -> Result<Self> {
        let (ns, nt) = (source.num_generators(), target.num_generators());
        if source.field() != target.field() || degree1.field() != source.field() {
            return Err(Error::ModulusMismatch {
                left: source.field().p(),
                right: target.field().p(),
            });
        }
        if degree1.rows() != nt || degree1.cols() != ns {
            return Err(Error::MalformedMatrix(format!(
                "degree-1 matrix is {}x{}, expected {nt}x{ns}",
                degree1.rows(),
                degree1.cols()
            )));
        }
        let target_rel = target.presentation().relations();
        for rel in source.presentation().relations().basis() {
            let img = tensor_square_apply(&degree1, rel);
            if !target_rel.contains_slice(&img) {
                return Err(Error::RelationViolation(format!(
                    "relation {rel:?} of the source maps outside the target relations"
                )));
            }
        }
        let top = source.cap().min(target.cap());
        let field = source.field();
        let columns_t: Vec<Vec<u16>> = (0..ns).map(|j| degree1.column(j)).collect();
        let mut pieces = Vec::with_capacity(top + 1);
        for d in 0..=top {
            let mut cols = Vec::with_capacity(source.dim(d));
            for &w in source.basis_words(d) {
                // expand the word letter by letter
                let mut letters = vec![0usize; d];
                let mut rest = w;
                for k in (0..d).rev() {
                    letters[k] = rest % ns.max(1);
                    rest /= ns.max(1);
                }
                let mut tensor = vec![1u16];
                for &l in &letters {
                    tensor = kron(field, &tensor, &columns_t[l]);
                }
                cols.push(target.reduce_tensor(d, &tensor));
            }
            pieces.push(Matrix::from_columns(field, target.dim(d), &cols)?);
        }
        Ok(GradedMap {
            source,
            target,
            degree1,
            pieces,
        })
    }

    pub fn identity(model: &ModelRef) -> Self {
        let n = model.num_generators();
        GradedMap::new(model.clone(), model.clone(), Matrix::identity(model.field(), n)).expect("identity respects relations")
    }

    pub fn source(&self) -> &ModelRef {
        &self.source
    }

    pub fn target(&self) -> &ModelRef {
        &self.target
    }

    pub fn degree1_matrix(&self) -> &Matrix {
        &self.degree1
    }

    /// Highest degree the map is computed in.
    pub fn top_degree(&self) -> usize {
        self.pieces.len() - 1
    }

    pub fn piece(&self, d: usize) -> &Matrix {
        &self.pieces[d]
    }

    pub fn apply(&self, a: &GradedElement) -> Result<GradedElement> {
        if a.degree > self.top_degree() {
            return Err(Error::DegreeOverflow {
                degree: a.degree,
                cap: self.top_degree(),
            });
        }
        if a.coords.len() != self.source.dim(a.degree) {
            return Err(Error::AmbientMismatch {
                left: self.source.dim(a.degree),
                right: a.coords.len(),
            });
        }
        Ok(GradedElement {
            degree: a.degree,
            coords: self.pieces[a.degree].apply(&a.coords),
        })
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GradedMap) -> Result<GradedMap> {
        if !self.target.same_as(&other.source) {
            return Err(Error::MalformedSystem("composing maps with mismatched models".into()));
        }
        let m = other.degree1.mul(&self.degree1)?;
        GradedMap::new(self.source.clone(), other.target.clone(), m)
    }

    /// Kernel of the map on `A_d`.
    pub fn kernel_in_degree(&self, d: usize) -> Subspace {
        kernel(&self.pieces[d])
    }

    /// Image of `A_d` in the target piece.
    pub fn image_in_degree(&self, d: usize) -> Subspace {
        image(&self.pieces[d])
    }

    /// A nonzero element of the kernel in degree `d`, if any.
    pub fn kernel_witness(&self, d: usize) -> Option<GradedElement> {
        self.kernel_in_degree(d).basis().first().map(|v| GradedElement {
            degree: d,
            coords: v.clone(),
        })
    }
}

/// Shorthand to build and wrap a model-to-model map.
pub fn graded_map(source: &Arc<GradedAlgebraModel>, target: &Arc<GradedAlgebraModel>, degree1: Matrix) -> Result<GradedMap> {
    GradedMap::new(source.clone(), target.clone(), degree1)
}
