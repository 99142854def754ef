//! Degree-1-generated left ideals and left colon ideals.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::is_zero;
use crate::linalg::Subspace;
use crate::model::{GradedAlgebraModel, GradedElement};

/// The left ideal `I = A·I_1`, computed degreewise up to the model cap.
#[derive(Clone, Debug)]
pub struct DegreeOneIdeal<'a> {
    model: &'a GradedAlgebraModel,
    components: Vec<Subspace>,
}

impl<'a> DegreeOneIdeal<'a> {
    /// `I_d = span(A_{d-1}·I_1)` for every `d ≤ cap`, with `I_0 = 0`.
    pub fn generate(model: &'a GradedAlgebraModel, generators: &Subspace) -> Result<Self> {
        Self::generate_up_to(model, generators, model.cap())
    }

    pub fn generate_up_to(model: &'a GradedAlgebraModel, generators: &Subspace, top: usize) -> Result<Self> {
        let field = model.field();
        if generators.field() != field {
            return Err(Error::ModulusMismatch {
                left: field.p(),
                right: generators.field().p(),
            });
        }
        if generators.ambient_dim() != model.dim(1) {
            return Err(Error::AmbientMismatch {
                left: model.dim(1),
                right: generators.ambient_dim(),
            });
        }
        let top = top.min(model.cap());
        let mut components = vec![Subspace::zero(field, 1), generators.clone()];
        for d in 2..=top {
            let mut rows = Vec::new();
            for v in generators.basis() {
                let m = model.right_mult_matrix(d - 1, v);
                for j in 0..m.cols() {
                    let c = m.column(j);
                    if !is_zero(&c) {
                        rows.push(c);
                    }
                }
            }
            components.push(Subspace::from_rows_unchecked(field, model.dim(d), rows));
        }
        components.truncate(top + 1);
        Ok(DegreeOneIdeal { model, components })
    }

    pub fn model(&self) -> &'a GradedAlgebraModel {
        self.model
    }

    pub fn generators(&self) -> &Subspace {
        &self.components[1]
    }

    pub fn component(&self, d: usize) -> &Subspace {
        &self.components[d]
    }

    pub fn components(&self) -> &[Subspace] {
        &self.components
    }

    /// Highest computed degree.
    pub fn top(&self) -> usize {
        self.components.len() - 1
    }

    /// The left colon ideal `I : x` through degree `cap - 1`.
    pub fn colon(&self, x: &GradedElement) -> Result<ColonResult> {
        self.colon_up_to(x, self.top().saturating_sub(1))
    }

    /// `(I:x)_d` for `d ≤ top`, plus the comparison against `A·(I:x)_1`.
    pub fn colon_up_to(&self, x: &GradedElement, top: usize) -> Result<ColonResult> {
        let model = self.model;
        if x.degree != 1 {
            return Err(Error::InvalidColon(format!("x must have degree 1, got {}", x.degree)));
        }
        if x.coords.len() != model.dim(1) {
            return Err(Error::AmbientMismatch {
                left: model.dim(1),
                right: x.coords.len(),
            });
        }
        if x.is_zero() {
            return Err(Error::InvalidColon("x is zero".into()));
        }
        if self.generators().contains_slice(&x.coords) {
            return Err(Error::InvalidColon("x lies in I_1".into()));
        }
        if top + 1 > self.top() {
            return Err(Error::CapTooSmall(format!(
                "colon through degree {top} needs I through degree {}, have {}",
                top + 1,
                self.top()
            )));
        }
        let mut components = Vec::with_capacity(top + 1);
        for d in 0..=top {
            let mult = model.right_mult_matrix(d, &x.coords);
            components.push(self.components[d + 1].preimage_under(&mult)?);
        }
        let generated = if top >= 1 {
            DegreeOneIdeal::generate_up_to(model, &components[1], top)?.components
        } else {
            components.clone()
        };
        let mut generation = Generation::GeneratedUpTo(top);
        for d in 2..=top {
            if let Some(w) = components[d].first_outside(&generated[d]) {
                generation = Generation::FailsAtDegree {
                    degree: d,
                    witness: GradedElement { degree: d, coords: w },
                };
                break;
            }
        }
        Ok(ColonResult { components, generation })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Generation {
    /// `(I:x)_d = (A·(I:x)_1)_d` for every checked degree up to the bound.
    GeneratedUpTo(usize),
    /// First degree where `(I:x)_d` exceeds the part generated in degree 1.
    FailsAtDegree { degree: usize, witness: GradedElement },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColonResult {
    /// `(I:x)_d` for `d = 0..=top`.
    pub components: Vec<Subspace>,
    pub generation: Generation,
}

impl ColonResult {
    pub fn is_generated(&self) -> bool {
        matches!(self.generation, Generation::GeneratedUpTo(_))
    }

    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(Subspace::dim).collect()
    }
}

/// Free-function form of [`DegreeOneIdeal::generate`].
pub fn ideal_from_degree_one<'a>(model: &'a GradedAlgebraModel, generators: &Subspace) -> Result<DegreeOneIdeal<'a>> {
    DegreeOneIdeal::generate(model, generators)
}

/// Free-function form of [`DegreeOneIdeal::colon`].
pub fn colon(model: &GradedAlgebraModel, ideal: &DegreeOneIdeal<'_>, x: &GradedElement) -> Result<ColonResult> {
    if !ideal.model().same_as(model) {
        return Err(Error::InvalidColon("ideal belongs to a different model".into()));
    }
    ideal.colon(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::field::Fp;
    use crate::presentation::{polynomial_presentation, QuadraticPresentation};

    fn exterior2() -> GradedAlgebraModel {
        let rel = Subspace::from_rows(Fp::F2, 4, vec![vec![1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 1, 1, 0]]).unwrap();
        let pres = QuadraticPresentation::with_default_labels(Fp::F2, 2, rel).unwrap();
        GradedAlgebraModel::build(pres, 4, &Budget::default()).unwrap()
    }

    fn poly2() -> GradedAlgebraModel {
        GradedAlgebraModel::build(polynomial_presentation(2, Fp::F2), 4, &Budget::default()).unwrap()
    }

    fn line(v: Vec<u16>) -> Subspace {
        let n = v.len();
        Subspace::from_rows(Fp::F2, n, vec![v]).unwrap()
    }

    #[test]
    fn zero_ideal() {
        let m = exterior2();
        let i = ideal_from_degree_one(&m, &Subspace::zero(Fp::F2, 2)).unwrap();
        assert!(i.components().iter().all(Subspace::is_zero));
    }

    #[test]
    fn exterior_line_fills_top_degree() {
        let m = exterior2();
        let i = ideal_from_degree_one(&m, &line(vec![1, 0])).unwrap();
        assert!(i.component(2).is_full());
    }

    #[test]
    fn polynomial_line_ideal() {
        let m = poly2();
        let i = ideal_from_degree_one(&m, &line(vec![1, 0])).unwrap();
        assert_eq!(i.component(2).dim(), 2);
        // x^2 and xy, not y^2
        let y = m.generator(1);
        let y2 = m.multiply(&y, &y).unwrap();
        assert!(!i.component(2).contains_slice(&y2.coords));
    }

    #[test]
    fn exterior_annihilator_of_generator() {
        let m = exterior2();
        let zero = ideal_from_degree_one(&m, &Subspace::zero(Fp::F2, 2)).unwrap();
        let c = zero.colon(&m.generator(0)).unwrap();
        assert_eq!(c.components[1], line(vec![1, 0]));
        assert!(c.components[2].is_full());
        assert!(c.is_generated());
    }

    #[test]
    fn polynomial_colon_is_prime_ideal() {
        let m = poly2();
        let i = ideal_from_degree_one(&m, &line(vec![1, 0])).unwrap();
        let c = i.colon(&m.generator(1)).unwrap();
        for d in 1..=3 {
            assert_eq!(&c.components[d], i.component(d), "degree {d}");
        }
        assert!(c.is_generated());

        let zero = ideal_from_degree_one(&m, &Subspace::zero(Fp::F2, 2)).unwrap();
        let c = zero.colon(&m.generator(0)).unwrap();
        assert!(c.components.iter().all(Subspace::is_zero));
        assert!(c.is_generated());
    }

    #[test]
    fn colon_rejects_bad_x() {
        let m = exterior2();
        let i = ideal_from_degree_one(&m, &line(vec![1, 0])).unwrap();
        assert!(matches!(i.colon(&m.generator(0)), Err(Error::InvalidColon(_))));
        assert!(matches!(i.colon(&m.zero(1)), Err(Error::InvalidColon(_))));
        let x2 = m.multiply(&m.generator(0), &m.generator(1)).unwrap();
        assert!(matches!(i.colon(&x2), Err(Error::InvalidColon(_))));
    }
}
