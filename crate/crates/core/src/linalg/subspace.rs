use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{axpy, is_zero, Fp, VectorFp};
use crate::linalg::matrix::{echelonize, kernel, Matrix};

/// A subspace of F_p^n stored by its reduced row-echelon basis.
///
/// The basis is canonical, so two subspaces of the same ambient space are
/// equal iff their stored bases are identical.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subspace {
    field: Fp,
    ambient: usize,
    basis: Vec<Vec<u16>>,
    #[serde(skip)]
    pivots: Vec<usize>,
}

#[derive(Deserialize)]
struct RawSubspace {
    field: Fp,
    ambient: usize,
    basis: Vec<Vec<u16>>,
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawSubspace::deserialize(d)?;
        Subspace::from_rows(raw.field, raw.ambient, raw.basis).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} in {}^{}) {:?}",
            self.dim(),
            self.field,
            self.ambient,
            self.basis
        )
    }
}

impl Subspace {
    pub fn zero(field: Fp, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Fp, ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Subspace {
            field,
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the given rows, canonicalized.
    pub fn from_rows(field: Fp, ambient: usize, rows: Vec<Vec<u16>>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ambient) {
            return Err(Error::AmbientMismatch {
                left: ambient,
                right: bad.len(),
            });
        }
        let rows = rows.into_iter().map(|r| r.into_iter().map(|c| c % field.p()).collect()).collect();
        Ok(Self::from_rows_unchecked(field, ambient, rows))
    }

    /// Like [`Subspace::from_rows`] but trusts that rows have the right
    /// length and reduced entries.
    pub(crate) fn from_rows_unchecked(field: Fp, ambient: usize, rows: Vec<Vec<u16>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == ambient));
        let (basis, pivots) = echelonize(field, rows, ambient);
        Subspace {
            field,
            ambient,
            basis,
            pivots,
        }
    }

    /// Builds a subspace directly from rows already in reduced echelon form.
    pub(crate) fn from_echelon_unchecked(field: Fp, ambient: usize, basis: Vec<Vec<u16>>, pivots: Vec<usize>) -> Self {
        Subspace {
            field,
            ambient,
            basis,
            pivots,
        }
    }

    pub fn span<'a>(field: Fp, ambient: usize, vectors: impl IntoIterator<Item = &'a [u16]>) -> Self {
        let rows = vectors.into_iter().map(|v| v.to_vec()).collect();
        Self::from_rows_unchecked(field, ambient, rows)
    }

    /// Row space of a matrix.
    pub fn row_space(m: &Matrix) -> Self {
        Self::from_rows_unchecked(m.field(), m.cols(), m.to_rows())
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.field
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    #[inline]
    pub fn codim(&self) -> usize {
        self.ambient - self.basis.len()
    }

    #[inline]
    pub fn basis(&self) -> &[Vec<u16>] {
        &self.basis
    }

    #[inline]
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(self.field, self.ambient, self.basis.clone()).expect("canonical rows")
    }

    /// Subtracts the projection onto the pivot coordinates, leaving a vector
    /// supported on the non-pivot columns.
    pub fn reduce(&self, v: &mut [u16]) {
        assert_eq!(v.len(), self.ambient, "vector length does not match ambient dimension");
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                axpy(self.field, v, self.field.neg(c), row);
            }
        }
    }

    pub fn contains_slice(&self, v: &[u16]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        is_zero(&w)
    }

    pub fn contains(&self, v: &VectorFp) -> Result<bool> {
        self.check_vector(v)?;
        Ok(self.contains_slice(&v.coords))
    }

    fn check_vector(&self, v: &VectorFp) -> Result<()> {
        if v.field != self.field {
            return Err(Error::ModulusMismatch {
                left: self.field.p(),
                right: v.field.p(),
            });
        }
        if v.coords.len() != self.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: v.coords.len(),
            });
        }
        Ok(())
    }

    /// Coefficients of `v` in the stored basis, or `None` if `v` is not in the span.
    pub fn coordinates(&self, v: &[u16]) -> Option<Vec<u16>> {
        let coeffs: Vec<u16> = self.pivots.iter().map(|&pc| v[pc]).collect();
        if self.contains_slice(v) {
            Some(coeffs)
        } else {
            None
        }
    }

    /// Columns not carrying a pivot; their unit vectors span a complement.
    pub fn complement_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Coordinates of the class of `v` in F_p^n / self, w.r.t. the
    /// complement-column basis.
    pub fn quotient_coords(&self, v: &[u16]) -> Vec<u16> {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        self.complement_columns().into_iter().map(|c| w[c]).collect()
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ModulusMismatch {
                left: self.field.p(),
                right: other.field.p(),
            });
        }
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let rows = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Self::from_rows_unchecked(self.field, self.ambient, rows))
    }

    /// Intersection by the Zassenhaus sum-intersection trick.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let n = self.ambient;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.field, n));
        }
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for r in &self.basis {
            let mut w = r.clone();
            w.extend_from_slice(r);
            rows.push(w);
        }
        for r in &other.basis {
            let mut w = r.clone();
            w.extend(std::iter::repeat_n(0, n));
            rows.push(w);
        }
        let (red, pivots) = echelonize(self.field, rows, 2 * n);
        let inter = red
            .into_iter()
            .zip(pivots)
            .filter(|(_, pc)| *pc >= n)
            .map(|(r, _)| r[n..].to_vec())
            .collect();
        Ok(Self::from_rows_unchecked(self.field, n, inter))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.dim() <= other.dim() && self.basis.iter().all(|r| other.contains_slice(r)))
    }

    /// First basis vector of `self` that is not in `other`.
    pub fn first_outside(&self, other: &Subspace) -> Option<Vec<u16>> {
        self.basis.iter().find(|r| !other.contains_slice(r)).cloned()
    }

    /// Image under a linear map `m: F^ambient -> F^m.rows()`.
    pub fn image_under(&self, m: &Matrix) -> Result<Subspace> {
        if m.cols() != self.ambient {
            return Err(Error::AmbientMismatch {
                left: m.cols(),
                right: self.ambient,
            });
        }
        let rows = self.basis.iter().map(|b| m.apply(b)).collect();
        Ok(Self::from_rows_unchecked(self.field, m.rows(), rows))
    }

    /// Preimage `{ v : m v ∈ self }` under `m: F^m.cols() -> F^ambient`.
    pub fn preimage_under(&self, m: &Matrix) -> Result<Subspace> {
        if m.rows() != self.ambient {
            return Err(Error::AmbientMismatch {
                left: m.rows(),
                right: self.ambient,
            });
        }
        let comp = self.complement_columns();
        let mut q = Matrix::zeros(self.field, comp.len(), m.cols());
        for j in 0..m.cols() {
            let mut col = m.column(j);
            self.reduce(&mut col);
            for (i, &c) in comp.iter().enumerate() {
                q.set(i, j, col[c]);
            }
        }
        Ok(kernel(&q))
    }
}
