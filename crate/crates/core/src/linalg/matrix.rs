use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{axpy, is_zero, scale, Fp, Scalar};
use crate::linalg::Subspace;

/// Dense row-major matrix over F_p.
///
/// As a linear map a `rows x cols` matrix sends F_p^cols to F_p^rows
/// (column-vector convention).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    field: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u16>,
}

impl Matrix {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows. Entries are reduced mod p.
    pub fn from_rows(field: Fp, cols: usize, rows: Vec<Vec<u16>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::MalformedMatrix(format!("row {i} has length {}, expected {cols}", r.len())));
            }
            data.extend(r.into_iter().map(|c| c % field.p()));
        }
        Ok(Matrix {
            field,
            rows: nrows,
            cols,
            data,
        })
    }

    /// Builds a matrix from modulus-tagged entries; rejects mixed moduli.
    pub fn from_scalars(rows: &[Vec<Scalar>]) -> Result<Self> {
        let field = rows
            .iter()
            .flat_map(|r| r.first())
            .next()
            .map(|s| s.modulus())
            .ok_or_else(|| Error::MalformedMatrix("no entries to infer modulus".into()))?;
        let cols = rows[0].len();
        let mut out = Vec::with_capacity(rows.len());
        for r in rows {
            let mut row = Vec::with_capacity(r.len());
            for s in r {
                if s.modulus() != field {
                    return Err(Error::ModulusMismatch {
                        left: field.p(),
                        right: s.modulus().p(),
                    });
                }
                row.push(s.value());
            }
            out.push(row);
        }
        Matrix::from_rows(field, cols, out)
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: Fp, rows: usize, columns: &[Vec<u16>]) -> Result<Self> {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::MalformedMatrix(format!(
                    "column {j} has length {}, expected {rows}",
                    c.len()
                )));
            }
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v % field.p());
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u16 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u16) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u16] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u16> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u16>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        is_zero(&self.data)
    }

    /// `self * v` for a column vector `v` of length `cols`.
    pub fn apply(&self, v: &[u16]) -> Vec<u16> {
        assert_eq!(v.len(), self.cols, "vector length does not match matrix columns");
        let mut out = vec![0u16; self.rows];
        for (j, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if a != 0 {
                    *o = self.field.mul_add(*o, c, a);
                }
            }
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::ModulusMismatch {
                left: self.field.p(),
                right: other.field.p(),
            });
        }
        if self.cols != other.rows {
            return Err(Error::AmbientMismatch {
                left: self.cols,
                right: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                axpy(self.field, dst, a, other.row(k));
            }
        }
        Ok(out)
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::AmbientMismatch {
                left: self.cols,
                right: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn rank(&self) -> usize {
        rref(self).1
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let rows: Vec<Vec<u16>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| u16::from(i == j)));
                r
            })
            .collect();
        let (red, pivots) = echelonize(self.field, rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let data = red.iter().flat_map(|r| r[n..].iter().copied()).collect();
        Some(Matrix {
            field: self.field,
            rows: n,
            cols: n,
            data,
        })
    }
}

/// Reduced row-echelon form with zero rows removed, and its rank.
pub fn rref(m: &Matrix) -> (Matrix, usize) {
    let (rows, pivots) = echelonize(m.field, m.to_rows(), m.cols);
    let rank = pivots.len();
    let data = rows.into_iter().flatten().collect();
    (
        Matrix {
            field: m.field,
            rows: rank,
            cols: m.cols,
            data,
        },
        rank,
    )
}

/// `{ v : m v = 0 }` in canonical form.
pub fn kernel(m: &Matrix) -> Subspace {
    let (rows, pivots) = echelonize(m.field, m.to_rows(), m.cols);
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u16; m.cols];
        v[free] = 1;
        for (r, &pc) in rows.iter().zip(&pivots) {
            v[pc] = m.field.neg(r[free]);
        }
        basis.push(v);
    }
    Subspace::from_rows_unchecked(m.field, m.cols, basis)
}

/// Column space of `m` as a subspace of F_p^rows.
pub fn image(m: &Matrix) -> Subspace {
    Subspace::from_rows_unchecked(m.field, m.rows, m.transpose().to_rows())
}

/// Gauss-Jordan elimination. Returns the nonzero rows of the RREF and their
/// pivot columns.
pub(crate) fn echelonize(field: Fp, rows: Vec<Vec<u16>>, cols: usize) -> (Vec<Vec<u16>>, Vec<usize>) {
    if field.is_two() {
        echelonize_f2(rows, cols)
    } else {
        echelonize_generic(field, rows, cols)
    }
}

fn echelonize_generic(field: Fp, mut rows: Vec<Vec<u16>>, cols: usize) -> (Vec<Vec<u16>>, Vec<usize>) {
    rows.retain(|r| !is_zero(r));
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let inv = field.inv(rows[r][c]);
        scale(field, &mut rows[r], inv);
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, below) = tail.split_first_mut().unwrap();
        for other in head.iter_mut().chain(below.iter_mut()) {
            let a = other[c];
            if a != 0 {
                axpy(field, other, field.neg(a), pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

fn echelonize_f2(rows: Vec<Vec<u16>>, cols: usize) -> (Vec<Vec<u16>>, Vec<usize>) {
    let words = cols.div_ceil(64);
    let mut packed: Vec<Vec<u64>> = rows
        .iter()
        .filter(|r| !is_zero(r))
        .map(|r| {
            let mut w = vec![0u64; words];
            for (j, &v) in r.iter().enumerate() {
                if v & 1 == 1 {
                    w[j / 64] |= 1 << (j % 64);
                }
            }
            w
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == packed.len() {
            break;
        }
        let (wi, bit) = (c / 64, 1u64 << (c % 64));
        let Some(found) = (r..packed.len()).find(|&i| packed[i][wi] & bit != 0) else {
            continue;
        };
        packed.swap(r, found);
        let (head, tail) = packed.split_at_mut(r);
        let (pivot_row, below) = tail.split_first_mut().unwrap();
        for other in head.iter_mut().chain(below.iter_mut()) {
            if other[wi] & bit != 0 {
                for (o, p) in other[wi..].iter_mut().zip(&pivot_row[wi..]) {
                    *o ^= *p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    packed.truncate(r);
    let rows = packed
        .into_iter()
        .map(|w| (0..cols).map(|j| ((w[j / 64] >> (j % 64)) & 1) as u16).collect())
        .collect();
    (rows, pivots)
}
