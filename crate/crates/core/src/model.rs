//! Degreewise model of a quadratic algebra.
//!
//! Degree `d` lives in tensor coordinates F_p^{n^d}, word `(i_1,…,i_d)` at
//! index `Σ i_k n^{d-k}`. The two-sided ideal is built by the recursion
//! `K_d = K_{d-1}⊗V + V^{⊗(d-2)}⊗R`, and `A_d = V^{⊗d}/K_d` gets the basis of
//! words whose columns carry no pivot in the echelon form of `K_d`.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{axpy, Fp};
use crate::linalg::{Matrix, Subspace};
use crate::presentation::QuadraticPresentation;

pub type ModelRef = Arc<GradedAlgebraModel>;

/// A homogeneous element, in the monomial basis of its piece.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedElement {
    pub degree: usize,
    pub coords: Vec<u16>,
}

impl GradedElement {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

#[derive(Clone, Debug)]
struct Piece {
    dim: usize,
    ambient: usize,
    kernel: Subspace,
    basis_words: Vec<usize>,
    /// Row `w` (stride `dim`) holds the coordinates of word `w` in `A_d`.
    normal_forms: Vec<u16>,
}

#[derive(Clone, Debug)]
pub struct GradedAlgebraModel {
    presentation: QuadraticPresentation,
    cap: usize,
    pieces: Vec<Piece>,
}

fn checked_pow(n: usize, d: usize) -> Option<usize> {
    n.checked_pow(d as u32)
}

impl GradedAlgebraModel {
    /// Builds `A_0..A_cap`.
    pub fn build(presentation: QuadraticPresentation, cap: usize, budget: &Budget) -> Result<Self> {
        if cap < 2 {
            return Err(Error::CapTooSmall(format!("model cap must be at least 2, got {cap}")));
        }
        let n = presentation.num_generators();
        let top = checked_pow(n, cap).unwrap_or(usize::MAX);
        if top > budget.max_tensor_dim {
            return Err(Error::BudgetExceeded {
                what: "tensor dimension n^cap",
                required: top as u128,
                limit: budget.max_tensor_dim as u128,
            });
        }
        let field = presentation.field();
        let mut kernels: Vec<Subspace> = Vec::with_capacity(cap + 1);
        kernels.push(Subspace::zero(field, 1));
        kernels.push(Subspace::zero(field, n));
        kernels.push(presentation.relations().clone());
        for d in 3..=cap {
            let ambient = n.pow(d as u32);
            let prev = &kernels[d - 1];
            if prev.is_full() {
                kernels.push(Subspace::full(field, ambient));
                continue;
            }
            let mut rows = Vec::with_capacity(prev.dim() * n + n.pow(d as u32 - 2) * presentation.relations().dim());
            for r in prev.basis() {
                for g in 0..n {
                    let mut v = vec![0u16; ambient];
                    for (w, &c) in r.iter().enumerate() {
                        if c != 0 {
                            v[w * n + g] = c;
                        }
                    }
                    rows.push(v);
                }
            }
            let block = n * n;
            for u in 0..n.pow(d as u32 - 2) {
                for rel in presentation.relations().basis() {
                    let mut v = vec![0u16; ambient];
                    v[u * block..(u + 1) * block].copy_from_slice(rel);
                    rows.push(v);
                }
            }
            kernels.push(Subspace::from_rows_unchecked(field, ambient, rows));
        }
        let pieces = kernels.into_iter().map(|k| Self::piece(field, k)).collect();
        Ok(GradedAlgebraModel { presentation, cap, pieces })
    }

    /// Echelonizes `K_d` with columns reversed so that the surviving basis
    /// words are the lexicographically smallest ones.
    fn piece(field: Fp, kernel: Subspace) -> Piece {
        let ambient = kernel.ambient_dim();
        let flip = |c: usize| ambient - 1 - c;
        let reversed: Vec<Vec<u16>> = kernel.basis().iter().map(|r| r.iter().rev().copied().collect()).collect();
        let reversed = Subspace::from_rows_unchecked(field, ambient, reversed);
        let mut basis_words: Vec<usize> = reversed.complement_columns().into_iter().map(flip).collect();
        basis_words.sort_unstable();
        let dim = basis_words.len();
        let mut normal_forms = vec![0u16; ambient * dim];
        for (b, &w) in basis_words.iter().enumerate() {
            normal_forms[w * dim + b] = 1;
        }
        for (row, &pc) in reversed.basis().iter().zip(reversed.pivots()) {
            let word = flip(pc);
            for (b, &w) in basis_words.iter().enumerate() {
                normal_forms[word * dim + b] = field.neg(row[flip(w)]);
            }
        }
        Piece {
            dim,
            ambient,
            kernel,
            basis_words,
            normal_forms,
        }
    }

    pub fn build_ref(presentation: QuadraticPresentation, cap: usize, budget: &Budget) -> Result<ModelRef> {
        Self::build(presentation, cap, budget).map(Arc::new)
    }

    pub fn presentation(&self) -> &QuadraticPresentation {
        &self.presentation
    }

    pub fn field(&self) -> Fp {
        self.presentation.field()
    }

    pub fn num_generators(&self) -> usize {
        self.presentation.num_generators()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn dim(&self, d: usize) -> usize {
        self.pieces[d].dim
    }

    /// `dim A_0, …, dim A_cap`.
    pub fn hilbert_dims(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.dim).collect()
    }

    /// `K_d ⊆ F_p^{n^d}` with `A_d = V^{⊗d}/K_d`.
    pub fn kernel(&self, d: usize) -> &Subspace {
        &self.pieces[d].kernel
    }

    /// Tensor indices of the monomials forming the basis of `A_d`.
    pub fn basis_words(&self, d: usize) -> &[usize] {
        &self.pieces[d].basis_words
    }

    /// Smallest degree `d ≤ cap` with `A_d = 0`; all higher pieces vanish too.
    pub fn nilpotent_degree(&self) -> Option<usize> {
        self.pieces.iter().position(|p| p.dim == 0)
    }

    /// True when both models share a presentation and cap.
    pub fn same_as(&self, other: &GradedAlgebraModel) -> bool {
        std::ptr::eq(self, other) || (self.cap == other.cap && self.presentation == other.presentation)
    }

    #[inline]
    pub(crate) fn word_normal_form(&self, d: usize, w: usize) -> &[u16] {
        let p = &self.pieces[d];
        &p.normal_forms[w * p.dim..(w + 1) * p.dim]
    }

    fn check_degree(&self, d: usize) -> Result<()> {
        if d > self.cap {
            return Err(Error::DegreeOverflow { degree: d, cap: self.cap });
        }
        Ok(())
    }

    pub fn element(&self, degree: usize, coords: Vec<u16>) -> Result<GradedElement> {
        self.check_degree(degree)?;
        if coords.len() != self.dim(degree) {
            return Err(Error::AmbientMismatch {
                left: self.dim(degree),
                right: coords.len(),
            });
        }
        let p = self.field().p();
        Ok(GradedElement {
            degree,
            coords: coords.into_iter().map(|c| c % p).collect(),
        })
    }

    pub fn zero(&self, degree: usize) -> GradedElement {
        GradedElement {
            degree,
            coords: vec![0; self.dim(degree)],
        }
    }

    pub fn unit(&self) -> GradedElement {
        GradedElement {
            degree: 0,
            coords: vec![1],
        }
    }

    pub fn generator(&self, i: usize) -> GradedElement {
        self.basis_element(1, i)
    }

    pub fn basis_element(&self, degree: usize, b: usize) -> GradedElement {
        let mut coords = vec![0; self.dim(degree)];
        coords[b] = 1;
        GradedElement { degree, coords }
    }

    /// Class of a tensor `t ∈ F_p^{n^d}` in `A_d`.
    pub fn reduce_tensor(&self, d: usize, tensor: &[u16]) -> Vec<u16> {
        assert_eq!(tensor.len(), self.pieces[d].ambient);
        let field = self.field();
        let mut out = vec![0u16; self.dim(d)];
        for (w, &c) in tensor.iter().enumerate() {
            if c != 0 {
                axpy(field, &mut out, c, self.word_normal_form(d, w));
            }
        }
        out
    }

    /// Tensor representative of an element, supported on basis words.
    pub fn lift(&self, a: &GradedElement) -> Vec<u16> {
        let piece = &self.pieces[a.degree];
        let mut t = vec![0u16; piece.ambient];
        for (&w, &c) in piece.basis_words.iter().zip(&a.coords) {
            t[w] = c;
        }
        t
    }

    /// Product in `A`: the class of `lift(a) ⊗ lift(b)`.
    pub fn multiply(&self, a: &GradedElement, b: &GradedElement) -> Result<GradedElement> {
        let d = a.degree + b.degree;
        self.check_degree(d)?;
        let field = self.field();
        let n = self.num_generators();
        let shift = n.pow(b.degree as u32);
        let left_words = self.basis_words(a.degree);
        let right_words = self.basis_words(b.degree);
        let mut out = vec![0u16; self.dim(d)];
        for (&wa, &ca) in left_words.iter().zip(&a.coords) {
            if ca == 0 {
                continue;
            }
            for (&wb, &cb) in right_words.iter().zip(&b.coords) {
                if cb == 0 {
                    continue;
                }
                axpy(field, &mut out, field.mul(ca, cb), self.word_normal_form(d, wa * shift + wb));
            }
        }
        Ok(GradedElement { degree: d, coords: out })
    }

    /// Matrix of `a ↦ a·x` from `A_d` to `A_{d+1}`, for `x ∈ A_1` given by coordinates.
    pub fn right_mult_matrix(&self, d: usize, x: &[u16]) -> Matrix {
        let field = self.field();
        let n = self.num_generators();
        let mut columns = Vec::with_capacity(self.dim(d));
        for &w in self.basis_words(d) {
            let mut col = vec![0u16; self.dim(d + 1)];
            for (g, &c) in x.iter().enumerate() {
                axpy(field, &mut col, c, self.word_normal_form(d + 1, w * n + g));
            }
            columns.push(col);
        }
        Matrix::from_columns(field, self.dim(d + 1), &columns).expect("consistent dimensions")
    }

    /// Matrix of `a ↦ x·a` from `A_d` to `A_{d+1}`.
    pub fn left_mult_matrix(&self, d: usize, x: &[u16]) -> Matrix {
        let field = self.field();
        let shift = self.num_generators().pow(d as u32);
        let mut columns = Vec::with_capacity(self.dim(d));
        for &w in self.basis_words(d) {
            let mut col = vec![0u16; self.dim(d + 1)];
            for (g, &c) in x.iter().enumerate() {
                axpy(field, &mut col, c, self.word_normal_form(d + 1, g * shift + w));
            }
            columns.push(col);
        }
        Matrix::from_columns(field, self.dim(d + 1), &columns).expect("consistent dimensions")
    }

    /// Human-readable monomial for basis element `b` of `A_d`.
    pub fn monomial_label(&self, d: usize, b: usize) -> String {
        if d == 0 {
            return "1".into();
        }
        let n = self.num_generators();
        let mut w = self.basis_words(d)[b];
        let mut letters = vec![0usize; d];
        for k in (0..d).rev() {
            letters[k] = w % n;
            w /= n;
        }
        let labels = self.presentation.labels();
        letters.iter().map(|&i| labels[i].as_str()).collect::<Vec<_>>().join("*")
    }

    pub fn format_element(&self, a: &GradedElement) -> String {
        let mut out = String::new();
        for (b, &c) in a.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push_str(" + ");
            }
            if c != 1 {
                let _ = write!(out, "{c} ");
            }
            out.push_str(&self.monomial_label(a.degree, b));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}
