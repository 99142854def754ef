//! Universal Koszulity: for every `I = A·I_1` and every `x ∈ A_1 \ I_1`,
//! the left colon ideal `I:x` must again be generated in degree 1.
//!
//! Pairs are enumerated as `(I_1, [x])` with `[x]` a projective class of
//! `A_1/I_1`; colon ideals do not change under `x ↦ λx` or `x ↦ x + i`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{is_zero, Fp};
use crate::ideal::{ColonResult, DegreeOneIdeal, Generation};
use crate::linalg::{enumerate_subspaces, kernel, random_subspace, Matrix, Subspace};
use crate::model::{GradedAlgebraModel, GradedElement};

pub const DEFAULT_SAMPLES: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Strategy {
    Exhaustive,
    Randomized { seed: u64, samples: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum UkVerdict {
    /// Every pair checked and every colon ideal vanishes above the checked range.
    #[serde(rename = "UK_Complete")]
    Complete,
    /// No failure among the checked pairs and degrees.
    #[serde(rename = "UK_UpToCap")]
    UpToCap,
    #[serde(rename = "NotUK")]
    NotUk,
}

impl UkVerdict {
    pub fn holds(self) -> bool {
        !matches!(self, UkVerdict::NotUk)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub ideal_generators: Subspace,
    pub x: GradedElement,
    pub colon: ColonResult,
}

impl Counterexample {
    pub fn witness(&self) -> Option<&GradedElement> {
        match &self.colon.generation {
            Generation::FailsAtDegree { witness, .. } => Some(witness),
            Generation::GeneratedUpTo(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UkReport {
    pub verdict: UkVerdict,
    pub checked_pairs: u64,
    pub counterexample: Option<Counterexample>,
    pub strategy: Strategy,
    pub model_cap: usize,
    pub colon_cap: usize,
    pub hilbert_dims: Vec<usize>,
    /// Smallest degree with `A_d = 0` within the model cap.
    pub nilpotent_degree: Option<usize>,
    /// Graded-commutative inputs: left ideals and left colons are two-sided.
    pub two_sided: bool,
}

/// Number of projective classes of a quotient of dimension `m`.
fn class_count(p: u16, m: usize) -> u64 {
    let p = p as u64;
    (0..m).fold(0u64, |acc, _| acc.saturating_mul(p).saturating_add(1))
}

/// Representatives of the nonzero projective classes of `F_p^m`, normalized
/// so the first nonzero entry is 1, in ascending lexicographic order.
fn projective_classes(field: Fp, m: usize) -> impl Iterator<Item = Vec<u16>> {
    let p = field.p();
    (0..m).rev().flat_map(move |lead| {
        let tail = m - lead - 1;
        let count = (p as u64).pow(tail as u32);
        (0..count).map(move |mut k| {
            let mut v = vec![0u16; m];
            v[lead] = 1;
            for slot in v[lead + 1..].iter_mut().rev() {
                *slot = (k % p as u64) as u16;
                k /= p as u64;
            }
            v
        })
    })
}

fn lift_class(ideal_generators: &Subspace, class: &[u16]) -> Vec<u16> {
    let mut x = vec![0u16; ideal_generators.ambient_dim()];
    for (&c, &v) in ideal_generators.complement_columns().iter().zip(class) {
        x[c] = v;
    }
    x
}

fn check_pair(ideal: &DegreeOneIdeal<'_>, x: Vec<u16>, colon_cap: usize) -> Result<Option<Counterexample>> {
    let x = GradedElement { degree: 1, coords: x };
    let colon = ideal.colon_up_to(&x, colon_cap)?;
    if colon.is_generated() {
        return Ok(None);
    }
    Ok(Some(Counterexample {
        ideal_generators: ideal.generators().clone(),
        x,
        colon,
    }))
}

/// First failing class for a fixed `I_1`, with its index among the classes.
fn check_ideal(model: &GradedAlgebraModel, generators: &Subspace, colon_cap: usize) -> Result<Option<(u64, Counterexample)>> {
    let ideal = DegreeOneIdeal::generate_up_to(model, generators, colon_cap + 1)?;
    for (k, class) in projective_classes(model.field(), generators.codim()).enumerate() {
        if let Some(ce) = check_pair(&ideal, lift_class(generators, &class), colon_cap)? {
            return Ok(Some((k as u64, ce)));
        }
    }
    Ok(None)
}

/// Decides universal Koszulity through colon degree `colon_cap`.
///
/// Work is spread over the current rayon pool; the first failure in
/// enumeration order is reported, so the result does not depend on
/// scheduling.
pub fn check_universal_koszul(model: &GradedAlgebraModel, strategy: Strategy, colon_cap: usize, budget: &Budget) -> Result<UkReport> {
    if colon_cap < 2 {
        return Err(Error::CapTooSmall(format!("colon cap must be at least 2, got {colon_cap}")));
    }
    if colon_cap + 1 > model.cap() {
        return Err(Error::CapTooSmall(format!(
            "colon cap {colon_cap} needs a model built through degree {}, model cap is {}",
            colon_cap + 1,
            model.cap()
        )));
    }
    let field = model.field();
    let n = model.num_generators();
    let (checked_pairs, counterexample) = match strategy {
        Strategy::Exhaustive => {
            let ideals: Vec<Subspace> = enumerate_subspaces(n, field, budget)?.filter(|s| !s.is_full()).collect();
            let first = ideals
                .par_iter()
                .enumerate()
                .map(|(i, gens)| check_ideal(model, gens, colon_cap).map(|r| r.map(|hit| (i, hit))))
                .find_first(|r| !matches!(r, Ok(None)));
            let total: u64 = ideals.iter().map(|s| class_count(field.p(), s.codim())).sum();
            match first {
                None => (total, None),
                Some(Err(e)) => return Err(e),
                Some(Ok(None)) => unreachable!(),
                Some(Ok(Some((i, (k, ce))))) => {
                    let before: u64 = ideals[..i].iter().map(|s| class_count(field.p(), s.codim())).sum();
                    (before + k + 1, Some(ce))
                }
            }
        }
        Strategy::Randomized { seed, samples } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let draws: Vec<(Subspace, Vec<u16>)> = if n == 0 {
                Vec::new()
            } else {
                (0..samples)
                    .map(|_| {
                        let rank = rng.gen_range(0..n);
                        let gens = random_subspace(field, n, rank, &mut rng);
                        let class = random_class(field, n - rank, &mut rng);
                        let x = lift_class(&gens, &class);
                        (gens, x)
                    })
                    .collect()
            };
            let first = draws
                .par_iter()
                .enumerate()
                .map(|(i, (gens, x))| {
                    let ideal = DegreeOneIdeal::generate_up_to(model, gens, colon_cap + 1)?;
                    check_pair(&ideal, x.clone(), colon_cap).map(|r| r.map(|ce| (i, ce)))
                })
                .find_first(|r| !matches!(r, Ok(None)));
            match first {
                None => (draws.len() as u64, None),
                Some(Err(e)) => return Err(e),
                Some(Ok(None)) => unreachable!(),
                Some(Ok(Some((i, ce)))) => (i as u64 + 1, Some(ce)),
            }
        }
    };
    let nilpotent_degree = model.nilpotent_degree();
    let verdict = match (&counterexample, strategy) {
        (Some(_), _) => UkVerdict::NotUk,
        (None, Strategy::Exhaustive) if nilpotent_degree.is_some_and(|d| d <= colon_cap + 1) => UkVerdict::Complete,
        (None, _) => UkVerdict::UpToCap,
    };
    Ok(UkReport {
        verdict,
        checked_pairs,
        counterexample,
        strategy,
        model_cap: model.cap(),
        colon_cap,
        hilbert_dims: model.hilbert_dims(),
        nilpotent_degree,
        two_sided: model.presentation().is_graded_commutative(),
    })
}

fn random_class<R: Rng + ?Sized>(field: Fp, m: usize, rng: &mut R) -> Vec<u16> {
    loop {
        let v: Vec<u16> = (0..m).map(|_| rng.gen_range(0..field.p())).collect();
        if let Some(lead) = v.iter().position(|&c| c != 0) {
            let inv = field.inv(v[lead]);
            return v.into_iter().map(|c| field.mul(c, inv)).collect();
        }
    }
}

/// Re-checks a claimed counterexample from scratch using only
/// [`GradedAlgebraModel::multiply`]: the witness `w` of degree `d` must
/// satisfy `w·x ∈ I_{d+1}` and `w ∉ A_{d-1}·(I:x)_1`.
pub fn verify_witness(model: &GradedAlgebraModel, ideal_generators: &Subspace, x: &GradedElement, witness: &GradedElement) -> bool {
    let field = model.field();
    let n = model.dim(1);
    let d = witness.degree;
    if ideal_generators.field() != field || ideal_generators.ambient_dim() != n {
        return false;
    }
    if x.degree != 1 || x.coords.len() != n || x.is_zero() || ideal_generators.contains_slice(&x.coords) {
        return false;
    }
    if d == 0 || d + 1 > model.cap() || witness.coords.len() != model.dim(d) || witness.is_zero() {
        return false;
    }
    let gens: Vec<GradedElement> = ideal_generators
        .basis()
        .iter()
        .map(|v| GradedElement {
            degree: 1,
            coords: v.clone(),
        })
        .collect();
    // I_e = span of basis(A_{e-1}) · generators
    let ideal_piece = |e: usize| -> Subspace {
        let mut rows = Vec::new();
        for b in 0..model.dim(e - 1) {
            let m = model.basis_element(e - 1, b);
            for g in &gens {
                rows.push(model.multiply(&m, g).expect("degree within cap").coords);
            }
        }
        Subspace::from_rows(field, model.dim(e), rows).expect("consistent lengths")
    };
    let Ok(wx) = model.multiply(witness, x) else {
        return false;
    };
    if !ideal_piece(d + 1).contains_slice(&wx.coords) {
        return false;
    }
    // (I:x)_1 = kernel of A_1 -> A_2/I_2, a ↦ [a·x]
    let i2 = ideal_piece(2);
    let comp = i2.complement_columns();
    let mut columns = Vec::with_capacity(n);
    for b in 0..n {
        let ax = model.multiply(&model.basis_element(1, b), x).expect("degree within cap");
        let mut v = ax.coords;
        i2.reduce(&mut v);
        columns.push(comp.iter().map(|&c| v[c]).collect::<Vec<u16>>());
    }
    let colon1 = kernel(&Matrix::from_columns(field, comp.len(), &columns).expect("consistent lengths"));
    let mut rows = Vec::new();
    for b in 0..model.dim(d - 1) {
        let m = model.basis_element(d - 1, b);
        for v in colon1.basis() {
            let g = GradedElement {
                degree: 1,
                coords: v.clone(),
            };
            let prod = model.multiply(&m, &g).expect("degree within cap").coords;
            if !is_zero(&prod) {
                rows.push(prod);
            }
        }
    }
    let generated = Subspace::from_rows(field, model.dim(d), rows).expect("consistent lengths");
    !generated.contains_slice(&witness.coords)
}

/// Re-checks the counterexample carried by a report, if any.
pub fn verify_report(model: &GradedAlgebraModel, report: &UkReport) -> Option<bool> {
    let ce = report.counterexample.as_ref()?;
    let w = ce.witness()?;
    Some(verify_witness(model, &ce.ideal_generators, &ce.x, w))
}
