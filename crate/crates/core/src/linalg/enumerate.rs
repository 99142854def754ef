use rand::seq::index::sample;
use rand::Rng;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::Fp;
use crate::linalg::Subspace;

/// Gaussian binomial coefficient `[n choose k]_p`, saturating at `u128::MAX`.
pub fn gaussian_binomial(n: usize, k: usize, p: u16) -> u128 {
    if k > n {
        return 0;
    }
    let p = p as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        let a = p.checked_pow((n - i) as u32).map(|x| x - 1);
        let b = p.checked_pow((i + 1) as u32).map(|x| x - 1);
        match (a.and_then(|a| num.checked_mul(a)), b.and_then(|b| den.checked_mul(b))) {
            (Some(x), Some(y)) => {
                num = x;
                den = y;
            }
            _ => return u128::MAX,
        }
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    num / den
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Total number of subspaces of F_p^n.
pub fn subspace_count(n: usize, p: u16) -> u128 {
    (0..=n).fold(0u128, |acc, k| acc.saturating_add(gaussian_binomial(n, k, p)))
}

/// Every subspace of F_p^n exactly once, ordered by rank, then pivot columns
/// (lexicographic), then free entries (lexicographic).
pub fn enumerate_subspaces(n: usize, field: Fp, budget: &Budget) -> Result<SubspaceIter> {
    let required = subspace_count(n, field.p());
    if required > budget.max_subspaces {
        return Err(Error::BudgetExceeded {
            what: "subspace enumeration",
            required,
            limit: budget.max_subspaces,
        });
    }
    Ok(SubspaceIter::new(n, field))
}

pub struct SubspaceIter {
    field: Fp,
    n: usize,
    rank: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    values: Vec<u16>,
    done: bool,
}

impl SubspaceIter {
    fn new(n: usize, field: Fp) -> Self {
        let mut it = SubspaceIter {
            field,
            n,
            rank: 0,
            pivots: Vec::new(),
            free: Vec::new(),
            values: Vec::new(),
            done: false,
        };
        it.reset_pattern();
        it
    }

    fn reset_pattern(&mut self) {
        self.free = free_positions(self.n, &self.pivots);
        self.values = vec![0; self.free.len()];
    }

    fn current(&self) -> Subspace {
        echelon_from_pattern(self.field, self.n, &self.pivots, &self.free, &self.values)
    }

    fn advance(&mut self) {
        let p = self.field.p();
        for v in self.values.iter_mut().rev() {
            *v += 1;
            if *v < p {
                return;
            }
            *v = 0;
        }
        if next_combination(&mut self.pivots, self.n) {
            self.reset_pattern();
            return;
        }
        self.rank += 1;
        if self.rank > self.n {
            self.done = true;
            return;
        }
        self.pivots = (0..self.rank).collect();
        self.reset_pattern();
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let s = self.current();
        self.advance();
        Some(s)
    }
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn free_positions(n: usize, pivots: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (r, &pc) in pivots.iter().enumerate() {
        for c in pc + 1..n {
            if !pivots.contains(&c) {
                out.push((r, c));
            }
        }
    }
    out
}

fn echelon_from_pattern(field: Fp, n: usize, pivots: &[usize], free: &[(usize, usize)], values: &[u16]) -> Subspace {
    let mut rows = vec![vec![0u16; n]; pivots.len()];
    for (r, &pc) in pivots.iter().enumerate() {
        rows[r][pc] = 1;
    }
    for (&(r, c), &v) in free.iter().zip(values) {
        rows[r][c] = v;
    }
    Subspace::from_echelon_unchecked(field, n, rows, pivots.to_vec())
}

/// A subspace of the given rank, drawn by choosing the pivot pattern and
/// then the free entries uniformly.
pub fn random_subspace<R: Rng + ?Sized>(field: Fp, n: usize, rank: usize, rng: &mut R) -> Subspace {
    assert!(rank <= n);
    let mut pivots = sample(rng, n, rank).into_vec();
    pivots.sort_unstable();
    let free = free_positions(n, &pivots);
    let values: Vec<u16> = free.iter().map(|_| rng.gen_range(0..field.p())).collect();
    echelon_from_pattern(field, n, &pivots, &free, &values)
}
