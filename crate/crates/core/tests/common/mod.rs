//! Brute-force oracles shared by integration and acceptance tests. They avoid
//! the library's linear algebra and degreewise recursion entirely.
#![allow(dead_code)]

use auk_core::{GradedAlgebraModel, GradedElement, QuadraticPresentation, Subspace};

/// Rank over F_p by plain Gaussian elimination on a copy.
pub fn rank_mod_p(rows: &[Vec<u16>], p: u16) -> usize {
    let p = p as u32;
    let mut m: Vec<Vec<u32>> = rows.iter().map(|r| r.iter().map(|&c| c as u32 % p).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let inv = |a: u32| (1..p).find(|b| a * b % p == 1).unwrap();
    let mut rank = 0;
    for c in 0..cols {
        let Some(k) = (rank..m.len()).find(|&k| m[k][c] != 0) else {
            continue;
        };
        m.swap(rank, k);
        let s = inv(m[rank][c]);
        for v in m[rank].iter_mut() {
            *v = *v * s % p;
        }
        for k in 0..m.len() {
            if k != rank && m[k][c] != 0 {
                let f = m[k][c];
                let pivot = m[rank].clone();
                for (v, &q) in m[k].iter_mut().zip(&pivot) {
                    *v = (*v + p * p - f * q % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `dim A_d` for `d = 0..=cap`, from the span of every `u ⊗ r ⊗ v` with
/// `u`, `v` basis words and `r` a relation.
pub fn hilbert_oracle(pres: &QuadraticPresentation, cap: usize) -> Vec<usize> {
    let n = pres.num_generators();
    let p = pres.field().p();
    let rels = pres.relations().basis();
    let mut dims = vec![1, n];
    for d in 2..=cap {
        let ambient = n.pow(d as u32);
        let mut rows = Vec::new();
        for left in 0..=d - 2 {
            let right = d - 2 - left;
            for u in 0..n.pow(left as u32) {
                for v in 0..n.pow(right as u32) {
                    for r in rels {
                        let mut row = vec![0u16; ambient];
                        for (k, &c) in r.iter().enumerate() {
                            if c != 0 {
                                let idx = (u * n * n + k) * n.pow(right as u32) + v;
                                row[idx] = c;
                            }
                        }
                        rows.push(row);
                    }
                }
            }
        }
        dims.push(ambient - rank_mod_p(&rows, p));
    }
    dims.truncate(cap + 1);
    dims
}

/// Every vector of `F_p^dim`.
pub fn all_vectors(p: u16, dim: usize) -> impl Iterator<Item = Vec<u16>> {
    let total = (p as usize).pow(dim as u32);
    (0..total).map(move |mut k| {
        let mut v = vec![0u16; dim];
        for slot in v.iter_mut() {
            *slot = (k % p as usize) as u16;
            k /= p as usize;
        }
        v
    })
}

/// Degree-`e` part of the two-sided ideal generated by `gens`, as rows.
pub fn ideal_rows(model: &GradedAlgebraModel, gens: &[Vec<u16>], e: usize) -> Vec<Vec<u16>> {
    let mut rows = Vec::new();
    for b in 0..model.dim(e - 1) {
        let m = model.basis_element(e - 1, b);
        for g in gens {
            let g = GradedElement {
                degree: 1,
                coords: g.clone(),
            };
            rows.push(model.multiply(&m, &g).unwrap().coords);
        }
    }
    rows
}

/// `dim (I:x)_d` by testing every element of `A_d`.
pub fn colon_dim_oracle(model: &GradedAlgebraModel, gens: &Subspace, x: &[u16], d: usize) -> usize {
    let p = model.field().p();
    let gens = gens.basis().to_vec();
    let ideal = ideal_rows(model, &gens, d + 1);
    let base = rank_mod_p(&ideal, p);
    let x = GradedElement {
        degree: 1,
        coords: x.to_vec(),
    };
    let count = all_vectors(p, model.dim(d))
        .filter(|a| {
            let ax = model
                .multiply(
                    &GradedElement {
                        degree: d,
                        coords: a.clone(),
                    },
                    &x,
                )
                .unwrap()
                .coords;
            let mut rows = ideal.clone();
            rows.push(ax);
            rank_mod_p(&rows, p) == base
        })
        .count();
    log_p(count, p)
}

/// `dim ker(W⊗W → A_2)` by multiplying out every tensor of `W⊗W`.
pub fn ww_kernel_dim_oracle(model: &GradedAlgebraModel, w: &Subspace) -> usize {
    let p = model.field().p();
    let basis = w.basis();
    let k = basis.len();
    let products: Vec<Vec<u16>> = (0..k * k)
        .map(|ab| {
            let a = GradedElement {
                degree: 1,
                coords: basis[ab / k].clone(),
            };
            let b = GradedElement {
                degree: 1,
                coords: basis[ab % k].clone(),
            };
            model.multiply(&a, &b).unwrap().coords
        })
        .collect();
    let count = all_vectors(p, k * k)
        .filter(|t| {
            (0..model.dim(2)).all(|c| {
                let s: u32 = t.iter().zip(&products).map(|(&ti, pr)| ti as u32 * pr[c] as u32).sum();
                s.is_multiple_of(p as u32)
            })
        })
        .count();
    log_p(count, p)
}

fn log_p(count: usize, p: u16) -> usize {
    let mut e = 0;
    let mut c = count;
    while c > 1 {
        assert_eq!(c % p as usize, 0);
        c /= p as usize;
        e += 1;
    }
    e
}
