//! Shared test oracles. Everything here recomputes results through routes
//! independent of the library code it is used to check: dense numerical
//! linear algebra for spectra and heat kernels, plain Gaussian elimination
//! for ranks, and brute-force permutation averaging.
#![allow(dead_code)]

use std::collections::HashMap;

use itertools::Itertools;
use nalgebra::DMatrix;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use slice_harmonics::expansion::SliceFunction;
use slice_harmonics::operators::{apply_permutation, IntersectionProfile};
use slice_harmonics::{rat, Rational};

/// A self-contained enumeration of the (n, k) slice for building dense
/// matrices without touching the library's domain machinery.
pub struct DenseSlice {
    pub n: usize,
    pub k: usize,
    pub sets: Vec<Vec<usize>>,
    pub index: HashMap<Vec<usize>, usize>,
}

impl DenseSlice {
    pub fn new(n: usize, k: usize) -> Self {
        let sets: Vec<Vec<usize>> = (1..=n).combinations(k).collect();
        let index = sets
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        DenseSlice { n, k, sets, index }
    }

    pub fn size(&self) -> usize {
        self.sets.len()
    }

    /// Index of the set obtained by swapping membership of i and j.
    pub fn transposed_index(&self, idx: usize, i: usize, j: usize) -> usize {
        let mut set = self.sets[idx].clone();
        let has_i = set.contains(&i);
        let has_j = set.contains(&j);
        if has_i != has_j {
            for x in set.iter_mut() {
                if *x == i {
                    *x = j;
                } else if *x == j {
                    *x = i;
                }
            }
            set.sort_unstable();
        }
        self.index[&set]
    }
}

/// Dense transposition Laplacian `I - (1/C(n,2)) sum_{i<j} P_(ij)`.
pub fn laplacian_matrix(ds: &DenseSlice) -> DMatrix<f64> {
    let size = ds.size();
    let pairs = (ds.n * (ds.n - 1) / 2) as f64;
    let mut m = DMatrix::<f64>::identity(size, size);
    for i in 1..=ds.n {
        for j in (i + 1)..=ds.n {
            for s in 0..size {
                let t = ds.transposed_index(s, i, j);
                m[(s, t)] -= 1.0 / pairs;
            }
        }
    }
    m
}

/// Dense matrix of an intersection profile: entry (S, T) is
/// `weights[|S ∩ T|]`.
pub fn profile_matrix(ds: &DenseSlice, profile: &IntersectionProfile) -> DMatrix<f64> {
    let size = ds.size();
    let w: Vec<f64> = profile
        .weights()
        .iter()
        .map(|x| x.to_f64().unwrap())
        .collect();
    DMatrix::from_fn(size, size, |s, t| {
        let overlap = ds.sets[s].iter().filter(|x| ds.sets[t].contains(x)).count();
        w[overlap]
    })
}

/// `exp(scale * M)` for symmetric `M`, via dense eigendecomposition.
pub fn symmetric_matrix_exp(m: &DMatrix<f64>, scale: f64) -> DMatrix<f64> {
    let eig = m.clone().symmetric_eigen();
    let exp_vals = eig.eigenvalues.map(|v| (scale * v).exp());
    &eig.eigenvectors * DMatrix::from_diagonal(&exp_vals) * eig.eigenvectors.transpose()
}

/// Sorted eigenvalues of a symmetric matrix.
pub fn sorted_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut vals: Vec<f64> = m.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    vals
}

/// Rank over the rationals by Gaussian elimination.
pub fn rational_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].clone();
        for c in col..ncols {
            let v = rows[rank][c].clone() / &inv;
            rows[rank][c] = v;
        }
        for r in 0..rows.len() {
            if r == rank || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in col..ncols {
                let delta = &factor * &rows[rank][c];
                rows[r][c] -= delta;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// A random function with small rational values.
pub fn random_function(n: usize, k: usize, rng: &mut impl Rng) -> SliceFunction {
    let size = slice_harmonics::expansion::slice_size(n, k);
    let values = (0..size)
        .map(|_| rat(rng.random_range(-9..=9), rng.random_range(1..=6)))
        .collect();
    SliceFunction::from_lex_values(n, k, values).unwrap()
}

/// A uniformly random Boolean function.
pub fn random_boolean_function(n: usize, k: usize, rng: &mut impl Rng) -> SliceFunction {
    let size = slice_harmonics::expansion::slice_size(n, k);
    let values = (0..size)
        .map(|_| rat(i64::from(rng.random_range(0..=1)), 1))
        .collect();
    SliceFunction::from_lex_values(n, k, values).unwrap()
}

/// All permutations of `1..=m`, padded with the identity up to `n`, encoded
/// as `perm[i-1] = pi(i)`.
pub fn permutations_of_prefix(n: usize, m: usize) -> Vec<Vec<usize>> {
    (1..=m)
        .permutations(m)
        .map(|head| {
            let mut perm = head;
            perm.extend(m + 1..=n);
            perm
        })
        .collect()
}

/// Direct `m!`-fold average of `f` over all permutations of the first `m`
/// coordinates.
pub fn average_over_prefix_direct(f: &SliceFunction, m: usize) -> SliceFunction {
    let perms = permutations_of_prefix(f.n(), m);
    let count = rat(perms.len() as i64, 1);
    let mut acc = SliceFunction::constant(f.n(), f.k(), rat(0, 1)).unwrap();
    for perm in &perms {
        acc = acc.add(&apply_permutation(f, perm).unwrap()).unwrap();
    }
    acc.scale(&(rat(1, 1) / count))
}
