//! The transposition action on slice functions and everything built from
//! it: pair and total influences, the eigenvalue formulas `lambda_m` and
//! `tau_m`, the adjacent-transposition rewrite on expansions, the Laplacian
//! and its heat semigroup, and intersection-profile (Bose–Mesner) matrices.
//!
//! Every operation except [`noise`] is exact. The basis elements `chi_B`
//! are simultaneous eigenvectors of all transposition-sum operators and of
//! every intersection-profile matrix, which is what the formulas here
//! exploit.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{One, ToPrimitive, Zero};

use crate::combinatorics::{c_coefficient, TopSet};
use crate::error::{Error, Result};
use crate::expansion::{chi_table, domain, SliceDomain, SliceFunction, YoungExpansion};
use crate::measures::{chi_d_norm_sq, ExchangeableMeasure};
use crate::Rational;

/// A matrix on the slice whose `(S, T)` entry depends only on `|S ∩ T|`:
/// `weights[j]` is the entry when the intersection has size `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionProfile {
    n: usize,
    k: usize,
    weights: Vec<Rational>,
}

impl IntersectionProfile {
    pub fn new(n: usize, k: usize, weights: Vec<Rational>) -> Result<Self> {
        if k < 1 || 2 * k > n {
            return Err(Error::invalid(format!(
                "profile needs 1 <= k <= n/2, got n={n} k={k}"
            )));
        }
        if weights.len() != k + 1 {
            return Err(Error::invalid(format!(
                "profile needs k+1 = {} weights, got {}",
                k + 1,
                weights.len()
            )));
        }
        Ok(IntersectionProfile { n, k, weights })
    }

    /// Adjacency of the Johnson graph: intersection size `k - 1`.
    pub fn johnson(n: usize, k: usize) -> Result<Self> {
        let mut weights = vec![Rational::zero(); k + 1];
        weights[k - 1] = Rational::one();
        IntersectionProfile::new(n, k, weights)
    }

    /// Adjacency of the Kneser graph: disjoint sets.
    pub fn kneser(n: usize, k: usize) -> Result<Self> {
        let mut weights = vec![Rational::zero(); k + 1];
        weights[0] = Rational::one();
        IntersectionProfile::new(n, k, weights)
    }

    /// The identity matrix as a profile.
    pub fn identity(n: usize, k: usize) -> Result<Self> {
        let mut weights = vec![Rational::zero(); k + 1];
        weights[k] = Rational::one();
        IntersectionProfile::new(n, k, weights)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }
}

/// Young expansion with floating-point coefficients, the image of the
/// noise operator (exact rationals do not survive `exp`).
#[derive(Debug, Clone, PartialEq)]
pub struct RealExpansion {
    n: usize,
    k: usize,
    coefficients: BTreeMap<TopSet, f64>,
}

impl RealExpansion {
    pub fn from_expansion(e: &YoungExpansion) -> Self {
        RealExpansion {
            n: e.n(),
            k: e.k(),
            coefficients: e
                .coefficients()
                .iter()
                .map(|(b, c)| (b.clone(), c.to_f64().expect("rational fits f64")))
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coefficients(&self) -> &BTreeMap<TopSet, f64> {
        &self.coefficients
    }

    pub fn coefficient(&self, b: &TopSet) -> f64 {
        self.coefficients.get(b).copied().unwrap_or(0.0)
    }

    /// Further smoothing: damps each coefficient by the heat kernel for an
    /// additional time `t`.
    pub fn noise(&self, t: f64) -> Result<RealExpansion> {
        if t.is_nan() || t < 0.0 {
            return Err(Error::invalid(format!("noise time must be >= 0, got {t}")));
        }
        let n = self.n;
        Ok(RealExpansion {
            n,
            k: self.k,
            coefficients: self
                .coefficients
                .iter()
                .map(|(b, c)| {
                    (b.clone(), c * (-t * laplacian_rate_f64(b.len(), n)).exp())
                })
                .collect(),
        })
    }

    /// Point-wise values on the slice, in domain order.
    pub fn values(&self) -> Vec<f64> {
        let dom = domain(self.n, self.k).expect("valid slice");
        let mut out = vec![0.0; dom.size()];
        for (b, coeff) in &self.coefficients {
            let table = chi_table(&dom, b);
            for (v, c) in out.iter_mut().zip(table.iter()) {
                if !c.is_zero() {
                    *v += coeff * c.to_f64().expect("chi value fits f64");
                }
            }
        }
        out
    }
}

/// `f^{(i j)}`: the function `S -> f(S with membership of i and j swapped)`.
/// An involution; `i` and `j` must be distinct indices in `[n]`.
pub fn apply_transposition(f: &SliceFunction, i: usize, j: usize) -> Result<SliceFunction> {
    let n = f.n();
    if i == j {
        return Err(Error::invalid("transposition needs two distinct indices"));
    }
    if i < 1 || i > n || j < 1 || j > n {
        return Err(Error::invalid(format!(
            "transposition ({i} {j}) out of range 1..={n}"
        )));
    }
    let dom = f.domain().clone();
    let values = permuted_values(f, |mask| swap_bits(mask, i, j), &dom);
    SliceFunction::from_lex_values(n, f.k(), values)
}

/// `f^pi` for an arbitrary permutation: `S -> f(pi(S))`. `perm` maps old
/// labels to new labels, 1-based (`perm[i-1]` is the image of `i`).
pub fn apply_permutation(f: &SliceFunction, perm: &[usize]) -> Result<SliceFunction> {
    let n = f.n();
    if perm.len() != n {
        return Err(Error::invalid(format!(
            "permutation must list all of 1..={n}"
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p < 1 || p > n || seen[p - 1] {
            return Err(Error::invalid("not a permutation of 1..=n"));
        }
        seen[p - 1] = true;
    }
    let dom = f.domain().clone();
    let values = permuted_values(
        f,
        |mask| {
            let mut out = 0u64;
            for i in 1..=n {
                if mask & (1 << (i - 1)) != 0 {
                    out |= 1 << (perm[i - 1] - 1);
                }
            }
            out
        },
        &dom,
    );
    SliceFunction::from_lex_values(n, f.k(), values)
}

fn permuted_values(
    f: &SliceFunction,
    image_mask: impl Fn(u64) -> u64,
    dom: &Arc<SliceDomain>,
) -> Vec<Rational> {
    (0..dom.size())
        .map(|idx| {
            let image = image_mask(dom.mask_at(idx));
            let at = dom.index_of_mask(image).expect("permutation preserves weight");
            f.values()[at].clone()
        })
        .collect()
}

fn swap_bits(mask: u64, i: usize, j: usize) -> u64 {
    let bi = (mask >> (i - 1)) & 1;
    let bj = (mask >> (j - 1)) & 1;
    if bi == bj {
        mask
    } else {
        mask ^ ((1 << (i - 1)) | (1 << (j - 1)))
    }
}

/// `Inf_ij[f] = (1/2) ||f^{(i j)} - f||^2` under the uniform slice measure.
/// For Boolean `f` this is `Pr[f != f^{(i j)}]`.
pub fn influence_pair(f: &SliceFunction, i: usize, j: usize) -> Result<Rational> {
    let swapped = apply_transposition(f, i, j)?;
    let diff = swapped.sub(f)?;
    Ok(diff.norm_sq() / Rational::from_integer(2.into()))
}

/// `Inf^m[f] = (1/m) sum_{i<j<=m} Inf_ij[f]` by direct summation.
pub fn total_influence_m(f: &SliceFunction, m: usize) -> Result<Rational> {
    if m < 2 || m > f.n() {
        return Err(Error::invalid(format!(
            "total influence needs 2 <= m <= {}, got {m}",
            f.n()
        )));
    }
    let mut sum = Rational::zero();
    for i in 1..m {
        for j in (i + 1)..=m {
            sum += influence_pair(f, i, j)?;
        }
    }
    Ok(sum / Rational::from_integer(m.into()))
}

/// Total influence `Inf[f] = Inf^n[f]`.
pub fn total_influence(f: &SliceFunction) -> Result<Rational> {
    total_influence_m(f, f.n())
}

/// The spectral form of `Inf^m`:
/// `sum_B |B ∩ [m]| (m+1-|B ∩ [m]|)/m * f_hat(B)^2 c_B ||chi_|B|||^2`.
pub fn influence_spectral(e: &YoungExpansion, m: usize) -> Result<Rational> {
    if m < 2 || m > e.n() {
        return Err(Error::invalid(format!(
            "total influence needs 2 <= m <= {}, got {m}",
            e.n()
        )));
    }
    let measure = ExchangeableMeasure::uniform_slice(e.n(), e.k())?;
    let mut sum = Rational::zero();
    for (b, c) in e.coefficients() {
        let cap = b.count_le(m);
        if cap == 0 {
            continue;
        }
        let factor = Rational::new(
            (cap * (m + 1 - cap)).into(),
            m.into(),
        );
        sum += factor * c * c * c_coefficient(b) * chi_d_norm_sq(b.len(), &measure);
    }
    Ok(sum)
}

/// Eigenvalue of `f -> sum_{i<m} f^{(i m)}` on the basis element `chi_B`:
/// `i - 2` when `b_i = m`, and `m - i` when `b_{i-1} < m < b_i` (with the
/// conventions `b_0 = -inf`, `b_{d+1} = +inf`).
pub fn lambda_coefficient(b: &TopSet, m: usize) -> i64 {
    assert!(m >= 1, "lambda_m needs m >= 1");
    match b.entries().binary_search(&m) {
        // b_{pos+1} = m, so i = pos + 1 and the value is i - 2
        Ok(pos) => pos as i64 - 1,
        // insertion point pos means b_pos < m < b_{pos+1}, so i = pos + 1
        Err(pos) => m as i64 - (pos as i64 + 1),
    }
}

/// Eigenvalue of `f -> sum_{i<j<=m} f^{(i j)}` on `chi_B`:
/// `m(m-1)/2 - |B ∩ [m]| (m+1 - |B ∩ [m]|)`, which also equals
/// `sum_{k=2}^m lambda_k(B)`.
pub fn tau_coefficient(b: &TopSet, m: usize) -> i64 {
    assert!(m >= 2, "tau_m needs m >= 2");
    let cap = b.count_le(m) as i64;
    let m = m as i64;
    m * (m - 1) / 2 - cap * (m + 1 - cap)
}

/// `sum_{1 <= i < m} f^{(i m)}` by direct summation. The empty sum at
/// `m = 1` is the zero function.
pub fn transposition_sum(f: &SliceFunction, m: usize) -> Result<SliceFunction> {
    if m < 1 || m > f.n() {
        return Err(Error::invalid(format!(
            "transposition sum needs 1 <= m <= {}, got {m}",
            f.n()
        )));
    }
    let mut acc = SliceFunction::constant(f.n(), f.k(), Rational::zero())?;
    for i in 1..m {
        acc = acc.add(&apply_transposition(f, i, m)?)?;
    }
    Ok(acc)
}

/// The action of the adjacent transposition `(m, m+1)` on an expansion,
/// written directly on coefficients.
///
/// Basis elements with both or neither of `m, m+1` in `B` are fixed. The
/// remaining elements mix in pairs `B <-> B^{(m m+1)}`: with `i` entries of
/// `B` below `m` and `r = m - 2i`,
///
/// * `m` in `B`:  `out(B) = (1/r) e(B) + ((r+1)/r) e(B')`,
/// * `m+1` in `B`: `out(B) = -(1/r) e(B) + ((r-1)/r) e(B')`,
///
/// where `B'` swaps `m` and `m+1` in `B`. When `B'` fails to be a top set
/// its multiplier `(r-1)/r` is zero, so the formula never reads a
/// coefficient that does not exist.
pub fn adjacent_transposition_expansion(
    e: &YoungExpansion,
    m: usize,
) -> Result<YoungExpansion> {
    if m < 1 || m >= e.n() {
        return Err(Error::invalid(format!(
            "adjacent transposition needs 1 <= m <= {}, got {m}",
            e.n() - 1
        )));
    }
    // Candidate output keys: the support and its swaps.
    let mut candidates: BTreeSet<TopSet> = e.coefficients().keys().cloned().collect();
    for b in e.coefficients().keys() {
        if b.contains(m) != b.contains(m + 1) {
            if let Some(swapped) = swap_top_set(b, m) {
                candidates.insert(swapped);
            }
        }
    }
    let mut out = BTreeMap::new();
    for b in candidates {
        let has_m = b.contains(m);
        let has_next = b.contains(m + 1);
        let value = if has_m == has_next {
            e.coefficient(&b)
        } else {
            let below = b.entries().iter().take_while(|&&x| x < m).count();
            let r = m as i64 - 2 * below as i64;
            debug_assert!(r >= 1);
            let r_rat = Rational::from_integer(r.into());
            if has_m {
                // swap is always a top set here
                let swapped = swap_top_set(&b, m).expect("raising m keeps the top set");
                e.coefficient(&b) / &r_rat
                    + Rational::from_integer((r + 1).into()) / &r_rat
                        * e.coefficient(&swapped)
            } else {
                let mirror = -e.coefficient(&b) / &r_rat;
                if r > 1 {
                    let swapped =
                        swap_top_set(&b, m).expect("r > 1 makes the lowered set a top set");
                    mirror
                        + Rational::from_integer((r - 1).into()) / &r_rat
                            * e.coefficient(&swapped)
                } else {
                    mirror
                }
            }
        };
        if !value.is_zero() {
            out.insert(b, value);
        }
    }
    YoungExpansion::new(e.n(), e.k(), out)
}

/// Swaps membership of `m` and `m+1` in `b` (which must contain exactly one
/// of them); `None` when the result is not a top set.
fn swap_top_set(b: &TopSet, m: usize) -> Option<TopSet> {
    let mut entries = b.entries().to_vec();
    for x in entries.iter_mut() {
        if *x == m {
            *x = m + 1;
        } else if *x == m + 1 {
            *x = m;
        }
    }
    entries.sort_unstable();
    TopSet::new(entries, b.ambient()).ok()
}

fn laplacian_rate(d: usize, n: usize) -> Rational {
    Rational::new(
        (2 * d * (n + 1 - d)).into(),
        (n * (n - 1)).into(),
    )
}

fn laplacian_rate_f64(d: usize, n: usize) -> f64 {
    laplacian_rate(d, n).to_f64().expect("small rational")
}

/// The Laplacian `L f = f - (1/C(n,2)) sum_{i<j} f^{(i j)}` on
/// coefficients: `chi_B` is an eigenvector with eigenvalue
/// `2 |B| (n+1-|B|) / (n (n-1))`.
pub fn laplacian(e: &YoungExpansion) -> YoungExpansion {
    let n = e.n();
    e.map_coefficients(|b, c| c * laplacian_rate(b.len(), n))
}

/// The heat semigroup `H_t = exp(-t L)` on coefficients. The only
/// non-exact operation in the crate: coefficients become `f64`.
pub fn noise(e: &YoungExpansion, t: f64) -> Result<RealExpansion> {
    RealExpansion::from_expansion(e).noise(t)
}

/// `(M f)(S) = sum_T w_{|S ∩ T|} f(T)` for an intersection profile `M`.
pub fn scheme_apply(profile: &IntersectionProfile, f: &SliceFunction) -> Result<SliceFunction> {
    if profile.n != f.n() || profile.k != f.k() {
        return Err(Error::mismatch(format!(
            "profile on ({},{}) applied to a function on ({},{})",
            profile.n,
            profile.k,
            f.n(),
            f.k()
        )));
    }
    let dom = f.domain().clone();
    let values = (0..dom.size())
        .map(|s| {
            let s_mask = dom.mask_at(s);
            let mut acc = Rational::zero();
            for t in 0..dom.size() {
                let overlap = (s_mask & dom.mask_at(t)).count_ones() as usize;
                let w = &profile.weights[overlap];
                if !w.is_zero() {
                    acc += w * &f.values()[t];
                }
            }
            acc
        })
        .collect();
    SliceFunction::from_lex_values(f.n(), f.k(), values)
}

/// The eigenvalue of the profile matrix on each degree subspace, for
/// `d = 0..=k`.
///
/// Every `chi_B` with `|B| = d` is an eigenvector with a common eigenvalue
/// `theta_d`, so it is read off by applying one matrix row to the canonical
/// representative `chi_{2,4,...,2d}` at a point where it does not vanish.
pub fn scheme_eigenvalues(profile: &IntersectionProfile) -> Result<Vec<Rational>> {
    let dom = domain(profile.n, profile.k)?;
    let mut out = Vec::with_capacity(profile.k + 1);
    for d in 0..=profile.k {
        let rep = TopSet::new((1..=d).map(|i| 2 * i).collect(), profile.n)
            .expect("canonical top set");
        let table = chi_table(&dom, &rep);
        let pivot = table
            .iter()
            .position(|v| !v.is_zero())
            .expect("chi_B is nonzero on the slice for |B| <= k");
        let s_mask = dom.mask_at(pivot);
        let mut row = Rational::zero();
        for t in 0..dom.size() {
            let overlap = (s_mask & dom.mask_at(t)).count_ones() as usize;
            let w = &profile.weights[overlap];
            if !w.is_zero() && !table[t].is_zero() {
                row += w * &table[t];
            }
        }
        out.push(row / &table[pivot]);
    }
    Ok(out)
}

/// The influence triangle inequality
/// `Inf_ij <= (9/2)(Inf_ik + Inf_jk)` as a checkable predicate.
pub fn triangle_check(f: &SliceFunction, i: usize, j: usize, k: usize) -> Result<bool> {
    if i == j || i == k || j == k {
        return Err(Error::invalid("triangle check needs three distinct indices"));
    }
    let ij = influence_pair(f, i, j)?;
    let ik = influence_pair(f, i, k)?;
    let jk = influence_pair(f, j, k)?;
    Ok(ij <= crate::rat(9, 2) * (ik + jk))
}

/// `(V[f], Inf[f], d V[f])` with `d` the maximal degree carrying a nonzero
/// coefficient; the middle term always lies between the outer two.
pub fn poincare_bounds(e: &YoungExpansion) -> (Rational, Rational, Rational) {
    let m = crate::expansion::moments(e);
    let inf = if e.coefficients().is_empty() {
        Rational::zero()
    } else {
        influence_spectral(e, e.n()).expect("n >= 2 for a valid slice")
    };
    let d = e.max_degree();
    let upper = Rational::from_integer(d.into()) * &m.variance;
    (m.variance, inf, upper)
}
