//! Junta approximation for Boolean slice functions: identify a small set of
//! important coordinates by matching high-influence pairs, symmetrize over
//! the rest, and round back to Boolean.
//!
//! Outside the returned set every pairwise influence is below the
//! threshold; when the threshold sits under the smallest nonzero influence
//! the procedure is lossless and returns the function itself.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::expansion::{average_first_m, expand, synthesize, SliceFunction};
use crate::operators::{apply_permutation, apply_transposition, influence_pair};
use crate::Rational;

/// Outcome of [`junta_approximate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JuntaReport {
    /// Matched high-influence coordinates, sorted, in the original labels.
    pub important_set: Vec<usize>,
    /// The threshold that was used.
    pub tau: Rational,
    /// The Boolean approximation, in the original labels; depends only on
    /// `important_set`.
    pub junta: SliceFunction,
    /// `Pr[f != junta]` under the uniform slice measure.
    pub distance: Rational,
    /// The rounding bound `2 ||f - h||^2`, an upper bound for `distance`
    /// (`h` is the symmetrized function before rounding).
    pub rounding_bound: Rational,
    /// `|important_set|`.
    pub coordinate_count: usize,
    /// The relabeling that moved `important_set` to the trailing
    /// coordinates: `permutation[i-1]` is the new label of coordinate `i`.
    pub permutation: Vec<usize>,
}

/// Endpoints of a greedy maximal matching on the graph whose edges are the
/// pairs with `Inf_ij >= tau`, scanned in lexicographic order.
///
/// Guarantee: `Inf_ij < tau` whenever both `i` and `j` avoid the result.
pub fn important_set(f: &SliceFunction, tau: &Rational) -> Result<Vec<usize>> {
    if !tau.is_positive() {
        return Err(Error::invalid("tau must be positive"));
    }
    let n = f.n();
    let mut matched = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 1..n {
        if matched[i] {
            continue;
        }
        for j in (i + 1)..=n {
            if matched[j] {
                continue;
            }
            if influence_pair(f, i, j)? >= *tau {
                matched[i] = true;
                matched[j] = true;
                out.push(i);
                out.push(j);
                break;
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Whether `f` is invariant under every transposition avoiding `s`.
pub fn depends_only_on(f: &SliceFunction, s: &[usize]) -> Result<bool> {
    let n = f.n();
    let outside: Vec<usize> = (1..=n).filter(|i| !s.contains(i)).collect();
    for (pos, &i) in outside.iter().enumerate() {
        for &j in &outside[pos + 1..] {
            if apply_transposition(f, i, j)? != *f {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The average-then-round junta approximation of a Boolean function.
///
/// Finds the important set `S`, relabels it to the trailing coordinates,
/// averages over all permutations of the remaining ones (realized exactly
/// by dropping every expansion coefficient meeting the complement), rounds
/// point-wise to `{0, 1}` — a value of exactly 1/2 rounds to 1 — and
/// reports the junta in the original labels together with its distance
/// from `f` and the bound `2 ||f - h||^2`.
pub fn junta_approximate(f: &SliceFunction, tau: &Rational) -> Result<JuntaReport> {
    if !f.is_boolean() {
        return Err(Error::invalid(
            "junta approximation expects a Boolean function",
        ));
    }
    let n = f.n();
    let important = important_set(f, tau)?;
    let trailing = n - important.len();

    // Relabel: complement keeps relative order in 1..=trailing, the
    // important coordinates follow. `to_new[i-1]` is the new label of i.
    let mut to_new = vec![0usize; n];
    let mut next_low = 1;
    let mut next_high = trailing + 1;
    for i in 1..=n {
        if important.contains(&i) {
            to_new[i - 1] = next_high;
            next_high += 1;
        } else {
            to_new[i - 1] = next_low;
            next_low += 1;
        }
    }
    let mut to_old = vec![0usize; n];
    for i in 1..=n {
        to_old[to_new[i - 1] - 1] = i;
    }

    // f in the relabeled frame: f_rel(T) = f(old labels of T)
    let f_rel = apply_permutation(f, &to_old)?;
    let h_rel = if trailing == 0 {
        f_rel.clone()
    } else {
        synthesize(&average_first_m(&expand(&f_rel), trailing)?)
    };
    let half = crate::rat(1, 2);
    let g_rel_values: Vec<Rational> = h_rel
        .values()
        .iter()
        .map(|v| {
            if *v >= half {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect();
    let g_rel = SliceFunction::from_lex_values(n, f.k(), g_rel_values)?;

    let diff = f_rel.sub(&h_rel)?;
    let rounding_bound = Rational::from_integer(2.into()) * diff.norm_sq();

    // Back to the original labels.
    let junta = apply_permutation(&g_rel, &to_new)?;
    let disagreements = f
        .values()
        .iter()
        .zip(junta.values().iter())
        .filter(|(a, b)| a != b)
        .count();
    let distance = Rational::new(
        disagreements.into(),
        f.domain().size().into(),
    );

    Ok(JuntaReport {
        coordinate_count: important.len(),
        important_set: important,
        tau: tau.clone(),
        junta,
        distance,
        rounding_bound,
        permutation: to_new,
    })
}
