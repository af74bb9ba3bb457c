//! Sequences, top sets, ballot encoding, enumeration and counting.
//!
//! Coordinates are 1-based throughout: a sequence lives in `[n] = {1..n}`.
//! A *top set* `B = (b_1 < ... < b_d)` is an increasing sequence admitting a
//! disjoint sequence `A` with `a_i < b_i` for every `i`; top sets index the
//! orthogonal basis elements built in [`crate::poly`]. Membership is decided
//! by a ballot encoding: walking `i = 1..n` with step `-1` on members and
//! `+1` on non-members (starting from `+1`), every running sum must stay
//! positive. Equivalently, `b_i >= 2i` for all `i`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// An ordered list of distinct 1-based indices in `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequence {
    entries: Vec<usize>,
    n: usize,
}

impl Sequence {
    /// Validates distinctness and the range `1..=n`.
    pub fn new(entries: Vec<usize>, n: usize) -> Result<Self> {
        for &e in &entries {
            if e < 1 || e > n {
                return Err(Error::invalid(format!(
                    "sequence entry {e} out of range 1..={n}"
                )));
            }
        }
        let mut seen = entries.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("sequence entries must be distinct"));
        }
        Ok(Sequence { entries, n })
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// An increasing sequence satisfying the ballot condition.
///
/// Construction checks the defining property, so a value of this type is
/// always a genuine top set for its ambient `n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TopSet {
    entries: Vec<usize>,
    n: usize,
}

impl TopSet {
    pub fn new(entries: Vec<usize>, n: usize) -> Result<Self> {
        if !is_top_set(&entries, n)? {
            return Err(Error::invalid(format!(
                "{entries:?} is not a top set in [{n}]"
            )));
        }
        Ok(TopSet { entries, n })
    }

    /// The empty top set (the index of the constant basis element).
    pub fn empty(n: usize) -> Self {
        TopSet {
            entries: Vec::new(),
            n,
        }
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.entries.binary_search(&i).is_ok()
    }

    /// Number of entries that are `<= m`.
    pub fn count_le(&self, m: usize) -> usize {
        self.entries.partition_point(|&b| b <= m)
    }

    pub fn as_sequence(&self) -> Sequence {
        Sequence {
            entries: self.entries.clone(),
            n: self.n,
        }
    }
}

/// Decides whether `candidate` is a top set in `[n]`.
///
/// The input must be strictly increasing with entries in `1..=n`; anything
/// else is rejected as invalid rather than reported as "not a top set".
/// Lengths greater than `n/2` are accepted as input and simply yield
/// `false` (the ballot walk must go negative).
pub fn is_top_set(candidate: &[usize], n: usize) -> Result<bool> {
    for w in candidate.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::invalid("candidate must be strictly increasing"));
        }
    }
    if let (Some(&first), Some(&last)) = (candidate.first(), candidate.last()) {
        if first < 1 || last > n {
            return Err(Error::invalid(format!(
                "candidate entries must lie in 1..={n}"
            )));
        }
    }
    // Ballot walk: +1 for i = 0 and for non-members, -1 for members; every
    // prefix sum must stay positive. Only prefixes ending right after a
    // member can be minimal, so it suffices to check those.
    let mut running: i64 = 1;
    let mut prev: usize = 0;
    for (pos, &b) in candidate.iter().enumerate() {
        running += (b - prev) as i64 - 2;
        if running <= 0 {
            return Ok(false);
        }
        debug_assert_eq!(running > 0, b >= 2 * (pos + 1));
        prev = b;
    }
    Ok(true)
}

/// All top sets of length `d` in `[n]`, in lexicographic order.
///
/// For `2d > n` there are none and the list is empty; this is a valid query,
/// not an error.
pub fn enumerate_top_sets(n: usize, d: usize) -> Vec<TopSet> {
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(d);
    fill_top_sets(n, d, &mut prefix, &mut out);
    out
}

fn fill_top_sets(n: usize, d: usize, prefix: &mut Vec<usize>, out: &mut Vec<TopSet>) {
    if prefix.len() == d {
        out.push(TopSet {
            entries: prefix.clone(),
            n,
        });
        return;
    }
    let i = prefix.len() + 1;
    let lo = std::cmp::max(2 * i, prefix.last().map_or(0, |&p| p + 1));
    for b in lo..=n {
        prefix.push(b);
        fill_top_sets(n, d, prefix, out);
        prefix.pop();
    }
}

/// All top sets of length `0..=d_max` in `[n]`, by length then lexicographic.
pub fn enumerate_top_sets_up_to(n: usize, d_max: usize) -> Vec<TopSet> {
    (0..=d_max).flat_map(|d| enumerate_top_sets(n, d)).collect()
}

/// `binomial(n, k)` with the convention that out-of-range `k` gives zero.
pub fn binomial(n: usize, k: isize) -> BigInt {
    if k < 0 || k as usize > n {
        return BigInt::zero();
    }
    let k = k as usize;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k.min(n - k) {
        num *= n - i;
        den *= i + 1;
    }
    num / den
}

/// Falling factorial `base * (base-1) * ... * (base-count+1)`.
pub fn falling(base: usize, count: usize) -> BigInt {
    let mut out = BigInt::one();
    for i in 0..count {
        if i > base {
            return BigInt::zero();
        }
        out *= base - i;
    }
    out
}

/// `|B_{n,d}| = C(n,d) - C(n,d-1)`, which equals the length of
/// [`enumerate_top_sets`]. Zero for `2d > n`.
pub fn count_top_sets(n: usize, d: usize) -> BigInt {
    if 2 * d > n {
        return BigInt::zero();
    }
    binomial(n, d as isize) - binomial(n, d as isize - 1)
}

/// The canonical companion `phi(B) < B`, disjoint from `B`.
///
/// Chosen greedily: `a_i` is the smallest index below `b_i` not in `B` and
/// not already used. The top-set property guarantees a choice always exists.
pub fn companion_sequence(b: &TopSet) -> Sequence {
    let mut used = Vec::new();
    for (i, &bi) in b.entries.iter().enumerate() {
        let a = (1..bi)
            .find(|x| !b.contains(*x) && !used.contains(x))
            .unwrap_or_else(|| {
                unreachable!("top set {:?} has no companion at position {}", b.entries, i)
            });
        used.push(a);
    }
    Sequence {
        entries: used,
        n: b.n,
    }
}

/// All sequences `A` disjoint from `B` with `a_i < b_i` for every `i`, in
/// lexicographic order. Entries of `A` need not be increasing.
pub fn smaller_sequences(b: &TopSet) -> Vec<Sequence> {
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(b.len());
    fill_smaller(b, &mut prefix, &mut out);
    out
}

fn fill_smaller(b: &TopSet, prefix: &mut Vec<usize>, out: &mut Vec<Sequence>) {
    let i = prefix.len();
    if i == b.len() {
        out.push(Sequence {
            entries: prefix.clone(),
            n: b.n,
        });
        return;
    }
    for a in 1..b.entries[i] {
        if b.contains(a) || prefix.contains(&a) {
            continue;
        }
        prefix.push(a);
        fill_smaller(b, prefix, out);
        prefix.pop();
    }
}

/// The norm coefficient `c_B = prod_i (b_i - 2(i-1)) (b_i - 2(i-1) - 1) / 2`.
///
/// For a top set this is always a positive integer; it equals the squared
/// norm of `chi_B` relative to the canonical degree-`|B|` element.
pub fn c_coefficient(b: &TopSet) -> Rational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (i, &bi) in b.entries.iter().enumerate() {
        let shift = 2 * i; // 2(i-1) with 1-based i
        num *= (bi - shift) * (bi - shift - 1);
        den *= 2;
    }
    Rational::new(num, den)
}
