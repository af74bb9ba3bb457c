//! Sparse multilinear polynomials over exact rationals, harmonicity, and
//! the orthogonal basis elements `chi_B`.
//!
//! Monomials are squarefree and stored as sorted index sets; the zero
//! polynomial is the empty term map. A multilinear polynomial is *harmonic*
//! when the sum of its first partial derivatives vanishes; the basis
//! elements built here are harmonic of pure degree `|B|`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, LazyLock, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::{
    binomial, enumerate_top_sets, companion_sequence, smaller_sequences, Sequence, TopSet,
};
use crate::error::{Error, Result};
use crate::Rational;

/// A squarefree monomial: a strictly increasing list of 1-based indices.
pub type Monomial = Vec<usize>;

/// A sparse multilinear polynomial with exact rational coefficients.
///
/// Invariants: every stored coefficient is nonzero, every monomial is a
/// sorted subset of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultilinearPolynomial {
    n: usize,
    terms: BTreeMap<Monomial, Rational>,
}

/// A monomial with explicit exponents, as produced by formal products of
/// multilinear polynomials (per-variable degree up to 2 there, arbitrary in
/// general). Stored sorted by index with all exponents >= 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentMonomial(Vec<(usize, u32)>);

impl ExponentMonomial {
    /// Builds from (index, exponent) pairs; merges repeats, rejects
    /// exponent 0.
    pub fn new(pairs: impl IntoIterator<Item = (usize, u32)>) -> Result<Self> {
        let mut map: BTreeMap<usize, u32> = BTreeMap::new();
        for (i, e) in pairs {
            if e == 0 {
                return Err(Error::invalid("exponent must be >= 1"));
            }
            *map.entry(i).or_insert(0) += e;
        }
        Ok(ExponentMonomial(map.into_iter().collect()))
    }

    /// Product of two squarefree monomials.
    fn from_product(a: &[usize], b: &[usize]) -> Self {
        let mut pairs = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    pairs.push((a[i], 1));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    pairs.push((b[j], 1));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    pairs.push((a[i], 2));
                    i += 1;
                    j += 1;
                }
            }
        }
        pairs.extend(a[i..].iter().map(|&x| (x, 1)));
        pairs.extend(b[j..].iter().map(|&x| (x, 1)));
        ExponentMonomial(pairs)
    }

    pub fn pairs(&self) -> &[(usize, u32)] {
        &self.0
    }

    /// Number of distinct variables.
    pub fn support_size(&self) -> usize {
        self.0.len()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.last().map(|&(i, _)| i)
    }
}

impl MultilinearPolynomial {
    pub fn zero(n: usize) -> Self {
        MultilinearPolynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MultilinearPolynomial { n, terms }
    }

    /// The single variable `x_i`.
    pub fn variable(n: usize, i: usize) -> Result<Self> {
        if i < 1 || i > n {
            return Err(Error::invalid(format!("variable index {i} not in 1..={n}")));
        }
        let mut terms = BTreeMap::new();
        terms.insert(vec![i], Rational::one());
        Ok(MultilinearPolynomial { n, terms })
    }

    /// Builds from monomial/coefficient pairs; validates monomials, merges
    /// repeats, prunes zeros.
    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self> {
        let mut p = MultilinearPolynomial::zero(n);
        for (m, c) in terms {
            if m.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::invalid("monomial must be strictly increasing"));
            }
            if m.first().is_some_and(|&f| f < 1) || m.last().is_some_and(|&l| l > n) {
                return Err(Error::invalid(format!("monomial {m:?} not within [{n}]")));
            }
            p.accumulate(m, c);
        }
        Ok(p)
    }

    fn accumulate(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, m: &[usize]) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximal number of variables in a monomial; `None` for the zero
    /// polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).max()
    }

    /// `Some(d)` when every monomial has exactly `d` variables.
    pub fn pure_degree(&self) -> Option<usize> {
        let d = self.degree()?;
        self.terms.keys().all(|m| m.len() == d).then_some(d)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::mismatch(format!(
                "cannot add polynomials over [{}] and [{}]",
                self.n, other.n
            )));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return MultilinearPolynomial::zero(self.n);
        }
        MultilinearPolynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    /// Formal product as a map from exponent monomials to coefficients.
    /// No reduction is applied, so squares survive; this is the shape the
    /// measure moment oracles consume.
    pub fn multiply_to_exponents(
        &self,
        other: &Self,
    ) -> Result<BTreeMap<ExponentMonomial, Rational>> {
        if self.n != other.n {
            return Err(Error::mismatch(format!(
                "cannot multiply polynomials over [{}] and [{}]",
                self.n, other.n
            )));
        }
        let mut out: BTreeMap<ExponentMonomial, Rational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let key = ExponentMonomial::from_product(m1, m2);
                let c = c1 * c2;
                use std::collections::btree_map::Entry;
                match out.entry(key) {
                    Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    Entry::Occupied(mut o) => {
                        *o.get_mut() += c;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// The sum of all first partial derivatives. The polynomial is harmonic
    /// exactly when this is zero.
    pub fn harmonic_defect(&self) -> Self {
        let mut out = MultilinearPolynomial::zero(self.n);
        for (m, c) in &self.terms {
            for drop in 0..m.len() {
                let mut reduced = m.clone();
                reduced.remove(drop);
                out.accumulate(reduced, c.clone());
            }
        }
        out
    }

    pub fn is_harmonic(&self) -> bool {
        self.harmonic_defect().is_zero()
    }

    /// Value at the 0/1 point with ones exactly on `set` (sorted indices):
    /// the sum of the coefficients of all monomials contained in `set`.
    pub fn evaluate_on_set(&self, set: &[usize]) -> Rational {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            if is_subset(m, set) {
                total += c;
            }
        }
        total
    }
}

fn is_subset(sub: &[usize], sup: &[usize]) -> bool {
    let mut it = sup.iter();
    sub.iter().all(|x| it.any(|y| y == x))
}

impl fmt::Display for MultilinearPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by_key(|(m, _)| (m.len(), (*m).clone()));
        for (pos, (m, c)) in ordered.into_iter().enumerate() {
            let negative = c < &Rational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if pos == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let vars = m
                .iter()
                .map(|i| format!("x{i}"))
                .collect::<Vec<_>>()
                .join("*");
            if m.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{vars}")?;
            } else {
                write!(f, "{abs}*{vars}")?;
            }
        }
        Ok(())
    }
}

/// `chi_{A,B} = prod_i (x_{a_i} - x_{b_i})`, fully expanded.
///
/// `A` and `B` must be disjoint sequences of equal length over the same
/// ambient set.
pub fn chi_pair(a: &Sequence, b: &Sequence) -> Result<MultilinearPolynomial> {
    if a.ambient() != b.ambient() {
        return Err(Error::mismatch("sequences live in different ambient sets"));
    }
    if a.len() != b.len() {
        return Err(Error::invalid("sequences must have equal length"));
    }
    if a.entries().iter().any(|x| b.entries().contains(x)) {
        return Err(Error::invalid("sequences must be disjoint"));
    }
    let n = a.ambient();
    let mut p = MultilinearPolynomial::constant(n, Rational::one());
    for (&ai, &bi) in a.entries().iter().zip(b.entries()) {
        let factor = MultilinearPolynomial::from_terms(
            n,
            [
                (vec![ai], Rational::one()),
                (vec![bi], -Rational::one()),
            ],
        )?;
        p = multiply_multilinear(&p, &factor);
    }
    Ok(p)
}

/// Product of two multilinear polynomials with disjoint supports per term
/// (used only for the `chi` constructions, where factors never share
/// variables, so the result stays squarefree).
fn multiply_multilinear(
    p: &MultilinearPolynomial,
    q: &MultilinearPolynomial,
) -> MultilinearPolynomial {
    let mut out = MultilinearPolynomial::zero(p.n);
    for (m1, c1) in &p.terms {
        for (m2, c2) in &q.terms {
            let mut m = m1.clone();
            m.extend_from_slice(m2);
            m.sort_unstable();
            debug_assert!(m.windows(2).all(|w| w[0] < w[1]));
            out.accumulate(m, c1 * c2);
        }
    }
    out
}

type ChiCache = LazyLock<Mutex<HashMap<(usize, Vec<usize>), Arc<MultilinearPolynomial>>>>;

static CHI_TOP_CACHE: ChiCache = LazyLock::new(|| Mutex::new(HashMap::new()));

/// Young's basis element `chi_B`: the sum of `chi_{A,B}` over all sequences
/// `A < B` disjoint from `B`.
///
/// Expansions are memoized per `(ambient, B)`; the sum has
/// `prod_i (b_i - 2(i-1) - 1)` terms before collapsing.
pub fn chi_top(b: &TopSet) -> MultilinearPolynomial {
    let key = (b.ambient(), b.entries().to_vec());
    if let Some(hit) = CHI_TOP_CACHE.lock().unwrap().get(&key) {
        return (**hit).clone();
    }
    let mut sum = MultilinearPolynomial::zero(b.ambient());
    let b_seq = b.as_sequence();
    for a in smaller_sequences(b) {
        let term = chi_pair(&a, &b_seq).expect("smaller sequences are disjoint from B");
        sum = sum.add(&term).expect("same ambient");
    }
    CHI_TOP_CACHE
        .lock()
        .unwrap()
        .insert(key, Arc::new(sum.clone()));
    sum
}

/// The canonical degree-`d` element `chi_d = prod_i (x_{2i-1} - x_{2i})`,
/// which equals `chi_B` for `B = (2, 4, ..., 2d)`.
pub fn chi_d(d: usize, n: usize) -> Result<MultilinearPolynomial> {
    if 2 * d > n {
        return Err(Error::invalid(format!("chi_{d} needs ambient n >= {}", 2 * d)));
    }
    let odds = Sequence::new((1..=d).map(|i| 2 * i - 1).collect(), n)?;
    let evens = Sequence::new((1..=d).map(|i| 2 * i).collect(), n)?;
    chi_pair(&odds, &evens)
}

/// The Frankl–Graham basis of the pure-degree-`d` harmonic space:
/// `chi_{phi(B), B}` over all top sets `B` of length `d`.
pub fn frankl_graham_basis(n: usize, d: usize) -> Vec<MultilinearPolynomial> {
    enumerate_top_sets(n, d)
        .iter()
        .map(|b| {
            chi_pair(&companion_sequence(b), &b.as_sequence())
                .expect("companion is disjoint from B")
        })
        .collect()
}

/// A pure-degree-`d` multilinear polynomial whose harmonic defect is exactly
/// the monomial `x_1 ... x_{d-1}`.
///
/// Averaging over monomial pairs `x_A x_B` with `A` inside `[d-1]` and `B`
/// outside, with alternating binomial weights, produces a polynomial that
/// violates exactly one harmonicity constraint; it witnesses that the
/// constraints are linearly independent.
pub fn harmonicity_witness(n: usize, d: usize) -> Result<MultilinearPolynomial> {
    use itertools::Itertools;
    if d < 1 || 2 * d > n {
        return Err(Error::invalid(format!("need 1 <= d <= n/2, got d={d} n={n}")));
    }
    let mut p = MultilinearPolynomial::zero(n);
    for t in 1..=d {
        let inner: Vec<Vec<usize>> = (1..d).combinations(d - t).collect();
        let outer: Vec<Vec<usize>> = (d..=n).combinations(t).collect();
        let pairs = BigInt::from(inner.len()) * BigInt::from(outer.len());
        let sign = if t % 2 == 1 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        let weight = Rational::new(sign * binomial(d, t as isize), BigInt::from(d) * pairs);
        for a in &inner {
            for bs in &outer {
                let mut m = a.clone();
                m.extend_from_slice(bs);
                m.sort_unstable();
                p.accumulate(m, weight.clone());
            }
        }
    }
    Ok(p)
}

/// `(dim H_{n,d}, dim of the pure-degree-d subspace)` for harmonic
/// multilinear polynomials: `(C(n,d), C(n,d) - C(n,d-1))`.
pub fn dimension(n: usize, d: usize) -> (BigInt, BigInt) {
    (
        binomial(n, d as isize),
        binomial(n, d as isize) - binomial(n, d as isize - 1),
    )
}
