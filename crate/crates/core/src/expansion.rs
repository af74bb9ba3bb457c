//! Functions on a slice and their Young–Fourier expansions.
//!
//! A slice function is an exact-rational value table over the k-subsets of
//! `[n]`, stored against a cached, canonically ordered subset enumeration.
//! Expanding a function writes it in the orthogonal basis `{chi_B}` with
//! `|B| <= k`; synthesis is the exact inverse. Both directions go through
//! cached per-basis-element value tables, so repeated transforms on the
//! same slice are cheap.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, LazyLock, Mutex};

use itertools::Itertools;
use num_traits::{One, ToPrimitive, Zero};

use crate::combinatorics::{binomial, c_coefficient, enumerate_top_sets_up_to, TopSet};
use crate::error::{Error, Result};
use crate::measures::{chi_d_norm_sq, chi_norm_sq, inner_product, ExchangeableMeasure};
use crate::poly::{chi_top, MultilinearPolynomial};
use crate::Rational;

/// Canonical enumeration of the k-subsets of `[n]`, shared by every
/// function on the same slice. Subsets are in lexicographic order and
/// mirrored as bitmasks for O(1) index lookups.
pub struct SliceDomain {
    n: usize,
    k: usize,
    subsets: Vec<Vec<usize>>,
    masks: Vec<u64>,
    index: HashMap<u64, usize>,
}

impl fmt::Debug for SliceDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SliceDomain({}, {})", self.n, self.k)
    }
}

impl SliceDomain {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of points, `C(n, k)`.
    pub fn size(&self) -> usize {
        self.subsets.len()
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    pub fn subset_at(&self, idx: usize) -> &[usize] {
        &self.subsets[idx]
    }

    pub fn index_of(&self, set: &[usize]) -> Option<usize> {
        self.index.get(&mask_of(set)).copied()
    }

    pub(crate) fn index_of_mask(&self, mask: u64) -> Option<usize> {
        self.index.get(&mask).copied()
    }

    pub(crate) fn mask_at(&self, idx: usize) -> u64 {
        self.masks[idx]
    }
}

fn mask_of(set: &[usize]) -> u64 {
    set.iter().fold(0u64, |m, &i| m | (1u64 << (i - 1)))
}

type Cache<K, V> = LazyLock<Mutex<HashMap<K, V>>>;

static DOMAIN_CACHE: Cache<(usize, usize), Arc<SliceDomain>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// The shared domain object for the `(n, k)` slice. Requires
/// `1 <= k <= n/2` and `n <= 64`.
pub fn domain(n: usize, k: usize) -> Result<Arc<SliceDomain>> {
    if k < 1 || 2 * k > n {
        return Err(Error::invalid(format!(
            "slice needs 1 <= k <= n/2, got n={n} k={k}"
        )));
    }
    if n > 64 {
        return Err(Error::invalid("slices beyond n = 64 are not supported"));
    }
    let mut cache = DOMAIN_CACHE.lock().unwrap();
    if let Some(hit) = cache.get(&(n, k)) {
        return Ok(hit.clone());
    }
    let subsets: Vec<Vec<usize>> = (1..=n).combinations(k).collect();
    let masks: Vec<u64> = subsets.iter().map(|s| mask_of(s)).collect();
    let index = masks
        .iter()
        .enumerate()
        .map(|(i, &m)| (m, i))
        .collect();
    let dom = Arc::new(SliceDomain {
        n,
        k,
        subsets,
        masks,
        index,
    });
    cache.insert((n, k), dom.clone());
    Ok(dom)
}

static CHI_TABLE_CACHE: Cache<(usize, usize, Vec<usize>), Arc<Vec<Rational>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// Values of `chi_B` at every point of the slice, in domain order.
pub(crate) fn chi_table(dom: &Arc<SliceDomain>, b: &TopSet) -> Arc<Vec<Rational>> {
    let key = (dom.n, dom.k, b.entries().to_vec());
    if let Some(hit) = CHI_TABLE_CACHE.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let poly = chi_top(b);
    let mut values = vec![Rational::zero(); dom.size()];
    for (m, c) in poly.terms() {
        let m_mask = mask_of(m);
        for (idx, &s_mask) in dom.masks.iter().enumerate() {
            if s_mask & m_mask == m_mask {
                values[idx] += c;
            }
        }
    }
    let table = Arc::new(values);
    CHI_TABLE_CACHE.lock().unwrap().insert(key, table.clone());
    table
}

/// An exact-rational function on the `(n, k)` slice.
#[derive(Clone)]
pub struct SliceFunction {
    domain: Arc<SliceDomain>,
    values: Vec<Rational>,
}

impl fmt::Debug for SliceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SliceFunction")
            .field("n", &self.n())
            .field("k", &self.k())
            .field("values", &self.values)
            .finish()
    }
}

impl PartialEq for SliceFunction {
    fn eq(&self, other: &Self) -> bool {
        self.n() == other.n() && self.k() == other.k() && self.values == other.values
    }
}

impl Eq for SliceFunction {}

impl SliceFunction {
    /// Builds from explicit (subset, value) records. Every k-subset must
    /// appear exactly once with sorted entries.
    pub fn from_records(
        n: usize,
        k: usize,
        records: impl IntoIterator<Item = (Vec<usize>, Rational)>,
    ) -> Result<Self> {
        let dom = domain(n, k)?;
        let mut values: Vec<Option<Rational>> = vec![None; dom.size()];
        for (set, value) in records {
            if set.len() != k || set.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::invalid(format!(
                    "record set {set:?} is not a sorted {k}-subset"
                )));
            }
            let idx = dom
                .index_of(&set)
                .ok_or_else(|| Error::invalid(format!("set {set:?} is not within [{n}]")))?;
            if values[idx].is_some() {
                return Err(Error::invalid(format!("duplicate set {set:?}")));
            }
            values[idx] = Some(value);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| {
                    Error::invalid(format!("missing value for set {:?}", dom.subset_at(i)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SliceFunction {
            domain: dom,
            values,
        })
    }

    /// Builds from values listed in the domain's lexicographic subset order.
    pub fn from_lex_values(n: usize, k: usize, values: Vec<Rational>) -> Result<Self> {
        let dom = domain(n, k)?;
        if values.len() != dom.size() {
            return Err(Error::invalid(format!(
                "expected {} values for the ({n},{k}) slice, got {}",
                dom.size(),
                values.len()
            )));
        }
        Ok(SliceFunction {
            domain: dom,
            values,
        })
    }

    pub fn constant(n: usize, k: usize, c: Rational) -> Result<Self> {
        let dom = domain(n, k)?;
        let size = dom.size();
        Ok(SliceFunction {
            domain: dom,
            values: vec![c; size],
        })
    }

    /// Restriction of a multilinear polynomial to the slice (coordinates
    /// read as 0/1 indicators).
    pub fn from_polynomial(p: &MultilinearPolynomial, k: usize) -> Result<Self> {
        let dom = domain(p.ambient(), k)?;
        let values = dom
            .subsets
            .iter()
            .map(|s| p.evaluate_on_set(s))
            .collect();
        Ok(SliceFunction {
            domain: dom,
            values,
        })
    }

    pub fn n(&self) -> usize {
        self.domain.n
    }

    pub fn k(&self) -> usize {
        self.domain.k
    }

    pub fn domain(&self) -> &Arc<SliceDomain> {
        &self.domain
    }

    /// Values in domain order.
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, set: &[usize]) -> Result<&Rational> {
        let idx = self
            .domain
            .index_of(set)
            .ok_or_else(|| Error::invalid(format!("{set:?} is not a point of this slice")))?;
        Ok(&self.values[idx])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[usize], &Rational)> {
        self.domain
            .subsets
            .iter()
            .map(Vec::as_slice)
            .zip(self.values.iter())
    }

    pub fn is_boolean(&self) -> bool {
        self.values
            .iter()
            .all(|v| v.is_zero() || v.is_one())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Self> {
        if self.n() != other.n() || self.k() != other.k() {
            return Err(Error::mismatch(format!(
                "functions on ({},{}) and ({},{})",
                self.n(),
                self.k(),
                other.n(),
                other.k()
            )));
        }
        Ok(SliceFunction {
            domain: self.domain.clone(),
            values: self
                .values
                .iter()
                .zip(other.values.iter())
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        SliceFunction {
            domain: self.domain.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// `E[f]` under the uniform slice measure.
    pub fn mean(&self) -> Rational {
        let total: Rational = self.values.iter().sum();
        total / Rational::from_integer(self.values.len().into())
    }

    /// `<f, g> = E[f g]` under the uniform slice measure, by direct
    /// point-wise summation.
    pub fn inner_product(&self, other: &Self) -> Result<Rational> {
        if self.n() != other.n() || self.k() != other.k() {
            return Err(Error::mismatch("inner product across different slices"));
        }
        let total: Rational = self
            .values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| a * b)
            .sum();
        Ok(total / Rational::from_integer(self.values.len().into()))
    }

    /// `E[f^2]` under the uniform slice measure.
    pub fn norm_sq(&self) -> Rational {
        self.inner_product(self).expect("same slice")
    }

    /// `<f, p>` against a polynomial restricted to this slice.
    pub fn inner_product_poly(&self, p: &MultilinearPolynomial) -> Result<Rational> {
        if p.ambient() != self.n() {
            return Err(Error::mismatch(format!(
                "polynomial over [{}] against a slice with n = {}",
                p.ambient(),
                self.n()
            )));
        }
        let restricted = SliceFunction::from_polynomial(p, self.k())?;
        self.inner_product(&restricted)
    }
}

/// Exact Young–Fourier coefficients of a function on the `(n, k)` slice.
/// Only nonzero coefficients are stored; keys are top sets with `|B| <= k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YoungExpansion {
    n: usize,
    k: usize,
    coefficients: BTreeMap<TopSet, Rational>,
}

impl YoungExpansion {
    pub fn new(
        n: usize,
        k: usize,
        coefficients: impl IntoIterator<Item = (TopSet, Rational)>,
    ) -> Result<Self> {
        if k < 1 || 2 * k > n {
            return Err(Error::invalid(format!(
                "expansion needs 1 <= k <= n/2, got n={n} k={k}"
            )));
        }
        let mut map = BTreeMap::new();
        for (b, c) in coefficients {
            if b.ambient() != n {
                return Err(Error::mismatch(format!(
                    "top set over [{}] in an expansion over [{n}]",
                    b.ambient()
                )));
            }
            if b.len() > k {
                return Err(Error::invalid(format!(
                    "top set {:?} exceeds the degree cap k = {k}",
                    b.entries()
                )));
            }
            if c.is_zero() {
                continue;
            }
            if map.insert(b, c).is_some() {
                return Err(Error::invalid("duplicate top set in expansion"));
            }
        }
        Ok(YoungExpansion {
            n,
            k,
            coefficients: map,
        })
    }

    pub fn zero(n: usize, k: usize) -> Result<Self> {
        YoungExpansion::new(n, k, [])
    }

    /// The expansion with a single unit coefficient at `b`.
    pub fn unit(n: usize, k: usize, b: TopSet) -> Result<Self> {
        YoungExpansion::new(n, k, [(b, Rational::one())])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coefficients(&self) -> &BTreeMap<TopSet, Rational> {
        &self.coefficients
    }

    pub fn coefficient(&self, b: &TopSet) -> Rational {
        self.coefficients
            .get(b)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Largest `|B|` carrying a nonzero coefficient; 0 when empty.
    pub fn max_degree(&self) -> usize {
        self.coefficients.keys().map(TopSet::len).max().unwrap_or(0)
    }

    /// Coefficient-wise map; zero results are pruned.
    pub fn map_coefficients(&self, f: impl Fn(&TopSet, &Rational) -> Rational) -> Self {
        let coefficients = self
            .coefficients
            .iter()
            .filter_map(|(b, c)| {
                let v = f(b, c);
                (!v.is_zero()).then(|| (b.clone(), v))
            })
            .collect();
        YoungExpansion {
            n: self.n,
            k: self.k,
            coefficients,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n || self.k != other.k {
            return Err(Error::mismatch("expansions over different slices"));
        }
        let mut out = self.coefficients.clone();
        for (b, c) in &other.coefficients {
            let entry = out.entry(b.clone()).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                out.remove(b);
            }
        }
        Ok(YoungExpansion {
            n: self.n,
            k: self.k,
            coefficients: out,
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_coefficients(|_, v| v * c)
    }
}

/// Exact moments of a slice function, read off its expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Moments {
    pub mean: Rational,
    pub variance: Rational,
    pub l2: Rational,
}

/// Young–Fourier expansion: `f_hat(B) = <f, chi_B> / ||chi_B||^2` over all
/// top sets with `|B| <= k`. Exact inverse of [`synthesize`].
pub fn expand(f: &SliceFunction) -> YoungExpansion {
    let dom = f.domain();
    let measure = ExchangeableMeasure::uniform_slice(dom.n(), dom.k()).expect("valid slice");
    let size = Rational::from_integer(dom.size().into());
    let mut coefficients = BTreeMap::new();
    for b in enumerate_top_sets_up_to(dom.n(), dom.k()) {
        let table = chi_table(dom, &b);
        let dot: Rational = f
            .values()
            .iter()
            .zip(table.iter())
            .filter(|(_, c)| !c.is_zero())
            .map(|(v, c)| v * c)
            .sum();
        if dot.is_zero() {
            continue;
        }
        let norm = chi_norm_sq(&b, &measure).expect("norm on own slice");
        let coeff = dot / (&size * norm);
        coefficients.insert(b, coeff);
    }
    YoungExpansion {
        n: dom.n(),
        k: dom.k(),
        coefficients,
    }
}

/// Point-wise evaluation of `sum_B f_hat(B) chi_B` on the slice.
pub fn synthesize(e: &YoungExpansion) -> SliceFunction {
    let dom = domain(e.n, e.k).expect("expansion carries a valid slice");
    let mut values = vec![Rational::zero(); dom.size()];
    for (b, coeff) in &e.coefficients {
        let table = chi_table(&dom, b);
        for (v, c) in values.iter_mut().zip(table.iter()) {
            if !c.is_zero() {
                *v += coeff * c;
            }
        }
    }
    SliceFunction {
        domain: dom,
        values,
    }
}

/// Mean, variance and L2 norm from the coefficients:
/// `E[f] = f_hat(0)`, `E[f^2] = sum f_hat(B)^2 c_B ||chi_|B|||^2`,
/// and the variance drops the empty set from that sum.
pub fn moments(e: &YoungExpansion) -> Moments {
    let measure = ExchangeableMeasure::uniform_slice(e.n, e.k).expect("valid slice");
    let mean = e.coefficient(&TopSet::empty(e.n));
    let mut variance = Rational::zero();
    for (b, c) in &e.coefficients {
        if b.is_empty() {
            continue;
        }
        variance += c * c * c_coefficient(b) * chi_d_norm_sq(b.len(), &measure);
    }
    let l2 = &variance + &mean * &mean;
    Moments {
        mean,
        variance,
        l2,
    }
}

/// Averaging over all permutations of the first `m` coordinates, realized
/// on coefficients: exactly the terms with `B` disjoint from `[m]` survive.
///
/// `m = 1` is the identity (no top set contains index 1); `m = n` leaves
/// only the mean.
pub fn average_first_m(e: &YoungExpansion, m: usize) -> Result<YoungExpansion> {
    if m < 1 || m > e.n {
        return Err(Error::invalid(format!("m must be in 1..={}, got {m}", e.n)));
    }
    Ok(e.map_coefficients(|b, c| {
        if b.entries().first().is_some_and(|&b1| b1 <= m) {
            Rational::zero()
        } else {
            c.clone()
        }
    }))
}

/// Basis coordinates of a harmonic multilinear polynomial: the map
/// `B -> <P, chi_B> / ||chi_B||^2`, computed under the Bernoulli(1/2)
/// product measure (any exchangeable measure with nonzero norms gives the
/// same coordinates). Fails with the defect when `P` is not harmonic.
pub fn expand_polynomial(p: &MultilinearPolynomial) -> Result<BTreeMap<TopSet, Rational>> {
    let defect = p.harmonic_defect();
    if !defect.is_zero() {
        return Err(Error::NotHarmonic { defect });
    }
    let measure = ExchangeableMeasure::product_mu(Rational::new(1.into(), 2.into()))?;
    let mut out = BTreeMap::new();
    if p.is_zero() {
        return Ok(out);
    }
    let n = p.ambient();
    let max_d = p.degree().unwrap_or(0).min(n / 2);
    for b in enumerate_top_sets_up_to(n, max_d) {
        let dot = inner_product(p, &chi_top(&b), &measure)?;
        if dot.is_zero() {
            continue;
        }
        let norm = chi_norm_sq(&b, &measure)?;
        out.insert(b, dot / norm);
    }
    Ok(out)
}

/// Number of points of the `(n, k)` slice as a `usize`.
pub fn slice_size(n: usize, k: usize) -> usize {
    binomial(n, k as isize).to_usize().expect("slice size fits usize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::TopSet;
    use crate::poly::chi_top;
    use crate::rat;

    fn top(entries: &[usize], n: usize) -> TopSet {
        TopSet::new(entries.to_vec(), n).unwrap()
    }

    fn x1_on(n: usize, k: usize) -> SliceFunction {
        let p = MultilinearPolynomial::variable(n, 1).unwrap();
        SliceFunction::from_polynomial(&p, k).unwrap()
    }

    #[test]
    fn from_records_validates() {
        let recs = vec![
            (vec![1, 2], rat(1, 1)),
            (vec![1, 3], rat(0, 1)),
            (vec![1, 4], rat(0, 1)),
            (vec![2, 3], rat(0, 1)),
            (vec![2, 4], rat(0, 1)),
            (vec![3, 4], rat(0, 1)),
        ];
        assert!(SliceFunction::from_records(4, 2, recs.clone()).is_ok());
        assert!(SliceFunction::from_records(4, 2, recs[..5].to_vec()).is_err());
        let mut dup = recs.clone();
        dup[1] = (vec![1, 2], rat(2, 1));
        assert!(SliceFunction::from_records(4, 2, dup).is_err());
        let mut bad = recs;
        bad[0] = (vec![2, 1], rat(1, 1));
        assert!(SliceFunction::from_records(4, 2, bad).is_err());
    }

    #[test]
    fn expand_x1_on_4_2() {
        let e = expand(&x1_on(4, 2));
        assert_eq!(e.coefficient(&TopSet::empty(4)), rat(1, 2));
        assert_eq!(e.coefficient(&top(&[2], 4)), rat(1, 2));
        assert_eq!(e.coefficient(&top(&[3], 4)), rat(1, 6));
        assert_eq!(e.coefficient(&top(&[4], 4)), rat(1, 12));
        assert_eq!(e.coefficient(&top(&[2, 4], 4)), rat(0, 1));
        assert_eq!(e.coefficient(&top(&[3, 4], 4)), rat(0, 1));
        assert_eq!(e.coefficients().len(), 4);
    }

    #[test]
    fn expand_constant_and_basis_element() {
        let f = SliceFunction::constant(4, 2, rat(7, 3)).unwrap();
        let e = expand(&f);
        assert_eq!(e.coefficients().len(), 1);
        assert_eq!(e.coefficient(&TopSet::empty(4)), rat(7, 3));

        let b = top(&[2, 4], 4);
        let f = SliceFunction::from_polynomial(&chi_top(&b), 2).unwrap();
        let e = expand(&f);
        assert_eq!(e.coefficients().len(), 1);
        assert_eq!(e.coefficient(&b), rat(1, 1));
    }

    #[test]
    fn synthesize_inverts_expand() {
        let f = x1_on(4, 2);
        let back = synthesize(&expand(&f));
        assert_eq!(back, f);

        let zero = YoungExpansion::zero(5, 2).unwrap();
        assert_eq!(
            synthesize(&zero),
            SliceFunction::constant(5, 2, rat(0, 1)).unwrap()
        );

        let one = YoungExpansion::unit(4, 2, TopSet::empty(4)).unwrap();
        assert_eq!(
            synthesize(&one),
            SliceFunction::constant(4, 2, rat(1, 1)).unwrap()
        );
    }

    #[test]
    fn moments_examples() {
        let m = moments(&expand(&x1_on(4, 2)));
        assert_eq!(m.mean, rat(1, 2));
        assert_eq!(m.variance, rat(1, 4));
        assert_eq!(m.l2, rat(1, 2));

        let c = SliceFunction::constant(4, 2, rat(-3, 5)).unwrap();
        let m = moments(&expand(&c));
        assert_eq!(m.mean, rat(-3, 5));
        assert_eq!(m.variance, rat(0, 1));
        assert_eq!(m.l2, rat(9, 25));

        let m = moments(&expand(&x1_on(2, 1)));
        assert_eq!(m.variance, rat(1, 4));
    }

    #[test]
    fn moments_match_direct_computation() {
        let f = SliceFunction::from_lex_values(
            4,
            2,
            vec![rat(1, 2), rat(-1, 3), rat(2, 1), rat(0, 1), rat(5, 7), rat(-2, 5)],
        )
        .unwrap();
        let m = moments(&expand(&f));
        assert_eq!(m.mean, f.mean());
        assert_eq!(m.l2, f.norm_sq());
        assert_eq!(m.variance, f.norm_sq() - f.mean() * f.mean());
    }

    #[test]
    fn averaging_examples() {
        let e = expand(&x1_on(4, 2));
        assert_eq!(average_first_m(&e, 1).unwrap(), e);

        let full = average_first_m(&e, 4).unwrap();
        assert_eq!(full.coefficients().len(), 1);
        assert_eq!(full.coefficient(&TopSet::empty(4)), rat(1, 2));

        let b = top(&[2, 4], 4);
        let unit = YoungExpansion::unit(4, 2, b).unwrap();
        let averaged = average_first_m(&unit, 2).unwrap();
        assert!(averaged.coefficients().is_empty());

        assert!(average_first_m(&e, 0).is_err());
        assert!(average_first_m(&e, 5).is_err());
    }

    #[test]
    fn averaging_is_idempotent_and_nested() {
        let f = SliceFunction::from_lex_values(
            5,
            2,
            (0i64..10).map(|i| rat(i - 4, 3)).collect(),
        )
        .unwrap();
        let e = expand(&f);
        for m in 1..=5 {
            let once = average_first_m(&e, m).unwrap();
            assert_eq!(average_first_m(&once, m).unwrap(), once);
            for m2 in 1..=m {
                assert_eq!(average_first_m(&once, m2).unwrap(), once);
            }
        }
    }

    #[test]
    fn expand_polynomial_examples() {
        let b = top(&[2, 4], 6);
        let coeffs = expand_polynomial(&chi_top(&b)).unwrap();
        assert_eq!(coeffs.len(), 1);
        assert_eq!(coeffs[&b], rat(1, 1));

        // x1 - x3 = (1/2)(x1 - x2) + (1/2)(x1 + x2 - 2 x3)
        let p = MultilinearPolynomial::from_terms(
            4,
            [(vec![1], rat(1, 1)), (vec![3], rat(-1, 1))],
        )
        .unwrap();
        let coeffs = expand_polynomial(&p).unwrap();
        assert_eq!(coeffs.len(), 2);
        assert_eq!(coeffs[&top(&[2], 4)], rat(1, 2));
        assert_eq!(coeffs[&top(&[3], 4)], rat(1, 2));

        assert!(expand_polynomial(&MultilinearPolynomial::zero(4))
            .unwrap()
            .is_empty());

        let x1 = MultilinearPolynomial::variable(4, 1).unwrap();
        match expand_polynomial(&x1) {
            Err(Error::NotHarmonic { defect }) => assert!(!defect.is_zero()),
            other => panic!("expected NotHarmonic, got {other:?}"),
        }
    }

    #[test]
    fn expand_polynomial_reconstructs_symbolically() {
        let p = chi_top(&top(&[2], 5))
            .scale(&rat(3, 7))
            .add(&chi_top(&top(&[2, 4], 5)).scale(&rat(-2, 3)))
            .unwrap()
            .add(&chi_top(&top(&[5], 5)).scale(&rat(1, 6)))
            .unwrap();
        let coeffs = expand_polynomial(&p).unwrap();
        let mut rebuilt = MultilinearPolynomial::zero(5);
        for (b, c) in &coeffs {
            rebuilt = rebuilt.add(&chi_top(b).scale(c)).unwrap();
        }
        assert_eq!(rebuilt, p);
    }

    #[test]
    fn expansion_coordinates_are_measure_independent() {
        let p = chi_top(&top(&[2], 5))
            .scale(&rat(3, 7))
            .add(&chi_top(&top(&[2, 4], 5)).scale(&rat(-2, 3)))
            .unwrap();
        let mu = ExchangeableMeasure::product_mu(rat(1, 2)).unwrap();
        let nu = ExchangeableMeasure::product_nu(rat(1, 3)).unwrap();
        for b in enumerate_top_sets_up_to(5, 2) {
            let chi = chi_top(&b);
            let via_mu =
                inner_product(&p, &chi, &mu).unwrap() / chi_norm_sq(&b, &mu).unwrap();
            let via_nu =
                inner_product(&p, &chi, &nu).unwrap() / chi_norm_sq(&b, &nu).unwrap();
            assert_eq!(via_mu, via_nu, "B={:?}", b.entries());
        }
    }
}
