//! Exchangeable measures as exact moment oracles.
//!
//! A measure here is anything that can report the exact expectation of a
//! monomial; all inner products reduce to such moments. Three families are
//! provided:
//!
//! * `UniformSlice(n, k)` — uniform over the k-subsets of `[n]`, with
//!   coordinates read as 0/1 indicators;
//! * `ProductMu(p)` — i.i.d. Bernoulli(p) coordinates in {0, 1};
//! * `ProductNu(p)` — the centered version, `x_i` in {-p, 1-p}.
//!
//! All three are invariant under permuting coordinates, which is exactly
//! what makes the `chi_B` family orthogonal under each of them.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::{c_coefficient, falling, TopSet};
use crate::error::{Error, Result};
use crate::poly::{ExponentMonomial, MultilinearPolynomial};
use crate::Rational;

#[derive(Debug, Clone, PartialEq)]
pub enum ExchangeableMeasure {
    UniformSlice { n: usize, k: usize },
    ProductMu { p: Rational },
    ProductNu { p: Rational },
}

impl ExchangeableMeasure {
    pub fn uniform_slice(n: usize, k: usize) -> Result<Self> {
        if k < 1 || 2 * k > n {
            return Err(Error::invalid(format!(
                "slice measure needs 1 <= k <= n/2, got n={n} k={k}"
            )));
        }
        Ok(ExchangeableMeasure::UniformSlice { n, k })
    }

    pub fn product_mu(p: Rational) -> Result<Self> {
        check_probability(&p)?;
        Ok(ExchangeableMeasure::ProductMu { p })
    }

    pub fn product_nu(p: Rational) -> Result<Self> {
        check_probability(&p)?;
        Ok(ExchangeableMeasure::ProductNu { p })
    }

    /// Exact expectation of an exponent monomial.
    ///
    /// * slice: exponents collapse (coordinates are 0/1), so the moment is
    ///   `k^(r) / n^(r)` falling-factorial style, with `r` the number of
    ///   distinct variables;
    /// * mu_p: `p^r` for the same reason;
    /// * nu_p: product over variables of the central Bernoulli moment
    ///   `(1-p)(-p)^e + p(1-p)^e`, which vanishes whenever some `e = 1`.
    pub fn monomial_moment(&self, m: &ExponentMonomial) -> Result<Rational> {
        match self {
            ExchangeableMeasure::UniformSlice { n, k } => {
                if let Some(max) = m.max_index() {
                    if max > *n {
                        return Err(Error::invalid(format!(
                            "monomial mentions x{max} but the slice has n={n}"
                        )));
                    }
                }
                let r = m.support_size();
                Ok(Rational::new(falling(*k, r), falling(*n, r)))
            }
            ExchangeableMeasure::ProductMu { p } => {
                let mut out = Rational::one();
                for _ in 0..m.support_size() {
                    out *= p;
                }
                Ok(out)
            }
            ExchangeableMeasure::ProductNu { p } => {
                let mut out = Rational::one();
                for &(_, e) in m.pairs() {
                    out *= nu_central_moment(p, e);
                    if out.is_zero() {
                        break;
                    }
                }
                Ok(out)
            }
        }
    }

    /// Ambient coordinate count, when the measure pins one down.
    pub fn ambient(&self) -> Option<usize> {
        match self {
            ExchangeableMeasure::UniformSlice { n, .. } => Some(*n),
            _ => None,
        }
    }
}

fn check_probability(p: &Rational) -> Result<()> {
    if p < &Rational::zero() || p > &Rational::one() {
        return Err(Error::invalid(format!("p = {p} is not in [0, 1]")));
    }
    Ok(())
}

/// `E[x^e]` for x in {-p, 1-p} with `Pr[x = 1-p] = p`.
fn nu_central_moment(p: &Rational, e: u32) -> Rational {
    let q = Rational::one() - p;
    let mut neg = -p.clone(); // (-p)^e accumulator
    let mut pos = q.clone(); // (1-p)^e accumulator
    for _ in 1..e {
        neg *= -p;
        pos *= &q;
    }
    &q * neg + p * pos
}

/// `<f, g> = E[f g]` for multilinear polynomials, via the formal product
/// and the moment oracle.
pub fn inner_product(
    f: &MultilinearPolynomial,
    g: &MultilinearPolynomial,
    measure: &ExchangeableMeasure,
) -> Result<Rational> {
    if f.ambient() != g.ambient() {
        return Err(Error::mismatch(format!(
            "polynomials over [{}] and [{}]",
            f.ambient(),
            g.ambient()
        )));
    }
    if let Some(n) = measure.ambient() {
        if f.ambient() != n {
            return Err(Error::mismatch(format!(
                "polynomial over [{}] paired with a slice measure over [{}]",
                f.ambient(),
                n
            )));
        }
    }
    let mut total = Rational::zero();
    for (m, c) in f.multiply_to_exponents(g)? {
        let moment = measure.monomial_moment(&m)?;
        if !moment.is_zero() {
            total += c * moment;
        }
    }
    Ok(total)
}

/// Squared norm of the canonical degree-`d` element `chi_d`.
///
/// Closed forms: `2^d k^(d) (n-k)^(d) / n^(2d)` on the slice (falling
/// factorials), `(2 p (1-p))^d` under both product measures.
pub fn chi_d_norm_sq(d: usize, measure: &ExchangeableMeasure) -> Rational {
    match measure {
        ExchangeableMeasure::UniformSlice { n, k } => {
            if d > *k {
                // chi_d vanishes as a function on the slice
                return Rational::zero();
            }
            let num = BigInt::from(2).pow(d as u32) * falling(*k, d) * falling(*n - *k, d);
            let den = falling(*n, 2 * d);
            Rational::new(num, den)
        }
        ExchangeableMeasure::ProductMu { p } | ExchangeableMeasure::ProductNu { p } => {
            let base = Rational::from_integer(2.into()) * p * (Rational::one() - p);
            let mut out = Rational::one();
            for _ in 0..d {
                out *= &base;
            }
            out
        }
    }
}

/// Squared norm of `chi_B`: `c_B * ||chi_d||^2` with `d = |B|`, valid for
/// any exchangeable measure. On a slice this vanishes exactly when
/// `|B| > k`.
pub fn chi_norm_sq(b: &TopSet, measure: &ExchangeableMeasure) -> Result<Rational> {
    if let Some(n) = measure.ambient() {
        if b.ambient() != n {
            return Err(Error::mismatch(format!(
                "top set over [{}] paired with a slice measure over [{}]",
                b.ambient(),
                n
            )));
        }
    }
    Ok(c_coefficient(b) * chi_d_norm_sq(b.len(), measure))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::enumerate_top_sets_up_to;
    use crate::poly::{chi_top, MultilinearPolynomial};
    use crate::rat;
    use itertools::Itertools;

    fn slice(n: usize, k: usize) -> ExchangeableMeasure {
        ExchangeableMeasure::uniform_slice(n, k).unwrap()
    }

    fn mono(pairs: &[(usize, u32)]) -> ExponentMonomial {
        ExponentMonomial::new(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn slice_moment_examples() {
        let m = slice(4, 2);
        assert_eq!(m.monomial_moment(&mono(&[(1, 1)])).unwrap(), rat(1, 2));
        // exponents collapse on 0/1 coordinates
        assert_eq!(m.monomial_moment(&mono(&[(1, 2)])).unwrap(), rat(1, 2));
        assert_eq!(
            m.monomial_moment(&mono(&[(1, 1), (2, 1)])).unwrap(),
            rat(1, 6)
        );
        // more distinct variables than ones in the slice
        assert_eq!(
            m.monomial_moment(&mono(&[(1, 1), (2, 1), (3, 1)])).unwrap(),
            rat(0, 1)
        );
        assert!(m.monomial_moment(&mono(&[(5, 1)])).is_err());
    }

    #[test]
    fn slice_moment_matches_direct_summation() {
        // E[x1] over the 6 subsets of (4,2): 3 of them contain index 1
        let total: i64 = (1..=4u32)
            .combinations(2)
            .map(|s| if s.contains(&1) { 1 } else { 0 })
            .sum();
        assert_eq!(rat(total, 6), rat(1, 2));
        let m = slice(4, 2);
        assert_eq!(m.monomial_moment(&mono(&[(1, 1)])).unwrap(), rat(total, 6));
    }

    #[test]
    fn product_moment_examples() {
        let nu = ExchangeableMeasure::product_nu(rat(1, 2)).unwrap();
        assert_eq!(nu.monomial_moment(&mono(&[(1, 1)])).unwrap(), rat(0, 1));
        assert_eq!(nu.monomial_moment(&mono(&[(1, 2)])).unwrap(), rat(1, 4));

        let nu = ExchangeableMeasure::product_nu(rat(1, 3)).unwrap();
        // variance p(1-p) = 2/9
        assert_eq!(nu.monomial_moment(&mono(&[(1, 2)])).unwrap(), rat(2, 9));
        // third central moment: (1-p)(-p)^3 + p(1-p)^3
        assert_eq!(
            nu.monomial_moment(&mono(&[(1, 3)])).unwrap(),
            rat(2, 3) * rat(-1, 27) + rat(1, 3) * rat(8, 27)
        );

        let mu = ExchangeableMeasure::product_mu(rat(1, 3)).unwrap();
        assert_eq!(
            mu.monomial_moment(&mono(&[(1, 1), (2, 1)])).unwrap(),
            rat(1, 9)
        );
        assert_eq!(mu.monomial_moment(&mono(&[(1, 2)])).unwrap(), rat(1, 3));
    }

    #[test]
    fn measure_validation() {
        assert!(ExchangeableMeasure::uniform_slice(4, 3).is_err());
        assert!(ExchangeableMeasure::uniform_slice(4, 0).is_err());
        assert!(ExchangeableMeasure::product_mu(rat(3, 2)).is_err());
        assert!(ExchangeableMeasure::product_nu(rat(-1, 2)).is_err());
    }

    #[test]
    fn inner_product_examples() {
        let m = slice(4, 2);
        let b24 = chi_top(&TopSet::new(vec![2, 4], 4).unwrap());
        let b34 = chi_top(&TopSet::new(vec![3, 4], 4).unwrap());
        assert_eq!(inner_product(&b24, &b34, &m).unwrap(), rat(0, 1));

        let one = MultilinearPolynomial::constant(4, rat(1, 1));
        for measure in [
            slice(4, 2),
            ExchangeableMeasure::product_mu(rat(2, 5)).unwrap(),
            ExchangeableMeasure::product_nu(rat(2, 5)).unwrap(),
        ] {
            assert_eq!(inner_product(&one, &one, &measure).unwrap(), rat(1, 1));
        }

        let b3 = chi_top(&TopSet::new(vec![3], 4).unwrap());
        assert_eq!(inner_product(&b3, &b3, &m).unwrap(), rat(2, 1));
    }

    #[test]
    fn chi_norm_examples() {
        let m = slice(4, 2);
        let b2 = TopSet::new(vec![2], 4).unwrap();
        assert_eq!(chi_norm_sq(&b2, &m).unwrap(), rat(2, 3));
        let b34 = TopSet::new(vec![3, 4], 4).unwrap();
        assert_eq!(chi_norm_sq(&b34, &m).unwrap(), rat(2, 1));
        let empty = TopSet::empty(4);
        for measure in [
            slice(4, 2),
            ExchangeableMeasure::product_mu(rat(1, 3)).unwrap(),
            ExchangeableMeasure::product_nu(rat(1, 2)).unwrap(),
        ] {
            assert_eq!(chi_norm_sq(&empty, &measure).unwrap(), rat(1, 1));
        }
    }

    #[test]
    fn slice_norm_vanishes_iff_degree_exceeds_k() {
        for n in 2..=8 {
            for k in 1..=n / 2 {
                let m = slice(n, k);
                for b in enumerate_top_sets_up_to(n, n / 2) {
                    let norm = chi_norm_sq(&b, &m).unwrap();
                    assert_eq!(norm.is_zero(), b.len() > k, "B={:?}", b.entries());
                }
            }
        }
    }

    #[test]
    fn exchangeability_spot_check() {
        // relabeling the variables of a monomial leaves every moment fixed
        let perms: &[[usize; 4]] = &[[2, 1, 4, 3], [4, 3, 2, 1], [3, 1, 2, 4]];
        let monos = [
            mono(&[(1, 1), (2, 1)]),
            mono(&[(1, 2), (3, 1)]),
            mono(&[(2, 2), (4, 2)]),
        ];
        for measure in [
            slice(4, 2),
            ExchangeableMeasure::product_mu(rat(1, 3)).unwrap(),
            ExchangeableMeasure::product_nu(rat(2, 5)).unwrap(),
        ] {
            for m in &monos {
                let base = measure.monomial_moment(m).unwrap();
                for perm in perms {
                    let relabeled = ExponentMonomial::new(
                        m.pairs().iter().map(|&(i, e)| (perm[i - 1], e)),
                    )
                    .unwrap();
                    assert_eq!(measure.monomial_moment(&relabeled).unwrap(), base);
                }
            }
        }
    }

    #[test]
    fn norm_formula_matches_inner_product_small() {
        for n in 2..=6 {
            let measures = [
                ExchangeableMeasure::product_mu(rat(1, 3)).unwrap(),
                ExchangeableMeasure::product_nu(rat(1, 2)).unwrap(),
            ];
            for b in enumerate_top_sets_up_to(n, n / 2) {
                let chi = chi_top(&b);
                for m in &measures {
                    assert_eq!(
                        inner_product(&chi, &chi, m).unwrap(),
                        chi_norm_sq(&b, m).unwrap(),
                        "B={:?}",
                        b.entries()
                    );
                }
            }
        }
    }
}
