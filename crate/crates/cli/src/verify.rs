//! Self-verification suites behind `slice-harmonics verify`.
//!
//! Each suite re-derives a family of identities from scratch and prints one
//! tab-separated line per property: `ok` or `FAIL`, the suite, and the
//! property with its parameters. Exit code 1 when anything fails.
//!
//! These run the same exact checks as the library's test suite, scaled by
//! `--max-n` so they stay interactive.

use std::process::ExitCode;

use clap::ValueEnum;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slice_harmonics::combinatorics::{count_top_sets, enumerate_top_sets, enumerate_top_sets_up_to};
use slice_harmonics::expansion::{
    expand, slice_size, synthesize, SliceFunction, YoungExpansion,
};
use slice_harmonics::friedgut::{depends_only_on, junta_approximate};
use slice_harmonics::measures::{chi_norm_sq, inner_product, ExchangeableMeasure};
use slice_harmonics::operators::{
    adjacent_transposition_expansion, apply_transposition, influence_pair, influence_spectral,
    lambda_coefficient, scheme_apply, scheme_eigenvalues, tau_coefficient, total_influence_m,
    transposition_sum, IntersectionProfile,
};
use slice_harmonics::poly::chi_top;
use slice_harmonics::{rat, Rational};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Orthogonality,
    Norms,
    Eigen,
    Junta,
    #[default]
    All,
}

struct Outcome {
    passed: usize,
    failed: usize,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            passed: 0,
            failed: 0,
        }
    }

    fn record(&mut self, suite: &str, property: &str, ok: bool) {
        if ok {
            self.passed += 1;
            println!("ok\t{suite}\t{property}");
        } else {
            self.failed += 1;
            println!("FAIL\t{suite}\t{property}");
        }
    }
}

pub fn run(suite: Suite, max_n: usize) -> ExitCode {
    let mut outcome = Outcome::new();
    if matches!(suite, Suite::Orthogonality | Suite::All) {
        orthogonality_suite(&mut outcome, max_n);
    }
    if matches!(suite, Suite::Norms | Suite::All) {
        norms_suite(&mut outcome, max_n);
    }
    if matches!(suite, Suite::Eigen | Suite::All) {
        eigen_suite(&mut outcome, max_n);
    }
    if matches!(suite, Suite::Junta | Suite::All) {
        junta_suite(&mut outcome, max_n);
    }
    println!("passed\t{}\tfailed\t{}", outcome.passed, outcome.failed);
    if outcome.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn measure_grid(n: usize) -> Vec<(ExchangeableMeasure, usize, String)> {
    let mut out = Vec::new();
    for k in 1..=n / 2 {
        out.push((
            ExchangeableMeasure::uniform_slice(n, k).unwrap(),
            k,
            format!("slice({n},{k})"),
        ));
    }
    for p in [rat(1, 3), rat(1, 2), rat(2, 5)] {
        out.push((
            ExchangeableMeasure::product_mu(p.clone()).unwrap(),
            n / 2,
            format!("mu({p})"),
        ));
        out.push((
            ExchangeableMeasure::product_nu(p.clone()).unwrap(),
            n / 2,
            format!("nu({p})"),
        ));
    }
    out
}

fn orthogonality_suite(outcome: &mut Outcome, max_n: usize) {
    for n in 2..=max_n {
        let tops = enumerate_top_sets_up_to(n, n / 2);
        let polys: Vec<_> = tops.iter().map(chi_top).collect();
        for (measure, max_d, label) in &measure_grid(n) {
            let mut ok = true;
            for i in 0..tops.len() {
                for j in (i + 1)..tops.len() {
                    if tops[i].len() > *max_d || tops[j].len() > *max_d {
                        continue;
                    }
                    let value = inner_product(&polys[i], &polys[j], measure).unwrap();
                    if !value.is_zero() {
                        ok = false;
                    }
                }
            }
            outcome.record("orthogonality", &format!("pairwise zero under {label}"), ok);
        }
    }
}

fn norms_suite(outcome: &mut Outcome, max_n: usize) {
    for n in 2..=max_n {
        let tops = enumerate_top_sets_up_to(n, n / 2);
        for (measure, _, label) in &measure_grid(n) {
            let ok = tops.iter().all(|b| {
                let chi = chi_top(b);
                inner_product(&chi, &chi, measure).unwrap() == chi_norm_sq(b, measure).unwrap()
            });
            outcome.record("norms", &format!("closed form under {label}"), ok);
        }
    }
    // enumeration versus the counting formula
    let ok = (0..=max_n.max(8)).all(|n| {
        (0..=n / 2).all(|d| {
            num_bigint::BigInt::from(enumerate_top_sets(n, d).len()) == count_top_sets(n, d)
        })
    });
    outcome.record("norms", "top-set enumeration matches counting formula", ok);
}

fn random_function(n: usize, k: usize, rng: &mut impl Rng) -> SliceFunction {
    let values = (0..slice_size(n, k))
        .map(|_| rat(rng.random_range(-9..=9), rng.random_range(1..=6)))
        .collect();
    SliceFunction::from_lex_values(n, k, values).unwrap()
}

fn eigen_suite(outcome: &mut Outcome, max_n: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC11);
    for n in 2..=max_n {
        for k in 1..=n / 2 {
            let tops = enumerate_top_sets_up_to(n, k);

            let mut ok = true;
            for b in &tops {
                let unit = YoungExpansion::unit(n, k, b.clone()).unwrap();
                let f = synthesize(&unit);
                for m in 1..=n {
                    let summed = expand(&transposition_sum(&f, m).unwrap());
                    if summed != unit.scale(&rat(lambda_coefficient(b, m), 1)) {
                        ok = false;
                    }
                }
            }
            outcome.record(
                "eigen",
                &format!("transposition-sum eigenvalues on ({n},{k})"),
                ok,
            );

            let ok = tops.iter().all(|b| {
                (2..=n).all(|m| {
                    tau_coefficient(b, m)
                        == (2..=m).map(|j| lambda_coefficient(b, j)).sum::<i64>()
                })
            });
            outcome.record("eigen", &format!("tau prefix sums on ({n},{k})"), ok);

            let f = random_function(n, k, &mut rng);
            let e = expand(&f);
            let ok = (1..n).all(|m| {
                synthesize(&adjacent_transposition_expansion(&e, m).unwrap())
                    == apply_transposition(&f, m, m + 1).unwrap()
            });
            outcome.record(
                "eigen",
                &format!("adjacent rewrite vs direct swap on ({n},{k})"),
                ok,
            );

            let ok = (2..=n).all(|m| {
                total_influence_m(&f, m).unwrap() == influence_spectral(&e, m).unwrap()
            });
            outcome.record(
                "eigen",
                &format!("influence combinatorial vs spectral on ({n},{k})"),
                ok,
            );

            // profile matrices act as scalars on each degree subspace
            let weights: Vec<Rational> = (0..=k)
                .map(|_| rat(rng.random_range(-5..=5), rng.random_range(1..=3)))
                .collect();
            let profile = IntersectionProfile::new(n, k, weights).unwrap();
            let eigs = scheme_eigenvalues(&profile).unwrap();
            let ok = tops.iter().all(|b| {
                let f = synthesize(&YoungExpansion::unit(n, k, b.clone()).unwrap());
                scheme_apply(&profile, &f).unwrap() == f.scale(&eigs[b.len()])
            });
            outcome.record(
                "eigen",
                &format!("profile eigenvectors on ({n},{k})"),
                ok,
            );
        }
    }

    let johnson = scheme_eigenvalues(&IntersectionProfile::johnson(4, 2).unwrap()).unwrap();
    outcome.record(
        "eigen",
        "Johnson J(4,2) spectrum is (4, 0, -2)",
        johnson == vec![rat(4, 1), rat(0, 1), rat(-2, 1)],
    );
    let kneser = scheme_eigenvalues(&IntersectionProfile::kneser(5, 2).unwrap()).unwrap();
    outcome.record(
        "eigen",
        "Kneser K(5,2) spectrum is (3, -2, 1)",
        kneser == vec![rat(3, 1), rat(-2, 1), rat(1, 1)],
    );
}

fn junta_suite(outcome: &mut Outcome, max_n: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC12);
    for (n, k) in [(4, 2), (6, 2), (6, 3), (7, 3)] {
        if n > max_n.max(4) {
            continue;
        }
        let mut ok = true;
        for _ in 0..10 {
            // plant a junta on up to 3 coordinates
            let r = rng.random_range(0..=3usize.min(k));
            let coords: Vec<usize> = (1..=r).collect();
            let values: Vec<Rational> = {
                let dom = slice_harmonics::expansion::domain(n, k).unwrap();
                let mut pattern = std::collections::BTreeMap::new();
                dom.subsets()
                    .iter()
                    .map(|s| {
                        let hit: Vec<usize> = s
                            .iter()
                            .copied()
                            .filter(|i| coords.contains(i))
                            .collect();
                        pattern
                            .entry(hit)
                            .or_insert_with(|| rat(i64::from(rng.random_range(0..=1)), 1))
                            .clone()
                    })
                    .collect()
            };
            let f = SliceFunction::from_lex_values(n, k, values).unwrap();
            let mut tau = rat(1, 2);
            let mut smallest: Option<Rational> = None;
            for i in 1..=n {
                for j in (i + 1)..=n {
                    let v = influence_pair(&f, i, j).unwrap();
                    if !v.is_zero() && smallest.as_ref().is_none_or(|s| v < *s) {
                        smallest = Some(v);
                    }
                }
            }
            if let Some(s) = smallest {
                tau = s / rat(2, 1);
            }
            let report = junta_approximate(&f, &tau).unwrap();
            if !report.distance.is_zero()
                || report.junta != f
                || !depends_only_on(&f, &report.important_set).unwrap()
                || report.distance > report.rounding_bound
            {
                ok = false;
            }
        }
        outcome.record(
            "junta",
            &format!("planted juntas recovered losslessly on ({n},{k})"),
            ok,
        );
    }
}
