use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{Check, VerifyConfig, Verifier};
use crate::error::{Error, Result};
use crate::group::{is_real, monomial_weight, shortest_orbit_length, ActionSpec};
use crate::poly::{default_names, LocalOrder, Monomial, Polynomial};
use crate::standard_basis::StandardBasisConfig;

pub const MAX_SWEEP_VARS: usize = 3;
pub const MAX_SWEEP_DEGREE: u32 = 7;
/// Default limit on the number of germs one sweep may generate.
pub const DEFAULT_SWEEP_CAP: usize = 200_000;
/// Coefficient bound for standard bases inside a sweep. Germs that reach it,
/// or the degree bound, are counted as undecided rather than aborting the
/// sweep.
pub const SWEEP_COEFFICIENT_BITS: u64 = 1024;
const TIGHT_LISTED: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SweepMode {
    /// Every support of invariant monomials, coefficients `1` or, when
    /// `signed`, each of `1` and `-1`.
    Exhaustive { signed: bool },
    /// `samples` germs with coefficients drawn from `[-3, 3] \ {0}`.
    Randomized { seed: u64, samples: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub dmax: u32,
    pub mode: SweepMode,
    pub max_germs: usize,
    /// Upper bound on the number of terms of a generated germ.
    pub max_terms: Option<usize>,
    pub verify: VerifyConfig,
}

impl SweepConfig {
    pub fn new(dmax: u32, mode: SweepMode) -> Self {
        SweepConfig {
            dmax,
            mode,
            max_germs: DEFAULT_SWEEP_CAP,
            max_terms: None,
            verify: VerifyConfig {
                standard_basis: StandardBasisConfig {
                    coefficient_bits: SWEEP_COEFFICIENT_BITS,
                    ..Default::default()
                },
                ..VerifyConfig::default()
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub action: ActionSpec,
    pub l_tau: u64,
    pub dmax: u32,
    pub mode: SweepMode,
    pub max_terms: Option<usize>,
    pub invariant_monomials: Vec<String>,
    pub generated: usize,
    pub tested: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped_non_isolated: usize,
    /// Germs whose standard basis hit the degree or coefficient bound, so
    /// isolation was not decided.
    pub skipped_inconclusive: usize,
    /// The first undecided germs, in enumeration order.
    pub inconclusive: Vec<String>,
    /// Least `mu - (l_tau - 1)` over tested germs.
    pub min_slack: Option<i64>,
    /// Least `mu^2 - ((mu - 1) l_tau + 1)` over tested germs.
    pub min_quadratic_slack: Option<i64>,
    pub min_mu: Option<usize>,
    /// The first germs attaining `min_slack`, in enumeration order.
    pub tight: Vec<String>,
    pub failures: Vec<String>,
    pub real_action: bool,
    /// Tested germs with `mu < l_tau + 1`; only meaningful for real actions.
    pub below_l_plus_one: usize,
}

impl SweepSummary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Invariant monomials of degree `3..=dmax`, in descending local order.
pub fn invariant_monomials(a: &ActionSpec, dmax: u32) -> Vec<Monomial> {
    let n = a.nvars();
    let mut out = Vec::new();
    let mut e = vec![0u32; n];
    fn rec(i: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == e.len() {
            out.push(Monomial::new(e.clone()));
            return;
        }
        for k in 0..=left {
            e[i] = k;
            rec(i + 1, left - k, e, out);
        }
        e[i] = 0;
    }
    rec(0, dmax, &mut e, &mut out);
    out.retain(|m| {
        m.degree() >= 3
            && monomial_weight(m, a).is_ok_and(|w| a.group().is_trivial_char(&w))
    });
    let order = LocalOrder::new(n);
    out.sort_by(|x, y| order.cmp(y, x));
    out
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

/// Calls `visit` on every `k`-subset of `0..n` in lexicographic order.
fn for_each_subset(n: usize, k: usize, visit: &mut impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return;
    }
    loop {
        visit(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn germ(n: usize, terms: impl IntoIterator<Item = (Monomial, i64)>) -> Polynomial {
    Polynomial::from_terms(
        n,
        terms
            .into_iter()
            .map(|(m, c)| (m, BigRational::from_integer(BigInt::from(c)))),
    )
}

fn exhaustive(monos: &[Monomial], n: usize, signed: bool, max_terms: usize, cap: usize) -> Result<Vec<Polynomial>> {
    let m = monos.len();
    let top = max_terms.min(m);
    let total: u128 = (1..=top)
        .map(|s| binomial(m, s).saturating_mul(if signed { 1u128 << s.min(100) } else { 1 }))
        .fold(0u128, u128::saturating_add);
    if total > cap as u128 {
        return Err(Error::CapExceeded(format!(
            "exhaustive sweep would generate {total} germs, cap is {cap}"
        )));
    }
    let mut out = Vec::with_capacity(total as usize);
    for s in 1..=top {
        for_each_subset(m, s, &mut |support| {
            let patterns = if signed { 1u64 << s } else { 1 };
            for signs in 0..patterns {
                out.push(germ(
                    n,
                    support.iter().enumerate().map(|(j, &i)| {
                        let c = if signs >> j & 1 == 1 { -1 } else { 1 };
                        (monos[i].clone(), c)
                    }),
                ));
            }
        });
    }
    Ok(out)
}

fn randomized(monos: &[Monomial], n: usize, seed: u64, samples: usize, max_terms: Option<usize>) -> Vec<Polynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeff = |rng: &mut ChaCha8Rng| {
        let c: i64 = rng.random_range(1..=3);
        if rng.random_bool(0.5) {
            -c
        } else {
            c
        }
    };
    let mut out = Vec::with_capacity(samples);
    if monos.is_empty() {
        return out;
    }
    while out.len() < samples {
        let support: Vec<usize> = match max_terms {
            Some(t) => {
                let size = rng.random_range(1..=t.min(monos.len()).max(1));
                let mut s = sample(&mut rng, monos.len(), size).into_vec();
                s.sort_unstable();
                s
            }
            None => (0..monos.len()).filter(|_| rng.random_bool(0.5)).collect(),
        };
        if support.is_empty() {
            continue;
        }
        let terms: Vec<(Monomial, i64)> = support
            .iter()
            .map(|&i| (monos[i].clone(), coeff(&mut rng)))
            .collect();
        out.push(germ(n, terms));
    }
    out
}

/// Generates invariant germs with zero 2-jet and runs the main and
/// quadratic-step checks on each isolated one.
///
/// Germs are checked in parallel; the summary depends only on the
/// enumeration order.
pub fn enumerate_and_verify(a: &ActionSpec, config: &SweepConfig) -> Result<SweepSummary> {
    let n = a.nvars();
    if n == 0 || n > MAX_SWEEP_VARS {
        return Err(Error::CapExceeded(format!(
            "sweeps take 1 to {MAX_SWEEP_VARS} variables, found {n}"
        )));
    }
    if config.dmax > MAX_SWEEP_DEGREE {
        return Err(Error::CapExceeded(format!(
            "sweep degree {} exceeds {MAX_SWEEP_DEGREE}",
            config.dmax
        )));
    }
    let l_tau = shortest_orbit_length(a)?;
    let monos = invariant_monomials(a, config.dmax);
    let germs = match config.mode {
        SweepMode::Exhaustive { signed } => exhaustive(
            &monos,
            n,
            signed,
            config.max_terms.unwrap_or(usize::MAX),
            config.max_germs,
        )?,
        SweepMode::Randomized { seed, samples } => {
            if samples > config.max_germs {
                return Err(Error::CapExceeded(format!(
                    "{samples} samples exceed the cap {}",
                    config.max_germs
                )));
            }
            randomized(&monos, n, seed, samples, config.max_terms)
        }
    };

    let verifier = Verifier::new(config.verify.clone());
    let results: Vec<Result<Option<(usize, Vec<Check>)>>> = germs
        .par_iter()
        .map(|f| verifier.main_and_quadratic(f, a))
        .collect();

    let names = config
        .verify
        .variables
        .clone()
        .filter(|v| v.len() == n)
        .unwrap_or_else(|| default_names(n));
    let l = l_tau as i64;
    let mut summary = SweepSummary {
        action: a.clone(),
        l_tau,
        dmax: config.dmax,
        mode: config.mode,
        max_terms: config.max_terms,
        invariant_monomials: monos.iter().map(|m| m.format(&names)).collect(),
        generated: germs.len(),
        tested: 0,
        passed: 0,
        failed: 0,
        skipped_non_isolated: 0,
        skipped_inconclusive: 0,
        inconclusive: Vec::new(),
        min_slack: None,
        min_quadratic_slack: None,
        min_mu: None,
        tight: Vec::new(),
        failures: Vec::new(),
        real_action: is_real(a),
        below_l_plus_one: 0,
    };
    let mut slacks = Vec::with_capacity(germs.len());
    for (f, r) in germs.iter().zip(results) {
        let r = match r {
            Err(Error::BoundExceeded { .. } | Error::CoefficientBoundExceeded { .. }) => {
                summary.skipped_inconclusive += 1;
                if summary.inconclusive.len() < TIGHT_LISTED {
                    summary.inconclusive.push(f.format(&names));
                }
                slacks.push(None);
                continue;
            }
            r => r?,
        };
        let Some((mu, checks)) = r else {
            summary.skipped_non_isolated += 1;
            slacks.push(None);
            continue;
        };
        summary.tested += 1;
        if checks.iter().all(Check::passed) {
            summary.passed += 1;
        } else {
            summary.failed += 1;
            summary.failures.push(f.format(&names));
        }
        let mu_i = mu as i64;
        let slack = mu_i - (l - 1);
        let quad = mu_i * mu_i - ((mu_i - 1) * l + 1);
        summary.min_slack = Some(summary.min_slack.map_or(slack, |s| s.min(slack)));
        summary.min_quadratic_slack = Some(summary.min_quadratic_slack.map_or(quad, |s| s.min(quad)));
        summary.min_mu = Some(summary.min_mu.map_or(mu, |m| m.min(mu)));
        if mu_i < l + 1 {
            summary.below_l_plus_one += 1;
        }
        slacks.push(Some(slack));
    }
    if let Some(min) = summary.min_slack {
        summary.tight = germs
            .iter()
            .zip(&slacks)
            .filter(|(_, s)| **s == Some(min))
            .take(TIGHT_LISTED)
            .map(|(f, _)| f.format(&names))
            .collect();
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::AbelianGroup;

    fn action(orders: &[u32], rows: &[&[i64]]) -> ActionSpec {
        let g = AbelianGroup::new(orders.to_vec()).unwrap();
        ActionSpec::from_rows(g, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn invariant_monomials_z3() {
        let names = default_names(2);
        let got: Vec<String> = invariant_monomials(&action(&[3], &[&[1], &[2]]), 4)
            .iter()
            .map(|m| m.format(&names))
            .collect();
        assert_eq!(got, ["x^3", "y^3", "x^2*y^2"]);
    }

    #[test]
    fn subsets_in_order() {
        let mut seen = Vec::new();
        for_each_subset(4, 2, &mut |s| seen.push(s.to_vec()));
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], [0, 1]);
        assert_eq!(seen[5], [2, 3]);
        assert_eq!(binomial(50, 3), 19600);
    }

    #[test]
    fn z3_exhaustive() {
        let a = action(&[3], &[&[1], &[2]]);
        let s = enumerate_and_verify(&a, &SweepConfig::new(6, SweepMode::Exhaustive { signed: false })).unwrap();
        assert_eq!(s.failed, 0);
        assert!(s.tested > 0);
        assert_eq!(s.generated, s.tested + s.skipped_non_isolated + s.skipped_inconclusive);
        assert_eq!(s.l_tau, 3);
        assert!(s.min_slack.unwrap() >= 0);
    }

    #[test]
    fn klein_four_and_z4() {
        let a = action(&[2, 2], &[&[1, 0], &[0, 1]]);
        let s = enumerate_and_verify(&a, &SweepConfig::new(5, SweepMode::Exhaustive { signed: true })).unwrap();
        assert_eq!((s.failed, s.l_tau), (0, 2));
        let a = action(&[4], &[&[1], &[2]]);
        let s = enumerate_and_verify(&a, &SweepConfig::new(6, SweepMode::Exhaustive { signed: false })).unwrap();
        assert_eq!((s.failed, s.l_tau), (0, 2));
    }

    #[test]
    fn randomized_is_seeded() {
        let a = action(&[5], &[&[1], &[4]]);
        let cfg = SweepConfig::new(6, SweepMode::Randomized { seed: 7, samples: 50 });
        let s1 = enumerate_and_verify(&a, &cfg).unwrap();
        let s2 = enumerate_and_verify(&a, &cfg).unwrap();
        assert_eq!(s1, s2);
        assert_eq!(s1.generated, 50);
        assert_eq!(s1.failed, 0);
    }

    #[test]
    fn caps() {
        let a = action(&[2], &[&[1], &[1], &[1], &[1]]);
        assert!(matches!(
            enumerate_and_verify(&a, &SweepConfig::new(4, SweepMode::Exhaustive { signed: false })),
            Err(Error::CapExceeded(_))
        ));
        let a = action(&[2], &[&[1], &[1]]);
        assert!(matches!(
            enumerate_and_verify(&a, &SweepConfig::new(8, SweepMode::Exhaustive { signed: false })),
            Err(Error::CapExceeded(_))
        ));
        let mut cfg = SweepConfig::new(7, SweepMode::Exhaustive { signed: true });
        cfg.max_germs = 10;
        assert!(matches!(enumerate_and_verify(&a, &cfg), Err(Error::CapExceeded(_))));
        assert_eq!(
            enumerate_and_verify(&ActionSpec::trivial(2), &SweepConfig::new(4, SweepMode::Exhaustive { signed: false })),
            Err(Error::TrivialAction)
        );
    }
}
