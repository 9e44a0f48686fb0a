//! Checks the orbit-length bounds on concrete germs and actions.
//!
//! Every check records its relation and both sides, so a report can be
//! re-evaluated without recomputing anything. A hypothesis that fails turns
//! the checks depending on it into skips naming that hypothesis; only
//! malformed input and exhausted caps are errors.

mod corpus;
mod report;
mod sweep;

pub use corpus::{corpus, load_corpus, CorpusAction, CorpusEntry};
pub use report::{
    Check, Computed, Hypotheses, Hypothesis, Outcome, Relation, Target, Value, VerificationReport,
};
pub use sweep::{
    enumerate_and_verify, invariant_monomials, SweepConfig, SweepMode, SweepSummary,
    DEFAULT_SWEEP_CAP, MAX_SWEEP_DEGREE, MAX_SWEEP_VARS, SWEEP_COEFFICIENT_BITS,
};

use crate::doubling::{diagonal_products, double_action, double_germ, doubled_names, tensor_basis};
use crate::equivariant::grade_basis;
use crate::error::{Error, Result};
use crate::group::{has_fixed_points_outside_origin, is_invariant, is_real, shortest_orbit_length, ActionSpec};
use crate::poly::{default_names, Monomial, Polynomial};
use crate::standard_basis::{monomial_basis_with, StandardBasisConfig};

use Hypothesis::*;

/// Largest `mu(f)` for which the doubled germ is computed.
pub const DEFAULT_DOUBLING_MU_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub standard_basis: StandardBasisConfig,
    pub doubling_mu_cap: usize,
    /// Names used when printing germs; defaults to [`default_names`].
    pub variables: Option<Vec<String>>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            standard_basis: StandardBasisConfig::default(),
            doubling_mu_cap: DEFAULT_DOUBLING_MU_CAP,
            variables: None,
        }
    }
}

/// Everything the individual checks need about one germ and action.
struct Analysis {
    hypotheses: Hypotheses,
    basis: Option<Vec<Monomial>>,
    mu: Option<usize>,
    l_tau: Option<u64>,
    nu: Option<usize>,
}

fn int(v: usize) -> Value {
    Value::Int(v as i64)
}

#[derive(Debug, Clone, Default)]
pub struct Verifier {
    config: VerifyConfig,
}

impl Verifier {
    pub fn new(config: VerifyConfig) -> Self {
        Verifier { config }
    }

    pub fn config(&self) -> &VerifyConfig {
        &self.config
    }

    fn names(&self, n: usize) -> Vec<String> {
        match &self.config.variables {
            Some(v) if v.len() == n => v.clone(),
            _ => default_names(n),
        }
    }

    /// `None` when the singularity is not isolated.
    fn basis(&self, f: &Polynomial) -> Result<Option<Vec<Monomial>>> {
        match monomial_basis_with(f, &self.config.standard_basis) {
            Ok(b) => Ok(Some(b)),
            Err(Error::NotIsolated) => Ok(None),
            Err(e) => Err(e),
        }
    }

    fn analyze(&self, f: &Polynomial, a: &ActionSpec) -> Result<Analysis> {
        if f.nvars() != a.nvars() {
            return Err(Error::DimensionMismatch {
                expected: a.nvars(),
                found: f.nvars(),
            });
        }
        let invariant = is_invariant(f, a)?;
        let basis = self.basis(f)?;
        let nontrivial_action = a.is_nontrivial();
        let l_tau = if nontrivial_action {
            Some(shortest_orbit_length(a)?)
        } else {
            None
        };
        let nu = match (&basis, invariant) {
            (Some(b), true) => Some(grade_basis(b, a)?.nu()),
            _ => None,
        };
        Ok(Analysis {
            hypotheses: Hypotheses {
                invariant,
                zero_2jet: f.jet(2).is_zero(),
                isolated: basis.is_some(),
                nontrivial_action,
                fixed_point_free: !has_fixed_points_outside_origin(a),
                real: is_real(a),
                reduced_isolated: None,
                restriction_isolated: None,
            },
            mu: basis.as_ref().map(Vec::len),
            basis,
            l_tau,
            nu,
        })
    }

    fn report(
        &self,
        target: Target,
        f: &Polynomial,
        a: &ActionSpec,
        names: Vec<String>,
        an: &Analysis,
        checks: Vec<Check>,
    ) -> VerificationReport {
        VerificationReport {
            target,
            variables: names.clone(),
            germ: (f.clone(), names),
            action: a.clone(),
            hypotheses: an.hypotheses,
            computed: Computed {
                mu: an.mu,
                l_tau: an.l_tau,
                nu: an.nu,
                ..Computed::default()
            },
            checks,
        }
    }

    fn main_check(an: &Analysis) -> Check {
        Check::new(
            "main",
            "mu >= l_tau - 1",
            Relation::Ge,
            &an.hypotheses,
            &[Invariant, Zero2Jet, Isolated, NontrivialAction],
            || (int(an.mu.unwrap()), Value::Int(an.l_tau.unwrap() as i64 - 1)),
        )
    }

    /// `mu(f) >= l(tau) - 1` for an invariant germ with zero 2-jet.
    pub fn main(&self, f: &Polynomial, a: &ActionSpec) -> Result<VerificationReport> {
        let an = self.analyze(f, a)?;
        let checks = vec![Self::main_check(&an)];
        Ok(self.report(Target::Main, f, a, self.names(f.nvars()), &an, checks))
    }

    /// The prime-order case, where `l(tau) = p`.
    pub fn chulkov(&self, f: &Polynomial, a: &ActionSpec) -> Result<VerificationReport> {
        let p = a.group().order();
        if !is_prime(p) {
            return Err(Error::NotPrimeOrder(p));
        }
        let an = self.analyze(f, a)?;
        let check = Check::new(
            "chulkov",
            "mu >= p - 1",
            Relation::Ge,
            &an.hypotheses,
            &[Invariant, Zero2Jet, Isolated, NontrivialAction],
            || (int(an.mu.unwrap()), Value::Int(p as i64 - 1)),
        );
        Ok(self.report(Target::Chulkov, f, a, self.names(f.nvars()), &an, vec![check]))
    }

    /// `mu(f) >= (nu(f) - 1) l(tau) + 1` for a real, fixed-point-free action.
    pub fn roberts(&self, f: &Polynomial, a: &ActionSpec) -> Result<VerificationReport> {
        let an = self.analyze(f, a)?;
        let check = Self::roberts_check(&an);
        Ok(self.report(Target::Roberts, f, a, self.names(f.nvars()), &an, vec![check]))
    }

    fn roberts_check(an: &Analysis) -> Check {
        Check::new(
            "roberts",
            "mu >= (nu - 1) * l_tau + 1",
            Relation::Ge,
            &an.hypotheses,
            &[Invariant, Isolated, NontrivialAction, FixedPointFree, Real],
            || {
                let nu = an.nu.unwrap() as i64;
                let l = an.l_tau.unwrap() as i64;
                (int(an.mu.unwrap()), Value::Int((nu - 1) * l + 1))
            },
        )
    }

    /// Roberts' inequality on the doubled pair `(f(x) + f(y), chi ⊕ chi^{-1})`.
    pub fn roberts_doubled(&self, f: &Polynomial, a: &ActionSpec) -> Result<VerificationReport> {
        let df = double_germ(f).doubled;
        let da = double_action(a).doubled;
        let an = self.analyze(&df, &da)?;
        let check = Self::roberts_check(&an);
        let names = doubled_names(&self.names(f.nvars()));
        Ok(self.report(Target::Roberts, &df, &da, names, &an, vec![check]))
    }

    /// The square law, the tensor basis, `nu(f ⊕ f) >= mu(f)` and its
    /// diagonal witness.
    pub fn doubling(&self, f: &Polynomial, a: &ActionSpec) -> Result<VerificationReport> {
        let an = self.analyze(f, a)?;
        if let Some(mu) = an.mu {
            if mu > self.config.doubling_mu_cap {
                return Err(Error::DoublingCapExceeded {
                    mu,
                    cap: self.config.doubling_mu_cap,
                });
            }
        }
        let names = self.names(f.nvars());
        let dnames = doubled_names(&names);
        let h = an.hypotheses;

        let mut mu_doubled = None;
        let mut nu_doubled = None;
        let mut doubled_basis = None;
        if let Some(basis) = &an.basis {
            let df = double_germ(f).doubled;
            let db = self.basis(&df)?;
            if let (Some(db), true) = (&db, h.invariant) {
                let da = double_action(a).doubled;
                nu_doubled = Some(grade_basis(db, &da)?.nu());
            }
            mu_doubled = db.as_ref().map(Vec::len);
            doubled_basis = Some((db, tensor_basis(basis)));
        }
        let set = |ms: &[Monomial]| {
            let mut v: Vec<String> = ms.iter().map(|m| m.format(&dnames)).collect();
            v.sort();
            Value::Set(v)
        };

        let mut checks = vec![
            Check::new(
                "square_law",
                "mu(f+f) = mu(f)^2",
                Relation::Eq,
                &h,
                &[Isolated],
                || {
                    let left = mu_doubled.map_or(Value::Missing, int);
                    (left, int(an.mu.unwrap().pow(2)))
                },
            ),
            Check::new(
                "tensor_basis",
                "basis(f+f) = {p_i(x) p_j(y)}",
                Relation::SetEq,
                &h,
                &[Isolated],
                || {
                    let (db, tensor) = doubled_basis.as_ref().unwrap();
                    let left = db.as_deref().map_or(Value::Missing, set);
                    (left, set(tensor))
                },
            ),
            Check::new(
                "nu_doubled_bound",
                "nu(f+f) >= mu(f)",
                Relation::Ge,
                &h,
                &[Invariant, Isolated],
                || (nu_doubled.map_or(Value::Missing, int), int(an.mu.unwrap())),
            ),
        ];
        checks.push(Check::new(
            "diagonal_witness",
            "#{i : weight(p_i(x) p_i(y)) = 0} = mu(f)",
            Relation::Eq,
            &h,
            &[Invariant, Isolated],
            || {
                let basis = an.basis.as_ref().unwrap();
                let da = double_action(a).doubled;
                let trivial = grade_basis(&diagonal_products(basis), &da)
                    .map(|g| g.nu())
                    .unwrap_or(0);
                (int(trivial), int(basis.len()))
            },
        ));

        let mut report = self.report(Target::Doubling, f, a, names, &an, checks);
        report.computed.mu_doubled = mu_doubled;
        report.computed.nu_doubled = nu_doubled;
        Ok(report)
    }

    /// `mu^2 >= (mu - 1) l + 1` and its consequence `mu = 1 or mu >= l - 1`.
    pub fn quadratic_step(&self, f: &Polynomial, a: &ActionSpec) -> Result<VerificationReport> {
        let an = self.analyze(f, a)?;
        let checks = Self::quadratic_checks(&an);
        Ok(self.report(Target::Quadratic, f, a, self.names(f.nvars()), &an, checks))
    }

    fn quadratic_checks(an: &Analysis) -> Vec<Check> {
        let required = [Invariant, Zero2Jet, Isolated, NontrivialAction];
        vec![
            Check::new(
                "quadratic_inequality",
                "mu^2 >= (mu - 1) * l_tau + 1",
                Relation::Ge,
                &an.hypotheses,
                &required,
                || {
                    let mu = an.mu.unwrap() as i64;
                    let l = an.l_tau.unwrap() as i64;
                    (Value::Int(mu * mu), Value::Int((mu - 1) * l + 1))
                },
            ),
            Check::new(
                "quadratic_root",
                "mu = 1 or mu >= l_tau - 1",
                Relation::OneOrGe,
                &an.hypotheses,
                &required,
                || (int(an.mu.unwrap()), Value::Int(an.l_tau.unwrap() as i64 - 1)),
            ),
        ]
    }

    /// Compares `f` with `f + sum x_i^2` over the fixed variables and with its
    /// restriction to the non-fixed coordinates.
    pub fn reduce_fixed(&self, f: &Polynomial, a: &ActionSpec) -> Result<VerificationReport> {
        let mut an = self.analyze(f, a)?;
        let fixed = a.fixed_variables();
        if fixed.is_empty() {
            return Err(Error::NoFixedCharacters);
        }
        let n = f.nvars();
        let free: Vec<usize> = (0..n).filter(|i| !fixed.contains(i)).collect();

        let mut reduced = f.clone();
        for &i in &fixed {
            reduced = &reduced + &Polynomial::var(n, i).pow(2);
        }
        let mu_reduced = self.basis(&reduced)?.map(|b| b.len());
        // On zero coordinates the restriction is the point, whose Jacobian
        // algebra is the ground field.
        let mu_restricted = if free.is_empty() {
            Some(1)
        } else {
            self.basis(&f.substitute_zero(&fixed).project(&free))?
                .map(|b| b.len())
        };
        an.hypotheses.reduced_isolated = Some(mu_reduced.is_some());
        an.hypotheses.restriction_isolated = Some(mu_restricted.is_some());

        let h = an.hypotheses;
        let checks = vec![
            Check::new(
                "reduction_monotone",
                "mu(f) >= mu(f~)",
                Relation::Ge,
                &h,
                &[Invariant, Zero2Jet, Isolated, ReducedIsolated],
                || (int(an.mu.unwrap()), int(mu_reduced.unwrap())),
            ),
            Check::new(
                "reduction_restriction",
                "mu(f~) = mu(f restricted to the moved coordinates)",
                Relation::Eq,
                &h,
                &[Invariant, Zero2Jet, Isolated, ReducedIsolated, RestrictionIsolated],
                || (int(mu_reduced.unwrap()), int(mu_restricted.unwrap())),
            ),
        ];
        let mut report = self.report(Target::Reduce, f, a, self.names(n), &an, checks);
        report.computed.mu_reduced = mu_reduced;
        report.computed.mu_restricted = mu_restricted;
        Ok(report)
    }

    /// Every applicable target, in a fixed order. Targets whose precondition
    /// is structurally absent (non-prime order, no fixed characters, `mu`
    /// above the doubling cap) are left out.
    pub fn all(&self, f: &Polynomial, a: &ActionSpec) -> Result<Vec<VerificationReport>> {
        let mut out = vec![self.main(f, a)?];
        match self.chulkov(f, a) {
            Ok(r) => out.push(r),
            Err(Error::NotPrimeOrder(_)) => {}
            Err(e) => return Err(e),
        }
        out.push(self.quadratic_step(f, a)?);
        match self.doubling(f, a) {
            Ok(r) => out.push(r),
            Err(Error::DoublingCapExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
        if out[0].computed.mu.is_some_and(|mu| mu <= self.config.doubling_mu_cap) {
            out.push(self.roberts_doubled(f, a)?);
        }
        match self.reduce_fixed(f, a) {
            Ok(r) => out.push(r),
            Err(Error::NoFixedCharacters) => {}
            Err(e) => return Err(e),
        }
        Ok(out)
    }

    /// Fast path for the sweep: `(mu, main check, quadratic checks)` or
    /// `None` when the germ is not isolated.
    pub(crate) fn main_and_quadratic(
        &self,
        f: &Polynomial,
        a: &ActionSpec,
    ) -> Result<Option<(usize, Vec<Check>)>> {
        let an = self.analyze(f, a)?;
        let Some(mu) = an.mu else {
            return Ok(None);
        };
        let mut checks = vec![Self::main_check(&an)];
        checks.extend(Self::quadratic_checks(&an));
        Ok(Some((mu, checks)))
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

pub fn verify_main(f: &Polynomial, a: &ActionSpec) -> Result<VerificationReport> {
    Verifier::default().main(f, a)
}

pub fn verify_chulkov(f: &Polynomial, a: &ActionSpec) -> Result<VerificationReport> {
    Verifier::default().chulkov(f, a)
}

pub fn verify_doubling(f: &Polynomial, a: &ActionSpec) -> Result<VerificationReport> {
    Verifier::default().doubling(f, a)
}

pub fn verify_roberts(f: &Polynomial, a: &ActionSpec) -> Result<VerificationReport> {
    Verifier::default().roberts(f, a)
}

pub fn verify_quadratic_step(f: &Polynomial, a: &ActionSpec) -> Result<VerificationReport> {
    Verifier::default().quadratic_step(f, a)
}

pub fn reduce_fixed(f: &Polynomial, a: &ActionSpec) -> Result<VerificationReport> {
    Verifier::default().reduce_fixed(f, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::AbelianGroup;
    use crate::poly::parse_polynomial;

    fn p(text: &str, vars: &[&str]) -> Polynomial {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        parse_polynomial(text, &names).unwrap()
    }

    fn action(orders: &[u32], rows: &[&[i64]]) -> ActionSpec {
        let g = AbelianGroup::new(orders.to_vec()).unwrap();
        ActionSpec::from_rows(g, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn sides(r: &VerificationReport, name: &str) -> (Value, Value, Outcome) {
        let c = r.check(name).unwrap();
        (c.left.clone(), c.right.clone(), c.outcome.clone())
    }

    #[test]
    fn main_examples() {
        let r = verify_main(&p("x^3 + y^3", &["x", "y"]), &action(&[3], &[&[1], &[2]])).unwrap();
        assert_eq!(sides(&r, "main"), (Value::Int(4), Value::Int(2), Outcome::Pass));
        assert_eq!(r.computed.l_tau, Some(3));

        let r = verify_main(&p("x^2 + y^2", &["x", "y"]), &action(&[2], &[&[1], &[1]])).unwrap();
        assert_eq!(
            r.check("main").unwrap().outcome,
            Outcome::Skipped { hypothesis: Zero2Jet }
        );

        let r = verify_main(&p("x^5 + y^5", &["x", "y"]), &action(&[5], &[&[1], &[4]])).unwrap();
        assert_eq!(sides(&r, "main"), (Value::Int(16), Value::Int(4), Outcome::Pass));
    }

    #[test]
    fn chulkov_examples() {
        let r = verify_chulkov(&p("x^3 + y^3", &["x", "y"]), &action(&[3], &[&[1], &[2]])).unwrap();
        assert_eq!(sides(&r, "chulkov"), (Value::Int(4), Value::Int(2), Outcome::Pass));
        let r = verify_chulkov(
            &p("x^4 + x^2*y^2 + y^4", &["x", "y"]),
            &action(&[2], &[&[1], &[1]]),
        )
        .unwrap();
        assert_eq!(sides(&r, "chulkov"), (Value::Int(9), Value::Int(1), Outcome::Pass));
        assert_eq!(
            verify_chulkov(&p("x^4", &["x"]), &action(&[4], &[&[1]])),
            Err(Error::NotPrimeOrder(4))
        );
    }

    #[test]
    fn doubling_examples() {
        let r = verify_doubling(&p("x^3", &["x"]), &action(&[3], &[&[1]])).unwrap();
        assert_eq!(r.computed.mu_doubled, Some(4));
        assert_eq!(r.computed.nu_doubled, Some(2));
        assert!(r.checks.iter().all(Check::passed), "{r:?}");
        assert_eq!(
            r.check("tensor_basis").unwrap().left,
            Value::Set(vec!["1".into(), "x".into(), "x*x_bar".into(), "x_bar".into()])
        );

        let r = verify_doubling(&p("x^2 + y^2", &["x", "y"]), &ActionSpec::trivial(2)).unwrap();
        assert_eq!((r.computed.mu_doubled, r.computed.nu_doubled), (Some(1), Some(1)));
        assert!(r.checks.iter().all(Check::passed));

        let r = verify_doubling(&p("x^3 + y^3", &["x", "y"]), &action(&[3], &[&[1], &[2]])).unwrap();
        assert_eq!(r.computed.mu_doubled, Some(16));
        assert!(r.computed.nu_doubled.unwrap() >= 4);
        assert!(r.checks.iter().all(Check::passed));

        assert_eq!(
            verify_doubling(&p("x^14", &["x"]), &ActionSpec::trivial(1)),
            Err(Error::DoublingCapExceeded { mu: 13, cap: 12 })
        );
    }

    #[test]
    fn roberts_examples() {
        let v = Verifier::default();
        let r = v.roberts_doubled(&p("x^3", &["x"]), &action(&[3], &[&[1]])).unwrap();
        assert_eq!(sides(&r, "roberts"), (Value::Int(4), Value::Int(4), Outcome::Pass));

        let r = v
            .roberts_doubled(&p("x^3 + y^3", &["x", "y"]), &action(&[3], &[&[1], &[2]]))
            .unwrap();
        assert!(r.check("roberts").unwrap().passed());
        assert_eq!(r.variables, ["x", "y", "x_bar", "y_bar"]);

        let r = v
            .roberts_doubled(&p("x^3 + y^2", &["x", "y"]), &action(&[3], &[&[1], &[0]]))
            .unwrap();
        assert_eq!(
            r.check("roberts").unwrap().outcome,
            Outcome::Skipped { hypothesis: FixedPointFree }
        );

        // Z_3 acting by (1, 1) is not real.
        let r = verify_roberts(&p("x^3 + y^3", &["x", "y"]), &action(&[3], &[&[1], &[1]])).unwrap();
        assert_eq!(r.check("roberts").unwrap().outcome, Outcome::Skipped { hypothesis: Real });
    }

    #[test]
    fn quadratic_examples() {
        let r = verify_quadratic_step(&p("x^3 + y^3", &["x", "y"]), &action(&[3], &[&[1], &[2]]))
            .unwrap();
        assert_eq!(
            sides(&r, "quadratic_inequality"),
            (Value::Int(16), Value::Int(10), Outcome::Pass)
        );
        assert!(r.check("quadratic_root").unwrap().passed());
        let r = verify_quadratic_step(&p("x^5 + y^5", &["x", "y"]), &action(&[5], &[&[1], &[4]]))
            .unwrap();
        assert_eq!(
            sides(&r, "quadratic_inequality"),
            (Value::Int(256), Value::Int(76), Outcome::Pass)
        );
        assert_eq!(
            Relation::OneOrGe.holds(&Value::Int(1), &Value::Int(10)),
            Some(true)
        );
    }

    #[test]
    fn reduction_examples() {
        let v = ["x", "y", "z"];
        let r = reduce_fixed(&p("x^3 + y^3 + z^4", &v), &action(&[3], &[&[1], &[2], &[0]])).unwrap();
        assert_eq!(sides(&r, "reduction_monotone"), (Value::Int(12), Value::Int(4), Outcome::Pass));
        assert_eq!(
            sides(&r, "reduction_restriction"),
            (Value::Int(4), Value::Int(4), Outcome::Pass)
        );

        assert_eq!(
            reduce_fixed(&p("x^3 + y^3", &["x", "y"]), &action(&[3], &[&[1], &[2]])),
            Err(Error::NoFixedCharacters)
        );

        // The restriction x^2*y is not isolated.
        let r = reduce_fixed(
            &p("x^2*y + y^3*z + z^4", &v),
            &action(&[3], &[&[1], &[1], &[0]]),
        )
        .unwrap();
        assert!(r.hypotheses.isolated);
        assert!(r.check("reduction_monotone").unwrap().passed());
        assert_eq!(
            r.check("reduction_restriction").unwrap().outcome,
            Outcome::Skipped { hypothesis: RestrictionIsolated }
        );
    }

    #[test]
    fn skips_name_one_hypothesis_and_recompute() {
        let r = verify_main(&p("x^2*y", &["x", "y"]), &action(&[2], &[&[1], &[0]])).unwrap();
        assert_eq!(r.check("main").unwrap().outcome, Outcome::Skipped { hypothesis: Isolated });
        let r = verify_main(&p("x^3 + y^3", &["x", "y"]), &ActionSpec::trivial(2)).unwrap();
        assert_eq!(
            r.check("main").unwrap().outcome,
            Outcome::Skipped { hypothesis: NontrivialAction }
        );
        let all = Verifier::default()
            .all(&p("x^3 + y^3", &["x", "y"]), &action(&[3], &[&[1], &[2]]))
            .unwrap();
        assert_eq!(all.len(), 5);
        for c in all.iter().flat_map(|r| &r.checks) {
            assert_eq!(c.recompute(), Some(c.passed()));
        }
    }
}
