use std::fmt::Write as _;

use equimilnor::equivariant::GradedMilnor;
use equimilnor::group::{ActionSpec, Character};
use equimilnor::poly::{Monomial, Polynomial};
use equimilnor::standard_basis::StandardBasisResult;
use equimilnor::verification::{
    Check, CorpusAction, CorpusEntry, Outcome, SweepMode, SweepSummary, Value, VerificationReport,
};
use serde::Serialize;

use crate::{Report, VerifyTarget};

type CorpusResult<'a> = (&'a CorpusEntry, usize, Vec<(&'a CorpusAction, Vec<VerificationReport>)>);

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

pub(crate) fn error_json(message: &str, code: i32) -> String {
    #[derive(Serialize)]
    struct ErrorDoc<'a> {
        error: &'a str,
        exit_code: i32,
    }
    json(&ErrorDoc {
        error: message,
        exit_code: code,
    })
}

fn group_name(a: &ActionSpec) -> String {
    let orders = a.group().orders();
    if orders.is_empty() {
        return "trivial group".into();
    }
    orders.iter().map(|d| format!("Z{d}")).collect::<Vec<_>>().join("x")
}

fn action_text(a: &ActionSpec, names: &[String]) -> String {
    let chars: Vec<String> = a
        .chars()
        .iter()
        .zip(names)
        .map(|(c, v)| format!("{v}:{c}"))
        .collect();
    format!("{} acting by {}", group_name(a), chars.join(" "))
}

fn mono_list(ms: &[Monomial], names: &[String]) -> Vec<String> {
    ms.iter().map(|m| m.format(names)).collect()
}

pub(crate) fn mu(job: &crate::Job, f: &Polynomial, mu: usize) -> Report {
    #[derive(Serialize)]
    struct Doc<'a> {
        command: &'static str,
        variables: &'a [String],
        germ: String,
        mu: usize,
    }
    let germ = f.format(&job.vars);
    Report {
        human: format!("f = {germ}\nmu = {mu}\n"),
        json: json(&Doc {
            command: "mu",
            variables: &job.vars,
            germ,
            mu,
        }),
        failed: false,
    }
}

pub(crate) fn basis(job: &crate::Job, f: &Polynomial, sb: &StandardBasisResult, basis: &[Monomial]) -> Report {
    #[derive(Serialize)]
    struct Doc<'a> {
        command: &'static str,
        variables: &'a [String],
        germ: String,
        mu: usize,
        standard_basis: Vec<String>,
        leading_monomials: Vec<String>,
        monomial_basis: Vec<String>,
    }
    let names = &job.vars;
    let doc = Doc {
        command: "basis",
        variables: names,
        germ: f.format(names),
        mu: basis.len(),
        standard_basis: sb.generators.iter().map(|g| g.format(names)).collect(),
        leading_monomials: mono_list(&sb.leading_monomials, names),
        monomial_basis: mono_list(basis, names),
    };
    let mut h = format!("f = {}\nmu = {}\nstandard basis of J_f:\n", doc.germ, doc.mu);
    for (g, lm) in doc.standard_basis.iter().zip(&doc.leading_monomials) {
        let _ = writeln!(h, "  {g}    [leading {lm}]");
    }
    let _ = writeln!(h, "monomial basis: {}", doc.monomial_basis.join(", "));
    Report {
        human: h,
        json: json(&doc),
        failed: false,
    }
}

pub(crate) fn grade(job: &crate::Job, f: &Polynomial, a: &ActionSpec, g: &GradedMilnor) -> Report {
    #[derive(Serialize)]
    struct Entry<'a> {
        character: &'a Character,
        multiplicity: usize,
    }
    #[derive(Serialize)]
    struct Weighted<'a> {
        monomial: String,
        weight: &'a Character,
    }
    #[derive(Serialize)]
    struct Doc<'a> {
        command: &'static str,
        variables: &'a [String],
        germ: String,
        action: &'a ActionSpec,
        mu: usize,
        nu: usize,
        multiplicities: Vec<Entry<'a>>,
        basis: Vec<Weighted<'a>>,
    }
    let names = &job.vars;
    let doc = Doc {
        command: "grade",
        variables: names,
        germ: f.format(names),
        action: a,
        mu: g.total,
        nu: g.nu(),
        multiplicities: g
            .multiplicities
            .iter()
            .map(|(character, &multiplicity)| Entry {
                character,
                multiplicity,
            })
            .collect(),
        basis: g
            .basis_weights
            .iter()
            .map(|(m, w)| Weighted {
                monomial: m.format(names),
                weight: w,
            })
            .collect(),
    };
    let mut h = format!(
        "f = {}\naction: {}\nmu = {}, nu = {}\ncharacter  multiplicity\n",
        doc.germ,
        action_text(a, names),
        doc.mu,
        doc.nu
    );
    for e in &doc.multiplicities {
        let _ = writeln!(h, "{:<10} {}", e.character.to_string(), e.multiplicity);
    }
    let _ = writeln!(
        h,
        "basis: {}",
        doc.basis
            .iter()
            .map(|w| format!("{}{}", w.monomial, w.weight))
            .collect::<Vec<_>>()
            .join(", ")
    );
    Report {
        human: h,
        json: json(&doc),
        failed: false,
    }
}

pub(crate) fn ltau(job: &crate::Job, a: &ActionSpec, l: u64, oracle: u64, fpf: bool, real: bool) -> Report {
    #[derive(Serialize)]
    struct Doc<'a> {
        command: &'static str,
        variables: &'a [String],
        action: &'a ActionSpec,
        l_tau: u64,
        oracle: u64,
        fixed_point_free: bool,
        real: bool,
    }
    Report {
        human: format!(
            "action: {}\nl_tau = {l} (oracle {oracle})\nfixed-point free: {}\nreal: {}\n",
            action_text(a, &job.vars),
            yes(fpf),
            yes(real)
        ),
        json: json(&Doc {
            command: "ltau",
            variables: &job.vars,
            action: a,
            l_tau: l,
            oracle,
            fixed_point_free: fpf,
            real,
        }),
        failed: l != oracle,
    }
}

pub(crate) fn double(names: &[String], f: &Polynomial, a: &ActionSpec, real: bool, fpf: bool) -> Report {
    #[derive(Serialize)]
    struct Doc<'a> {
        command: &'static str,
        variables: &'a [String],
        germ: String,
        action: &'a ActionSpec,
        real: bool,
        fixed_point_free: bool,
    }
    let germ = f.format(names);
    Report {
        human: format!(
            "f + f = {germ}\naction: {}\nreal: {}\nfixed-point free: {}\n",
            action_text(a, names),
            yes(real),
            yes(fpf)
        ),
        json: json(&Doc {
            command: "double",
            variables: names,
            germ,
            action: a,
            real,
            fixed_point_free: fpf,
        }),
        failed: false,
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn value_text(v: &Value) -> String {
    match v {
        Value::Int(i) => i.to_string(),
        Value::Set(s) => format!("{{{} elements}}", s.len()),
        Value::Missing => "-".into(),
    }
}

fn outcome_text(o: &Outcome) -> String {
    match o {
        Outcome::Pass => "pass".into(),
        Outcome::Fail => "FAIL".into(),
        Outcome::Skipped { hypothesis } => {
            format!("skipped ({})", serde_json::to_value(hypothesis).unwrap().as_str().unwrap())
        }
    }
}

fn opt(v: Option<impl ToString>) -> String {
    v.map_or("-".into(), |x| x.to_string())
}

fn report_human(out: &mut String, r: &VerificationReport) {
    let h = &r.hypotheses;
    let c = &r.computed;
    let _ = writeln!(out, "[{}] f = {}", r.target.name(), r.germ_string());
    let _ = writeln!(out, "  action: {}", action_text(&r.action, &r.variables));
    let _ = writeln!(
        out,
        "  hypotheses: invariant {}, zero 2-jet {}, isolated {}, nontrivial {}, fixed-point free {}, real {}",
        yes(h.invariant),
        yes(h.zero_2jet),
        yes(h.isolated),
        yes(h.nontrivial_action),
        yes(h.fixed_point_free),
        yes(h.real)
    );
    let mut computed = format!(
        "  mu = {}, l_tau = {}, nu = {}",
        opt(c.mu),
        opt(c.l_tau),
        opt(c.nu)
    );
    if c.mu_doubled.is_some() || c.nu_doubled.is_some() {
        let _ = write!(computed, ", mu(f+f) = {}, nu(f+f) = {}", opt(c.mu_doubled), opt(c.nu_doubled));
    }
    if c.mu_reduced.is_some() || c.mu_restricted.is_some() {
        let _ = write!(computed, ", mu(f~) = {}, mu(restriction) = {}", opt(c.mu_reduced), opt(c.mu_restricted));
    }
    let _ = writeln!(out, "{computed}");
    for ch in &r.checks {
        check_human(out, ch);
    }
}

fn check_human(out: &mut String, c: &Check) {
    let _ = writeln!(
        out,
        "  {:<22} {:<44} {:>8} {:>8}  {}",
        c.name,
        c.claim,
        value_text(&c.left),
        value_text(&c.right),
        outcome_text(&c.outcome)
    );
}

fn tally<'a>(reports: impl IntoIterator<Item = &'a VerificationReport>) -> (usize, usize, usize) {
    let (mut pass, mut fail, mut skip) = (0, 0, 0);
    for c in reports.into_iter().flat_map(|r| &r.checks) {
        match c.outcome {
            Outcome::Pass => pass += 1,
            Outcome::Fail => fail += 1,
            Outcome::Skipped { .. } => skip += 1,
        }
    }
    (pass, fail, skip)
}

#[derive(Serialize)]
struct Totals {
    passed: usize,
    failed: usize,
    skipped: usize,
}

pub(crate) fn verify(target: VerifyTarget, reports: &[VerificationReport]) -> Report {
    #[derive(Serialize)]
    struct Doc<'a> {
        command: &'static str,
        target: VerifyTarget,
        reports: &'a [VerificationReport],
        totals: Totals,
    }
    let (passed, failed, skipped) = tally(reports);
    let mut h = String::new();
    for r in reports {
        report_human(&mut h, r);
    }
    let _ = writeln!(h, "{passed} passed, {failed} failed, {skipped} skipped");
    Report {
        human: h,
        json: json(&Doc {
            command: "verify",
            target,
            reports,
            totals: Totals {
                passed,
                failed,
                skipped,
            },
        }),
        failed: failed > 0,
    }
}

impl Serialize for VerifyTarget {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use clap::ValueEnum;
        s.serialize_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

pub(crate) fn sweep(names: &[String], s: &SweepSummary) -> Report {
    #[derive(Serialize)]
    struct Doc<'a> {
        command: &'static str,
        variables: &'a [String],
        summary: &'a SweepSummary,
    }
    let mode = match s.mode {
        SweepMode::Exhaustive { signed: false } => "exhaustive, coefficients 1".to_string(),
        SweepMode::Exhaustive { signed: true } => "exhaustive, coefficients +-1".to_string(),
        SweepMode::Randomized { seed, samples } => format!("random, seed {seed}, {samples} samples"),
    };
    let mut h = format!(
        "action: {}\nl_tau = {}, degrees 3..={}, {mode}\ninvariant monomials: {}\n",
        action_text(&s.action, names),
        s.l_tau,
        s.dmax,
        s.invariant_monomials.join(", ")
    );
    let _ = writeln!(
        h,
        "generated {}, tested {}, passed {}, failed {}, not isolated {}, undecided {}",
        s.generated, s.tested, s.passed, s.failed, s.skipped_non_isolated, s.skipped_inconclusive
    );
    let _ = writeln!(
        h,
        "least slack mu - (l_tau - 1): {}, least quadratic slack: {}, least mu: {}",
        opt(s.min_slack),
        opt(s.min_quadratic_slack),
        opt(s.min_mu)
    );
    if s.real_action {
        let _ = writeln!(h, "real action: {} tested germs with mu < l_tau + 1", s.below_l_plus_one);
    }
    for u in &s.inconclusive {
        let _ = writeln!(h, "  undecided: {u}");
    }
    for t in &s.tight {
        let _ = writeln!(h, "  tightest: {t}");
    }
    for f in &s.failures {
        let _ = writeln!(h, "  FAILED: {f}");
    }
    Report {
        human: h,
        json: json(&Doc {
            command: "sweep",
            variables: names,
            summary: s,
        }),
        failed: s.failed > 0,
    }
}

pub(crate) fn corpus(results: &[CorpusResult<'_>]) -> Report {
    #[derive(Serialize)]
    struct ActionDoc<'a> {
        name: &'a str,
        action: &'a ActionSpec,
        reports: &'a [VerificationReport],
    }
    #[derive(Serialize)]
    struct EntryDoc<'a> {
        name: &'a str,
        germ: &'a str,
        expected_mu: usize,
        mu: usize,
        actions: Vec<ActionDoc<'a>>,
    }
    #[derive(Serialize)]
    struct Doc<'a> {
        command: &'static str,
        entries: Vec<EntryDoc<'a>>,
        mu_mismatches: usize,
        totals: Totals,
    }
    let all = results.iter().flat_map(|(_, _, acts)| acts.iter().flat_map(|(_, rs)| rs));
    let (passed, failed, skipped) = tally(all);
    let mismatches = results.iter().filter(|(e, mu, _)| e.expected_mu != *mu).count();
    let mut h = format!("{:<8} {:<16} {:>4} {:>4}  {:<28} {:>5} {:>5} {:>5}\n", "name", "germ", "mu", "exp", "action", "pass", "fail", "skip");
    for (e, mu, acts) in results {
        for (a, rs) in acts {
            let (p, f, s) = tally(rs);
            let _ = writeln!(
                h,
                "{:<8} {:<16} {:>4} {:>4}  {:<28} {:>5} {:>5} {:>5}",
                e.name, e.germ_text, mu, e.expected_mu, a.name, p, f, s
            );
        }
    }
    let _ = writeln!(
        h,
        "{} germs, {mismatches} mu mismatches; {passed} passed, {failed} failed, {skipped} skipped",
        results.len()
    );
    let doc = Doc {
        command: "corpus",
        entries: results
            .iter()
            .map(|(e, mu, acts)| EntryDoc {
                name: &e.name,
                germ: &e.germ_text,
                expected_mu: e.expected_mu,
                mu: *mu,
                actions: acts
                    .iter()
                    .map(|(a, rs)| ActionDoc {
                        name: &a.name,
                        action: &a.action,
                        reports: rs,
                    })
                    .collect(),
            })
            .collect(),
        mu_mismatches: mismatches,
        totals: Totals {
            passed,
            failed,
            skipped,
        },
    };
    Report {
        human: h,
        json: json(&doc),
        failed: failed > 0 || mismatches > 0,
    }
}
