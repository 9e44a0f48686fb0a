use serde::Serialize;

use crate::group::ActionSpec;
use crate::poly::Polynomial;

/// A hypothesis a check can depend on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    Invariant,
    Zero2Jet,
    Isolated,
    NontrivialAction,
    FixedPointFree,
    Real,
    /// `f + sum x_i^2` over the fixed variables has an isolated singularity.
    ReducedIsolated,
    /// `f` restricted to the non-fixed coordinates has an isolated singularity.
    RestrictionIsolated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Hypotheses {
    pub invariant: bool,
    pub zero_2jet: bool,
    pub isolated: bool,
    pub nontrivial_action: bool,
    pub fixed_point_free: bool,
    pub real: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced_isolated: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restriction_isolated: Option<bool>,
}

impl Hypotheses {
    pub fn get(&self, h: Hypothesis) -> bool {
        match h {
            Hypothesis::Invariant => self.invariant,
            Hypothesis::Zero2Jet => self.zero_2jet,
            Hypothesis::Isolated => self.isolated,
            Hypothesis::NontrivialAction => self.nontrivial_action,
            Hypothesis::FixedPointFree => self.fixed_point_free,
            Hypothesis::Real => self.real,
            Hypothesis::ReducedIsolated => self.reduced_isolated.unwrap_or(false),
            Hypothesis::RestrictionIsolated => self.restriction_isolated.unwrap_or(false),
        }
    }

    /// The first hypothesis in `required` that fails, if any.
    pub fn first_failing(&self, required: &[Hypothesis]) -> Option<Hypothesis> {
        required.iter().copied().find(|&h| !self.get(h))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Computed {
    pub mu: Option<usize>,
    pub l_tau: Option<u64>,
    pub nu: Option<usize>,
    pub mu_doubled: Option<usize>,
    pub nu_doubled: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu_reduced: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu_restricted: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `left >= right`
    Ge,
    /// `left == right`
    Eq,
    /// Equal as sets.
    SetEq,
    /// `left == 1 || left >= right`
    OneOrGe,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Set(Vec<String>),
    Missing,
}

impl Relation {
    /// Evaluates the relation; `None` when a value is missing or of the
    /// wrong kind.
    pub fn holds(&self, left: &Value, right: &Value) -> Option<bool> {
        match (self, left, right) {
            (Relation::Ge, Value::Int(l), Value::Int(r)) => Some(l >= r),
            (Relation::Eq, Value::Int(l), Value::Int(r)) => Some(l == r),
            (Relation::OneOrGe, Value::Int(l), Value::Int(r)) => Some(*l == 1 || l >= r),
            (Relation::SetEq, Value::Set(l), Value::Set(r)) => {
                let mut a = l.clone();
                let mut b = r.clone();
                a.sort();
                a.dedup();
                b.sort();
                b.dedup();
                Some(a == b)
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    Skipped { hypothesis: Hypothesis },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    /// Human-readable statement of the relation, e.g. `mu >= l_tau - 1`.
    pub claim: String,
    pub relation: Relation,
    pub left: Value,
    pub right: Value,
    pub outcome: Outcome,
}

impl Check {
    /// Builds a check, skipping it if a required hypothesis fails.
    pub(crate) fn new(
        name: &str,
        claim: &str,
        relation: Relation,
        hypotheses: &Hypotheses,
        required: &[Hypothesis],
        values: impl FnOnce() -> (Value, Value),
    ) -> Check {
        if let Some(h) = hypotheses.first_failing(required) {
            return Check {
                name: name.into(),
                claim: claim.into(),
                relation,
                left: Value::Missing,
                right: Value::Missing,
                outcome: Outcome::Skipped { hypothesis: h },
            };
        }
        let (left, right) = values();
        let outcome = match relation.holds(&left, &right) {
            Some(true) => Outcome::Pass,
            _ => Outcome::Fail,
        };
        Check {
            name: name.into(),
            claim: claim.into(),
            relation,
            left,
            right,
            outcome,
        }
    }

    /// Re-evaluates the relation on the recorded values.
    pub fn recompute(&self) -> Option<bool> {
        self.relation.holds(&self.left, &self.right)
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn failed(&self) -> bool {
        self.outcome == Outcome::Fail
    }

    pub fn skipped(&self) -> bool {
        matches!(self.outcome, Outcome::Skipped { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Main,
    Chulkov,
    Roberts,
    Doubling,
    Quadratic,
    Reduce,
}

impl Target {
    pub fn name(&self) -> &'static str {
        match self {
            Target::Main => "main",
            Target::Chulkov => "chulkov",
            Target::Roberts => "roberts",
            Target::Doubling => "doubling",
            Target::Quadratic => "quadratic",
            Target::Reduce => "reduce",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub target: Target,
    pub variables: Vec<String>,
    #[serde(rename = "germ", serialize_with = "crate::verification::report::germ_text")]
    pub germ: (Polynomial, Vec<String>),
    pub action: ActionSpec,
    pub hypotheses: Hypotheses,
    pub computed: Computed,
    pub checks: Vec<Check>,
}

pub(crate) fn germ_text<S: serde::Serializer>(
    germ: &(Polynomial, Vec<String>),
    s: S,
) -> Result<S::Ok, S::Error> {
    s.serialize_str(&germ.0.format(&germ.1))
}

impl VerificationReport {
    pub fn polynomial(&self) -> &Polynomial {
        &self.germ.0
    }

    pub fn germ_string(&self) -> String {
        self.germ.0.format(&self.variables)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(Check::failed)
    }
}
