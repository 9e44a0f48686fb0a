//! The key/value job file.
//!
//! ```text
//! # E6 under Z12
//! vars = x, y
//! f = x^3 + y^4
//! group = [12]
//! chars = [[4], [3]]
//! ```

use equimilnor::group::{AbelianGroup, ActionSpec};
use equimilnor::poly::{parse_polynomial, Polynomial};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JobError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing key `{0}`")]
    Missing(&'static str),
    #[error("`{key}`: {message}")]
    Invalid { key: &'static str, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKind {
    Exhaustive,
    Signed,
    Random,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct JobOptions {
    pub dmax: Option<u32>,
    pub seed: Option<u64>,
    pub mode: Option<SweepKind>,
    pub samples: Option<usize>,
    pub max_terms: Option<usize>,
    pub mu_cap: Option<usize>,
    pub degree_bound: Option<u32>,
    pub format: Option<Format>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Job {
    pub vars: Vec<String>,
    pub germ: Option<Polynomial>,
    /// `None` when the job names no group.
    pub action: Option<ActionSpec>,
    pub options: JobOptions,
    /// Character entries that were reduced modulo the group orders.
    pub warnings: Vec<String>,
}

impl Job {
    pub fn germ(&self) -> Result<&Polynomial, JobError> {
        self.germ.as_ref().ok_or(JobError::Missing("f"))
    }

    pub fn action(&self) -> Result<&ActionSpec, JobError> {
        self.action.as_ref().ok_or(JobError::Missing("group"))
    }

    /// The job's action, or the trivial action when no group is given.
    pub fn action_or_trivial(&self) -> ActionSpec {
        self.action
            .clone()
            .unwrap_or_else(|| ActionSpec::trivial(self.vars.len()))
    }
}

fn invalid(key: &'static str, message: impl Into<String>) -> JobError {
    JobError::Invalid {
        key,
        message: message.into(),
    }
}

fn numbers<T: std::str::FromStr>(key: &'static str, text: &str) -> Result<Vec<T>, JobError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| invalid(key, format!("`{t}` is not an integer"))))
        .collect()
}

fn number<T: std::str::FromStr>(key: &'static str, text: &str) -> Result<T, JobError> {
    text.parse()
        .map_err(|_| invalid(key, format!("`{text}` is not a nonnegative integer")))
}

/// Rows of a character matrix, written `[[1, 0], [0, 1]]` or `1 0; 0 1`.
fn matrix(text: &str) -> Result<Vec<Vec<i64>>, JobError> {
    let mut rows = Vec::new();
    if text.contains('[') {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| invalid("chars", "unbalanced brackets"))?;
        let mut rest = inner.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('[')
                .ok_or_else(|| invalid("chars", "expected `[` to open a row"))?;
            let end = open
                .find(']')
                .ok_or_else(|| invalid("chars", "unterminated row"))?;
            rows.push(numbers("chars", &open[..end])?);
            rest = open[end + 1..].trim_start();
            rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
        }
    } else {
        for row in text.split(';') {
            rows.push(numbers("chars", row)?);
        }
    }
    Ok(rows)
}

pub fn parse_job(text: &str) -> Result<Job, JobError> {
    let mut vars = None;
    let mut f_text = None;
    let mut group = None;
    let mut chars = None;
    let mut options = JobOptions::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| JobError::Syntax {
            line: i + 1,
            message: "expected `key = value`".into(),
        })?;
        let value = value.trim();
        match key.trim() {
            "vars" => {
                vars = Some(
                    value
                        .trim_matches(|c| c == '[' || c == ']')
                        .split(|c: char| c == ',' || c.is_whitespace())
                        .filter(|t| !t.is_empty())
                        .map(str::to_string)
                        .collect::<Vec<_>>(),
                )
            }
            "f" => f_text = Some(value.to_string()),
            "group" => group = Some(numbers::<u32>("group", value.trim_matches(|c| c == '[' || c == ']'))?),
            "chars" => chars = Some(matrix(value)?),
            "dmax" => options.dmax = Some(number("dmax", value)?),
            "seed" => options.seed = Some(number("seed", value)?),
            "samples" => options.samples = Some(number("samples", value)?),
            "max_terms" => options.max_terms = Some(number("max_terms", value)?),
            "mu_cap" => options.mu_cap = Some(number("mu_cap", value)?),
            "degree_bound" => options.degree_bound = Some(number("degree_bound", value)?),
            "mode" => {
                options.mode = Some(match value {
                    "exhaustive" => SweepKind::Exhaustive,
                    "signed" => SweepKind::Signed,
                    "random" | "randomized" => SweepKind::Random,
                    other => return Err(invalid("mode", format!("unknown mode `{other}`"))),
                })
            }
            "format" => {
                options.format = Some(match value {
                    "human" => Format::Human,
                    "json" => Format::Json,
                    other => return Err(invalid("format", format!("unknown format `{other}`"))),
                })
            }
            other => {
                return Err(JobError::Syntax {
                    line: i + 1,
                    message: format!("unknown key `{other}`"),
                })
            }
        }
    }

    let vars = vars.ok_or(JobError::Missing("vars"))?;
    if vars.is_empty() {
        return Err(invalid("vars", "no variables"));
    }
    for (i, v) in vars.iter().enumerate() {
        if !v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            || !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            return Err(invalid("vars", format!("`{v}` is not an identifier")));
        }
        if vars[..i].contains(v) {
            return Err(invalid("vars", format!("`{v}` is declared twice")));
        }
    }
    let germ = f_text
        .map(|t| parse_polynomial(&t, &vars).map_err(|e| invalid("f", e.to_string())))
        .transpose()?;

    let mut warnings = Vec::new();
    let action = match (group, chars) {
        (None, None) => None,
        (None, Some(_)) => return Err(invalid("chars", "characters given without a group")),
        (Some(orders), chars) => {
            let g = AbelianGroup::new(orders.clone()).map_err(|e| invalid("group", e.to_string()))?;
            let rows = chars.ok_or(JobError::Missing("chars"))?;
            if rows.len() != vars.len() {
                return Err(invalid(
                    "chars",
                    format!("{} rows for {} variables", rows.len(), vars.len()),
                ));
            }
            for (row, v) in rows.iter().zip(&vars) {
                if row.len() != orders.len() {
                    return Err(invalid(
                        "chars",
                        format!("row for `{v}` has {} entries, the group has {} factors", row.len(), orders.len()),
                    ));
                }
                for (&c, &d) in row.iter().zip(&orders) {
                    if c < 0 || c >= d as i64 {
                        warnings.push(format!(
                            "character entry {c} for `{v}` reduced to {} mod {d}",
                            c.rem_euclid(d as i64)
                        ));
                    }
                }
            }
            Some(ActionSpec::from_rows(g, &rows).map_err(|e| invalid("chars", e.to_string()))?)
        }
    };

    Ok(Job {
        vars,
        germ,
        action,
        options,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_job() {
        let job = parse_job(
            "# comment\nvars = x, y\nf = x^3 + y^3  # cusp\ngroup = [3]\nchars = [[1], [5]]\nseed = 9\nmode = random\n",
        )
        .unwrap();
        assert_eq!(job.vars, ["x", "y"]);
        let a = job.action().unwrap();
        assert_eq!(a.chars()[1].exponents(), [2]);
        assert_eq!(job.warnings.len(), 1);
        assert_eq!(job.options.seed, Some(9));
        assert_eq!(job.options.mode, Some(SweepKind::Random));
    }

    #[test]
    fn matrix_forms() {
        assert_eq!(matrix("[[1, 0], [0, 1]]").unwrap(), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(matrix("1 0; 0 1").unwrap(), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(matrix("[[-1],[2]]").unwrap(), vec![vec![-1], vec![2]]);
        assert!(matrix("[[1], [2]").is_err());
    }

    #[test]
    fn errors() {
        assert_eq!(parse_job("f = x"), Err(JobError::Missing("vars")));
        assert!(matches!(parse_job("vars = x\nfoo = 1"), Err(JobError::Syntax { line: 2, .. })));
        assert!(matches!(
            parse_job("vars = x, y\ngroup = 3\nchars = [[1]]"),
            Err(JobError::Invalid { key: "chars", .. })
        ));
        assert!(matches!(
            parse_job("vars = x\nchars = [[1]]"),
            Err(JobError::Invalid { key: "chars", .. })
        ));
        assert!(matches!(parse_job("vars = x\nf = x^-1"), Err(JobError::Invalid { key: "f", .. })));
        let job = parse_job("vars = x\nf = x^3").unwrap();
        assert!(job.action.is_none());
        assert!(!job.action_or_trivial().is_nontrivial());
    }
}
