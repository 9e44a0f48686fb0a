use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{AbelianGroup, ActionSpec};
use crate::poly::{default_names, Polynomial};
use crate::standard_basis::{brute_force_mu_oracle, DEFAULT_ORACLE_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusAction {
    pub name: String,
    pub action: ActionSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub name: String,
    #[serde(skip)]
    pub germ: Polynomial,
    #[serde(rename = "germ")]
    pub germ_text: String,
    pub expected_mu: usize,
    pub actions: Vec<CorpusAction>,
}

fn action(orders: &[u32], rows: &[&[i64]]) -> CorpusAction {
    let g = AbelianGroup::new(orders.to_vec()).expect("corpus groups are valid");
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    let name = format!(
        "{} {:?}",
        orders.iter().map(|d| format!("Z{d}")).collect::<Vec<_>>().join("x"),
        rows
    );
    CorpusAction {
        name,
        action: ActionSpec::from_rows(g, &rows).expect("corpus characters are valid"),
    }
}

fn entry(name: String, terms: &[(i64, &[u32])], nvars: usize, mu: usize, actions: Vec<CorpusAction>) -> CorpusEntry {
    let germ = Polynomial::from_int_terms(nvars, terms);
    CorpusEntry {
        name,
        germ_text: germ.format(&default_names(nvars)),
        germ,
        expected_mu: mu,
        actions,
    }
}

/// The built-in germs with their textbook Milnor numbers and natural
/// diagonal actions. Nothing here is validated; see [`load_corpus`].
pub fn corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for k in 1..=8u32 {
        let a = (k + 1) as i64;
        out.push(entry(
            format!("A{k}"),
            &[(1, &[k + 1, 0]), (1, &[0, 2])],
            2,
            k as usize,
            vec![
                action(&[k + 1, 2], &[&[1, 0], &[0, 1]]),
                action(&[k + 1], &[&[1], &[0]]),
                action(&[2], &[&[0], &[1]]),
                action(&[2 * (k + 1)], &[&[2], &[a]]),
            ],
        ));
    }
    for k in 4..=8u32 {
        let d = 2 * (k as i64 - 1);
        out.push(entry(
            format!("D{k}"),
            &[(1, &[2, 1]), (1, &[0, k - 1])],
            2,
            k as usize,
            vec![
                action(&[2 * (k - 1)], &[&[k as i64 - 2], &[2]]),
                action(&[2], &[&[1], &[0]]),
                action(&[2 * (k - 1)], &[&[d - (k as i64 - 2)], &[d - 2]]),
            ],
        ));
    }
    out.push(entry(
        "E6".into(),
        &[(1, &[3, 0]), (1, &[0, 4])],
        2,
        6,
        vec![
            action(&[3, 4], &[&[1, 0], &[0, 1]]),
            action(&[12], &[&[4], &[3]]),
            action(&[4], &[&[0], &[1]]),
        ],
    ));
    out.push(entry(
        "E7".into(),
        &[(1, &[3, 0]), (1, &[1, 3])],
        2,
        7,
        vec![action(&[9], &[&[3], &[2]]), action(&[3], &[&[0], &[1]])],
    ));
    out.push(entry(
        "E8".into(),
        &[(1, &[3, 0]), (1, &[0, 5])],
        2,
        8,
        vec![
            action(&[15], &[&[5], &[3]]),
            action(&[3, 5], &[&[1, 0], &[0, 1]]),
        ],
    ));
    for a in 2..=6u32 {
        for b in 2..=6u32 {
            let mut actions = vec![
                action(&[a, b], &[&[1, 0], &[0, 1]]),
                action(&[a], &[&[1], &[0]]),
                action(&[b], &[&[0], &[1]]),
            ];
            if a == b {
                actions.push(action(&[a], &[&[1], &[a as i64 - 1]]));
            }
            out.push(entry(
                format!("B{a},{b}"),
                &[(1, &[a, 0]), (1, &[0, b])],
                2,
                ((a - 1) * (b - 1)) as usize,
                actions,
            ));
        }
    }
    out.push(entry(
        "cusp1".into(),
        &[(1, &[3])],
        1,
        2,
        vec![action(&[3], &[&[1]])],
    ));
    out.push(entry(
        "P8".into(),
        &[(1, &[3, 0, 0]), (1, &[0, 3, 0]), (1, &[0, 0, 3])],
        3,
        8,
        vec![
            action(&[3], &[&[1], &[1], &[1]]),
            action(&[3], &[&[1], &[2], &[0]]),
            action(&[3, 3, 3], &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
        ],
    ));
    out
}

/// [`corpus`], with every expected Milnor number confirmed by the
/// linear-algebra oracle.
pub fn load_corpus() -> Result<Vec<CorpusEntry>> {
    let entries = corpus();
    for e in &entries {
        let found = brute_force_mu_oracle(&e.germ, DEFAULT_ORACLE_CAP)?;
        if found != e.expected_mu {
            return Err(Error::CorpusMismatch {
                name: e.name.clone(),
                expected: e.expected_mu,
                found,
            });
        }
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::is_invariant;

    #[test]
    fn actions_leave_germs_invariant() {
        for e in corpus() {
            for a in &e.actions {
                assert!(is_invariant(&e.germ, &a.action).unwrap(), "{} {}", e.name, a.name);
                assert!(a.action.is_nontrivial(), "{} {}", e.name, a.name);
            }
        }
    }

    #[test]
    fn names_are_unique() {
        let c = corpus();
        let mut names: Vec<&str> = c.iter().map(|e| e.name.as_str()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), c.len());
        assert_eq!(c[0].actions[0].name, "Z2xZ2 [[1, 0], [0, 1]]");
    }
}
