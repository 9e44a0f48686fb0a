//! Character grading of the Milnor algebra.
//!
//! For `f` invariant under a diagonal action, each `∂f/∂x_i` is
//! weight-homogeneous of weight `-chi_i`, so `J_f` is a graded ideal and
//! `Q_f` splits by character. Counting standard monomials per weight gives
//! the graded dimensions, independent of which monomial basis the staircase
//! produced. The weight of `x^a` is `sum a_i chi_i`; `nu`, the multiplicity
//! of the trivial character, does not depend on that sign convention.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{is_invariant, monomial_weight, ActionSpec, Character};
use crate::poly::{jacobian_generators, Monomial, Polynomial};
use crate::standard_basis::{monomial_basis_with, StandardBasisConfig};

/// `mu_G(f)` recorded as a character-multiplicity table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedMilnor {
    #[serde(serialize_with = "entries")]
    pub multiplicities: BTreeMap<Character, usize>,
    pub total: usize,
    pub basis_weights: Vec<(Monomial, Character)>,
}

fn entries<S: serde::Serializer>(
    map: &BTreeMap<Character, usize>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Entry<'a> {
        character: &'a Character,
        multiplicity: usize,
    }
    s.collect_seq(map.iter().map(|(character, &multiplicity)| Entry {
        character,
        multiplicity,
    }))
}

impl GradedMilnor {
    pub fn multiplicity(&self, chi: &Character) -> usize {
        self.multiplicities.get(chi).copied().unwrap_or(0)
    }

    /// Multiplicity of the trivial character.
    pub fn nu(&self) -> usize {
        self.multiplicities
            .iter()
            .find(|(c, _)| c.exponents().iter().all(|&e| e == 0))
            .map_or(0, |(_, &m)| m)
    }
}

pub fn graded_milnor(f: &Polynomial, a: &ActionSpec) -> Result<GradedMilnor> {
    graded_milnor_with(f, a, &StandardBasisConfig::default())
}

pub fn graded_milnor_with(
    f: &Polynomial,
    a: &ActionSpec,
    config: &StandardBasisConfig,
) -> Result<GradedMilnor> {
    if !is_invariant(f, a)? {
        return Err(Error::NotInvariant);
    }
    debug_assert!(jacobian_is_weight_homogeneous(f, a));
    let basis = monomial_basis_with(f, config)?;
    grade_basis(&basis, a)
}

/// Tallies the weights of an explicit monomial basis.
pub fn grade_basis(basis: &[Monomial], a: &ActionSpec) -> Result<GradedMilnor> {
    let mut multiplicities = BTreeMap::new();
    let mut basis_weights = Vec::with_capacity(basis.len());
    for m in basis {
        let w = monomial_weight(m, a)?;
        *multiplicities.entry(w.clone()).or_insert(0) += 1;
        basis_weights.push((m.clone(), w));
    }
    Ok(GradedMilnor {
        multiplicities,
        total: basis.len(),
        basis_weights,
    })
}

/// `nu(f) = dim Q_f^G`.
pub fn nu(f: &Polynomial, a: &ActionSpec) -> Result<usize> {
    Ok(graded_milnor(f, a)?.nu())
}

/// Checks that every monomial of `∂f/∂x_i` has weight `-chi_i`.
pub fn jacobian_is_weight_homogeneous(f: &Polynomial, a: &ActionSpec) -> bool {
    let g = a.group();
    jacobian_generators(f).iter().enumerate().all(|(i, d)| {
        let expected = g.neg(&a.chars()[i]);
        d.monomials()
            .all(|m| monomial_weight(m, a).is_ok_and(|w| w == expected))
    })
}
