//! The doubled germ `f(x) + f(y)` and the conjugate-doubled action.
//!
//! Variables of the doubled ring are the x-block `0..n` followed by the
//! y-block `n..2n`. The y-block carries the inverse characters, so the form
//! `sum x_i y_i` is invariant and the doubled action is real. Because the
//! Jacobian generators of `f(x) + f(y)` live in disjoint blocks and the
//! local order restricted to either block is the block's own order, the
//! doubled staircase is the product of two copies of the base staircase.

use serde::Serialize;

use crate::group::{has_fixed_points_outside_origin, monomial_weight, ActionSpec};
use crate::poly::{Monomial, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubledGerm {
    pub base: Polynomial,
    pub doubled: Polynomial,
}

impl DoubledGerm {
    pub fn nvars(&self) -> usize {
        self.base.nvars()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoubledAction {
    pub base: ActionSpec,
    pub doubled: ActionSpec,
}

fn x_block(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn y_block(n: usize) -> Vec<usize> {
    (n..2 * n).collect()
}

pub fn double_germ(f: &Polynomial) -> DoubledGerm {
    let n = f.nvars();
    let doubled = &f.embed(2 * n, &x_block(n)) + &f.embed(2 * n, &y_block(n));
    DoubledGerm {
        base: f.clone(),
        doubled,
    }
}

pub fn double_action(a: &ActionSpec) -> DoubledAction {
    let g = a.group();
    let mut chars = a.chars().to_vec();
    chars.extend(a.chars().iter().map(|c| g.neg(c)));
    let doubled = ActionSpec::new(g.clone(), chars).expect("negated characters stay in range");
    DoubledAction {
        base: a.clone(),
        doubled,
    }
}

/// Certifies that `sum_i x_i y_i` is invariant, i.e. every `x_i y_i` has
/// trivial weight, pairing variable `i` with `i + n` in the doubled action.
pub fn check_reality(a: &DoubledAction) -> bool {
    let d = &a.doubled;
    let total = d.nvars();
    if total % 2 != 0 {
        return false;
    }
    let n = total / 2;
    (0..n).all(|i| {
        let mut e = vec![0; total];
        e[i] = 1;
        e[i + n] = 1;
        monomial_weight(&Monomial::new(e), d).is_ok_and(|w| d.group().is_trivial_char(&w))
    })
}

pub fn fixed_point_free(a: &DoubledAction) -> bool {
    !has_fixed_points_outside_origin(&a.doubled)
}

/// Products `p_i(x) * p_j(y)` of two copies of a monomial basis of `f`,
/// as monomials of the doubled ring, in row-major order.
pub fn tensor_basis(basis: &[Monomial]) -> Vec<Monomial> {
    let Some(first) = basis.first() else {
        return Vec::new();
    };
    let n = first.nvars();
    let xs: Vec<Monomial> = basis.iter().map(|p| p.embed(2 * n, &x_block(n))).collect();
    let ys: Vec<Monomial> = basis.iter().map(|p| p.embed(2 * n, &y_block(n))).collect();
    xs.iter()
        .flat_map(|px| ys.iter().map(move |py| px.mul(py)))
        .collect()
}

/// The diagonal products `p_i(x) * p_i(y)`.
pub fn diagonal_products(basis: &[Monomial]) -> Vec<Monomial> {
    let Some(first) = basis.first() else {
        return Vec::new();
    };
    let n = first.nvars();
    basis
        .iter()
        .map(|p| p.embed(2 * n, &x_block(n)).mul(&p.embed(2 * n, &y_block(n))))
        .collect()
}

/// Variable names for the doubled ring: the base names, then `<name>_bar`.
pub fn doubled_names(names: &[String]) -> Vec<String> {
    names
        .iter()
        .cloned()
        .chain(names.iter().map(|v| format!("{v}_bar")))
        .collect()
}
