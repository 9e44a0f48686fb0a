//! Linear-algebra oracle for the Milnor number, independent of the Mora
//! engine.
//!
//! `dim O/(J_f + m^D)` is computed as the corank of the span of all
//! products `m * ∂f/∂x_i` truncated below degree `D`. This sequence is
//! nondecreasing in `D`; once it stops growing it never grows again
//! (Nakayama), and its limit is `mu`.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::check_germ;
use crate::error::{Error, Result};
use crate::poly::{jacobian_generators, Monomial, Polynomial};

pub const DEFAULT_ORACLE_CAP: u32 = 40;

fn monomials_below(nvars: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut e = vec![0u32; nvars];
    fn rec(i: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == e.len() {
            out.push(Monomial::new(e.clone()));
            return;
        }
        for a in 0..=left {
            e[i] = a;
            rec(i + 1, left - a, e, out);
        }
        e[i] = 0;
    }
    if degree > 0 {
        rec(0, degree - 1, &mut e, &mut out);
    }
    out
}

/// `dim O/(J_f + m^degree)` by exact Gaussian elimination.
pub fn truncated_quotient_dim(f: &Polynomial, degree: u32) -> usize {
    let n = f.nvars();
    let columns = monomials_below(n, degree);
    let index: HashMap<&Monomial, usize> = columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut echelon = Echelon::new(columns.len());
    for d in jacobian_generators(f) {
        for shift in &columns {
            let mut row = vec![BigRational::zero(); columns.len()];
            let mut any = false;
            for (m, c) in d.terms() {
                let prod = m.mul(shift);
                if prod.degree() < degree {
                    row[index[&prod]] = c.clone();
                    any = true;
                }
            }
            if any {
                echelon.insert(row);
            }
        }
    }
    columns.len() - echelon.rank()
}

/// Milnor number by the truncation oracle, raising the truncation degree
/// until the dimension has stayed constant for two consecutive steps.
/// `degree_cap` is the largest truncation degree tried.
pub fn brute_force_mu_oracle(f: &Polynomial, degree_cap: u32) -> Result<usize> {
    check_germ(f)?;
    let mut history: Vec<usize> = Vec::new();
    for d in 1..=degree_cap {
        let dim = truncated_quotient_dim(f, d);
        history.push(dim);
        if let [.., a, b, c] = history[..] {
            if a == b && b == c {
                return Ok(c);
            }
        }
    }
    Err(Error::OracleInconclusive { cap: degree_cap })
}

/// Row echelon form over the rationals with rows keyed by pivot column.
struct Echelon {
    pivots: Vec<Option<Vec<BigRational>>>,
    rank: usize,
}

impl Echelon {
    fn new(ncols: usize) -> Self {
        Echelon {
            pivots: vec![None; ncols],
            rank: 0,
        }
    }

    fn rank(&self) -> usize {
        self.rank
    }

    fn insert(&mut self, mut row: Vec<BigRational>) {
        for col in 0..row.len() {
            if row[col].is_zero() {
                continue;
            }
            match &self.pivots[col] {
                Some(p) => {
                    let factor = row[col].clone();
                    for (r, q) in row.iter_mut().zip(p).skip(col) {
                        if !q.is_zero() {
                            *r -= &factor * q;
                        }
                    }
                }
                None => {
                    let inv = BigRational::one() / &row[col];
                    for r in row.iter_mut().skip(col) {
                        *r *= &inv;
                    }
                    self.pivots[col] = Some(row);
                    self.rank += 1;
                    return;
                }
            }
        }
    }
}
