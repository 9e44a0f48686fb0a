//! Exact sparse multivariate polynomials over the rationals.
//!
//! A [`Polynomial`] is a finite map from [`Monomial`] to a nonzero
//! [`BigRational`]. Arithmetic is exact; there is no floating point anywhere
//! in this module. The polynomial is a general-purpose kernel: whether it
//! vanishes at the origin is checked by the algebra modules, not here.

mod monomial;
mod order;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use monomial::{default_names, Monomial};
pub use order::LocalOrder;
pub use parse::parse_polynomial;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::from_terms(nvars, [(Monomial::one(nvars), c)])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        Self::from_terms(
            nvars,
            [(Monomial::var(nvars, index), BigRational::one())],
        )
    }

    pub fn monomial(m: Monomial, c: BigRational) -> Self {
        Self::from_terms(m.nvars(), [(m, c)])
    }

    /// Builds a polynomial from terms, combining like monomials and dropping
    /// zero coefficients.
    ///
    /// Panics if a monomial has the wrong number of variables.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial has wrong dimension");
            p.add_term(m, c);
        }
        p
    }

    /// Convenience constructor from `(coefficient, exponents)` pairs with
    /// integer coefficients.
    pub fn from_int_terms(nvars: usize, terms: &[(i64, &[u32])]) -> Self {
        Self::from_terms(
            nvars,
            terms.iter().map(|&(c, e)| {
                (
                    Monomial::new(e.to_vec()),
                    BigRational::from_integer(BigInt::from(c)),
                )
            }),
        )
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (lexicographic exponent) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// Terms sorted descending in the given local order (leading term first).
    pub fn sorted_terms(&self, order: &LocalOrder) -> Vec<(Monomial, BigRational)> {
        let mut v: Vec<_> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        v.sort_by(|a, b| order.cmp(&b.0, &a.0));
        v
    }

    pub fn leading_monomial(&self, order: &LocalOrder) -> Option<&Monomial> {
        self.terms.keys().max_by(|a, b| order.cmp(a, b))
    }

    /// Largest total degree of a term; `None` for the zero polynomial.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Smallest total degree of a term (the order of vanishing).
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// The terms of total degree at most `d`.
    pub fn jet(&self, d: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Formal partial derivative with respect to variable `index`.
    pub fn derivative(&self, index: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents()[index];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[index] -= 1;
            out.add_term(
                Monomial::new(exps),
                c * BigRational::from_integer(BigInt::from(e)),
            );
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::constant(self.nvars, BigRational::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Sets the listed variables to zero.
    pub fn substitute_zero(&self, vars: &[usize]) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| vars.iter().all(|&v| m.exponents()[v] == 0))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Moves the polynomial into a ring with `nvars` variables, sending
    /// variable `i` to `positions[i]`.
    pub fn embed(&self, nvars: usize, positions: &[usize]) -> Polynomial {
        assert_eq!(positions.len(), self.nvars);
        Polynomial {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.embed(nvars, positions), c.clone()))
                .collect(),
        }
    }

    /// Keeps only the listed variables (in the listed order). Terms involving
    /// any other variable must have been removed first.
    pub fn project(&self, keep: &[usize]) -> Polynomial {
        Polynomial {
            nvars: keep.len(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let e = keep.iter().map(|&i| m.exponents()[i]).collect();
                    (Monomial::new(e), c.clone())
                })
                .collect(),
        }
    }

    /// Permutes variables: variable `i` becomes variable `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Polynomial {
        self.embed(self.nvars, perm)
    }

    /// Renders the polynomial in the text grammar accepted by
    /// [`parse_polynomial`], leading term (in the default local order) first.
    pub fn format(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let order = LocalOrder::new(self.nvars);
        let mut out = String::new();
        for (i, (m, c)) in self.sorted_terms(&order).into_iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            if m.is_one() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&m.format(names));
            } else {
                out.push_str(&format!("{}*{}", a, m.format(names)));
            }
        }
        out
    }

    pub(crate) fn check_nvars(&self, n: usize) -> Result<()> {
        if self.nvars != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.nvars,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(&default_names(self.nvars)))
    }
}

/// The `n` formal partial derivatives `∂f/∂x_1, ..., ∂f/∂x_n`.
pub fn jacobian_generators(f: &Polynomial) -> Vec<Polynomial> {
    (0..f.nvars()).map(|i| f.derivative(i)).collect()
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
