//! Working representation for the Mora engine: integer coefficients, terms
//! kept sorted descending in the local order.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::{LocalOrder, Monomial, Polynomial};

#[derive(Debug, Clone)]
pub(crate) struct LocalPoly {
    pub(crate) terms: Vec<(Monomial, BigInt)>,
}

impl LocalPoly {
    /// Clears denominators and sorts. The result spans the same ideal as `p`.
    pub(crate) fn from_polynomial(p: &Polynomial, order: &LocalOrder) -> Self {
        let mut den = BigInt::one();
        for (_, c) in p.terms() {
            den = den.lcm(c.denom());
        }
        let mut terms: Vec<(Monomial, BigInt)> = p
            .terms()
            .map(|(m, c)| (m.clone(), c.numer() * (&den / c.denom())))
            .collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut lp = LocalPoly { terms };
        lp.make_primitive();
        lp
    }

    pub(crate) fn monomial(m: Monomial) -> Self {
        LocalPoly {
            terms: vec![(m, BigInt::one())],
        }
    }

    pub(crate) fn to_polynomial(&self, nvars: usize) -> Polynomial {
        Polynomial::from_terms(
            nvars,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), BigRational::from_integer(c.clone()))),
        )
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub(crate) fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    pub(crate) fn max_coefficient_bits(&self) -> u64 {
        self.terms.iter().map(|(_, c)| c.bits()).max().unwrap_or(0)
    }

    /// Mora's ecart: the largest term degree minus the degree of the leading
    /// monomial.
    pub(crate) fn ecart(&self) -> u32 {
        let top = self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        top - self.lm().degree()
    }

    /// Drops every term of total degree `>= cut`.
    pub(crate) fn truncate(&mut self, cut: Option<u32>) {
        if let Some(n) = cut {
            self.terms.retain(|(m, _)| m.degree() < n);
        }
    }

    /// Truncation for basis elements: an element whose leading monomial lies
    /// at or above the cut is replaced by that monomial, which is itself in
    /// the ideal, so the leading ideal is preserved.
    pub(crate) fn truncate_basis_element(&mut self, cut: Option<u32>) {
        if let Some(n) = cut {
            if self.lm().degree() >= n {
                let lm = self.lm().clone();
                self.terms = vec![(lm, BigInt::one())];
            } else {
                self.truncate(cut);
            }
        }
    }

    /// Divides by the content and makes the leading coefficient positive.
    pub(crate) fn make_primitive(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.lc().is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in &mut self.terms {
                *c /= &g;
            }
        }
    }

    /// `a * self - b * (shift * other)`, merged in order, truncated at `cut`.
    pub(crate) fn combine(
        &self,
        a: &BigInt,
        other: &LocalPoly,
        b: &BigInt,
        shift: &Monomial,
        order: &LocalOrder,
        cut: Option<u32>,
    ) -> LocalPoly {
        let keep = |m: &Monomial| cut.is_none_or(|n| m.degree() < n);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut left = self.terms.iter().peekable();
        let mut right = other
            .terms
            .iter()
            .map(|(m, c)| (m.mul(shift), c))
            .peekable();
        loop {
            let step = match (left.peek(), right.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(l), Some(r)) => order.cmp(&l.0, &r.0),
            };
            match step {
                Ordering::Greater => {
                    let (m, c) = left.next().unwrap();
                    if keep(m) {
                        out.push((m.clone(), a * c));
                    }
                }
                Ordering::Less => {
                    let (m, c) = right.next().unwrap();
                    if keep(&m) {
                        out.push((m, -(b * c)));
                    }
                }
                Ordering::Equal => {
                    let (m, c1) = left.next().unwrap();
                    let (_, c2) = right.next().unwrap();
                    if keep(m) {
                        let c = a * c1 - b * c2;
                        if !c.is_zero() {
                            out.push((m.clone(), c));
                        }
                    }
                }
            }
        }
        let mut r = LocalPoly { terms: out };
        r.make_primitive();
        r
    }

    /// Cancels the leading term of `self` against `g`, whose leading monomial
    /// must divide it.
    pub(crate) fn reduce_by(&self, g: &LocalPoly, order: &LocalOrder, cut: Option<u32>) -> LocalPoly {
        let shift = g.lm().quotient_of(self.lm()).expect("reducer must divide");
        let d = self.lc().gcd(g.lc());
        let a = g.lc() / &d;
        let b = self.lc() / &d;
        self.combine(&a, g, &b, &shift, order, cut)
    }

    /// The s-polynomial of two elements.
    pub(crate) fn spoly(&self, other: &LocalPoly, order: &LocalOrder, cut: Option<u32>) -> LocalPoly {
        let l = self.lm().lcm(other.lm());
        let s1 = self.lm().quotient_of(&l).unwrap();
        let s2 = other.lm().quotient_of(&l).unwrap();
        let d = self.lc().gcd(other.lc());
        let a = other.lc() / &d;
        let b = self.lc() / &d;
        let lifted = LocalPoly {
            terms: self.terms.iter().map(|(m, c)| (m.mul(&s1), c.clone())).collect(),
        };
        lifted.combine(&a, other, &b, &s2, order, cut)
    }
}
