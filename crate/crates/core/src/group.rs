//! Finite abelian groups `G = Z_{d_1} x ... x Z_{d_k}`, their characters and
//! diagonal actions on `C^n`.
//!
//! A character is stored as an exponent vector `(c_1, ..., c_k)` meaning
//! `chi(g) = prod_j zeta_{d_j}^{c_j g_j}`. No root of unity is ever
//! materialized; all computations are modular integer arithmetic.
//!
//! For a diagonal action with characters `chi_1, ..., chi_n`, a point with
//! support `S` has stabilizer `∩_{i in S} ker chi_i`, so its orbit has length
//! `[G : ∩ ker chi_i]`, which is at least `ord(chi_i)` for every `i in S`.
//! The shortest orbit of a non-fixed point therefore lies on a coordinate
//! axis and has length `min { ord(chi_i) : chi_i nontrivial }`.
//! [`orbit_length_oracle`] checks this by enumerating group elements.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};

/// Default bound on `|G|` for element enumeration in the orbit oracle.
pub const DEFAULT_ORBIT_GROUP_CAP: u64 = 10_000;
/// Default bound on the number of variables for the oracle's subset loop.
pub const DEFAULT_ORBIT_VAR_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianGroup {
    orders: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Character(Vec<u32>);

impl Character {
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl AbelianGroup {
    /// The group `Z_{orders[0]} x ...`. Every order must be at least 1.
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::InvalidGroup("cyclic factor of order 0".into()));
        }
        Ok(AbelianGroup { orders })
    }

    pub fn cyclic(d: u32) -> Self {
        AbelianGroup::new(vec![d]).expect("cyclic order must be positive")
    }

    pub fn trivial() -> Self {
        AbelianGroup { orders: vec![] }
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().map(|&d| d as u64).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// The character with the given exponents, which must already be reduced.
    pub fn character(&self, exponents: Vec<u32>) -> Result<Character> {
        if exponents.len() != self.orders.len() {
            return Err(Error::InvalidCharacter(format!(
                "expected {} exponents, found {}",
                self.orders.len(),
                exponents.len()
            )));
        }
        if let Some((c, d)) = exponents.iter().zip(&self.orders).find(|(c, d)| c >= d) {
            return Err(Error::InvalidCharacter(format!("exponent {c} out of range for Z_{d}")));
        }
        Ok(Character(exponents))
    }

    /// Reduces arbitrary integer exponents modulo the factor orders.
    pub fn character_reduced(&self, exponents: &[i64]) -> Result<Character> {
        if exponents.len() != self.orders.len() {
            return Err(Error::InvalidCharacter(format!(
                "expected {} exponents, found {}",
                self.orders.len(),
                exponents.len()
            )));
        }
        Ok(Character(
            exponents
                .iter()
                .zip(&self.orders)
                .map(|(&c, &d)| c.rem_euclid(d as i64) as u32)
                .collect(),
        ))
    }

    pub fn trivial_character(&self) -> Character {
        Character(vec![0; self.orders.len()])
    }

    pub fn add(&self, a: &Character, b: &Character) -> Character {
        Character(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.orders)
                .map(|((&x, &y), &d)| ((x as u64 + y as u64) % d as u64) as u32)
                .collect(),
        )
    }

    pub fn neg(&self, a: &Character) -> Character {
        Character(
            a.0.iter()
                .zip(&self.orders)
                .map(|(&x, &d)| (d - x) % d)
                .collect(),
        )
    }

    /// `k * a` in the dual group.
    pub fn scale(&self, a: &Character, k: u64) -> Character {
        Character(
            a.0.iter()
                .zip(&self.orders)
                .map(|(&x, &d)| ((x as u64 % d as u64) * (k % d as u64) % d as u64) as u32)
                .collect(),
        )
    }

    pub fn is_trivial_char(&self, a: &Character) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    /// `lcm_j d_j / gcd(d_j, c_j)`.
    pub fn char_order(&self, a: &Character) -> u64 {
        a.0.iter()
            .zip(&self.orders)
            .map(|(&c, &d)| d as u64 / (d as u64).gcd(&(c as u64)))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    /// All characters, in lexicographic exponent order.
    pub fn characters(&self) -> Vec<Character> {
        self.elements().into_iter().map(Character).collect()
    }

    /// All group elements as coordinate vectors, lexicographically.
    pub fn elements(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for &d in &self.orders {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..d).map(move |g| {
                        let mut v = prefix.clone();
                        v.push(g);
                        v
                    })
                })
                .collect();
        }
        out
    }

    /// `true` if `chi(g) = 1`, i.e. `sum_j c_j g_j / d_j` is an integer.
    pub fn in_kernel(&self, chi: &Character, g: &[u32]) -> bool {
        let l = self.orders.iter().fold(1u64, |acc, &d| acc.lcm(&(d as u64)));
        let s: u64 = chi
            .0
            .iter()
            .zip(g)
            .zip(&self.orders)
            .map(|((&c, &x), &d)| (c as u64 * x as u64 % d as u64) * (l / d as u64))
            .sum();
        s % l == 0
    }
}

/// A diagonal action `g . x = (chi_1(g) x_1, ..., chi_n(g) x_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ActionSpec {
    group: AbelianGroup,
    chars: Vec<Character>,
}

impl ActionSpec {
    pub fn new(group: AbelianGroup, chars: Vec<Character>) -> Result<Self> {
        for c in &chars {
            group.character(c.0.clone())?;
        }
        Ok(ActionSpec { group, chars })
    }

    /// Action of `group` with characters given as rows of integers, reduced
    /// modulo the factor orders.
    pub fn from_rows(group: AbelianGroup, rows: &[Vec<i64>]) -> Result<Self> {
        let chars = rows
            .iter()
            .map(|r| group.character_reduced(r))
            .collect::<Result<_>>()?;
        Ok(ActionSpec { group, chars })
    }

    /// The trivial group acting on `nvars` variables.
    pub fn trivial(nvars: usize) -> Self {
        let group = AbelianGroup::trivial();
        let chars = vec![group.trivial_character(); nvars];
        ActionSpec { group, chars }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn chars(&self) -> &[Character] {
        &self.chars
    }

    pub fn nvars(&self) -> usize {
        self.chars.len()
    }

    pub fn is_nontrivial(&self) -> bool {
        self.chars.iter().any(|c| !self.group.is_trivial_char(c))
    }

    /// Indices of variables with trivial character (pointwise fixed axes).
    pub fn fixed_variables(&self) -> Vec<usize> {
        (0..self.chars.len())
            .filter(|&i| self.group.is_trivial_char(&self.chars[i]))
            .collect()
    }

    /// The inverse action: every character negated.
    pub fn inverse(&self) -> ActionSpec {
        ActionSpec {
            group: self.group.clone(),
            chars: self.chars.iter().map(|c| self.group.neg(c)).collect(),
        }
    }

    /// Variables permuted: variable `i` moves to position `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> ActionSpec {
        let mut chars = self.chars.clone();
        for (i, &p) in perm.iter().enumerate() {
            chars[p] = self.chars[i].clone();
        }
        ActionSpec {
            group: self.group.clone(),
            chars,
        }
    }

    /// Restriction to the listed variables.
    pub fn restrict(&self, keep: &[usize]) -> ActionSpec {
        ActionSpec {
            group: self.group.clone(),
            chars: keep.iter().map(|&i| self.chars[i].clone()).collect(),
        }
    }

    fn check_nvars(&self, n: usize) -> Result<()> {
        if n != self.chars.len() {
            return Err(Error::DimensionMismatch {
                expected: self.chars.len(),
                found: n,
            });
        }
        Ok(())
    }
}

/// Weight of `x^a`: `sum_i a_i chi_i` in the dual group.
pub fn monomial_weight(m: &Monomial, a: &ActionSpec) -> Result<Character> {
    a.check_nvars(m.nvars())?;
    let g = &a.group;
    Ok(m
        .exponents()
        .iter()
        .zip(&a.chars)
        .fold(g.trivial_character(), |acc, (&e, chi)| {
            g.add(&acc, &g.scale(chi, e as u64))
        }))
}

/// A diagonal action multiplies each monomial by a root of unity, so `f` is
/// invariant iff every monomial has trivial weight.
pub fn is_invariant(f: &Polynomial, a: &ActionSpec) -> Result<bool> {
    a.check_nvars(f.nvars())?;
    for m in f.monomials() {
        if !a.group.is_trivial_char(&monomial_weight(m, a)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `l(tau)`: the length of the shortest orbit of a point that is not fixed.
pub fn shortest_orbit_length(a: &ActionSpec) -> Result<u64> {
    a.chars
        .iter()
        .filter(|c| !a.group.is_trivial_char(c))
        .map(|c| a.group.char_order(c))
        .min()
        .ok_or(Error::TrivialAction)
}

pub fn orbit_length_oracle(a: &ActionSpec) -> Result<u64> {
    orbit_length_oracle_with_cap(a, DEFAULT_ORBIT_GROUP_CAP, DEFAULT_ORBIT_VAR_CAP)
}

/// Brute-force `l(tau)`: for every nonempty support `S`, enumerate the
/// elements of `∩_{i in S} ker chi_i` and take the least index `[G : K]`
/// over supports with `K != G`.
pub fn orbit_length_oracle_with_cap(a: &ActionSpec, group_cap: u64, var_cap: usize) -> Result<u64> {
    if !a.is_nontrivial() {
        return Err(Error::TrivialAction);
    }
    let order = a.group.order();
    if order > group_cap {
        return Err(Error::CapExceeded(format!("|G| = {order} exceeds {group_cap}")));
    }
    let n = a.nvars();
    if n > var_cap {
        return Err(Error::CapExceeded(format!("{n} variables exceed {var_cap}")));
    }
    let elements = a.group.elements();
    let words = elements.len().div_ceil(64);
    let kernels: Vec<Vec<u64>> = a
        .chars
        .iter()
        .map(|chi| {
            let mut bits = vec![0u64; words];
            for (k, g) in elements.iter().enumerate() {
                if a.group.in_kernel(chi, g) {
                    bits[k / 64] |= 1 << (k % 64);
                }
            }
            bits
        })
        .collect();
    // kernel of each support, built from the support minus its lowest bit
    let mut subset_kernels: Vec<Vec<u64>> = vec![vec![u64::MAX; words]; 1 << n];
    let mut best = u64::MAX;
    for s in 1usize..(1 << n) {
        let low = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        let k: Vec<u64> = subset_kernels[rest]
            .iter()
            .zip(&kernels[low])
            .map(|(x, y)| x & y)
            .collect();
        let size: u64 = k.iter().map(|w| w.count_ones() as u64).sum();
        subset_kernels[s] = k;
        if size < order {
            best = best.min(order / size);
        }
    }
    Ok(best)
}

pub fn has_fixed_points_outside_origin(a: &ActionSpec) -> bool {
    a.chars.iter().any(|c| a.group.is_trivial_char(c))
}

/// A diagonal action is real (admits an invariant quadratic form of full
/// rank) iff every character occurs as often as its inverse.
pub fn is_real(a: &ActionSpec) -> bool {
    let g = &a.group;
    let count = |c: &Character| a.chars.iter().filter(|d| *d == c).count();
    a.chars.iter().all(|c| count(c) == count(&g.neg(c)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn action(orders: &[u32], rows: &[&[i64]]) -> ActionSpec {
        let g = AbelianGroup::new(orders.to_vec()).unwrap();
        ActionSpec::from_rows(g, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn weights() {
        let z3 = action(&[3], &[&[1], &[2]]);
        let w = monomial_weight(&Monomial::new(vec![3, 0]), &action(&[3], &[&[1], &[0]])).unwrap();
        assert!(z3.group().is_trivial_char(&w));
        let w = monomial_weight(&Monomial::new(vec![1, 1]), &z3).unwrap();
        assert!(z3.group().is_trivial_char(&w));
        let w = monomial_weight(&Monomial::one(2), &z3).unwrap();
        assert!(z3.group().is_trivial_char(&w));
        assert!(monomial_weight(&Monomial::one(3), &z3).is_err());
    }

    #[test]
    fn invariance() {
        let v: Vec<String> = vec!["x".into(), "y".into()];
        let f = crate::poly::parse_polynomial("x^3 + y^3", &v).unwrap();
        assert!(is_invariant(&f, &action(&[3], &[&[1], &[2]])).unwrap());
        assert!(is_invariant(&f, &action(&[3], &[&[1], &[1]])).unwrap());
        let g = crate::poly::parse_polynomial("x^2*y", &v).unwrap();
        assert!(!is_invariant(&g, &action(&[3], &[&[1], &[0]])).unwrap());
    }

    #[test]
    fn orbit_lengths() {
        let z5 = action(&[5], &[&[1], &[0], &[3]]);
        assert_eq!(shortest_orbit_length(&z5).unwrap(), 5);
        let z6 = action(&[6], &[&[3], &[1]]);
        assert_eq!(shortest_orbit_length(&z6).unwrap(), 2);
        assert_eq!(orbit_length_oracle(&z6).unwrap(), 2);
        let klein = action(&[2, 2], &[&[1, 0], &[0, 1]]);
        assert_eq!(shortest_orbit_length(&klein).unwrap(), 2);
        assert_eq!(orbit_length_oracle(&klein).unwrap(), 2);
        assert_eq!(orbit_length_oracle(&action(&[7], &[&[3]])).unwrap(), 7);
        assert_eq!(orbit_length_oracle(&action(&[4], &[&[2], &[2]])).unwrap(), 2);
        // Z_2 x Z_3 with orders 2 and 3 on two axes; the diagonal orbit has length 6.
        assert_eq!(orbit_length_oracle(&action(&[2, 3], &[&[1, 0], &[0, 1]])).unwrap(), 2);
        assert_eq!(
            shortest_orbit_length(&ActionSpec::trivial(2)),
            Err(Error::TrivialAction)
        );
        assert_eq!(orbit_length_oracle(&action(&[4], &[&[0]])), Err(Error::TrivialAction));
        assert!(matches!(
            orbit_length_oracle_with_cap(&action(&[50], &[&[1]]), 10, 4),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn fixed_points() {
        assert!(has_fixed_points_outside_origin(&action(&[3], &[&[0], &[1]])));
        assert!(!has_fixed_points_outside_origin(&action(&[6], &[&[3], &[2]])));
        assert!(has_fixed_points_outside_origin(&ActionSpec::trivial(2)));
    }

    #[test]
    fn character_orders() {
        let g = AbelianGroup::new(vec![4, 6]).unwrap();
        let c = g.character(vec![2, 4]).unwrap();
        assert_eq!(g.char_order(&c), 6);
        assert!(g.character(vec![4, 0]).is_err());
        assert_eq!(g.character_reduced(&[-1, 13]).unwrap().exponents(), &[3, 1]);
    }

    #[test]
    fn reality() {
        assert!(is_real(&action(&[3], &[&[1], &[2]])));
        assert!(!is_real(&action(&[3], &[&[1], &[1]])));
        assert!(is_real(&action(&[2], &[&[1], &[1], &[0]])));
    }
}
