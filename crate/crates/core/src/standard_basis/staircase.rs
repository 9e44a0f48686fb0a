//! Staircases of monomial ideals.

use crate::poly::Monomial;

/// Pure-power criterion: the staircase of `lms` is finite iff every
/// variable has a pure power among the leading monomials (or `1` is one).
pub fn is_finite(lms: &[&Monomial], nvars: usize) -> bool {
    if lms.iter().any(|m| m.is_one()) {
        return true;
    }
    (0..nvars).all(|i| lms.iter().any(|m| matches!(m.as_pure_power(), Some((j, _)) if j == i)))
}

pub(crate) fn is_standard(m: &Monomial, lms: &[&Monomial]) -> bool {
    !lms.iter().any(|l| l.divides(m))
}

/// All monomials divisible by no element of `lms`, or `None` if there are
/// infinitely many. Order is unspecified.
pub fn standard_monomials(lms: &[&Monomial], nvars: usize) -> Option<Vec<Monomial>> {
    if !is_finite(lms, nvars) {
        return None;
    }
    let one = Monomial::one(nvars);
    if !is_standard(&one, lms) {
        return Some(Vec::new());
    }
    // Depth-first walk of the order ideal; each monomial is reached once by
    // raising variables in nondecreasing index order.
    let mut out = Vec::new();
    let mut stack = vec![(one, 0usize)];
    while let Some((m, first)) = stack.pop() {
        for k in first..nvars {
            let mut e = m.exponents().to_vec();
            e[k] += 1;
            let child = Monomial::new(e);
            if is_standard(&child, lms) {
                stack.push((child, k));
            }
        }
        out.push(m);
    }
    Some(out)
}

pub(crate) fn max_standard_degree(lms: &[&Monomial], nvars: usize) -> Option<u32> {
    standard_monomials(lms, nvars).map(|s| s.iter().map(Monomial::degree).max().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_staircase() {
        let a = Monomial::new(vec![2, 0]);
        let b = Monomial::new(vec![0, 2]);
        let s = standard_monomials(&[&a, &b], 2).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(max_standard_degree(&[&a, &b], 2), Some(2));
    }

    #[test]
    fn infinite_and_unit() {
        let a = Monomial::new(vec![1, 1]);
        let b = Monomial::new(vec![2, 0]);
        assert!(standard_monomials(&[&a, &b], 2).is_none());
        let one = Monomial::one(2);
        assert_eq!(standard_monomials(&[&one], 2), Some(vec![]));
    }

    #[test]
    fn corner_staircase() {
        // (x^3, x*y, y^2): 1, x, x^2, y
        let lms = [
            Monomial::new(vec![3, 0]),
            Monomial::new(vec![1, 1]),
            Monomial::new(vec![0, 2]),
        ];
        let refs: Vec<&Monomial> = lms.iter().collect();
        assert_eq!(standard_monomials(&refs, 2).unwrap().len(), 4);
    }
}
