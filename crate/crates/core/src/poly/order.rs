use std::cmp::Ordering;

use super::Monomial;
use crate::error::{Error, Result};

/// Anti-graded reverse lexicographic order (a local degree order).
///
/// Lower total degree is *greater*, so the constant monomial is the maximum.
/// Monomials of equal degree are compared by reverse lexicographic order on
/// the priority permutation: scanning from the lowest-priority variable, the
/// monomial with the smaller exponent is greater. With priority `(x, y)` this
/// gives `1 > x > y > x^2 > x*y > y^2 > ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalOrder {
    /// `priority[k]` is the variable with the k-th highest priority.
    priority: Vec<usize>,
}

impl LocalOrder {
    /// Priority follows declaration order.
    pub fn new(nvars: usize) -> Self {
        LocalOrder {
            priority: (0..nvars).collect(),
        }
    }

    pub fn with_priority(priority: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; priority.len()];
        for &v in &priority {
            if v >= priority.len() || seen[v] {
                return Err(Error::InvalidPriority(format!(
                    "{priority:?} is not a permutation"
                )));
            }
            seen[v] = true;
        }
        Ok(LocalOrder { priority })
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    /// Compares two monomials; `Greater` means `a` is larger in the local order.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        for m in [a, b] {
            if m.nvars() != self.nvars() {
                return Err(Error::DimensionMismatch {
                    expected: self.nvars(),
                    found: m.nvars(),
                });
            }
        }
        Ok(self.cmp(a, b))
    }

    /// [`compare`](Self::compare) without the dimension check.
    pub(crate) fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (da, db) = (a.degree(), b.degree());
        if da != db {
            return db.cmp(&da);
        }
        let (ea, eb) = (a.exponents(), b.exponents());
        for &v in self.priority.iter().rev() {
            if ea[v] != eb[v] {
                return eb[v].cmp(&ea[v]);
            }
        }
        Ordering::Equal
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn constant_beats_linear() {
        let o = LocalOrder::new(1);
        assert_eq!(o.compare(&m(&[0]), &m(&[1])).unwrap(), Ordering::Greater);
        assert_eq!(o.compare(&m(&[1]), &m(&[1])).unwrap(), Ordering::Equal);
    }

    #[test]
    fn revlex_tie_break() {
        // (2,0) - (1,1) = (1,-1): last nonzero entry negative, so x^2 > x*y.
        let o = LocalOrder::new(2);
        assert_eq!(o.compare(&m(&[2, 0]), &m(&[1, 1])).unwrap(), Ordering::Greater);
        assert_eq!(o.compare(&m(&[1, 0]), &m(&[0, 1])).unwrap(), Ordering::Greater);
        // Reversing priority flips the tie-break.
        let r = LocalOrder::with_priority(vec![1, 0]).unwrap();
        assert_eq!(r.compare(&m(&[2, 0]), &m(&[1, 1])).unwrap(), Ordering::Less);
    }

    #[test]
    fn dimension_mismatch() {
        let o = LocalOrder::new(2);
        assert!(matches!(
            o.compare(&m(&[1]), &m(&[1, 0])),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(LocalOrder::with_priority(vec![0, 0]).is_err());
    }
}
