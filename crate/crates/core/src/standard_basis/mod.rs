//! Local standard bases and the Milnor algebra `Q_f = O / J_f`.
//!
//! Standard bases are computed with Mora's tangent cone algorithm in the
//! anti-graded reverse lexicographic order. The standard monomials (the
//! monomials outside the leading ideal) form a monomial basis of the
//! quotient, so the Milnor number is the size of the staircase.
//!
//! Everything is computed over the rationals. For rational germs the
//! staircase does not change under field extension, so `mu` is also the
//! complex dimension of `Q_f`.

mod local_poly;
mod mora;
mod oracle;
pub mod staircase;

use serde::Serialize;

use local_poly::LocalPoly;

pub use oracle::{brute_force_mu_oracle, truncated_quotient_dim, DEFAULT_ORACLE_CAP};

use crate::error::{Error, Result};
use crate::poly::{jacobian_generators, LocalOrder, Monomial, Polynomial};

/// Default total-degree bound on intermediate leading monomials.
pub const DEFAULT_DEGREE_BOUND: u32 = 64;

/// Default bound on the bit length of intermediate coefficients.
pub const DEFAULT_COEFFICIENT_BITS: u64 = 1 << 14;

/// Degree `D` of the first truncation `J + m^D` tried when plain Mora gives
/// up on a Jacobian ideal; later truncations double it.
const TRUNCATION_DEGREE: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StandardBasisConfig {
    /// Safety valve: a leading monomial above this degree aborts with
    /// [`Error::BoundExceeded`].
    pub degree_bound: u32,
    /// Second safety valve: an intermediate coefficient longer than this
    /// many bits aborts with [`Error::CoefficientBoundExceeded`].
    pub coefficient_bits: u64,
}

impl Default for StandardBasisConfig {
    fn default() -> Self {
        StandardBasisConfig {
            degree_bound: DEFAULT_DEGREE_BOUND,
            coefficient_bits: DEFAULT_COEFFICIENT_BITS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Staircase {
    /// Standard monomials sorted descending in the local order.
    Finite(Vec<Monomial>),
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mu {
    Finite(usize),
    NotIsolated,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardBasisResult {
    /// A minimal standard basis, each element with coprime integer
    /// coefficients and positive leading coefficient.
    pub generators: Vec<Polynomial>,
    pub leading_monomials: Vec<Monomial>,
    pub standard_monomials: Staircase,
    pub mu: Mu,
}

/// Weak normal form of `p` with respect to `basis` (Mora's algorithm).
///
/// The result `r` is zero or has a leading monomial divisible by no leading
/// monomial of `basis`, and `u * p - r` lies in the ideal for some unit `u`
/// of the local ring. In particular, when `basis` is a standard basis, `p`
/// belongs to the ideal iff the result is zero.
pub fn mora_normal_form(
    p: &Polynomial,
    basis: &[Polynomial],
    order: &LocalOrder,
) -> Result<Polynomial> {
    let n = order.nvars();
    p.check_nvars(n)?;
    let reducers: Vec<LocalPoly> = basis
        .iter()
        .map(|g| {
            g.check_nvars(n)?;
            Ok(LocalPoly::from_polynomial(g, order))
        })
        .filter(|g: &Result<LocalPoly>| g.as_ref().map_or(true, |g| !g.is_zero()))
        .collect::<Result<_>>()?;
    let refs: Vec<&LocalPoly> = reducers.iter().collect();
    let h = mora::normal_form(
        LocalPoly::from_polynomial(p, order),
        &refs,
        order,
        None,
        &StandardBasisConfig::default(),
    )?;
    Ok(h.to_polynomial(n))
}

pub fn standard_basis(gens: &[Polynomial], order: &LocalOrder) -> Result<StandardBasisResult> {
    standard_basis_with(gens, order, &StandardBasisConfig::default())
}

pub fn standard_basis_with(
    gens: &[Polynomial],
    order: &LocalOrder,
    config: &StandardBasisConfig,
) -> Result<StandardBasisResult> {
    let n = order.nvars();
    let mut work = Vec::new();
    for g in gens {
        g.check_nvars(n)?;
        if !g.is_zero() {
            work.push(LocalPoly::from_polynomial(g, order));
        }
    }
    if work.is_empty() {
        return Err(Error::ZeroIdeal);
    }
    let out = mora::standard_basis(work, order, config, None)?;
    Ok(result(out.basis, order))
}

fn result(basis: Vec<LocalPoly>, order: &LocalOrder) -> StandardBasisResult {
    let n = order.nvars();
    let leading_monomials: Vec<Monomial> = basis.iter().map(|g| g.lm().clone()).collect();
    let lm_refs: Vec<&Monomial> = leading_monomials.iter().collect();
    let (standard_monomials, mu) = match staircase::standard_monomials(&lm_refs, n) {
        Some(mut s) => {
            s.sort_by(|a, b| order.cmp(b, a));
            let mu = s.len();
            (Staircase::Finite(s), Mu::Finite(mu))
        }
        None => (Staircase::Infinite, Mu::NotIsolated),
    };
    StandardBasisResult {
        generators: basis.iter().map(|g| g.to_polynomial(n)).collect(),
        leading_monomials,
        standard_monomials,
        mu,
    }
}

/// Tries the ideal `gens + m^d` first. If its quotient has dimension below
/// `d`, the dimensions of `O / (J + m^k)` stopped growing before `k = d`,
/// so `m^d` already lies in `J` and the truncated basis, completed by the
/// standard monomials of degree `d`, is a standard basis of `J` itself.
/// Returns `None` when the test is inconclusive.
fn truncated_basis(
    gens: &[Polynomial],
    order: &LocalOrder,
    d: u32,
    config: &StandardBasisConfig,
) -> Result<Option<StandardBasisResult>> {
    let n = order.nvars();
    let mut work: Vec<LocalPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| LocalPoly::from_polynomial(g, order))
        .collect();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = d;
        work.push(LocalPoly::monomial(Monomial::new(e)));
    }
    let out = mora::standard_basis(work, order, config, Some(d))?;
    let lms: Vec<&Monomial> = out.basis.iter().map(|g| g.lm()).collect();
    let stairs = staircase::standard_monomials(&lms, n).expect("pure powers are leading monomials");
    if stairs.iter().filter(|m| m.degree() < d).count() >= d as usize {
        return Ok(None);
    }
    let mut basis = out.basis;
    basis.extend(
        stairs
            .into_iter()
            .filter(|m| m.degree() == d)
            .map(LocalPoly::monomial),
    );
    Ok(Some(result(mora::minimal(basis), order)))
}

/// Standard basis of the Jacobian ideal of a germ, in the default order.
///
/// Rejects germs with a constant term. The zero germ has the zero Jacobian
/// ideal and is reported as [`Error::NotIsolated`].
pub fn jacobian_standard_basis(
    f: &Polynomial,
    config: &StandardBasisConfig,
) -> Result<StandardBasisResult> {
    check_germ(f)?;
    let gens = jacobian_generators(f);
    let order = LocalOrder::new(f.nvars());
    if gens.iter().all(Polynomial::is_zero) {
        return Err(Error::NotIsolated);
    }
    let (err, last) = match standard_basis_with(&gens, &order, config) {
        Err(e @ Error::BoundExceeded { .. }) => (e, config.degree_bound),
        // After coefficient blow-up the largest truncations rarely succeed.
        Err(e @ Error::CoefficientBoundExceeded { .. }) => (e, 2 * TRUNCATION_DEGREE),
        other => return other,
    };
    // Plain Mora gave up; truncations can still certify isolation.
    let mut d = TRUNCATION_DEGREE.min(config.degree_bound);
    while d <= last.min(config.degree_bound) {
        match truncated_basis(&gens, &order, d, config) {
            Ok(Some(sb)) => return Ok(sb),
            Ok(None) | Err(Error::BoundExceeded { .. } | Error::CoefficientBoundExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
        d *= 2;
    }
    Err(err)
}

/// A coordinate axis along which every partial derivative of `f` vanishes,
/// if there is one. Any singular coordinate subspace contains a singular
/// axis, so checking the axes covers all of them.
pub fn singular_axis(f: &Polynomial) -> Option<usize> {
    (0..f.nvars()).find(|&i| {
        !f.terms().any(|(m, _)| {
            let e = m.exponents();
            let off: u32 = e.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &k)| k).sum();
            off == 1 || (off == 0 && e[i] > 0)
        })
    })
}

/// Cheap exact certificates that `f` is not an isolated singularity: a
/// singular coordinate axis, or a monomial factor `x^a` of `f` whose
/// critical locus `{x_i = 0}` or `{x_i = x_j = 0}` or `{x_i = f / x_i = 0}`
/// has positive dimension. `false` means only that no certificate was
/// found.
pub fn evidently_not_isolated(f: &Polynomial) -> bool {
    let n = f.nvars();
    if f.is_zero() || singular_axis(f).is_some() {
        return true;
    }
    let mut content = vec![u32::MAX; n];
    for m in f.monomials() {
        for (c, &e) in content.iter_mut().zip(m.exponents()) {
            *c = (*c).min(e);
        }
    }
    let divisors: Vec<usize> = (0..n).filter(|&i| content[i] > 0).collect();
    match divisors.as_slice() {
        [] => false,
        _ if n >= 2 && divisors.iter().any(|&i| content[i] >= 2) => true,
        [_, _, ..] => n >= 3,
        &[i] => n >= 3 && !f.monomials().any(|m| m.degree() == 1 && m.exponents()[i] == 1),
    }
}

pub(crate) fn check_germ(f: &Polynomial) -> Result<()> {
    if num_traits::Zero::is_zero(&f.constant_term()) {
        Ok(())
    } else {
        Err(Error::GermInvalid)
    }
}

/// `dim Q_f`. Zero when `f` has a nonzero linear part.
pub fn milnor_number(f: &Polynomial) -> Result<usize> {
    milnor_number_with(f, &StandardBasisConfig::default())
}

pub fn milnor_number_with(f: &Polynomial, config: &StandardBasisConfig) -> Result<usize> {
    check_germ(f)?;
    if evidently_not_isolated(f) {
        return Err(Error::NotIsolated);
    }
    match jacobian_standard_basis(f, config)?.mu {
        Mu::Finite(mu) => Ok(mu),
        Mu::NotIsolated => Err(Error::NotIsolated),
    }
}

/// The standard monomials of `J_f`, constant monomial first.
pub fn monomial_basis(f: &Polynomial) -> Result<Vec<Monomial>> {
    monomial_basis_with(f, &StandardBasisConfig::default())
}

pub fn monomial_basis_with(f: &Polynomial, config: &StandardBasisConfig) -> Result<Vec<Monomial>> {
    check_germ(f)?;
    if evidently_not_isolated(f) {
        return Err(Error::NotIsolated);
    }
    match jacobian_standard_basis(f, config)?.standard_monomials {
        Staircase::Finite(s) => Ok(s),
        Staircase::Infinite => Err(Error::NotIsolated),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn p(text: &str, vars: &[&str]) -> Polynomial {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        parse_polynomial(text, &names).unwrap()
    }

    fn mons(list: &[&[u32]]) -> Vec<Monomial> {
        list.iter().map(|e| Monomial::new(e.to_vec())).collect()
    }

    #[test]
    fn normal_form_examples() {
        let o = LocalOrder::new(1);
        let x = ["x"];
        assert!(mora_normal_form(&p("x^2", &x), &[p("x^2", &x)], &o).unwrap().is_zero());
        assert_eq!(mora_normal_form(&p("x", &x), &[p("x^2", &x)], &o).unwrap(), p("x", &x));
        // x^2 - x^5 = x^2 (1 - x^3) is x^2 times a unit, so x^2 + x^3 reduces to 0.
        assert!(mora_normal_form(&p("x^2 + x^3", &x), &[p("x^2 - x^5", &x)], &o)
            .unwrap()
            .is_zero());
        // x - x^2 = x(1 - x): the partial remainder must join the reducers.
        assert!(mora_normal_form(&p("x", &x), &[p("x - x^2", &x)], &o).unwrap().is_zero());
    }

    #[test]
    fn standard_basis_examples() {
        let v = ["x", "y"];
        let o = LocalOrder::new(2);
        let r = standard_basis(&[p("3x^2", &v), p("3y^2", &v)], &o).unwrap();
        assert_eq!(r.leading_monomials, mons(&[&[2, 0], &[0, 2]]));
        assert_eq!(
            r.standard_monomials,
            Staircase::Finite(mons(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]))
        );
        assert_eq!(r.mu, Mu::Finite(4));

        let r = standard_basis(&[p("x", &["x"])], &LocalOrder::new(1)).unwrap();
        assert_eq!(r.leading_monomials, mons(&[&[1]]));
        assert_eq!(r.standard_monomials, Staircase::Finite(mons(&[&[0]])));
        assert_eq!(r.mu, Mu::Finite(1));

        let r = standard_basis(&[p("2x*y", &v), p("x^2", &v)], &o).unwrap();
        assert_eq!(r.standard_monomials, Staircase::Infinite);
        assert_eq!(r.mu, Mu::NotIsolated);

        assert_eq!(
            standard_basis(&[Polynomial::zero(2)], &o),
            Err(Error::ZeroIdeal)
        );
    }

    #[test]
    fn unit_ideal() {
        let v = ["x", "y"];
        let r = standard_basis(&[p("x + y^2", &v), p("1 + x", &v)], &LocalOrder::new(2)).unwrap();
        assert_eq!(r.mu, Mu::Finite(0));
        assert_eq!(r.standard_monomials, Staircase::Finite(vec![]));
    }

    #[test]
    fn milnor_numbers() {
        for k in 1..=8u32 {
            let f = Polynomial::from_int_terms(1, &[(1, &[k + 1])]);
            assert_eq!(milnor_number(&f).unwrap(), k as usize);
        }
        assert_eq!(milnor_number(&p("x^3 + y^3", &["x", "y"])).unwrap(), 4);
        assert_eq!(milnor_number(&p("x^2*y", &["x", "y"])), Err(Error::NotIsolated));
        assert_eq!(milnor_number(&p("x^2 + 1", &["x"])), Err(Error::GermInvalid));
        assert_eq!(milnor_number(&p("x + y^3", &["x", "y"])).unwrap(), 0);
        assert_eq!(milnor_number(&Polynomial::zero(2)), Err(Error::NotIsolated));
    }

    #[test]
    fn monomial_bases() {
        assert_eq!(
            monomial_basis(&p("x^3 + y^3", &["x", "y"])).unwrap(),
            mons(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])
        );
        assert_eq!(monomial_basis(&p("x^2 + y^2", &["x", "y"])).unwrap(), mons(&[&[0, 0]]));
        assert_eq!(
            monomial_basis(&p("x^4 + y^3", &["x", "y"])).unwrap(),
            mons(&[&[0, 0], &[1, 0], &[0, 1], &[2, 0], &[1, 1], &[2, 1]])
        );
    }

    #[test]
    fn non_monomial_jacobian() {
        // E7: J = (3x^2 + y^3, 3xy^2); the staircase is not a box.
        assert_eq!(milnor_number(&p("x^3 + x*y^3", &["x", "y"])).unwrap(), 7);
        // D5: x^2 y + y^4
        assert_eq!(milnor_number(&p("x^2*y + y^4", &["x", "y"])).unwrap(), 5);
    }

    #[test]
    fn bound_exceeded() {
        let f = Polynomial::from_int_terms(1, &[(1, &[10])]);
        let cfg = StandardBasisConfig {
            degree_bound: 5,
            ..Default::default()
        };
        assert!(matches!(
            milnor_number_with(&f, &cfg),
            Err(Error::BoundExceeded { degree: 9, bound: 5 })
        ));
    }

    #[test]
    fn singular_axes() {
        let xyz = ["x", "y", "z"];
        let f = p("z^3 - 3*x*y*z^2 + 3*x^3*y^2*z + x^3*y*z^2 - 3*y^3*z^3 + z^6", &xyz);
        assert_eq!(singular_axis(&f), Some(0));
        assert!(matches!(milnor_number(&f), Err(Error::NotIsolated)));
        assert_eq!(singular_axis(&p("x^2*y", &["x", "y"])), Some(1));
        assert_eq!(singular_axis(&p("x^3 + x*y^3", &["x", "y"])), None);
        assert_eq!(singular_axis(&p("x^2*y + y^4", &["x", "y"])), None);
        assert_eq!(singular_axis(&p("x*y*z", &xyz)), Some(0));
    }

    #[test]
    fn monomial_factors() {
        let xyz = ["x", "y", "z"];
        // x (x^2 y + y^5 + z^3) is singular along x = 0 = x^2 y + y^5 + z^3.
        assert!(evidently_not_isolated(&p("x^3*y + x*y^5 + x*z^3", &xyz)));
        assert!(matches!(milnor_number(&p("x^3*y + x*y^5 + x*z^3", &xyz)), Err(Error::NotIsolated)));
        // D4 is y (x^2 + y^2) but isolated in two variables.
        assert!(!evidently_not_isolated(&p("x^2*y + y^3", &["x", "y"])));
        assert_eq!(milnor_number(&p("x^2*y + y^3", &["x", "y"])).unwrap(), 4);
        assert!(evidently_not_isolated(&p("x^2*y^2 + x^2*z^3", &xyz)));
        assert!(evidently_not_isolated(&p("x*y*z^3 + x^4*y + x*y^5", &xyz)));
        // x (1 + ...) is smooth; x + x y z is not covered by the factor rule.
        assert!(!evidently_not_isolated(&p("x + x*y*z", &xyz)));
        assert!(!evidently_not_isolated(&p("x^3 + y^3 + z^3", &xyz)));
        assert!(!evidently_not_isolated(&p("x^3", &["x"])));
    }
}
