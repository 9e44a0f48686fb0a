//! Mora's tangent cone algorithm.

use super::local_poly::LocalPoly;
use super::{staircase, StandardBasisConfig};
use crate::error::{Error, Result};
use crate::poly::{LocalOrder, Monomial};

/// Weak normal form of `h` with respect to `basis`.
///
/// Reducers are chosen with minimal ecart, ties going to the oldest element.
/// Whenever the chosen reducer has a larger ecart than the current remainder,
/// the remainder itself joins the reducer set. The result is zero or has a
/// leading monomial divisible by no leading monomial of `basis`; it equals
/// `u * h` modulo the ideal for some unit `u` of the local ring.
pub(crate) fn normal_form(
    mut h: LocalPoly,
    basis: &[&LocalPoly],
    order: &LocalOrder,
    cut: Option<u32>,
    limits: &StandardBasisConfig,
) -> Result<LocalPoly> {
    let mut extra: Vec<LocalPoly> = Vec::new();
    loop {
        if h.is_zero() {
            return Ok(h);
        }
        check_limits(&h, limits)?;
        let mut best: Option<(u32, usize)> = None;
        for (i, g) in basis.iter().copied().chain(extra.iter()).enumerate() {
            if g.lm().divides(h.lm()) {
                let e = g.ecart();
                if best.is_none_or(|(be, _)| e < be) {
                    best = Some((e, i));
                    if e == 0 {
                        break;
                    }
                }
            }
        }
        let Some((g_ecart, idx)) = best else {
            return Ok(h);
        };
        let reducer = if idx < basis.len() {
            basis[idx]
        } else {
            &extra[idx - basis.len()]
        };
        let next = h.reduce_by(reducer, order, cut);
        if g_ecart > h.ecart() {
            extra.push(h);
        }
        h = next;
    }
}

fn check_limits(h: &LocalPoly, limits: &StandardBasisConfig) -> Result<()> {
    let degree = h.lm().degree();
    if degree > limits.degree_bound {
        return Err(Error::BoundExceeded {
            degree,
            bound: limits.degree_bound,
        });
    }
    let bits = h.max_coefficient_bits();
    if bits > limits.coefficient_bits {
        return Err(Error::CoefficientBoundExceeded {
            bits,
            bound: limits.coefficient_bits,
        });
    }
    Ok(())
}

pub(crate) struct MoraOutput {
    pub(crate) basis: Vec<LocalPoly>,
}

struct Pair {
    i: usize,
    j: usize,
    degree: u32,
    seq: usize,
}

/// Computes a minimal standard basis of the ideal spanned by `gens` (all
/// nonzero) in the localization at the origin.
///
/// With `cut = Some(d)` the ideal is taken to contain every monomial of
/// degree `d`, and terms of that degree or higher are dropped throughout.
pub(crate) fn standard_basis(
    gens: Vec<LocalPoly>,
    order: &LocalOrder,
    limits: &StandardBasisConfig,
    cut: Option<u32>,
) -> Result<MoraOutput> {
    let nvars = order.nvars();
    let mut basis: Vec<LocalPoly> = Vec::new();
    let mut alive: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut seq = 0usize;
    let mut cut = cut;

    let mut insert = |h: LocalPoly,
                      basis: &mut Vec<LocalPoly>,
                      alive: &mut Vec<bool>,
                      pairs: &mut Vec<Pair>|
     -> Result<bool> {
        check_limits(&h, limits)?;
        let k = basis.len();
        for (i, g) in basis.iter().enumerate() {
            if !alive[i] {
                continue;
            }
            pairs.push(Pair {
                i,
                j: k,
                degree: g.lm().lcm(h.lm()).degree() + g.ecart().max(h.ecart()),
                seq,
            });
            seq += 1;
        }
        let unit = h.lm().is_one();
        basis.push(h);
        alive.push(true);
        Ok(unit)
    };

    for mut g in gens {
        g.truncate_basis_element(cut);
        if insert(g, &mut basis, &mut alive, &mut pairs)? {
            return Ok(unit_ideal(nvars));
        }
        update_cut(&basis, &alive, &mut cut, nvars);
    }
    if basis.is_empty() {
        return Err(Error::ZeroIdeal);
    }
    apply_cut(&mut basis, &alive, cut);

    while let Some(pos) = next_pair(&pairs) {
        let Pair { i, j, .. } = pairs.swap_remove(pos);
        if !alive[i] || !alive[j] {
            continue;
        }
        // Product criterion.
        if basis[i].lm().is_coprime(basis[j].lm()) {
            continue;
        }
        let s = basis[i].spoly(&basis[j], order, cut);
        let live: Vec<&LocalPoly> = basis
            .iter()
            .zip(&alive)
            .filter(|(_, &a)| a)
            .map(|(g, _)| g)
            .collect();
        let h = normal_form(s, &live, order, cut, limits)?;
        if h.is_zero() {
            continue;
        }
        if insert(h, &mut basis, &mut alive, &mut pairs)? {
            return Ok(unit_ideal(nvars));
        }
        let before = cut;
        update_cut(&basis, &alive, &mut cut, nvars);
        if cut != before {
            apply_cut(&mut basis, &alive, cut);
        }
    }

    Ok(MoraOutput {
        basis: minimalize(basis, alive),
    })
}

fn unit_ideal(nvars: usize) -> MoraOutput {
    MoraOutput {
        basis: vec![LocalPoly {
            terms: vec![(Monomial::one(nvars), 1.into())],
        }],
    }
}

fn next_pair(pairs: &[Pair]) -> Option<usize> {
    pairs
        .iter()
        .enumerate()
        .min_by_key(|(_, p)| (p.degree, p.seq))
        .map(|(k, _)| k)
}

/// Once the leading monomials leave a finite staircase, every monomial of
/// degree above the staircase lies in the ideal, so terms of that degree can
/// be dropped from all further computation.
fn update_cut(basis: &[LocalPoly], alive: &[bool], cut: &mut Option<u32>, nvars: usize) {
    let lms: Vec<&Monomial> = basis
        .iter()
        .zip(alive)
        .filter(|(_, &a)| a)
        .map(|(g, _)| g.lm())
        .collect();
    if let Some(top) = staircase::max_standard_degree(&lms, nvars) {
        let n = top + 1;
        if cut.is_none_or(|c| n < c) {
            *cut = Some(n);
        }
    }
}

fn apply_cut(basis: &mut [LocalPoly], alive: &[bool], cut: Option<u32>) {
    for (g, a) in basis.iter_mut().zip(alive) {
        if *a {
            g.truncate_basis_element(cut);
        }
    }
}

pub(crate) fn minimal(basis: Vec<LocalPoly>) -> Vec<LocalPoly> {
    let alive = vec![true; basis.len()];
    minimalize(basis, alive)
}

/// Drops elements whose leading monomial is divisible by another's; of equal
/// leading monomials the oldest survives.
fn minimalize(basis: Vec<LocalPoly>, alive: Vec<bool>) -> Vec<LocalPoly> {
    let live: Vec<LocalPoly> = basis
        .into_iter()
        .zip(alive)
        .filter(|(_, a)| *a)
        .map(|(g, _)| g)
        .collect();
    let mut keep = vec![true; live.len()];
    for i in 0..live.len() {
        for j in 0..live.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (a, b) = (live[j].lm(), live[i].lm());
            if a.divides(b) && (a != b || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    live.into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(g, _)| g)
        .collect()
}
