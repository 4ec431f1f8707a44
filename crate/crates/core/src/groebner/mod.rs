//! Buchberger engine producing reduced Gröbner bases, and the ideal
//! operations built on them.

mod solve;

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::exactfield::FieldError;
use crate::multipoly::{reduce_by, same_ring, MPoly, Monomial, MonomialOrder, PolyError, Ring};

pub use solve::{solve_points, Points};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("bases use different monomial orders or rings")]
    OrderMismatch,
    #[error("back-substitution is not possible: {0}")]
    NotZeroDimensionalHandled(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Reduced Gröbner basis: monic, auto-reduced, sorted by decreasing leading
/// monomial. Unique for a given ideal and order, so equality of bases is
/// equality of ideals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    order: MonomialOrder,
    gens: Vec<MPoly>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn gens(&self) -> &[MPoly] {
        &self.gens
    }

    /// True when the basis is `{1}`, i.e. the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].as_constant().is_some()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gens
            .iter()
            .map(|g| g.leading_monomial(self.order).expect("basis elements are nonzero").clone())
            .collect()
    }

    /// Normal form of `f`.
    pub fn reduce(&self, f: &MPoly) -> Result<MPoly, GroebnerError> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(GroebnerError::RingMismatch);
        }
        Ok(reduce_by(f, &self.gens, &self.leading_monomials(), self.order))
    }
}

impl fmt::Display for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.display_with(self.order)).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// S-polynomial of two nonzero polynomials.
pub fn s_polynomial(f: &MPoly, g: &MPoly, ord: MonomialOrder) -> Result<MPoly, GroebnerError> {
    let (fm, fc) = f.leading_term(ord)?;
    let (gm, gc) = g.leading_term(ord)?;
    let lcm = fm.lcm(&gm);
    let a = f.mul_term(&fm.complement_in(&lcm).unwrap(), &fc.inv()?);
    let b = g.mul_term(&gm.complement_in(&lcm).unwrap(), &gc.inv()?);
    Ok(a.checked_sub(&b)?)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// Pairs are selected by the normal strategy (smallest lcm degree, ties by
/// lex on the lcm); coprime leading monomials and the chain criterion
/// discard pairs without reduction.
pub fn buchberger(ring: &Arc<Ring>, gens: &[MPoly], ord: MonomialOrder) -> Result<GroebnerBasis, GroebnerError> {
    let mut basis: Vec<MPoly> = Vec::new();
    let mut leads: Vec<Monomial> = Vec::new();
    for g in gens {
        if !same_ring(g.ring(), ring) {
            return Err(GroebnerError::RingMismatch);
        }
        if g.is_zero() {
            continue;
        }
        let g = g.monic(ord)?;
        if g.as_constant().is_some() {
            return Ok(unit_basis(ring, ord));
        }
        if basis.contains(&g) {
            continue;
        }
        leads.push(g.leading_monomial(ord).unwrap().clone());
        basis.push(g);
    }

    let mut pending: Vec<Pair> = Vec::new();
    let mut pending_set: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.push(Pair { i, j, lcm: leads[i].lcm(&leads[j]) });
            pending_set.insert((i, j));
        }
    }

    while !pending.is_empty() {
        let pick = (0..pending.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pending[a], &pending[b]);
                pa.lcm
                    .degree()
                    .cmp(&pb.lcm.degree())
                    .then_with(|| MonomialOrder::Lex.cmp(&pa.lcm, &pb.lcm))
                    .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
            })
            .unwrap();
        let Pair { i, j, lcm } = pending.swap_remove(pick);
        pending_set.remove(&(i, j));

        if leads[i].is_coprime(&leads[j]) {
            continue;
        }
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && leads[k].divides(&lcm)
                && !pending_set.contains(&key(i, k))
                && !pending_set.contains(&key(j, k))
        });
        if chain {
            continue;
        }

        let s = s_polynomial(&basis[i], &basis[j], ord)?;
        let r = reduce_by(&s, &basis, &leads, ord);
        if r.is_zero() {
            continue;
        }
        let r = r.monic(ord)?;
        if r.as_constant().is_some() {
            return Ok(unit_basis(ring, ord));
        }
        let n = basis.len();
        leads.push(r.leading_monomial(ord).unwrap().clone());
        basis.push(r);
        for k in 0..n {
            pending.push(Pair { i: k, j: n, lcm: leads[k].lcm(&leads[n]) });
            pending_set.insert((k, n));
        }
    }

    Ok(GroebnerBasis { ring: ring.clone(), order: ord, gens: reduce_basis(basis, leads, ord) })
}

fn unit_basis(ring: &Arc<Ring>, ord: MonomialOrder) -> GroebnerBasis {
    GroebnerBasis { ring: ring.clone(), order: ord, gens: vec![MPoly::one(ring)] }
}

/// Minimalizes and inter-reduces a monic Gröbner basis.
fn reduce_basis(basis: Vec<MPoly>, leads: Vec<Monomial>, ord: MonomialOrder) -> Vec<MPoly> {
    let mut keep: Vec<usize> = Vec::new();
    for i in 0..basis.len() {
        let redundant = (0..basis.len()).any(|k| {
            k != i && leads[k].divides(&leads[i]) && (leads[k] != leads[i] || k < i)
        });
        if !redundant {
            keep.push(i);
        }
    }
    let min_basis: Vec<MPoly> = keep.iter().map(|&i| basis[i].clone()).collect();
    let min_leads: Vec<Monomial> = keep.iter().map(|&i| leads[i].clone()).collect();

    let mut out: Vec<(Monomial, MPoly)> = Vec::with_capacity(min_basis.len());
    for (idx, g) in min_basis.iter().enumerate() {
        let others: Vec<MPoly> =
            min_basis.iter().enumerate().filter(|(k, _)| *k != idx).map(|(_, p)| p.clone()).collect();
        let other_leads: Vec<Monomial> =
            min_leads.iter().enumerate().filter(|(k, _)| *k != idx).map(|(_, m)| m.clone()).collect();
        let lm = &min_leads[idx];
        let tail = MPoly::from_terms(
            g.ring(),
            g.terms().filter(|(m, _)| *m != lm).map(|(m, c)| (m.clone(), c.clone())),
        );
        let reduced_tail = reduce_by(&tail, &others, &other_leads, ord);
        let head = MPoly::monomial(g.ring(), lm.clone(), g.coeff(lm));
        out.push((lm.clone(), &head + &reduced_tail));
    }
    out.sort_by(|a, b| ord.cmp(&b.0, &a.0));
    out.into_iter().map(|(_, p)| p).collect()
}

/// Outcome of the weak-Nullstellensatz test.
#[derive(Clone, Debug)]
pub struct Triviality {
    pub trivial: bool,
    pub certificate: GroebnerBasis,
}

/// Decides whether `1` lies in the ideal; over an algebraically closed field
/// that is exactly emptiness of the variety.
pub fn is_trivial(ring: &Arc<Ring>, gens: &[MPoly]) -> Result<Triviality, GroebnerError> {
    let gb = buchberger(ring, gens, MonomialOrder::GrevLex)?;
    Ok(Triviality { trivial: gb.is_unit(), certificate: gb })
}

pub fn ideal_member(f: &MPoly, gb: &GroebnerBasis) -> Result<bool, GroebnerError> {
    Ok(gb.reduce(f)?.is_zero())
}

/// Reduced bases for the same ring and order compare term by term.
pub fn ideal_equal(a: &GroebnerBasis, b: &GroebnerBasis) -> Result<bool, GroebnerError> {
    if a.order != b.order || !same_ring(&a.ring, &b.ring) {
        return Err(GroebnerError::OrderMismatch);
    }
    Ok(a.gens == b.gens)
}

/// Elimination with the full block-order basis it was read from.
#[derive(Clone, Debug)]
pub struct Elimination {
    /// Basis of the source ideal in the permuted ring (eliminated variables
    /// first) under the block order.
    pub full: GroebnerBasis,
    /// Basis of the elimination ideal in the kept variables, under grevlex.
    pub projected: GroebnerBasis,
}

/// Reduced basis of `I ∩ K[keep]`, in a ring made of the kept variables in
/// their original relative order.
pub fn eliminate(ring: &Arc<Ring>, gens: &[MPoly], keep: &[usize]) -> Result<GroebnerBasis, GroebnerError> {
    Ok(eliminate_full(ring, gens, keep)?.projected)
}

pub fn eliminate_full(ring: &Arc<Ring>, gens: &[MPoly], keep: &[usize]) -> Result<Elimination, GroebnerError> {
    let n = ring.nvars();
    let kept: Vec<usize> = {
        let mut k: Vec<usize> = keep.iter().copied().filter(|&i| i < n).collect();
        k.sort_unstable();
        k.dedup();
        k
    };
    let dropped: Vec<usize> = (0..n).filter(|i| !kept.contains(i)).collect();
    let order: Vec<usize> = dropped.iter().chain(&kept).copied().collect();
    let mut map = vec![None; n];
    for (pos, &v) in order.iter().enumerate() {
        map[v] = Some(pos);
    }
    let permuted = Ring::new(order.iter().map(|&v| ring.name(v).to_string()));
    let moved = gens
        .iter()
        .map(|g| {
            if !same_ring(g.ring(), ring) {
                return Err(GroebnerError::RingMismatch);
            }
            Ok(g.rename_into(&permuted, &map)?)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let block = MonomialOrder::Block { split: dropped.len() };
    let full = buchberger(&permuted, &moved, block)?;

    let kept_ring = Ring::new(kept.iter().map(|&v| ring.name(v).to_string()));
    let back: Vec<Option<usize>> = (0..n).map(|pos| pos.checked_sub(dropped.len())).collect();
    let mut projected: Vec<MPoly> = full
        .gens
        .iter()
        .filter(|g| g.support().iter().all(|&v| v >= dropped.len()))
        .map(|g| g.rename_into(&kept_ring, &back))
        .collect::<Result<Vec<_>, _>>()?;
    let ord = MonomialOrder::GrevLex;
    projected.sort_by(|a, b| ord.cmp(b.leading_monomial(ord).unwrap(), a.leading_monomial(ord).unwrap()));
    Ok(Elimination { full, projected: GroebnerBasis { ring: kept_ring, order: ord, gens: projected } })
}

#[cfg(test)]
mod tests;
