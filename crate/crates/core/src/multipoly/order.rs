use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::Zero;

use super::Monomial;
use crate::exactfield::FieldElem;

/// Monomial orders. Variable 0 is the largest variable in every order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Elimination order: the first `split` variables are compared
    /// lexicographically; ties are broken by grevlex on the remaining ones.
    Block { split: usize },
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exps(), b.exps());
        match *self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::Block { split } => {
                let s = split.min(a.len());
                a[..s].cmp(&b[..s]).then_with(|| grevlex(&a[s..], &b[s..]))
            }
        }
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

/// Monomial keyed by a runtime order, so a `BTreeMap` keeps terms sorted
/// under that order.
#[derive(Clone, Debug)]
pub(crate) struct OrdKey {
    pub mono: Monomial,
    pub ord: MonomialOrder,
}

impl PartialEq for OrdKey {
    fn eq(&self, other: &Self) -> bool {
        self.mono == other.mono
    }
}

impl Eq for OrdKey {}

impl PartialOrd for OrdKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrdKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ord.cmp(&self.mono, &other.mono)
    }
}

/// Mutable polynomial body sorted by a monomial order; the reduction
/// workspace for division and normal forms.
pub(crate) struct SortedTerms {
    ord: MonomialOrder,
    terms: BTreeMap<OrdKey, FieldElem>,
}

impl SortedTerms {
    pub fn new<'a>(ord: MonomialOrder, terms: impl Iterator<Item = (&'a Monomial, &'a FieldElem)>) -> Self {
        let terms = terms
            .map(|(m, c)| (OrdKey { mono: m.clone(), ord }, c.clone()))
            .collect();
        SortedTerms { ord, terms }
    }

    pub fn pop_leading(&mut self) -> Option<(Monomial, FieldElem)> {
        self.terms.pop_last().map(|(k, c)| (k.mono, c))
    }

    /// `self -= coeff * mono * g` over the given terms of `g`.
    pub fn sub_scaled<'a>(
        &mut self,
        coeff: &FieldElem,
        mono: &Monomial,
        g: impl Iterator<Item = (&'a Monomial, &'a FieldElem)>,
    ) {
        for (gm, gc) in g {
            let key = OrdKey { mono: gm.mul(mono), ord: self.ord };
            let delta = coeff * gc;
            match self.terms.get_mut(&key) {
                Some(c) => {
                    *c = &*c - &delta;
                    if c.is_zero() {
                        self.terms.remove(&key);
                    }
                }
                None => {
                    self.terms.insert(key, -delta);
                }
            }
        }
    }
}
