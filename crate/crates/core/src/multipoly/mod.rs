//! Sparse multivariate polynomials over the session field.

mod division;
mod order;
pub mod parse;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactfield::{FieldElem, FieldError};

pub use division::divide;
pub(crate) use division::reduce_by;
pub use order::MonomialOrder;
pub(crate) use order::SortedTerms;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("variable `{0}` has no counterpart in the target ring")]
    VariableNotInTarget(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Variable table of a polynomial ring.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
}

impl Ring {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Arc<Ring> {
        Arc::new(Ring { names: names.into_iter().map(Into::into).collect() })
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

pub(crate) fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Exponent vector, one slot per ring variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; nvars];
        v[i] = e;
        Monomial(v)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `other / self` when `self` divides `other`.
    pub fn complement_in(&self, other: &Monomial) -> Option<Monomial> {
        other
            .0
            .iter()
            .zip(&self.0)
            .map(|(b, a)| b.checked_sub(*a))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// `Some(i)` when the monomial is a pure power `x_i^e` with `e >= 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Value substituted for a variable.
#[derive(Clone, Debug)]
pub enum Subst {
    Scalar(FieldElem),
    Poly(MPoly),
}

/// Sparse polynomial: monomial → nonzero coefficient.
#[derive(Clone, Debug)]
pub struct MPoly {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for MPoly {}

impl MPoly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        MPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: FieldElem) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, FieldElem::one())
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i, 1), FieldElem::one())
    }

    pub fn monomial(ring: &Arc<Ring>, mono: Monomial, c: FieldElem) -> Self {
        debug_assert_eq!(mono.exps().len(), ring.nvars());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        MPoly { ring: ring.clone(), terms }
    }

    /// Sums the given terms; repeated monomials accumulate.
    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, FieldElem)>) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElem {
        self.terms.get(m).cloned().unwrap_or_else(FieldElem::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` for constant polynomials (including zero).
    pub fn as_constant(&self) -> Option<FieldElem> {
        match self.terms.len() {
            0 => Some(FieldElem::zero()),
            1 => self.terms.iter().next().filter(|(m, _)| m.is_one()).map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Indices of variables occurring with positive exponent.
    pub fn support(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            out.extend(m.exps().iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i));
        }
        out
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x = &*x + c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check_ring(&self, other: &MPoly) -> Result<(), PolyError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn checked_add(&self, rhs: &MPoly) -> Result<MPoly, PolyError> {
        self.check_ring(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &MPoly) -> Result<MPoly, PolyError> {
        self.check_ring(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, rhs: &MPoly) -> Result<MPoly, PolyError> {
        self.check_ring(rhs)?;
        Ok(self.mul_filtered(rhs, |_| true))
    }

    /// Product keeping only monomials accepted by `keep`.
    pub(crate) fn mul_filtered(&self, rhs: &MPoly, keep: impl Fn(&Monomial) -> bool) -> MPoly {
        let mut out = MPoly::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                if keep(&m) {
                    out.add_term(m, &(ca * cb));
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &FieldElem) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.ring);
        }
        MPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_term(&self, mono: &Monomial, c: &FieldElem) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.ring);
        }
        MPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.mul(mono), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The order-maximal term.
    pub fn leading_term(&self, ord: MonomialOrder) -> Result<(Monomial, FieldElem), PolyError> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(a.0, b.0))
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(PolyError::ZeroPolynomial)
    }

    pub fn leading_monomial(&self, ord: MonomialOrder) -> Option<&Monomial> {
        self.terms.keys().max_by(|a, b| ord.cmp(a, b))
    }

    /// Scales so that the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self, ord: MonomialOrder) -> Result<MPoly, PolyError> {
        match self.leading_term(ord) {
            Ok((_, c)) => Ok(self.scale(&c.inv()?)),
            Err(_) => Ok(self.clone()),
        }
    }

    /// Terms sorted from the largest monomial down.
    pub fn sorted_terms(&self, ord: MonomialOrder) -> Vec<(&Monomial, &FieldElem)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| ord.cmp(b.0, a.0));
        v
    }

    /// Replaces assigned variables; unassigned variables persist. Polynomial
    /// values must live in the same ring.
    pub fn substitute(&self, assignment: &BTreeMap<usize, Subst>) -> Result<MPoly, PolyError> {
        for s in assignment.values() {
            if let Subst::Poly(p) = s {
                self.check_ring(p)?;
            }
        }
        let mut cache: HashMap<(usize, u32), MPoly> = HashMap::new();
        let mut out = MPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut rest = m.exps().to_vec();
            let mut coeff = c.clone();
            let mut poly_factor: Option<MPoly> = None;
            for (&v, s) in assignment {
                let e = m.exps()[v];
                if e == 0 {
                    continue;
                }
                rest[v] = 0;
                match s {
                    Subst::Scalar(x) => coeff = &coeff * &x.pow(e),
                    Subst::Poly(p) => {
                        let pw = cache.entry((v, e)).or_insert_with(|| p.pow(e)).clone();
                        poly_factor = Some(match poly_factor {
                            None => pw,
                            Some(f) => &f * &pw,
                        });
                    }
                }
            }
            let mono = Monomial::new(rest);
            match poly_factor {
                None => out.add_term(mono, &coeff),
                Some(f) => {
                    for (fm, fc) in f.terms() {
                        out.add_term(fm.mul(&mono), &(&coeff * fc));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Substitutes scalar values for the listed variables.
    pub fn substitute_values(&self, values: &[(usize, FieldElem)]) -> MPoly {
        let assignment = values.iter().map(|(i, x)| (*i, Subst::Scalar(x.clone()))).collect();
        self.substitute(&assignment).expect("scalar substitution cannot mismatch rings")
    }

    /// Full evaluation at a point with one coordinate per variable.
    pub fn eval(&self, point: &[FieldElem]) -> FieldElem {
        let mut acc = FieldElem::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Moves the polynomial into `target`, sending variable `i` to
    /// `map[i]`. Variables mapped to `None` must not occur.
    pub fn rename_into(&self, target: &Arc<Ring>, map: &[Option<usize>]) -> Result<MPoly, PolyError> {
        let mut out = MPoly::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.nvars()];
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map.get(i).copied().flatten() {
                    Some(j) => exps[j] += e,
                    None => return Err(PolyError::VariableNotInTarget(self.ring.name(i).to_string())),
                }
            }
            out.add_term(Monomial::new(exps), c);
        }
        Ok(out)
    }

    /// Evaluates `self` at polynomial images in another ring:
    /// variable `i` ↦ `images[i]`. Every intermediate product is filtered
    /// through `keep`, which is how truncated compositions are computed.
    pub fn compose(
        &self,
        target: &Arc<Ring>,
        images: &[MPoly],
        keep: impl Fn(&Monomial) -> bool + Copy,
    ) -> Result<MPoly, PolyError> {
        if images.len() != self.ring.nvars() || images.iter().any(|p| !same_ring(p.ring(), target)) {
            return Err(PolyError::RingMismatch);
        }
        let mut powers: HashMap<(usize, u32), MPoly> = HashMap::new();
        let mut out = MPoly::zero(target);
        for (m, c) in &self.terms {
            let mut acc = MPoly::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers.entry((i, e)).or_insert_with(|| {
                    (0..e).fold(MPoly::one(target), |p, _| p.mul_filtered(&images[i], keep))
                });
                acc = acc.mul_filtered(p, keep);
                if acc.is_zero() {
                    break;
                }
            }
            for (am, ac) in acc.terms {
                if keep(&am) {
                    out.add_term(am, &ac);
                }
            }
        }
        Ok(out)
    }

    /// Rendering with terms in descending `ord` order.
    pub fn display_with(&self, ord: MonomialOrder) -> String {
        let terms = self.sorted_terms(ord);
        format_terms(terms.into_iter(), self.ring.names())
    }
}

/// Renders `c1*m1 + c2*m2 - ...` in the shared polynomial grammar.
pub(crate) fn format_terms<'a>(
    terms: impl Iterator<Item = (&'a Monomial, &'a FieldElem)>,
    names: &[String],
) -> String {
    let mut out = String::new();
    for (m, c) in terms {
        let (neg, body) = match c {
            FieldElem::Rat(r) if r.is_negative() => (true, (-r).to_string()),
            FieldElem::Rat(r) => (false, r.to_string()),
            FieldElem::Nf(x) => (false, format!("({x})")),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.is_one() {
            out.push_str(&body);
        } else if body == "1" {
            out.push_str(&m.fmt_with(names));
        } else {
            out.push_str(&format!("{body}*{}", m.fmt_with(names)));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(MonomialOrder::GrevLex))
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a MPoly> for &'a MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &'a MPoly) -> MPoly {
                self.$checked(rhs).expect("polynomials from different rings")
            }
        }
        impl $trait<MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-FieldElem::one())
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

#[cfg(test)]
mod tests;
