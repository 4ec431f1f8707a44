//! Truncated power series and the flat coefficient indexing of truncation
//! levels.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::TextileError;
use crate::exactfield::FieldElem;
use crate::multipoly::{format_terms, MPoly, Monomial, Ring};

/// Multi-indices of total degree exactly `d` in `n` variables, graded-lex
/// with `x1` largest: `(d,0,..)` first, `(..,0,d)` last.
pub fn multi_indices(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for a in (0..=d).rev() {
            prefix.push(a);
            rec(n, d - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Multi-indices with `|α| < k`, degree-major.
pub fn multi_indices_below(n: usize, k: u32) -> Vec<Monomial> {
    (0..k).flat_map(|d| multi_indices(n, d)).collect()
}

fn binomial(n: u64, r: u64) -> u64 {
    let r = r.min(n - r);
    (0..r).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of coefficient variables `y_{i,α}` with `|α| < k`:
/// `m·C(n+k−1, k−1)`.
pub fn var_count(n: usize, k: usize, m: usize) -> usize {
    assert!(n >= 1 && k >= 1 && m >= 1, "var_count needs positive arguments");
    m * binomial((n + k - 1) as u64, (k - 1) as u64) as usize
}

/// Bijection between `(i, α)`, `|α| < k`, and flat variable ids.
///
/// Ids are degree-major, graded-lex in `α` within a degree and by component
/// innermost, so the variables of level `l ≤ k` are exactly the first
/// `var_count(n, l, m)` ids of level `k`.
#[derive(Clone, Debug)]
pub struct CoeffIndexing {
    n: usize,
    m: usize,
    k: u32,
    alphas: Vec<Monomial>,
    ring: Arc<Ring>,
}

impl CoeffIndexing {
    pub fn new(n: usize, m: usize, k: u32) -> Self {
        let alphas = multi_indices_below(n, k);
        let names = alphas.iter().flat_map(|a| (0..m).map(move |i| var_name(i, a)));
        let ring = Ring::new(names);
        CoeffIndexing { n, m, k, alphas, ring }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn level(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.alphas.len() * self.m
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Ring whose variables are the ids in order.
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn alphas(&self) -> &[Monomial] {
        &self.alphas
    }

    pub fn index(&self, i: usize, alpha: &Monomial) -> Option<usize> {
        if i >= self.m || alpha.degree() >= self.k || alpha.exps().len() != self.n {
            return None;
        }
        let pos = self.alphas.iter().position(|a| a == alpha)?;
        Some(pos * self.m + i)
    }

    pub fn var(&self, id: usize) -> (usize, &Monomial) {
        (id % self.m, &self.alphas[id / self.m])
    }

    /// Embedding of this ring's variables into a higher level.
    pub fn embedding(&self) -> Vec<Option<usize>> {
        (0..self.len()).map(Some).collect()
    }
}

/// `y<i>_<a1.a2...>` with a 1-based component number.
pub fn var_name(i: usize, alpha: &Monomial) -> String {
    let parts: Vec<String> = alpha.exps().iter().map(|e| e.to_string()).collect();
    format!("y{}_{}", i + 1, parts.join("."))
}

/// `π_{k,l}` on flat coefficient vectors of `m` components in `n` variables.
pub fn project(v: &[FieldElem], n: usize, m: usize, k: usize, l: usize) -> Result<Vec<FieldElem>, TextileError> {
    if l > k || l == 0 || v.len() != var_count(n, k, m) {
        return Err(TextileError::BadBounds { k, l });
    }
    Ok(v[..var_count(n, l, m)].to_vec())
}

/// `m` power series in `n` variables with every coefficient of total degree
/// below `cap` stored exactly. Absent entries are zero; no entry has
/// `|α| ≥ cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    n: usize,
    cap: u32,
    comps: Vec<BTreeMap<Monomial, FieldElem>>,
}

impl TruncatedSeries {
    pub fn zero(n: usize, m: usize, cap: u32) -> Self {
        TruncatedSeries { n, cap, comps: vec![BTreeMap::new(); m] }
    }

    /// One-component series equal to the constant `c`.
    pub fn constant(n: usize, cap: u32, c: FieldElem) -> Self {
        let mut s = Self::zero(n, 1, cap);
        if cap > 0 {
            s.set(0, Monomial::one(n), c).expect("constant term fits");
        }
        s
    }

    /// One-component series `x^α`, zero when `|α| ≥ cap`.
    pub fn monomial(n: usize, cap: u32, alpha: Monomial) -> Self {
        let mut s = Self::zero(n, 1, cap);
        if alpha.degree() < cap {
            s.comps[0].insert(alpha, FieldElem::one());
        }
        s
    }

    /// Series from one polynomial in the x-variables per component.
    pub fn from_polys(n: usize, cap: u32, polys: &[MPoly]) -> Result<Self, TextileError> {
        let mut s = Self::zero(n, polys.len(), cap);
        for (i, p) in polys.iter().enumerate() {
            if p.ring().nvars() != n {
                return Err(TextileError::ComponentMismatch(format!(
                    "component {} lives in {} variables, expected {n}",
                    i + 1,
                    p.ring().nvars()
                )));
            }
            for (a, c) in p.terms() {
                s.set(i, a.clone(), c.clone())?;
            }
        }
        Ok(s)
    }

    /// Series whose level-`cap` coefficient vector (in `CoeffIndexing`
    /// order) is `v`.
    pub fn from_coefficient_vector(idx: &CoeffIndexing, v: &[FieldElem]) -> Self {
        assert_eq!(v.len(), idx.len(), "coefficient vector length");
        let mut s = Self::zero(idx.n(), idx.m(), idx.level());
        for (id, c) in v.iter().enumerate() {
            let (i, a) = idx.var(id);
            s.set(i, a.clone(), c.clone()).expect("indexing respects the cap");
        }
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.comps.len()
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn coeff(&self, i: usize, alpha: &Monomial) -> FieldElem {
        self.comps[i].get(alpha).cloned().unwrap_or_else(FieldElem::zero)
    }

    /// Nonzero coefficients of component `i`.
    pub fn terms(&self, i: usize) -> impl Iterator<Item = (&Monomial, &FieldElem)> {
        self.comps[i].iter()
    }

    pub fn set(&mut self, i: usize, alpha: Monomial, c: FieldElem) -> Result<(), TextileError> {
        if alpha.degree() >= self.cap {
            return Err(TextileError::CapExceeded { requested: alpha.degree() + 1, cap: self.cap });
        }
        if c.is_zero() {
            self.comps[i].remove(&alpha);
        } else {
            self.comps[i].insert(alpha, c);
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_empty())
    }

    /// Least total degree carrying a nonzero coefficient; `None` for zero.
    pub fn valuation(&self) -> Option<u32> {
        self.comps.iter().flat_map(|c| c.keys().map(|a| a.degree())).min()
    }

    /// `π_k`: keep the coefficients with `|α| < k`.
    pub fn truncate(&self, k: u32) -> Result<Self, TextileError> {
        if k > self.cap {
            return Err(TextileError::CapExceeded { requested: k, cap: self.cap });
        }
        Ok(self.retruncate(k))
    }

    /// Changes the cap; raising it declares the new coefficients zero.
    pub fn with_cap(&self, k: u32) -> Self {
        self.retruncate(k)
    }

    fn retruncate(&self, k: u32) -> Self {
        let comps = self
            .comps
            .iter()
            .map(|c| c.iter().filter(|(a, _)| a.degree() < k).map(|(a, v)| (a.clone(), v.clone())).collect())
            .collect();
        TruncatedSeries { n: self.n, cap: k, comps }
    }

    pub fn component(&self, i: usize) -> Self {
        TruncatedSeries { n: self.n, cap: self.cap, comps: vec![self.comps[i].clone()] }
    }

    /// Componentwise sum; the cap is the smaller of the two.
    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.n, self.m()), (rhs.n, rhs.m()), "series shapes differ");
        let cap = self.cap.min(rhs.cap);
        let mut out = self.retruncate(cap);
        for (i, comp) in rhs.comps.iter().enumerate() {
            for (a, c) in comp.iter().filter(|(a, _)| a.degree() < cap) {
                let v = out.coeff(i, a) + c.clone();
                out.set(i, a.clone(), v).expect("below cap");
            }
        }
        out
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        let comps = self
            .comps
            .iter()
            .map(|comp| {
                comp.iter()
                    .map(|(a, v)| (a.clone(), v * c))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        TruncatedSeries { n: self.n, cap: self.cap, comps }
    }

    /// Cauchy product of two one-component series, truncated at the smaller
    /// cap.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert!(self.m() == 1 && rhs.m() == 1 && self.n == rhs.n, "mul needs one-component series");
        let cap = self.cap.min(rhs.cap);
        let mut out: BTreeMap<Monomial, FieldElem> = BTreeMap::new();
        for (a, x) in &self.comps[0] {
            for (b, y) in &rhs.comps[0] {
                if a.degree() + b.degree() >= cap {
                    continue;
                }
                let e = out.entry(a.mul(b)).or_insert_with(FieldElem::zero);
                *e = &*e + &(x * y);
            }
        }
        out.retain(|_, v| !v.is_zero());
        TruncatedSeries { n: self.n, cap, comps: vec![out] }
    }

    /// Stacks one-component series into a multi-component one.
    pub fn stack(parts: &[Self]) -> Self {
        let n = parts.first().map_or(0, |p| p.n);
        let cap = parts.iter().map(|p| p.cap).min().unwrap_or(0);
        let comps = parts.iter().flat_map(|p| p.retruncate(cap).comps).collect();
        TruncatedSeries { n, cap, comps }
    }

    /// Coefficient vector of level `k ≤ cap` in `CoeffIndexing` order.
    pub fn coefficient_vector(&self, idx: &CoeffIndexing) -> Result<Vec<FieldElem>, TextileError> {
        if idx.level() > self.cap {
            return Err(TextileError::InsufficientCap { needed: idx.level(), cap: self.cap });
        }
        Ok((0..idx.len())
            .map(|id| {
                let (i, a) = idx.var(id);
                self.coeff(i, a)
            })
            .collect())
    }

    /// Component `i` as a polynomial in the x-variables of `ring`.
    pub fn component_poly(&self, i: usize, ring: &Arc<Ring>) -> MPoly {
        MPoly::from_terms(ring, self.comps[i].iter().map(|(a, c)| (a.clone(), c.clone())))
    }

    /// Component `i` with ascending total degree, graded-lex within a degree.
    pub fn display_component(&self, i: usize, x_names: &[String]) -> String {
        let mut terms: Vec<(&Monomial, &FieldElem)> = self.comps[i].iter().collect();
        let rank = |a: &Monomial| {
            let d = a.degree();
            let pos = multi_indices(self.n, d).iter().position(|b| b == a).unwrap_or(0);
            (d, pos)
        };
        terms.sort_by_key(|(a, _)| rank(a));
        format_terms(terms.into_iter(), x_names)
    }

    fn default_x_names(&self) -> Vec<String> {
        (1..=self.n).map(|j| format!("x{j}")).collect()
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.default_x_names();
        for i in 0..self.m() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "y{} = {}", i + 1, self.display_component(i, &names))?;
        }
        Ok(())
    }
}
