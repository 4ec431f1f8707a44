//! Finite presentations of textile maps: coefficient extraction,
//! evaluation on truncated series and the counterexample family.

mod series;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::One;
use thiserror::Error;

use crate::exactfield::{Field, FieldElem, FieldError};
use crate::multipoly::{MPoly, Monomial, PolyError, Ring};

pub use series::{
    multi_indices, multi_indices_below, project, var_count, var_name, CoeffIndexing, TruncatedSeries,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextileError {
    #[error("truncation to degree {requested} exceeds the cap {cap}")]
    CapExceeded { requested: u32, cap: u32 },
    #[error("cannot project level {k} to level {l}")]
    BadBounds { k: usize, l: usize },
    #[error("order {n} is outside 1..={max}")]
    OutOfRange { n: usize, max: usize },
    #[error("alphas list has {len} entries, {needed} needed")]
    AlphaListTooShort { needed: usize, len: usize },
    #[error("alphas are not pairwise distinct")]
    DuplicateAlphas,
    #[error("series cap {cap} is below the dependency bound {needed}")]
    InsufficientCap { needed: u32, cap: u32 },
    #[error("series shape does not match the system: {0}")]
    ComponentMismatch(String),
    #[error("invalid system: {0}")]
    Invalid(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// How the map is presented.
#[derive(Clone, Debug, PartialEq)]
pub enum Mode {
    /// `G(y)(x) = F(x, y(x))` for polynomials `F_j` in the ring
    /// `x1..xn, y1..ym`.
    Composition { f: Vec<MPoly> },
    /// Coefficient polynomials listed up to `max_n`. `depend[N-1] = D_N`;
    /// table polynomials live in the level `max D_N` coefficient ring, and
    /// absent entries are zero.
    Explicit { max_n: usize, depend: Vec<usize>, table: BTreeMap<(usize, Monomial), MPoly> },
    /// `G_{1,0} = 0`, `G_{1,l} = (y_0 − α_{l−1})·y_l − 1`.
    Counterexample { alphas: Vec<FieldElem> },
}

/// A textile map `K[[x]]^m → K[[x]]^q` in `n` variables over `field`.
#[derive(Clone, Debug, PartialEq)]
pub struct TextileSystem {
    field: Field,
    n: usize,
    m: usize,
    q: usize,
    mode: Mode,
}

impl TextileSystem {
    /// Names of the composition ring: `x1..xn` then `y1..ym`.
    pub fn composition_ring(n: usize, m: usize) -> Arc<Ring> {
        Ring::new((1..=n).map(|j| format!("x{j}")).chain((1..=m).map(|i| format!("y{i}"))))
    }

    pub fn composition(field: Field, n: usize, m: usize, f: Vec<MPoly>) -> Result<Self, TextileError> {
        if n == 0 || m == 0 || f.is_empty() {
            return Err(TextileError::Invalid("dimensions must be positive".into()));
        }
        let ring = Self::composition_ring(n, m);
        for (j, p) in f.iter().enumerate() {
            if p.ring().names() != ring.names() {
                return Err(TextileError::Invalid(format!("F{} is not a polynomial in x1..x{n}, y1..y{m}", j + 1)));
            }
        }
        check_field(&field, f.iter().flat_map(|p| p.terms().map(|(_, c)| c)))?;
        let q = f.len();
        Ok(TextileSystem { field, n, m, q, mode: Mode::Composition { f } })
    }

    pub fn explicit(
        field: Field,
        n: usize,
        m: usize,
        q: usize,
        depend: Vec<usize>,
        table: BTreeMap<(usize, Monomial), MPoly>,
    ) -> Result<Self, TextileError> {
        if n == 0 || m == 0 || q == 0 {
            return Err(TextileError::Invalid("dimensions must be positive".into()));
        }
        let max_n = depend.len();
        if max_n == 0 {
            return Err(TextileError::Invalid("max-degree must be at least 1".into()));
        }
        for (idx, &d) in depend.iter().enumerate() {
            if d < idx + 1 {
                return Err(TextileError::Invalid(format!("D_{} = {d} is below {}", idx + 1, idx + 1)));
            }
        }
        let top = CoeffIndexing::new(n, m, *depend.iter().max().unwrap() as u32);
        for ((j, beta), p) in &table {
            if *j >= q || beta.exps().len() != n || beta.degree() as usize >= max_n {
                return Err(TextileError::Invalid(format!("coefficient ({}, {:?}) is out of range", j + 1, beta.exps())));
            }
            if p.ring().names() != top.ring().names() {
                return Err(TextileError::Invalid("table polynomials must use the top-level coefficient ring".into()));
            }
            // the entry is read at every order N > |β|
            for (idx, &d) in depend.iter().enumerate().skip(beta.degree() as usize) {
                let allowed = var_count(n, d, m);
                if p.support().iter().any(|&v| v >= allowed) {
                    return Err(TextileError::Invalid(format!(
                        "coefficient ({}, {:?}) uses variables beyond D_{} = {d}",
                        j + 1,
                        beta.exps(),
                        idx + 1
                    )));
                }
            }
        }
        check_field(&field, table.values().flat_map(|p| p.terms().map(|(_, c)| c)))?;
        Ok(TextileSystem { field, n, m, q, mode: Mode::Explicit { max_n, depend, table } })
    }

    pub fn counterexample(field: Field, alphas: Vec<FieldElem>) -> Result<Self, TextileError> {
        check_distinct(&alphas)?;
        check_field(&field, alphas.iter())?;
        Ok(TextileSystem { field, n: 1, m: 1, q: 1, mode: Mode::Counterexample { alphas } })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn mode(&self) -> &Mode {
        &self.mode
    }

    /// Largest order the presentation covers, if bounded.
    pub fn max_order(&self) -> Option<usize> {
        match &self.mode {
            Mode::Composition { .. } => None,
            Mode::Explicit { max_n, .. } => Some(*max_n),
            Mode::Counterexample { alphas } => Some(alphas.len() + 1),
        }
    }

    /// `D_N`: the output coefficients of degree `< N` depend only on input
    /// coefficients of degree `< D_N`.
    pub fn depend_bound(&self, order: usize) -> Result<usize, TextileError> {
        match &self.mode {
            Mode::Explicit { max_n, depend, .. } => {
                if order == 0 || order > *max_n {
                    return Err(TextileError::OutOfRange { n: order, max: *max_n });
                }
                Ok(depend[order - 1])
            }
            _ if order == 0 => Err(TextileError::OutOfRange { n: 0, max: usize::MAX }),
            _ => Ok(order),
        }
    }

    pub fn indexing(&self, level: usize) -> CoeffIndexing {
        CoeffIndexing::new(self.n, self.m, level as u32)
    }

    /// `G_{j,β}` for `|β| < N` as polynomials in the level-`D_N`
    /// coefficient variables.
    pub fn extract_coeffs(&self, order: usize) -> Result<Extraction, TextileError> {
        let d = self.depend_bound(order)?;
        let idx = self.indexing(d);
        let betas = multi_indices_below(self.n, order as u32);
        let mut polys: BTreeMap<(usize, Monomial), MPoly> = BTreeMap::new();
        match &self.mode {
            Mode::Composition { f } => {
                // ring of x-variables followed by the coefficient variables
                let names: Vec<String> = (1..=self.n)
                    .map(|j| format!("x{j}"))
                    .chain(idx.ring().names().iter().cloned())
                    .collect();
                let big = Ring::new(names);
                let n = self.n;
                let mut images: Vec<MPoly> = (0..n).map(|j| MPoly::var(&big, j)).collect();
                for i in 0..self.m {
                    let mut yi = MPoly::zero(&big);
                    for a in idx.alphas() {
                        let v = idx.index(i, a).unwrap();
                        let mut exps = a.exps().to_vec();
                        exps.extend(std::iter::repeat_n(0, idx.len()));
                        exps[n + v] = 1;
                        yi = &yi + &MPoly::monomial(&big, Monomial::new(exps), FieldElem::one());
                    }
                    images.push(yi);
                }
                let keep = move |mono: &Monomial| mono.exps()[..n].iter().sum::<u32>() < order as u32;
                let coeff_ring = idx.ring().clone();
                for (j, fj) in f.iter().enumerate() {
                    let g = fj.compose(&big, &images, keep)?;
                    let mut by_beta: HashMap<Vec<u32>, MPoly> = HashMap::new();
                    for (mono, c) in g.terms() {
                        let (beta, rest) = mono.exps().split_at(n);
                        let entry = by_beta.entry(beta.to_vec()).or_insert_with(|| MPoly::zero(&coeff_ring));
                        *entry = &*entry + &MPoly::monomial(&coeff_ring, Monomial::new(rest.to_vec()), c.clone());
                    }
                    for beta in &betas {
                        let p = by_beta.remove(beta.exps()).unwrap_or_else(|| MPoly::zero(&coeff_ring));
                        polys.insert((j, beta.clone()), p);
                    }
                }
            }
            Mode::Explicit { table, .. } => {
                for j in 0..self.q {
                    for beta in &betas {
                        let p = match table.get(&(j, beta.clone())) {
                            Some(p) => p.rename_into(idx.ring(), &prefix_map(p.ring().nvars(), idx.len()))?,
                            None => MPoly::zero(idx.ring()),
                        };
                        polys.insert((j, beta.clone()), p);
                    }
                }
            }
            Mode::Counterexample { alphas } => {
                let ring = idx.ring();
                polys.insert((0, Monomial::new(vec![0])), MPoly::zero(ring));
                for l in 1..order {
                    let alpha = alphas
                        .get(l - 1)
                        .ok_or(TextileError::AlphaListTooShort { needed: l, len: alphas.len() })?;
                    polys.insert((0, Monomial::new(vec![l as u32])), counterexample_coeff(ring, alpha, l));
                }
            }
        }
        Ok(Extraction { order, indexing: idx, betas, q: self.q, polys })
    }

    /// `G(y) mod (x)^N`, computed by series arithmetic independently of the
    /// symbolic extraction.
    pub fn evaluate(&self, y: &TruncatedSeries, order: usize) -> Result<TruncatedSeries, TextileError> {
        if y.n() != self.n || y.m() != self.m {
            return Err(TextileError::ComponentMismatch(format!(
                "series has n={}, m={}; system has n={}, m={}",
                y.n(),
                y.m(),
                self.n,
                self.m
            )));
        }
        let d = self.depend_bound(order)?;
        if (y.cap() as usize) < d {
            return Err(TextileError::InsufficientCap { needed: d as u32, cap: y.cap() });
        }
        let cap = order as u32;
        let y = y.with_cap(cap.max(y.cap()));
        match &self.mode {
            Mode::Composition { f } => {
                let comps: Vec<TruncatedSeries> = (0..self.m).map(|i| y.component(i).with_cap(cap)).collect();
                let mut powers: HashMap<(usize, u32), TruncatedSeries> = HashMap::new();
                let parts = f
                    .iter()
                    .map(|fj| {
                        let mut acc = TruncatedSeries::zero(self.n, 1, cap);
                        for (mono, c) in fj.terms() {
                            let (xs, ys) = mono.exps().split_at(self.n);
                            let mut term = TruncatedSeries::monomial(self.n, cap, Monomial::new(xs.to_vec())).scale(c);
                            for (i, &e) in ys.iter().enumerate() {
                                if e == 0 || term.is_zero() {
                                    continue;
                                }
                                let p = powers.entry((i, e)).or_insert_with(|| {
                                    (0..e).fold(TruncatedSeries::constant(self.n, cap, FieldElem::one()), |p, _| {
                                        p.mul(&comps[i])
                                    })
                                });
                                term = term.mul(p);
                            }
                            acc = acc.add(&term);
                        }
                        acc
                    })
                    .collect::<Vec<_>>();
                Ok(TruncatedSeries::stack(&parts))
            }
            Mode::Explicit { .. } => self.extract_coeffs(order)?.evaluate_at(&y),
            Mode::Counterexample { alphas } => {
                let mut out = TruncatedSeries::zero(1, 1, cap);
                let y0 = y.coeff(0, &Monomial::new(vec![0]));
                for l in 1..order {
                    let alpha = alphas
                        .get(l - 1)
                        .ok_or(TextileError::AlphaListTooShort { needed: l, len: alphas.len() })?;
                    let yl = y.coeff(0, &Monomial::new(vec![l as u32]));
                    let v = (&y0 - alpha) * yl - FieldElem::one();
                    out.set(0, Monomial::new(vec![l as u32]), v)?;
                }
                Ok(out)
            }
        }
    }

    /// True iff `G(y) ≡ 0 mod (x)^N`.
    pub fn order_at_least(&self, y: &TruncatedSeries, order: usize) -> Result<bool, TextileError> {
        Ok(self.evaluate(y, order)?.is_zero())
    }
}

fn prefix_map(from: usize, to: usize) -> Vec<Option<usize>> {
    (0..from).map(|v| (v < to).then_some(v)).collect()
}

fn counterexample_coeff(ring: &Arc<Ring>, alpha: &FieldElem, l: usize) -> MPoly {
    let y0 = MPoly::var(ring, 0);
    let yl = MPoly::var(ring, l);
    let shifted = &y0 - &MPoly::constant(ring, alpha.clone());
    &(&shifted * &yl) - &MPoly::one(ring)
}

fn check_distinct(alphas: &[FieldElem]) -> Result<(), TextileError> {
    for (i, a) in alphas.iter().enumerate() {
        if alphas[..i].contains(a) {
            return Err(TextileError::DuplicateAlphas);
        }
    }
    Ok(())
}

fn check_field<'a>(field: &Field, elems: impl Iterator<Item = &'a FieldElem>) -> Result<(), TextileError> {
    for c in elems {
        if !field.contains(c) {
            return Err(TextileError::Invalid(format!("scalar {c} is not in {field}")));
        }
    }
    Ok(())
}

/// The coefficient polynomials `G_{j,β}`, `|β| < N`, over the level-`D_N`
/// coefficient ring.
#[derive(Clone, Debug)]
pub struct Extraction {
    order: usize,
    indexing: CoeffIndexing,
    betas: Vec<Monomial>,
    q: usize,
    polys: BTreeMap<(usize, Monomial), MPoly>,
}

impl Extraction {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn indexing(&self) -> &CoeffIndexing {
        &self.indexing
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.indexing.ring()
    }

    pub fn get(&self, j: usize, beta: &Monomial) -> Option<&MPoly> {
        self.polys.get(&(j, beta.clone()))
    }

    /// `((j, β), G_{j,β})` with `β` degree-major graded-lex and `j` inner.
    pub fn entries(&self) -> impl Iterator<Item = (usize, &Monomial, &MPoly)> {
        self.betas.iter().flat_map(move |b| {
            (0..self.q).filter_map(move |j| self.polys.get(&(j, b.clone())).map(|p| (j, b, p)))
        })
    }

    /// Substitutes the coefficients of `y` and assembles the result as a
    /// `q`-component series of cap `N`.
    pub fn evaluate_at(&self, y: &TruncatedSeries) -> Result<TruncatedSeries, TextileError> {
        let point = y.coefficient_vector(&self.indexing)?;
        let mut out = TruncatedSeries::zero(self.indexing.n(), self.q, self.order as u32);
        for (j, beta, p) in self.entries() {
            out.set(j, beta.clone(), p.eval(&point))?;
        }
        Ok(out)
    }
}

/// `y_N = α_N + Σ_{k=1..N} x^k / (α_N − α_{k−1})` with cap `N + 2`, so the
/// first failing coefficient `x^{N+1}` is visible.
pub fn counterexample_solution(alphas: &[FieldElem], order: usize) -> Result<TruncatedSeries, TextileError> {
    check_distinct(alphas)?;
    let top = alphas
        .get(order)
        .ok_or(TextileError::AlphaListTooShort { needed: order + 1, len: alphas.len() })?;
    let mut y = TruncatedSeries::zero(1, 1, order as u32 + 2);
    y.set(0, Monomial::new(vec![0]), top.clone())?;
    for k in 1..=order {
        let c = (top - &alphas[k - 1]).inv()?;
        y.set(0, Monomial::new(vec![k as u32]), c)?;
    }
    Ok(y)
}

#[cfg(test)]
mod tests;
