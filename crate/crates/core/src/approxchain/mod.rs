//! Ideals of approximate-solution varieties, their closure projections, the
//! stabilization and obstruction scans, and degree-by-degree lifting.

mod lift;

use std::fmt::Write as _;
use std::sync::Arc;
use std::thread;

use thiserror::Error;

use crate::exactfield::{Field, FieldElem};
use crate::groebner::{eliminate, ideal_member, is_trivial, GroebnerBasis, GroebnerError};
use crate::multipoly::{MPoly, Monomial, PolyError, Ring};
use crate::textile::{var_count, CoeffIndexing, Mode, TextileError, TextileSystem};

pub use lift::{lift, BlockReason, LiftOptions, LiftResult, DEFAULT_BRANCH_LIMIT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("need 1 <= k <= N, got k={k}, N={n}")]
    BadBounds { k: usize, n: usize },
    #[error(transparent)]
    Textile(#[from] TextileError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Generators of `I_N`, the ideal of `X_N`, in the level-`D_N` coefficient
/// ring.
#[derive(Clone, Debug)]
pub struct SystemIdeal {
    pub order: usize,
    pub indexing: CoeffIndexing,
    pub gens: Vec<MPoly>,
}

impl SystemIdeal {
    pub fn ring(&self) -> &Arc<Ring> {
        self.indexing.ring()
    }
}

/// The nonzero `G_{j,β}`, `|β| < N`.
pub fn build_ideal(sys: &TextileSystem, order: usize) -> Result<SystemIdeal, ChainError> {
    let ex = sys.extract_coeffs(order)?;
    let gens = ex.entries().filter(|(_, _, p)| !p.is_zero()).map(|(_, _, p)| p.clone()).collect();
    Ok(SystemIdeal { order, indexing: ex.indexing().clone(), gens })
}

/// Basis of `J_N^k`, the ideal of the Zariski closure of the projection of
/// `X_N` to the level-`k` coefficients.
pub fn closure_projection(sys: &TextileSystem, order: usize, k: usize) -> Result<GroebnerBasis, ChainError> {
    if k == 0 || k > order {
        return Err(ChainError::BadBounds { k, n: order });
    }
    let ideal = build_ideal(sys, order)?;
    let keep: Vec<usize> = (0..var_count(sys.n(), k, sys.m())).collect();
    Ok(eliminate(ideal.ring(), &ideal.gens, &keep)?)
}

#[derive(Clone, Debug)]
pub struct ChainRow {
    pub order: usize,
    pub depend: usize,
    pub generators: usize,
    pub closure: GroebnerBasis,
    pub trivial: bool,
}

/// Rows `N = k..=Nmax` of the chain `J_k^k ⊆ J_{k+1}^k ⊆ ...`.
#[derive(Clone, Debug)]
pub struct ChainReport {
    pub k: usize,
    pub horizon: usize,
    pub rows: Vec<ChainRow>,
    /// Orders `N` at which some generator of `J_N^k` is not in `J_{N+1}^k`.
    /// Always empty for a correct engine.
    pub containment_failures: Vec<usize>,
    /// Least `N₀ < Nmax` whose closure ideal equals every later row.
    pub stabilized_at: Option<usize>,
    /// Least `N` with `1 ∈ I_N`.
    pub obstruction_at: Option<usize>,
}

impl ChainReport {
    /// `N=<..> D=<..> gens=<..> trivial=<y/n> gb={...}` per row, then the
    /// summary lines.
    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "CHAIN k={} horizon={}", self.k, self.horizon).unwrap();
        for r in &self.rows {
            writeln!(
                out,
                "N={} D={} gens={} trivial={} gb={}",
                r.order,
                r.depend,
                r.generators,
                if r.trivial { "y" } else { "n" },
                r.closure
            )
            .unwrap();
        }
        if !self.containment_failures.is_empty() {
            let list: Vec<String> = self.containment_failures.iter().map(|n| n.to_string()).collect();
            writeln!(out, "CONTAINMENT FAILED at N={}", list.join(",")).unwrap();
        }
        match self.stabilized_at {
            Some(n) => writeln!(out, "STABILIZED N0={n} (within horizon {})", self.horizon).unwrap(),
            None => writeln!(out, "NOT STABILIZED within horizon {}", self.horizon).unwrap(),
        }
        match self.obstruction_at {
            Some(n) => writeln!(out, "OBSTRUCTION N={n}").unwrap(),
            None => writeln!(out, "OBSTRUCTION NONE <= {}", self.horizon).unwrap(),
        }
        out
    }
}

/// Computes every row of the chain at level `k` up to `Nmax`, one thread
/// per row.
pub fn stabilization_scan(sys: &TextileSystem, k: usize, horizon: usize) -> Result<ChainReport, ChainError> {
    if k == 0 || horizon < k {
        return Err(ChainError::BadBounds { k, n: horizon });
    }
    let orders: Vec<usize> = (k..=horizon).collect();
    let rows: Vec<Result<ChainRow, ChainError>> = thread::scope(|s| {
        let handles: Vec<_> = orders.iter().map(|&n| s.spawn(move || chain_row(sys, n, k))).collect();
        handles.into_iter().map(|h| h.join().expect("chain row worker panicked")).collect()
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;

    let mut containment_failures = Vec::new();
    for w in rows.windows(2) {
        for g in w[0].closure.gens() {
            if !ideal_member(g, &w[1].closure)? {
                containment_failures.push(w[0].order);
                break;
            }
        }
    }
    let last = rows.len() - 1;
    let stabilized_at = (0..last)
        .find(|&i| rows[i + 1..].iter().all(|r| r.closure == rows[i].closure))
        .map(|i| rows[i].order);
    let obstruction_at = rows.iter().find(|r| r.trivial).map(|r| r.order);
    Ok(ChainReport { k, horizon, rows, containment_failures, stabilized_at, obstruction_at })
}

fn chain_row(sys: &TextileSystem, order: usize, k: usize) -> Result<ChainRow, ChainError> {
    let ideal = build_ideal(sys, order)?;
    let trivial = is_trivial(ideal.ring(), &ideal.gens)?.trivial;
    let closure = closure_projection(sys, order, k)?;
    Ok(ChainRow {
        order,
        depend: sys.depend_bound(order)?,
        generators: ideal.gens.len(),
        closure,
        trivial,
    })
}

/// Certificate that no approximate solution of order `N` exists over any
/// algebraically closed extension: the reduced basis of `I_N` is `{1}`.
#[derive(Clone, Debug)]
pub struct Obstruction {
    pub order: usize,
    pub certificate: GroebnerBasis,
}

/// Least `N ≤ Nmax` with `1 ∈ I_N`.
pub fn obstruction_scan(sys: &TextileSystem, horizon: usize) -> Result<Option<Obstruction>, ChainError> {
    let top = sys.max_order().map_or(horizon, |m| m.min(horizon));
    for order in 1..=top {
        let ideal = build_ideal(sys, order)?;
        let t = is_trivial(ideal.ring(), &ideal.gens)?;
        if t.trivial {
            return Ok(Some(Obstruction { order, certificate: t.certificate }));
        }
    }
    Ok(None)
}

/// `G_{1,l₀+1}` with `y1_0 = α_{l₀}` substituted.
#[derive(Clone, Debug)]
pub struct NonexistenceCertificate {
    pub l0: usize,
    pub alpha: FieldElem,
    pub specialized: MPoly,
}

impl NonexistenceCertificate {
    pub fn is_minus_one(&self) -> bool {
        self.specialized.as_constant() == Some(-FieldElem::from_integer(1))
    }
}

/// For each `α_{l₀}` in the list, an exact solution with `y_0 = α_{l₀}`
/// would need `(α_{l₀} − α_{l₀})·y_{l₀+1} = 1`. The certificates cover
/// exactly the listed values of `y_0`.
pub fn counterexample_nonexistence(alphas: &[FieldElem]) -> Result<Vec<NonexistenceCertificate>, ChainError> {
    let field = Field::spanned_by(alphas);
    let sys = TextileSystem::counterexample(field, alphas.to_vec())?;
    let mut out = Vec::with_capacity(alphas.len());
    for (l0, alpha) in alphas.iter().enumerate() {
        let ex = sys.extract_coeffs(l0 + 2)?;
        let g = ex.get(0, &Monomial::new(vec![l0 as u32 + 1])).expect("coefficient below the order");
        let specialized = g.substitute_values(&[(0, alpha.clone())]);
        out.push(NonexistenceCertificate { l0, alpha: alpha.clone(), specialized });
    }
    Ok(out)
}

/// Counterexample alphas for a system, if it is one.
pub fn alphas_of(sys: &TextileSystem) -> Option<&[FieldElem]> {
    match sys.mode() {
        Mode::Counterexample { alphas } => Some(alphas),
        _ => None,
    }
}
