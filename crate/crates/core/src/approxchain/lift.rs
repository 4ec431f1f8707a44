//! Degree-by-degree lifting of approximate solutions with backtracking.

use std::collections::HashMap;
use std::fmt;

use super::{build_ideal, ChainError, SystemIdeal};
use crate::exactfield::FieldElem;
use crate::groebner::{buchberger, is_trivial, solve_points, GroebnerBasis};
use crate::multipoly::{MPoly, MonomialOrder, Ring};
use crate::textile::{var_count, CoeffIndexing, Mode, TextileSystem, TruncatedSeries};

pub const DEFAULT_BRANCH_LIMIT: usize = 64;

#[derive(Clone, Debug)]
pub struct LiftOptions {
    /// Dead branches tolerated before giving up.
    pub branch_limit: usize,
    /// Values tried for coefficients a fiber leaves free. `None` uses the
    /// alphas of a counterexample system and `0, 1, -1, 2, -2` otherwise.
    pub free_candidates: Option<Vec<FieldElem>>,
}

impl Default for LiftOptions {
    fn default() -> Self {
        LiftOptions { branch_limit: DEFAULT_BRANCH_LIMIT, free_candidates: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockReason {
    /// Every explored branch died without a certificate that `I_N` is
    /// trivial: fibers had no points in the field among the candidates.
    NoFieldPoint,
    BranchLimit,
}

impl fmt::Display for BlockReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlockReason::NoFieldPoint => "no-field-point",
            BlockReason::BranchLimit => "branch-limit",
        })
    }
}

#[derive(Clone, Debug)]
pub enum LiftResult {
    /// `order_at_least(sys, y, verified_order)` holds.
    Exact { y: TruncatedSeries, verified_order: usize },
    /// Deepest consistent truncation found, `reached` coefficient degrees.
    Partial { y: TruncatedSeries, reached: usize, reason: BlockReason },
    /// `1 ∈ I_level`.
    Obstructed { level: usize, certificate: GroebnerBasis },
}

impl fmt::Display for LiftResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LiftResult::Exact { y, verified_order } => write!(f, "EXACT verified_order={verified_order}\n{y}"),
            LiftResult::Partial { y, reached, reason } => write!(f, "PARTIAL reached={reached} reason={reason}\n{y}"),
            LiftResult::Obstructed { level, certificate } => {
                write!(f, "OBSTRUCTED N={level} certificate={certificate}")
            }
        }
    }
}

struct Task {
    level: usize,
    /// Values of the coefficient ids below `var_count(level)`.
    known: Vec<FieldElem>,
    /// Values already chosen for free ids of the next level.
    fixed: Vec<(usize, FieldElem)>,
}

struct Search<'a> {
    sys: &'a TextileSystem,
    dmax: usize,
    ideals: HashMap<usize, SystemIdeal>,
    candidates: Vec<FieldElem>,
}

impl Search<'_> {
    fn count(&self, level: usize) -> usize {
        if level == 0 {
            0
        } else {
            var_count(self.sys.n(), level, self.sys.m())
        }
    }

    /// Largest `N` whose `D_N` fits in `level`.
    fn constraint_order(&self, level: usize) -> Option<usize> {
        let top = self.sys.max_order().unwrap_or(level);
        (1..=top).rev().find(|&n| self.sys.depend_bound(n).is_ok_and(|d| d <= level))
    }

    fn ideal(&mut self, order: usize) -> Result<&SystemIdeal, ChainError> {
        if !self.ideals.contains_key(&order) {
            let ideal = build_ideal(self.sys, order)?;
            self.ideals.insert(order, ideal);
        }
        Ok(&self.ideals[&order])
    }
}

enum Step {
    Dead,
    Children(Vec<Vec<FieldElem>>),
    Branch(usize),
}

/// Searches for a truncated solution with all coefficients of degree below
/// `dmax`, extending one degree at a time and backtracking over the points
/// of each fiber in `solve_points` order.
pub fn lift(sys: &TextileSystem, dmax: usize, opts: &LiftOptions) -> Result<LiftResult, ChainError> {
    let candidates = opts.free_candidates.clone().unwrap_or_else(|| match sys.mode() {
        Mode::Counterexample { alphas } => alphas.clone(),
        _ => [0, 1, -1, 2, -2].into_iter().map(FieldElem::from_integer).collect(),
    });
    let mut search = Search { sys, dmax, ideals: HashMap::new(), candidates };
    let verified_order = search.constraint_order(dmax);

    let mut stack = vec![Task { level: 0, known: Vec::new(), fixed: Vec::new() }];
    let mut dead = 0usize;
    let mut deepest: (usize, Vec<FieldElem>) = (0, Vec::new());
    while let Some(task) = stack.pop() {
        if task.fixed.is_empty() && task.level > deepest.0 {
            deepest = (task.level, task.known.clone());
        }
        if task.level == search.dmax {
            let y = series_of(sys, task.level, &task.known);
            match verified_order {
                Some(n) if !sys.order_at_least(&y, n)? => dead += 1,
                _ => return Ok(LiftResult::Exact { y, verified_order: verified_order.unwrap_or(0) }),
            }
        } else {
            match expand(&mut search, &task)? {
                Step::Dead => dead += 1,
                Step::Children(children) => {
                    if children.is_empty() {
                        dead += 1;
                    }
                    for known in children.into_iter().rev() {
                        stack.push(Task { level: task.level + 1, known, fixed: Vec::new() });
                    }
                }
                Step::Branch(id) => {
                    for c in search.candidates.iter().rev() {
                        let mut fixed = task.fixed.clone();
                        fixed.push((id, c.clone()));
                        stack.push(Task { level: task.level, known: task.known.clone(), fixed });
                    }
                }
            }
        }
        if dead > opts.branch_limit {
            let (reached, known) = deepest;
            let y = series_of(sys, reached, &known);
            return Ok(LiftResult::Partial { y, reached, reason: BlockReason::BranchLimit });
        }
    }

    if let Some(top) = verified_order {
        for order in 1..=top {
            let ideal = search.ideal(order)?;
            let t = is_trivial(ideal.ring(), &ideal.gens)?;
            if t.trivial {
                return Ok(LiftResult::Obstructed { level: order, certificate: t.certificate });
            }
        }
    }
    let (reached, known) = deepest;
    Ok(LiftResult::Partial { y: series_of(sys, reached, &known), reached, reason: BlockReason::NoFieldPoint })
}

fn series_of(sys: &TextileSystem, level: usize, known: &[FieldElem]) -> TruncatedSeries {
    if level == 0 {
        return TruncatedSeries::zero(sys.n(), sys.m(), 0);
    }
    TruncatedSeries::from_coefficient_vector(&CoeffIndexing::new(sys.n(), sys.m(), level as u32), known)
}

/// Specializes the constraints of the next level at the task's values and
/// either lists the completed assignments or names a free id to branch on.
fn expand(search: &mut Search<'_>, task: &Task) -> Result<Step, ChainError> {
    let next = task.level + 1;
    let (lo, hi) = (search.count(task.level), search.count(next));
    let unknown: Vec<usize> = (lo..hi).filter(|id| task.fixed.iter().all(|(f, _)| f != id)).collect();
    let next_names = CoeffIndexing::new(search.sys.n(), search.sys.m(), next as u32);
    let ring = Ring::new(unknown.iter().map(|&id| next_names.ring().name(id).to_string()));

    let mut values: Vec<(usize, FieldElem)> = task.known.iter().cloned().enumerate().collect();
    values.extend(task.fixed.iter().cloned());
    let mut gens: Vec<MPoly> = Vec::new();
    if let Some(order) = search.constraint_order(next) {
        let ideal = search.ideal(order)?;
        let width = ideal.ring().nvars();
        let mut map: Vec<Option<usize>> = vec![None; width];
        for (pos, &id) in unknown.iter().enumerate() {
            if id < width {
                map[id] = Some(pos);
            }
        }
        let local: Vec<(usize, FieldElem)> = values.iter().filter(|(id, _)| *id < width).cloned().collect();
        for g in &ideal.gens {
            let s = g.substitute_values(&local);
            if s.is_zero() {
                continue;
            }
            if s.as_constant().is_some() {
                return Ok(Step::Dead);
            }
            gens.push(s.rename_into(&ring, &map)?);
        }
    }

    let assemble = |point: &[FieldElem]| -> Vec<FieldElem> {
        let mut full = task.known.clone();
        full.resize(hi, FieldElem::from_integer(0));
        for (id, v) in &task.fixed {
            full[*id] = v.clone();
        }
        for (pos, &id) in unknown.iter().enumerate() {
            full[id] = point[pos].clone();
        }
        full
    };
    if unknown.is_empty() {
        return Ok(Step::Children(vec![assemble(&[])]));
    }

    let gb = buchberger(&ring, &gens, MonomialOrder::Lex)?;
    if gb.is_unit() {
        return Ok(Step::Dead);
    }
    let mut bounded = vec![false; unknown.len()];
    for lm in gb.leading_monomials() {
        if let Some(v) = lm.pure_power_var() {
            bounded[v] = true;
        }
    }
    if let Some(pos) = bounded.iter().rposition(|b| !b) {
        return Ok(Step::Branch(unknown[pos]));
    }
    let points = solve_points(&gb, search.sys.field())?;
    Ok(Step::Children(points.points().iter().map(|p| assemble(p)).collect()))
}
