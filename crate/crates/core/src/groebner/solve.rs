//! Point extraction from lex bases by back-substitution.

use num_traits::Zero;

use super::{buchberger, GroebnerBasis, GroebnerError};
use crate::exactfield::{rational_roots, Field, FieldElem, Rat, UniPoly};
use crate::multipoly::{MPoly, MonomialOrder, Ring};

/// Points of a zero-dimensional variety with coordinates in the session
/// field. `Inconclusive` means some univariate factor had roots outside the
/// field: the listed points are all field points, but the variety over the
/// algebraic closure is larger and emptiness of the field-point set says
/// nothing about it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Points {
    Complete(Vec<Vec<FieldElem>>),
    Inconclusive(Vec<Vec<FieldElem>>),
}

impl Points {
    pub fn points(&self) -> &[Vec<FieldElem>] {
        match self {
            Points::Complete(p) | Points::Inconclusive(p) => p,
        }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self, Points::Complete(_))
    }
}

/// All solutions of a zero-dimensional lex basis whose coordinates lie in
/// `field`, ordered by the root order of the last variable first.
pub fn solve_points(gb: &GroebnerBasis, field: &Field) -> Result<Points, GroebnerError> {
    if gb.order() != MonomialOrder::Lex {
        return Err(GroebnerError::OrderMismatch);
    }
    if gb.is_unit() {
        return Ok(Points::Complete(Vec::new()));
    }
    let n = gb.ring().nvars();
    let mut by_var: Vec<Vec<&MPoly>> = vec![Vec::new(); n];
    let mut bounded = vec![false; n];
    for (g, lm) in gb.gens().iter().zip(gb.leading_monomials()) {
        let lead_var = lm.exps().iter().position(|&e| e > 0).expect("non-constant generator");
        by_var[lead_var].push(g);
        if let Some(v) = lm.pure_power_var() {
            bounded[v] = true;
        }
    }
    if let Some(v) = bounded.iter().position(|b| !b) {
        return Err(GroebnerError::NotZeroDimensionalHandled(format!(
            "no generator has a pure power of `{}` as leading monomial",
            gb.ring().name(v)
        )));
    }

    let mut complete = true;
    // partial points assign the variables v+1..n (stored back to front)
    let mut partial: Vec<Vec<FieldElem>> = vec![Vec::new()];
    for v in (0..n).rev() {
        let mut next = Vec::new();
        for tail in &partial {
            let values: Vec<(usize, FieldElem)> =
                tail.iter().rev().enumerate().map(|(k, x)| (v + 1 + k, x.clone())).collect();
            let mut h = UniPoly::<FieldElem>::zero();
            for g in &by_var[v] {
                let special = univariate(&g.substitute_values(&values), v);
                h = h.gcd(&special)?;
            }
            let (roots, all) = roots_in_field(&h, field)?;
            complete &= all;
            for r in roots {
                let mut t = tail.clone();
                t.push(r);
                next.push(t);
            }
        }
        partial = next;
    }
    let points = partial
        .into_iter()
        .map(|mut p| {
            p.reverse();
            p
        })
        .collect();
    Ok(if complete { Points::Complete(points) } else { Points::Inconclusive(points) })
}

fn univariate(p: &MPoly, v: usize) -> UniPoly<FieldElem> {
    let deg = p.terms().map(|(m, _)| m.exps()[v] as usize).max().unwrap_or(0);
    let mut cs = vec![FieldElem::zero(); deg + 1];
    for (m, c) in p.terms() {
        debug_assert!(m.exps().iter().enumerate().all(|(i, &e)| i == v || e == 0));
        cs[m.exps()[v] as usize] = c.clone();
    }
    UniPoly::new(cs)
}

/// Roots of `h` in `field`, and whether they account for the full degree of
/// `h` (counting multiplicity).
pub(crate) fn roots_in_field(h: &UniPoly<FieldElem>, field: &Field) -> Result<(Vec<FieldElem>, bool), GroebnerError> {
    let Some(deg) = h.degree() else {
        return Err(GroebnerError::NotZeroDimensionalHandled("univariate eliminant vanished".into()));
    };
    if deg == 0 {
        return Ok((Vec::new(), true));
    }
    let roots: Vec<FieldElem> = match field {
        Field::Rational => {
            let q = UniPoly::new(
                h.coeffs().iter().map(|c| c.as_rat().cloned().expect("rational coefficients over Q")).collect(),
            );
            rational_roots(&q).into_iter().map(FieldElem::Rat).collect()
        }
        Field::Extension(_) if deg == 1 => {
            vec![-h.coeff(0).checked_div(&h.coeff(1))?]
        }
        Field::Extension(_) => extension_roots(h, field)?,
    };
    let mut rest = h.clone();
    for r in &roots {
        let lin = UniPoly::linear_root(r.clone());
        loop {
            let (q, rem) = rest.divrem(&lin)?;
            if !rem.is_zero() {
                break;
            }
            rest = q;
        }
    }
    Ok((roots, rest.degree() == Some(0)))
}

/// Roots in `Q(θ)` by writing `z = Σ zᵢθⁱ` and solving the coordinate
/// equations of `h(z) = 0` for rational `zᵢ`.
fn extension_roots(h: &UniPoly<FieldElem>, field: &Field) -> Result<Vec<FieldElem>, GroebnerError> {
    let d = field.degree();
    let m = field.modulus().expect("extension field").poly().clone();
    let ring = Ring::new((0..d).map(|i| format!("z{i}")));
    let mul = |a: &[MPoly], b: &[MPoly]| -> Vec<MPoly> {
        let mut prod = vec![MPoly::zero(&ring); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = &prod[i + j] + &(x * y);
            }
        }
        for k in (d..prod.len()).rev() {
            let top = std::mem::replace(&mut prod[k], MPoly::zero(&ring));
            for (i, mi) in m.coeffs().iter().take(d).enumerate() {
                let c = FieldElem::Rat(-mi);
                prod[k - d + i] = &prod[k - d + i] + &top.scale(&c);
            }
        }
        prod.truncate(d);
        prod
    };
    let constant = |x: &FieldElem| -> Vec<MPoly> {
        field.coordinates(x).into_iter().map(|c| MPoly::constant(&ring, FieldElem::Rat(c))).collect()
    };
    let z: Vec<MPoly> = (0..d).map(|i| MPoly::var(&ring, i)).collect();
    let mut acc: Vec<MPoly> = vec![MPoly::zero(&ring); d];
    for c in h.coeffs().iter().rev() {
        acc = mul(&acc, &z);
        for (a, k) in acc.iter_mut().zip(constant(c)) {
            *a = &*a + &k;
        }
    }
    let gb = buchberger(&ring, &acc, MonomialOrder::Lex)?;
    let pts = solve_points(&gb, &Field::Rational)?;
    Ok(pts
        .points()
        .iter()
        .map(|p| field.element(p.iter().map(|x| x.as_rat().cloned().unwrap_or_else(Rat::zero)).collect()))
        .collect())
}
