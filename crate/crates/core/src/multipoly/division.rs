use num_traits::One;

use super::{same_ring, MPoly, Monomial, MonomialOrder, PolyError, SortedTerms};

/// Multivariate division: returns `(quotients, remainder)` with
/// `f = Σ qᵢ·gᵢ + r` and no monomial of `r` divisible by any leading
/// monomial. Divisors are tried in list order.
pub fn divide(f: &MPoly, divisors: &[MPoly], ord: MonomialOrder) -> Result<(Vec<MPoly>, MPoly), PolyError> {
    let mut leads = Vec::with_capacity(divisors.len());
    for g in divisors {
        if !same_ring(f.ring(), g.ring()) {
            return Err(PolyError::RingMismatch);
        }
        let (m, c) = g.leading_term(ord)?;
        leads.push((m, c.inv()?));
    }
    let ring = f.ring();
    let mut quotients = vec![MPoly::zero(ring); divisors.len()];
    let mut rem = MPoly::zero(ring);
    let mut work = SortedTerms::new(ord, f.terms());
    while let Some((m, c)) = work.pop_leading() {
        let hit = leads.iter().enumerate().find_map(|(i, (lm, _))| lm.complement_in(&m).map(|q| (i, q)));
        match hit {
            Some((i, q)) => {
                let coeff = &c * &leads[i].1;
                quotients[i].add_term(q.clone(), &coeff);
                // leading term cancels exactly; subtract the tail only
                let tail = divisors[i].terms().filter(|(gm, _)| **gm != leads[i].0);
                work.sub_scaled(&coeff, &q, tail);
            }
            None => rem.add_term(m, &c),
        }
    }
    Ok((quotients, rem))
}

/// Full normal form of `f` modulo a monic basis whose leading monomials are
/// given in `leads` (same order as `basis`).
pub(crate) fn reduce_by(f: &MPoly, basis: &[MPoly], leads: &[Monomial], ord: MonomialOrder) -> MPoly {
    let mut rem = MPoly::zero(f.ring());
    let mut work = SortedTerms::new(ord, f.terms());
    while let Some((m, c)) = work.pop_leading() {
        match leads.iter().enumerate().find_map(|(i, lm)| lm.complement_in(&m).map(|q| (i, q))) {
            Some((i, q)) => {
                debug_assert!(basis[i].coeff(&leads[i]).is_one());
                let tail = basis[i].terms().filter(|(gm, _)| **gm != leads[i]);
                work.sub_scaled(&c, &q, tail);
            }
            None => rem.add_term(m, &c),
        }
    }
    rem
}
