use std::collections::BTreeMap;

use proptest::prelude::*;

use super::parse::poly_in;
use super::*;
use crate::exactfield::Rat;

const Y: &[&str] = &["y0", "y1"];

fn y(src: &str) -> MPoly {
    poly_in(Y, src)
}

fn half() -> FieldElem {
    FieldElem::Rat(Rat::new(1, 2).unwrap())
}

#[test]
fn arithmetic_examples() {
    assert_eq!(y("y0 + 1") * y("y0 - 1"), y("y0^2 - 1"));
    assert_eq!(y("y0^2 - 1") + y("1"), y("y0^2"));
    assert_eq!(y("2*y0*y1").scale(&half()), y("y0*y1"));
}

#[test]
fn ring_mismatch_is_reported() {
    let a = poly_in(&["y0"], "y0");
    let b = poly_in(&["z0"], "z0");
    assert_eq!(a.checked_add(&b), Err(PolyError::RingMismatch));
    assert!(divide(&a, &[b], MonomialOrder::Lex).is_err());
}

#[test]
fn leading_terms() {
    let f = y("y0 + y1^2");
    assert_eq!(f.leading_term(MonomialOrder::Lex).unwrap(), (Monomial::new(vec![1, 0]), FieldElem::one()));
    assert_eq!(f.leading_term(MonomialOrder::GrevLex).unwrap(), (Monomial::new(vec![0, 2]), FieldElem::one()));
    assert_eq!(
        y("3*y0^2*y1").leading_term(MonomialOrder::GrevLex).unwrap(),
        (Monomial::new(vec![2, 1]), FieldElem::from_integer(3))
    );
    assert_eq!(y("0").leading_term(MonomialOrder::Lex), Err(PolyError::ZeroPolynomial));
}

#[test]
fn division_examples() {
    let (q, r) = divide(&y("y0^2*y1"), &[y("y0*y1 - 1"), y("y1^2 - 1")], MonomialOrder::Lex).unwrap();
    assert_eq!(r, y("y0"));
    assert_eq!(q[0], y("y0"));
    assert!(q[1].is_zero());

    let (_, r) = divide(&y("y0 - y0"), &[y("y0")], MonomialOrder::Lex).unwrap();
    assert!(r.is_zero());

    let (_, r) = divide(&y("y1"), &[y("y0")], MonomialOrder::Lex).unwrap();
    assert_eq!(r, y("y1"));
}

#[test]
fn substitution_examples() {
    // (y0 - a)*y1 - 1 with y0 := a collapses to -1 for any a
    let a = FieldElem::from_integer(7);
    let f = y("(y0 - 7)*y1 - 1");
    assert_eq!(f.substitute_values(&[(0, a)]), y("-1"));

    assert!(y("y0^2 - 1").substitute_values(&[(0, FieldElem::one())]).is_zero());
    assert_eq!(y("y0*y1").substitute_values(&[(0, FieldElem::from_integer(2))]), y("2*y1"));

    let mut asg = BTreeMap::new();
    asg.insert(0, Subst::Poly(y("y1 + 1")));
    assert_eq!(y("y0^2").substitute(&asg).unwrap(), y("y1^2 + 2*y1 + 1"));
}

#[test]
fn display_round_trips_through_the_parser() {
    for src in ["-y0^2*y1 + 3/2*y1 - 7", "y0", "0", "-1/3", "y0*y1^3 - y0 + 2"] {
        let p = y(src);
        assert_eq!(y(&p.to_string()), p);
    }
}

#[test]
fn rename_and_compose() {
    let p = y("y1^2 + y1");
    let target = Ring::new(["z"]);
    let q = p.rename_into(&target, &[None, Some(0)]).unwrap();
    assert_eq!(q.to_string(), "z^2 + z");
    assert!(y("y0").rename_into(&target, &[None, Some(0)]).is_err());

    // (1 + z)^3 truncated below degree 2
    let f = poly_in(&["u"], "u^3");
    let img = poly_in(&["z"], "1 + z");
    let img = img.rename_into(&target, &[Some(0)]).unwrap();
    let c = f.compose(&target, &[img], |m| m.degree() < 2).unwrap();
    assert_eq!(c.to_string(), "3*z + 1");
}

fn small_poly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -5i64..6), 0..5).prop_map(|terms| {
        let ring = Ring::new(["a", "b", "c"]);
        MPoly::from_terms(
            &ring,
            terms
                .into_iter()
                .map(|((x, yy, z), c)| (Monomial::new(vec![x, yy, z]), FieldElem::from_integer(c))),
        )
    })
}

fn same_ring_as(p: &MPoly, q: MPoly) -> MPoly {
    MPoly::from_terms(p.ring(), q.terms().map(|(m, c)| (m.clone(), c.clone())))
}

proptest! {
    #[test]
    fn division_reconstructs_dividend(f in small_poly(), gs in prop::collection::vec(small_poly(), 1..4)) {
        let gs: Vec<MPoly> = gs.into_iter().filter(|g| !g.is_zero()).map(|g| same_ring_as(&f, g)).collect();
        prop_assume!(!gs.is_empty());
        for ord in [MonomialOrder::Lex, MonomialOrder::GrevLex, MonomialOrder::Block { split: 1 }] {
            let (qs, r) = divide(&f, &gs, ord).unwrap();
            let mut back = r.clone();
            for (q, g) in qs.iter().zip(&gs) {
                back = &back + &(q * g);
            }
            prop_assert_eq!(&back, &f);
            let leads: Vec<_> = gs.iter().map(|g| g.leading_monomial(ord).unwrap().clone()).collect();
            for (m, _) in r.terms() {
                prop_assert!(leads.iter().all(|lm| !lm.divides(m)));
            }
        }
    }

    #[test]
    fn substitution_is_a_ring_map(f in small_poly(), g in small_poly(), a in -4i64..5, b in -4i64..5) {
        let g = same_ring_as(&f, g);
        let vals = [(0, FieldElem::from_integer(a)), (2, FieldElem::from_integer(b))];
        prop_assert_eq!(
            (&f * &g).substitute_values(&vals),
            &f.substitute_values(&vals) * &g.substitute_values(&vals)
        );
    }

    #[test]
    fn insertion_order_does_not_matter(terms in prop::collection::vec(((0u32..3, 0u32..3), -5i64..6), 0..8)) {
        let ring = Ring::new(["a", "b"]);
        let mk = |ts: &[((u32, u32), i64)]| MPoly::from_terms(
            &ring,
            ts.iter().map(|((x, yy), c)| (Monomial::new(vec![*x, *yy]), FieldElem::from_integer(*c))),
        );
        let mut rev = terms.clone();
        rev.reverse();
        prop_assert_eq!(mk(&terms), mk(&rev));
    }
}
