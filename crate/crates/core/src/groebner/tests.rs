use num_traits::Zero;
use proptest::prelude::*;

use super::*;
use crate::exactfield::{Field, FieldElem, Rat, UniPoly};
use crate::multipoly::parse::{parse_poly, poly_in};

const Y: &[&str] = &["y0", "y1", "y2"];

fn ring() -> Arc<Ring> {
    Ring::new(Y.iter().copied())
}

fn y(src: &str) -> MPoly {
    poly_in(Y, src)
}

fn gb(gens: &[&str], ord: MonomialOrder) -> GroebnerBasis {
    let gens: Vec<MPoly> = gens.iter().map(|s| y(s)).collect();
    buchberger(&ring(), &gens, ord).unwrap()
}

fn rat(n: i64, d: i64) -> FieldElem {
    FieldElem::Rat(Rat::new(n, d).unwrap())
}

#[test]
fn buchberger_examples() {
    let b = gb(&["y0 - y1", "y0^2 + y1^2 - 1"], MonomialOrder::Lex);
    assert_eq!(b.gens(), &[y("y0 - y1"), y("y1^2 - 1/2")]);
    assert_eq!(b.to_string(), "{y0 - y1, y1^2 - 1/2}");

    assert_eq!(gb(&["y0"], MonomialOrder::Lex).gens(), &[y("y0")]);

    let unit = gb(&["y0^2", "2*y0*y1 - 1"], MonomialOrder::GrevLex);
    assert!(unit.is_unit());
    assert_eq!(unit.to_string(), "{1}");
}

#[test]
fn triviality_examples() {
    let r = ring();
    assert!(is_trivial(&r, &[y("y0"), y("y0 - 1")]).unwrap().trivial);
    assert!(!is_trivial(&r, &[y("y0^2 - 1")]).unwrap().trivial);
    let t = is_trivial(&r, &[y("y0^2"), y("2*y0*y1 - 1")]).unwrap();
    assert!(t.trivial);
    assert!(t.certificate.is_unit());
    assert!(!is_trivial(&r, &[]).unwrap().trivial);
}

#[test]
fn membership_examples() {
    let b = gb(&["y0 - 1"], MonomialOrder::GrevLex);
    assert!(ideal_member(&y("y0^2 - 1"), &b).unwrap());
    let b = gb(&["y0^2"], MonomialOrder::GrevLex);
    assert!(!ideal_member(&y("y0"), &b).unwrap());
    assert!(ideal_member(&y("0"), &b).unwrap());
    let other = poly_in(&["q"], "q");
    assert_eq!(ideal_member(&other, &b), Err(GroebnerError::RingMismatch));
}

#[test]
fn elimination_examples() {
    let r = ring();
    // twisted cubic: eliminate y0
    let e = eliminate(&r, &[y("y1 - y0^2"), y("y2 - y0^3")], &[1, 2]).unwrap();
    assert_eq!(e.to_string(), "{y1^3 - y2^2}");

    let e = eliminate(&r, &[y("y0^2 - 1"), y("2*y0*y1 - 1")], &[0]).unwrap();
    assert_eq!(e.to_string(), "{y0^2 - 1}");
    assert_eq!(e.ring().names(), &["y0".to_string()]);

    let r1 = Ring::new(["y0"]);
    let e = eliminate(&r1, &[poly_in(&["y0"], "y0 - 5")], &[0]).unwrap();
    assert_eq!(e.to_string(), "{y0 - 5}");
}

#[test]
fn equality_examples() {
    let a = gb(&["y0 - 1"], MonomialOrder::Lex);
    assert!(ideal_equal(&a, &gb(&["y0 - 1"], MonomialOrder::Lex)).unwrap());
    assert!(!ideal_equal(&a, &gb(&["y0 - 2"], MonomialOrder::Lex)).unwrap());
    let b1 = gb(&["y0 - y1", "y1^2 - 1/2"], MonomialOrder::Lex);
    let b2 = gb(&["y1 - y0", "2*y0^2 - 1"], MonomialOrder::Lex);
    assert!(ideal_equal(&b1, &b2).unwrap());
    assert_eq!(ideal_equal(&b1, &gb(&["y0"], MonomialOrder::GrevLex)), Err(GroebnerError::OrderMismatch));
}

#[test]
fn solve_examples() {
    let r2 = Ring::new(["y0", "y1"]);
    let g = |src: &[&str], field: &Field| {
        let gens: Vec<MPoly> = src.iter().map(|s| parse_poly(s, &r2, field).unwrap()).collect();
        buchberger(&r2, &gens, MonomialOrder::Lex).unwrap()
    };
    let pts = solve_points(&g(&["y0 - y1", "y1^2 - 1/4"], &Field::Rational), &Field::Rational).unwrap();
    assert_eq!(pts, Points::Complete(vec![vec![rat(1, 2), rat(1, 2)], vec![rat(-1, 2), rat(-1, 2)]]));

    let r1 = Ring::new(["y0"]);
    let b = buchberger(&r1, &[poly_in(&["y0"], "y0^2 - 2")], MonomialOrder::Lex).unwrap();
    let pts = solve_points(&b, &Field::Rational).unwrap();
    assert_eq!(pts, Points::Inconclusive(vec![]));

    let f = Field::extension(UniPoly::new(vec![Rat::from(-2), Rat::from(0), Rat::from(1)])).unwrap();
    let theta = f.generator().unwrap();
    let p = parse_poly("y0^2 - 2", &r1, &f).unwrap();
    let b = buchberger(&r1, &[p], MonomialOrder::Lex).unwrap();
    let pts = solve_points(&b, &f).unwrap();
    assert_eq!(pts, Points::Complete(vec![vec![theta.clone()], vec![-theta]]));
}

#[test]
fn solve_over_extension_with_irrational_coefficients() {
    // y0^2 - 2*t*y0 + 2 = (y0 - t)^2 over Q(t), t^2 = 2
    let f = Field::extension(UniPoly::new(vec![Rat::from(-2), Rat::from(0), Rat::from(1)])).unwrap();
    let r1 = Ring::new(["y0"]);
    let p = parse_poly("y0^2 - 2*t*y0 + 2", &r1, &f).unwrap();
    let b = buchberger(&r1, &[p], MonomialOrder::Lex).unwrap();
    assert_eq!(solve_points(&b, &f).unwrap(), Points::Complete(vec![vec![f.generator().unwrap()]]));
    // y0^2 - 3 has no root in Q(sqrt 2)
    let p = parse_poly("y0^2 - 3", &r1, &f).unwrap();
    let b = buchberger(&r1, &[p], MonomialOrder::Lex).unwrap();
    assert_eq!(solve_points(&b, &f).unwrap(), Points::Inconclusive(vec![]));
}

#[test]
fn solve_rejects_positive_dimension_and_wrong_order() {
    let b = gb(&["y0*y1 - 1"], MonomialOrder::Lex);
    assert!(matches!(solve_points(&b, &Field::Rational), Err(GroebnerError::NotZeroDimensionalHandled(_))));
    let b = gb(&["y0"], MonomialOrder::GrevLex);
    assert_eq!(solve_points(&b, &Field::Rational), Err(GroebnerError::OrderMismatch));
    let b = gb(&["y0", "y0 - 1"], MonomialOrder::Lex);
    assert_eq!(solve_points(&b, &Field::Rational).unwrap(), Points::Complete(vec![]));
}

#[test]
fn non_triangular_lex_basis_is_solved_by_gcds() {
    // two generators with leading variable y0 over the same y1 values
    let r2 = Ring::new(["y0", "y1"]);
    let gens: Vec<MPoly> = ["y0^2 - y1", "y1^2 - 1", "y0*y1 - y0"]
        .iter()
        .map(|s| parse_poly(s, &r2, &Field::Rational).unwrap())
        .collect();
    let b = buchberger(&r2, &gens, MonomialOrder::Lex).unwrap();
    let pts = solve_points(&b, &Field::Rational).unwrap();
    for p in pts.points() {
        for g in &gens {
            assert!(g.eval(p).is_zero());
        }
    }
    // y1 = 1 gives y0 = ±1; y1 = -1 forces y0 = 0 and then y0^2 = -1 fails
    assert_eq!(pts.points().len(), 2);
}

#[test]
fn rabinowitsch_sanity() {
    let r = ring();
    for f in ["y0", "y0*y1 - 3", "y1^2 + y0 + 1"] {
        let f = y(f);
        let g = &y("1") - &(&y("y2") * &f);
        assert!(is_trivial(&r, &[f, g]).unwrap().trivial);
    }
}

fn random_ideal() -> impl Strategy<Value = Vec<MPoly>> {
    let term = ((0u32..3, 0u32..3, 0u32..2), -3i64..4);
    prop::collection::vec(prop::collection::vec(term, 1..4), 1..4).prop_map(|gens| {
        let r = ring();
        gens.into_iter()
            .map(|ts| {
                MPoly::from_terms(
                    &r,
                    ts.into_iter().map(|((a, b, c), k)| (Monomial::new(vec![a, b, c]), FieldElem::from_integer(k))),
                )
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn s_polynomials_reduce_to_zero(gens in random_ideal()) {
        for ord in [MonomialOrder::GrevLex, MonomialOrder::Lex] {
            let b = buchberger(&ring(), &gens, ord).unwrap();
            for i in 0..b.gens().len() {
                for j in i + 1..b.gens().len() {
                    let s = s_polynomial(&b.gens()[i], &b.gens()[j], ord).unwrap();
                    prop_assert!(b.reduce(&s).unwrap().is_zero());
                }
            }
            for g in &gens {
                prop_assert!(ideal_member(g, &b).unwrap());
            }
        }
    }

    #[test]
    fn reduced_basis_is_canonical(gens in random_ideal()) {
        let b = buchberger(&ring(), &gens, MonomialOrder::GrevLex).unwrap();
        let mut shuffled = gens.clone();
        shuffled.reverse();
        shuffled.push(gens[0].scale(&FieldElem::from_integer(-2)));
        let b2 = buchberger(&ring(), &shuffled, MonomialOrder::GrevLex).unwrap();
        prop_assert_eq!(b, b2);
    }

    #[test]
    fn eliminants_belong_to_the_ideal(gens in random_ideal()) {
        let r = ring();
        let full = buchberger(&r, &gens, MonomialOrder::GrevLex).unwrap();
        let e = eliminate(&r, &gens, &[1, 2]).unwrap();
        let back: Vec<Option<usize>> = vec![Some(1), Some(2)];
        for g in e.gens() {
            let lifted = g.rename_into(&r, &back).unwrap();
            prop_assert!(ideal_member(&lifted, &full).unwrap());
        }
    }
}
