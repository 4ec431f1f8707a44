use std::collections::BTreeMap;

use num_traits::{One, Zero};
use proptest::prelude::*;

use super::*;
use crate::exactfield::{Field, FieldElem, Rat, UniPoly};
use crate::multipoly::parse::parse_poly;

fn rat(n: i64, d: i64) -> FieldElem {
    FieldElem::Rat(Rat::new(n, d).unwrap())
}

fn int(n: i64) -> FieldElem {
    FieldElem::from_integer(n)
}

fn comp(n: usize, m: usize, fs: &[&str]) -> TextileSystem {
    let ring = TextileSystem::composition_ring(n, m);
    let f = fs.iter().map(|s| parse_poly(s, &ring, &Field::Rational).unwrap()).collect();
    TextileSystem::composition(Field::Rational, n, m, f).unwrap()
}

fn counter(alphas: &[i64]) -> TextileSystem {
    TextileSystem::counterexample(Field::Rational, alphas.iter().map(|&a| int(a)).collect()).unwrap()
}

fn series1(coeffs: &[FieldElem], cap: u32) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(1, 1, cap);
    for (k, c) in coeffs.iter().enumerate() {
        s.set(0, Monomial::new(vec![k as u32]), c.clone()).unwrap();
    }
    s
}

fn b(e: &[u32]) -> Monomial {
    Monomial::new(e.to_vec())
}

fn g(ex: &Extraction, j: usize, beta: &[u32]) -> String {
    ex.get(j, &b(beta)).unwrap().to_string()
}

#[test]
fn var_count_examples() {
    assert_eq!(var_count(1, 3, 1), 3);
    assert_eq!(var_count(2, 2, 1), 3);
    assert_eq!(var_count(2, 3, 2), 12);
    for (n, k, m) in [(1, 1, 1), (3, 4, 2), (2, 5, 3)] {
        assert_eq!(CoeffIndexing::new(n, m, k as u32).len(), var_count(n, k, m));
    }
}

#[test]
fn multi_indices_are_graded_lex() {
    assert_eq!(multi_indices(2, 2), vec![b(&[2, 0]), b(&[1, 1]), b(&[0, 2])]);
    assert_eq!(multi_indices(3, 1), vec![b(&[1, 0, 0]), b(&[0, 1, 0]), b(&[0, 0, 1])]);
    let idx = CoeffIndexing::new(2, 2, 2);
    let names: Vec<&str> = idx.ring().names().iter().map(|s| s.as_str()).collect();
    assert_eq!(names, ["y1_0.0", "y2_0.0", "y1_1.0", "y2_1.0", "y1_0.1", "y2_0.1"]);
    assert_eq!(idx.index(1, &b(&[1, 0])), Some(3));
    assert_eq!(idx.var(4), (0, &b(&[0, 1])));
}

#[test]
fn lower_levels_are_prefixes() {
    let hi = CoeffIndexing::new(2, 3, 4);
    for l in 1..4 {
        let lo = CoeffIndexing::new(2, 3, l);
        assert_eq!(lo.ring().names(), &hi.ring().names()[..lo.len()]);
    }
}

#[test]
fn truncate_examples() {
    let y = series1(&[int(1), int(1), int(1)], 3);
    assert_eq!(y.truncate(2).unwrap(), series1(&[int(1), int(1)], 2));
    assert_eq!(y.truncate(1).unwrap(), series1(&[int(1)], 1));
    assert_eq!(y.truncate(4), Err(TextileError::CapExceeded { requested: 4, cap: 3 }));
}

#[test]
fn project_examples() {
    let v = vec![int(5), int(6), int(7)];
    assert_eq!(project(&v, 1, 1, 3, 3).unwrap(), v);
    assert_eq!(project(&v, 1, 1, 3, 1).unwrap(), vec![int(5)]);
    assert_eq!(project(&v, 1, 1, 3, 4), Err(TextileError::BadBounds { k: 3, l: 4 }));
}

#[test]
fn depend_bound_examples() {
    assert_eq!(comp(1, 1, &["y1^2 - (1 + x1)"]).depend_bound(4).unwrap(), 4);
    assert_eq!(counter(&[0, 1, 2, 3, 4, 5]).depend_bound(5).unwrap(), 5);

    let idx = CoeffIndexing::new(1, 1, 3);
    let mut table = BTreeMap::new();
    table.insert((0, b(&[1])), parse_poly("y1_2 - y1_1", idx.ring(), &Field::Rational).unwrap());
    let sys = TextileSystem::explicit(Field::Rational, 1, 1, 1, vec![1, 3], table).unwrap();
    assert_eq!(sys.depend_bound(2).unwrap(), 3);
    assert_eq!(sys.depend_bound(3), Err(TextileError::OutOfRange { n: 3, max: 2 }));
}

#[test]
fn explicit_validation() {
    let idx = CoeffIndexing::new(1, 1, 2);
    // D_2 = 1 < 2
    assert!(TextileSystem::explicit(Field::Rational, 1, 1, 1, vec![1, 1], BTreeMap::new()).is_err());
    // β = 0 is read at N = 1 where D_1 = 1 excludes y1_1
    let mut table = BTreeMap::new();
    table.insert((0, b(&[0])), parse_poly("y1_1", idx.ring(), &Field::Rational).unwrap());
    assert!(TextileSystem::explicit(Field::Rational, 1, 1, 1, vec![1, 2], table).is_err());
}

#[test]
fn extraction_examples() {
    let ex = comp(1, 1, &["y1^2 - (1 + x1)"]).extract_coeffs(3).unwrap();
    assert_eq!(g(&ex, 0, &[0]), "y1_0^2 - 1");
    assert_eq!(g(&ex, 0, &[1]), "2*y1_0*y1_1 - 1");
    assert_eq!(g(&ex, 0, &[2]), "y1_1^2 + 2*y1_0*y1_2");

    let ex = counter(&[0, 1]).extract_coeffs(3).unwrap();
    assert_eq!(g(&ex, 0, &[0]), "0");
    assert_eq!(g(&ex, 0, &[1]), "y1_0*y1_1 - 1");
    assert_eq!(g(&ex, 0, &[2]), "y1_0*y1_2 - y1_2 - 1");

    let ex = comp(1, 1, &["y1 - x1"]).extract_coeffs(2).unwrap();
    assert_eq!(g(&ex, 0, &[0]), "y1_0");
    assert_eq!(g(&ex, 0, &[1]), "y1_1 - 1");

    assert_eq!(
        counter(&[0, 1]).extract_coeffs(4).unwrap_err(),
        TextileError::AlphaListTooShort { needed: 3, len: 2 }
    );
}

#[test]
fn evaluation_examples() {
    let sys = comp(1, 1, &["y1^2 - (1 + x1)"]);
    let y = series1(&[int(1), rat(1, 2)], 3);
    let e = sys.evaluate(&y, 3).unwrap();
    assert_eq!(e, series1(&[int(0), int(0), rat(1, 4)], 3));
    assert_eq!(e.valuation(), Some(2));

    let sys = counter(&[0, 1, 2]);
    let y = series1(&[int(2), rat(1, 2), int(1)], 4);
    assert!(sys.evaluate(&y, 3).unwrap().is_zero());
    assert!(sys.order_at_least(&y, 3).unwrap());
    assert!(!sys.order_at_least(&y, 4).unwrap());
    assert_eq!(sys.evaluate(&y, 4).unwrap().coeff(0, &b(&[3])), int(-1));

    // zero input at order 1 gives the constant coefficients at the origin
    let sys = comp(2, 2, &["y1*y2 + 3 + x1", "y2 - 2"]);
    let e = sys.evaluate(&TruncatedSeries::zero(2, 2, 1), 1).unwrap();
    assert_eq!(e.coeff(0, &b(&[0, 0])), int(3));
    assert_eq!(e.coeff(1, &b(&[0, 0])), int(-2));

    let short = series1(&[int(1)], 1);
    assert_eq!(
        comp(1, 1, &["y1"]).evaluate(&short, 2),
        Err(TextileError::InsufficientCap { needed: 2, cap: 1 })
    );

    let sys = comp(1, 1, &["y1 - x1"]);
    let exact = series1(&[int(0), int(1)], 2);
    for order in 1..6 {
        assert!(sys.order_at_least(&exact.with_cap(order as u32), order).unwrap());
    }
}

#[test]
fn counterexample_solution_examples() {
    let alphas: Vec<FieldElem> = [0, 1, 2].iter().map(|&a| int(a)).collect();
    let y = counterexample_solution(&alphas, 2).unwrap();
    assert_eq!(y, series1(&[int(2), rat(1, 2), int(1)], 4));
    assert_eq!(y.to_string(), "y1 = 2 + 1/2*x1 + x1^2");

    let y = counterexample_solution(&alphas[..2], 1).unwrap();
    assert_eq!(y, series1(&[int(1), int(1)], 3));

    let y = counterexample_solution(&alphas, 0).unwrap();
    assert_eq!(y, series1(&[], 2));

    assert_eq!(
        counterexample_solution(&alphas, 3),
        Err(TextileError::AlphaListTooShort { needed: 4, len: 3 })
    );
    assert_eq!(counterexample_solution(&[int(0), int(0)], 1), Err(TextileError::DuplicateAlphas));
    assert_eq!(
        TextileSystem::counterexample(Field::Rational, vec![int(1), int(1)]),
        Err(TextileError::DuplicateAlphas)
    );
}

#[test]
fn series_display_is_ascending() {
    let y = series1(&[int(1), rat(1, 2), rat(-1, 8), rat(1, 16), rat(-5, 128)], 5);
    assert_eq!(y.to_string(), "y1 = 1 + 1/2*x1 - 1/8*x1^2 + 1/16*x1^3 - 5/128*x1^4");
}

#[test]
fn extension_field_counterexample() {
    let f = Field::extension(UniPoly::new(vec![Rat::from(-2), Rat::from(0), Rat::from(1)])).unwrap();
    let theta = f.generator().unwrap();
    let alphas = vec![int(0), theta.clone(), -theta.clone(), int(1)];
    let sys = TextileSystem::counterexample(f, alphas.clone()).unwrap();
    for order in 1..alphas.len() {
        let y = counterexample_solution(&alphas, order).unwrap();
        let e = sys.evaluate(&y, order + 2).unwrap();
        assert_eq!(e.valuation(), Some(order as u32 + 1));
        assert_eq!(e.coeff(0, &b(&[order as u32 + 1])), int(-1));
    }
}

fn random_composition() -> impl Strategy<Value = TextileSystem> {
    (1usize..=2, 1usize..=2).prop_flat_map(|(n, m)| {
        let nv = n + m;
        let term = (prop::collection::vec(0u32..=3, nv), -3i64..=3);
        let poly = prop::collection::vec(term, 1..5);
        prop::collection::vec(poly, 1..=2).prop_map(move |fs| {
            let ring = TextileSystem::composition_ring(n, m);
            let f = fs
                .into_iter()
                .map(|ts| {
                    MPoly::from_terms(
                        &ring,
                        ts.into_iter().map(|(mut e, c)| {
                            // total degree at most 3
                            while e.iter().sum::<u32>() > 3 {
                                let i = e.iter().position(|&x| x > 0).unwrap();
                                e[i] -= 1;
                            }
                            (Monomial::new(e), int(c))
                        }),
                    )
                })
                .collect();
            TextileSystem::composition(Field::Rational, n, m, f).unwrap()
        })
    })
}

fn random_series(n: usize, m: usize, cap: u32) -> impl Strategy<Value = TruncatedSeries> {
    let len = var_count(n, cap as usize, m);
    prop::collection::vec((-4i64..=4, 1i64..=3), len).prop_map(move |cs| {
        let idx = CoeffIndexing::new(n, m, cap);
        let v: Vec<FieldElem> = cs.into_iter().map(|(a, d)| rat(a, d)).collect();
        TruncatedSeries::from_coefficient_vector(&idx, &v)
    })
}

fn system_and_series() -> impl Strategy<Value = (TextileSystem, TruncatedSeries)> {
    random_composition().prop_flat_map(|sys| {
        let (n, m) = (sys.n(), sys.m());
        (Just(sys), random_series(n, m, 5))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn extraction_commutes_with_evaluation((sys, y) in system_and_series(), order in 1usize..=4) {
        let ex = sys.extract_coeffs(order).unwrap();
        prop_assert_eq!(ex.evaluate_at(&y).unwrap(), sys.evaluate(&y, order).unwrap());
    }

    #[test]
    fn depend_bound_is_sound(sys in random_composition(), order in 1usize..=4) {
        let ex = sys.extract_coeffs(order).unwrap();
        let allowed = var_count(sys.n(), sys.depend_bound(order).unwrap(), sys.m());
        for (_, _, p) in ex.entries() {
            prop_assert!(p.support().iter().all(|&v| v < allowed));
        }
    }

    #[test]
    fn order_depends_only_on_the_truncation((sys, y) in system_and_series(), order in 1usize..=4) {
        let d = sys.depend_bound(order).unwrap() as u32;
        let lhs = sys.order_at_least(&y, order).unwrap();
        let rhs = sys.order_at_least(&y.truncate(d).unwrap(), order).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn truncations_compose((_, y) in system_and_series(), k in 0u32..=5, l in 0u32..=5) {
        let (k, l) = (k.min(l), k.max(l));
        prop_assert_eq!(y.truncate(l).unwrap().truncate(k).unwrap(), y.truncate(k).unwrap());
    }

    #[test]
    fn projections_compose(v in prop::collection::vec(-5i64..5, 15), k in 1usize..=5, l in 1usize..=5) {
        let (l, k) = (k.min(l), k.max(l));
        let v: Vec<FieldElem> = v.into_iter().map(int).collect();
        let direct = project(&v, 2, 1, 5, l).unwrap();
        let via = project(&project(&v, 2, 1, 5, k).unwrap(), 2, 1, k, l).unwrap();
        prop_assert_eq!(direct, via);
    }

    #[test]
    fn counterexample_order_law(raw in prop::collection::btree_set(-20i64..20, 2..8)) {
        let alphas: Vec<FieldElem> = raw.into_iter().map(int).collect();
        let sys = TextileSystem::counterexample(Field::Rational, alphas.clone()).unwrap();
        for order in 1..alphas.len() {
            let y = counterexample_solution(&alphas, order).unwrap();
            prop_assert!(sys.order_at_least(&y, order + 1).unwrap());
            let e = sys.evaluate(&y, order + 2).unwrap();
            prop_assert_eq!(e.coeff(0, &b(&[order as u32 + 1])), -FieldElem::one());
            prop_assert!(!e.coeff(0, &b(&[order as u32 + 1])).is_zero());
        }
    }
}
