use proptest::prelude::*;

use higher_brackets::algebra::{koszul_sign, rat, Element, Graded, Permutation, Rational, Symbol};
use higher_brackets::derived::{positive_basis, DerivedStructure};
use higher_brackets::dgla::StructureConstantDgla;
use higher_brackets::linfinity::LInfinity;
use higher_brackets::presets::finite_preset;

fn permutation(len: usize) -> impl Strategy<Value = Permutation> {
    Just((0..len).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

fn sl2_pqr() -> (StructureConstantDgla, Vec<Symbol>) {
    let d = finite_preset("sl2-pqr").unwrap();
    let w = positive_basis(&d);
    (d, w)
}

/// A homogeneous combination of window vectors of one degree.
fn combination(window: &[Symbol], degree: i64, coeffs: &[(usize, Rational)]) -> Element<Symbol> {
    let of_degree: Vec<&Symbol> = window.iter().filter(|s| s.degree() == degree).collect();
    let mut e = Element::zero();
    for (i, c) in coeffs {
        e.add_term(of_degree[i % of_degree.len()].clone(), c.clone());
    }
    e
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn koszul_sign_is_multiplicative(
        (sigma, tau) in (2usize..7).prop_flat_map(|n| (permutation(n), permutation(n))),
        raw in proptest::collection::vec(-3i64..4, 7),
    ) {
        let degrees = &raw[..sigma.len()];
        let composed = koszul_sign(&sigma.compose(&tau), degrees).unwrap();
        let stepwise = koszul_sign(&tau, degrees).unwrap()
            * koszul_sign(&sigma, &tau.apply(degrees)).unwrap();
        prop_assert_eq!(composed, stepwise);
    }

    #[test]
    fn koszul_sign_of_even_degrees_is_trivial(p in (1usize..7).prop_flat_map(permutation), k in 0i64..3) {
        let degrees = vec![2 * k; p.len()];
        prop_assert_eq!(koszul_sign(&p, &degrees).unwrap(), 1);
    }

    #[test]
    fn brackets_are_multilinear(
        degrees in proptest::collection::vec(1i64..=3, 2..=3),
        a in proptest::collection::vec((0usize..8, small_rational()), 1..3),
        b in proptest::collection::vec((0usize..8, small_rational()), 1..3),
        rest in proptest::collection::vec((0usize..8, small_rational()), 1..3),
        lambda in small_rational(),
    ) {
        let (d, w) = sl2_pqr();
        let s = DerivedStructure::new(&d);
        let x = combination(&w, degrees[0], &a);
        let y = combination(&w, degrees[0], &b);
        let tail: Vec<_> = degrees[1..].iter().map(|&g| combination(&w, g, &rest)).collect();
        let with = |first: Element<Symbol>| {
            let mut args = vec![first];
            args.extend(tail.iter().cloned());
            s.bracket(&args).unwrap()
        };
        let lhs = with(x.clone().scale(&lambda) + y.clone());
        let rhs = with(x).scale(&lambda) + with(y);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn brackets_are_graded_symmetric(
        degrees in proptest::collection::vec(1i64..=3, 2..=4),
        coeffs in proptest::collection::vec((0usize..8, small_rational()), 1..3),
        p in (0usize..24),
    ) {
        let (d, w) = sl2_pqr();
        let s = DerivedStructure::new(&d);
        let args: Vec<_> = degrees.iter().map(|&g| combination(&w, g, &coeffs)).collect();
        let all: Vec<Permutation> = Permutation::all(args.len()).collect();
        let perm = &all[p % all.len()];
        let sign = koszul_sign(perm, &degrees).unwrap();
        let permuted = s.bracket(&perm.apply(&args)).unwrap();
        let expected = s.bracket(&args).unwrap().scale(&rat(sign as i64, 1));
        prop_assert_eq!(permuted, expected);
    }

    #[test]
    fn unary_bracket_squares_to_zero(coeffs in proptest::collection::vec((0usize..8, small_rational()), 1..4), g in 1i64..=3) {
        let (d, w) = sl2_pqr();
        let s = DerivedStructure::new(&d);
        let x = combination(&w, g, &coeffs);
        let once = s.bracket(&[x]).unwrap();
        let twice = if once.is_zero() { once } else { s.bracket(&[once]).unwrap() };
        prop_assert!(twice.is_zero());
    }
}
