use fermat_core::curves::parse_poly;
use fermat_core::exact_arith::bivariate::bi_from_terms;
use fermat_core::exact_arith::resultant::{discriminant, resultant, resultant_field};
use fermat_core::exact_arith::series::to_series_poly;
use fermat_core::exact_arith::{squarefree_decompose, uni_gcd, weierstrass, BiPoly};
use fermat_core::local_invariants::{
    branch_invariants, intersection_multiplicity, intersection_multiplicity_puiseux, milnor_direct, milnor_number,
    v_general_order, Multiplicity, Precision,
};
use fermat_core::puiseux::newton_puiseux;
use fermat_core::{NfElem, QPoly, QSeries, Rational, Ring, SeriesOrder, TruncSeries, UniPoly};
use num_traits::{One, Zero};
use proptest::prelude::*;

const PREC: Precision = Precision { start: 2, cap: 256 };

fn qpoly(c: Vec<i64>) -> QPoly {
    UniPoly::new(c.into_iter().map(Rational::from_int).collect())
}

/// Nonconstant polynomial of degree at most `deg` with small integer coefficients.
fn poly_strategy(deg: usize) -> impl Strategy<Value = QPoly> {
    (1..=deg).prop_flat_map(|n| {
        (prop::collection::vec(-20i64..=20, n), prop_oneof![-20i64..=-1, 1i64..=20]).prop_map(|(mut c, lead)| {
            c.push(lead);
            qpoly(c)
        })
    })
}

/// An irreducible germ `v^p − c u^q` with `gcd(p, q) = 1`, as `(p, q, c)`.
fn branch_strategy() -> impl Strategy<Value = (usize, usize, i64)> {
    (1usize..=3, 1usize..=5, prop_oneof![Just(1i64), Just(2), Just(-1), Just(3)])
        .prop_filter("coprime exponents", |&(p, q, _)| num_integer::gcd(p, q) == 1)
}

fn germ_of(p: usize, q: usize, c: i64) -> BiPoly<NfElem> {
    bi_from_terms(&[(0, p, NfElem::one()), (q, 0, NfElem::from_int(-c))])
}

fn product(factors: &[(usize, usize, i64)]) -> BiPoly<NfElem> {
    factors.iter().fold(UniPoly::one(), |acc, &(p, q, c)| acc * germ_of(p, q, c))
}

/// Two-branch intersection multiplicity of `v^p = a u^q` and `v^r = b u^s`.
fn contact((p, q, a): (usize, usize, i64), (r, s, b): (usize, usize, i64)) -> usize {
    if p * s == q * r {
        assert_ne!(a, b);
        p * q
    } else {
        (q * r).min(p * s)
    }
}

fn distinct(v: Vec<(usize, usize, i64)>) -> Vec<(usize, usize, i64)> {
    let mut v = v;
    v.sort();
    v.dedup();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn resultant_antisymmetry(f in poly_strategy(5), g in poly_strategy(5)) {
        let (d, e) = (f.deg0(), g.deg0());
        let sign = if d * e % 2 == 1 { -Rational::one() } else { Rational::one() };
        prop_assert_eq!(resultant(&f, &g).unwrap(), sign * resultant(&g, &f).unwrap());
    }

    #[test]
    fn resultant_routes_agree(f in poly_strategy(5), g in poly_strategy(5)) {
        prop_assert_eq!(resultant(&f, &g).unwrap(), resultant_field(&f, &g).unwrap());
    }

    #[test]
    fn resultant_multiplicative(f in poly_strategy(3), g in poly_strategy(3), h in poly_strategy(3)) {
        let lhs = resultant(&(f.clone() * g.clone()), &h).unwrap();
        prop_assert_eq!(lhs, resultant(&f, &h).unwrap() * resultant(&g, &h).unwrap());
    }

    #[test]
    fn resultant_reduction(m in poly_strategy(4), g in poly_strategy(5), h in poly_strategy(2)) {
        let m = m.monic();
        let r = g.clone() - m.clone() * h;
        prop_assume!(!r.is_zero());
        prop_assert_eq!(resultant(&m, &g).unwrap(), resultant(&m, &r).unwrap());
    }

    #[test]
    fn discriminant_of_product(f in poly_strategy(3), g in poly_strategy(3)) {
        let lhs = discriminant(&(f.clone() * g.clone())).unwrap();
        let res = resultant(&f, &g).unwrap();
        prop_assert_eq!(lhs, discriminant(&f).unwrap() * discriminant(&g).unwrap() * res.clone() * res);
    }

    #[test]
    fn gcd_is_monic_common_divisor(f in poly_strategy(4), g in poly_strategy(4), h in poly_strategy(3)) {
        let a = f * h.clone();
        let b = g * h.clone();
        let d = uni_gcd(&a, &b).unwrap();
        prop_assert!(d.is_monic());
        prop_assert!(a.rem(&d).is_zero() && b.rem(&d).is_zero());
        prop_assert!(d.rem(&h.monic()).is_zero());
    }

    #[test]
    fn squarefree_decomposition_reconstructs(f in poly_strategy(3), g in poly_strategy(2)) {
        let p = f.clone() * g.clone() * g;
        let parts = squarefree_decompose(&p);
        let rebuilt = parts.iter().fold(QPoly::one(), |acc, (q, m)| (0..*m).fold(acc, |a, _| a * q.clone()));
        prop_assert_eq!(rebuilt.monic(), p.monic());
        for w in parts.windows(2) {
            prop_assert!(w[0].1 < w[1].1);
        }
    }

    #[test]
    fn series_precision_and_order(a in prop::collection::vec(-5i64..=5, 1..8), b in prop::collection::vec(-5i64..=5, 1..8), m in 1usize..10, n in 1usize..10) {
        let s = QSeries::new(a.into_iter().map(Rational::from_int).collect(), m);
        let t = QSeries::new(b.into_iter().map(Rational::from_int).collect(), n);
        prop_assert_eq!((s.clone() * t.clone()).prec(), m.min(n));
        prop_assert_eq!((s.clone() + t).prec(), m.min(n));
        match s.order() {
            SeriesOrder::Exact(o) => prop_assert!(o < m && !s.coeff(o).is_zero()),
            SeriesOrder::AtLeast(o) => prop_assert_eq!(o, m),
        }
    }

    #[test]
    fn weierstrass_form(factors in prop::collection::vec(branch_strategy(), 1..3), unit in -3i64..=3, n in 3usize..8) {
        let factors = distinct(factors);
        let f = product(&factors) * bi_from_terms(&[(0, 0, NfElem::one()), (1, 0, NfElem::from_int(unit)), (0, 1, NfElem::one())]);
        let w = weierstrass(&f, n).unwrap();
        prop_assert!(w.w.lc().is_one());
        for j in 0..w.w.deg0() {
            prop_assert!(w.w.coeff(j).coeff(0).is_zero());
        }
        let back = w.w.clone() * w.unit.clone();
        let target = to_series_poly(&f, n);
        for j in 0..=target.deg0().max(back.deg0()) {
            for i in 0..n {
                prop_assert_eq!(back.coeff(j).coeff(i), target.coeff(j).coeff(i));
            }
        }
    }

    #[test]
    fn milnor_routes_and_branches(factors in prop::collection::vec(branch_strategy(), 1..4)) {
        let factors = distinct(factors);
        let f = product(&factors);
        let disc = milnor_number(&f, PREC).unwrap();
        prop_assert_eq!(milnor_direct(&f, PREC).unwrap(), Multiplicity::Finite(disc));
        let inv = branch_invariants(&f, PREC).unwrap();
        prop_assert_eq!(inv.milnor, disc);
        prop_assert_eq!(inv.polydromies.iter().sum::<usize>(), v_general_order(&f).unwrap());
        let smooth = factors.len() == 1 && (factors[0].0 == 1 || factors[0].1 == 1);
        prop_assert_eq!(disc == 0, smooth);
        // Coprime exponents make every factor a single branch.
        prop_assert_eq!(inv.branch_count, factors.len());
    }

    #[test]
    fn intersection_routes_agree(a in prop::collection::vec(branch_strategy(), 1..3), b in prop::collection::vec(branch_strategy(), 1..3)) {
        let a = distinct(a);
        let b: Vec<_> = distinct(b).into_iter().filter(|x| !a.contains(x)).collect();
        prop_assume!(!b.is_empty());
        let expected: usize = a.iter().flat_map(|&x| b.iter().map(move |&y| contact(x, y))).sum();
        let (f, g) = (product(&a), product(&b));
        prop_assert_eq!(intersection_multiplicity(&f, &g, PREC).unwrap(), Multiplicity::Finite(expected));
        prop_assert_eq!(intersection_multiplicity_puiseux(&f, &g, PREC).unwrap(), Multiplicity::Finite(expected));
    }

    #[test]
    fn conjugates_recover_weierstrass_part((p, q, c) in branch_strategy(), c2 in -2i64..=2) {
        prop_assume!(p > 1);
        let f = bi_from_terms(&[(0, p, NfElem::one()), (q, 0, NfElem::from_int(-c)), (q + 1, 0, NfElem::from_int(c2))]);
        let bs = newton_puiseux(&f, &None).unwrap();
        prop_assert_eq!(bs.branches.len(), 1);
        let bound = 4;
        let s = bs.branches[0].series(bound).unwrap();
        let conj = s.conjugates();
        prop_assert_eq!(conj.len(), s.polydromy());
        let ram = s.ram();
        let field = conj[0].field().clone();
        let mut prod: UniPoly<TruncSeries<NfElem>> = UniPoly::one();
        for x in &conj {
            prod = prod * UniPoly::new(vec![-x.to_series(), TruncSeries::one()]);
        }
        let w = weierstrass(&f, bound).unwrap();
        for j in 0..=p {
            for i in 0..bound * ram {
                let expect = if i % ram == 0 { w.w.coeff(j).coeff(i / ram).in_field(&field) } else { NfElem::zero() };
                prop_assert_eq!(prod.coeff(j).coeff(i), expect);
            }
        }
    }

    #[test]
    fn curve_text_round_trips(terms in prop::collection::vec((0u32..=3, -9i64..=9), 1..6)) {
        let text = terms
            .iter()
            .map(|&(a, c)| format!("{c}*x^{a}*y^{}*z", 3 - a))
            .collect::<Vec<_>>()
            .join(" + ");
        if let Ok(g) = parse_poly(&text) {
            prop_assert_eq!(parse_poly(&g.to_string()).unwrap(), g);
        }
    }
}
