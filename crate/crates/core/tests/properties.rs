use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use abclab::arith::field::{quadratic_field, rationals};
use abclab::arith::fp::FpPoly;
use abclab::arith::poly::QPoly;
use abclab::bounds::{check_monotonicity, cor_p1_profile, min_c0, morph_fini_transform, revet_etale_transform};
use abclab::heights::{proj_height, LogQuantity, ProjectivePoint};
use abclab::mason::{poly_radical, FFPoly};
use abclab::parse::{parse_qpoly, parse_rat};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn fp_poly(p: u64) -> impl Strategy<Value = FpPoly> {
    prop::collection::vec(0..p, 1..7).prop_map(move |c| FpPoly::new(p, c))
}

fn fp_pair() -> impl Strategy<Value = (FpPoly, FpPoly)> {
    prop::sample::select(vec![2u64, 3, 5, 7]).prop_flat_map(|p| (fp_poly(p), fp_poly(p)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn radical_is_multiplicative_on_coprime_factors((a, b) in fp_pair()) {
        prop_assume!(!a.is_zero() && !b.is_zero() && a.gcd(&b).degree() == 0);
        let ra = poly_radical(&FFPoly::Fp(a.clone())).unwrap();
        let rb = poly_radical(&FFPoly::Fp(b.clone())).unwrap();
        let rab = poly_radical(&FFPoly::Fp(a.mul(&b))).unwrap();
        prop_assert_eq!(rab.monic(), ra.mul(&rb).unwrap().monic());
    }

    #[test]
    fn radical_is_squarefree_and_divides(c in prop::collection::vec(-6i64..=6, 1..8), e in 1u32..4) {
        let f = QPoly::from_ints(&c);
        prop_assume!(!f.is_zero());
        let g = f.pow(e);
        let FFPoly::Q(r) = poly_radical(&FFPoly::Q(g.clone())).unwrap() else { unreachable!() };
        prop_assert!(r.is_squarefree());
        prop_assert!(g.rem(&r).is_zero());
        prop_assert_eq!(r.degree(), f.squarefree_part().degree());
    }

    #[test]
    fn parse_round_trips_printed_polynomials(c in prop::collection::vec((-30i64..=30, 1i64..=5), 1..7)) {
        let f = QPoly::new(c.iter().map(|&(n, d)| q(n, d)).collect());
        prop_assert_eq!(parse_qpoly(&f.fmt_var("x"), "x").unwrap(), f);
    }

    #[test]
    fn parse_round_trips_rationals(n in -10_000i64..10_000, d in 1i64..10_000) {
        let x = q(n, d);
        prop_assert_eq!(parse_rat(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn log_int_is_additive(a in 1i64..1_000_000, b in 1i64..1_000_000) {
        let lhs = LogQuantity::log_int(&BigInt::from(a * b));
        let rhs = LogQuantity::log_int(&BigInt::from(a)).add(&LogQuantity::log_int(&BigInt::from(b)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn height_ignores_scaling(coords in prop::collection::vec((-50i64..=50, 1i64..=20), 2..4), k in (1i64..=30, 1i64..=30)) {
        prop_assume!(coords.iter().any(|(n, _)| *n != 0));
        for field in [rationals(), quadratic_field(-1).unwrap()] {
            let pt: Vec<_> = coords.iter().map(|&(n, d)| field.from_rational(q(n, d))).collect();
            let s = field.element(vec![q(k.0, 1), q(k.1, 1)].into_iter().take(field.degree()).collect());
            let scaled: Vec<_> = pt.iter().map(|x| x.mul(&s)).collect();
            let h1 = proj_height(&ProjectivePoint::new(pt).unwrap(), 128).unwrap().relative;
            let h2 = proj_height(&ProjectivePoint::new(scaled).unwrap(), 128).unwrap().relative;
            prop_assert_eq!(h1, h2);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn combinator_chains_stay_monotone(steps in prop::collection::vec((any::<bool>(), 1u32..4, 0i64..4, 1i64..4), 1..=4), seed in any::<u64>()) {
        let mut b = cor_p1_profile();
        for (finite, d_phi, shift, gamma) in steps {
            let s = q(shift, 2);
            b = if finite {
                morph_fini_transform(&b, &s, &s, &s, &q(gamma, 1)).unwrap()
            } else {
                revet_etale_transform(&b, d_phi, &s, &s, &s, &q(gamma, 1), &q(139, 100), false).unwrap()
            };
        }
        let rep = check_monotonicity(&b, 40, seed, 96).unwrap();
        prop_assert!(rep.passed(), "{} decreases for {}", rep.violations.len(), b.name);
    }
}

#[test]
fn min_c0_grows_with_r_max() {
    let mut prev: Option<BigRational> = None;
    for r in [3, 5, 8, 9, 20, 100, 1000] {
        let m = min_c0(r, 128).unwrap();
        if let Some(p) = &prev {
            assert!(m.value.hi() >= *p, "r_max = {r}");
        }
        prev = Some(m.value.lo());
    }
    assert!(!prev.unwrap().is_zero());
}
