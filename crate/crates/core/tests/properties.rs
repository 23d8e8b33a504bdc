use proptest::prelude::*;

use lienard::bounds::{compose, majorant_coefficients, radius_basic, rho_residual, rho_solve, series_invert};
use lienard::exact::{Decimal, Rounding};
use lienard::{CoefficientTable, PiPoly, Rational, Ring, TrigPoly};

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(p, q)| Rational::new(p, q).unwrap())
}

fn pipoly() -> impl Strategy<Value = PiPoly> {
    prop::collection::vec(rational(), 0..4).prop_map(PiPoly::from_coeffs)
}

fn trigpoly() -> impl Strategy<Value = TrigPoly> {
    prop::collection::vec((rational(), 0u32..2, 0u32..4, any::<bool>()), 0..4).prop_map(|terms| {
        terms.into_iter().fold(TrigPoly::zero(), |acc, (q, m, j, cos)| {
            let key = if cos || j == 0 { lienard::trig::TrigKey::cos(m, j) } else { lienard::trig::TrigKey::sin(m, j) };
            acc.add(&TrigPoly::term(q, key))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        if !b.is_zero() {
            prop_assert_eq!(&a.checked_div(&b).unwrap() * &b, a.clone());
        }
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn pipoly_ring_laws(a in pipoly(), b in pipoly(), c in pipoly()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn trig_calculus(a in trigpoly()) {
        let f = a.antiderivative();
        prop_assert_eq!(f.derivative(), a.clone());
        prop_assert!(f.value_at_zero().is_zero());
        for t in [0.3, 1.7, 4.0] {
            let bound = a.sup_norm_bound(20).to_f64();
            prop_assert!(a.eval_f64(t).abs() <= bound + 1e-12);
        }
    }

    #[test]
    fn trig_product_matches_values(a in trigpoly(), b in trigpoly(), t in 0.0f64..6.3) {
        let p = a.mul(&b).eval_f64(t);
        prop_assert!((p - a.eval_f64(t) * b.eval_f64(t)).abs() < 1e-9 * (1.0 + p.abs()));
    }

    #[test]
    fn series_inversion_round_trip(tail in prop::collection::vec(rational(), 1..7)) {
        let mut f = vec![Rational::one()];
        f.extend(tail);
        let g = series_invert(&f).unwrap();
        let id = compose(&f, &g);
        prop_assert!(id[0].is_one());
        prop_assert!(id[1..].iter().all(Rational::is_zero));
        prop_assert_eq!(series_invert(&g).unwrap(), f);
    }

    #[test]
    fn rho_is_a_root(lambda in prop::collection::vec(-5.0f64..5.0, 1..7)) {
        match rho_solve(&lambda) {
            Some(rho) => {
                prop_assert!(rho > 0.0);
                prop_assert!(rho_residual(&lambda, rho) <= 1e-10);
            }
            None => prop_assert!(lambda.iter().all(|x| *x == 0.0)),
        }
        let r = radius_basic(&lambda);
        prop_assert!(r <= 1.0);
        prop_assert_eq!(r == 1.0, lambda.iter().all(|x| *x == 0.0));
    }

    #[test]
    fn majorant_nonnegative_and_monotone(a in 0.0f64..2.0, da in 0.0f64..1.0) {
        let low = majorant_coefficients(a, 9);
        let high = majorant_coefficients(a + da, 9);
        for (x, y) in low.iter().zip(&high) {
            prop_assert!(*x >= 0.0);
            prop_assert!(*y >= *x * (1.0 - 1e-12));
        }
    }

    #[test]
    fn decimal_rounding_brackets(p in -10_000i64..10_000, q in 1i64..999, scale in 0u32..8) {
        let x = Rational::new(p, q).unwrap();
        let up = Decimal::from_rational(x.as_big(), scale, Rounding::Up).to_rational();
        let near = Decimal::from_rational(x.as_big(), scale, Rounding::Nearest).to_rational();
        prop_assert!(&up >= x.as_big());
        let ulp = num_rational::BigRational::new(1.into(), num_traits::pow(num_bigint::BigInt::from(10), scale as usize));
        prop_assert!(&up - x.as_big() < ulp);
        prop_assert!((&near - x.as_big()) * num_rational::BigRational::from_integer(2.into()) <= ulp);
    }
}

#[test]
fn coefficient_weights_and_vanishing() {
    for d in 1..=5 {
        let table = CoefficientTable::compute(d, 9).unwrap();
        for k in 1..=9 {
            for (m, c) in table.v_theta(k).terms() {
                assert_eq!(m.weight() as usize, k - 1, "d={d} k={k} {m}");
                assert!(c.value_at_zero().is_zero() || k == 1);
            }
        }
    }
}
