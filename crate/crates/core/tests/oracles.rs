//! Exact coefficients against values computed by independent routes.

use std::f64::consts::PI;

use lienard::bounds::{radius_scaled, series_invert};
use lienard::numeric::{inverse_return_map, return_map, validate_series, LienardSystem};
use lienard::oracle::brute_force_series_oracle;
use lienard::recurrence::TableJson;
use lienard::{CoefficientTable, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rational(num: i64, den: i64) -> Rational {
    Rational::new(num, den).unwrap()
}

#[test]
fn recurrence_matches_series_flow() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (d, order) in [(1, 8), (2, 9), (3, 8), (4, 9), (6, 7)] {
        let table = CoefficientTable::compute(d, order).unwrap();
        for _ in 0..3 {
            let lambda: Vec<Rational> = (0..d).map(|_| rational(rng.gen_range(-40..=40), 40)).collect();
            let flow = brute_force_series_oracle(d, order, &lambda).unwrap();
            for k in 1..=order {
                let exact = table.v_2pi(k).specialize(&lambda).unwrap().to_f64();
                let tol = 1e-8 * (1.0 + exact.abs());
                assert!((exact - flow[k - 1]).abs() < tol, "d={d} k={k} λ={lambda:?}: {exact} vs {}", flow[k - 1]);
            }
        }
    }
}

#[test]
fn golden_table_d4_k9() {
    let text = include_str!("golden/coeffs_d4_k9.json");
    let golden: TableJson = serde_json::from_str(text).unwrap();
    let table = CoefficientTable::compute(4, 9).unwrap();
    assert_eq!(CoefficientTable::from_json(&golden).unwrap(), table);
    // byte-identical serialization
    let fresh = serde_json::to_string_pretty(&table.to_json()).unwrap() + "\n";
    assert_eq!(fresh, text);
    // the stored values are also what the flow produces
    let lambda = [rational(1, 5), rational(-1, 3), rational(1, 7), rational(1, 4)];
    let flow = brute_force_series_oracle(4, 9, &lambda).unwrap();
    for k in 1..=9 {
        let v = table.v_2pi(k).specialize(&lambda).unwrap().to_f64();
        assert!((v - flow[k - 1]).abs() < 1e-9 * (1.0 + v.abs()), "k={k}");
    }
}

#[test]
fn return_map_matches_series() {
    let table = CoefficientTable::compute(2, 20).unwrap();
    let sys = LienardSystem::new(vec![0.0, 0.1]).unwrap();
    let q = table.return_series_f64(sys.lambda()).unwrap();
    let r0 = 0.1;
    // forward map from the series is the inverse of Q
    let exact = q.iter().enumerate().fold(0.0, |acc, (i, c)| acc + c * r0_f(r0, i));
    let inverse = series_invert(&q.iter().map(|x| F(*x)).collect::<Vec<_>>()).unwrap();
    let back = inverse.iter().enumerate().fold(0.0, |acc, (i, c)| acc + c.0 * r0_f(r0, i));
    let forward = return_map(&sys, r0, 1e-12).unwrap().r_return;
    let reverse = inverse_return_map(&sys, r0, 1e-12).unwrap().r_return;
    assert!((forward - exact).abs() < 1e-6, "{forward} vs {exact}");
    assert!((reverse - back).abs() < 1e-6, "{reverse} vs {back}");
    // first-order check: growth by (π/4) λ2 r³
    assert!(((forward - r0) / (PI / 4.0 * 0.1 * r0.powi(3)) - 1.0).abs() < 0.01);
}

fn r0_f(r: f64, i: usize) -> f64 {
    r.powi(i as i32 + 1)
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct F(f64);

impl lienard::Ring for F {
    fn zero() -> Self {
        F(0.0)
    }
    fn one() -> Self {
        F(1.0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0.0
    }
    fn add(&self, o: &Self) -> Self {
        F(self.0 + o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        F(self.0 * o.0)
    }
    fn neg(&self) -> Self {
        F(-self.0)
    }
    fn scale(&self, q: &Rational) -> Self {
        F(self.0 * q.to_f64())
    }
}

#[test]
fn validation_examples() {
    let sys = LienardSystem::new(vec![0.0, 0.05, 0.0, -0.02]).unwrap();
    let table = CoefficientTable::compute(4, 20).unwrap();
    let radius = radius_scaled(sys.lambda()).unwrap();
    let report = validate_series(&sys, &table, 20, radius, 8, 1e-12).unwrap();
    assert!(report.max_residual <= 1e-6, "{}", report.max_residual);
    assert!(report.within_bound);

    // more orders, smaller residual
    let sys = LienardSystem::new(vec![0.1, -0.05]).unwrap();
    let table = CoefficientTable::compute(2, 20).unwrap();
    let radius = radius_scaled(sys.lambda()).unwrap();
    let low = validate_series(&sys, &table, 8, radius, 8, 1e-12).unwrap();
    let high = validate_series(&sys, &table, 20, radius, 8, 1e-12).unwrap();
    assert!(high.max_residual < low.max_residual);
}

#[test]
fn return_map_is_monotone() {
    let sys = LienardSystem::new(vec![0.2, -0.3, 0.1]).unwrap();
    let values: Vec<f64> = (1..=12).map(|i| return_map(&sys, 0.05 * i as f64, 1e-10).unwrap().r_return).collect();
    assert!(values.windows(2).all(|w| w[0] < w[1]));
}
