//! Orthogonal-polynomial helpers: generalized Laguerre polynomials and
//! normalized Hermite functions, both evaluated by three-term recurrences.

use core::f64::consts::PI;

/// Generalized Laguerre polynomial `L^order_k(x)`.
///
/// Uses the upward recurrence
/// `(k+1) L_{k+1} = (2k+1+order-x) L_k - (k+order) L_{k-1}`.
pub fn laguerre(k: usize, order: u32, x: f64) -> f64 {
    let a = f64::from(order);
    let mut prev = 1.0;
    if k == 0 {
        return prev;
    }
    let mut cur = 1.0 + a - x;
    for j in 1..k {
        let j = j as f64;
        let next = ((2.0 * j + 1.0 + a - x) * cur - (j + a) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Normalized harmonic-oscillator eigenfunction `⟨x|n⟩` in the convention
/// `⟨x|0⟩ = π^{-1/4} exp(-x²/2)`.
pub fn hermite_function(n: usize, x: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = ground(x);
    for k in 0..n {
        let next = hermite_step(k, x, cur, prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Fills `out[n] = ⟨x|n⟩` for `n = 0..out.len()`.
pub fn hermite_functions(x: f64, out: &mut [f64]) {
    let mut prev = 0.0;
    let mut cur = ground(x);
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = cur;
        let next = hermite_step(k, x, cur, prev);
        prev = cur;
        cur = next;
    }
}

#[inline]
fn ground(x: f64) -> f64 {
    libm::pow(PI, -0.25) * libm::exp(-0.5 * x * x)
}

#[inline]
fn hermite_step(k: usize, x: f64, cur: f64, prev: f64) -> f64 {
    let k = k as f64;
    x * libm::sqrt(2.0 / (k + 1.0)) * cur - libm::sqrt(k / (k + 1.0)) * prev
}

/// Composite Simpson rule on uniformly spaced samples (odd sample count).
pub(crate) fn simpson(values: &[f64], h: f64) -> f64 {
    debug_assert!(values.len() % 2 == 1 && values.len() >= 3);
    let last = values.len() - 1;
    let mut acc = values[0] + values[last];
    for (i, &v) in values.iter().enumerate().take(last).skip(1) {
        acc += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    acc * h / 3.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::vec::Vec;

    #[test]
    fn laguerre_low_orders() {
        assert_eq!(laguerre(0, 0, 3.7), 1.0);
        for &x in &[0.0, 0.3, 1.7, 5.0] {
            assert!((laguerre(1, 1, x) - (2.0 - x)).abs() < 1e-15);
        }
        // (x² - 4x + 2) / 2 at x = 1
        let closed = (1.0f64 - 4.0 + 2.0) / 2.0;
        assert!((laguerre(2, 0, 1.0) - closed).abs() < 1e-15);
        assert!((laguerre(2, 0, 1.0) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn laguerre_matches_explicit_sum() {
        // L^a_k(x) = Σ_i (-1)^i C(k+a, k-i) x^i / i!
        fn binom(n: usize, k: usize) -> f64 {
            (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
        }
        for k in 0..12 {
            for a in 0..3u32 {
                let x: f64 = 0.37;
                let mut sum = 0.0;
                let mut fact = 1.0;
                for i in 0..=k {
                    if i > 0 {
                        fact *= i as f64;
                    }
                    let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                    sum += sign * binom(k + a as usize, k - i) * x.powi(i as i32) / fact;
                }
                assert!((laguerre(k, a, x) - sum).abs() < 1e-11, "k={k} a={a}");
            }
        }
    }

    proptest! {
        #[test]
        fn laguerre_recurrence_residual(x in 0.0f64..10.0, k in 1usize..60, order in 0u32..2) {
            let a = f64::from(order);
            let kf = k as f64;
            let lp = laguerre(k + 1, order, x);
            let l = laguerre(k, order, x);
            let lm = laguerre(k - 1, order, x);
            let residual = (kf + 1.0) * lp - (2.0 * kf + 1.0 + a - x) * l + (kf + a) * lm;
            let scale = lp.abs().max(l.abs()).max(lm.abs()).max(1.0) * (2.0 * kf + 12.0);
            prop_assert!(residual.abs() <= 1e-10 * scale);
        }
    }

    #[test]
    fn hermite_values_at_origin() {
        assert!((hermite_function(0, 0.0) - PI.powf(-0.25)).abs() < 1e-15);
        assert!((hermite_function(0, 0.0) - 0.7511255444649425).abs() < 1e-15);
        assert_eq!(hermite_function(1, 0.0), 0.0);
    }

    #[test]
    fn hermite_matches_explicit_polynomials() {
        // [e^{-x²} / (√π 2ⁿ n!)]^{1/2} Hₙ(x) with physicists' Hₙ built from H_{n+1} = 2x Hₙ - 2n H_{n-1}
        for &x in &[-2.5, -0.4, 0.0, 0.9, 3.1] {
            let mut h = [0.0f64; 9];
            h[0] = 1.0;
            h[1] = 2.0 * x;
            for n in 1..8 {
                h[n + 1] = 2.0 * x * h[n] - 2.0 * n as f64 * h[n - 1];
            }
            let mut fact = 1.0;
            for n in 0..9 {
                if n > 0 {
                    fact *= n as f64;
                }
                let norm = ((-x * x).exp() / (PI.sqrt() * 2f64.powi(n as i32) * fact)).sqrt();
                assert!(
                    (hermite_function(n, x) - norm * h[n]).abs() < 1e-13,
                    "n={n} x={x}"
                );
            }
        }
    }

    #[test]
    fn hermite_table_agrees_with_single_evaluation() {
        let mut out = [0.0; 20];
        hermite_functions(1.3, &mut out);
        for (n, v) in out.iter().enumerate() {
            assert!((v - hermite_function(n, 1.3)).abs() < 1e-15);
        }
    }

    #[test]
    fn hermite_fifty_is_normalized() {
        // independent composite Simpson on [-16, 16]
        let m = 20_000usize;
        let (lo, hi) = (-16.0f64, 16.0f64);
        let h = (hi - lo) / m as f64;
        let f: Vec<f64> = (0..=m)
            .map(|i| hermite_function(50, lo + i as f64 * h).powi(2))
            .collect();
        let mut acc = f[0] + f[m];
        for i in 1..m {
            acc += if i % 2 == 1 { 4.0 } else { 2.0 } * f[i];
        }
        let integral = acc * h / 3.0;
        assert!((integral - 1.0).abs() < 1e-8, "{integral}");
    }

    #[test]
    fn simpson_exact_for_cubics() {
        let h = 0.25;
        let v: Vec<f64> = (0..9).map(|i| (i as f64 * h).powi(3)).collect();
        assert!((simpson(&v, h) - 2f64.powi(4) / 4.0).abs() < 1e-13);
    }
}
