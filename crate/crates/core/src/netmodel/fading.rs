use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

/// Draws `count` unit-mean-power Rician coefficients with linear K-factor
/// `k_factor`.
///
/// The line-of-sight part has constant power `K/(K+1)` and a uniformly
/// distributed phase per coefficient, standing in for the element-dependent
/// geometric phase of the specular path. The scattered part is circularly
/// symmetric Gaussian with power `1/(K+1)`. `K = 0` gives Rayleigh fading and
/// `K = inf` a pure unit-modulus specular coefficient.
pub fn draw_small_scale<R: Rng + ?Sized>(k_factor: f64, count: usize, rng: &mut R) -> Vec<Complex64> {
    debug_assert!(k_factor >= 0.0, "K-factor must be non-negative");
    let (los_amp, scatter_std) = if k_factor.is_infinite() {
        (1.0, 0.0)
    } else {
        ((k_factor / (k_factor + 1.0)).sqrt(), (0.5 / (k_factor + 1.0)).sqrt())
    };
    (0..count)
        .map(|_| {
            let phase = 2.0 * PI * rng.random::<f64>();
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::from_polar(los_amp, phase) + Complex64::new(re, im) * scatter_std
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::StreamKey;

    fn mean_power(h: &[Complex64]) -> f64 {
        h.iter().map(|c| c.norm_sqr()).sum::<f64>() / h.len() as f64
    }

    #[test]
    fn pure_los_has_unit_modulus() {
        let h = draw_small_scale(f64::INFINITY, 1000, &mut StreamKey::new(1).rng());
        assert!(h.iter().all(|c| (c.norm() - 1.0).abs() < 1e-12));
    }

    #[test]
    fn rayleigh_unit_power() {
        let h = draw_small_scale(0.0, 1_000_000, &mut StreamKey::new(2).rng());
        let p = mean_power(&h);
        assert!((p - 1.0).abs() < 0.01, "mean |h|^2 = {p}");
    }

    #[test]
    fn rician_unit_power_and_los_share() {
        let k = 10.0;
        let h = draw_small_scale(k, 400_000, &mut StreamKey::new(3).rng());
        assert!((mean_power(&h) - 1.0).abs() < 0.01);
        // Var|h|^2 for Rician with unit power: (1 + 2K) / (K+1)^2
        let m = mean_power(&h);
        let var = h.iter().map(|c| (c.norm_sqr() - m).powi(2)).sum::<f64>() / h.len() as f64;
        let expected = (1.0 + 2.0 * k) / (k + 1.0).powi(2);
        assert!((var - expected).abs() < 0.02 * expected.max(0.1), "var {var} vs {expected}");
    }

    #[test]
    fn deterministic_under_seed() {
        let a = draw_small_scale(1.0, 64, &mut StreamKey::new(9).rng());
        let b = draw_small_scale(1.0, 64, &mut StreamKey::new(9).rng());
        assert_eq!(a, b);
    }
}
