//! Gamma-function helpers and Pochhammer symbols.
//!
//! Every constant prefactor in the crate is assembled in log space from
//! [`ln_gamma`], which keeps the sign separately so reflected arguments do
//! not silently lose it.

/// `ln |Γ(x)|` together with the sign of `Γ(x)`.
pub fn ln_gamma(x: f64) -> (f64, f64) {
    let (value, sign) = libm::lgamma_r(x);
    (value, if sign < 0 { -1.0 } else { 1.0 })
}

/// `Γ(x)` assembled from [`ln_gamma`].
pub fn gamma(x: f64) -> f64 {
    let (value, sign) = ln_gamma(x);
    sign * value.exp()
}

/// Rising factorial `a (a+1) ... (a+n-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, j| acc * (a + j as f64))
}

/// `ln |(a)_n|` and its sign, or `None` when one of the factors vanishes.
pub fn ln_pochhammer(a: f64, n: usize) -> Option<(f64, f64)> {
    let mut log = 0.0;
    let mut sign = 1.0;
    for j in 0..n {
        let factor = a + j as f64;
        if factor == 0.0 {
            return None;
        }
        if factor < 0.0 {
            sign = -sign;
        }
        log += factor.abs().ln();
    }
    Some((log, sign))
}

/// `ln n!`.
pub fn ln_factorial(n: usize) -> f64 {
    ln_gamma(n as f64 + 1.0).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn pochhammer_small_cases() {
        assert_eq!(pochhammer(2.5, 0), 1.0);
        assert_eq!(pochhammer(1.0, 4), 24.0);
        assert_eq!(pochhammer(0.5, 2), 0.75);
    }

    #[test]
    fn ln_pochhammer_matches_product_and_detects_zero() {
        let (log, sign) = ln_pochhammer(-2.5, 3).unwrap();
        assert_relative_eq!(sign * log.exp(), pochhammer(-2.5, 3), max_relative = 1e-14);
        assert!(ln_pochhammer(-2.0, 3).is_none());
        assert!(ln_pochhammer(-2.0, 2).is_some());
    }

    #[test]
    fn gamma_values() {
        assert_relative_eq!(gamma(0.5), std::f64::consts::PI.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(gamma(5.0), 24.0, max_relative = 1e-14);
        assert_relative_eq!(gamma(-0.5), -2.0 * std::f64::consts::PI.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(ln_factorial(10), 3_628_800f64.ln(), max_relative = 1e-14);
    }
}
