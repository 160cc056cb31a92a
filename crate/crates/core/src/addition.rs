//! Koornwinder's addition formula for Jacobi polynomials and its
//! coefficients `a_{n,k,l}^{(α,β)}`.
//!
//! The closed-form kernel is the addition formula integrated in `t`, so a
//! vanishing residual here certifies the coefficient formula the kernel
//! derivation relies on.

use crate::error::{Error, Result};
use crate::jacobi::{eval_unchecked, JacobiParams};
use crate::special::{ln_factorial, ln_pochhammer};

const POLE_TOLERANCE: f64 = 1e-14;

/// Evaluation point `(ξ, η, r, ψ)` of the addition formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdditionSample {
    pub xi: f64,
    pub eta: f64,
    pub r: f64,
    pub psi: f64,
}

impl AdditionSample {
    pub fn new(xi: f64, eta: f64, r: f64, psi: f64) -> Result<Self> {
        let unit = -1.0..=1.0;
        if !unit.contains(&xi) || !unit.contains(&eta) || !(0.0..=1.0).contains(&r) || !(0.0..=std::f64::consts::PI).contains(&psi) {
            return Err(Error::Domain {
                value: xi,
                domain: "xi, eta in [-1,1], r in [0,1], psi in [0,pi]",
            });
        }
        Ok(Self { xi, eta, r, psi })
    }

    /// Argument of the left-hand side,
    /// `½(1+ξ)(1+η) + ½(1-ξ)(1-η) r² + √(1-ξ²) √(1-η²) r cos ψ - 1`.
    pub fn argument(&self) -> f64 {
        let Self { xi, eta, r, psi } = *self;
        0.5 * (1.0 + xi) * (1.0 + eta)
            + 0.5 * (1.0 - xi) * (1.0 - eta) * r * r
            + (1.0 - xi * xi).sqrt() * (1.0 - eta * eta).sqrt() * r * psi.cos()
            - 1.0
    }
}

struct LogProduct {
    log: f64,
    sign: f64,
}

impl LogProduct {
    fn new() -> Self {
        Self { log: 0.0, sign: 1.0 }
    }

    fn mul(&mut self, value: f64) {
        if value < 0.0 {
            self.sign = -self.sign;
        }
        self.log += value.abs().ln();
    }

    fn mul_pochhammer(&mut self, a: f64, n: usize) {
        match ln_pochhammer(a, n) {
            Some((log, sign)) => {
                self.log += log;
                self.sign *= sign;
            }
            None => self.sign = 0.0,
        }
    }
}

/// `a_{n,k,l}^{(α,β)}` as printed:
///
/// ```text
/// (k+l+α)(k-l+β) (n+α+β+1)_k (2β+1)_{k-l} (n-l+β+1)_l (n-k)!
/// ----------------------------------------------------------------------
/// 2^{2k} (k+α) (½(k-l)+β) (β+1)_k (k+α+1)_{n-k+l} (β+½)_{k-l}
/// ```
pub fn addition_coeff_a(alpha: f64, beta: f64, n: usize, k: usize, l: usize) -> Result<f64> {
    if !(l <= k && k <= n) {
        return Err(Error::Index(format!("need l <= k <= n, got ({n}, {k}, {l})")));
    }
    let (nf, kf, lf) = (n as f64, k as f64, l as f64);
    let pole = |what: &str| Error::Pole(format!("{what} vanishes at alpha={alpha}, beta={beta}, (n,k,l)=({n},{k},{l})"));

    let mut den = LogProduct::new();
    for (value, name) in [(kf + alpha, "k+alpha"), (0.5 * (kf - lf) + beta, "(k-l)/2+beta")] {
        if value.abs() < POLE_TOLERANCE {
            return Err(pole(name));
        }
        den.mul(value);
    }
    for (a, len, name) in [
        (beta + 1.0, k, "(beta+1)_k"),
        (kf + alpha + 1.0, n - k + l, "(k+alpha+1)_{n-k+l}"),
        (beta + 0.5, k - l, "(beta+1/2)_{k-l}"),
    ] {
        den.mul_pochhammer(a, len);
        if den.sign == 0.0 {
            return Err(pole(name));
        }
    }
    den.log += 2.0 * kf * std::f64::consts::LN_2;

    let mut num = LogProduct::new();
    let linear = [kf + lf + alpha, kf - lf + beta];
    if linear.contains(&0.0) {
        return Ok(0.0);
    }
    linear.iter().for_each(|v| num.mul(*v));
    num.mul_pochhammer(nf + alpha + beta + 1.0, k);
    num.mul_pochhammer(2.0 * beta + 1.0, k - l);
    num.mul_pochhammer(nf - lf + beta + 1.0, l);
    if num.sign == 0.0 {
        return Ok(0.0);
    }
    num.log += ln_factorial(n - k);

    Ok(num.sign * den.sign * (num.log - den.log).exp())
}

/// `|LHS - RHS|` of the addition formula at one sample.
pub fn addition_formula_residual(alpha: f64, beta: f64, n: usize, sample: AdditionSample) -> Result<f64> {
    let base = JacobiParams::new(alpha, beta)?;
    let lhs = eval_unchecked(base, n, sample.argument().clamp(-1.0, 1.0));
    let AdditionSample { xi, eta, r, psi } = sample;
    let angular = JacobiParams::new(beta - 0.5, beta - 0.5)?;
    let mut rhs = 0.0;
    for k in 0..=n {
        for l in 0..=k {
            let (kf, lf) = (k as f64, l as f64);
            let outer = JacobiParams::new(alpha + kf + lf, beta + kf - lf)?;
            let radial = JacobiParams::new(alpha - beta - 1.0, beta + kf - lf)?;
            let side = |s: f64| {
                (1.0 - s).powf(0.5 * (kf + lf)) * (1.0 + s).powf(0.5 * (kf - lf)) * eval_unchecked(outer, n - k, s)
            };
            let term = side(xi)
                * side(eta)
                * eval_unchecked(radial, l, 2.0 * r * r - 1.0)
                * r.powi((k - l) as i32)
                * eval_unchecked(angular, k - l, psi.cos());
            rhs += addition_coeff_a(alpha, beta, n, k, l)? * term;
        }
    }
    Ok((lhs - rhs).abs())
}
