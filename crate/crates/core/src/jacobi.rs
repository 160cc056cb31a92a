//! Univariate Jacobi polynomials `P_n^{(α,β)}` on `[-1, 1]`.
//!
//! Evaluation goes through the three-term recurrence in the degree. The
//! weight [`jacobi_weight`] is normalized to be a probability density, so
//! `h_0 = 1` and every Gauss rule built on it has unit mass.

use crate::error::{Error, Result};
use crate::special::{ln_gamma, pochhammer};

/// Inputs within this distance outside `[-1, 1]` are clamped onto the interval.
pub const CLAMP_TOLERANCE: f64 = 1e-12;

/// Largest degree accepted by the checked evaluators.
pub const MAX_DEGREE: usize = 1_000_000;

/// Parameter pair `(α, β)` of the Jacobi weight `(1-t)^α (1+t)^β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    alpha: f64,
    beta: f64,
}

impl JacobiParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > -1.0 && beta > -1.0) {
            return Err(Error::InvalidParameter(format!(
                "Jacobi parameters must exceed -1, got ({alpha}, {beta})"
            )));
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Parameters with `α` and `β` exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            alpha: self.beta,
            beta: self.alpha,
        }
    }

    /// Coefficients `(a, b, c)` of `P_n = (a t + b) P_{n-1} - c P_{n-2}`.
    ///
    /// Valid for `n >= 1`; for `n = 1` the `c` term is zero.
    pub fn recurrence(&self, n: usize) -> (f64, f64, f64) {
        let (a, b) = (self.alpha, self.beta);
        if n == 1 {
            return (0.5 * (a + b + 2.0), 0.5 * (a - b), 0.0);
        }
        let nf = n as f64;
        let s = 2.0 * nf + a + b;
        let denom = 2.0 * nf * (nf + a + b) * (s - 2.0);
        let lead = (s - 1.0) * s * (s - 2.0) / denom;
        let shift = (s - 1.0) * (a * a - b * b) / denom;
        let back = 2.0 * (nf + a - 1.0) * (nf + b - 1.0) * s / denom;
        (lead, shift, back)
    }

    /// Diagonal entry `n` and the off-diagonal entry linking `n-1` and `n` of
    /// the symmetric Jacobi matrix of the orthonormal polynomials.
    ///
    /// The off-diagonal entry is zero for `n = 0`.
    pub fn jacobi_matrix_entries(&self, n: usize) -> (f64, f64) {
        let (a, b) = (self.alpha, self.beta);
        let nf = n as f64;
        let s = 2.0 * nf + a + b;
        let diag = if n == 0 {
            (b - a) / (a + b + 2.0)
        } else {
            (b * b - a * a) / (s * (s + 2.0))
        };
        let off = match n {
            0 => 0.0,
            1 => (4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b).powi(2) * (3.0 + a + b))).sqrt(),
            _ => (4.0 * nf * (nf + a) * (nf + b) * (nf + a + b)
                / (s * s * (s + 1.0) * (s - 1.0)))
                .sqrt(),
        };
        (diag, off)
    }
}

/// Precomputed recurrence coefficients up to a fixed degree.
///
/// Used wherever many evaluations share one parameter pair, e.g. kernel
/// scans over thousands of points.
#[derive(Debug, Clone)]
pub struct JacobiRecurrence {
    params: JacobiParams,
    coeffs: Vec<(f64, f64, f64)>,
}

impl JacobiRecurrence {
    pub fn new(params: JacobiParams, max_degree: usize) -> Self {
        let coeffs = (1..=max_degree).map(|n| params.recurrence(n)).collect();
        Self { params, coeffs }
    }

    pub fn params(&self) -> JacobiParams {
        self.params
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.len()
    }

    /// `P_n(t)` for `n <= max_degree`; no domain check.
    pub fn eval(&self, n: usize, t: f64) -> f64 {
        assert!(n <= self.coeffs.len(), "degree {n} beyond precomputed range");
        let mut prev = 0.0;
        let mut cur = 1.0;
        for &(a, b, c) in &self.coeffs[..n] {
            let next = (a * t + b) * cur - c * prev;
            prev = cur;
            cur = next;
        }
        cur
    }

    /// Writes `P_0(t), ..., P_{out.len()-1}(t)` into `out`.
    pub fn eval_all(&self, t: f64, out: &mut [f64]) {
        if out.is_empty() {
            return;
        }
        assert!(out.len() <= self.coeffs.len() + 1);
        out[0] = 1.0;
        let mut prev = 0.0;
        for n in 1..out.len() {
            let (a, b, c) = self.coeffs[n - 1];
            let next = (a * t + b) * out[n - 1] - c * prev;
            prev = out[n - 1];
            out[n] = next;
        }
    }

    /// `Σ_k weights[k] P_k(t)`.
    pub fn series(&self, weights: &[f64], t: f64) -> f64 {
        let Some((&first, rest)) = weights.split_first() else {
            return 0.0;
        };
        assert!(rest.len() <= self.coeffs.len());
        let mut sum = first;
        let mut prev = 0.0;
        let mut cur = 1.0;
        for (&w, &(a, b, c)) in rest.iter().zip(&self.coeffs) {
            let next = (a * t + b) * cur - c * prev;
            prev = cur;
            cur = next;
            sum += w * cur;
        }
        sum
    }
}

/// Maps `t` onto `[-1, 1]`, tolerating [`CLAMP_TOLERANCE`] of overshoot.
pub fn clamp_unit(t: f64) -> Result<f64> {
    if t.is_nan() || t.abs() > 1.0 + CLAMP_TOLERANCE {
        return Err(Error::Domain {
            value: t,
            domain: "[-1, 1]",
        });
    }
    Ok(t.clamp(-1.0, 1.0))
}

/// `P_n^{(α,β)}(t)` by the three-term recurrence.
pub fn jacobi_eval(p: JacobiParams, n: usize, t: f64) -> Result<f64> {
    if n > MAX_DEGREE {
        return Err(Error::Index(format!("degree {n} exceeds {MAX_DEGREE}")));
    }
    let t = clamp_unit(t)?;
    Ok(eval_unchecked(p, n, t))
}

/// Recurrence evaluation without domain or degree checks. The polynomial is
/// well defined for every real `t`.
pub fn eval_unchecked(p: JacobiParams, n: usize, t: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = 1.0;
    for k in 1..=n {
        let (a, b, c) = p.recurrence(k);
        let next = (a * t + b) * cur - c * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `P_n^{(α,β)}(1) = (α+1)_n / n!`.
pub fn jacobi_at_one(p: JacobiParams, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, j| acc * (p.alpha + 1.0 + j as f64) / (j as f64 + 1.0))
}

/// Log of the normalizing constant `Γ(α+β+2) / (2^{α+β+1} Γ(α+1) Γ(β+1))`.
fn ln_weight_constant(p: JacobiParams) -> f64 {
    let (a, b) = (p.alpha, p.beta);
    ln_gamma(a + b + 2.0).0
        - (a + b + 1.0) * std::f64::consts::LN_2
        - ln_gamma(a + 1.0).0
        - ln_gamma(b + 1.0).0
}

/// Normalized Jacobi density on `[-1, 1]`.
pub fn jacobi_weight(p: JacobiParams, t: f64) -> Result<f64> {
    let t = clamp_unit(t)?;
    if (t == 1.0 && p.alpha < 0.0) || (t == -1.0 && p.beta < 0.0) {
        return Err(Error::Domain {
            value: t,
            domain: "(-1, 1) for a negative endpoint exponent",
        });
    }
    let c = ln_weight_constant(p).exp();
    Ok(c * (1.0 - t).powf(p.alpha) * (1.0 + t).powf(p.beta))
}

/// `h_n = ∫ [P_n^{(α,β)}]^2 w^{(α,β)} dt` for the normalized weight:
///
/// `h_n = (α+1)_n (β+1)_n / (n! (α+β+2)_{n-1} (2n+α+β+1))`, `h_0 = 1`.
///
/// Written with `(α+β+2)_{n-1}` so the Chebyshev-type case `α+β = -1`
/// needs no limit.
pub fn jacobi_norm_h(p: JacobiParams, n: usize) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let (a, b) = (p.alpha, p.beta);
    let mut h = 1.0;
    for j in 0..n {
        let jf = j as f64;
        h *= (a + 1.0 + jf) * (b + 1.0 + jf) / (jf + 1.0);
        if j + 1 < n {
            h /= a + b + 2.0 + jf;
        }
    }
    h / (2.0 * n as f64 + a + b + 1.0)
}

/// `h_0, ..., h_max` by the ratio `h_n / h_{n-1}`.
pub fn jacobi_norms(p: JacobiParams, max_degree: usize) -> Vec<f64> {
    let (a, b) = (p.alpha, p.beta);
    let mut out = Vec::with_capacity(max_degree + 1);
    out.push(1.0);
    for n in 1..=max_degree {
        let nf = n as f64;
        let prev = out[n - 1];
        let ratio = if n == 1 {
            (a + 1.0) * (b + 1.0) / (a + b + 3.0)
        } else {
            (a + nf) * (b + nf) * (2.0 * nf + a + b - 1.0)
                / (nf * (a + b + nf) * (2.0 * nf + a + b + 1.0))
        };
        out.push(prev * ratio);
    }
    out
}

/// Explicit hypergeometric sum; kept for cross-checks at small degree.
pub fn jacobi_hypergeometric(p: JacobiParams, n: usize, t: f64) -> f64 {
    let (a, b) = (p.alpha, p.beta);
    let x = 0.5 * (1.0 - t);
    let mut term = 1.0;
    let mut sum = 1.0;
    let nf = n as f64;
    for j in 0..n {
        let jf = j as f64;
        term *= (-nf + jf) * (nf + a + b + 1.0 + jf) / ((a + 1.0 + jf) * (jf + 1.0)) * x;
        sum += term;
    }
    pochhammer(a + 1.0, n) / pochhammer(1.0, n) * sum
}
