//! Closed-form Cesàro kernels at the corner `e`.
//!
//! The partial-sum kernel of the biangle at `e` is a single integral of a
//! univariate Jacobi projection kernel for the parameters `(α+β+1/2, β)`:
//!
//! `𝒦_n(x, e) = (P_n(1) / h_n) ∫ P_n(z(x; t)) w(t) dt`,
//!
//! and averaging with the weights `A_{n-k}^{δ-1} / A_n^δ` gives
//!
//! `K_n^δ(x) = (A_n^{δ-1} / A_n^δ) ∫ k_n^{δ-1}(z(x; t)) w(t) dt`
//!
//! where `k_n^{δ-1}` is the univariate `(C, δ-1)` kernel. The `t`-integrand
//! is a polynomial of degree `2n` against the rule's own weight, so an
//! `n + 1` node Gauss rule is already exact.

use rayon::prelude::*;

use crate::biangle::{BiangleParams, BianglePoint};
use crate::cesaro::CesaroOrder;
use crate::error::{Error, Result};
use crate::jacobi::{jacobi_at_one, jacobi_norms, JacobiParams, JacobiRecurrence};
use crate::quadrature::{biangle_rule, gauss_jacobi, BiangleRule, QuadratureRule};

/// Default scan grid size per axis for [`kernel_min`].
pub const DEFAULT_GRID: usize = 64;

/// `z(x; t) = ½(1+t)² + (1-t²) x₁ + ½(1-t)² x₂ - 1`, clamped to `[-1, 1]`.
pub fn z_arg(x: BianglePoint, t: f64) -> f64 {
    z_raw(x.x1(), x.x2(), t).clamp(-1.0, 1.0)
}

#[inline]
fn z_raw(x1: f64, x2: f64, t: f64) -> f64 {
    0.5 * (1.0 + t) * (1.0 + t) + (1.0 - t * t) * x1 + 0.5 * (1.0 - t) * (1.0 - t) * x2 - 1.0
}

/// Univariate Cesàro kernel `Σ_{k≤n} w_k P_k(1) P_k(t) / h_k` for arbitrary
/// Jacobi parameters, with `w_k = A_{n-k}^δ / A_n^δ`.
pub fn cesaro_kernel_1d(jp: JacobiParams, order: CesaroOrder, n: usize, t: f64) -> f64 {
    let weights = order.projection_weights(n);
    let coeffs = reproducing_coeffs(jp, &weights);
    JacobiRecurrence::new(jp, n).series(&coeffs, t)
}

/// `k_n^δ(t)` for the reduced parameters `(α+β+1/2, β)` of `p`.
pub fn univariate_cesaro_kernel(p: BiangleParams, order: CesaroOrder, n: usize, t: f64) -> f64 {
    cesaro_kernel_1d(p.reduced_params(), order, n, t)
}

/// `weights[k] · P_k(1) / h_k`.
fn reproducing_coeffs(jp: JacobiParams, weights: &[f64]) -> Vec<f64> {
    let n = weights.len().saturating_sub(1);
    let norms = jacobi_norms(jp, n);
    weights
        .iter()
        .enumerate()
        .map(|(k, w)| w * jacobi_at_one(jp, k) / norms[k])
        .collect()
}

/// `K_n^δ` prepared for repeated evaluation.
#[derive(Debug, Clone)]
pub struct ClosedKernel {
    degree: usize,
    recurrence: JacobiRecurrence,
    coeffs: Vec<f64>,
    rule: QuadratureRule,
}

impl ClosedKernel {
    /// `m_quad` Gauss nodes in `t`; at least `n + 2` are required.
    ///
    /// `δ = 0` is accepted and gives the partial-sum kernel `𝒦_n(·, e)`.
    pub fn new(p: BiangleParams, order: CesaroOrder, n: usize, m_quad: usize) -> Result<Self> {
        if m_quad < n + 2 {
            return Err(Error::QuadratureSize {
                needed: n + 2,
                got: m_quad,
            });
        }
        let jp = p.reduced_params();
        let coeffs = reproducing_coeffs(jp, &order.partial_sum_weights(n));
        Ok(Self {
            degree: n,
            recurrence: JacobiRecurrence::new(jp, n),
            coeffs,
            rule: gauss_jacobi(jp, m_quad)?,
        })
    }

    /// Uses `n + 8` nodes in `t`.
    pub fn with_default_rule(p: BiangleParams, order: CesaroOrder, n: usize) -> Result<Self> {
        Self::new(p, order, n, default_t_nodes(n))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn eval(&self, x: BianglePoint) -> f64 {
        let (x1, x2) = (x.x1(), x.x2());
        self.rule
            .iter()
            .map(|(t, w)| w * self.recurrence.series(&self.coeffs, z_raw(x1, x2, t).clamp(-1.0, 1.0)))
            .sum()
    }
}

/// `n + 8`.
pub fn default_t_nodes(n: usize) -> usize {
    n + 8
}

/// `K_n^δ(x) = 𝒦_n^δ(x, e)` via the single-integral form.
pub fn kernel_closed(
    p: BiangleParams,
    order: CesaroOrder,
    n: usize,
    x: BianglePoint,
    m_quad: usize,
) -> Result<f64> {
    Ok(ClosedKernel::new(p, order, n, m_quad)?.eval(x))
}

/// Partial-sum kernel `𝒦_n(x, e) = (P_n(1)/h_n) ∫ P_n(z(x;t)) w(t) dt`.
pub fn kernel_closed_projection(p: BiangleParams, n: usize, x: BianglePoint, m_quad: usize) -> Result<f64> {
    let order = CesaroOrder::new(0.0)?;
    kernel_closed(p, order, n, x, m_quad)
}

/// Degree-`n` reproducing kernel `P_n(x, e)`, as a difference of
/// consecutive partial-sum kernels.
pub fn reproducing_kernel_closed(p: BiangleParams, n: usize, x: BianglePoint, m_quad: usize) -> Result<f64> {
    let upper = kernel_closed_projection(p, n, x, m_quad)?;
    if n == 0 {
        return Ok(upper);
    }
    Ok(upper - kernel_closed_projection(p, n - 1, x, m_quad)?)
}

/// `‖K_n^δ‖₁ = ∫_B |K_n^δ| W` by the given rule.
pub fn kernel_l1_norm(p: BiangleParams, order: CesaroOrder, n: usize, rule: &BiangleRule) -> Result<f64> {
    let kernel = ClosedKernel::with_default_rule(p, order, n)?;
    Ok(rule.integrate(|x| kernel.eval(x).abs()))
}

/// L¹ norm on `m` and `2m` nodes per axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct L1Estimate {
    pub coarse: f64,
    pub refined: f64,
}

impl L1Estimate {
    pub fn relative_gap(&self) -> f64 {
        (self.coarse - self.refined).abs() / self.refined.abs().max(f64::MIN_POSITIVE)
    }
}

/// [`kernel_l1_norm`] at `m` and `2m` nodes per axis.
pub fn kernel_l1_norm_checked(p: BiangleParams, order: CesaroOrder, n: usize, m: usize) -> Result<L1Estimate> {
    let coarse = kernel_l1_norm(p, order, n, &biangle_rule(p, m)?)?;
    let refined = kernel_l1_norm(p, order, n, &biangle_rule(p, 2 * m)?)?;
    Ok(L1Estimate { coarse, refined })
}

/// Scan grid: Chebyshev–Lobatto points in `u ∈ [-1,1]` and `x₂ ∈ [0,1]`
/// mapped by `(u, x₂) ↦ (u √x₂, x₂)`. Contains `e`, `(-1, 1)` and `(0, 0)`.
pub fn scan_grid(grid_size: usize) -> Result<Vec<BianglePoint>> {
    if grid_size < 2 {
        return Err(Error::InvalidParameter(format!(
            "scan grid needs at least 2 points per axis, got {grid_size}"
        )));
    }
    let last = (grid_size - 1) as f64;
    let lobatto = |i: usize| (std::f64::consts::PI * i as f64 / last).cos();
    let mut points = Vec::with_capacity(grid_size * grid_size);
    for j in 0..grid_size {
        let x2 = (0.5 * (1.0 - lobatto(j))).clamp(0.0, 1.0);
        for i in 0..grid_size {
            points.push(BianglePoint::from_polar(lobatto(i).clamp(-1.0, 1.0), x2)?);
        }
    }
    Ok(points)
}

/// Minimum of `K_n^δ` over [`scan_grid`].
pub fn kernel_min(p: BiangleParams, order: CesaroOrder, n: usize, grid_size: usize) -> Result<f64> {
    let kernel = ClosedKernel::with_default_rule(p, order, n)?;
    let grid = scan_grid(grid_size)?;
    Ok(grid
        .par_iter()
        .map(|x| kernel.eval(*x))
        .collect::<Vec<_>>()
        .into_iter()
        .fold(f64::INFINITY, f64::min))
}

/// Nodes in `t` used by [`growth_integral`] by default: the integrand has a
/// kink wherever the polynomial changes sign, so it is oversampled.
pub fn default_growth_t_nodes(n: usize) -> usize {
    3 * n + 64
}

/// `I(n) = ∫_B ∫ |P_n^{(α+β+δ+1/2, β)}(z(x;t))| w^{(α+β+1/2, β)}(t) dt W(x) dx`.
pub fn growth_integral(p: BiangleParams, delta: f64, n: usize, rule: &BiangleRule, t_nodes: usize) -> Result<f64> {
    let base = p.reduced_params();
    let shifted = JacobiParams::new(base.alpha() + delta, base.beta())?;
    let recurrence = JacobiRecurrence::new(shifted, n);
    let t_rule = gauss_jacobi(base, t_nodes)?;
    Ok(rule.integrate(|x| {
        let (x1, x2) = (x.x1(), x.x2());
        t_rule
            .iter()
            .map(|(t, w)| w * recurrence.eval(n, z_raw(x1, x2, t).clamp(-1.0, 1.0)).abs())
            .sum::<f64>()
    }))
}

/// Least-squares slope of `ln value` against `ln n`.
pub fn log_log_slope(points: &[(usize, f64)]) -> Result<f64> {
    if points.len() < 3 {
        return Err(Error::InvalidParameter(format!(
            "need at least 3 points for a slope, got {}",
            points.len()
        )));
    }
    if points.iter().any(|&(n, v)| n == 0 || v <= 0.0) {
        return Err(Error::InvalidParameter(
            "slope fit needs positive degrees and values".into(),
        ));
    }
    let xs: Vec<f64> = points.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, v)| v.ln()).collect();
    let len = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / len;
    let my = ys.iter().sum::<f64>() / len;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biangle::E_POINT;
    use approx::assert_relative_eq;

    fn params() -> BiangleParams {
        BiangleParams::new(1.0, 0.5).unwrap()
    }

    #[test]
    fn z_identities() {
        let x = BianglePoint::new(0.3, 0.5).unwrap();
        for t in [-1.0, -0.4, 0.0, 0.7, 1.0] {
            assert_relative_eq!(z_arg(E_POINT, t), 1.0, epsilon = 1e-15);
            let one_minus = (1.0 - t * t) * (1.0 - x.x1()) + 0.5 * (1.0 - t).powi(2) * (1.0 - x.x2());
            assert!((1.0 - z_arg(x, t) - one_minus).abs() < 1e-14);
            let one_plus = 0.5
                * ((1.0 + t + (1.0 - t) * x.x1()).powi(2) + (1.0 - t).powi(2) * (x.x2() - x.x1().powi(2)));
            assert!((1.0 + z_arg(x, t) - one_plus).abs() < 1e-14);
        }
    }

    #[test]
    fn trivial_degree_zero() {
        let p = params();
        let x = BianglePoint::new(-0.4, 0.3).unwrap();
        for delta in [0.2, 1.0, 3.0] {
            let order = CesaroOrder::new(delta).unwrap();
            assert_relative_eq!(univariate_cesaro_kernel(p, order, 0, 0.3), 1.0);
            assert_relative_eq!(kernel_closed(p, order, 0, x, 4).unwrap(), 1.0, max_relative = 1e-14);
            assert_eq!(kernel_min(p, order, 0, 8).unwrap(), 1.0);
        }
    }

    #[test]
    fn quadrature_size_guard() {
        let order = CesaroOrder::new(1.0).unwrap();
        let err = kernel_closed(params(), order, 10, E_POINT, 11).unwrap_err();
        assert_eq!(err, Error::QuadratureSize { needed: 12, got: 11 });
    }

    #[test]
    fn scan_grid_contains_corners() {
        let grid = scan_grid(5).unwrap();
        assert_eq!(grid.len(), 25);
        assert!(grid.contains(&E_POINT));
        assert!(grid.iter().any(|x| x.x1() == -1.0 && x.x2() == 1.0));
        assert!(grid.iter().any(|x| x.x1() == 0.0 && x.x2() == 0.0));
        assert!(scan_grid(1).is_err());
    }

    #[test]
    fn slope_fit() {
        let pts: Vec<(usize, f64)> = [8, 16, 32].iter().map(|&n| (n, 3.0 * (n as f64).powf(1.5))).collect();
        assert_relative_eq!(log_log_slope(&pts).unwrap(), 1.5, max_relative = 1e-12);
        assert!(log_log_slope(&pts[..2]).is_err());
        assert!(log_log_slope(&[(8, 1.0)]).is_err());
    }
}
