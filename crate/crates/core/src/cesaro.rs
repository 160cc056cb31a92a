//! Fourier coefficients, Cesàro `(C,δ)` means and the direct double-sum
//! summability kernel.

use rayon::prelude::*;

use crate::biangle::{basis_all, corner_table, norm_table, BiangleParams, BianglePoint, E_POINT};
use crate::error::{Error, Result};
use crate::quadrature::BiangleRule;
use crate::special::ln_gamma;

/// Coefficients `c(n, k)` for `0 ≤ k ≤ n ≤ N`, stored row by row.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangularCoeffs {
    max_degree: usize,
    values: Vec<f64>,
}

impl TriangularCoeffs {
    pub fn zeros(max_degree: usize) -> Self {
        Self {
            max_degree,
            values: vec![0.0; Self::count(max_degree)],
        }
    }

    pub fn from_fn<F: FnMut(usize, usize) -> f64>(max_degree: usize, mut f: F) -> Self {
        let mut values = Vec::with_capacity(Self::count(max_degree));
        for n in 0..=max_degree {
            for k in 0..=n {
                values.push(f(n, k));
            }
        }
        Self { max_degree, values }
    }

    /// `(N+1)(N+2)/2`.
    pub fn count(max_degree: usize) -> usize {
        (max_degree + 1) * (max_degree + 2) / 2
    }

    pub fn index(n: usize, k: usize) -> usize {
        debug_assert!(k <= n);
        n * (n + 1) / 2 + k
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, n: usize, k: usize) -> f64 {
        self.values[Self::index(n, k)]
    }

    pub fn set(&mut self, n: usize, k: usize, value: f64) {
        self.values[Self::index(n, k)] = value;
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    /// Row `n`, i.e. `c(n, 0..=n)`.
    pub fn row(&self, n: usize) -> &[f64] {
        let start = Self::index(n, 0);
        &self.values[start..start + n + 1]
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..=self.max_degree)
            .flat_map(|n| (0..=n).map(move |k| (n, k)))
            .zip(self.values.iter().copied())
            .map(|((n, k), v)| (n, k, v))
    }

    /// `self += scale * other` over the common degree range.
    pub fn add_scaled(&mut self, other: &TriangularCoeffs, scale: f64) {
        let len = self.values.len().min(other.values.len());
        for (a, b) in self.values[..len].iter_mut().zip(&other.values[..len]) {
            *a += scale * b;
        }
    }
}

/// Cesàro order `δ ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CesaroOrder(f64);

impl CesaroOrder {
    pub fn new(delta: f64) -> Result<Self> {
        if !(delta >= 0.0 && delta.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "Cesaro order must be a finite nonnegative number, got {delta}"
            )));
        }
        Ok(Self(delta))
    }

    pub fn delta(&self) -> f64 {
        self.0
    }

    /// `A_{n-k}^δ / A_n^δ` for `k = 0..=n`: the weights of the projections.
    pub fn projection_weights(&self, n: usize) -> Vec<f64> {
        cesaro_ratios(self.0, self.0, n)
    }

    /// `A_{n-k}^{δ-1} / A_n^δ` for `k = 0..=n`: the weights of the partial
    /// sums. At `δ = 0` this is the indicator of `k = n`.
    pub fn partial_sum_weights(&self, n: usize) -> Vec<f64> {
        if self.0 == 0.0 {
            let mut w = vec![0.0; n + 1];
            w[n] = 1.0;
            return w;
        }
        cesaro_ratios(self.0 - 1.0, self.0, n)
    }
}

/// `ln A_n^δ` for `δ > -1`.
fn ln_cesaro_a(delta: f64, n: usize) -> f64 {
    let nf = n as f64;
    ln_gamma(nf + delta + 1.0).0 - ln_gamma(delta + 1.0).0 - ln_gamma(nf + 1.0).0
}

/// `A_{n-k}^{top} / A_n^{bottom}` for `k = 0..=n`.
fn cesaro_ratios(top: f64, bottom: f64, n: usize) -> Vec<f64> {
    let denom = ln_cesaro_a(bottom, n);
    (0..=n).map(|k| (ln_cesaro_a(top, n - k) - denom).exp()).collect()
}

/// `A_n^δ = binom(n + δ, n) = Γ(n+δ+1) / (Γ(δ+1) n!)`, for `δ > -1`.
pub fn cesaro_a(delta: f64, n: usize) -> f64 {
    debug_assert!(delta > -1.0, "A_n^delta needs delta > -1");
    if n == 0 {
        return 1.0;
    }
    ln_cesaro_a(delta, n).exp()
}

/// Quadrature approximation of `f̂(n, k) = ∫_B f P_{n,k} W`.
///
/// Nodes are processed in fixed chunks that are reduced in order, so the
/// result is independent of the thread count.
pub fn fourier_coeffs<F>(f: F, p: BiangleParams, max_degree: usize, rule: &BiangleRule) -> TriangularCoeffs
where
    F: Fn(BianglePoint) -> f64 + Sync,
{
    const CHUNK: usize = 64;
    let nodes = rule.nodes();
    let weights = rule.weights();
    let partials: Vec<TriangularCoeffs> = nodes
        .par_chunks(CHUNK)
        .zip(weights.par_chunks(CHUNK))
        .map(|(xs, ws)| {
            let mut acc = TriangularCoeffs::zeros(max_degree);
            for (x, w) in xs.iter().zip(ws) {
                let scale = w * f(*x);
                acc.add_scaled(&basis_all(p, max_degree, *x), scale);
            }
            acc
        })
        .collect();
    let mut total = TriangularCoeffs::zeros(max_degree);
    for part in &partials {
        total.add_scaled(part, 1.0);
    }
    total
}

/// Expansion coefficients ready for repeated evaluation of Cesàro means.
#[derive(Debug, Clone)]
pub struct CesaroMeans {
    params: BiangleParams,
    // f̂(n,k) g_{n,k}
    scaled: TriangularCoeffs,
}

impl CesaroMeans {
    pub fn new(coeffs: &TriangularCoeffs, p: BiangleParams) -> Self {
        let g = norm_table(p, coeffs.max_degree());
        let scaled = TriangularCoeffs::from_fn(coeffs.max_degree(), |n, k| coeffs.get(n, k) * g.get(n, k));
        Self { params: p, scaled }
    }

    pub fn max_degree(&self) -> usize {
        self.scaled.max_degree()
    }

    /// Projections `𝒫_k f(x)` for `k = 0..=N`.
    pub fn projections(&self, x: BianglePoint) -> Vec<f64> {
        let basis = basis_all(self.params, self.max_degree(), x);
        (0..=self.max_degree())
            .map(|k| {
                self.scaled
                    .row(k)
                    .iter()
                    .zip(basis.row(k))
                    .map(|(c, b)| c * b)
                    .sum()
            })
            .collect()
    }

    /// `S_n^δ f(x)`.
    pub fn eval(&self, order: CesaroOrder, n: usize, x: BianglePoint) -> Result<f64> {
        if n > self.max_degree() {
            return Err(Error::Index(format!(
                "degree {n} exceeds the {} available coefficients rows",
                self.max_degree()
            )));
        }
        let proj = self.projections(x);
        Ok(combine(&order.projection_weights(n), &proj))
    }

    /// `S_n^δ f(x)` for every `n = 0..=N` from one basis evaluation.
    pub fn eval_all(&self, order: CesaroOrder, x: BianglePoint) -> Vec<f64> {
        let proj = self.projections(x);
        (0..=self.max_degree())
            .map(|n| combine(&order.projection_weights(n), &proj))
            .collect()
    }
}

fn combine(weights: &[f64], values: &[f64]) -> f64 {
    weights.iter().zip(values).map(|(w, v)| w * v).sum()
}

/// `S_n^δ f(x) = Σ_{k≤n} (A_{n-k}^δ / A_n^δ) 𝒫_k f(x)`.
pub fn cesaro_mean_eval(
    coeffs: &TriangularCoeffs,
    p: BiangleParams,
    order: CesaroOrder,
    n: usize,
    x: BianglePoint,
) -> Result<f64> {
    if n > coeffs.max_degree() {
        return Err(Error::Index(format!(
            "degree {n} exceeds coefficient degree {}",
            coeffs.max_degree()
        )));
    }
    let truncated = TriangularCoeffs::from_fn(n, |a, b| coeffs.get(a, b));
    CesaroMeans::new(&truncated, p).eval(order, n, x)
}

/// Direct double sum
/// `𝒦_n^δ(x, y) = Σ_{k≤n} (A_{n-k}^δ / A_n^δ) Σ_{l≤k} P_{k,l}(x) P_{k,l}(y) g_{k,l}`.
pub fn kernel_direct(p: BiangleParams, order: CesaroOrder, n: usize, x: BianglePoint, y: BianglePoint) -> f64 {
    let g = norm_table(p, n);
    let bx = basis_all(p, n, x);
    let by = if y == E_POINT { corner_table(p, n) } else { basis_all(p, n, y) };
    let weights = order.projection_weights(n);
    (0..=n)
        .map(|k| {
            let inner: f64 = (0..=k).map(|l| bx.get(k, l) * by.get(k, l) * g.get(k, l)).sum();
            weights[k] * inner
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biangle::basis_eval;
    use crate::quadrature::biangle_rule;
    use approx::assert_relative_eq;

    fn params() -> BiangleParams {
        BiangleParams::new(1.0, 0.5).unwrap()
    }

    #[test]
    fn triangular_layout() {
        let t = TriangularCoeffs::from_fn(3, |n, k| (10 * n + k) as f64);
        assert_eq!(t.len(), 10);
        assert_eq!(t.get(2, 1), 21.0);
        assert_eq!(t.row(3), &[30.0, 31.0, 32.0, 33.0]);
        assert_eq!(t.iter().nth(4), Some((2, 1, 21.0)));
    }

    #[test]
    fn cesaro_numbers() {
        assert_eq!(cesaro_a(0.0, 7), 1.0);
        assert_eq!(cesaro_a(2.3, 0), 1.0);
        assert_relative_eq!(cesaro_a(1.0, 2), 3.0, max_relative = 1e-14);
        assert_relative_eq!(cesaro_a(2.0, 3), 10.0, max_relative = 1e-13);
    }

    #[test]
    fn order_validation() {
        assert!(CesaroOrder::new(-0.1).is_err());
        assert!(CesaroOrder::new(f64::INFINITY).is_err());
        let zero = CesaroOrder::new(0.0).unwrap();
        assert_eq!(zero.partial_sum_weights(3), vec![0.0, 0.0, 0.0, 1.0]);
        assert_eq!(zero.projection_weights(2), vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn partial_sum_weights_sum_to_one() {
        for delta in [0.3, 1.0, 2.75] {
            let order = CesaroOrder::new(delta).unwrap();
            for n in [0, 1, 5, 60, 200] {
                let s: f64 = order.partial_sum_weights(n).iter().sum();
                assert!((s - 1.0).abs() < 1e-12, "delta={delta} n={n} sum={s}");
            }
        }
    }

    #[test]
    fn coefficients_of_constant_and_basis() {
        let p = params();
        let rule = biangle_rule(p, 12).unwrap();
        let c = fourier_coeffs(|_| 1.0, p, 5, &rule);
        for (n, k, v) in c.iter() {
            let expected = if n == 0 { 1.0 } else { 0.0 };
            assert!((v - expected).abs() < 1e-10, "({n},{k}) {v}");
        }
        let c = fourier_coeffs(|x| basis_eval(p, 2, 1, x).unwrap(), p, 5, &rule);
        let g21 = crate::biangle::basis_norm_g(p, 2, 1).unwrap();
        for (n, k, v) in c.iter() {
            let expected = if (n, k) == (2, 1) { 1.0 / g21 } else { 0.0 };
            assert!((v - expected).abs() < 1e-9, "({n},{k}) {v}");
        }
    }

    #[test]
    fn mean_two_term_example() {
        let p = params();
        let rule = biangle_rule(p, 8).unwrap();
        let c = fourier_coeffs(|x| basis_eval(p, 1, 0, x).unwrap(), p, 1, &rule);
        let x = BianglePoint::new(0.2, 0.6).unwrap();
        let order = CesaroOrder::new(2.0).unwrap();
        let v = cesaro_mean_eval(&c, p, order, 1, x).unwrap();
        // A_0^2 / A_1^2 = 1/3
        let expected = basis_eval(p, 1, 0, x).unwrap() / 3.0;
        assert!((v - expected).abs() < 1e-12);
        assert!(cesaro_mean_eval(&c, p, order, 2, x).is_err());
    }

    #[test]
    fn direct_kernel_trivial_degree() {
        let p = params();
        let x = BianglePoint::new(0.3, 0.4).unwrap();
        let y = BianglePoint::new(-0.1, 0.9).unwrap();
        for delta in [0.0, 0.5, 3.0] {
            let order = CesaroOrder::new(delta).unwrap();
            assert_relative_eq!(kernel_direct(p, order, 0, x, y), 1.0);
        }
    }
}
