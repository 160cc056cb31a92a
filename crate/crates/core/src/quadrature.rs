//! Gauss–Jacobi rules on `[-1, 1]` and tensor rules on the biangle.
//!
//! Nodes are the eigenvalues of the symmetric Jacobi matrix (implicit QL),
//! polished by Newton steps on the orthonormal recurrence. Weights are the
//! Christoffel numbers `1 / Σ_k p̂_k(x_i)^2`, which avoids reading them off
//! eigenvectors.

use std::io::{self, Write};

use rayon::prelude::*;

use crate::biangle::{BiangleParams, BianglePoint};
use crate::error::{Error, Result};
use crate::jacobi::JacobiParams;

/// Largest rule size accepted by [`gauss_jacobi`].
pub const MAX_NODES: usize = 10_000;

/// Nodes per axis used for `|·|` integrands such as kernel L¹ norms.
pub const L1_NODES: usize = 200;

const QL_MAX_ITER: usize = 60;

/// Nodes per axis for integrating polynomials of degree `degree`, with a
/// margin of four nodes.
pub fn nodes_for_degree(degree: usize) -> usize {
    (degree + 2).div_ceil(2) + 4
}

/// Gauss rule for the normalized Jacobi weight.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    params: JacobiParams,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn params(&self) -> JacobiParams {
        self.params
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    /// `Σ_i w_i f(x_i)`, summed in node order.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.iter().map(|(x, w)| w * f(x)).sum()
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "node,weight")?;
        for (x, w) in self.iter() {
            writeln!(out, "{x:.16e},{w:.16e}")?;
        }
        Ok(())
    }
}

/// `m`-node Gauss–Jacobi rule, exact through degree `2m - 1`.
pub fn gauss_jacobi(p: JacobiParams, m: usize) -> Result<QuadratureRule> {
    if m == 0 || m > MAX_NODES {
        return Err(Error::InvalidParameter(format!(
            "rule size must be in 1..={MAX_NODES}, got {m}"
        )));
    }
    let entries: Vec<(f64, f64)> = (0..=m).map(|n| p.jacobi_matrix_entries(n)).collect();
    let mut diag: Vec<f64> = entries[..m].iter().map(|e| e.0).collect();
    // sub[i] couples i and i+1
    let mut sub: Vec<f64> = entries[1..].iter().map(|e| e.1).collect();
    sub[m - 1] = 0.0;
    tridiagonal_eigenvalues(&mut diag, &mut sub).map_err(|iterations| Error::NoConvergence {
        iterations,
        context: format!(
            "Jacobi matrix eigenvalues, alpha={}, beta={}, m={m}",
            p.alpha(),
            p.beta()
        ),
    })?;
    diag.sort_by(f64::total_cmp);

    let mut nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    for &guess in &diag {
        let x = polish_node(&entries, m, guess);
        nodes.push(x.clamp(-1.0, 1.0));
        weights.push(christoffel_weight(&entries, m, x));
    }

    let ordered = nodes.windows(2).all(|w| w[0] < w[1]);
    let inside = nodes.iter().all(|x| x.abs() < 1.0);
    let positive = weights.iter().all(|w| *w > 0.0 && w.is_finite());
    if !(ordered && inside && positive) {
        return Err(Error::NoConvergence {
            iterations: QL_MAX_ITER,
            context: format!(
                "Gauss-Jacobi nodes not separated, alpha={}, beta={}, m={m}",
                p.alpha(),
                p.beta()
            ),
        });
    }
    Ok(QuadratureRule {
        params: p,
        nodes,
        weights,
    })
}

/// Orthonormal `p̂_m(x)` and its derivative.
fn orthonormal_with_derivative(entries: &[(f64, f64)], m: usize, x: f64) -> (f64, f64) {
    let (mut p_prev, mut p_cur) = (0.0, 1.0);
    let (mut d_prev, mut d_cur) = (0.0, 0.0);
    for k in 0..m {
        let (diag, off) = entries[k];
        let next_off = entries[k + 1].1;
        let p_next = ((x - diag) * p_cur - off * p_prev) / next_off;
        let d_next = (p_cur + (x - diag) * d_cur - off * d_prev) / next_off;
        p_prev = p_cur;
        p_cur = p_next;
        d_prev = d_cur;
        d_cur = d_next;
    }
    (p_cur, d_cur)
}

fn polish_node(entries: &[(f64, f64)], m: usize, guess: f64) -> f64 {
    let mut x = guess;
    for _ in 0..3 {
        let (value, slope) = orthonormal_with_derivative(entries, m, x);
        if slope == 0.0 || !slope.is_finite() {
            break;
        }
        let step = value / slope;
        // only accept corrections at eigenvalue-rounding scale
        if !step.is_finite() || step.abs() > 1e-8 {
            break;
        }
        x -= step;
        if step.abs() <= 4.0 * f64::EPSILON * x.abs().max(1e-3) {
            break;
        }
    }
    x
}

fn christoffel_weight(entries: &[(f64, f64)], m: usize, x: f64) -> f64 {
    let (mut p_prev, mut p_cur) = (0.0, 1.0);
    let mut sum = 1.0;
    for k in 0..m - 1 {
        let (diag, off) = entries[k];
        let p_next = ((x - diag) * p_cur - off * p_prev) / entries[k + 1].1;
        p_prev = p_cur;
        p_cur = p_next;
        sum += p_cur * p_cur;
    }
    1.0 / sum
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL; `sub` holds
/// the off-diagonal with `sub[n-1]` unused. On failure returns the iteration
/// count reached.
fn tridiagonal_eigenvalues(d: &mut [f64], e: &mut [f64]) -> std::result::Result<(), usize> {
    let n = d.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > QL_MAX_ITER {
                return Err(iter);
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Tensor rule for the biangle weight `W^{α,β}`.
///
/// With `x₁ = u √x₂` the weight factors into `(1-x₂)^{α-1/2} x₂^β` and
/// `(1-u²)^{β-1/2}`, so both axes are plain Gauss–Jacobi rules and every
/// node lies in the biangle by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct BiangleRule {
    params: BiangleParams,
    nodes: Vec<BianglePoint>,
    weights: Vec<f64>,
    degree: usize,
}

impl BiangleRule {
    pub fn params(&self) -> BiangleParams {
        self.params
    }

    pub fn nodes(&self) -> &[BianglePoint] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Guaranteed total-degree exactness.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ_i w_i f(x_i)`.
    ///
    /// Terms are evaluated in parallel but summed in node order, so the
    /// result does not depend on the thread count.
    pub fn integrate<F>(&self, f: F) -> f64
    where
        F: Fn(BianglePoint) -> f64 + Sync,
    {
        let terms: Vec<f64> = self
            .nodes
            .par_iter()
            .zip(self.weights.par_iter())
            .map(|(x, w)| w * f(*x))
            .collect();
        terms.iter().sum()
    }

    /// Like [`integrate`](Self::integrate) for fallible integrands.
    pub fn try_integrate<F>(&self, f: F) -> Result<f64>
    where
        F: Fn(BianglePoint) -> Result<f64> + Sync,
    {
        let terms: Vec<f64> = self
            .nodes
            .par_iter()
            .zip(self.weights.par_iter())
            .map(|(x, w)| f(*x).map(|v| w * v))
            .collect::<Result<_>>()?;
        Ok(terms.iter().sum())
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "x1,x2,weight")?;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            writeln!(out, "{:.16e},{:.16e},{w:.16e}", x.x1(), x.x2())?;
        }
        Ok(())
    }
}

/// `m × m` tensor rule on the biangle, exact for total degree `2m - 1`.
pub fn biangle_rule(p: BiangleParams, m: usize) -> Result<BiangleRule> {
    let outer = gauss_jacobi(JacobiParams::new(p.alpha() - 0.5, p.beta())?, m)?;
    let inner = gauss_jacobi(JacobiParams::new(p.beta() - 0.5, p.beta() - 0.5)?, m)?;
    let mut nodes = Vec::with_capacity(m * m);
    let mut weights = Vec::with_capacity(m * m);
    for (s, ws) in outer.iter() {
        let x2 = 0.5 * (s + 1.0);
        let root = x2.sqrt();
        for (u, wu) in inner.iter() {
            nodes.push(BianglePoint::from_parts(u * root, x2));
            weights.push(ws * wu);
        }
    }
    Ok(BiangleRule {
        params: p,
        nodes,
        weights,
        degree: 2 * m - 1,
    })
}
