//! Orthogonal polynomials `P_{n,k}^{α,β}` on the parabolic biangle
//! `B = {(x₁, x₂) : x₁² ≤ x₂ ≤ 1}`.
//!
//! `P_{n,k}(x) = P_{n-k}^{(α-1/2, β+k)}(2x₂ - 1) · q_k(x₁, x₂)` where
//! `q_k(x₁, x₂) = x₂^{k/2} P_k^{(β-1/2, β-1/2)}(x₁ / √x₂)`. The factor `q_k`
//! is evaluated by the homogenized recurrence `q_k = a_k x₁ q_{k-1} - c_k x₂ q_{k-2}`,
//! a genuine polynomial in `(x₁, x₂)` that is regular at the cusp `x₂ = 0`.

use crate::cesaro::TriangularCoeffs;
use crate::error::{Error, Result};
use crate::jacobi::{jacobi_at_one, jacobi_norm_h, JacobiParams};
use crate::special::{ln_gamma, pochhammer};

/// Membership tolerance for [`BianglePoint::new`].
pub const MEMBERSHIP_TOLERANCE: f64 = 1e-12;

/// The corner `e = (1, 1)`.
pub const E_POINT: BianglePoint = BianglePoint { x1: 1.0, x2: 1.0 };

/// Parameters `(α, β)` of the biangle weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiangleParams {
    alpha: f64,
    beta: f64,
}

impl BiangleParams {
    /// Requires `α, β > -1/2` so that the weight is integrable.
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > -0.5 && beta > -0.5) {
            return Err(Error::InvalidParameter(format!(
                "biangle parameters must exceed -1/2, got ({alpha}, {beta})"
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

    pub fn basis_valid(&self) -> bool {
        self.alpha > -0.5 && self.beta > -0.5
    }

    /// `α - 1/2 ≥ β ≥ 0`, the hypothesis of the summability theorems.
    pub fn theorem_valid(&self) -> bool {
        self.alpha - 0.5 >= self.beta && self.beta >= 0.0
    }

    /// `β > 0` and `α - β > 1/2`: the product measure has an integrable density.
    pub fn product_formula_valid(&self) -> bool {
        self.beta > 0.0 && self.alpha - self.beta > 0.5
    }

    /// `α + β + 1`, the order above which the Cesàro means are bounded.
    pub fn critical_index(&self) -> f64 {
        self.alpha + self.beta + 1.0
    }

    /// `α + 2β + 3/2`, the `positivity` keyword of the command line tool.
    pub fn positivity_index(&self) -> f64 {
        self.alpha + 2.0 * self.beta + 1.5
    }

    /// `α + 2β + 7/2`: the univariate `(C, μ+ν+2)` positivity for
    /// `(μ, ν) = (α+β+1/2, β)` applied to the `(C, δ-1)` means in the
    /// closed-form kernel.
    pub fn univariate_positivity_index(&self) -> f64 {
        self.alpha + 2.0 * self.beta + 3.5
    }

    /// Parameters `(α + β + 1/2, β)` of the univariate system behind the
    /// closed-form kernel.
    pub fn reduced_params(&self) -> JacobiParams {
        JacobiParams::new(self.alpha + self.beta + 0.5, self.beta)
            .expect("basis-valid parameters give a valid reduced pair")
    }

    /// Jacobi parameters of the `x₂` factor of `P_{n,k}`.
    pub fn radial_params(&self, k: usize) -> JacobiParams {
        JacobiParams::new(self.alpha - 0.5, self.beta + k as f64)
            .expect("basis-valid parameters give a valid radial pair")
    }

    /// Symmetric Jacobi parameters of the `x₁` factor of `P_{n,k}`.
    pub fn angular_params(&self) -> JacobiParams {
        JacobiParams::new(self.beta - 0.5, self.beta - 0.5)
            .expect("basis-valid parameters give a valid angular pair")
    }
}

/// A point of the biangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BianglePoint {
    x1: f64,
    x2: f64,
}

impl BianglePoint {
    /// Validates membership; violations up to [`MEMBERSHIP_TOLERANCE`] are
    /// projected onto the boundary.
    pub fn new(x1: f64, x2: f64) -> Result<Self> {
        let tol = MEMBERSHIP_TOLERANCE;
        if !(x1.is_finite() && x2.is_finite()) || x2 > 1.0 + tol || x2 < -tol || x1 * x1 > x2 + tol
        {
            return Err(Error::Domain {
                value: x1,
                domain: "biangle x1^2 <= x2 <= 1",
            });
        }
        let x2 = x2.clamp(0.0, 1.0);
        let x1 = if x1 * x1 > x2 { x2.sqrt().copysign(x1) } else { x1 };
        Ok(Self { x1, x2 })
    }

    /// Point from coordinates already known to lie in the biangle.
    pub(crate) fn from_parts(x1: f64, x2: f64) -> Self {
        debug_assert!(x1 * x1 <= x2 * (1.0 + 1e-14) + 1e-300 && x2 <= 1.0);
        Self { x1, x2 }
    }

    /// The point `(u √x₂, x₂)` for `u ∈ [-1, 1]`, `x₂ ∈ [0, 1]`.
    pub fn from_polar(u: f64, x2: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&u) || !(0.0..=1.0).contains(&x2) {
            return Err(Error::Domain {
                value: u,
                domain: "u in [-1, 1], x2 in [0, 1]",
            });
        }
        Ok(Self::from_parts((u * x2.sqrt()).clamp(-x2.sqrt(), x2.sqrt()), x2))
    }

    pub fn x1(&self) -> f64 {
        self.x1
    }

    pub fn x2(&self) -> f64 {
        self.x2
    }
}

/// Normalized biangle density
/// `Γ(α+β+3/2) / (Γ(1/2) Γ(α+1/2) Γ(β+1/2)) (1-x₂)^{α-1/2} (x₂-x₁²)^{β-1/2}`.
pub fn weight_w(p: BiangleParams, x: BianglePoint) -> Result<f64> {
    let (a, b) = (p.alpha, p.beta);
    let edge = 1.0 - x.x2;
    let gap = x.x2 - x.x1 * x.x1;
    if (edge <= 0.0 && a < 0.5) || (gap <= 0.0 && b < 0.5) {
        return Err(Error::Domain {
            value: x.x2,
            domain: "biangle interior (negative weight exponent)",
        });
    }
    let ln_c = ln_gamma(a + b + 1.5).0 - ln_gamma(0.5).0 - ln_gamma(a + 0.5).0 - ln_gamma(b + 0.5).0;
    Ok(ln_c.exp() * edge.max(0.0).powf(a - 0.5) * gap.max(0.0).powf(b - 0.5))
}

/// `q_0(x), ..., q_{out.len()-1}(x)` by the homogenized recurrence.
pub fn homogeneous_factors(p: BiangleParams, x1: f64, x2: f64, out: &mut [f64]) {
    let sym = p.angular_params();
    if out.is_empty() {
        return;
    }
    out[0] = 1.0;
    for k in 1..out.len() {
        // the symmetric recurrence has no constant term
        let (a, _, c) = sym.recurrence(k);
        let back = if k >= 2 { out[k - 2] } else { 0.0 };
        out[k] = a * x1 * out[k - 1] - c * x2 * back;
    }
}

/// `P_{n,k}^{α,β}(x)`.
pub fn basis_eval(p: BiangleParams, n: usize, k: usize, x: BianglePoint) -> Result<f64> {
    if k > n {
        return Err(Error::Index(format!("k = {k} exceeds n = {n}")));
    }
    Ok(basis_eval_raw(p, n, k, x.x1, x.x2))
}

/// The polynomial `P_{n,k}` at arbitrary real `(x₁, x₂)`, no membership check.
pub fn basis_eval_raw(p: BiangleParams, n: usize, k: usize, x1: f64, x2: f64) -> f64 {
    let mut q = vec![0.0; k + 1];
    homogeneous_factors(p, x1, x2, &mut q);
    let radial = crate::jacobi::eval_unchecked(p.radial_params(k), n - k, 2.0 * x2 - 1.0);
    radial * q[k]
}

/// `P_{n,k}(e) = (α+1/2)_{n-k} (β+1/2)_k / ((n-k)! k!)`.
pub fn basis_at_e(p: BiangleParams, n: usize, k: usize) -> f64 {
    jacobi_at_one(p.radial_params(k), n - k) * jacobi_at_one(p.angular_params(), k)
}

/// `g_{n,k}`, the reciprocal of `∫_B P_{n,k}² W`.
///
/// The `x₂` factor is orthogonal for `(1-x₂)^{α-1/2} x₂^{β+k}`, whose
/// normalization differs from the `k = 0` one by `(β+1)_k / (α+β+3/2)_k`;
/// that ratio multiplies the product of the univariate norms.
pub fn basis_norm_g(p: BiangleParams, n: usize, k: usize) -> Result<f64> {
    if k > n {
        return Err(Error::Index(format!("k = {k} exceeds n = {n}")));
    }
    let mass_ratio = pochhammer(p.beta + 1.0, k) / pochhammer(p.alpha + p.beta + 1.5, k);
    let inv = jacobi_norm_h(p.radial_params(k), n - k) * jacobi_norm_h(p.angular_params(), k) * mass_ratio;
    Ok(1.0 / inv)
}

/// `g_{n,k}` for all `0 ≤ k ≤ n ≤ max_degree`.
pub fn norm_table(p: BiangleParams, max_degree: usize) -> TriangularCoeffs {
    TriangularCoeffs::from_fn(max_degree, |n, k| {
        basis_norm_g(p, n, k).expect("k <= n by construction")
    })
}

/// `P_{n,k}(e)` for all `0 ≤ k ≤ n ≤ max_degree`.
pub fn corner_table(p: BiangleParams, max_degree: usize) -> TriangularCoeffs {
    TriangularCoeffs::from_fn(max_degree, |n, k| basis_at_e(p, n, k))
}

/// Every `P_{n,k}(x)` with `n ≤ max_degree`, in `O(max_degree²)` work.
pub fn basis_all(p: BiangleParams, max_degree: usize, x: BianglePoint) -> TriangularCoeffs {
    basis_all_raw(p, max_degree, x.x1, x.x2)
}

pub(crate) fn basis_all_raw(p: BiangleParams, max_degree: usize, x1: f64, x2: f64) -> TriangularCoeffs {
    let mut out = TriangularCoeffs::zeros(max_degree);
    let mut q = vec![0.0; max_degree + 1];
    homogeneous_factors(p, x1, x2, &mut q);
    let s = 2.0 * x2 - 1.0;
    for (k, &qk) in q.iter().enumerate() {
        let radial = p.radial_params(k);
        let (mut prev, mut cur) = (0.0, 1.0);
        out.set(k, k, qk);
        for j in 1..=max_degree - k {
            let (a, b, c) = radial.recurrence(j);
            let next = (a * s + b) * cur - c * prev;
            prev = cur;
            cur = next;
            out.set(k + j, k, cur * qk);
        }
    }
    out
}
