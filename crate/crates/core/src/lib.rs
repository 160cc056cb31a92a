//! Orthogonal expansions on the parabolic biangle
//! `B = {(x₁, x₂) : x₁² ≤ x₂ ≤ 1}`.
//!
//! The crate evaluates the bivariate Jacobi basis `P_{n,k}^{α,β}`, builds
//! Gauss rules for the biangle weight, forms Cesàro `(C, δ)` means and their
//! kernels, and implements the product formula with the translation and
//! convolution it induces. The `biangle` binary runs the numerical
//! experiments and writes CSV or JSON.

pub mod addition;
pub mod biangle;
pub mod cesaro;
pub mod error;
pub mod experiments;
pub mod jacobi;
pub mod kernel;
pub mod product;
pub mod quadrature;
pub mod special;

pub use biangle::{basis_all, basis_at_e, basis_eval, basis_norm_g, weight_w, BiangleParams, BianglePoint, E_POINT};
pub use cesaro::{cesaro_mean_eval, fourier_coeffs, kernel_direct, CesaroMeans, CesaroOrder, TriangularCoeffs};
pub use error::{Error, Result};
pub use jacobi::{jacobi_eval, jacobi_norm_h, JacobiParams, JacobiRecurrence};
pub use kernel::{kernel_closed, kernel_l1_norm, kernel_min, ClosedKernel};
pub use product::{convolve, mu_rule, product_formula_residual, translate, ProductMeasureRule};
pub use quadrature::{biangle_rule, gauss_jacobi, BiangleRule, QuadratureRule};
