//! Product formula on the biangle: the maps `D`, `E`, `F`, the measure `dμ`
//! as a tensor quadrature rule, generalized translation and convolution.
//!
//! The formula is stated for `x = (x₁, x₂)` with `|x₁| ≤ x₂`, with the basis
//! evaluated at `(x₁, x₂²)`. Those are called theorem coordinates below;
//! [`translate`] and [`convolve`] take ordinary biangle points and convert.

use rayon::prelude::*;

use crate::biangle::{basis_all_raw, basis_at_e, basis_eval_raw, BiangleParams, BianglePoint};
use crate::cesaro::TriangularCoeffs;
use crate::error::{Error, Result};
use crate::jacobi::JacobiParams;
use crate::quadrature::{gauss_jacobi, BiangleRule};

/// `E` below this value makes `F` undefined.
pub const DEGENERATE_E: f64 = 1e-14;

/// Smallest second coordinate accepted by [`translate`].
pub const CUSP_EPSILON: f64 = 1e-8;

const RADICAND_TOLERANCE: f64 = 1e-14;

/// `D(a, b; r, ψ) = ab + √(1-a²) √(1-b²) r cos ψ`.
pub fn map_d(a: f64, b: f64, r: f64, psi: f64) -> f64 {
    d_cos(a, b, r, psi.cos())
}

fn d_cos(a: f64, b: f64, r: f64, c: f64) -> f64 {
    let v = a * b + (1.0 - a * a).max(0.0).sqrt() * (1.0 - b * b).max(0.0).sqrt() * r * c;
    v.clamp(-1.0, 1.0)
}

/// `E(a, b; r, ψ)`, the root of
/// `a²b² + (1-a²)(1-b²) r² + 2ab √(1-a²) √(1-b²) r cos ψ`.
pub fn map_e(a: f64, b: f64, r: f64, psi: f64) -> Result<f64> {
    e_cos(a, b, r, psi.cos())
}

fn e_cos(a: f64, b: f64, r: f64, c: f64) -> Result<f64> {
    let sa = (1.0 - a * a).max(0.0).sqrt();
    let sb = (1.0 - b * b).max(0.0).sqrt();
    let q = a * a * b * b + sa * sa * sb * sb * r * r + 2.0 * a * b * sa * sb * r * c;
    if q < -RADICAND_TOLERANCE {
        return Err(Error::Degenerate(format!("negative radicand {q} in E")));
    }
    Ok(q.max(0.0).sqrt().min(1.0))
}

/// `F(x, y; r, ψ₁, ψ₂, ψ₃)` for theorem-coordinate pairs `x = (x₁, x₂)`,
/// `y = (y₁, y₂)`.
pub fn map_f(x: (f64, f64), y: (f64, f64), r: f64, psi1: f64, psi2: f64, psi3: f64) -> Result<f64> {
    image_cos(x, y, r, psi1.cos(), psi2.cos(), psi3.cos()).map(|(_, f)| f)
}

/// `(E, F)` with the angles given by their cosines.
fn image_cos(x: (f64, f64), y: (f64, f64), r: f64, c1: f64, c2: f64, c3: f64) -> Result<(f64, f64)> {
    if x.1 <= 0.0 || y.1 <= 0.0 {
        return Err(Error::Degenerate("F needs x2 > 0 and y2 > 0".into()));
    }
    let e = e_cos(x.1, y.1, r, c1)?;
    if e <= DEGENERATE_E {
        return Err(Error::Degenerate(format!("E = {e} at r = {r}")));
    }
    let d = d_cos(x.1, y.1, r, c1);
    let inner = d_cos((x.0 / x.1).clamp(-1.0, 1.0), (y.0 / y.1).clamp(-1.0, 1.0), 1.0, c2);
    let f = e * d_cos((d / e).clamp(-1.0, 1.0), inner, 1.0, c3);
    Ok((e, f))
}

/// Radial exponent used for `dμ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RadialDensity {
    /// `r^{2β+1}`, i.e. weight `s^β` in `s = r²`; reproduces the product formula.
    #[default]
    Certified,
    /// `r^{2β}`, i.e. weight `s^{β-1/2}`.
    AsPrinted,
}

/// Which coordinate of the integrand receives `F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IntegrandOrder {
    /// `P_{n,k}(F, E²)`.
    #[default]
    FirstCoordinateF,
    /// `P_{n,k}(E², F)`.
    AsPrinted,
}

/// One node of the four-dimensional rule, with cached cosines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureNode {
    pub r: f64,
    pub psi: [f64; 3],
    cos: [f64; 3],
}

impl MeasureNode {
    fn from_cosines(r: f64, cos: [f64; 3]) -> Self {
        Self { r, psi: cos.map(f64::acos), cos }
    }

    pub fn cosines(&self) -> [f64; 3] {
        self.cos
    }
}

/// Tensor Gauss rule for the probability measure `dμ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductMeasureRule {
    params: BiangleParams,
    nodes: Vec<MeasureNode>,
    weights: Vec<f64>,
    order: IntegrandOrder,
}

impl ProductMeasureRule {
    pub fn params(&self) -> BiangleParams {
        self.params
    }

    pub fn nodes(&self) -> &[MeasureNode] {
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

    pub fn order(&self) -> IntegrandOrder {
        self.order
    }

    pub fn with_order(mut self, order: IntegrandOrder) -> Self {
        self.order = order;
        self
    }

    /// `Σ_i w_i g(node_i)`, ordered sum.
    pub fn integrate<G>(&self, g: G) -> Result<f64>
    where
        G: Fn(&MeasureNode) -> Result<f64> + Sync,
    {
        let terms: Vec<f64> = self
            .nodes
            .par_iter()
            .zip(self.weights.par_iter())
            .map(|(node, w)| g(node).map(|v| w * v))
            .collect::<Result<_>>()?;
        Ok(terms.iter().sum())
    }

    /// Integrand arguments `(z₁, z₂)` for the point pair at `node`.
    fn argument(&self, x: (f64, f64), y: (f64, f64), node: &MeasureNode) -> Result<(f64, f64)> {
        let [c1, c2, c3] = node.cos;
        let (e, f) = image_cos(x, y, node.r, c1, c2, c3)?;
        Ok(match self.order {
            IntegrandOrder::FirstCoordinateF => (f, e * e),
            IntegrandOrder::AsPrinted => (e * e, f),
        })
    }
}

/// `m⁴`-node rule for `dμ` with the certified radial density.
pub fn mu_rule(p: BiangleParams, m: usize) -> Result<ProductMeasureRule> {
    mu_rule_with(p, m, RadialDensity::Certified)
}

/// `m⁴`-node rule for `dμ`: Gauss–Jacobi in `s = r²` and in each `cos ψᵢ`,
/// renormalized to unit mass.
pub fn mu_rule_with(p: BiangleParams, m: usize, density: RadialDensity) -> Result<ProductMeasureRule> {
    if !p.product_formula_valid() {
        return Err(Error::InvalidParameter(format!(
            "product formula needs beta > 0 and alpha - beta > 1/2, got ({}, {})",
            p.alpha(),
            p.beta()
        )));
    }
    let (a, b) = (p.alpha(), p.beta());
    let s_beta = match density {
        RadialDensity::Certified => b,
        RadialDensity::AsPrinted => b - 0.5,
    };
    let radial = gauss_jacobi(JacobiParams::new(a - b - 1.5, s_beta)?, m)?;
    let first = gauss_jacobi(JacobiParams::new(b - 0.5, b - 0.5)?, m)?;
    let other = gauss_jacobi(JacobiParams::new(b - 1.0, b - 1.0)?, m)?;

    let mut nodes = Vec::with_capacity(m.pow(4));
    let mut weights = Vec::with_capacity(m.pow(4));
    for (t, wr) in radial.iter() {
        let r = (0.5 * (t + 1.0)).sqrt();
        for (c1, w1) in first.iter() {
            for (c2, w2) in other.iter() {
                for (c3, w3) in other.iter() {
                    nodes.push(MeasureNode::from_cosines(r, [c1, c2, c3]));
                    weights.push(wr * w1 * w2 * w3);
                }
            }
        }
    }
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);
    Ok(ProductMeasureRule {
        params: p,
        nodes,
        weights,
        order: IntegrandOrder::default(),
    })
}

/// Two-factor rule over `(r, ψ)` for the measure `dm` used at `y = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneMeasureRule {
    pub nodes: Vec<(f64, f64)>,
    pub weights: Vec<f64>,
}

/// `dm^{α,β}` with the printed densities `(1-r²)^{α-β-1} r^{2β} sin^{2β-1}ψ`,
/// normalized numerically. Diagnostic only.
pub fn m_rule(alpha: f64, beta: f64, m: usize) -> Result<PlaneMeasureRule> {
    if !(beta > 0.0 && alpha - beta > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "dm needs beta > 0 and alpha > beta, got ({alpha}, {beta})"
        )));
    }
    let radial = gauss_jacobi(JacobiParams::new(alpha - beta - 1.0, beta - 0.5)?, m)?;
    let angle = gauss_jacobi(JacobiParams::new(beta - 1.0, beta - 1.0)?, m)?;
    let mut nodes = Vec::with_capacity(m * m);
    let mut weights = Vec::with_capacity(m * m);
    for (t, wr) in radial.iter() {
        for (c, wc) in angle.iter() {
            nodes.push(((0.5 * (t + 1.0)).sqrt(), c.acos()));
            weights.push(wr * wc);
        }
    }
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);
    Ok(PlaneMeasureRule { nodes, weights })
}

fn check_theorem_point(x: (f64, f64)) -> Result<()> {
    if !(x.0.abs() <= x.1 && x.1 <= 1.0 && x.1 > 0.0) {
        return Err(Error::Domain {
            value: x.0,
            domain: "theorem coordinates 0 <= |x1| <= x2 <= 1, x2 > 0",
        });
    }
    Ok(())
}

/// `|P(x₁,x₂²) P(y₁,y₂²) - P(e) ∫ P(z) dμ|` in theorem coordinates.
pub fn product_formula_residual(
    p: BiangleParams,
    n: usize,
    k: usize,
    x: (f64, f64),
    y: (f64, f64),
    rule: &ProductMeasureRule,
) -> Result<f64> {
    if k > n {
        return Err(Error::Index(format!("k = {k} exceeds n = {n}")));
    }
    check_theorem_point(x)?;
    check_theorem_point(y)?;
    let lhs = basis_eval_raw(p, n, k, x.0, x.1 * x.1) * basis_eval_raw(p, n, k, y.0, y.1 * y.1);
    let integral = rule.integrate(|node| {
        let (z1, z2) = rule.argument(x, y, node)?;
        Ok(basis_eval_raw(p, n, k, z1, z2))
    })?;
    Ok((lhs - basis_at_e(p, n, k) * integral).abs())
}

/// Residuals for every `k ≤ n ≤ max_degree` at one point pair, sharing the
/// images of the rule nodes.
pub fn product_formula_residuals(
    p: BiangleParams,
    max_degree: usize,
    x: (f64, f64),
    y: (f64, f64),
    rule: &ProductMeasureRule,
) -> Result<TriangularCoeffs> {
    check_theorem_point(x)?;
    check_theorem_point(y)?;
    let parts: Vec<TriangularCoeffs> = rule
        .nodes
        .par_iter()
        .zip(rule.weights.par_iter())
        .map(|(node, w)| {
            let (z1, z2) = rule.argument(x, y, node)?;
            let mut vals = basis_all_raw(p, max_degree, z1, z2);
            vals.values_mut().iter_mut().for_each(|v| *v *= w);
            Ok(vals)
        })
        .collect::<Result<_>>()?;
    let mut integral = TriangularCoeffs::zeros(max_degree);
    for part in &parts {
        integral.add_scaled(part, 1.0);
    }
    let px = basis_all_raw(p, max_degree, x.0, x.1 * x.1);
    let py = basis_all_raw(p, max_degree, y.0, y.1 * y.1);
    Ok(TriangularCoeffs::from_fn(max_degree, |n, k| {
        (px.get(n, k) * py.get(n, k) - basis_at_e(p, n, k) * integral.get(n, k)).abs()
    }))
}

fn theorem_coordinates(x: BianglePoint) -> Result<(f64, f64)> {
    if x.x2() <= CUSP_EPSILON {
        return Err(Error::Degenerate(format!(
            "translation needs x2 > {CUSP_EPSILON}, got {}",
            x.x2()
        )));
    }
    let root = x.x2().sqrt();
    Ok((x.x1().clamp(-root, root), root))
}

/// Generalized translation `T_x f(y)`: the mean of `f` over the images
/// `(F, E²)` of the rule nodes.
pub fn translate<Fun>(f: Fun, p: BiangleParams, x: BianglePoint, y: BianglePoint, rule: &ProductMeasureRule) -> Result<f64>
where
    Fun: Fn(BianglePoint) -> f64 + Sync,
{
    if rule.params != p {
        return Err(Error::InvalidParameter("measure rule built for other parameters".into()));
    }
    let (tx, ty) = (theorem_coordinates(x)?, theorem_coordinates(y)?);
    rule.integrate(|node| {
        let [c1, c2, c3] = node.cos;
        let (e, fv) = image_cos(tx, ty, node.r, c1, c2, c3)?;
        let z2 = e * e;
        let root = z2.sqrt();
        Ok(f(BianglePoint::from_parts(fv.clamp(-root, root), z2)))
    })
}

/// `(f * g)(x) = ∫_B f(y) T_x g(y) W(y) dy`.
pub fn convolve<Fa, Fb>(
    f: Fa,
    g: Fb,
    p: BiangleParams,
    x: BianglePoint,
    brule: &BiangleRule,
    prule: &ProductMeasureRule,
) -> Result<f64>
where
    Fa: Fn(BianglePoint) -> f64 + Sync,
    Fb: Fn(BianglePoint) -> f64 + Sync,
{
    brule.try_integrate(|y| Ok(f(y) * translate(&g, p, x, y, prule)?))
}
