//! Experiment drivers behind the `biangle` binary.
//!
//! Each driver returns plain rows; [`write_csv`] renders them with floats at
//! 17 significant digits.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::addition::{addition_formula_residual, AdditionSample};
use crate::biangle::{basis_all, norm_table, BiangleParams, BianglePoint, E_POINT};
use crate::cesaro::{fourier_coeffs, kernel_direct, CesaroMeans, CesaroOrder};
use crate::error::{Error, Result};
use crate::jacobi::{eval_unchecked, jacobi_norm_h, JacobiParams};
use crate::kernel::{growth_integral, kernel_l1_norm, kernel_min, log_log_slope, scan_grid, ClosedKernel, default_growth_t_nodes};
use crate::product::{mu_rule, product_formula_residuals};
use crate::quadrature::{biangle_rule, gauss_jacobi, nodes_for_degree};

/// Name of the generator used for random sample points.
pub const RNG_NAME: &str = "ChaCha8Rng";

/// Nodes per angle of the product-measure rule used by [`verify`].
pub const PRODUCT_RULE_NODES: usize = 16;

pub const CLOSED_FORM_THRESHOLD: f64 = 1e-8;
pub const ADDITION_THRESHOLD: f64 = 1e-9;
pub const PRODUCT_THRESHOLD: f64 = 1e-6;
pub const GRAM_THRESHOLD: f64 = 1e-9;
pub const H_ORACLE_THRESHOLD: f64 = 1e-10;

/// Cesàro order given numerically or relative to `(α, β)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeltaSpec {
    Value(f64),
    /// `α + β + 1 + ε`.
    CriticalPlus(f64),
    /// `α + 2β + 3/2`.
    Positivity,
}

impl DeltaSpec {
    pub fn resolve(&self, p: BiangleParams) -> f64 {
        match *self {
            DeltaSpec::Value(d) => d,
            DeltaSpec::CriticalPlus(eps) => p.critical_index() + eps,
            DeltaSpec::Positivity => p.positivity_index(),
        }
    }
}

impl FromStr for DeltaSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidParameter(format!("cannot parse delta '{s}'"));
        if s == "positivity" {
            return Ok(DeltaSpec::Positivity);
        }
        if let Some(rest) = s.strip_prefix("critical") {
            if rest.is_empty() {
                return Ok(DeltaSpec::CriticalPlus(0.0));
            }
            let eps: f64 = rest.parse().map_err(|_| bad())?;
            return Ok(DeltaSpec::CriticalPlus(eps));
        }
        s.parse().map(DeltaSpec::Value).map_err(|_| bad())
    }
}

impl fmt::Display for DeltaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeltaSpec::Value(d) => write!(f, "{d}"),
            DeltaSpec::CriticalPlus(eps) => write!(f, "critical+{eps}"),
            DeltaSpec::Positivity => write!(f, "positivity"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub alpha: f64,
    pub beta: f64,
    pub delta: DeltaSpec,
    pub n_max: usize,
    pub quad_m: usize,
    /// Scan grid points per axis; `None` means `max(4 n_max, 16)`.
    pub grid_size: Option<usize>,
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            alpha: 1.0,
            beta: 0.5,
            delta: DeltaSpec::CriticalPlus(0.1),
            n_max: 16,
            quad_m: 100,
            grid_size: None,
            seed: 0,
        }
    }
}

impl ExperimentConfig {
    pub fn params(&self) -> Result<BiangleParams> {
        BiangleParams::new(self.alpha, self.beta)
    }

    pub fn order(&self) -> Result<CesaroOrder> {
        CesaroOrder::new(self.delta.resolve(self.params()?))
    }

    pub fn grid(&self) -> usize {
        self.grid_size.unwrap_or((4 * self.n_max).max(16))
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// Uniform in `(u, x₂) ∈ [-1,1] × [0,1]`, mapped to `(u √x₂, x₂)`.
pub fn random_point<R: Rng>(rng: &mut R) -> BianglePoint {
    let u: f64 = rng.random_range(-1.0..=1.0);
    let x2: f64 = rng.random_range(0.0..=1.0);
    BianglePoint::from_polar(u, x2).expect("sampled inside the unit ranges")
}

/// Column names plus rows of already formatted cells.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(usize),
    Float(f64),
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Float(v) => write!(f, "{v:.16e}"),
        }
    }
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.header.iter().position(|h| *h == name)?;
        Some(
            self.rows
                .iter()
                .map(|r| match r[idx] {
                    Cell::Int(v) => v as f64,
                    Cell::Float(v) => v,
                })
                .collect(),
        )
    }
}

pub fn write_csv<W: Write>(table: &Table, mut out: W) -> io::Result<()> {
    writeln!(out, "{}", table.header.join(","))?;
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(Cell::to_string).collect();
        writeln!(out, "{}", cells.join(","))?;
    }
    Ok(())
}

/// Largest `|closed - direct| / (1 + |direct|)` over `samples` random points.
pub fn closed_vs_direct<R: Rng>(
    p: BiangleParams,
    order: CesaroOrder,
    n: usize,
    samples: usize,
    rng: &mut R,
) -> Result<f64> {
    let kernel = ClosedKernel::with_default_rule(p, order, n)?;
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let x = random_point(rng);
        let direct = kernel_direct(p, order, n, x, E_POINT);
        worst = worst.max((kernel.eval(x) - direct).abs() / (1.0 + direct.abs()));
    }
    Ok(worst)
}

/// Rows `(n, delta, l1_norm, l1_norm_refined, min_kernel,
/// closed_vs_direct_residual)` for `n = 0..=n_max`.
pub fn kernel_table(config: &ExperimentConfig) -> Result<Table> {
    let p = config.params()?;
    let order = config.order()?;
    let grid = config.grid();
    if grid < 4 * config.n_max {
        return Err(Error::InvalidParameter(format!(
            "grid size {grid} is below 4 * n_max = {}",
            4 * config.n_max
        )));
    }
    let coarse = biangle_rule(p, config.quad_m)?;
    let refined = biangle_rule(p, 2 * config.quad_m)?;
    let mut rng = config.rng();
    let mut rows = Vec::with_capacity(config.n_max + 1);
    for n in 0..=config.n_max {
        rows.push(vec![
            Cell::Int(n),
            Cell::Float(order.delta()),
            Cell::Float(kernel_l1_norm(p, order, n, &coarse)?),
            Cell::Float(kernel_l1_norm(p, order, n, &refined)?),
            Cell::Float(kernel_min(p, order, n, grid)?),
            Cell::Float(closed_vs_direct(p, order, n, 4, &mut rng)?),
        ]);
    }
    Ok(Table {
        header: vec!["n", "delta", "l1_norm", "l1_norm_refined", "min_kernel", "closed_vs_direct_residual"],
        rows,
    })
}

/// Built-in test functions for [`approx`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestFunction {
    SmoothExp,
    AbsEdge,
    DistCusp,
    Poly3,
}

impl TestFunction {
    pub const ALL: [TestFunction; 4] = [Self::SmoothExp, Self::AbsEdge, Self::DistCusp, Self::Poly3];

    pub fn name(&self) -> &'static str {
        match self {
            Self::SmoothExp => "smooth_exp",
            Self::AbsEdge => "abs_edge",
            Self::DistCusp => "dist_cusp",
            Self::Poly3 => "poly3",
        }
    }

    pub fn eval(&self, x: BianglePoint) -> f64 {
        let (x1, x2) = (x.x1(), x.x2());
        match self {
            Self::SmoothExp => (x1 + x2).exp(),
            Self::AbsEdge => x1.abs(),
            Self::DistCusp => (x2 - x1 * x1).max(0.0).sqrt(),
            // 1 - x1 + 2 x2 + x1 x2 - 3 x1^3 + x2^2 x1
            Self::Poly3 => 1.0 - x1 + 2.0 * x2 + x1 * x2 - 3.0 * x1.powi(3) + x2 * x2 * x1,
        }
    }
}

impl FromStr for TestFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown function '{s}'")))
    }
}

/// Rows `(n, sup_error_on_grid, l2_error)` of `S_n^δ f - f` for
/// `n = 0..=n_max`.
pub fn approx(config: &ExperimentConfig, function: TestFunction) -> Result<Table> {
    let p = config.params()?;
    let order = config.order()?;
    let n_max = config.n_max;
    let quad_m = config.quad_m.max(nodes_for_degree(2 * n_max + 3));
    let rule = biangle_rule(p, quad_m)?;
    let f = |x: BianglePoint| function.eval(x);
    let means = CesaroMeans::new(&fourier_coeffs(f, p, n_max, &rule), p);

    let grid = scan_grid(config.grid())?;
    let mut sup = vec![0.0f64; n_max + 1];
    for x in &grid {
        let fx = f(*x);
        for (s, v) in sup.iter_mut().zip(means.eval_all(order, *x)) {
            *s = s.max((v - fx).abs());
        }
    }
    let mut l2 = vec![0.0f64; n_max + 1];
    for (x, w) in rule.nodes().iter().zip(rule.weights()) {
        let fx = f(*x);
        for (s, v) in l2.iter_mut().zip(means.eval_all(order, *x)) {
            *s += w * (v - fx) * (v - fx);
        }
    }
    let rows = (0..=n_max)
        .map(|n| vec![Cell::Int(n), Cell::Float(sup[n]), Cell::Float(l2[n].sqrt())])
        .collect();
    Ok(Table {
        header: vec!["n", "sup_error_on_grid", "l2_error"],
        rows,
    })
}

/// Output of [`verify`]. Each residual is a number or `"out_of_validity"`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub alpha: f64,
    pub beta: f64,
    pub delta: f64,
    pub seed: u64,
    pub rng: &'static str,
    pub closed_form_max_residual: Value,
    pub addition_formula_max_residual: Value,
    pub product_formula_max_residual: Value,
    pub gram_max_offdiag: Value,
    pub h_n_oracle_max_relerr: Value,
    pub failed: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failed.is_empty()
    }
}

const OUT_OF_VALIDITY: &str = "out_of_validity";

/// `max |G - I|` for the Gram matrix of `g_{n,k}^{1/2} P_{n,k}`, `n ≤ max_degree`.
pub fn gram_deviation(p: BiangleParams, max_degree: usize) -> Result<f64> {
    let rule = biangle_rule(p, nodes_for_degree(2 * max_degree))?;
    let g = norm_table(p, max_degree);
    let count = g.len();
    let scale: Vec<f64> = g.values().iter().map(|v| v.sqrt()).collect();
    let mut gram = vec![0.0; count * count];
    for (x, w) in rule.nodes().iter().zip(rule.weights()) {
        let b: Vec<f64> = basis_all(p, max_degree, *x).values().iter().zip(&scale).map(|(v, s)| v * s).collect();
        for i in 0..count {
            for j in 0..=i {
                gram[i * count + j] += w * b[i] * b[j];
            }
        }
    }
    let mut worst: f64 = 0.0;
    for i in 0..count {
        for j in 0..=i {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((gram[i * count + j] - target).abs());
        }
    }
    Ok(worst)
}

/// Largest relative error of the closed-form `h_n` against Gauss quadrature
/// of `P_n²`.
pub fn h_oracle_relerr(jp: JacobiParams, max_degree: usize) -> Result<f64> {
    let rule = gauss_jacobi(jp, max_degree + 2)?;
    let mut worst: f64 = 0.0;
    for n in 0..=max_degree {
        let quad = rule.integrate(|t| eval_unchecked(jp, n, t).powi(2));
        worst = worst.max((quad - jacobi_norm_h(jp, n)).abs() / quad);
    }
    Ok(worst)
}

/// Identity checks summarized as a JSON report.
pub fn verify(config: &ExperimentConfig) -> Result<VerifyReport> {
    let p = config.params()?;
    let order = config.order()?;
    let mut rng = config.rng();

    let kernel_degree = config.n_max.min(20);
    let mut closed: f64 = 0.0;
    for n in 0..=kernel_degree {
        closed = closed.max(closed_vs_direct(p, order, n, 10, &mut rng)?);
    }

    // addition formula for the univariate system behind the kernel
    let reduced = p.reduced_params();
    let addition = if p.beta() > 0.0 {
        let mut worst: f64 = 0.0;
        for _ in 0..50 {
            let sample = AdditionSample::new(
                rng.random_range(-1.0..=1.0),
                rng.random_range(-1.0..=1.0),
                rng.random_range(0.0..=1.0),
                rng.random_range(0.0..=std::f64::consts::PI),
            )?;
            for n in 0..=6 {
                worst = worst.max(addition_formula_residual(reduced.alpha(), reduced.beta(), n, sample)?);
            }
        }
        Value::from(worst)
    } else {
        Value::from(OUT_OF_VALIDITY)
    };

    let product = if p.product_formula_valid() {
        let rule = mu_rule(p, PRODUCT_RULE_NODES)?;
        let mut worst: f64 = 0.0;
        for _ in 0..10 {
            let x = theorem_sample(&mut rng);
            let y = theorem_sample(&mut rng);
            let res = product_formula_residuals(p, 4, x, y, &rule)?;
            worst = res.values().iter().fold(worst, |a, b| a.max(*b));
        }
        Value::from(worst)
    } else {
        Value::from(OUT_OF_VALIDITY)
    };

    let gram = gram_deviation(p, 8)?;
    let base = JacobiParams::new(p.alpha(), p.beta())?;
    let h = h_oracle_relerr(base, 20)?.max(h_oracle_relerr(reduced, 20)?);

    let checks = [
        ("closed_form_max_residual", Value::from(closed), CLOSED_FORM_THRESHOLD),
        ("addition_formula_max_residual", addition, ADDITION_THRESHOLD),
        ("product_formula_max_residual", product, PRODUCT_THRESHOLD),
        ("gram_max_offdiag", Value::from(gram), GRAM_THRESHOLD),
        ("h_n_oracle_max_relerr", Value::from(h), H_ORACLE_THRESHOLD),
    ];
    let failed = checks
        .iter()
        // NaN serializes as null, which counts as a failure
        .filter(|(_, v, limit)| v.as_f64().map_or(!v.is_string(), |x| x.is_nan() || x > *limit))
        .map(|(name, _, _)| name.to_string())
        .collect();
    let [closed, addition, product, gram, h] = checks.map(|(_, v, _)| v);
    Ok(VerifyReport {
        alpha: p.alpha(),
        beta: p.beta(),
        delta: order.delta(),
        seed: config.seed,
        rng: RNG_NAME,
        closed_form_max_residual: closed,
        addition_formula_max_residual: addition,
        product_formula_max_residual: product,
        gram_max_offdiag: gram,
        h_n_oracle_max_relerr: h,
        failed,
    })
}

/// Random `(x₁, x₂)` with `0 < x₂ ≤ 1`, `|x₁| ≤ x₂`.
pub fn theorem_sample<R: Rng>(rng: &mut R) -> (f64, f64) {
    let x2: f64 = rng.random_range(0.05..=1.0);
    (rng.random_range(-x2..=x2), x2)
}

/// `8, 16, 32, ...` up to `n_max`.
pub fn dyadic_ladder(n_max: usize) -> Vec<usize> {
    std::iter::successors(Some(8usize), |n| Some(n * 2))
        .take_while(|n| *n <= n_max)
        .collect()
}

/// `I(n)` on a degree ladder with the fitted log-log slope.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthFit {
    pub points: Vec<(usize, f64)>,
    pub slope: f64,
    /// `δ - α - β - 3/2`.
    pub exponent: f64,
}

pub fn growth_fit(p: BiangleParams, delta: f64, ladder: &[usize], quad_m: usize) -> Result<GrowthFit> {
    if ladder.len() < 3 {
        return Err(Error::InvalidParameter(format!(
            "need at least 3 degrees for a slope, got {}",
            ladder.len()
        )));
    }
    if delta <= p.critical_index() {
        return Err(Error::InvalidParameter(format!(
            "growth bound needs delta > alpha + beta + 1, got {delta}"
        )));
    }
    let mut points = Vec::with_capacity(ladder.len());
    for &n in ladder {
        let rule = biangle_rule(p, quad_m.max(n + 32))?;
        points.push((n, growth_integral(p, delta, n, &rule, default_growth_t_nodes(n))?));
    }
    let slope = log_log_slope(&points)?;
    Ok(GrowthFit {
        points,
        slope,
        exponent: delta - p.alpha() - p.beta() - 1.5,
    })
}

/// Rows `(n, integral, slope, exponent)`; the last two repeat on every row.
pub fn growth_slope(config: &ExperimentConfig) -> Result<Table> {
    let p = config.params()?;
    let fit = growth_fit(p, config.order()?.delta(), &dyadic_ladder(config.n_max), config.quad_m)?;
    let rows = fit
        .points
        .iter()
        .map(|&(n, v)| vec![Cell::Int(n), Cell::Float(v), Cell::Float(fit.slope), Cell::Float(fit.exponent)])
        .collect();
    Ok(Table {
        header: vec!["n", "integral", "slope", "exponent"],
        rows,
    })
}
