//! Acceptance criteria. Each test prints one `PASS` or `FAIL` line.

use biangle::addition::{addition_formula_residual, AdditionSample};
use biangle::experiments::{self, gram_deviation, growth_fit, random_point, theorem_sample, TestFunction};
use biangle::kernel::{kernel_l1_norm, kernel_min};
use biangle::product::{mu_rule, product_formula_residuals};
use biangle::quadrature::biangle_rule;
use biangle::{kernel_direct, BiangleParams, CesaroOrder, ClosedKernel, E_POINT};
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SETS: [(f64, f64); 3] = [(0.75, 0.25), (1.0, 0.5), (2.0, 1.0)];
// the closed-form sets plus the pair used for the kernel minimum examples
const POSITIVITY_SETS: [(f64, f64); 4] = [(0.5, 0.0), (0.75, 0.25), (1.0, 0.5), (2.0, 1.0)];
const LADDER: [usize; 5] = [8, 16, 32, 64, 128];

fn params(a: f64, b: f64) -> BiangleParams {
    BiangleParams::new(a, b).unwrap()
}

fn report(name: &str, pass: bool, detail: &str) {
    // straight to the handle so the line survives output capture
    let line = format!("{} {name}: {detail}\n", if pass { "PASS" } else { "FAIL" });
    let _ = std::io::stdout().lock().write_all(line.as_bytes());
    assert!(pass, "{name}: {detail}");
}

/// Nodes per axis for `|K_n|` integrals.
fn l1_nodes(n: usize) -> usize {
    (2 * n).max(64)
}

fn l1(p: BiangleParams, delta: f64, n: usize) -> f64 {
    let rule = biangle_rule(p, l1_nodes(n)).unwrap();
    kernel_l1_norm(p, CesaroOrder::new(delta).unwrap(), n, &rule).unwrap()
}

fn ratio_check(values: &[f64]) -> (f64, f64) {
    let max = values.iter().cloned().fold(f64::MIN, f64::max);
    let min = values.iter().cloned().fold(f64::MAX, f64::min);
    (max / min, values[values.len() - 1] / values[0])
}

#[test]
fn closed_form_kernel_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst: f64 = 0.0;
    for (a, b) in SETS {
        let p = params(a, b);
        for delta in [0.5, 1.0, p.critical_index() + 0.1, p.positivity_index()] {
            let order = CesaroOrder::new(delta).unwrap();
            for n in 0..=20 {
                let kernel = ClosedKernel::with_default_rule(p, order, n).unwrap();
                for _ in 0..50 {
                    let x = random_point(&mut rng);
                    let direct = kernel_direct(p, order, n, x, E_POINT);
                    worst = worst.max((kernel.eval(x) - direct).abs() / (1.0 + direct.abs()));
                }
            }
        }
    }
    report("closed-form kernel identity", worst <= 1e-8, &format!("max relative residual {worst:.3e} (limit 1e-8)"));
}

#[test]
fn positivity_at_positivity_index() {
    let mut worst = (f64::INFINITY, 0usize, 0.0, 0.0);
    for (a, b) in POSITIVITY_SETS {
        let p = params(a, b);
        let order = CesaroOrder::new(p.positivity_index()).unwrap();
        for n in 1..=40 {
            let m = kernel_min(p, order, n, 4 * n).unwrap();
            if m < worst.0 {
                worst = (m, n, a, b);
            }
        }
    }
    let (m, n, a, b) = worst;
    report(
        "positivity at delta = alpha + 2 beta + 3/2",
        m >= -1e-9,
        &format!("min kernel {m:.6e} at n = {n}, (alpha, beta) = ({a}, {b}) (limit -1e-9)"),
    );
}

#[test]
fn unit_mass_at_positivity_index() {
    let mut worst = (0.0f64, 0usize, 0.0, 0.0);
    for (a, b) in POSITIVITY_SETS {
        let p = params(a, b);
        for n in 0..=40 {
            let dev = (l1(p, p.positivity_index(), n) - 1.0).abs();
            if dev > worst.0 {
                worst = (dev, n, a, b);
            }
        }
    }
    let (dev, n, a, b) = worst;
    report(
        "unit L1 mass at delta = alpha + 2 beta + 3/2",
        dev <= 1e-6,
        &format!("max |l1 - 1| = {dev:.6e} at n = {n}, (alpha, beta) = ({a}, {b}) (limit 1e-6)"),
    );
}

#[test]
fn boundedness_above_critical_index() {
    let mut pass = true;
    let mut detail = Vec::new();
    for (a, b) in SETS {
        let p = params(a, b);
        let above: Vec<f64> = LADDER.iter().map(|&n| l1(p, p.critical_index() + 0.1, n)).collect();
        let (spread, trend) = ratio_check(&above);
        let below: Vec<f64> = LADDER.iter().map(|&n| l1(p, 0.5 * p.critical_index(), n)).collect();
        let min_growth = below.windows(2).map(|w| w[1] / w[0]).fold(f64::MAX, f64::min);
        pass &= spread <= 1.5 && trend <= 1.2 && min_growth >= 1.2;
        detail.push(format!(
            "({a}, {b}): max/min {spread:.4}, last/first {trend:.4}, sub-critical min growth {min_growth:.4}"
        ));
    }
    report("boundedness above the critical index", pass, &detail.join("; "));
}

#[test]
fn growth_slope_bound() {
    let p = params(1.0, 0.5);
    let fit = growth_fit(p, 3.0, &LADDER, 64).unwrap();
    let limit = fit.exponent + 0.15;
    let values: Vec<String> = fit.points.iter().map(|(n, v)| format!("I({n}) = {v:.4}")).collect();
    report(
        "growth integral slope",
        fit.slope <= limit,
        &format!("slope {:.4} (limit {limit:.2}); {}", fit.slope, values.join(", ")),
    );
}

#[test]
fn product_formula() {
    let p = params(2.0, 0.75);
    let rule = mu_rule(p, 24).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let (x, y) = (theorem_sample(&mut rng), theorem_sample(&mut rng));
        let res = product_formula_residuals(p, 4, x, y, &rule).unwrap();
        worst = res.values().iter().fold(worst, |a, b| a.max(*b));
    }
    report("product formula", worst <= 1e-6, &format!("max residual {worst:.3e} over n <= 4 (limit 1e-6)"));
}

#[test]
fn addition_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let s = AdditionSample::new(
            rng.random_range(-1.0..=1.0),
            rng.random_range(-1.0..=1.0),
            rng.random_range(0.0..=1.0),
            rng.random_range(0.0..=std::f64::consts::PI),
        )
        .unwrap();
        for n in 0..=6 {
            worst = worst.max(addition_formula_residual(2.0, 0.5, n, s).unwrap());
        }
    }
    report("addition formula", worst <= 1e-9, &format!("max residual {worst:.3e} (limit 1e-9)"));
}

#[test]
fn orthonormality() {
    let worst = SETS
        .iter()
        .map(|&(a, b)| gram_deviation(params(a, b), 8).unwrap())
        .fold(0.0, f64::max);
    report("orthonormality", worst <= 1e-9, &format!("max |G - I| = {worst:.3e} (limit 1e-9)"));
}

#[test]
fn chebyshev_case_boundedness() {
    let p = params(0.0, 0.0);
    let values: Vec<f64> = LADDER.iter().map(|&n| l1(p, 1.1, n)).collect();
    let (spread, trend) = ratio_check(&values);
    report(
        "boundedness at alpha = beta = 0, delta = 1.1",
        spread <= 1.5 && trend <= 1.2,
        &format!("l1 {values:.4?}, max/min {spread:.4}, last/first {trend:.4}"),
    );
}

#[test]
fn convergence_of_means() {
    let mut pass = true;
    let mut detail = Vec::new();
    for (a, b) in SETS {
        let config = experiments::ExperimentConfig {
            alpha: a,
            beta: b,
            delta: experiments::DeltaSpec::CriticalPlus(0.1),
            n_max: 32,
            quad_m: 80,
            grid_size: Some(64),
            seed: 0,
        };
        let sup = experiments::approx(&config, TestFunction::SmoothExp)
            .unwrap()
            .column("sup_error_on_grid")
            .unwrap();
        let ratio = sup[32] / sup[8];
        pass &= ratio <= 0.5;
        detail.push(format!("({a}, {b}): sup error n=32 / n=8 = {ratio:.4}"));
    }
    report("convergence of means", pass, &detail.join("; "));
}
