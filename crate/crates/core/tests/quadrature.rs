use approx::assert_relative_eq;
use biangle::quadrature::nodes_for_degree;
use biangle::special::ln_gamma;
use biangle::{basis_eval, biangle_rule, gauss_jacobi, BiangleParams, JacobiParams};

fn jp(a: f64, b: f64) -> JacobiParams {
    JacobiParams::new(a, b).unwrap()
}

/// `E[x₁^{2i} x₂^j]` under the biangle density: with `x₁ = u √x₂`, `u` and `x₂`
/// separate into a symmetric Beta moment and a Beta moment.
fn biangle_moment(a: f64, b: f64, i: u32, j: u32) -> f64 {
    let ln_beta = |x: f64, y: f64| ln_gamma(x).0 + ln_gamma(y).0 - ln_gamma(x + y).0;
    let (i, j) = (i as f64, j as f64);
    // u² ~ Beta(1/2, β+1/2), x₂ ~ Beta(β+1, α+1/2)
    let u_part = ln_beta(i + 0.5, b + 0.5) - ln_beta(0.5, b + 0.5);
    let x_part = ln_beta(b + 1.0 + i + j, a + 0.5) - ln_beta(b + 1.0, a + 0.5);
    (u_part + x_part).exp()
}

#[test]
fn one_node_rules() {
    let r = gauss_jacobi(jp(1.3, 1.3), 1).unwrap();
    assert_eq!(r.nodes(), &[0.0]);
    let p = jp(2.0, 0.25);
    let r = gauss_jacobi(p, 1).unwrap();
    assert_relative_eq!(r.nodes()[0], (0.25 - 2.0) / 4.25, max_relative = 1e-14);
    assert_relative_eq!(r.weights()[0], 1.0, max_relative = 1e-15);
}

#[test]
fn rule_invariants() {
    for (a, b) in [(0.0, 0.0), (1.0, 0.5), (-0.5, 2.0), (4.0, -0.25)] {
        for m in [2, 9, 64, 500] {
            let r = gauss_jacobi(jp(a, b), m).unwrap();
            assert!(r.nodes().windows(2).all(|w| w[0] < w[1]));
            assert!(r.nodes().iter().all(|x| x.abs() < 1.0));
            assert!(r.weights().iter().all(|w| *w > 0.0));
            assert!((r.weights().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }
    assert!(gauss_jacobi(jp(0.0, 0.0), 0).is_err());
    assert!(gauss_jacobi(jp(0.0, 0.0), 10_001).is_err());
}

#[test]
fn biangle_rule_exact_on_moments() {
    for (a, b) in [(1.0, 0.5), (0.75, 0.25), (2.0, 1.0), (0.0, 0.0)] {
        let p = BiangleParams::new(a, b).unwrap();
        let m = 10;
        let rule = biangle_rule(p, m).unwrap();
        assert_eq!(rule.degree(), 2 * m - 1);
        for i in 0..=4u32 {
            for j in 0..=(9 - 2 * i) {
                let q = rule.integrate(|x| x.x1().powi(2 * i as i32) * x.x2().powi(j as i32));
                assert_relative_eq!(q, biangle_moment(a, b, i, j), max_relative = 1e-11);
            }
        }
        // odd powers of x₁ vanish
        assert!(rule.integrate(|x| x.x1().powi(3) * x.x2()).abs() < 1e-14);
    }
}

#[test]
fn biangle_rule_examples() {
    let p = BiangleParams::new(1.0, 0.5).unwrap();
    let rule = biangle_rule(p, 24).unwrap();
    assert!((rule.weights().iter().sum::<f64>() - 1.0).abs() < 1e-10);
    assert!(rule.integrate(|x| basis_eval(p, 1, 0, x).unwrap()).abs() < 1e-10);
    assert!(rule.nodes().iter().all(|x| x.x1() * x.x1() <= x.x2() && x.x2() <= 1.0));
}

#[test]
fn default_node_count() {
    assert_eq!(nodes_for_degree(0), 5);
    assert_eq!(nodes_for_degree(7), 9);
    assert_eq!(nodes_for_degree(8), 9);
}

#[test]
fn csv_dump() {
    let p = BiangleParams::new(1.0, 0.5).unwrap();
    let rule = biangle_rule(p, 3).unwrap();
    let mut buf = Vec::new();
    rule.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x1,x2,weight"));
    assert_eq!(lines.count(), 9);
}
