use approx::assert_relative_eq;
use biangle::biangle::{basis_eval_raw, homogeneous_factors};
use biangle::special::pochhammer;
use biangle::{
    basis_all, basis_at_e, basis_eval, basis_norm_g, biangle_rule, jacobi_eval, jacobi_norm_h, weight_w, BiangleParams,
    BianglePoint, JacobiParams, E_POINT,
};

const SETS: [(f64, f64); 5] = [(0.75, 0.25), (1.0, 0.5), (2.0, 1.0), (0.0, 0.0), (-0.25, 1.5)];

fn bp(a: f64, b: f64) -> BiangleParams {
    BiangleParams::new(a, b).unwrap()
}

fn pt(x1: f64, x2: f64) -> BianglePoint {
    BianglePoint::new(x1, x2).unwrap()
}

#[test]
fn point_membership() {
    assert!(BianglePoint::new(0.8, 0.5).is_err());
    assert!(BianglePoint::new(0.0, 1.1).is_err());
    let projected = BianglePoint::new(0.5 + 1e-13, 0.25).unwrap();
    assert!(projected.x1() * projected.x1() <= projected.x2());
    assert!(BiangleParams::new(-0.5, 0.0).is_err());
}

#[test]
fn parameter_flags() {
    let p = bp(2.0, 0.75);
    assert!(p.theorem_valid() && p.product_formula_valid());
    assert!(!bp(1.0, 0.0).product_formula_valid());
    assert!(bp(1.0, 0.0).theorem_valid());
    assert!(!bp(0.75, 0.5).theorem_valid());
}

#[test]
fn weight_examples() {
    assert_relative_eq!(weight_w(bp(0.5, 0.5), pt(0.1, 0.4)).unwrap(), 0.75, max_relative = 1e-14);
    let w = weight_w(bp(1.0, 0.5), pt(0.0, 0.5)).unwrap();
    assert_relative_eq!(w, 4.0 / std::f64::consts::PI * 0.5f64.sqrt(), max_relative = 1e-14);
    assert!(weight_w(bp(0.0, 0.5), E_POINT).is_err());
    let p = bp(1.0, 0.5);
    let rule = biangle_rule(p, 20).unwrap();
    assert!((rule.integrate(|_| 1.0) - 1.0).abs() < 1e-10);
}

#[test]
fn corner_values() {
    for (a, b) in SETS {
        let p = bp(a, b);
        for n in 0..=8 {
            for k in 0..=n {
                let expected = pochhammer(a + 0.5, n - k) * pochhammer(b + 0.5, k)
                    / (pochhammer(1.0, n - k) * pochhammer(1.0, k));
                assert_relative_eq!(basis_eval(p, n, k, E_POINT).unwrap(), expected, max_relative = 1e-12);
                assert_relative_eq!(basis_at_e(p, n, k), expected, max_relative = 1e-12);
            }
        }
    }
}

#[test]
fn explicit_square_root_form() {
    let p = bp(1.0, 0.5);
    let x = pt(0.3, 0.5);
    let jp = |a: f64, b: f64| JacobiParams::new(a, b).unwrap();
    let direct = jacobi_eval(jp(0.5, 1.5), 1, 0.0).unwrap()
        * 0.5f64.sqrt()
        * jacobi_eval(jp(0.0, 0.0), 1, 0.3 / 0.5f64.sqrt()).unwrap();
    assert!((basis_eval(p, 2, 1, x).unwrap() - direct).abs() < 1e-13);
    // random interior points, all (n,k) up to 10
    for (a, b) in SETS {
        let p = bp(a, b);
        for &(x1, x2) in &[(0.1, 0.3), (-0.5, 0.26), (0.9, 0.95), (0.0, 0.7)] {
            for n in 0..=10 {
                for k in 0..=n {
                    let r = f64::sqrt(x2);
                    let expected = jacobi_eval(p.radial_params(k), n - k, 2.0 * x2 - 1.0).unwrap()
                        * r.powi(k as i32)
                        * jacobi_eval(p.angular_params(), k, x1 / r).unwrap();
                    let got = basis_eval(p, n, k, pt(x1, x2)).unwrap();
                    assert!((got - expected).abs() <= 1e-12 * (1.0 + expected.abs()));
                }
            }
        }
    }
}

#[test]
fn cusp_values() {
    let p = bp(1.0, 0.5);
    let origin = pt(0.0, 0.0);
    assert_eq!(basis_eval(p, 0, 0, origin).unwrap(), 1.0);
    assert_eq!(basis_eval(p, 1, 1, origin).unwrap(), 0.0);
    assert_eq!(basis_eval(p, 5, 3, origin).unwrap(), 0.0);
    assert!(basis_eval(p, 2, 3, origin).is_err());
}

#[test]
fn parity_of_angular_factor() {
    let p = bp(0.75, 0.25);
    let mut a = vec![0.0; 12];
    let mut b = vec![0.0; 12];
    homogeneous_factors(p, 0.37, 0.6, &mut a);
    homogeneous_factors(p, -0.37, 0.6, &mut b);
    for k in 0..12 {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        assert!((a[k] - sign * b[k]).abs() < 1e-14);
    }
}

#[test]
fn degree_in_first_coordinate_on_top_edge() {
    let p = bp(2.0, 1.0);
    for n in 0..=7 {
        for k in 0..=n {
            // k+1 finite differences of a degree-k polynomial vanish
            let xs: Vec<f64> = (0..=k + 1).map(|i| -0.9 + 0.3 * i as f64).collect();
            let mut vals: Vec<f64> = xs.iter().map(|&x| basis_eval_raw(p, n, k, x, 1.0)).collect();
            for _ in 0..=k {
                vals = vals.windows(2).map(|w| w[1] - w[0]).collect();
            }
            let scale = basis_at_e(p, n, k).abs().max(1.0);
            assert!(vals[0].abs() < 1e-10 * scale, "n={n} k={k} {}", vals[0]);
        }
    }
}

#[test]
fn norms_against_quadrature() {
    for (a, b) in SETS {
        let p = bp(a, b);
        let rule = biangle_rule(p, 24).unwrap();
        for n in 0..=8 {
            for k in 0..=n {
                let q = rule.integrate(|x| basis_eval(p, n, k, x).unwrap().powi(2));
                assert_relative_eq!(basis_norm_g(p, n, k).unwrap() * q, 1.0, max_relative = 1e-9);
            }
        }
    }
    assert_eq!(basis_norm_g(bp(1.0, 0.5), 0, 0).unwrap(), 1.0);
    let half = bp(0.5, 0.5);
    let h = jacobi_norm_h(JacobiParams::new(0.0, 0.5).unwrap(), 1);
    assert_relative_eq!(basis_norm_g(half, 1, 0).unwrap(), 1.0 / h, max_relative = 1e-14);
}

#[test]
fn orthogonality_grid() {
    for (a, b) in SETS {
        let p = bp(a, b);
        let rule = biangle_rule(p, 14).unwrap();
        let vals: Vec<Vec<f64>> = rule.nodes().iter().map(|x| basis_all(p, 8, *x).values().to_vec()).collect();
        let count = vals[0].len();
        for i in 0..count {
            for j in 0..i {
                let s: f64 = vals.iter().zip(rule.weights()).map(|(v, w)| w * v[i] * v[j]).sum();
                assert!(s.abs() < 1e-9, "({a},{b}) entries {i},{j}: {s}");
            }
        }
    }
}

#[test]
fn all_at_once_matches_single() {
    let p = bp(0.75, 0.25);
    let x = pt(-0.2, 0.45);
    let all = basis_all(p, 12, x);
    for n in 0..=12 {
        for k in 0..=n {
            let single = basis_eval(p, n, k, x).unwrap();
            assert!((all.get(n, k) - single).abs() <= 1e-13 * (1.0 + single.abs()));
        }
    }
}
