//! Jacobi polynomials by recurrence, with their norms and a Gauss rule.
use biangle::{gauss_jacobi, jacobi_eval, jacobi_norm_h, JacobiParams};

fn main() -> biangle::Result<()> {
    let p = JacobiParams::new(1.0, 0.5)?;
    println!("  n      P_n(0.3)        h_n        h_n by quadrature");
    let rule = gauss_jacobi(p, 20)?;
    for n in 0..8 {
        let value = jacobi_eval(p, n, 0.3)?;
        let quad = rule.integrate(|t| jacobi_eval(p, n, t).unwrap().powi(2));
        println!("{n:>3} {value:>14.8} {:>12.8e} {quad:>12.8e}", jacobi_norm_h(p, n));
    }
    Ok(())
}
