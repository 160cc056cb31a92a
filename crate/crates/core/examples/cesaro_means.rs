//! Cesàro means of a smooth function at several orders.
use biangle::quadrature::nodes_for_degree;
use biangle::{biangle_rule, fourier_coeffs, BiangleParams, BianglePoint, CesaroMeans, CesaroOrder};

fn main() -> biangle::Result<()> {
    let p = BiangleParams::new(1.0, 0.5)?;
    let f = |x: BianglePoint| (x.x1() - 0.5 * x.x2()).exp();
    let n_max = 24;
    let rule = biangle_rule(p, nodes_for_degree(2 * n_max + 8))?;
    let means = CesaroMeans::new(&fourier_coeffs(f, p, n_max, &rule), p);

    let x = BianglePoint::new(-0.4, 0.6)?;
    println!("f(x) = {:.12}", f(x));
    println!("  n   delta=0     delta=1     delta={:.1}", p.critical_index() + 0.1);
    let orders = [0.0, 1.0, p.critical_index() + 0.1].map(|d| CesaroOrder::new(d).unwrap());
    for n in [2, 4, 8, 16, 24] {
        let errs: Vec<String> = orders
            .iter()
            .map(|o| format!("{:.3e}", (means.eval(*o, n, x).unwrap() - f(x)).abs()))
            .collect();
        println!("{n:>3}   {}", errs.join("   "));
    }
    Ok(())
}
