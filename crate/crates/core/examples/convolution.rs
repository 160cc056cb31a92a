//! Generalized translation and convolution. Cesàro means are convolutions
//! with the kernel at the corner.
use biangle::{
    biangle_rule, cesaro_mean_eval, convolve, fourier_coeffs, mu_rule, translate, BiangleParams, BianglePoint,
    CesaroOrder, ClosedKernel,
};

fn main() -> biangle::Result<()> {
    let p = BiangleParams::new(2.0, 0.75)?;
    let f = |x: BianglePoint| (2.0 * x.x1()).sin() + x.x2();
    let prule = mu_rule(p, 8)?;
    let brule = biangle_rule(p, 14)?;

    let (x, y) = (BianglePoint::new(0.3, 0.4)?, BianglePoint::new(-0.2, 0.7)?);
    println!("T_x f(y) = {:.10}", translate(f, p, x, y, &prule)?);
    println!("T_y f(x) = {:.10}", translate(f, p, y, x, &prule)?);

    let n = 5;
    let order = CesaroOrder::new(1.5)?;
    let kernel = ClosedKernel::with_default_rule(p, order, n)?;
    let coeffs = fourier_coeffs(f, p, n, &brule);
    let conv = convolve(f, |z| kernel.eval(z), p, x, &brule, &prule)?;
    let mean = cesaro_mean_eval(&coeffs, p, order, n, x)?;
    println!("(f * K)(x) = {conv:.12}");
    println!("S f(x)     = {mean:.12}");
    Ok(())
}
