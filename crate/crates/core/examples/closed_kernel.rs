//! The Cesàro kernel at the corner: single integral against the double sum.
use biangle::kernel::scan_grid;
use biangle::{kernel_direct, BiangleParams, CesaroOrder, ClosedKernel, E_POINT};

fn main() -> biangle::Result<()> {
    let p = BiangleParams::new(2.0, 1.0)?;
    let order = CesaroOrder::new(p.critical_index() + 0.1)?;
    let grid = scan_grid(12)?;
    for n in [1, 5, 10, 20, 40] {
        let kernel = ClosedKernel::with_default_rule(p, order, n)?;
        let worst = grid
            .iter()
            .map(|x| {
                let d = kernel_direct(p, order, n, *x, E_POINT);
                (kernel.eval(*x) - d).abs() / (1.0 + d.abs())
            })
            .fold(0.0, f64::max);
        println!("n = {n:>2}  K(e) = {:>12.4}  max rel. residual {worst:.2e}", kernel.eval(E_POINT));
    }
    Ok(())
}
