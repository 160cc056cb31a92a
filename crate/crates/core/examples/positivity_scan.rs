//! Minimum and L1 norm of the Cesàro kernel at a few orders.
//!
//! `positivity_index` gives negative minima already at n = 1; two orders
//! higher the kernel is nonnegative and its L1 norm is exactly 1.
use biangle::{biangle_rule, kernel_l1_norm, kernel_min, BiangleParams, CesaroOrder};

fn main() -> biangle::Result<()> {
    let p = BiangleParams::new(1.0, 0.5)?;
    let rule = biangle_rule(p, 64)?;
    let deltas = [
        ("critical + 0.1", p.critical_index() + 0.1),
        ("positivity_index", p.positivity_index()),
        ("univariate bound", p.univariate_positivity_index()),
    ];
    for (name, delta) in deltas {
        let order = CesaroOrder::new(delta)?;
        println!("{name} (delta = {delta})");
        for n in [1, 2, 3, 8, 16, 24] {
            let min = kernel_min(p, order, n, 4 * n.max(16))?;
            let l1 = kernel_l1_norm(p, order, n, &rule)?;
            println!("  n = {n:>2}  min {min:>+.6e}  l1 {l1:.10}");
        }
    }
    Ok(())
}
