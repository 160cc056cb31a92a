//! Product formula residuals with the measure rule, and what goes wrong with
//! the alternative density and argument order.
use biangle::product::{mu_rule_with, product_formula_residuals, IntegrandOrder, RadialDensity};
use biangle::{mu_rule, BiangleParams, ProductMeasureRule};

fn worst(p: BiangleParams, rule: &ProductMeasureRule) -> biangle::Result<f64> {
    // theorem coordinates: |x1| <= x2, basis evaluated at (x1, x2^2)
    let res = product_formula_residuals(p, 5, (0.2, 0.6), (-0.45, 0.9), rule)?;
    Ok(res.values().iter().cloned().fold(0.0, f64::max))
}

fn main() -> biangle::Result<()> {
    let p = BiangleParams::new(2.0, 0.75)?;
    for m in [4, 8, 12, 16] {
        println!("m = {m:>2}: max residual {:.3e}", worst(p, &mu_rule(p, m)?)?);
    }
    let printed = mu_rule_with(p, 12, RadialDensity::AsPrinted)?;
    println!("radial weight s^(beta-1/2): {:.3e}", worst(p, &printed)?);
    let swapped = mu_rule(p, 12)?.with_order(IntegrandOrder::AsPrinted);
    println!("arguments (E^2, F):         {:.3e}", worst(p, &swapped)?);
    Ok(())
}
