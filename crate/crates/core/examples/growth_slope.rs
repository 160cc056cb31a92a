//! Growth of the integral that controls the kernel near the critical index,
//! with its log-log slope.
use biangle::experiments::growth_fit;
use biangle::BiangleParams;

fn main() -> biangle::Result<()> {
    let p = BiangleParams::new(1.0, 0.5)?;
    for delta in [2.75, 3.0, 3.5] {
        let fit = growth_fit(p, delta, &[8, 16, 32, 64], 48)?;
        let values: Vec<String> = fit.points.iter().map(|(n, v)| format!("{n}:{v:.4}")).collect();
        println!(
            "delta {delta}: slope {:.4}, reference exponent {:.4}  [{}]",
            fit.slope,
            fit.exponent,
            values.join(" ")
        );
    }
    Ok(())
}
