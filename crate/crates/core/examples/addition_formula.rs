use biangle::addition::{addition_coeff_a, addition_formula_residual, AdditionSample};

// Addition formula for Jacobi polynomials, checked at random samples.
fn main() -> biangle::Result<()> {
    let (alpha, beta) = (2.0, 0.5);
    println!("a(n=3, k, l):");
    for k in 0..=3 {
        let row: Vec<String> = (0..=k)
            .map(|l| format!("{:.6}", addition_coeff_a(alpha, beta, 3, k, l).unwrap()))
            .collect();
        println!("  k = {k}: {}", row.join(" "));
    }
    let sample = AdditionSample::new(0.4, -0.7, 0.8, 1.1)?;
    println!("argument {:.6}", sample.argument());
    for n in 0..=6 {
        println!("n = {n}: residual {:.2e}", addition_formula_residual(alpha, beta, n, sample)?);
    }
    Ok(())
}
