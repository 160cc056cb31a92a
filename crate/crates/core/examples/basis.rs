//! The orthogonal basis `P_{n,k}`: values, the corner, and a Gram matrix.
use biangle::{basis_all, basis_at_e, basis_eval, basis_norm_g, biangle_rule, BiangleParams, BianglePoint};

fn main() -> biangle::Result<()> {
    let p = BiangleParams::new(1.0, 0.5)?;
    let x = BianglePoint::new(0.3, 0.5)?;
    for n in 0..4 {
        let row: Vec<String> = (0..=n)
            .map(|k| format!("{:+.6}", basis_eval(p, n, k, x).unwrap()))
            .collect();
        println!("P_{n},k(0.3, 0.5) = {}", row.join("  "));
    }
    println!("P_{{3,1}}(e) = {}", basis_at_e(p, 3, 1));

    // orthonormalized Gram matrix up to degree 4
    let rule = biangle_rule(p, 10)?;
    let vals: Vec<_> = rule.nodes().iter().map(|x| basis_all(p, 4, *x)).collect();
    let mut worst: f64 = 0.0;
    for (n, k, _) in vals[0].iter() {
        for (m, l, _) in vals[0].iter() {
            let dot: f64 = vals.iter().zip(rule.weights()).map(|(v, w)| w * v.get(n, k) * v.get(m, l)).sum();
            let scaled = dot * (basis_norm_g(p, n, k)? * basis_norm_g(p, m, l)?).sqrt();
            let target = if (n, k) == (m, l) { 1.0 } else { 0.0 };
            worst = worst.max((scaled - target).abs());
        }
    }
    println!("max |G - I| = {worst:.2e}");
    Ok(())
}
