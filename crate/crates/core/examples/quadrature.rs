use biangle::{biangle_rule, BiangleParams};

// Tensor Gauss rule on the biangle, checked on a few moments.
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = BiangleParams::new(0.75, 0.25)?;
    let rule = biangle_rule(p, 12)?;
    println!("{} nodes, exact to degree {}", rule.nodes().len(), rule.degree());
    println!("mass      {:.15}", rule.integrate(|_| 1.0));
    println!("E[x1]     {:.3e}", rule.integrate(|x| x.x1()));
    println!("E[x2]     {:.15}", rule.integrate(|x| x.x2()));
    println!("E[x1^2]   {:.15}", rule.integrate(|x| x.x1() * x.x1()));

    let path = std::env::temp_dir().join("biangle_rule.csv");
    let mut file = std::fs::File::create(&path)?;
    rule.write_csv(&mut file)?;
    println!("rule written to {}", path.display());
    Ok(())
}
