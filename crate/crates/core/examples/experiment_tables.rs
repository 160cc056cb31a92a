//! The experiment tables behind the command line tool, written as CSV.
use biangle::experiments::{self, DeltaSpec, ExperimentConfig, TestFunction};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = ExperimentConfig {
        n_max: 8,
        quad_m: 40,
        delta: DeltaSpec::CriticalPlus(0.1),
        ..ExperimentConfig::default()
    };
    let mut out = std::io::stdout().lock();
    experiments::write_csv(&experiments::kernel_table(&config)?, &mut out)?;
    println!();
    experiments::write_csv(&experiments::approx(&config, TestFunction::AbsEdge)?, &mut out)?;
    println!();
    let report = experiments::verify(&config)?;
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    Ok(())
}
