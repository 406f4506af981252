//! Conditional mean of the last preference across a grid of p.

use parkstat::montecarlo::{sweep_csv, sweep_p, SimConfig};

fn main() -> parkstat::Result<()> {
    let grid: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
    let reports = sweep_p(&SimConfig::new(30, 0.5, 50_000, 7), &grid)?;
    print!("{}", sweep_csv(&reports)?);
    Ok(())
}
