//! Monte Carlo estimate checked against the exact law.

use parkstat::montecarlo::{histogram_vs_exact, SimConfig};

fn main() -> parkstat::Result<()> {
    let cmp = histogram_vs_exact(&SimConfig::new(8, 0.3, 500_000, 2024))?;
    let r = &cmp.report;
    println!("success rate {:.5} +/- {:.5}", r.success_rate, r.success_std_err);
    println!("j  empirical  exact");
    for (j, (e, x)) in cmp.empirical.iter().zip(cmp.exact.to_f64()).enumerate() {
        println!("{:<2} {e:.5}    {x:.5}", j + 1);
    }
    println!("TV gap {:.5}", cmp.tv_gap);
    Ok(())
}
