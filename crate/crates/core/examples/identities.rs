//! Abel sum identities and the Poisson median check.

use parkstat::formulas::{abel_recurrence_checks, abel_special_checks, poisson_cdf_check, AbelParams};
use parkstat::rational::ratio;

fn main() -> parkstat::Result<()> {
    let checks = abel_special_checks(6, &ratio(2, 1), &ratio(3, 2))?
        .into_iter()
        .chain(abel_recurrence_checks(6, &AbelParams::ints(1, 2, 1, 0))?);
    for c in checks {
        println!("{:<5} {}", if c.holds() { "ok" } else { "FAIL" }, c.name);
    }
    for n in [10, 100, 1000] {
        let c = poisson_cdf_check(n)?;
        println!("n={n}: P(Poisson(n) <= n) = {:.10}, Edgeworth {:.10}", c.exact_f64, c.edgeworth);
    }
    Ok(())
}
