//! Law of the last car's preference given that everyone parks: exact values,
//! the mean, and its distance from uniform.

use parkstat::formulas::{last_pref_distribution, last_pref_mean_asymptotic, last_pref_mean_exact, tv_bounds_check};
use parkstat::rational::{ratio, to_f64};

fn main() -> parkstat::Result<()> {
    let p = ratio(1, 4);
    let dist = last_pref_distribution(6, &p)?;
    for (j, q) in dist.masses().iter().enumerate() {
        println!("P(last prefers {}) = {q}", j + 1);
    }

    for n in [10, 100, 1000] {
        let exact = last_pref_mean_exact(n, &p)?;
        println!(
            "n={n}: mean {:.6}, large-n approximation {:.6}",
            to_f64(&exact),
            last_pref_mean_asymptotic(n, 0.25)
        );
    }

    let report = tv_bounds_check(20, &ratio(1, 2))?;
    println!(
        "TV from uniform at n=20: {:.6} <= {:.6} <= {:.6}",
        to_f64(&report.lower),
        report.tv_float,
        to_f64(&report.upper)
    );
    Ok(())
}
