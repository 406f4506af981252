//! Statistical checks of the simulator against exact values.

use num_rational::BigRational;

use parkstat::exactprob::total_pf_mass;
use parkstat::formulas::last_pref_mean_exact;
use parkstat::montecarlo::{histogram_vs_exact, run_simulation, sweep_p, SimConfig};
use parkstat::rational::to_f64;

fn exact_rate(n: usize) -> f64 {
    let mass = total_pf_mass(n, n).unwrap().as_constant().unwrap();
    to_f64(&(mass / BigRational::from_integer(n.pow(n as u32).into())))
}

#[test]
fn three_cars_all_heads() {
    let r = run_simulation(&SimConfig::new(3, 1.0, 200_000, 3)).unwrap();
    let z = (r.success_rate - 16.0 / 27.0) / r.success_std_err;
    assert!(z.abs() < 4.0, "z = {z}");
}

#[test]
fn six_cars_histogram_is_close() {
    let c = histogram_vs_exact(&SimConfig::new(6, 1.0, 1_000_000, 17)).unwrap();
    assert!(c.tv_gap < 0.01, "{}", c.tv_gap);
}

#[test]
fn success_rate_estimator_is_unbiased() {
    for n in 2..=6 {
        let exact = exact_rate(n);
        let within = (0..100u64)
            .filter(|&seed| {
                let r = run_simulation(&SimConfig::new(n, 0.3, 2_000, 500 + seed)).unwrap();
                ((r.success_rate - exact) / r.success_std_err).abs() <= 4.0
            })
            .count();
        assert!(within >= 99, "n={n}: {within}/100");
    }
}

#[test]
fn success_rate_does_not_depend_on_p() {
    let rates: Vec<_> = [0.0, 0.5, 1.0]
        .iter()
        .map(|&p| run_simulation(&SimConfig::new(5, p, 200_000, 9)).unwrap())
        .collect();
    for a in &rates {
        for b in &rates {
            let se = (a.success_std_err.powi(2) + b.success_std_err.powi(2)).sqrt();
            assert!((a.success_rate - b.success_rate).abs() < 4.0 * se);
        }
    }
}

#[test]
fn sweep_means_decrease_and_pair_up() {
    let grid = [0.0, 0.25, 0.5, 0.75, 1.0];
    let reports = sweep_p(&SimConfig::new(100, 0.5, 100_000, 21), &grid).unwrap();
    let means: Vec<f64> = reports.iter().map(|r| r.conditional_mean.unwrap()).collect();
    let ses: Vec<f64> = reports.iter().map(|r| r.standard_error.unwrap()).collect();
    // the ends are about 10 apart with standard errors near 0.6
    assert!(means[0] > means[4] + 4.0 * (ses[0] + ses[4]), "{means:?}");
    for i in 0..2 {
        let j = 4 - i;
        let se = (ses[i].powi(2) + ses[j].powi(2)).sqrt();
        assert!((means[i] + means[j] - 101.0).abs() < 4.0 * se, "{} + {}", means[i], means[j]);
    }
    let half = &reports[2];
    let exact = to_f64(&last_pref_mean_exact(100, &BigRational::new(1.into(), 2.into())).unwrap());
    assert!((half.conditional_mean.unwrap() - exact).abs() < 4.0 * half.standard_error.unwrap());
}

/// With enough parking trials the histogram does reach the exact law at n = 100.
#[test]
fn large_sample_histogram_at_one_hundred() {
    let c = histogram_vs_exact(&SimConfig::new(100, 0.75, 2_000_000, 77)).unwrap();
    assert!(c.report.successes > 50_000);
    assert!(c.tv_gap < 0.05, "{}", c.tv_gap);
}
