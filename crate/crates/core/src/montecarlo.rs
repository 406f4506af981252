//! Seeded Monte Carlo estimates of the parking probability and of the law of
//! the last preference given success.
//!
//! Trial `i` draws from its own ChaCha8 stream: key from `seed`, stream id
//! `i`. It first draws the `m` preferences, then one flip per unlucky car as
//! needed. Trials are grouped in fixed chunks and aggregated with exact
//! integer sums, so a report depends only on the config, never on how many
//! threads ran it.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dist::{tv_distance_f64, RationalDist};
use crate::error::{Error, Result};
use crate::formulas::last_pref_distribution;
use crate::protocol::{run_raw, Coin, Street, StreetKind};

/// Trials per unit of parallel work.
const CHUNK: u64 = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    /// Number of spots; preferences are drawn from `[n]`.
    pub n: usize,
    /// Number of cars.
    pub m: usize,
    /// Probability that a flip shows Heads.
    pub p: f64,
    pub samples: u64,
    pub seed: u64,
    pub street: StreetKind,
}

impl SimConfig {
    /// `n` cars on a linear street with `n` spots.
    pub fn new(n: usize, p: f64, samples: u64, seed: u64) -> Self {
        SimConfig {
            n,
            m: n,
            p,
            samples,
            seed,
            street: StreetKind::Linear,
        }
    }

    pub fn validate(&self) -> Result<Street> {
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::ProbabilityOutOfRange(self.p.to_string()));
        }
        if self.samples == 0 {
            return Err(Error::InvalidArgument("samples must be at least 1".into()));
        }
        if self.m == 0 {
            return Err(Error::NoCars);
        }
        let street = Street::new(self.street, self.n)?;
        if self.m > street.max_cars() {
            return Err(Error::TooManyCars {
                cars: self.m,
                max: street.max_cars(),
            });
        }
        Ok(street)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub config: SimConfig,
    pub trials: u64,
    pub successes: u64,
    pub success_rate: f64,
    /// Binomial standard error of `success_rate`.
    pub success_std_err: f64,
    /// `conditional_histogram[j-1]` counts succeeding trials with last preference `j`.
    pub conditional_histogram: Vec<u64>,
    /// `None` without successes.
    pub conditional_mean: Option<f64>,
    /// Sample standard deviation over successes divided by `sqrt(successes)`;
    /// `None` with fewer than two successes.
    pub standard_error: Option<f64>,
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl SimReport {
    /// Header `j,count,frequency`; frequencies are relative to the successes.
    pub fn histogram_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["j", "count", "frequency"])?;
        for (j, &c) in self.conditional_histogram.iter().enumerate() {
            let freq = if self.successes == 0 {
                0.0
            } else {
                c as f64 / self.successes as f64
            };
            w.write_record([(j + 1).to_string(), c.to_string(), freq.to_string()])?;
        }
        crate::poly::csv_string(w)
    }

    /// Parses the `count` column of [`histogram_csv`](Self::histogram_csv).
    pub fn histogram_from_csv(text: &str) -> Result<Vec<u64>> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        r.records()
            .map(|rec| {
                let rec = rec?;
                rec.get(1)
                    .and_then(|c| c.parse().ok())
                    .ok_or_else(|| Error::Parse("bad histogram row".into()))
            })
            .collect()
    }

    /// One-row summary with header
    /// `n,m,p,samples,seed,trials,successes,success_rate,success_std_err,conditional_mean,standard_error`.
    pub fn summary_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "n",
            "m",
            "p",
            "samples",
            "seed",
            "trials",
            "successes",
            "success_rate",
            "success_std_err",
            "conditional_mean",
            "standard_error",
        ])?;
        let c = &self.config;
        w.write_record([
            c.n.to_string(),
            c.m.to_string(),
            c.p.to_string(),
            c.samples.to_string(),
            c.seed.to_string(),
            self.trials.to_string(),
            self.successes.to_string(),
            self.success_rate.to_string(),
            self.success_std_err.to_string(),
            opt(self.conditional_mean),
            opt(self.standard_error),
        ])?;
        crate::poly::csv_string(w)
    }

    /// Empirical conditional law of the last preference.
    pub fn empirical(&self) -> Vec<f64> {
        let s = self.successes.max(1) as f64;
        self.conditional_histogram.iter().map(|&c| c as f64 / s).collect()
    }
}

/// Header `p,success_rate,cond_mean,std_err`, one row per report.
pub fn sweep_csv(reports: &[SimReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["p", "success_rate", "cond_mean", "std_err"])?;
    for r in reports {
        w.write_record([
            r.config.p.to_string(),
            r.success_rate.to_string(),
            opt(r.conditional_mean),
            opt(r.standard_error),
        ])?;
    }
    crate::poly::csv_string(w)
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Tally {
    successes: u64,
    hist: Vec<u64>,
    sum: u128,
    sum_sq: u128,
}

impl Tally {
    fn new(n: usize) -> Self {
        Tally {
            successes: 0,
            hist: vec![0; n],
            sum: 0,
            sum_sq: 0,
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.successes += other.successes;
        for (a, b) in self.hist.iter_mut().zip(other.hist) {
            *a += b;
        }
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
        self
    }
}

/// The random stream of trial `trial` under `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn run_chunk(cfg: &SimConfig, street: Street, chunk: u64) -> Tally {
    let mut tally = Tally::new(cfg.n);
    let mut prefs = vec![0usize; cfg.m];
    let end = ((chunk + 1) * CHUNK).min(cfg.samples);
    for trial in chunk * CHUNK..end {
        let mut rng = trial_rng(cfg.seed, trial);
        for a in prefs.iter_mut() {
            *a = rng.random_range(1..=cfg.n);
        }
        let coins = std::iter::repeat_with(|| {
            if rng.random_bool(cfg.p) {
                Coin::Heads
            } else {
                Coin::Tails
            }
        });
        let result = run_raw(street, &prefs, coins).expect("infinite coin supply");
        if result.success {
            let last = prefs[cfg.m - 1];
            tally.successes += 1;
            tally.hist[last - 1] += 1;
            tally.sum += last as u128;
            tally.sum_sq += (last * last) as u128;
        }
    }
    tally
}

/// Runs the simulation on the current rayon pool.
pub fn run_simulation(cfg: &SimConfig) -> Result<SimReport> {
    let street = cfg.validate()?;
    let chunks = cfg.samples.div_ceil(CHUNK);
    let tally = (0..chunks)
        .into_par_iter()
        .map(|c| run_chunk(cfg, street, c))
        .reduce(|| Tally::new(cfg.n), Tally::merge);
    Ok(report(cfg, tally))
}

/// Runs the simulation on a dedicated pool of `threads` workers.
pub fn run_simulation_threads(cfg: &SimConfig, threads: usize) -> Result<SimReport> {
    with_threads(threads, || run_simulation(cfg))?
}

pub(crate) fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    Ok(pool.install(f))
}

fn report(cfg: &SimConfig, t: Tally) -> SimReport {
    let trials = cfg.samples;
    let rate = t.successes as f64 / trials as f64;
    let s = t.successes as f64;
    let mean = (t.successes > 0).then(|| t.sum as f64 / s);
    let standard_error = (t.successes > 1).then(|| {
        // exact centred sum of squares, then one rounding
        let centred = t.sum_sq as f64 - (t.sum as f64) * (t.sum as f64) / s;
        (centred.max(0.0) / (s - 1.0)).sqrt() / s.sqrt()
    });
    SimReport {
        config: *cfg,
        trials,
        successes: t.successes,
        success_rate: rate,
        success_std_err: (rate * (1.0 - rate) / trials as f64).sqrt(),
        conditional_histogram: t.hist,
        conditional_mean: mean,
        standard_error,
    }
}

/// Seed of grid point `index` in a sweep.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    // splitmix64 finaliser
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One report per grid value, each with a seed derived from its grid index.
pub fn sweep_p(base: &SimConfig, grid: &[f64]) -> Result<Vec<SimReport>> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument("empty p grid".into()));
    }
    grid.iter()
        .enumerate()
        .map(|(i, &p)| {
            run_simulation(&SimConfig {
                p,
                seed: derive_seed(base.seed, i as u64),
                ..*base
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct HistogramComparison {
    pub report: SimReport,
    pub empirical: Vec<f64>,
    pub exact: RationalDist,
    pub tv_gap: f64,
}

/// Runs `cfg` and compares the empirical law of the last preference with the
/// exact one at the same `p` (read as the exact binary fraction it is).
pub fn histogram_vs_exact(cfg: &SimConfig) -> Result<HistogramComparison> {
    if cfg.m != cfg.n || cfg.street != StreetKind::Linear {
        return Err(Error::InvalidArgument("needs n cars on a linear street with n spots".into()));
    }
    let report = run_simulation(cfg)?;
    if report.successes == 0 {
        return Err(Error::InvalidArgument("no trial parked; nothing to compare".into()));
    }
    let p = BigRational::from_float(cfg.p).ok_or_else(|| Error::ProbabilityOutOfRange(cfg.p.to_string()))?;
    let exact = last_pref_distribution(cfg.n, &p)?;
    let empirical = report.empirical();
    let tv_gap = tv_distance_f64(&empirical, &exact)?;
    Ok(HistogramComparison {
        report,
        empirical,
        exact,
        tv_gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_sample() {
        let r = run_simulation(&SimConfig::new(5, 0.3, 1, 99)).unwrap();
        assert_eq!(r.trials, 1);
        assert!(r.successes <= 1);
        assert_eq!(r.conditional_histogram.iter().sum::<u64>(), r.successes);
    }

    #[test]
    fn thread_count_does_not_matter() {
        let cfg = SimConfig::new(7, 0.6, 10_000, 5);
        let a = run_simulation_threads(&cfg, 1).unwrap();
        let b = run_simulation_threads(&cfg, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.histogram_csv().unwrap(), b.histogram_csv().unwrap());
    }

    #[test]
    fn one_car_always_parks() {
        let c = histogram_vs_exact(&SimConfig::new(1, 0.5, 100, 1)).unwrap();
        assert_eq!(c.report.successes, 100);
        assert_eq!(c.tv_gap, 0.0);
    }

    #[test]
    fn forms_round_trip() {
        let r = run_simulation(&SimConfig::new(4, 0.5, 500, 2)).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<SimReport>(&json).unwrap(), r);
        let csv = r.histogram_csv().unwrap();
        assert!(csv.starts_with("j,count,frequency\n1,"));
        assert_eq!(SimReport::histogram_from_csv(&csv).unwrap(), r.conditional_histogram);
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(run_simulation(&SimConfig::new(3, 1.5, 10, 0)).is_err());
        assert!(run_simulation(&SimConfig::new(3, 0.5, 0, 0)).is_err());
        let circ = SimConfig {
            street: StreetKind::Circular,
            ..SimConfig::new(3, 0.5, 10, 0)
        };
        assert!(matches!(run_simulation(&circ), Err(Error::TooManyCars { .. })));
    }

    #[test]
    fn sweep_seeds_differ() {
        let base = SimConfig::new(4, 0.5, 200, 11);
        let r = sweep_p(&base, &[0.5, 0.5]).unwrap();
        assert_ne!(r[0].config.seed, r[1].config.seed);
        assert!(sweep_p(&base, &[]).is_err());
    }
}
