//! Exact parking probabilities as polynomials in the forward probability `p`,
//! and exhaustive oracles over preference vectors and coin branches.

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dist::RationalDist;
use crate::enumerate::{explore, for_each_vector, par_fold_vectors, BranchTally, EnumCaps};
use crate::error::{Error, Result};
use crate::poly::PolyP;
use crate::protocol::{PreferenceVector, Street};

/// Probability that every car parks, summed over all coin branches.
pub fn park_probability(alpha: &PreferenceVector) -> Result<PolyP> {
    park_probability_with(alpha, &EnumCaps::default())
}

pub fn park_probability_with(alpha: &PreferenceVector, caps: &EnumCaps) -> Result<PolyP> {
    caps.check_cars(alpha.cars())?;
    let mut tally = BranchTally::new(alpha.cars());
    explore(alpha.street(), alpha.prefs(), &mut |b| {
        if b.success {
            tally.add(b.heads, b.tails);
        }
    });
    Ok(tally.to_poly())
}

/// Per-spot probability of staying vacant, `f_alpha(i)` for `i = 1..=spots`.
pub fn vacancy_polynomials(alpha: &PreferenceVector) -> Result<Vec<PolyP>> {
    EnumCaps::default().check_cars(alpha.cars())?;
    let spots = alpha.street().spots();
    let mut tallies = vec![BranchTally::new(alpha.cars()); spots + 1];
    explore(alpha.street(), alpha.prefs(), &mut |b| {
        if b.success {
            for s in b.lot.vacant_spots() {
                tallies[s].add(b.heads, b.tails);
            }
        }
    });
    Ok(tallies[1..].iter().map(BranchTally::to_poly).collect())
}

fn success_tally(street: Street, n: usize, m: usize, caps: &EnumCaps) -> Result<BranchTally> {
    caps.check_space("preference vectors [n]^m", n, m, caps.max_vectors)?;
    Ok(par_fold_vectors(
        n,
        m,
        || BranchTally::new(m),
        |acc, v| {
            explore(street, v, &mut |b| {
                if b.success {
                    acc.add(b.heads, b.tails);
                }
            })
        },
        BranchTally::merge,
    ))
}

/// Sum of [`park_probability`] over all of `[n]^m` on a linear street.
pub fn total_pf_mass(n: usize, m: usize) -> Result<PolyP> {
    total_pf_mass_with(n, m, &EnumCaps::default())
}

pub fn total_pf_mass_with(n: usize, m: usize, caps: &EnumCaps) -> Result<PolyP> {
    if n == 0 || m == 0 || m > n {
        return Err(Error::InvalidArgument(format!("need 1 <= m <= n, got n={n}, m={m}")));
    }
    Ok(success_tally(Street::linear(n)?, n, m, caps)?.to_poly())
}

/// Brute-force conditional law of the last preference given that all cars
/// park: `numerators[j-1] / denominator`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LastPrefOracle {
    pub n: usize,
    pub numerators: Vec<PolyP>,
    pub denominator: PolyP,
}

impl LastPrefOracle {
    /// `P(a_n = j | all park)` at a fixed rational `p`.
    pub fn ratio(&self, j: usize, p: &BigRational) -> BigRational {
        self.numerators[j - 1].eval(p) / self.denominator.eval(p)
    }

    pub fn distribution_at(&self, p: &BigRational) -> Result<RationalDist> {
        crate::rational::check_probability(p)?;
        let den = self.denominator.eval(p);
        RationalDist::new(self.numerators.iter().map(|num| num.eval(p) / &den).collect())
    }
}

pub fn last_pref_distribution_bruteforce(n: usize) -> Result<LastPrefOracle> {
    last_pref_distribution_bruteforce_with(n, &EnumCaps::default())
}

pub fn last_pref_distribution_bruteforce_with(n: usize, caps: &EnumCaps) -> Result<LastPrefOracle> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    caps.check_space("preference vectors [n]^n", n, n, caps.max_vectors)?;
    let street = Street::linear(n)?;
    let per_j = par_fold_vectors(
        n,
        n,
        || vec![BranchTally::new(n); n],
        |acc, v| {
            let slot = &mut acc[v[n - 1] - 1];
            explore(street, v, &mut |b| {
                if b.success {
                    slot.add(b.heads, b.tails);
                }
            })
        },
        |a, b| a.into_iter().zip(b).map(|(x, y)| x.merge(y)).collect(),
    );
    let numerators: Vec<PolyP> = per_j.iter().map(BranchTally::to_poly).collect();
    let denominator = numerators.iter().cloned().sum();
    Ok(LastPrefOracle { n, numerators, denominator })
}

/// Expected vacancy counts on the circle with `n + 1` spots and `n` cars:
/// `entry(a, i)` sums `f_alpha(i)` over all vectors with leading preference `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VacancyTable {
    pub n: usize,
    entries: Vec<Vec<PolyP>>,
}

impl VacancyTable {
    /// Number of spots on the circle, `n + 1`.
    pub fn size(&self) -> usize {
        self.n + 1
    }

    /// 1-based leading preference `a` and spot `i`.
    pub fn entry(&self, a: usize, i: usize) -> &PolyP {
        &self.entries[a - 1][i - 1]
    }

    pub fn row_sum(&self, a: usize) -> PolyP {
        self.entries[a - 1].iter().cloned().sum()
    }

    pub fn col_sum(&self, i: usize) -> PolyP {
        self.entries.iter().map(|row| row[i - 1].clone()).sum()
    }

    /// `entry(a, i) == entry(b, j)` whenever `b - a ≡ j - i (mod n + 1)`.
    pub fn is_circulant(&self) -> bool {
        let s = self.size();
        (1..=s).all(|a| {
            (1..=s).all(|i| {
                let (b, j) = (a % s + 1, i % s + 1);
                self.entry(a, i) == self.entry(b, j)
            })
        })
    }

    /// CSV rows `a,i,degree,numerator,denominator`, one per nonzero coefficient.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["a", "i", "degree", "numerator", "denominator"])?;
        for (a, row) in self.entries.iter().enumerate() {
            for (i, poly) in row.iter().enumerate() {
                for (d, c) in poly.coeffs().iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    w.write_record([
                        (a + 1).to_string(),
                        (i + 1).to_string(),
                        d.to_string(),
                        c.numer().to_string(),
                        c.denom().to_string(),
                    ])?;
                }
            }
        }
        crate::poly::csv_string(w)
    }
}

pub fn vacancy_table(n: usize) -> Result<VacancyTable> {
    vacancy_table_with(n, &EnumCaps::default())
}

pub fn vacancy_table_with(n: usize, caps: &EnumCaps) -> Result<VacancyTable> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let s = n + 1;
    caps.check_space("circular vectors [n+1]^n", s, n, caps.max_circular_vectors)?;
    let street = Street::circular(s)?;
    // Rows are exactly the first-coordinate partitions.
    let entries = (1..=s)
        .into_par_iter()
        .map(|a| {
            let mut acc = vec![BranchTally::new(n); s];
            for_each_vector(s, n, Some(a), |v| {
                explore(street, v, &mut |b| {
                    for i in b.lot.vacant_spots() {
                        acc[i - 1].add(b.heads, b.tails);
                    }
                })
            });
            acc.iter().map(BranchTally::to_poly).collect()
        })
        .collect();
    Ok(VacancyTable { n, entries })
}
