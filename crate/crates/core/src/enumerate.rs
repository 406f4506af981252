//! Exhaustive enumeration machinery shared by the exact modules: caps,
//! preference-vector odometers, the coin-branch explorer and exact tallies
//! of branch weights `p^h (1-p)^t`.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::PolyP;
use crate::protocol::{Coin, Lot, Street};

/// Environment variable overriding both vector-count caps.
pub const MAX_ENUM_ENV: &str = "PARKSTAT_MAX_ENUM";

/// Guards against exponential blow-up in exhaustive routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumCaps {
    /// Most cars a single vector may branch over (`2^cars` coin branches).
    pub max_cars: usize,
    /// Most preference vectors in a linear-street enumeration.
    pub max_vectors: u128,
    /// Most preference vectors in a circular-street enumeration.
    pub max_circular_vectors: u128,
}

impl Default for EnumCaps {
    fn default() -> Self {
        EnumCaps {
            max_cars: 20,
            max_vectors: 10_000_000,
            max_circular_vectors: 1_000_000,
        }
    }
}

impl EnumCaps {
    /// Defaults, with both vector caps replaced by `PARKSTAT_MAX_ENUM` when set.
    pub fn from_env() -> Result<Self> {
        let mut caps = EnumCaps::default();
        if let Ok(raw) = std::env::var(MAX_ENUM_ENV) {
            let cap: u128 = raw
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{MAX_ENUM_ENV}={raw} is not an integer")))?;
            caps.max_vectors = cap;
            caps.max_circular_vectors = cap;
        }
        Ok(caps)
    }

    pub fn with_vector_cap(mut self, cap: u128) -> Self {
        self.max_vectors = cap;
        self.max_circular_vectors = cap;
        self
    }

    pub(crate) fn check_cars(&self, cars: usize) -> Result<()> {
        if cars > self.max_cars {
            return Err(Error::SizeLimit {
                what: "cars per vector",
                size: cars as u128,
                cap: self.max_cars as u128,
            });
        }
        Ok(())
    }

    pub(crate) fn check_space(&self, what: &'static str, base: usize, len: usize, cap: u128) -> Result<u128> {
        self.check_cars(len)?;
        let size = (base as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
        if size > cap {
            return Err(Error::SizeLimit { what, size, cap });
        }
        Ok(size)
    }
}

/// Calls `f` for every vector in `[base]^len` whose first entry is `first`
/// (or every vector when `first` is `None`), in lexicographic order.
pub(crate) fn for_each_vector<F: FnMut(&[usize])>(base: usize, len: usize, first: Option<usize>, mut f: F) {
    let mut v = vec![1usize; len];
    let start = if first.is_some() { 1 } else { 0 };
    if let Some(a) = first {
        v[0] = a;
    }
    loop {
        f(&v);
        let mut i = len;
        loop {
            if i == start {
                return;
            }
            i -= 1;
            if v[i] < base {
                v[i] += 1;
                break;
            }
            v[i] = 1;
        }
    }
}

/// Partitions `[base]^len` on the first coordinate, folds each part with
/// `fold` into a fresh accumulator and merges the parts in index order.
/// Merges must be exact so the result does not depend on scheduling.
pub(crate) fn par_fold_vectors<A, N, F, M>(base: usize, len: usize, new: N, fold: F, merge: M) -> A
where
    A: Send,
    N: Fn() -> A + Sync,
    F: Fn(&mut A, &[usize]) + Sync,
    M: Fn(A, A) -> A,
{
    let parts: Vec<A> = (1..=base)
        .into_par_iter()
        .map(|a1| {
            let mut acc = new();
            for_each_vector(base, len, Some(a1), |v| fold(&mut acc, v));
            acc
        })
        .collect();
    let mut parts = parts.into_iter();
    let first = parts.next().unwrap_or_else(&new);
    parts.fold(first, merge)
}

/// One leaf of the coin-branch tree.
pub(crate) struct Branch<'a> {
    pub lot: &'a Lot,
    pub heads: u32,
    pub tails: u32,
    pub unlucky: u32,
    pub success: bool,
}

/// Depth-first walk over every coin outcome reachable when parking `prefs`.
/// A branch stops at the first exiting car; its weight then already covers
/// every continuation, since those weights sum to one.
pub(crate) fn explore<F: FnMut(&Branch<'_>)>(street: Street, prefs: &[usize], visit: &mut F) {
    let mut lot = Lot::new(street);
    descend(&mut lot, prefs, 0, 0, 0, 0, visit);
}

fn descend<F: FnMut(&Branch<'_>)>(
    lot: &mut Lot,
    prefs: &[usize],
    car: usize,
    heads: u32,
    tails: u32,
    unlucky: u32,
    visit: &mut F,
) {
    let Some(&a) = prefs.get(car) else {
        visit(&Branch { lot, heads, tails, unlucky, success: true });
        return;
    };
    if lot.is_free(a) {
        lot.take(a);
        descend(lot, prefs, car + 1, heads, tails, unlucky, visit);
        lot.release(a);
        return;
    }
    for coin in [Coin::Heads, Coin::Tails] {
        let (h, t) = match coin {
            Coin::Heads => (heads + 1, tails),
            Coin::Tails => (heads, tails + 1),
        };
        match lot.search(a, coin) {
            Some(s) => {
                lot.take(s);
                descend(lot, prefs, car + 1, h, t, unlucky + 1, visit);
                lot.release(s);
            }
            None => visit(&Branch { lot, heads: h, tails: t, unlucky: unlucky + 1, success: false }),
        }
    }
}

/// Integer counts `c[h][t]` of branches weighted `p^h (1-p)^t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BranchTally {
    dim: usize,
    counts: Vec<u64>,
}

impl BranchTally {
    /// Room for up to `max_flips` flips.
    pub fn new(max_flips: usize) -> Self {
        let dim = max_flips + 1;
        BranchTally { dim, counts: vec![0; dim * dim] }
    }

    #[inline]
    pub fn add(&mut self, heads: u32, tails: u32) {
        self.counts[heads as usize * self.dim + tails as usize] += 1;
    }

    pub fn merge(mut self, other: BranchTally) -> BranchTally {
        debug_assert_eq!(self.dim, other.dim);
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self
    }

    /// Expands `sum c[h][t] p^h (1-p)^t` into a dense polynomial.
    pub fn to_poly(&self) -> PolyP {
        let mut coeffs = vec![BigInt::zero(); 2 * self.dim];
        for h in 0..self.dim {
            for t in 0..self.dim {
                let c = self.counts[h * self.dim + t];
                if c == 0 {
                    continue;
                }
                let c = BigInt::from(c);
                // (1-p)^t = sum_k C(t,k) (-1)^k p^k
                for k in 0..=t {
                    let term = &c * binomial(BigInt::from(t), BigInt::from(k));
                    if k % 2 == 0 {
                        coeffs[h + k] += term;
                    } else {
                        coeffs[h + k] -= term;
                    }
                }
            }
        }
        PolyP::from_coeffs(coeffs.into_iter().map(BigRational::from_integer).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odometer_covers_space() {
        let mut seen = Vec::new();
        for_each_vector(3, 2, None, |v| seen.push(v.to_vec()));
        assert_eq!(seen.len(), 9);
        assert_eq!(seen[0], vec![1, 1]);
        assert_eq!(seen[8], vec![3, 3]);
        let mut fixed = 0;
        for_each_vector(3, 3, Some(2), |v| {
            assert_eq!(v[0], 2);
            fixed += 1;
        });
        assert_eq!(fixed, 9);
        let mut single = 0;
        for_each_vector(4, 1, Some(3), |_| single += 1);
        assert_eq!(single, 1);
    }

    #[test]
    fn tally_expands_binomially() {
        let mut t = BranchTally::new(2);
        t.add(1, 1); // p(1-p)
        t.add(0, 1); // 1-p
        assert_eq!(t.to_poly(), PolyP::from_int_coeffs(&[1, 0, -1]));
    }

    #[test]
    fn branch_weights_sum_to_one() {
        let street = Street::linear(4).unwrap();
        for_each_vector(4, 4, None, |v| {
            let mut all = BranchTally::new(4);
            explore(street, v, &mut |b| all.add(b.heads, b.tails));
            assert_eq!(all.to_poly(), PolyP::one(), "{v:?}");
        });
    }

    #[test]
    fn caps_reject_large_spaces() {
        let caps = EnumCaps::default().with_vector_cap(100);
        assert!(caps.check_space("t", 3, 4, caps.max_vectors).is_ok());
        assert!(matches!(
            caps.check_space("t", 5, 3, caps.max_vectors),
            Err(Error::SizeLimit { size: 125, cap: 100, .. })
        ));
        assert!(EnumCaps::default().check_cars(21).is_err());
    }
}
