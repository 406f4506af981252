//! The coin-flip parking protocol on linear and circular streets.
//!
//! A car drives to its preferred spot and parks there if it is free. If the
//! spot is taken the driver flips a coin once: heads commits to the forward
//! direction (increasing index, clockwise on a circle), tails to the backward
//! direction. The car then takes the first free spot in that direction. On a
//! linear street it exits once it passes spot `spots` going forward or spot 1
//! going backward; on a circle it wraps around.
//!
//! Cars and spots are 1-based everywhere in the public API.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StreetKind {
    Linear,
    Circular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Street {
    kind: StreetKind,
    spots: usize,
}

impl Street {
    pub fn new(kind: StreetKind, spots: usize) -> Result<Self> {
        if spots == 0 {
            return Err(Error::EmptyStreet);
        }
        Ok(Street { kind, spots })
    }

    pub fn linear(spots: usize) -> Result<Self> {
        Self::new(StreetKind::Linear, spots)
    }

    pub fn circular(spots: usize) -> Result<Self> {
        Self::new(StreetKind::Circular, spots)
    }

    pub fn kind(&self) -> StreetKind {
        self.kind
    }

    pub fn spots(&self) -> usize {
        self.spots
    }

    /// Largest number of cars a preference vector may hold on this street.
    /// A circle always keeps one spot vacant.
    pub fn max_cars(&self) -> usize {
        match self.kind {
            StreetKind::Linear => self.spots,
            StreetKind::Circular => self.spots - 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PreferenceVector {
    prefs: Vec<usize>,
    street: Street,
}

impl PreferenceVector {
    pub fn new(prefs: Vec<usize>, street: Street) -> Result<Self> {
        validate_prefs(&prefs, street.spots)?;
        if prefs.len() > street.max_cars() {
            return Err(Error::TooManyCars {
                cars: prefs.len(),
                max: street.max_cars(),
            });
        }
        Ok(PreferenceVector { prefs, street })
    }

    /// `n` spots on a one-way street.
    pub fn linear(prefs: Vec<usize>, spots: usize) -> Result<Self> {
        Self::new(prefs, Street::linear(spots)?)
    }

    pub fn circular(prefs: Vec<usize>, spots: usize) -> Result<Self> {
        Self::new(prefs, Street::circular(spots)?)
    }

    pub fn prefs(&self) -> &[usize] {
        &self.prefs
    }

    pub fn street(&self) -> Street {
        self.street
    }

    pub fn cars(&self) -> usize {
        self.prefs.len()
    }

    /// `(spots + 1 - a_1, ..., spots + 1 - a_m)` on the same street.
    pub fn mirrored(&self) -> Self {
        let s = self.street.spots;
        PreferenceVector {
            prefs: self.prefs.iter().map(|&a| s + 1 - a).collect(),
            street: self.street,
        }
    }
}

pub(crate) fn validate_prefs(prefs: &[usize], spots: usize) -> Result<()> {
    if prefs.is_empty() {
        return Err(Error::NoCars);
    }
    for (i, &a) in prefs.iter().enumerate() {
        if a == 0 || a > spots {
            return Err(Error::PreferenceOutOfRange {
                car: i + 1,
                pref: a,
                spots,
            });
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Coin {
    Heads,
    Tails,
}

impl Coin {
    pub fn flipped(self) -> Coin {
        match self {
            Coin::Heads => Coin::Tails,
            Coin::Tails => Coin::Heads,
        }
    }
}

/// Explicit coin outcomes, consumed one per unlucky car. Unused trailing
/// entries are allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoinSequence(pub Vec<Coin>);

impl CoinSequence {
    pub fn new(flips: Vec<Coin>) -> Self {
        CoinSequence(flips)
    }

    pub fn all_heads(len: usize) -> Self {
        CoinSequence(vec![Coin::Heads; len])
    }

    pub fn all_tails(len: usize) -> Self {
        CoinSequence(vec![Coin::Tails; len])
    }

    pub fn flips(&self) -> &[Coin] {
        &self.0
    }

    pub fn swapped(&self) -> Self {
        CoinSequence(self.0.iter().map(|c| c.flipped()).collect())
    }
}

impl From<Vec<Coin>> for CoinSequence {
    fn from(v: Vec<Coin>) -> Self {
        CoinSequence(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Assignment {
    Parked(usize),
    Exited,
}

impl Assignment {
    pub fn spot(self) -> Option<usize> {
        match self {
            Assignment::Parked(s) => Some(s),
            Assignment::Exited => None,
        }
    }
}

/// Outcome of one run. Spot and car lists are sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParkingResult {
    pub assignment: Vec<Assignment>,
    pub occupied: Vec<usize>,
    pub vacant: Vec<usize>,
    pub unlucky: Vec<usize>,
    pub flips_used: usize,
    pub success: bool,
}

/// Occupancy of a street during a run.
#[derive(Clone, Debug)]
pub struct Lot {
    street: Street,
    // index 0 unused
    taken: Vec<bool>,
}

impl Lot {
    pub fn new(street: Street) -> Self {
        Lot {
            street,
            taken: vec![false; street.spots + 1],
        }
    }

    pub fn street(&self) -> Street {
        self.street
    }

    #[inline]
    pub fn is_free(&self, spot: usize) -> bool {
        !self.taken[spot]
    }

    #[inline]
    pub fn take(&mut self, spot: usize) {
        debug_assert!(!self.taken[spot]);
        self.taken[spot] = true;
    }

    #[inline]
    pub fn release(&mut self, spot: usize) {
        self.taken[spot] = false;
    }

    pub fn clear(&mut self) {
        self.taken.iter_mut().for_each(|t| *t = false);
    }

    pub fn vacant_spots(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.street.spots).filter(|&s| !self.taken[s])
    }

    /// First free spot strictly past `from` in the committed direction, or
    /// `None` if the car leaves a linear street. On a full circle this also
    /// returns `None`.
    pub fn search(&self, from: usize, coin: Coin) -> Option<usize> {
        let n = self.street.spots;
        match self.street.kind {
            StreetKind::Linear => match coin {
                Coin::Heads => (from + 1..=n).find(|&s| !self.taken[s]),
                Coin::Tails => (1..from).rev().find(|&s| !self.taken[s]),
            },
            StreetKind::Circular => (1..n)
                .map(|step| match coin {
                    Coin::Heads => (from - 1 + step) % n + 1,
                    Coin::Tails => (from - 1 + n - step) % n + 1,
                })
                .find(|&s| !self.taken[s]),
        }
    }
}

/// Runs the protocol, drawing a flip from `coins` only when a car's preferred
/// spot is occupied. Any iterator works, so callers can pass a fixed
/// sequence or sample flips lazily.
pub fn park_with<I>(alpha: &PreferenceVector, coins: I) -> Result<ParkingResult>
where
    I: IntoIterator<Item = Coin>,
{
    run_raw(alpha.street, &alpha.prefs, coins)
}

/// Same as [`park_with`] without the car-count check, so a circle may be
/// filled completely.
pub(crate) fn run_raw<I>(street: Street, prefs: &[usize], coins: I) -> Result<ParkingResult>
where
    I: IntoIterator<Item = Coin>,
{
    let mut coins = coins.into_iter();
    let mut lot = Lot::new(street);
    let mut assignment = Vec::with_capacity(prefs.len());
    let mut unlucky = Vec::new();
    let mut flips_used = 0;
    for (i, &a) in prefs.iter().enumerate() {
        if lot.is_free(a) {
            lot.take(a);
            assignment.push(Assignment::Parked(a));
            continue;
        }
        unlucky.push(i + 1);
        let coin = coins.next().ok_or(Error::CoinsExhausted { car: i + 1 })?;
        flips_used += 1;
        match lot.search(a, coin) {
            Some(s) => {
                lot.take(s);
                assignment.push(Assignment::Parked(s));
            }
            None => assignment.push(Assignment::Exited),
        }
    }
    let success = assignment.iter().all(|a| matches!(a, Assignment::Parked(_)));
    let mut occupied: Vec<usize> = assignment.iter().filter_map(|a| a.spot()).collect();
    occupied.sort_unstable();
    let vacant = lot.vacant_spots().collect();
    Ok(ParkingResult {
        assignment,
        occupied,
        vacant,
        unlucky,
        flips_used,
        success,
    })
}

pub fn park_deterministic(alpha: &PreferenceVector, coins: &CoinSequence) -> Result<ParkingResult> {
    park_with(alpha, coins.0.iter().copied())
}

/// The pigeonhole test `#{k : a_k <= i} >= i` for every `i`, i.e. whether
/// `alpha` is a classical parking function.
pub fn classical_is_pf(alpha: &PreferenceVector) -> Result<bool> {
    let n = alpha.street.spots;
    if alpha.street.kind != StreetKind::Linear || alpha.cars() != n {
        return Err(Error::InvalidArgument(
            "classical test needs n cars on a linear street with n spots".into(),
        ));
    }
    let mut counts = vec![0usize; n + 1];
    for &a in &alpha.prefs {
        counts[a] += 1;
    }
    let mut at_most = 0;
    for (i, c) in counts.iter().enumerate().skip(1) {
        at_most += c;
        if at_most < i {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Coin::{Heads as H, Tails as T};

    fn lin(prefs: &[usize]) -> PreferenceVector {
        PreferenceVector::linear(prefs.to_vec(), prefs.len()).unwrap()
    }

    fn run(prefs: &[usize], coins: &[Coin]) -> ParkingResult {
        park_deterministic(&lin(prefs), &CoinSequence::new(coins.to_vec())).unwrap()
    }

    #[test]
    fn heads_branch_of_122_parks_at_three() {
        let r = run(&[1, 2, 2], &[H]);
        assert!(r.success);
        assert_eq!(r.assignment[2], Assignment::Parked(3));
        assert_eq!(r.unlucky, vec![3]);
        assert_eq!(r.flips_used, 1);
    }

    #[test]
    fn permutation_needs_no_flips() {
        let r = run(&[1, 2, 3], &[]);
        assert!(r.success);
        assert!(r.unlucky.is_empty());
        assert_eq!(r.flips_used, 0);
        assert_eq!(r.vacant, Vec::<usize>::new());
    }

    #[test]
    fn tails_then_heads_on_221() {
        let r = run(&[2, 2, 1], &[T, H]);
        assert!(r.success);
        assert_eq!(
            r.assignment,
            vec![Assignment::Parked(2), Assignment::Parked(1), Assignment::Parked(3)]
        );
    }

    #[test]
    fn double_heads_on_222_exits() {
        let r = run(&[2, 2, 2], &[H, H]);
        assert!(!r.success);
        assert_eq!(r.assignment[1], Assignment::Parked(3));
        assert_eq!(r.assignment[2], Assignment::Exited);
        assert_eq!(r.vacant, vec![1]);
    }

    #[test]
    fn backward_exit_past_spot_one() {
        let r = run(&[2, 2, 1], &[T, T]);
        assert!(!r.success);
        assert_eq!(r.assignment[2], Assignment::Exited);
    }

    #[test]
    fn exited_car_does_not_stop_later_cars() {
        // car 2 exits forward, car 3 still parks at 1
        let r = run(&[3, 3, 1], &[H]);
        assert_eq!(
            r.assignment,
            vec![Assignment::Parked(3), Assignment::Exited, Assignment::Parked(1)]
        );
        assert!(!r.success);
    }

    #[test]
    fn coins_exhausted_is_an_error() {
        let err = park_deterministic(&lin(&[1, 1, 1]), &CoinSequence::new(vec![H])).unwrap_err();
        assert!(matches!(err, Error::CoinsExhausted { car: 3 }));
    }

    #[test]
    fn circle_wraps_in_both_directions() {
        let alpha = PreferenceVector::circular(vec![4, 4, 1], 4).unwrap();
        let r = park_deterministic(&alpha, &CoinSequence::new(vec![H, T])).unwrap();
        // car 2 goes clockwise 4 -> 1; car 3 goes counterclockwise 1 -> 4 -> 3
        assert_eq!(
            r.assignment,
            vec![Assignment::Parked(4), Assignment::Parked(1), Assignment::Parked(3)]
        );
        assert!(r.success);
        assert_eq!(r.vacant, vec![2]);
    }

    #[test]
    fn vector_validation() {
        assert!(matches!(
            PreferenceVector::linear(vec![1, 4, 2], 3),
            Err(Error::PreferenceOutOfRange { car: 2, pref: 4, spots: 3 })
        ));
        assert!(matches!(
            PreferenceVector::circular(vec![1, 1, 1], 3),
            Err(Error::TooManyCars { cars: 3, max: 2 })
        ));
        assert!(PreferenceVector::linear(vec![], 3).is_err());
        assert!(Street::linear(0).is_err());
    }

    #[test]
    fn classical_examples() {
        assert!(classical_is_pf(&lin(&[1, 1, 1, 1])).unwrap());
        assert!(!classical_is_pf(&lin(&[4, 4, 4, 4])).unwrap());
        assert!(classical_is_pf(&lin(&[3, 1, 4, 2])).unwrap());
        assert!(!classical_is_pf(&lin(&[2, 2])).unwrap());
        let short = PreferenceVector::linear(vec![1], 2).unwrap();
        assert!(classical_is_pf(&short).is_err());
    }
}
