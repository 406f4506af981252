//! Probabilistic parking functions under the coin-flip protocol.
//!
//! Each car prefers a spot; if that spot is taken it flips a coin that shows
//! Heads with probability `p` and then searches forward (Heads) or backward
//! (Tails) for the first free spot. The crate computes parking probabilities
//! as exact polynomials in `p`, evaluates closed forms for the law of the last
//! car's preference, counts unlucky cars, and runs reproducible Monte Carlo
//! simulations.
//!
//! ```
//! use parkstat::{exactprob::park_probability, protocol::PreferenceVector};
//!
//! let alpha = PreferenceVector::linear(vec![2, 2, 1], 3).unwrap();
//! assert_eq!(park_probability(&alpha).unwrap().to_string(), "2p - p^2");
//! ```

pub mod cli;
pub mod dist;
pub mod enumerate;
pub mod error;
pub mod exactprob;
pub mod formulas;
pub mod lucky;
pub mod montecarlo;
pub mod poly;
pub mod protocol;
pub mod rational;

pub use error::{Error, Result};
