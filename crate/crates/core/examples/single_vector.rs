//! Probability polynomials of every preference vector for three cars, plus one
//! traced run with an explicit coin sequence.

use parkstat::exactprob::park_probability;
use parkstat::protocol::{park_deterministic, Coin, CoinSequence, PreferenceVector};
use parkstat::rational::ratio;

fn main() -> parkstat::Result<()> {
    println!("{:<10} {:<16} at p = 1/3", "prefs", "P(park)");
    for a in 1..=3 {
        for b in 1..=3 {
            for c in 1..=3 {
                let alpha = PreferenceVector::linear(vec![a, b, c], 3)?;
                let poly = park_probability(&alpha)?;
                if !poly.is_zero() {
                    println!("{:<10} {:<16} {}", format!("({a},{b},{c})"), poly.to_string(), poly.eval(&ratio(1, 3)));
                }
            }
        }
    }

    let alpha = PreferenceVector::linear(vec![2, 2, 2], 3)?;
    let run = park_deterministic(&alpha, &CoinSequence::new(vec![Coin::Tails, Coin::Heads]))?;
    println!("\n(2,2,2) with coins T,H: {:?}, success = {}", run.assignment, run.success);
    Ok(())
}
