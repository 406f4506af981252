//! Expected unlucky-car counts and the integer triangles behind them.

use parkstat::lucky::{a220884_rows, q_generating_polynomial, unlucky_expected_circular_row, weighted_pascal};

fn main() -> parkstat::Result<()> {
    let n = 5;
    for (k, count) in unlucky_expected_circular_row(n)?.iter().enumerate() {
        println!("n={n}: {count} outcomes with {k} unlucky cars");
    }
    println!("\nweighted Pascal, n={n}:\n{}", weighted_pascal(n)?);
    println!("generating polynomial for n=4: {}", q_generating_polynomial(4)?);
    print!("\n{}", a220884_rows(6).to_csv()?);
    Ok(())
}
