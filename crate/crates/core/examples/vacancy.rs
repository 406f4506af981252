//! Which spot stays empty on a circle with one more spot than cars.

use parkstat::exactprob::vacancy_table;

fn main() -> parkstat::Result<()> {
    let t = vacancy_table(3)?;
    println!("circulant: {}", t.is_circulant());
    for a in 1..=t.size() {
        let row: Vec<String> = (1..=t.size()).map(|i| t.entry(a, i).to_string()).collect();
        println!("first car at {a}: [{}]", row.join(", "));
    }
    Ok(())
}
