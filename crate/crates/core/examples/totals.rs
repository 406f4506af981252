//! Total parking mass over all preference vectors does not depend on p.

use parkstat::exactprob::total_pf_mass;

fn main() -> parkstat::Result<()> {
    for n in 1..=6 {
        for m in 1..=n {
            let mass = total_pf_mass(n, m)?;
            let expected = (n + 1 - m) * (n + 1).pow(m as u32 - 1);
            println!("n={n} m={m}: {mass}  (closed form {expected})");
        }
    }
    Ok(())
}
