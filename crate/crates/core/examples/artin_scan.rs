//! Values m for which m+1 is prime with 2 as a primitive root, and the
//! matching n = m/2 where (ba)^n has a single-word preimage.
//!
//!     cargo run --example artin_scan -- 120

use ebwtlab::adversary::{artin_scan, preimage_ba};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let limit: u64 = std::env::args().nth(1).map_or(Ok(120), |s| s.parse())?;
    let values = artin_scan(limit)?;
    println!(
        "{}",
        values
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    );

    for m in values.iter().filter(|m| *m % 2 == 0) {
        let n = (m / 2) as usize;
        let fam = preimage_ba(n)?;
        println!("n={n:>3}: W(n) = {{{}}}", fam.parts);
    }
    Ok(())
}
