//! Binary words whose best k-restricted decomposition is far from the
//! guarantee: the unique preimage family W(n) of (ba)^n.
//!
//!     cargo run --example worst_family -- 2 2

use ebwtlab::adversary::{preimage_ba, worst_family};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let k: usize = args.next().map_or(Ok(2), |s| s.parse())?;
    let ratio: u64 = args.next().map_or(Ok(2), |s| s.parse())?;

    let f = worst_family(k, ratio)?;
    println!("k = {k}, target ratio {ratio}: n = {}", f.n);
    println!("word     {}", f.word);
    println!("parts    {{{}}}", f.witness);
    println!(
        "runs     {} against bound {} (ratio >= {})",
        f.witness_rho, f.bound, f.ratio_lower_bound
    );

    println!("\nsmallest part of W(n) as n grows:");
    for n in 1..=12 {
        let fam = preimage_ba(n)?;
        println!(
            "  n={n:>2}  parts={:>2}  min part length={}",
            fam.part_count, fam.min_part_length
        );
    }
    Ok(())
}
