//! Exhaustive minimum and maximum of eBWT runs over all decompositions of a
//! word into parts longer than k.
//!
//!     cargo run --release --example extremal_search -- abaababaabaab 2

use num_bigint::BigUint;

use ebwtlab::{apply_composition, count_decompositions, ebwt, search_extremes, Word};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let w: Word = args
        .next()
        .unwrap_or_else(|| "abaababaabaab".into())
        .parse()?;
    let k: usize = args.next().map_or(Ok(2), |s| s.parse())?;

    println!("|D_{k}(w)| = {}", count_decompositions(w.len(), k)?);
    let res = search_extremes(&w, k, &BigUint::from(5_000_000u32))?;
    println!("explored {} decompositions", res.count_explored);
    println!("baseline (w alone): {} runs", res.baseline_rho);
    for (label, rho, c) in [
        ("min", res.min_rho, &res.min_witness),
        ("max", res.max_rho, &res.max_witness),
    ] {
        let d = apply_composition(&w, c)?;
        println!("{label}: {rho} runs with {c} = {{{d}}}, L = {}", ebwt(&d));
    }
    Ok(())
}
