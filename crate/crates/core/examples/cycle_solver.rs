//! Length-k cycles of the (ba)^n permutation from the closed-form linear
//! systems, checked against the cycles found by following the permutation.
//!
//!     cargo run --example cycle_solver -- 7 3

use ebwtlab::adversary::{cycle_lengths_ba, cycle_solutions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(Ok(7), |s| s.parse())?;
    let k: usize = args.next().map_or(Ok(3), |s| s.parse())?;

    for s in cycle_solutions(n, k)? {
        let t: String = s.t.iter().map(|b| b.to_string()).collect();
        println!(
            "t={t} alpha={:?} beta={:?} i={:?} {}",
            s.alpha,
            s.beta,
            s.i_strings(),
            if s.feasible { "feasible" } else { "-" }
        );
    }
    let lens = cycle_lengths_ba(n);
    println!("cycle lengths of (ba)^{n}: {lens:?}");
    Ok(())
}
