//! eBWT of a multiset, its sorted matrix, and inversion back to the
//! canonical rotations.
//!
//!     cargo run --example transform_roundtrip -- baa,bab

use ebwtlab::{ebwt, ebwt_matrix, invert_ebwt, Decomposition};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let arg = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "baa,bab".to_string());
    let parts: Decomposition = arg.parse()?;

    println!("rotations in omega-order:");
    for row in ebwt_matrix(&parts) {
        println!("  {}  -> {}", row.rotation, row.last as char);
    }
    let res = ebwt(&parts);
    println!("L = {}  F = {}  runs = {}", res, res.f_column(), res.runs());

    let back = invert_ebwt(res.l_column())?;
    println!("invert(L) = {{{back}}}");
    Ok(())
}
