//! The Lyndon factorization as a decomposition: its eBWT is the bijective
//! BWT, compared here with the ordinary BWT.
//!
//!     cargo run --example lyndon_bbwt -- mississippi

use ebwtlab::{bwt, ebwt, lyndon_factorization, Word};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let w: Word = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "mississippi".into())
        .parse()?;
    let factors = lyndon_factorization(&w)?;
    let bbwt = ebwt(&factors);
    println!("lyndon factors  {}", factors);
    println!("bijective BWT   {}  ({} runs)", bbwt, bbwt.runs());
    if w.is_primitive() {
        let l = bwt(&w)?;
        println!("BWT             {}  ({} runs)", l, l.runs());
    }
    Ok(())
}
