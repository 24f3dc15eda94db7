//! The block decomposition and the sigma^(k+1)+4k+2 guarantee on random
//! words.
//!
//!     cargo run --example block_bound -- 3

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ebwtlab::{block_decomposition, verify_best_bound, Alphabet, Word};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sigma: usize = std::env::args().nth(1).map_or(Ok(2), |s| s.parse())?;
    let alphabet = Alphabet::letters(sigma)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    println!(
        "{:>3} {:>4} {:>8} {:>6} {:>6}",
        "k", "|w|", "achieved", "bound", "fine"
    );
    for k in 0..=3 {
        let len = rng.gen_range(40..=200);
        let w = Word::new(
            (0..len)
                .map(|_| alphabet.symbols()[rng.gen_range(0..sigma)])
                .collect::<Vec<_>>(),
        );
        let chk = verify_best_bound(&w, k, Some(&alphabet))?;
        println!(
            "{k:>3} {len:>4} {:>8} {:>6} {:>6}",
            chk.achieved, chk.bound, chk.fine_bound
        );
        assert!(chk.ok && chk.fine_ok);
    }

    let w = Word::from("abaababaabaababaababa");
    println!(
        "\nblocks of {w} for p = 3: {{{}}}",
        block_decomposition(&w, 3)?
    );
    Ok(())
}
