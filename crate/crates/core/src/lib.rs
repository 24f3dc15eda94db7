//! Runs of the extended Burrows-Wheeler transform under decompositions of a
//! word.
//!
//! * [`word`]: alphabets, words, runs, rotations and the ω-order.
//! * [`transform`]: BWT / eBWT construction and inversion.
//! * [`decomposition`]: restricted compositions, counting, extremal search,
//!   block decompositions and Lyndon factorization.
//! * [`adversary`]: the preimages of `(ba)^n`, the exact cycle solver and the
//!   worst-case family.
//! * [`suites`]: named property suites over all of the above.

pub mod adversary;
pub mod decomposition;
pub mod error;
pub mod suites;
pub mod transform;
pub mod word;

pub use decomposition::{
    apply_composition, block_decomposition, count_decompositions, enumerate_compositions,
    generalized_fibonacci, growth_rate, lyndon_factorization, search_extremes,
    search_extremes_with, verify_best_bound, BoundCheck, Composition, SearchOptions, SearchResult,
};
pub use error::{Error, Result};
pub use transform::{bwt, ebwt, ebwt_matrix, invert_ebwt, rho, Decomposition, EbwtResult};
pub use word::{omega_compare, Alphabet, RootExp, Word};
