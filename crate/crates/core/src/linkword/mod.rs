//! Continued fractions and the circular passage word with its signs and pairings.

mod fraction;
mod pairing;
mod signs;
mod word;

pub use fraction::{evaluate_cf, is_two_component, CfError, ContinuedFraction, Rational};
pub use pairing::{
    all_maximal_pairings, oracle_bound, pair_bruteforce, pair_greedy, validate_maximal_pairing,
    validate_pairing, Chord, Pairing, PairingError, DEFAULT_ORACLE_BOUND, ORACLE_BOUND_ENV,
};
pub use signs::{assign_signs, counts, Counts, Sign, SignedWord};
pub use word::{
    choose_infinity_parity, format_word, parse_word, CircularWord, Parity, PartialWord, Passage,
    Separator, Side, WordError, WordLetter,
};

/// The nine-passage example word with signs `E+A+E+A+E+A+O-A-E-A-E-A-O+A+O-A-O+A+`.
pub const NINE_PASSAGE_EXAMPLE: &str = "*E:0 A E:0 A E:2 A O:1 A E:0 A E:0 A O:1 A O:1 A O:1 A";
