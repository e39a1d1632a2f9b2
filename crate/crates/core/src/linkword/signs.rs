use std::fmt;
use std::ops::Neg;

use serde::{Deserialize, Serialize};

use super::word::{CircularWord, WordLetter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A word together with a sign in each gap. Gap `i` sits between letter `i`
/// and letter `i + 1` (cyclically), so gap 0 is just right of the infinity
/// separator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedWord {
    word: CircularWord,
    gap_signs: Vec<Sign>,
}

impl SignedWord {
    pub fn word(&self) -> &CircularWord {
        &self.word
    }

    pub fn gap_signs(&self) -> &[Sign] {
        &self.gap_signs
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Sign of the passage at letter position `pos`; both of its gaps agree.
    pub fn passage_sign(&self, pos: usize) -> Sign {
        debug_assert!(self.word.letters()[pos].is_passage());
        self.gap_signs[pos]
    }

    /// Passage positions with their signs, in word order.
    pub fn signed_passages(&self) -> Vec<(usize, Sign)> {
        self.word
            .passage_positions()
            .map(|p| (p, self.passage_sign(p)))
            .collect()
    }
}

/// Interleaves letters and gap signs, e.g. `E+A+O-A-`.
impl fmt::Display for SignedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (letter, sign) in self.word.letters().iter().zip(&self.gap_signs) {
            match letter {
                WordLetter::Passage(p) => write!(f, "{}", WordLetter::Passage(*p))?,
                WordLetter::Separator(s) => write!(f, "{}", if s.is_odd() { 'O' } else { 'E' })?,
            }
            write!(f, "{sign}")?;
        }
        Ok(())
    }
}

pub fn assign_signs(word: &CircularWord) -> SignedWord {
    let letters = word.letters();
    let mut gap_signs = Vec::with_capacity(letters.len());
    let mut current = Sign::Plus;
    for (i, letter) in letters.iter().enumerate() {
        if i > 0 && letter.as_separator().is_some_and(|s| s.is_odd()) {
            current = -current;
        }
        gap_signs.push(current);
    }
    SignedWord {
        word: word.clone(),
        gap_signs,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Counts {
    pub n_plus: u32,
    pub n_minus: u32,
}

impl Counts {
    pub fn new(n_plus: u32, n_minus: u32) -> Self {
        Self { n_plus, n_minus }
    }

    pub fn max(&self) -> u32 {
        self.n_plus.max(self.n_minus)
    }

    pub fn min(&self) -> u32 {
        self.n_plus.min(self.n_minus)
    }

    pub fn total(&self) -> u32 {
        self.n_plus + self.n_minus
    }

    pub fn winding(&self) -> u32 {
        self.n_plus.abs_diff(self.n_minus)
    }
}

pub fn counts(sw: &SignedWord) -> Counts {
    let mut c = Counts::default();
    for (_, sign) in sw.signed_passages() {
        match sign {
            Sign::Plus => c.n_plus += 1,
            Sign::Minus => c.n_minus += 1,
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkword::word::parse_word;
    use crate::linkword::NINE_PASSAGE_EXAMPLE;

    #[test]
    fn nine_passage_example_signs() {
        let sw = assign_signs(&parse_word(NINE_PASSAGE_EXAMPLE).unwrap());
        assert_eq!(sw.to_string(), "E+A+E+A+E+A+O-A-E-A-E-A-O+A+O-A-O+A+");
        assert_eq!(counts(&sw), Counts::new(5, 4));
    }

    #[test]
    fn no_odd_separator_means_all_plus() {
        let sw = assign_signs(&parse_word("*E:0 A E:2 C E:4 D").unwrap());
        assert!(sw.gap_signs().iter().all(|&s| s == Sign::Plus));
        assert_eq!(counts(&sw), Counts::new(3, 0));
    }

    #[test]
    fn smallest_words() {
        let sw = assign_signs(&parse_word("*E:0 A E:0 A").unwrap());
        assert_eq!(counts(&sw), Counts::new(2, 0));
        let sw = assign_signs(&parse_word("*O:1 A O:1 A").unwrap());
        assert_eq!(counts(&sw), Counts::new(1, 1));
        assert_eq!(
            counts(&assign_signs(&CircularWord::empty())),
            Counts::default()
        );
    }
}
