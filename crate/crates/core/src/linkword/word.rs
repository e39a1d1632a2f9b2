use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Which side of the disc bounded by the doubled-against component the
/// wandering strand lies on between two crossings of the disc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Below,
    Above,
}

/// The four shapes a crossing of the disc can take, keyed by the side the
/// strand arrives from and the side it leaves to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Passage {
    A,
    B,
    C,
    D,
}

impl Passage {
    pub const ALL: [Passage; 4] = [Passage::A, Passage::B, Passage::C, Passage::D];

    pub fn from_sides(entry: Side, exit: Side) -> Self {
        match (entry, exit) {
            (Side::Below, Side::Below) => Passage::A,
            (Side::Above, Side::Above) => Passage::B,
            (Side::Below, Side::Above) => Passage::C,
            (Side::Above, Side::Below) => Passage::D,
        }
    }

    pub fn entry(self) -> Side {
        match self {
            Passage::A | Passage::C => Side::Below,
            Passage::B | Passage::D => Side::Above,
        }
    }

    pub fn exit(self) -> Side {
        match self {
            Passage::A | Passage::D => Side::Below,
            Passage::B | Passage::C => Side::Above,
        }
    }

    fn symbol(self) -> char {
        match self {
            Passage::A => 'A',
            Passage::B => 'B',
            Passage::C => 'C',
            Passage::D => 'D',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(twists: u32) -> Self {
        if twists.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    fn symbol(self) -> char {
        match self {
            Parity::Even => 'E',
            Parity::Odd => 'O',
        }
    }
}

/// A twist block of the disc. The O/E letter is the parity of `twists`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Separator {
    pub twists: u32,
    pub is_infinity: bool,
}

impl Separator {
    pub fn new(twists: u32) -> Self {
        Self {
            twists,
            is_infinity: false,
        }
    }

    pub fn infinity(twists: u32) -> Self {
        Self {
            twists,
            is_infinity: true,
        }
    }

    pub fn parity(&self) -> Parity {
        Parity::of(self.twists)
    }

    pub fn is_odd(&self) -> bool {
        self.parity() == Parity::Odd
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WordLetter {
    Passage(Passage),
    Separator(Separator),
}

impl WordLetter {
    pub fn as_passage(&self) -> Option<Passage> {
        match self {
            WordLetter::Passage(p) => Some(*p),
            WordLetter::Separator(_) => None,
        }
    }

    pub fn as_separator(&self) -> Option<&Separator> {
        match self {
            WordLetter::Separator(s) => Some(s),
            WordLetter::Passage(_) => None,
        }
    }

    pub fn is_passage(&self) -> bool {
        matches!(self, WordLetter::Passage(_))
    }
}

impl fmt::Display for WordLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordLetter::Passage(p) => write!(f, "{}", p.symbol()),
            WordLetter::Separator(s) => {
                if s.is_infinity {
                    write!(f, "*")?;
                }
                write!(f, "{}:{}", s.parity().symbol(), s.twists)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("unrecognised token {token:?} at position {position}")]
    Token { position: usize, token: String },
    #[error("token at position {position} declares {declared:?} but has {twists} twists")]
    ParityMismatch {
        position: usize,
        declared: Parity,
        twists: u32,
    },
    #[error("word has no infinity separator")]
    MissingInfinity,
    #[error("word has {0} infinity separators; exactly one is required")]
    DuplicateInfinity(usize),
    #[error("word has {0} odd separators; the count must be even")]
    OddOCount(usize),
    #[error("letters must alternate separator/passage (violated at position {0})")]
    NotAlternating(usize),
    #[error(
        "passage at position {0} starts on a different side of the disc than the previous one ends"
    )]
    SideMismatch(usize),
    #[error("framing of {framing} twists has the wrong parity for a forced {forced:?} infinity separator")]
    InfinityParityConflict { framing: u32, forced: Parity },
}

/// The circular word of passages and twist blocks, linearised so that the
/// infinity separator comes first.
///
/// A valid word alternates separator/passage, has exactly one infinity
/// separator and an even number of odd separators, and consecutive passages
/// agree on the side of the disc between them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CircularWord {
    letters: Vec<WordLetter>,
}

impl CircularWord {
    pub fn empty() -> Self {
        Self {
            letters: Vec::new(),
        }
    }

    /// Validates `letters` as a cyclic sequence and rotates it so the
    /// infinity separator is first.
    pub fn new(letters: Vec<WordLetter>) -> Result<Self, WordError> {
        if letters.is_empty() {
            return Ok(Self::empty());
        }
        let infinities: Vec<usize> = letters
            .iter()
            .enumerate()
            .filter(|(_, l)| l.as_separator().is_some_and(|s| s.is_infinity))
            .map(|(i, _)| i)
            .collect();
        match infinities.len() {
            0 => return Err(WordError::MissingInfinity),
            1 => {}
            n => return Err(WordError::DuplicateInfinity(n)),
        }
        let mut letters = letters;
        letters.rotate_left(infinities[0]);

        let n = letters.len();
        for (i, letter) in letters.iter().enumerate() {
            if letter.is_passage() != (i % 2 == 1) {
                return Err(WordError::NotAlternating(i));
            }
        }
        if n % 2 == 1 {
            return Err(WordError::NotAlternating(n - 1));
        }
        let odd = letters
            .iter()
            .filter_map(WordLetter::as_separator)
            .filter(|s| s.is_odd())
            .count();
        if odd % 2 == 1 {
            return Err(WordError::OddOCount(odd));
        }
        let passages: Vec<(usize, Passage)> = letters
            .iter()
            .enumerate()
            .filter_map(|(i, l)| l.as_passage().map(|p| (i, p)))
            .collect();
        for (j, &(position, p)) in passages.iter().enumerate() {
            let previous = passages[(j + passages.len() - 1) % passages.len()].1;
            if previous.exit() != p.entry() {
                return Err(WordError::SideMismatch(position));
            }
        }
        Ok(Self { letters })
    }

    pub fn letters(&self) -> &[WordLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn infinity(&self) -> Option<&Separator> {
        self.letters.first().and_then(WordLetter::as_separator)
    }

    /// Positions of all passage letters, in order.
    pub fn passage_positions(&self) -> impl Iterator<Item = usize> + '_ {
        (1..self.letters.len()).step_by(2)
    }

    pub fn passage_count(&self) -> usize {
        self.letters.len() / 2
    }

    pub fn has_odd_separator(&self) -> bool {
        self.letters
            .iter()
            .filter_map(WordLetter::as_separator)
            .any(Separator::is_odd)
    }

    /// Replaces the twist count of the infinity separator, keeping its parity.
    pub fn with_infinity_twists(&self, twists: u32) -> Result<Self, WordError> {
        let Some(inf) = self.infinity() else {
            return Ok(self.clone());
        };
        if Parity::of(twists) != inf.parity() {
            return Err(WordError::InfinityParityConflict {
                framing: twists,
                forced: inf.parity(),
            });
        }
        let mut letters = self.letters.clone();
        letters[0] = WordLetter::Separator(Separator::infinity(twists));
        Ok(Self { letters })
    }
}

impl fmt::Display for CircularWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, letter) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

impl FromStr for CircularWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

fn parse_token(position: usize, token: &str) -> Result<WordLetter, WordError> {
    let bad = || WordError::Token {
        position,
        token: token.to_string(),
    };
    match token {
        "A" => return Ok(WordLetter::Passage(Passage::A)),
        "B" => return Ok(WordLetter::Passage(Passage::B)),
        "C" => return Ok(WordLetter::Passage(Passage::C)),
        "D" => return Ok(WordLetter::Passage(Passage::D)),
        _ => {}
    }
    let (is_infinity, rest) = match token.strip_prefix('*') {
        Some(rest) => (true, rest),
        None => (false, token),
    };
    let (letter, twists) = rest.split_once(':').ok_or_else(bad)?;
    let declared = match letter {
        "E" => Parity::Even,
        "O" => Parity::Odd,
        _ => return Err(bad()),
    };
    if twists.is_empty() || !twists.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let twists: u32 = twists.parse().map_err(|_| bad())?;
    if Parity::of(twists) != declared {
        return Err(WordError::ParityMismatch {
            position,
            declared,
            twists,
        });
    }
    Ok(WordLetter::Separator(Separator {
        twists,
        is_infinity,
    }))
}

/// Parses the whitespace-separated word DSL, e.g. `*E:0 A E:2 A`.
pub fn parse_word(text: &str) -> Result<CircularWord, WordError> {
    let letters = text
        .split_whitespace()
        .enumerate()
        .map(|(i, t)| parse_token(i, t))
        .collect::<Result<Vec<_>, _>>()?;
    CircularWord::new(letters)
}

pub fn format_word(word: &CircularWord) -> String {
    word.to_string()
}

/// A word whose infinity separator has not been decided yet: the letters
/// after the infinity separator, starting and ending with a passage.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PartialWord {
    pub letters: Vec<WordLetter>,
}

/// Closes a partial word with an infinity separator whose parity makes the
/// total number of odd separators even.
///
/// The infinity twist count is `framing_twists` when its parity agrees with the
/// forced parity. Otherwise `strict` mode fails, and lenient mode uses
/// `framing_twists + 1`.
pub fn choose_infinity_parity(
    partial: &PartialWord,
    framing_twists: u32,
    strict: bool,
) -> Result<CircularWord, WordError> {
    if partial.letters.is_empty() {
        return Ok(CircularWord::empty());
    }
    let odd = partial
        .letters
        .iter()
        .filter_map(WordLetter::as_separator)
        .filter(|s| s.is_odd())
        .count();
    let forced = if odd % 2 == 1 {
        Parity::Odd
    } else {
        Parity::Even
    };
    let twists = if Parity::of(framing_twists) == forced {
        framing_twists
    } else if strict {
        return Err(WordError::InfinityParityConflict {
            framing: framing_twists,
            forced,
        });
    } else {
        framing_twists + 1
    };
    let mut letters = Vec::with_capacity(partial.letters.len() + 1);
    letters.push(WordLetter::Separator(Separator::infinity(twists)));
    letters.extend(partial.letters.iter().copied());
    CircularWord::new(letters)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MIXED_PASSAGES: &str = "*E:0 A E:0 C E:2 B O:1 B E:0 D E:0 A O:1 C O:1 D O:1 A";

    #[test]
    fn parses_smallest_word() {
        let w = parse_word("*E:0 A E:0 A").unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.infinity(), Some(&Separator::infinity(0)));
        assert_eq!(w.passage_count(), 2);
    }

    #[test]
    fn parses_mixed_passage_word() {
        let w = parse_word(MIXED_PASSAGES).unwrap();
        let letters: String = w
            .letters()
            .iter()
            .skip(1)
            .map(|l| match l {
                WordLetter::Passage(p) => p.symbol(),
                WordLetter::Separator(s) => s.parity().symbol(),
            })
            .collect();
        assert_eq!(letters, "AECEBOBEDEAOCODOA");
        assert_eq!(format_word(&w), MIXED_PASSAGES);
    }

    #[test]
    fn rejects_odd_o_count() {
        assert_eq!(parse_word("*E:0 A O:1 A"), Err(WordError::OddOCount(1)));
    }

    #[test]
    fn rejects_malformed_inputs() {
        assert!(matches!(
            parse_word("*E:0 A X"),
            Err(WordError::Token { position: 2, .. })
        ));
        assert!(matches!(
            parse_word("*E:1 A"),
            Err(WordError::ParityMismatch { .. })
        ));
        assert!(matches!(
            parse_word("E:0 A"),
            Err(WordError::MissingInfinity)
        ));
        assert!(matches!(
            parse_word("*E:0 A *E:0 A"),
            Err(WordError::DuplicateInfinity(2))
        ));
        assert!(matches!(
            parse_word("*E:0 A A E:0"),
            Err(WordError::NotAlternating(2))
        ));
        assert!(matches!(
            parse_word("*E:0 A E:0"),
            Err(WordError::NotAlternating(2))
        ));
        assert!(matches!(
            parse_word("*E:0 A E:0 B"),
            Err(WordError::SideMismatch(1))
        ));
        assert!(matches!(
            parse_word("*E:-2 A"),
            Err(WordError::Token { .. })
        ));
    }

    #[test]
    fn empty_text_is_empty_word() {
        assert!(parse_word("   ").unwrap().is_empty());
    }

    #[test]
    fn rotation_is_canonicalised() {
        let w = parse_word("E:0 A *E:4 A").unwrap();
        assert_eq!(format_word(&w), "*E:4 A E:0 A");
    }

    #[test]
    fn infinity_parity_follows_odd_count() {
        let fig = parse_word(MIXED_PASSAGES).unwrap();
        let partial = PartialWord {
            letters: fig.letters()[1..].to_vec(),
        };
        let closed = choose_infinity_parity(&partial, 0, true).unwrap();
        assert_eq!(closed.infinity().unwrap().parity(), Parity::Even);

        let one_odd = PartialWord {
            letters: vec![
                WordLetter::Passage(Passage::A),
                WordLetter::Separator(Separator::new(1)),
                WordLetter::Passage(Passage::A),
            ],
        };
        let closed = choose_infinity_parity(&one_odd, 1, true).unwrap();
        assert_eq!(closed.infinity(), Some(&Separator::infinity(1)));
        assert!(choose_infinity_parity(&one_odd, 0, true).is_err());
        let lenient = choose_infinity_parity(&one_odd, 0, false).unwrap();
        assert_eq!(lenient.infinity(), Some(&Separator::infinity(1)));

        let single = PartialWord {
            letters: vec![WordLetter::Passage(Passage::A)],
        };
        let closed = choose_infinity_parity(&single, 0, true).unwrap();
        assert_eq!(format_word(&closed), "*E:0 A");
    }
}
