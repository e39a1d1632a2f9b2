//! Circular sutured words: grammar, tautness, the reduction engine and the
//! translation from signed passage words.

mod engine;
mod translate;

pub use engine::{
    normalize, perturbations, preserved_letter, product_by_reduction, reduce_step,
    taut_by_reduction, taut_closed_form, Perturbation, ReductionStep, ReductionTrace, Terminal,
    Verdict,
};
pub use translate::derive_wr;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuturedError {
    #[error("unrecognised sutured token {token:?} at position {position}")]
    Token { position: usize, token: String },
    #[error("letter {letter} at position {position} has twists of the wrong parity")]
    TwistParity { position: usize, letter: String },
    #[error("sutured word is empty")]
    Empty,
    #[error("grammar violation: {left} may not be followed by {right} (position {position})")]
    Grammar {
        position: usize,
        left: String,
        right: String,
    },
    #[error("not a sutured manifold: {0}")]
    NotSutured(String),
    #[error("word of length {0} is too short to reduce")]
    TooShort(usize),
    #[error("position {0} does not hold a lower-case letter")]
    NotLower(usize),
    #[error("subword at position {0} contains the preserved letter")]
    Preserved(usize),
    #[error("sutured manifold is not taut")]
    NotTaut,
}

/// Which block family a letter belongs to: `a b A B C α β` or `c d D E F γ δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Abc,
    Def,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LowerKind {
    A,
    B,
    C,
    D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UpperKind {
    A,
    B,
    C,
    D,
    E,
    F,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GreekKind {
    Alpha,
    Beta,
    Gamma,
    Delta,
}

/// Twist constraint of an upper-case block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistClass {
    Odd,
    Even,
    Free,
}

impl LowerKind {
    pub fn family(self) -> Family {
        match self {
            LowerKind::A | LowerKind::B => Family::Abc,
            LowerKind::C | LowerKind::D => Family::Def,
        }
    }

    /// `b` and `d` are the shifted letters.
    pub fn shifted(self) -> bool {
        matches!(self, LowerKind::B | LowerKind::D)
    }

    fn with(family: Family, shifted: bool) -> Self {
        match (family, shifted) {
            (Family::Abc, false) => LowerKind::A,
            (Family::Abc, true) => LowerKind::B,
            (Family::Def, false) => LowerKind::C,
            (Family::Def, true) => LowerKind::D,
        }
    }

    fn name(self) -> &'static str {
        match self {
            LowerKind::A => "a",
            LowerKind::B => "b",
            LowerKind::C => "c",
            LowerKind::D => "d",
        }
    }
}

impl UpperKind {
    pub fn family(self) -> Family {
        match self {
            UpperKind::A | UpperKind::B | UpperKind::C => Family::Abc,
            UpperKind::D | UpperKind::E | UpperKind::F => Family::Def,
        }
    }

    pub fn class(self) -> TwistClass {
        match self {
            UpperKind::A | UpperKind::D => TwistClass::Odd,
            UpperKind::B | UpperKind::E => TwistClass::Even,
            UpperKind::C | UpperKind::F => TwistClass::Free,
        }
    }

    pub fn with(family: Family, class: TwistClass) -> Self {
        match (family, class) {
            (Family::Abc, TwistClass::Odd) => UpperKind::A,
            (Family::Abc, TwistClass::Even) => UpperKind::B,
            (Family::Abc, TwistClass::Free) => UpperKind::C,
            (Family::Def, TwistClass::Odd) => UpperKind::D,
            (Family::Def, TwistClass::Even) => UpperKind::E,
            (Family::Def, TwistClass::Free) => UpperKind::F,
        }
    }

    fn name(self) -> &'static str {
        match self {
            UpperKind::A => "A",
            UpperKind::B => "B",
            UpperKind::C => "C",
            UpperKind::D => "D",
            UpperKind::E => "E",
            UpperKind::F => "F",
        }
    }
}

impl GreekKind {
    /// The family of the upper-case letter a Greek letter may follow.
    pub fn family(self) -> Family {
        match self {
            GreekKind::Alpha | GreekKind::Beta => Family::Abc,
            GreekKind::Gamma | GreekKind::Delta => Family::Def,
        }
    }

    /// `β` and `δ` are the shifted letters; they must be followed by `b` or `d`.
    pub fn shifted(self) -> bool {
        matches!(self, GreekKind::Beta | GreekKind::Delta)
    }

    fn with(family: Family, shifted: bool) -> Self {
        match (family, shifted) {
            (Family::Abc, false) => GreekKind::Alpha,
            (Family::Abc, true) => GreekKind::Beta,
            (Family::Def, false) => GreekKind::Gamma,
            (Family::Def, true) => GreekKind::Delta,
        }
    }

    fn name(self) -> &'static str {
        match self {
            GreekKind::Alpha => "alpha",
            GreekKind::Beta => "beta",
            GreekKind::Gamma => "gamma",
            GreekKind::Delta => "delta",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SLetter {
    Lower {
        kind: LowerKind,
        k: u32,
        l: u32,
    },
    Upper {
        kind: UpperKind,
        n: u32,
        twists: u32,
    },
    Greek {
        kind: GreekKind,
        m: u32,
        n: u32,
        r: u32,
    },
}

impl SLetter {
    pub fn lower(kind: LowerKind, k: u32, l: u32) -> Self {
        SLetter::Lower { kind, k, l }
    }

    pub fn upper(kind: UpperKind, n: u32, twists: u32) -> Self {
        SLetter::Upper { kind, n, twists }
    }

    pub fn greek(kind: GreekKind, m: u32, n: u32, r: u32) -> Self {
        SLetter::Greek { kind, m, n, r }
    }

    pub fn is_lower(&self) -> bool {
        matches!(self, SLetter::Lower { .. })
    }

    pub fn is_shifted(&self) -> bool {
        match self {
            SLetter::Lower { kind, .. } => kind.shifted(),
            SLetter::Greek { kind, .. } => kind.shifted(),
            SLetter::Upper { .. } => false,
        }
    }

    /// Same letter with its shift set to `shifted`; upper-case letters are unchanged.
    pub(crate) fn with_shift(self, shifted: bool) -> Self {
        match self {
            SLetter::Lower { kind, k, l } => SLetter::Lower {
                kind: LowerKind::with(kind.family(), shifted),
                k,
                l,
            },
            SLetter::Greek { kind, m, n, r } => SLetter::Greek {
                kind: GreekKind::with(kind.family(), shifted),
                m,
                n,
                r,
            },
            upper => upper,
        }
    }

    fn twists_valid(&self) -> bool {
        match self {
            SLetter::Upper { kind, twists, .. } => match kind.class() {
                TwistClass::Odd => twists % 2 == 1,
                TwistClass::Even => twists % 2 == 0,
                TwistClass::Free => true,
            },
            _ => true,
        }
    }

    pub fn is_free_upper(&self) -> bool {
        matches!(self, SLetter::Upper { kind, .. } if kind.class() == TwistClass::Free)
    }
}

impl fmt::Display for SLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SLetter::Lower { kind, k, l } => write!(f, "{}({k},{l})", kind.name()),
            SLetter::Upper { kind, n, twists } => write!(f, "{}({n},{twists})", kind.name()),
            SLetter::Greek { kind, m, n, r } => write!(f, "{}({m},{n},{r})", kind.name()),
        }
    }
}

/// A circular sutured word. Letters are individually valid (twist parities);
/// adjacency is checked separately by [`validate_grammar`]. When a `C` or `F`
/// is present the linearization starts at the first one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SuturedWord {
    letters: Vec<SLetter>,
}

impl SuturedWord {
    pub fn new(mut letters: Vec<SLetter>) -> Result<Self, SuturedError> {
        if letters.is_empty() {
            return Err(SuturedError::Empty);
        }
        if let Some(position) = letters.iter().position(|l| !l.twists_valid()) {
            return Err(SuturedError::TwistParity {
                position,
                letter: letters[position].to_string(),
            });
        }
        if let Some(first) = letters.iter().position(SLetter::is_free_upper) {
            letters.rotate_left(first);
        }
        Ok(Self { letters })
    }

    pub(crate) fn from_raw(letters: Vec<SLetter>) -> Self {
        Self { letters }
    }

    pub fn letters(&self) -> &[SLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for SuturedWord {
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

impl Serialize for SLetter {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl Serialize for SuturedWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn parse_params(body: &str) -> Option<Vec<u32>> {
    body.split(',').map(|p| p.trim().parse().ok()).collect()
}

fn parse_sletter(position: usize, token: &str) -> Result<SLetter, SuturedError> {
    let bad = || SuturedError::Token {
        position,
        token: token.to_string(),
    };
    let (name, rest) = token.split_once('(').ok_or_else(bad)?;
    let body = rest.strip_suffix(')').ok_or_else(bad)?;
    let params = parse_params(body).ok_or_else(bad)?;
    let letter = match (name, params.as_slice()) {
        ("a", &[k, l]) => SLetter::lower(LowerKind::A, k, l),
        ("b", &[k, l]) => SLetter::lower(LowerKind::B, k, l),
        ("c", &[k, l]) => SLetter::lower(LowerKind::C, k, l),
        ("d", &[k, l]) => SLetter::lower(LowerKind::D, k, l),
        ("A", &[n, t]) => SLetter::upper(UpperKind::A, n, t),
        ("B", &[n, t]) => SLetter::upper(UpperKind::B, n, t),
        ("C", &[n, t]) => SLetter::upper(UpperKind::C, n, t),
        ("D", &[n, t]) => SLetter::upper(UpperKind::D, n, t),
        ("E", &[n, t]) => SLetter::upper(UpperKind::E, n, t),
        ("F", &[n, t]) => SLetter::upper(UpperKind::F, n, t),
        ("alpha" | "α", &[m, n, r]) => SLetter::greek(GreekKind::Alpha, m, n, r),
        ("beta" | "β", &[m, n, r]) => SLetter::greek(GreekKind::Beta, m, n, r),
        ("gamma" | "γ", &[m, n, r]) => SLetter::greek(GreekKind::Gamma, m, n, r),
        ("delta" | "δ", &[m, n, r]) => SLetter::greek(GreekKind::Delta, m, n, r),
        _ => return Err(bad()),
    };
    if !letter.twists_valid() {
        return Err(SuturedError::TwistParity {
            position,
            letter: letter.to_string(),
        });
    }
    Ok(letter)
}

/// Parses whitespace-separated tokens such as `a(0,1) B(1,0) alpha(0,1,0)`.
pub fn parse_sutured(text: &str) -> Result<SuturedWord, SuturedError> {
    let letters = text
        .split_whitespace()
        .enumerate()
        .map(|(i, t)| parse_sletter(i, t))
        .collect::<Result<Vec<_>, _>>()?;
    SuturedWord::new(letters)
}

impl FromStr for SuturedWord {
    type Err = SuturedError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_sutured(s)
    }
}

fn may_follow(left: &SLetter, right: &SLetter) -> bool {
    match (left, right) {
        (SLetter::Lower { kind: x, .. }, SLetter::Upper { kind: y, .. }) => {
            x.family() == y.family()
        }
        (SLetter::Upper { kind: x, .. }, SLetter::Greek { kind: y, .. }) => {
            x.family() == y.family()
        }
        (SLetter::Greek { kind: x, .. }, SLetter::Lower { kind: y, .. }) => {
            x.shifted() == y.shifted()
        }
        _ => false,
    }
}

/// First adjacency violation around the circle.
pub fn grammar_violation(w: &SuturedWord) -> Option<SuturedError> {
    let n = w.len();
    (0..n).find_map(|i| {
        let (left, right) = (&w.letters[i], &w.letters[(i + 1) % n]);
        (!may_follow(left, right)).then(|| SuturedError::Grammar {
            position: i,
            left: left.to_string(),
            right: right.to_string(),
        })
    })
}

pub fn validate_grammar(w: &SuturedWord) -> bool {
    !w.is_empty() && grammar_violation(w).is_none()
}

/// Rejects parameter combinations that do not give a sutured manifold: with
/// no `C`/`F` and no shifted letter, the odd blocks `A`/`D` must come in even
/// number (this excludes `aAα`).
pub fn sutured_validity(w: &SuturedWord) -> Result<(), SuturedError> {
    if let Some(e) = grammar_violation(w) {
        return Err(e);
    }
    let letters = w.letters();
    let has_free = letters.iter().any(SLetter::is_free_upper);
    let has_shift = letters.iter().any(SLetter::is_shifted);
    let odd = letters
        .iter()
        .filter(|l| matches!(l, SLetter::Upper { kind, .. } if kind.class() == TwistClass::Odd))
        .count();
    if !has_free && !has_shift && odd % 2 == 1 {
        return Err(SuturedError::NotSutured(format!(
            "{odd} odd twist blocks with no C/F block and no shifted letter"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> SuturedWord {
        parse_sutured(text).unwrap()
    }

    #[test]
    fn grammar_examples() {
        assert!(validate_grammar(&w("a(0,0) A(0,1) alpha(0,0,0)")));
        assert!(!validate_grammar(&w("a(0,0) D(0,1) gamma(0,0,0)")));
        assert!(validate_grammar(&w(
            "a(0,1) B(1,0) alpha(0,1,0) a(0,1) C(1,0) alpha(0,1,0)"
        )));
        assert!(!validate_grammar(&w("a(0,1) B(1,0) beta(0,1,0)")));
        assert!(!validate_grammar(&w(
            "b(0,1) E(1,0) delta(0,1,0) d(0,0) B(0,2) beta(1,1,1)"
        )));
        assert!(!validate_grammar(&w("b(0,1) B(1,0) delta(0,1,0)")));
        assert!(validate_grammar(&w("d(0,1) E(1,0) delta(0,1,0)")));
    }

    #[test]
    fn dsl_round_trip_and_rotation() {
        let text = "a(0,1) B(1,0) alpha(0,1,0) a(0,1) C(1,3) alpha(0,1,0)";
        let word = w(text);
        assert_eq!(
            word.to_string(),
            "C(1,3) alpha(0,1,0) a(0,1) B(1,0) alpha(0,1,0) a(0,1)"
        );
        assert_eq!(w(&word.to_string()), word);
        assert_eq!(
            w("α(0,1,0) a(0,1) C(0,0)").to_string(),
            "C(0,0) alpha(0,1,0) a(0,1)"
        );
    }

    #[test]
    fn dsl_errors() {
        assert!(matches!(
            parse_sutured("a(0,1) B(1,1) alpha(0,1,0)"),
            Err(SuturedError::TwistParity { position: 1, .. })
        ));
        assert!(matches!(
            parse_sutured("a(0,1) A(1,2) alpha(0,1,0)"),
            Err(SuturedError::TwistParity { .. })
        ));
        assert!(matches!(
            parse_sutured("a(0) B(1,0) alpha(0,1,0)"),
            Err(SuturedError::Token { position: 0, .. })
        ));
        assert!(matches!(
            parse_sutured("x(0,0)"),
            Err(SuturedError::Token { .. })
        ));
        assert!(matches!(
            parse_sutured("a(0,-1)"),
            Err(SuturedError::Token { .. })
        ));
        assert_eq!(parse_sutured(" "), Err(SuturedError::Empty));
    }

    #[test]
    fn validity_excludes_lone_odd_block() {
        assert!(matches!(
            sutured_validity(&w("a(0,0) A(0,1) alpha(0,0,0)")),
            Err(SuturedError::NotSutured(_))
        ));
        assert!(sutured_validity(&w("b(0,0) A(0,1) beta(0,0,0)")).is_ok());
        assert!(
            sutured_validity(&w("a(0,0) A(0,1) alpha(0,0,0) a(0,0) A(0,3) alpha(0,0,0)")).is_ok()
        );
        assert!(
            sutured_validity(&w("a(0,0) A(0,1) alpha(0,0,0) a(0,0) C(0,0) alpha(0,0,0)")).is_ok()
        );
    }
}
