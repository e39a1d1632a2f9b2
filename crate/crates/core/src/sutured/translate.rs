use crate::linkword::{counts, Pairing, Passage, Side, Sign, SignedWord, WordLetter};

use super::{
    Family, GreekKind, LowerKind, SLetter, SuturedError, SuturedWord, TwistClass, UpperKind,
};

fn passage_kinds(p: Passage) -> (GreekKind, LowerKind) {
    match p {
        Passage::A => (GreekKind::Alpha, LowerKind::A),
        Passage::B => (GreekKind::Gamma, LowerKind::C),
        Passage::C => (GreekKind::Alpha, LowerKind::C),
        Passage::D => (GreekKind::Gamma, LowerKind::A),
    }
}

/// Sutured word of the complementary manifold after decomposing along the
/// discs of each passage and the tubes of each chord.
///
/// Passages become `αa`, `γc`, `αc` or `γa`; separators become `A`/`B`/`C`
/// after an `a` and `D`/`E`/`F` after a `c`, with `n = 0` inside a joining
/// word. At a tube end carrying the minority sign, the `a`/`c` gets `k = 1`
/// on the forward end of the joining word and the Greek letter gets `m = 1`
/// on the starting end.
pub fn derive_wr(
    sw: &SignedWord,
    pairing: &Pairing,
    framing_twists: u32,
) -> Result<SuturedWord, SuturedError> {
    if sw.is_empty() {
        return Err(SuturedError::Empty);
    }
    let letters = sw.word().letters();
    let len = letters.len();
    let c = counts(sw);
    let minority = if c.n_plus >= c.n_minus {
        Sign::Minus
    } else {
        Sign::Plus
    };
    let partner = pairing.partner_map(len);

    let last_exit = letters
        .iter()
        .rev()
        .find_map(WordLetter::as_passage)
        .expect("nonempty words contain a passage");
    let mut family = match last_exit.exit() {
        Side::Below => Family::Abc,
        Side::Above => Family::Def,
    };

    let mut out = Vec::with_capacity(len / 2 * 3);
    for (pos, letter) in letters.iter().enumerate() {
        match letter {
            WordLetter::Separator(s) => {
                let class = if s.is_infinity {
                    TwistClass::Free
                } else if s.is_odd() {
                    TwistClass::Odd
                } else {
                    TwistClass::Even
                };
                let twists = if s.is_infinity {
                    framing_twists
                } else {
                    s.twists
                };
                let n = u32::from(
                    !pairing
                        .separator_in_joining
                        .get(pos)
                        .copied()
                        .unwrap_or(false),
                );
                out.push(SLetter::upper(UpperKind::with(family, class), n, twists));
            }
            WordLetter::Passage(p) => {
                let (greek, lower) = passage_kinds(*p);
                let minor = sw.passage_sign(pos) == minority;
                let (g, l) = match partner[pos] {
                    None => (SLetter::greek(greek, 0, 1, 0), SLetter::lower(lower, 0, 1)),
                    Some(chord) if chord.left == pos => (
                        SLetter::greek(greek, u32::from(minor), 1, 0),
                        SLetter::lower(lower, 0, 0),
                    ),
                    Some(_) => (
                        SLetter::greek(greek, 0, 0, 0),
                        SLetter::lower(lower, u32::from(minor), 1),
                    ),
                };
                out.push(g);
                out.push(l);
                family = lower.family();
            }
        }
    }
    SuturedWord::new(out)
}
