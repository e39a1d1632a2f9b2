//! Scans the 4-plat braid of a continued fraction to produce the passage word.

use thiserror::Error;

use crate::linkword::{
    assign_signs, choose_infinity_parity, is_two_component, ContinuedFraction, PartialWord,
    Passage, Separator, Side, SignedWord, WordError, WordLetter,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeriveError {
    #[error("{0} is not a two-component link (odd denominator)")]
    NotTwoComponent(ContinuedFraction),
    #[error("the wandering strand never meets the disc: the link is the two-component unlink")]
    Unlink,
    #[error("braid scan of {cf} disagrees with the denominator test (wandering strand ends at position {end})")]
    Inconsistent { cf: ContinuedFraction, end: u8 },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Positions run 1..=4 from bottom to top; position 1 always holds the static
/// strand of the undoubled component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlatState {
    pub position_of_wandering: u8,
    pub side_of_disc: Side,
    pub pending_twists: u32,
}

impl PlatState {
    fn start() -> Self {
        Self {
            position_of_wandering: 2,
            side_of_disc: Side::Below,
            pending_twists: 0,
        }
    }

    pub fn positions_of_doubled(&self) -> [u8; 2] {
        match self.position_of_wandering {
            2 => [3, 4],
            3 => [2, 4],
            _ => [2, 3],
        }
    }
}

fn side_at(position: u8) -> Side {
    if position == 2 {
        Side::Below
    } else {
        Side::Above
    }
}

/// Generator pair acted on by block `index` (0-based): σ2 for even indices,
/// σ3 for odd ones.
fn block_pair(index: usize) -> (u8, u8) {
    if index.is_multiple_of(2) {
        (2, 3)
    } else {
        (3, 4)
    }
}

/// Runs the braid scan and returns the letters after the infinity separator
/// together with the final position of the wandering strand.
fn scan(cf: &ContinuedFraction) -> (Vec<WordLetter>, u8) {
    let mut state = PlatState::start();
    let mut letters = Vec::new();
    let mut entry = Side::Below;
    for (index, &a) in cf.coefficients().iter().enumerate() {
        let (lo, hi) = block_pair(index);
        for _ in 0..a {
            let w = state.position_of_wandering;
            if w != lo && w != hi {
                state.pending_twists += 1;
                continue;
            }
            let target = if w == lo { hi } else { lo };
            if target == 3 {
                if !letters.is_empty() {
                    letters.push(WordLetter::Separator(Separator::new(state.pending_twists)));
                }
                state.pending_twists = 0;
                entry = state.side_of_disc;
            } else {
                let exit = side_at(target);
                letters.push(WordLetter::Passage(Passage::from_sides(entry, exit)));
                state.side_of_disc = exit;
            }
            state.position_of_wandering = target;
        }
    }
    (letters, state.position_of_wandering)
}

/// The word with its infinity separator still open.
pub fn derive_partial(cf: &ContinuedFraction) -> Result<PartialWord, DeriveError> {
    let two = is_two_component(cf);
    let (letters, end) = scan(cf);
    if two != (end == 2) {
        return Err(DeriveError::Inconsistent {
            cf: cf.clone(),
            end,
        });
    }
    if !two {
        return Err(DeriveError::NotTwoComponent(cf.clone()));
    }
    if letters.is_empty() {
        return Err(DeriveError::Unlink);
    }
    Ok(PartialWord { letters })
}

/// Signed word of the link; the infinity separator carries `framing_twists`,
/// raised by one when its parity is forced the other way.
pub fn derive_word(cf: &ContinuedFraction, framing_twists: u32) -> Result<SignedWord, DeriveError> {
    let partial = derive_partial(cf)?;
    let word = choose_infinity_parity(&partial, framing_twists, false)?;
    Ok(assign_signs(&word))
}

/// Half the signed count of crossings between the two components.
pub fn linking_number(cf: &ContinuedFraction) -> Result<i64, DeriveError> {
    if !is_two_component(cf) {
        return Err(DeriveError::NotTwoComponent(cf.clone()));
    }
    // strand ids: 0 static, 1 wandering, 2 and 3 the doubled component
    const COMPONENT: [u8; 4] = [0, 0, 1, 1];
    const ORIENTATION: [i64; 4] = [1, 1, 1, -1];
    let mut at = [0usize, 0, 1, 2, 3];
    let mut total = 0i64;
    for (index, &a) in cf.coefficients().iter().enumerate() {
        let (lo, hi) = block_pair(index);
        let epsilon = if index % 2 == 0 { 1 } else { -1 };
        for _ in 0..a {
            let (x, y) = (at[lo as usize], at[hi as usize]);
            if COMPONENT[x] != COMPONENT[y] {
                total += epsilon * ORIENTATION[x] * ORIENTATION[y];
            }
            at.swap(lo as usize, hi as usize);
        }
    }
    debug_assert!(total % 2 == 0);
    Ok(total / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkword::{counts, format_word, Counts};
    use proptest::prelude::*;

    fn cf(v: &[u32]) -> ContinuedFraction {
        ContinuedFraction::new(v.to_vec()).unwrap()
    }

    fn word_of(v: &[u32], framing: u32) -> String {
        format_word(derive_word(&cf(v), framing).unwrap().word())
    }

    #[test]
    fn hand_derived_words() {
        assert_eq!(word_of(&[2], 0), "*E:0 A");
        assert_eq!(word_of(&[1, 2, 1], 0), "*E:0 C E:0 D");
        assert_eq!(word_of(&[2, 2, 2], 0), "*E:0 A E:2 A");
        assert_eq!(word_of(&[1, 1, 1, 1, 1], 1), "*O:1 C O:1 D");
    }

    #[test]
    fn framing_parity_is_adjusted() {
        assert_eq!(word_of(&[2, 2, 2], 3), "*E:4 A E:2 A");
        assert_eq!(word_of(&[1, 1, 1, 1, 1], 0), "*O:1 C O:1 D");
    }

    #[test]
    fn whitehead_link_counts() {
        let sw = derive_word(&cf(&[1, 1, 1, 1, 1]), 1).unwrap();
        assert_eq!(counts(&sw), Counts::new(1, 1));
        assert_eq!(linking_number(&cf(&[1, 1, 1, 1, 1])).unwrap(), 0);
    }

    #[test]
    fn linking_numbers() {
        assert_eq!(linking_number(&cf(&[2])).unwrap().abs(), 1);
        assert_eq!(linking_number(&cf(&[1, 2, 1])).unwrap().abs(), 2);
        assert_eq!(linking_number(&cf(&[2, 2, 2])).unwrap().abs(), 2);
        assert!(matches!(
            linking_number(&cf(&[1, 1, 1])),
            Err(DeriveError::NotTwoComponent(_))
        ));
    }

    #[test]
    fn knots_are_rejected() {
        assert!(matches!(
            derive_word(&cf(&[1, 1, 1]), 0),
            Err(DeriveError::NotTwoComponent(_))
        ));
        assert!(matches!(
            derive_word(&cf(&[3]), 0),
            Err(DeriveError::NotTwoComponent(_))
        ));
    }

    #[test]
    fn plat_state_partition() {
        let s = PlatState::start();
        assert_eq!(s.positions_of_doubled(), [3, 4]);
    }

    fn any_cf() -> impl Strategy<Value = ContinuedFraction> {
        (0usize..4)
            .prop_flat_map(|h| prop::collection::vec(1u32..6, 2 * h + 1))
            .prop_map(|v| ContinuedFraction::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn scan_agrees_with_denominator(c in any_cf()) {
            let (_, end) = scan(&c);
            prop_assert_eq!(end == 2, is_two_component(&c));
        }

        #[test]
        fn winding_matches_linking_number(c in any_cf(), f in 0u32..3) {
            prop_assume!(is_two_component(&c));
            let sw = derive_word(&c, f).unwrap();
            prop_assert_eq!(counts(&sw).winding() as i64, linking_number(&c).unwrap().abs());
        }
    }
}
