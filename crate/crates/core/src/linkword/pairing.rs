use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::signs::{counts, Sign, SignedWord};

pub const DEFAULT_ORACLE_BOUND: usize = 16;
pub const ORACLE_BOUND_ENV: &str = "BRIDGEGENUS_MAX_ORACLE";

/// Upper bound on passage count for exhaustive searches, read from
/// `BRIDGEGENUS_MAX_ORACLE` and defaulting to 16.
pub fn oracle_bound() -> usize {
    std::env::var(ORACLE_BOUND_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ORACLE_BOUND)
}

/// Two paired passages, given as letter positions. The joining word is the
/// arc running forward (cyclically) from `left` to `right`; it contains the
/// infinity separator exactly when `left > right`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Chord {
    pub left: usize,
    pub right: usize,
}

impl Chord {
    pub fn contains_infinity(&self) -> bool {
        self.left > self.right
    }

    /// Letter positions strictly inside the joining word of a word of length `len`.
    pub fn joining_positions(&self, len: usize) -> impl Iterator<Item = usize> {
        let span = (self.right + len - self.left) % len;
        let left = self.left;
        (1..span).map(move |d| (left + d) % len)
    }

    fn ends(&self) -> (usize, usize) {
        (self.left.min(self.right), self.left.max(self.right))
    }

    pub fn crosses(&self, other: &Chord) -> bool {
        let (a, b) = self.ends();
        let (c, d) = other.ends();
        (a < c && c < b && b < d) || (c < a && a < d && d < b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pairing {
    pub chords: Vec<Chord>,
    /// Indexed by letter position; true for separators strictly inside some
    /// joining word. Always false at passage positions.
    pub separator_in_joining: Vec<bool>,
}

impl Pairing {
    pub fn from_chords(sw: &SignedWord, mut chords: Vec<Chord>) -> Self {
        chords.sort();
        let len = sw.len();
        let letters = sw.word().letters();
        let mut separator_in_joining = vec![false; len];
        for chord in &chords {
            for pos in chord.joining_positions(len) {
                if !letters[pos].is_passage() {
                    separator_in_joining[pos] = true;
                }
            }
        }
        Self {
            chords,
            separator_in_joining,
        }
    }

    pub fn size(&self) -> usize {
        self.chords.len()
    }

    /// For each letter position, the chord it is an end of, if any.
    pub fn partner_map(&self, len: usize) -> Vec<Option<Chord>> {
        let mut map = vec![None; len];
        for chord in &self.chords {
            map[chord.left] = Some(*chord);
            map[chord.right] = Some(*chord);
        }
        map
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairingError {
    #[error("word has {passages} passages, above the exhaustive-search bound {bound}")]
    TooLarge { passages: usize, bound: usize },
    #[error("chord end {0} is not a passage position")]
    NotPassage(usize),
    #[error("passage {0} is used by more than one chord")]
    Reused(usize),
    #[error("chord ({0}, {1}) joins passages of the same sign")]
    SameSign(usize, usize),
    #[error("chords ({0}, {1}) and ({2}, {3}) cross")]
    Crossing(usize, usize, usize, usize),
    #[error("joining word of chord ({0}, {1}) contains an unpaired passage")]
    UnpairedInside(usize, usize),
    #[error("separator flags disagree with the chord set")]
    Flags,
    #[error("pairing has {found} chords but {expected} are possible")]
    NotMaximal { found: usize, expected: usize },
}

/// Checks the structural pairing rules (not maximality).
pub fn validate_pairing(sw: &SignedWord, pairing: &Pairing) -> Result<(), PairingError> {
    let len = sw.len();
    let letters = sw.word().letters();
    let mut used = vec![false; len];
    for chord in &pairing.chords {
        for end in [chord.left, chord.right] {
            if end >= len || !letters[end].is_passage() {
                return Err(PairingError::NotPassage(end));
            }
            if used[end] {
                return Err(PairingError::Reused(end));
            }
            used[end] = true;
        }
        if sw.passage_sign(chord.left) == sw.passage_sign(chord.right) {
            return Err(PairingError::SameSign(chord.left, chord.right));
        }
    }
    for (i, x) in pairing.chords.iter().enumerate() {
        for y in &pairing.chords[i + 1..] {
            if x.crosses(y) {
                return Err(PairingError::Crossing(x.left, x.right, y.left, y.right));
            }
        }
    }
    for chord in &pairing.chords {
        if chord
            .joining_positions(len)
            .any(|p| letters[p].is_passage() && !used[p])
        {
            return Err(PairingError::UnpairedInside(chord.left, chord.right));
        }
    }
    if Pairing::from_chords(sw, pairing.chords.clone()).separator_in_joining
        != pairing.separator_in_joining
    {
        return Err(PairingError::Flags);
    }
    Ok(())
}

/// Structural rules plus cardinality `min(N+, N-)`.
pub fn validate_maximal_pairing(sw: &SignedWord, pairing: &Pairing) -> Result<(), PairingError> {
    validate_pairing(sw, pairing)?;
    let expected = counts(sw).min() as usize;
    if pairing.size() != expected {
        return Err(PairingError::NotMaximal {
            found: pairing.size(),
            expected,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy)]
enum Item {
    Passage(usize),
    Separator { odd: bool },
}

impl Item {
    fn is_odd(&self) -> bool {
        matches!(self, Item::Separator { odd: true })
    }

    fn is_even(&self) -> bool {
        matches!(self, Item::Separator { odd: false })
    }

    fn passage(&self) -> Option<usize> {
        match self {
            Item::Passage(p) => Some(*p),
            Item::Separator { .. } => None,
        }
    }
}

/// Builds a maximal pairing by the two reduction moves: pair `P O P O` and
/// delete it, or pair `E P O P E` and replace it with a single `O`. The first
/// applicable window in word order wins, with the first move preferred.
pub fn pair_greedy(sw: &SignedWord) -> Pairing {
    let mut items: Vec<Item> = sw
        .word()
        .letters()
        .iter()
        .enumerate()
        .map(|(pos, l)| match l.as_separator() {
            Some(s) => Item::Separator { odd: s.is_odd() },
            None => Item::Passage(pos),
        })
        .collect();
    let mut chords = Vec::new();

    while items.iter().any(Item::is_odd) {
        let n = items.len();
        let at = |items: &[Item], s: usize, d: usize| items[(s + d) % n];
        let mut applied = false;

        if n >= 4 {
            for s in 0..n {
                let window = [0, 1, 2, 3].map(|d| at(&items, s, d));
                if let (Some(left), true, Some(right), true) = (
                    window[0].passage(),
                    window[1].is_odd(),
                    window[2].passage(),
                    window[3].is_odd(),
                ) {
                    chords.push(Chord { left, right });
                    items = splice(&items, s, 4, None);
                    applied = true;
                    break;
                }
            }
        }
        if !applied && n >= 6 {
            for s in 0..n {
                let window = [0, 1, 2, 3, 4].map(|d| at(&items, s, d));
                if let (true, Some(left), true, Some(right), true) = (
                    window[0].is_even(),
                    window[1].passage(),
                    window[2].is_odd(),
                    window[3].passage(),
                    window[4].is_even(),
                ) {
                    chords.push(Chord { left, right });
                    items = splice(&items, s, 5, Some(Item::Separator { odd: true }));
                    applied = true;
                    break;
                }
            }
        }
        assert!(
            applied,
            "no reduction move applies to a word with an odd separator"
        );
    }
    Pairing::from_chords(sw, chords)
}

/// Removes the cyclic window `start..start+width` and optionally puts
/// `replacement` in its place, preserving cyclic order.
fn splice(items: &[Item], start: usize, width: usize, replacement: Option<Item>) -> Vec<Item> {
    let n = items.len();
    let inside = |i: usize| (i + n - start) % n < width;
    let mut out = Vec::with_capacity(n);
    for (i, item) in items.iter().enumerate() {
        if i == start {
            out.extend(replacement);
        }
        if !inside(i) {
            out.push(*item);
        }
    }
    out
}

struct Search<'a> {
    positions: Vec<usize>,
    signs: Vec<Sign>,
    sw: &'a SignedWord,
    best: usize,
    keep_all: bool,
    limit: usize,
    found: Vec<Vec<Chord>>,
}

impl Search<'_> {
    fn run(&mut self, idx: usize, stack: &mut Vec<usize>, pairs: &mut Vec<(usize, usize)>) {
        let m = self.positions.len();
        let possible = pairs.len() + (stack.len().min(m - idx) + (m - idx)) / 2;
        if possible < self.best
            || (!self.keep_all && possible == self.best && !self.found.is_empty())
        {
            return;
        }
        if self.keep_all && self.found.len() >= self.limit && possible == self.best {
            return;
        }
        if idx == m {
            if stack.is_empty() {
                self.accept(pairs);
            }
            return;
        }
        // leave unpaired
        self.run(idx + 1, stack, pairs);
        // open a chord
        stack.push(idx);
        self.run(idx + 1, stack, pairs);
        stack.pop();
        // close the innermost open chord
        if let Some(&top) = stack.last() {
            if self.signs[top] != self.signs[idx] {
                stack.pop();
                pairs.push((top, idx));
                self.run(idx + 1, stack, pairs);
                pairs.pop();
                stack.push(top);
            }
        }
    }

    fn accept(&mut self, pairs: &[(usize, usize)]) {
        let m = self.positions.len();
        let mut paired = vec![false; m];
        for &(i, j) in pairs {
            paired[i] = true;
            paired[j] = true;
        }
        let mut chords = Vec::with_capacity(pairs.len());
        for &(i, j) in pairs {
            let (pi, pj) = (self.positions[i], self.positions[j]);
            if (i + 1..j).all(|x| paired[x]) {
                chords.push(Chord {
                    left: pi,
                    right: pj,
                });
            } else if (0..i).chain(j + 1..m).all(|x| paired[x]) {
                chords.push(Chord {
                    left: pj,
                    right: pi,
                });
            } else {
                return;
            }
        }
        if chords.len() > self.best {
            self.best = chords.len();
            self.found.clear();
        }
        if chords.len() == self.best
            && (self.found.is_empty() || self.keep_all)
            && self.found.len() < self.limit
        {
            self.found.push(chords);
        }
    }

    fn new(
        sw: &SignedWord,
        bound: usize,
        keep_all: bool,
        limit: usize,
    ) -> Result<Search<'_>, PairingError> {
        let passages = sw.signed_passages();
        if passages.len() > bound {
            return Err(PairingError::TooLarge {
                passages: passages.len(),
                bound,
            });
        }
        Ok(Search {
            positions: passages.iter().map(|&(p, _)| p).collect(),
            signs: passages.iter().map(|&(_, s)| s).collect(),
            sw,
            best: 0,
            keep_all,
            limit: limit.max(1),
            found: Vec::new(),
        })
    }

    fn finish(mut self) -> Vec<Pairing> {
        if self.found.is_empty() {
            self.found.push(Vec::new());
        }
        let sw = self.sw;
        self.found
            .into_iter()
            .map(|c| Pairing::from_chords(sw, c))
            .collect()
    }
}

/// Exhaustive search over all non-crossing opposite-sign chord sets that
/// satisfy the joining-word rule; returns one of maximum size. When both
/// arcs of a chord qualify, the arc avoiding the infinity separator is used.
pub fn pair_bruteforce(sw: &SignedWord, bound: usize) -> Result<Pairing, PairingError> {
    let mut search = Search::new(sw, bound, false, 1)?;
    search.run(0, &mut Vec::new(), &mut Vec::new());
    Ok(search.finish().remove(0))
}

/// Up to `limit` distinct maximum-size pairings, in search order.
pub fn all_maximal_pairings(
    sw: &SignedWord,
    bound: usize,
    limit: usize,
) -> Result<Vec<Pairing>, PairingError> {
    let mut search = Search::new(sw, bound, true, limit)?;
    search.run(0, &mut Vec::new(), &mut Vec::new());
    Ok(search.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkword::{assign_signs, parse_word, NINE_PASSAGE_EXAMPLE};

    fn signed(text: &str) -> SignedWord {
        assign_signs(&parse_word(text).unwrap())
    }

    #[test]
    fn nine_passage_example_greedy_chords() {
        let sw = signed(NINE_PASSAGE_EXAMPLE);
        let p = pair_greedy(&sw);
        // passage k sits at letter position 2k - 1
        let expected = [(1, 8), (2, 5), (3, 4), (6, 7)].map(|(a, b)| Chord {
            left: 2 * a - 1,
            right: 2 * b - 1,
        });
        assert_eq!(p.chords, expected.to_vec());
        validate_maximal_pairing(&sw, &p).unwrap();
    }

    #[test]
    fn nine_passage_example_both_printed_pairings_are_valid() {
        let sw = signed(NINE_PASSAGE_EXAMPLE);
        let pos = |k: usize| 2 * k - 1;
        let first = [(3, 4), (2, 5), (6, 7), (8, 9)];
        // (2,4) and (1,5) join through the infinity letter
        let second = [(4, 2), (5, 1), (7, 8), (6, 9)];
        for pairs in [first, second] {
            let chords = pairs
                .iter()
                .map(|&(a, b)| Chord {
                    left: pos(a),
                    right: pos(b),
                })
                .collect();
            validate_maximal_pairing(&sw, &Pairing::from_chords(&sw, chords)).unwrap();
        }
        assert_eq!(pair_bruteforce(&sw, 16).unwrap().size(), 4);
        let all = all_maximal_pairings(&sw, 16, 1000).unwrap();
        assert!(all.len() >= 2);
        for p in &all {
            validate_maximal_pairing(&sw, p).unwrap();
        }
    }

    #[test]
    fn no_odd_separator_gives_empty_pairing() {
        let sw = signed("*E:0 A E:2 A E:0 A");
        assert_eq!(pair_greedy(&sw).size(), 0);
        assert_eq!(pair_bruteforce(&sw, 16).unwrap().size(), 0);
    }

    #[test]
    fn two_passage_odd_word() {
        let sw = signed("*O:1 A O:1 A");
        let p = pair_greedy(&sw);
        assert_eq!(p.size(), 1);
        validate_maximal_pairing(&sw, &p).unwrap();
        assert_eq!(pair_bruteforce(&sw, 16).unwrap().size(), 1);
    }

    #[test]
    fn bound_is_enforced() {
        let sw = signed(NINE_PASSAGE_EXAMPLE);
        assert_eq!(
            pair_bruteforce(&sw, 8),
            Err(PairingError::TooLarge {
                passages: 9,
                bound: 8
            })
        );
    }

    #[test]
    fn validation_catches_bad_pairings() {
        let sw = signed(NINE_PASSAGE_EXAMPLE);
        let pos = |k: usize| 2 * k - 1;
        let bad = |pairs: &[(usize, usize)]| {
            let chords = pairs
                .iter()
                .map(|&(a, b)| Chord {
                    left: pos(a),
                    right: pos(b),
                })
                .collect();
            validate_pairing(&sw, &Pairing::from_chords(&sw, chords))
        };
        assert!(matches!(bad(&[(1, 2)]), Err(PairingError::SameSign(..))));
        assert!(matches!(
            bad(&[(3, 4), (2, 4)]),
            Err(PairingError::Reused(_))
        ));
        assert!(matches!(
            bad(&[(2, 5), (3, 6)]),
            Err(PairingError::UnpairedInside(..)) | Err(PairingError::Crossing(..))
        ));
        assert!(matches!(
            bad(&[(6, 9)]),
            Err(PairingError::UnpairedInside(..))
        ));
    }
}
