use std::fmt;

use serde::Serialize;

use super::{grammar_violation, sutured_validity, SLetter, SuturedError, SuturedWord, TwistClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    Taut,
    NotTaut,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Taut => "Taut",
            Verdict::NotTaut => "NotTaut",
        })
    }
}

/// `NotTaut` exactly when every letter is one of `a c α γ B E` and every
/// `B`/`E` has no twists.
pub fn taut_closed_form(w: &SuturedWord) -> Result<Verdict, SuturedError> {
    if w.is_empty() {
        return Err(SuturedError::Empty);
    }
    if let Some(e) = grammar_violation(w) {
        return Err(e);
    }
    let plain = w.letters().iter().all(|l| match l {
        SLetter::Upper { kind, twists, .. } => kind.class() == TwistClass::Even && *twists == 0,
        other => !other.is_shifted(),
    });
    Ok(if plain {
        Verdict::NotTaut
    } else {
        Verdict::Taut
    })
}

/// The letter the reduction never consumes: the first `C`/`F`, otherwise the
/// first `A`/`D` or `B`/`E` with at least two twists.
pub fn preserved_letter(w: &SuturedWord) -> Option<usize> {
    let letters = w.letters();
    letters.iter().position(SLetter::is_free_upper).or_else(|| {
        letters.iter().position(|l| match l {
            SLetter::Upper { kind, twists, .. } => match kind.class() {
                TwistClass::Odd => true,
                TwistClass::Even => *twists >= 2,
                TwistClass::Free => false,
            },
            _ => false,
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub position: usize,
    pub consumed: [SLetter; 3],
    /// The preceding Greek letter and the following lower-case letter after the step.
    pub replacement: [SLetter; 2],
    /// Even-twist block decomposed the other way round, leaving a shifted junction.
    pub alternative: bool,
    pub suture_crossings: u64,
    pub product_disc: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Terminal {
    SolidTorusLongitudinal { sutures: u64 },
    Other { description: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub terminal: Terminal,
}

struct Triple {
    k: u64,
    l: u64,
    twists: u64,
    class: TwistClass,
    m: u64,
    r: u64,
    shift_in: bool,
    shift_out: bool,
}

fn triple_at(letters: &[SLetter], pos: usize) -> Result<Triple, SuturedError> {
    let n = letters.len();
    let (lower, upper, greek) = (letters[pos], letters[(pos + 1) % n], letters[(pos + 2) % n]);
    let SLetter::Lower { kind: lk, k, l } = lower else {
        return Err(SuturedError::NotLower(pos));
    };
    let grammar = |at: usize| SuturedError::Grammar {
        position: at % n,
        left: letters[at % n].to_string(),
        right: letters[(at + 1) % n].to_string(),
    };
    let SLetter::Upper {
        kind: uk, twists, ..
    } = upper
    else {
        return Err(grammar(pos));
    };
    let SLetter::Greek { kind: gk, m, r, .. } = greek else {
        return Err(grammar(pos + 1));
    };
    if lk.family() != uk.family() {
        return Err(grammar(pos));
    }
    if uk.family() != gk.family() {
        return Err(grammar(pos + 1));
    }
    Ok(Triple {
        k: k.into(),
        l: l.into(),
        twists: twists.into(),
        class: uk.class(),
        m: m.into(),
        r: r.into(),
        shift_in: lk.shifted(),
        shift_out: gk.shifted(),
    })
}

impl Triple {
    /// Parallel sutures met by the decomposing disc, excluding twists.
    fn arcs(&self) -> u64 {
        self.k
            + self.l
            + self.m
            + u64::from(self.shift_in)
            + u64::from(self.shift_out) * (self.r + 1)
    }

    fn alternative(&self) -> bool {
        self.class == TwistClass::Even && self.twists >= 2
    }

    fn flips(&self) -> bool {
        self.twists % 2 == 1 || self.alternative()
    }
}

/// Decomposes along the disc through the three-letter subword starting at the
/// lower-case letter `pos`, removing it. The neighbouring junction becomes
/// shifted when either side was shifted or the consumed block flips it.
pub fn reduce_step(
    w: &SuturedWord,
    pos: usize,
) -> Result<(SuturedWord, ReductionStep), SuturedError> {
    let letters = w.letters();
    let n = letters.len();
    if n < 6 {
        return Err(SuturedError::TooShort(n));
    }
    if pos >= n {
        return Err(SuturedError::NotLower(pos));
    }
    let triple = triple_at(letters, pos)?;
    let window = [pos, (pos + 1) % n, (pos + 2) % n];
    if preserved_letter(w).is_some_and(|p| window.contains(&p)) {
        return Err(SuturedError::Preserved(pos));
    }
    let junction = triple.shift_in || triple.shift_out || triple.flips();
    let prev = (pos + n - 1) % n;
    let next = (pos + 3) % n;
    let crossings = 2 * (triple.arcs() + triple.twists);

    let mut out = Vec::with_capacity(n - 3);
    for (i, letter) in letters.iter().enumerate() {
        if window.contains(&i) {
            continue;
        }
        out.push(if i == prev || i == next {
            letter.with_shift(junction)
        } else {
            *letter
        });
    }
    let step = ReductionStep {
        position: pos,
        consumed: window.map(|i| letters[i]),
        replacement: [
            letters[prev].with_shift(junction),
            letters[next].with_shift(junction),
        ],
        alternative: triple.alternative(),
        suture_crossings: crossings,
        product_disc: crossings == 2,
    };
    Ok((SuturedWord::from_raw(out), step))
}

fn terminal(w: &SuturedWord) -> Result<(Verdict, Terminal), SuturedError> {
    let letters = w.letters();
    let pos = letters
        .iter()
        .position(SLetter::is_lower)
        .ok_or(SuturedError::NotLower(0))?;
    let t = triple_at(letters, pos)?;
    let base = t.k + t.l + t.m;
    let longitudinal = |sutures| (Verdict::Taut, Terminal::SolidTorusLongitudinal { sutures });
    if t.shift_in {
        return Ok(longitudinal(2 * (base + t.r + 2)));
    }
    match t.class {
        TwistClass::Free => Ok(longitudinal(2 * base)),
        TwistClass::Even if t.twists >= 2 => Ok(longitudinal(2 * (base + t.twists))),
        TwistClass::Even => Ok((
            Verdict::NotTaut,
            Terminal::Other {
                description: "solid torus with meridional sutures".into(),
            },
        )),
        TwistClass::Odd => Err(SuturedError::NotSutured(format!("{w} closes up badly"))),
    }
}

/// Reduces three letters at a time, always at the first subword avoiding the
/// preserved letter, and classifies the final three-letter word.
pub fn taut_by_reduction(w: &SuturedWord) -> Result<(Verdict, ReductionTrace), SuturedError> {
    if w.is_empty() {
        return Err(SuturedError::Empty);
    }
    sutured_validity(w)?;
    let mut current = w.clone();
    let mut steps = Vec::with_capacity(w.len() / 3);
    while current.len() > 3 {
        let n = current.len();
        let keep = preserved_letter(&current);
        let pos = (0..n)
            .find(|&i| {
                current.letters()[i].is_lower()
                    && keep.is_none_or(|p| ![i, (i + 1) % n, (i + 2) % n].contains(&p))
            })
            .expect("a word of length six has two disjoint subwords");
        let (next, step) = reduce_step(&current, pos)?;
        steps.push(step);
        current = next;
    }
    let (verdict, terminal) = terminal(&current)?;
    Ok((verdict, ReductionTrace { steps, terminal }))
}

/// True when every decomposition is along a product disc and the reduction
/// ends at a solid torus with two longitudinal sutures.
pub fn product_by_reduction(w: &SuturedWord) -> Result<bool, SuturedError> {
    let (verdict, trace) = taut_by_reduction(w)?;
    if verdict != Verdict::Taut {
        return Err(SuturedError::NotTaut);
    }
    Ok(trace.steps.iter().all(|s| s.product_disc)
        && trace.terminal == Terminal::SolidTorusLongitudinal { sutures: 2 })
}

fn representative(p: u32) -> u32 {
    if p <= 3 {
        p
    } else {
        2 + p % 2
    }
}

/// Reduces twist counts and suture multiplicities to small representatives of
/// the same parity (values above 3 become 2 or 3). A lower-case letter before
/// an odd block keeps only the parity of `k`.
pub fn normalize(w: &SuturedWord) -> SuturedWord {
    let letters = w.letters();
    let n = letters.len();
    let out = letters
        .iter()
        .enumerate()
        .map(|(i, letter)| match *letter {
            SLetter::Lower { kind, k, l } => {
                let before_odd = matches!(
                    letters[(i + 1) % n],
                    SLetter::Upper { kind: u, .. } if u.class() == TwistClass::Odd
                );
                let k = if before_odd { k % 2 } else { representative(k) };
                SLetter::Lower {
                    kind,
                    k,
                    l: representative(l),
                }
            }
            SLetter::Upper { kind, n, twists } => SLetter::Upper {
                kind,
                n: representative(n),
                twists: representative(twists),
            },
            SLetter::Greek { kind, m, n, r } => SLetter::Greek {
                kind,
                m: representative(m),
                n: representative(n),
                r: representative(r),
            },
        })
        .collect();
    SuturedWord::from_raw(out)
}

/// A modified copy of a word used to probe verdict invariance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Perturbation {
    pub word: SuturedWord,
    pub description: String,
    /// Whether the product verdict is also expected to be unchanged.
    pub keeps_product: bool,
}

/// Every single `+2` change: twists of blocks that already have a twist, `k`
/// of a lower-case letter before an odd block (both keep every verdict), and
/// each remaining multiplicity (keeps tautness only).
pub fn perturbations(w: &SuturedWord) -> Vec<Perturbation> {
    let letters = w.letters();
    let n = letters.len();
    let mut out = Vec::new();
    let mut push = |i: usize, letter: SLetter, what: &str, keeps_product: bool| {
        let mut copy = letters.to_vec();
        copy[i] = letter;
        out.push(Perturbation {
            word: SuturedWord::from_raw(copy),
            description: format!("{what} + 2 at position {i}"),
            keeps_product,
        });
    };
    for (i, letter) in letters.iter().enumerate() {
        match *letter {
            SLetter::Lower { kind, k, l } => {
                let before_odd = matches!(
                    letters[(i + 1) % n],
                    SLetter::Upper { kind: u, .. } if u.class() == TwistClass::Odd
                );
                push(i, SLetter::Lower { kind, k: k + 2, l }, "k", before_odd);
                push(i, SLetter::Lower { kind, k, l: l + 2 }, "l", false);
            }
            SLetter::Upper { kind, n, twists } => {
                if twists >= 1 {
                    push(
                        i,
                        SLetter::Upper {
                            kind,
                            n,
                            twists: twists + 2,
                        },
                        "twists",
                        true,
                    );
                }
                push(
                    i,
                    SLetter::Upper {
                        kind,
                        n: n + 2,
                        twists,
                    },
                    "n",
                    false,
                );
            }
            SLetter::Greek { kind, m, n, r } => {
                push(
                    i,
                    SLetter::Greek {
                        kind,
                        m: m + 2,
                        n,
                        r,
                    },
                    "m",
                    false,
                );
                push(
                    i,
                    SLetter::Greek {
                        kind,
                        m,
                        n: n + 2,
                        r,
                    },
                    "n",
                    false,
                );
                push(
                    i,
                    SLetter::Greek {
                        kind,
                        m,
                        n,
                        r: r + 2,
                    },
                    "r",
                    false,
                );
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sutured::parse_sutured;

    fn w(text: &str) -> SuturedWord {
        parse_sutured(text).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(
            taut_closed_form(&w("a(2,3) B(1,0) alpha(1,0,2)")).unwrap(),
            Verdict::NotTaut
        );
        assert_eq!(
            taut_closed_form(&w("a(0,1) B(1,2) alpha(0,1,0)")).unwrap(),
            Verdict::Taut
        );
        assert_eq!(
            taut_closed_form(&w("a(0,1) C(1,0) alpha(0,1,0)")).unwrap(),
            Verdict::Taut
        );
        assert!(taut_closed_form(&w("a(0,0) D(0,1) gamma(0,0,0)")).is_err());
    }

    #[test]
    fn terminal_cases() {
        let (v, trace) = taut_by_reduction(&w("a(0,1) C(0,0) alpha(0,0,0)")).unwrap();
        assert_eq!(v, Verdict::Taut);
        assert_eq!(
            trace.terminal,
            Terminal::SolidTorusLongitudinal { sutures: 2 }
        );
        assert!(trace.steps.is_empty());

        let (v, _) = taut_by_reduction(&w("a(0,1) B(1,0) alpha(0,1,0)")).unwrap();
        assert_eq!(v, Verdict::NotTaut);
        let (v, trace) = taut_by_reduction(&w("a(0,1) B(1,2) alpha(0,1,0)")).unwrap();
        assert_eq!(v, Verdict::Taut);
        assert_eq!(
            trace.terminal,
            Terminal::SolidTorusLongitudinal { sutures: 6 }
        );
        for text in [
            "b(0,0) A(0,1) beta(0,0,0)",
            "b(0,0) B(0,0) beta(0,0,0)",
            "b(0,0) C(0,0) beta(0,0,0)",
        ] {
            assert_eq!(taut_by_reduction(&w(text)).unwrap().0, Verdict::Taut);
        }
        assert!(matches!(
            taut_by_reduction(&w("a(0,0) A(0,1) alpha(0,0,0)")),
            Err(SuturedError::NotSutured(_))
        ));
    }

    #[test]
    fn product_step_on_plain_block() {
        let word = w("a(0,1) C(1,0) alpha(0,1,0) a(0,1) B(1,0) alpha(0,1,0)");
        let (next, step) = reduce_step(&word, 2).unwrap();
        assert!(step.product_disc);
        assert_eq!(step.suture_crossings, 2);
        assert_eq!(next.len(), 3);
        assert!(product_by_reduction(&word).unwrap());
    }

    #[test]
    fn tube_block_is_not_product() {
        let word = w("a(1,1) C(1,0) alpha(0,1,0) a(1,1) B(1,0) alpha(0,1,0)");
        let (_, step) = reduce_step(&word, 2).unwrap();
        assert!(!step.product_disc);
        assert!(!product_by_reduction(&word).unwrap());
    }

    #[test]
    fn twisted_even_block_uses_alternative() {
        let word = w("C(1,0) alpha(0,1,0) a(0,1) B(1,2) alpha(0,1,0) a(0,1)");
        let (next, step) = reduce_step(&word, 2).unwrap();
        assert!(step.alternative);
        assert!(!step.product_disc);
        assert_eq!(next.to_string(), "C(1,0) beta(0,1,0) b(0,1)");
        assert_eq!(taut_by_reduction(&word).unwrap().0, Verdict::Taut);
    }

    #[test]
    fn reduce_step_errors() {
        let word = w("C(1,0) alpha(0,1,0) a(0,1) B(1,0) alpha(0,1,0) a(0,1)");
        assert_eq!(
            reduce_step(&word, 1).unwrap_err(),
            SuturedError::NotLower(1)
        );
        assert_eq!(
            reduce_step(&word, 5).unwrap_err(),
            SuturedError::Preserved(5)
        );
        let short = w("a(0,1) C(1,0) alpha(0,1,0)");
        assert_eq!(
            reduce_step(&short, 0).unwrap_err(),
            SuturedError::TooShort(3)
        );
    }

    #[test]
    fn product_requires_taut() {
        assert_eq!(
            product_by_reduction(&w("a(0,1) B(1,0) alpha(0,1,0)")),
            Err(SuturedError::NotTaut)
        );
    }

    #[test]
    fn perturbations_keep_verdicts() {
        let word =
            w("C(1,1) alpha(0,1,0) a(0,1) A(0,1) alpha(0,0,0) a(1,1) B(1,2) beta(0,1,1) b(0,1)");
        let (verdict, _) = taut_by_reduction(&word).unwrap();
        let product = product_by_reduction(&word).unwrap();
        for p in perturbations(&word) {
            assert_eq!(
                taut_by_reduction(&p.word).unwrap().0,
                verdict,
                "{}",
                p.description
            );
            if p.keeps_product {
                assert_eq!(
                    product_by_reduction(&p.word).unwrap(),
                    product,
                    "{}",
                    p.description
                );
            }
        }
    }

    #[test]
    fn normalize_examples() {
        let word = normalize(&w(
            "a(4,5) B(6,6) alpha(7,0,9) a(4,0) A(1,7) alpha(0,0,0) a(0,0) C(0,0) alpha(0,0,0)",
        ));
        assert_eq!(
            word.to_string(),
            "C(0,0) alpha(0,0,0) a(2,3) B(2,2) alpha(3,0,3) a(0,0) A(1,3) alpha(0,0,0) a(0,0)"
        );
    }
}
