//! Enumeration of small continued fractions and random valid words.

use rand::Rng;

use crate::linkword::{
    is_two_component, CircularWord, ContinuedFraction, Passage, Separator, Side, WordLetter,
};
use crate::sutured::{
    sutured_validity, validate_grammar, Family, GreekKind, LowerKind, SLetter, SuturedWord,
    TwistClass, UpperKind,
};

/// Every continued fraction of odd length with coefficient sum at most `sum_bound`.
pub fn fractions_up_to(sum_bound: u32) -> Vec<ContinuedFraction> {
    fn extend(prefix: &mut Vec<u32>, remaining: u32, out: &mut Vec<ContinuedFraction>) {
        if prefix.len() % 2 == 1 {
            out.push(ContinuedFraction::new(prefix.clone()).expect("odd positive"));
        }
        for a in 1..=remaining {
            prefix.push(a);
            extend(prefix, remaining - a, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), sum_bound, &mut out);
    out
}

pub fn two_component_fractions_up_to(sum_bound: u32) -> Vec<ContinuedFraction> {
    fractions_up_to(sum_bound)
        .into_iter()
        .filter(is_two_component)
        .collect()
}

/// A random valid passage word with between 1 and `max_passages` passages and
/// non-infinity twist counts at most `max_twists`.
pub fn random_word<R: Rng>(rng: &mut R, max_passages: usize, max_twists: u32) -> CircularWord {
    let n = rng.gen_range(1..=max_passages.max(1));
    let sides: Vec<Side> = (0..n)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Side::Below
            } else {
                Side::Above
            }
        })
        .collect();
    let mut inner = Vec::with_capacity(2 * n);
    let mut odd = 0;
    for i in 0..n {
        if i > 0 {
            let t = rng.gen_range(0..=max_twists);
            odd += t % 2;
            inner.push(WordLetter::Separator(Separator::new(t)));
        }
        inner.push(WordLetter::Passage(Passage::from_sides(
            sides[i],
            sides[(i + 1) % n],
        )));
    }
    let mut infinity = rng.gen_range(0..=max_twists);
    if infinity % 2 != odd % 2 {
        infinity += 1;
    }
    let mut letters = vec![WordLetter::Separator(Separator::infinity(infinity))];
    letters.extend(inner);
    CircularWord::new(letters).expect("generated words are valid")
}

fn random_upper<R: Rng>(rng: &mut R, family: Family, max_param: u32) -> SLetter {
    let class = match rng.gen_range(0..3) {
        0 => TwistClass::Odd,
        1 => TwistClass::Even,
        _ => TwistClass::Free,
    };
    let mut twists = rng.gen_range(0..=max_param);
    match class {
        TwistClass::Odd if twists % 2 == 0 => twists = twists.saturating_sub(1).max(1),
        TwistClass::Even if twists % 2 == 1 => twists -= 1,
        _ => {}
    }
    SLetter::upper(
        UpperKind::with(family, class),
        rng.gen_range(0..=max_param),
        twists,
    )
}

fn family_of<R: Rng>(rng: &mut R) -> Family {
    if rng.gen_bool(0.5) {
        Family::Abc
    } else {
        Family::Def
    }
}

/// A random sutured word of `3t` letters (`1 <= t <= max_triples`) that obeys
/// the grammar and the sutured-validity rule. Upper-case classes are drawn
/// evenly, which makes words without `C`/`F` and shifts common.
pub fn random_sutured<R: Rng>(rng: &mut R, max_triples: usize, max_param: u32) -> SuturedWord {
    loop {
        let t = rng.gen_range(1..=max_triples.max(1));
        let shift_bias = rng.gen_range(0.0..0.6);
        let shifts: Vec<bool> = (0..t).map(|_| rng.gen_bool(shift_bias)).collect();
        let mut letters = Vec::with_capacity(3 * t);
        for i in 0..t {
            let family = family_of(rng);
            let lower = match (family, shifts[i]) {
                (Family::Abc, false) => LowerKind::A,
                (Family::Abc, true) => LowerKind::B,
                (Family::Def, false) => LowerKind::C,
                (Family::Def, true) => LowerKind::D,
            };
            let greek = match (family, shifts[(i + 1) % t]) {
                (Family::Abc, false) => GreekKind::Alpha,
                (Family::Abc, true) => GreekKind::Beta,
                (Family::Def, false) => GreekKind::Gamma,
                (Family::Def, true) => GreekKind::Delta,
            };
            let p = |rng: &mut R| rng.gen_range(0..=max_param);
            letters.push(SLetter::lower(lower, p(rng), p(rng)));
            letters.push(random_upper(rng, family, max_param));
            letters.push(SLetter::greek(greek, p(rng), p(rng), p(rng)));
        }
        let w = SuturedWord::new(letters).expect("twist parities are valid");
        if validate_grammar(&w) && sutured_validity(&w).is_ok() {
            return w;
        }
    }
}
