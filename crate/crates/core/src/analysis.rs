//! Full pipeline from a continued fraction or a word to a serialisable report.

use serde::Serialize;
use thiserror::Error;

use crate::derivation::{derive_partial, linking_number, DeriveError};
use crate::linkword::{
    assign_signs, choose_infinity_parity, counts, evaluate_cf, format_word, is_two_component,
    pair_greedy, validate_maximal_pairing, CfError, Chord, CircularWord, ContinuedFraction, Counts,
    SignedWord, WordError,
};
use crate::surface::{
    chi_l3, fibred_criterion, pattern_summary, surface_summary, word_fibred, PatternSummary,
    SurfaceError, SurfaceSummary,
};
use crate::sutured::{derive_wr, product_by_reduction, SuturedError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Fraction(#[from] CfError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Derive(#[from] DeriveError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Sutured(#[from] SuturedError),
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
}

impl AnalysisError {
    pub fn is_cross_check(&self) -> bool {
        matches!(self, AnalysisError::CrossCheck(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputEcho {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cf: Option<ContinuedFraction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    pub framing: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FibredVerdicts {
    /// Closed-form test on the coefficients; absent for word input.
    pub criterion: Option<bool>,
    pub word: bool,
    pub sutured_engine: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub input: InputEcho,
    pub fraction: Option<String>,
    pub two_component: Option<bool>,
    pub word: String,
    pub signed_word: String,
    pub counts: Counts,
    pub linking_number: Option<i64>,
    pub pairing_size: usize,
    pub pairing: Vec<Chord>,
    pub sutured_word: String,
    pub surface: SurfaceSummary,
    pub fibred: FibredVerdicts,
    pub pattern: PatternSummary,
    pub chi_l3: i64,
    pub warnings: Vec<String>,
}

/// Signature of the passage-word to sutured-word translation, injectable so
/// the harness can be exercised against a faulty table.
pub type Translate = fn(
    &SignedWord,
    &crate::linkword::Pairing,
    u32,
) -> Result<crate::sutured::SuturedWord, SuturedError>;

struct WordAnalysis {
    signed: SignedWord,
    counts: Counts,
    pairing: crate::linkword::Pairing,
    sutured_word: String,
    surface: SurfaceSummary,
    word_fibred: bool,
    engine_fibred: bool,
    pattern: PatternSummary,
    chi_l3: i64,
}

fn analyse_signed(sw: SignedWord, translate: Translate) -> Result<WordAnalysis, AnalysisError> {
    let c = counts(&sw);
    let surface = surface_summary(c)?;
    let pairing = pair_greedy(&sw);
    validate_maximal_pairing(&sw, &pairing)
        .map_err(|e| AnalysisError::CrossCheck(format!("greedy pairing invalid: {e}")))?;
    let framing = sw.word().infinity().map_or(0, |s| s.twists);
    let wr = translate(&sw, &pairing, framing)?;
    let engine_fibred = product_by_reduction(&wr)
        .map_err(|e| AnalysisError::CrossCheck(format!("sutured engine on {wr}: {e}")))?;
    let word_fibred = word_fibred(&sw)?;
    let pattern = pattern_summary(&sw)?;
    let chi = chi_l3(&pattern);
    if chi != surface.euler {
        return Err(AnalysisError::CrossCheck(format!(
            "chi(L3) = {chi} from the pattern but {} from the surface",
            surface.euler
        )));
    }
    if word_fibred != engine_fibred {
        return Err(AnalysisError::CrossCheck(format!(
            "word verdict {word_fibred} but sutured engine verdict {engine_fibred}"
        )));
    }
    Ok(WordAnalysis {
        signed: sw,
        counts: c,
        pairing,
        sutured_word: wr.to_string(),
        surface,
        word_fibred,
        engine_fibred,
        pattern,
        chi_l3: chi,
    })
}

fn build(
    input: InputEcho,
    fraction: Option<String>,
    two_component: Option<bool>,
    linking: Option<i64>,
    criterion: Option<bool>,
    a: WordAnalysis,
    warnings: Vec<String>,
) -> AnalysisReport {
    AnalysisReport {
        input,
        fraction,
        two_component,
        word: format_word(a.signed.word()),
        signed_word: a.signed.to_string(),
        counts: a.counts,
        linking_number: linking,
        pairing_size: a.pairing.size(),
        pairing: a.pairing.chords.clone(),
        sutured_word: a.sutured_word,
        surface: a.surface,
        fibred: FibredVerdicts {
            criterion,
            word: a.word_fibred,
            sutured_engine: a.engine_fibred,
        },
        pattern: a.pattern,
        chi_l3: a.chi_l3,
        warnings,
    }
}

pub fn analyze_cf(cf: &ContinuedFraction, framing: u32) -> Result<AnalysisReport, AnalysisError> {
    analyze_cf_with(cf, framing, derive_wr)
}

pub fn analyze_cf_with(
    cf: &ContinuedFraction,
    framing: u32,
    translate: Translate,
) -> Result<AnalysisReport, AnalysisError> {
    let fraction = evaluate_cf(cf);
    if !is_two_component(cf) {
        return Err(DeriveError::NotTwoComponent(cf.clone()).into());
    }
    let partial = derive_partial(cf)?;
    let mut warnings = Vec::new();
    let word = match choose_infinity_parity(&partial, framing, true) {
        Ok(w) => w,
        Err(WordError::InfinityParityConflict { forced, .. }) => {
            warnings.push(format!(
                "framing {framing} has the wrong parity for the {forced:?} infinity block; using {} twists",
                framing + 1
            ));
            choose_infinity_parity(&partial, framing, false)?
        }
        Err(e) => return Err(e.into()),
    };
    let a = analyse_signed(assign_signs(&word), translate)?;
    let lk = linking_number(cf)?;
    if i64::from(a.counts.winding()) != lk.abs() {
        return Err(AnalysisError::CrossCheck(format!(
            "|N+ - N-| = {} but the linking number is {lk}",
            a.counts.winding()
        )));
    }
    let criterion = fibred_criterion(cf)?;
    if criterion != a.word_fibred {
        return Err(AnalysisError::CrossCheck(format!(
            "closed-form criterion {criterion} but word verdict {}",
            a.word_fibred
        )));
    }
    let input = InputEcho {
        cf: Some(cf.clone()),
        word: None,
        framing,
    };
    Ok(build(
        input,
        Some(fraction.to_string()),
        Some(true),
        Some(lk),
        Some(criterion),
        a,
        warnings,
    ))
}

/// Analyses a word directly. A given `framing` replaces the infinity twist
/// count and must share its parity.
pub fn analyze_word(
    word: &CircularWord,
    framing: Option<u32>,
) -> Result<AnalysisReport, AnalysisError> {
    analyze_word_with(word, framing, derive_wr)
}

pub fn analyze_word_with(
    word: &CircularWord,
    framing: Option<u32>,
    translate: Translate,
) -> Result<AnalysisReport, AnalysisError> {
    if word.is_empty() {
        return Err(SurfaceError::Unlink.into());
    }
    let word = match framing {
        Some(f) => word.with_infinity_twists(f)?,
        None => word.clone(),
    };
    let framing = word.infinity().map_or(0, |s| s.twists);
    let a = analyse_signed(assign_signs(&word), translate)?;
    let input = InputEcho {
        cf: None,
        word: Some(format_word(&word)),
        framing,
    };
    Ok(build(input, None, None, None, None, a, Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkword::parse_word;

    fn cf(v: &[u32]) -> ContinuedFraction {
        ContinuedFraction::new(v.to_vec()).unwrap()
    }

    #[test]
    fn fibred_fraction_report() {
        let r = analyze_cf(&cf(&[1, 2, 1]), 0).unwrap();
        assert_eq!(r.fraction.as_deref(), Some("3/4"));
        assert_eq!(
            r.fibred,
            FibredVerdicts {
                criterion: Some(true),
                word: true,
                sutured_engine: true
            }
        );
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn knot_is_rejected() {
        let e = analyze_cf(&cf(&[1, 1, 1]), 0).unwrap_err();
        assert!(matches!(
            e,
            AnalysisError::Derive(DeriveError::NotTwoComponent(_))
        ));
        assert!(!e.is_cross_check());
    }

    #[test]
    fn word_report() {
        let r = analyze_word(&parse_word("*E:0 A E:2 A").unwrap(), None).unwrap();
        assert!(!r.fibred.word && !r.fibred.sutured_engine);
        assert_eq!(r.fibred.criterion, None);
        assert_eq!((r.surface.genus, r.surface.euler), (1, -3));
    }

    #[test]
    fn framing_warning() {
        let r = analyze_cf(&cf(&[1, 1, 1, 1, 1]), 0).unwrap();
        assert_eq!(r.input.framing, 0);
        assert_eq!(r.warnings.len(), 1);
        assert!(r.word.starts_with("*O:1"));
    }

    #[test]
    fn faulty_translation_is_caught() {
        fn faulty(
            sw: &SignedWord,
            p: &crate::linkword::Pairing,
            f: u32,
        ) -> Result<crate::sutured::SuturedWord, SuturedError> {
            let w = derive_wr(sw, p, f)?;
            let text = w.to_string().replace("a(0,1)", "a(1,1)");
            crate::sutured::parse_sutured(&text)
        }
        let e = analyze_cf_with(&cf(&[1, 2, 1]), 0, faulty).unwrap_err();
        assert!(e.is_cross_check());
    }

    #[test]
    fn empty_word_is_unlink() {
        let e = analyze_word(&CircularWord::empty(), None).unwrap_err();
        assert_eq!(e, AnalysisError::Surface(SurfaceError::Unlink));
    }
}
