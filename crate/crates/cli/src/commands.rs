use std::fmt;

use anyhow::anyhow;
use bridgegenus::analysis::{
    analyze_cf_with, analyze_word_with, AnalysisError, AnalysisReport, Translate,
};
use bridgegenus::check::{run_checks, CheckConfig, CheckReport};
use bridgegenus::linkword::{parse_word, ContinuedFraction, Counts, Pairing, SignedWord};
use bridgegenus::surface::{
    pattern_from_counts, satellite_report, CompanionKnot, LaurentPolynomial, PatternSummary,
    SatelliteReport,
};
use bridgegenus::sutured::{
    derive_wr, grammar_violation, parse_sutured, product_by_reduction, sutured_validity,
    taut_by_reduction, taut_closed_form, ReductionTrace, SuturedError, SuturedWord, Verdict,
};
use serde::Serialize;

use crate::Mode;

pub const MAX_SUM_BOUND: u32 = 20;

#[derive(Debug)]
pub enum CliError {
    Invalid(anyhow::Error),
    CrossCheck(anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::CrossCheck(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(e) | CliError::CrossCheck(e) => write!(f, "{e}"),
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        if e.is_cross_check() {
            CliError::CrossCheck(e.into())
        } else {
            CliError::Invalid(e.into())
        }
    }
}

fn invalid(e: impl Into<anyhow::Error>) -> CliError {
    CliError::Invalid(e.into())
}

/// The translation with separators after an unpaired tube end given two extra
/// sutures, so that fibred links with such a separator disagree.
pub fn faulty_translation(
    sw: &SignedWord,
    pairing: &Pairing,
    framing: u32,
) -> Result<SuturedWord, SuturedError> {
    let w = derive_wr(sw, pairing, framing)?;
    parse_sutured(&w.to_string().replace("(0,1) B", "(2,1) B"))
}

pub fn analyze(
    cf: Option<&str>,
    word: Option<&str>,
    framing: Option<u32>,
    translate: Translate,
) -> Result<AnalysisReport, CliError> {
    match (cf, word) {
        (Some(cf), None) => {
            let cf: ContinuedFraction = cf.parse().map_err(invalid)?;
            Ok(analyze_cf_with(&cf, framing.unwrap_or(0), translate)?)
        }
        (None, Some(word)) => {
            let word = parse_word(word).map_err(invalid)?;
            Ok(analyze_word_with(&word, framing, translate)?)
        }
        _ => Err(invalid(anyhow!(
            "exactly one of --cf and --word is required"
        ))),
    }
}

pub enum PatternSource {
    Cf(String, u32),
    Word(String, Option<u32>),
    Counts(String, Option<bool>),
}

#[derive(Default)]
pub struct CompanionArgs {
    pub json: Option<String>,
    pub genus: Option<u32>,
    pub fibred: Option<bool>,
    pub alexander: Option<String>,
}

impl CompanionArgs {
    pub fn resolve(&self) -> Result<CompanionKnot, CliError> {
        let knot = match &self.json {
            Some(s) if s.trim().eq_ignore_ascii_case("trefoil") => CompanionKnot::trefoil(),
            Some(s) if s.trim_start().starts_with('{') => {
                serde_json::from_str(s).map_err(|e| invalid(anyhow!("companion JSON: {e}")))?
            }
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| invalid(anyhow!("reading companion {path}: {e}")))?;
                serde_json::from_str(&text).map_err(|e| invalid(anyhow!("companion JSON: {e}")))?
            }
            None => {
                let genus = self.genus.ok_or_else(|| {
                    invalid(anyhow!("--companion-genus or --companion is required"))
                })?;
                let alexander = self
                    .alexander
                    .as_deref()
                    .map(str::parse::<LaurentPolynomial>)
                    .transpose()
                    .map_err(invalid)?;
                CompanionKnot {
                    genus,
                    fibred: self.fibred.unwrap_or(false),
                    alexander,
                }
            }
        };
        knot.validate().map_err(invalid)?;
        Ok(knot)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SatelliteOutput {
    pub counts: Counts,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    pub pattern: PatternSummary,
    pub companion: CompanionKnot,
    pub satellite: SatelliteReport,
    /// `alexander` multiplied by a power of `t` so that the lowest exponent is 0.
    pub alexander_normalized: Option<LaurentPolynomial>,
    pub warnings: Vec<String>,
}

fn parse_counts(s: &str) -> Result<Counts, CliError> {
    let bad = || invalid(anyhow!("counts must be `N+,N-`, got {s:?}"));
    let (p, m) = s.split_once(',').ok_or_else(bad)?;
    let p = p.trim().parse().map_err(|_| bad())?;
    let m = m.trim().parse().map_err(|_| bad())?;
    Ok(Counts::new(p, m))
}

pub fn satellite(
    source: PatternSource,
    companion: &CompanionArgs,
    translate: Translate,
) -> Result<SatelliteOutput, CliError> {
    let companion = companion.resolve()?;
    let mut warnings = Vec::new();
    let (counts, word, pattern) = match source {
        PatternSource::Cf(cf, framing) => {
            let r = analyze(Some(&cf), None, Some(framing), translate)?;
            warnings.extend(r.warnings);
            (r.counts, Some(r.word), r.pattern)
        }
        PatternSource::Word(word, framing) => {
            let r = analyze(None, Some(&word), framing, translate)?;
            (r.counts, Some(r.word), r.pattern)
        }
        PatternSource::Counts(text, fibred) => {
            let c = parse_counts(&text)?;
            let fibred = fibred.unwrap_or_else(|| {
                warnings.push(format!(
                    "pattern fibredness not given; assuming {} from the counts",
                    c.min() == 0
                ));
                c.min() == 0
            });
            (c, None, pattern_from_counts(c, fibred).map_err(invalid)?)
        }
    };
    let satellite = satellite_report(&pattern, &companion).map_err(invalid)?;
    let alexander_normalized = satellite
        .alexander
        .as_ref()
        .map(LaurentPolynomial::normalized);
    Ok(SatelliteOutput {
        counts,
        word,
        pattern,
        companion,
        satellite,
        alexander_normalized,
        warnings,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuturedReport {
    pub word: String,
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduction: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<ReductionTrace>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub product: Option<bool>,
}

pub fn sutured(text: &str, mode: Mode) -> Result<SuturedReport, CliError> {
    let w = parse_sutured(text).map_err(invalid)?;
    let violation = grammar_violation(&w).or_else(|| sutured_validity(&w).err());
    let mut report = SuturedReport {
        word: w.to_string(),
        valid: violation.is_none(),
        violation: violation.as_ref().map(ToString::to_string),
        closed_form: None,
        reduction: None,
        trace: None,
        product: None,
    };
    match (mode, violation) {
        (Mode::Validate, _) => return Ok(report),
        (_, Some(v)) => return Err(invalid(v)),
        _ => {}
    }
    let closed = taut_closed_form(&w).map_err(invalid)?;
    let (reduced, trace) = taut_by_reduction(&w).map_err(invalid)?;
    if closed != reduced {
        return Err(CliError::CrossCheck(anyhow!(
            "closed form says {closed} but the reduction says {reduced}"
        )));
    }
    report.closed_form = Some(closed);
    report.reduction = Some(reduced);
    match mode {
        Mode::ReduceTrace => report.trace = Some(trace),
        Mode::Product => report.product = Some(product_by_reduction(&w).map_err(invalid)?),
        Mode::Taut | Mode::Validate => {}
    }
    Ok(report)
}

pub fn check(
    sum_bound: u32,
    samples: usize,
    seed: u64,
    translate: Translate,
) -> Result<CheckReport, CliError> {
    if sum_bound > MAX_SUM_BOUND {
        return Err(invalid(anyhow!("--sum-bound is at most {MAX_SUM_BOUND}")));
    }
    let mut config = CheckConfig::new(sum_bound);
    config.samples = samples;
    config.seed = seed;
    config.translate = translate;
    Ok(run_checks(&config))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_satellite_matches_trefoil_examples() {
        let companion = CompanionArgs {
            json: Some("trefoil".into()),
            ..Default::default()
        };
        let out = satellite(
            PatternSource::Counts("2,0".into(), None),
            &companion,
            derive_wr,
        )
        .unwrap();
        assert_eq!((out.satellite.genus, out.satellite.fibred), (2, true));
        assert_eq!(
            out.alexander_normalized.unwrap().to_string(),
            "t^4 - t^2 + 1"
        );
        assert_eq!(out.warnings.len(), 1);

        let out = satellite(
            PatternSource::Counts("3,1".into(), None),
            &companion,
            derive_wr,
        )
        .unwrap();
        assert_eq!((out.satellite.genus, out.satellite.fibred), (3, false));
        assert_eq!(
            out.alexander_normalized.unwrap().to_string(),
            "t^4 - t^2 + 1"
        );
    }

    #[test]
    fn companion_flags() {
        let args = CompanionArgs {
            genus: Some(1),
            fibred: Some(true),
            alexander: Some("-1:1,-1,1".into()),
            ..Default::default()
        };
        assert_eq!(args.resolve().unwrap(), CompanionKnot::trefoil());
        let zero = CompanionArgs {
            genus: Some(0),
            ..Default::default()
        };
        assert_eq!(zero.resolve().unwrap_err().exit_code(), 2);
        let json = CompanionArgs {
            json: Some(r#"{"genus": 1, "fibred": true, "alexander": {"min_exp": -1, "coeffs": [1, -1, 1]}}"#.into()),
            ..Default::default()
        };
        assert_eq!(json.resolve().unwrap(), CompanionKnot::trefoil());
    }

    #[test]
    fn sutured_modes() {
        let r = sutured("a(0,1) B(1,0) alpha(0,1,0)", Mode::Taut).unwrap();
        assert_eq!(r.closed_form, Some(Verdict::NotTaut));
        let r = sutured("a(0,0) D(0,1) gamma(0,0,0)", Mode::Validate).unwrap();
        assert!(!r.valid);
        assert!(r.violation.unwrap().contains("grammar"));
    }

    #[test]
    fn oversized_check_is_rejected() {
        assert_eq!(
            check(MAX_SUM_BOUND + 1, 1, 0, derive_wr)
                .unwrap_err()
                .exit_code(),
            2
        );
    }
}
