//! Cross-validation harness: every invariant family run against its oracle.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::Translate;
use crate::derivation::{derive_word, linking_number};
use crate::gen::{random_sutured, random_word, two_component_fractions_up_to};
use crate::linkword::{
    all_maximal_pairings, assign_signs, counts, pair_bruteforce, pair_greedy,
    validate_maximal_pairing, ContinuedFraction, Pairing, SignedWord,
};
use crate::surface::{chi_l3, fibred_criterion, pattern_summary, surface_summary, word_fibred};
use crate::sutured::{
    derive_wr, normalize, perturbations, product_by_reduction, taut_by_reduction, taut_closed_form,
    validate_grammar, SuturedWord, Verdict,
};

const MAX_REPORTED: usize = 10;

pub struct CheckConfig {
    pub sum_bound: u32,
    pub samples: usize,
    pub seed: u64,
    pub oracle_bound: usize,
    pub framings: Vec<u32>,
    pub translate: Translate,
}

impl CheckConfig {
    pub fn new(sum_bound: u32) -> Self {
        Self {
            sum_bound,
            samples: 1000,
            seed: 0x5eed,
            oracle_bound: crate::linkword::oracle_bound(),
            framings: vec![0, 1, 2],
            translate: derive_wr,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub counterexamples: Vec<String>,
}

impl FamilyResult {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            cases: 0,
            failures: 0,
            counterexamples: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.counterexamples.len() < MAX_REPORTED {
                self.counterexamples.push(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub families: Vec<FamilyResult>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(FamilyResult::passed)
    }
}

/// Greedy and exhaustive pairings both reach `min(N+, N-)`.
pub fn pairing_agrees(sw: &SignedWord, bound: usize) -> Result<(), String> {
    let expected = counts(sw).min() as usize;
    let greedy = pair_greedy(sw);
    validate_maximal_pairing(sw, &greedy).map_err(|e| format!("greedy: {e}"))?;
    let brute = pair_bruteforce(sw, bound).map_err(|e| e.to_string())?;
    validate_maximal_pairing(sw, &brute).map_err(|e| format!("exhaustive: {e}"))?;
    if brute.size() != expected {
        return Err(format!("exhaustive size {} != {expected}", brute.size()));
    }
    Ok(())
}

/// Pairings to try on a word: the greedy one plus, when small enough, a few
/// exhaustive maximal ones.
pub fn candidate_pairings(sw: &SignedWord, bound: usize) -> Vec<Pairing> {
    let greedy = pair_greedy(sw);
    let mut out = vec![greedy.clone()];
    if sw.word().passage_count() <= bound {
        if let Ok(all) = all_maximal_pairings(sw, bound, 8) {
            out.extend(all.into_iter().filter(|p| *p != greedy));
        }
    }
    out
}

/// Closed-form, word, and sutured-engine fibredness verdicts for one fraction.
pub fn triple_agreement(
    cf: &ContinuedFraction,
    framing: u32,
    bound: usize,
    translate: Translate,
) -> Result<(), String> {
    let criterion = fibred_criterion(cf).map_err(|e| e.to_string())?;
    let sw = derive_word(cf, framing).map_err(|e| e.to_string())?;
    let by_word = word_fibred(&sw).map_err(|e| e.to_string())?;
    if criterion != by_word {
        return Err(format!("criterion {criterion}, word {by_word}"));
    }
    let twists = sw.word().infinity().map_or(0, |s| s.twists);
    for pairing in candidate_pairings(&sw, bound) {
        let wr = translate(&sw, &pairing, twists).map_err(|e| e.to_string())?;
        if !validate_grammar(&wr) {
            return Err(format!("translation {wr} breaks the grammar"));
        }
        let engine = product_by_reduction(&wr).map_err(|e| format!("{wr}: {e}"))?;
        if engine != criterion {
            return Err(format!("criterion {criterion}, engine {engine} on {wr}"));
        }
    }
    Ok(())
}

/// Reduction agrees with the closed form, and no verdict moves under
/// normalisation or the `+2` perturbations.
pub fn engine_agrees(w: &SuturedWord) -> Result<(), String> {
    let closed = taut_closed_form(w).map_err(|e| e.to_string())?;
    let (reduced, trace) = taut_by_reduction(w).map_err(|e| e.to_string())?;
    if closed != reduced {
        return Err(format!("closed form {closed}, reduction {reduced}"));
    }
    if trace.steps.len() != (w.len() - 3) / 3 {
        return Err(format!(
            "{} steps for length {}",
            trace.steps.len(),
            w.len()
        ));
    }
    let product = |x: &SuturedWord| match reduced {
        Verdict::Taut => product_by_reduction(x).map(Some).map_err(|e| e.to_string()),
        Verdict::NotTaut => Ok(None),
    };
    let base_product = product(w)?;
    let verdicts = |x: &SuturedWord| -> Result<(Verdict, Verdict), String> {
        let c = taut_closed_form(x).map_err(|e| e.to_string())?;
        let r = taut_by_reduction(x).map_err(|e| e.to_string())?.0;
        Ok((c, r))
    };
    let n = normalize(w);
    if verdicts(&n)? != (closed, reduced) || product(&n)? != base_product {
        return Err(format!("normalize changed a verdict: {n}"));
    }
    for p in perturbations(w) {
        if verdicts(&p.word)? != (closed, reduced) {
            return Err(format!("{} changed tautness", p.description));
        }
        if p.keeps_product && product(&p.word)? != base_product {
            return Err(format!("{} changed the product verdict", p.description));
        }
    }
    Ok(())
}

pub fn run_checks(config: &CheckConfig) -> CheckReport {
    let fractions = two_component_fractions_up_to(config.sum_bound);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let max_passages = config.oracle_bound.clamp(1, 12);

    let mut pairing = FamilyResult::new("pairing");
    let mut chi = FamilyResult::new("chi-identity");
    let mut translation = FamilyResult::new("translation-grammar");
    for _ in 0..config.samples {
        let sw = assign_signs(&random_word(&mut rng, max_passages, 4));
        let r = pairing_agrees(&sw, config.oracle_bound);
        pairing.record(r.is_ok(), || format!("{}: {}", sw.word(), r.unwrap_err()));

        let c = counts(&sw);
        let ok = match (pattern_summary(&sw), surface_summary(c)) {
            (Ok(p), Ok(s)) => chi_l3(&p) == s.euler && s.euler == 1 - 2 * i64::from(c.max()),
            _ => false,
        };
        chi.record(ok, || sw.word().to_string());

        let twists = sw.word().infinity().map_or(0, |s| s.twists);
        let wr = (config.translate)(&sw, &pair_greedy(&sw), twists);
        let ok = wr.as_ref().is_ok_and(|w| {
            validate_grammar(w)
                && taut_closed_form(w) == Ok(Verdict::Taut)
                && product_by_reduction(w).ok() == word_fibred(&sw).ok()
        });
        translation.record(ok, || sw.word().to_string());
    }

    let mut winding = FamilyResult::new("winding");
    let mut triple = FamilyResult::new("fibred-triple");
    for cf in &fractions {
        let ok = match (derive_word(cf, 0), linking_number(cf)) {
            (Ok(sw), Ok(lk)) => i64::from(counts(&sw).winding()) == lk.abs(),
            _ => false,
        };
        winding.record(ok, || cf.to_string());
        for &f in &config.framings {
            let r = triple_agreement(cf, f, config.oracle_bound, config.translate);
            triple.record(r.is_ok(), || {
                format!("{cf} framing {f}: {}", r.unwrap_err())
            });
        }
    }

    let mut engine = FamilyResult::new("sutured-engine");
    for _ in 0..config.samples {
        let w = random_sutured(&mut rng, 3, 3);
        let r = engine_agrees(&w);
        engine.record(r.is_ok(), || format!("{w}: {}", r.unwrap_err()));
    }

    CheckReport {
        families: vec![pairing, winding, triple, engine, chi, translation],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkword::Pairing as P;
    use crate::sutured::SuturedError;

    #[test]
    fn small_bound_passes() {
        let mut config = CheckConfig::new(8);
        config.samples = 100;
        let report = run_checks(&config);
        for f in &report.families {
            assert!(f.passed(), "{}: {:?}", f.name, f.counterexamples);
            assert!(f.cases > 0, "{}", f.name);
        }
    }

    #[test]
    fn faulty_translation_names_the_fraction() {
        fn faulty(sw: &SignedWord, p: &P, f: u32) -> Result<SuturedWord, SuturedError> {
            let w = derive_wr(sw, p, f)?;
            crate::sutured::parse_sutured(&w.to_string().replace("(0,1) B", "(2,1) B"))
        }
        let mut config = CheckConfig::new(6);
        config.samples = 10;
        config.translate = faulty;
        let report = run_checks(&config);
        let triple = report
            .families
            .iter()
            .find(|f| f.name == "fibred-triple")
            .unwrap();
        assert!(!triple.passed());
        assert!(triple
            .counterexamples
            .iter()
            .any(|c| c.starts_with("[3,2,1] framing 0")));
    }
}
