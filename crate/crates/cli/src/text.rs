use std::fmt::Write;

use bridgegenus::analysis::AnalysisReport;
use bridgegenus::check::CheckReport;
use bridgegenus::sutured::Terminal;

use crate::batch::BatchReport;
use crate::commands::{SatelliteOutput, SuturedReport};

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn analysis(r: &AnalysisReport) -> String {
    let mut s = String::new();
    if let Some(cf) = &r.input.cf {
        writeln!(s, "continued fraction: {cf}").unwrap();
    }
    if let Some(f) = &r.fraction {
        writeln!(s, "fraction: {f}").unwrap();
    }
    writeln!(s, "framing: {}", r.input.framing).unwrap();
    writeln!(s, "word: {}", r.word).unwrap();
    writeln!(s, "signed word: {}", r.signed_word).unwrap();
    writeln!(
        s,
        "counts: N+ = {}, N- = {}",
        r.counts.n_plus, r.counts.n_minus
    )
    .unwrap();
    if let Some(lk) = r.linking_number {
        writeln!(s, "linking number: {lk}").unwrap();
    }
    let chords: Vec<String> = r
        .pairing
        .iter()
        .map(|c| format!("({},{})", c.left, c.right))
        .collect();
    writeln!(s, "pairing: {} [{}]", r.pairing_size, chords.join(" ")).unwrap();
    writeln!(s, "sutured word: {}", r.sutured_word).unwrap();
    let surf = &r.surface;
    writeln!(
        s,
        "surface: euler {}, genus {}, {} component{}, {} boundary components",
        surf.euler,
        surf.genus,
        surf.num_components,
        if surf.num_components == 1 { "" } else { "s" },
        surf.boundary_components
    )
    .unwrap();
    let f = &r.fibred;
    let criterion = f.criterion.map_or("n/a", yes_no);
    writeln!(
        s,
        "fibred: criterion {criterion}, word {}, sutured engine {}",
        yes_no(f.word),
        yes_no(f.sutured_engine)
    )
    .unwrap();
    writeln!(
        s,
        "pattern: euler {}, winding {}, fibred {}",
        r.pattern.euler_pattern,
        r.pattern.winding,
        yes_no(r.pattern.fibred)
    )
    .unwrap();
    writeln!(s, "chi(L3): {}", r.chi_l3).unwrap();
    for w in &r.warnings {
        writeln!(s, "warning: {w}").unwrap();
    }
    s
}

pub fn satellite(r: &SatelliteOutput) -> String {
    let mut s = String::new();
    if let Some(w) = &r.word {
        writeln!(s, "word: {w}").unwrap();
    }
    writeln!(
        s,
        "counts: N+ = {}, N- = {}",
        r.counts.n_plus, r.counts.n_minus
    )
    .unwrap();
    writeln!(
        s,
        "pattern: euler {}, winding {}, fibred {}",
        r.pattern.euler_pattern,
        r.pattern.winding,
        yes_no(r.pattern.fibred)
    )
    .unwrap();
    writeln!(
        s,
        "companion: genus {}, fibred {}",
        r.companion.genus,
        yes_no(r.companion.fibred)
    )
    .unwrap();
    let sat = &r.satellite;
    writeln!(
        s,
        "satellite: euler {}, genus {}, fibred {}",
        sat.euler,
        sat.genus,
        yes_no(sat.fibred)
    )
    .unwrap();
    match (&sat.alexander, &r.alexander_normalized) {
        (Some(raw), Some(norm)) => {
            writeln!(s, "alexander: {raw}").unwrap();
            writeln!(s, "alexander (normalized): {norm}").unwrap();
        }
        _ => writeln!(s, "alexander: unknown (no companion polynomial)").unwrap(),
    }
    for w in &r.warnings {
        writeln!(s, "warning: {w}").unwrap();
    }
    s
}

pub fn sutured(r: &SuturedReport) -> String {
    let mut s = String::new();
    writeln!(s, "word: {}", r.word).unwrap();
    match &r.violation {
        Some(v) => writeln!(s, "invalid: {v}").unwrap(),
        None => writeln!(s, "valid").unwrap(),
    }
    if let (Some(c), Some(red)) = (r.closed_form, r.reduction) {
        writeln!(s, "closed form: {c}").unwrap();
        writeln!(s, "reduction: {red}").unwrap();
    }
    if let Some(trace) = &r.trace {
        for (i, step) in trace.steps.iter().enumerate() {
            let consumed: Vec<String> = step.consumed.iter().map(ToString::to_string).collect();
            writeln!(
                s,
                "step {}: at {} remove {} -> {} {}; crossings {}{}{}",
                i + 1,
                step.position,
                consumed.join(" "),
                step.replacement[0],
                step.replacement[1],
                step.suture_crossings,
                if step.product_disc {
                    ", product disc"
                } else {
                    ""
                },
                if step.alternative {
                    ", alternative"
                } else {
                    ""
                },
            )
            .unwrap();
        }
        match &trace.terminal {
            Terminal::SolidTorusLongitudinal { sutures } => writeln!(
                s,
                "terminal: solid torus with {sutures} longitudinal sutures"
            )
            .unwrap(),
            Terminal::Other { description } => writeln!(s, "terminal: {description}").unwrap(),
        }
    }
    if let Some(p) = r.product {
        writeln!(s, "product: {p}").unwrap();
    }
    s
}

pub fn check(r: &CheckReport) -> String {
    let mut s = String::new();
    for f in &r.families {
        let status = if f.passed() { "PASS" } else { "FAIL" };
        writeln!(
            s,
            "{status} {} ({} cases, {} failures)",
            f.name, f.cases, f.failures
        )
        .unwrap();
        for c in &f.counterexamples {
            writeln!(s, "  counterexample: {c}").unwrap();
        }
    }
    s
}

pub fn batch(r: &BatchReport) -> String {
    let mut s = String::new();
    for row in &r.rows {
        match (&row.report, &row.error) {
            (Some(rep), _) => writeln!(
                s,
                "row {}: {} genus {} euler {} fibred {}",
                row.row,
                row.cf,
                rep.surface.genus,
                rep.surface.euler,
                yes_no(rep.fibred.word)
            )
            .unwrap(),
            (None, Some(e)) => writeln!(s, "row {}: {} error: {e}", row.row, row.cf).unwrap(),
            (None, None) => unreachable!("rows carry a report or an error"),
        }
    }
    let m = &r.summary;
    writeln!(s, "{} rows: {} ok, {} failed", m.rows, m.ok, m.failed).unwrap();
    s
}
