use std::path::Path;

use anyhow::{anyhow, Context};
use bridgegenus::analysis::{analyze_cf_with, AnalysisReport, Translate};
use bridgegenus::linkword::ContinuedFraction;
use rayon::prelude::*;
use serde::Serialize;

use crate::commands::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatchRow {
    /// 1-based data row number, not counting the header.
    pub row: usize,
    pub cf: String,
    pub framing: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<AnalysisReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BatchSummary {
    pub rows: usize,
    pub ok: usize,
    pub failed: usize,
    pub cross_check_failures: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatchReport {
    pub rows: Vec<BatchRow>,
    pub summary: BatchSummary,
}

struct Input {
    cf: String,
    framing: String,
}

fn analyse_row(row: usize, input: &Input, translate: Translate) -> (BatchRow, bool) {
    let framing_text = input.framing.trim();
    let framing = if framing_text.is_empty() {
        Ok(None)
    } else {
        framing_text
            .parse::<u32>()
            .map(Some)
            .map_err(|_| format!("bad framing {framing_text:?}"))
    };
    let mut out = BatchRow {
        row,
        cf: input.cf.clone(),
        framing: None,
        report: None,
        error: None,
    };
    let mut cross = false;
    match framing {
        Err(e) => out.error = Some(e),
        Ok(f) => {
            out.framing = f;
            match input.cf.parse::<ContinuedFraction>() {
                Err(e) => out.error = Some(e.to_string()),
                Ok(cf) => match analyze_cf_with(&cf, f.unwrap_or(0), translate) {
                    Ok(r) => out.report = Some(r),
                    Err(e) => {
                        cross = e.is_cross_check();
                        out.error = Some(e.to_string());
                    }
                },
            }
        }
    }
    (out, cross)
}

pub fn run(path: &Path, translate: Translate) -> Result<BatchReport, CliError> {
    let invalid = CliError::Invalid;
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(true)
        .from_path(path)
        .with_context(|| format!("opening {}", path.display()))
        .map_err(invalid)?;
    let headers = reader
        .headers()
        .context("reading CSV header")
        .map_err(invalid)?
        .clone();
    let column = |name: &str| headers.iter().position(|h| h.eq_ignore_ascii_case(name));
    let cf_col = column("cf").ok_or_else(|| invalid(anyhow!("CSV has no `cf` column")))?;
    let framing_col = column("framing");

    let mut inputs = Vec::new();
    for record in reader.records() {
        let record = record.context("reading CSV row").map_err(invalid)?;
        let field = |i: Option<usize>| i.and_then(|i| record.get(i)).unwrap_or("").to_string();
        inputs.push(Input {
            cf: field(Some(cf_col)),
            framing: field(framing_col),
        });
    }

    let results: Vec<(BatchRow, bool)> = inputs
        .par_iter()
        .enumerate()
        .map(|(i, input)| analyse_row(i + 1, input, translate))
        .collect();
    let ok = results.iter().filter(|(r, _)| r.error.is_none()).count();
    let cross_check_failures = results.iter().filter(|(_, c)| *c).count();
    let rows: Vec<BatchRow> = results.into_iter().map(|(r, _)| r).collect();
    let summary = BatchSummary {
        rows: rows.len(),
        ok,
        failed: rows.len() - ok,
        cross_check_failures,
    };
    Ok(BatchReport { rows, summary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use bridgegenus::sutured::derive_wr;

    #[test]
    fn row_errors_are_recorded() {
        let (row, cross) = analyse_row(
            1,
            &Input {
                cf: "1;2".into(),
                framing: String::new(),
            },
            derive_wr,
        );
        assert!(!cross);
        assert!(row.error.unwrap().contains("N must be odd"));
        let (row, _) = analyse_row(
            2,
            &Input {
                cf: "1;2;1".into(),
                framing: "0".into(),
            },
            derive_wr,
        );
        assert!(row.report.is_some());
        let (row, _) = analyse_row(
            3,
            &Input {
                cf: "2".into(),
                framing: "x".into(),
            },
            derive_wr,
        );
        assert!(row.error.unwrap().contains("framing"));
    }
}
