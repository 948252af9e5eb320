//! Per-substitution BLEU deltas and clean-vs-noisy robustness.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::bleu::{corpus_bleu, BleuScore, DEFAULT_MAX_N, NORMALIZATION_VERSION};
use crate::error::{Error, Result};
use crate::morphology::InflectionLexicon;
use crate::noiser::{event_categories, ErrorEvent};
use crate::types::{ErrorType, EMPTY};

/// BLEU of one subset of changed lines, noisy input versus clean input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaCell {
    pub lines: usize,
    pub noisy_bleu: f64,
    pub clean_bleu: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaEntry {
    pub original: String,
    pub replacement: String,
    #[serde(flatten)]
    pub cell: DeltaCell,
}

/// Deltas grouped by (original form, replacement form) with marginals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaReport {
    pub normalization: String,
    /// Row keys (original forms) in display order.
    pub rows: Vec<String>,
    /// Column keys (replacement forms) in display order.
    pub columns: Vec<String>,
    pub cells: Vec<DeltaEntry>,
    pub row_marginals: BTreeMap<String, DeltaCell>,
    pub column_marginals: BTreeMap<String, DeltaCell>,
    pub all: DeltaCell,
}

impl DeltaReport {
    pub fn cell(&self, original: &str, replacement: &str) -> Option<&DeltaCell> {
        self.cells
            .iter()
            .find(|e| e.original == original && e.replacement == replacement)
            .map(|e| &e.cell)
    }

    /// Matrix-shaped text table: rows are original forms, columns are
    /// replacements, with an `all` row and column.
    pub fn render_table(&self) -> String {
        let width = self
            .rows
            .iter()
            .chain(&self.columns)
            .map(|k| k.chars().count())
            .max()
            .unwrap_or(3)
            .max(7)
            + 2;
        let pad = |s: &str| format!("{s:>width$}");
        let fmt_delta = |c: Option<&DeltaCell>| match c {
            Some(c) => pad(&format!("{:.1}", c.delta)),
            None => pad(""),
        };
        let mut out = String::new();
        let _ = writeln!(out, "# BLEU(noisy input) - BLEU(clean input), normalization {}", self.normalization);
        let _ = write!(out, "{:<width$}", "original");
        for c in &self.columns {
            out.push_str(&pad(c));
        }
        out.push_str(&pad("all"));
        out.push('\n');
        for r in &self.rows {
            let _ = write!(out, "{r:<width$}");
            for c in &self.columns {
                if r == c {
                    out.push_str(&pad("--"));
                } else {
                    out.push_str(&fmt_delta(self.cell(r, c)));
                }
            }
            out.push_str(&fmt_delta(self.row_marginals.get(r)));
            out.push('\n');
        }
        let _ = write!(out, "{:<width$}", "all");
        for c in &self.columns {
            out.push_str(&fmt_delta(self.column_marginals.get(c)));
        }
        out.push_str(&fmt_delta(Some(&self.all)));
        out.push('\n');
        out
    }
}

/// Display position of a key: confusion-set order first, then the rest.
fn key_order(ty: Option<ErrorType>, keys: BTreeSet<String>) -> Vec<String> {
    let set = ty.map(ErrorType::confusion_set).unwrap_or_default();
    let mut keys: Vec<String> = keys.into_iter().collect();
    keys.sort_by_key(|k| {
        let pos = set.iter().position(|f| f == k).unwrap_or(usize::MAX);
        (pos, k == EMPTY, k.clone())
    });
    keys
}

/// Scores each group of changed lines with corpus BLEU on the noisy-input
/// and clean-input translations of exactly those lines.
///
/// `references[i]` holds the reference translations for line `i`. All
/// inputs are aligned to the clean test corpus by line index.
pub fn delta_report(
    events: &[ErrorEvent],
    noisy_translations: &[String],
    clean_translations: &[String],
    references: &[Vec<String>],
) -> Result<DeltaReport> {
    let lexicon = InflectionLexicon::builtin();
    let mut groups: BTreeMap<(String, String), Vec<usize>> = BTreeMap::new();
    let mut seen = BTreeSet::new();
    for e in events {
        let i = e.line_index;
        if i >= noisy_translations.len() || i >= clean_translations.len() || i >= references.len() {
            return Err(Error::Format(format!(
                "event for line {} has no translation or reference",
                i + 1
            )));
        }
        if !seen.insert(i) {
            return Err(Error::Format(format!("line {} has more than one event", i + 1)));
        }
        groups.entry(event_categories(e, lexicon)).or_default().push(i);
    }
    if groups.is_empty() {
        return Err(Error::Format("event log is empty".into()));
    }

    let score = |lines: &[usize]| -> Result<DeltaCell> {
        let refs: Vec<Vec<String>> = lines.iter().map(|&i| references[i].clone()).collect();
        let noisy: Vec<&String> = lines.iter().map(|&i| &noisy_translations[i]).collect();
        let clean: Vec<&String> = lines.iter().map(|&i| &clean_translations[i]).collect();
        let noisy_bleu = corpus_bleu(&noisy, &refs, DEFAULT_MAX_N)?.score;
        let clean_bleu = corpus_bleu(&clean, &refs, DEFAULT_MAX_N)?.score;
        Ok(DeltaCell {
            lines: lines.len(),
            noisy_bleu,
            clean_bleu,
            delta: noisy_bleu - clean_bleu,
        })
    };

    let ty = events.first().map(|e| e.error_type);
    let ty = ty.filter(|t| events.iter().all(|e| e.error_type == *t));
    let mut rows_by_key: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    let mut cols_by_key: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    let mut cells = Vec::new();
    for ((from, to), lines) in &groups {
        rows_by_key.entry(from.clone()).or_default().extend(lines);
        cols_by_key.entry(to.clone()).or_default().extend(lines);
        cells.push(DeltaEntry {
            original: from.clone(),
            replacement: to.clone(),
            cell: score(lines)?,
        });
    }
    let mut all_lines: Vec<usize> = seen.into_iter().collect();
    all_lines.sort_unstable();
    let marginals = |m: BTreeMap<String, Vec<usize>>| -> Result<BTreeMap<String, DeltaCell>> {
        m.into_iter()
            .map(|(k, mut lines)| {
                lines.sort_unstable();
                Ok((k, score(&lines)?))
            })
            .collect()
    };
    let rows = key_order(ty, rows_by_key.keys().cloned().collect());
    let columns = key_order(ty, cols_by_key.keys().cloned().collect());
    Ok(DeltaReport {
        normalization: NORMALIZATION_VERSION.to_string(),
        rows,
        columns,
        cells,
        row_marginals: marginals(rows_by_key)?,
        column_marginals: marginals(cols_by_key)?,
        all: score(&all_lines)?,
    })
}

/// BLEU of noisy-input translations against clean-input translations used
/// as references. 100 means the noise did not change the output at all.
/// Each element of `clean_sets` is one full set of clean translations.
pub fn self_bleu_robustness(noisy: &[String], clean_sets: &[Vec<String>]) -> Result<BleuScore> {
    if clean_sets.is_empty() {
        return Err(Error::Bleu("no clean translation sets".into()));
    }
    if let Some(set) = clean_sets.iter().find(|s| s.len() != noisy.len()) {
        return Err(Error::Bleu(format!(
            "{} noisy translations but a clean set has {}",
            noisy.len(),
            set.len()
        )));
    }
    let refs: Vec<Vec<String>> = (0..noisy.len())
        .map(|i| clean_sets.iter().map(|s| s[i].clone()).collect())
        .collect();
    corpus_bleu(noisy, &refs, DEFAULT_MAX_N)
}

/// Transposes per-file reference sets into per-line reference lists.
pub fn references_by_line(sets: &[Vec<String>]) -> Result<Vec<Vec<String>>> {
    let Some(first) = sets.first() else {
        return Ok(Vec::new());
    };
    if let Some(s) = sets.iter().find(|s| s.len() != first.len()) {
        return Err(Error::Bleu(format!(
            "reference sets differ in length ({} vs {})",
            first.len(),
            s.len()
        )));
    }
    Ok((0..first.len())
        .map(|i| sets.iter().map(|s| s[i].clone()).collect())
        .collect())
}
