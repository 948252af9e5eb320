//! Error statistics from M2 annotations, distilled into confusion matrices.
//!
//! Counts are tallied in the correction direction (what the learner wrote,
//! what the annotator changed it to). Matrices are stored in the noise
//! direction: a row is the correct form, its columns are the erroneous forms
//! it turns into, because injection maps clean text to noisy text.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::m2::{Annotation, M2Entry};
use crate::morphology::InflectionLexicon;
use crate::types::{
    ErrorType, EMPTY, NOT_SECOND_SG_PAST, NOT_THIRD_SG, PL, SECOND_SG_PAST, SG, THIRD_SG,
};

pub const FORMAT_VERSION: u32 = 1;

pub const SITE_PRIOR_RECIPE: &str = "relative frequency of noise-direction actions in the \
annotation counts: correct->empty is delete, empty->erroneous is insert, anything else \
substitute; uniform over the type's possible actions when a type has no counts. Reported only; \
candidate sites are sampled uniformly.";

/// Error code to error type.
pub type CodeMap = BTreeMap<String, ErrorType>;

/// NUCLE's codes for the four learned types.
pub fn default_code_map() -> CodeMap {
    [
        ("ArtOrDet", ErrorType::Art),
        ("Prep", ErrorType::Prep),
        ("Nn", ErrorType::Nn),
        ("SVA", ErrorType::Sva),
    ]
    .into_iter()
    .map(|(code, t)| (code.to_string(), t))
    .collect()
}

/// Parses `Code=TYPE,Code=TYPE` overrides.
pub fn parse_code_map(spec: &str) -> Result<CodeMap> {
    let mut map = CodeMap::new();
    for pair in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (code, ty) = pair
            .split_once('=')
            .ok_or_else(|| Error::Format(format!("code map entry `{pair}` is not CODE=TYPE")))?;
        let ty: ErrorType = ty.trim().parse()?;
        if ty == ErrorType::Drop {
            return Err(Error::Format("DROP has no annotation source".into()));
        }
        map.insert(code.trim().to_string(), ty);
    }
    Ok(map)
}

/// Raw tallies in the correction direction.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ErrorCounts {
    /// type -> learner form -> corrected form -> count
    pub cells: BTreeMap<ErrorType, BTreeMap<String, BTreeMap<String, u64>>>,
    /// Mapped annotations that fall outside their type's confusion set.
    pub other: BTreeMap<ErrorType, u64>,
    /// `learner -> corrected` strings behind the `other` counts.
    pub other_detail: BTreeMap<ErrorType, BTreeMap<String, u64>>,
    pub unmapped_codes: BTreeMap<String, u64>,
    pub entries: usize,
    pub annotations: u64,
    pub mapped: u64,
}

impl ErrorCounts {
    pub fn get(&self, ty: ErrorType, learner: &str, corrected: &str) -> u64 {
        self.cells
            .get(&ty)
            .and_then(|rows| rows.get(learner))
            .and_then(|row| row.get(corrected))
            .copied()
            .unwrap_or(0)
    }

    pub fn cell_total(&self) -> u64 {
        self.cells
            .values()
            .flat_map(|rows| rows.values())
            .flat_map(|row| row.values())
            .sum()
    }

    pub fn other_total(&self) -> u64 {
        self.other.values().sum()
    }

    fn add(&mut self, ty: ErrorType, learner: &str, corrected: &str) {
        *self
            .cells
            .entry(ty)
            .or_default()
            .entry(learner.to_string())
            .or_default()
            .entry(corrected.to_string())
            .or_default() += 1;
    }

    fn add_other(&mut self, ty: ErrorType, learner: &str, corrected: &str) {
        *self.other.entry(ty).or_default() += 1;
        *self
            .other_detail
            .entry(ty)
            .or_default()
            .entry(format!("{learner} -> {corrected}"))
            .or_default() += 1;
    }
}

/// Tallies every mapped annotation; all annotators count independently.
pub fn collect_stats(
    entries: &[M2Entry],
    code_map: &CodeMap,
    lexicon: &InflectionLexicon,
) -> ErrorCounts {
    let mut counts = ErrorCounts {
        entries: entries.len(),
        ..Default::default()
    };
    for entry in entries {
        for ann in &entry.annotations {
            counts.annotations += 1;
            let Some(&ty) = code_map.get(&ann.code) else {
                *counts.unmapped_codes.entry(ann.code.clone()).or_default() += 1;
                continue;
            };
            counts.mapped += 1;
            let learner = entry.span_tokens(ann).join(" ").to_lowercase();
            let corrected = ann.correction.to_lowercase();
            match classify(ty, entry, ann, lexicon) {
                Some((from, to)) => counts.add(ty, from, to),
                None => counts.add_other(ty, or_empty(&learner), or_empty(&corrected)),
            }
        }
    }
    counts
}

fn or_empty(s: &str) -> &str {
    if s.is_empty() {
        EMPTY
    } else {
        s
    }
}

/// Maps an annotation to (learner form, corrected form) inside the type's
/// confusion set, or `None` if it doesn't fit.
fn classify<'a>(
    ty: ErrorType,
    entry: &'a M2Entry,
    ann: &'a Annotation,
    lexicon: &InflectionLexicon,
) -> Option<(&'static str, &'static str)> {
    let span = entry.span_tokens(ann);
    let correction: Vec<&str> = ann.correction.split_whitespace().collect();
    match ty {
        ErrorType::Art | ErrorType::Prep => {
            let learner = closed_form(ty, span.iter().map(String::as_str))?;
            let corrected = closed_form(ty, correction.iter().copied())?;
            (learner != corrected).then_some((learner, corrected))
        }
        ErrorType::Nn => {
            let ([learner], [corrected]) = (span, correction.as_slice()) else {
                return None;
            };
            let (learner, corrected) = (learner.to_lowercase(), corrected.to_lowercase());
            let plural = lexicon.pluralize(&learner).ok()?;
            if plural.invariant {
                return None;
            }
            if plural.form == corrected {
                return Some((SG, PL));
            }
            let singular = lexicon.singularize(&learner).ok()?;
            (singular.form == corrected && singular.form != learner).then_some((PL, SG))
        }
        ErrorType::Sva => {
            let ([learner], [corrected]) = (span, correction.as_slice()) else {
                return None;
            };
            let (learner, corrected) = (learner.to_lowercase(), corrected.to_lowercase());
            match (learner.as_str(), corrected.as_str()) {
                ("was", "were") => return Some((NOT_SECOND_SG_PAST, SECOND_SG_PAST)),
                ("were", "was") => return Some((SECOND_SG_PAST, NOT_SECOND_SG_PAST)),
                _ => {}
            }
            if lexicon.third_person(&learner).ok()? == corrected {
                Some((NOT_THIRD_SG, THIRD_SG))
            } else if lexicon.third_person(&corrected).ok()? == learner {
                Some((THIRD_SG, NOT_THIRD_SG))
            } else {
                None
            }
        }
        ErrorType::Drop => None,
    }
}

/// Zero tokens is ∅, one token must be a confusion-set member.
fn closed_form<'a>(ty: ErrorType, mut tokens: impl Iterator<Item = &'a str>) -> Option<&'static str> {
    match (tokens.next(), tokens.next()) {
        (None, _) => Some(EMPTY),
        (Some(tok), None) => {
            let lower = tok.to_lowercase();
            ty.forms().iter().copied().find(|f| *f == lower)
        }
        _ => None,
    }
}

/// One row per correct form: erroneous form -> probability.
pub type MatrixRow = BTreeMap<String, f64>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct ConfusionMatrix {
    pub rows: BTreeMap<String, MatrixRow>,
}

impl ConfusionMatrix {
    pub fn row(&self, correct: &str) -> Option<&MatrixRow> {
        self.rows.get(correct)
    }
}

/// How often errors of a type delete, substitute or insert a word.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SiteActionPriors {
    pub delete: f64,
    pub substitute: f64,
    pub insert: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceFile {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct MatrixMetadata {
    pub orientation: String,
    pub sources: Vec<SourceFile>,
    pub entries: usize,
    pub annotations: u64,
    pub mapped_annotations: u64,
    pub code_map: CodeMap,
    /// Raw tallies, correction direction.
    pub counts: BTreeMap<ErrorType, BTreeMap<String, BTreeMap<String, u64>>>,
    pub other: BTreeMap<ErrorType, u64>,
    pub other_detail: BTreeMap<ErrorType, BTreeMap<String, u64>>,
    pub unmapped_codes: BTreeMap<String, u64>,
    /// Rows that had no mass and were filled uniformly.
    pub uniform_rows: BTreeMap<ErrorType, Vec<String>>,
    pub all_uniform: bool,
    pub site_action_prior_recipe: String,
    #[serde(default)]
    pub reproducibility: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfusionMatrixSet {
    pub format_version: u32,
    pub smoothing: f64,
    pub matrices: BTreeMap<ErrorType, ConfusionMatrix>,
    pub site_action_priors: BTreeMap<ErrorType, SiteActionPriors>,
    pub metadata: MatrixMetadata,
}

/// Normalizes counts into noise-direction matrices with additive smoothing.
pub fn build_confusion_matrices(counts: &ErrorCounts, smoothing: f64) -> ConfusionMatrixSet {
    assert!(smoothing >= 0.0 && smoothing.is_finite(), "smoothing must be >= 0");
    let mut matrices = BTreeMap::new();
    let mut uniform_rows: BTreeMap<ErrorType, Vec<String>> = BTreeMap::new();
    let mut priors = BTreeMap::new();

    for ty in ErrorType::LEARNED {
        let set = ty.confusion_set();
        let mut matrix = ConfusionMatrix::default();
        for &correct in &set {
            let targets: Vec<&str> = set.iter().copied().filter(|f| *f != correct).collect();
            // noise direction: correct -> erroneous is the learner's erroneous -> correct
            let weights: Vec<f64> = targets
                .iter()
                .map(|&wrong| counts.get(ty, wrong, correct) as f64 + smoothing)
                .collect();
            let mass: f64 = weights.iter().sum();
            let row: MatrixRow = if mass > 0.0 {
                targets
                    .iter()
                    .zip(&weights)
                    .map(|(t, w)| (t.to_string(), w / mass))
                    .collect()
            } else {
                uniform_rows.entry(ty).or_default().push(correct.to_string());
                let p = 1.0 / targets.len() as f64;
                targets.iter().map(|t| (t.to_string(), p)).collect()
            };
            matrix.rows.insert(correct.to_string(), row);
        }
        matrices.insert(ty, matrix);
        priors.insert(ty, site_action_priors(counts, ty));
    }

    let all_uniform = ErrorType::LEARNED.iter().all(|ty| {
        uniform_rows.get(ty).map_or(0, Vec::len) == ty.confusion_set().len()
    });

    ConfusionMatrixSet {
        format_version: FORMAT_VERSION,
        smoothing,
        matrices,
        site_action_priors: priors,
        metadata: MatrixMetadata {
            orientation: "rows are correct forms, columns are the erroneous forms they are \
replaced with"
                .into(),
            sources: Vec::new(),
            entries: counts.entries,
            annotations: counts.annotations,
            mapped_annotations: counts.mapped,
            code_map: CodeMap::new(),
            counts: counts.cells.clone(),
            other: counts.other.clone(),
            other_detail: counts.other_detail.clone(),
            unmapped_codes: counts.unmapped_codes.clone(),
            uniform_rows,
            all_uniform,
            site_action_prior_recipe: SITE_PRIOR_RECIPE.into(),
            reproducibility: Vec::new(),
        },
    }
}

fn site_action_priors(counts: &ErrorCounts, ty: ErrorType) -> SiteActionPriors {
    let (mut delete, mut substitute, mut insert) = (0u64, 0u64, 0u64);
    if let Some(rows) = counts.cells.get(&ty) {
        for (learner, row) in rows {
            for (corrected, n) in row {
                if learner == EMPTY {
                    delete += n;
                } else if corrected == EMPTY {
                    insert += n;
                } else {
                    substitute += n;
                }
            }
        }
    }
    let total = delete + substitute + insert;
    if total == 0 {
        return if ty.has_empty() {
            let third = 1.0 / 3.0;
            SiteActionPriors {
                delete: third,
                substitute: third,
                insert: third,
            }
        } else {
            SiteActionPriors {
                delete: 0.0,
                substitute: 1.0,
                insert: 0.0,
            }
        };
    }
    let t = total as f64;
    SiteActionPriors {
        delete: delete as f64 / t,
        substitute: substitute as f64 / t,
        insert: insert as f64 / t,
    }
}

impl ConfusionMatrixSet {
    /// Matrices with no statistics behind them: every row uniform.
    pub fn uniform() -> ConfusionMatrixSet {
        build_confusion_matrices(&ErrorCounts::default(), 0.0)
    }

    pub fn matrix(&self, ty: ErrorType) -> Option<&ConfusionMatrix> {
        self.matrices.get(&ty)
    }

    pub fn row(&self, ty: ErrorType, correct: &str) -> Option<&MatrixRow> {
        self.matrices.get(&ty)?.row(correct)
    }

    /// Replaces one row. Handy for forcing outcomes.
    pub fn set_row(&mut self, ty: ErrorType, correct: &str, row: &[(&str, f64)]) {
        self.matrices.entry(ty).or_default().rows.insert(
            correct.to_string(),
            row.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        );
    }

    /// Row-stochastic with closed support.
    pub fn validate(&self) -> Result<()> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Format(format!(
                "unsupported matrix format_version {} (expected {FORMAT_VERSION})",
                self.format_version
            )));
        }
        for (ty, matrix) in &self.matrices {
            if *ty == ErrorType::Drop {
                return Err(Error::Format("DROP has no confusion matrix".into()));
            }
            for (from, row) in &matrix.rows {
                if !ty.in_confusion_set(from) {
                    return Err(Error::Format(format!("{ty} row `{from}` is not in the confusion set")));
                }
                let mut sum = 0.0;
                for (to, p) in row {
                    if !ty.in_confusion_set(to) {
                        return Err(Error::Format(format!(
                            "{ty} row `{from}` has column `{to}` outside the confusion set"
                        )));
                    }
                    if !(0.0..=1.0).contains(p) {
                        return Err(Error::Format(format!("{ty} {from}->{to} probability {p}")));
                    }
                    sum += p;
                }
                if (sum - 1.0).abs() > 1e-9 {
                    return Err(Error::Format(format!("{ty} row `{from}` sums to {sum}")));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<ConfusionMatrixSet> {
        let set: ConfusionMatrixSet = serde_json::from_str(text)?;
        set.validate()?;
        Ok(set)
    }

    pub fn read(path: &Path) -> Result<ConfusionMatrixSet> {
        let text = fs::read_to_string(path).map_err(|e| Error::file(path, e))?;
        ConfusionMatrixSet::from_json(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::m2::parse_m2_str;

    fn lex() -> &'static InflectionLexicon {
        InflectionLexicon::builtin()
    }

    fn counts_for(m2: &str) -> ErrorCounts {
        collect_stats(&parse_m2_str(m2).unwrap(), &default_code_map(), lex())
    }

    #[test]
    fn article_substitution_is_tallied() {
        let c = counts_for("S I saw a cat .\nA 2 3|||ArtOrDet|||the|||REQUIRED|||-NONE-|||0\n\n");
        assert_eq!(c.get(ErrorType::Art, "a", "the"), 1);
        assert_eq!(c.cell_total(), 1);
    }

    #[test]
    fn preposition_insertion_is_tallied_from_empty() {
        let c = counts_for("S I waited you .\nA 2 2|||Prep|||for|||REQUIRED|||-NONE-|||0\n\n");
        assert_eq!(c.get(ErrorType::Prep, EMPTY, "for"), 1);
    }

    #[test]
    fn noun_number_uses_categories() {
        let c = counts_for("S 226 vote .\nA 1 2|||Nn|||votes|||REQUIRED|||-NONE-|||0\n\n");
        assert_eq!(c.get(ErrorType::Nn, SG, PL), 1);
        let c = counts_for("S many votes .\nA 1 2|||Nn|||vote|||REQUIRED|||-NONE-|||0\n\n");
        assert_eq!(c.get(ErrorType::Nn, PL, SG), 1);
    }

    #[test]
    fn agreement_uses_categories() {
        let c = counts_for(
            "S The cat sit .\nA 2 3|||SVA|||sits|||REQUIRED|||-NONE-|||0\n\n\
             S They was here .\nA 1 2|||SVA|||were|||REQUIRED|||-NONE-|||1\n\n\
             S They is here .\nA 1 2|||SVA|||are|||REQUIRED|||-NONE-|||1\n\n",
        );
        assert_eq!(c.get(ErrorType::Sva, NOT_THIRD_SG, THIRD_SG), 1);
        assert_eq!(c.get(ErrorType::Sva, NOT_SECOND_SG_PAST, SECOND_SG_PAST), 1);
        assert_eq!(c.get(ErrorType::Sva, THIRD_SG, NOT_THIRD_SG), 1);
    }

    #[test]
    fn out_of_set_forms_go_to_other() {
        let c = counts_for(
            "S I like this cats .\nA 2 3|||ArtOrDet|||these|||REQUIRED|||-NONE-|||0\n\
             A 2 3|||Wform|||these|||REQUIRED|||-NONE-|||0\n\n",
        );
        assert_eq!(c.cell_total(), 0);
        assert_eq!(c.other[&ErrorType::Art], 1);
        assert_eq!(c.other_detail[&ErrorType::Art]["this -> these"], 1);
        assert_eq!(c.unmapped_codes["Wform"], 1);
        assert_eq!(c.mapped, c.cell_total() + c.other_total());
    }

    #[test]
    fn normalizes_in_noise_direction() {
        let mut counts = ErrorCounts::default();
        for _ in 0..3 {
            counts.add(ErrorType::Art, "a", "the");
        }
        counts.add(ErrorType::Art, EMPTY, "the");
        let set = build_confusion_matrices(&counts, 0.0);
        let row = set.row(ErrorType::Art, "the").unwrap();
        assert_eq!(row["a"], 0.75);
        assert_eq!(row["an"], 0.0);
        assert_eq!(row[EMPTY], 0.25);
        assert_eq!(set.site_action_priors[&ErrorType::Art].delete, 0.25);
        assert_eq!(set.site_action_priors[&ErrorType::Art].substitute, 0.75);
    }

    #[test]
    fn zero_mass_rows_are_uniform_over_non_identity() {
        let set = build_confusion_matrices(&ErrorCounts::default(), 0.0);
        assert_eq!(set.row(ErrorType::Nn, SG).unwrap()[PL], 1.0);
        assert_eq!(set.row(ErrorType::Nn, PL).unwrap()[SG], 1.0);
        assert_eq!(set.row(ErrorType::Nn, SG).unwrap().len(), 1);
        assert!(set.metadata.all_uniform);
        let art = set.row(ErrorType::Art, EMPTY).unwrap();
        assert_eq!(art.len(), 3);
        assert!(art.values().all(|p| (p - 1.0 / 3.0).abs() < 1e-15));
        set.validate().unwrap();
    }

    #[test]
    fn smoothing_spreads_mass() {
        let mut counts = ErrorCounts::default();
        counts.add(ErrorType::Nn, SG, PL);
        let set = build_confusion_matrices(&counts, 1.0);
        let row = set.row(ErrorType::Art, "a").unwrap();
        assert!(row.values().all(|p| (p - 1.0 / 3.0).abs() < 1e-12));
        assert!(!set.metadata.all_uniform);
        assert!(set.metadata.uniform_rows.is_empty());
    }

    #[test]
    fn json_round_trip() {
        let set = ConfusionMatrixSet::uniform();
        let back = ConfusionMatrixSet::from_json(&set.to_json().unwrap()).unwrap();
        assert_eq!(back, set);
        let v: serde_json::Value = serde_json::from_str(&set.to_json().unwrap()).unwrap();
        assert_eq!(v["format_version"], 1);
        assert!(v["matrices"]["ART"]["the"].is_object());
    }

    #[test]
    fn validate_rejects_bad_rows() {
        let mut set = ConfusionMatrixSet::uniform();
        set.set_row(ErrorType::Art, "the", &[("a", 0.5)]);
        assert!(set.validate().is_err());
        let mut set = ConfusionMatrixSet::uniform();
        set.set_row(ErrorType::Art, "the", &[("this", 1.0)]);
        assert!(set.validate().is_err());
        let mut set = ConfusionMatrixSet::uniform();
        set.set_row(ErrorType::Nn, EMPTY, &[(SG, 1.0)]);
        assert!(set.validate().is_err());
    }

    #[test]
    fn code_map_overrides() {
        let map = parse_code_map("Det=ART, Preposition=PREP").unwrap();
        assert_eq!(map["Det"], ErrorType::Art);
        assert!(parse_code_map("X=DROP").is_err());
        assert!(parse_code_map("nope").is_err());
    }
}
