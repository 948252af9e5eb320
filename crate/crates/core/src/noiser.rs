//! Exactly-one-error-per-sentence injection.
//!
//! For a sentence and its tree, the candidate sites of the requested type
//! are collected, one is drawn uniformly, and the replacement is drawn from
//! the confusion-matrix row of the site's current form with the identity
//! outcome removed. Sentences without a usable site pass through unchanged.
//!
//! Every line gets its own ChaCha stream keyed by `(seed, line_index)`, so a
//! line's output never depends on other lines or on processing order.

use std::fmt;
use std::fmt::Write as _;

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::morphology::{capitalize, decapitalize, CasePattern, InflectionLexicon};
use crate::stats::ConfusionMatrixSet;
use crate::treebank::{candidate_sites, parse_ptb, unescape_token, CandidateSite, ParseTree};
use crate::types::{ErrorType, SiteKind, EMPTY, PL, SG};

#[derive(Debug, Clone)]
pub struct NoiseConfig {
    pub error_type: ErrorType,
    pub matrices: ConfusionMatrixSet,
    pub seed: u64,
}

impl NoiseConfig {
    pub fn new(error_type: ErrorType, matrices: ConfusionMatrixSet, seed: u64) -> Result<Self> {
        if error_type != ErrorType::Drop && matrices.matrix(error_type).is_none() {
            return Err(Error::MissingMatrix(error_type.to_string()));
        }
        Ok(NoiseConfig {
            error_type,
            matrices,
            seed,
        })
    }

    /// DROP needs no statistics.
    pub fn drop(seed: u64) -> Self {
        NoiseConfig {
            error_type: ErrorType::Drop,
            matrices: ConfusionMatrixSet::uniform(),
            seed,
        }
    }
}

/// The random stream for one line.
pub fn line_rng(seed: u64, line_index: usize) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(line_index as u64);
    rng
}

/// Provenance of one applied error.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorEvent {
    pub line_index: usize,
    pub error_type: ErrorType,
    pub site_kind: SiteKind,
    /// Token index, or character index for `char_drop`.
    pub position: usize,
    /// Surface form replaced, ∅ for insertions.
    pub original: String,
    /// Surface form written, ∅ for deletions.
    pub replacement: String,
}

impl fmt::Display for ErrorEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.line_index,
            self.error_type,
            self.site_kind,
            self.position,
            self.original,
            self.replacement
        )
    }
}

const EVENT_HEADER: &str = "line_index\ttype\tsite_kind\tposition\toriginal\treplacement";

pub fn write_event_log(events: &[ErrorEvent]) -> String {
    let mut out = String::with_capacity(events.len() * 40 + 64);
    out.push_str(EVENT_HEADER);
    out.push('\n');
    for e in events {
        let _ = writeln!(out, "{e}");
    }
    out
}

pub fn parse_event_log(text: &str) -> Result<Vec<ErrorEvent>> {
    let mut events = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.is_empty() || (idx == 0 && line == EVENT_HEADER) {
            continue;
        }
        let bad = |what: &str| Error::Format(format!("event log line {}: {what}", idx + 1));
        let fields: Vec<&str> = line.split('\t').collect();
        let [line_index, ty, kind, position, original, replacement] = fields[..] else {
            return Err(bad(&format!("expected 6 fields, got {}", fields.len())));
        };
        events.push(ErrorEvent {
            line_index: line_index.parse().map_err(|_| bad("bad line index"))?,
            error_type: ty.parse()?,
            site_kind: kind.parse()?,
            position: position.parse().map_err(|_| bad("bad position"))?,
            original: original.to_string(),
            replacement: replacement.to_string(),
        });
    }
    Ok(events)
}

/// Sentence-initial words that lose their capital when an article is
/// inserted in front of them.
const CLOSED_CLASS_STARTERS: &[&str] = &[
    "a", "an", "the", "this", "that", "these", "those", "some", "many", "most", "much", "few",
    "several", "all", "both", "each", "every", "no", "such", "other", "another", "more", "less",
    "it", "its", "he", "she", "we", "they", "you", "his", "her", "our", "their", "my", "your",
    "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten", "first",
    "last", "next", "new", "old", "recent", "current", "former", "same",
];

/// Applies an event's edit to clean tokens, including the sentence-initial
/// capitalization repair. Not valid for `char_drop` events.
pub fn apply_event(tokens: &[String], event: &ErrorEvent) -> Result<Vec<String>> {
    let pos = event.position;
    let bad = |what: &str| Error::Format(format!("line {}: {what}", event.line_index + 1));
    let mut out = tokens.to_vec();
    match event.site_kind {
        SiteKind::Substitute => {
            if pos >= out.len() || out[pos] != event.original {
                return Err(bad("substitution does not match the clean token"));
            }
            out[pos] = event.replacement.clone();
        }
        SiteKind::Delete => {
            if pos >= out.len() || out[pos] != event.original {
                return Err(bad("deletion does not match the clean token"));
            }
            let removed = out.remove(pos);
            if pos == 0 && starts_upper(&removed) {
                if let Some(first) = out.first_mut() {
                    *first = capitalize(first);
                }
            }
        }
        SiteKind::Insert => {
            if pos > out.len() {
                return Err(bad("insertion position past the end of the sentence"));
            }
            if pos == 0 {
                if let Some(first) = out.first_mut() {
                    if CasePattern::of(first) == CasePattern::Capitalized
                        && CLOSED_CLASS_STARTERS.contains(&first.to_lowercase().as_str())
                    {
                        *first = decapitalize(first);
                    }
                }
            }
            out.insert(pos, event.replacement.clone());
        }
        SiteKind::CharDrop => return Err(bad("char_drop events apply to raw strings")),
    }
    Ok(out)
}

fn starts_upper(s: &str) -> bool {
    s.chars().next().is_some_and(char::is_uppercase)
}

/// Removes one character from a raw line as a `char_drop` event describes.
pub fn apply_char_drop(line: &str, event: &ErrorEvent) -> Result<String> {
    let mut out = String::with_capacity(line.len());
    let mut found = false;
    for (i, c) in line.chars().enumerate() {
        if i == event.position {
            let mut buf = [0u8; 4];
            if *c.encode_utf8(&mut buf) != *event.original {
                break;
            }
            found = true;
            continue;
        }
        out.push(c);
    }
    if !found {
        return Err(Error::Format(format!(
            "line {}: dropped character does not match the clean line",
            event.line_index + 1
        )));
    }
    Ok(out)
}

/// Rebuilds the noisy corpus from the clean corpus and an event log.
pub fn replay_events(clean: &[String], events: &[ErrorEvent]) -> Result<Vec<String>> {
    let mut out = clean.to_vec();
    let mut seen = vec![false; clean.len()];
    for e in events {
        let line = clean.get(e.line_index).ok_or_else(|| {
            Error::Format(format!("event references line {} past the corpus end", e.line_index + 1))
        })?;
        if std::mem::replace(&mut seen[e.line_index], true) {
            return Err(Error::Format(format!("line {} has two events", e.line_index + 1)));
        }
        out[e.line_index] = if e.site_kind == SiteKind::CharDrop {
            apply_char_drop(line, e)?
        } else {
            let tokens: Vec<String> = line.split_whitespace().map(str::to_string).collect();
            apply_event(&tokens, e)?.join(" ")
        };
    }
    Ok(out)
}

/// A site together with the outcomes it can realize and their weights.
struct Realizable {
    site: CandidateSite,
    outcomes: Vec<(String, f64)>,
}

fn realizable_outcomes(
    site: &CandidateSite,
    token: Option<&str>,
    config: &NoiseConfig,
    lexicon: &InflectionLexicon,
) -> Option<Vec<(String, f64)>> {
    let ty = config.error_type;
    let row = config.matrices.row(ty, &site.current_form);
    match ty {
        ErrorType::Art | ErrorType::Prep => {
            let row = row?;
            let outcomes: Vec<(String, f64)> = row
                .iter()
                .filter(|(to, p)| **p > 0.0 && to.as_str() != site.current_form)
                .filter(|(to, _)| site.site_kind == SiteKind::Substitute || to.as_str() != EMPTY)
                .map(|(to, p)| (to.clone(), *p))
                .collect();
            (!outcomes.is_empty()).then_some(outcomes)
        }
        ErrorType::Nn => {
            let token = token?;
            let toggled = match site.current_form.as_str() {
                SG => lexicon.pluralize(token).ok()?,
                _ => lexicon.singularize(token).ok()?,
            };
            if toggled.invariant || toggled.form.eq_ignore_ascii_case(token) {
                return None;
            }
            Some(vec![(toggled.form, 1.0)])
        }
        ErrorType::Sva => {
            let token = token?;
            let toggled = lexicon.toggle_verb_agreement(token, &site.tag).ok()?;
            if toggled.eq_ignore_ascii_case(token) {
                return None;
            }
            Some(vec![(toggled, 1.0)])
        }
        ErrorType::Drop => None,
    }
}

fn check_alignment(tokens: &[String], tree: &ParseTree, line_index: usize) -> Result<()> {
    let leaves = tree.leaves();
    if leaves.len() != tokens.len() {
        return Err(Error::Misaligned {
            line: line_index + 1,
            detail: format!("{} leaves, {} tokens", leaves.len(), tokens.len()),
        });
    }
    for (leaf, tok) in leaves.iter().zip(tokens) {
        if leaf.token != tok && unescape_token(leaf.token) != tok {
            return Err(Error::Misaligned {
                line: line_index + 1,
                detail: format!("leaf {} is `{}`, token is `{tok}`", leaf.index, leaf.token),
            });
        }
    }
    Ok(())
}

/// Introduces at most one error of `config.error_type` into a tokenized
/// sentence.
pub fn noisify_sentence(
    tokens: &[String],
    tree: &ParseTree,
    config: &NoiseConfig,
    line_index: usize,
) -> Result<(Vec<String>, Option<ErrorEvent>)> {
    if config.error_type == ErrorType::Drop {
        let (line, event) = drop_one_char(&tokens.join(" "), config, line_index);
        let tokens = line.split_whitespace().map(str::to_string).collect();
        return Ok((tokens, event));
    }
    check_alignment(tokens, tree, line_index)?;
    let lexicon = InflectionLexicon::builtin();
    let sites: Vec<Realizable> = candidate_sites(tree, config.error_type)
        .into_iter()
        .filter_map(|site| {
            let token = tokens.get(site.token_index).map(String::as_str);
            let outcomes = realizable_outcomes(&site, token, config, lexicon)?;
            Some(Realizable { site, outcomes })
        })
        .collect();
    if sites.is_empty() {
        return Ok((tokens.to_vec(), None));
    }

    let mut rng = line_rng(config.seed, line_index);
    let chosen = &sites[rng.gen_range(0..sites.len())];
    let weights = WeightedIndex::new(chosen.outcomes.iter().map(|(_, w)| *w))
        .expect("realizable outcomes have positive weight");
    let outcome = chosen.outcomes[weights.sample(&mut rng)].0.as_str();

    let event = realize(tokens, &chosen.site, outcome, config.error_type, line_index, lexicon);
    let noisy = apply_event(tokens, &event)?;
    Ok((noisy, Some(event)))
}

/// Builds the event for a chosen site and outcome.
pub fn realize(
    tokens: &[String],
    site: &CandidateSite,
    outcome: &str,
    error_type: ErrorType,
    line_index: usize,
    lexicon: &InflectionLexicon,
) -> ErrorEvent {
    let pos = site.token_index;
    let (site_kind, original, replacement) = match (site.site_kind, outcome) {
        (SiteKind::Insert, form) => {
            let following = tokens.get(pos).map(String::as_str).unwrap_or("");
            let lower = if error_type == ErrorType::Art && (form == "a" || form == "an") {
                lexicon.choose_indefinite(following)
            } else {
                form
            };
            let surface = if pos == 0 && starts_upper(following) {
                capitalize(lower)
            } else {
                lower.to_string()
            };
            (SiteKind::Insert, EMPTY.to_string(), surface)
        }
        (_, EMPTY) => (SiteKind::Delete, tokens[pos].clone(), EMPTY.to_string()),
        (_, form) => {
            let original = &tokens[pos];
            let surface = match error_type {
                // NN/SVA outcomes are already inflected surface forms.
                ErrorType::Nn | ErrorType::Sva => form.to_string(),
                _ => CasePattern::of(original).apply(form),
            };
            (SiteKind::Substitute, original.clone(), surface)
        }
    };
    ErrorEvent {
        line_index,
        error_type,
        site_kind,
        position: pos,
        original,
        replacement,
    }
}

/// Deletes one non-whitespace character, chosen uniformly.
pub fn drop_one_char(
    sentence: &str,
    config: &NoiseConfig,
    line_index: usize,
) -> (String, Option<ErrorEvent>) {
    let candidates: Vec<(usize, char)> = sentence
        .chars()
        .enumerate()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    if candidates.is_empty() {
        return (sentence.to_string(), None);
    }
    let mut rng = line_rng(config.seed, line_index);
    let (position, dropped) = candidates[rng.gen_range(0..candidates.len())];
    let out: String = sentence
        .chars()
        .enumerate()
        .filter(|(i, _)| *i != position)
        .map(|(_, c)| c)
        .collect();
    let event = ErrorEvent {
        line_index,
        error_type: ErrorType::Drop,
        site_kind: SiteKind::CharDrop,
        position,
        original: dropped.to_string(),
        replacement: EMPTY.to_string(),
    };
    (out, Some(event))
}

/// Per-type change statistics for a noised corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseSummary {
    pub error_type: ErrorType,
    pub seed: u64,
    pub lines: usize,
    pub changed: usize,
    pub changed_percent: f64,
}

impl NoiseSummary {
    /// One line in the style of a dataset statistics table.
    pub fn table_row(&self) -> String {
        format!(
            "{:<6}{:>8.1}%   ({} of {} lines changed)",
            self.error_type.tag(),
            self.changed_percent,
            self.changed,
            self.lines
        )
    }
}

#[derive(Debug, Clone)]
pub struct NoisedCorpus {
    pub lines: Vec<String>,
    pub events: Vec<ErrorEvent>,
    pub summary: NoiseSummary,
}

/// Noises every line independently. `trees` is required for all types but
/// DROP. `workers` only changes speed, never output.
pub fn noisify_corpus(
    raw: &[String],
    trees: Option<&[String]>,
    config: &NoiseConfig,
    workers: usize,
) -> Result<NoisedCorpus> {
    let trees = match (config.error_type, trees) {
        (ErrorType::Drop, _) => None,
        (_, None) => {
            return Err(Error::Format(format!("{} noise needs a tree file", config.error_type)))
        }
        (_, Some(t)) => {
            if t.len() != raw.len() {
                return Err(Error::LineCount {
                    left: "corpus".into(),
                    left_lines: raw.len(),
                    right: "tree file".into(),
                    right_lines: t.len(),
                });
            }
            Some(t)
        }
    };

    let process = |(i, line): (usize, &String)| -> Result<(String, Option<ErrorEvent>)> {
        if config.error_type == ErrorType::Drop {
            return Ok(drop_one_char(line, config, i));
        }
        let tree_line = &trees.expect("checked above")[i];
        let tree = parse_ptb(tree_line).map_err(|e| Error::Format(format!("line {}: {e}", i + 1)))?;
        let tokens: Vec<String> = line.split_whitespace().map(str::to_string).collect();
        let (noisy, event) = noisify_sentence(&tokens, &tree, config, i)?;
        Ok(match event {
            Some(e) => (noisy.join(" "), Some(e)),
            None => (line.clone(), None),
        })
    };

    let results: Vec<(String, Option<ErrorEvent>)> = if workers <= 1 {
        raw.iter().enumerate().map(process).collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::Format(format!("cannot start worker pool: {e}")))?;
        pool.install(|| raw.par_iter().enumerate().map(process).collect::<Result<_>>())?
    };

    let mut lines = Vec::with_capacity(results.len());
    let mut events = Vec::new();
    for (line, event) in results {
        lines.push(line);
        events.extend(event);
    }
    let changed = events.len();
    let summary = NoiseSummary {
        error_type: config.error_type,
        seed: config.seed,
        lines: raw.len(),
        changed,
        changed_percent: if raw.is_empty() {
            0.0
        } else {
            100.0 * changed as f64 / raw.len() as f64
        },
    };
    Ok(NoisedCorpus {
        lines,
        events,
        summary,
    })
}

/// Category pair for an event, used to group NN/SVA errors.
pub fn event_categories(event: &ErrorEvent, lexicon: &InflectionLexicon) -> (String, String) {
    let lower = |s: &str| s.to_lowercase();
    match event.error_type {
        ErrorType::Nn => {
            let from = lexicon.noun_number(&event.original).category();
            let to = if from == SG { PL } else { SG };
            (from.into(), to.into())
        }
        ErrorType::Sva => {
            let cat = |s: &str| lexicon.agreement_category(s).unwrap_or(EMPTY).to_string();
            (cat(&event.original), cat(&event.replacement))
        }
        ErrorType::Drop => ("char".into(), EMPTY.into()),
        _ => (lower(&event.original), lower(&event.replacement)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<String> {
        s.split_whitespace().map(str::to_string).collect()
    }

    #[test]
    fn verbless_sentence_is_unchanged() {
        let tree = parse_ptb("(NP (DT the) (JJ big) (NN dog) (. .))").unwrap();
        let cfg = NoiseConfig::new(ErrorType::Sva, ConfusionMatrixSet::uniform(), 1).unwrap();
        let tokens = toks("the big dog .");
        let (out, event) = noisify_sentence(&tokens, &tree, &cfg, 0).unwrap();
        assert_eq!(out, tokens);
        assert!(event.is_none());
    }

    #[test]
    fn single_noun_site_is_pluralized() {
        let tree = parse_ptb("(S (NP (DT The) (NN cat)) (VP (VBZ sits)) (. .))").unwrap();
        let cfg = NoiseConfig::new(ErrorType::Nn, ConfusionMatrixSet::uniform(), 7).unwrap();
        let (out, event) = noisify_sentence(&toks("The cat sits ."), &tree, &cfg, 0).unwrap();
        assert_eq!(out.join(" "), "The cats sits .");
        let event = event.unwrap();
        assert_eq!(event.site_kind, SiteKind::Substitute);
        assert_eq!((event.original.as_str(), event.replacement.as_str()), ("cat", "cats"));
    }

    #[test]
    fn misaligned_tree_is_an_error() {
        let tree = parse_ptb("(S (NP (NN cat)) (VP (VBZ sits)))").unwrap();
        let cfg = NoiseConfig::new(ErrorType::Nn, ConfusionMatrixSet::uniform(), 7).unwrap();
        let err = noisify_sentence(&toks("The cat sits"), &tree, &cfg, 4).unwrap_err();
        assert!(matches!(err, Error::Misaligned { line: 5, .. }));
    }

    #[test]
    fn deleting_the_first_word_recapitalizes() {
        let tree = parse_ptb("(S (NP (DT The) (NN cat)) (VP (VBZ sits)) (. .))").unwrap();
        let mut m = ConfusionMatrixSet::uniform();
        m.set_row(ErrorType::Art, "the", &[(EMPTY, 1.0)]);
        let cfg = NoiseConfig::new(ErrorType::Art, m, 0).unwrap();
        let (out, event) = noisify_sentence(&toks("The cat sits ."), &tree, &cfg, 0).unwrap();
        assert_eq!(out.join(" "), "Cat sits .");
        assert_eq!(event.unwrap().site_kind, SiteKind::Delete);
    }

    #[test]
    fn inserting_at_sentence_start_moves_the_capital() {
        let tree = parse_ptb("(S (NP (NNS Islamists)) (VP (VBP win)) (. .))").unwrap();
        let mut m = ConfusionMatrixSet::uniform();
        m.set_row(ErrorType::Art, EMPTY, &[("the", 1.0)]);
        let cfg = NoiseConfig::new(ErrorType::Art, m, 0).unwrap();
        let (out, _) = noisify_sentence(&toks("Islamists win ."), &tree, &cfg, 0).unwrap();
        assert_eq!(out.join(" "), "The Islamists win .");

        let tree = parse_ptb("(S (NP (CD Many) (NNS people)) (VP (VBP win)))").unwrap();
        let (out, _) = noisify_sentence(&toks("Many people win"), &tree, &cfg, 0).unwrap();
        assert_eq!(out.join(" "), "The many people win");
    }

    #[test]
    fn indefinite_insertions_agree_with_the_next_word() {
        let tree = parse_ptb("(S (VP (VB eat) (NP (NN apple))))").unwrap();
        let mut m = ConfusionMatrixSet::uniform();
        m.set_row(ErrorType::Art, EMPTY, &[("a", 1.0)]);
        let cfg = NoiseConfig::new(ErrorType::Art, m, 0).unwrap();
        let (out, event) = noisify_sentence(&toks("eat apple"), &tree, &cfg, 0).unwrap();
        assert_eq!(out.join(" "), "eat an apple");
        assert_eq!(event.unwrap().replacement, "an");
    }

    #[test]
    fn drop_examples() {
        let cfg = NoiseConfig::drop(3);
        assert_eq!(drop_one_char("", &cfg, 0), (String::new(), None));
        assert_eq!(drop_one_char("  \t", &cfg, 0).1, None);
        // find a line index whose stream picks the first character
        let (line, event) = (0..64)
            .map(|i| drop_one_char("ab", &cfg, i))
            .find(|(s, _)| s == "b")
            .unwrap();
        assert_eq!(line, "b");
        let e = event.unwrap();
        assert_eq!((e.site_kind, e.position, e.original.as_str(), e.replacement.as_str()),
            (SiteKind::CharDrop, 0, "a", EMPTY));
    }

    #[test]
    fn drop_skips_whitespace_and_handles_unicode() {
        let cfg = NoiseConfig::drop(11);
        for i in 0..200 {
            let (out, e) = drop_one_char("é b", &cfg, i);
            let e = e.unwrap();
            assert_ne!(e.original, " ");
            assert_eq!(out.chars().count(), 2);
            assert_eq!(apply_char_drop("é b", &e).unwrap(), out);
        }
    }

    #[test]
    fn event_log_round_trip() {
        let events = vec![
            ErrorEvent {
                line_index: 3,
                error_type: ErrorType::Art,
                site_kind: SiteKind::Insert,
                position: 4,
                original: EMPTY.into(),
                replacement: "the".into(),
            },
            ErrorEvent {
                line_index: 9,
                error_type: ErrorType::Drop,
                site_kind: SiteKind::CharDrop,
                position: 0,
                original: "x".into(),
                replacement: EMPTY.into(),
            },
        ];
        let text = write_event_log(&events);
        assert!(text.starts_with(EVENT_HEADER));
        assert_eq!(parse_event_log(&text).unwrap(), events);
        assert!(parse_event_log("1\tART\tinsert\n").is_err());
    }

    #[test]
    fn corpus_line_count_mismatch_fails_early() {
        let cfg = NoiseConfig::new(ErrorType::Art, ConfusionMatrixSet::uniform(), 0).unwrap();
        let raw = vec!["a b".to_string()];
        let trees: Vec<String> = vec![];
        assert!(matches!(
            noisify_corpus(&raw, Some(&trees), &cfg, 1),
            Err(Error::LineCount { .. })
        ));
        assert!(noisify_corpus(&raw, None, &cfg, 1).is_err());
    }

    #[test]
    fn replay_rejects_inconsistent_events() {
        let clean = vec!["the cat".to_string()];
        let e = ErrorEvent {
            line_index: 0,
            error_type: ErrorType::Art,
            site_kind: SiteKind::Substitute,
            position: 0,
            original: "a".into(),
            replacement: "the".into(),
        };
        assert!(replay_events(&clean, &[e.clone()]).is_err());
        let e2 = ErrorEvent { line_index: 5, ..e };
        assert!(replay_events(&clean, &[e2]).is_err());
    }

    #[test]
    fn categories_for_grouping() {
        let lex = InflectionLexicon::builtin();
        let e = ErrorEvent {
            line_index: 0,
            error_type: ErrorType::Nn,
            site_kind: SiteKind::Substitute,
            position: 0,
            original: "votes".into(),
            replacement: "vote".into(),
        };
        assert_eq!(event_categories(&e, lex), (PL.to_string(), SG.to_string()));
        let e = ErrorEvent {
            error_type: ErrorType::Art,
            original: "The".into(),
            replacement: EMPTY.into(),
            ..e
        };
        assert_eq!(event_categories(&e, lex), ("the".to_string(), EMPTY.to_string()));
    }
}
