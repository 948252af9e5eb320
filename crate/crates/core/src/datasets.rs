//! Training mixtures built from a clean corpus and its noised copies.
//!
//! * ERROR: the noised copy alone.
//! * CLEAN+ERROR: all clean pairs followed by all noised pairs.
//! * MIX-ALL: the clean block followed by one block per error type, in the
//!   fixed order drop, art, prep, nn, sva; six versions of every pair.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stats::SourceFile;
use crate::types::ErrorType;

pub const MANIFEST_VERSION: u32 = 1;

/// Where a line of a mixture came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Origin {
    Clean,
    Noisy(ErrorType),
}

impl Origin {
    pub fn tag(self) -> &'static str {
        match self {
            Origin::Clean => "clean",
            Origin::Noisy(t) => t.tag(),
        }
    }
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Origin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "clean" {
            Ok(Origin::Clean)
        } else {
            Ok(Origin::Noisy(s.parse()?))
        }
    }
}

impl From<Origin> for String {
    fn from(o: Origin) -> String {
        o.tag().to_string()
    }
}

impl TryFrom<String> for Origin {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ParallelCorpus {
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub tags: Option<Vec<Origin>>,
}

impl ParallelCorpus {
    pub fn new(source: Vec<String>, target: Vec<String>) -> Result<Self> {
        if source.len() != target.len() {
            return Err(Error::LineCount {
                left: "source".into(),
                left_lines: source.len(),
                right: "target".into(),
                right_lines: target.len(),
            });
        }
        Ok(ParallelCorpus {
            source,
            target,
            tags: None,
        })
    }

    pub fn with_tags(mut self, tags: Vec<Origin>) -> Result<Self> {
        if tags.len() != self.source.len() {
            return Err(Error::LineCount {
                left: "corpus".into(),
                left_lines: self.source.len(),
                right: "tag file".into(),
                right_lines: tags.len(),
            });
        }
        self.tags = Some(tags);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.source.len()
    }

    pub fn is_empty(&self) -> bool {
        self.source.is_empty()
    }
}

/// An exact ratio of line counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub numerator: u64,
    pub denominator: u64,
}

impl Fraction {
    pub fn new(numerator: u64, denominator: u64) -> Self {
        Fraction {
            numerator,
            denominator,
        }
    }

    pub fn percent(self) -> f64 {
        if self.denominator == 0 {
            0.0
        } else {
            100.0 * self.numerator as f64 / self.denominator as f64
        }
    }

    /// Exact comparison by cross-multiplication.
    pub fn same_ratio(self, other: Fraction) -> bool {
        self.numerator as u128 * other.denominator as u128
            == other.numerator as u128 * self.denominator as u128
    }

    pub fn halved(self) -> Fraction {
        Fraction::new(self.numerator, self.denominator * 2)
    }
}

/// A built dataset and its composition.
#[derive(Debug, Clone)]
pub struct Mixture {
    pub mode: MixMode,
    pub corpus: ParallelCorpus,
    /// Lines that differ from their clean counterpart.
    pub changed: Fraction,
    /// Per error type: changed lines of that noised copy over its length.
    pub per_type: BTreeMap<ErrorType, Fraction>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MixMode {
    #[serde(rename = "error")]
    Error,
    #[serde(rename = "clean+error")]
    CleanPlusError,
    #[serde(rename = "mix-all")]
    MixAll,
}

impl MixMode {
    pub fn name(self) -> &'static str {
        match self {
            MixMode::Error => "error",
            MixMode::CleanPlusError => "clean+error",
            MixMode::MixAll => "mix-all",
        }
    }
}

impl FromStr for MixMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "error" => Ok(MixMode::Error),
            "clean+error" => Ok(MixMode::CleanPlusError),
            "mix-all" => Ok(MixMode::MixAll),
            other => Err(Error::Format(format!("unknown mix mode `{other}`"))),
        }
    }
}

fn check_aligned(clean: &ParallelCorpus, noisy: &ParallelCorpus, what: &str) -> Result<()> {
    if clean.len() != noisy.len() {
        return Err(Error::LineCount {
            left: "clean corpus".into(),
            left_lines: clean.len(),
            right: what.into(),
            right_lines: noisy.len(),
        });
    }
    if let Some(i) = clean.target.iter().zip(&noisy.target).position(|(a, b)| a != b) {
        return Err(Error::TargetMismatch { line: i + 1 });
    }
    Ok(())
}

fn changed_lines(clean: &ParallelCorpus, noisy: &ParallelCorpus) -> u64 {
    clean
        .source
        .iter()
        .zip(&noisy.source)
        .filter(|(a, b)| a != b)
        .count() as u64
}

/// The noised copy on its own, tagged with its error type.
pub fn build_error(clean: &ParallelCorpus, noisy: &ParallelCorpus, ty: ErrorType) -> Result<Mixture> {
    check_aligned(clean, noisy, ty.tag())?;
    let changed = Fraction::new(changed_lines(clean, noisy), noisy.len() as u64);
    let corpus = ParallelCorpus {
        source: noisy.source.clone(),
        target: noisy.target.clone(),
        tags: Some(vec![Origin::Noisy(ty); noisy.len()]),
    };
    Ok(Mixture {
        mode: MixMode::Error,
        corpus,
        changed,
        per_type: BTreeMap::from([(ty, changed)]),
    })
}

/// Clean pairs, then noised pairs.
pub fn build_clean_plus_error(
    clean: &ParallelCorpus,
    noisy: &ParallelCorpus,
    ty: ErrorType,
) -> Result<Mixture> {
    check_aligned(clean, noisy, ty.tag())?;
    let n = clean.len();
    let changed = changed_lines(clean, noisy);
    let mut corpus = ParallelCorpus {
        source: Vec::with_capacity(2 * n),
        target: Vec::with_capacity(2 * n),
        tags: Some(Vec::with_capacity(2 * n)),
    };
    append(&mut corpus, clean, Origin::Clean);
    append(&mut corpus, noisy, Origin::Noisy(ty));
    Ok(Mixture {
        mode: MixMode::CleanPlusError,
        corpus,
        changed: Fraction::new(changed, 2 * n as u64),
        per_type: BTreeMap::from([(ty, Fraction::new(changed, n as u64))]),
    })
}

fn append(out: &mut ParallelCorpus, block: &ParallelCorpus, origin: Origin) {
    out.source.extend(block.source.iter().cloned());
    out.target.extend(block.target.iter().cloned());
    if let Some(tags) = out.tags.as_mut() {
        tags.extend(std::iter::repeat_n(origin, block.len()));
    }
}

/// Six versions of every pair: clean plus one per error type.
pub fn build_mix_all(
    clean: &ParallelCorpus,
    noisy_by_type: &BTreeMap<ErrorType, ParallelCorpus>,
) -> Result<Mixture> {
    let missing: Vec<&str> = ErrorType::ALL
        .iter()
        .filter(|t| !noisy_by_type.contains_key(t))
        .map(|t| t.tag())
        .collect();
    if !missing.is_empty() {
        return Err(Error::MissingTypes(missing.join(", ")));
    }
    let n = clean.len();
    let mut corpus = ParallelCorpus {
        source: Vec::with_capacity(6 * n),
        target: Vec::with_capacity(6 * n),
        tags: Some(Vec::with_capacity(6 * n)),
    };
    append(&mut corpus, clean, Origin::Clean);
    let mut per_type = BTreeMap::new();
    let mut total_changed = 0;
    for ty in ErrorType::ALL {
        let noisy = &noisy_by_type[&ty];
        check_aligned(clean, noisy, ty.tag())?;
        let changed = changed_lines(clean, noisy);
        total_changed += changed;
        per_type.insert(ty, Fraction::new(changed, n as u64));
        append(&mut corpus, noisy, Origin::Noisy(ty));
    }
    Ok(Mixture {
        mode: MixMode::MixAll,
        corpus,
        changed: Fraction::new(total_changed, 6 * n as u64),
        per_type,
    })
}

/// Drops pairs where either side has more than `max_words` whitespace tokens.
/// Returns the filtered corpus and the number of pairs removed.
pub fn filter_by_length(corpus: &ParallelCorpus, max_words: usize) -> Result<(ParallelCorpus, usize)> {
    if max_words == 0 {
        return Err(Error::Format("max_words must be positive".into()));
    }
    let keep: Vec<bool> = corpus
        .source
        .iter()
        .zip(&corpus.target)
        .map(|(s, t)| {
            s.split_whitespace().count() <= max_words && t.split_whitespace().count() <= max_words
        })
        .collect();
    let pick = |lines: &[String]| -> Vec<String> {
        lines
            .iter()
            .zip(&keep)
            .filter(|(_, k)| **k)
            .map(|(l, _)| l.clone())
            .collect()
    };
    let filtered = ParallelCorpus {
        source: pick(&corpus.source),
        target: pick(&corpus.target),
        tags: corpus.tags.as_ref().map(|tags| {
            tags.iter()
                .zip(&keep)
                .filter(|(_, k)| **k)
                .map(|(t, _)| *t)
                .collect()
        }),
    };
    let removed = corpus.len() - filtered.len();
    Ok((filtered, removed))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LengthFilter {
    pub max_words: usize,
    pub removed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusManifest {
    pub format_version: u32,
    pub mode: MixMode,
    pub total_lines: usize,
    pub composition: BTreeMap<Origin, usize>,
    pub seed: Option<u64>,
    pub sources: Vec<SourceFile>,
    pub changed_lines: u64,
    pub changed_fraction: Fraction,
    pub changed_percent: f64,
    pub per_type_changed_percent: BTreeMap<ErrorType, f64>,
    pub length_filter: Option<LengthFilter>,
    pub notes: Vec<String>,
    #[serde(default)]
    pub reproducibility: Vec<String>,
}

impl Mixture {
    pub fn manifest(&self, sources: Vec<SourceFile>, seed: Option<u64>) -> CorpusManifest {
        let mut composition = BTreeMap::new();
        for tag in self.corpus.tags.iter().flatten() {
            *composition.entry(*tag).or_insert(0) += 1;
        }
        let mut notes = Vec::new();
        if self.mode == MixMode::MixAll {
            notes.push(
                "changed fraction is the sum of changed lines over all five noised copies \
                 divided by the full 6N lines"
                    .to_string(),
            );
        }
        CorpusManifest {
            format_version: MANIFEST_VERSION,
            mode: self.mode,
            total_lines: self.corpus.len(),
            composition,
            seed,
            sources,
            changed_lines: self.changed.numerator,
            changed_fraction: self.changed,
            changed_percent: self.changed.percent(),
            per_type_changed_percent: self
                .per_type
                .iter()
                .map(|(t, f)| (*t, f.percent()))
                .collect(),
            length_filter: None,
            notes,
            reproducibility: Vec::new(),
        }
    }
}

impl CorpusManifest {
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}
