//! Error types and the closed confusion sets they range over.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Placeholder for "no word here". As a source form it marks an insertion
/// site; as a replacement it marks a deletion.
pub const EMPTY: &str = "∅";

pub const ARTICLES: &[&str] = &["a", "an", "the"];

pub const PREPOSITIONS: &[&str] = &[
    "on", "in", "at", "from", "for", "under", "over", "with", "into", "during", "until",
    "against", "among", "throughout", "of", "to", "by", "about", "like", "before", "after",
    "since", "across", "behind", "but", "out", "up", "down", "off",
];

pub const SG: &str = "SG";
pub const PL: &str = "PL";

pub const THIRD_SG: &str = "3SG";
pub const NOT_THIRD_SG: &str = "not 3SG";
/// "were"
pub const SECOND_SG_PAST: &str = "2SG-Past";
/// "was"
pub const NOT_SECOND_SG_PAST: &str = "not 2SG-Past";

pub const NUMBER_CATEGORIES: &[&str] = &[SG, PL];
pub const AGREEMENT_CATEGORIES: &[&str] =
    &[THIRD_SG, NOT_THIRD_SG, SECOND_SG_PAST, NOT_SECOND_SG_PAST];

/// The five error families the toolkit can inject.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum ErrorType {
    Drop,
    Art,
    Prep,
    Nn,
    Sva,
}

impl ErrorType {
    pub const ALL: [ErrorType; 5] = [
        ErrorType::Drop,
        ErrorType::Art,
        ErrorType::Prep,
        ErrorType::Nn,
        ErrorType::Sva,
    ];

    /// Types backed by a learned confusion matrix (everything but DROP).
    pub const LEARNED: [ErrorType; 4] =
        [ErrorType::Art, ErrorType::Prep, ErrorType::Nn, ErrorType::Sva];

    pub fn name(self) -> &'static str {
        match self {
            ErrorType::Drop => "DROP",
            ErrorType::Art => "ART",
            ErrorType::Prep => "PREP",
            ErrorType::Nn => "NN",
            ErrorType::Sva => "SVA",
        }
    }

    /// Lower-case name, used in tag files and on the command line.
    pub fn tag(self) -> &'static str {
        match self {
            ErrorType::Drop => "drop",
            ErrorType::Art => "art",
            ErrorType::Prep => "prep",
            ErrorType::Nn => "nn",
            ErrorType::Sva => "sva",
        }
    }

    /// Confusion set without the empty token. Empty for DROP.
    pub fn forms(self) -> &'static [&'static str] {
        match self {
            ErrorType::Drop => &[],
            ErrorType::Art => ARTICLES,
            ErrorType::Prep => PREPOSITIONS,
            ErrorType::Nn => NUMBER_CATEGORIES,
            ErrorType::Sva => AGREEMENT_CATEGORIES,
        }
    }

    /// Whether the confusion set contains ∅ (insertions and deletions).
    pub fn has_empty(self) -> bool {
        matches!(self, ErrorType::Art | ErrorType::Prep)
    }

    /// Full confusion set, with ∅ last where it applies.
    pub fn confusion_set(self) -> Vec<&'static str> {
        let mut set = self.forms().to_vec();
        if self.has_empty() {
            set.push(EMPTY);
        }
        set
    }

    pub fn in_confusion_set(self, form: &str) -> bool {
        (self.has_empty() && form == EMPTY) || self.forms().contains(&form)
    }
}

impl fmt::Display for ErrorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ErrorType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "drop" => Ok(ErrorType::Drop),
            "art" => Ok(ErrorType::Art),
            "prep" => Ok(ErrorType::Prep),
            "nn" => Ok(ErrorType::Nn),
            "sva" => Ok(ErrorType::Sva),
            _ => Err(Error::UnknownErrorType(s.to_string())),
        }
    }
}

/// How an edit changes the token sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SiteKind {
    Delete,
    Substitute,
    Insert,
    CharDrop,
}

impl SiteKind {
    pub fn name(self) -> &'static str {
        match self {
            SiteKind::Delete => "delete",
            SiteKind::Substitute => "substitute",
            SiteKind::Insert => "insert",
            SiteKind::CharDrop => "char_drop",
        }
    }
}

impl fmt::Display for SiteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SiteKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "delete" => Ok(SiteKind::Delete),
            "substitute" => Ok(SiteKind::Substitute),
            "insert" => Ok(SiteKind::Insert),
            "char_drop" => Ok(SiteKind::CharDrop),
            _ => Err(Error::Format(format!("unknown site kind `{s}`"))),
        }
    }
}
