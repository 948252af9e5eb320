//! Grammatical-error noise for parallel corpora.
//!
//! The pipeline learns confusion matrices from M2 learner-English
//! annotations ([`stats`]), finds candidate error sites in constituency
//! trees ([`treebank`]), injects exactly one error per sentence
//! ([`noiser`]), builds training mixtures ([`datasets`]) and scores the
//! resulting translations with BLEU ([`eval`]).

pub mod cli;
pub mod datasets;
pub mod error;
pub mod eval;
pub mod fsio;
pub mod m2;
pub mod morphology;
pub mod noiser;
pub mod stats;
pub mod treebank;
pub mod types;

pub use error::{Error, Result};
pub use types::{ErrorType, SiteKind, EMPTY};
