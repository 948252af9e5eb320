//! BLEU scoring and robustness analyses.

pub mod analysis;
pub mod bleu;

pub use analysis::{delta_report, references_by_line, self_bleu_robustness, DeltaCell, DeltaReport};
pub use bleu::{
    corpus_bleu, corpus_bleu_parallel, normalize, sentence_bleu, BleuScore, BleuStats,
    DEFAULT_MAX_N, NORMALIZATION_VERSION,
};
