//! Corpus and sentence BLEU over detokenized text.
//!
//! Strings are tokenized with a fixed 13a-style punctuation split before
//! n-gram counting (see [`NORMALIZATION_VERSION`]). Clipping uses the
//! maximum count over the line's references; the brevity penalty uses the
//! reference length closest to the hypothesis length, ties to the shorter.
//! An n-gram order that neither the hypothesis nor its chosen reference
//! can fill (both shorter than n) counts as fully matched, so
//! `BLEU(x, {x}) = 100` for every corpus.

use std::collections::HashMap;
use std::ops::{Add, AddAssign};
use std::sync::OnceLock;

use rayon::prelude::*;
use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const NORMALIZATION_VERSION: &str = "13a-punct/1";

pub const DEFAULT_MAX_N: usize = 4;

/// Splits punctuation off words in the manner of the mteval 13a tokenizer.
pub fn normalize(line: &str) -> Vec<String> {
    static RULES: OnceLock<[(Regex, &'static str); 4]> = OnceLock::new();
    let rules = RULES.get_or_init(|| {
        [
            (Regex::new(r"([{-~\[-` -&(-+:-@/])").unwrap(), " $1 "),
            (Regex::new(r"([^0-9])([.,])").unwrap(), "$1 $2 "),
            (Regex::new(r"([.,])([^0-9])").unwrap(), " $1 $2"),
            (Regex::new(r"([0-9])(-)").unwrap(), "$1 $2 "),
        ]
    });
    let mut s = line.replace("<skipped>", "");
    if s.contains('&') {
        s = s
            .replace("&quot;", "\"")
            .replace("&amp;", "&")
            .replace("&lt;", "<")
            .replace("&gt;", ">");
    }
    let mut s = format!(" {s} ");
    for (re, rep) in rules {
        s = re.replace_all(&s, *rep).into_owned();
    }
    s.split_whitespace().map(str::to_string).collect()
}

/// Sufficient statistics for BLEU. Adding statistics of disjoint line sets
/// gives the statistics of their union.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BleuStats {
    pub matches: Vec<u64>,
    pub totals: Vec<u64>,
    /// n-grams in the chosen (closest-length) references.
    pub ref_totals: Vec<u64>,
    pub hyp_len: u64,
    pub ref_len: u64,
}

impl BleuStats {
    pub fn zero(max_n: usize) -> Self {
        BleuStats {
            matches: vec![0; max_n],
            totals: vec![0; max_n],
            ref_totals: vec![0; max_n],
            hyp_len: 0,
            ref_len: 0,
        }
    }

    pub fn max_n(&self) -> usize {
        self.matches.len()
    }

    /// Statistics for one tokenized line against its tokenized references.
    pub fn for_line<S: AsRef<str>>(hyp: &[S], refs: &[Vec<S>], max_n: usize) -> BleuStats {
        let mut stats = BleuStats::zero(max_n);
        let hyp: Vec<&str> = hyp.iter().map(AsRef::as_ref).collect();
        stats.hyp_len = hyp.len() as u64;
        let chosen = closest_length(hyp.len(), refs.iter().map(Vec::len));
        stats.ref_len = chosen as u64;
        let ref_tokens: Vec<Vec<&str>> = refs
            .iter()
            .map(|r| r.iter().map(AsRef::as_ref).collect())
            .collect();
        for n in 1..=max_n {
            let hyp_counts = ngram_counts(&hyp, n);
            let mut max_ref: HashMap<&[&str], u64> = HashMap::new();
            for r in &ref_tokens {
                for (gram, c) in ngram_counts(r, n) {
                    let slot = max_ref.entry(gram).or_insert(0);
                    *slot = (*slot).max(c);
                }
            }
            let i = n - 1;
            stats.totals[i] = hyp.len().saturating_sub(n - 1) as u64;
            stats.ref_totals[i] = chosen.saturating_sub(n - 1) as u64;
            stats.matches[i] = hyp_counts
                .iter()
                .map(|(gram, c)| (*c).min(max_ref.get(gram).copied().unwrap_or(0)))
                .sum();
        }
        stats
    }

    /// Modified n-gram precisions with the vacuous-order rule.
    pub fn precisions(&self) -> Vec<f64> {
        (0..self.max_n())
            .map(|i| match (self.totals[i], self.ref_totals[i]) {
                (0, 0) => 1.0,
                (0, _) => 0.0,
                (t, _) => self.matches[i] as f64 / t as f64,
            })
            .collect()
    }

    pub fn brevity_penalty(&self) -> f64 {
        brevity_penalty(self.hyp_len, self.ref_len)
    }

    pub fn score(&self) -> BleuScore {
        finish(self.precisions(), self)
    }
}

impl Add for BleuStats {
    type Output = BleuStats;

    fn add(mut self, rhs: BleuStats) -> BleuStats {
        self += rhs;
        self
    }
}

impl AddAssign for BleuStats {
    fn add_assign(&mut self, rhs: BleuStats) {
        assert_eq!(self.max_n(), rhs.max_n(), "merging statistics of different orders");
        for i in 0..self.max_n() {
            self.matches[i] += rhs.matches[i];
            self.totals[i] += rhs.totals[i];
            self.ref_totals[i] += rhs.ref_totals[i];
        }
        self.hyp_len += rhs.hyp_len;
        self.ref_len += rhs.ref_len;
    }
}

fn ngram_counts<'a>(tokens: &'a [&'a str], n: usize) -> HashMap<&'a [&'a str], u64> {
    let mut counts = HashMap::new();
    if tokens.len() >= n {
        for gram in tokens.windows(n) {
            *counts.entry(gram).or_insert(0) += 1;
        }
    }
    counts
}

/// Reference length closest to `hyp_len`; ties go to the shorter one.
pub fn closest_length(hyp_len: usize, ref_lens: impl IntoIterator<Item = usize>) -> usize {
    ref_lens
        .into_iter()
        .min_by_key(|&r| (r.abs_diff(hyp_len), r))
        .unwrap_or(0)
}

fn brevity_penalty(hyp_len: u64, ref_len: u64) -> f64 {
    if hyp_len > ref_len {
        1.0
    } else if hyp_len == 0 {
        if ref_len == 0 {
            1.0
        } else {
            0.0
        }
    } else {
        (1.0 - ref_len as f64 / hyp_len as f64).exp()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BleuScore {
    pub score: f64,
    pub precisions: Vec<f64>,
    pub brevity_penalty: f64,
    pub hyp_length: u64,
    pub ref_length: u64,
}

fn finish(precisions: Vec<f64>, stats: &BleuStats) -> BleuScore {
    let bp = stats.brevity_penalty();
    let score = if precisions.iter().any(|p| *p <= 0.0) {
        0.0
    } else {
        let mean = precisions.iter().map(|p| p.ln()).sum::<f64>() / precisions.len() as f64;
        100.0 * bp * mean.exp()
    };
    BleuScore {
        score,
        precisions,
        brevity_penalty: bp,
        hyp_length: stats.hyp_len,
        ref_length: stats.ref_len,
    }
}

fn check_inputs<H: AsRef<str>, R: AsRef<str>>(hyps: &[H], refs: &[Vec<R>], max_n: usize) -> Result<()> {
    if hyps.is_empty() {
        return Err(Error::Bleu("no hypotheses to score".into()));
    }
    if hyps.len() != refs.len() {
        return Err(Error::Bleu(format!(
            "{} hypotheses but {} reference sets",
            hyps.len(),
            refs.len()
        )));
    }
    if max_n == 0 {
        return Err(Error::Bleu("max_n must be at least 1".into()));
    }
    if let Some(i) = refs.iter().position(Vec::is_empty) {
        return Err(Error::Bleu(format!("line {} has no references", i + 1)));
    }
    Ok(())
}

fn line_stats<H: AsRef<str>, R: AsRef<str>>(hyp: &H, refs: &[R], max_n: usize) -> BleuStats {
    let h = normalize(hyp.as_ref());
    let r: Vec<Vec<String>> = refs.iter().map(|r| normalize(r.as_ref())).collect();
    BleuStats::for_line(&h, &r, max_n)
}

/// Summed statistics over aligned hypotheses and per-line reference sets.
pub fn corpus_stats<H: AsRef<str>, R: AsRef<str>>(
    hyps: &[H],
    refs: &[Vec<R>],
    max_n: usize,
) -> Result<BleuStats> {
    check_inputs(hyps, refs, max_n)?;
    Ok(hyps
        .iter()
        .zip(refs)
        .map(|(h, r)| line_stats(h, r, max_n))
        .fold(BleuStats::zero(max_n), |acc, s| acc + s))
}

/// Corpus BLEU. `refs[i]` holds every reference for line `i`.
pub fn corpus_bleu<H: AsRef<str>, R: AsRef<str>>(
    hyps: &[H],
    refs: &[Vec<R>],
    max_n: usize,
) -> Result<BleuScore> {
    Ok(corpus_stats(hyps, refs, max_n)?.score())
}

/// Same result as [`corpus_bleu`], counting lines on a worker pool.
pub fn corpus_bleu_parallel<H, R>(
    hyps: &[H],
    refs: &[Vec<R>],
    max_n: usize,
    workers: usize,
) -> Result<BleuScore>
where
    H: AsRef<str> + Sync,
    R: AsRef<str> + Sync,
{
    if workers <= 1 {
        return corpus_bleu(hyps, refs, max_n);
    }
    check_inputs(hyps, refs, max_n)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Bleu(format!("cannot start worker pool: {e}")))?;
    let stats = pool.install(|| {
        hyps.par_iter()
            .zip(refs.par_iter())
            .map(|(h, r)| line_stats(h, r, max_n))
            .reduce(|| BleuStats::zero(max_n), |a, b| a + b)
    });
    Ok(stats.score())
}

/// Single-sentence BLEU with add-one smoothing on orders 2 and up.
/// An empty hypothesis scores 0.
pub fn sentence_bleu<H: AsRef<str>, R: AsRef<str>>(
    hyp: H,
    refs: &[R],
    max_n: usize,
) -> Result<BleuScore> {
    if refs.is_empty() {
        return Err(Error::Bleu("sentence has no references".into()));
    }
    if max_n == 0 {
        return Err(Error::Bleu("max_n must be at least 1".into()));
    }
    let stats = line_stats(&hyp, refs, max_n);
    if stats.hyp_len == 0 {
        return Ok(BleuScore {
            score: 0.0,
            precisions: vec![0.0; max_n],
            brevity_penalty: stats.brevity_penalty(),
            hyp_length: 0,
            ref_length: stats.ref_len,
        });
    }
    let precisions = (0..max_n)
        .map(|i| {
            if i == 0 {
                stats.matches[0] as f64 / stats.totals[0] as f64
            } else {
                (stats.matches[i] + 1) as f64 / (stats.totals[i] + 1) as f64
            }
        })
        .collect();
    Ok(finish(precisions, &stats))
}
