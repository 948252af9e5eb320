//! Brute-force BLEU: n-grams are enumerated as slices and counted by linear
//! scan, no hashing and no shared code with the library scorer.
//!
//! Conventions it pins down:
//! * clipping by the maximum count over a line's references;
//! * per-line reference length = closest to the hypothesis, ties to the shorter;
//! * an order with no hypothesis n-grams and no n-grams in the chosen
//!   references counts as fully matched, otherwise zero matches over zero
//!   n-grams is precision 0.

#![allow(dead_code)]

pub struct OracleBleu {
    pub score: f64,
    pub precisions: Vec<f64>,
    pub bp: f64,
    pub hyp_len: usize,
    pub ref_len: usize,
}

fn ngrams(tokens: &[String], n: usize) -> Vec<&[String]> {
    if tokens.len() < n {
        return Vec::new();
    }
    (0..=tokens.len() - n).map(|i| &tokens[i..i + n]).collect()
}

fn count_in(haystack: &[&[String]], needle: &[String]) -> usize {
    haystack.iter().filter(|g| **g == needle).count()
}

fn closest_ref_len(hyp_len: usize, refs: &[Vec<String>]) -> usize {
    let mut best = refs[0].len();
    for r in refs {
        let d = r.len().abs_diff(hyp_len);
        let bd = best.abs_diff(hyp_len);
        if d < bd || (d == bd && r.len() < best) {
            best = r.len();
        }
    }
    best
}

pub fn corpus_bleu(hyps: &[Vec<String>], refs: &[Vec<Vec<String>>], max_n: usize) -> OracleBleu {
    assert_eq!(hyps.len(), refs.len());
    let mut matches = vec![0usize; max_n];
    let mut totals = vec![0usize; max_n];
    let mut ref_totals = vec![0usize; max_n];
    let mut hyp_len = 0;
    let mut ref_len = 0;
    for (h, rs) in hyps.iter().zip(refs) {
        hyp_len += h.len();
        let rl = closest_ref_len(h.len(), rs);
        ref_len += rl;
        for n in 1..=max_n {
            let hg = ngrams(h, n);
            totals[n - 1] += hg.len();
            ref_totals[n - 1] += rl.saturating_sub(n - 1);
            // unique hypothesis n-grams, each clipped once
            let mut seen: Vec<&[String]> = Vec::new();
            for g in &hg {
                if seen.iter().any(|s| s == g) {
                    continue;
                }
                seen.push(g);
                let c = count_in(&hg, g);
                let max_ref = rs
                    .iter()
                    .map(|r| count_in(&ngrams(r, n), g))
                    .max()
                    .unwrap_or(0);
                matches[n - 1] += c.min(max_ref);
            }
        }
    }
    let precisions: Vec<f64> = (0..max_n)
        .map(|i| {
            if totals[i] == 0 {
                if ref_totals[i] == 0 {
                    1.0
                } else {
                    0.0
                }
            } else {
                matches[i] as f64 / totals[i] as f64
            }
        })
        .collect();
    let bp = if hyp_len > ref_len {
        1.0
    } else if hyp_len == 0 {
        if ref_len == 0 {
            1.0
        } else {
            0.0
        }
    } else {
        (1.0 - ref_len as f64 / hyp_len as f64).exp()
    };
    let score = if precisions.iter().any(|p| *p == 0.0) {
        0.0
    } else {
        let mean = precisions.iter().map(|p| p.ln()).sum::<f64>() / max_n as f64;
        100.0 * bp * mean.exp()
    };
    OracleBleu {
        score,
        precisions,
        bp,
        hyp_len,
        ref_len,
    }
}

pub fn split(s: &str) -> Vec<String> {
    s.split_whitespace().map(str::to_string).collect()
}
