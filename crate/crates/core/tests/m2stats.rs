mod common;

use std::collections::BTreeMap;

use gramnoise::m2::{parse_m2_str, write_m2, Annotation, M2Entry};
use gramnoise::morphology::InflectionLexicon;
use gramnoise::stats::{build_confusion_matrices, collect_stats, default_code_map, ConfusionMatrixSet, ErrorCounts};
use gramnoise::ErrorType;
use proptest::prelude::*;

/// (type, learner, corrected) -> count, read from the hand tally.
fn hand_tally() -> BTreeMap<(ErrorType, String, String), u64> {
    let mut out = BTreeMap::new();
    for line in common::read_fixture("learner_counts.tsv").lines() {
        if line.starts_with('#') || line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split('\t').collect();
        out.insert((f[0].parse().unwrap(), f[1].to_string(), f[2].to_string()), f[3].parse().unwrap());
    }
    out
}

fn fixture_counts() -> ErrorCounts {
    let entries = parse_m2_str(&common::read_fixture("learner.m2")).unwrap();
    collect_stats(&entries, &default_code_map(), InflectionLexicon::builtin())
}

#[test]
fn fixture_counts_match_hand_tally() {
    let counts = fixture_counts();
    let tally = hand_tally();
    let mut flattened = BTreeMap::new();
    for (ty, rows) in &counts.cells {
        for (learner, row) in rows {
            for (corrected, n) in row {
                flattened.insert((*ty, learner.clone(), corrected.clone()), *n);
            }
        }
    }
    assert_eq!(flattened, tally);
    assert_eq!(counts.entries, 19);
    assert_eq!(counts.annotations, 27);
    assert_eq!(counts.mapped, 26);
    assert_eq!(counts.unmapped_codes.get("Wci"), Some(&1));
    assert_eq!(counts.other_total(), 1);
    assert_eq!(counts.other_detail[&ErrorType::Art].get("the -> my"), Some(&1));
    assert_eq!(counts.cell_total() + counts.other_total(), counts.mapped);
}

#[test]
fn fixture_matrices_match_oracle() {
    let tally = hand_tally();
    let set = build_confusion_matrices(&fixture_counts(), 0.0);
    set.validate().unwrap();
    for ty in ErrorType::LEARNED {
        let forms = ty.confusion_set();
        for &correct in &forms {
            let wrong: Vec<&str> = forms.iter().copied().filter(|w| *w != correct).collect();
            let weights: Vec<u64> = wrong
                .iter()
                .map(|w| *tally.get(&(ty, w.to_string(), correct.to_string())).unwrap_or(&0))
                .collect();
            let total: u64 = weights.iter().sum();
            let row = set.row(ty, correct).unwrap();
            for (w, n) in wrong.iter().zip(&weights) {
                let expected = if total == 0 {
                    1.0 / wrong.len() as f64
                } else {
                    *n as f64 / total as f64
                };
                assert_eq!(row[*w], expected, "{ty} {correct} -> {w}");
            }
            let sum: f64 = row.values().sum();
            assert!((sum - 1.0).abs() <= 1e-9);
        }
    }
    // the worked example: learners wrote "a" once and nothing three times where "the" was right
    let the = set.row(ErrorType::Art, "the").unwrap();
    assert_eq!((the["a"], the["an"], the["∅"]), (0.25, 0.0, 0.75));
}

#[test]
fn matrices_survive_json() {
    let set = build_confusion_matrices(&fixture_counts(), 0.5);
    let back = ConfusionMatrixSet::from_json(&set.to_json().unwrap()).unwrap();
    assert_eq!(back, set);
}

fn token() -> impl Strategy<Value = String> {
    "[A-Za-z0-9.,']{1,8}"
}

fn entry() -> impl Strategy<Value = M2Entry> {
    prop::collection::vec(token(), 0..10).prop_flat_map(|tokens| {
        let n = tokens.len();
        let ann = (0..=n, 0..=n, "[A-Z][a-z]{1,6}", prop::collection::vec(token(), 0..3), 0u32..3)
            .prop_map(|(a, b, code, corr, annotator)| Annotation {
                span_start: a.min(b),
                span_end: a.max(b),
                code,
                correction: corr.join(" "),
                annotator,
            });
        (Just(tokens), prop::collection::vec(ann, 0..4))
            .prop_map(|(tokens, annotations)| M2Entry { tokens, annotations })
    })
}

fn counts_strategy() -> impl Strategy<Value = ErrorCounts> {
    let cell = (0usize..4, 0usize..30, 0usize..30, 0u64..50);
    prop::collection::vec(cell, 0..40).prop_map(|cells| {
        let mut counts = ErrorCounts::default();
        for (t, a, b, n) in cells {
            let ty = ErrorType::LEARNED[t];
            let forms = ty.confusion_set();
            let (learner, corrected) = (forms[a % forms.len()], forms[b % forms.len()]);
            if learner == corrected {
                continue;
            }
            *counts
                .cells
                .entry(ty)
                .or_default()
                .entry(learner.to_string())
                .or_default()
                .entry(corrected.to_string())
                .or_default() += n;
        }
        counts
    })
}

proptest! {
    #[test]
    fn m2_round_trip(entries in prop::collection::vec(entry(), 0..6)) {
        let text = write_m2(&entries);
        prop_assert_eq!(parse_m2_str(&text).unwrap(), entries);
    }

    #[test]
    fn matrices_are_row_stochastic(counts in counts_strategy(), alpha in prop_oneof![Just(0.0), 0.0f64..3.0]) {
        let set = build_confusion_matrices(&counts, alpha);
        prop_assert!(set.validate().is_ok());
        for ty in ErrorType::LEARNED {
            for correct in ty.confusion_set() {
                let row = set.row(ty, correct).unwrap();
                prop_assert!(!row.contains_key(correct));
                let sum: f64 = row.values().sum();
                prop_assert!((sum - 1.0).abs() <= 1e-9);
            }
        }
        let kept: u64 = set.metadata.counts.values().flat_map(|r| r.values()).flat_map(|r| r.values()).sum();
        prop_assert_eq!(kept, counts.cell_total());
    }
}
