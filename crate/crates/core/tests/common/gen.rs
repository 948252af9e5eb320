//! Seeded toy grammar producing tokenized news-style sentences together with
//! their bracketed trees. Agreement is correct by construction, so every
//! ART/PREP/NN/SVA site the generator creates is a plausible error site.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const NOUNS: &[(&str, &str)] = &[
    ("vote", "votes"),
    ("verdict", "verdicts"),
    ("city", "cities"),
    ("child", "children"),
    ("country", "countries"),
    ("court", "courts"),
    ("leader", "leaders"),
    ("deal", "deals"),
    ("article", "articles"),
    ("result", "results"),
    ("question", "questions"),
    ("policy", "policies"),
    ("company", "companies"),
    ("minister", "ministers"),
    ("report", "reports"),
    ("election", "elections"),
    ("agreement", "agreements"),
    ("hour", "hours"),
    ("union", "unions"),
    ("analysis", "analyses"),
    ("woman", "women"),
    ("tax", "taxes"),
    ("bus", "buses"),
    ("idea", "ideas"),
    ("economy", "economies"),
];

const MASS_NOUNS: &[&str] = &["information", "evidence", "research", "news", "progress"];

const ADJECTIVES: &[&str] = &[
    "new", "old", "good", "important", "final", "recent", "honest", "European", "economic",
    "unusual", "open", "difficult",
];

/// (base, 3SG, past)
const VERBS: &[(&str, &str, &str)] = &[
    ("require", "requires", "required"),
    ("win", "wins", "won"),
    ("accompany", "accompanies", "accompanied"),
    ("support", "supports", "supported"),
    ("approve", "approves", "approved"),
    ("reach", "reaches", "reached"),
    ("have", "has", "had"),
    ("do", "does", "did"),
    ("watch", "watches", "watched"),
    ("reject", "rejects", "rejected"),
    ("study", "studies", "studied"),
    ("discuss", "discusses", "discussed"),
];

const PREPS: &[&str] = &["in", "on", "for", "with", "of", "at", "from", "about", "after", "by"];

const NAMES: &[&str] = &["Tymoshenko", "Russia", "Brussels", "Madrid", "Moleskine", "October"];

pub struct Sentence {
    pub tokens: Vec<String>,
    pub tree: String,
}

struct Builder {
    tokens: Vec<String>,
}

impl Builder {
    fn leaf(&mut self, tag: &str, token: &str) -> String {
        self.tokens.push(token.to_string());
        format!("({tag} {token})")
    }
}

fn join(label: &str, parts: Vec<String>) -> String {
    format!("({label} {})", parts.join(" "))
}

fn indefinite(next: &str) -> &'static str {
    gramnoise::morphology::choose_indefinite(next)
}

/// Returns the NP and whether it is plural.
fn noun_phrase(rng: &mut ChaCha8Rng, b: &mut Builder, allow_pronoun: bool) -> (String, bool) {
    if allow_pronoun && rng.gen_bool(0.12) {
        let (p, plural) = *[("it", false), ("they", true), ("he", false), ("we", true)]
            .choose(rng)
            .unwrap();
        return (join("NP", vec![b.leaf("PRP", p)]), plural);
    }
    if rng.gen_bool(0.08) {
        return (join("NP", vec![b.leaf("NNP", NAMES.choose(rng).unwrap())]), false);
    }
    if rng.gen_bool(0.06) {
        let mass = MASS_NOUNS.choose(rng).unwrap();
        let mut parts = Vec::new();
        if rng.gen_bool(0.5) {
            parts.push(b.leaf("DT", "the"));
        }
        parts.push(b.leaf("NN", mass));
        return (join("NP", parts), false);
    }
    let (sg, pl) = *NOUNS.choose(rng).unwrap();
    let plural = rng.gen_bool(0.4);
    let adjective = rng.gen_bool(0.35).then(|| *ADJECTIVES.choose(rng).unwrap());
    let first_word = adjective.unwrap_or(if plural { pl } else { sg });
    let mut parts = Vec::new();
    match rng.gen_range(0..10) {
        0..=3 => parts.push(b.leaf("DT", "the")),
        4 | 5 if !plural => parts.push(b.leaf("DT", indefinite(first_word))),
        6 => parts.push(b.leaf("PRP$", ["its", "their", "our"].choose(rng).unwrap())),
        7 => parts.push(b.leaf("DT", if plural { "these" } else { "this" })),
        8 if plural => parts.push(b.leaf("CD", ["226", "two", "seven"].choose(rng).unwrap())),
        _ => {}
    }
    if let Some(a) = adjective {
        parts.push(b.leaf("JJ", a));
    }
    if plural {
        parts.push(b.leaf("NNS", pl));
    } else {
        parts.push(b.leaf("NN", sg));
    }
    (join("NP", parts), plural)
}

fn prep_phrase(rng: &mut ChaCha8Rng, b: &mut Builder) -> String {
    let p = b.leaf("IN", PREPS.choose(rng).unwrap());
    let (np, _) = noun_phrase(rng, b, false);
    join("PP", vec![p, np])
}

fn verb_phrase(rng: &mut ChaCha8Rng, b: &mut Builder, subject_plural: bool, subject: &str) -> String {
    let mut parts = Vec::new();
    let third = !subject_plural && !matches!(subject, "we" | "they");
    match rng.gen_range(0..10) {
        0..=5 => {
            let (base, s3, _) = *VERBS.choose(rng).unwrap();
            parts.push(if third { b.leaf("VBZ", s3) } else { b.leaf("VBP", base) });
        }
        6 | 7 => {
            let (_, _, past) = *VERBS.choose(rng).unwrap();
            parts.push(b.leaf("VBD", past));
        }
        _ => {
            let be = if third || subject == "he" || subject == "it" { "was" } else { "were" };
            parts.push(b.leaf("VBD", be));
            let (_, _, past) = *VERBS.choose(rng).unwrap();
            let inner = b.leaf("VBN", past);
            let mut vp = vec![inner];
            if rng.gen_bool(0.6) {
                vp.push(prep_phrase(rng, b));
            }
            parts.push(join("VP", vp));
            return join("VP", parts);
        }
    }
    let (obj, _) = noun_phrase(rng, b, false);
    parts.push(obj);
    if rng.gen_bool(0.5) {
        parts.push(prep_phrase(rng, b));
    }
    join("VP", parts)
}

fn sentence(rng: &mut ChaCha8Rng) -> Sentence {
    let mut b = Builder { tokens: Vec::new() };
    let mut parts = Vec::new();
    if rng.gen_bool(0.2) {
        parts.push(prep_phrase(rng, &mut b));
        parts.push(b.leaf(",", ","));
    }
    let start = b.tokens.len();
    let (subj, plural) = noun_phrase(rng, &mut b, true);
    let subject_word = b.tokens[start].clone();
    parts.push(subj);
    parts.push(verb_phrase(rng, &mut b, plural, &subject_word));
    parts.push(b.leaf(".", "."));
    let mut tree = format!("(ROOT {})", join("S", parts));
    // capitalize the first token in both views
    let first = b.tokens[0].clone();
    let cap = gramnoise::morphology::capitalize(&first);
    if cap != first {
        let needle = format!(" {first})");
        let at = tree.find(&needle).expect("first leaf present");
        tree.replace_range(at..at + needle.len(), &format!(" {cap})"));
        b.tokens[0] = cap;
    }
    Sentence {
        tokens: b.tokens,
        tree,
    }
}

/// `n` sentences from a fixed seed.
pub fn corpus(n: usize, seed: u64) -> Vec<Sentence> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| sentence(&mut rng)).collect()
}

/// Raw lines and tree lines for a generated corpus.
pub fn corpus_lines(n: usize, seed: u64) -> (Vec<String>, Vec<String>) {
    corpus(n, seed)
        .into_iter()
        .map(|s| (s.tokens.join(" "), s.tree))
        .unzip()
}
