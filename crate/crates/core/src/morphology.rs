//! Rule-plus-lexicon English inflection for noun number and verb agreement.
//!
//! Irregular forms come from a tab-separated lexicon (`data/lexicon.tsv`,
//! compiled in). Everything else goes through suffix rules. Words the
//! lexicon marks as invariant ("sheep", "news") cannot change number; the
//! toggles report that so callers can skip the site.

use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::types::{NOT_SECOND_SG_PAST, NOT_THIRD_SG, PL, SECOND_SG_PAST, SG, THIRD_SG};

const DEFAULT_LEXICON: &str = include_str!("../data/lexicon.tsv");

/// Grammatical number of a noun form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Number {
    Singular,
    Plural,
}

impl Number {
    pub fn category(self) -> &'static str {
        match self {
            Number::Singular => SG,
            Number::Plural => PL,
        }
    }
}

/// Capitalization pattern of a token.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CasePattern {
    Lower,
    Capitalized,
    Upper,
    Mixed,
}

impl CasePattern {
    pub fn of(token: &str) -> CasePattern {
        let letters: Vec<char> = token.chars().filter(|c| c.is_alphabetic()).collect();
        let Some(first) = letters.first() else {
            return CasePattern::Lower;
        };
        let rest_lower = letters[1..].iter().all(|c| !c.is_uppercase());
        let rest_upper = letters[1..].iter().all(|c| !c.is_lowercase());
        if !first.is_uppercase() {
            if letters.iter().all(|c| !c.is_uppercase()) {
                CasePattern::Lower
            } else {
                CasePattern::Mixed
            }
        } else if rest_lower {
            CasePattern::Capitalized
        } else if rest_upper {
            CasePattern::Upper
        } else {
            CasePattern::Mixed
        }
    }

    /// Render a lower-case form in this pattern. `Mixed` leaves it lower.
    pub fn apply(self, lower: &str) -> String {
        match self {
            CasePattern::Lower | CasePattern::Mixed => lower.to_string(),
            CasePattern::Upper => lower.to_uppercase(),
            CasePattern::Capitalized => capitalize(lower),
        }
    }
}

/// Upper-cases the first character and leaves the rest untouched.
pub fn capitalize(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

/// Lower-cases the first character and leaves the rest untouched.
pub fn decapitalize(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) => c.to_lowercase().chain(chars).collect(),
        None => String::new(),
    }
}

/// Result of toggling a noun's number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NounToggle {
    pub form: String,
    /// The word has one form for both numbers; `form` equals the input.
    pub invariant: bool,
}

/// Exception tables for the inflection rules.
#[derive(Debug, Clone, Default)]
pub struct InflectionLexicon {
    plural_of: HashMap<String, String>,
    singular_of: HashMap<String, String>,
    invariant_nouns: HashSet<String>,
    third_of: HashMap<String, String>,
    base_of: HashMap<String, String>,
    indefinite: Vec<(String, &'static str)>,
}

impl InflectionLexicon {
    /// The lexicon shipped with the crate.
    pub fn builtin() -> &'static InflectionLexicon {
        static LEXICON: OnceLock<InflectionLexicon> = OnceLock::new();
        LEXICON.get_or_init(|| {
            InflectionLexicon::parse(DEFAULT_LEXICON).expect("built-in lexicon is well-formed")
        })
    }

    pub fn parse(text: &str) -> Result<InflectionLexicon> {
        let mut lex = InflectionLexicon::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split('\t').collect();
            let [first, second, kind] = fields[..] else {
                return Err(Error::Lexicon {
                    line,
                    message: format!("expected 3 tab-separated fields, got {}", fields.len()),
                });
            };
            let first = first.to_lowercase();
            let second = second.to_lowercase();
            let err = |message: String| Error::Lexicon { line, message };
            match kind {
                "noun" => {
                    if lex.plural_of.contains_key(&first) || lex.singular_of.contains_key(&second) {
                        return Err(err(format!("duplicate noun entry `{first}`/`{second}`")));
                    }
                    lex.plural_of.insert(first.clone(), second.clone());
                    lex.singular_of.insert(second, first);
                }
                "invariant" => {
                    if first != second {
                        return Err(err(format!("invariant noun `{first}` has two forms")));
                    }
                    lex.invariant_nouns.insert(first);
                }
                "verb" => {
                    if lex.third_of.contains_key(&first) || lex.base_of.contains_key(&second) {
                        return Err(err(format!("duplicate verb entry `{first}`/`{second}`")));
                    }
                    lex.third_of.insert(first.clone(), second.clone());
                    lex.base_of.insert(second, first);
                }
                "indefinite" => {
                    let article = match second.as_str() {
                        "a" => "a",
                        "an" => "an",
                        other => return Err(err(format!("article must be a or an, got `{other}`"))),
                    };
                    lex.indefinite.push((first, article));
                }
                other => return Err(err(format!("unknown kind `{other}`"))),
            }
        }
        for word in &lex.invariant_nouns {
            if lex.plural_of.contains_key(word) || lex.singular_of.contains_key(word) {
                return Err(Error::Lexicon {
                    line: 0,
                    message: format!("`{word}` is both irregular and invariant"),
                });
            }
        }
        // Longest prefix first.
        lex.indefinite.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(&b.0)));
        Ok(lex)
    }

    pub fn is_invariant(&self, word: &str) -> bool {
        self.invariant_nouns.contains(&word.to_lowercase())
    }

    /// Best guess at a noun's number from its surface form alone.
    pub fn noun_number(&self, word: &str) -> Number {
        let w = word.to_lowercase();
        if self.singular_of.contains_key(&w) {
            return Number::Plural;
        }
        if self.plural_of.contains_key(&w) || self.invariant_nouns.contains(&w) {
            return Number::Singular;
        }
        let looks_plural = w.ends_with('s')
            && !w.ends_with("ss")
            && !w.ends_with("us")
            && !w.ends_with("is")
            && w.chars().count() > 2;
        if looks_plural {
            Number::Plural
        } else {
            Number::Singular
        }
    }

    pub fn pluralize(&self, token: &str) -> Result<NounToggle> {
        self.inflect_noun(token, Number::Plural)
    }

    pub fn singularize(&self, token: &str) -> Result<NounToggle> {
        self.inflect_noun(token, Number::Singular)
    }

    /// SG to PL or PL to SG, whichever the surface form calls for.
    pub fn toggle_noun_number(&self, token: &str) -> Result<NounToggle> {
        let target = match self.noun_number(token) {
            Number::Singular => Number::Plural,
            Number::Plural => Number::Singular,
        };
        self.inflect_noun(token, target)
    }

    fn inflect_noun(&self, token: &str, target: Number) -> Result<NounToggle> {
        check_alphabetic(token)?;
        let w = token.to_lowercase();
        if self.invariant_nouns.contains(&w) {
            return Ok(NounToggle {
                form: token.to_string(),
                invariant: true,
            });
        }
        let lower = match target {
            Number::Plural => match self.plural_of.get(&w) {
                Some(p) => p.clone(),
                None => plural_by_rule(&w),
            },
            Number::Singular => match self.singular_of.get(&w) {
                Some(s) => s.clone(),
                None => singular_by_rule(&w),
            },
        };
        Ok(NounToggle {
            form: CasePattern::of(token).apply(&lower),
            invariant: false,
        })
    }

    /// Base form to third-person-singular present.
    pub fn third_person(&self, token: &str) -> Result<String> {
        check_alphabetic(token)?;
        let w = token.to_lowercase();
        if w == "am" {
            return Err(inflection_error(token, "first-person `am` has no agreement partner"));
        }
        let lower = match self.third_of.get(&w) {
            Some(t) => t.clone(),
            None => third_by_rule(&w),
        };
        Ok(CasePattern::of(token).apply(&lower))
    }

    /// Third-person-singular present to base form.
    pub fn base_form(&self, token: &str) -> Result<String> {
        check_alphabetic(token)?;
        let w = token.to_lowercase();
        let lower = match self.base_of.get(&w) {
            Some(b) => b.clone(),
            None => {
                if !w.ends_with('s') || w.len() < 3 {
                    return Err(inflection_error(token, "not a third-person-singular form"));
                }
                base_by_rule(&w)
            }
        };
        Ok(CasePattern::of(token).apply(&lower))
    }

    /// Swap a present-tense verb between 3SG and not-3SG, or was/were.
    pub fn toggle_verb_agreement(&self, token: &str, tag: &str) -> Result<String> {
        match tag {
            "VBZ" => self.base_form(token),
            "VBP" => self.third_person(token),
            "VBD" => {
                let swapped = match token.to_lowercase().as_str() {
                    "was" => "were",
                    "were" => "was",
                    _ => return Err(inflection_error(token, "VBD toggling covers only was/were")),
                };
                Ok(CasePattern::of(token).apply(swapped))
            }
            other => Err(inflection_error(token, &format!("tag {other} is not VBZ, VBP or VBD"))),
        }
    }

    /// Agreement category of a verb form, if it has one.
    pub fn agreement_category(&self, token: &str) -> Option<&'static str> {
        let w = token.to_lowercase();
        match w.as_str() {
            "was" => Some(NOT_SECOND_SG_PAST),
            "were" => Some(SECOND_SG_PAST),
            _ if self.base_of.contains_key(&w) => Some(THIRD_SG),
            _ if self.third_of.contains_key(&w) => Some(NOT_THIRD_SG),
            _ if w.ends_with('s') && !w.ends_with("ss") => Some(THIRD_SG),
            _ if w.chars().all(char::is_alphabetic) && !w.is_empty() => Some(NOT_THIRD_SG),
            _ => None,
        }
    }

    /// "a" or "an" for the word that follows the article.
    pub fn choose_indefinite(&self, following: &str) -> &'static str {
        let w: String = following
            .chars()
            .skip_while(|c| !c.is_alphanumeric())
            .collect::<String>()
            .to_lowercase();
        for (prefix, article) in &self.indefinite {
            if w.starts_with(prefix.as_str()) {
                return article;
            }
        }
        let Some(first) = w.chars().next() else {
            return "a";
        };
        if first.is_ascii_digit() {
            let digits: String = w.chars().take_while(|c| c.is_ascii_digit()).collect();
            // eight, eleven, eighteen, eighty...
            let eleven_or_eighteen =
                (digits.starts_with("11") || digits.starts_with("18")) && digits.len() % 3 == 2;
            return if first == '8' || eleven_or_eighteen { "an" } else { "a" };
        }
        if matches!(first, 'a' | 'e' | 'i' | 'o' | 'u') {
            "an"
        } else {
            "a"
        }
    }
}

fn inflection_error(token: &str, reason: &str) -> Error {
    Error::Inflection {
        token: token.to_string(),
        reason: reason.to_string(),
    }
}

fn check_alphabetic(token: &str) -> Result<()> {
    if token.is_empty() || !token.chars().all(char::is_alphabetic) {
        return Err(inflection_error(token, "token is not alphabetic"));
    }
    Ok(())
}

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u')
}

fn consonant_before_last(w: &str) -> bool {
    w.chars().rev().nth(1).is_some_and(|c| !is_vowel(c))
}

fn sibilant_ending(w: &str) -> bool {
    w.ends_with('s') || w.ends_with('x') || w.ends_with('z') || w.ends_with("ch") || w.ends_with("sh")
}

fn plural_by_rule(w: &str) -> String {
    if w.ends_with('y') && consonant_before_last(w) {
        format!("{}ies", &w[..w.len() - 1])
    } else if sibilant_ending(w) {
        format!("{w}es")
    } else {
        format!("{w}s")
    }
}

fn singular_by_rule(w: &str) -> String {
    if !w.ends_with('s') || w.len() < 3 || w.ends_with("ss") {
        return w.to_string();
    }
    if w.len() > 4 && w.ends_with("ies") && consonant_before_last(&w[..w.len() - 2]) {
        return format!("{}y", &w[..w.len() - 3]);
    }
    if let Some(stem) = w.strip_suffix("es") {
        let strip_es = stem.ends_with("ss")
            || stem.ends_with('x')
            || stem.ends_with("zz")
            || stem.ends_with("tz")
            || stem.ends_with("ch")
            || stem.ends_with("sh");
        if strip_es {
            return stem.to_string();
        }
    }
    w[..w.len() - 1].to_string()
}

fn third_by_rule(w: &str) -> String {
    if w.ends_with('y') && consonant_before_last(w) {
        format!("{}ies", &w[..w.len() - 1])
    } else if sibilant_ending(w) || w.ends_with('o') {
        format!("{w}es")
    } else {
        format!("{w}s")
    }
}

fn base_by_rule(w: &str) -> String {
    if w.len() > 4 && w.ends_with("ies") && consonant_before_last(&w[..w.len() - 2]) {
        return format!("{}y", &w[..w.len() - 3]);
    }
    if let Some(stem) = w.strip_suffix("es") {
        let strip_es = stem.ends_with("ss")
            || stem.ends_with('x')
            || stem.ends_with("zz")
            || stem.ends_with("ch")
            || stem.ends_with("sh")
            || stem.ends_with('o');
        if strip_es {
            return stem.to_string();
        }
    }
    w[..w.len() - 1].to_string()
}

/// `toggle_noun_number` against the built-in lexicon.
pub fn toggle_noun_number(token: &str) -> Result<NounToggle> {
    InflectionLexicon::builtin().toggle_noun_number(token)
}

/// `toggle_verb_agreement` against the built-in lexicon.
pub fn toggle_verb_agreement(token: &str, tag: &str) -> Result<String> {
    InflectionLexicon::builtin().toggle_verb_agreement(token, tag)
}

/// `choose_indefinite` against the built-in lexicon.
pub fn choose_indefinite(following: &str) -> &'static str {
    InflectionLexicon::builtin().choose_indefinite(following)
}
