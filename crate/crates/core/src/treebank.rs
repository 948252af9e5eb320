//! Bracketed constituency trees, one per line, and the structural queries
//! error injection needs.
//!
//! A preterminal such as `(NN cat)` is a leaf: it carries the tag as its
//! label and the token itself. Leaf tokens keep their PTB escapes
//! (`-LRB-`); [`render_tokens`] decodes them.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::types::{ErrorType, SiteKind, ARTICLES, EMPTY, NOT_SECOND_SG_PAST, NOT_THIRD_SG, PL,
    PREPOSITIONS, SECOND_SG_PAST, SG, THIRD_SG};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseTree {
    pub label: String,
    pub children: Vec<ParseTree>,
    pub token: Option<String>,
    pub token_index: Option<usize>,
}

/// A leaf seen from the flat token/tag sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Leaf<'a> {
    pub index: usize,
    pub tag: &'a str,
    pub token: &'a str,
}

impl ParseTree {
    pub fn is_leaf(&self) -> bool {
        self.token.is_some()
    }

    /// Leaves in left-to-right order.
    pub fn leaves(&self) -> Vec<Leaf<'_>> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<Leaf<'a>>) {
        match (&self.token, self.token_index) {
            (Some(token), Some(index)) => out.push(Leaf {
                index,
                tag: &self.label,
                token,
            }),
            _ => self.children.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    pub fn leaf_count(&self) -> usize {
        if self.is_leaf() {
            1
        } else {
            self.children.iter().map(ParseTree::leaf_count).sum()
        }
    }

    /// (label, first leaf, one past last leaf) for every internal node, pre-order.
    pub fn constituents(&self) -> Vec<(&str, usize, usize)> {
        let mut out = Vec::new();
        self.collect_spans(&mut out);
        out
    }

    fn collect_spans<'a>(&'a self, out: &mut Vec<(&'a str, usize, usize)>) -> (usize, usize) {
        if let Some(i) = self.token_index {
            return (i, i + 1);
        }
        let slot = out.len();
        out.push((&self.label, 0, 0));
        let mut span: Option<(usize, usize)> = None;
        for child in &self.children {
            let (s, e) = child.collect_spans(out);
            span = Some(match span {
                None => (s, e),
                Some((a, _)) => (a, e),
            });
        }
        let (s, e) = span.unwrap_or((0, 0));
        out[slot] = (&self.label, s, e);
        (s, e)
    }

    /// Canonical single-line bracketed form.
    pub fn render_bracketed(&self) -> String {
        let mut out = String::new();
        self.write_bracketed(&mut out);
        out
    }

    fn write_bracketed(&self, out: &mut String) {
        out.push('(');
        out.push_str(&self.label);
        if let Some(tok) = &self.token {
            let _ = write!(out, " {tok}");
        }
        for child in &self.children {
            out.push(' ');
            child.write_bracketed(out);
        }
        out.push(')');
    }
}

pub fn parse_ptb(line: &str) -> Result<ParseTree> {
    let mut parser = Parser {
        src: line,
        pos: 0,
        next_leaf: 0,
    };
    parser.skip_ws();
    if parser.pos == line.len() {
        return Err(Error::Tree {
            offset: 0,
            message: "empty line".into(),
        });
    }
    let tree = parser.node()?;
    parser.skip_ws();
    if parser.pos != line.len() {
        return Err(parser.error("trailing input after the tree"));
    }
    Ok(tree)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    next_leaf: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn error(&self, message: &str) -> Error {
        Error::Tree {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn symbol(&mut self) -> &str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_whitespace() || c == '(' || c == ')' {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.src[start..self.pos]
    }

    fn expect_close(&mut self) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(')') => {
                self.pos += 1;
                Ok(())
            }
            None => Err(self.error("unexpected end of input, expected `)`")),
            Some(_) => Err(self.error("expected `)`")),
        }
    }

    fn node(&mut self) -> Result<ParseTree> {
        self.skip_ws();
        match self.peek() {
            Some('(') => self.pos += 1,
            None => return Err(self.error("unexpected end of input, expected `(`")),
            Some(_) => return Err(self.error("expected `(`")),
        }
        self.skip_ws();
        // PTB files often wrap trees in an unlabeled root: `( (S ...) )`.
        let label = self.symbol().to_string();
        self.skip_ws();
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(')') => {
                if label.is_empty() {
                    Err(self.error("empty constituent"))
                } else {
                    Err(self.error("constituent has no children"))
                }
            }
            Some('(') => {
                let mut children = Vec::new();
                while self.peek() == Some('(') {
                    children.push(self.node()?);
                    self.skip_ws();
                }
                self.expect_close()?;
                Ok(ParseTree {
                    label,
                    children,
                    token: None,
                    token_index: None,
                })
            }
            Some(_) => {
                if label.is_empty() {
                    return Err(self.error("leaf without a tag"));
                }
                let token = self.symbol().to_string();
                self.expect_close()?;
                let index = self.next_leaf;
                self.next_leaf += 1;
                Ok(ParseTree {
                    label,
                    children: Vec::new(),
                    token: Some(token),
                    token_index: Some(index),
                })
            }
        }
    }
}

/// Decodes PTB bracket escapes.
pub fn unescape_token(token: &str) -> &str {
    match token {
        "-LRB-" => "(",
        "-RRB-" => ")",
        "-LSB-" => "[",
        "-RSB-" => "]",
        "-LCB-" => "{",
        "-RCB-" => "}",
        other => other,
    }
}

/// Leaf tokens, left to right, escapes decoded.
pub fn render_tokens(tree: &ParseTree) -> Vec<String> {
    tree.leaves()
        .iter()
        .map(|l| unescape_token(l.token).to_string())
        .collect()
}

/// A position where one error of a type can be introduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSite {
    pub error_type: ErrorType,
    /// `Substitute` for an existing token (a ∅ draw turns it into a
    /// deletion), `Insert` for a gap before `token_index`.
    pub site_kind: SiteKind,
    pub token_index: usize,
    /// Confusion-set member or category at the site; ∅ for inserts.
    pub current_form: String,
    /// POS tag of the token acted on (of the following token for inserts).
    pub tag: String,
}

/// Tags that already fill the determiner slot of an NP.
const DETERMINER_TAGS: &[&str] = &["DT", "PDT", "WDT", "PRP$", "WP$"];

/// Candidate positions for one error type, ordered by token index.
///
/// ART insert sites are the first leaf of each NP that does not begin with
/// a determiner-like tag (DT, PDT, WDT, PRP$, WP$), is not a bare pronoun,
/// and is not already preceded by one. PREP insert sites are the first leaf
/// of an NP whose preceding leaf is a verb or noun (VB*, NN*).
pub fn candidate_sites(tree: &ParseTree, error_type: ErrorType) -> Vec<CandidateSite> {
    let leaves = tree.leaves();
    let mut sites = Vec::new();
    let site = |kind, leaf: &Leaf, form: &str| CandidateSite {
        error_type,
        site_kind: kind,
        token_index: leaf.index,
        current_form: form.to_string(),
        tag: leaf.tag.to_string(),
    };
    match error_type {
        ErrorType::Drop => {}
        ErrorType::Art => {
            for leaf in &leaves {
                let lower = leaf.token.to_lowercase();
                if leaf.tag == "DT" && ARTICLES.contains(&lower.as_str()) {
                    sites.push(site(SiteKind::Substitute, leaf, &lower));
                }
            }
            for i in np_starts(tree) {
                let first = &leaves[i];
                let prev_is_det = i > 0 && DETERMINER_TAGS.contains(&leaves[i - 1].tag);
                if DETERMINER_TAGS.contains(&first.tag)
                    || matches!(first.tag, "PRP" | "EX" | "WP")
                    || prev_is_det
                {
                    continue;
                }
                sites.push(site(SiteKind::Insert, first, EMPTY));
            }
        }
        ErrorType::Prep => {
            for leaf in &leaves {
                let lower = leaf.token.to_lowercase();
                if matches!(leaf.tag, "IN" | "TO") && PREPOSITIONS.contains(&lower.as_str()) {
                    sites.push(site(SiteKind::Substitute, leaf, &lower));
                }
            }
            for i in np_starts(tree) {
                if i == 0 {
                    continue;
                }
                let prev = leaves[i - 1].tag;
                if prev.starts_with("VB") || prev.starts_with("NN") {
                    sites.push(site(SiteKind::Insert, &leaves[i], EMPTY));
                }
            }
        }
        ErrorType::Nn => {
            for leaf in &leaves {
                match leaf.tag {
                    "NN" => sites.push(site(SiteKind::Substitute, leaf, SG)),
                    "NNS" => sites.push(site(SiteKind::Substitute, leaf, PL)),
                    _ => {}
                }
            }
        }
        ErrorType::Sva => {
            for leaf in &leaves {
                let form = match leaf.tag {
                    "VBZ" => THIRD_SG,
                    "VBP" => NOT_THIRD_SG,
                    "VBD" => match leaf.token.to_lowercase().as_str() {
                        "was" => NOT_SECOND_SG_PAST,
                        "were" => SECOND_SG_PAST,
                        _ => continue,
                    },
                    _ => continue,
                };
                sites.push(site(SiteKind::Substitute, leaf, form));
            }
        }
    }
    // an insert before token i sorts ahead of a substitution of token i
    sites.sort_by_key(|s| (s.token_index, s.site_kind == SiteKind::Substitute));
    sites
}

/// Distinct first-leaf indices of NP constituents.
fn np_starts(tree: &ParseTree) -> BTreeSet<usize> {
    tree.constituents()
        .into_iter()
        .filter(|(label, s, e)| is_np(label) && e > s)
        .map(|(_, s, _)| s)
        .collect()
}

/// NP, NP-SBJ, NP-TMP-1 and friends.
fn is_np(label: &str) -> bool {
    label == "NP" || label.starts_with("NP-") || label.starts_with("NP=")
}
