//! Reader and writer for M2 grammatical-error annotation files.
//!
//! ```text
//! S The cat sit .
//! A 2 3|||SVA|||sits|||REQUIRED|||-NONE-|||0
//!
//! ```
//!
//! `noop` annotations (span `-1 -1`) carry no edit and are dropped. An empty
//! correction or `-NONE-` means the span is deleted.

use std::fmt::Write as _;
use std::io::BufRead;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Annotation {
    pub span_start: usize,
    pub span_end: usize,
    pub code: String,
    /// Space-separated correction tokens; empty for a deletion.
    pub correction: String,
    pub annotator: u32,
}

impl Annotation {
    /// Span start equals span end: the correction is inserted here.
    pub fn is_insertion(&self) -> bool {
        self.span_start == self.span_end
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct M2Entry {
    pub tokens: Vec<String>,
    pub annotations: Vec<Annotation>,
}

impl M2Entry {
    /// Surface tokens covered by an annotation's span.
    pub fn span_tokens(&self, ann: &Annotation) -> &[String] {
        &self.tokens[ann.span_start..ann.span_end]
    }
}

pub fn parse_m2_str(text: &str) -> Result<Vec<M2Entry>> {
    parse_m2(text.as_bytes())
}

/// Single pass over M2 text. One entry per `S` block.
pub fn parse_m2<R: BufRead>(reader: R) -> Result<Vec<M2Entry>> {
    let mut entries = Vec::new();
    let mut current: Option<M2Entry> = None;

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            entries.extend(current.take());
            continue;
        }
        if let Some(sentence) = line.strip_prefix("S ").or(if line == "S" { Some("") } else { None }) {
            entries.extend(current.take());
            current = Some(M2Entry {
                tokens: sentence.split_whitespace().map(str::to_string).collect(),
                annotations: Vec::new(),
            });
        } else if let Some(body) = line.strip_prefix("A ") {
            let entry = current.as_mut().ok_or_else(|| Error::M2 {
                line: line_no,
                message: "annotation before any S line".into(),
            })?;
            if let Some(ann) = parse_annotation(body, entry.tokens.len(), line_no)? {
                entry.annotations.push(ann);
            }
        } else {
            return Err(Error::M2 {
                line: line_no,
                message: format!("expected an `S ` or `A ` line, got `{}`", truncate(line)),
            });
        }
    }
    entries.extend(current);
    Ok(entries)
}

fn truncate(s: &str) -> String {
    s.chars().take(40).collect()
}

fn parse_annotation(body: &str, n_tokens: usize, line: usize) -> Result<Option<Annotation>> {
    let err = |message: String| Error::M2 { line, message };
    let fields: Vec<&str> = body.split("|||").collect();
    if fields.len() < 3 {
        return Err(err(format!("annotation has {} fields, need at least 3", fields.len())));
    }
    let code = fields[1].trim();
    if code.is_empty() {
        return Err(err("empty error code".into()));
    }
    let mut span = fields[0].split_whitespace();
    let (Some(start), Some(end), None) = (span.next(), span.next(), span.next()) else {
        return Err(err(format!("malformed span `{}`", fields[0])));
    };
    if code == "noop" {
        return Ok(None);
    }
    let parse = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| err(format!("span offset `{s}` is not a non-negative integer")))
    };
    let (span_start, span_end) = (parse(start)?, parse(end)?);
    if span_start > span_end {
        return Err(err(format!("span start {span_start} exceeds end {span_end}")));
    }
    if span_end > n_tokens {
        return Err(err(format!("span end {span_end} exceeds sentence length {n_tokens}")));
    }
    let correction = match fields[2].trim() {
        "-NONE-" => String::new(),
        c => c.split_whitespace().collect::<Vec<_>>().join(" "),
    };
    let annotator = match fields.get(5) {
        Some(a) => a
            .trim()
            .parse()
            .map_err(|_| err(format!("annotator id `{}` is not an integer", a.trim())))?,
        None => 0,
    };
    Ok(Some(Annotation {
        span_start,
        span_end,
        code: code.to_string(),
        correction,
        annotator,
    }))
}

/// Writes entries back in M2 form. Parsing the result gives the same entries.
pub fn write_m2(entries: &[M2Entry]) -> String {
    let mut out = String::new();
    for entry in entries {
        let _ = writeln!(out, "S {}", entry.tokens.join(" "));
        for a in &entry.annotations {
            let _ = writeln!(
                out,
                "A {} {}|||{}|||{}|||REQUIRED|||-NONE-|||{}",
                a.span_start, a.span_end, a.code, a.correction, a.annotator
            );
        }
        out.push('\n');
    }
    out
}
