//! Command-line front end. `run` never exits the process itself; it returns
//! the exit code so tests can drive it in-process.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::datasets::{
    build_clean_plus_error, build_error, build_mix_all, filter_by_length, LengthFilter, MixMode,
    ParallelCorpus,
};
use crate::error::Error;
use crate::eval::{
    corpus_bleu_parallel, delta_report, references_by_line, BleuScore, DEFAULT_MAX_N,
    NORMALIZATION_VERSION,
};
use crate::fsio::{digest_file, join_lines, read_lines, OutputSet};
use crate::m2::parse_m2;
use crate::morphology::InflectionLexicon;
use crate::noiser::{noisify_corpus, parse_event_log, write_event_log, NoiseConfig, NoiseSummary};
use crate::stats::{
    build_confusion_matrices, collect_stats, default_code_map, parse_code_map, ConfusionMatrixSet,
    SourceFile,
};
use crate::types::ErrorType;

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 42;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

const VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), " (bleu normalization 13a-punct/1)");

#[derive(Parser, Debug)]
#[command(name = "gramnoise", version = VERSION, about = "Grammatical noise injection and BLEU robustness tooling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Learn confusion matrices from M2 files.
    Stats(StatsArgs),
    /// Inject exactly one error per sentence.
    Noise(NoiseArgs),
    /// Build an ERROR, CLEAN+ERROR or MIX-ALL training corpus.
    Mix(MixArgs),
    /// Corpus BLEU of a hypothesis file against one or more references.
    Score(ScoreArgs),
    /// BLEU deltas broken down by substitution type.
    Report(ReportArgs),
}

#[derive(Args, Debug)]
struct StatsArgs {
    /// M2 file; repeat to pool several.
    #[arg(long, required = true)]
    m2: Vec<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    /// Additive smoothing constant.
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    /// Error-code mapping, e.g. "ArtOrDet=ART,Prep=PREP,Nn=NN,SVA=SVA".
    #[arg(long)]
    code_map: Option<String>,
}

#[derive(Args, Debug)]
struct NoiseArgs {
    #[arg(long = "type")]
    error_type: ErrorType,
    /// Raw tokenized source text, one sentence per line.
    #[arg(long)]
    corpus: PathBuf,
    /// Bracketed parse trees aligned with the corpus; not needed for drop.
    #[arg(long)]
    trees: Option<PathBuf>,
    #[arg(long, env = "GRAMNOISE_MATRICES")]
    matrices: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    /// Event log path; defaults to `<out>.events.tsv`.
    #[arg(long)]
    events: Option<PathBuf>,
    /// Summary path; defaults to `<out>.summary.json`.
    #[arg(long)]
    summary: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Args, Debug)]
struct MixArgs {
    #[arg(long)]
    mode: MixMode,
    #[arg(long)]
    clean_src: PathBuf,
    #[arg(long)]
    clean_tgt: PathBuf,
    /// Noised source as TYPE=PATH; repeat for mix-all.
    #[arg(long = "noisy", value_parser = parse_noisy)]
    noisy: Vec<(ErrorType, PathBuf)>,
    /// Output prefix; writes .src, .tgt, .tags and .manifest.json.
    #[arg(long)]
    out: PathBuf,
    /// Drop pairs longer than this many words on either side.
    #[arg(long)]
    max_words: Option<usize>,
    /// Seed recorded in the manifest.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct ScoreArgs {
    #[arg(long)]
    hyp: PathBuf,
    /// Reference file; repeat for multiple reference sets.
    #[arg(long = "ref", required = true)]
    refs: Vec<PathBuf>,
    /// Machine-readable report; the text report always goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Args, Debug)]
struct ReportArgs {
    #[arg(long)]
    events: PathBuf,
    /// Translations of the noisy input.
    #[arg(long)]
    noisy_hyp: PathBuf,
    /// Translations of the clean input.
    #[arg(long)]
    clean_hyp: PathBuf,
    #[arg(long = "ref", required = true)]
    refs: Vec<PathBuf>,
    /// JSON report; the table always goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_noisy(s: &str) -> std::result::Result<(ErrorType, PathBuf), String> {
    let (ty, path) = s
        .split_once('=')
        .ok_or_else(|| format!("expected TYPE=PATH, got {s:?}"))?;
    let ty: ErrorType = ty.parse().map_err(|e: Error| e.to_string())?;
    if path.is_empty() {
        return Err("empty path".into());
    }
    Ok((ty, PathBuf::from(path)))
}

enum Failure {
    Usage(String),
    Data(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

type CliResult = std::result::Result<(), Failure>;

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    let repro = Reproducibility::new(&argv);
    let result = match cli.command {
        Command::Stats(a) => stats(a, &repro),
        Command::Noise(a) => noise(a, &repro, stderr),
        Command::Mix(a) => mix(a, &repro),
        Command::Score(a) => score(a, &repro, stdout),
        Command::Report(a) => report(a, &repro, stdout),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Data(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_DATA
        }
    }
}

struct Reproducibility {
    argv: String,
}

impl Reproducibility {
    fn new(argv: &[OsString]) -> Self {
        let argv = argv
            .iter()
            .map(|a| a.to_string_lossy().into_owned())
            .collect::<Vec<_>>()
            .join(" ");
        Reproducibility { argv }
    }

    fn line(&self, seed: Option<u64>, sources: &[SourceFile]) -> String {
        let seed = seed.map_or_else(|| "none".to_string(), |s| s.to_string());
        let digests = sources
            .iter()
            .map(|s| format!("{}={}", s.path, s.sha256))
            .collect::<Vec<_>>()
            .join(",");
        format!(
            "argv=[{}] seed={seed} version={} inputs=[{digests}]",
            self.argv,
            env!("CARGO_PKG_VERSION")
        )
    }
}

fn digests(paths: &[&Path]) -> crate::Result<Vec<SourceFile>> {
    paths.iter().map(|p| digest_file(p)).collect()
}

fn to_json<T: Serialize>(value: &T) -> crate::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn stats(a: StatsArgs, repro: &Reproducibility) -> CliResult {
    if !(a.alpha >= 0.0 && a.alpha.is_finite()) {
        return Err(Failure::Usage(format!("--alpha must be a finite value >= 0, got {}", a.alpha)));
    }
    let code_map = match &a.code_map {
        Some(spec) => parse_code_map(spec).map_err(|e| Failure::Usage(e.to_string()))?,
        None => default_code_map(),
    };
    let mut entries = Vec::new();
    for path in &a.m2 {
        let file = std::fs::File::open(path).map_err(|e| Error::file(path, e))?;
        let parsed = parse_m2(std::io::BufReader::new(file))
            .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
        entries.extend(parsed);
    }
    let counts = collect_stats(&entries, &code_map, InflectionLexicon::builtin());
    let mut set = build_confusion_matrices(&counts, a.alpha);
    let paths: Vec<&Path> = a.m2.iter().map(PathBuf::as_path).collect();
    let sources = digests(&paths)?;
    set.metadata.reproducibility.push(repro.line(None, &sources));
    set.metadata.sources = sources;
    let mut out = OutputSet::new();
    out.stage(&a.out, set.to_json()?.as_bytes())?;
    out.commit()?;
    Ok(())
}

#[derive(Serialize)]
struct NoiseSummaryFile {
    #[serde(flatten)]
    summary: NoiseSummary,
    table_row: String,
    sources: Vec<SourceFile>,
    reproducibility: Vec<String>,
}

fn noise(a: NoiseArgs, repro: &Reproducibility, stderr: &mut dyn Write) -> CliResult {
    if a.workers == 0 {
        return Err(Failure::Usage("--workers must be at least 1".into()));
    }
    let needs_trees = a.error_type != ErrorType::Drop;
    if needs_trees && a.trees.is_none() {
        return Err(Failure::Usage(format!("--trees is required for --type {}", a.error_type.tag())));
    }
    if needs_trees && a.matrices.is_none() {
        return Err(Failure::Usage(format!(
            "--matrices (or GRAMNOISE_MATRICES) is required for --type {}",
            a.error_type.tag()
        )));
    }
    let raw = read_lines(&a.corpus)?;
    let trees = match (&a.trees, needs_trees) {
        (Some(p), true) => Some(read_lines(p)?),
        _ => None,
    };
    let matrices = match (&a.matrices, needs_trees) {
        (Some(p), true) => ConfusionMatrixSet::read(p)
            .map_err(|e| Error::Format(format!("{}: {e}", p.display())))?,
        _ => ConfusionMatrixSet::uniform(),
    };
    let config = NoiseConfig::new(a.error_type, matrices, a.seed)?;
    let noised = noisify_corpus(&raw, trees.as_deref(), &config, a.workers)?;

    let mut inputs: Vec<&Path> = vec![&a.corpus];
    if needs_trees {
        inputs.extend(a.trees.as_deref());
        inputs.extend(a.matrices.as_deref());
    }
    let sources = digests(&inputs)?;
    let summary = NoiseSummaryFile {
        table_row: noised.summary.table_row(),
        summary: noised.summary.clone(),
        reproducibility: vec![repro.line(Some(a.seed), &sources)],
        sources,
    };
    let events_path = a.events.unwrap_or_else(|| with_suffix(&a.out, ".events.tsv"));
    let summary_path = a.summary.unwrap_or_else(|| with_suffix(&a.out, ".summary.json"));
    let mut out = OutputSet::new();
    out.stage(&a.out, join_lines(&noised.lines).as_bytes())?;
    out.stage(&events_path, write_event_log(&noised.events).as_bytes())?;
    out.stage(&summary_path, to_json(&summary)?.as_bytes())?;
    out.commit()?;
    let _ = writeln!(stderr, "{}", summary.table_row);
    Ok(())
}

fn mix(a: MixArgs, repro: &Reproducibility) -> CliResult {
    let mut noisy_paths: BTreeMap<ErrorType, PathBuf> = BTreeMap::new();
    for (ty, path) in &a.noisy {
        if noisy_paths.insert(*ty, path.clone()).is_some() {
            return Err(Failure::Usage(format!("--noisy given twice for {}", ty.tag())));
        }
    }
    if a.max_words == Some(0) {
        return Err(Failure::Usage("--max-words must be positive".into()));
    }
    match a.mode {
        MixMode::Error | MixMode::CleanPlusError if noisy_paths.len() != 1 => {
            return Err(Failure::Usage(format!(
                "--mode {} takes exactly one --noisy TYPE=PATH",
                a.mode.name()
            )));
        }
        MixMode::MixAll if noisy_paths.len() != ErrorType::ALL.len() => {
            let missing: Vec<&str> = ErrorType::ALL
                .iter()
                .filter(|t| !noisy_paths.contains_key(t))
                .map(|t| t.tag())
                .collect();
            return Err(Failure::Usage(format!(
                "--mode mix-all needs --noisy for every type; missing: {}",
                missing.join(", ")
            )));
        }
        _ => {}
    }

    let clean_tgt = read_lines(&a.clean_tgt)?;
    let clean = ParallelCorpus::new(read_lines(&a.clean_src)?, clean_tgt.clone())?;
    let mut noisy = BTreeMap::new();
    for (ty, path) in &noisy_paths {
        noisy.insert(*ty, ParallelCorpus::new(read_lines(path)?, clean_tgt.clone())?);
    }
    let mixture = match a.mode {
        MixMode::Error => {
            let (ty, corpus) = noisy.iter().next().expect("checked above");
            build_error(&clean, corpus, *ty)?
        }
        MixMode::CleanPlusError => {
            let (ty, corpus) = noisy.iter().next().expect("checked above");
            build_clean_plus_error(&clean, corpus, *ty)?
        }
        MixMode::MixAll => build_mix_all(&clean, &noisy)?,
    };

    let mut inputs: Vec<&Path> = vec![&a.clean_src, &a.clean_tgt];
    inputs.extend(noisy_paths.values().map(PathBuf::as_path));
    let sources = digests(&inputs)?;
    let mut manifest = mixture.manifest(sources.clone(), a.seed);
    let corpus = match a.max_words {
        Some(max_words) => {
            let (filtered, removed) = filter_by_length(&mixture.corpus, max_words)?;
            manifest.length_filter = Some(LengthFilter { max_words, removed });
            manifest.total_lines = filtered.len();
            filtered
        }
        None => mixture.corpus,
    };
    manifest.reproducibility.push(repro.line(a.seed, &sources));

    let tags: Vec<String> = corpus
        .tags
        .iter()
        .flatten()
        .map(|t| t.tag().to_string())
        .collect();
    let mut out = OutputSet::new();
    out.stage(&with_suffix(&a.out, ".src"), join_lines(&corpus.source).as_bytes())?;
    out.stage(&with_suffix(&a.out, ".tgt"), join_lines(&corpus.target).as_bytes())?;
    out.stage(&with_suffix(&a.out, ".tags"), join_lines(&tags).as_bytes())?;
    out.stage(&with_suffix(&a.out, ".manifest.json"), manifest.to_json()?.as_bytes())?;
    out.commit()?;
    Ok(())
}

#[derive(Serialize)]
struct ScoreReport {
    normalization: String,
    max_n: usize,
    references: usize,
    #[serde(flatten)]
    bleu: BleuScore,
    sources: Vec<SourceFile>,
    reproducibility: Vec<String>,
}

fn read_references(paths: &[PathBuf]) -> crate::Result<Vec<Vec<String>>> {
    let sets = paths.iter().map(|p| read_lines(p)).collect::<crate::Result<Vec<_>>>()?;
    references_by_line(&sets)
}

fn score(a: ScoreArgs, repro: &Reproducibility, stdout: &mut dyn Write) -> CliResult {
    if a.workers == 0 {
        return Err(Failure::Usage("--workers must be at least 1".into()));
    }
    let hyps = read_lines(&a.hyp)?;
    let refs = read_references(&a.refs)?;
    let bleu = corpus_bleu_parallel(&hyps, &refs, DEFAULT_MAX_N, a.workers)?;
    let mut inputs: Vec<&Path> = vec![&a.hyp];
    inputs.extend(a.refs.iter().map(PathBuf::as_path));
    let sources = digests(&inputs)?;
    let report = ScoreReport {
        normalization: NORMALIZATION_VERSION.to_string(),
        max_n: DEFAULT_MAX_N,
        references: a.refs.len(),
        bleu,
        reproducibility: vec![repro.line(None, &sources)],
        sources,
    };
    if let Some(path) = &a.out {
        let mut out = OutputSet::new();
        out.stage(path, to_json(&report)?.as_bytes())?;
        out.commit()?;
    }
    let b = &report.bleu;
    let precisions = b
        .precisions
        .iter()
        .map(|p| format!("{:.1}", 100.0 * p))
        .collect::<Vec<_>>()
        .join("/");
    let _ = writeln!(
        stdout,
        "BLEU = {:.2} {precisions} (BP = {:.3}, hyp_len = {}, ref_len = {}, refs = {}, normalization = {})",
        b.score, b.brevity_penalty, b.hyp_length, b.ref_length, report.references, report.normalization
    );
    Ok(())
}

#[derive(Serialize)]
struct DeltaReportFile {
    #[serde(flatten)]
    report: crate::eval::DeltaReport,
    sources: Vec<SourceFile>,
    reproducibility: Vec<String>,
}

fn report(a: ReportArgs, repro: &Reproducibility, stdout: &mut dyn Write) -> CliResult {
    let events_path = &a.events;
    let text = std::fs::read_to_string(events_path).map_err(|e| Error::file(events_path, e))?;
    let events = parse_event_log(&text)?;
    let noisy = read_lines(&a.noisy_hyp)?;
    let clean = read_lines(&a.clean_hyp)?;
    let refs = read_references(&a.refs)?;
    if noisy.len() != clean.len() || noisy.len() != refs.len() {
        return Err(Failure::Data(Error::LineCount {
            left: "noisy translations".into(),
            left_lines: noisy.len(),
            right: if noisy.len() != clean.len() {
                "clean translations".into()
            } else {
                "references".into()
            },
            right_lines: if noisy.len() != clean.len() { clean.len() } else { refs.len() },
        }));
    }
    let delta = delta_report(&events, &noisy, &clean, &refs)?;
    let mut inputs: Vec<&Path> = vec![&a.events, &a.noisy_hyp, &a.clean_hyp];
    inputs.extend(a.refs.iter().map(PathBuf::as_path));
    let sources = digests(&inputs)?;
    if let Some(path) = &a.out {
        let file = DeltaReportFile {
            report: delta.clone(),
            reproducibility: vec![repro.line(None, &sources)],
            sources,
        };
        let mut out = OutputSet::new();
        out.stage(path, to_json(&file)?.as_bytes())?;
        out.commit()?;
    }
    let _ = write!(stdout, "{}", delta.render_table());
    Ok(())
}
