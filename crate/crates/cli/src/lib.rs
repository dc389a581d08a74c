//! The `elsa` command line.
//!
//! Every subcommand reads explicit paths (`-` or an omitted path means stdin or
//! stdout), validates its inputs fully before writing anything, and produces
//! byte-identical output for identical inputs regardless of `--jobs`.

use std::collections::{BTreeSet, HashMap};
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{info, warn};
use rayon::prelude::*;

use elsa_core::aggregate::aggregate_document;
use elsa_core::conll::write_tsa_conll;
use elsa_core::entity_file::{
    attach_to_corpus, parse_entity_str, parse_mention_file, write_entity_file, MentionsByDocument,
    PolarityMode,
};
use elsa_core::eval::{
    diagnostics, distribution_report, entity_prf, proxy_accuracy, ConfusionTable, DiagnosticsReport,
};
use elsa_core::fine::{parse_fine_slice, parse_release};
use elsa_core::labels::{derive_doc_label, derive_sentence_label, derive_target_labels, DocLabel};
use elsa_core::resolve::{resolve_document, resolve_predicted, PredictedMention};
use elsa_core::scalar::{percent_rational, round_rational};
use elsa_core::{AggregatedPolarity, Document, Entity, ExactAccuracy, ExactPrf, Strategy};

#[derive(Parser, Debug)]
#[command(name = "elsa", version, about = "Entity-level sentiment analysis toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write target-level labels as CoNLL (one token and tag per line).
    DeriveTsa(DeriveArgs),
    /// Write sentence labels as TSV: doc_id, sent_id, label.
    DeriveSentences(DeriveArgs),
    /// Write document labels as TSV: doc_id, rating, category, label.
    DeriveDocs(DeriveArgs),
    /// Cluster PER/ORG mentions into document-level entities.
    Resolve(ResolveArgs),
    /// Assign a polarity to every entity with one proxy strategy.
    Aggregate(AggregateArgs),
    /// Score predicted entities against gold entities.
    Evaluate(EvaluateArgs),
    /// Corpus statistics, with gold entity statistics and diagnostics if given.
    Report(ReportArgs),
    /// Run resolve, aggregate and evaluate, writing every stage to a directory.
    Pipeline(PipelineArgs),
}

#[derive(Args, Debug)]
struct DeriveArgs {
    /// Fine-grained corpus (JSON); `-` reads stdin.
    #[arg(long, default_value = "-")]
    fine: PathBuf,
    /// Review metadata; reads `--fine` as the sentence-level release layout.
    #[arg(long)]
    metadata: Option<PathBuf>,
    #[arg(long, default_value = "-")]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct ResolveArgs {
    #[arg(long, default_value = "-")]
    fine: PathBuf,
    /// Predicted mentions (JSON lines). Without it the corpus mentions are used.
    #[arg(long)]
    mentions: Option<PathBuf>,
    #[arg(long, default_value = "-")]
    out: PathBuf,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Doc,
    Sentence,
    Target,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Doc => Strategy::DocProxy,
            StrategyArg::Sentence => Strategy::SentenceProxy,
            StrategyArg::Target => Strategy::TargetProxy,
        }
    }
}

#[derive(Args, Debug)]
struct AggregateArgs {
    #[arg(long, value_enum)]
    strategy: StrategyArg,
    #[arg(long)]
    fine: PathBuf,
    /// Entities to label (gold or predicted mode; polarities are replaced).
    #[arg(long, default_value = "-")]
    entities: PathBuf,
    #[arg(long, default_value = "-")]
    out: PathBuf,
    /// Also write the evidence behind every decision as JSON lines.
    #[arg(long)]
    evidence: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EvalMode {
    /// Accuracy when both files hold the same entity ids, matching otherwise.
    Auto,
    /// Accuracy over gold entity ids.
    Proxy,
    /// Precision, recall and F1 after span-overlap matching.
    Match,
}

#[derive(Args, Debug)]
struct EvaluateArgs {
    #[arg(long)]
    gold: PathBuf,
    #[arg(long, default_value = "-")]
    pred: PathBuf,
    #[arg(long, value_enum, default_value_t = EvalMode::Auto)]
    mode: EvalMode,
    #[arg(long)]
    json: bool,
    /// Treat warnings (mention mismatches, unknown documents) as errors.
    #[arg(long)]
    strict: bool,
    #[arg(long, default_value = "-")]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct ReportArgs {
    #[arg(long, default_value = "-")]
    fine: PathBuf,
    /// Review metadata; reads `--fine` as the sentence-level release layout.
    #[arg(long)]
    metadata: Option<PathBuf>,
    /// Gold entities; adds entity statistics and target-proxy diagnostics.
    #[arg(long)]
    gold: Option<PathBuf>,
    #[arg(long)]
    json: bool,
    #[arg(long, default_value = "-")]
    out: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PipelineStrategy {
    Doc,
    Sentence,
    Target,
    /// Keep the polarities carried by predicted mentions.
    Mentions,
}

#[derive(Args, Debug)]
struct PipelineArgs {
    #[arg(long, value_enum)]
    strategy: PipelineStrategy,
    #[arg(long)]
    fine: PathBuf,
    #[arg(long)]
    mentions: Option<PathBuf>,
    #[arg(long)]
    gold: PathBuf,
    #[arg(long)]
    out_dir: PathBuf,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    strict: bool,
}

/// Parses `argv` (including the program name), runs the command and returns
/// the process exit code: 0 on success, 1 on invalid input, 2 on bad usage.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let _ = env_logger::Builder::from_env(env_logger::Env::new().filter("ELSA_LOG"))
        .format_timestamp(None)
        .try_init();
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::DeriveTsa(a) => derive_tsa(&a),
        Command::DeriveSentences(a) => derive_sentences(&a),
        Command::DeriveDocs(a) => derive_docs(&a),
        Command::Resolve(a) => resolve(&a),
        Command::Aggregate(a) => aggregate(&a),
        Command::Evaluate(a) => evaluate(&a),
        Command::Report(a) => report(&a),
        Command::Pipeline(a) => pipeline(&a),
    }
}

// ---------------------------------------------------------------------------
// I/O helpers

fn is_stdio(path: &Path) -> bool {
    path.as_os_str() == "-"
}

fn read_input(path: &Path) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    if is_stdio(path) {
        io::stdin().read_to_end(&mut buf).context("reading stdin")?;
    } else {
        buf = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    }
    Ok(buf)
}

fn read_text(path: &Path) -> Result<String> {
    String::from_utf8(read_input(path)?).with_context(|| format!("{} is not UTF-8", path.display()))
}

fn write_output(path: &Path, contents: &str) -> Result<()> {
    if is_stdio(path) {
        let mut out = io::stdout().lock();
        out.write_all(contents.as_bytes())?;
        out.flush()?;
    } else {
        fs::write(path, contents).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn check_single_stdin(paths: &[&Path]) -> Result<()> {
    if paths.iter().filter(|p| is_stdio(p)).count() > 1 {
        bail!("only one input may be read from stdin");
    }
    Ok(())
}

fn load_corpus(path: &Path) -> Result<Vec<Document>> {
    let bytes = read_input(path)?;
    let docs = parse_fine_slice(&bytes).with_context(|| format!("invalid corpus {}", path.display()))?;
    info!("{}: {} documents", path.display(), docs.len());
    Ok(docs)
}

fn load_corpus_with(fine: &Path, metadata: Option<&Path>) -> Result<Vec<Document>> {
    let Some(meta) = metadata else {
        return load_corpus(fine);
    };
    check_single_stdin(&[fine, meta])?;
    let docs = parse_release(&read_input(fine)?, &read_input(meta)?)
        .with_context(|| format!("invalid corpus {}", fine.display()))?;
    info!("{}: {} documents", fine.display(), docs.len());
    Ok(docs)
}

fn load_entities(path: &Path, mode: PolarityMode, corpus: Option<&[Document]>) -> Result<Vec<Entity>> {
    let text = read_text(path)?;
    let mut entities =
        parse_entity_str(&text, mode).with_context(|| format!("invalid entity file {}", path.display()))?;
    if let Some(corpus) = corpus {
        attach_to_corpus(&mut entities, corpus)
            .map_err(|m| anyhow!(m))
            .with_context(|| format!("entity file {} does not fit the corpus", path.display()))?;
    }
    Ok(entities)
}

fn load_mentions(path: &Path, corpus: &[Document]) -> Result<MentionsByDocument> {
    let bytes = read_input(path)?;
    parse_mention_file(bytes.as_slice(), corpus)
        .with_context(|| format!("invalid mention file {}", path.display()))
}

/// Runs `f` over `items` on a pool of `jobs` threads; results keep input order.
fn par_map<T, R, F>(jobs: usize, items: &[T], f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Result<R> + Sync + Send,
{
    if jobs <= 1 {
        return items.iter().map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .context("starting worker pool")?;
    pool.install(|| items.par_iter().map(f).collect())
}

// ---------------------------------------------------------------------------
// derive-*

fn derive_tsa(a: &DeriveArgs) -> Result<()> {
    let corpus = load_corpus_with(&a.fine, a.metadata.as_deref())?;
    let targets: Vec<Vec<_>> = corpus
        .iter()
        .flat_map(|d| d.sentences.iter().map(derive_target_labels))
        .collect();
    let items: Vec<_> = corpus
        .iter()
        .flat_map(|d| d.sentences.iter())
        .zip(&targets)
        .map(|(s, t)| (s, t.as_slice()))
        .collect();
    let text = write_tsa_conll(&items).context("cannot express targets as CoNLL")?;
    write_output(&a.out, &text)
}

fn derive_sentences(a: &DeriveArgs) -> Result<()> {
    let corpus = load_corpus_with(&a.fine, a.metadata.as_deref())?;
    let mut out = String::from("doc_id\tsent_id\tlabel\n");
    for d in &corpus {
        for s in &d.sentences {
            let _ = writeln!(out, "{}\t{}\t{}", d.doc_id, s.sent_id, derive_sentence_label(s));
        }
    }
    write_output(&a.out, &out)
}

fn doc_label_name(label: DocLabel) -> &'static str {
    elsa_core::Sentiment::from(label).as_str()
}

fn derive_docs(a: &DeriveArgs) -> Result<()> {
    let corpus = load_corpus_with(&a.fine, a.metadata.as_deref())?;
    let mut out = String::from("doc_id\trating\tcategory\tlabel\n");
    for d in &corpus {
        let label = derive_doc_label(d.rating.into())?;
        let _ = writeln!(out, "{}\t{}\t{}\t{}", d.doc_id, d.rating, d.category, doc_label_name(label));
    }
    write_output(&a.out, &out)
}

// ---------------------------------------------------------------------------
// resolve / aggregate

fn resolve_corpus(corpus: &[Document], mentions: Option<&MentionsByDocument>, jobs: usize) -> Result<Vec<Entity>> {
    if let Some(m) = mentions {
        let known: BTreeSet<&str> = corpus.iter().map(|d| d.doc_id.as_str()).collect();
        if let Some((d, _)) = m.iter().find(|(d, _)| !known.contains(d.as_str())) {
            bail!("mention file refers to unknown document {d}");
        }
    }
    let empty: Vec<PredictedMention> = Vec::new();
    let per_doc = par_map(jobs, corpus, |doc| {
        Ok(match mentions {
            None => resolve_document(doc),
            Some(m) => {
                let list = m.iter().find(|(d, _)| *d == doc.doc_id).map_or(&empty, |(_, l)| l);
                resolve_predicted(doc, list)
            }
        })
    })?;
    Ok(per_doc.into_iter().flatten().collect())
}

fn resolve(a: &ResolveArgs) -> Result<()> {
    let inputs: Vec<&Path> = std::iter::once(a.fine.as_path()).chain(a.mentions.as_deref()).collect();
    check_single_stdin(&inputs)?;
    let corpus = load_corpus(&a.fine)?;
    let mentions = a.mentions.as_deref().map(|p| load_mentions(p, &corpus)).transpose()?;
    let entities = resolve_corpus(&corpus, mentions.as_ref(), a.jobs)?;
    info!("resolved {} entities", entities.len());
    write_output(&a.out, &write_entity_file(&entities, PolarityMode::Predicted))
}

fn group_by_document<'a>(corpus: &[Document], entities: &'a [Entity]) -> Result<Vec<Vec<&'a Entity>>> {
    let index: HashMap<&str, usize> = corpus.iter().enumerate().map(|(i, d)| (d.doc_id.as_str(), i)).collect();
    let mut groups: Vec<Vec<&Entity>> = vec![Vec::new(); corpus.len()];
    for e in entities {
        let i = index
            .get(e.doc_id.as_str())
            .ok_or_else(|| anyhow!("entity {} refers to unknown document {}", e.entity_id, e.doc_id))?;
        groups[*i].push(e);
    }
    Ok(groups)
}

fn aggregate_corpus(
    corpus: &[Document],
    entities: &[Entity],
    strategy: Strategy,
    jobs: usize,
) -> Result<Vec<(Entity, AggregatedPolarity)>> {
    let groups = group_by_document(corpus, entities)?;
    let work: Vec<(&Document, Vec<Entity>)> = corpus
        .iter()
        .zip(groups)
        .map(|(d, g)| (d, g.into_iter().cloned().collect()))
        .collect();
    let per_doc = par_map(jobs, &work, |(doc, ents)| {
        aggregate_document(doc, ents, strategy).map_err(anyhow::Error::from)
    })?;
    // restore input entity order
    let mut by_id: HashMap<String, (Entity, AggregatedPolarity)> = per_doc
        .into_iter()
        .flatten()
        .map(|(e, a)| (e.entity_id.clone(), (e, a)))
        .collect();
    Ok(entities
        .iter()
        .map(|e| by_id.remove(&e.entity_id).expect("every entity aggregated once"))
        .collect())
}

fn evidence_lines(results: &[(Entity, AggregatedPolarity)]) -> Result<String> {
    let mut out = String::new();
    for (e, agg) in results {
        let line = serde_json::json!({
            "entity_id": e.entity_id,
            "polarity": agg.value,
            "strategy": agg.strategy,
            "evidence": agg.evidence,
        });
        out.push_str(&serde_json::to_string(&line)?);
        out.push('\n');
    }
    Ok(out)
}

fn read_any_entities(path: &Path, corpus: &[Document]) -> Result<Vec<Entity>> {
    let text = read_text(path)?;
    let mode = if text.lines().next().is_some_and(|l| l.contains("\"mode\":\"gold\"")) {
        PolarityMode::Gold
    } else {
        PolarityMode::Predicted
    };
    let mut entities =
        parse_entity_str(&text, mode).with_context(|| format!("invalid entity file {}", path.display()))?;
    attach_to_corpus(&mut entities, corpus)
        .map_err(|m| anyhow!(m))
        .with_context(|| format!("entity file {} does not fit the corpus", path.display()))?;
    Ok(entities)
}

fn aggregate(a: &AggregateArgs) -> Result<()> {
    check_single_stdin(&[&a.fine, &a.entities])?;
    let corpus = load_corpus(&a.fine)?;
    let entities = read_any_entities(&a.entities, &corpus)?;
    let results = aggregate_corpus(&corpus, &entities, a.strategy.into(), a.jobs)?;
    let labeled: Vec<Entity> = results.iter().map(|(e, _)| e.clone()).collect();
    if let Some(path) = &a.evidence {
        write_output(path, &evidence_lines(&results)?)?;
    }
    write_output(&a.out, &write_entity_file(&labeled, PolarityMode::Predicted))
}

// ---------------------------------------------------------------------------
// evaluate

struct Evaluation {
    text: String,
    json: serde_json::Value,
    warnings: Vec<String>,
}

fn same_mentions(a: &Entity, b: &Entity) -> bool {
    let key = |e: &Entity| -> BTreeSet<(String, usize, usize)> {
        e.mentions.iter().map(|m| (m.sent_id.clone(), m.span.start(), m.span.end())).collect()
    };
    key(a) == key(b)
}

fn accuracy_report(gold: &[Entity], pred: &[Entity]) -> Result<Evaluation> {
    let by_id: HashMap<&str, &Entity> = pred.iter().map(|e| (e.entity_id.as_str(), e)).collect();
    let mut warnings = Vec::new();
    let mut proxy: HashMap<String, AggregatedPolarity> = HashMap::new();
    for g in gold {
        let p = by_id
            .get(g.entity_id.as_str())
            .ok_or_else(|| anyhow!("no prediction for gold entity {}", g.entity_id))?;
        if !same_mentions(g, p) {
            warnings.push(format!("entity {} has different mentions in gold and prediction", g.entity_id));
        }
        let value = p.polarity.ok_or_else(|| anyhow!("predicted entity {} has no polarity", p.entity_id))?;
        proxy.insert(
            g.entity_id.clone(),
            AggregatedPolarity {
                value,
                strategy: Strategy::DocProxy,
                evidence: vec![],
            },
        );
    }
    let extra: Vec<&str> = pred
        .iter()
        .map(|e| e.entity_id.as_str())
        .filter(|id| !gold.iter().any(|g| g.entity_id == *id))
        .collect();
    if !extra.is_empty() {
        warnings.push(format!("{} predicted entities have no gold counterpart", extra.len()));
    }
    let (table, acc): (ConfusionTable, ExactAccuracy) = proxy_accuracy(gold, &proxy)?;
    let value = if acc.undefined { "undefined".to_string() } else { round_rational(acc.value, 3) };
    let text = format!(
        "{}\naccuracy {}/{} = {}\n",
        table.render("Proxy"),
        acc.correct,
        acc.total,
        value
    );
    let json = serde_json::json!({
        "mode": "proxy",
        "confusion": table.to_json(),
        "accuracy": {
            "correct": acc.correct,
            "total": acc.total,
            "value": round_rational(acc.value, 3),
            "undefined": acc.undefined,
        },
    });
    Ok(Evaluation { text, json, warnings })
}

fn prf_report(gold: &[Entity], pred: &[Entity]) -> Result<Evaluation> {
    let mut warnings = Vec::new();
    let gold_docs: BTreeSet<&str> = gold.iter().map(|e| e.doc_id.as_str()).collect();
    let unseen: BTreeSet<&str> = pred
        .iter()
        .map(|e| e.doc_id.as_str())
        .filter(|d| !gold_docs.contains(d))
        .collect();
    if !unseen.is_empty() {
        warnings.push(format!("{} predicted documents have no gold entities", unseen.len()));
    }
    let (table, prf): (ConfusionTable, ExactPrf) = entity_prf(gold, pred)?;
    let pct = |v| percent_rational(v, 1);
    let text = format!(
        "{}\ntp {} predicted {} gold {}\nprecision {}% recall {}% f1 {}%{}\n",
        table.render("Model"),
        prf.tp,
        prf.predicted_total,
        prf.gold_total,
        pct(prf.precision),
        pct(prf.recall),
        pct(prf.f1),
        if prf.undefined { " (undefined ratios reported as 0)" } else { "" }
    );
    let json = serde_json::json!({
        "mode": "match",
        "confusion": table.to_json(),
        "tp": prf.tp,
        "fp": prf.fp,
        "missed": prf.missed,
        "predicted": prf.predicted_total,
        "gold": prf.gold_total,
        "precision": round_rational(prf.precision, 3),
        "recall": round_rational(prf.recall, 3),
        "f1": round_rational(prf.f1, 3),
        "undefined": prf.undefined,
    });
    Ok(Evaluation { text, json, warnings })
}

fn evaluate_entities(gold: &[Entity], pred: &[Entity], mode: EvalMode) -> Result<Evaluation> {
    let mode = match mode {
        EvalMode::Auto => {
            let g: BTreeSet<&str> = gold.iter().map(|e| e.entity_id.as_str()).collect();
            let p: BTreeSet<&str> = pred.iter().map(|e| e.entity_id.as_str()).collect();
            if g == p {
                EvalMode::Proxy
            } else {
                EvalMode::Match
            }
        }
        m => m,
    };
    if mode == EvalMode::Proxy {
        accuracy_report(gold, pred)
    } else {
        prf_report(gold, pred)
    }
}

fn finish_warnings(warnings: &[String], strict: bool) -> Result<()> {
    for w in warnings {
        warn!("{w}");
        eprintln!("warning: {w}");
    }
    if strict && !warnings.is_empty() {
        bail!("{} warnings with --strict", warnings.len());
    }
    Ok(())
}

fn evaluate(a: &EvaluateArgs) -> Result<()> {
    check_single_stdin(&[&a.gold, &a.pred])?;
    let gold = load_entities(&a.gold, PolarityMode::Gold, None)?;
    let pred = load_entities(&a.pred, PolarityMode::Predicted, None)?;
    let eval = evaluate_entities(&gold, &pred, a.mode)?;
    finish_warnings(&eval.warnings, a.strict)?;
    let out = if a.json {
        serde_json::to_string_pretty(&eval.json)? + "\n"
    } else {
        eval.text
    };
    write_output(&a.out, &out)
}

// ---------------------------------------------------------------------------
// report

fn target_diagnostics(corpus: &[Document], gold: &[Entity]) -> Result<DiagnosticsReport> {
    let results = aggregate_corpus(corpus, gold, Strategy::TargetProxy, 1)?;
    let proxy: HashMap<String, AggregatedPolarity> =
        results.into_iter().map(|(e, a)| (e.entity_id, a)).collect();
    Ok(diagnostics(gold, &proxy))
}

fn report(a: &ReportArgs) -> Result<()> {
    let inputs: Vec<&Path> = std::iter::once(a.fine.as_path())
        .chain(a.gold.as_deref())
        .chain(a.metadata.as_deref())
        .collect();
    check_single_stdin(&inputs)?;
    let corpus = load_corpus_with(&a.fine, a.metadata.as_deref())?;
    let gold = a
        .gold
        .as_deref()
        .map(|p| load_entities(p, PolarityMode::Gold, Some(&corpus)))
        .transpose()?;
    let dist = distribution_report(&corpus, gold.as_deref());
    let diag = gold.as_deref().map(|g| target_diagnostics(&corpus, g)).transpose()?;
    let out = if a.json {
        let v = serde_json::json!({ "distribution": dist, "diagnostics": diag });
        serde_json::to_string_pretty(&v)? + "\n"
    } else {
        let mut s = dist.render();
        if let Some(d) = &diag {
            s.push('\n');
            s.push_str(&d.render());
        }
        s
    };
    write_output(&a.out, &out)
}

// ---------------------------------------------------------------------------
// pipeline

fn pipeline(a: &PipelineArgs) -> Result<()> {
    let mut inputs: Vec<&Path> = vec![&a.fine, &a.gold];
    inputs.extend(a.mentions.as_deref());
    if inputs.iter().any(|p| is_stdio(p)) {
        bail!("pipeline inputs must be files");
    }
    if a.strategy == PipelineStrategy::Mentions && a.mentions.is_none() {
        bail!("--strategy mentions needs --mentions");
    }
    fs::create_dir_all(&a.out_dir).with_context(|| format!("creating {}", a.out_dir.display()))?;
    let corpus = load_corpus(&a.fine)?;
    let gold = load_entities(&a.gold, PolarityMode::Gold, Some(&corpus))?;
    let mentions = a.mentions.as_deref().map(|p| load_mentions(p, &corpus)).transpose()?;

    let resolved = resolve_corpus(&corpus, mentions.as_ref(), a.jobs)?;
    write_output(&a.out_dir.join("entities.jsonl"), &write_entity_file(&resolved, PolarityMode::Predicted))?;

    let labeled: Vec<Entity> = match a.strategy {
        PipelineStrategy::Mentions => resolved,
        s => {
            let strategy = match s {
                PipelineStrategy::Doc => Strategy::DocProxy,
                PipelineStrategy::Sentence => Strategy::SentenceProxy,
                _ => Strategy::TargetProxy,
            };
            let results = aggregate_corpus(&corpus, &resolved, strategy, a.jobs)?;
            write_output(&a.out_dir.join("evidence.jsonl"), &evidence_lines(&results)?)?;
            results.into_iter().map(|(e, _)| e).collect()
        }
    };
    if let Some(e) = labeled.iter().find(|e| e.polarity.is_none()) {
        bail!("entity {} received no polarity", e.entity_id);
    }
    write_output(&a.out_dir.join("pred.jsonl"), &write_entity_file(&labeled, PolarityMode::Predicted))?;

    let eval = evaluate_entities(&gold, &labeled, EvalMode::Auto)?;
    finish_warnings(&eval.warnings, a.strict)?;
    write_output(&a.out_dir.join("evaluation.txt"), &eval.text)?;
    write_output(
        &a.out_dir.join("evaluation.json"),
        &(serde_json::to_string_pretty(&eval.json)? + "\n"),
    )?;

    let mut summary = String::new();
    for e in &labeled {
        let _ = writeln!(
            summary,
            "{}\t{}\t{}",
            e.entity_id,
            e.canonical,
            e.polarity.map_or("-", |p| p.as_str())
        );
    }
    summary.push('\n');
    summary.push_str(&eval.text);
    write_output(Path::new("-"), &summary)
}
