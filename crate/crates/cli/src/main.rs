//! `egt`: validate, match, apply, enumerate and audit effect-oriented rules
//! stored as canonical JSON documents.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use effect_gt::effect::{count_bounds, enumerate_selections, Connectedness, EffectOrientedRule};
use effect_gt::fixtures;
use effect_gt::graph::{TypeGraph, TypedGraph};
use effect_gt::io::{
    effect_rule_from_document, GraphDocument, MorphismDocument, RuleDocument, SelectionDocument, TraceDocument,
    TypeGraphDocument,
};
use effect_gt::matching::{
    find_globally_maximal, find_locally_complete, find_locally_maximal, oracle_locally_complete, MatchResult, PreMatch,
};
use effect_gt::semantics::{apply_match, audit_report, replay, EffectTransformation, Strategy};
use effect_gt::Error;

#[derive(Debug, Parser)]
#[command(name = "egt", version, about = "Effect-oriented graph transformation")]
struct Cli {
    /// Type graph document; defaults to the built-in banking type graph.
    #[arg(long, global = true)]
    types: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StrategyArg {
    LocallyComplete,
    LocallyMaximal,
    GloballyMaximal,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::LocallyComplete => Strategy::LocallyComplete,
            StrategyArg::LocallyMaximal => Strategy::LocallyMaximal,
            StrategyArg::GloballyMaximal => Strategy::GloballyMaximal,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FilterArg {
    None,
    WeakLeft,
    WeakRight,
    Left,
    Right,
}

impl From<FilterArg> for Connectedness {
    fn from(f: FilterArg) -> Self {
        match f {
            FilterArg::None => Connectedness::None,
            FilterArg::WeakLeft => Connectedness::WeakLeft,
            FilterArg::WeakRight => Connectedness::WeakRight,
            FilterArg::Left => Connectedness::Left,
            FilterArg::Right => Connectedness::Right,
        }
    }
}

#[derive(Debug, clap::Args)]
struct MatchArgs {
    #[arg(long)]
    rule: PathBuf,
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum)]
    strategy: StrategyArg,
    /// Base pre-match as a morphism document; required by the local strategies.
    #[arg(long)]
    base_match: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check graph, rule and type graph documents.
    Validate { files: Vec<PathBuf> },
    /// Print the match chosen by a strategy.
    Match {
        #[command(flatten)]
        args: MatchArgs,
        /// Print every result of the strategy instead of the first.
        #[arg(long)]
        all: bool,
    },
    /// Transform a graph and write the result.
    Apply {
        #[command(flatten)]
        args: MatchArgs,
        #[arg(long)]
        out: PathBuf,
        /// Also write the transformation trace, for `audit`.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// List or count the induced rules.
    Induced {
        #[arg(long)]
        rule: PathBuf,
        #[arg(long, value_enum, default_value = "none")]
        filter: FilterArg,
        #[arg(long)]
        count_only: bool,
    },
    /// Print the lower and upper bound on the number of induced rules.
    Bounds {
        #[arg(long)]
        rule: PathBuf,
    },
    /// Check a recorded transformation against the characterisation of
    /// effect-oriented transformations.
    Audit {
        #[arg(long)]
        rule: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        /// The recorded result graph.
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        trace: PathBuf,
    },
}

/// A failed run: exit code and message.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn no_match(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn audit(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::AuditFailure { .. } => Failure::audit(e.to_string()),
            _ => Failure::invalid(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: effect_gt::Result<T>) -> CliResult<T> {
    r.map_err(|e| Failure::from(e).with_prefix(path))
}

impl Failure {
    fn with_prefix(mut self, path: &Path) -> Self {
        self.message = format!("{}: {}", path.display(), self.message);
        self
    }
}

fn load_types(path: Option<&Path>) -> CliResult<TypeGraph> {
    match path {
        None => Ok(fixtures::bank_type_graph()),
        Some(p) => {
            let doc = in_file(p, TypeGraphDocument::decode(&read(p)?))?;
            in_file(p, doc.to_type_graph())
        }
    }
}

fn load_graph(path: &Path, tg: &TypeGraph) -> CliResult<TypedGraph> {
    let doc = in_file(path, GraphDocument::decode(&read(path)?))?;
    in_file(path, doc.to_graph(tg))
}

fn load_rule(path: &Path, tg: &TypeGraph) -> CliResult<EffectOrientedRule> {
    let doc = in_file(path, RuleDocument::decode(&read(path)?))?;
    in_file(path, effect_rule_from_document(&doc, tg))
}

fn load_prematch(args: &MatchArgs, eor: &EffectOrientedRule, host: &TypedGraph) -> CliResult<Option<PreMatch>> {
    let strategy = Strategy::from(args.strategy);
    match (&args.base_match, strategy.needs_prematch()) {
        (Some(p), true) => {
            let doc = in_file(p, MorphismDocument::decode(&read(p)?))?;
            Ok(Some(in_file(p, PreMatch::new(eor, host, doc.to_morphism()))?))
        }
        (None, false) => Ok(None),
        (Some(_), false) => Err(Failure::invalid(format!("{strategy} does not take --base-match"))),
        (None, true) => Err(Failure::invalid(format!("{strategy} requires --base-match"))),
    }
}

fn results(
    strategy: Strategy,
    all: bool,
    eor: &EffectOrientedRule,
    host: &TypedGraph,
    pm: Option<&PreMatch>,
) -> CliResult<Vec<MatchResult>> {
    let found = match (strategy, pm) {
        (Strategy::LocallyComplete, Some(pm)) if all => oracle_locally_complete(eor, host, pm)?,
        (Strategy::LocallyComplete, Some(pm)) => find_locally_complete(eor, host, pm)?.into_iter().collect(),
        (Strategy::LocallyMaximal, Some(pm)) => find_locally_maximal(eor, host, pm)?,
        (Strategy::GloballyMaximal, None) => find_globally_maximal(eor, host)?,
        _ => unreachable!("pre-match presence checked by load_prematch"),
    };
    Ok(if all {
        found
    } else {
        found.into_iter().take(1).collect()
    })
}

fn render_result(mr: &MatchResult) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "selection: {}", mr.selection());
    let _ = writeln!(s, "size: {}", mr.size());
    let _ = writeln!(s, "nodes:");
    for (k, v) in &mr.matching.nodes {
        let _ = writeln!(s, "  {k} -> {v}");
    }
    let _ = writeln!(s, "edges:");
    for (k, v) in &mr.matching.edges {
        let _ = writeln!(s, "  {k} -> {v}");
    }
    s
}

fn run_match(tg: &TypeGraph, args: &MatchArgs, all: bool) -> CliResult<String> {
    let eor = load_rule(&args.rule, tg)?;
    let host = load_graph(&args.graph, tg)?;
    let pm = load_prematch(args, &eor, &host)?;
    let found = results(args.strategy.into(), all, &eor, &host, pm.as_ref())?;
    if found.is_empty() {
        return Err(Failure::no_match(format!(
            "no match under {}",
            Strategy::from(args.strategy)
        )));
    }
    let text = found.iter().map(render_result).collect::<Vec<_>>().join("\n");
    Ok(text.trim_end().to_string())
}

fn trace_of(t: &EffectTransformation) -> TraceDocument {
    TraceDocument {
        base_match: MorphismDocument::from_morphism(&t.base_prematch.morphism),
        comatch: MorphismDocument::from_morphism(&t.record.comatch),
        matching: MorphismDocument::from_morphism(&t.record.matching),
        selection: SelectionDocument::from_selection(&t.selection),
        strategy: t.strategy.to_string(),
    }
}

fn run_apply(tg: &TypeGraph, args: &MatchArgs, out: &Path, trace: Option<&Path>) -> CliResult<String> {
    let eor = load_rule(&args.rule, tg)?;
    let host = load_graph(&args.graph, tg)?;
    let pm = load_prematch(args, &eor, &host)?;
    let strategy = Strategy::from(args.strategy);
    let Some(mr) = results(strategy, false, &eor, &host, pm.as_ref())?.into_iter().next() else {
        return Err(Failure::no_match(format!("no match under {strategy}")));
    };
    let t = apply_match(&eor, &host, strategy, mr)?;
    write(out, &GraphDocument::from_graph(&t.record.output).encode())?;
    if let Some(p) = trace {
        write(p, &trace_of(&t).encode())?;
    }
    let reused: Vec<&String> = t
        .selection
        .preserve
        .iter()
        .filter_map(|x| t.record.matching.image(x))
        .collect();
    let list = |items: Vec<&String>| {
        if items.is_empty() {
            "(none)".to_string()
        } else {
            items.into_iter().cloned().collect::<Vec<_>>().join(" ")
        }
    };
    let mut s = String::new();
    let _ = writeln!(s, "selection: {}", t.selection);
    let _ = writeln!(s, "created: {}", list(t.record.created().iter().collect()));
    let _ = writeln!(s, "deleted: {}", list(t.record.deleted().iter().collect()));
    let _ = write!(s, "reused: {}", list(reused));
    Ok(s)
}

fn run_induced(tg: &TypeGraph, rule: &Path, filter: FilterArg, count_only: bool) -> CliResult<String> {
    let eor = load_rule(rule, tg)?;
    let sels = enumerate_selections(&eor, filter.into());
    if count_only {
        return Ok(sels.len().to_string());
    }
    Ok(sels
        .iter()
        .map(|s| format!("{} size={}", s, s.size()))
        .collect::<Vec<_>>()
        .join("\n"))
}

fn run_audit(tg: &TypeGraph, rule: &Path, graph: &Path, out: &Path, trace: &Path) -> CliResult<String> {
    let eor = load_rule(rule, tg)?;
    let host = load_graph(graph, tg)?;
    let recorded = load_graph(out, tg)?;
    let doc = in_file(trace, TraceDocument::decode(&read(trace)?))?;
    let strategy: Strategy = in_file(trace, doc.strategy.parse())?;
    let t = replay(
        &eor,
        &host,
        strategy,
        &doc.selection.to_selection(),
        doc.matching.to_morphism(),
    )?;
    if t.record.output != recorded || t.record.comatch != doc.comatch.to_morphism() {
        return Err(Failure::invalid(format!(
            "{}: trace does not reproduce the recorded result",
            trace.display()
        )));
    }
    let report = audit_report(&t);
    let text = report.encode();
    if report.passed() {
        Ok(text.trim_end().to_string())
    } else {
        Err(Failure::audit(text.trim_end()))
    }
}

/// Tries the rule, graph, morphism and type graph formats in turn.
fn validate_file(tg: &TypeGraph, path: &Path) -> CliResult<Vec<String>> {
    let text = read(path)?;
    let diags = |e: Error| match e {
        Error::Validation(ds) => Ok(ds.iter().map(ToString::to_string).collect()),
        other => Err(Failure::from(other).with_prefix(path)),
    };
    if let Ok(doc) = RuleDocument::decode(&text) {
        return effect_rule_from_document(&doc, tg).map_or_else(diags, |_| Ok(Vec::new()));
    }
    if let Ok(doc) = GraphDocument::decode(&text) {
        return doc.to_graph(tg).map_or_else(diags, |_| Ok(Vec::new()));
    }
    if MorphismDocument::decode(&text).is_ok() {
        return Ok(Vec::new());
    }
    let doc = in_file(path, TypeGraphDocument::decode(&text))?;
    doc.to_type_graph().map_or_else(diags, |_| Ok(Vec::new()))
}

fn run_validate(tg: &TypeGraph, files: &[PathBuf]) -> CliResult<String> {
    let mut lines = Vec::new();
    let mut clean = true;
    for f in files {
        let diags = validate_file(tg, f)?;
        if diags.is_empty() {
            lines.push(format!("{}: ok", f.display()));
        }
        for d in diags {
            clean = false;
            lines.push(format!("{}: {d}", f.display()));
        }
    }
    let text = lines.join("\n");
    if clean {
        Ok(text)
    } else {
        Err(Failure::invalid(text))
    }
}

fn run(cli: &Cli) -> CliResult<String> {
    let tg = load_types(cli.types.as_deref())?;
    match &cli.command {
        Command::Validate { files } => run_validate(&tg, files),
        Command::Match { args, all } => run_match(&tg, args, *all),
        Command::Apply { args, out, trace } => run_apply(&tg, args, out, trace.as_deref()),
        Command::Induced {
            rule,
            filter,
            count_only,
        } => run_induced(&tg, rule, *filter, *count_only),
        Command::Bounds { rule } => {
            let (lo, hi) = count_bounds(&load_rule(rule, &tg)?);
            Ok(format!("{lo} {hi}"))
        }
        Command::Audit {
            rule,
            graph,
            out,
            trace,
        } => run_audit(&tg, rule, graph, out, trace),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(text) => {
            if !text.is_empty() {
                println!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("{}", f.message);
            ExitCode::from(f.code)
        }
    }
}
