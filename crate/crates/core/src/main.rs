use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use snacs::agreement::{filter_semantic, pair_confusions, pairwise_agreement, AgreementReport, AgreementTable};
use snacs::corpus::streusle::{import_streusle_json, parse_id_list};
use snacs::corpus::{corpus_stats, parse_corpus, serialize_corpus, validate_corpus, Sentence};
use snacs::disambig::{gold_targets, load_model, save_model, ClassifierKind, Model, TrainConfig};
use snacs::eval::{confusion_matrix, evaluate_auto_id, evaluate_gold_id, EvalReport};
use snacs::hierarchy::{Construal, Dimension, Hierarchy, RoleOnly, MAX_DEPTH};
use snacs::lexres::LexicalResourceBundle;
use snacs::pipeline::{
    align_to_gold_targets, all_depths, evaluate_model, predict_labels, read_predictions, train_model, write_predictions,
};
use snacs::targetid::{build_lexicons, identify_corpus, score_targets, IdMode, IdOptions, TargetLexicons};

/// Adposition and possessive supersense tagging and evaluation.
#[derive(Parser)]
#[command(name = "snacs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a corpus file against the format and label inventory.
    Validate {
        corpus: PathBuf,
        /// Comma-separated labels allowed only as scene roles.
        #[arg(long, value_delimiter = ',')]
        role_only: Vec<String>,
    },
    /// Split-level counts.
    Stats { corpus: Vec<PathBuf> },
    /// Convert a STREUSLE JSON release to the corpus format.
    Import {
        json: PathBuf,
        /// File listing the sentence ids to keep.
        #[arg(long)]
        ids: Option<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Build target-identification lexicons from training data.
    Lexicons {
        train: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Identify targets and score them against the corpus annotation.
    Identify(IdentifyArgs),
    /// Train a disambiguation model.
    Train(TrainArgs),
    /// Predict construals for gold or identified targets.
    Predict(PredictArgs),
    /// Score a predictions file against a gold corpus.
    Evaluate(EvaluateArgs),
    /// Interannotator agreement over parallel annotations.
    Agree(AgreeArgs),
    /// Coarsen labels, or every construal in a corpus, to a depth.
    Coarsen(CoarsenArgs),
    /// Build lexicons, train, and evaluate on the test split.
    Pipeline(PipelineArgs),
}

#[derive(Args, Clone)]
struct Common {
    /// Optional TOML run configuration; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Directory for machine-readable outputs.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct IdArgs {
    /// Identification mode.
    #[arg(long)]
    mode: Option<IdMode>,
    /// Do not treat `to` in too/enough complements as a target.
    #[arg(long)]
    no_too_enough_target: bool,
}

#[derive(Args, Clone)]
struct ResourceArgs {
    /// WordNet 3.0 dict directory.
    #[arg(long, env = "SNACS_WORDNET")]
    wordnet: Option<PathBuf>,
    /// Roget thesaurus TSV.
    #[arg(long, env = "SNACS_ROGET")]
    roget: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct TrainFlags {
    /// Classifier: `mfs` or `svm`.
    #[arg(long)]
    classifier: Option<ClassifierKind>,
    /// Fixed cost parameter; otherwise tuned on the dev split.
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    epochs: Option<usize>,
    /// Seed for all randomness (default 0).
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    resources: ResourceArgs,
}

#[derive(Args)]
struct IdentifyArgs {
    corpus: PathBuf,
    /// Lexicons file; alternatively build them from `--train`.
    #[arg(long, conflicts_with = "train")]
    lexicons: Option<PathBuf>,
    #[arg(long)]
    train: Option<PathBuf>,
    #[command(flatten)]
    id: IdArgs,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct TrainArgs {
    #[arg(long)]
    train: PathBuf,
    #[arg(long)]
    dev: Option<PathBuf>,
    #[arg(long)]
    model: PathBuf,
    #[command(flatten)]
    flags: TrainFlags,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct PredictArgs {
    #[arg(long)]
    model: PathBuf,
    corpus: PathBuf,
    /// Identify targets with the model's lexicons instead of using gold targets.
    #[arg(long)]
    auto_id: bool,
    #[command(flatten)]
    id: IdArgs,
    #[command(flatten)]
    resources: ResourceArgs,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct EvaluateArgs {
    #[arg(long)]
    gold: PathBuf,
    #[arg(long)]
    pred: PathBuf,
    /// Score at one depth instead of all.
    #[arg(long)]
    depth: Option<u8>,
    /// The predictions cover exactly the gold targets; report accuracies.
    #[arg(long)]
    gold_id: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct AgreeArgs {
    /// One corpus file per annotator.
    #[arg(required = true, num_args = 2..)]
    corpora: Vec<PathBuf>,
    /// Comma-separated annotator names (default: file stems).
    #[arg(long, value_delimiter = ',')]
    names: Vec<String>,
    #[arg(long)]
    depth: Option<u8>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct CoarsenArgs {
    #[arg(long)]
    depth: u8,
    /// Labels to coarsen.
    labels: Vec<String>,
    /// Coarsen every construal in this corpus instead.
    #[arg(long, requires = "output")]
    corpus: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct PipelineArgs {
    #[arg(long)]
    train: PathBuf,
    #[arg(long)]
    dev: PathBuf,
    #[arg(long)]
    test: PathBuf,
    /// Report one depth instead of all.
    #[arg(long)]
    depth: Option<u8>,
    #[command(flatten)]
    flags: TrainFlags,
    #[command(flatten)]
    id: IdArgs,
    #[command(flatten)]
    common: Common,
}

/// Contents of a `--config` file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunConfig {
    classifier: Option<String>,
    mode: Option<String>,
    too_enough_target: Option<bool>,
    depth: Option<u8>,
    #[serde(default)]
    train: Option<toml::Table>,
}

enum Failure {
    /// Validation or metric failure.
    Check(String),
    /// Usage or I/O problem.
    Usage(String),
}

type Result<T> = std::result::Result<T, Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_corpus(path: &Path) -> Result<Vec<Sentence>> {
    parse_corpus(&read_text(path)?).map_err(|e| Failure::Check(format!("{}: {e}", path.display())))
}

/// Reads and validates; violations abort with exit status 1.
fn read_valid_corpus(path: &Path, h: &Hierarchy) -> Result<Vec<Sentence>> {
    let s = read_corpus(path)?;
    let v = validate_corpus(&s, h, &RoleOnly::default());
    if let Some(first) = v.first() {
        return Err(Failure::Check(format!("{}: {} violations, first: {first}", path.display(), v.len())));
    }
    Ok(s)
}

fn out_dir(common: &Common) -> Result<Option<&Path>> {
    match &common.out {
        Some(d) => {
            fs::create_dir_all(d).map_err(|e| Failure::Usage(format!("{}: {e}", d.display())))?;
            Ok(Some(d))
        }
        None => Ok(None),
    }
}

fn load_run_config(common: &Common) -> Result<RunConfig> {
    match &common.config {
        Some(p) => toml::from_str(&read_text(p)?).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => Ok(RunConfig::default()),
    }
}

fn check_depth(d: u8) -> Result<u8> {
    if (1..=MAX_DEPTH).contains(&d) {
        Ok(d)
    } else {
        Err(Failure::Usage(format!("depth must be in 1..={MAX_DEPTH}, got {d}")))
    }
}

fn depths(flag: Option<u8>, file: Option<u8>) -> Result<Vec<u8>> {
    match flag.or(file) {
        Some(d) => Ok(vec![check_depth(d)?]),
        None => Ok(all_depths()),
    }
}

fn id_options(args: &IdArgs, file: &RunConfig) -> Result<IdOptions> {
    let mut o = IdOptions::default();
    if let Some(m) = &file.mode {
        o.mode = m.parse().map_err(usage)?;
    }
    if let Some(t) = file.too_enough_target {
        o.too_enough_target = t;
    }
    if let Some(m) = args.mode {
        o.mode = m;
    }
    if args.no_too_enough_target {
        o.too_enough_target = false;
    }
    Ok(o)
}

fn train_config(flags: &TrainFlags, file: &RunConfig) -> Result<(ClassifierKind, TrainConfig)> {
    let mut cfg = match &file.train {
        Some(t) => TrainConfig::from_toml(&toml::to_string(t).map_err(usage)?).map_err(usage)?,
        None => TrainConfig::default(),
    };
    if let Some(c) = flags.c {
        cfg.c = Some(c);
    }
    if let Some(e) = flags.epochs {
        cfg.epochs = e;
    }
    if let Some(s) = flags.seed {
        cfg.seed = s;
    }
    if flags.resources.wordnet.is_some() {
        cfg.wordnet = flags.resources.wordnet.clone();
    }
    if flags.resources.roget.is_some() {
        cfg.roget = flags.resources.roget.clone();
    }
    cfg.check().map_err(usage)?;
    let kind = match (flags.classifier, &file.classifier) {
        (Some(k), _) => k,
        (None, Some(k)) => k.parse().map_err(usage)?,
        (None, None) => ClassifierKind::FeatureRich,
    };
    Ok((kind, cfg))
}

fn load_resources(wordnet: Option<&Path>, roget: Option<&Path>) -> Result<LexicalResourceBundle> {
    LexicalResourceBundle::load(wordnet, roget).map_err(usage)
}

/// Resources for applying `model`: what it was trained with must be present now.
fn resources_for(model: &Model, args: &ResourceArgs) -> Result<LexicalResourceBundle> {
    if model.kind() == ClassifierKind::MostFrequent {
        return Ok(LexicalResourceBundle::empty());
    }
    let wordnet = args.wordnet.clone().or_else(|| model.config.wordnet.clone());
    let roget = args.roget.clone().or_else(|| model.config.roget.clone());
    let res = load_resources(wordnet.as_deref().filter(|_| model.resources.wordnet), roget.as_deref().filter(|_| model.resources.roget))?;
    if res.flags() != model.resources {
        return Err(Failure::Usage(format!(
            "model was trained with resources {:?} but {:?} are available; pass --wordnet/--roget",
            model.resources,
            res.flags()
        )));
    }
    Ok(res)
}

fn write_eval_outputs(dir: &Path, report: &EvalReport, extra: &[(&str, String)]) -> Result<()> {
    write_text(&dir.join("report.txt"), &report.to_table())?;
    write_text(&dir.join("report.kv"), &report.to_key_values())?;
    write_text(&dir.join("report.json"), &serde_json::to_string_pretty(report).map_err(usage)?)?;
    for (name, text) in extra {
        write_text(&dir.join(name), text)?;
    }
    Ok(())
}

fn confusion_files(pred: &[Vec<Construal>], gold: &[Sentence], h: &Hierarchy, depth: u8) -> Result<Vec<(&'static str, String)>> {
    let mut out = Vec::new();
    for (name, dim) in [("confusion_role.tsv", Dimension::Role), ("confusion_function.tsv", Dimension::Function)] {
        out.push((name, confusion_matrix(pred, gold, h, dim, depth).map_err(usage)?.to_tsv()));
    }
    Ok(out)
}

fn cmd_validate(corpus: &Path, role_only: &[String]) -> Result<()> {
    let s = read_corpus(corpus)?;
    let v = validate_corpus(&s, &Hierarchy::bundled(), &RoleOnly::new(role_only.iter().cloned()));
    for x in &v {
        println!("{x}");
    }
    if v.is_empty() {
        println!("{}: {} sentences, valid", corpus.display(), s.len());
        Ok(())
    } else {
        Err(Failure::Check(format!("{} violations", v.len())))
    }
}

fn cmd_stats(paths: &[PathBuf]) -> Result<()> {
    let h = Hierarchy::bundled();
    for p in paths {
        let s = read_valid_corpus(p, &h)?;
        if paths.len() > 1 {
            println!("== {}", p.display());
        }
        print!("{}", corpus_stats(&s));
    }
    Ok(())
}

fn cmd_import(json: &Path, ids: Option<&Path>, output: &Path) -> Result<()> {
    let keep: Option<HashSet<String>> = ids.map(|p| read_text(p).map(|t| parse_id_list(&t))).transpose()?;
    let s = import_streusle_json(&read_text(json)?, keep.as_ref()).map_err(usage)?;
    write_text(output, &serialize_corpus(&s))?;
    println!("wrote {} sentences to {}", s.len(), output.display());
    Ok(())
}

fn cmd_lexicons(train: &Path, output: &Path) -> Result<()> {
    let s = read_valid_corpus(train, &Hierarchy::bundled())?;
    let lex = build_lexicons(&s);
    write_text(output, &lex.to_text())?;
    println!("{} whitelisted and {} blacklisted multiword entries", lex.whitelist.len(), lex.blacklist.len());
    Ok(())
}

fn cmd_identify(a: &IdentifyArgs) -> Result<()> {
    let h = Hierarchy::bundled();
    let file = load_run_config(&a.common)?;
    let lex = match (&a.lexicons, &a.train) {
        (Some(p), _) => TargetLexicons::from_text(&read_text(p)?).map_err(usage)?,
        (None, Some(t)) => build_lexicons(&read_valid_corpus(t, &h)?),
        (None, None) => return Err(Failure::Usage("give --lexicons or --train".into())),
    };
    let corpus = read_valid_corpus(&a.corpus, &h)?;
    let targets = identify_corpus(&corpus, &lex, id_options(&a.id, &file)?);
    let sc = score_targets(&targets, &corpus).map_err(usage)?;
    println!("P {:.1}  R {:.1}  F {:.1}", sc.prf.precision, sc.prf.recall, sc.prf.f1);
    println!(
        "tp {}  fp {}  fn {}  partial (pred/gold) {}/{}  ignored {}",
        sc.prf.tp, sc.prf.fp, sc.prf.fn_, sc.partial_predicted, sc.partial_gold, sc.ignored
    );
    if let Some(dir) = out_dir(&a.common)? {
        let mut tsv = String::from("sent_id\ttokens\n");
        for t in &targets {
            for p in &t.targets {
                let idx: Vec<String> = p.token_indices.iter().map(usize::to_string).collect();
                tsv.push_str(&format!("{}\t{}\n", t.sent_id, idx.join(",")));
            }
        }
        write_text(&dir.join("targets.tsv"), &tsv)?;
        write_text(&dir.join("scores.json"), &serde_json::to_string_pretty(&sc.prf).map_err(usage)?)?;
    }
    Ok(())
}

fn cmd_train(a: &TrainArgs) -> Result<()> {
    let h = Hierarchy::bundled();
    let file = load_run_config(&a.common)?;
    let (kind, cfg) = train_config(&a.flags, &file)?;
    let train = read_valid_corpus(&a.train, &h)?;
    let dev = a.dev.as_deref().map(|p| read_valid_corpus(p, &h)).transpose()?;
    let res = match kind {
        ClassifierKind::MostFrequent => LexicalResourceBundle::empty(),
        ClassifierKind::FeatureRich => load_resources(cfg.wordnet.as_deref(), cfg.roget.as_deref())?,
    };
    let t = train_model(kind, &train, dev.as_deref(), &h, &res, &cfg).map_err(usage)?;
    if let Some(tuning) = &t.tuning {
        for (c, r, f) in &tuning.grid {
            println!("C={c}\tdev role {r:.1}\tdev func {f:.1}");
        }
        println!("chosen C: role {}, function {}", tuning.role_c, tuning.function_c);
    }
    save_model(&t.model, &a.model).map_err(usage)?;
    println!("saved {} model to {}", kind, a.model.display());
    if let (Some(dir), Some((r, f))) = (out_dir(&a.common)?, &t.traces) {
        let snacs::disambig::Classifier::Linear(m) = &t.model.classifier else { unreachable!("traces come from the linear model") };
        let mut tsv = String::from("dimension\tlabel\tepoch\tobjective\n");
        for (dim, trace, clf) in [("role", r, &m.role), ("function", f, &m.function)] {
            for (label, history) in clf.labels.iter().zip(&trace.objectives) {
                for (i, v) in history.iter().enumerate() {
                    tsv.push_str(&format!("{dim}\t{label}\t{}\t{v}\n", i + 1));
                }
            }
        }
        write_text(&dir.join("objective.tsv"), &tsv)?;
    }
    Ok(())
}

fn cmd_predict(a: &PredictArgs) -> Result<()> {
    let h = Hierarchy::bundled();
    let model = load_model(&a.model).map_err(usage)?;
    let res = resources_for(&model, &a.resources)?;
    let corpus = read_valid_corpus(&a.corpus, &h)?;
    let targets = if a.auto_id {
        let lex = model.lexicons.as_ref().ok_or_else(|| Failure::Usage("model has no target lexicons".into()))?;
        identify_corpus(&corpus, lex, id_options(&a.id, &RunConfig::default())?)
    } else {
        gold_targets(&corpus)
    };
    let labels = predict_labels(&model, &corpus, &targets, &res);
    write_text(&a.output, &write_predictions(&corpus, &targets, &labels))?;
    println!("wrote {} predictions to {}", labels.iter().map(Vec::len).sum::<usize>(), a.output.display());
    Ok(())
}

fn cmd_evaluate(a: &EvaluateArgs) -> Result<()> {
    let h = Hierarchy::bundled();
    let file = load_run_config(&a.common)?;
    let gold = read_valid_corpus(&a.gold, &h)?;
    let (targets, labels) = read_predictions(&read_text(&a.pred)?, &gold).map_err(usage)?;
    let ds = depths(a.depth, file.depth)?;
    let mut report = EvalReport { system: a.pred.display().to_string(), ..EvalReport::default() };
    let mut extra = Vec::new();
    if a.gold_id {
        let ordered = align_to_gold_targets(&targets, &labels, &gold).map_err(|e| Failure::Check(e.to_string()))?;
        for &d in &ds {
            report.gold_id.push(evaluate_gold_id(&ordered, &gold, &h, d).map_err(usage)?);
        }
        extra = confusion_files(&ordered, &gold, &h, ds[0])?;
    } else {
        for &d in &ds {
            report.auto_id.push(evaluate_auto_id(&targets, &labels, &gold, &h, d).map_err(usage)?);
        }
    }
    print!("{}", report.to_table());
    if let Some(dir) = out_dir(&a.common)? {
        write_eval_outputs(dir, &report, &extra)?;
    }
    Ok(())
}

fn cmd_agree(a: &AgreeArgs) -> Result<()> {
    let h = Hierarchy::bundled();
    let file = load_run_config(&a.common)?;
    if !a.names.is_empty() && a.names.len() != a.corpora.len() {
        return Err(Failure::Usage(format!("{} names for {} files", a.names.len(), a.corpora.len())));
    }
    let mut corpora = Vec::new();
    for (i, p) in a.corpora.iter().enumerate() {
        let name = a.names.get(i).cloned().unwrap_or_else(|| {
            p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| format!("A{}", i + 1))
        });
        corpora.push((name, read_valid_corpus(p, &h)?));
    }
    let (table, missing) = AgreementTable::from_corpora(&corpora, &h).map_err(usage)?;
    for m in &missing {
        println!("misaligned: {} tokens {:?} missing from {}", m.sent_id, m.token_indices, m.missing_from.join(","));
    }
    let report = AgreementReport::compute(&table, &h).map_err(|e| Failure::Check(e.to_string()))?;
    print!("{}", report.to_table());
    if let Some(dir) = out_dir(&a.common)? {
        let sem = filter_semantic(&table);
        write_text(&dir.join("agreement.json"), &serde_json::to_string_pretty(&report).map_err(usage)?)?;
        for d in depths(a.depth, file.depth)? {
            for dim in Dimension::BOTH {
                let m = pairwise_agreement(&sem, &h, dim, d).map_err(usage)?;
                write_text(&dir.join(format!("pairwise_{dim}_depth{d}.tsv")), &m.to_tsv())?;
                let c = pair_confusions(&sem, &h, dim, d).map_err(usage)?;
                write_text(&dir.join(format!("confusions_{dim}_depth{d}.tsv")), &c.to_tsv())?;
            }
        }
    }
    Ok(())
}

fn cmd_coarsen(a: &CoarsenArgs) -> Result<()> {
    let h = Hierarchy::bundled();
    let d = check_depth(a.depth)?;
    if let (Some(corpus), Some(output)) = (&a.corpus, &a.output) {
        let mut s = read_valid_corpus(corpus, &h)?;
        for sent in &mut s {
            for e in &mut sent.expressions {
                if let Some(snacs::corpus::Annotation::Construal(c)) = &mut e.annotation {
                    *c = c.coarsened(&h, d);
                }
            }
        }
        return write_text(output, &serialize_corpus(&s));
    }
    for l in &a.labels {
        println!("{l}\t{}", h.coarsen(l, d).map_err(|e| Failure::Check(e.to_string()))?);
    }
    Ok(())
}

fn cmd_pipeline(a: &PipelineArgs) -> Result<()> {
    let h = Hierarchy::bundled();
    let file = load_run_config(&a.common)?;
    let (kind, cfg) = train_config(&a.flags, &file)?;
    let id = id_options(&a.id, &file)?;
    let ds = depths(a.depth, file.depth)?;
    let stage = |name: &str, e: String| Failure::Usage(format!("{name}: {e}"));
    let train = read_valid_corpus(&a.train, &h)?;
    let dev = read_valid_corpus(&a.dev, &h)?;
    let res = match kind {
        ClassifierKind::MostFrequent => LexicalResourceBundle::empty(),
        ClassifierKind::FeatureRich => load_resources(cfg.wordnet.as_deref(), cfg.roget.as_deref())?,
    };
    let trained = train_model(kind, &train, Some(&dev), &h, &res, &cfg).map_err(|e| stage("train", e.to_string()))?;
    // the test split is read only once training is finished
    let test = read_valid_corpus(&a.test, &h)?;
    let report = evaluate_model(&trained.model, &test, &h, &res, id, &ds).map_err(|e| stage("evaluate", e.to_string()))?;
    print!("{}", report.to_table());
    if let Some(dir) = out_dir(&a.common)? {
        let preds = predict_labels(&trained.model, &test, &gold_targets(&test), &res);
        let mut extra = confusion_files(&preds, &test, &h, ds[0])?;
        extra.push(("predictions.tsv", write_predictions(&test, &gold_targets(&test), &preds)));
        write_eval_outputs(dir, &report, &extra)?;
        save_model(&trained.model, &dir.join("model.bin")).map_err(usage)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Validate { corpus, role_only } => cmd_validate(&corpus, &role_only),
        Command::Stats { corpus } => cmd_stats(&corpus),
        Command::Import { json, ids, output } => cmd_import(&json, ids.as_deref(), &output),
        Command::Lexicons { train, output } => cmd_lexicons(&train, &output),
        Command::Identify(a) => cmd_identify(&a),
        Command::Train(a) => cmd_train(&a),
        Command::Predict(a) => cmd_predict(&a),
        Command::Evaluate(a) => cmd_evaluate(&a),
        Command::Agree(a) => cmd_agree(&a),
        Command::Coarsen(a) => cmd_coarsen(&a),
        Command::Pipeline(a) => cmd_pipeline(&a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
