//! End-to-end training and evaluation shared by the command line, tests and bindings.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::corpus::Sentence;
use crate::disambig::{
    gold_targets, train_linear, train_mfs, Classifier, ClassifierKind, DisambigError, Model, TrainConfig, TrainingTrace,
    TuningReport,
};
use crate::eval::{evaluate_auto_id, evaluate_gold_id, EvalError, EvalReport};
use crate::hierarchy::{Construal, Hierarchy, MAX_DEPTH};
use crate::lexres::LexicalResourceBundle;
use crate::targetid::{build_lexicons, identify_corpus, IdOptions, SentenceTargets, TargetPrediction};

/// A trained model plus what training reported.
#[derive(Debug, Clone)]
pub struct TrainedModel {
    pub model: Model,
    pub tuning: Option<TuningReport>,
    pub traces: Option<(TrainingTrace, TrainingTrace)>,
}

/// Trains a classifier of `kind` and bundles target lexicons built from `train`.
/// `dev` is only consulted when the linear model tunes C.
pub fn train_model(
    kind: ClassifierKind,
    train: &[Sentence],
    dev: Option<&[Sentence]>,
    h: &Hierarchy,
    res: &LexicalResourceBundle,
    config: &TrainConfig,
) -> Result<TrainedModel, DisambigError> {
    let lexicons = Some(build_lexicons(train));
    match kind {
        ClassifierKind::MostFrequent => Ok(TrainedModel {
            model: Model {
                classifier: Classifier::MostFrequent(train_mfs(train)?),
                config: config.clone(),
                resources: Default::default(),
                lexicons,
            },
            tuning: None,
            traces: None,
        }),
        ClassifierKind::FeatureRich => {
            let t = train_linear(train, dev, h, res, config)?;
            Ok(TrainedModel {
                model: Model { classifier: Classifier::Linear(t.model), config: config.clone(), resources: res.flags(), lexicons },
                tuning: t.tuning,
                traces: Some((t.role_trace, t.function_trace)),
            })
        }
    }
}

/// Construals predicted for `targets`.
pub fn predict_labels(model: &Model, sentences: &[Sentence], targets: &[SentenceTargets], res: &LexicalResourceBundle) -> Vec<Vec<Construal>> {
    model
        .predict_corpus(sentences, targets, res)
        .into_iter()
        .map(|ps| ps.into_iter().map(|p| p.construal).collect())
        .collect()
}

/// Scores `model` on `test` with gold targets and, when the model carries
/// lexicons, with identified targets. `depths` are reported in the order given.
pub fn evaluate_model(
    model: &Model,
    test: &[Sentence],
    h: &Hierarchy,
    res: &LexicalResourceBundle,
    id: IdOptions,
    depths: &[u8],
) -> Result<EvalReport, EvalError> {
    let gold_t = gold_targets(test);
    let gold_p = predict_labels(model, test, &gold_t, res);
    let mut report = EvalReport { system: model.kind().to_string(), ..EvalReport::default() };
    for &d in depths {
        report.gold_id.push(evaluate_gold_id(&gold_p, test, h, d)?);
    }
    if let Some(lex) = &model.lexicons {
        let auto_t = identify_corpus(test, lex, id);
        let auto_p = predict_labels(model, test, &auto_t, res);
        for &d in depths {
            report.auto_id.push(evaluate_auto_id(&auto_t, &auto_p, test, h, d)?);
        }
    }
    Ok(report)
}

/// All depths, exact first.
pub fn all_depths() -> Vec<u8> {
    (1..=MAX_DEPTH).rev().collect()
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PredictionsError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("predictions mention sentence `{0}` which is not in the gold corpus")]
    UnknownSentence(String),
    #[error("sentence {sent_id}: predicted targets differ from the gold targets")]
    NotGoldTargets { sent_id: String },
}

/// Tab-separated predictions: sentence id, comma-separated token indices,
/// surface text, role, function. One line per target, with a header.
pub fn write_predictions(sentences: &[Sentence], targets: &[SentenceTargets], labels: &[Vec<Construal>]) -> String {
    let mut out = String::from("sent_id\ttokens\ttext\trole\tfunction\n");
    for ((s, t), l) in sentences.iter().zip(targets).zip(labels) {
        for (p, c) in t.targets.iter().zip(l) {
            let idx: Vec<String> = p.token_indices.iter().map(usize::to_string).collect();
            let text: Vec<&str> = p.token_indices.iter().filter_map(|&i| s.token(i)).map(|t| t.form.as_str()).collect();
            writeln!(out, "{}\t{}\t{}\t{}\t{}", s.id, idx.join(","), text.join(" "), c.role, c.function).unwrap();
        }
    }
    out
}

/// Reads [`write_predictions`] output, arranged sentence by sentence to match `gold`.
pub fn read_predictions(text: &str, gold: &[Sentence]) -> Result<(Vec<SentenceTargets>, Vec<Vec<Construal>>), PredictionsError> {
    let pos: HashMap<&str, usize> = gold.iter().enumerate().map(|(i, s)| (s.id.as_str(), i)).collect();
    let mut targets: Vec<SentenceTargets> =
        gold.iter().map(|s| SentenceTargets { sent_id: s.id.clone(), targets: Vec::new() }).collect();
    let mut labels = vec![Vec::new(); gold.len()];
    for (n, line) in text.lines().enumerate() {
        if n == 0 && line.starts_with("sent_id\t") || line.trim().is_empty() {
            continue;
        }
        let bad = |message: &str| PredictionsError::Malformed { line: n + 1, message: message.to_string() };
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 5 {
            return Err(bad("expected 5 tab-separated columns"));
        }
        let i = *pos.get(cols[0]).ok_or_else(|| PredictionsError::UnknownSentence(cols[0].to_string()))?;
        let idx = cols[1]
            .split(',')
            .map(|x| x.parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| bad("token indices must be comma-separated integers"))?;
        targets[i].targets.push(TargetPrediction::new(idx));
        labels[i].push(Construal::new(cols[3], cols[4]));
    }
    Ok((targets, labels))
}

/// Reorders predictions to follow the gold targets, failing unless the
/// predicted target sets are exactly the gold ones.
pub fn align_to_gold_targets(
    targets: &[SentenceTargets],
    labels: &[Vec<Construal>],
    gold: &[Sentence],
) -> Result<Vec<Vec<Construal>>, PredictionsError> {
    let gold_t = gold_targets(gold);
    let mut out = Vec::with_capacity(gold.len());
    for ((t, l), g) in targets.iter().zip(labels).zip(&gold_t) {
        let by_span: HashMap<&[usize], &Construal> = t.targets.iter().map(|p| p.token_indices.as_slice()).zip(l).collect();
        if by_span.len() != t.targets.len() || t.targets.len() != g.targets.len() {
            return Err(PredictionsError::NotGoldTargets { sent_id: g.sent_id.clone() });
        }
        let row = g
            .targets
            .iter()
            .map(|p| by_span.get(p.token_indices.as_slice()).map(|c| (*c).clone()))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| PredictionsError::NotGoldTargets { sent_id: g.sent_id.clone() })?;
        out.push(row);
    }
    Ok(out)
}
