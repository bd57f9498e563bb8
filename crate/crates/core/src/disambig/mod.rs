//! Construal prediction: a most-frequent baseline and a feature-rich linear
//! classifier, plus model files.

mod features;
mod mfs;
mod model;
mod neighbors;
mod svm;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use features::{affix_indicators, extract_features, CONJUNCTION, SLOTS};
pub use mfs::{train_mfs, MostFrequentTable};
pub use model::{load_model, read_model, save_model, write_model, ModelFileError, FORMAT_VERSION, MAGIC};
pub use neighbors::{locate_neighbors, NeighborContext};
pub use svm::{train_binary, LinearClassifier, SvmParams, TrainingTrace, Vocabulary};

use crate::corpus::Sentence;
use crate::hierarchy::{Construal, Dimension, Hierarchy};
use crate::lexres::{LexicalResourceBundle, ResourceFlags};
use crate::targetid::{SentenceTargets, TargetLexicons};

#[derive(Debug, Error)]
pub enum DisambigError {
    #[error("training data has no construal-bearing targets")]
    EmptyTraining,
    #[error("{dimension} label `{label}` is not in the hierarchy")]
    UnknownLabel { dimension: Dimension, label: String },
    #[error("invalid training configuration: {0}")]
    Config(String),
}

/// Label tie-breaking policy. Only lexicographic order is supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TieBreak {
    #[default]
    Lexicographic,
}

/// Default grid searched for the cost parameter when none is fixed.
pub const C_GRID: [f64; 4] = [0.01, 0.1, 1.0, 10.0];

fn default_epochs() -> usize {
    SvmParams::default().epochs
}

fn default_tolerance() -> f64 {
    SvmParams::default().tolerance
}

fn default_grid() -> Vec<f64> {
    C_GRID.to_vec()
}

/// Training configuration, read from TOML.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrainConfig {
    /// Fixed cost parameter. When absent, each classifier picks its own from
    /// `c_grid` by development-set accuracy.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default = "default_grid")]
    pub c_grid: Vec<f64>,
    #[serde(default = "default_epochs")]
    pub epochs: usize,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wordnet: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roget: Option<PathBuf>,
    #[serde(default)]
    pub tie_break: TieBreak,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            c: None,
            c_grid: default_grid(),
            epochs: default_epochs(),
            tolerance: default_tolerance(),
            seed: 0,
            wordnet: None,
            roget: None,
            tie_break: TieBreak::Lexicographic,
        }
    }
}

impl TrainConfig {
    pub fn from_toml(text: &str) -> Result<TrainConfig, DisambigError> {
        let cfg: TrainConfig = toml::from_str(text).map_err(|e| DisambigError::Config(e.to_string()))?;
        cfg.check()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn check(&self) -> Result<(), DisambigError> {
        let bad_c = |c: f64| !(c.is_finite() && c > 0.0);
        if self.c.is_some_and(bad_c) || self.c_grid.iter().any(|&c| bad_c(c)) {
            return Err(DisambigError::Config("C values must be positive and finite".into()));
        }
        if self.c.is_none() && self.c_grid.is_empty() {
            return Err(DisambigError::Config("no C given and the grid is empty".into()));
        }
        if self.epochs == 0 {
            return Err(DisambigError::Config("epochs must be at least 1".into()));
        }
        Ok(())
    }

    fn params(&self, c: f64) -> SvmParams {
        SvmParams { c, epochs: self.epochs, tolerance: self.tolerance, seed: self.seed }
    }
}

/// Which classifier to train.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassifierKind {
    MostFrequent,
    FeatureRich,
}

impl FromStr for ClassifierKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mfs" | "most-frequent" => Ok(ClassifierKind::MostFrequent),
            "svm" | "feature-rich" => Ok(ClassifierKind::FeatureRich),
            _ => Err(format!("unknown classifier `{s}` (expected mfs or svm)")),
        }
    }
}

impl fmt::Display for ClassifierKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassifierKind::MostFrequent => "mfs",
            ClassifierKind::FeatureRich => "svm",
        })
    }
}

/// Separate role and function classifiers over a shared vocabulary.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearModelPair {
    pub vocab: Vocabulary,
    pub role: LinearClassifier,
    pub function: LinearClassifier,
    pub role_c: f64,
    pub function_c: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Classifier {
    MostFrequent(MostFrequentTable),
    Linear(LinearModelPair),
}

/// A trained classifier together with what is needed to apply it.
#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    pub classifier: Classifier,
    pub config: TrainConfig,
    /// Resources that were loaded at training time.
    pub resources: ResourceFlags,
    /// Target-identification lexicons built from the same training data.
    pub lexicons: Option<TargetLexicons>,
}

impl Model {
    pub fn kind(&self) -> ClassifierKind {
        match self.classifier {
            Classifier::MostFrequent(_) => ClassifierKind::MostFrequent,
            Classifier::Linear(_) => ClassifierKind::FeatureRich,
        }
    }

    /// Predicts a construal for the target spanning `indices`.
    pub fn predict(&self, s: &Sentence, indices: &[usize], res: &LexicalResourceBundle) -> Prediction {
        match &self.classifier {
            Classifier::MostFrequent(t) => Prediction {
                construal: t.predict_lemma(&s.lemma_of(indices)).clone(),
                role_scores: Vec::new(),
                function_scores: Vec::new(),
            },
            Classifier::Linear(m) => {
                let ctx = locate_neighbors(s, indices);
                let x = m.vocab.encode(&extract_features(s, indices, &ctx, res));
                let (r, rs) = m.role.predict(&x);
                let (f, fs) = m.function.predict(&x);
                let zip = |labels: &[String], scores: Vec<f64>| labels.iter().cloned().zip(scores).collect();
                Prediction {
                    construal: Construal::new(m.role.labels[r].clone(), m.function.labels[f].clone()),
                    role_scores: zip(&m.role.labels, rs),
                    function_scores: zip(&m.function.labels, fs),
                }
            }
        }
    }

    /// Predictions for every target of every sentence, in order.
    pub fn predict_corpus(
        &self,
        sentences: &[Sentence],
        targets: &[SentenceTargets],
        res: &LexicalResourceBundle,
    ) -> Vec<Vec<Prediction>> {
        sentences
            .par_iter()
            .zip(targets.par_iter())
            .map(|(s, t)| t.targets.iter().map(|p| self.predict(s, &p.token_indices, res)).collect())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub construal: Construal,
    /// Per-label scores from the role classifier; empty for the baseline.
    pub role_scores: Vec<(String, f64)>,
    pub function_scores: Vec<(String, f64)>,
}

/// Gold targets of `sentences` as identification output.
pub fn gold_targets(sentences: &[Sentence]) -> Vec<SentenceTargets> {
    sentences
        .iter()
        .map(|s| SentenceTargets {
            sent_id: s.id.clone(),
            targets: s.targets().map(|(e, _)| crate::targetid::TargetPrediction::new(e.token_indices.clone())).collect(),
        })
        .collect()
}

struct Examples {
    features: Vec<Vec<String>>,
    labels: Vec<Construal>,
}

fn examples(sentences: &[Sentence], res: &LexicalResourceBundle) -> Examples {
    let per: Vec<Vec<(Vec<String>, Construal)>> = sentences
        .par_iter()
        .map(|s| {
            s.targets()
                .map(|(e, c)| {
                    let ctx = locate_neighbors(s, &e.token_indices);
                    (extract_features(s, &e.token_indices, &ctx, res), c.clone())
                })
                .collect()
        })
        .collect();
    let (features, labels) = per.into_iter().flatten().unzip();
    Examples { features, labels }
}

fn check_labels(ex: &Examples, h: &Hierarchy) -> Result<(), DisambigError> {
    for c in &ex.labels {
        for dimension in Dimension::BOTH {
            let label = c.slot(dimension);
            if !h.contains(label) {
                return Err(DisambigError::UnknownLabel { dimension, label: label.to_string() });
            }
        }
    }
    Ok(())
}

/// Development-set accuracy for each value of C tried.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TuningReport {
    /// `(c, role accuracy, function accuracy)`, percentages.
    pub grid: Vec<(f64, f64, f64)>,
    pub role_c: f64,
    pub function_c: f64,
}

/// Result of training the feature-rich model.
#[derive(Debug, Clone)]
pub struct LinearTraining {
    pub model: LinearModelPair,
    pub role_trace: TrainingTrace,
    pub function_trace: TrainingTrace,
    pub tuning: Option<TuningReport>,
}

fn fit(train: &Examples, vocab: &Vocabulary, xs: &[Vec<u32>], params: &SvmParams) -> [(LinearClassifier, TrainingTrace); 2] {
    let fit_dim = |dim: Dimension| {
        let ys: Vec<&str> = train.labels.iter().map(|c| c.slot(dim)).collect();
        LinearClassifier::train(xs, &ys, vocab.len(), params)
    };
    [fit_dim(Dimension::Role), fit_dim(Dimension::Function)]
}

fn accuracy(clf: &LinearClassifier, xs: &[Vec<u32>], gold: &[Construal], dim: Dimension) -> f64 {
    if gold.is_empty() {
        return 0.0;
    }
    let correct = xs.iter().zip(gold).filter(|(x, g)| clf.labels[clf.predict(x).0] == g.slot(dim)).count();
    100.0 * correct as f64 / gold.len() as f64
}

/// Trains role and function classifiers on the gold targets of `train`.
///
/// With `config.c` unset, every C in `config.c_grid` is tried and each
/// classifier keeps the value with the best accuracy on `dev` (the smaller C
/// on ties); `dev` is then required.
pub fn train_linear(
    train: &[Sentence],
    dev: Option<&[Sentence]>,
    h: &Hierarchy,
    res: &LexicalResourceBundle,
    config: &TrainConfig,
) -> Result<LinearTraining, DisambigError> {
    config.check()?;
    let ex = examples(train, res);
    if ex.labels.is_empty() {
        return Err(DisambigError::EmptyTraining);
    }
    check_labels(&ex, h)?;
    let mut vocab = Vocabulary::default();
    let xs: Vec<Vec<u32>> = ex
        .features
        .iter()
        .map(|f| {
            let mut v: Vec<u32> = f.iter().map(|n| vocab.intern(n)).collect();
            v.sort_unstable();
            v
        })
        .collect();

    if let Some(c) = config.c {
        let [(role, role_trace), (function, function_trace)] = fit(&ex, &vocab, &xs, &config.params(c));
        return Ok(LinearTraining {
            model: LinearModelPair { vocab, role, function, role_c: c, function_c: c },
            role_trace,
            function_trace,
            tuning: None,
        });
    }

    let dev = dev.ok_or_else(|| DisambigError::Config("tuning C needs a development set".into()))?;
    let dev_ex = examples(dev, res);
    let dev_xs: Vec<Vec<u32>> = dev_ex.features.iter().map(|f| vocab.encode(f)).collect();
    let mut report = TuningReport::default();
    let mut best: [Option<(f64, f64, LinearClassifier, TrainingTrace)>; 2] = [None, None];
    for &c in &config.c_grid {
        let fitted = fit(&ex, &vocab, &xs, &config.params(c));
        let mut accs = [0.0; 2];
        for (slot, ((clf, trace), dim)) in fitted.into_iter().zip(Dimension::BOTH).enumerate() {
            let acc = accuracy(&clf, &dev_xs, &dev_ex.labels, dim);
            accs[slot] = acc;
            if best[slot].as_ref().is_none_or(|b| acc > b.1) {
                best[slot] = Some((c, acc, clf, trace));
            }
        }
        report.grid.push((c, accs[0], accs[1]));
    }
    let [Some((role_c, _, role, role_trace)), Some((function_c, _, function, function_trace))] = best else {
        unreachable!("grid is non-empty");
    };
    report.role_c = role_c;
    report.function_c = function_c;
    Ok(LinearTraining {
        model: LinearModelPair { vocab, role, function, role_c, function_c },
        role_trace,
        function_trace,
        tuning: Some(report),
    })
}
