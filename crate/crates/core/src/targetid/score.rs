use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use super::identify::TargetPrediction;
use crate::corpus::{Sentence, SpecialLabel};
use crate::eval::Prf;

/// Predicted targets for one sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceTargets {
    pub sent_id: String,
    pub targets: Vec<TargetPrediction>,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("prediction {position} is for sentence `{predicted}` but gold has `{gold}`")]
pub struct AlignmentError {
    pub position: usize,
    pub predicted: String,
    pub gold: String,
}

/// Checks that predictions and gold list the same sentences in the same order.
pub fn check_alignment(pred: &[SentenceTargets], gold: &[Sentence]) -> Result<(), AlignmentError> {
    for i in 0..pred.len().max(gold.len()) {
        let p = pred.get(i).map_or("<none>", |p| p.sent_id.as_str());
        let g = gold.get(i).map_or("<none>", |g| g.id.as_str());
        if p != g {
            return Err(AlignmentError { position: i + 1, predicted: p.to_string(), gold: g.to_string() });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct TargetScores {
    pub prf: Prf,
    /// False positives that overlap a gold target.
    pub partial_predicted: usize,
    /// False negatives overlapped by some prediction.
    pub partial_gold: usize,
    /// False negatives with no overlapping prediction.
    pub missed: usize,
    /// False positives overlapping no gold target.
    pub spurious: usize,
    /// Predictions discarded because they touch a token labelled unintelligible.
    pub ignored: usize,
}

/// How one sentence's predictions line up with its gold construal targets.
#[derive(Debug, Default)]
pub(crate) struct Alignment {
    /// (prediction index, gold expression index) exact matches.
    pub exact: Vec<(usize, usize)>,
    /// Prediction indices that count as false positives.
    pub false_pos: Vec<usize>,
    /// Gold expression indices that count as false negatives.
    pub false_neg: Vec<usize>,
    pub partial_predicted: usize,
    pub partial_gold: usize,
    pub ignored: usize,
}

pub(crate) fn align(pred: &[TargetPrediction], gold: &Sentence) -> Alignment {
    let unk: HashSet<usize> = gold
        .expressions
        .iter()
        .filter(|e| e.special() == Some(SpecialLabel::Unk))
        .flat_map(|e| e.token_indices.iter().copied())
        .collect();
    let targets: Vec<usize> =
        gold.expressions.iter().enumerate().filter(|(_, e)| e.construal().is_some()).map(|(i, _)| i).collect();
    let overlaps = |a: &[usize], b: &[usize]| a.iter().any(|x| b.contains(x));

    let mut al = Alignment::default();
    let mut matched = HashSet::new();
    let mut touched = HashSet::new();
    for (pi, p) in pred.iter().enumerate() {
        if p.token_indices.iter().any(|t| unk.contains(t)) {
            al.ignored += 1;
            continue;
        }
        if let Some(&gi) = targets.iter().find(|&&gi| gold.expressions[gi].token_indices == p.token_indices) {
            al.exact.push((pi, gi));
            matched.insert(gi);
            continue;
        }
        al.false_pos.push(pi);
        let mut partial = false;
        for &gi in &targets {
            if overlaps(&p.token_indices, &gold.expressions[gi].token_indices) {
                touched.insert(gi);
                partial = true;
            }
        }
        if partial {
            al.partial_predicted += 1;
        }
    }
    for &gi in &targets {
        if !matched.contains(&gi) {
            al.false_neg.push(gi);
            if touched.contains(&gi) {
                al.partial_gold += 1;
            }
        }
    }
    al
}

/// Exact token-set scoring of predicted targets. A partial overlap counts
/// once as a false positive and once as a false negative.
pub fn score_targets(pred: &[SentenceTargets], gold: &[Sentence]) -> Result<TargetScores, AlignmentError> {
    check_alignment(pred, gold)?;
    let mut sc = TargetScores::default();
    let (mut tp, mut fp, mut fn_) = (0, 0, 0);
    for (p, g) in pred.iter().zip(gold) {
        let al = align(&p.targets, g);
        tp += al.exact.len();
        fp += al.false_pos.len();
        fn_ += al.false_neg.len();
        sc.partial_predicted += al.partial_predicted;
        sc.partial_gold += al.partial_gold;
        sc.ignored += al.ignored;
    }
    sc.prf = Prf::from_counts(tp, fp, fn_);
    sc.missed = fn_ - sc.partial_gold;
    sc.spurious = fp - sc.partial_predicted;
    Ok(sc)
}
