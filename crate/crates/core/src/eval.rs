//! Scoring of disambiguation output: accuracy with gold targets, P/R/F with
//! identified targets, coarsened variants and confusion matrices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::corpus::Sentence;
use crate::hierarchy::{Construal, Dimension, Hierarchy, MAX_DEPTH};
use crate::targetid::{align, check_alignment, AlignmentError, SentenceTargets};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("sentence {sent_id}: {got} predictions for {expected} gold targets")]
    CountMismatch { sent_id: String, expected: usize, got: usize },
    #[error(transparent)]
    Alignment(#[from] AlignmentError),
    #[error("{0} sentences of predictions for {1} gold sentences")]
    SentenceCount(usize, usize),
    #[error("depth {0} is outside 1..={MAX_DEPTH}")]
    Depth(u8),
}

/// Precision, recall and F1 as percentages, with the counts behind them.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Prf {
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// Set when there were no predictions; precision is then reported as 0.
    pub no_predictions: bool,
}

impl Prf {
    pub fn from_counts(tp: usize, fp: usize, fn_: usize) -> Prf {
        let pct = |num: usize, den: usize| if den == 0 { 0.0 } else { 100.0 * num as f64 / den as f64 };
        let precision = pct(tp, tp + fp);
        let recall = pct(tp, tp + fn_);
        let f1 = if precision + recall == 0.0 { 0.0 } else { 2.0 * precision * recall / (precision + recall) };
        Prf { tp, fp, fn_, precision, recall, f1, no_predictions: tp + fp == 0 }
    }
}

/// Accuracies over gold targets, as percentages.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct GoldIdScores {
    pub depth: u8,
    pub targets: usize,
    pub role: f64,
    pub function: f64,
    pub full: f64,
}

/// Scores over identified targets.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct AutoIdScores {
    pub depth: u8,
    pub targets: Prf,
    pub role: Prf,
    pub function: Prf,
    pub full: Prf,
}

fn check_depth(depth: u8) -> Result<(), EvalError> {
    if (1..=MAX_DEPTH).contains(&depth) {
        Ok(())
    } else {
        Err(EvalError::Depth(depth))
    }
}

fn slot_match(h: &Hierarchy, p: &Construal, g: &Construal, dim: Dimension, depth: u8) -> bool {
    let c = |l: &str| h.coarsen(l, depth).unwrap_or(l).to_string();
    c(p.slot(dim)) == c(g.slot(dim))
}

/// Pairs each prediction with its gold construal, checking counts.
fn pair_gold<'a>(pred: &'a [Vec<Construal>], gold: &'a [Sentence]) -> Result<Vec<(&'a Construal, &'a Construal)>, EvalError> {
    if pred.len() != gold.len() {
        return Err(EvalError::SentenceCount(pred.len(), gold.len()));
    }
    let mut out = Vec::new();
    for (p, s) in pred.iter().zip(gold) {
        let g: Vec<&Construal> = s.targets().map(|(_, c)| c).collect();
        if g.len() != p.len() {
            return Err(EvalError::CountMismatch { sent_id: s.id.clone(), expected: g.len(), got: p.len() });
        }
        out.extend(p.iter().zip(g));
    }
    Ok(out)
}

/// Accuracy with gold targets: one prediction per gold construal, in
/// sentence order. Both sides are coarsened to `depth` before comparison.
pub fn evaluate_gold_id(pred: &[Vec<Construal>], gold: &[Sentence], h: &Hierarchy, depth: u8) -> Result<GoldIdScores, EvalError> {
    check_depth(depth)?;
    let pairs = pair_gold(pred, gold)?;
    let (mut r, mut f, mut full) = (0, 0, 0);
    for (p, g) in &pairs {
        let rm = slot_match(h, p, g, Dimension::Role, depth);
        let fm = slot_match(h, p, g, Dimension::Function, depth);
        r += usize::from(rm);
        f += usize::from(fm);
        full += usize::from(rm && fm);
    }
    let pct = |k: usize| if pairs.is_empty() { 0.0 } else { 100.0 * k as f64 / pairs.len() as f64 };
    Ok(GoldIdScores { depth, targets: pairs.len(), role: pct(r), function: pct(f), full: pct(full) })
}

/// P/R/F with identified targets. A prediction is correct on a dimension when
/// its tokens exactly match a gold target and the coarsened labels agree.
/// Predictions touching unintelligible tokens are not scored.
pub fn evaluate_auto_id(
    targets: &[SentenceTargets],
    labels: &[Vec<Construal>],
    gold: &[Sentence],
    h: &Hierarchy,
    depth: u8,
) -> Result<AutoIdScores, EvalError> {
    check_depth(depth)?;
    check_alignment(targets, gold)?;
    if labels.len() != targets.len() {
        return Err(EvalError::SentenceCount(labels.len(), targets.len()));
    }
    let (mut scored, mut gold_n, mut id_tp) = (0, 0, 0);
    let mut tp = [0usize; 3];
    for ((t, l), s) in targets.iter().zip(labels).zip(gold) {
        if t.targets.len() != l.len() {
            return Err(EvalError::CountMismatch { sent_id: s.id.clone(), expected: t.targets.len(), got: l.len() });
        }
        let al = align(&t.targets, s);
        scored += t.targets.len() - al.ignored;
        gold_n += s.targets().count();
        id_tp += al.exact.len();
        for &(pi, gi) in &al.exact {
            let g = s.expressions[gi].construal().expect("aligned to a construal target");
            let rm = slot_match(h, &l[pi], g, Dimension::Role, depth);
            let fm = slot_match(h, &l[pi], g, Dimension::Function, depth);
            tp[0] += usize::from(rm);
            tp[1] += usize::from(fm);
            tp[2] += usize::from(rm && fm);
        }
    }
    let prf = |k: usize| Prf::from_counts(k, scored - k, gold_n - k);
    Ok(AutoIdScores { depth, targets: prf(id_tp), role: prf(tp[0]), function: prf(tp[1]), full: prf(tp[2]) })
}

/// Counts of (gold label, predicted label) pairs on one dimension.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConfusionMatrix {
    pub labels: Vec<String>,
    /// `counts[gold][predicted]`, indexed like `labels`.
    pub counts: Vec<Vec<usize>>,
}

impl ConfusionMatrix {
    pub fn from_pairs<'a, I>(pairs: I) -> ConfusionMatrix
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut cells: BTreeMap<(&str, &str), usize> = BTreeMap::new();
        let mut labels = BTreeSet::new();
        for (g, p) in pairs {
            labels.insert(g);
            labels.insert(p);
            *cells.entry((g, p)).or_default() += 1;
        }
        let labels: Vec<String> = labels.into_iter().map(str::to_string).collect();
        let pos = |l: &str| labels.iter().position(|x| x == l).expect("label collected");
        let mut counts = vec![vec![0; labels.len()]; labels.len()];
        for ((g, p), n) in cells {
            counts[pos(g)][pos(p)] += n;
        }
        ConfusionMatrix { labels, counts }
    }

    pub fn total(&self) -> usize {
        self.counts.iter().flatten().sum()
    }

    pub fn get(&self, gold: &str, pred: &str) -> usize {
        let pos = |l: &str| self.labels.iter().position(|x| x == l);
        match (pos(gold), pos(pred)) {
            (Some(g), Some(p)) => self.counts[g][p],
            _ => 0,
        }
    }

    /// Off-diagonal cells, largest first (ties by label order).
    pub fn top_confusions(&self, n: usize) -> Vec<(&str, &str, usize)> {
        let mut v: Vec<(&str, &str, usize)> = Vec::new();
        for (g, row) in self.counts.iter().enumerate() {
            for (p, &c) in row.iter().enumerate() {
                if g != p && c > 0 {
                    v.push((&self.labels[g], &self.labels[p], c));
                }
            }
        }
        v.sort_by(|a, b| b.2.cmp(&a.2).then(a.0.cmp(b.0)).then(a.1.cmp(b.1)));
        v.truncate(n);
        v
    }

    /// Tab-separated with a header row; rows are gold labels, columns predictions.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("gold\\pred");
        for l in &self.labels {
            write!(out, "\t{l}").unwrap();
        }
        out.push('\n');
        for (l, row) in self.labels.iter().zip(&self.counts) {
            out.push_str(l);
            for c in row {
                write!(out, "\t{c}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// Confusion matrix with gold targets on one dimension after coarsening.
pub fn confusion_matrix(
    pred: &[Vec<Construal>],
    gold: &[Sentence],
    h: &Hierarchy,
    dim: Dimension,
    depth: u8,
) -> Result<ConfusionMatrix, EvalError> {
    check_depth(depth)?;
    let pairs = pair_gold(pred, gold)?;
    let c = |l: &str| h.coarsen(l, depth).unwrap_or(l).to_string();
    let owned: Vec<(String, String)> = pairs.iter().map(|(p, g)| (c(g.slot(dim)), c(p.slot(dim)))).collect();
    Ok(ConfusionMatrix::from_pairs(owned.iter().map(|(g, p)| (g.as_str(), p.as_str()))))
}

/// Gold-ID and auto-ID scores at every depth, deepest first.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct EvalReport {
    pub system: String,
    pub gold_id: Vec<GoldIdScores>,
    pub auto_id: Vec<AutoIdScores>,
}

impl EvalReport {
    /// Human-readable table.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "System: {}", self.system).unwrap();
        if !self.gold_id.is_empty() {
            writeln!(out, "Gold targets ({} scored)", self.gold_id[0].targets).unwrap();
            writeln!(out, "  depth      role    func    full").unwrap();
            for g in &self.gold_id {
                writeln!(out, "  {:<8} {:>6.1}  {:>6.1}  {:>6.1}", depth_name(g.depth), g.role, g.function, g.full).unwrap();
            }
        }
        if !self.auto_id.is_empty() {
            let t = &self.auto_id[0].targets;
            writeln!(out, "Identified targets: P {:.1}  R {:.1}  F {:.1}", t.precision, t.recall, t.f1).unwrap();
            writeln!(out, "  depth     role P/R/F            func P/R/F            full P/R/F").unwrap();
            for a in &self.auto_id {
                let f = |p: &Prf| format!("{:>5.1} {:>5.1} {:>5.1}", p.precision, p.recall, p.f1);
                writeln!(out, "  {:<8} {}     {}     {}", depth_name(a.depth), f(&a.role), f(&a.function), f(&a.full)).unwrap();
            }
            if t.no_predictions {
                writeln!(out, "  (no targets were predicted; precision reported as 0)").unwrap();
            }
        }
        out
    }

    /// One `key=value` per line, stable order.
    pub fn to_key_values(&self) -> String {
        let mut out = String::new();
        writeln!(out, "system={}", self.system).unwrap();
        for g in &self.gold_id {
            let d = depth_name(g.depth);
            writeln!(out, "gold_id.{d}.targets={}", g.targets).unwrap();
            writeln!(out, "gold_id.{d}.role_acc={:.4}", g.role).unwrap();
            writeln!(out, "gold_id.{d}.func_acc={:.4}", g.function).unwrap();
            writeln!(out, "gold_id.{d}.full_acc={:.4}", g.full).unwrap();
        }
        for a in &self.auto_id {
            let d = depth_name(a.depth);
            for (name, p) in [("id", &a.targets), ("role", &a.role), ("func", &a.function), ("full", &a.full)] {
                writeln!(out, "auto_id.{d}.{name}.p={:.4}", p.precision).unwrap();
                writeln!(out, "auto_id.{d}.{name}.r={:.4}", p.recall).unwrap();
                writeln!(out, "auto_id.{d}.{name}.f={:.4}", p.f1).unwrap();
                writeln!(out, "auto_id.{d}.{name}.tp={}", p.tp).unwrap();
                writeln!(out, "auto_id.{d}.{name}.fp={}", p.fp).unwrap();
                writeln!(out, "auto_id.{d}.{name}.fn={}", p.fn_).unwrap();
                writeln!(out, "auto_id.{d}.{name}.no_predictions={}", p.no_predictions).unwrap();
            }
        }
        out
    }
}

/// `exact` for the full depth, `depth-N` otherwise.
pub fn depth_name(depth: u8) -> String {
    if depth == MAX_DEPTH {
        "exact".to_string()
    } else {
        format!("depth-{depth}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Annotation, LexCat, LexicalExpression, SpecialLabel, Token};
    use crate::targetid::TargetPrediction;

    fn gold() -> Vec<Sentence> {
        let tokens = (1..=6).map(|i| Token::new(i, "w", "w", "ADP", "IN", 0, "root")).collect();
        vec![Sentence {
            id: "s".into(),
            doc_id: "d".into(),
            tokens,
            expressions: vec![
                LexicalExpression::with_construal(vec![1], LexCat::P, Construal::new("StartTime", "Time")),
                LexicalExpression::with_construal(vec![2, 3], LexCat::PP, Construal::congruent("Goal")),
                LexicalExpression::with_construal(vec![4], LexCat::Poss, Construal::new("Gestalt", "Possessor")),
                LexicalExpression::new(vec![5], LexCat::P, Some(Annotation::Special(SpecialLabel::Unk))),
            ],
        }]
    }

    #[test]
    fn perfect_predictions_score_100_everywhere() {
        let g = gold();
        let pred = vec![g[0].targets().map(|(_, c)| c.clone()).collect::<Vec<_>>()];
        let h = Hierarchy::bundled();
        for d in 1..=4 {
            let s = evaluate_gold_id(&pred, &g, &h, d).unwrap();
            assert_eq!((s.role, s.function, s.full), (100.0, 100.0, 100.0));
        }
        let m = confusion_matrix(&pred, &g, &h, Dimension::Role, 4).unwrap();
        assert_eq!(m.total(), 3);
        assert!(m.top_confusions(5).is_empty());
    }

    #[test]
    fn coarsening_merges_labels() {
        let g = gold();
        let pred = vec![vec![
            Construal::new("EndTime", "Time"),
            Construal::congruent("Source"),
            Construal::new("Possessor", "Possessor"),
        ]];
        let h = Hierarchy::bundled();
        let exact = evaluate_gold_id(&pred, &g, &h, 4).unwrap();
        assert_eq!((exact.role, exact.function, exact.full), (0.0, 200.0 / 3.0, 0.0));
        let d2 = evaluate_gold_id(&pred, &g, &h, 2).unwrap();
        assert_eq!((d2.role, d2.function, d2.full), (100.0, 100.0, 100.0));
        assert!(exact.full <= exact.role.min(exact.function));
    }

    #[test]
    fn count_mismatch() {
        let g = gold();
        let err = evaluate_gold_id(&[vec![]], &g, &Hierarchy::bundled(), 4).unwrap_err();
        assert_eq!(err, EvalError::CountMismatch { sent_id: "s".into(), expected: 3, got: 0 });
        assert!(evaluate_gold_id(&[vec![]], &g, &Hierarchy::bundled(), 0).is_err());
    }

    #[test]
    fn auto_id_scoring() {
        let g = gold();
        let targets = vec![SentenceTargets {
            sent_id: "s".into(),
            targets: vec![
                TargetPrediction::new(vec![1]),
                TargetPrediction::new(vec![3]),
                TargetPrediction::new(vec![5]),
                TargetPrediction::new(vec![6]),
            ],
        }];
        let labels = vec![vec![
            Construal::new("StartTime", "Locus"),
            Construal::congruent("Goal"),
            Construal::congruent("Locus"),
            Construal::congruent("Locus"),
        ]];
        let s = evaluate_auto_id(&targets, &labels, &g, &Hierarchy::bundled(), 4).unwrap();
        // token 5 is unintelligible and ignored: 3 scored predictions, 3 gold targets
        assert_eq!((s.targets.tp, s.targets.fp, s.targets.fn_), (1, 2, 2));
        assert_eq!((s.role.tp, s.function.tp, s.full.tp), (1, 0, 0));
        assert!(s.full.tp <= s.targets.tp);
    }

    #[test]
    fn no_predictions_flagged() {
        let g = gold();
        let targets = vec![SentenceTargets { sent_id: "s".into(), targets: vec![] }];
        let s = evaluate_auto_id(&targets, &[vec![]], &g, &Hierarchy::bundled(), 4).unwrap();
        assert!(s.full.no_predictions);
        assert_eq!((s.full.precision, s.full.recall, s.full.f1), (0.0, 0.0, 0.0));
    }

    #[test]
    fn confusion_tsv() {
        let m = ConfusionMatrix::from_pairs([("Gestalt", "Possessor"), ("Gestalt", "Gestalt"), ("Possessor", "Possessor")]);
        assert_eq!(m.to_tsv(), "gold\\pred\tGestalt\tPossessor\nGestalt\t1\t1\nPossessor\t0\t1\n");
        assert_eq!(m.top_confusions(1), vec![("Gestalt", "Possessor", 1)]);
        let row_sums: Vec<usize> = m.counts.iter().map(|r| r.iter().sum()).collect();
        assert_eq!(row_sums, vec![2, 1]);
    }
}
