use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::candidates::{candidate, Candidate, InfinitivalRule};
use super::lexicon::TargetLexicons;
use crate::corpus::Sentence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IdMode {
    /// Keep single-word candidates whose key was a target at least `min_rate` of the time in training.
    #[default]
    Precision,
    /// Keep every single-word candidate except keys seen in training only as non-targets.
    Recall,
}

impl FromStr for IdMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "precision" => Ok(IdMode::Precision),
            "recall" => Ok(IdMode::Recall),
            _ => Err(format!("unknown identification mode `{s}` (expected precision or recall)")),
        }
    }
}

impl fmt::Display for IdMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IdMode::Precision => "precision",
            IdMode::Recall => "recall",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdOptions {
    pub mode: IdMode,
    /// Whether `to` in `too ... to` / `enough ... to` complements is a target.
    pub too_enough_target: bool,
    pub min_rate: f64,
}

impl Default for IdOptions {
    fn default() -> Self {
        IdOptions { mode: IdMode::Precision, too_enough_target: true, min_rate: 0.5 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TargetPrediction {
    pub token_indices: Vec<usize>,
}

impl TargetPrediction {
    pub fn new(token_indices: Vec<usize>) -> Self {
        TargetPrediction { token_indices }
    }
}

struct MweEntry {
    lemmas: Vec<String>,
    max_gap: usize,
    whitelisted: bool,
}

/// Lexicons prepared for scanning.
pub struct TargetIdentifier<'a> {
    lex: &'a TargetLexicons,
    by_first: HashMap<String, Vec<MweEntry>>,
    pub options: IdOptions,
}

impl<'a> TargetIdentifier<'a> {
    pub fn new(lex: &'a TargetLexicons, options: IdOptions) -> Self {
        let mut by_first: HashMap<String, Vec<MweEntry>> = HashMap::new();
        for (key, stats, whitelisted) in lex.mwe_entries() {
            let lemmas: Vec<String> = key.split(' ').map(str::to_string).collect();
            if lemmas.len() < 2 {
                continue;
            }
            by_first.entry(lemmas[0].clone()).or_default().push(MweEntry {
                lemmas,
                max_gap: stats.max_gap as usize,
                whitelisted,
            });
        }
        TargetIdentifier { lex, by_first, options }
    }

    /// Earliest placement of `entry` starting at `start` using uncovered tokens.
    fn place(entry: &MweEntry, lemmas: &[String], covered: &[bool], start: usize) -> Option<Vec<usize>> {
        let mut idx = vec![start];
        let mut gap = 0;
        let mut pos = start;
        for want in &entry.lemmas[1..] {
            loop {
                pos += 1;
                if pos >= lemmas.len() {
                    return None;
                }
                if !covered[pos] && &lemmas[pos] == want {
                    break;
                }
                gap += 1;
                if gap > entry.max_gap {
                    return None;
                }
            }
            idx.push(pos);
        }
        Some(idx)
    }

    fn keep_single(&self, c: &Candidate) -> bool {
        match c {
            Candidate::Rule(InfinitivalRule::ForSubjectTo) => true,
            Candidate::Rule(InfinitivalRule::ForSubjectFor) => false,
            Candidate::Rule(InfinitivalRule::TooEnough) => self.options.too_enough_target,
            Candidate::Lexical(f, key) => {
                let a = self.lex.single_word(*f, key);
                match self.options.mode {
                    IdMode::Precision => a.is_some_and(|a| a.targets > 0 && a.rate() >= self.options.min_rate),
                    IdMode::Recall => a.is_none_or(|a| a.targets > 0),
                }
            }
        }
    }

    pub fn identify(&self, s: &Sentence) -> Vec<TargetPrediction> {
        let n = s.len();
        // 1-based; index 0 unused
        let lemmas: Vec<String> =
            std::iter::once(String::new()).chain(s.tokens.iter().map(|t| t.lemma_lower())).collect();
        let mut covered = vec![false; n + 1];
        let mut out = Vec::new();

        for i in 1..=n {
            if covered[i] {
                continue;
            }
            let Some(entries) = self.by_first.get(&lemmas[i]) else {
                continue;
            };
            // longest, then tightest, then alphabetical
            let best = entries
                .iter()
                .filter_map(|e| Self::place(e, &lemmas, &covered, i).map(|idx| (e, idx)))
                .min_by(|(ea, ia), (eb, ib)| {
                    let span = |v: &Vec<usize>| v[v.len() - 1] - v[0];
                    ib.len().cmp(&ia.len()).then(span(ia).cmp(&span(ib))).then(ea.lemmas.cmp(&eb.lemmas))
                });
            if let Some((entry, idx)) = best {
                for &j in &idx {
                    covered[j] = true;
                }
                if entry.whitelisted {
                    out.push(TargetPrediction::new(idx));
                }
            }
        }

        for i in (1..=n).filter(|&i| !covered[i]) {
            if let Some(c) = candidate(s, i) {
                if self.keep_single(&c) {
                    out.push(TargetPrediction::new(vec![i]));
                }
            }
        }
        out.sort();
        out
    }
}

/// Identifies targets in one sentence. Prefer [`TargetIdentifier`] for many sentences.
pub fn identify_targets(s: &Sentence, lex: &TargetLexicons, options: IdOptions) -> Vec<TargetPrediction> {
    TargetIdentifier::new(lex, options).identify(s)
}
