use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use super::candidates::{candidate, Candidate, Filter};
use crate::corpus::{Annotation, Sentence, SpecialLabel};

/// A multiword lemma sequence attested in training.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MweStats {
    pub count: u32,
    /// Largest number of intervening tokens seen; 0 means only contiguous.
    pub max_gap: u32,
}

/// How often a single-word key was a candidate, and how often a target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Attestation {
    pub candidates: u32,
    pub targets: u32,
}

impl Attestation {
    pub fn rate(&self) -> f64 {
        if self.candidates == 0 {
            0.0
        } else {
            f64::from(self.targets) / f64::from(self.candidates)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TargetLexicons {
    /// Space-joined lemma sequences of multiword targets.
    pub whitelist: BTreeMap<String, MweStats>,
    /// Multiword non-targets that contain a candidate token.
    pub blacklist: BTreeMap<String, MweStats>,
    pub single: BTreeMap<Filter, BTreeMap<String, Attestation>>,
}

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

impl TargetLexicons {
    pub fn single_word(&self, filter: Filter, key: &str) -> Option<&Attestation> {
        self.single.get(&filter).and_then(|m| m.get(key))
    }

    /// Whitelist and blacklist lemma sequences together with whether each is whitelisted.
    pub fn mwe_entries(&self) -> impl Iterator<Item = (&str, &MweStats, bool)> {
        self.whitelist
            .iter()
            .map(|(k, s)| (k.as_str(), s, true))
            .chain(self.blacklist.iter().map(|(k, s)| (k.as_str(), s, false)))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("# snacs target lexicons v1\n");
        for (name, list) in [("whitelist", &self.whitelist), ("blacklist", &self.blacklist)] {
            writeln!(out, "[{name}]").unwrap();
            for (k, s) in list {
                writeln!(out, "{k}\t{}\t{}", s.count, s.max_gap).unwrap();
            }
        }
        for f in Filter::ALL {
            writeln!(out, "[{}]", f.as_str()).unwrap();
            if let Some(m) = self.single.get(&f) {
                for (k, a) in m {
                    writeln!(out, "{k}\t{}\t{}", a.candidates, a.targets).unwrap();
                }
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<TargetLexicons, LexiconError> {
        let mut lex = TargetLexicons::default();
        let mut section: Option<String> = None;
        for (i, line) in text.lines().enumerate() {
            let err = |message: String| LexiconError::Syntax { line: i + 1, message };
            if line.starts_with('#') || line.trim().is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                if name != "whitelist" && name != "blacklist" && Filter::from_str(name).is_err() {
                    return Err(err(format!("unknown section `{name}`")));
                }
                section = Some(name.to_string());
                continue;
            }
            let Some(sec) = section.as_deref() else {
                return Err(err("entry before any section header".into()));
            };
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() != 3 || cols[0].is_empty() {
                return Err(err("expected `entry<TAB>n<TAB>n`".into()));
            }
            let a: u32 = cols[1].parse().map_err(|_| err(format!("bad count `{}`", cols[1])))?;
            let b: u32 = cols[2].parse().map_err(|_| err(format!("bad count `{}`", cols[2])))?;
            let key = cols[0].to_string();
            match sec {
                "whitelist" => {
                    lex.whitelist.insert(key, MweStats { count: a, max_gap: b });
                }
                "blacklist" => {
                    lex.blacklist.insert(key, MweStats { count: a, max_gap: b });
                }
                f => {
                    let f = Filter::from_str(f).expect("checked at header");
                    lex.single.entry(f).or_default().insert(key, Attestation { candidates: a, targets: b });
                }
            }
        }
        if let Some(k) = lex.whitelist.keys().find(|k| lex.blacklist.contains_key(*k)) {
            return Err(LexiconError::Syntax { line: 0, message: format!("`{k}` is both whitelisted and blacklisted") });
        }
        Ok(lex)
    }
}

fn gap_of(indices: &[usize]) -> u32 {
    (indices[indices.len() - 1] - indices[0] + 1 - indices.len()) as u32
}

/// Builds lexicons from gold training sentences.
///
/// Single-word counts only consider tokens outside gold multiword units, and
/// skip tokens labelled as unintelligible. A lemma sequence found both as a
/// target and as a non-target goes to whichever list saw it more often, the
/// whitelist on ties.
pub fn build_lexicons(train: &[Sentence]) -> TargetLexicons {
    let mut white: BTreeMap<String, MweStats> = BTreeMap::new();
    let mut black: BTreeMap<String, MweStats> = BTreeMap::new();
    let mut single: BTreeMap<Filter, BTreeMap<String, Attestation>> = BTreeMap::new();

    for s in train {
        let mut in_mwe = vec![false; s.len() + 1];
        let mut unit_of = vec![None; s.len() + 1];
        for e in &s.expressions {
            if e.is_multiword() {
                for &i in &e.token_indices {
                    in_mwe[i] = true;
                }
                let key = s.lemma_of(&e.token_indices);
                let target = match &e.annotation {
                    Some(Annotation::Construal(_)) => Some(true),
                    Some(Annotation::Special(SpecialLabel::Unk)) => None,
                    _ => Some(false),
                };
                let list = match target {
                    Some(true) => &mut white,
                    Some(false) if e.token_indices.iter().any(|&i| candidate(s, i).is_some()) => &mut black,
                    _ => continue,
                };
                let st = list.entry(key).or_default();
                st.count += 1;
                st.max_gap = st.max_gap.max(gap_of(&e.token_indices));
            } else {
                unit_of[e.token_indices[0]] = e.annotation.as_ref();
            }
        }
        for t in &s.tokens {
            if in_mwe[t.index] {
                continue;
            }
            let Some(Candidate::Lexical(filter, key)) = candidate(s, t.index) else {
                continue;
            };
            let a = single.entry(filter).or_default().entry(key).or_default();
            match unit_of[t.index] {
                Some(Annotation::Special(SpecialLabel::Unk)) => {}
                Some(Annotation::Construal(_)) => {
                    a.candidates += 1;
                    a.targets += 1;
                }
                _ => a.candidates += 1,
            }
        }
    }

    let conflicts: Vec<String> = white.keys().filter(|k| black.contains_key(*k)).cloned().collect();
    for k in conflicts {
        if white[&k].count >= black[&k].count {
            black.remove(&k);
        } else {
            white.remove(&k);
        }
    }
    // keys whose only occurrences were skipped as unintelligible
    for m in single.values_mut() {
        m.retain(|_, a| a.candidates > 0);
    }
    single.retain(|_, m| !m.is_empty());
    TargetLexicons { whitelist: white, blacklist: black, single }
}
