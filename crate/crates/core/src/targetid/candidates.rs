use std::fmt;
use std::str::FromStr;

use crate::corpus::{Sentence, Token};

/// The five single-word filters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Filter {
    Adposition,
    Possessive,
    Subordinator,
    Adverb,
    Infinitival,
}

impl Filter {
    pub const ALL: [Filter; 5] =
        [Filter::Adposition, Filter::Possessive, Filter::Subordinator, Filter::Adverb, Filter::Infinitival];

    pub fn as_str(self) -> &'static str {
        match self {
            Filter::Adposition => "adposition",
            Filter::Possessive => "possessive",
            Filter::Subordinator => "subordinator",
            Filter::Adverb => "adverb",
            Filter::Infinitival => "infinitival",
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Filter {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Filter::ALL.into_iter().find(|f| f.as_str() == s).ok_or_else(|| format!("unknown filter `{s}`"))
    }
}

/// Infinitival constructions decided by rule rather than by lexicon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InfinitivalRule {
    /// `to` in a for-subject infinitive.
    ForSubjectTo,
    /// The subject-marking `for` of a for-subject infinitive.
    ForSubjectFor,
    /// `to` heading the complement of `too`/`enough`.
    TooEnough,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Candidate {
    Lexical(Filter, String),
    Rule(InfinitivalRule),
}

const POSSESSIVE_XPOS: [&str; 3] = ["PRP$", "WP$", "POS"];

pub fn is_candidate_pos(t: &Token) -> bool {
    matches!(t.upos.as_str(), "ADP" | "PART" | "ADV" | "SCONJ") || POSSESSIVE_XPOS.contains(&t.xpos.as_str())
}

fn is_infinitival_to(t: &Token) -> bool {
    t.lemma_lower() == "to" && t.upos == "PART"
}

fn marks_for_subject(s: &Sentence, verb: usize, for_tok: usize, to_tok: usize) -> bool {
    for_tok < to_tok
        && s.dependents(verb).any(|d| d.index > for_tok && d.index < to_tok && matches!(d.base_deprel(), "nsubj" | "expl"))
}

fn too_enough_complement(s: &Sentence, verb: &Token) -> bool {
    if !matches!(verb.base_deprel(), "advcl" | "xcomp" | "ccomp" | "acl") {
        return false;
    }
    let Some(scale) = s.token(verb.head) else {
        return false;
    };
    scale.lemma_lower() == "enough"
        || s.dependents(scale.index).any(|d| matches!(d.lemma_lower().as_str(), "too" | "enough"))
}

/// Classifies token `index` as a single-word candidate, or `None` if its tags rule it out.
pub fn candidate(s: &Sentence, index: usize) -> Option<Candidate> {
    let t = s.token(index)?;
    if !is_candidate_pos(t) {
        return None;
    }
    let lemma = t.lemma_lower();
    if POSSESSIVE_XPOS.contains(&t.xpos.as_str()) {
        return Some(Candidate::Lexical(Filter::Possessive, lemma));
    }
    if is_infinitival_to(t) {
        let verb = s.token(t.head);
        if let Some(v) = verb {
            let for_subject = s
                .dependents(v.index)
                .any(|d| d.lemma_lower() == "for" && d.base_deprel() == "mark" && marks_for_subject(s, v.index, d.index, index));
            if for_subject {
                return Some(Candidate::Rule(InfinitivalRule::ForSubjectTo));
            }
            if too_enough_complement(s, v) {
                return Some(Candidate::Rule(InfinitivalRule::TooEnough));
            }
        }
        let rel = verb.map_or("root", |v| v.base_deprel());
        return Some(Candidate::Lexical(Filter::Infinitival, format!("to/{rel}")));
    }
    if lemma == "for" && t.base_deprel() == "mark" {
        let to = s.dependents(t.head).find(|d| is_infinitival_to(d) && d.index > index);
        if to.is_some_and(|to| marks_for_subject(s, t.head, index, to.index)) {
            return Some(Candidate::Rule(InfinitivalRule::ForSubjectFor));
        }
    }
    let filter = match t.upos.as_str() {
        "SCONJ" => Filter::Subordinator,
        "ADP" => Filter::Adposition,
        _ => Filter::Adverb,
    };
    let key = if filter == Filter::Adposition && t.deprel == "compound:prt" { format!("{lemma}/prt") } else { lemma };
    Some(Candidate::Lexical(filter, key))
}
