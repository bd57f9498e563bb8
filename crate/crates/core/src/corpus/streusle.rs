//! Import adapter from the STREUSLE JSON release to [`Sentence`]s.
//!
//! Only the adposition/possessive layer is kept: single- and multiword units
//! with an adpositional lexical category or a special label, plus strong
//! multiword expressions of other categories (kept as `OTHER` so target
//! identification can learn which multiword sequences are not targets).
//! Noun and verb supersenses and weak multiword expressions are dropped.

use std::collections::{BTreeMap, HashSet};

use serde::Deserialize;
use thiserror::Error;

use super::{check_structure, Annotation, LexCat, LexicalExpression, Sentence, SpecialLabel, Token};
use crate::hierarchy::Construal;

#[derive(Debug, Error)]
pub enum ImportError {
    #[error("malformed STREUSLE JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("sentence {sent_id}: {message}")]
    Sentence { sent_id: String, message: String },
}

#[derive(Debug, Deserialize)]
struct JsonSentence {
    sent_id: String,
    #[serde(default)]
    doc_id: Option<String>,
    toks: Vec<JsonToken>,
    #[serde(default)]
    swes: BTreeMap<String, JsonLexe>,
    #[serde(default)]
    smwes: BTreeMap<String, JsonLexe>,
}

#[derive(Debug, Deserialize)]
struct JsonToken {
    #[serde(rename = "#")]
    num: usize,
    word: String,
    #[serde(default)]
    lemma: Option<String>,
    #[serde(default)]
    upos: Option<String>,
    #[serde(default)]
    xpos: Option<String>,
    #[serde(default)]
    feats: Option<String>,
    #[serde(default)]
    head: Option<usize>,
    #[serde(default)]
    deprel: Option<String>,
    #[serde(default)]
    edeps: Option<String>,
    #[serde(default)]
    misc: Option<String>,
    #[serde(default)]
    ner: Option<String>,
}

#[derive(Debug, Deserialize)]
struct JsonLexe {
    #[serde(default)]
    lexcat: Option<String>,
    #[serde(default)]
    ss: Option<String>,
    #[serde(default)]
    ss2: Option<String>,
    toknums: Vec<usize>,
}

fn or_underscore(v: Option<String>) -> String {
    match v {
        Some(s) if !s.is_empty() => s,
        _ => "_".to_string(),
    }
}

/// Document id derived from a sentence id such as `reviews-001325-0003`.
pub fn doc_id_from_sent_id(sent_id: &str) -> String {
    match sent_id.rsplit_once('-') {
        Some((doc, n)) if !doc.is_empty() && n.chars().all(|c| c.is_ascii_digit()) => doc.to_string(),
        _ => sent_id.to_string(),
    }
}

fn convert_lexe(lexe: &JsonLexe, sent_id: &str, multiword: bool) -> Result<Option<LexicalExpression>, ImportError> {
    let err = |message: String| ImportError::Sentence { sent_id: sent_id.to_string(), message };
    let annotation = match lexe.ss.as_deref() {
        None | Some("_") => None,
        Some(code) if SpecialLabel::from_code(code).is_some() => {
            Some(Annotation::Special(SpecialLabel::from_code(code).expect("checked")))
        }
        Some(ss) if ss.starts_with("p.") => {
            let role = ss.trim_start_matches("p.");
            let function = match lexe.ss2.as_deref() {
                None | Some("_") => role,
                Some(f) => f.strip_prefix("p.").ok_or_else(|| err(format!("function `{f}` lacks `p.` prefix")))?,
            };
            Some(Annotation::Construal(Construal::new(role, function)))
        }
        // noun/verb supersenses belong to other layers
        Some(_) => None,
    };
    let source_cat = lexe.lexcat.as_deref().unwrap_or("");
    let snacs_cat = match source_cat {
        "P" => Some(LexCat::P),
        "PP" => Some(LexCat::PP),
        "INF.P" => Some(LexCat::InfP),
        "POSS" => Some(LexCat::Poss),
        "PRON.POSS" => Some(LexCat::PronPoss),
        _ => None,
    };
    let lexcat = match (&annotation, snacs_cat) {
        (Some(Annotation::Construal(_)), Some(c)) => c,
        (Some(Annotation::Special(SpecialLabel::Unk)), Some(c)) => c,
        (Some(Annotation::Construal(_)), None) => {
            return Err(err(format!("construal on non-adpositional category `{source_cat}`")))
        }
        _ => match source_cat {
            "DISC" => LexCat::Disc,
            "CCONJ" => LexCat::Cconj,
            _ => LexCat::Other,
        },
    };
    let keep = multiword || annotation.is_some() || snacs_cat.is_some();
    if !keep {
        return Ok(None);
    }
    let mut toknums = lexe.toknums.clone();
    toknums.sort_unstable();
    Ok(Some(LexicalExpression::new(toknums, lexcat, annotation)))
}

/// Converts a STREUSLE JSON document (an array of sentences). When `keep` is
/// given, only sentences whose id is in it are converted, in file order.
pub fn import_streusle_json(json: &str, keep: Option<&HashSet<String>>) -> Result<Vec<Sentence>, ImportError> {
    let raw: Vec<JsonSentence> = serde_json::from_str(json)?;
    let mut out = Vec::new();
    for js in raw {
        if keep.is_some_and(|k| !k.contains(&js.sent_id)) {
            continue;
        }
        let tokens: Vec<Token> = js
            .toks
            .into_iter()
            .map(|t| Token {
                index: t.num,
                lemma: or_underscore(t.lemma),
                form: t.word,
                upos: or_underscore(t.upos),
                xpos: or_underscore(t.xpos),
                feats: or_underscore(t.feats),
                head: t.head.unwrap_or(0),
                deprel: or_underscore(t.deprel),
                deps: or_underscore(t.edeps),
                misc: or_underscore(t.misc),
                ner: t.ner.filter(|n| !n.is_empty() && n != "_" && n != "O"),
            })
            .collect();
        let mut expressions = Vec::new();
        for lexe in js.swes.values() {
            expressions.extend(convert_lexe(lexe, &js.sent_id, false)?);
        }
        for lexe in js.smwes.values() {
            expressions.extend(convert_lexe(lexe, &js.sent_id, true)?);
        }
        expressions.sort_by_key(|e| e.token_indices[0]);
        let sentence = Sentence {
            doc_id: js.doc_id.unwrap_or_else(|| doc_id_from_sent_id(&js.sent_id)),
            id: js.sent_id,
            tokens,
            expressions,
        };
        if let Some(v) = check_structure(&sentence).into_iter().next() {
            return Err(ImportError::Sentence { sent_id: sentence.id, message: v.message });
        }
        out.push(sentence);
    }
    Ok(out)
}

/// Reads a newline-separated list of sentence ids (as in the official split files).
pub fn parse_id_list(text: &str) -> HashSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split_whitespace().next().unwrap_or(l).to_string())
        .collect()
}
