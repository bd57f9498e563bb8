use std::collections::BTreeSet;
use std::sync::OnceLock;

use super::neighbors::NeighborContext;
use crate::corpus::{Sentence, Token};
use crate::lexres::{LexicalResourceBundle, WordNetLookup};

const AFFIX_LISTS: &str = include_str!("../../data/affixes.txt");

/// Separator between a feature and the target lemma it is conjoined with.
pub const CONJUNCTION: &str = "∧tlemma=";

#[derive(Debug, Default)]
struct AffixClass {
    name: String,
    prefixes: Vec<String>,
    suffixes: Vec<String>,
    words: BTreeSet<String>,
}

fn affix_classes() -> &'static [AffixClass] {
    static CLASSES: OnceLock<Vec<AffixClass>> = OnceLock::new();
    CLASSES.get_or_init(|| {
        let mut out: Vec<AffixClass> = Vec::new();
        for line in AFFIX_LISTS.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                out.push(AffixClass { name: name.to_string(), ..AffixClass::default() });
                continue;
            }
            let mut parts = line.split_whitespace();
            let kind = parts.next().unwrap_or("");
            let cur = out.last_mut().expect("affix list starts with a section");
            let items = parts.map(str::to_string);
            match kind {
                "prefix" => cur.prefixes.extend(items),
                "suffix" => cur.suffixes.extend(items),
                "word" => cur.words.extend(items),
                _ => panic!("bad affix list line `{line}`"),
            }
        }
        out
    })
}

/// Names of the affix classes `word` (lowercased) belongs to.
pub fn affix_indicators(word: &str) -> Vec<&'static str> {
    let n = word.chars().count();
    affix_classes()
        .iter()
        .filter(|c| {
            c.words.contains(word)
                // require a stem of at least two characters so short words do not match everything
                || c.suffixes.iter().any(|s| n >= s.chars().count() + 2 && word.ends_with(s.as_str()))
                || c.prefixes.iter().any(|p| n >= p.chars().count() + 2 && word.starts_with(p.as_str()))
        })
        .map(|c| c.name.as_str())
        .collect()
}

fn capitalization(form: &str) -> &'static str {
    let mut letters = form.chars().filter(|c| c.is_alphabetic()).peekable();
    if letters.peek().is_none() {
        return "none";
    }
    let all_upper = form.chars().filter(|c| c.is_alphabetic()).all(char::is_uppercase);
    let first_upper = form.chars().next().is_some_and(char::is_uppercase);
    match (all_upper, first_upper) {
        (true, _) if form.chars().filter(|c| c.is_alphabetic()).count() > 1 => "upper",
        (_, true) => "initial",
        _ if form.chars().any(char::is_uppercase) => "mixed",
        _ => "lower",
    }
}

fn prefix(word: &str, n: usize) -> Option<String> {
    (word.chars().count() >= n).then(|| word.chars().take(n).collect())
}

fn suffix(word: &str, n: usize) -> Option<String> {
    let len = word.chars().count();
    (len >= n).then(|| word.chars().skip(len - n).collect())
}

fn word_features(slot: &str, t: &Token, res: &LexicalResourceBundle, out: &mut Vec<String>) {
    let word = t.form.to_lowercase();
    out.push(format!("{slot}.word={word}"));
    out.push(format!("{slot}.cap={}", capitalization(&t.form)));
    out.push(format!("{slot}.upos={}", t.upos));
    out.push(format!("{slot}.xpos={}", t.xpos));

    if let WordNetLookup::Found(e) = res.lookup_wordnet(&word, &t.upos) {
        out.push(format!("{slot}.wn"));
        out.push(format!("{slot}.wn.first={}", e.first_synset()));
        for syn in &e.synsets {
            out.push(format!("{slot}.wn.syn={syn}"));
        }
        out.push(format!("{slot}.wn.lemma={}", e.lemma));
        out.push(format!("{slot}.wn.lexfile={}", e.lexfile));
        for (kind, syn) in &e.holonyms {
            out.push(format!("{slot}.wn.holo.{}={syn}", kind.as_str()));
        }
    }
    for div in res.lookup_roget(&word) {
        out.push(format!("{slot}.roget={div}"));
    }
    if let Some(ner) = &t.ner {
        out.push(format!("{slot}.ner={ner}"));
    }
    for n in [2, 3] {
        if let Some(p) = prefix(&word, n) {
            out.push(format!("{slot}.pre{n}={p}"));
        }
        if let Some(s) = suffix(&word, n) {
            out.push(format!("{slot}.suf{n}={s}"));
        }
    }
    for class in affix_indicators(&word) {
        out.push(format!("{slot}.affix={class}"));
    }
}

/// Slot names in extraction order, paired with the context field they read.
pub const SLOTS: [&str; 7] = ["t", "gov", "obj", "pv", "pn", "pa", "nn"];

/// Indicator features for the target spanning `indices`. Returns sorted,
/// deduplicated names; each base feature also appears conjoined with the
/// lemma of the target's rightmost token.
pub fn extract_features(
    s: &Sentence,
    indices: &[usize],
    ctx: &NeighborContext,
    res: &LexicalResourceBundle,
) -> Vec<String> {
    let mut base = vec!["bias".to_string()];
    let slots = [
        indices.first().copied(),
        ctx.governor,
        ctx.object,
        ctx.prev_verb,
        ctx.prev_noun,
        ctx.prev_adj,
        ctx.next_noun,
    ];
    for (name, idx) in SLOTS.iter().zip(slots) {
        if let Some(t) = idx.and_then(|i| s.token(i)) {
            word_features(name, t, res, &mut base);
        }
    }
    let tlemma = indices.last().and_then(|&i| s.token(i)).map(Token::lemma_lower).unwrap_or_default();
    let mut out: Vec<String> = Vec::with_capacity(base.len() * 2);
    for f in base {
        out.push(format!("{f}{CONJUNCTION}{tlemma}"));
        out.push(f);
    }
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disambig::locate_neighbors;
    use crate::lexres::{Thesaurus, WordNet};
    use std::path::Path;

    fn vernon() -> Sentence {
        let rows = [
            ("Vernon", "Vernon", "PROPN", "NNP", 2, "nsubj"),
            ("works", "work", "VERB", "VBZ", 0, "root"),
            ("at", "at", "ADP", "IN", 5, "case"),
            ("the", "the", "DET", "DT", 5, "det"),
            ("restaurant", "restaurant", "NOUN", "NN", 2, "obl"),
        ];
        Sentence {
            id: "v".into(),
            doc_id: "d".into(),
            tokens: rows.iter().enumerate().map(|(i, r)| Token::new(i + 1, r.0, r.1, r.2, r.3, r.4, r.5)).collect(),
            expressions: vec![],
        }
    }

    fn resources() -> LexicalResourceBundle {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/wordnet");
        LexicalResourceBundle {
            wordnet: Some(WordNet::load(&dir).unwrap()),
            roget: Some(Thesaurus::parse("restaurant\tcat0189\n", Path::new("t")).unwrap()),
        }
    }

    #[test]
    fn governor_word_and_conjunction() {
        let s = vernon();
        let ctx = locate_neighbors(&s, &[3]);
        let f = extract_features(&s, &[3], &ctx, &LexicalResourceBundle::empty());
        assert!(f.contains(&"gov.word=works".to_string()));
        assert!(f.contains(&"gov.word=works∧tlemma=at".to_string()));
        assert!(f.contains(&"obj.suf3=ant".to_string()));
        assert!(f.contains(&"t.affix=spatial∧tlemma=at".to_string()) == f.contains(&"t.affix=spatial".to_string()));
    }

    #[test]
    fn resource_features_only_when_loaded() {
        let s = vernon();
        let ctx = locate_neighbors(&s, &[3]);
        let bare = extract_features(&s, &[3], &ctx, &LexicalResourceBundle::empty());
        assert!(!bare.iter().any(|f| f.contains(".wn") || f.contains(".roget")));
        let full = extract_features(&s, &[3], &ctx, &resources());
        assert!(full.contains(&"obj.wn.lexfile=noun.artifact".to_string()));
        assert!(full.contains(&"obj.roget=cat0189".to_string()));
        // everything without resources is still there
        assert!(bare.iter().all(|f| full.contains(f)));
    }

    #[test]
    fn rightmost_lemma_for_multiword() {
        let mut s = vernon();
        s.tokens[2] = Token::new(3, "out", "out", "ADP", "IN", 5, "case");
        s.tokens[3] = Token::new(4, "of", "of", "ADP", "IN", 5, "case");
        let ctx = locate_neighbors(&s, &[3, 4]);
        let f = extract_features(&s, &[3, 4], &ctx, &LexicalResourceBundle::empty());
        assert!(f.contains(&"t.word=out∧tlemma=of".to_string()));
        assert!(!f.iter().any(|x| x.ends_with("∧tlemma=out")));
    }

    #[test]
    fn deterministic() {
        let s = vernon();
        let ctx = locate_neighbors(&s, &[3]);
        let res = resources();
        assert_eq!(extract_features(&s, &[3], &ctx, &res), extract_features(&s, &[3], &ctx, &res));
    }

    #[test]
    fn affixes() {
        assert_eq!(affix_indicators("running"), vec!["gerund"]);
        assert!(affix_indicators("tonight").contains(&"temporal"));
        assert!(affix_indicators("at").is_empty());
        assert_eq!(capitalization("NASA"), "upper");
        assert_eq!(capitalization("Vernon"), "initial");
        assert_eq!(capitalization("iPhone"), "mixed");
        assert_eq!(capitalization("42"), "none");
    }
}
