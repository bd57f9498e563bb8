//! Deterministic synthetic corpora shaped like the real annotation: the
//! label of an adposition depends on its object, so context helps.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use snacs::corpus::{Annotation, LexCat, LexicalExpression, Sentence, SpecialLabel, Token};
use snacs::Construal;

#[derive(Clone, Copy, PartialEq)]
enum Kind {
    Place,
    Time,
    Person,
    Tool,
    Subject,
    Span,
}

const NOUNS: &[(&str, Kind)] = &[
    ("cafe", Kind::Place),
    ("office", Kind::Place),
    ("park", Kind::Place),
    ("station", Kind::Place),
    ("noon", Kind::Time),
    ("night", Kind::Time),
    ("weekend", Kind::Time),
    ("morning", Kind::Time),
    ("friend", Kind::Person),
    ("manager", Kind::Person),
    ("neighbor", Kind::Person),
    ("hammer", Kind::Tool),
    ("phone", Kind::Tool),
    ("menu", Kind::Subject),
    ("price", Kind::Subject),
    ("service", Kind::Subject),
    ("hours", Kind::Span),
    ("weeks", Kind::Span),
];

const VERBS: &[&str] = &["met", "waited", "worked", "talked", "stayed", "called"];
const SUBJECTS: &[&str] = &["we", "they", "I", "she"];

/// Label for `prep` with an object of `kind`, if the pair is grammatical here.
fn label(prep: &str, kind: Kind) -> Option<Construal> {
    use Kind::*;
    Some(match (prep, kind) {
        ("at", Place) | ("in", Place) | ("on", Place) => Construal::congruent("Locus"),
        ("at", Time) | ("on", Time) => Construal::congruent("Time"),
        ("in", Time) => Construal::new("Time", "Locus"),
        ("to", Place) => Construal::congruent("Goal"),
        ("to", Person) => Construal::congruent("Recipient"),
        ("from", Place) => Construal::congruent("Source"),
        ("from", Person) => Construal::new("Originator", "Source"),
        ("for", Person) => Construal::congruent("Beneficiary"),
        ("for", Span) => Construal::congruent("Duration"),
        ("for", Subject) => Construal::new("Topic", "Beneficiary"),
        ("with", Person) => Construal::congruent("Accompanier"),
        ("with", Tool) => Construal::congruent("Instrument"),
        ("with", Subject) => Construal::new("Topic", "Accompanier"),
        ("about", Subject) | ("about", Person) => Construal::congruent("Topic"),
        ("by", Place) => Construal::congruent("Locus"),
        ("by", Time) => Construal::new("EndTime", "Time"),
        _ => return None,
    })
}

const PREPS: &[&str] = &["at", "in", "on", "to", "from", "for", "with", "about", "by"];

struct Builder {
    tokens: Vec<Token>,
    expressions: Vec<LexicalExpression>,
}

impl Builder {
    fn new() -> Builder {
        Builder { tokens: Vec::new(), expressions: Vec::new() }
    }

    fn tok(&mut self, form: &str, lemma: &str, upos: &str, xpos: &str, head: usize, deprel: &str) -> usize {
        let i = self.tokens.len() + 1;
        self.tokens.push(Token::new(i, form, lemma, upos, xpos, head, deprel));
        i
    }

    fn unit(&mut self, idx: Vec<usize>, lexcat: LexCat, ann: Option<Annotation>) {
        self.expressions.push(LexicalExpression::new(idx, lexcat, ann));
    }

    fn finish(mut self, id: String, doc: String) -> Sentence {
        self.expressions.sort_by_key(|e| e.token_indices[0]);
        Sentence { id, doc_id: doc, tokens: self.tokens, expressions: self.expressions }
    }
}

fn pick<'a, T>(rng: &mut ChaCha8Rng, xs: &'a [T]) -> &'a T {
    xs.choose(rng).expect("non-empty")
}

fn capitalize(w: &str) -> String {
    let mut c = w.chars();
    c.next().map(|f| f.to_uppercase().chain(c).collect()).unwrap_or_default()
}

/// `subj verb prep the noun [.]`, with occasional label noise and UNK.
fn prepositional(rng: &mut ChaCha8Rng, b: &mut Builder) {
    let (prep, noun, kind, c) = loop {
        let prep = *pick(rng, PREPS);
        let &(noun, kind) = pick(rng, NOUNS);
        if let Some(c) = label(prep, kind) {
            break (prep, noun, kind, c);
        }
    };
    let _ = kind;
    let subj = *pick(rng, SUBJECTS);
    let verb = *pick(rng, VERBS);
    b.tok(&capitalize(subj), &subj.to_lowercase(), "PRON", "PRP", 2, "nsubj");
    b.tok(verb, verb, "VERB", "VBD", 0, "root");
    let p = b.tok(prep, prep, "ADP", "IN", 5, "case");
    b.tok("the", "the", "DET", "DT", 5, "det");
    b.tok(noun, noun, "NOUN", "NN", 2, "obl");
    b.tok(".", ".", "PUNCT", ".", 2, "punct");
    let ann = match rng.gen_range(0..100) {
        0..=1 => Annotation::Special(SpecialLabel::Unk),
        2..=6 => Annotation::Construal(Construal::congruent("Locus")),
        _ => Annotation::Construal(c),
    };
    b.unit(vec![p], LexCat::P, Some(ann));
}

/// `my noun verb .` or `the person 's noun verb .`
fn possessive(rng: &mut ChaCha8Rng, b: &mut Builder) {
    let &(noun, kind) = pick(rng, NOUNS);
    let c = if kind == Kind::Person { Construal::new("SocialRel", "Gestalt") } else { Construal::congruent("Possessor") };
    if rng.gen_bool(0.5) {
        let pron = *pick(rng, &["my", "our", "their", "her"]);
        let p = b.tok(&capitalize(pron), pron, "PRON", "PRP$", 2, "nmod:poss");
        b.tok(noun, noun, "NOUN", "NN", 3, "nsubj");
        b.tok("left", "leave", "VERB", "VBD", 0, "root");
        b.unit(vec![p], LexCat::PronPoss, Some(Annotation::Construal(c)));
    } else {
        b.tok("The", "the", "DET", "DT", 2, "det");
        b.tok("manager", "manager", "NOUN", "NN", 4, "nmod:poss");
        let p = b.tok("'s", "'s", "PART", "POS", 2, "case");
        b.tok(noun, noun, "NOUN", "NN", 5, "nsubj");
        b.tok("left", "leave", "VERB", "VBD", 0, "root");
        b.unit(vec![p], LexCat::Poss, Some(Annotation::Construal(c)));
    }
    b.tok(".", ".", "PUNCT", ".", b.tokens.iter().position(|t| t.deprel == "root").unwrap() + 1, "punct");
}

/// `we came to help` (purpose) or `we want to leave` (outside the inventory).
fn infinitive(rng: &mut ChaCha8Rng, b: &mut Builder) {
    let purpose = rng.gen_bool(0.5);
    b.tok("We", "we", "PRON", "PRP", 2, "nsubj");
    if purpose {
        b.tok("came", "come", "VERB", "VBD", 0, "root");
        let to = b.tok("to", "to", "PART", "TO", 4, "mark");
        b.tok("help", "help", "VERB", "VB", 2, "advcl");
        b.unit(vec![to], LexCat::InfP, Some(Annotation::Construal(Construal::congruent("Purpose"))));
    } else {
        b.tok("want", "want", "VERB", "VBP", 0, "root");
        let to = b.tok("to", "to", "PART", "TO", 4, "mark");
        b.tok("leave", "leave", "VERB", "VB", 2, "xcomp");
        b.unit(vec![to], LexCat::Other, Some(Annotation::Special(SpecialLabel::NonSnacsInf)));
    }
    b.tok(".", ".", "PUNCT", ".", 2, "punct");
}

/// Multiword adpositions, a discourse expression and a particle verb.
fn multiword(rng: &mut ChaCha8Rng, b: &mut Builder) {
    match rng.gen_range(0..4) {
        0 => {
            b.tok("We", "we", "PRON", "PRP", 2, "nsubj");
            b.tok("left", "leave", "VERB", "VBD", 0, "root");
            let a = b.tok("because", "because", "ADP", "IN", 5, "case");
            let o = b.tok("of", "of", "ADP", "IN", 3, "fixed");
            b.tok("rain", "rain", "NOUN", "NN", 2, "obl");
            b.unit(vec![a, o], LexCat::P, Some(Annotation::Construal(Construal::congruent("Explanation"))));
        }
        1 => {
            b.tok("We", "we", "PRON", "PRP", 2, "nsubj");
            b.tok("waited", "wait", "VERB", "VBD", 0, "root");
            let i = b.tok("in", "in", "ADP", "IN", 6, "case");
            let f = b.tok("front", "front", "NOUN", "NN", 3, "fixed");
            let o = b.tok("of", "of", "ADP", "IN", 3, "fixed");
            b.tok("cafe", "cafe", "NOUN", "NN", 2, "obl");
            b.unit(vec![i, f, o], LexCat::P, Some(Annotation::Construal(Construal::congruent("Locus"))));
        }
        2 => {
            let o = b.tok("Of", "of", "ADP", "IN", 2, "case");
            let c = b.tok("course", "course", "NOUN", "NN", 5, "obl");
            b.tok("we", "we", "PRON", "PRP", 5, "nsubj");
            b.tok("will", "will", "AUX", "MD", 5, "aux");
            b.tok("stay", "stay", "VERB", "VB", 0, "root");
            b.unit(vec![o, c], LexCat::Disc, Some(Annotation::Special(SpecialLabel::DiscExpr)));
        }
        _ => {
            b.tok("They", "they", "PRON", "PRP", 2, "nsubj");
            let v = b.tok("looked", "look", "VERB", "VBD", 0, "root");
            let u = b.tok("up", "up", "ADP", "RP", 2, "compound:prt");
            b.tok("prices", "price", "NOUN", "NNS", 2, "obj");
            b.unit(vec![v, u], LexCat::Other, None);
        }
    }
    let root = b.tokens.iter().position(|t| t.deprel == "root").unwrap() + 1;
    b.tok(".", ".", "PUNCT", ".", root, "punct");
}

/// `n` sentences in documents of five, ids `<prefix>-NNN-MMMM`.
pub fn synthetic_corpus(seed: u64, n: usize, prefix: &str) -> Vec<Sentence> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let mut b = Builder::new();
            match rng.gen_range(0..10) {
                0..=5 => prepositional(&mut rng, &mut b),
                6 => possessive(&mut rng, &mut b),
                7 => infinitive(&mut rng, &mut b),
                _ => multiword(&mut rng, &mut b),
            }
            let doc = format!("{prefix}-{:03}", i / 5);
            b.finish(format!("{doc}-{:04}", i % 5 + 1), doc)
        })
        .collect()
}

/// Train, dev and test splits drawn with different seeds.
pub fn splits(seed: u64) -> (Vec<Sentence>, Vec<Sentence>, Vec<Sentence>) {
    (
        synthetic_corpus(seed, 400, "train"),
        synthetic_corpus(seed + 1, 100, "dev"),
        synthetic_corpus(seed + 2, 100, "test"),
    )
}
