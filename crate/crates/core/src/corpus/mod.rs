//! Annotated corpus: tokens with morphosyntax, plus the adposition and
//! possessive units annotated on top of them.

mod format;
mod stats;
pub mod streusle;
mod validate;

use std::fmt;
use std::str::FromStr;

use crate::hierarchy::Construal;

pub use format::{parse_corpus, read_corpus_file, serialize_corpus, write_corpus_file, ParseError};
pub use stats::{corpus_stats, SplitStats};
pub use validate::{check_structure, validate_corpus, Violation, ViolationKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    /// 1-based position in the sentence.
    pub index: usize,
    pub form: String,
    pub lemma: String,
    pub upos: String,
    pub xpos: String,
    pub feats: String,
    /// Index of the syntactic head, 0 for the root.
    pub head: usize,
    pub deprel: String,
    pub deps: String,
    pub misc: String,
    pub ner: Option<String>,
}

impl Token {
    /// A token with empty morphology columns, handy for building sentences in code.
    pub fn new(index: usize, form: &str, lemma: &str, upos: &str, xpos: &str, head: usize, deprel: &str) -> Token {
        Token {
            index,
            form: form.to_string(),
            lemma: lemma.to_string(),
            upos: upos.to_string(),
            xpos: xpos.to_string(),
            feats: "_".to_string(),
            head,
            deprel: deprel.to_string(),
            deps: "_".to_string(),
            misc: "_".to_string(),
            ner: None,
        }
    }

    /// Lowercased lemma, falling back to the form when the lemma is missing.
    pub fn lemma_lower(&self) -> String {
        if self.lemma.is_empty() || self.lemma == "_" {
            self.form.to_lowercase()
        } else {
            self.lemma.to_lowercase()
        }
    }

    /// The deprel without its subtype, e.g. `nmod` for `nmod:poss`.
    pub fn base_deprel(&self) -> &str {
        self.deprel.split(':').next().unwrap_or("")
    }
}

/// Lexical category of an annotated unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LexCat {
    P,
    PP,
    InfP,
    Poss,
    PronPoss,
    Disc,
    Cconj,
    Other,
}

impl LexCat {
    pub const ALL: [LexCat; 8] = [
        LexCat::P,
        LexCat::PP,
        LexCat::InfP,
        LexCat::Poss,
        LexCat::PronPoss,
        LexCat::Disc,
        LexCat::Cconj,
        LexCat::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LexCat::P => "P",
            LexCat::PP => "PP",
            LexCat::InfP => "INF.P",
            LexCat::Poss => "POSS",
            LexCat::PronPoss => "PRON.POSS",
            LexCat::Disc => "DISC",
            LexCat::Cconj => "CCONJ",
            LexCat::Other => "OTHER",
        }
    }

    /// Whether units of this category take a supersense construal.
    pub fn is_snacs(self) -> bool {
        matches!(self, LexCat::P | LexCat::PP | LexCat::InfP | LexCat::Poss | LexCat::PronPoss)
    }
}

impl fmt::Display for LexCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LexCat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LexCat::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown lexical category `{s}`"))
    }
}

/// Markers for units that do not receive a supersense construal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpecialLabel {
    /// Infinitive marker outside the scope of the inventory.
    NonSnacsInf,
    /// Preposition-initial discourse expression.
    DiscExpr,
    /// Coordinating conjunction.
    Coord,
    /// Opaque possessive slot in an idiom.
    OpaquePoss,
    /// Unintelligible, incomplete or nonnative usage.
    Unk,
}

impl SpecialLabel {
    pub const ALL: [SpecialLabel; 5] = [
        SpecialLabel::NonSnacsInf,
        SpecialLabel::DiscExpr,
        SpecialLabel::Coord,
        SpecialLabel::OpaquePoss,
        SpecialLabel::Unk,
    ];

    /// The code used in corpus files.
    pub fn code(self) -> &'static str {
        match self {
            SpecialLabel::NonSnacsInf => "`i",
            SpecialLabel::DiscExpr => "`d",
            SpecialLabel::Coord => "`c",
            SpecialLabel::OpaquePoss => "`$",
            SpecialLabel::Unk => "??",
        }
    }

    pub fn from_code(code: &str) -> Option<SpecialLabel> {
        SpecialLabel::ALL.into_iter().find(|s| s.code() == code)
    }

    pub fn name(self) -> &'static str {
        match self {
            SpecialLabel::NonSnacsInf => "NONSNACS_INF",
            SpecialLabel::DiscExpr => "DISC_EXPR",
            SpecialLabel::Coord => "COORD",
            SpecialLabel::OpaquePoss => "OPAQUE_POSS",
            SpecialLabel::Unk => "UNK",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Annotation {
    Construal(Construal),
    Special(SpecialLabel),
}

/// A single- or multiword unit; token indices may have gaps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexicalExpression {
    pub token_indices: Vec<usize>,
    pub lexcat: LexCat,
    pub annotation: Option<Annotation>,
}

impl LexicalExpression {
    pub fn new(token_indices: Vec<usize>, lexcat: LexCat, annotation: Option<Annotation>) -> Self {
        LexicalExpression { token_indices, lexcat, annotation }
    }

    pub fn with_construal(token_indices: Vec<usize>, lexcat: LexCat, c: Construal) -> Self {
        Self::new(token_indices, lexcat, Some(Annotation::Construal(c)))
    }

    pub fn construal(&self) -> Option<&Construal> {
        match &self.annotation {
            Some(Annotation::Construal(c)) => Some(c),
            _ => None,
        }
    }

    pub fn special(&self) -> Option<SpecialLabel> {
        match &self.annotation {
            Some(Annotation::Special(s)) => Some(*s),
            _ => None,
        }
    }

    pub fn is_multiword(&self) -> bool {
        self.token_indices.len() > 1
    }

    pub fn has_gap(&self) -> bool {
        self.token_indices.windows(2).any(|w| w[1] != w[0] + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub id: String,
    pub doc_id: String,
    pub tokens: Vec<Token>,
    pub expressions: Vec<LexicalExpression>,
}

impl Sentence {
    /// Token at 1-based `index`.
    pub fn token(&self, index: usize) -> Option<&Token> {
        index.checked_sub(1).and_then(|i| self.tokens.get(i))
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Space-joined lowercased lemmas of the given tokens.
    pub fn lemma_of(&self, indices: &[usize]) -> String {
        indices
            .iter()
            .filter_map(|&i| self.token(i))
            .map(Token::lemma_lower)
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Expressions bearing a construal, in sentence order.
    pub fn targets(&self) -> impl Iterator<Item = (&LexicalExpression, &Construal)> {
        self.expressions.iter().filter_map(|e| e.construal().map(|c| (e, c)))
    }

    /// Direct dependents of token `index`.
    pub fn dependents(&self, index: usize) -> impl Iterator<Item = &Token> {
        self.tokens.iter().filter(move |t| t.head == index)
    }
}
