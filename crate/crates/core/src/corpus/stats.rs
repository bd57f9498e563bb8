use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::{LexCat, Sentence};

/// Split-level counts: documents, sentences and tokens, then annotated
/// targets broken down by category, then label-inventory coverage.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SplitStats {
    pub documents: usize,
    pub sentences: usize,
    pub tokens: usize,
    pub annotated_targets: usize,
    pub role_eq_function: usize,
    pub p_or_pp: usize,
    pub multiword_units: usize,
    pub infinitive_to: usize,
    pub genitive_clitic: usize,
    pub possessive_pronoun: usize,
    pub attested_labels: usize,
    pub unique_roles: usize,
    pub unique_functions: usize,
    pub unique_pairs: usize,
    pub unique_congruent_pairs: usize,
}

impl SplitStats {
    /// `(label, value)` rows in report order.
    pub fn rows(&self) -> Vec<(&'static str, usize)> {
        vec![
            ("Documents", self.documents),
            ("Sentences", self.sentences),
            ("Tokens", self.tokens),
            ("Annotated targets", self.annotated_targets),
            ("Role = function", self.role_eq_function),
            ("P or PP", self.p_or_pp),
            ("Multiword unit", self.multiword_units),
            ("Infinitive to", self.infinitive_to),
            ("Genitive clitic", self.genitive_clitic),
            ("Possessive pronoun", self.possessive_pronoun),
            ("Attested SNACS labels", self.attested_labels),
            ("Unique scene roles", self.unique_roles),
            ("Unique functions", self.unique_functions),
            ("Unique pairs", self.unique_pairs),
            ("Unique pairs with role = function", self.unique_congruent_pairs),
        ]
    }
}

impl fmt::Display for SplitStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (label, value) in self.rows() {
            writeln!(f, "{label}: {value}")?;
        }
        Ok(())
    }
}

/// Counts over `sentences`. Only units bearing a construal count as annotated targets.
pub fn corpus_stats(sentences: &[Sentence]) -> SplitStats {
    let mut st = SplitStats {
        sentences: sentences.len(),
        tokens: sentences.iter().map(|s| s.tokens.len()).sum(),
        documents: sentences.iter().map(|s| s.doc_id.as_str()).collect::<BTreeSet<_>>().len(),
        ..SplitStats::default()
    };
    let mut roles = BTreeSet::new();
    let mut functions = BTreeSet::new();
    let mut pairs = BTreeSet::new();
    for s in sentences {
        for (e, c) in s.targets() {
            st.annotated_targets += 1;
            if c.is_congruent() {
                st.role_eq_function += 1;
            }
            match e.lexcat {
                LexCat::P | LexCat::PP => {
                    st.p_or_pp += 1;
                    if e.is_multiword() {
                        st.multiword_units += 1;
                    }
                }
                LexCat::InfP => st.infinitive_to += 1,
                LexCat::Poss => st.genitive_clitic += 1,
                LexCat::PronPoss => st.possessive_pronoun += 1,
                _ => {}
            }
            roles.insert(c.role.as_str());
            functions.insert(c.function.as_str());
            pairs.insert((c.role.as_str(), c.function.as_str()));
        }
    }
    st.unique_roles = roles.len();
    st.unique_functions = functions.len();
    st.attested_labels = roles.union(&functions).count();
    st.unique_pairs = pairs.len();
    st.unique_congruent_pairs = pairs.iter().filter(|(r, f)| r == f).count();
    st
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{LexicalExpression, Token};
    use crate::hierarchy::Construal;

    #[test]
    fn no_expressions_means_zero_targets() {
        let s = Sentence {
            id: "a".into(),
            doc_id: "d".into(),
            tokens: vec![Token::new(1, "Hi", "hi", "INTJ", "UH", 0, "root")],
            expressions: vec![],
        };
        let st = corpus_stats(&[s]);
        assert_eq!((st.documents, st.sentences, st.tokens), (1, 1, 1));
        assert_eq!(st.annotated_targets, 0);
        assert_eq!(st.attested_labels, 0);
    }

    #[test]
    fn category_breakdown() {
        let tokens = (1..=6).map(|i| Token::new(i, "w", "w", "X", "X", 0, "root")).collect();
        let s = Sentence {
            id: "a".into(),
            doc_id: "d".into(),
            tokens,
            expressions: vec![
                LexicalExpression::with_construal(vec![1, 2], LexCat::PP, Construal::congruent("Locus")),
                LexicalExpression::with_construal(vec![3], LexCat::InfP, Construal::congruent("Purpose")),
                LexicalExpression::with_construal(vec![4], LexCat::PronPoss, Construal::new("SocialRel", "Gestalt")),
                LexicalExpression::with_construal(vec![5], LexCat::Poss, Construal::congruent("Possessor")),
                LexicalExpression::new(vec![6], LexCat::Disc, None),
            ],
        };
        let st = corpus_stats(&[s]);
        assert_eq!(st.annotated_targets, 4);
        assert_eq!(st.role_eq_function, 3);
        assert_eq!((st.p_or_pp, st.multiword_units), (1, 1));
        assert_eq!((st.infinitive_to, st.genitive_clitic, st.possessive_pronoun), (1, 1, 1));
        assert_eq!(st.p_or_pp + st.infinitive_to + st.genitive_clitic + st.possessive_pronoun, st.annotated_targets);
        assert_eq!((st.unique_roles, st.unique_functions, st.attested_labels), (4, 4, 5));
        assert_eq!((st.unique_pairs, st.unique_congruent_pairs), (4, 3));
        assert!(st.to_string().contains("Annotated targets: 4\n"));
    }
}
