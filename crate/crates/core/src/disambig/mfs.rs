use std::collections::{BTreeMap, HashMap};

use super::DisambigError;
use crate::corpus::Sentence;
use crate::hierarchy::Construal;

/// Most frequent construal per target lemma, with a corpus-wide fallback.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MostFrequentTable {
    pub by_lemma: BTreeMap<String, Construal>,
    pub fallback: Construal,
}

fn argmax(counts: &HashMap<Construal, usize>) -> Construal {
    // highest count, then the lexicographically smallest pair
    counts
        .iter()
        .max_by(|(ca, na), (cb, nb)| na.cmp(nb).then_with(|| cb.cmp(ca)))
        .map(|(c, _)| c.clone())
        .expect("non-empty counts")
}

pub fn train_mfs(train: &[Sentence]) -> Result<MostFrequentTable, DisambigError> {
    let mut per_lemma: HashMap<String, HashMap<Construal, usize>> = HashMap::new();
    let mut global: HashMap<Construal, usize> = HashMap::new();
    for s in train {
        for (e, c) in s.targets() {
            *per_lemma.entry(s.lemma_of(&e.token_indices)).or_default().entry(c.clone()).or_default() += 1;
            *global.entry(c.clone()).or_default() += 1;
        }
    }
    if global.is_empty() {
        return Err(DisambigError::EmptyTraining);
    }
    Ok(MostFrequentTable {
        by_lemma: per_lemma.iter().map(|(l, c)| (l.clone(), argmax(c))).collect(),
        fallback: argmax(&global),
    })
}

impl MostFrequentTable {
    pub fn predict_lemma(&self, lemma: &str) -> &Construal {
        self.by_lemma.get(lemma).unwrap_or(&self.fallback)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{LexCat, LexicalExpression, Token};

    fn one(lemma: &str, c: Construal) -> Sentence {
        Sentence {
            id: "s".into(),
            doc_id: "d".into(),
            tokens: vec![Token::new(1, lemma, lemma, "ADP", "IN", 0, "root")],
            expressions: vec![LexicalExpression::with_construal(vec![1], LexCat::P, c)],
        }
    }

    #[test]
    fn argmax_per_lemma_with_lexicographic_ties() {
        let train = vec![
            one("at", Construal::congruent("Locus")),
            one("at", Construal::congruent("Locus")),
            one("at", Construal::congruent("Time")),
            one("for", Construal::congruent("Purpose")),
            one("for", Construal::congruent("Beneficiary")),
            one("during", Construal::congruent("Duration")),
        ];
        let t = train_mfs(&train).unwrap();
        assert_eq!(t.predict_lemma("at"), &Construal::congruent("Locus"));
        assert_eq!(t.predict_lemma("for"), &Construal::congruent("Beneficiary"));
        assert_eq!(t.predict_lemma("during"), &Construal::congruent("Duration"));
        assert_eq!(t.predict_lemma("unseen"), &Construal::congruent("Locus"));
    }

    #[test]
    fn empty_training_is_an_error() {
        assert!(matches!(train_mfs(&[]), Err(DisambigError::EmptyTraining)));
    }
}
