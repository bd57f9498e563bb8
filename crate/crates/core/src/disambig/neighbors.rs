use crate::corpus::{Sentence, Token};

/// Tokens that feed features for one target, all 1-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct NeighborContext {
    pub governor: Option<usize>,
    pub object: Option<usize>,
    pub prev_verb: Option<usize>,
    pub prev_noun: Option<usize>,
    pub prev_adj: Option<usize>,
    pub next_noun: Option<usize>,
}

const APPROXIMATORS: [&str; 4] = ["about", "around", "like", "over"];

fn head<'a>(s: &'a Sentence, t: &Token) -> Option<&'a Token> {
    s.token(t.head)
}

fn dependent_with<'a>(s: &'a Sentence, t: &Token, rels: &[&str]) -> Option<&'a Token> {
    s.dependents(t.index).find(|d| rels.contains(&d.deprel.as_str()))
}

fn is_noun(t: &Token) -> bool {
    matches!(t.upos.as_str(), "NOUN" | "PROPN")
}

/// Finds governor, object and linear neighbors of the target spanning `indices`.
///
/// Follows UD's object-headed analysis: the object of a `case`/`mark` target is
/// its head, and the governor is the head of that object. Predicative targets
/// (whose phrase has a copula) get no governor.
pub fn locate_neighbors(s: &Sentence, indices: &[usize]) -> NeighborContext {
    let mut ctx = NeighborContext::default();
    let (Some(&first), Some(&last)) = (indices.first(), indices.last()) else {
        return ctx;
    };
    let Some(t1) = s.token(first) else {
        return ctx;
    };
    let Some(tl) = s.token(last) else {
        return ctx;
    };
    let prel = t1.deprel.as_str();
    let subordinating = prel == "mark";

    let mut obj: Option<&Token> = None;
    if last > first && matches!(tl.deprel.as_str(), "case" | "mark") {
        // multiword preposition: the object hangs off the last word
        obj = head(s, tl);
    }
    let mut approximator = false;
    let top: &Token = if matches!(prel, "case" | "mark") {
        match head(s, t1) {
            Some(h) => {
                obj = obj.or(Some(h));
                h
            }
            None => t1,
        }
    } else if prel == "advmod" && t1.head > first && indices.len() == 1 && APPROXIMATORS.contains(&t1.lemma_lower().as_str()) {
        // approximators modify the measured expression, which acts as the object
        approximator = true;
        obj = head(s, t1);
        t1
    } else {
        t1
    };
    let mut gov = if approximator { None } else { head(s, top) };

    // stranded prepositions promoted to the head of an elided object
    if t1.xpos == "IN" && !matches!(prel, "case" | "mark") {
        if let Some(g) = gov {
            if matches!(g.deprel.as_str(), "acl:relcl" | "acl" | "advcl") {
                obj = head(s, g);
                if g.deprel == "advcl" {
                    obj = obj.and_then(|o| dependent_with(s, o, &["nsubj", "nsubj:pass", "csubj", "expl"]));
                }
            } else if prel == "acl:relcl" {
                obj = Some(g);
            }
        }
    }

    if let Some(cop) = dependent_with(s, top, &["cop"]) {
        if subordinating {
            obj = Some(cop);
        } else {
            gov = None;
        }
    }

    if let (Some(g), Some(o)) = (gov, obj) {
        if g.index == o.index {
            gov = None;
        }
    }
    let inside = |i: usize| indices.contains(&i);
    ctx.governor = gov.map(|g| g.index).filter(|&i| !inside(i));
    ctx.object = obj.map(|o| o.index).filter(|&i| !inside(i));

    let before = s.tokens[..first - 1].iter().rev();
    ctx.prev_verb = before.clone().find(|t| t.upos == "VERB").map(|t| t.index);
    ctx.prev_noun = before.clone().find(|t| is_noun(t)).map(|t| t.index);
    ctx.prev_adj = before.clone().find(|t| t.upos == "ADJ").map(|t| t.index);
    ctx.next_noun = s.tokens[last..].iter().find(|t| is_noun(t)).map(|t| t.index);
    ctx
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sent(rows: &[(&str, &str, &str, usize, &str)]) -> Sentence {
        Sentence {
            id: "s".into(),
            doc_id: "d".into(),
            tokens: rows
                .iter()
                .enumerate()
                .map(|(i, r)| Token::new(i + 1, r.0, &r.0.to_lowercase(), r.1, r.2, r.3, r.4))
                .collect(),
            expressions: vec![],
        }
    }

    #[test]
    fn works_at() {
        let s = sent(&[
            ("Vernon", "PROPN", "NNP", 2, "nsubj"),
            ("works", "VERB", "VBZ", 0, "root"),
            ("at", "ADP", "IN", 4, "case"),
            ("Grunnings", "PROPN", "NNP", 2, "obl"),
        ]);
        let c = locate_neighbors(&s, &[3]);
        assert_eq!((c.governor, c.object), (Some(2), Some(4)));
        assert_eq!((c.prev_verb, c.prev_noun, c.prev_adj, c.next_noun), (Some(2), Some(1), None, Some(4)));
    }

    #[test]
    fn predicative_has_no_governor() {
        let s = sent(&[
            ("Vernon", "PROPN", "NNP", 4, "nsubj"),
            ("is", "AUX", "VBZ", 4, "cop"),
            ("with", "ADP", "IN", 4, "case"),
            ("Grunnings", "PROPN", "NNP", 0, "root"),
        ]);
        let c = locate_neighbors(&s, &[3]);
        assert_eq!((c.governor, c.object), (None, Some(4)));
    }

    #[test]
    fn sentence_initial() {
        let s = sent(&[
            ("In", "ADP", "IN", 2, "case"),
            ("June", "PROPN", "NNP", 4, "obl"),
            ("we", "PRON", "PRP", 4, "nsubj"),
            ("left", "VERB", "VBD", 0, "root"),
        ]);
        let c = locate_neighbors(&s, &[1]);
        assert_eq!((c.governor, c.object, c.prev_verb, c.next_noun), (Some(4), Some(2), None, Some(2)));
    }

    #[test]
    fn multiword_and_possessives() {
        let s = sent(&[
            ("the", "DET", "DT", 2, "det"),
            ("cat", "NOUN", "NN", 0, "root"),
            ("in", "ADP", "IN", 7, "case"),
            ("front", "NOUN", "NN", 3, "fixed"),
            ("of", "ADP", "IN", 7, "case"),
            ("his", "PRON", "PRP$", 7, "nmod:poss"),
            ("car", "NOUN", "NN", 2, "nmod"),
        ]);
        let c = locate_neighbors(&s, &[3, 4, 5]);
        assert_eq!((c.governor, c.object), (Some(2), Some(7)));
        let s = sent(&[
            ("his", "PRON", "PRP$", 2, "nmod:poss"),
            ("fur", "NOUN", "NN", 0, "root"),
        ]);
        let c = locate_neighbors(&s, &[1]);
        assert_eq!((c.governor, c.object), (Some(2), None));
    }

    #[test]
    fn particle_and_approximator() {
        let s = sent(&[
            ("take", "VERB", "VB", 0, "root"),
            ("out", "ADP", "RP", 1, "compound:prt"),
            ("about", "ADV", "RB", 4, "advmod"),
            ("five", "NUM", "CD", 5, "nummod"),
            ("bags", "NOUN", "NNS", 1, "obj"),
        ]);
        let c = locate_neighbors(&s, &[2]);
        assert_eq!((c.governor, c.object), (Some(1), None));
        let c = locate_neighbors(&s, &[3]);
        assert_eq!((c.governor, c.object), (None, Some(4)));
    }
}
