use std::collections::HashMap;
use std::fmt;

use super::{Annotation, Sentence, SpecialLabel};
use crate::hierarchy::{ConstrualRejection, Hierarchy, RoleOnly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    TokenIndex,
    Head,
    ExpressionIndices,
    Overlap,
    LexcatAnnotation,
    UnknownLabel,
    RoleOnly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub sent_id: String,
    pub kind: ViolationKind,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.sent_id, self.message)
    }
}

/// Invariants that do not depend on the label inventory.
pub fn check_structure(s: &Sentence) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |kind, message: String| out.push(Violation { sent_id: s.id.clone(), kind, message });
    let n = s.tokens.len();

    for (i, t) in s.tokens.iter().enumerate() {
        if t.index != i + 1 {
            push(ViolationKind::TokenIndex, format!("token at position {} has id {}", i + 1, t.index));
        }
        if t.head > n {
            push(ViolationKind::Head, format!("token {} has head {} beyond sentence length {n}", t.index, t.head));
        } else if t.head == t.index {
            push(ViolationKind::Head, format!("token {} is its own head", t.index));
        }
    }

    let mut owner: HashMap<usize, usize> = HashMap::new();
    for (ei, e) in s.expressions.iter().enumerate() {
        let idx = &e.token_indices;
        if idx.is_empty() {
            push(ViolationKind::ExpressionIndices, format!("expression {} has no tokens", ei + 1));
            continue;
        }
        if idx.windows(2).any(|w| w[0] >= w[1]) {
            push(ViolationKind::ExpressionIndices, format!("expression {idx:?} indices are not strictly increasing"));
        }
        if let Some(bad) = idx.iter().find(|&&t| t == 0 || t > n) {
            push(ViolationKind::ExpressionIndices, format!("expression {idx:?} refers to missing token {bad}"));
        }
        for &t in idx {
            if let Some(&other) = owner.get(&t) {
                if other != ei {
                    push(
                        ViolationKind::Overlap,
                        format!(
                            "expressions {:?} and {idx:?} share token {t}",
                            s.expressions[other].token_indices
                        ),
                    );
                }
            } else {
                owner.insert(t, ei);
            }
        }

        let ok = match (&e.annotation, e.lexcat.is_snacs()) {
            (Some(Annotation::Construal(_)), snacs) => snacs,
            (Some(Annotation::Special(SpecialLabel::Unk)), snacs) => snacs,
            (Some(Annotation::Special(_)), snacs) => !snacs,
            (None, snacs) => !snacs,
        };
        if !ok {
            let what = match &e.annotation {
                None => "no supersense".to_string(),
                Some(Annotation::Construal(c)) => format!("construal {c}"),
                Some(Annotation::Special(sp)) => format!("special label {}", sp.name()),
            };
            push(ViolationKind::LexcatAnnotation, format!("expression {idx:?} with category {} has {what}", e.lexcat));
        }
    }
    out
}

/// All structural violations plus construal checks against `h`. Empty means valid.
pub fn validate_corpus(sentences: &[Sentence], h: &Hierarchy, role_only: &RoleOnly) -> Vec<Violation> {
    let mut out = Vec::new();
    for s in sentences {
        out.extend(check_structure(s));
        for e in &s.expressions {
            if let Some(c) = e.construal() {
                if let Err(rej) = h.validate_construal(c, role_only) {
                    let kind = match rej {
                        ConstrualRejection::RoleOnlyFunction(_) => ViolationKind::RoleOnly,
                        _ => ViolationKind::UnknownLabel,
                    };
                    out.push(Violation {
                        sent_id: s.id.clone(),
                        kind,
                        message: format!("expression {:?}: {rej}", e.token_indices),
                    });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{LexCat, LexicalExpression, Token};
    use crate::hierarchy::Construal;

    fn sentence(exprs: Vec<LexicalExpression>) -> Sentence {
        Sentence {
            id: "t1".into(),
            doc_id: "d".into(),
            tokens: (1..=5).map(|i| Token::new(i, "w", "w", "ADP", "IN", if i == 1 { 0 } else { 1 }, "dep")).collect(),
            expressions: exprs,
        }
    }

    #[test]
    fn congruent_locus_is_fine() {
        let s = sentence(vec![LexicalExpression::with_construal(vec![2], LexCat::P, Construal::congruent("Locus"))]);
        assert!(validate_corpus(&[s], &Hierarchy::bundled(), &RoleOnly::default()).is_empty());
    }

    #[test]
    fn lowercase_label_is_unknown() {
        let s = sentence(vec![LexicalExpression::with_construal(
            vec![2],
            LexCat::P,
            Construal::new("temporal", "Time"),
        )]);
        let v = validate_corpus(&[s], &Hierarchy::bundled(), &RoleOnly::default());
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::UnknownLabel);
    }

    #[test]
    fn overlapping_expressions() {
        let s = sentence(vec![
            LexicalExpression::with_construal(vec![2, 3], LexCat::PP, Construal::congruent("Locus")),
            LexicalExpression::with_construal(vec![3, 4], LexCat::PP, Construal::congruent("Locus")),
        ]);
        let v = validate_corpus(&[s], &Hierarchy::bundled(), &RoleOnly::default());
        assert_eq!(v.iter().map(|v| v.kind).collect::<Vec<_>>(), vec![ViolationKind::Overlap]);
    }

    #[test]
    fn category_annotation_mismatch() {
        let s = sentence(vec![
            LexicalExpression::new(vec![2], LexCat::P, None),
            LexicalExpression::with_construal(vec![3], LexCat::Disc, Construal::congruent("Locus")),
            LexicalExpression::new(vec![4], LexCat::P, Some(Annotation::Special(SpecialLabel::Unk))),
            LexicalExpression::new(vec![5], LexCat::Other, Some(Annotation::Special(SpecialLabel::NonSnacsInf))),
        ]);
        let v = check_structure(&s);
        assert_eq!(v.len(), 2);
        assert!(v.iter().all(|v| v.kind == ViolationKind::LexcatAnnotation));
    }

    #[test]
    fn role_only_function() {
        let s = sentence(vec![LexicalExpression::with_construal(
            vec![2],
            LexCat::P,
            Construal::new("Theme", "Experiencer"),
        )]);
        let v = validate_corpus(&[s], &Hierarchy::bundled(), &RoleOnly::new(["Experiencer"]));
        assert_eq!(v[0].kind, ViolationKind::RoleOnly);
    }

    #[test]
    fn self_head_and_out_of_range() {
        let mut s = sentence(vec![]);
        s.tokens[2].head = 3;
        s.tokens[3].head = 17;
        let kinds: Vec<_> = check_structure(&s).into_iter().map(|v| v.kind).collect();
        assert_eq!(kinds, vec![ViolationKind::Head, ViolationKind::Head]);
    }
}
