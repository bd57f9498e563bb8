//! Heuristic selection of annotation targets, and scoring of selected targets.

mod candidates;
mod identify;
mod lexicon;
mod score;

pub use candidates::{candidate, is_candidate_pos, Candidate, Filter, InfinitivalRule};
pub use identify::{identify_targets, IdMode, IdOptions, TargetIdentifier, TargetPrediction};
pub use lexicon::{build_lexicons, Attestation, LexiconError, MweStats, TargetLexicons};
pub(crate) use score::align;
pub use score::{check_alignment, score_targets, AlignmentError, SentenceTargets, TargetScores};

use crate::corpus::Sentence;

/// Runs identification over every sentence.
pub fn identify_corpus(sentences: &[Sentence], lex: &TargetLexicons, options: IdOptions) -> Vec<SentenceTargets> {
    let ident = TargetIdentifier::new(lex, options);
    sentences
        .iter()
        .map(|s| SentenceTargets { sent_id: s.id.clone(), targets: ident.identify(s) })
        .collect()
}
