//! Gloss tokenization, sparse features, and the margin classifier.

mod features;
mod svm;
mod tokenizer;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use features::{vectorize, FeatureVector, Vocabulary, Weighting};
pub use svm::{train, BinaryClassifier, GlossTrainingData, TrainingConfig, RFF_DIM};
pub use tokenizer::{Tokenizer, TokenizerKind};

use crate::expand::TrainingSets;

#[derive(Debug, Clone, PartialEq)]
pub enum TextcatError {
    EmptyVocabulary,
    EmptyClass { positive: bool },
    EmptyTrainingSide { classifier: &'static str, side: &'static str },
    TokenizerMismatch,
    DimensionMismatch { got: usize, expected: usize },
    InvalidGamma { gamma: f64 },
    NonPositiveField { field: &'static str },
    NonFiniteFeature,
    UnsortedFeatureEntries,
}

impl fmt::Display for TextcatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TextcatError::EmptyVocabulary => {
                write!(f, "no tokens in any training gloss")
            }
            TextcatError::EmptyClass { positive } => {
                let side = if *positive { "positive" } else { "negative" };
                write!(f, "the {side} class has no training glosses")
            }
            TextcatError::EmptyTrainingSide { classifier, side } => {
                write!(f, "{side} side of the {classifier} classifier is empty")
            }
            TextcatError::TokenizerMismatch => {
                write!(f, "tokenizer kind differs from the training config")
            }
            TextcatError::DimensionMismatch { got, expected } => {
                write!(f, "feature dimension {got} exceeds the expected {expected}")
            }
            TextcatError::InvalidGamma { gamma } => {
                write!(f, "gamma must be 0 or 1, got {gamma}")
            }
            TextcatError::NonPositiveField { field } => {
                write!(f, "training config field {field} must be positive")
            }
            TextcatError::NonFiniteFeature => write!(f, "non-finite feature value"),
            TextcatError::UnsortedFeatureEntries => {
                write!(f, "feature entries must have strictly ascending ids")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for TextcatError {}

/// Combines the expanded sets into the two binary problems. The positivity
/// classifier learns expanded-positive glosses against expanded-negative
/// plus neutral ones; the negativity classifier learns the mirror image.
/// Training instances are the glosses, not the terms.
pub fn build_training_sets(
    sets: &TrainingSets,
) -> Result<(GlossTrainingData, GlossTrainingData), TextcatError> {
    let pos: Vec<String> = sets.positive().map(|m| m.gloss.clone()).collect();
    let neg: Vec<String> = sets.negative().map(|m| m.gloss.clone()).collect();
    let neu: Vec<String> = sets.neutral().map(|m| m.gloss.clone()).collect();

    let ensure = |items: &Vec<String>, classifier, side| -> Result<(), TextcatError> {
        if items.is_empty() {
            Err(TextcatError::EmptyTrainingSide { classifier, side })
        } else {
            Ok(())
        }
    };
    ensure(&pos, "positivity", "positive")?;
    ensure(&neg, "negativity", "positive")?;

    let positivity = GlossTrainingData {
        positives: pos.clone(),
        negatives: neg.iter().chain(&neu).cloned().collect(),
    };
    let negativity = GlossTrainingData {
        positives: neg,
        negatives: pos.into_iter().chain(neu).collect(),
    };
    Ok((positivity, negativity))
}
