//! Classifying every dictionary entry, normalizing margins into polarity
//! scores, and assembling the final lexicon.
//!
//! The default normalization is a linear clamp: with `M` the corpus-wide
//! maximum of `|phi_p| + |phi_n|`, each score is `max(0, phi) / M`. This
//! keeps both scores in `[0, 1]`, bounds their sum by 1, and preserves the
//! ranking of positive margins. The logarithmic formula is retained behind
//! [`NormalizationMode::PaperLog`] for comparison only: evaluated literally
//! it maps every margin to 0, because `log(phi / M) <= 0` wherever it is
//! defined.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::dictionary::Dictionary;
use crate::lexicon::{LexiconError, PolarityScores, SentiLexicon, Synset};
use crate::math;
use crate::textcat::{BinaryClassifier, Tokenizer};

/// Signed margins of one entry under the two classifiers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarginPair {
    pub positivity: f64,
    pub negativity: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum NormalizationMode {
    #[default]
    LinearClamp,
    PaperLog,
}

impl NormalizationMode {
    pub fn parse(s: &str) -> Option<NormalizationMode> {
        match s {
            "linear" => Some(NormalizationMode::LinearClamp),
            "paper-log" => Some(NormalizationMode::PaperLog),
            _ => None,
        }
    }

    pub fn code(self) -> &'static str {
        match self {
            NormalizationMode::LinearClamp => "linear",
            NormalizationMode::PaperLog => "paper-log",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScoreError {
    TokenizerMismatch,
    NoMargins,
    LengthMismatch { entries: usize, scores: usize },
    NonFiniteMargin { term: String },
    Lexicon(LexiconError),
}

impl fmt::Display for ScoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScoreError::TokenizerMismatch => {
                write!(f, "the two classifiers use different tokenizer kinds")
            }
            ScoreError::NoMargins => write!(f, "no margin pairs to normalize"),
            ScoreError::LengthMismatch { entries, scores } => {
                write!(f, "{entries} entries but {scores} score pairs")
            }
            ScoreError::NonFiniteMargin { term } => {
                write!(f, "non-finite margin for term {term:?}")
            }
            ScoreError::Lexicon(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ScoreError {}

impl From<LexiconError> for ScoreError {
    fn from(e: LexiconError) -> ScoreError {
        ScoreError::Lexicon(e)
    }
}

/// Margins for one dictionary entry. `empty_gloss` marks entries whose gloss
/// produced no usable features; their margins equal the classifier biases.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredEntry {
    pub entry_index: usize,
    pub margins: MarginPair,
    pub empty_gloss: bool,
}

/// Scores every dictionary entry (core members included) through both
/// classifiers. The gloss is the definition plus all usage examples.
pub fn score_all(
    dictionary: &Dictionary,
    positivity: &BinaryClassifier,
    negativity: &BinaryClassifier,
    tokenizer: &Tokenizer,
) -> Result<Vec<ScoredEntry>, ScoreError> {
    if positivity.config().tokenizer != negativity.config().tokenizer
        || positivity.config().tokenizer != tokenizer.kind()
    {
        return Err(ScoreError::TokenizerMismatch);
    }

    let mut scored = Vec::with_capacity(dictionary.len());
    for (entry_index, entry) in dictionary.entries().iter().enumerate() {
        let tokens = tokenizer.tokenize(&entry.full_gloss());
        let vector_p = positivity.vectorize_tokens(&tokens);
        let vector_n = negativity.vectorize_tokens(&tokens);
        let empty_gloss = tokens.is_empty() || (vector_p.is_zero() && vector_n.is_zero());
        let margins = MarginPair {
            positivity: positivity
                .predict_margin(&vector_p)
                .unwrap_or(positivity.bias()),
            negativity: negativity
                .predict_margin(&vector_n)
                .unwrap_or(negativity.bias()),
        };
        if !margins.positivity.is_finite() || !margins.negativity.is_finite() {
            return Err(ScoreError::NonFiniteMargin {
                term: entry.term.clone(),
            });
        }
        scored.push(ScoredEntry {
            entry_index,
            margins,
            empty_gloss,
        });
    }
    Ok(scored)
}

#[derive(Debug, Clone)]
pub struct NormalizedScores {
    pub scores: Vec<PolarityScores>,
    /// The global normalizer `M`. Zero means every margin was zero; all
    /// scores are then zero and the caller should warn.
    pub normalizer: f64,
}

/// Maps margin pairs into polarity scores with a single corpus-wide
/// normalizer.
pub fn normalize(pairs: &[MarginPair], mode: NormalizationMode) -> Result<NormalizedScores, ScoreError> {
    if pairs.is_empty() {
        return Err(ScoreError::NoMargins);
    }
    let normalizer = pairs
        .iter()
        .map(|p| math::abs(p.positivity) + math::abs(p.negativity))
        .fold(0.0_f64, f64::max);
    if normalizer == 0.0 {
        return Ok(NormalizedScores {
            scores: pairs.iter().map(|_| PolarityScores::neutral()).collect(),
            normalizer,
        });
    }
    let scores = pairs
        .iter()
        .map(|pair| {
            let (pos, neg) = match mode {
                NormalizationMode::LinearClamp => (
                    pair.positivity.max(0.0) / normalizer,
                    pair.negativity.max(0.0) / normalizer,
                ),
                NormalizationMode::PaperLog => (
                    paper_log(pair.positivity, normalizer),
                    paper_log(pair.negativity, normalizer),
                ),
            };
            PolarityScores::new(pos, neg).map_err(ScoreError::from)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(NormalizedScores { scores, normalizer })
}

/// The literal logarithmic formula: `log(phi / M)` where `phi > 0`, clamped
/// into `[0, 1]`; non-positive margins map to 0. Since `phi / M <= 1`, the
/// clamp always lands at 0 (or exactly 0 when `phi = M`).
fn paper_log(margin: f64, normalizer: f64) -> f64 {
    if margin > 0.0 {
        math::ln(margin / normalizer).clamp(0.0, 1.0)
    } else {
        0.0
    }
}

/// Builds the final lexicon: one synset per dictionary entry, ids assigned
/// as zero-padded decimals in entry order, the entry's term as the single
/// term, and the full gloss (control characters replaced by spaces).
pub fn assemble_lexicon(
    dictionary: &Dictionary,
    scores: &[PolarityScores],
) -> Result<SentiLexicon, ScoreError> {
    if dictionary.len() != scores.len() {
        return Err(ScoreError::LengthMismatch {
            entries: dictionary.len(),
            scores: scores.len(),
        });
    }
    let mut lexicon = SentiLexicon::new();
    for (index, (entry, &scores)) in dictionary.entries().iter().zip(scores).enumerate() {
        let gloss: String = entry
            .full_gloss()
            .chars()
            .map(|c| if matches!(c, '\t' | '\n' | '\r') { ' ' } else { c })
            .collect();
        let synset = Synset::new(
            entry.pos_tag,
            format!("{:08}", index + 1),
            scores,
            alloc::vec![entry.term.clone()],
            gloss,
        )?;
        lexicon.insert(synset)?;
    }
    Ok(lexicon)
}
