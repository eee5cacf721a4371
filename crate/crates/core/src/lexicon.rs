//! Synsets, polarity scores, and the lexicon container.
//!
//! A lexicon row carries six fields: part of speech, identifier, positive
//! score, negative score, the terms naming the concept, and a gloss. The
//! neutrality of a synset is not stored; it is derived as
//! `1 - (pos + neg)`, so the score invariant `pos + neg <= 1` keeps it
//! non-negative.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Slack for the `pos + neg <= 1` check, absorbing the rounding introduced
/// by 3-decimal serialization and by score arithmetic.
pub const SCORE_SUM_EPSILON: f64 = 1e-9;

/// Part-of-speech tag of a synset or dictionary entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum PosTag {
    Adjective,
    Verb,
    Noun,
    Adverb,
}

impl PosTag {
    /// Single-letter code used in the TSV format.
    pub fn code(self) -> &'static str {
        match self {
            PosTag::Adjective => "a",
            PosTag::Verb => "v",
            PosTag::Noun => "n",
            PosTag::Adverb => "r",
        }
    }

    /// Parses either the single-letter code or the full English name.
    pub fn parse(s: &str) -> Option<PosTag> {
        match s {
            "a" | "adj" | "adjective" => Some(PosTag::Adjective),
            "v" | "verb" => Some(PosTag::Verb),
            "n" | "noun" => Some(PosTag::Noun),
            "r" | "adv" | "adverb" => Some(PosTag::Adverb),
            _ => None,
        }
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Sentence-level opinion label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Label {
    Positive,
    Negative,
    Neutral,
}

impl Label {
    pub const ALL: [Label; 3] = [Label::Positive, Label::Negative, Label::Neutral];

    pub fn parse(s: &str) -> Option<Label> {
        match s {
            "pos" => Some(Label::Positive),
            "neg" => Some(Label::Negative),
            "neu" => Some(Label::Neutral),
            _ => None,
        }
    }

    pub fn code(self) -> &'static str {
        match self {
            Label::Positive => "pos",
            Label::Negative => "neg",
            Label::Neutral => "neu",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LexiconError {
    ScoreOutOfRange { value: f64 },
    ScoreSumExceedsOne { pos: f64, neg: f64 },
    EmptyId,
    EmptyTerms,
    InvalidTerm { term: String },
    GlossContainsControl,
    DuplicateId { id: String },
}

impl fmt::Display for LexiconError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LexiconError::ScoreOutOfRange { value } => {
                write!(f, "polarity score {value} outside [0, 1]")
            }
            LexiconError::ScoreSumExceedsOne { pos, neg } => {
                write!(f, "pos {pos} + neg {neg} exceeds 1")
            }
            LexiconError::EmptyId => write!(f, "synset id is empty"),
            LexiconError::EmptyTerms => write!(f, "synset has no terms"),
            LexiconError::InvalidTerm { term } => {
                write!(f, "term {term:?} is empty or contains whitespace")
            }
            LexiconError::GlossContainsControl => {
                write!(f, "gloss contains a tab or newline")
            }
            LexiconError::DuplicateId { id } => write!(f, "duplicate synset id {id:?}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for LexiconError {}

/// A validated pair of positive and negative scores.
///
/// Both scores lie in `[0, 1]` and their sum never exceeds 1 (within
/// [`SCORE_SUM_EPSILON`]), so the derived neutrality is always in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PolarityScores {
    pos: f64,
    neg: f64,
}

impl PolarityScores {
    pub fn new(pos: f64, neg: f64) -> Result<PolarityScores, LexiconError> {
        for value in [pos, neg] {
            if !(0.0..=1.0).contains(&value) {
                return Err(LexiconError::ScoreOutOfRange { value });
            }
        }
        if pos + neg > 1.0 + SCORE_SUM_EPSILON {
            return Err(LexiconError::ScoreSumExceedsOne { pos, neg });
        }
        Ok(PolarityScores { pos, neg })
    }

    /// The fully objective score pair (0, 0).
    pub const fn neutral() -> PolarityScores {
        PolarityScores { pos: 0.0, neg: 0.0 }
    }

    pub fn pos(self) -> f64 {
        self.pos
    }

    pub fn neg(self) -> f64 {
        self.neg
    }

    /// Derived neutrality: `1 - (pos + neg)`, clamped at 0 against the
    /// epsilon slack of the sum invariant.
    pub fn neutrality(self) -> f64 {
        (1.0 - (self.pos + self.neg)).max(0.0)
    }
}

/// One lexicon row.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Synset {
    pos_tag: PosTag,
    id: String,
    scores: PolarityScores,
    terms: Vec<String>,
    gloss: String,
}

impl Synset {
    /// Validates the row invariants: a nonempty id, at least one term, no
    /// whitespace inside a term (multi-word terms are underscore-joined),
    /// and no tab or newline in the gloss.
    pub fn new(
        pos_tag: PosTag,
        id: String,
        scores: PolarityScores,
        terms: Vec<String>,
        gloss: String,
    ) -> Result<Synset, LexiconError> {
        if id.trim().is_empty() {
            return Err(LexiconError::EmptyId);
        }
        if terms.is_empty() {
            return Err(LexiconError::EmptyTerms);
        }
        for term in &terms {
            if term.is_empty() || term.chars().any(char::is_whitespace) {
                return Err(LexiconError::InvalidTerm { term: term.clone() });
            }
        }
        if gloss.contains(['\t', '\n', '\r']) {
            return Err(LexiconError::GlossContainsControl);
        }
        Ok(Synset {
            pos_tag,
            id,
            scores,
            terms,
            gloss,
        })
    }

    pub fn pos_tag(&self) -> PosTag {
        self.pos_tag
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn scores(&self) -> PolarityScores {
        self.scores
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn gloss(&self) -> &str {
        &self.gloss
    }
}

/// An id-keyed, id-ordered collection of synsets.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SentiLexicon {
    synsets: BTreeMap<String, Synset>,
}

impl SentiLexicon {
    pub fn new() -> SentiLexicon {
        SentiLexicon::default()
    }

    pub fn insert(&mut self, synset: Synset) -> Result<(), LexiconError> {
        if self.synsets.contains_key(synset.id()) {
            return Err(LexiconError::DuplicateId {
                id: synset.id().into(),
            });
        }
        self.synsets.insert(synset.id().into(), synset);
        Ok(())
    }

    pub fn from_synsets<I>(synsets: I) -> Result<SentiLexicon, LexiconError>
    where
        I: IntoIterator<Item = Synset>,
    {
        let mut lexicon = SentiLexicon::new();
        for synset in synsets {
            lexicon.insert(synset)?;
        }
        Ok(lexicon)
    }

    pub fn get(&self, id: &str) -> Option<&Synset> {
        self.synsets.get(id)
    }

    /// Iterates synsets in ascending id order.
    pub fn iter(&self) -> impl Iterator<Item = &Synset> {
        self.synsets.values()
    }

    pub fn len(&self) -> usize {
        self.synsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.synsets.is_empty()
    }
}
