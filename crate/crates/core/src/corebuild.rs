//! Building the lexicon core: seed filtering, corpus counting, and score
//! recomputation.
//!
//! Translated seed scores are never kept: every core synset gets its scores
//! recomputed from corpus counts, and seeds whose term never occurs in the
//! corpus are skipped rather than carried over with untested scores.

use alloc::collections::BTreeSet;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::dictionary::Dictionary;
use crate::lexicon::{Label, PolarityScores, PosTag};
use crate::textcat::Tokenizer;

/// Seed filter threshold from the construction recipe.
pub const DEFAULT_SEED_FILTER_THRESHOLD: f64 = 0.4;

/// One row of the translated seed mapping.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedRecord {
    pub source_id: String,
    pub term: String,
    pub pos_tag: PosTag,
    pub scores: PolarityScores,
}

/// A corpus sentence with its opinion label.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnotatedSentence {
    pub text: String,
    pub label: Label,
}

/// A core synset: a seed that survived filtering, occurs in the corpus, and
/// has a dictionary entry; its scores are corpus-derived.
#[derive(Debug, Clone, PartialEq)]
pub struct CoreSynset {
    pub term: String,
    pub pos_tag: PosTag,
    pub scores: PolarityScores,
    pub gloss: String,
}

/// Occurrence counts for one term: occurrences inside positive-labeled
/// sentences, inside negative-labeled sentences, and in the whole corpus.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TermCounts {
    pub positive: u32,
    pub negative: u32,
    pub total: u32,
}

/// Per-term corpus counts. Terms never seen report zero counts.
#[derive(Debug, Clone, Default)]
pub struct CorpusCounts {
    counts: BTreeMap<String, TermCounts>,
}

impl CorpusCounts {
    pub fn get(&self, term: &str) -> TermCounts {
        self.counts.get(term).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, TermCounts)> {
        self.counts.iter().map(|(term, &counts)| (term.as_str(), counts))
    }
}

/// Counts occurrences of every vocabulary term in the corpus. Sentences are
/// word-based tokenized against the vocabulary, so multi-word terms match as
/// compounds; a term occurring twice in one sentence counts twice.
pub fn count_occurrences(
    corpus: &[AnnotatedSentence],
    vocabulary: &BTreeSet<String>,
) -> CorpusCounts {
    let tokenizer = Tokenizer::word_based(vocabulary.iter().cloned());
    let mut counts = CorpusCounts::default();
    for sentence in corpus {
        for token in tokenizer.tokenize(&sentence.text) {
            if !vocabulary.contains(&token) {
                continue;
            }
            let entry = counts.counts.entry(token).or_default();
            entry.total += 1;
            match sentence.label {
                Label::Positive => entry.positive += 1,
                Label::Negative => entry.negative += 1,
                Label::Neutral => {}
            }
        }
    }
    counts
}

/// Keeps the seeds whose positive or negative score strictly exceeds the
/// threshold.
pub fn filter_seed_candidates(records: &[SeedRecord], threshold: f64) -> Vec<SeedRecord> {
    records
        .iter()
        .filter(|r| r.scores.pos() > threshold || r.scores.neg() > threshold)
        .cloned()
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum CoreBuildError {
    NoOccurrences { term: String },
}

impl fmt::Display for CoreBuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreBuildError::NoOccurrences { term } => {
                write!(f, "term {term:?} never occurs in the corpus")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for CoreBuildError {}

/// Corpus-derived scores: occurrences in positive (negative) sentences over
/// total occurrences.
pub fn recompute_scores(counts: &CorpusCounts, term: &str) -> Result<PolarityScores, CoreBuildError> {
    let c = counts.get(term);
    if c.total == 0 {
        return Err(CoreBuildError::NoOccurrences { term: term.into() });
    }
    let total = f64::from(c.total);
    PolarityScores::new(f64::from(c.positive) / total, f64::from(c.negative) / total)
        .map_err(|_| unreachable!("counts satisfy positive + negative <= total"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkipReason {
    NoCorpusOccurrence,
    NoDictionaryEntry,
    DuplicateSense,
}

impl SkipReason {
    pub fn code(self) -> &'static str {
        match self {
            SkipReason::NoCorpusOccurrence => "no-corpus-occurrence",
            SkipReason::NoDictionaryEntry => "no-dictionary-entry",
            SkipReason::DuplicateSense => "duplicate-sense",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SkippedSeed {
    pub term: String,
    pub pos_tag: PosTag,
    pub reason: SkipReason,
}

#[derive(Debug, Clone)]
pub struct CoreBuildOutcome {
    pub core: Vec<CoreSynset>,
    pub skipped: Vec<SkippedSeed>,
    /// Seeds dropped by the polarity-strength filter before any other check.
    pub filtered_out: usize,
}

/// Runs the whole core-building step: filter the seeds, count corpus
/// occurrences, recompute scores, and attach dictionary glosses.
///
/// Filtered seeds that cannot become core synsets are reported, one skip
/// entry each, so `core.len() + skipped.len()` equals the number of seeds
/// that passed the filter. Checks apply in a fixed order per seed:
/// a `(term, pos_tag)` already processed is a duplicate sense regardless of
/// the earlier record's outcome, then corpus occurrence, then dictionary
/// presence. The gloss is the dictionary definition plus the first usage
/// example.
pub fn build_core(
    records: &[SeedRecord],
    corpus: &[AnnotatedSentence],
    dictionary: &Dictionary,
    threshold: f64,
) -> CoreBuildOutcome {
    let filtered = filter_seed_candidates(records, threshold);
    let filtered_out = records.len() - filtered.len();

    let vocabulary: BTreeSet<String> = filtered.iter().map(|r| r.term.clone()).collect();
    let counts = count_occurrences(corpus, &vocabulary);

    let mut core = Vec::new();
    let mut skipped = Vec::new();
    let mut seen: BTreeSet<(String, PosTag)> = BTreeSet::new();

    for record in &filtered {
        let key = (record.term.clone(), record.pos_tag);
        let skip = |reason| SkippedSeed {
            term: record.term.clone(),
            pos_tag: record.pos_tag,
            reason,
        };
        if !seen.insert(key) {
            skipped.push(skip(SkipReason::DuplicateSense));
            continue;
        }
        let scores = match recompute_scores(&counts, &record.term) {
            Ok(scores) => scores,
            Err(CoreBuildError::NoOccurrences { .. }) => {
                skipped.push(skip(SkipReason::NoCorpusOccurrence));
                continue;
            }
        };
        let entry = match dictionary.lookup(&record.term, record.pos_tag) {
            Some(entry) => entry,
            None => {
                skipped.push(skip(SkipReason::NoDictionaryEntry));
                continue;
            }
        };
        core.push(CoreSynset {
            term: record.term.clone(),
            pos_tag: record.pos_tag,
            scores,
            gloss: entry.core_gloss(),
        });
    }

    CoreBuildOutcome {
        core,
        skipped,
        filtered_out,
    }
}
