//! Dictionary entries and the indexed dictionary collection.
//!
//! Entries are keyed by `(term, pos_tag)`. Synonym/antonym links are plain
//! term references that may optionally carry a part of speech; a link without
//! one matches any part of speech of that term. Links naming terms absent
//! from the dictionary are kept on the entry but never resolve.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::lexicon::PosTag;

/// A synonym or antonym reference from one entry to another term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Link {
    pub term: String,
    pub pos_tag: Option<PosTag>,
}

impl Link {
    pub fn any_pos(term: impl Into<String>) -> Link {
        Link {
            term: term.into(),
            pos_tag: None,
        }
    }

    pub fn with_pos(term: impl Into<String>, pos_tag: PosTag) -> Link {
        Link {
            term: term.into(),
            pos_tag: Some(pos_tag),
        }
    }

    /// Whether this link refers to the given `(term, pos_tag)` key.
    pub fn matches(&self, term: &str, pos_tag: PosTag) -> bool {
        self.term == term && self.pos_tag.map_or(true, |p| p == pos_tag)
    }
}

/// One parsed dictionary record.
#[derive(Debug, Clone, PartialEq)]
pub struct DictionaryEntry {
    pub term: String,
    pub pos_tag: PosTag,
    pub synonyms: Vec<Link>,
    pub antonyms: Vec<Link>,
    pub definition: String,
    pub examples: Vec<String>,
}

impl DictionaryEntry {
    /// The gloss used when classifying this entry: the definition followed
    /// by every usage example, joined with "; ".
    pub fn full_gloss(&self) -> String {
        let mut gloss = self.definition.clone();
        for example in &self.examples {
            gloss.push_str("; ");
            gloss.push_str(example);
        }
        gloss
    }

    /// The gloss attached to a core synset built from this entry: the
    /// definition plus the first usage example, if any.
    pub fn core_gloss(&self) -> String {
        match self.examples.first() {
            Some(example) => {
                let mut gloss = self.definition.clone();
                gloss.push_str("; ");
                gloss.push_str(example);
                gloss
            }
            None => self.definition.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DictionaryError {
    EmptyTerm { index: usize },
    EmptyDefinition { index: usize, term: String },
    DuplicateEntry { term: String, pos_tag: PosTag },
}

impl fmt::Display for DictionaryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DictionaryError::EmptyTerm { index } => {
                write!(f, "entry #{index} has an empty term")
            }
            DictionaryError::EmptyDefinition { index, term } => {
                write!(f, "entry #{index} ({term:?}) has an empty definition")
            }
            DictionaryError::DuplicateEntry { term, pos_tag } => {
                write!(f, "duplicate entry for ({term:?}, {pos_tag})")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for DictionaryError {}

/// The dictionary: entries in file order plus lookup indexes.
#[derive(Debug, Clone)]
pub struct Dictionary {
    entries: Vec<DictionaryEntry>,
    by_key: BTreeMap<(String, PosTag), usize>,
    by_term: BTreeMap<String, Vec<usize>>,
    headwords: BTreeSet<String>,
}

impl Dictionary {
    /// Builds the indexes. Every `(term, pos_tag)` pair must be unique so
    /// that links resolve to at most one entry per part of speech; entries
    /// must have a nonempty term and definition and no self-loops (the
    /// parser drops self-loops before construction).
    pub fn new(entries: Vec<DictionaryEntry>) -> Result<Dictionary, DictionaryError> {
        let mut by_key = BTreeMap::new();
        let mut by_term: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        let mut headwords = BTreeSet::new();
        for (index, entry) in entries.iter().enumerate() {
            if entry.term.trim().is_empty() {
                return Err(DictionaryError::EmptyTerm { index: index + 1 });
            }
            if entry.definition.trim().is_empty() {
                return Err(DictionaryError::EmptyDefinition {
                    index: index + 1,
                    term: entry.term.clone(),
                });
            }
            let key = (entry.term.clone(), entry.pos_tag);
            if by_key.insert(key, index).is_some() {
                return Err(DictionaryError::DuplicateEntry {
                    term: entry.term.clone(),
                    pos_tag: entry.pos_tag,
                });
            }
            by_term.entry(entry.term.clone()).or_default().push(index);
            headwords.insert(entry.term.clone());
        }
        Ok(Dictionary {
            entries,
            by_key,
            by_term,
            headwords,
        })
    }

    pub fn entries(&self) -> &[DictionaryEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lookup(&self, term: &str, pos_tag: PosTag) -> Option<&DictionaryEntry> {
        self.by_key
            .get(&(String::from(term), pos_tag))
            .map(|&i| &self.entries[i])
    }

    /// All entries for a term, across parts of speech, in file order.
    pub fn entries_for_term(&self, term: &str) -> &[usize] {
        self.by_term.get(term).map_or(&[], Vec::as_slice)
    }

    pub fn entry(&self, index: usize) -> &DictionaryEntry {
        &self.entries[index]
    }

    /// Headword set used by the word-based tokenizer (underscore-joined
    /// compounds included).
    pub fn headwords(&self) -> &BTreeSet<String> {
        &self.headwords
    }
}
