//! Gloss tokenization.
//!
//! Two schemes are supported. The token-based scheme lowercases the text and
//! splits on whitespace and punctuation, yielding one token per syllable.
//! The word-based scheme additionally joins runs of syllables that form a
//! known dictionary headword into one underscore-joined compound token,
//! using greedy longest match. Compounds never span punctuation.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

/// Which tokenization scheme a classifier was trained with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum TokenizerKind {
    TokenBased,
    WordBased,
}

/// A configured tokenizer. For [`TokenizerKind::WordBased`] it holds the
/// headword lexicon used for compound joining.
#[derive(Debug, Clone)]
pub struct Tokenizer {
    kind: TokenizerKind,
    lexicon: BTreeSet<String>,
    max_syllables: usize,
}

struct Syllable {
    text: String,
    // False when punctuation (not just whitespace) separates this syllable
    // from the previous one; compounds must not bridge that gap.
    joinable: bool,
}

impl Tokenizer {
    pub fn token_based() -> Tokenizer {
        Tokenizer {
            kind: TokenizerKind::TokenBased,
            lexicon: BTreeSet::new(),
            max_syllables: 1,
        }
    }

    pub fn word_based<I, S>(headwords: I) -> Tokenizer
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let lexicon: BTreeSet<String> = headwords.into_iter().map(Into::into).collect();
        let max_syllables = lexicon
            .iter()
            .map(|w| w.split('_').count())
            .max()
            .unwrap_or(1);
        Tokenizer {
            kind: TokenizerKind::WordBased,
            lexicon,
            max_syllables,
        }
    }

    pub fn new<I, S>(kind: TokenizerKind, headwords: I) -> Tokenizer
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        match kind {
            TokenizerKind::TokenBased => Tokenizer::token_based(),
            TokenizerKind::WordBased => Tokenizer::word_based(headwords),
        }
    }

    pub fn kind(&self) -> TokenizerKind {
        self.kind
    }

    pub fn tokenize(&self, text: &str) -> Vec<String> {
        let syllables = split_syllables(text);
        match self.kind {
            TokenizerKind::TokenBased => syllables.into_iter().map(|s| s.text).collect(),
            TokenizerKind::WordBased => self.join_compounds(&syllables),
        }
    }

    fn join_compounds(&self, syllables: &[Syllable]) -> Vec<String> {
        let mut tokens = Vec::new();
        let mut i = 0;
        while i < syllables.len() {
            let mut matched = 0;
            // Longest candidate first; a 1-syllable match is the syllable itself.
            let mut len = self.max_syllables.min(syllables.len() - i);
            while len >= 2 {
                if syllables[i + 1..i + len].iter().all(|s| s.joinable) {
                    let candidate = join_with_underscores(&syllables[i..i + len]);
                    if self.lexicon.contains(&candidate) {
                        tokens.push(candidate);
                        matched = len;
                        break;
                    }
                }
                len -= 1;
            }
            if matched == 0 {
                tokens.push(syllables[i].text.clone());
                matched = 1;
            }
            i += matched;
        }
        tokens
    }
}

fn join_with_underscores(syllables: &[Syllable]) -> String {
    let mut out = String::new();
    for (i, syllable) in syllables.iter().enumerate() {
        if i > 0 {
            out.push('_');
        }
        out.push_str(&syllable.text);
    }
    out
}

fn split_syllables(text: &str) -> Vec<Syllable> {
    let mut syllables = Vec::new();
    let mut current = String::new();
    let mut saw_punctuation = false;
    for ch in text.chars() {
        if ch.is_alphanumeric() {
            for lower in ch.to_lowercase() {
                current.push(lower);
            }
        } else {
            if !current.is_empty() {
                push_syllable(&mut syllables, &mut current, &mut saw_punctuation);
            }
            if !ch.is_whitespace() {
                saw_punctuation = true;
            }
        }
    }
    if !current.is_empty() {
        push_syllable(&mut syllables, &mut current, &mut saw_punctuation);
    }
    syllables
}

fn push_syllable(syllables: &mut Vec<Syllable>, current: &mut String, saw_punct: &mut bool) {
    let joinable = !syllables.is_empty() && !*saw_punct;
    syllables.push(Syllable {
        text: core::mem::take(current),
        joinable,
    });
    *saw_punct = false;
}
