//! Vocabulary construction and sparse feature vectors.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::math;
use crate::textcat::TextcatError;

/// Term-weighting scheme applied before L2 normalization. Glosses are short,
/// so plain term frequency is the default; tf-idf is available behind a
/// config flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Weighting {
    #[default]
    TermFrequency,
    TfIdf,
}

/// Token-to-id map with ids dense from 0 in first-occurrence order, plus the
/// document frequencies needed for tf-idf.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Vocabulary {
    ids: BTreeMap<String, u32>,
    tokens: Vec<String>,
    doc_freq: Vec<u32>,
    doc_count: u32,
}

impl Vocabulary {
    pub fn build(token_lists: &[Vec<String>]) -> Result<Vocabulary, TextcatError> {
        let mut ids = BTreeMap::new();
        let mut tokens = Vec::new();
        let mut doc_freq = Vec::new();
        for list in token_lists {
            let mut seen_in_doc = Vec::new();
            for token in list {
                let id = *ids.entry(token.clone()).or_insert_with(|| {
                    tokens.push(token.clone());
                    doc_freq.push(0);
                    (tokens.len() - 1) as u32
                });
                if !seen_in_doc.contains(&id) {
                    seen_in_doc.push(id);
                    doc_freq[id as usize] += 1;
                }
            }
        }
        if tokens.is_empty() {
            return Err(TextcatError::EmptyVocabulary);
        }
        Ok(Vocabulary {
            ids,
            tokens,
            doc_freq,
            doc_count: token_lists.len() as u32,
        })
    }

    pub fn id(&self, token: &str) -> Option<u32> {
        self.ids.get(token).copied()
    }

    pub fn token(&self, id: u32) -> &str {
        &self.tokens[id as usize]
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Smoothed inverse document frequency.
    fn idf(&self, id: u32) -> f64 {
        let n = f64::from(self.doc_count) + 1.0;
        let df = f64::from(self.doc_freq[id as usize]) + 1.0;
        math::ln(n / df) + 1.0
    }
}

/// A sparse feature vector: (token id, weight) pairs sorted by id.
/// Nonempty vectors have unit L2 norm; an all-OOV input yields the zero
/// vector.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    entries: Vec<(u32, f64)>,
}

impl FeatureVector {
    /// Builds a vector from raw `(id, weight)` pairs. Ids must be strictly
    /// ascending and weights finite.
    pub fn from_entries(entries: Vec<(u32, f64)>) -> Result<FeatureVector, TextcatError> {
        if entries.windows(2).any(|pair| pair[0].0 >= pair[1].0) {
            return Err(TextcatError::UnsortedFeatureEntries);
        }
        if entries.iter().any(|&(_, w)| !w.is_finite()) {
            return Err(TextcatError::NonFiniteFeature);
        }
        Ok(FeatureVector { entries })
    }

    pub fn entries(&self) -> &[(u32, f64)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_id(&self) -> Option<u32> {
        self.entries.last().map(|&(id, _)| id)
    }

    pub fn dot(&self, weights: &[f64]) -> f64 {
        self.entries
            .iter()
            .map(|&(id, w)| w * weights[id as usize])
            .sum()
    }

    pub fn add_scaled_to(&self, weights: &mut [f64], factor: f64) {
        for &(id, w) in &self.entries {
            weights[id as usize] += factor * w;
        }
    }

    pub fn norm_sq(&self) -> f64 {
        self.entries.iter().map(|&(_, w)| w * w).sum()
    }
}

/// Counts in-vocabulary tokens, applies the weighting, and L2-normalizes.
/// Out-of-vocabulary tokens contribute nothing.
pub fn vectorize(tokens: &[String], vocab: &Vocabulary, weighting: Weighting) -> FeatureVector {
    let mut counts: BTreeMap<u32, f64> = BTreeMap::new();
    for token in tokens {
        if let Some(id) = vocab.id(token) {
            *counts.entry(id).or_insert(0.0) += 1.0;
        }
    }
    let mut entries: Vec<(u32, f64)> = counts
        .into_iter()
        .map(|(id, tf)| match weighting {
            Weighting::TermFrequency => (id, tf),
            Weighting::TfIdf => (id, tf * vocab.idf(id)),
        })
        .collect();
    let norm = math::sqrt(entries.iter().map(|&(_, w)| w * w).sum::<f64>());
    if norm > 0.0 {
        for entry in &mut entries {
            entry.1 /= norm;
        }
    }
    FeatureVector { entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;
    use approx::assert_relative_eq;

    fn toks(words: &[&str]) -> Vec<String> {
        words.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn ids_are_dense_in_first_occurrence_order() {
        let vocab = Vocabulary::build(&[toks(&["a", "b"]), toks(&["b", "c"])]).unwrap();
        assert_eq!(vocab.id("a"), Some(0));
        assert_eq!(vocab.id("b"), Some(1));
        assert_eq!(vocab.id("c"), Some(2));
        assert_eq!(vocab.len(), 3);
    }

    #[test]
    fn single_list_vocabulary() {
        let vocab = Vocabulary::build(&[toks(&["x"])]).unwrap();
        assert_eq!(vocab.id("x"), Some(0));
        assert_eq!(vocab.len(), 1);
    }

    #[test]
    fn all_empty_lists_is_an_error() {
        assert!(matches!(
            Vocabulary::build(&[vec![], vec![]]),
            Err(TextcatError::EmptyVocabulary)
        ));
    }

    #[test]
    fn term_frequencies_are_l2_normalized() {
        let vocab = Vocabulary::build(&[toks(&["a", "b"])]).unwrap();
        let v = vectorize(&toks(&["a", "a", "b"]), &vocab, Weighting::TermFrequency);
        let expected = 5.0_f64;
        assert_relative_eq!(v.entries()[0].1, 2.0 / expected.sqrt());
        assert_relative_eq!(v.entries()[1].1, 1.0 / expected.sqrt());
        assert_relative_eq!(v.norm_sq(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn all_oov_tokens_yield_the_zero_vector() {
        let vocab = Vocabulary::build(&[toks(&["a"])]).unwrap();
        let v = vectorize(&toks(&["z", "q"]), &vocab, Weighting::TermFrequency);
        assert!(v.is_zero());
        assert_eq!(v.dot(&[1.0]), 0.0);
    }

    #[test]
    fn single_token_gloss_is_a_unit_vector() {
        let vocab = Vocabulary::build(&[toks(&["a", "b"])]).unwrap();
        let v = vectorize(&toks(&["b"]), &vocab, Weighting::TermFrequency);
        assert_eq!(v.entries(), &[(1, 1.0)]);
    }

    #[test]
    fn tf_idf_downweights_ubiquitous_tokens() {
        let lists = [toks(&["a", "b"]), toks(&["a", "c"]), toks(&["a", "d"])];
        let vocab = Vocabulary::build(&lists).unwrap();
        let v = vectorize(&toks(&["a", "b"]), &vocab, Weighting::TfIdf);
        // "a" occurs in every document, "b" in one; after idf weighting the
        // rarer token must dominate.
        assert!(v.entries()[0].1 < v.entries()[1].1);
        assert_relative_eq!(v.norm_sq(), 1.0, epsilon = 1e-12);
    }
}
