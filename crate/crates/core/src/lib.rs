//! Core algorithms for building a SentiWordNet-style sentiment lexicon from a
//! machine-readable dictionary and a small seed core.
//!
//! This crate is `no_std`-compatible (it only needs `alloc`) and contains the
//! pure, deterministic parts of the pipeline:
//!
//! * [`lexicon`] — synsets, polarity scores, and the lexicon container
//! * [`dictionary`] — dictionary entries with synonym/antonym links
//! * [`corebuild`] — seed filtering and corpus-based score recomputation
//! * [`expand`] — threshold split and synonym/antonym training-set expansion
//! * [`textcat`] — tokenization, sparse features, and a linear max-margin
//!   classifier producing signed margins
//! * [`score`] — margin normalization and lexicon assembly
//! * [`eval`] — stratified splits, k-fold CV, F1, and Kendall tau ranking
//!   distance with a tie penalty
//!
//! File formats, ingestion, and the command-line front end live in the `sentilex`
//! companion crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod corebuild;
pub mod dictionary;
pub mod eval;
pub mod expand;
pub mod lexicon;
mod math;
pub mod score;
pub mod textcat;

pub use corebuild::{build_core, CoreSynset, CorpusCounts, SeedRecord};
pub use dictionary::{Dictionary, DictionaryEntry};
pub use expand::{expand, split_core, TrainingSets};
pub use lexicon::{Label, PolarityScores, PosTag, SentiLexicon, Synset};
pub use score::{normalize, MarginPair, NormalizationMode};
pub use textcat::{BinaryClassifier, Tokenizer, TokenizerKind, TrainingConfig};
