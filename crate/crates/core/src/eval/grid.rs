//! Parameter grid search over tokenizer kind and gamma, scored by k-fold
//! cross validation of the positivity classifier.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::eval::metrics::f1_binary;
use crate::eval::splits::Fold;
use crate::eval::EvalError;
use crate::lexicon::Label;
use crate::textcat::{train, GlossTrainingData, Tokenizer, TokenizerKind, TrainingConfig};

/// A gloss with its set label, the unit of classifier evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledGloss {
    pub gloss: String,
    pub label: Label,
}

/// One cell of the parameter grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridConfig {
    pub tokenizer: TokenizerKind,
    pub gamma: f64,
}

/// The full 2x2 grid: tokenizer kind crossed with gamma.
pub const FULL_GRID: [GridConfig; 4] = [
    GridConfig {
        tokenizer: TokenizerKind::TokenBased,
        gamma: 0.0,
    },
    GridConfig {
        tokenizer: TokenizerKind::TokenBased,
        gamma: 1.0,
    },
    GridConfig {
        tokenizer: TokenizerKind::WordBased,
        gamma: 0.0,
    },
    GridConfig {
        tokenizer: TokenizerKind::WordBased,
        gamma: 1.0,
    },
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridCell {
    pub config: GridConfig,
    pub micro_f1: f64,
    pub macro_f1: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridOutcome {
    pub cells: Vec<GridCell>,
    pub best: GridConfig,
}

/// Builds the positivity-classifier training data from a subset of the
/// labeled glosses: positives against negatives plus neutrals.
fn positivity_data(data: &[LabeledGloss], indices: &[usize]) -> GlossTrainingData {
    let mut out = GlossTrainingData::default();
    for &i in indices {
        let item = &data[i];
        match item.label {
            Label::Positive => out.positives.push(item.gloss.clone()),
            Label::Negative | Label::Neutral => out.negatives.push(item.gloss.clone()),
        }
    }
    out
}

/// Trains a positivity classifier on `train_indices` and returns its F1 on
/// `eval_indices`, predicting positive wherever the margin is positive.
pub fn positivity_f1(
    data: &[LabeledGloss],
    train_indices: &[usize],
    eval_indices: &[usize],
    config: &TrainingConfig,
    headwords: &BTreeSet<String>,
) -> Result<(f64, f64), EvalError> {
    let tokenizer = Tokenizer::new(config.tokenizer, headwords.iter().cloned());
    let classifier = train(&positivity_data(data, train_indices), config, &tokenizer)
        .map_err(EvalError::Training)?;
    let mut predicted = Vec::with_capacity(eval_indices.len());
    let mut gold = Vec::with_capacity(eval_indices.len());
    for &i in eval_indices {
        let tokens = tokenizer.tokenize(&data[i].gloss);
        predicted.push(classifier.margin_for_tokens(&tokens) > 0.0);
        gold.push(data[i].label == Label::Positive);
    }
    let f1 = f1_binary(&predicted, &gold)?;
    Ok((f1.micro, f1.macro_avg))
}

/// Mean cross-validated F1 for every grid cell. The winner maximizes micro
/// F1; exact ties prefer the word-based tokenizer, then the larger gamma.
pub fn grid_search(
    data: &[LabeledGloss],
    folds: &[Fold],
    configs: &[GridConfig],
    base: &TrainingConfig,
    headwords: &BTreeSet<String>,
) -> Result<GridOutcome, EvalError> {
    if configs.is_empty() || folds.is_empty() {
        return Err(EvalError::EmptyGrid);
    }
    let mut cells = Vec::with_capacity(configs.len());
    for grid_config in configs {
        let config = TrainingConfig {
            tokenizer: grid_config.tokenizer,
            gamma: grid_config.gamma,
            ..base.clone()
        };
        let mut micro_sum = 0.0;
        let mut macro_sum = 0.0;
        for fold in folds {
            let (micro, macro_avg) =
                positivity_f1(data, &fold.train, &fold.validate, &config, headwords)?;
            micro_sum += micro;
            macro_sum += macro_avg;
        }
        cells.push(GridCell {
            config: *grid_config,
            micro_f1: micro_sum / folds.len() as f64,
            macro_f1: macro_sum / folds.len() as f64,
        });
    }

    let mut best = cells[0];
    for cell in &cells[1..] {
        if prefer(cell, &best) {
            best = *cell;
        }
    }
    Ok(GridOutcome {
        cells,
        best: best.config,
    })
}

fn prefer(candidate: &GridCell, incumbent: &GridCell) -> bool {
    if candidate.micro_f1 != incumbent.micro_f1 {
        return candidate.micro_f1 > incumbent.micro_f1;
    }
    let word = |c: &GridCell| c.config.tokenizer == TokenizerKind::WordBased;
    if word(candidate) != word(incumbent) {
        return word(candidate);
    }
    candidate.config.gamma > incumbent.config.gamma
}
