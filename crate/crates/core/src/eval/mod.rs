//! Classification and lexicon evaluation: stratified splits, k-fold cross
//! validation, F1, grid search, and ranking distance against a gold
//! standard.

mod grid;
mod metrics;
mod splits;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use grid::{grid_search, positivity_f1, GridCell, GridConfig, GridOutcome, LabeledGloss, FULL_GRID};
pub use metrics::{evaluate_lexicon, f1_binary, kendall_tau_p, F1Scores, GoldRanking, TIE_PENALTY};
pub use splits::{kfold, stratified_split, Fold, Split, SplitSpec};

use crate::textcat::TextcatError;

#[derive(Debug, Clone, PartialEq)]
pub enum EvalError {
    LengthMismatch { predicted: usize, gold: usize },
    EmptyData,
    TooFewItems { items: usize, k: usize },
    DuplicateGoldTerm { term: String },
    NonFiniteValue { term: String },
    MissingGoldTerms { terms: Vec<String> },
    TooFewOrderedPairs { pairs: u64 },
    EmptyGrid,
    MetricOutOfRange { name: &'static str, value: f64 },
    Training(TextcatError),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::LengthMismatch { predicted, gold } => {
                write!(f, "{predicted} predictions against {gold} gold labels")
            }
            EvalError::EmptyData => write!(f, "no data points to evaluate"),
            EvalError::TooFewItems { items, k } => {
                write!(f, "{items} items cannot fill {k} folds")
            }
            EvalError::DuplicateGoldTerm { term } => {
                write!(f, "gold standard lists term {term:?} twice")
            }
            EvalError::NonFiniteValue { term } => {
                write!(f, "non-finite gold value for term {term:?}")
            }
            EvalError::MissingGoldTerms { terms } => {
                write!(f, "{} gold terms missing from the ranking: ", terms.len())?;
                for (i, term) in terms.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{term}")?;
                }
                Ok(())
            }
            EvalError::TooFewOrderedPairs { pairs } => {
                write!(f, "only {pairs} gold-ordered pairs; at least 2 required")
            }
            EvalError::EmptyGrid => write!(f, "no grid configurations or folds"),
            EvalError::MetricOutOfRange { name, value } => {
                write!(f, "metric {name} = {value} outside [0, 1]")
            }
            EvalError::Training(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for EvalError {}

impl From<TextcatError> for EvalError {
    fn from(e: TextcatError) -> EvalError {
        EvalError::Training(e)
    }
}

/// The complete evaluation outcome: the grid with its winner, test-set F1
/// under the winning config, and the two ranking distances.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub cells: Vec<GridCell>,
    pub best: GridConfig,
    pub test_micro_f1: f64,
    pub test_macro_f1: f64,
    pub tau_positivity: f64,
    pub tau_negativity: f64,
}

impl EvalReport {
    /// Every F1 and tau value must lie in [0, 1].
    pub fn validate(&self) -> Result<(), EvalError> {
        let mut checks: Vec<(&'static str, f64)> = Vec::new();
        for cell in &self.cells {
            checks.push(("grid micro F1", cell.micro_f1));
            checks.push(("grid macro F1", cell.macro_f1));
        }
        checks.push(("test micro F1", self.test_micro_f1));
        checks.push(("test macro F1", self.test_macro_f1));
        checks.push(("tau positivity", self.tau_positivity));
        checks.push(("tau negativity", self.tau_negativity));
        for (name, value) in checks {
            if !(0.0..=1.0).contains(&value) {
                return Err(EvalError::MetricOutOfRange { name, value });
            }
        }
        Ok(())
    }
}
