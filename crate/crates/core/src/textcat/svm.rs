//! Linear max-margin binary classifier trained by primal subgradient
//! descent on the L2-regularized hinge loss.
//!
//! The optimizer follows the classic primal scheme: per-example updates with
//! a `1/(lambda t)` step schedule (shifted by one step so the first decay
//! factor is nonzero), multiplicative weight decay tracked through a scale
//! factor, and projection onto the ball of radius `1/sqrt(lambda)`.
//! `lambda = 1 / (C n)`, so `regularization_c` plays the usual soft-margin
//! role. Training is deterministic for a fixed `(data, config)`: the only
//! randomness is the per-epoch shuffle, seeded from `rng_seed`.
//!
//! The `gamma` field selects the feature space: `gamma = 0` trains directly
//! on the sparse gloss vectors (plain linear kernel); `gamma = 1` trains on
//! a 512-dimensional random Fourier feature map approximating a width-1
//! Gaussian kernel. The projection matrix is never stored; entries are
//! regenerated on demand from a counter-based hash of `rng_seed`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::math;
use crate::textcat::features::{vectorize, FeatureVector, Vocabulary, Weighting};
use crate::textcat::tokenizer::{Tokenizer, TokenizerKind};
use crate::textcat::TextcatError;

/// Dimension of the random feature map used when `gamma = 1`.
pub const RFF_DIM: usize = 512;

/// Hyperparameters for one classifier.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TrainingConfig {
    pub tokenizer: TokenizerKind,
    /// Kernel-shape selector: 0 for the plain linear kernel, 1 for the
    /// random-feature Gaussian kernel of width 1.
    pub gamma: f64,
    pub regularization_c: f64,
    pub max_epochs: u32,
    pub convergence_tol: f64,
    pub rng_seed: u64,
    pub weighting: Weighting,
}

impl Default for TrainingConfig {
    fn default() -> TrainingConfig {
        TrainingConfig {
            tokenizer: TokenizerKind::WordBased,
            gamma: 1.0,
            regularization_c: 1.0,
            max_epochs: 200,
            convergence_tol: 1e-6,
            rng_seed: 42,
            weighting: Weighting::TermFrequency,
        }
    }
}

impl TrainingConfig {
    pub fn validate(&self) -> Result<(), TextcatError> {
        if self.gamma != 0.0 && self.gamma != 1.0 {
            return Err(TextcatError::InvalidGamma { gamma: self.gamma });
        }
        if !(self.regularization_c > 0.0) {
            return Err(TextcatError::NonPositiveField {
                field: "regularization_c",
            });
        }
        if self.max_epochs == 0 {
            return Err(TextcatError::NonPositiveField { field: "max_epochs" });
        }
        if !(self.convergence_tol > 0.0) {
            return Err(TextcatError::NonPositiveField {
                field: "convergence_tol",
            });
        }
        Ok(())
    }
}

/// Glosses for the two classes of one binary problem.
#[derive(Debug, Clone, Default)]
pub struct GlossTrainingData {
    pub positives: Vec<String>,
    pub negatives: Vec<String>,
}

/// A trained classifier: learned weights over its feature space, a bias, the
/// config it was trained with, and a snapshot of the vocabulary.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BinaryClassifier {
    config: TrainingConfig,
    vocab: Vocabulary,
    weights: Vec<f64>,
    bias: f64,
    epochs_run: u32,
    objective_trace: Vec<f64>,
}

impl BinaryClassifier {
    pub fn config(&self) -> &TrainingConfig {
        &self.config
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }

    pub fn epochs_run(&self) -> u32 {
        self.epochs_run
    }

    /// Objective value recorded at the end of each epoch.
    pub fn objective_trace(&self) -> &[f64] {
        &self.objective_trace
    }

    /// Reassembles a classifier from persisted parts, revalidating the
    /// weight dimension against the config and vocabulary.
    pub fn from_parts(
        config: TrainingConfig,
        vocab: Vocabulary,
        weights: Vec<f64>,
        bias: f64,
        epochs_run: u32,
        objective_trace: Vec<f64>,
    ) -> Result<BinaryClassifier, TextcatError> {
        config.validate()?;
        let expected = if config.gamma == 0.0 {
            vocab.len()
        } else {
            RFF_DIM
        };
        if weights.len() != expected {
            return Err(TextcatError::DimensionMismatch {
                got: weights.len(),
                expected,
            });
        }
        Ok(BinaryClassifier {
            config,
            vocab,
            weights,
            bias,
            epochs_run,
            objective_trace,
        })
    }

    pub fn vectorize_tokens(&self, tokens: &[String]) -> FeatureVector {
        vectorize(tokens, &self.vocab, self.config.weighting)
    }

    /// Signed margin `w . x + b`. A positive sign means membership in the
    /// classifier's positive class. The zero vector carries no evidence and
    /// maps to the bias under both kernels.
    pub fn predict_margin(&self, vector: &FeatureVector) -> Result<f64, TextcatError> {
        if let Some(max_id) = vector.max_id() {
            if max_id as usize >= self.vocab.len() {
                return Err(TextcatError::DimensionMismatch {
                    got: max_id as usize + 1,
                    expected: self.vocab.len(),
                });
            }
        }
        if vector.is_zero() {
            return Ok(self.bias);
        }
        let margin = if self.config.gamma == 0.0 {
            vector.dot(&self.weights) + self.bias
        } else {
            let dense = rff_transform(vector, self.config.rng_seed, self.config.gamma);
            dense
                .iter()
                .zip(&self.weights)
                .map(|(z, w)| z * w)
                .sum::<f64>()
                + self.bias
        };
        Ok(margin)
    }

    /// Tokenizes nothing: vectorizes against the classifier's own vocabulary
    /// and returns the margin. OOV tokens are ignored.
    pub fn margin_for_tokens(&self, tokens: &[String]) -> f64 {
        let vector = self.vectorize_tokens(tokens);
        // Ids come from our own vocabulary, so the dimension check holds.
        self.predict_margin(&vector).unwrap_or(self.bias)
    }
}

/// Trains one classifier on the given glosses. Both classes must be
/// nonempty, and the tokenizer must match the configured kind.
pub fn train(
    data: &GlossTrainingData,
    config: &TrainingConfig,
    tokenizer: &Tokenizer,
) -> Result<BinaryClassifier, TextcatError> {
    config.validate()?;
    if tokenizer.kind() != config.tokenizer {
        return Err(TextcatError::TokenizerMismatch);
    }
    if data.positives.is_empty() {
        return Err(TextcatError::EmptyClass { positive: true });
    }
    if data.negatives.is_empty() {
        return Err(TextcatError::EmptyClass { positive: false });
    }

    let mut token_lists: Vec<Vec<String>> = Vec::with_capacity(data.positives.len() + data.negatives.len());
    let mut labels: Vec<f64> = Vec::with_capacity(token_lists.capacity());
    for gloss in &data.positives {
        token_lists.push(tokenizer.tokenize(gloss));
        labels.push(1.0);
    }
    for gloss in &data.negatives {
        token_lists.push(tokenizer.tokenize(gloss));
        labels.push(-1.0);
    }

    let vocab = Vocabulary::build(&token_lists)?;
    let sparse: Vec<FeatureVector> = token_lists
        .iter()
        .map(|tokens| vectorize(tokens, &vocab, config.weighting))
        .collect();
    for v in &sparse {
        if v.entries().iter().any(|&(_, w)| !w.is_finite()) {
            return Err(TextcatError::NonFiniteFeature);
        }
    }

    let (examples, dim): (Vec<TrainVec>, usize) = if config.gamma == 0.0 {
        (sparse.into_iter().map(TrainVec::Sparse).collect(), vocab.len())
    } else {
        let dense = sparse
            .iter()
            .map(|v| TrainVec::Dense(rff_transform(v, config.rng_seed, config.gamma)))
            .collect();
        (dense, RFF_DIM)
    };

    let outcome = sgd(&examples, &labels, dim, config);
    Ok(BinaryClassifier {
        config: config.clone(),
        vocab,
        weights: outcome.weights,
        bias: outcome.bias,
        epochs_run: outcome.epochs_run,
        objective_trace: outcome.objective_trace,
    })
}

enum TrainVec {
    Sparse(FeatureVector),
    Dense(Vec<f64>),
}

impl TrainVec {
    fn dot(&self, weights: &[f64]) -> f64 {
        match self {
            TrainVec::Sparse(v) => v.dot(weights),
            TrainVec::Dense(v) => v.iter().zip(weights).map(|(a, b)| a * b).sum(),
        }
    }

    fn add_scaled_to(&self, weights: &mut [f64], factor: f64) {
        match self {
            TrainVec::Sparse(v) => v.add_scaled_to(weights, factor),
            TrainVec::Dense(v) => {
                for (w, x) in weights.iter_mut().zip(v) {
                    *w += factor * x;
                }
            }
        }
    }

    fn norm_sq(&self) -> f64 {
        match self {
            TrainVec::Sparse(v) => v.norm_sq(),
            TrainVec::Dense(v) => v.iter().map(|x| x * x).sum(),
        }
    }
}

struct SgdOutcome {
    weights: Vec<f64>,
    bias: f64,
    epochs_run: u32,
    objective_trace: Vec<f64>,
}

/// Subgradient minimization with a monotone safeguard. Each epoch runs one
/// shuffled pass of per-example updates starting from the best iterate so
/// far; if the pass worsens the objective (subgradient steps are not descent
/// steps), the epoch is retried with halved steps until it stops hurting.
/// The recorded per-epoch objective is therefore non-increasing, and
/// training stops once an epoch improves it by less than `convergence_tol`.
fn sgd(examples: &[TrainVec], labels: &[f64], dim: usize, config: &TrainingConfig) -> SgdOutcome {
    let n = examples.len();
    let lambda = 1.0 / (config.regularization_c * n as f64);
    let radius = 1.0 / math::sqrt(lambda);

    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    let mut order: Vec<usize> = (0..n).collect();

    let mut best_weights = vec![0.0_f64; dim];
    let mut best_bias = 0.0_f64;
    let mut best_objective = objective_value(&best_weights, best_bias, examples, labels, lambda);
    let mut steps_taken: u64 = 0;

    let mut objective_trace = Vec::new();
    let mut previous = f64::INFINITY;
    let mut epochs_run = 0;

    for _ in 0..config.max_epochs {
        order.shuffle(&mut rng);
        let mut step_scale = 1.0;
        loop {
            let (weights, bias) = run_epoch(
                &best_weights,
                best_bias,
                examples,
                labels,
                &order,
                lambda,
                radius,
                steps_taken,
                step_scale,
            );
            let objective = objective_value(&weights, bias, examples, labels, lambda);
            if objective <= best_objective {
                best_weights = weights;
                best_bias = bias;
                best_objective = objective;
                break;
            }
            step_scale *= 0.5;
            if step_scale < 1e-6 {
                // Even tiny steps hurt; keep the incumbent.
                break;
            }
        }
        steps_taken += n as u64;
        epochs_run += 1;
        objective_trace.push(best_objective);
        if previous - best_objective < config.convergence_tol {
            break;
        }
        previous = best_objective;
    }

    SgdOutcome {
        weights: best_weights,
        bias: best_bias,
        epochs_run,
        objective_trace,
    }
}

/// One pass of per-example updates with the `1/(lambda t)` schedule (shifted
/// by one so the first decay factor stays positive), weight decay tracked
/// through a scale factor, and projection onto the ball of radius
/// `1/sqrt(lambda)`.
#[allow(clippy::too_many_arguments)]
fn run_epoch(
    start_weights: &[f64],
    start_bias: f64,
    examples: &[TrainVec],
    labels: &[f64],
    order: &[usize],
    lambda: f64,
    radius: f64,
    steps_taken: u64,
    step_scale: f64,
) -> (Vec<f64>, f64) {
    let mut stored = start_weights.to_vec();
    let mut scale = 1.0_f64;
    let mut norm_sq: f64 = stored.iter().map(|w| w * w).sum();
    let mut bias = start_bias;
    let mut step = steps_taken;

    for &i in order {
        step += 1;
        let eta = step_scale / (lambda * (step as f64 + 1.0));
        let decay = 1.0 - eta * lambda;
        let wx = scale * examples[i].dot(&stored);
        let violated = labels[i] * (wx + bias) < 1.0;

        scale *= decay;
        norm_sq *= decay * decay;
        if violated {
            let factor = eta * labels[i];
            examples[i].add_scaled_to(&mut stored, factor / scale);
            norm_sq += 2.0 * factor * (wx * decay) + factor * factor * examples[i].norm_sq();
            bias += factor;
        }
        if norm_sq > radius * radius {
            let shrink = radius / math::sqrt(norm_sq);
            scale *= shrink;
            norm_sq = radius * radius;
        }
        if math::abs(scale) < 1e-9 {
            for w in &mut stored {
                *w *= scale;
            }
            scale = 1.0;
        }
    }

    (stored.iter().map(|w| w * scale).collect(), bias)
}

fn objective_value(
    weights: &[f64],
    bias: f64,
    examples: &[TrainVec],
    labels: &[f64],
    lambda: f64,
) -> f64 {
    let reg = 0.5 * lambda * weights.iter().map(|w| w * w).sum::<f64>();
    let hinge: f64 = examples
        .iter()
        .zip(labels)
        .map(|(x, &y)| (1.0 - y * (x.dot(weights) + bias)).max(0.0))
        .sum();
    reg + hinge / examples.len() as f64
}

// --- random Fourier features -------------------------------------------------

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

fn mix3(seed: u64, a: u64, b: u64) -> u64 {
    splitmix64(
        seed ^ a.wrapping_mul(0xA0761D6478BD642F) ^ b.wrapping_mul(0xE7037ED1A0B428DB),
    )
}

/// Maps 64 random bits onto (0, 1].
fn unit_open(bits: u64) -> f64 {
    ((bits >> 11) as f64 + 1.0) * (1.0 / 9007199254740992.0)
}

fn gaussian(key: u64) -> f64 {
    let u1 = unit_open(splitmix64(key));
    let u2 = unit_open(splitmix64(key ^ 0x6A09E667F3BCC909));
    math::sqrt(-2.0 * math::ln(u1)) * math::cos(2.0 * core::f64::consts::PI * u2)
}

/// `z_k(x) = sqrt(2/D) cos(w_k . x + b_k)` with `w ~ N(0, 2 gamma I)` and
/// `b ~ U[0, 2 pi)`. Projection entries are regenerated from the seed, so no
/// matrix is stored. The zero vector stays the zero vector.
fn rff_transform(vector: &FeatureVector, seed: u64, gamma: f64) -> Vec<f64> {
    if vector.is_zero() {
        return vec![0.0; RFF_DIM];
    }
    let std_dev = math::sqrt(2.0 * gamma);
    let amplitude = math::sqrt(2.0 / RFF_DIM as f64);
    let mut dense = Vec::with_capacity(RFF_DIM);
    for k in 0..RFF_DIM {
        let mut projected = 0.0;
        for &(id, weight) in vector.entries() {
            projected += gaussian(mix3(seed, k as u64 + 1, u64::from(id) + 1)) * std_dev * weight;
        }
        let phase = unit_open(mix3(seed, k as u64 + 1, 0)) * 2.0 * core::f64::consts::PI;
        dense.push(amplitude * math::cos(projected + phase));
    }
    dense
}
