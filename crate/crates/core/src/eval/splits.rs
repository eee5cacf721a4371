//! Stratified train/dev/test splitting and stratified k-fold partitioning.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::eval::EvalError;
use crate::lexicon::Label;

/// Ratio-based split specification; the default is the 3:1:1
/// train/dev/test cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitSpec {
    pub ratios: (u32, u32, u32),
    pub rng_seed: u64,
}

impl SplitSpec {
    pub fn new(rng_seed: u64) -> SplitSpec {
        SplitSpec {
            ratios: (3, 1, 1),
            rng_seed,
        }
    }
}

/// Index partition of the input data.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Split {
    pub train: Vec<usize>,
    pub dev: Vec<usize>,
    pub test: Vec<usize>,
}

/// Splits `n` items into three parts by largest-remainder rounding of the
/// ratios; leftover items go to the parts with the largest remainders,
/// ties broken by part order.
fn largest_remainder(n: usize, ratios: (u32, u32, u32)) -> [usize; 3] {
    let parts = [ratios.0 as u64, ratios.1 as u64, ratios.2 as u64];
    let total: u64 = parts.iter().sum();
    assert!(total > 0, "split ratios must not all be zero");
    let n = n as u64;

    let mut sizes = [0usize; 3];
    let mut remainders = [(0u64, 0usize); 3];
    for (i, &ratio) in parts.iter().enumerate() {
        sizes[i] = (n * ratio / total) as usize;
        remainders[i] = (n * ratio % total, i);
    }
    let assigned: usize = sizes.iter().sum();
    let leftover = n as usize - assigned;
    remainders.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    for &(_, part) in remainders.iter().take(leftover) {
        sizes[part] += 1;
    }
    sizes
}

/// Within each label stratum: seeded shuffle, then a contiguous cut at the
/// largest-remainder sizes. The parts partition the input indices.
pub fn stratified_split(labels: &[Label], spec: &SplitSpec) -> Split {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.rng_seed);
    let mut split = Split::default();
    for stratum in Label::ALL {
        let mut indices: Vec<usize> = labels
            .iter()
            .enumerate()
            .filter(|&(_, &l)| l == stratum)
            .map(|(i, _)| i)
            .collect();
        indices.shuffle(&mut rng);
        let sizes = largest_remainder(indices.len(), spec.ratios);
        let (train, rest) = indices.split_at(sizes[0]);
        let (dev, test) = rest.split_at(sizes[1]);
        split.train.extend_from_slice(train);
        split.dev.extend_from_slice(dev);
        split.test.extend_from_slice(test);
    }
    split.train.sort_unstable();
    split.dev.sort_unstable();
    split.test.sort_unstable();
    split
}

/// One cross-validation fold: every index validates exactly once across the
/// folds.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Fold {
    pub train: Vec<usize>,
    pub validate: Vec<usize>,
}

/// Stratified k-fold partition. Extra items rotate across folds from one
/// stratum to the next, so overall fold sizes differ by at most one even
/// when several strata have remainders.
pub fn kfold(labels: &[Label], k: usize, rng_seed: u64) -> Result<Vec<Fold>, EvalError> {
    if k < 2 || labels.len() < k {
        return Err(EvalError::TooFewItems {
            items: labels.len(),
            k,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut offset = 0usize;
    for stratum in Label::ALL {
        let mut indices: Vec<usize> = labels
            .iter()
            .enumerate()
            .filter(|&(_, &l)| l == stratum)
            .map(|(i, _)| i)
            .collect();
        indices.shuffle(&mut rng);
        let base = indices.len() / k;
        let extra = indices.len() % k;
        let mut sizes = vec![base; k];
        for j in 0..extra {
            sizes[(offset + j) % k] += 1;
        }
        offset = (offset + extra) % k;
        let mut cursor = 0;
        for (fold, &size) in sizes.iter().enumerate() {
            members[fold].extend_from_slice(&indices[cursor..cursor + size]);
            cursor += size;
        }
    }

    let folds = (0..k)
        .map(|f| {
            let mut validate = members[f].clone();
            validate.sort_unstable();
            let mut train: Vec<usize> = members
                .iter()
                .enumerate()
                .filter(|&(g, _)| g != f)
                .flat_map(|(_, m)| m.iter().copied())
                .collect();
            train.sort_unstable();
            Fold { train, validate }
        })
        .collect();
    Ok(folds)
}
