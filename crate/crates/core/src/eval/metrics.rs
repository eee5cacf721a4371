//! F1 scores and the Kendall tau ranking distance with a tie penalty.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::eval::EvalError;
use crate::lexicon::SentiLexicon;

/// Cost of a predicted tie on a gold-ordered pair. Discordant pairs cost 1.
pub const TIE_PENALTY: f64 = 0.5;

/// Micro F1 is the F1 of the positive class; macro averages the per-class
/// F1s of the classes that occur in gold or predictions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct F1Scores {
    pub micro: f64,
    pub macro_avg: f64,
}

fn class_f1(tp: usize, fp: usize, fn_: usize) -> Option<f64> {
    let denominator = 2 * tp + fp + fn_;
    if denominator == 0 {
        None
    } else {
        Some(2.0 * tp as f64 / denominator as f64)
    }
}

/// Binary F1 over aligned prediction and gold sequences.
pub fn f1_binary(predicted: &[bool], gold: &[bool]) -> Result<F1Scores, EvalError> {
    if predicted.len() != gold.len() {
        return Err(EvalError::LengthMismatch {
            predicted: predicted.len(),
            gold: gold.len(),
        });
    }
    if predicted.is_empty() {
        return Err(EvalError::EmptyData);
    }
    let mut tp = 0;
    let mut fp = 0;
    let mut fn_ = 0;
    let mut tn = 0;
    for (&p, &g) in predicted.iter().zip(gold) {
        match (p, g) {
            (true, true) => tp += 1,
            (true, false) => fp += 1,
            (false, true) => fn_ += 1,
            (false, false) => tn += 1,
        }
    }
    // For the negative class the roles of fp and fn swap.
    let positive = class_f1(tp, fp, fn_);
    let negative = class_f1(tn, fn_, fp);
    let micro = positive.unwrap_or(1.0);
    let present: Vec<f64> = [positive, negative].into_iter().flatten().collect();
    let macro_avg = if present.is_empty() {
        1.0
    } else {
        present.iter().sum::<f64>() / present.len() as f64
    };
    Ok(F1Scores { micro, macro_avg })
}

/// Gold-standard term rankings for the two aspects, each sorted by
/// descending reference value with ties broken by term order.
#[derive(Debug, Clone, PartialEq)]
pub struct GoldRanking {
    positivity: Vec<(String, f64)>,
    negativity: Vec<(String, f64)>,
}

impl GoldRanking {
    /// Builds both rankings from `(term, positivity, negativity)` rows.
    pub fn new(rows: Vec<(String, f64, f64)>) -> Result<GoldRanking, EvalError> {
        let mut seen = BTreeMap::new();
        for (term, pos, neg) in &rows {
            if seen.insert(term.clone(), ()).is_some() {
                return Err(EvalError::DuplicateGoldTerm { term: term.clone() });
            }
            for value in [pos, neg] {
                if !value.is_finite() {
                    return Err(EvalError::NonFiniteValue { term: term.clone() });
                }
            }
        }
        let ranked = |aspect: fn(&(String, f64, f64)) -> f64| {
            let mut list: Vec<(String, f64)> =
                rows.iter().map(|row| (row.0.clone(), aspect(row))).collect();
            list.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
            list
        };
        Ok(GoldRanking {
            positivity: ranked(|row| row.1),
            negativity: ranked(|row| row.2),
        })
    }

    pub fn positivity(&self) -> &[(String, f64)] {
        &self.positivity
    }

    pub fn negativity(&self) -> &[(String, f64)] {
        &self.negativity
    }

    pub fn len(&self) -> usize {
        self.positivity.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positivity.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &str> {
        self.positivity.iter().map(|(term, _)| term.as_str())
    }
}

/// Kendall tau distance with tie penalty over the pairs ordered in gold:
/// a discordant pair costs 1, a predicted tie costs [`TIE_PENALTY`], and the
/// total is divided by the number of gold-ordered pairs. 0 means identical
/// ranking, 1 full reversal. Pairs tied in gold are not counted. At least
/// two gold-ordered pairs are required.
///
/// Counting uses a merge-based inversion count, so it stays `O(n log n)`;
/// the brute-force pair enumeration lives in the test suite as an
/// independent oracle.
pub fn kendall_tau_p(
    predicted: &BTreeMap<String, f64>,
    gold: &[(String, f64)],
) -> Result<f64, EvalError> {
    let mut missing: Vec<String> = gold
        .iter()
        .filter(|(term, _)| !predicted.contains_key(term))
        .map(|(term, _)| term.clone())
        .collect();
    if !missing.is_empty() {
        missing.sort();
        return Err(EvalError::MissingGoldTerms { terms: missing });
    }
    let mut items: Vec<(f64, f64)> = gold
        .iter()
        .map(|(term, value)| (*value, predicted[term]))
        .collect();
    items.sort_by(|a, b| b.0.total_cmp(&a.0));
    tau_from_sorted(&items)
}

/// `items` must be sorted by descending gold value; the second component is
/// the predicted score.
fn tau_from_sorted(items: &[(f64, f64)]) -> Result<f64, EvalError> {
    let n = items.len();
    let total_pairs = pairs_of(n);

    // Runs of equal gold values form blocks; pairs inside a block are not
    // gold-ordered.
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || items[i].0.total_cmp(&items[start].0) != Ordering::Equal {
            blocks.push((start, i));
            start = i;
        }
    }
    let within_block_pairs: u64 = blocks.iter().map(|&(s, e)| pairs_of(e - s)).sum();
    let ordered_pairs = total_pairs - within_block_pairs;
    if ordered_pairs < 2 {
        return Err(EvalError::TooFewOrderedPairs {
            pairs: ordered_pairs,
        });
    }

    let predictions: Vec<f64> = items.iter().map(|&(_, p)| p).collect();
    let mut discordant = count_ascending_pairs(&predictions);
    let mut tied = count_equal_pairs(&predictions);
    for &(s, e) in &blocks {
        discordant -= count_ascending_pairs(&predictions[s..e]);
        tied -= count_equal_pairs(&predictions[s..e]);
    }

    Ok((discordant as f64 + TIE_PENALTY * tied as f64) / ordered_pairs as f64)
}

fn pairs_of(n: usize) -> u64 {
    let n = n as u64;
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

/// Number of index pairs `i < j` with `values[i] < values[j]`, by merge
/// sorting in descending order: whenever the right head strictly beats the
/// left head it beats every remaining left element.
fn count_ascending_pairs(values: &[f64]) -> u64 {
    let mut work: Vec<f64> = values.to_vec();
    let mut scratch = work.clone();
    merge_count(&mut work, &mut scratch)
}

fn merge_count(values: &mut [f64], scratch: &mut [f64]) -> u64 {
    let n = values.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let (left_scratch, right_scratch) = scratch.split_at_mut(mid);
    let mut count = merge_count(&mut values[..mid], left_scratch)
        + merge_count(&mut values[mid..], right_scratch);

    let mut i = 0;
    let mut j = mid;
    for slot in scratch.iter_mut().take(n) {
        let take_right = j < n
            && (i >= mid || values[j].total_cmp(&values[i]) == Ordering::Greater);
        if take_right {
            if i < mid {
                count += (mid - i) as u64;
            }
            *slot = values[j];
            j += 1;
        } else {
            *slot = values[i];
            i += 1;
        }
    }
    values.copy_from_slice(&scratch[..n]);
    count
}

/// Number of index pairs with equal values.
fn count_equal_pairs(values: &[f64]) -> u64 {
    let mut sorted: Vec<f64> = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut count = 0;
    let mut run = 1;
    for pair in sorted.windows(2) {
        if pair[0].total_cmp(&pair[1]) == Ordering::Equal {
            run += 1;
        } else {
            count += pairs_of(run);
            run = 1;
        }
    }
    count + pairs_of(run)
}

/// Ranks lexicon terms by positive and by negative score and measures both
/// rankings against the gold standard. A term carried by several synsets
/// takes its maximum score per aspect. Every gold term must be present.
pub fn evaluate_lexicon(
    lexicon: &SentiLexicon,
    gold: &GoldRanking,
) -> Result<(f64, f64), EvalError> {
    let mut positive: BTreeMap<String, f64> = BTreeMap::new();
    let mut negative: BTreeMap<String, f64> = BTreeMap::new();
    for synset in lexicon.iter() {
        for term in synset.terms() {
            let pos = positive.entry(term.clone()).or_insert(f64::NEG_INFINITY);
            *pos = pos.max(synset.scores().pos());
            let neg = negative.entry(term.clone()).or_insert(f64::NEG_INFINITY);
            *neg = neg.max(synset.scores().neg());
        }
    }
    let tau_positivity = kendall_tau_p(&positive, gold.positivity())?;
    let tau_negativity = kendall_tau_p(&negative, gold.negativity())?;
    Ok((tau_positivity, tau_negativity))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::{PolarityScores, PosTag, Synset};
    use alloc::format;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn perfect_predictions_score_one() {
        let f1 = f1_binary(&[true, false, true], &[true, false, true]).unwrap();
        assert_eq!(f1.micro, 1.0);
        assert_eq!(f1.macro_avg, 1.0);
    }

    #[test]
    fn all_wrong_on_balanced_data_scores_zero() {
        let f1 = f1_binary(&[true, false], &[false, true]).unwrap();
        assert_eq!(f1.micro, 0.0);
        assert_eq!(f1.macro_avg, 0.0);
    }

    #[test]
    fn hand_counted_confusion() {
        // TP = 2, FP = 1, FN = 1: precision = recall = 2/3.
        let predicted = [true, true, true, false, false];
        let gold = [true, true, false, true, false];
        let f1 = f1_binary(&predicted, &gold).unwrap();
        assert_eq!(f1.micro, 2.0 / 3.0);
    }

    #[test]
    fn f1_is_invariant_under_simultaneous_permutation() {
        let predicted = [true, true, false, true, false, false, true];
        let gold = [true, false, false, true, true, false, false];
        let base = f1_binary(&predicted, &gold).unwrap();
        let permutation = [3, 5, 0, 6, 2, 4, 1];
        let p2: Vec<bool> = permutation.iter().map(|&i| predicted[i]).collect();
        let g2: Vec<bool> = permutation.iter().map(|&i| gold[i]).collect();
        assert_eq!(f1_binary(&p2, &g2).unwrap(), base);
    }

    #[test]
    fn f1_rejects_length_mismatch() {
        assert!(matches!(
            f1_binary(&[true], &[true, false]),
            Err(EvalError::LengthMismatch { .. })
        ));
    }

    fn gold_from(values: &[(&str, f64)]) -> Vec<(String, f64)> {
        let mut list: Vec<(String, f64)> =
            values.iter().map(|&(t, v)| (t.to_string(), v)).collect();
        list.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        list
    }

    fn predicted_from(values: &[(&str, f64)]) -> BTreeMap<String, f64> {
        values.iter().map(|&(t, v)| (t.to_string(), v)).collect()
    }

    #[test]
    fn identical_ranking_has_zero_distance() {
        let gold = gold_from(&[("a", 3.0), ("b", 2.0), ("c", 1.0)]);
        let predicted = predicted_from(&[("a", 0.9), ("b", 0.5), ("c", 0.1)]);
        assert_eq!(kendall_tau_p(&predicted, &gold).unwrap(), 0.0);
    }

    #[test]
    fn full_reversal_has_distance_one() {
        let gold = gold_from(&[("a", 3.0), ("b", 2.0), ("c", 1.0)]);
        let predicted = predicted_from(&[("a", 0.1), ("b", 0.5), ("c", 0.9)]);
        assert_eq!(kendall_tau_p(&predicted, &gold).unwrap(), 1.0);
    }

    #[test]
    fn all_ties_cost_half() {
        let gold = gold_from(&[("a", 3.0), ("b", 2.0), ("c", 1.0)]);
        let predicted = predicted_from(&[("a", 0.5), ("b", 0.5), ("c", 0.5)]);
        assert_eq!(kendall_tau_p(&predicted, &gold).unwrap(), 0.5);
    }

    #[test]
    fn gold_ties_are_not_counted() {
        // Only the (a, c) and (b, c) pairs are gold-ordered; predicted gets
        // (a, c) right and (b, c) wrong.
        let gold = gold_from(&[("a", 2.0), ("b", 2.0), ("c", 1.0)]);
        let predicted = predicted_from(&[("a", 0.9), ("b", 0.1), ("c", 0.5)]);
        assert_eq!(kendall_tau_p(&predicted, &gold).unwrap(), 0.5);
    }

    #[test]
    fn missing_terms_are_listed() {
        let gold = gold_from(&[("a", 3.0), ("b", 2.0), ("c", 1.0)]);
        let predicted = predicted_from(&[("a", 0.9)]);
        match kendall_tau_p(&predicted, &gold) {
            Err(EvalError::MissingGoldTerms { terms }) => {
                assert_eq!(terms, vec!["b".to_string(), "c".to_string()]);
            }
            other => panic!("expected missing-terms error, got {other:?}"),
        }
    }

    #[test]
    fn fewer_than_two_ordered_pairs_is_an_error() {
        let gold = gold_from(&[("a", 2.0), ("b", 1.0)]);
        let predicted = predicted_from(&[("a", 0.9), ("b", 0.1)]);
        assert!(matches!(
            kendall_tau_p(&predicted, &gold),
            Err(EvalError::TooFewOrderedPairs { pairs: 1 })
        ));
    }

    #[test]
    fn merge_count_agrees_with_naive_count_on_small_inputs() {
        let cases: &[&[f64]] = &[
            &[],
            &[1.0],
            &[1.0, 2.0],
            &[2.0, 1.0],
            &[1.0, 1.0, 1.0],
            &[3.0, 1.0, 2.0, 1.0, 3.0],
            &[0.5, 0.5, 0.25, 0.75, 0.25, 1.0],
        ];
        for values in cases {
            let naive = {
                let mut c = 0u64;
                for i in 0..values.len() {
                    for j in i + 1..values.len() {
                        if values[i] < values[j] {
                            c += 1;
                        }
                    }
                }
                c
            };
            assert_eq!(count_ascending_pairs(values), naive, "case {values:?}");
        }
    }

    fn one_term_lexicon(scores: &[(&str, f64, f64)]) -> SentiLexicon {
        SentiLexicon::from_synsets(scores.iter().enumerate().map(|(i, &(term, pos, neg))| {
            Synset::new(
                PosTag::Adjective,
                format!("{:08}", i + 1),
                PolarityScores::new(pos, neg).unwrap(),
                vec![term.to_string()],
                "gloss".to_string(),
            )
            .unwrap()
        }))
        .unwrap()
    }

    #[test]
    fn lexicon_matching_gold_order_scores_zero() {
        let lexicon = one_term_lexicon(&[("a", 0.9, 0.0), ("b", 0.5, 0.2), ("c", 0.1, 0.4)]);
        let gold = GoldRanking::new(vec![
            ("a".to_string(), 3.0, 1.0),
            ("b".to_string(), 2.0, 2.0),
            ("c".to_string(), 1.0, 3.0),
        ])
        .unwrap();
        assert_eq!(evaluate_lexicon(&lexicon, &gold).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn all_equal_scores_cost_half_everywhere() {
        let lexicon = one_term_lexicon(&[("a", 0.5, 0.5), ("b", 0.5, 0.5), ("c", 0.5, 0.5)]);
        let gold = GoldRanking::new(vec![
            ("a".to_string(), 3.0, 3.0),
            ("b".to_string(), 2.0, 2.0),
            ("c".to_string(), 1.0, 1.0),
        ])
        .unwrap();
        assert_eq!(evaluate_lexicon(&lexicon, &gold).unwrap(), (0.5, 0.5));
    }

    #[test]
    fn duplicate_gold_terms_are_rejected() {
        let err = GoldRanking::new(vec![
            ("a".to_string(), 1.0, 0.0),
            ("a".to_string(), 0.5, 0.0),
        ])
        .unwrap_err();
        assert!(matches!(err, EvalError::DuplicateGoldTerm { .. }));
    }

    #[test]
    fn gold_ranking_breaks_value_ties_lexicographically() {
        let gold = GoldRanking::new(vec![
            ("b".to_string(), 1.0, 0.0),
            ("a".to_string(), 1.0, 0.5),
            ("c".to_string(), 2.0, 0.5),
        ])
        .unwrap();
        let order: Vec<&str> = gold.positivity().iter().map(|(t, _)| t.as_str()).collect();
        assert_eq!(order, ["c", "a", "b"]);
    }
}
