//! Property tests for the core invariants, with independent brute-force
//! oracles where the implementation takes a faster route.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use proptest::prelude::*;

use sentilex_core::corebuild::CoreSynset;
use sentilex_core::dictionary::{Dictionary, DictionaryEntry, Link};
use sentilex_core::eval::{f1_binary, kendall_tau_p, kfold, stratified_split, SplitSpec, TIE_PENALTY};
use sentilex_core::expand::{expand, split_core, SetName};
use sentilex_core::lexicon::{Label, PolarityScores, PosTag};
use sentilex_core::score::{normalize, MarginPair, NormalizationMode};

// --- Kendall tau against a brute-force pair oracle ---------------------------

fn tau_oracle(gold: &[(String, f64)], predicted: &BTreeMap<String, f64>) -> Option<f64> {
    let mut cost = 0.0;
    let mut pairs = 0u64;
    for i in 0..gold.len() {
        for j in i + 1..gold.len() {
            let (gi, gj) = (gold[i].1, gold[j].1);
            if gi == gj {
                continue;
            }
            pairs += 1;
            let (hi, lo) = if gi > gj {
                (predicted[&gold[i].0], predicted[&gold[j].0])
            } else {
                (predicted[&gold[j].0], predicted[&gold[i].0])
            };
            if hi < lo {
                cost += 1.0;
            } else if hi == lo {
                cost += TIE_PENALTY;
            }
        }
    }
    if pairs < 2 {
        None
    } else {
        Some(cost / pairs as f64)
    }
}

proptest! {
    #[test]
    fn tau_matches_the_pair_oracle(
        gold_values in proptest::collection::vec(0..5i32, 3..10),
        predicted_values in proptest::collection::vec(0..5i32, 10),
    ) {
        let gold: Vec<(String, f64)> = {
            let mut list: Vec<(String, f64)> = gold_values
                .iter()
                .enumerate()
                .map(|(i, &v)| (format!("t{i}"), f64::from(v)))
                .collect();
            list.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
            list
        };
        let predicted: BTreeMap<String, f64> = gold
            .iter()
            .enumerate()
            .map(|(i, (term, _))| (term.clone(), f64::from(predicted_values[i])))
            .collect();
        match tau_oracle(&gold, &predicted) {
            Some(expected) => {
                let got = kendall_tau_p(&predicted, &gold).unwrap();
                prop_assert_eq!(got, expected);
                prop_assert!((0.0..=1.0).contains(&got));
            }
            None => {
                prop_assert!(kendall_tau_p(&predicted, &gold).is_err());
            }
        }
    }
}

// --- expansion against a brute-force closure oracle --------------------------

#[derive(Debug, Clone)]
struct GraphSpec {
    nodes: usize,
    synonym_edges: Vec<(usize, usize)>,
    antonym_edges: Vec<(usize, usize)>,
    positive_seeds: Vec<usize>,
    negative_seeds: Vec<usize>,
}

fn graph_strategy() -> impl Strategy<Value = GraphSpec> {
    (3usize..12).prop_flat_map(|nodes| {
        let edge = (0..nodes, 0..nodes);
        (
            Just(nodes),
            proptest::collection::vec(edge.clone(), 0..nodes * 2),
            proptest::collection::vec(edge, 0..nodes),
            proptest::collection::btree_set(0..nodes, 1..3),
        )
            .prop_map(|(nodes, syn, ant, seeds)| {
                let seeds: Vec<usize> = seeds.into_iter().collect();
                let (positive_seeds, negative_seeds) = seeds.split_at(seeds.len().div_ceil(2));
                GraphSpec {
                    nodes,
                    synonym_edges: syn.into_iter().filter(|(a, b)| a != b).collect(),
                    antonym_edges: ant.into_iter().filter(|(a, b)| a != b).collect(),
                    positive_seeds: positive_seeds.to_vec(),
                    negative_seeds: negative_seeds.to_vec(),
                }
            })
    })
}

fn spec_to_inputs(spec: &GraphSpec) -> (Dictionary, Vec<CoreSynset>) {
    let name = |i: usize| format!("từ{i}");
    let mut entries: Vec<DictionaryEntry> = (0..spec.nodes)
        .map(|i| DictionaryEntry {
            term: name(i),
            pos_tag: PosTag::Adjective,
            synonyms: vec![],
            antonyms: vec![],
            definition: format!("nghĩa {i}"),
            examples: vec![],
        })
        .collect();
    for &(a, b) in &spec.synonym_edges {
        let link = Link::any_pos(name(b));
        if !entries[a].synonyms.contains(&link) {
            entries[a].synonyms.push(link);
        }
    }
    for &(a, b) in &spec.antonym_edges {
        let link = Link::any_pos(name(b));
        if !entries[a].antonyms.contains(&link) {
            entries[a].antonyms.push(link);
        }
    }
    let dictionary = Dictionary::new(entries).unwrap();
    let mut core = Vec::new();
    for &i in &spec.positive_seeds {
        core.push(CoreSynset {
            term: name(i),
            pos_tag: PosTag::Adjective,
            scores: PolarityScores::new(0.9, 0.0).unwrap(),
            gloss: format!("nghĩa {i}"),
        });
    }
    for &i in &spec.negative_seeds {
        core.push(CoreSynset {
            term: name(i),
            pos_tag: PosTag::Adjective,
            scores: PolarityScores::new(0.0, 0.9).unwrap(),
            gloss: format!("nghĩa {i}"),
        });
    }
    (dictionary, core)
}

/// Naive hop-synchronous closure over the undirected link relation: an
/// unassigned node reachable from the positive set through a synonym edge or
/// from the negative set through an antonym edge becomes positive, the
/// mirror image becomes negative, and a node reachable into both in the same
/// hop is conflicted forever.
fn closure_oracle(
    spec: &GraphSpec,
    radius: u32,
) -> (BTreeSet<usize>, BTreeSet<usize>, BTreeSet<usize>) {
    let mut positive: BTreeSet<usize> = spec.positive_seeds.iter().copied().collect();
    // Seeds listed in both polarities keep their first assignment
    // (split_core inserts positives first).
    let mut negative: BTreeSet<usize> = spec
        .negative_seeds
        .iter()
        .copied()
        .filter(|i| !positive.contains(i))
        .collect();
    let mut conflicted: BTreeSet<usize> = BTreeSet::new();

    let touches = |edges: &[(usize, usize)], node: usize, set: &BTreeSet<usize>| {
        edges.iter().any(|&(a, b)| {
            (a == node && set.contains(&b)) || (b == node && set.contains(&a))
        })
    };

    for _ in 0..radius {
        let mut new_positive = Vec::new();
        let mut new_negative = Vec::new();
        for node in 0..spec.nodes {
            if positive.contains(&node) || negative.contains(&node) || conflicted.contains(&node) {
                continue;
            }
            let to_positive = touches(&spec.synonym_edges, node, &positive)
                || touches(&spec.antonym_edges, node, &negative);
            let to_negative = touches(&spec.synonym_edges, node, &negative)
                || touches(&spec.antonym_edges, node, &positive);
            match (to_positive, to_negative) {
                (true, true) => {
                    conflicted.insert(node);
                }
                (true, false) => new_positive.push(node),
                (false, true) => new_negative.push(node),
                (false, false) => {}
            }
        }
        positive.extend(new_positive);
        negative.extend(new_negative);
    }
    (positive, negative, conflicted)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn expansion_matches_the_closure_oracle(spec in graph_strategy(), radius in 0u32..4) {
        let (dictionary, core) = spec_to_inputs(&spec);
        let sets = split_core(&core, 0.3);
        let out = expand(&sets, &dictionary, radius);
        let (positive, negative, conflicted) = closure_oracle(&spec, radius);

        for i in 0..spec.nodes {
            let term = format!("từ{i}");
            let got = out.sets.contains(&term, PosTag::Adjective);
            let expected = if positive.contains(&i) {
                Some(SetName::Positive)
            } else if negative.contains(&i) {
                Some(SetName::Negative)
            } else {
                None
            };
            prop_assert_eq!(got, expected, "node {} radius {}", i, radius);
        }
        let got_conflicts: BTreeSet<usize> = out
            .conflicts
            .iter()
            .map(|c| c.term.trim_start_matches("từ").parse::<usize>().unwrap())
            .collect();
        prop_assert_eq!(got_conflicts, conflicted);

        // Monotone in radius and disjoint by construction.
        let shallower = expand(&sets, &dictionary, radius.saturating_sub(1));
        for (set_name, member) in shallower.sets.iter_all() {
            prop_assert_eq!(out.sets.contains(&member.term, member.pos_tag), Some(set_name));
        }
    }
}

// --- splits ------------------------------------------------------------------

fn label_vec() -> impl Strategy<Value = Vec<Label>> {
    proptest::collection::vec(
        prop_oneof![
            Just(Label::Positive),
            Just(Label::Negative),
            Just(Label::Neutral)
        ],
        5..60,
    )
}

proptest! {
    #[test]
    fn stratified_split_partitions_with_balanced_strata(labels in label_vec(), seed in 0u64..1000) {
        let split = stratified_split(&labels, &SplitSpec::new(seed));
        let mut all: Vec<usize> = split
            .train
            .iter()
            .chain(&split.dev)
            .chain(&split.test)
            .copied()
            .collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..labels.len()).collect::<Vec<_>>());

        for stratum in Label::ALL {
            let total = labels.iter().filter(|&&l| l == stratum).count();
            for (part, ratio) in [(&split.train, 3.0), (&split.dev, 1.0), (&split.test, 1.0)] {
                let got = part.iter().filter(|&&i| labels[i] == stratum).count();
                let ideal = total as f64 * ratio / 5.0;
                prop_assert!((got as f64 - ideal).abs() <= 1.0);
            }
        }
    }

    #[test]
    fn kfold_partitions_and_balances(labels in label_vec(), seed in 0u64..1000) {
        prop_assume!(labels.len() >= 4);
        let folds = kfold(&labels, 4, seed).unwrap();
        let mut seen = BTreeSet::new();
        let mut sizes = Vec::new();
        for fold in &folds {
            for &i in &fold.validate {
                prop_assert!(seen.insert(i));
            }
            sizes.push(fold.validate.len());
        }
        prop_assert_eq!(seen.len(), labels.len());
        let min = sizes.iter().min().unwrap();
        let max = sizes.iter().max().unwrap();
        prop_assert!(max - min <= 1, "fold sizes {:?}", sizes);
    }
}

// --- normalization -----------------------------------------------------------

proptest! {
    #[test]
    fn linear_clamp_scores_always_satisfy_the_invariants(
        raw in proptest::collection::vec((-50.0f64..50.0, -50.0f64..50.0), 1..40),
    ) {
        let pairs: Vec<MarginPair> = raw
            .iter()
            .map(|&(p, n)| MarginPair { positivity: p, negativity: n })
            .collect();
        let out = normalize(&pairs, NormalizationMode::LinearClamp).unwrap();
        for s in &out.scores {
            prop_assert!(s.pos() >= 0.0 && s.pos() <= 1.0);
            prop_assert!(s.neg() >= 0.0 && s.neg() <= 1.0);
            prop_assert!(s.pos() + s.neg() <= 1.0 + 1e-9);
        }
        // Rank preservation on the positivity margins.
        for i in 0..pairs.len() {
            for j in 0..pairs.len() {
                if pairs[i].positivity > pairs[j].positivity {
                    prop_assert!(out.scores[i].pos() >= out.scores[j].pos());
                }
            }
        }
    }

    #[test]
    fn f1_is_permutation_invariant(
        outcomes in proptest::collection::vec((any::<bool>(), any::<bool>()), 2..30),
        swap in proptest::collection::vec(any::<prop::sample::Index>(), 0..10),
    ) {
        let predicted: Vec<bool> = outcomes.iter().map(|&(p, _)| p).collect();
        let gold: Vec<bool> = outcomes.iter().map(|&(_, g)| g).collect();
        let mut shuffled: Vec<usize> = (0..outcomes.len()).collect();
        for (k, index) in swap.iter().enumerate() {
            let i = index.index(shuffled.len());
            shuffled.swap(i, k % shuffled.len());
        }
        let p2: Vec<bool> = shuffled.iter().map(|&i| predicted[i]).collect();
        let g2: Vec<bool> = shuffled.iter().map(|&i| gold[i]).collect();
        prop_assert_eq!(
            f1_binary(&predicted, &gold).unwrap(),
            f1_binary(&p2, &g2).unwrap()
        );
    }
}
