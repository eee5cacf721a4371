//! Threshold split of the core and synonym/antonym training-set expansion.
//!
//! Expansion is hop-synchronous: within one hop every membership test uses
//! only the sets as they stood at the end of the previous hop, so the result
//! does not depend on entry iteration order. Links are followed in both
//! directions — an entry joins a set whether it names a member or a member's
//! entry names it. An entry reachable into both polar sets in the same hop is
//! a conflict: it is excluded from both sets, permanently, and reported.
//! The neutral set is never expanded.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::corebuild::CoreSynset;
use crate::dictionary::{Dictionary, DictionaryEntry, Link};
use crate::lexicon::PosTag;

/// Split threshold from the construction recipe.
pub const DEFAULT_SPLIT_THRESHOLD: f64 = 0.3;

pub type MemberKey = (String, PosTag);

/// How a member entered its set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Core,
    Synonym,
    Antonym,
}

impl Origin {
    pub fn code(self) -> &'static str {
        match self {
            Origin::Core => "core",
            Origin::Synonym => "synonym",
            Origin::Antonym => "antonym",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetName {
    Positive,
    Negative,
    Neutral,
}

impl SetName {
    pub fn code(self) -> &'static str {
        match self {
            SetName::Positive => "pos",
            SetName::Negative => "neg",
            SetName::Neutral => "neu",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Member {
    pub term: String,
    pub pos_tag: PosTag,
    pub gloss: String,
    pub origin: Origin,
    pub hop: u32,
}

impl Member {
    fn key(&self) -> MemberKey {
        (self.term.clone(), self.pos_tag)
    }
}

/// The three pairwise-disjoint training sets, keyed by `(term, pos_tag)` and
/// iterated in key order.
#[derive(Debug, Clone, Default)]
pub struct TrainingSets {
    positive: BTreeMap<MemberKey, Member>,
    negative: BTreeMap<MemberKey, Member>,
    neutral: BTreeMap<MemberKey, Member>,
}

impl TrainingSets {
    pub fn contains(&self, term: &str, pos_tag: PosTag) -> Option<SetName> {
        let key = (String::from(term), pos_tag);
        if self.positive.contains_key(&key) {
            Some(SetName::Positive)
        } else if self.negative.contains_key(&key) {
            Some(SetName::Negative)
        } else if self.neutral.contains_key(&key) {
            Some(SetName::Neutral)
        } else {
            None
        }
    }

    /// Inserts into the positive set unless the key already belongs to any
    /// set; returns whether the member was added.
    pub fn insert_positive(&mut self, member: Member) -> bool {
        self.insert(SetName::Positive, member)
    }

    pub fn insert_negative(&mut self, member: Member) -> bool {
        self.insert(SetName::Negative, member)
    }

    pub fn insert_neutral(&mut self, member: Member) -> bool {
        self.insert(SetName::Neutral, member)
    }

    fn insert(&mut self, set: SetName, member: Member) -> bool {
        if self.contains(&member.term, member.pos_tag).is_some() {
            return false;
        }
        let target = match set {
            SetName::Positive => &mut self.positive,
            SetName::Negative => &mut self.negative,
            SetName::Neutral => &mut self.neutral,
        };
        target.insert(member.key(), member);
        true
    }

    pub fn positive(&self) -> impl Iterator<Item = &Member> {
        self.positive.values()
    }

    pub fn negative(&self) -> impl Iterator<Item = &Member> {
        self.negative.values()
    }

    pub fn neutral(&self) -> impl Iterator<Item = &Member> {
        self.neutral.values()
    }

    /// All members with their set, positive then negative then neutral.
    pub fn iter_all(&self) -> impl Iterator<Item = (SetName, &Member)> {
        self.positive
            .values()
            .map(|m| (SetName::Positive, m))
            .chain(self.negative.values().map(|m| (SetName::Negative, m)))
            .chain(self.neutral.values().map(|m| (SetName::Neutral, m)))
    }

    pub fn positive_len(&self) -> usize {
        self.positive.len()
    }

    pub fn negative_len(&self) -> usize {
        self.negative.len()
    }

    pub fn neutral_len(&self) -> usize {
        self.neutral.len()
    }

    pub fn len(&self) -> usize {
        self.positive.len() + self.negative.len() + self.neutral.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Splits the core by score strength. A synset whose positive (negative)
/// score strictly exceeds the threshold goes to the positive (negative) set;
/// when both exceed it the larger score wins and an exact tie is neutral;
/// everything else is neutral.
pub fn split_core(core: &[CoreSynset], threshold: f64) -> TrainingSets {
    let mut sets = TrainingSets::default();
    for synset in core {
        let member = Member {
            term: synset.term.clone(),
            pos_tag: synset.pos_tag,
            gloss: synset.gloss.clone(),
            origin: Origin::Core,
            hop: 0,
        };
        let pos = synset.scores.pos();
        let neg = synset.scores.neg();
        if pos > threshold && neg > threshold {
            if pos > neg {
                sets.insert_positive(member);
            } else if neg > pos {
                sets.insert_negative(member);
            } else {
                sets.insert_neutral(member);
            }
        } else if pos > threshold {
            sets.insert_positive(member);
        } else if neg > threshold {
            sets.insert_negative(member);
        } else {
            sets.insert_neutral(member);
        }
    }
    sets
}

/// An entry that was reachable into both polar sets in the same hop.
#[derive(Debug, Clone, PartialEq)]
pub struct Conflict {
    pub term: String,
    pub pos_tag: PosTag,
    pub hop: u32,
}

#[derive(Debug, Clone)]
pub struct ExpansionOutcome {
    pub sets: TrainingSets,
    pub conflicts: Vec<Conflict>,
}

#[derive(Debug, Clone, Copy, Default)]
struct Reach {
    pos_syn: bool,
    pos_ant: bool,
    neg_syn: bool,
    neg_ant: bool,
}

impl Reach {
    fn positive(self) -> bool {
        self.pos_syn || self.pos_ant
    }

    fn negative(self) -> bool {
        self.neg_syn || self.neg_ant
    }
}

/// Term-to-POS index of one set, for matching links against members.
struct SetIndex {
    terms: BTreeMap<String, BTreeSet<PosTag>>,
}

impl SetIndex {
    fn build<'a>(members: impl Iterator<Item = &'a Member>) -> SetIndex {
        let mut terms: BTreeMap<String, BTreeSet<PosTag>> = BTreeMap::new();
        for member in members {
            terms.entry(member.term.clone()).or_default().insert(member.pos_tag);
        }
        SetIndex { terms }
    }

    fn matches(&self, link: &Link) -> bool {
        match self.terms.get(&link.term) {
            None => false,
            Some(tags) => link.pos_tag.map_or(true, |p| tags.contains(&p)),
        }
    }
}

/// Grows the polar sets through dictionary synonym/antonym links for
/// `radius` hops. Radius 0 is the identity.
pub fn expand(sets: &TrainingSets, dictionary: &Dictionary, radius: u32) -> ExpansionOutcome {
    let mut sets = sets.clone();
    let mut conflicts: Vec<Conflict> = Vec::new();
    let mut conflicted: BTreeSet<MemberKey> = BTreeSet::new();

    for hop in 1..=radius {
        let reach = reachability(&sets, dictionary, &conflicted);
        let mut progressed = false;
        for (key, r) in reach {
            let (term, pos_tag) = key;
            if r.positive() && r.negative() {
                conflicted.insert((term.clone(), pos_tag));
                conflicts.push(Conflict { term, pos_tag, hop });
                progressed = true;
                continue;
            }
            let entry = match dictionary.lookup(&term, pos_tag) {
                Some(entry) => entry,
                None => continue,
            };
            let member = |origin| Member {
                term: term.clone(),
                pos_tag,
                gloss: entry.definition.clone(),
                origin,
                hop,
            };
            if r.positive() {
                let origin = if r.pos_syn { Origin::Synonym } else { Origin::Antonym };
                progressed |= sets.insert_positive(member(origin));
            } else if r.negative() {
                let origin = if r.neg_syn { Origin::Synonym } else { Origin::Antonym };
                progressed |= sets.insert_negative(member(origin));
            }
        }
        if !progressed {
            break;
        }
    }

    ExpansionOutcome { sets, conflicts }
}

fn reachability(
    sets: &TrainingSets,
    dictionary: &Dictionary,
    conflicted: &BTreeSet<MemberKey>,
) -> BTreeMap<MemberKey, Reach> {
    let positive_index = SetIndex::build(sets.positive());
    let negative_index = SetIndex::build(sets.negative());

    let is_candidate = |entry: &DictionaryEntry| {
        sets.contains(&entry.term, entry.pos_tag).is_none()
            && !conflicted.contains(&(entry.term.clone(), entry.pos_tag))
    };

    let mut reach: BTreeMap<MemberKey, Reach> = BTreeMap::new();

    // Entry-side links: the candidate names a member.
    for entry in dictionary.entries() {
        if !is_candidate(entry) {
            continue;
        }
        let mut r = Reach::default();
        for link in &entry.synonyms {
            r.pos_syn |= positive_index.matches(link);
            r.neg_syn |= negative_index.matches(link);
        }
        for link in &entry.antonyms {
            // An antonym of a positive member is negative evidence and
            // vice versa.
            r.neg_ant |= positive_index.matches(link);
            r.pos_ant |= negative_index.matches(link);
        }
        if r.positive() || r.negative() {
            reach.insert((entry.term.clone(), entry.pos_tag), r);
        }
    }

    // Member-side links: a member's entry names the candidate.
    let mut mark = |link: &Link, update: &mut dyn FnMut(&mut Reach)| {
        for &index in dictionary.entries_for_term(&link.term) {
            let entry = dictionary.entry(index);
            if !link.matches(&entry.term, entry.pos_tag) || !is_candidate(entry) {
                continue;
            }
            let r = reach.entry((entry.term.clone(), entry.pos_tag)).or_default();
            update(r);
        }
    };
    for member in sets.positive() {
        if let Some(entry) = dictionary.lookup(&member.term, member.pos_tag) {
            for link in &entry.synonyms {
                mark(link, &mut |r| r.pos_syn = true);
            }
            for link in &entry.antonyms {
                mark(link, &mut |r| r.neg_ant = true);
            }
        }
    }
    for member in sets.negative() {
        if let Some(entry) = dictionary.lookup(&member.term, member.pos_tag) {
            for link in &entry.synonyms {
                mark(link, &mut |r| r.neg_syn = true);
            }
            for link in &entry.antonyms {
                mark(link, &mut |r| r.pos_ant = true);
            }
        }
    }

    reach
}
