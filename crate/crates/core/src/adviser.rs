use std::collections::{BTreeMap, BTreeSet};

use crate::arena::{Arena, Owner};
use crate::error::{Error, Result};

/// Forbidden adversary inputs, keyed by adversary state id.
///
/// The derived ordering compares the maps entry by entry and is used as the
/// final tie-breaker when ranking advisers.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Adviser {
    forbidden: BTreeMap<String, BTreeSet<String>>,
}

impl Adviser {
    pub fn new() -> Self {
        Self::default()
    }

    /// An adviser with an empty entry for every adversary state of `arena`.
    pub fn empty_for(arena: &Arena) -> Self {
        let forbidden = arena
            .indices_of(Owner::Adversary)
            .map(|ix| (arena.id(ix).to_string(), BTreeSet::new()))
            .collect();
        Adviser { forbidden }
    }

    /// Ensures `state` has an entry, possibly empty.
    pub fn touch(&mut self, state: &str) {
        self.forbidden.entry(state.to_string()).or_default();
    }

    pub fn forbid(&mut self, state: &str, input: &str) {
        self.forbidden
            .entry(state.to_string())
            .or_default()
            .insert(input.to_string());
    }

    pub fn allow(&mut self, state: &str, input: &str) -> bool {
        self.forbidden
            .get_mut(state)
            .is_some_and(|set| set.remove(input))
    }

    pub fn forbids(&self, state: &str, input: &str) -> bool {
        self.forbidden
            .get(state)
            .is_some_and(|set| set.contains(input))
    }

    pub fn has_entry(&self, state: &str) -> bool {
        self.forbidden.contains_key(state)
    }

    /// The forbidden set at `state`; empty when there is no entry.
    pub fn at(&self, state: &str) -> BTreeSet<String> {
        self.forbidden.get(state).cloned().unwrap_or_default()
    }

    pub fn count_at(&self, state: &str) -> usize {
        self.forbidden.get(state).map_or(0, BTreeSet::len)
    }

    pub fn total(&self) -> usize {
        self.forbidden.values().map(BTreeSet::len).sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &BTreeSet<String>)> {
        self.forbidden.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// All forbidden `(state, input)` pairs in sorted order.
    pub fn pairs(&self) -> Vec<(String, String)> {
        self.forbidden
            .iter()
            .flat_map(|(s, set)| set.iter().map(move |u| (s.clone(), u.clone())))
            .collect()
    }

    /// Checks that every key is an adversary state of `arena` and every
    /// forbidden input is enabled there.
    pub fn check_against(&self, arena: &Arena) -> Result<()> {
        for (state, inputs) in &self.forbidden {
            let ix = arena.require(state)?;
            if arena.owner(ix) != Owner::Adversary {
                return Err(Error::NotAdversaryState(state.clone()));
            }
            for u in inputs {
                if arena.successor(ix, u).is_none() {
                    return Err(Error::InputNotEnabled {
                        state: state.clone(),
                        input: u.clone(),
                        enabled: arena.enabled_at(ix),
                    });
                }
            }
        }
        Ok(())
    }

    /// Pointwise inclusion. Both advisers must have entries for the same
    /// states.
    pub fn leq(&self, other: &Adviser) -> Result<bool> {
        if !self.forbidden.keys().eq(other.forbidden.keys()) {
            return Err(Error::DomainMismatch);
        }
        Ok(self
            .forbidden
            .iter()
            .zip(other.forbidden.values())
            .all(|((_, mine), theirs)| mine.is_subset(theirs)))
    }

    /// First pair forbidden by `base` but not by `self`, if any.
    pub fn missing_from(&self, base: &Adviser) -> Option<(String, String)> {
        base.pairs().into_iter().find(|(s, u)| !self.forbids(s, u))
    }
}
