//! Candidate advisers above the nominal one and selection of the least
//! limiting among them.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::adviser::Adviser;
use crate::arena::{Arena, Owner};
use crate::error::{Error, Result};
use crate::meanpayoff::{build_meanpayoff, solve, MemorylessStrategy, Rational};
use crate::nominal::{nominal_adviser, LosingLadder};

pub const DEFAULT_CAP: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateRecord {
    pub adviser: Adviser,
    /// Bit `i` set when the `i`-th free choice is forbidden on top of the
    /// nominal adviser.
    pub mask: u64,
    pub good: bool,
    pub restricted: Option<Arena>,
    pub lambda: Option<Rational>,
    pub strategy: Option<MemorylessStrategy>,
    pub per_state_value: Option<BTreeMap<String, Rational>>,
    pub adversary_witness: Option<MemorylessStrategy>,
}

impl CandidateRecord {
    pub fn is_solved(&self) -> bool {
        self.lambda.is_some()
    }

    /// Limitation measured from `state` when that state is part of the
    /// restricted arena, otherwise from the initial state.
    pub fn lambda_from(&self, state: Option<&str>) -> Option<Rational> {
        let at_state = state
            .and_then(|s| self.per_state_value.as_ref()?.get(s))
            .map(|v| -*v);
        at_state.or(self.lambda)
    }
}

#[derive(Clone, Debug)]
pub struct SolveBundle {
    pub arena: Arena,
    pub ladder: LosingLadder,
    pub free_choices: Vec<(String, String)>,
    /// Generated supersets of the nominal adviser in counting order; the
    /// nominal adviser comes first.
    pub candidates: Vec<CandidateRecord>,
    pub best_index: Option<usize>,
    /// For each good candidate, the good candidates below it (itself included).
    pub ordering: Vec<Vec<usize>>,
    pub truncated: bool,
}

impl SolveBundle {
    pub const NOMINAL: usize = 0;

    pub fn nominal(&self) -> &CandidateRecord {
        &self.candidates[Self::NOMINAL]
    }

    pub fn best(&self) -> Option<&CandidateRecord> {
        self.best_index.map(|i| &self.candidates[i])
    }

    pub fn good_count(&self) -> usize {
        self.candidates.iter().filter(|c| c.good).count()
    }

    /// Candidate `j` is below candidate `i` in the pointwise order.
    pub fn below(&self, j: usize, i: usize) -> bool {
        self.candidates[j].mask & !self.candidates[i].mask == 0
    }
}

/// Adversary transitions that survive the nominal restriction and are not
/// already forbidden by it.
pub fn free_choices(arena: &Arena, nominal: &Adviser) -> Result<Vec<(String, String)>> {
    let t = arena
        .nonblocking_restricted(nominal)?
        .ok_or(Error::NoGoodAdviser)?;
    Ok(t.transitions()
        .filter(|(s, _)| t.owner(*s) == Owner::Adversary)
        .map(|(s, e)| (t.id(s).to_string(), e.input.clone()))
        .collect())
}

/// Whether the protagonist can stay safe against every adversary move the
/// adviser permits, together with the arena it then plays in.
pub fn is_good(arena: &Arena, adviser: &Adviser) -> Result<(bool, Option<Arena>)> {
    let restricted = arena.winning_restricted(adviser)?;
    Ok((restricted.is_some(), restricted))
}

/// Fails with the first pair `nominal` forbids that `adviser` does not.
pub fn check_superset(adviser: &Adviser, nominal: &Adviser) -> Result<()> {
    match adviser.missing_from(nominal) {
        Some((state, input)) => Err(Error::NotSuperset { state, input }),
        None => Ok(()),
    }
}

fn candidate(
    arena: &Arena,
    nominal: &Adviser,
    choices: &[(String, String)],
    mask: u64,
) -> Result<CandidateRecord> {
    let mut adviser = nominal.clone();
    for (i, (s, u)) in choices.iter().enumerate() {
        if i < 64 && mask >> i & 1 == 1 {
            adviser.forbid(s, u);
        }
    }
    let (good, restricted) = is_good(arena, &adviser)?;
    Ok(CandidateRecord {
        adviser,
        mask,
        good,
        restricted,
        lambda: None,
        strategy: None,
        per_state_value: None,
        adversary_witness: None,
    })
}

/// All supersets of the nominal adviser over the free choices, up to `cap`
/// of them, with goodness decided. Values are left empty.
pub fn enumerate_candidates(arena: &Arena, cap: usize) -> Result<SolveBundle> {
    if cap == 0 {
        return Err(Error::ZeroCap);
    }
    let (nominal, ladder) = nominal_adviser(arena);
    if ladder.contains(arena.initial_id()) {
        return Err(Error::NoGoodAdviser);
    }
    let choices = free_choices(arena, &nominal)?;
    let total = 1u128 << choices.len().min(127);
    let count = total.min(cap as u128) as u64;
    let truncated = total > cap as u128;
    let candidates = (0..count)
        .into_par_iter()
        .map(|mask| candidate(arena, &nominal, &choices, mask))
        .collect::<Result<Vec<_>>>()?;
    let mut bundle = SolveBundle {
        arena: arena.clone(),
        ladder,
        free_choices: choices,
        candidates,
        best_index: None,
        ordering: Vec::new(),
        truncated,
    };
    bundle.ordering = (0..bundle.candidates.len())
        .map(|i| {
            if !bundle.candidates[i].good {
                return Vec::new();
            }
            (0..bundle.candidates.len())
                .filter(|&j| bundle.candidates[j].good && bundle.below(j, i))
                .collect()
        })
        .collect();
    Ok(bundle)
}

/// Orders candidates by limitation, then forbidden-input count, then the
/// forbidden sets themselves.
fn by_rank(a: (Rational, &CandidateRecord), b: (Rational, &CandidateRecord)) -> Ordering {
    a.0.cmp(&b.0)
        .then(a.1.adviser.total().cmp(&b.1.adviser.total()))
        .then_with(|| a.1.adviser.pairs().cmp(&b.1.adviser.pairs()))
}

/// Enumerates candidates, solves the game of every good one, and selects
/// the least limiting.
pub fn synthesize(arena: &Arena, cap: usize) -> Result<SolveBundle> {
    let mut bundle = enumerate_candidates(arena, cap)?;
    let solved = bundle
        .candidates
        .par_iter()
        .map(|c| match &c.restricted {
            Some(t) => build_meanpayoff(t, &c.adviser).map(|w| Some(solve(&w))),
            None => Ok(None),
        })
        .collect::<Result<Vec<_>>>()?;
    for (c, report) in bundle.candidates.iter_mut().zip(solved) {
        let Some(report) = report else { continue };
        let init = c.restricted.as_ref().unwrap().initial_id().to_string();
        c.lambda = Some(-report.per_state[&init]);
        c.strategy = Some(report.strategy);
        c.adversary_witness = Some(report.adversary_witness);
        c.per_state_value = Some(report.per_state);
    }
    bundle.best_index = bundle
        .candidates
        .iter()
        .enumerate()
        .filter(|(_, c)| c.good)
        .min_by(|(_, a), (_, b)| by_rank((a.lambda.unwrap(), a), (b.lambda.unwrap(), b)))
        .map(|(i, _)| i);
    Ok(bundle)
}

/// Where limitation is measured when ranking switch targets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum SwitchRanking {
    /// Value at the given state when the candidate's arena contains it.
    #[default]
    AtState,
    /// Limitation from the initial state.
    AtInitial,
}

/// Good candidates below `current` accepted by `feasible`, best first.
/// `state` is where limitation is measured under [`SwitchRanking::AtState`].
pub fn successors_in_order(
    bundle: &SolveBundle,
    current: usize,
    feasible: impl Fn(&CandidateRecord) -> bool,
    ranking: &SwitchRanking,
    state: Option<&str>,
) -> Vec<usize> {
    let at = match ranking {
        SwitchRanking::AtState => state,
        SwitchRanking::AtInitial => None,
    };
    let mut list: Vec<(Rational, usize)> = bundle
        .candidates
        .iter()
        .enumerate()
        .filter(|&(j, c)| c.good && c.is_solved() && bundle.below(j, current) && feasible(c))
        .map(|(j, c)| (c.lambda_from(at).unwrap(), j))
        .collect();
    list.sort_by(|a, b| {
        by_rank(
            (a.0, &bundle.candidates[a.1]),
            (b.0, &bundle.candidates[b.1]),
        )
    });
    list.into_iter().map(|(_, j)| j).collect()
}
