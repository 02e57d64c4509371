//! The losing set and the nominal adviser.

use std::collections::BTreeSet;

use crate::adviser::Adviser;
use crate::arena::{Arena, Owner};

/// Increasing sequence of losing sets. The first level is the unsafe set and
/// the last two levels are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LosingLadder {
    pub levels: Vec<BTreeSet<String>>,
}

impl LosingLadder {
    pub fn final_set(&self) -> &BTreeSet<String> {
        self.levels.last().expect("ladder always has a level")
    }

    pub fn contains(&self, id: &str) -> bool {
        self.final_set().contains(id)
    }

    /// Number of growth steps taken before the fixpoint was reached.
    pub fn iterations(&self) -> usize {
        self.levels.len() - 1
    }
}

/// Least set containing the unsafe states and every state all of whose
/// successors are already in it. States without successors join at once.
pub fn compute_losing(arena: &Arena) -> LosingLadder {
    let n = arena.len();
    let mut losing: Vec<bool> = (0..n).map(|s| !arena.is_safe(s)).collect();
    let to_ids = |flags: &[bool]| -> BTreeSet<String> {
        (0..n)
            .filter(|&s| flags[s])
            .map(|s| arena.id(s).to_string())
            .collect()
    };
    let mut levels = vec![to_ids(&losing)];
    loop {
        let next: Vec<bool> = (0..n)
            .map(|s| losing[s] || arena.out(s).iter().all(|e| losing[e.target]))
            .collect();
        let grew = next != losing;
        losing = next;
        levels.push(to_ids(&losing));
        if !grew {
            break;
        }
    }
    LosingLadder { levels }
}

/// Forbids every input at unsafe adversary states and every input leading
/// into the losing set elsewhere. Every adversary state gets an entry.
pub fn nominal_adviser(arena: &Arena) -> (Adviser, LosingLadder) {
    let ladder = compute_losing(arena);
    let losing = ladder.final_set();
    let mut alpha = Adviser::empty_for(arena);
    for s in arena.indices_of(Owner::Adversary) {
        let id = arena.id(s);
        for e in arena.out(s) {
            if !arena.is_safe(s) || losing.contains(arena.id(e.target)) {
                alpha.forbid(id, &e.input);
            }
        }
    }
    (alpha, ladder)
}

pub fn exists_good_adviser(arena: &Arena) -> bool {
    !compute_losing(arena).contains(arena.initial_id())
}
