//! Guided execution: the protagonist follows the current strategy, the
//! adversary is shown hard and soft advice, and disobeyed soft advice moves
//! the session to a less restrictive adviser.

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arena::Owner;
use crate::error::{Error, Result};
use crate::meanpayoff::{MemorylessStrategy, Rational};
use crate::search::{successors_in_order, SolveBundle, SwitchRanking};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Normal,
    SoftViolation { new_adviser: usize },
    HardViolation,
    UnsafeReached,
}

impl Outcome {
    pub fn name(&self) -> &'static str {
        match self {
            Outcome::Normal => "normal",
            Outcome::SoftViolation { .. } => "soft_violation",
            Outcome::HardViolation => "hard_violation",
            Outcome::UnsafeReached => "unsafe_reached",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepEvent {
    pub actor: Owner,
    pub input: String,
    pub from: String,
    pub to: String,
    pub outcome: Outcome,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Halt {
    No,
    HardViolation,
    Unsafe,
}

impl Halt {
    pub fn name(self) -> &'static str {
        match self {
            Halt::No => "no",
            Halt::HardViolation => "hard_violation",
            Halt::Unsafe => "unsafe",
        }
    }
}

/// Advice at an adversary state. The three sets partition the enabled inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdvicePacket {
    pub state: String,
    pub hard: BTreeSet<String>,
    pub soft: BTreeSet<String>,
    pub allowed: BTreeSet<String>,
}

/// How the adversary picks an input when no human is playing.
#[derive(Clone, Debug)]
pub enum AdversaryPolicy {
    /// Uniformly among allowed inputs.
    CompliantRandom(Box<ChaCha8Rng>),
    /// The solver's adversary witness for the current adviser.
    WorstCase,
    /// Inputs taken from the front of the list. Protagonist inputs may be
    /// interleaved; they are checked against the strategy.
    Scripted(VecDeque<String>),
}

impl AdversaryPolicy {
    pub fn compliant_random(seed: u64) -> Self {
        AdversaryPolicy::CompliantRandom(Box::new(ChaCha8Rng::seed_from_u64(seed)))
    }

    pub fn scripted<I, S>(inputs: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        AdversaryPolicy::Scripted(inputs.into_iter().map(Into::into).collect())
    }
}

#[derive(Clone, Debug)]
pub struct Session {
    bundle: Arc<SolveBundle>,
    current_state: usize,
    current_adviser: usize,
    history: Vec<StepEvent>,
    running_sum: u64,
    rounds: u64,
    halted: Halt,
    ranking: SwitchRanking,
}

impl Session {
    pub fn start(bundle: Arc<SolveBundle>) -> Result<Session> {
        Self::start_with(bundle, SwitchRanking::default())
    }

    pub fn start_with(bundle: Arc<SolveBundle>, ranking: SwitchRanking) -> Result<Session> {
        let best = bundle.best_index.ok_or(Error::Unsolved)?;
        if !bundle.candidates[best].is_solved() {
            return Err(Error::Unsolved);
        }
        Ok(Session {
            current_state: bundle.arena.initial(),
            current_adviser: best,
            history: Vec::new(),
            running_sum: 0,
            rounds: 0,
            halted: Halt::No,
            ranking,
            bundle,
        })
    }

    pub fn reset(&mut self) {
        self.current_state = self.bundle.arena.initial();
        self.current_adviser = self.bundle.best_index.expect("checked at start");
        self.history.clear();
        self.running_sum = 0;
        self.rounds = 0;
        self.halted = Halt::No;
    }

    pub fn bundle(&self) -> &Arc<SolveBundle> {
        &self.bundle
    }

    pub fn current_state(&self) -> &str {
        self.bundle.arena.id(self.current_state)
    }

    pub fn current_owner(&self) -> Owner {
        self.bundle.arena.owner(self.current_state)
    }

    pub fn current_adviser(&self) -> usize {
        self.current_adviser
    }

    pub fn current_strategy(&self) -> &MemorylessStrategy {
        self.bundle.candidates[self.current_adviser]
            .strategy
            .as_ref()
            .expect("current adviser is solved")
    }

    pub fn history(&self) -> &[StepEvent] {
        &self.history
    }

    pub fn halted(&self) -> Halt {
        self.halted
    }

    pub fn running_sum(&self) -> u64 {
        self.running_sum
    }

    pub fn rounds(&self) -> u64 {
        self.rounds
    }

    /// Mean number of forbidden inputs shown per adversary turn so far.
    pub fn running_average(&self) -> Option<Rational> {
        (self.rounds > 0).then(|| Rational::new(self.running_sum as i64, self.rounds as i64))
    }

    fn ensure_turn(&self, owner: Owner) -> Result<()> {
        if self.halted != Halt::No {
            return Err(Error::Halted(self.halted.name()));
        }
        if self.current_owner() != owner {
            return Err(Error::WrongTurn {
                state: self.current_state().to_string(),
                expected: owner.name(),
            });
        }
        Ok(())
    }

    fn advance(&mut self, actor: Owner, input: &str, to: usize, outcome: Outcome) -> StepEvent {
        let arena = &self.bundle.arena;
        let mut outcome = outcome;
        if !arena.is_safe(to) && outcome != Outcome::HardViolation {
            outcome = Outcome::UnsafeReached;
            self.halted = Halt::Unsafe;
        }
        let event = StepEvent {
            actor,
            input: input.to_string(),
            from: arena.id(self.current_state).to_string(),
            to: arena.id(to).to_string(),
            outcome,
        };
        self.current_state = to;
        self.history.push(event.clone());
        event
    }

    /// Plays the current strategy's choice.
    pub fn protagonist_step(&mut self) -> Result<StepEvent> {
        self.ensure_turn(Owner::Protagonist)?;
        let state = self.current_state();
        let input = self
            .current_strategy()
            .choice(state)
            .ok_or_else(|| Error::MissingChoice(state.to_string()))?
            .to_string();
        let to = self
            .bundle
            .arena
            .successor(self.current_state, &input)
            .expect("strategy inputs are enabled");
        Ok(self.advance(Owner::Protagonist, &input, to, Outcome::Normal))
    }

    pub fn advice(&self) -> Result<AdvicePacket> {
        self.ensure_turn(Owner::Adversary)?;
        let state = self.current_state();
        let hard = self.bundle.nominal().adviser.at(state);
        let current = self.bundle.candidates[self.current_adviser]
            .adviser
            .at(state);
        let soft = current.difference(&hard).cloned().collect();
        let allowed = self
            .bundle
            .arena
            .enabled_at(self.current_state)
            .into_iter()
            .filter(|u| !current.contains(u))
            .collect();
        Ok(AdvicePacket {
            state: state.to_string(),
            hard,
            soft,
            allowed,
        })
    }

    pub fn adversary_step(&mut self, input: &str) -> Result<StepEvent> {
        self.ensure_turn(Owner::Adversary)?;
        let arena = &self.bundle.arena;
        let from = self.current_state;
        let state = arena.id(from).to_string();
        let to = arena
            .successor(from, input)
            .ok_or_else(|| Error::InputNotEnabled {
                state: state.clone(),
                input: input.to_string(),
                enabled: arena.enabled_at(from),
            })?;
        let issued = self.bundle.candidates[self.current_adviser]
            .adviser
            .count_at(&state) as u64;
        let outcome = if self.bundle.nominal().adviser.forbids(&state, input) {
            self.halted = Halt::HardViolation;
            Outcome::HardViolation
        } else if self.bundle.candidates[self.current_adviser]
            .adviser
            .forbids(&state, input)
        {
            let next = self.switch_target(&state, input, arena.id(to))?;
            self.current_adviser = next;
            Outcome::SoftViolation { new_adviser: next }
        } else {
            Outcome::Normal
        };
        self.running_sum += issued;
        self.rounds += 1;
        Ok(self.advance(Owner::Adversary, input, to, outcome))
    }

    fn switch_target(&self, state: &str, input: &str, successor: &str) -> Result<usize> {
        let feasible = |c: &crate::search::CandidateRecord| {
            !c.adviser.forbids(state, input)
                && c.restricted.as_ref().is_some_and(|t| t.contains(successor))
        };
        successors_in_order(
            &self.bundle,
            self.current_adviser,
            feasible,
            &self.ranking,
            Some(successor),
        )
        .first()
        .copied()
        .ok_or_else(|| Error::NoFeasibleAdviser {
            state: state.to_string(),
            input: input.to_string(),
        })
    }

    /// Lets `policy` pick the adversary's input.
    pub fn auto_adversary(&mut self, policy: &mut AdversaryPolicy) -> Result<StepEvent> {
        self.ensure_turn(Owner::Adversary)?;
        let input = match policy {
            AdversaryPolicy::CompliantRandom(rng) => {
                let allowed: Vec<String> = self.advice()?.allowed.into_iter().collect();
                allowed
                    .choose(rng)
                    .cloned()
                    .ok_or_else(|| Error::NoFeasibleAdviser {
                        state: self.current_state().to_string(),
                        input: String::new(),
                    })?
            }
            AdversaryPolicy::WorstCase => self.bundle.candidates[self.current_adviser]
                .adversary_witness
                .as_ref()
                .and_then(|w| w.choice(self.current_state()))
                .expect("every adversary state of a solved arena has a witness")
                .to_string(),
            AdversaryPolicy::Scripted(queue) => queue.pop_front().ok_or(Error::ScriptExhausted)?,
        };
        self.adversary_step(&input)
    }

    /// One move by whoever is to play; the adversary uses `policy`.
    pub fn step(&mut self, policy: &mut AdversaryPolicy) -> Result<StepEvent> {
        match self.current_owner() {
            Owner::Protagonist => {
                if let AdversaryPolicy::Scripted(queue) = policy {
                    let expected = self.current_strategy().choice(self.current_state());
                    if let (Some(got), Some(expected)) = (queue.front(), expected) {
                        if self.bundle.arena.protagonist_inputs().contains(got) && got != expected {
                            return Err(Error::ScriptMismatch {
                                expected: expected.to_string(),
                                got: got.clone(),
                            });
                        }
                        if got == expected {
                            queue.pop_front();
                        }
                    }
                }
                self.protagonist_step()
            }
            Owner::Adversary => self.auto_adversary(policy),
        }
    }
}
