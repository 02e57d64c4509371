use std::collections::BTreeMap;
use std::time::{SystemTime, UNIX_EPOCH};

use adviser_core::{Halt, Outcome, Owner, Rational, Session, StepEvent};
use serde::Serialize;
use uuid::Uuid;

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
pub struct Fraction {
    pub num: i64,
    pub den: i64,
}

impl From<Rational> for Fraction {
    fn from(r: Rational) -> Self {
        Fraction {
            num: *r.numer(),
            den: *r.denom(),
        }
    }
}

#[derive(Serialize)]
pub struct EventView {
    actor: &'static str,
    input: String,
    from: String,
    to: String,
    outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    new_adviser: Option<usize>,
}

impl From<&StepEvent> for EventView {
    fn from(e: &StepEvent) -> Self {
        EventView {
            actor: e.actor.name(),
            input: e.input.clone(),
            from: e.from.clone(),
            to: e.to.clone(),
            outcome: e.outcome.name(),
            new_adviser: match e.outcome {
                Outcome::SoftViolation { new_adviser } => Some(new_adviser),
                _ => None,
            },
        }
    }
}

#[derive(Serialize)]
struct AdviceView {
    hard: Vec<String>,
    soft: Vec<String>,
    allowed: Vec<String>,
}

#[derive(Serialize)]
struct CandidateLambda {
    index: usize,
    lambda: Fraction,
}

#[derive(Serialize)]
struct Summary {
    initial: String,
    candidates: usize,
    good: usize,
    truncated: bool,
    best_index: Option<usize>,
    best_lambda: Option<Fraction>,
    lambdas: Vec<CandidateLambda>,
}

#[derive(Serialize)]
pub struct SessionView {
    id: String,
    created_at: u64,
    state: String,
    owner: &'static str,
    halted: &'static str,
    adviser_index: usize,
    adviser: BTreeMap<String, Vec<String>>,
    lambda: Option<Fraction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    strategy_choice: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    advice: Option<AdviceView>,
    running_sum: u64,
    rounds: u64,
    running_average: Option<Fraction>,
    history: Vec<EventView>,
    summary: Summary,
}

impl SessionView {
    pub fn new(id: Uuid, s: &Session, created_at: SystemTime) -> Self {
        let bundle = s.bundle();
        let current = &bundle.candidates[s.current_adviser()];
        let live = s.halted() == Halt::No;
        let advice = (live && s.current_owner() == Owner::Adversary)
            .then(|| s.advice().ok())
            .flatten()
            .map(|a| AdviceView {
                hard: a.hard.into_iter().collect(),
                soft: a.soft.into_iter().collect(),
                allowed: a.allowed.into_iter().collect(),
            });
        let strategy_choice = (live && s.current_owner() == Owner::Protagonist)
            .then(|| {
                s.current_strategy()
                    .choice(s.current_state())
                    .map(str::to_string)
            })
            .flatten();
        SessionView {
            id: id.to_string(),
            created_at: created_at
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            state: s.current_state().to_string(),
            owner: s.current_owner().name(),
            halted: s.halted().name(),
            adviser_index: s.current_adviser(),
            adviser: current
                .adviser
                .entries()
                .map(|(k, v)| (k.to_string(), v.iter().cloned().collect()))
                .collect(),
            lambda: current.lambda.map(Fraction::from),
            strategy_choice,
            advice,
            running_sum: s.running_sum(),
            rounds: s.rounds(),
            running_average: s.running_average().map(Fraction::from),
            history: s.history().iter().map(EventView::from).collect(),
            summary: Summary {
                initial: bundle.arena.initial_id().to_string(),
                candidates: bundle.candidates.len(),
                good: bundle.good_count(),
                truncated: bundle.truncated,
                best_index: bundle.best_index,
                best_lambda: bundle.best().and_then(|b| b.lambda).map(Fraction::from),
                lambdas: bundle
                    .candidates
                    .iter()
                    .enumerate()
                    .filter_map(|(index, c)| {
                        c.lambda.map(|l| CandidateLambda {
                            index,
                            lambda: l.into(),
                        })
                    })
                    .collect(),
            },
        }
    }
}
