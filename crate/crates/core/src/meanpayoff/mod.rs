//! Mean-payoff games over restricted arenas and the limitation measures
//! built on them.
//!
//! All values are reported per round, i.e. per protagonist move plus
//! adversary move, which is twice the per-edge mean on alternating arenas.

mod cycles;
mod game;

use std::collections::BTreeMap;

use num_rational::Ratio;

use crate::adviser::Adviser;
use crate::arena::{Arena, Owner};
use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// Per state, the arena edge index behind each position of a sorted edge list.
type EdgeOrder = Vec<Vec<usize>>;

/// An alternating, non-blocking arena with integer transition weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedArena {
    base: Arena,
    weights: Vec<Vec<i64>>,
}

impl WeightedArena {
    /// `weights[s][i]` is the weight of the `i`-th transition leaving state `s`.
    pub fn new(base: Arena, weights: Vec<Vec<i64>>) -> Result<Self> {
        if weights.len() != base.len()
            || (0..base.len()).any(|s| weights[s].len() != base.out(s).len())
        {
            return Err(Error::Semantic(
                "weight table does not match the arena".into(),
            ));
        }
        for (s, e) in base.transitions() {
            if base.owner(s) == base.owner(e.target) {
                return Err(Error::Semantic(format!(
                    "`{}` --{}--> `{}` does not alternate",
                    base.id(s),
                    e.input,
                    base.id(e.target)
                )));
            }
        }
        if let Some(s) = (0..base.len()).find(|&s| base.out(s).is_empty()) {
            return Err(Error::Semantic(format!(
                "`{}` has no transitions",
                base.id(s)
            )));
        }
        Ok(WeightedArena { base, weights })
    }

    pub fn base(&self) -> &Arena {
        &self.base
    }

    pub fn weights_at(&self, ix: usize) -> &[i64] {
        &self.weights[ix]
    }

    pub fn weight(&self, from: &str, input: &str) -> Option<i64> {
        let s = self.base.index_of(from)?;
        let i = self.base.out(s).iter().position(|e| e.input == input)?;
        Some(self.weights[s][i])
    }

    /// Multiplies every weight by `factor`.
    pub fn scaled(&self, factor: i64) -> WeightedArena {
        WeightedArena {
            base: self.base.clone(),
            weights: self
                .weights
                .iter()
                .map(|ws| ws.iter().map(|w| w * factor).collect())
                .collect(),
        }
    }

    /// Edge lists with weights, each sorted by input label.
    fn sorted_graph(&self) -> (Vec<Vec<(usize, i64)>>, EdgeOrder) {
        let mut graph = Vec::with_capacity(self.base.len());
        let mut order = Vec::with_capacity(self.base.len());
        for s in 0..self.base.len() {
            let out = self.base.out(s);
            let mut idx: Vec<usize> = (0..out.len()).collect();
            idx.sort_by(|&a, &b| out[a].input.cmp(&out[b].input));
            graph.push(
                idx.iter()
                    .map(|&i| (out[i].target, self.weights[s][i]))
                    .collect(),
            );
            order.push(idx);
        }
        (graph, order)
    }
}

/// A positional strategy: one input per state of the player it belongs to.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MemorylessStrategy(pub BTreeMap<String, String>);

impl MemorylessStrategy {
    pub fn choice(&self, state: &str) -> Option<&str> {
        self.0.get(state).map(String::as_str)
    }

    pub fn set(&mut self, state: &str, input: &str) {
        self.0.insert(state.to_string(), input.to_string());
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueReport {
    /// Optimal mean payoff per round from each state.
    pub per_state: BTreeMap<String, Rational>,
    pub strategy: MemorylessStrategy,
    /// Adversary choices that hold the protagonist to its value.
    pub adversary_witness: MemorylessStrategy,
}

impl ValueReport {
    pub fn value(&self, state: &str) -> Option<Rational> {
        self.per_state.get(state).copied()
    }
}

/// Weights each protagonist move by minus the number of inputs `adviser`
/// forbids at the adversary state it enters; adversary moves weigh nothing.
pub fn build_meanpayoff(restricted: &Arena, adviser: &Adviser) -> Result<WeightedArena> {
    let mut weights = Vec::with_capacity(restricted.len());
    for s in 0..restricted.len() {
        let mut ws = Vec::new();
        for e in restricted.out(s) {
            let w = match restricted.owner(s) {
                Owner::Adversary => 0,
                Owner::Protagonist => {
                    let target = restricted.id(e.target);
                    if !adviser.has_entry(target) {
                        return Err(Error::MissingAdviserEntry(target.to_string()));
                    }
                    -(adviser.count_at(target) as i64)
                }
            };
            ws.push(w);
        }
        weights.push(ws);
    }
    WeightedArena::new(restricted.clone(), weights)
}

/// Exact optimal values with the protagonist maximizing.
pub fn solve(weighted: &WeightedArena) -> ValueReport {
    let arena = &weighted.base;
    let (graph, order) = weighted.sorted_graph();
    let maximizer = (0..arena.len())
        .map(|s| arena.owner(s) == Owner::Protagonist)
        .collect();
    let solution = game::Game {
        maximizer,
        succ: graph,
    }
    .solve();
    let label = |s: usize, i: usize| arena.out(s)[order[s][i]].input.clone();
    let mut report = ValueReport {
        per_state: BTreeMap::new(),
        strategy: MemorylessStrategy::default(),
        adversary_witness: MemorylessStrategy::default(),
    };
    for s in 0..arena.len() {
        let id = arena.id(s).to_string();
        report.per_state.insert(id.clone(), solution.values[s] * 2);
        match arena.owner(s) {
            Owner::Protagonist => {
                report
                    .strategy
                    .0
                    .insert(id, label(s, solution.max_choice[s]));
            }
            Owner::Adversary => {
                report
                    .adversary_witness
                    .0
                    .insert(id, label(s, solution.min_choice[s]));
            }
        }
    }
    report
}

/// The restricted arena, weighted game and its solution for a good adviser.
pub fn solve_adviser(arena: &Arena, adviser: &Adviser) -> Result<(Arena, ValueReport)> {
    let restricted = arena.winning_restricted(adviser)?.ok_or(Error::NotGood)?;
    let report = solve(&build_meanpayoff(&restricted, adviser)?);
    Ok((restricted, report))
}

/// Worst-case long-run number of forbidden inputs per adversary visit under
/// the best protagonist strategy.
pub fn lambda(arena: &Arena, adviser: &Adviser) -> Result<Rational> {
    let (restricted, report) = solve_adviser(arena, adviser)?;
    Ok(-report
        .value(restricted.initial_id())
        .expect("initial state is solved"))
}

/// Worst-case long-run number of forbidden inputs per adversary visit when
/// the protagonist follows `strategy`.
pub fn gamma(arena: &Arena, adviser: &Adviser, strategy: &MemorylessStrategy) -> Result<Rational> {
    let restricted = arena.winning_restricted(adviser)?.ok_or(Error::NotGood)?;
    let weighted = build_meanpayoff(&restricted, adviser)?;
    let mut graph: Vec<Vec<(usize, i64)>> = Vec::with_capacity(restricted.len());
    for s in 0..restricted.len() {
        let out = restricted.out(s);
        let edges: Vec<(usize, i64)> = match restricted.owner(s) {
            Owner::Adversary => out
                .iter()
                .zip(weighted.weights_at(s))
                .map(|(e, &w)| (e.target, w))
                .collect(),
            Owner::Protagonist => {
                let id = restricted.id(s);
                let input = strategy
                    .choice(id)
                    .ok_or_else(|| Error::MissingChoice(id.to_string()))?;
                let i = out.iter().position(|e| e.input == input).ok_or_else(|| {
                    Error::InputNotEnabled {
                        state: id.to_string(),
                        input: input.to_string(),
                        enabled: restricted.enabled_at(s),
                    }
                })?;
                vec![(out[i].target, weighted.weights_at(s)[i])]
            }
        };
        graph.push(edges);
    }
    let eval = cycles::evaluate(&graph, false);
    Ok(-eval.values[restricted.initial()] * 2)
}
