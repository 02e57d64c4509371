//! Random arenas and brute-force reference computations.
//!
//! The references share no code with the library beyond the arena data
//! type: winning regions are greatest fixpoints computed by repeated
//! sweeps, and mean-payoff values enumerate every positional protagonist
//! strategy and every simple cycle.

#![allow(dead_code)]

use std::collections::BTreeSet;

use adviser_core::{Adviser, Arena, Owner, Rational};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub max_states: usize,
    pub max_out: usize,
    pub unsafe_chance: f64,
    /// Chance that a state gets no transitions at all.
    pub dead_end_chance: f64,
}

impl Shape {
    pub const NONBLOCKING: Shape = Shape {
        max_states: 12,
        max_out: 3,
        unsafe_chance: 0.2,
        dead_end_chance: 0.0,
    };
}

/// Alternating arena with a safe protagonist initial state `q0`.
pub fn random_arena(rng: &mut ChaCha8Rng, shape: Shape) -> Arena {
    let n = rng.gen_range(2..=shape.max_states);
    let mut owners = vec![Owner::Protagonist, Owner::Adversary];
    for _ in 2..n {
        owners.push(if rng.gen_bool(0.5) {
            Owner::Protagonist
        } else {
            Owner::Adversary
        });
    }
    let name = |i: usize, o: Owner| match o {
        Owner::Protagonist => format!("q{i}"),
        Owner::Adversary => format!("r{i}"),
    };
    let mut b = Arena::builder().initial("q0");
    for (i, &o) in owners.iter().enumerate() {
        let safe = i == 0 || !rng.gen_bool(shape.unsafe_chance);
        b = b.state(name(i, o), o, safe);
    }
    let mut counter = [0usize; 2];
    for (i, &o) in owners.iter().enumerate() {
        if i > 0 && rng.gen_bool(shape.dead_end_chance) {
            continue;
        }
        let targets: Vec<usize> = (0..n).filter(|&j| owners[j] != o).collect();
        let k = rng.gen_range(1..=shape.max_out);
        for _ in 0..k {
            let t = targets[rng.gen_range(0..targets.len())];
            let slot = if o == Owner::Protagonist { 0 } else { 1 };
            counter[slot] += 1;
            let input = match o {
                Owner::Protagonist => format!("p{}", counter[slot]),
                Owner::Adversary => format!("a{}", counter[slot]),
            };
            b = b.transition(name(i, o), input, name(t, owners[t]));
        }
    }
    b.build().expect("generated arenas are well formed")
}

/// Random integer weights in `[-max, 0]`, one per transition.
pub fn random_weights(rng: &mut ChaCha8Rng, arena: &Arena, max: i64) -> Vec<Vec<i64>> {
    (0..arena.len())
        .map(|s| {
            arena
                .out(s)
                .iter()
                .map(|_| -rng.gen_range(0..=max))
                .collect()
        })
        .collect()
}

/// Every `(state, input)` pair at adversary states.
pub fn adversary_edges(arena: &Arena) -> Vec<(String, String)> {
    arena
        .transitions()
        .filter(|(s, _)| arena.owner(*s) == Owner::Adversary)
        .map(|(s, e)| (arena.id(s).to_string(), e.input.clone()))
        .collect()
}

pub fn adviser_from(arena: &Arena, edges: &[(String, String)], mask: u64) -> Adviser {
    let mut a = Adviser::empty_for(arena);
    for (i, (s, u)) in edges.iter().enumerate() {
        if mask >> i & 1 == 1 {
            a.forbid(s, u);
        }
    }
    a
}

/// Greatest set of safe states from which the protagonist can keep the
/// play inside the set against every permitted adversary input.
pub fn winning_region(arena: &Arena, adviser: &Adviser) -> Vec<bool> {
    let n = arena.len();
    let mut inside: Vec<bool> = (0..n).map(|s| arena.is_safe(s)).collect();
    loop {
        let mut changed = false;
        for s in 0..n {
            if !inside[s] {
                continue;
            }
            let keep = match arena.owner(s) {
                Owner::Protagonist => arena.out(s).iter().any(|e| inside[e.target]),
                Owner::Adversary => {
                    let permitted: Vec<usize> = arena
                        .out(s)
                        .iter()
                        .filter(|e| !adviser.forbids(arena.id(s), &e.input))
                        .map(|e| e.target)
                        .collect();
                    !permitted.is_empty() && permitted.iter().all(|&t| inside[t])
                }
            };
            if !keep {
                inside[s] = false;
                changed = true;
            }
        }
        if !changed {
            return inside;
        }
    }
}

pub fn oracle_good(arena: &Arena, adviser: &Adviser) -> bool {
    winning_region(arena, adviser)[arena.initial()]
}

/// A graph over arena states where protagonist states have exactly one
/// edge. Weights are per edge.
type Fixed = Vec<Vec<(usize, i64)>>;

/// Every simple cycle of `graph`, each listed once from its smallest vertex.
fn simple_cycles(graph: &Fixed) -> Vec<Vec<usize>> {
    let n = graph.len();
    let mut cycles = Vec::new();
    for start in 0..n {
        let mut path = vec![start];
        let mut on_path = vec![false; n];
        on_path[start] = true;
        extend(graph, start, &mut path, &mut on_path, &mut cycles);
    }
    cycles
}

fn extend(
    graph: &Fixed,
    start: usize,
    path: &mut Vec<usize>,
    on: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let v = *path.last().unwrap();
    for &(t, _) in &graph[v] {
        if t == start {
            out.push(path.clone());
        } else if t > start && !on[t] {
            on[t] = true;
            path.push(t);
            extend(graph, start, path, on, out);
            path.pop();
            on[t] = false;
        }
    }
}

fn reach(graph: &Fixed, from: usize) -> Vec<bool> {
    let mut seen = vec![false; graph.len()];
    seen[from] = true;
    let mut stack = vec![from];
    while let Some(v) = stack.pop() {
        for &(t, _) in &graph[v] {
            if !seen[t] {
                seen[t] = true;
                stack.push(t);
            }
        }
    }
    seen
}

/// Mean weight per adversary visit around a cycle, over parallel edges
/// choosing the extreme one.
fn cycle_means(graph: &Fixed, arena: &Arena, cycle: &[usize], maximize: bool) -> Rational {
    let mut total = 0i64;
    for (i, &v) in cycle.iter().enumerate() {
        let next = cycle[(i + 1) % cycle.len()];
        let ws = graph[v].iter().filter(|(t, _)| *t == next).map(|&(_, w)| w);
        total += if maximize {
            ws.max().unwrap()
        } else {
            ws.min().unwrap()
        };
    }
    let rounds = cycle
        .iter()
        .filter(|&&v| arena.owner(v) == Owner::Adversary)
        .count() as i64;
    Rational::new(total, rounds)
}

/// Each protagonist state's choice set, restricted by `allowed`.
fn strategies(arena: &Arena, allowed: impl Fn(usize, usize) -> bool) -> Vec<Vec<(usize, usize)>> {
    // List of (state, edge index) options per protagonist state.
    let options: Vec<Vec<(usize, usize)>> = arena
        .indices_of(Owner::Protagonist)
        .map(|s| {
            (0..arena.out(s).len())
                .filter(|&i| allowed(s, i))
                .map(|i| (s, i))
                .collect()
        })
        .filter(|o: &Vec<(usize, usize)>| !o.is_empty())
        .collect();
    let mut all = vec![Vec::new()];
    for opts in options {
        let mut next = Vec::new();
        for prefix in &all {
            for &o in &opts {
                let mut p: Vec<(usize, usize)> = prefix.clone();
                p.push(o);
                next.push(p);
            }
        }
        all = next;
    }
    all
}

/// Per-state values: protagonist maximizes, adversary minimizes the mean
/// weight per round. The arena must be non-blocking and alternating.
pub fn oracle_values(arena: &Arena, weights: &[Vec<i64>]) -> Vec<Rational> {
    let n = arena.len();
    let mut best: Vec<Option<Rational>> = vec![None; n];
    for sigma in strategies(arena, |_, _| true) {
        let mut graph: Fixed = (0..n)
            .map(|s| {
                if arena.owner(s) == Owner::Adversary {
                    arena
                        .out(s)
                        .iter()
                        .zip(&weights[s])
                        .map(|(e, &w)| (e.target, w))
                        .collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        for &(s, i) in &sigma {
            graph[s].push((arena.out(s)[i].target, weights[s][i]));
        }
        let cycles = simple_cycles(&graph);
        let means: Vec<Rational> = cycles
            .iter()
            .map(|c| cycle_means(&graph, arena, c, false))
            .collect();
        for (s, slot) in best.iter_mut().enumerate() {
            let seen = reach(&graph, s);
            let v = cycles
                .iter()
                .zip(&means)
                .filter(|(c, _)| seen[c[0]])
                .map(|(_, m)| *m)
                .min()
                .expect("non-blocking graphs have reachable cycles");
            *slot = Some(slot.map_or(v, |b| b.max(v)));
        }
    }
    best.into_iter().map(Option::unwrap).collect()
}

/// Least long-run number of forbidden inputs per round the protagonist can
/// guarantee while staying in the winning region. `None` if not good.
pub fn oracle_lambda(arena: &Arena, adviser: &Adviser) -> Option<Rational> {
    let win = winning_region(arena, adviser);
    if !win[arena.initial()] {
        return None;
    }
    let n = arena.len();
    let cost = |t: usize| adviser.count_at(arena.id(t)) as i64;
    let mut best: Option<Rational> = None;
    for sigma in strategies(arena, |s, i| win[s] && win[arena.out(s)[i].target]) {
        let mut graph: Fixed = vec![Vec::new(); n];
        for s in 0..n {
            if win[s] && arena.owner(s) == Owner::Adversary {
                graph[s] = arena
                    .out(s)
                    .iter()
                    .filter(|e| !adviser.forbids(arena.id(s), &e.input))
                    .map(|e| (e.target, 0))
                    .collect();
            }
        }
        for &(s, i) in &sigma {
            let t = arena.out(s)[i].target;
            graph[s].push((t, cost(t)));
        }
        let seen = reach(&graph, arena.initial());
        let worst = simple_cycles(&graph)
            .iter()
            .filter(|c| seen[c[0]])
            .map(|c| cycle_means(&graph, arena, c, true))
            .max()
            .expect("the winning region has a reachable cycle");
        best = Some(best.map_or(worst, |b| b.min(worst)));
    }
    best
}

/// Every state sequence of exactly `len` states starting at the initial state.
pub fn prefixes(arena: &Arena, len: usize) -> BTreeSet<Vec<String>> {
    let mut frontier: Vec<Vec<usize>> = vec![vec![arena.initial()]];
    for _ in 1..len {
        let mut next = Vec::new();
        for p in &frontier {
            let v = *p.last().unwrap();
            for e in arena.out(v) {
                let mut q = p.clone();
                q.push(e.target);
                next.push(q);
            }
        }
        frontier = next;
    }
    frontier
        .into_iter()
        .map(|p| p.into_iter().map(|s| arena.id(s).to_string()).collect())
        .collect()
}

/// Prefixes of `len` states that extend to `len + |S|` states, i.e. that
/// begin some infinite play.
pub fn extendable_prefixes(arena: &Arena, len: usize) -> BTreeSet<Vec<String>> {
    prefixes(arena, len + arena.len())
        .into_iter()
        .map(|mut p| {
            p.truncate(len);
            p
        })
        .collect()
}
