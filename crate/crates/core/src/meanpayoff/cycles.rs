//! One-player mean-payoff: every vertex belongs to the same optimizer.
//!
//! Values are per-edge means. A vertex's value is the best mean cycle it can
//! reach; strategies follow an optimal cycle once there.

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use super::Rational;

/// Adjacency list with weights. Every vertex must have at least one edge.
pub(crate) type Graph = [Vec<(usize, i64)>];

pub(crate) struct Evaluation {
    pub values: Vec<Rational>,
    /// Index into each vertex's edge list.
    pub choice: Vec<usize>,
}

/// Best reachable cycle mean per vertex, maximizing or minimizing.
pub(crate) fn evaluate(graph: &Graph, maximize: bool) -> Evaluation {
    if maximize {
        evaluate_max(graph)
    } else {
        let negated: Vec<Vec<(usize, i64)>> = graph
            .iter()
            .map(|edges| edges.iter().map(|&(t, w)| (t, -w)).collect())
            .collect();
        let mut eval = evaluate_max(&negated);
        for v in &mut eval.values {
            *v = -*v;
        }
        eval
    }
}

fn evaluate_max(graph: &Graph) -> Evaluation {
    let n = graph.len();
    let mut g = DiGraph::<(), ()>::with_capacity(n, 0);
    for _ in 0..n {
        g.add_node(());
    }
    for (s, edges) in graph.iter().enumerate() {
        for &(t, _) in edges {
            g.add_edge(NodeIndex::new(s), NodeIndex::new(t), ());
        }
    }
    // Components come out sinks first.
    let sccs = tarjan_scc(&g);
    let mut comp = vec![0usize; n];
    for (c, members) in sccs.iter().enumerate() {
        for v in members {
            comp[v.index()] = c;
        }
    }

    let mut values: Vec<Option<Rational>> = vec![None; n];
    let mut cycle_mean: Vec<Option<Rational>> = vec![None; sccs.len()];
    for (c, members) in sccs.iter().enumerate() {
        let local: Vec<usize> = members.iter().map(|v| v.index()).collect();
        let cyclic = local.len() > 1 || graph[local[0]].iter().any(|&(t, _)| t == local[0]);
        let mut best = None;
        if cyclic {
            let mu = karp_max(graph, &local, &comp, c);
            cycle_mean[c] = Some(mu);
            best = Some(mu);
        }
        for &v in &local {
            for &(t, _) in &graph[v] {
                if comp[t] != c {
                    let tv = values[t].expect("successor components are solved first");
                    best = Some(best.map_or(tv, |b: Rational| b.max(tv)));
                }
            }
        }
        let best = best.expect("every vertex has a successor");
        for &v in &local {
            values[v] = Some(best);
        }
    }
    let values: Vec<Rational> = values.into_iter().map(Option::unwrap).collect();

    let mut choice = vec![usize::MAX; n];
    let mut settled = vec![false; n];
    let mut frontier = Vec::new();
    for (c, members) in sccs.iter().enumerate() {
        let Some(mu) = cycle_mean[c] else { continue };
        let local: Vec<usize> = members.iter().map(|v| v.index()).collect();
        if mu != values[local[0]] {
            continue;
        }
        for (v, e) in optimal_cycle(graph, &local, &comp, c, mu) {
            choice[v] = e;
            settled[v] = true;
            frontier.push(v);
        }
    }
    let mut preds: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (s, edges) in graph.iter().enumerate() {
        for (i, &(t, _)) in edges.iter().enumerate() {
            preds[t].push((s, i));
        }
    }
    while let Some(t) = frontier.pop() {
        for &(s, i) in &preds[t] {
            if !settled[s] && values[s] == values[t] {
                settled[s] = true;
                choice[s] = i;
                frontier.push(s);
            }
        }
    }
    debug_assert!(settled.iter().all(|&b| b));
    Evaluation { values, choice }
}

/// Maximum mean cycle inside one strongly connected component.
fn karp_max(graph: &Graph, local: &[usize], comp: &[usize], c: usize) -> Rational {
    let k = local.len();
    let mut pos = vec![usize::MAX; graph.len()];
    for (i, &v) in local.iter().enumerate() {
        pos[v] = i;
    }
    // best[j][i]: heaviest walk of exactly j edges from local[0] to local[i].
    let mut best: Vec<Vec<Option<i64>>> = vec![vec![None; k]; k + 1];
    best[0][0] = Some(0);
    for j in 1..=k {
        for (i, &v) in local.iter().enumerate() {
            let Some(d) = best[j - 1][i] else { continue };
            for &(t, w) in &graph[v] {
                if comp[t] != c {
                    continue;
                }
                let slot = &mut best[j][pos[t]];
                let cand = d + w;
                if slot.is_none_or(|cur| cand > cur) {
                    *slot = Some(cand);
                }
            }
        }
    }
    let mut result: Option<Rational> = None;
    for (i, dk) in best[k].iter().enumerate() {
        let Some(dk) = *dk else { continue };
        let mut worst: Option<Rational> = None;
        for (j, row) in best[..k].iter().enumerate() {
            if let Some(dj) = row[i] {
                let r = Rational::new(dk - dj, (k - j) as i64);
                worst = Some(worst.map_or(r, |w: Rational| w.min(r)));
            }
        }
        if let Some(w) = worst {
            result = Some(result.map_or(w, |r: Rational| r.max(w)));
        }
    }
    result.expect("a cyclic component has a walk of every length")
}

/// A cycle of mean `mu` inside the component, as (vertex, edge index) pairs.
fn optimal_cycle(
    graph: &Graph,
    local: &[usize],
    comp: &[usize],
    c: usize,
    mu: Rational,
) -> Vec<(usize, usize)> {
    let (p, q) = (*mu.numer(), *mu.denom());
    let reduced = |w: i64| q * w - p;
    // Longest-path potentials; no cycle has positive reduced weight.
    let mut pot = vec![0i64; graph.len()];
    for _ in 0..local.len() {
        let mut changed = false;
        for &v in local {
            for &(t, w) in &graph[v] {
                if comp[t] == c && pot[v] + reduced(w) > pot[t] {
                    pot[t] = pot[v] + reduced(w);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let tight = |v: usize, t: usize, w: i64| comp[t] == c && pot[v] + reduced(w) == pot[t];

    // Depth-first search for a cycle among tight edges.
    let mut color = vec![0u8; graph.len()];
    for &root in local {
        if color[root] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        color[root] = 1;
        while let Some(top) = stack.last_mut() {
            let (v, i) = *top;
            if i >= graph[v].len() {
                color[v] = 2;
                stack.pop();
                continue;
            }
            top.1 += 1;
            let (t, w) = graph[v][i];
            if !tight(v, t, w) {
                continue;
            }
            match color[t] {
                0 => {
                    color[t] = 1;
                    stack.push((t, 0));
                }
                1 => {
                    let start = stack.iter().position(|&(u, _)| u == t).unwrap();
                    return stack[start..].iter().map(|&(u, nx)| (u, nx - 1)).collect();
                }
                _ => {}
            }
        }
    }
    unreachable!("an optimal cycle consists of tight edges")
}
