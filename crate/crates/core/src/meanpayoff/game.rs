//! Two-player mean-payoff games solved by value iteration.
//!
//! Finite-horizon values `v_m` satisfy `|v_m - m * value| <= 2 n W`. At
//! doubling horizons the greedy strategies of both players are evaluated
//! exactly; when the two evaluations agree everywhere they certify each
//! other. If no horizon up to the rounding bound certifies, the values are
//! rounded from `v_M` and a protagonist strategy is found by bisecting edge
//! sets against those values.

use super::cycles::evaluate;
use super::Rational;

pub(crate) struct Game {
    /// `true` for vertices of the maximizing player.
    pub maximizer: Vec<bool>,
    /// Edges in tie-break order.
    pub succ: Vec<Vec<(usize, i64)>>,
}

pub(crate) struct Solution {
    /// Per-edge mean values.
    pub values: Vec<Rational>,
    /// Optimal choice of the maximizer (edge index), meaningful at maximizer vertices.
    pub max_choice: Vec<usize>,
    /// Best response of the minimizer to `max_choice`.
    pub min_choice: Vec<usize>,
}

impl Game {
    fn len(&self) -> usize {
        self.succ.len()
    }

    fn max_weight(&self) -> i64 {
        self.succ
            .iter()
            .flatten()
            .map(|&(_, w)| w.abs())
            .max()
            .unwrap_or(0)
    }

    fn step(&self, prev: &[i64], next: &mut [i64]) {
        for (s, edges) in self.succ.iter().enumerate() {
            let vals = edges.iter().map(|&(t, w)| w + prev[t]);
            next[s] = if self.maximizer[s] {
                vals.max().unwrap()
            } else {
                vals.min().unwrap()
            };
        }
    }

    /// One-step optimal choices against `prev`, first edge on ties.
    fn greedy(&self, prev: &[i64]) -> Vec<usize> {
        self.succ
            .iter()
            .enumerate()
            .map(|(s, edges)| {
                let mut best = 0;
                for (i, &(t, w)) in edges.iter().enumerate() {
                    let (b_t, b_w) = edges[best];
                    let (cand, cur) = (w + prev[t], b_w + prev[b_t]);
                    if (self.maximizer[s] && cand > cur) || (!self.maximizer[s] && cand < cur) {
                        best = i;
                    }
                }
                best
            })
            .collect()
    }

    /// Graph in which the vertices of one player keep only their chosen edge.
    fn fixed(&self, choice: &[usize], for_maximizer: bool) -> Vec<Vec<(usize, i64)>> {
        self.succ
            .iter()
            .enumerate()
            .map(|(s, edges)| {
                if self.maximizer[s] == for_maximizer {
                    vec![edges[choice[s]]]
                } else {
                    edges.clone()
                }
            })
            .collect()
    }

    /// Exact values and the minimizer's best response to a fixed maximizer strategy.
    fn guaranteed_by_max(&self, choice: &[usize]) -> (Vec<Rational>, Vec<usize>) {
        let g = self.fixed(choice, true);
        let e = evaluate(&g, false);
        let response = (0..self.len())
            .map(|s| {
                if self.maximizer[s] {
                    choice[s]
                } else {
                    e.choice[s]
                }
            })
            .collect();
        (e.values, response)
    }

    fn guaranteed_by_min(&self, choice: &[usize]) -> Vec<Rational> {
        evaluate(&self.fixed(choice, false), true).values
    }

    pub fn solve(&self) -> Solution {
        let n = self.len();
        let weight = self.max_weight();
        if weight == 0 {
            return Solution {
                values: vec![Rational::from_integer(0); n],
                max_choice: vec![0; n],
                min_choice: vec![0; n],
            };
        }
        let horizon = rounding_horizon(n, weight);
        let mut prev = vec![0i64; n];
        let mut cur = vec![0i64; n];
        let mut checkpoint = 1u64;
        let mut m = 0u64;
        while m < horizon {
            std::mem::swap(&mut prev, &mut cur);
            self.step(&prev, &mut cur);
            m += 1;
            if m == checkpoint || m == horizon {
                // Holds the maximizer's and the minimizer's choices at once.
                let sigma = self.greedy(&prev);
                let (lower, response) = self.guaranteed_by_max(&sigma);
                if lower == self.guaranteed_by_min(&sigma) {
                    return Solution {
                        values: lower,
                        max_choice: sigma,
                        min_choice: response,
                    };
                }
                checkpoint = (checkpoint * 2).min(horizon);
            }
        }
        let values = round_values(&cur, horizon, n, weight);
        let sigma = self.bisect_strategy(&values);
        let (lower, response) = self.guaranteed_by_max(&sigma);
        debug_assert_eq!(lower, values);
        Solution {
            values,
            max_choice: sigma,
            min_choice: response,
        }
    }

    /// Values only, by iterating to the rounding horizon.
    fn values_by_rounding(&self) -> Vec<Rational> {
        let n = self.len();
        let weight = self.max_weight();
        if weight == 0 {
            return vec![Rational::from_integer(0); n];
        }
        let horizon = rounding_horizon(n, weight);
        let mut prev = vec![0i64; n];
        let mut cur = vec![0i64; n];
        for _ in 0..horizon {
            std::mem::swap(&mut prev, &mut cur);
            self.step(&prev, &mut cur);
        }
        round_values(&cur, horizon, n, weight)
    }

    /// Shrinks every maximizer vertex to a single edge while keeping all values.
    fn bisect_strategy(&self, values: &[Rational]) -> Vec<usize> {
        let mut work = Game {
            maximizer: self.maximizer.clone(),
            succ: self.succ.clone(),
        };
        let mut kept: Vec<Vec<usize>> = self.succ.iter().map(|e| (0..e.len()).collect()).collect();
        for (s, choices) in kept.iter_mut().enumerate() {
            if !self.maximizer[s] {
                continue;
            }
            while choices.len() > 1 {
                let half = choices.len() / 2;
                let first: Vec<usize> = choices[..half].to_vec();
                work.succ[s] = first.iter().map(|&i| self.succ[s][i]).collect();
                if work.values_by_rounding() == values {
                    *choices = first;
                } else {
                    *choices = choices[half..].to_vec();
                }
                work.succ[s] = choices.iter().map(|&i| self.succ[s][i]).collect();
            }
        }
        kept.iter().map(|k| k[0]).collect()
    }
}

/// Horizon after which rounding `v_m / m` to a fraction with denominator at
/// most `n` is exact.
fn rounding_horizon(n: usize, weight: i64) -> u64 {
    let n = n as u64;
    4 * n * n * n * weight as u64 + 1
}

fn round_values(v: &[i64], m: u64, n: usize, weight: i64) -> Vec<Rational> {
    v.iter().map(|&x| round_one(x, m, n, weight)).collect()
}

fn round_one(v: i64, m: u64, n: usize, weight: i64) -> Rational {
    let (v, m) = (v as i128, m as i128);
    let slack = 2 * n as i128 * weight as i128;
    for q in 1..=n as i128 {
        let p = (2 * v * q + m).div_euclid(2 * m);
        if (p * m - v * q).abs() <= slack * q {
            return Rational::new(p as i64, q as i64);
        }
    }
    unreachable!("value iteration ran past the rounding horizon")
}
