//! JSON rendering of a solved bundle.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::meanpayoff::Rational;
use crate::search::SolveBundle;

/// `num/den`, always with both parts.
pub fn rational_text(r: Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Serialize)]
struct CandidateDoc {
    index: usize,
    forbidden: BTreeMap<String, Vec<String>>,
    good: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    strategy: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    values: Option<BTreeMap<String, String>>,
}

#[derive(Serialize)]
struct BundleDoc {
    initial: String,
    losing: Vec<String>,
    free_choices: Vec<(String, String)>,
    truncated: bool,
    best_index: Option<usize>,
    candidates: Vec<CandidateDoc>,
}

pub fn bundle_json(bundle: &SolveBundle) -> String {
    let doc = BundleDoc {
        initial: bundle.arena.initial_id().to_string(),
        losing: bundle.ladder.final_set().iter().cloned().collect(),
        free_choices: bundle.free_choices.clone(),
        truncated: bundle.truncated,
        best_index: bundle.best_index,
        candidates: bundle
            .candidates
            .iter()
            .enumerate()
            .map(|(index, c)| CandidateDoc {
                index,
                forbidden: c
                    .adviser
                    .entries()
                    .map(|(s, set)| (s.to_string(), set.iter().cloned().collect()))
                    .collect(),
                good: c.good,
                lambda: c.lambda.map(rational_text),
                strategy: c.strategy.as_ref().map(|s| s.0.clone()),
                values: c.per_state_value.as_ref().map(|m| {
                    m.iter()
                        .map(|(k, v)| (k.clone(), rational_text(*v)))
                        .collect()
                }),
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("bundle documents serialize");
    text.push('\n');
    text
}
