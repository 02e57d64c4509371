//! Graphviz export.
//!
//! Protagonist states are boxes and adversary states circles; unsafe states
//! are filled blue. Overlays add a `class` attribute so styled elements can
//! be found by tools: forbidden edges and losing states are red, strategy
//! edges green, and the current state is drawn bold.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::adviser::Adviser;
use crate::arena::{Arena, Owner};
use crate::error::{Error, Result};
use crate::meanpayoff::MemorylessStrategy;

#[derive(Clone, Copy, Debug, Default)]
pub struct Overlay<'a> {
    pub adviser: Option<&'a Adviser>,
    pub losing: Option<&'a BTreeSet<String>>,
    pub strategy: Option<&'a MemorylessStrategy>,
    pub current: Option<&'a str>,
}

fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn export_dot(arena: &Arena, overlay: &Overlay) -> Result<String> {
    if let Some(adviser) = overlay.adviser {
        adviser.check_against(arena)?;
    }
    if let Some(strategy) = overlay.strategy {
        for (state, input) in strategy.iter() {
            let ix = arena.require(state)?;
            if arena.successor(ix, input).is_none() {
                return Err(Error::InputNotEnabled {
                    state: state.to_string(),
                    input: input.to_string(),
                    enabled: arena.enabled_at(ix),
                });
            }
        }
    }
    for id in overlay
        .losing
        .into_iter()
        .flatten()
        .map(String::as_str)
        .chain(overlay.current)
    {
        arena.require(id)?;
    }

    let mut out = String::from("digraph arena {\n  rankdir=LR;\n");
    for st in arena.states() {
        let mut attrs = vec![match st.owner {
            Owner::Protagonist => "shape=box".to_string(),
            Owner::Adversary => "shape=circle".to_string(),
        }];
        if let Some(label) = &st.label {
            attrs.push(format!("tooltip={}", quoted(label)));
        }
        if !st.safe {
            attrs.push("style=filled".into());
            attrs.push("fillcolor=lightblue".into());
        }
        let mut classes = Vec::new();
        if overlay.losing.is_some_and(|l| l.contains(&st.id)) {
            classes.push("losing");
            attrs.push("color=red".into());
        }
        if overlay.current == Some(st.id.as_str()) {
            classes.push("current");
            attrs.push("penwidth=3".into());
        }
        if !classes.is_empty() {
            attrs.push(format!("class={}", quoted(&classes.join(" "))));
        }
        let _ = writeln!(out, "  {} [{}];", quoted(&st.id), attrs.join(", "));
    }
    for (s, e) in arena.transitions() {
        let from = arena.id(s);
        let mut attrs = vec![format!("label={}", quoted(&e.input))];
        if overlay.adviser.is_some_and(|a| a.forbids(from, &e.input)) {
            attrs.push("class=\"forbidden\"".into());
            attrs.push("color=red".into());
        } else if overlay
            .strategy
            .is_some_and(|g| g.choice(from) == Some(e.input.as_str()))
        {
            attrs.push("class=\"strategy\"".into());
            attrs.push("color=green".into());
            attrs.push("penwidth=2".into());
        }
        let _ = writeln!(
            out,
            "  {} -> {} [{}];",
            quoted(from),
            quoted(arena.id(e.target)),
            attrs.join(", ")
        );
    }
    out.push_str("}\n");
    Ok(out)
}
