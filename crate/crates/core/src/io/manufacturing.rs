//! Arenas generated from a shared-workspace assembly template.
//!
//! A configuration records where each present piece is: on the desk, held
//! by the human, held by the robot, or contested (grabbed by one actor while
//! the other held it). The robot is the protagonist and the human the
//! adversary; states pair a configuration with whose turn it is.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::arena::{Arena, Owner, StateRecord, PASS_INPUT};
use crate::error::{Error, Result};

pub const DESK: &str = "desk";
pub const HUMAN: &str = "human";
pub const ROBOT: &str = "robot";
pub const CONTESTED: &str = "contested";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connect {
    pub left: String,
    pub right: String,
    pub result: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum UnsafePredicate {
    /// Some piece is contested.
    #[default]
    Contested,
    /// A given piece has a given status.
    PieceStatus { piece: String, status: String },
    /// Nothing is unsafe.
    Never,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleTemplate {
    pub pieces: Vec<String>,
    pub statuses: Vec<String>,
    /// Initial `(piece, status)` pairs.
    pub initial: Vec<(String, String)>,
    #[serde(default)]
    pub human_connects: Vec<Connect>,
    #[serde(default)]
    pub robot_connects: Vec<Connect>,
    #[serde(default, rename = "unsafe")]
    pub unsafe_predicate: UnsafePredicate,
}

impl RuleTemplate {
    /// Three pieces on the desk; the human joins A to B or to BC, the robot
    /// joins B to C or AB to C.
    pub fn example() -> Self {
        let s = |x: &str| x.to_string();
        let c = |l: &str, r: &str, out: &str| Connect {
            left: s(l),
            right: s(r),
            result: s(out),
        };
        RuleTemplate {
            pieces: ["A", "B", "C", "AB", "BC", "ABC"].map(s).to_vec(),
            statuses: [DESK, HUMAN, ROBOT].map(s).to_vec(),
            initial: vec![(s("A"), s(DESK)), (s("B"), s(DESK)), (s("C"), s(DESK))],
            human_connects: vec![c("A", "B", "AB"), c("A", "BC", "ABC")],
            robot_connects: vec![c("B", "C", "BC"), c("AB", "C", "ABC")],
            unsafe_predicate: UnsafePredicate::Contested,
        }
    }

    fn check(&self) -> Result<()> {
        let known = |p: &str| self.pieces.iter().any(|x| x == p);
        let status_ok = |st: &str| st == CONTESTED || self.statuses.iter().any(|x| x == st);
        for required in [DESK, HUMAN, ROBOT] {
            if !self.statuses.iter().any(|x| x == required) {
                return Err(Error::Template(format!(
                    "status alphabet lacks `{required}`"
                )));
            }
        }
        let mut seen = Vec::new();
        for (piece, status) in &self.initial {
            if !known(piece) {
                return Err(Error::Template(format!(
                    "unknown piece `{piece}` in the initial configuration"
                )));
            }
            if !status_ok(status) {
                return Err(Error::Template(format!("unknown status `{status}`")));
            }
            if seen.contains(&piece) {
                return Err(Error::Template(format!(
                    "piece `{piece}` appears twice initially"
                )));
            }
            seen.push(piece);
        }
        for c in self.human_connects.iter().chain(&self.robot_connects) {
            for p in [&c.left, &c.right, &c.result] {
                if !known(p) {
                    return Err(Error::Template(format!(
                        "unknown piece `{p}` in a connect rule"
                    )));
                }
            }
        }
        if let UnsafePredicate::PieceStatus { piece, status } = &self.unsafe_predicate {
            if !known(piece) {
                return Err(Error::Template(format!(
                    "unknown piece `{piece}` in the unsafe predicate"
                )));
            }
            if !status_ok(status) {
                return Err(Error::Template(format!("unknown status `{status}`")));
            }
        }
        Ok(())
    }
}

/// Piece position in the alphabet mapped to its status.
type Config = BTreeMap<usize, String>;

fn render(template: &RuleTemplate, config: &Config, turn: Owner) -> String {
    let parts: Vec<String> = config
        .iter()
        .map(|(p, st)| format!("({},{})", template.pieces[*p], st))
        .collect();
    format!("({{{}}},{})", parts.join(","), turn.tag())
}

fn is_unsafe(template: &RuleTemplate, config: &Config) -> bool {
    match &template.unsafe_predicate {
        UnsafePredicate::Contested => config.values().any(|s| s == CONTESTED),
        UnsafePredicate::PieceStatus { piece, status } => config
            .iter()
            .any(|(p, s)| &template.pieces[*p] == piece && s == status),
        UnsafePredicate::Never => false,
    }
}

fn moves(template: &RuleTemplate, config: &Config, turn: Owner) -> Vec<(String, Config)> {
    let mut out = Vec::new();
    if !config.values().any(|s| s == CONTESTED) {
        let (tag, me, other, connects) = match turn {
            Owner::Protagonist => ("p", ROBOT, HUMAN, &template.robot_connects),
            Owner::Adversary => ("a", HUMAN, ROBOT, &template.human_connects),
        };
        for (&p, status) in config {
            let name = &template.pieces[p];
            let grabbed = if status == DESK {
                Some(me)
            } else if status == other {
                Some(CONTESTED)
            } else {
                None
            };
            if let Some(next) = grabbed {
                let mut c = config.clone();
                c.insert(p, next.to_string());
                out.push((format!("(grab_{tag},{name})"), c));
            }
        }
        for (&p, status) in config {
            if status == me {
                let mut c = config.clone();
                c.insert(p, DESK.to_string());
                out.push((format!("(drop_{tag},{})", template.pieces[p]), c));
            }
        }
        let index = |name: &str| template.pieces.iter().position(|x| x == name).unwrap();
        for rule in connects {
            let (l, r, z) = (index(&rule.left), index(&rule.right), index(&rule.result));
            let holds = |p: usize| config.get(&p).is_some_and(|s| s == me);
            if holds(l) && holds(r) && !config.contains_key(&z) {
                let mut c = config.clone();
                c.remove(&l);
                c.remove(&r);
                c.insert(z, me.to_string());
                out.push((format!("(connect_{tag},{},{})", rule.left, rule.right), c));
            }
        }
    }
    out.push((PASS_INPUT.to_string(), config.clone()));
    out
}

#[derive(Default)]
struct Expansion {
    ids: HashMap<(Config, Owner), usize>,
    records: Vec<StateRecord>,
    configs: Vec<Config>,
    edges: Vec<(usize, String, usize)>,
    queue: VecDeque<usize>,
}

impl Expansion {
    fn intern(&mut self, template: &RuleTemplate, config: Config, turn: Owner) -> usize {
        if let Some(&ix) = self.ids.get(&(config.clone(), turn)) {
            return ix;
        }
        let ix = self.records.len();
        self.records.push(StateRecord {
            id: render(template, &config, turn),
            owner: turn,
            safe: !is_unsafe(template, &config),
            label: None,
        });
        self.ids.insert((config.clone(), turn), ix);
        self.configs.push(config);
        self.queue.push_back(ix);
        ix
    }
}

/// Expands the template from its initial configuration, robot to move.
pub fn generate_manufacturing(template: &RuleTemplate) -> Result<Arena> {
    template.check()?;
    let index = |name: &str| template.pieces.iter().position(|x| x == name).unwrap();
    let start: Config = template
        .initial
        .iter()
        .map(|(p, s)| (index(p), s.clone()))
        .collect();

    let mut expansion = Expansion::default();
    let first = expansion.intern(template, start, Owner::Protagonist);
    while let Some(s) = expansion.queue.pop_front() {
        let turn = expansion.records[s].owner;
        let config = expansion.configs[s].clone();
        for (input, next) in moves(template, &config, turn) {
            let t = expansion.intern(template, next, turn.opposite());
            expansion.edges.push((s, input, t));
        }
    }

    let Expansion { records, edges, .. } = expansion;
    let mut builder = Arena::builder().initial(records[first].id.clone());
    let names: Vec<String> = records.iter().map(|r| r.id.clone()).collect();
    for r in records {
        builder = builder.record(r);
    }
    for (s, input, t) in edges {
        builder = builder.transition(names[s].clone(), input, names[t].clone());
    }
    builder.build()
}
