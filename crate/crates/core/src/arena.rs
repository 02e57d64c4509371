//! Turn-based game arenas and their structural transformations.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use indexmap::IndexSet;

use crate::adviser::Adviser;
use crate::error::{Error, Result};

/// Input label used for the pass move inserted by [`Arena::alternation_transform`].
pub const PASS_INPUT: &str = "ε_pass";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Owner {
    Protagonist,
    Adversary,
}

impl Owner {
    pub fn opposite(self) -> Owner {
        match self {
            Owner::Protagonist => Owner::Adversary,
            Owner::Adversary => Owner::Protagonist,
        }
    }

    /// Short tag used by the document format.
    pub fn tag(self) -> &'static str {
        match self {
            Owner::Protagonist => "p",
            Owner::Adversary => "a",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Owner::Protagonist => "protagonist",
            Owner::Adversary => "adversary",
        }
    }
}

impl fmt::Display for Owner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateRecord {
    pub id: String,
    pub owner: Owner,
    pub safe: bool,
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub input: String,
    pub target: usize,
}

/// A finite game arena. States are stored in insertion order and referenced
/// internally by position; outgoing transitions keep their insertion order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arena {
    states: Vec<StateRecord>,
    index: HashMap<String, usize>,
    initial: usize,
    out: Vec<Vec<Transition>>,
    protagonist_inputs: IndexSet<String>,
    adversary_inputs: IndexSet<String>,
}

#[derive(Debug, Default)]
pub struct ArenaBuilder {
    states: Vec<StateRecord>,
    initial: Option<String>,
    transitions: Vec<(String, String, String)>,
}

impl ArenaBuilder {
    pub fn state(self, id: impl Into<String>, owner: Owner, safe: bool) -> Self {
        self.record(StateRecord {
            id: id.into(),
            owner,
            safe,
            label: None,
        })
    }

    pub fn record(mut self, record: StateRecord) -> Self {
        self.states.push(record);
        self
    }

    pub fn initial(mut self, id: impl Into<String>) -> Self {
        self.initial = Some(id.into());
        self
    }

    pub fn transition(
        mut self,
        from: impl Into<String>,
        input: impl Into<String>,
        to: impl Into<String>,
    ) -> Self {
        self.transitions
            .push((from.into(), input.into(), to.into()));
        self
    }

    pub fn build(self) -> Result<Arena> {
        let mut index = HashMap::with_capacity(self.states.len());
        for (ix, st) in self.states.iter().enumerate() {
            if index.insert(st.id.clone(), ix).is_some() {
                return Err(Error::DuplicateState(st.id.clone()));
            }
        }
        let initial_id = self.initial.ok_or(Error::MissingInitial)?;
        let initial = *index
            .get(&initial_id)
            .ok_or_else(|| Error::UnknownState(initial_id.clone()))?;
        let mut out = vec![Vec::new(); self.states.len()];
        for (from, input, to) in self.transitions {
            let s = *index.get(&from).ok_or(Error::UnknownState(from))?;
            let t = *index.get(&to).ok_or(Error::UnknownState(to))?;
            out[s].push(Transition { input, target: t });
        }
        Ok(Arena::assemble(self.states, index, initial, out))
    }
}

/// A single problem found by [`Arena::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    InitialNotProtagonist,
    NotAlternating,
    DuplicateInput,
    NotInjective,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::InitialNotProtagonist => "initial not protagonist",
            Rule::NotAlternating => "transition does not alternate owners",
            Rule::DuplicateInput => "input has two targets",
            Rule::NotInjective => "transition target shared",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Only populated in strict mode.
    pub warnings: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Arena {
    pub fn builder() -> ArenaBuilder {
        ArenaBuilder::default()
    }

    fn assemble(
        states: Vec<StateRecord>,
        index: HashMap<String, usize>,
        initial: usize,
        out: Vec<Vec<Transition>>,
    ) -> Arena {
        let mut protagonist_inputs = IndexSet::new();
        let mut adversary_inputs = IndexSet::new();
        for (s, edges) in out.iter().enumerate() {
            let set = match states[s].owner {
                Owner::Protagonist => &mut protagonist_inputs,
                Owner::Adversary => &mut adversary_inputs,
            };
            for e in edges {
                if !set.contains(&e.input) {
                    set.insert(e.input.clone());
                }
            }
        }
        Arena {
            states,
            index,
            initial,
            out,
            protagonist_inputs,
            adversary_inputs,
        }
    }

    /// Keeps the states flagged in `keep` (which must include the initial
    /// state) and the transitions accepted by `keep_edge` between kept states.
    fn filtered(&self, keep: &[bool], keep_edge: impl Fn(usize, &Transition) -> bool) -> Arena {
        let mut remap = vec![usize::MAX; self.len()];
        let mut states = Vec::new();
        let mut index = HashMap::new();
        for (ix, st) in self.states.iter().enumerate() {
            if keep[ix] {
                remap[ix] = states.len();
                index.insert(st.id.clone(), states.len());
                states.push(st.clone());
            }
        }
        let mut out = vec![Vec::new(); states.len()];
        for (ix, edges) in self.out.iter().enumerate() {
            if !keep[ix] {
                continue;
            }
            for e in edges {
                if keep[e.target] && keep_edge(ix, e) {
                    out[remap[ix]].push(Transition {
                        input: e.input.clone(),
                        target: remap[e.target],
                    });
                }
            }
        }
        Arena::assemble(states, index, remap[self.initial], out)
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[StateRecord] {
        &self.states
    }

    pub fn state(&self, ix: usize) -> &StateRecord {
        &self.states[ix]
    }

    pub fn id(&self, ix: usize) -> &str {
        &self.states[ix].id
    }

    pub fn owner(&self, ix: usize) -> Owner {
        self.states[ix].owner
    }

    pub fn is_safe(&self, ix: usize) -> bool {
        self.states[ix].safe
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Like [`Arena::index_of`] but reports unknown ids as an error.
    pub fn require(&self, id: &str) -> Result<usize> {
        self.index_of(id)
            .ok_or_else(|| Error::UnknownState(id.to_string()))
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn initial_id(&self) -> &str {
        &self.states[self.initial].id
    }

    pub fn out(&self, ix: usize) -> &[Transition] {
        &self.out[ix]
    }

    pub fn transitions(&self) -> impl Iterator<Item = (usize, &Transition)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(s, edges)| edges.iter().map(move |e| (s, e)))
    }

    pub fn transition_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn protagonist_inputs(&self) -> &IndexSet<String> {
        &self.protagonist_inputs
    }

    pub fn adversary_inputs(&self) -> &IndexSet<String> {
        &self.adversary_inputs
    }

    pub fn successor(&self, ix: usize, input: &str) -> Option<usize> {
        self.out[ix]
            .iter()
            .find(|e| e.input == input)
            .map(|e| e.target)
    }

    /// Inputs enabled at `id`, in transition order.
    pub fn enabled_inputs(&self, id: &str) -> Result<Vec<String>> {
        let ix = self.require(id)?;
        Ok(self.enabled_at(ix))
    }

    pub fn enabled_at(&self, ix: usize) -> Vec<String> {
        self.out[ix].iter().map(|e| e.input.clone()).collect()
    }

    pub fn unsafe_ids(&self) -> BTreeSet<String> {
        self.states
            .iter()
            .filter(|s| !s.safe)
            .map(|s| s.id.clone())
            .collect()
    }

    pub fn indices_of(&self, owner: Owner) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&ix| self.states[ix].owner == owner)
    }

    pub fn validate(&self) -> ValidationReport {
        self.check(false)
    }

    /// Like [`Arena::validate`], plus injectivity warnings.
    pub fn validate_strict(&self) -> ValidationReport {
        self.check(true)
    }

    fn check(&self, strict: bool) -> ValidationReport {
        let mut report = ValidationReport::default();
        let push = |list: &mut Vec<Violation>, rule: Rule, detail: String| {
            list.push(Violation {
                rule,
                message: format!("{}: {}", rule.name(), detail),
            });
        };
        if self.owner(self.initial) != Owner::Protagonist {
            push(
                &mut report.violations,
                Rule::InitialNotProtagonist,
                format!("`{}` is adversary-owned", self.initial_id()),
            );
        }
        for (s, edges) in self.out.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for e in edges {
                if self.owner(s) == self.owner(e.target) {
                    push(
                        &mut report.violations,
                        Rule::NotAlternating,
                        format!(
                            "`{}` --{}--> `{}` joins two {} states",
                            self.id(s),
                            e.input,
                            self.id(e.target),
                            self.owner(s)
                        ),
                    );
                }
                if !seen.insert(e.input.as_str()) {
                    push(
                        &mut report.violations,
                        Rule::DuplicateInput,
                        format!("`{}` has several `{}` transitions", self.id(s), e.input),
                    );
                }
            }
        }
        if strict {
            let mut incoming: Vec<Vec<(usize, &str)>> = vec![Vec::new(); self.len()];
            for (s, e) in self.transitions() {
                incoming[e.target].push((s, &e.input));
            }
            for (t, sources) in incoming.iter().enumerate() {
                if sources.len() > 1 {
                    let list: Vec<String> = sources
                        .iter()
                        .map(|(s, u)| format!("`{}` via {}", self.id(*s), u))
                        .collect();
                    push(
                        &mut report.warnings,
                        Rule::NotInjective,
                        format!("`{}` is entered from {}", self.id(t), list.join(", ")),
                    );
                }
            }
        }
        report
    }

    /// Splits every transition between two states of the same owner by a
    /// fresh intermediate state of the other owner.
    pub fn alternation_transform(&self) -> Arena {
        let mut states = self.states.clone();
        let mut taken: BTreeSet<String> = states.iter().map(|s| s.id.clone()).collect();
        let mut edges: Vec<(usize, String, usize)> = Vec::new();
        for (s, e) in self.transitions() {
            if self.owner(s) != self.owner(e.target) {
                edges.push((s, e.input.clone(), e.target));
                continue;
            }
            let mut name = format!("{}__via__{}", self.id(s), e.input);
            while taken.contains(&name) {
                name.push('\'');
            }
            taken.insert(name.clone());
            let mid = states.len();
            states.push(StateRecord {
                id: name,
                owner: self.owner(s).opposite(),
                safe: self.is_safe(s),
                label: None,
            });
            edges.push((s, e.input.clone(), mid));
            edges.push((mid, PASS_INPUT.to_string(), e.target));
        }
        let index = states
            .iter()
            .enumerate()
            .map(|(ix, st)| (st.id.clone(), ix))
            .collect();
        let mut out = vec![Vec::new(); states.len()];
        for (s, input, t) in edges {
            out[s].push(Transition { input, target: t });
        }
        Arena::assemble(states, index, self.initial, out)
    }

    /// Removes the adversary transitions forbidden by `adviser`. The result
    /// may contain blocking states.
    pub fn restrict(&self, adviser: &Adviser) -> Result<Arena> {
        adviser.check_against(self)?;
        let keep = vec![true; self.len()];
        Ok(self.filtered(&keep, |s, e| !adviser.forbids(self.id(s), &e.input)))
    }

    /// Iteratively removes states without enabled inputs and states whose
    /// every successor was removed, then drops states no longer reachable
    /// from the initial state. Returns `None` when the initial state goes.
    pub fn prune_blocking(&self) -> Option<(Arena, BTreeSet<String>)> {
        let n = self.len();
        let mut live_out: Vec<usize> = self.out.iter().map(Vec::len).collect();
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (s, e) in self.transitions() {
            preds[e.target].push(s);
        }
        let mut alive = vec![true; n];
        let mut queue: VecDeque<usize> = (0..n).filter(|&s| live_out[s] == 0).collect();
        for &s in &queue {
            alive[s] = false;
        }
        while let Some(t) = queue.pop_front() {
            for &s in &preds[t] {
                live_out[s] -= 1;
                if alive[s] && live_out[s] == 0 {
                    alive[s] = false;
                    queue.push_back(s);
                }
            }
        }
        if !alive[self.initial] {
            return None;
        }
        let keep = self.reachable(|s, e| alive[s] && alive[e.target]);
        let removed = (0..n)
            .filter(|&s| !keep[s])
            .map(|s| self.id(s).to_string())
            .collect();
        Some((self.filtered(&keep, |_, _| true), removed))
    }

    /// `prune_blocking(restrict(adviser))`.
    pub fn nonblocking_restricted(&self, adviser: &Adviser) -> Result<Option<Arena>> {
        Ok(self.restrict(adviser)?.prune_blocking().map(|(a, _)| a))
    }

    /// The part of the arena in which the protagonist plays when the
    /// adversary may take any input the adviser does not forbid.
    ///
    /// A state is lost when it is unsafe, when its owner has no permitted
    /// move, when the adversary can move to a lost state, or when every
    /// protagonist move leads to a lost state. The result keeps the states
    /// that are not lost and are reachable from the initial state through
    /// permitted adversary moves and protagonist moves into states that are
    /// not lost. `None` means the adviser is not good.
    pub fn winning_restricted(&self, adviser: &Adviser) -> Result<Option<Arena>> {
        adviser.check_against(self)?;
        let lost = self.lost_under(adviser);
        if lost[self.initial] {
            return Ok(None);
        }
        let permitted = |s: usize, e: &Transition| match self.owner(s) {
            Owner::Protagonist => !lost[e.target],
            Owner::Adversary => !adviser.forbids(self.id(s), &e.input),
        };
        let keep = self.reachable(permitted);
        Ok(Some(self.filtered(&keep, permitted)))
    }

    fn lost_under(&self, adviser: &Adviser) -> Vec<bool> {
        let n = self.len();
        let mut remaining = vec![0usize; n];
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (s, e) in self.transitions() {
            if self.owner(s) == Owner::Adversary && adviser.forbids(self.id(s), &e.input) {
                continue;
            }
            remaining[s] += 1;
            preds[e.target].push(s);
        }
        let mut lost = vec![false; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            if !self.is_safe(s) || remaining[s] == 0 {
                lost[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(t) = queue.pop_front() {
            for &s in &preds[t] {
                if lost[s] {
                    continue;
                }
                let joins = match self.owner(s) {
                    Owner::Adversary => true,
                    Owner::Protagonist => {
                        remaining[s] -= 1;
                        remaining[s] == 0
                    }
                };
                if joins {
                    lost[s] = true;
                    queue.push_back(s);
                }
            }
        }
        lost
    }

    fn reachable(&self, follow: impl Fn(usize, &Transition) -> bool) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        seen[self.initial] = true;
        let mut stack = vec![self.initial];
        while let Some(s) = stack.pop() {
            for e in &self.out[s] {
                if !seen[e.target] && follow(s, e) {
                    seen[e.target] = true;
                    stack.push(e.target);
                }
            }
        }
        seen
    }
}

/// A finite sequence of state ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PlayPrefix(pub Vec<String>);

impl PlayPrefix {
    /// Checks that the prefix starts at the initial state, follows
    /// transitions, and alternates owners starting with the protagonist.
    pub fn is_valid_in(&self, arena: &Arena) -> bool {
        let Some(first) = self.0.first() else {
            return false;
        };
        if first != arena.initial_id() {
            return false;
        }
        let mut expected = Owner::Protagonist;
        let mut prev: Option<usize> = None;
        for id in &self.0 {
            let Some(ix) = arena.index_of(id) else {
                return false;
            };
            if arena.owner(ix) != expected {
                return false;
            }
            if let Some(p) = prev {
                if !arena.out(p).iter().any(|e| e.target == ix) {
                    return false;
                }
            }
            prev = Some(ix);
            expected = expected.opposite();
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::fixtures::{fig1_alpha, fixture};

    fn ids(a: &Arena) -> BTreeSet<String> {
        a.states().iter().map(|s| s.id.clone()).collect()
    }

    fn set(items: &[&str]) -> BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn enabled_inputs_follow_transition_order() {
        let a = fixture("fig1").unwrap();
        assert_eq!(a.enabled_inputs("s2").unwrap(), ["u_a1", "u_a2", "u_a3"]);
        assert_eq!(a.enabled_inputs("s1").unwrap(), ["u_p1", "u_p2"]);
        assert!(matches!(
            a.enabled_inputs("s99"),
            Err(Error::UnknownState(_))
        ));
    }

    #[test]
    fn dead_end_has_no_inputs() {
        let a = Arena::builder()
            .state("p", Owner::Protagonist, true)
            .state("a", Owner::Adversary, true)
            .initial("p")
            .transition("p", "go", "a")
            .build()
            .unwrap();
        assert!(a.enabled_inputs("a").unwrap().is_empty());
    }

    #[test]
    fn adversary_initial_is_reported_once() {
        let a = Arena::builder()
            .state("x", Owner::Adversary, true)
            .initial("x")
            .build()
            .unwrap();
        let report = a.validate();
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].rule, Rule::InitialNotProtagonist);
        assert!(report.violations[0]
            .message
            .starts_with("initial not protagonist"));
    }

    #[test]
    fn duplicate_inputs_are_violations() {
        let a = Arena::builder()
            .state("p", Owner::Protagonist, true)
            .state("a", Owner::Adversary, true)
            .state("b", Owner::Adversary, true)
            .initial("p")
            .transition("p", "u", "a")
            .transition("p", "u", "b")
            .build()
            .unwrap();
        let report = a.validate();
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].rule, Rule::DuplicateInput);
    }

    #[test]
    fn strict_mode_flags_shared_targets() {
        let a = fixture("fig1").unwrap();
        assert!(a.validate().warnings.is_empty());
        let report = a.validate_strict();
        assert!(report.is_valid());
        let targets: Vec<&str> = report
            .warnings
            .iter()
            .map(|w| w.message.split('`').nth(1).unwrap())
            .collect();
        assert!(targets.contains(&"s5"));
        let s5 = report
            .warnings
            .iter()
            .find(|w| w.message.contains("`s5` is"))
            .unwrap();
        assert!(s5.message.contains("`s2` via u_a3") && s5.message.contains("`s4` via u_a4"));
    }

    #[test]
    fn transform_leaves_alternating_arenas_alone() {
        let a = fixture("fig3").unwrap();
        assert_eq!(a.alternation_transform(), a);
    }

    #[test]
    fn transform_splits_a_same_owner_edge() {
        let raw = Arena::builder()
            .state("p", Owner::Protagonist, true)
            .state("q", Owner::Protagonist, false)
            .initial("p")
            .transition("p", "go", "q")
            .build()
            .unwrap();
        let out = raw.alternation_transform();
        assert_eq!(out.len(), 3);
        assert_eq!(out.transition_count(), 2);
        let mid = out.require("p__via__go").unwrap();
        assert_eq!(out.owner(mid), Owner::Adversary);
        assert!(out.is_safe(mid));
        assert_eq!(out.enabled_at(mid), [PASS_INPUT]);
        assert!(out.validate().is_valid());
    }

    #[test]
    fn transform_counts_offending_edges() {
        let raw = Arena::builder()
            .state("p", Owner::Protagonist, true)
            .state("q", Owner::Protagonist, true)
            .state("a", Owner::Adversary, true)
            .state("b", Owner::Adversary, false)
            .initial("p")
            .transition("p", "x", "q")
            .transition("q", "y", "a")
            .transition("a", "z", "b")
            .transition("b", "w", "a")
            .transition("b", "v", "p")
            .build()
            .unwrap();
        let out = raw.alternation_transform();
        assert_eq!(out.len(), raw.len() + 3);
        assert!(out.validate().is_valid());
        assert!(!out.is_safe(out.require("b__via__w").unwrap()));
    }

    #[test]
    fn restrict_removes_forbidden_adversary_edges() {
        let a = fixture("fig1").unwrap();
        assert_eq!(a.restrict(&Adviser::empty_for(&a)).unwrap(), a);
        let r = a.restrict(&fig1_alpha("b")).unwrap();
        assert_eq!(r.transition_count(), a.transition_count() - 5);
        for (s, u) in [
            ("s2", "s5"),
            ("s4", "s5"),
            ("s4", "s7"),
            ("s6", "s5"),
            ("s6", "s7"),
        ] {
            let s = r.require(s).unwrap();
            let t = r.require(u).unwrap();
            assert!(r.out(s).iter().all(|e| e.target != t));
        }
    }

    #[test]
    fn restrict_rejects_disabled_inputs() {
        let a = fixture("fig1").unwrap();
        let mut bad = Adviser::empty_for(&a);
        bad.forbid("s2", "u_a9");
        assert!(matches!(
            a.restrict(&bad),
            Err(Error::InputNotEnabled { .. })
        ));
    }

    #[test]
    fn pruning_fig1_under_alpha_b() {
        let a = fixture("fig1").unwrap();
        let (pruned, removed) = a
            .restrict(&fig1_alpha("b"))
            .unwrap()
            .prune_blocking()
            .unwrap();
        assert_eq!(ids(&pruned), set(&["s1", "s2", "s3"]));
        assert_eq!(removed, set(&["s4", "s5", "s6", "s7"]));
    }

    #[test]
    fn pruning_a_nonblocking_arena_is_identity() {
        let a = fixture("fig1").unwrap();
        let (pruned, removed) = a.prune_blocking().unwrap();
        assert_eq!(pruned, a);
        assert!(removed.is_empty());
    }

    #[test]
    fn pruning_a_dead_end_chain_is_empty() {
        let a = Arena::builder()
            .state("p", Owner::Protagonist, true)
            .state("a", Owner::Adversary, true)
            .state("q", Owner::Protagonist, true)
            .initial("p")
            .transition("p", "x", "a")
            .transition("a", "y", "q")
            .build()
            .unwrap();
        assert!(a.prune_blocking().is_none());
    }

    #[test]
    fn nonblocking_restriction_of_fig3() {
        let a = fixture("fig3").unwrap();
        let (alpha0, _) = crate::nominal::nominal_adviser(&a);
        let t = a.nonblocking_restricted(&alpha0).unwrap().unwrap();
        assert_eq!(ids(&t), set(&["s1", "s2", "s3", "s5", "s6", "s8", "s9"]));
    }

    #[test]
    fn nonblocking_restriction_of_fig2_alternative() {
        let a = fixture("fig2").unwrap();
        let t = a
            .nonblocking_restricted(&crate::io::fixtures::fig2_alpha_prime())
            .unwrap()
            .unwrap();
        assert_eq!(ids(&t), set(&["s1", "s2", "s5", "s7"]));
    }

    #[test]
    fn forbidding_everything_on_the_way_kills_the_arena() {
        let a = fixture("fig1").unwrap();
        let mut alpha = Adviser::empty_for(&a);
        for u in ["u_a1", "u_a2", "u_a3"] {
            alpha.forbid("s2", u);
        }
        for u in ["u_a4", "u_a5"] {
            alpha.forbid("s4", u);
        }
        assert!(a.nonblocking_restricted(&alpha).unwrap().is_none());
    }

    #[test]
    fn literal_restriction_of_alpha_c_keeps_everything() {
        let a = fixture("fig1").unwrap();
        let t = a.nonblocking_restricted(&fig1_alpha("c")).unwrap().unwrap();
        assert_eq!(t.len(), 7);
        // The adversary may still walk into s5 from s4, so only the safe
        // loop survives once permitted moves are taken into account.
        let w = a.winning_restricted(&fig1_alpha("c")).unwrap().unwrap();
        assert_eq!(ids(&w), set(&["s1", "s2", "s3"]));
    }

    #[test]
    fn hidden_removals_do_not_make_an_adviser_good() {
        // Forbidding everything at s4 and s6 makes s4 blocking, which
        // silently removes s1 --u_p2--> s4; nothing protects s2 --u_a3--> s5.
        let a = fixture("fig1").unwrap();
        let mut alpha = Adviser::empty_for(&a);
        for (s, u) in [
            ("s4", "u_a4"),
            ("s4", "u_a5"),
            ("s6", "u_a6"),
            ("s6", "u_a7"),
        ] {
            alpha.forbid(s, u);
        }
        assert!(a.nonblocking_restricted(&alpha).unwrap().is_some());
        assert!(a.winning_restricted(&alpha).unwrap().is_none());
    }

    #[test]
    fn play_prefix_checks() {
        let a = fixture("fig1").unwrap();
        let ok = PlayPrefix(vec!["s1".into(), "s2".into(), "s3".into()]);
        assert!(ok.is_valid_in(&a));
        let wrong_start = PlayPrefix(vec!["s3".into(), "s2".into()]);
        assert!(!wrong_start.is_valid_in(&a));
        let no_edge = PlayPrefix(vec!["s1".into(), "s6".into()]);
        assert!(!no_edge.is_valid_in(&a));
    }
}
