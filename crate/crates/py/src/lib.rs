//! Python bindings: arenas, the nominal adviser, synthesis and guided
//! sessions. Advisers cross the boundary as `dict[str, list[str]]` and
//! rationals as `fractions.Fraction`.

use std::collections::BTreeMap;
use std::sync::Arc;

use adviser_core::io::bundle::bundle_json;
use adviser_core::io::document::{parse_arena, serialize_arena};
use adviser_core::io::dot::{export_dot, Overlay};
use adviser_core::io::fixtures::fixture;
use adviser_core::io::manufacturing::{generate_manufacturing, RuleTemplate};
use adviser_core::{
    nominal_adviser, synthesize, AdversaryPolicy, Adviser, Outcome, Owner, Rational, SolveBundle,
    StepEvent, DEFAULT_CAP,
};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(
    adviser_py,
    AdviserError,
    PyException,
    "Raised with `(code, message)` on domain errors."
);

fn raise(err: adviser_core::Error) -> PyErr {
    AdviserError::new_err((err.code(), err.to_string()))
}

fn fraction(py: Python<'_>, r: Rational) -> PyResult<Bound<'_, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((*r.numer(), *r.denom()))
}

fn adviser_dict(adviser: &Adviser) -> BTreeMap<String, Vec<String>> {
    adviser
        .entries()
        .map(|(s, set)| (s.to_string(), set.iter().cloned().collect()))
        .collect()
}

fn adviser_from(map: BTreeMap<String, Vec<String>>) -> Adviser {
    let mut a = Adviser::new();
    for (state, inputs) in map {
        a.touch(&state);
        for u in inputs {
            a.forbid(&state, &u);
        }
    }
    a
}

/// A game arena.
#[pyclass(name = "Arena", module = "adviser_py", frozen)]
struct PyArena(adviser_core::Arena);

#[pymethods]
impl PyArena {
    /// A built-in arena: `fig1`, `fig2`, `fig3` or `manufacturing`.
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        let arena = if name == "manufacturing" {
            generate_manufacturing(&RuleTemplate::example())
        } else {
            fixture(name)
        };
        arena.map(PyArena).map_err(raise)
    }

    /// Parses an arena document.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_arena(text).map(PyArena).map_err(raise)
    }

    /// Expands an assembly template given as JSON; the example template
    /// when omitted.
    #[staticmethod]
    #[pyo3(signature = (template_json=None))]
    fn manufacturing(template_json: Option<&str>) -> PyResult<Self> {
        let template = match template_json {
            Some(text) => {
                serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?
            }
            None => RuleTemplate::example(),
        };
        generate_manufacturing(&template)
            .map(PyArena)
            .map_err(raise)
    }

    fn serialize(&self) -> String {
        serialize_arena(&self.0)
    }

    /// Rule violations as `(rule, message)` pairs; empty when valid.
    fn validate(&self) -> Vec<(String, String)> {
        self.0
            .validate()
            .violations
            .into_iter()
            .map(|v| (v.rule.name().to_string(), v.message))
            .collect()
    }

    fn alternation_transform(&self) -> Self {
        PyArena(self.0.alternation_transform())
    }

    #[getter]
    fn initial(&self) -> String {
        self.0.initial_id().to_string()
    }

    fn states(&self) -> Vec<String> {
        self.0.states().iter().map(|s| s.id.clone()).collect()
    }

    fn owner(&self, state: &str) -> PyResult<&'static str> {
        let ix = self.0.require(state).map_err(raise)?;
        Ok(self.0.owner(ix).name())
    }

    fn enabled_inputs(&self, state: &str) -> PyResult<Vec<String>> {
        self.0.enabled_inputs(state).map_err(raise)
    }

    fn losing(&self) -> Vec<String> {
        nominal_adviser(&self.0)
            .1
            .final_set()
            .iter()
            .cloned()
            .collect()
    }

    fn nominal_adviser(&self) -> BTreeMap<String, Vec<String>> {
        adviser_dict(&nominal_adviser(&self.0).0)
    }

    /// Long-run forbidden inputs per round under `adviser`.
    fn limitation<'py>(
        &self,
        py: Python<'py>,
        adviser: BTreeMap<String, Vec<String>>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let l = adviser_core::lambda(&self.0, &adviser_from(adviser)).map_err(raise)?;
        fraction(py, l)
    }

    #[pyo3(signature = (adviser=None, losing=false, current=None))]
    fn export_dot(
        &self,
        adviser: Option<BTreeMap<String, Vec<String>>>,
        losing: bool,
        current: Option<&str>,
    ) -> PyResult<String> {
        let adviser = adviser.map(adviser_from);
        let ladder = nominal_adviser(&self.0).1;
        let overlay = Overlay {
            adviser: adviser.as_ref(),
            losing: losing.then(|| ladder.final_set()),
            strategy: None,
            current,
        };
        export_dot(&self.0, &overlay).map_err(raise)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Arena(states={}, initial={:?})",
            self.0.len(),
            self.0.initial_id()
        )
    }
}

/// Candidates with their limitations and the selected best one.
#[pyclass(name = "Bundle", module = "adviser_py", frozen)]
struct PyBundle(Arc<SolveBundle>);

#[pymethods]
impl PyBundle {
    #[getter]
    fn best_index(&self) -> Option<usize> {
        self.0.best_index
    }

    #[getter]
    fn truncated(&self) -> bool {
        self.0.truncated
    }

    fn __len__(&self) -> usize {
        self.0.candidates.len()
    }

    fn adviser(&self, index: usize) -> PyResult<BTreeMap<String, Vec<String>>> {
        let c = self
            .0
            .candidates
            .get(index)
            .ok_or_else(|| PyValueError::new_err("no such candidate"))?;
        Ok(adviser_dict(&c.adviser))
    }

    fn limitation<'py>(
        &self,
        py: Python<'py>,
        index: usize,
    ) -> PyResult<Option<Bound<'py, PyAny>>> {
        let c = self
            .0
            .candidates
            .get(index)
            .ok_or_else(|| PyValueError::new_err("no such candidate"))?;
        c.lambda.map(|l| fraction(py, l)).transpose()
    }

    fn strategy(&self, index: usize) -> PyResult<Option<BTreeMap<String, String>>> {
        let c = self
            .0
            .candidates
            .get(index)
            .ok_or_else(|| PyValueError::new_err("no such candidate"))?;
        Ok(c.strategy.as_ref().map(|s| s.0.clone()))
    }

    fn to_json(&self) -> String {
        bundle_json(&self.0)
    }
}

/// Enumerates candidates above the nominal adviser and solves each.
#[pyfunction]
#[pyo3(signature = (arena, cap=DEFAULT_CAP))]
fn synthesize_bundle(arena: &PyArena, cap: usize) -> PyResult<PyBundle> {
    let arena = arena.0.alternation_transform();
    synthesize(&arena, cap)
        .map(|b| PyBundle(Arc::new(b)))
        .map_err(raise)
}

/// A guided session over a solved bundle.
#[pyclass(name = "Session", module = "adviser_py")]
struct PySession {
    inner: adviser_core::Session,
    random: AdversaryPolicy,
}

fn event_dict<'py>(py: Python<'py>, e: &StepEvent) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("actor", e.actor.name())?;
    d.set_item("input", &e.input)?;
    d.set_item("from", &e.from)?;
    d.set_item("to", &e.to)?;
    d.set_item("outcome", e.outcome.name())?;
    if let Outcome::SoftViolation { new_adviser } = e.outcome {
        d.set_item("new_adviser", new_adviser)?;
    }
    Ok(d)
}

#[pymethods]
impl PySession {
    #[new]
    #[pyo3(signature = (bundle, seed=0))]
    fn new(bundle: &PyBundle, seed: u64) -> PyResult<Self> {
        Ok(PySession {
            inner: adviser_core::Session::start(bundle.0.clone()).map_err(raise)?,
            random: AdversaryPolicy::compliant_random(seed),
        })
    }

    #[getter]
    fn state(&self) -> String {
        self.inner.current_state().to_string()
    }

    #[getter]
    fn owner(&self) -> &'static str {
        self.inner.current_owner().name()
    }

    #[getter]
    fn adviser_index(&self) -> usize {
        self.inner.current_adviser()
    }

    #[getter]
    fn halted(&self) -> &'static str {
        self.inner.halted().name()
    }

    #[getter]
    fn rounds(&self) -> u64 {
        self.inner.rounds()
    }

    fn running_average<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyAny>>> {
        self.inner
            .running_average()
            .map(|r| fraction(py, r))
            .transpose()
    }

    /// `{"hard": [...], "soft": [...], "allowed": [...]}` at an adversary state.
    fn advice(&self) -> PyResult<BTreeMap<&'static str, Vec<String>>> {
        let a = self.inner.advice().map_err(raise)?;
        Ok(BTreeMap::from([
            ("hard", a.hard.into_iter().collect()),
            ("soft", a.soft.into_iter().collect()),
            ("allowed", a.allowed.into_iter().collect()),
        ]))
    }

    fn protagonist_step<'py>(&mut self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let e = self.inner.protagonist_step().map_err(raise)?;
        event_dict(py, &e)
    }

    fn adversary_step<'py>(
        &mut self,
        py: Python<'py>,
        input: &str,
    ) -> PyResult<Bound<'py, PyDict>> {
        let e = self.inner.adversary_step(input).map_err(raise)?;
        event_dict(py, &e)
    }

    /// One move by whoever is to play; the adversary follows `policy`
    /// (`"worst"` or `"random"`).
    #[pyo3(signature = (policy="worst"))]
    fn auto<'py>(&mut self, py: Python<'py>, policy: &str) -> PyResult<Bound<'py, PyDict>> {
        let e = match (self.inner.current_owner(), policy) {
            (Owner::Protagonist, _) => self.inner.protagonist_step(),
            (Owner::Adversary, "worst") => {
                self.inner.auto_adversary(&mut AdversaryPolicy::WorstCase)
            }
            (Owner::Adversary, "random") => self.inner.auto_adversary(&mut self.random),
            _ => return Err(PyValueError::new_err("policy must be `worst` or `random`")),
        }
        .map_err(raise)?;
        event_dict(py, &e)
    }

    fn reset(&mut self) {
        self.inner.reset();
    }

    fn history<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        self.inner
            .history()
            .iter()
            .map(|e| event_dict(py, e))
            .collect()
    }
}

#[pymodule]
fn adviser_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyArena>()?;
    m.add_class::<PyBundle>()?;
    m.add_class::<PySession>()?;
    m.add_function(wrap_pyfunction!(synthesize_bundle, m)?)?;
    m.add("AdviserError", m.py().get_type::<AdviserError>())?;
    m.add("DEFAULT_CAP", DEFAULT_CAP)?;
    Ok(())
}
