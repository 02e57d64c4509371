//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p adviser-core --test acceptance` (add `--release`
//! for the timing budgets to be meaningful). Exits non-zero when any
//! criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use adviser_core::io::fixtures::{fig1_alpha, fig2_alpha_prime, fig3_alpha_star, fixture};
use adviser_core::io::manufacturing::{generate_manufacturing, RuleTemplate};
use adviser_core::{
    build_meanpayoff, compute_losing, exists_good_adviser, is_good, lambda, nominal_adviser, solve,
    synthesize, AdversaryPolicy, Adviser, Arena, Outcome, Owner, Rational, Session, SolveBundle,
    WeightedArena, DEFAULT_CAP,
};
use common::{
    adversary_edges, adviser_from, oracle_good, oracle_lambda, oracle_values, prefixes,
    random_arena, random_weights, rng, winning_region, Shape,
};
use rand::Rng;

/// Wall-clock budget for each fixture example.
const EXAMPLE_BUDGET: Duration = Duration::from_secs(1);
/// Wall-clock budget for the manufacturing pipeline.
const MANUFACTURING_BUDGET: Duration = Duration::from_secs(60);
/// Values are exact rationals, compared with zero tolerance.
const VALUE_TOLERANCE: Rational = Rational::new_raw(0, 1);

const ORACLE_ARENAS: usize = 200;
const PROPERTY_ARENAS: usize = 200;
const DOMAIN_ARENAS: usize = 100;
const SESSION_STEPS: usize = 10_000;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn r(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn close(a: Rational, b: Rational) -> bool {
    let d = a - b;
    (if d < r(0) { -d } else { d }) <= VALUE_TOLERANCE
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn e<T: std::fmt::Debug>(x: T) -> String {
    format!("{x:?}")
}

fn fig1_example() -> Check {
    let started = Instant::now();
    let arena = fixture("fig1").map_err(e)?;
    let (alpha0, _) = nominal_adviser(&arena);
    ensure(alpha0 == fig1_alpha("b"), || {
        format!("nominal adviser {:?}", alpha0.pairs())
    })?;
    let got: Vec<Rational> = ["b", "c", "d"]
        .iter()
        .map(|w| lambda(&arena, &fig1_alpha(w)))
        .collect::<Result<_, _>>()
        .map_err(e)?;
    ensure(got == [r(1), r(1), r(2)], || format!("limitations {got:?}"))?;
    let bundle = synthesize(&arena, DEFAULT_CAP).map_err(e)?;
    ensure(bundle.best().and_then(|b| b.lambda) == Some(r(1)), || {
        "best limitation".into()
    })?;
    let took = started.elapsed();
    ensure(took < EXAMPLE_BUDGET, || format!("took {took:?}"))?;
    Ok(format!("λ_B=1 λ_C=1 λ_D=2 in {took:.1?}"))
}

fn fig2_example() -> Check {
    let started = Instant::now();
    let arena = fixture("fig2").map_err(e)?;
    let losing = compute_losing(&arena);
    ensure(losing.final_set() == &set(&["s4"]), || {
        format!("losing {:?}", losing.final_set())
    })?;
    let (alpha0, _) = nominal_adviser(&arena);
    let l0 = lambda(&arena, &alpha0).map_err(e)?;
    let l1 = lambda(&arena, &fig2_alpha_prime()).map_err(e)?;
    ensure(l0 == r(1) && l1 == r(0), || {
        format!("λ(α⁰)={l0} λ(α')={l1}")
    })?;
    let took = started.elapsed();
    ensure(took < EXAMPLE_BUDGET, || format!("took {took:?}"))?;
    Ok(format!("losing={{s4}} λ(α⁰)=1 λ(α')=0 in {took:.1?}"))
}

fn fig3_example() -> Check {
    let started = Instant::now();
    let arena = fixture("fig3").map_err(e)?;
    let (alpha0, _) = nominal_adviser(&arena);
    let expected: [(&str, &[&str]); 5] = [
        ("s2", &["u_a2"]),
        ("s6", &[]),
        ("s7", &["u_a5"]),
        ("s8", &["u_a7", "u_a8"]),
        ("s11", &["u_a9"]),
    ];
    for (s, inputs) in expected {
        ensure(alpha0.at(s) == set(inputs), || {
            format!("α⁰({s}) = {:?}", alpha0.at(s))
        })?;
    }
    let bundle = Arc::new(synthesize(&arena, DEFAULT_CAP).map_err(e)?);
    let nominal = bundle.nominal();
    ensure(nominal.lambda == Some(r(2)), || {
        format!("λ(α⁰) = {:?}", nominal.lambda)
    })?;
    let best = bundle.best().ok_or("no best adviser")?;
    ensure(
        best.adviser == fig3_alpha_star() && best.lambda == Some(r(0)),
        || format!("best {:?} λ={:?}", best.adviser.pairs(), best.lambda),
    )?;
    let sigma = nominal.strategy.as_ref().ok_or("nominal strategy")?;
    let want = [
        ("s1", "u_p1"),
        ("s3", "u_p2"),
        ("s5", "u_p5"),
        ("s9", "u_p6"),
    ];
    ensure(
        sigma.len() == want.len() && want.iter().all(|(s, u)| sigma.choice(s) == Some(u)),
        || format!("nominal strategy {:?}", sigma.0),
    )?;

    let mut session = Session::start(bundle.clone()).map_err(e)?;
    let mut script = AdversaryPolicy::scripted(["u_p1", "u_a3", "u_p5"]);
    let mut outcomes = Vec::new();
    for _ in 0..3 {
        outcomes.push(session.step(&mut script).map_err(e)?.outcome);
    }
    ensure(
        outcomes[1]
            == Outcome::SoftViolation {
                new_adviser: SolveBundle::NOMINAL,
            },
        || format!("second step {:?}", outcomes[1]),
    )?;
    let advice = session.advice().map_err(e)?;
    ensure(
        advice.state == "s8" && advice.hard == set(&["u_a7", "u_a8"]),
        || format!("{advice:?}"),
    )?;
    let last = session.adversary_step("u_a7").map_err(e)?;
    ensure(last.outcome == Outcome::HardViolation, || {
        format!("{last:?}")
    })?;
    let took = started.elapsed();
    ensure(took < EXAMPLE_BUDGET, || format!("took {took:?}"))?;
    Ok(format!(
        "λ(α⁰)=2 λ★=0, trace soft→α⁰ then hard at s8, in {took:.1?}"
    ))
}

fn solver_matches_reference() -> Check {
    let mut g = rng(0x5eed_0004);
    let mut states = 0;
    for case in 0..ORACLE_ARENAS {
        let arena = random_arena(&mut g, Shape::NONBLOCKING);
        let weights = random_weights(&mut g, &arena, 4);
        let report = solve(&WeightedArena::new(arena.clone(), weights.clone()).map_err(e)?);
        let want = oracle_values(&arena, &weights);
        for (s, v) in want.iter().enumerate() {
            let got = report.per_state[arena.id(s)];
            ensure(close(got, *v), || {
                format!("arena {case}, state {}: {got} vs {v}", arena.id(s))
            })?;
        }
        states += arena.len();
    }
    for name in adviser_core::io::fixtures::FIXTURE_NAMES {
        let arena = fixture(name).map_err(e)?;
        let (alpha0, _) = nominal_adviser(&arena);
        let restricted = arena
            .winning_restricted(&alpha0)
            .map_err(e)?
            .ok_or("not good")?;
        let weighted = build_meanpayoff(&restricted, &alpha0).map_err(e)?;
        let report = solve(&weighted);
        let weights: Vec<Vec<i64>> = (0..restricted.len())
            .map(|s| weighted.weights_at(s).to_vec())
            .collect();
        let want = oracle_values(&restricted, &weights);
        for (s, v) in want.iter().enumerate() {
            ensure(report.per_state[restricted.id(s)] == *v, || {
                format!("{name} at {}", restricted.id(s))
            })?;
        }
        states += restricted.len();
    }
    Ok(format!(
        "{ORACLE_ARENAS} random arenas and the fixtures, {states} state values exact"
    ))
}

/// States of the winning region reachable from the initial state when the
/// protagonist stays inside it and the adversary plays permitted inputs.
fn winning_reach(arena: &Arena, adviser: &Adviser) -> Vec<bool> {
    let win = winning_region(arena, adviser);
    let mut seen = vec![false; arena.len()];
    let mut stack = vec![arena.initial()];
    seen[arena.initial()] = true;
    while let Some(s) = stack.pop() {
        for t in arena.out(s) {
            let ok = match arena.owner(s) {
                Owner::Protagonist => win[t.target],
                Owner::Adversary => !adviser.forbids(arena.id(s), &t.input),
            };
            if ok && !seen[t.target] {
                seen[t.target] = true;
                stack.push(t.target);
            }
        }
    }
    seen
}

fn safety_properties() -> Check {
    const SHAPE: Shape = Shape {
        max_states: 10,
        max_out: 2,
        unsafe_chance: 0.25,
        dead_end_chance: 0.1,
    };
    let mut g = rng(0x5eed_0005);
    let (mut losing_init, mut winning_init, mut dropped_good, mut literal_gaps) = (0, 0, 0, 0);
    let mut done = 0;
    while done < PROPERTY_ARENAS {
        let arena = random_arena(&mut g, SHAPE);
        let edges = adversary_edges(&arena);
        if edges.len() > 8 {
            continue;
        }
        done += 1;
        let all: Vec<Adviser> = (0..1u64 << edges.len())
            .map(|m| adviser_from(&arena, &edges, m))
            .collect();
        for a in &all {
            let lib = is_good(&arena, a).map_err(e)?.0;
            ensure(lib == oracle_good(&arena, a), || {
                format!("goodness disagrees on {:?}", a.pairs())
            })?;
        }
        let (alpha0, ladder) = nominal_adviser(&arena);
        if ladder.contains(arena.initial_id()) {
            losing_init += 1;
            ensure(!exists_good_adviser(&arena), || "existence reported".into())?;
            ensure(all.iter().all(|a| !oracle_good(&arena, a)), || {
                "a good adviser exists".into()
            })?;
            continue;
        }
        winning_init += 1;
        ensure(oracle_good(&arena, &alpha0), || {
            "nominal adviser is not good".into()
        })?;
        let t0 = arena
            .nonblocking_restricted(&alpha0)
            .map_err(e)?
            .ok_or("nominal arena empty")?;
        for p in prefixes(&t0, 2 * arena.len()) {
            ensure(
                p.iter().all(|s| arena.is_safe(arena.index_of(s).unwrap())),
                || format!("unsafe prefix {p:?}"),
            )?;
        }
        let bundle = synthesize(&arena, DEFAULT_CAP).map_err(e)?;
        let floor = bundle.best().and_then(|b| b.lambda).ok_or("no best")?;
        let l0 = bundle.nominal().lambda.ok_or("nominal unsolved")?;
        for a in &all {
            if a.missing_from(&alpha0).is_none() || !oracle_good(&arena, a) {
                continue;
            }
            dropped_good += 1;
            let reach = winning_reach(&arena, a);
            for (s, u) in alpha0.pairs() {
                let ix = arena.index_of(&s).unwrap();
                ensure(a.forbids(&s, &u) || !reach[ix], || {
                    format!("effective drop of ({s},{u}) is good")
                })?;
            }
            let l = oracle_lambda(&arena, a).unwrap();
            ensure(l >= floor, || {
                format!("{:?} has λ={l} below {floor}", a.pairs())
            })?;
            if l < l0 {
                literal_gaps += 1;
            }
        }
    }
    Ok(format!(
        "{losing_init} losing-init, {winning_init} winning-init; {dropped_good} good advisers dropping \
         nominal pairs only at unreachable states, none below the best candidate \
         ({literal_gaps} below α⁰)"
    ))
}

fn candidate_domain() -> Check {
    const SHAPE: Shape = Shape {
        max_states: 9,
        max_out: 3,
        unsafe_chance: 0.2,
        dead_end_chance: 0.05,
    };
    let mut g = rng(0x5eed_0006);
    let (mut done, mut checked) = (0, 0);
    while done < DOMAIN_ARENAS {
        let arena = random_arena(&mut g, SHAPE);
        let (alpha0, ladder) = nominal_adviser(&arena);
        if ladder.contains(arena.initial_id()) {
            continue;
        }
        let extra: Vec<(String, String)> = adversary_edges(&arena)
            .into_iter()
            .filter(|(s, u)| !alpha0.forbids(s, u))
            .collect();
        if extra.len() > 10 {
            continue;
        }
        let bundle = synthesize(&arena, DEFAULT_CAP).map_err(e)?;
        if bundle.free_choices.is_empty() || bundle.free_choices.len() > 6 {
            continue;
        }
        done += 1;
        for c in &bundle.candidates {
            ensure(c.lambda == oracle_lambda(&arena, &c.adviser), || {
                format!("candidate {:?}", c.adviser.pairs())
            })?;
        }
        let mut reference: Option<Rational> = None;
        for m in 0..1u64 << extra.len() {
            let mut a = alpha0.clone();
            for (i, (s, u)) in extra.iter().enumerate() {
                if m >> i & 1 == 1 {
                    a.forbid(s, u);
                }
            }
            if let Some(l) = oracle_lambda(&arena, &a) {
                reference = Some(reference.map_or(l, |x| x.min(l)));
            }
            checked += 1;
        }
        let best = bundle.best().and_then(|b| b.lambda);
        ensure(best == reference, || {
            format!("best {best:?} vs all supersets {reference:?}")
        })?;
    }
    Ok(format!(
        "{DOMAIN_ARENAS} arenas, {checked} supersets on the full edge set"
    ))
}

fn session_bundles() -> Result<Vec<(String, Arc<SolveBundle>)>, String> {
    let mut out = Vec::new();
    for name in adviser_core::io::fixtures::FIXTURE_NAMES {
        let arena = fixture(name).map_err(e)?;
        out.push((
            name.to_string(),
            Arc::new(synthesize(&arena, DEFAULT_CAP).map_err(e)?),
        ));
    }
    let arena = generate_manufacturing(&RuleTemplate::example()).map_err(e)?;
    out.push((
        "manufacturing".into(),
        Arc::new(synthesize(&arena, DEFAULT_CAP).map_err(e)?),
    ));
    let mut g = rng(0x5eed_0007);
    while out.len() < 24 {
        let arena = random_arena(&mut g, Shape::NONBLOCKING);
        let Ok(bundle) = synthesize(&arena, DEFAULT_CAP) else {
            continue;
        };
        if bundle.free_choices.is_empty() {
            continue;
        }
        out.push((format!("random#{}", out.len()), Arc::new(bundle)));
    }
    Ok(out)
}

fn guided_safety() -> Check {
    let bundles = session_bundles()?;
    let mut g = rng(0x5eed_0008);
    let mut switches = 0;
    for (name, bundle) in &bundles {
        let mut compliant = Session::start(bundle.clone()).map_err(e)?;
        let mut policy = AdversaryPolicy::compliant_random(g.gen());
        for _ in 0..SESSION_STEPS {
            let ev = compliant
                .step(&mut policy)
                .map_err(|x| format!("{name}: {x:?}"))?;
            ensure(ev.outcome == Outcome::Normal, || format!("{name}: {ev:?}"))?;
        }

        let mut defiant = Session::start(bundle.clone()).map_err(e)?;
        for step in 0..SESSION_STEPS {
            if step % 40 == 0 {
                defiant.reset();
            }
            if defiant.current_owner() == Owner::Protagonist {
                let ev = defiant
                    .protagonist_step()
                    .map_err(|x| format!("{name}: {x:?}"))?;
                ensure(ev.outcome == Outcome::Normal, || format!("{name}: {ev:?}"))?;
                continue;
            }
            let advice = defiant.advice().map_err(e)?;
            let soft: Vec<&String> = advice.soft.iter().collect();
            let allowed: Vec<&String> = advice.allowed.iter().collect();
            let input = if !soft.is_empty() && g.gen_bool(0.5) {
                soft[g.gen_range(0..soft.len())].clone()
            } else {
                allowed[g.gen_range(0..allowed.len())].clone()
            };
            let before = defiant.current_adviser();
            let ev = defiant
                .adversary_step(&input)
                .map_err(|x| format!("{name}: {x:?}"))?;
            match ev.outcome {
                Outcome::Normal => {}
                Outcome::SoftViolation { new_adviser } => {
                    switches += 1;
                    let next = &bundle.candidates[new_adviser];
                    ensure(bundle.below(new_adviser, before) && next.good, || {
                        format!("{name}: switch up")
                    })?;
                    ensure(!next.adviser.forbids(&ev.from, &ev.input), || {
                        format!("{name}: still forbidden")
                    })?;
                }
                other => return Err(format!("{name}: {other:?}")),
            }
        }
    }
    ensure(switches > 0, || "no soft violation was exercised".into())?;
    Ok(format!(
        "{} arenas x {SESSION_STEPS} steps, compliant and defiant; {switches} switches, never unsafe",
        bundles.len()
    ))
}

fn manufacturing() -> Check {
    let started = Instant::now();
    let arena = generate_manufacturing(&RuleTemplate::example()).map_err(e)?;
    let from = arena
        .require("({(A,desk),(B,desk),(C,desk)},a)")
        .map_err(e)?;
    let to = arena
        .successor(from, "(grab_a,A)")
        .ok_or("grab transition missing")?;
    ensure(arena.id(to) == "({(A,human),(B,desk),(C,desk)},p)", || {
        arena.id(to).to_string()
    })?;
    let alternating = arena.alternation_transform();
    let report = alternating.validate();
    ensure(report.is_valid(), || format!("{:?}", report.violations))?;
    let bundle = synthesize(&alternating, DEFAULT_CAP).map_err(e)?;
    let best = bundle.best().ok_or("no good adviser")?;
    let took = started.elapsed();
    ensure(took < MANUFACTURING_BUDGET, || format!("took {took:?}"))?;
    Ok(format!(
        "{} states, {} free choices, {} candidates{}, best λ={} in {took:.1?}",
        alternating.len(),
        bundle.free_choices.len(),
        bundle.candidates.len(),
        if bundle.truncated { " (truncated)" } else { "" },
        best.lambda.unwrap(),
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("fig1 example", fig1_example),
        ("fig2 example", fig2_example),
        ("fig3 example and guided trace", fig3_example),
        (
            "mean-payoff values match brute force",
            solver_matches_reference,
        ),
        (
            "losing set, nominal adviser and dropped pairs on random arenas",
            safety_properties,
        ),
        ("candidate domain loses no optimum", candidate_domain),
        ("guided sessions stay safe and always switch", guided_safety),
        ("manufacturing arena end to end", manufacturing),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
