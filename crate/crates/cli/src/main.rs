//! `adviser` command-line tool.
//!
//! Exit status is 0 on success, 1 when the input is rejected or a domain
//! error occurs, and 2 on usage errors.

mod args;

use std::fs;
use std::io::{self, Read, Write};
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use adviser_core::io::bundle::{bundle_json, rational_text};
use adviser_core::io::document::{
    parse_adviser, parse_arena, parse_script, parse_strategy, serialize_adviser, serialize_arena,
    serialize_strategy,
};
use adviser_core::io::dot::{export_dot, Overlay};
use adviser_core::io::fixtures::fixture;
use adviser_core::io::manufacturing::{generate_manufacturing, RuleTemplate};
use adviser_core::{
    enumerate_candidates, gamma, lambda, nominal_adviser, synthesize, AdversaryPolicy, Arena, Halt,
    Session,
};
use clap::Parser;

use args::{Cli, Command, Input, PolicyArg};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] adviser_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("invalid template JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Rejected(String),
}

type Outcome = Result<(), CliError>;

fn read_text(path: &Path) -> Result<String, CliError> {
    let io_err = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).map_err(io_err)?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(io_err)
    }
}

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            let _ = io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn named_arena(name: &str) -> Result<Arena, CliError> {
    if name == adviser_service::MANUFACTURING_FIXTURE {
        Ok(generate_manufacturing(&RuleTemplate::example())?)
    } else {
        Ok(fixture(name)?)
    }
}

fn read_arena(input: &Input) -> Result<Arena, CliError> {
    match (&input.path, &input.fixture) {
        (_, Some(name)) => named_arena(name),
        (Some(path), None) => Ok(parse_arena(&read_text(path)?)?),
        (None, None) => unreachable!("clap requires one source"),
    }
}

/// Loads the arena and brings it into alternating form.
fn load(input: &Input) -> Result<Arena, CliError> {
    Ok(read_arena(input)?.alternation_transform())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate { input, strict } => {
            let arena = read_arena(&input)?;
            let report = if strict {
                arena.validate_strict()
            } else {
                arena.validate()
            };
            for w in &report.warnings {
                eprintln!("warning: {}: {}", w.rule.name(), w.message);
            }
            if report.is_valid() {
                println!(
                    "valid: {} states, {} transitions",
                    arena.len(),
                    arena.transition_count()
                );
                Ok(())
            } else {
                for v in &report.violations {
                    println!("violation: {}: {}", v.rule.name(), v.message);
                }
                Err(CliError::Rejected(format!(
                    "{} violation(s)",
                    report.violations.len()
                )))
            }
        }
        Command::Transform { input, out } => emit(out.as_deref(), &serialize_arena(&load(&input)?)),
        Command::Nominal { input, ladder } => {
            let arena = load(&input)?;
            let (adviser, levels) = nominal_adviser(&arena);
            if ladder {
                for (i, level) in levels.levels.iter().enumerate() {
                    let ids: Vec<&str> = level.iter().map(String::as_str).collect();
                    println!("# level {i}: {{{}}}", ids.join(", "));
                }
            }
            let losing: Vec<&str> = levels.final_set().iter().map(String::as_str).collect();
            println!("# losing: {{{}}}", losing.join(", "));
            if levels.contains(arena.initial_id()) {
                return Err(adviser_core::Error::NoGoodAdviser.into());
            }
            print!("{}", serialize_adviser(&adviser));
            Ok(())
        }
        Command::Enumerate { input, cap } => {
            let bundle = enumerate_candidates(&load(&input)?, cap)?;
            println!(
                "# {} free choices, {} candidates{}",
                bundle.free_choices.len(),
                bundle.candidates.len(),
                if bundle.truncated { " (truncated)" } else { "" }
            );
            for (i, c) in bundle.candidates.iter().enumerate() {
                let extra: Vec<String> = bundle
                    .free_choices
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| c.mask >> b & 1 == 1)
                    .map(|(_, (s, u))| format!("{s}:{u}"))
                    .collect();
                println!(
                    "{i}\t{}\t+[{}]",
                    if c.good { "good" } else { "bad" },
                    extra.join(" ")
                );
            }
            Ok(())
        }
        Command::Solve { input, cap, out } => {
            let bundle = synthesize(&load(&input)?, cap)?;
            if let Some(best) = bundle.best() {
                eprintln!(
                    "best candidate {} with limitation {}",
                    bundle.best_index.unwrap(),
                    rational_text(best.lambda.expect("good candidates are solved"))
                );
            }
            emit(out.as_deref(), &bundle_json(&bundle))
        }
        Command::Lambda { input, adviser } => {
            let arena = load(&input)?;
            let adviser = parse_adviser(&read_text(&adviser)?)?;
            println!("{}", rational_text(lambda(&arena, &adviser)?));
            Ok(())
        }
        Command::Gamma {
            input,
            adviser,
            strategy,
        } => {
            let arena = load(&input)?;
            let adviser = parse_adviser(&read_text(&adviser)?)?;
            let strategy = parse_strategy(&read_text(&strategy)?)?;
            println!("{}", rational_text(gamma(&arena, &adviser, &strategy)?));
            Ok(())
        }
        Command::Simulate {
            input,
            cap,
            policy,
            steps,
            show_strategy,
        } => {
            let bundle = Arc::new(synthesize(&load(&input)?, cap)?);
            let mut session = Session::start(bundle)?;
            if show_strategy {
                eprint!("{}", serialize_strategy(session.current_strategy()));
            }
            let mut policy = match policy {
                PolicyArg::Worst => AdversaryPolicy::WorstCase,
                PolicyArg::Random(seed) => AdversaryPolicy::compliant_random(seed),
                PolicyArg::Script(path) => {
                    AdversaryPolicy::scripted(parse_script(&read_text(&path)?)?)
                }
            };
            for _ in 0..steps {
                if session.halted() != Halt::No {
                    break;
                }
                let event = match session.step(&mut policy) {
                    Err(adviser_core::Error::ScriptExhausted) => break,
                    other => other?,
                };
                println!(
                    "{}\t{}\t{} -> {}\t{}",
                    event.actor.tag(),
                    event.input,
                    event.from,
                    event.to,
                    event.outcome.name()
                );
            }
            let avg = session
                .running_average()
                .map_or("-".to_string(), rational_text);
            println!(
                "# state {} adviser {} rounds {} average {} halted {}",
                session.current_state(),
                session.current_adviser(),
                session.rounds(),
                avg,
                session.halted().name()
            );
            Ok(())
        }
        Command::Fixture { name, out } => {
            emit(out.as_deref(), &serialize_arena(&named_arena(&name)?))
        }
        Command::GenManufacturing {
            template,
            example,
            out,
        } => {
            if example {
                let text = serde_json::to_string_pretty(&RuleTemplate::example())? + "\n";
                return emit(out.as_deref(), &text);
            }
            let template = match template {
                Some(path) => serde_json::from_str(&read_text(&path)?)?,
                None => RuleTemplate::example(),
            };
            emit(
                out.as_deref(),
                &serialize_arena(&generate_manufacturing(&template)?),
            )
        }
        Command::ExportDot {
            input,
            adviser,
            nominal,
            strategy,
            losing,
            current,
            out,
        } => {
            let arena = load(&input)?;
            let (alpha0, ladder) = nominal_adviser(&arena);
            let adviser = match adviser {
                Some(path) => Some(parse_adviser(&read_text(&path)?)?),
                None => nominal.then_some(alpha0),
            };
            let strategy = strategy
                .map(|p| read_text(&p).and_then(|t| Ok(parse_strategy(&t)?)))
                .transpose()?;
            let overlay = Overlay {
                adviser: adviser.as_ref(),
                losing: losing.then(|| ladder.final_set()),
                strategy: strategy.as_ref(),
                current: current.as_deref(),
            };
            emit(out.as_deref(), &export_dot(&arena, &overlay)?)
        }
        Command::Serve { host, port } => {
            let addr = SocketAddr::new(host, port);
            let runtime = tokio::runtime::Runtime::new().map_err(|source| CliError::Io {
                path: "runtime".into(),
                source,
            })?;
            eprintln!("listening on http://{addr}");
            runtime
                .block_on(adviser_service::serve(addr))
                .map_err(|source| CliError::Io {
                    path: addr.to_string().into(),
                    source,
                })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}
