use std::net::IpAddr;
use std::path::PathBuf;
use std::str::FromStr;

use adviser_core::DEFAULT_CAP;
use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "adviser",
    version,
    about = "Least-limiting adviser synthesis for safety games"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Arena document path (`-` for stdin) or a built-in fixture.
#[derive(Args, Debug)]
pub struct Input {
    #[arg(required_unless_present = "fixture")]
    pub path: Option<PathBuf>,
    /// fig1, fig2, fig3 or manufacturing.
    #[arg(long, conflicts_with = "path")]
    pub fixture: Option<String>,
}

#[derive(Clone, Debug)]
pub enum PolicyArg {
    Worst,
    Random(u64),
    Script(PathBuf),
}

impl FromStr for PolicyArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once(':') {
            None if s == "worst" => Ok(PolicyArg::Worst),
            Some(("random", seed)) => seed
                .parse()
                .map(PolicyArg::Random)
                .map_err(|_| format!("bad seed `{seed}`")),
            Some(("script", path)) if !path.is_empty() => Ok(PolicyArg::Script(path.into())),
            _ => Err("expected `worst`, `random:SEED` or `script:FILE`".into()),
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the arena against the model's rules.
    Validate {
        #[command(flatten)]
        input: Input,
        /// Also warn about states entered by more than one transition.
        #[arg(long)]
        strict: bool,
    },
    /// Insert intermediate states so that owners alternate.
    Transform {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Losing states and the nominal adviser.
    Nominal {
        #[command(flatten)]
        input: Input,
        /// Print every level of the losing fixpoint.
        #[arg(long)]
        ladder: bool,
    },
    /// List candidate advisers and whether each is good.
    Enumerate {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Synthesize and write the solved bundle as JSON.
    Solve {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Long-run forbidden inputs per round under an adviser.
    Lambda {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        adviser: PathBuf,
    },
    /// Long-run forbidden inputs per round under an adviser and a fixed strategy.
    Gamma {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        adviser: PathBuf,
        #[arg(long)]
        strategy: PathBuf,
    },
    /// Run a guided session against an automatic adversary.
    Simulate {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// worst, random:SEED or script:FILE
        #[arg(long, default_value = "worst")]
        policy: PolicyArg,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        /// Print the starting strategy to stderr.
        #[arg(long)]
        show_strategy: bool,
    },
    /// Write a built-in arena as a document.
    Fixture {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Expand an assembly template (JSON) into an arena document.
    GenManufacturing {
        template: Option<PathBuf>,
        /// Print the example template instead.
        #[arg(long, conflicts_with = "template")]
        example: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Graphviz rendering with optional overlays.
    ExportDot {
        #[command(flatten)]
        input: Input,
        /// Adviser document whose forbidden edges are highlighted.
        #[arg(long, conflicts_with = "nominal")]
        adviser: Option<PathBuf>,
        /// Highlight the nominal adviser.
        #[arg(long)]
        nominal: bool,
        #[arg(long)]
        strategy: Option<PathBuf>,
        #[arg(long)]
        losing: bool,
        #[arg(long)]
        current: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Start the HTTP session service.
    Serve {
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
        #[arg(long, env = "ADVISER_PORT", default_value_t = 8080)]
        port: u16,
    },
}
