use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("duplicate state id `{0}`")]
    DuplicateState(String),

    #[error("arena has no initial state")]
    MissingInitial,

    #[error("state `{0}` is not owned by the adversary")]
    NotAdversaryState(String),

    #[error("state `{0}` is not owned by the protagonist")]
    NotProtagonistState(String),

    #[error("input `{input}` is not enabled at `{state}` (enabled: {enabled:?})")]
    InputNotEnabled {
        state: String,
        input: String,
        enabled: Vec<String>,
    },

    #[error("adviser does not forbid `{input}` at `{state}`, which the nominal adviser forbids")]
    NotSuperset { state: String, input: String },

    #[error("advisers are defined on different adversary states")]
    DomainMismatch,

    #[error("adviser has no entry for adversary state `{0}`")]
    MissingAdviserEntry(String),

    #[error("adviser is not good")]
    NotGood,

    #[error("no good adviser exists: the initial state is in the losing set")]
    NoGoodAdviser,

    #[error("candidate cap must be positive")]
    ZeroCap,

    #[error("strategy has no choice for protagonist state `{0}`")]
    MissingChoice(String),

    #[error("bundle has no solved best candidate")]
    Unsolved,

    #[error("session is halted ({0})")]
    Halted(&'static str),

    #[error("it is not the {expected}'s turn at `{state}`")]
    WrongTurn {
        state: String,
        expected: &'static str,
    },

    #[error("scripted input list is exhausted")]
    ScriptExhausted,

    #[error("scripted protagonist input `{got}` differs from the strategy's `{expected}`")]
    ScriptMismatch { expected: String, got: String },

    #[error("no feasible adviser after `{input}` at `{state}`")]
    NoFeasibleAdviser { state: String, input: String },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid document: {0}")]
    Semantic(String),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("invalid template: {0}")]
    Template(String),
}

impl Error {
    /// Stable snake_case identifier for machine consumers.
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnknownState(_) => "unknown_state",
            Error::DuplicateState(_) => "duplicate_state",
            Error::MissingInitial => "missing_initial",
            Error::NotAdversaryState(_) => "not_adversary_state",
            Error::NotProtagonistState(_) => "not_protagonist_state",
            Error::InputNotEnabled { .. } => "input_not_enabled",
            Error::NotSuperset { .. } => "not_superset",
            Error::DomainMismatch => "domain_mismatch",
            Error::MissingAdviserEntry(_) => "missing_adviser_entry",
            Error::NotGood => "not_good",
            Error::NoGoodAdviser => "no_good_adviser",
            Error::ZeroCap => "zero_cap",
            Error::MissingChoice(_) => "missing_choice",
            Error::Unsolved => "unsolved",
            Error::Halted(_) => "halted",
            Error::WrongTurn { .. } => "wrong_turn",
            Error::ScriptExhausted => "script_exhausted",
            Error::ScriptMismatch { .. } => "script_mismatch",
            Error::NoFeasibleAdviser { .. } => "no_feasible_adviser",
            Error::Syntax { .. } => "syntax",
            Error::Semantic(_) => "semantic",
            Error::UnknownFixture(_) => "unknown_fixture",
            Error::Template(_) => "template",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
