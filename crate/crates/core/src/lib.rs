//! Synthesis of least-limiting advisers for turn-based safety games.
//!
//! An adviser tells the adversary (a human) which inputs to avoid at each of
//! its states so that the protagonist (a robot) can keep the play safe. The
//! crate computes the nominal adviser that forbids only what safety
//! requires, searches supersets of it for the one that forbids the fewest
//! inputs per round in the long run, and runs guided sessions that fall back
//! to weaker advisers when soft advice is ignored.

pub mod adviser;
pub mod arena;
pub mod error;
pub mod guided;
pub mod io;
pub mod meanpayoff;
pub mod nominal;
pub mod search;

pub use adviser::Adviser;
pub use arena::{
    Arena, ArenaBuilder, Owner, PlayPrefix, StateRecord, Transition, ValidationReport,
};
pub use error::{Error, Result};
pub use guided::{AdversaryPolicy, AdvicePacket, Halt, Outcome, Session, StepEvent};
pub use meanpayoff::{
    build_meanpayoff, gamma, lambda, solve, solve_adviser, MemorylessStrategy, Rational,
    ValueReport, WeightedArena,
};
pub use nominal::{compute_losing, exists_good_adviser, nominal_adviser, LosingLadder};
pub use search::{
    enumerate_candidates, free_choices, is_good, successors_in_order, synthesize, CandidateRecord,
    SolveBundle, SwitchRanking, DEFAULT_CAP,
};
