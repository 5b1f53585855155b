//! Soft games: strategic games whose payoffs are subsets of a finite
//! universe of alternatives instead of numbers.
//!
//! The crate is organized around five pieces:
//!
//! - [`softset`]: the finite universe, canonical subsets, and the soft-set
//!   algebra (union, intersection, complement, inclusion).
//! - [`game`]: two-person and n-person soft games, payoff access, and the
//!   classification predicates (disjoint, universal, rational, ...).
//! - [`solvers`]: the four solution methods: soft saddle points, soft
//!   lower/upper values, iterated elimination of dominated strategies, and
//!   soft Nash equilibria, plus their n-person extensions.
//! - [`generator`]: seeded, cross-implementation-reproducible random games
//!   for property suites and fixtures.
//! - [`io`]: the canonical JSON document format and its parser/serializer.

pub mod game;
pub mod generator;
pub mod io;
pub mod softset;
pub mod solvers;

pub use game::{
    GameError, JointAction, NPersonSoftGame, PayoffTable, Player, PreferenceOutcome, SoftGame,
    TwoPersonSoftGame,
};
pub use generator::{Constraint, GenError, GenSpec, InclusionProb, SplitMix64};
pub use io::ParseError;
pub use softset::{SoftSet, SoftSetError, Subset, Universe};
pub use solvers::{
    EliminationStep, EliminationTrace, NashEquilibrium, PipelineReport, SaddlePoint, Side,
    ValueReport,
};
