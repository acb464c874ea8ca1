//! Two adversarial games and the machinery to study them at desk scale.
//!
//! The *conductor game* is an online opinion-aggregation game: at every stop
//! an adversary presents disjoint on/off demand sets over `n` passengers, the
//! conductor makes one binary decision, and every passenger on the losing
//! side accrues one unit of unhappiness.  An optional ledger enforces that no
//! pair of passengers conflicts more than once.
//!
//! The *rectangle game* is its combinatorial twin: an adversary places
//! pairwise disjoint combinatorial rectangles `U x V` on a grid and a labeler
//! tags each one horizontal or vertical, trying to keep every row's
//! horizontal count and every column's vertical count low.
//!
//! [`reduction`] maps conductor traces onto rectangle traces and checks the
//! exact correspondence `unhappiness = hcount + vcount`.  [`solver`] computes
//! exact game values on tiny instances, and [`strategy`] hosts the pluggable
//! decision rules (majority, exponential weights, lookahead, potential
//! labeling) plus the adversaries they are measured against.

pub mod conductor;
pub mod ids;
pub mod num;
pub mod rect;
pub mod reduction;
pub mod seed;
pub mod solver;
pub mod strategy;
pub mod trace;

pub use conductor::{ConductorState, ConflictLedger, ConflictRule, Decision, GameError, RequestCaps, RequestViolation, StopRequest};
pub use ids::{Id, IdSet, PassengerId, PointId};
pub use rect::{RectError, RectGameParams, RectGameState, RectLabel, RectViolation, Rectangle};
pub use trace::{GameTrace, RectTrace};

/// Concrete scalar used by the registry and the CLI; the underlying
/// strategy and fitting code is generic over [`num::Float`].
pub type DefaultFloat = f64;

/// Learning rate at the default precision.
pub type Eta = strategy::LearningRate<DefaultFloat>;
