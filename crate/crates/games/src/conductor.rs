//! State machine of the conductor game: stop requests, decisions,
//! unhappiness accounting and the conflict-once ledger.
//!
//! States are immutable values; [`ConductorState::apply_stop`] returns a new
//! state, which keeps solver memoization and parallel sweeps trivially safe.

use crate::ids::{IdSet, PassengerId};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// The conductor's binary choice at a stop.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    On,
    Off,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::On => "on",
            Decision::Off => "off",
        })
    }
}

/// How the conflict-once constraint is enforced.
///
/// `Unordered` is the standard rule: a pair of passengers may oppose each
/// other at most once, in either orientation.  `Ordered` is the strictly
/// weaker variant that distinguishes who demanded on and who demanded off;
/// it still yields disjoint rectangles under the reduction.  `Off` disables
/// the ledger entirely (the permanent-conflict regime).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConflictRule {
    Off,
    Ordered,
    Unordered,
}

/// One stop's demands: who wants the heating on, who wants it off.
///
/// Passengers in neither set are indifferent.  The struct itself does not
/// enforce well-formedness; [`ConductorState::validate_request`] does.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StopRequest {
    on: IdSet<PassengerId>,
    off: IdSet<PassengerId>,
}

impl StopRequest {
    pub fn new(on: IdSet<PassengerId>, off: IdSet<PassengerId>) -> Self {
        Self { on, off }
    }

    /// Convenience constructor from raw indices; panics on out-of-range ids.
    pub fn from_indices(n: u32, on: &[u32], off: &[u32]) -> Self {
        Self { on: IdSet::from_indices(n, on), off: IdSet::from_indices(n, off) }
    }

    pub fn on(&self) -> &IdSet<PassengerId> {
        &self.on
    }

    pub fn off(&self) -> &IdSet<PassengerId> {
        &self.off
    }

    /// A stop conflicts when both demand sets are nonempty.
    pub fn is_conflicting(&self) -> bool {
        !self.on.is_empty() && !self.off.is_empty()
    }
}

/// Caps on the demand-set sizes of generated or enumerated requests.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RequestCaps {
    pub max_on: u32,
    pub max_off: u32,
}

impl RequestCaps {
    pub fn new(max_on: u32, max_off: u32) -> Self {
        Self { max_on, max_off }
    }

    pub fn validate(&self, n: u32) -> Result<(), GameError> {
        if self.max_on == 0 || self.max_off == 0 {
            return Err(GameError::InvalidParameters("request caps must be at least 1"));
        }
        if self.max_on > n || self.max_off > n {
            return Err(GameError::InvalidParameters("request caps must not exceed the passenger count"));
        }
        Ok(())
    }
}

/// Running record of already-used conflicting pairs.
///
/// Bits are stored in an n x n matrix indexed `p * n + q`; the unordered
/// variant uses only the `p < q` half.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ConflictLedger {
    n: u32,
    bits: Vec<u64>,
    used: u64,
}

impl ConflictLedger {
    pub fn new(n: u32) -> Self {
        let cells = (n as usize * n as usize).div_ceil(64);
        Self { n, bits: vec![0; cells], used: 0 }
    }

    fn cell(&self, p: u32, q: u32) -> (usize, u64) {
        let idx = p as usize * self.n as usize + q as usize;
        (idx / 64, 1u64 << (idx % 64))
    }

    pub fn contains_ordered(&self, p: PassengerId, q: PassengerId) -> bool {
        let (word, mask) = self.cell(p.index(), q.index());
        self.bits[word] & mask != 0
    }

    pub fn contains_unordered(&self, p: PassengerId, q: PassengerId) -> bool {
        let (lo, hi) = if p < q { (p, q) } else { (q, p) };
        self.contains_ordered(lo, hi)
    }

    pub fn insert_ordered(&mut self, p: PassengerId, q: PassengerId) -> bool {
        let (word, mask) = self.cell(p.index(), q.index());
        let fresh = self.bits[word] & mask == 0;
        self.bits[word] |= mask;
        self.used += fresh as u64;
        fresh
    }

    pub fn insert_unordered(&mut self, p: PassengerId, q: PassengerId) -> bool {
        let (lo, hi) = if p < q { (p, q) } else { (q, p) };
        self.insert_ordered(lo, hi)
    }

    /// Number of distinct pairs recorded.
    pub fn len(&self) -> u64 {
        self.used
    }

    pub fn is_empty(&self) -> bool {
        self.used == 0
    }

    /// Number of recorded pairs touching `p`, in either role.
    pub fn degree(&self, p: PassengerId) -> u32 {
        let mut deg = 0;
        for q in 0..self.n {
            let q = PassengerId::new(q);
            if q == p {
                continue;
            }
            deg += self.contains_ordered(p, q) as u32 + self.contains_ordered(q, p) as u32;
        }
        deg
    }
}

impl fmt::Debug for ConflictLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut set = f.debug_set();
        for p in 0..self.n {
            for q in 0..self.n {
                if self.contains_ordered(PassengerId::new(p), PassengerId::new(q)) {
                    set.entry(&(p, q));
                }
            }
        }
        set.finish()
    }
}

/// Why a request is rejected against a state.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Error)]
pub enum RequestViolation {
    #[error("passenger {0} appears in both the on-set and the off-set")]
    Overlap(PassengerId),
    #[error("passenger {id} is out of range for {n} passengers")]
    OutOfRange { id: PassengerId, n: u32 },
    #[error("conflict pair ({0}, {1}) was already used")]
    ConflictReuse(PassengerId, PassengerId),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Error)]
pub enum GameError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(&'static str),
    #[error("the game horizon has been reached")]
    GameOver,
    #[error(transparent)]
    Request(#[from] RequestViolation),
}

/// All conflicting pairs of a request: one unordered pair per
/// (on-member, off-member) combination, normalized smaller-id-first.
///
/// Assumes a well-formed request (disjoint sides), under which the pairs are
/// automatically distinct; size is `|on| * |off|`.
pub fn conflict_pairs(req: &StopRequest) -> Vec<(PassengerId, PassengerId)> {
    debug_assert!(req.on.is_disjoint(&req.off));
    let mut pairs = Vec::with_capacity((req.on.len() * req.off.len()) as usize);
    for p in req.on.iter() {
        for q in req.off.iter() {
            pairs.push(if p < q { (p, q) } else { (q, p) });
        }
    }
    pairs
}

/// Full position of one conductor-game run.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConductorState {
    n: u32,
    t_max: u32,
    stops_played: u32,
    unhappiness: Vec<u32>,
    ledger: ConflictLedger,
    rule: ConflictRule,
}

impl ConductorState {
    /// Fresh game; `enforce_conflict_once` selects the unordered rule.
    pub fn new(n: u32, t_max: u32, enforce_conflict_once: bool) -> Result<Self, GameError> {
        let rule = if enforce_conflict_once { ConflictRule::Unordered } else { ConflictRule::Off };
        Self::with_rule(n, t_max, rule)
    }

    pub fn with_rule(n: u32, t_max: u32, rule: ConflictRule) -> Result<Self, GameError> {
        if n == 0 {
            return Err(GameError::InvalidParameters("passenger count must be at least 1"));
        }
        Ok(Self {
            n,
            t_max,
            stops_played: 0,
            unhappiness: vec![0; n as usize],
            ledger: ConflictLedger::new(n),
            rule,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn t_max(&self) -> u32 {
        self.t_max
    }

    pub fn stops_played(&self) -> u32 {
        self.stops_played
    }

    pub fn stops_remaining(&self) -> u32 {
        self.t_max - self.stops_played
    }

    pub fn is_over(&self) -> bool {
        self.stops_played == self.t_max
    }

    pub fn rule(&self) -> ConflictRule {
        self.rule
    }

    pub fn ledger(&self) -> &ConflictLedger {
        &self.ledger
    }

    pub fn unhappiness(&self) -> &[u32] {
        &self.unhappiness
    }

    pub fn unhappiness_of(&self, p: PassengerId) -> u32 {
        self.unhappiness[p.index() as usize]
    }

    pub fn max_unhappiness(&self) -> u32 {
        self.unhappiness.iter().copied().max().unwrap_or(0)
    }

    pub fn total_unhappiness(&self) -> u64 {
        self.unhappiness.iter().map(|&u| u as u64).sum()
    }

    /// Whether a conflicting pair may still be played under the state's rule.
    pub fn pair_is_fresh(&self, p: PassengerId, q: PassengerId) -> bool {
        match self.rule {
            ConflictRule::Off => true,
            ConflictRule::Ordered => !self.ledger.contains_ordered(p, q),
            ConflictRule::Unordered => !self.ledger.contains_unordered(p, q),
        }
    }

    /// Checks a request: disjoint sides, ids in range, and (when the ledger
    /// is active) no reused conflict pair.
    pub fn validate_request(&self, req: &StopRequest) -> Result<(), RequestViolation> {
        if let Some(p) = req.on.first_common(&req.off) {
            return Err(RequestViolation::Overlap(p));
        }
        for set in [&req.on, &req.off] {
            if let Some(id) = set.max_id() {
                if id.index() >= self.n {
                    return Err(RequestViolation::OutOfRange { id, n: self.n });
                }
            }
        }
        if self.rule != ConflictRule::Off {
            for p in req.on.iter() {
                for q in req.off.iter() {
                    let fresh = match self.rule {
                        ConflictRule::Ordered => !self.ledger.contains_ordered(p, q),
                        _ => !self.ledger.contains_unordered(p, q),
                    };
                    if !fresh {
                        let (lo, hi) = if p < q { (p, q) } else { (q, p) };
                        return Err(RequestViolation::ConflictReuse(lo, hi));
                    }
                }
            }
        }
        Ok(())
    }

    /// Plays one stop: the unsatisfied side's unhappiness increments by one,
    /// the request's conflict pairs are merged into the ledger, and the stop
    /// counter advances.
    pub fn apply_stop(&self, req: &StopRequest, d: Decision) -> Result<Self, GameError> {
        if self.stops_played == self.t_max {
            return Err(GameError::GameOver);
        }
        self.validate_request(req)?;
        let mut next = self.clone();
        let losers = match d {
            Decision::On => &req.off,
            Decision::Off => &req.on,
        };
        for p in losers.iter() {
            next.unhappiness[p.index() as usize] += 1;
        }
        match self.rule {
            ConflictRule::Off => {}
            ConflictRule::Ordered => {
                for p in req.on.iter() {
                    for q in req.off.iter() {
                        next.ledger.insert_ordered(p, q);
                    }
                }
            }
            ConflictRule::Unordered => {
                for p in req.on.iter() {
                    for q in req.off.iter() {
                        next.ledger.insert_unordered(p, q);
                    }
                }
            }
        }
        next.stops_played += 1;
        Ok(next)
    }
}
