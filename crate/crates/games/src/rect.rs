//! State machine of the disjoint-rectangle labeling game.
//!
//! An adversary places pairwise disjoint combinatorial rectangles `U x V` on
//! an `m_u x m_v` grid; the labeler tags each one horizontal or vertical.
//! A horizontal rectangle charges every row in its `V`, a vertical one every
//! column in its `U`; the labeler wins a `T = a*b`-move game when every row
//! count stays within `k*a` and every column count within `k*b`.
//!
//! Axis universes are plain id ranges of any size; a power-of-two size
//! recovers the bit-string grid.

use crate::ids::{Id, IdSet, PointId};
use std::fmt;
use thiserror::Error;

/// Combinatorial rectangle: the product of a `u` set (columns, first axis)
/// and a `v` set (rows, second axis).
///
/// Both sides must be nonempty to be playable; construction does not check
/// this, [`RectGameState::validate_rectangle`] does.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rectangle {
    pub u_set: IdSet<PointId>,
    pub v_set: IdSet<PointId>,
}

impl Rectangle {
    pub fn new(u_set: IdSet<PointId>, v_set: IdSet<PointId>) -> Self {
        Self { u_set, v_set }
    }

    /// Convenience constructor from raw indices; panics on out-of-range ids.
    pub fn from_indices(m_u: u32, m_v: u32, u: &[u32], v: &[u32]) -> Self {
        Self { u_set: IdSet::from_indices(m_u, u), v_set: IdSet::from_indices(m_v, v) }
    }

    /// Product sets `U x V` and `U' x V'` are disjoint exactly when the `U`s
    /// or the `V`s are.
    pub fn is_disjoint(&self, other: &Rectangle) -> bool {
        self.u_set.is_disjoint(&other.u_set) || self.v_set.is_disjoint(&other.v_set)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum RectLabel {
    Horizontal,
    Vertical,
}

impl fmt::Display for RectLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RectLabel::Horizontal => "h",
            RectLabel::Vertical => "v",
        })
    }
}

/// Game parameters: the move count factors `a`, `b` and the slack factor `k`.
/// The game always runs for exactly `a * b` moves.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RectGameParams {
    pub a: u32,
    pub b: u32,
    pub k: u32,
}

impl RectGameParams {
    pub fn new(a: u32, b: u32, k: u32) -> Result<Self, RectError> {
        if a == 0 || b == 0 || k == 0 {
            return Err(RectError::InvalidParameters("a, b and k must be at least 1"));
        }
        Ok(Self { a, b, k })
    }

    pub fn total_moves(&self) -> u32 {
        self.a * self.b
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Error)]
pub enum RectViolation {
    #[error("rectangle has an empty side")]
    EmptySide,
    #[error("point {id} is out of range for axis size {m}")]
    OutOfRange { id: PointId, m: u32 },
    #[error("rectangle overlaps the one placed at move {index}")]
    Overlap { index: usize },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Error)]
pub enum RectError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(&'static str),
    #[error("game not finished: {placed} of {expected} moves played")]
    GameNotFinished { placed: usize, expected: u32 },
    #[error(transparent)]
    Violation(#[from] RectViolation),
}

/// Position of one rectangle-game run: the placed labeled rectangles plus
/// the per-line intersection counters they induce.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RectGameState {
    m_u: u32,
    m_v: u32,
    placed: Vec<(Rectangle, RectLabel)>,
    /// `hcount[y]` = number of horizontal rectangles whose `v` set contains `y`.
    hcount: Vec<u32>,
    /// `vcount[x]` = number of vertical rectangles whose `u` set contains `x`.
    vcount: Vec<u32>,
}

impl RectGameState {
    /// Square board with both axes of size `m`.
    pub fn new(m: u32) -> Result<Self, RectError> {
        Self::with_axes(m, m)
    }

    pub fn with_axes(m_u: u32, m_v: u32) -> Result<Self, RectError> {
        if m_u == 0 || m_v == 0 {
            return Err(RectError::InvalidParameters("axis sizes must be at least 1"));
        }
        Ok(Self {
            m_u,
            m_v,
            placed: Vec::new(),
            hcount: vec![0; m_v as usize],
            vcount: vec![0; m_u as usize],
        })
    }

    pub fn m_u(&self) -> u32 {
        self.m_u
    }

    pub fn m_v(&self) -> u32 {
        self.m_v
    }

    pub fn placed(&self) -> &[(Rectangle, RectLabel)] {
        &self.placed
    }

    pub fn moves_played(&self) -> u32 {
        self.placed.len() as u32
    }

    /// Current counters, `(hcount, vcount)`.
    pub fn line_counts(&self) -> (&[u32], &[u32]) {
        (&self.hcount, &self.vcount)
    }

    pub fn max_hcount(&self) -> u32 {
        self.hcount.iter().copied().max().unwrap_or(0)
    }

    pub fn max_vcount(&self) -> u32 {
        self.vcount.iter().copied().max().unwrap_or(0)
    }

    /// Normalized load `max(ceil(max_h / a), ceil(max_v / b))`; the labeler
    /// wins at slack `k` exactly when this is at most `k`.
    pub fn normalized_load(&self, params: &RectGameParams) -> u32 {
        (self.max_hcount().div_ceil(params.a)).max(self.max_vcount().div_ceil(params.b))
    }

    /// Checks a candidate rectangle: nonempty sides, ids in range, and
    /// disjointness from everything placed (reporting the first offender).
    pub fn validate_rectangle(&self, r: &Rectangle) -> Result<(), RectViolation> {
        if r.u_set.is_empty() || r.v_set.is_empty() {
            return Err(RectViolation::EmptySide);
        }
        if let Some(id) = r.u_set.max_id() {
            if id.index() >= self.m_u {
                return Err(RectViolation::OutOfRange { id, m: self.m_u });
            }
        }
        if let Some(id) = r.v_set.max_id() {
            if id.index() >= self.m_v {
                return Err(RectViolation::OutOfRange { id, m: self.m_v });
            }
        }
        for (index, (other, _)) in self.placed.iter().enumerate() {
            if !r.is_disjoint(other) {
                return Err(RectViolation::Overlap { index });
            }
        }
        Ok(())
    }

    /// Places a labeled rectangle, bumping the counters of the lines it
    /// charges.
    pub fn apply_label(&self, r: &Rectangle, label: RectLabel) -> Result<Self, RectViolation> {
        self.validate_rectangle(r)?;
        let mut next = self.clone();
        match label {
            RectLabel::Horizontal => {
                for y in r.v_set.iter() {
                    next.hcount[y.index() as usize] += 1;
                }
            }
            RectLabel::Vertical => {
                for x in r.u_set.iter() {
                    next.vcount[x.index() as usize] += 1;
                }
            }
        }
        next.placed.push((r.clone(), label));
        Ok(next)
    }

    /// Whether every line is within its bound; no move-count precondition.
    pub fn within_bounds(&self, params: &RectGameParams) -> bool {
        self.max_hcount() <= params.k * params.a && self.max_vcount() <= params.k * params.b
    }

    /// Win check after exactly `a * b` moves.
    pub fn labeler_wins(&self, params: &RectGameParams) -> Result<bool, RectError> {
        let expected = params.total_moves();
        if self.placed.len() as u32 != expected {
            return Err(RectError::GameNotFinished { placed: self.placed.len(), expected });
        }
        Ok(self.within_bounds(params))
    }
}
