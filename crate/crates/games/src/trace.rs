//! Replayable match records and their file form.
//!
//! Traces are the interchange format between the simulator, the reduction
//! verifier and the exact solver.  The in-memory types carry engine state;
//! the `*File` types are the serialized form with id sets flattened to
//! sorted index lists.

use crate::conductor::{ConductorState, ConflictRule, Decision, GameError, StopRequest};
use crate::ids::IdSet;
use crate::rect::{RectError, RectGameParams, RectGameState, RectLabel, Rectangle};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TraceParams {
    pub n: u32,
    pub t_max: u32,
    pub conflict: ConflictRule,
    pub seed: u64,
    pub strategy: String,
    pub adversary: String,
}

/// Full record of one conductor-game match.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GameTrace {
    pub params: TraceParams,
    pub stops: Vec<(StopRequest, Decision)>,
    pub final_state: ConductorState,
    /// Set when the adversary ran out of moves before the horizon.
    pub truncated: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum TraceError {
    #[error("id {id} out of range at record {index}")]
    BadId { index: usize, id: u32 },
    #[error("replayed final state disagrees with the recorded one")]
    FinalMismatch,
    #[error("record count {got} exceeds the horizon {t_max}")]
    TooManyRecords { got: usize, t_max: u32 },
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Rect(#[from] RectError),
}

impl GameTrace {
    /// Replays the stop sequence from a fresh state.
    pub fn replay(&self) -> Result<ConductorState, GameError> {
        let mut state =
            ConductorState::with_rule(self.params.n, self.params.t_max, self.params.conflict)?;
        for (req, d) in &self.stops {
            state = state.apply_stop(req, *d)?;
        }
        Ok(state)
    }

    pub fn to_file(&self) -> GameTraceFile {
        GameTraceFile {
            params: self.params.clone(),
            stops: self
                .stops
                .iter()
                .enumerate()
                .map(|(i, (req, d))| StopRecord {
                    stop_index: i as u32,
                    on_set: req.on().indices(),
                    off_set: req.off().indices(),
                    decision: *d,
                })
                .collect(),
            final_unhappiness: self.final_state.unhappiness().to_vec(),
            truncated: self.truncated,
        }
    }

    /// Rebuilds a trace from its file form, replaying it and checking the
    /// recorded final unhappiness.
    pub fn from_file(file: &GameTraceFile) -> Result<Self, TraceError> {
        let n = file.params.n;
        if file.stops.len() > file.params.t_max as usize {
            return Err(TraceError::TooManyRecords { got: file.stops.len(), t_max: file.params.t_max });
        }
        let mut stops = Vec::with_capacity(file.stops.len());
        for (index, rec) in file.stops.iter().enumerate() {
            let on = IdSet::try_from_indices(n, rec.on_set.iter().copied())
                .map_err(|id| TraceError::BadId { index, id })?;
            let off = IdSet::try_from_indices(n, rec.off_set.iter().copied())
                .map_err(|id| TraceError::BadId { index, id })?;
            stops.push((StopRequest::new(on, off), rec.decision));
        }
        let trace = GameTrace {
            params: file.params.clone(),
            stops,
            final_state: ConductorState::with_rule(n, file.params.t_max, file.params.conflict)?,
            truncated: file.truncated,
        };
        let replayed = trace.replay()?;
        if replayed.unhappiness() != file.final_unhappiness {
            return Err(TraceError::FinalMismatch);
        }
        Ok(GameTrace { final_state: replayed, ..trace })
    }
}

/// Serialized conductor trace.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GameTraceFile {
    pub params: TraceParams,
    pub stops: Vec<StopRecord>,
    pub final_unhappiness: Vec<u32>,
    pub truncated: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct StopRecord {
    pub stop_index: u32,
    pub on_set: Vec<u32>,
    pub off_set: Vec<u32>,
    pub decision: Decision,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RectTraceParams {
    pub m_u: u32,
    pub m_v: u32,
    pub a: u32,
    pub b: u32,
    pub k: u32,
}

/// Full record of one rectangle-game match.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RectTrace {
    pub params: RectTraceParams,
    pub moves: Vec<(Rectangle, RectLabel)>,
    pub final_state: RectGameState,
}

impl RectTrace {
    pub fn replay(&self) -> Result<RectGameState, RectError> {
        let mut state = RectGameState::with_axes(self.params.m_u, self.params.m_v)?;
        for (r, label) in &self.moves {
            state = state.apply_label(r, *label)?;
        }
        Ok(state)
    }

    pub fn game_params(&self) -> Result<RectGameParams, RectError> {
        RectGameParams::new(self.params.a, self.params.b, self.params.k)
    }

    pub fn to_file(&self) -> RectTraceFile {
        let (h, v) = self.final_state.line_counts();
        RectTraceFile {
            params: self.params,
            moves: self
                .moves
                .iter()
                .enumerate()
                .map(|(i, (r, label))| RectMoveRecord {
                    move_index: i as u32,
                    u_set: r.u_set.indices(),
                    v_set: r.v_set.indices(),
                    label: match label {
                        RectLabel::Horizontal => "h".into(),
                        RectLabel::Vertical => "v".into(),
                    },
                })
                .collect(),
            final_hcount: h.to_vec(),
            final_vcount: v.to_vec(),
        }
    }

    pub fn from_file(file: &RectTraceFile) -> Result<Self, TraceError> {
        let mut moves = Vec::with_capacity(file.moves.len());
        for (index, rec) in file.moves.iter().enumerate() {
            let u = IdSet::try_from_indices(file.params.m_u, rec.u_set.iter().copied())
                .map_err(|id| TraceError::BadId { index, id })?;
            let v = IdSet::try_from_indices(file.params.m_v, rec.v_set.iter().copied())
                .map_err(|id| TraceError::BadId { index, id })?;
            let label = match rec.label.as_str() {
                "h" => RectLabel::Horizontal,
                "v" => RectLabel::Vertical,
                _ => return Err(TraceError::BadId { index, id: u32::MAX }),
            };
            moves.push((Rectangle::new(u, v), label));
        }
        let trace = RectTrace {
            params: file.params,
            moves,
            final_state: RectGameState::with_axes(file.params.m_u, file.params.m_v)?,
        };
        let replayed = trace.replay()?;
        let (h, v) = replayed.line_counts();
        if h != file.final_hcount || v != file.final_vcount {
            return Err(TraceError::FinalMismatch);
        }
        Ok(RectTrace { final_state: replayed, ..trace })
    }
}

/// Serialized rectangle trace.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RectTraceFile {
    pub params: RectTraceParams,
    pub moves: Vec<RectMoveRecord>,
    pub final_hcount: Vec<u32>,
    pub final_vcount: Vec<u32>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RectMoveRecord {
    pub move_index: u32,
    pub u_set: Vec<u32>,
    pub v_set: Vec<u32>,
    pub label: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_trace() -> GameTrace {
        let params = TraceParams {
            n: 4,
            t_max: 3,
            conflict: ConflictRule::Unordered,
            seed: 7,
            strategy: "majority".into(),
            adversary: "adv-two-leaders".into(),
        };
        let mut state = ConductorState::with_rule(4, 3, ConflictRule::Unordered).unwrap();
        let stops = vec![
            (StopRequest::from_indices(4, &[0], &[1]), Decision::On),
            (StopRequest::from_indices(4, &[1, 2], &[3]), Decision::Off),
        ];
        for (req, d) in &stops {
            state = state.apply_stop(req, *d).unwrap();
        }
        GameTrace { params, stops, final_state: state, truncated: true }
    }

    #[test]
    fn replay_reproduces_final_state() {
        let trace = sample_trace();
        assert_eq!(trace.replay().unwrap(), trace.final_state);
    }

    #[test]
    fn file_roundtrip() {
        let trace = sample_trace();
        let file = trace.to_file();
        let json = serde_json::to_string_pretty(&file).unwrap();
        let parsed: GameTraceFile = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, file);
        let back = GameTrace::from_file(&parsed).unwrap();
        assert_eq!(back, trace);
    }

    #[test]
    fn decision_serializes_lowercase() {
        let file = sample_trace().to_file();
        let json = serde_json::to_string(&file).unwrap();
        assert!(json.contains("\"decision\":\"on\""));
        assert!(json.contains("\"conflict\":\"unordered\""));
    }

    #[test]
    fn corrupted_final_detected() {
        let mut file = sample_trace().to_file();
        file.final_unhappiness[0] += 1;
        assert!(matches!(GameTrace::from_file(&file), Err(TraceError::FinalMismatch)));
    }

    #[test]
    fn rect_trace_roundtrip() {
        let params = RectTraceParams { m_u: 4, m_v: 4, a: 2, b: 2, k: 1 };
        let mut state = RectGameState::with_axes(4, 4).unwrap();
        let moves = vec![
            (Rectangle::from_indices(4, 4, &[0], &[1]), RectLabel::Horizontal),
            (Rectangle::from_indices(4, 4, &[1], &[2]), RectLabel::Vertical),
        ];
        for (r, l) in &moves {
            state = state.apply_label(r, *l).unwrap();
        }
        let trace = RectTrace { params, moves, final_state: state };
        let file = trace.to_file();
        let json = serde_json::to_string(&file).unwrap();
        assert!(json.contains("\"label\":\"h\""));
        let parsed: RectTraceFile = serde_json::from_str(&json).unwrap();
        assert_eq!(RectTrace::from_file(&parsed).unwrap(), trace);
    }
}
