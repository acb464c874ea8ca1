//! Mapping between the two games and the exact correspondence it induces.
//!
//! A conflicting stop maps to the rectangle `on_set x off_set`; the decision
//! maps to the label (on = horizontal, off = vertical), chosen so that the
//! passengers hurt by a decision are exactly the points whose line counter
//! increments.  Under an active conflict-once ledger the image rectangles
//! are pairwise disjoint, and for every passenger
//! `unhappiness = hcount + vcount` holds exactly over conflicting stops.
//!
//! The orientation is fixed project-wide; the opposite convention would be
//! isomorphic but would invalidate golden traces.

use crate::conductor::{Decision, StopRequest};
use crate::ids::{Id, PassengerId};
use crate::rect::{RectGameState, RectLabel, Rectangle};
use crate::trace::{GameTrace, RectTrace, RectTraceParams};
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Error)]
pub enum ReductionError {
    #[error("stop {stop_index} is non-conflicting and has no rectangle image")]
    NonConflictingStop { stop_index: usize },
    #[error("rectangle images of stops {earlier} and {later} overlap; the source trace violates conflict-once")]
    DisjointnessFailure { earlier: usize, later: usize },
}

/// `ceil(sqrt(t))`, the harness rule for deriving both move factors.
pub fn ceil_sqrt(t: u32) -> u32 {
    if t == 0 {
        return 0;
    }
    let mut r = (t as f64).sqrt() as u32;
    while r * r < t {
        r += 1;
    }
    while r > 1 && (r - 1) * (r - 1) >= t {
        r -= 1;
    }
    r
}

/// The rectangle image of a conflicting request: `u = on_set`, `v = off_set`.
pub fn rectangle_of(req: &StopRequest) -> Option<Rectangle> {
    if !req.is_conflicting() {
        return None;
    }
    Some(Rectangle::new(req.on().retagged(), req.off().retagged()))
}

pub fn label_of_decision(d: Decision) -> RectLabel {
    match d {
        Decision::On => RectLabel::Horizontal,
        Decision::Off => RectLabel::Vertical,
    }
}

pub fn decision_of_label(label: RectLabel) -> Decision {
    match label {
        RectLabel::Horizontal => Decision::On,
        RectLabel::Vertical => Decision::Off,
    }
}

/// Maps one conflicting stop to its labeled rectangle.
pub fn stop_to_rectangle(
    req: &StopRequest,
    d: Decision,
    stop_index: usize,
) -> Result<(Rectangle, RectLabel), ReductionError> {
    let rect = rectangle_of(req).ok_or(ReductionError::NonConflictingStop { stop_index })?;
    Ok((rect, label_of_decision(d)))
}

/// Maps a whole trace, skipping non-conflicting stops and preserving order.
///
/// The output parameters follow the harness rule `a = b = ceil(sqrt(t_max))`
/// with `k = 1`; the axes are the passenger universe.  A disjointness
/// failure means the source trace was not conflict-once to begin with.
pub fn trace_to_rect_trace(tr: &GameTrace) -> Result<RectTrace, ReductionError> {
    let n = tr.params.n;
    let side = ceil_sqrt(tr.params.t_max).max(1);
    let params = RectTraceParams { m_u: n, m_v: n, a: side, b: side, k: 1 };
    let mut state = RectGameState::with_axes(n, n).expect("passenger count is positive");
    let mut moves = Vec::new();
    let mut sources = Vec::new();
    for (stop_index, (req, d)) in tr.stops.iter().enumerate() {
        let Some(rect) = rectangle_of(req) else { continue };
        let label = label_of_decision(*d);
        state = state.apply_label(&rect, label).map_err(|violation| {
            let earlier = match violation {
                crate::rect::RectViolation::Overlap { index } => sources[index],
                _ => stop_index,
            };
            ReductionError::DisjointnessFailure { earlier, later: stop_index }
        })?;
        moves.push((rect, label));
        sources.push(stop_index);
    }
    Ok(RectTrace { params, moves, final_state: state })
}

/// Result of [`verify_equivalence`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerifyReport {
    pub outcome: VerifyOutcome,
    /// Per-passenger unhappiness incurred on non-conflicting stops, which
    /// has no rectangle image and is excluded from the identity.
    pub avoidable: Vec<u32>,
}

impl VerifyReport {
    pub fn is_ok(&self) -> bool {
        self.outcome == VerifyOutcome::Ok
    }

    pub fn avoidable_total(&self) -> u64 {
        self.avoidable.iter().map(|&u| u as u64).sum()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VerifyOutcome {
    Ok,
    Mismatch { passenger: PassengerId, trace_value: u32, rect_value: u32 },
}

/// Replays the rectangle image of a trace and checks, for every passenger,
/// that conflicting-stop unhappiness equals `hcount + vcount`.
pub fn verify_equivalence(tr: &GameTrace) -> Result<VerifyReport, ReductionError> {
    let n = tr.params.n as usize;
    let mut conflicting = vec![0u32; n];
    let mut avoidable = vec![0u32; n];
    for (req, d) in &tr.stops {
        let losers = match d {
            Decision::On => req.off(),
            Decision::Off => req.on(),
        };
        let bucket = if req.is_conflicting() { &mut conflicting } else { &mut avoidable };
        for p in losers.iter() {
            bucket[p.index() as usize] += 1;
        }
    }

    let rect_trace = trace_to_rect_trace(tr)?;
    let (hcount, vcount) = rect_trace.final_state.line_counts();
    for p in 0..n {
        let rect_value = hcount[p] + vcount[p];
        if conflicting[p] != rect_value {
            return Ok(VerifyReport {
                outcome: VerifyOutcome::Mismatch {
                    passenger: PassengerId::new(p as u32),
                    trace_value: conflicting[p],
                    rect_value,
                },
                avoidable,
            });
        }
    }
    Ok(VerifyReport { outcome: VerifyOutcome::Ok, avoidable })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conductor::{ConductorState, ConflictRule};
    use crate::trace::TraceParams;

    fn req(n: u32, on: &[u32], off: &[u32]) -> StopRequest {
        StopRequest::from_indices(n, on, off)
    }

    fn trace_of(n: u32, t_max: u32, rule: ConflictRule, stops: Vec<(StopRequest, Decision)>) -> GameTrace {
        let mut state = ConductorState::with_rule(n, t_max, rule).unwrap();
        for (r, d) in &stops {
            state = state.apply_stop(r, *d).unwrap();
        }
        GameTrace {
            params: TraceParams {
                n,
                t_max,
                conflict: rule,
                seed: 0,
                strategy: "test".into(),
                adversary: "test".into(),
            },
            stops,
            final_state: state,
            truncated: false,
        }
    }

    #[test]
    fn stop_maps_by_decision() {
        let r = req(4, &[1], &[2]);
        let (rect, label) = stop_to_rectangle(&r, Decision::On, 0).unwrap();
        assert_eq!(rect.u_set.indices(), vec![1]);
        assert_eq!(rect.v_set.indices(), vec![2]);
        assert_eq!(label, RectLabel::Horizontal);
        let (_, label) = stop_to_rectangle(&r, Decision::Off, 0).unwrap();
        assert_eq!(label, RectLabel::Vertical);
    }

    #[test]
    fn non_conflicting_stop_has_no_image() {
        let r = req(4, &[1], &[]);
        assert_eq!(
            stop_to_rectangle(&r, Decision::On, 3),
            Err(ReductionError::NonConflictingStop { stop_index: 3 })
        );
    }

    #[test]
    fn trace_maps_in_order() {
        let tr = trace_of(
            8,
            2,
            ConflictRule::Unordered,
            vec![(req(8, &[1], &[2]), Decision::On), (req(8, &[1], &[3]), Decision::Off)],
        );
        let rect = trace_to_rect_trace(&tr).unwrap();
        assert_eq!(rect.moves.len(), 2);
        assert_eq!(rect.moves[0].1, RectLabel::Horizontal);
        assert_eq!(rect.moves[1].1, RectLabel::Vertical);
        assert_eq!(rect.params.m_u, 8);
        // a = b = ceil(sqrt(2)) = 2.
        assert_eq!((rect.params.a, rect.params.b), (2, 2));
    }

    #[test]
    fn non_conflicting_stops_are_skipped() {
        let tr = trace_of(
            8,
            3,
            ConflictRule::Unordered,
            vec![
                (req(8, &[1], &[2]), Decision::On),
                (req(8, &[4], &[]), Decision::Off),
                (req(8, &[1], &[3]), Decision::Off),
            ],
        );
        let rect = trace_to_rect_trace(&tr).unwrap();
        assert_eq!(rect.moves.len(), 2);
        assert_eq!(rect.moves[1].0.v_set.indices(), vec![3]);
    }

    #[test]
    fn permanent_conflict_trace_fails_disjointness() {
        let tr = trace_of(
            2,
            2,
            ConflictRule::Off,
            vec![(req(2, &[0], &[1]), Decision::On), (req(2, &[0], &[1]), Decision::On)],
        );
        assert_eq!(
            trace_to_rect_trace(&tr),
            Err(ReductionError::DisjointnessFailure { earlier: 0, later: 1 })
        );
    }

    #[test]
    fn single_stop_identity() {
        let tr = trace_of(4, 1, ConflictRule::Unordered, vec![(req(4, &[1], &[2]), Decision::On)]);
        let report = verify_equivalence(&tr).unwrap();
        assert!(report.is_ok());
        assert_eq!(report.avoidable_total(), 0);
    }

    #[test]
    fn empty_trace_verifies_vacuously() {
        let tr = trace_of(4, 0, ConflictRule::Unordered, vec![]);
        assert!(verify_equivalence(&tr).unwrap().is_ok());
    }

    #[test]
    fn avoidable_unhappiness_reported_separately() {
        // A non-conflicting stop decided against its demanders.
        let tr = trace_of(
            4,
            2,
            ConflictRule::Unordered,
            vec![(req(4, &[1], &[]), Decision::Off), (req(4, &[1], &[2]), Decision::On)],
        );
        let report = verify_equivalence(&tr).unwrap();
        assert!(report.is_ok());
        assert_eq!(report.avoidable, vec![0, 1, 0, 0]);
    }

    #[test]
    fn ceil_sqrt_values() {
        assert_eq!(ceil_sqrt(0), 0);
        assert_eq!(ceil_sqrt(1), 1);
        assert_eq!(ceil_sqrt(2), 2);
        assert_eq!(ceil_sqrt(4), 2);
        assert_eq!(ceil_sqrt(5), 3);
        assert_eq!(ceil_sqrt(9), 3);
        assert_eq!(ceil_sqrt(10), 4);
        assert_eq!(ceil_sqrt(8192), 91);
    }
}
