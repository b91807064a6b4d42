//! Standalone certificate checkers usable from tests and the CLI.

use crate::engines::{residual_reachable, FlowResult};
use crate::graph::{ArcId, PlanarDigraph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationCode {
    CapacityExceeded,
    ConservationViolated,
    ValueMismatch,
    NotMaximal,
    CutNotSeparating,
    CutCapacityMismatch,
    IdOutOfRange,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub code: ViolationCode,
    pub detail: String,
    /// Offending vertex or arc id, when one is singled out.
    pub id: Option<u64>,
}

/// Outcome of a verification: `ok` holds exactly when no violations were
/// recorded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self { violations: Vec::new() }
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn push(&mut self, code: ViolationCode, detail: impl Into<String>, id: Option<u64>) {
        self.violations.push(Violation {
            code,
            detail: detail.into(),
            id,
        });
    }
}

impl Default for ValidationReport {
    fn default() -> Self {
        Self::new()
    }
}

/// Checks a [`FlowResult`] against its graph: per-arc capacity bounds,
/// conservation away from the endpoints, the reported value at both
/// endpoints, and (when `check_maximality`) the absence of a residual
/// augmenting path.
pub fn verify_flow(g: &PlanarDigraph, result: &FlowResult, check_maximality: bool) -> ValidationReport {
    let mut report = ValidationReport::new();
    let (s, t) = (result.source, result.sink);
    for v in [s, t] {
        if v.index() >= g.vertex_count() {
            report.push(
                ViolationCode::IdOutOfRange,
                format!("endpoint vertex {} out of range", v.0),
                Some(v.0 as u64),
            );
            return report;
        }
    }
    if result.assignment.flows.len() != g.arc_count() {
        report.push(
            ViolationCode::CapacityExceeded,
            format!(
                "assignment covers {} arcs, graph has {}",
                result.assignment.flows.len(),
                g.arc_count()
            ),
            None,
        );
        return report;
    }

    for (i, arc) in g.arcs().iter().enumerate() {
        let f = result.assignment.flows[i];
        if f > arc.capacity {
            report.push(
                ViolationCode::CapacityExceeded,
                format!("arc {i} carries {f} over capacity {}", arc.capacity),
                Some(i as u64),
            );
        }
    }

    for v in 0..g.vertex_count() {
        let vid = VertexId(v as u32);
        let net = result.assignment.net_outflow(g, vid);
        if vid == s {
            if net != result.value as i128 {
                report.push(
                    ViolationCode::ValueMismatch,
                    format!("source net outflow {net} != value {}", result.value),
                    Some(v as u64),
                );
            }
        } else if vid == t {
            if -net != result.value as i128 {
                report.push(
                    ViolationCode::ValueMismatch,
                    format!("sink net inflow {} != value {}", -net, result.value),
                    Some(v as u64),
                );
            }
        } else if net != 0 {
            report.push(
                ViolationCode::ConservationViolated,
                format!("vertex {v} has net outflow {net}"),
                Some(v as u64),
            );
        }
    }

    if check_maximality && report.ok() {
        let reach = residual_reachable(g, &result.assignment, s);
        if reach[t.index()] {
            report.push(
                ViolationCode::NotMaximal,
                "a residual augmenting path from source to sink remains",
                None,
            );
        }
    }
    report
}

/// True when deleting `arcs` leaves no directed s-t path over
/// positive-capacity arcs.
pub fn separates(g: &PlanarDigraph, s: VertexId, t: VertexId, arcs: &[ArcId]) -> bool {
    let mut removed = vec![false; g.arc_count()];
    for a in arcs {
        if a.index() < g.arc_count() {
            removed[a.index()] = true;
        }
    }
    let mut seen = vec![false; g.vertex_count()];
    seen[s.index()] = true;
    let mut stack = vec![s];
    while let Some(v) = stack.pop() {
        if v == t {
            return false;
        }
        for &a in g.out_arcs(v) {
            let arc = g.arc(ArcId(a));
            if !removed[a as usize]
                && arc.capacity > 0
                && arc.tail != arc.head
                && !seen[arc.head.index()]
            {
                seen[arc.head.index()] = true;
                stack.push(arc.head);
            }
        }
    }
    !seen[t.index()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::{max_flow_reference, testutil::diamond};

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn accepts_engine_output() {
        let g = diamond();
        let r = max_flow_reference(&g, v(0), v(3)).unwrap();
        assert!(verify_flow(&g, &r, true).ok());
    }

    #[test]
    fn flags_overfull_arc() {
        let g = diamond();
        let mut r = max_flow_reference(&g, v(0), v(3)).unwrap();
        r.assignment.flows[0] = 100;
        let report = verify_flow(&g, &r, false);
        assert!(!report.ok());
        assert!(report
            .violations()
            .iter()
            .any(|x| x.code == ViolationCode::CapacityExceeded));
    }

    #[test]
    fn flags_non_maximal() {
        let g = diamond();
        let mut r = max_flow_reference(&g, v(0), v(3)).unwrap();
        r.assignment.flows = vec![0; 5];
        r.value = 0;
        let report = verify_flow(&g, &r, true);
        assert!(report
            .violations()
            .iter()
            .any(|x| x.code == ViolationCode::NotMaximal));
    }

    #[test]
    fn separation_check() {
        let g = diamond();
        assert!(separates(&g, v(0), v(3), &[ArcId(0), ArcId(1)]));
        assert!(separates(&g, v(0), v(3), &[ArcId(2), ArcId(3)]));
        assert!(!separates(&g, v(0), v(3), &[ArcId(4)]));
    }
}
