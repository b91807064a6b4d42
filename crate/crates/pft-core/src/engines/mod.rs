//! Single-pair exact max-flow engines and cut extraction.

mod cuts;
mod planar;
mod reference;

pub use cuts::{brute_force_min_cut, min_cut_from_flow, BRUTE_FORCE_LIMIT};
pub use planar::max_flow_planar;
pub use reference::max_flow_reference;

use crate::graph::{ArcId, PlanarDigraph, VertexId};

/// Per-arc flow values; feasible when `0 <= flow[a] <= capacity[a]` and flow
/// is conserved at every vertex other than the endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowAssignment {
    pub flows: Vec<u64>,
}

impl FlowAssignment {
    pub fn zero(g: &PlanarDigraph) -> Self {
        Self {
            flows: vec![0; g.arc_count()],
        }
    }

    #[inline]
    pub fn flow(&self, a: ArcId) -> u64 {
        self.flows[a.index()]
    }

    /// Net outflow of `v`: sum over out-arcs minus sum over in-arcs,
    /// as a signed quantity.
    pub fn net_outflow(&self, g: &PlanarDigraph, v: VertexId) -> i128 {
        let out: u128 = g.out_arcs(v).iter().map(|&a| self.flows[a as usize] as u128).sum();
        let inn: u128 = g.in_arcs(v).iter().map(|&a| self.flows[a as usize] as u128).sum();
        out as i128 - inn as i128
    }
}

/// A max-flow value together with a witnessing assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowResult {
    pub source: VertexId,
    pub sink: VertexId,
    pub value: u64,
    pub assignment: FlowAssignment,
}

/// Arc set of a minimum s-t cut. `capacity` is the sum of member
/// capacities; `source_side` is the witnessing vertex set when known.
/// Zero-capacity arcs never appear among the members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutSet {
    pub arcs: Vec<ArcId>,
    pub capacity: u64,
    pub source_side: Option<Vec<VertexId>>,
}

impl CutSet {
    pub fn empty() -> Self {
        CutSet {
            arcs: Vec::new(),
            capacity: 0,
            source_side: None,
        }
    }
}

/// Vertices reachable from `s` in the residual graph of `assignment`:
/// forward along unsaturated arcs, backward along arcs carrying flow.
/// Self-loops are ignored.
pub(crate) fn residual_reachable(
    g: &PlanarDigraph,
    assignment: &FlowAssignment,
    s: VertexId,
) -> Vec<bool> {
    let mut seen = vec![false; g.vertex_count()];
    seen[s.index()] = true;
    let mut stack = vec![s];
    while let Some(v) = stack.pop() {
        for &a in g.out_arcs(v) {
            let arc = g.arc(ArcId(a));
            if arc.tail != arc.head
                && assignment.flows[a as usize] < arc.capacity
                && !seen[arc.head.index()]
            {
                seen[arc.head.index()] = true;
                stack.push(arc.head);
            }
        }
        for &a in g.in_arcs(v) {
            let arc = g.arc(ArcId(a));
            if arc.tail != arc.head && assignment.flows[a as usize] > 0 && !seen[arc.tail.index()] {
                seen[arc.tail.index()] = true;
                stack.push(arc.tail);
            }
        }
    }
    seen
}
