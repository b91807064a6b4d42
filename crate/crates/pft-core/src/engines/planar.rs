//! Embedding-aware single-pair engine.
//!
//! When source and sink lie on a common face, the minimum cut corresponds to
//! a shortest path in the dual after splitting that face along an artificial
//! source-sink chord, and a maximum flow falls out of the dual distances as
//! face potentials. That candidate flow is verified arithmetically and then
//! completed (normally: only certified) by the general augmenting loop.
//!
//! In general position the engine augments along residual paths found by a
//! left-first dart scan in the rotation system, with capacity scaling to
//! bound the number of augmentations. Exactness never depends on the warm
//! start: the final failed search at unit scale is the certificate.

use crate::error::{Error, Result};
use crate::graph::{ArcId, Dart, FaceId, FaceStructure, PlanarDigraph, VertexId};

use super::{FlowAssignment, FlowResult};

/// Exact max st-flow on a validated embedding. Values agree with
/// [`super::max_flow_reference`] on every input; the embedding is used for
/// the dual warm start and the dart scan order.
pub fn max_flow_planar(
    g: &PlanarDigraph,
    faces: &FaceStructure,
    s: VertexId,
    t: VertexId,
) -> Result<FlowResult> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    if s == t {
        return Err(Error::SameSourceSink { index: None });
    }
    let rotation = g.rotation().ok_or(Error::InvalidEmbedding)?;
    if faces.cycles().iter().map(|c| c.len()).sum::<usize>() != 2 * g.arc_count() {
        return Err(Error::InvalidEmbedding);
    }

    let mut assignment = match common_face(g, faces, s, t) {
        Some(f0) => dual_potential_flow(g, faces, f0, s, t),
        None => FlowAssignment::zero(g),
    };
    let warm_value = assignment.net_outflow(g, s).max(0) as u64;

    let pushed = leftmost_augment(g, rotation, &mut assignment, s, t);
    Ok(FlowResult {
        source: s,
        sink: t,
        value: warm_value + pushed,
        assignment,
    })
}

/// First face in rotation order at `s` that is also incident to `t`.
fn common_face(
    g: &PlanarDigraph,
    faces: &FaceStructure,
    s: VertexId,
    t: VertexId,
) -> Option<FaceId> {
    for f in faces.faces_at_vertex(g, s) {
        if faces.cycle(f).iter().any(|&d| g.dart_from(d) == t) {
            return Some(f);
        }
    }
    None
}

/// Builds a candidate s-t flow from dual shortest-path potentials after
/// splitting face `f0` along an s-t chord. Returns the zero assignment if
/// the candidate fails exact verification, so callers may rely on always
/// receiving a feasible flow.
fn dual_potential_flow(
    g: &PlanarDigraph,
    faces: &FaceStructure,
    f0: FaceId,
    s: VertexId,
    t: VertexId,
) -> FlowAssignment {
    let cycle = faces.cycle(f0);
    let ps = cycle.iter().position(|&d| g.dart_from(d) == s).unwrap();
    let mut pt = ps;
    for off in 0..cycle.len() {
        let i = (ps + off) % cycle.len();
        if g.dart_from(cycle[i]) == t {
            pt = i;
            break;
        }
    }

    // Side of the chord for each boundary dart of f0: walk positions
    // ps..pt belong to side A (keeps f0's id), pt..ps to side B (new node).
    let side_a = |pos: usize| {
        if ps <= pt {
            pos >= ps && pos < pt
        } else {
            pos >= ps || pos < pt
        }
    };
    let mut dart_side_a = vec![false; 2 * g.arc_count()];
    for (pos, &d) in cycle.iter().enumerate() {
        dart_side_a[d.index()] = side_a(pos);
    }

    let node_b = faces.face_count();
    let map = |d: Dart| {
        let f = faces.face_of_dart(d);
        if f == f0 && !dart_side_a[d.index()] {
            node_b
        } else {
            f.index()
        }
    };

    // Dual arcs: crossing a primal arc right-to-left pays its capacity,
    // left-to-right is free. Self-loops are not crossable by a vertex cut.
    let nodes = faces.face_count() + 1;
    let mut adj: Vec<Vec<(u32, u64)>> = vec![Vec::new(); nodes];
    for (i, arc) in g.arcs().iter().enumerate() {
        if arc.tail == arc.head {
            continue;
        }
        let a = ArcId(i as u32);
        let left = map(Dart::tail_of(a));
        let right = map(Dart::head_of(a));
        adj[right].push((left as u32, arc.capacity));
        adj[left].push((right as u32, 0));
    }

    for root in [node_b, f0.index()] {
        let phi = dijkstra(&adj, root);
        let mut flows = vec![0u64; g.arc_count()];
        let mut ok = true;
        for (i, arc) in g.arcs().iter().enumerate() {
            if arc.tail == arc.head {
                continue;
            }
            let a = ArcId(i as u32);
            let l = phi[map(Dart::tail_of(a))];
            let r = phi[map(Dart::head_of(a))];
            if l < r || l - r > arc.capacity {
                ok = false;
                break;
            }
            flows[i] = l - r;
        }
        if !ok {
            continue;
        }
        let assignment = FlowAssignment { flows };
        if verifies_as_flow(g, &assignment, s, t) {
            return assignment;
        }
    }
    FlowAssignment::zero(g)
}

/// Feasible s-t flow check: conservation everywhere else and a non-negative
/// value at the source matching the sink.
fn verifies_as_flow(g: &PlanarDigraph, a: &FlowAssignment, s: VertexId, t: VertexId) -> bool {
    let value = a.net_outflow(g, s);
    if value < 0 || -a.net_outflow(g, t) != value {
        return false;
    }
    (0..g.vertex_count())
        .filter(|&v| v != s.index() && v != t.index())
        .all(|v| a.net_outflow(g, VertexId(v as u32)) == 0)
}

fn dijkstra(adj: &[Vec<(u32, u64)>], root: usize) -> Vec<u64> {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;
    let mut dist = vec![u64::MAX; adj.len()];
    let mut heap = BinaryHeap::new();
    dist[root] = 0;
    heap.push(Reverse((0u64, root as u32)));
    while let Some(Reverse((d, v))) = heap.pop() {
        if d > dist[v as usize] {
            continue;
        }
        for &(to, w) in &adj[v as usize] {
            let nd = d + w;
            if nd < dist[to as usize] {
                dist[to as usize] = nd;
                heap.push(Reverse((nd, to)));
            }
        }
    }
    dist
}

/// Augments `assignment` to a maximum s-t flow. Residual paths are found by
/// depth-first search that scans darts clockwise from the arrival incidence
/// (left-first successor), under a capacity-scaling schedule; ties always
/// resolve by rotation position, so results are deterministic.
fn leftmost_augment(
    g: &PlanarDigraph,
    rotation: &[Vec<Dart>],
    assignment: &mut FlowAssignment,
    s: VertexId,
    t: VertexId,
) -> u64 {
    let bound = g.out_capacity(s).min(g.in_capacity(t));
    if bound == 0 {
        return 0;
    }
    let mut pos_of_dart = vec![0u32; 2 * g.arc_count()];
    for order in rotation {
        for (i, &d) in order.iter().enumerate() {
            pos_of_dart[d.index()] = i as u32;
        }
    }

    let mut total = 0u64;
    let mut visited = vec![0u32; g.vertex_count()];
    let mut epoch = 0u32;
    let mut delta = 1u64 << (63 - bound.leading_zeros());
    while delta >= 1 {
        loop {
            epoch += 1;
            match leftmost_path(g, rotation, &pos_of_dart, assignment, s, t, delta, &mut visited, epoch)
            {
                Some(path) => {
                    let mut bottleneck = u64::MAX;
                    for &(arc, forward) in &path {
                        let a = g.arc(arc);
                        let resid = if forward {
                            a.capacity - assignment.flows[arc.index()]
                        } else {
                            assignment.flows[arc.index()]
                        };
                        bottleneck = bottleneck.min(resid);
                    }
                    for &(arc, forward) in &path {
                        if forward {
                            assignment.flows[arc.index()] += bottleneck;
                        } else {
                            assignment.flows[arc.index()] -= bottleneck;
                        }
                    }
                    total += bottleneck;
                }
                None => break,
            }
        }
        delta /= 2;
    }
    total
}

struct Frame {
    vertex: u32,
    start: u32,
    scanned: u32,
    via: Option<(ArcId, bool)>,
}

#[allow(clippy::too_many_arguments)]
fn leftmost_path(
    g: &PlanarDigraph,
    rotation: &[Vec<Dart>],
    pos_of_dart: &[u32],
    assignment: &FlowAssignment,
    s: VertexId,
    t: VertexId,
    delta: u64,
    visited: &mut [u32],
    epoch: u32,
) -> Option<Vec<(ArcId, bool)>> {
    let mut stack = vec![Frame {
        vertex: s.0,
        start: 0,
        scanned: 0,
        via: None,
    }];
    visited[s.index()] = epoch;

    while let Some(frame) = stack.last_mut() {
        let v = frame.vertex;
        let order = &rotation[v as usize];
        let mut advanced = false;
        while frame.scanned < order.len() as u32 {
            let pos = (frame.start + frame.scanned) as usize % order.len();
            frame.scanned += 1;
            let d = order[pos];
            let arc_id = d.arc();
            let arc = g.arc(arc_id);
            if arc.tail == arc.head {
                continue;
            }
            let (target, forward, resid) = if !d.is_head() {
                (arc.head, true, arc.capacity - assignment.flows[arc_id.index()])
            } else {
                (arc.tail, false, assignment.flows[arc_id.index()])
            };
            if resid < delta || visited[target.index()] == epoch {
                continue;
            }
            visited[target.index()] = epoch;
            // Continue the scan at the next dart clockwise from the arrival
            // incidence at the target vertex.
            let arrival = d.rev();
            let start = (pos_of_dart[arrival.index()] + 1) % rotation[target.index()].len().max(1) as u32;
            stack.push(Frame {
                vertex: target.0,
                start,
                scanned: 0,
                via: Some((arc_id, forward)),
            });
            advanced = true;
            break;
        }
        if !advanced {
            stack.pop();
            continue;
        }
        if stack.last().unwrap().vertex == t.0 {
            return Some(stack.iter().filter_map(|f| f.via).collect());
        }
    }
    None
}
