//! Cut extraction from a max flow and the exhaustive small-instance oracle.

use crate::error::{Error, Result};
use crate::graph::{ArcId, PlanarDigraph, VertexId};

use super::{residual_reachable, CutSet, FlowResult};

/// Largest vertex count accepted by [`brute_force_min_cut`].
pub const BRUTE_FORCE_LIMIT: usize = 20;

/// Canonical source-minimal cut: the source side is the set of vertices
/// reachable from `s` in the residual graph, which is the inclusion-minimal
/// source side over all minimum cuts and independent of the particular
/// maximum flow supplied.
pub fn min_cut_from_flow(g: &PlanarDigraph, result: &FlowResult) -> Result<CutSet> {
    let reach = residual_reachable(g, &result.assignment, result.source);
    if reach[result.sink.index()] {
        return Err(Error::NotMaximal);
    }
    Ok(cut_from_side(g, |v| reach[v], result.value))
}

fn cut_from_side(g: &PlanarDigraph, in_side: impl Fn(usize) -> bool, expect: u64) -> CutSet {
    let mut arcs = Vec::new();
    let mut capacity = 0u64;
    for (i, a) in g.arcs().iter().enumerate() {
        if a.tail != a.head && in_side(a.tail.index()) && !in_side(a.head.index()) && a.capacity > 0
        {
            arcs.push(ArcId(i as u32));
            capacity += a.capacity;
        }
    }
    debug_assert_eq!(capacity, expect);
    let source_side = (0..g.vertex_count())
        .filter(|&v| in_side(v))
        .map(|v| VertexId(v as u32))
        .collect();
    CutSet {
        arcs,
        capacity,
        source_side: Some(source_side),
    }
}

/// Exhaustive minimum-cut oracle: enumerates every 2-partition (S, V\S) with
/// `s` in S and `t` outside, and returns the minimum capacity together with
/// the lexicographically smallest minimizing S. Exponential; refuses n > 20.
pub fn brute_force_min_cut(
    g: &PlanarDigraph,
    s: VertexId,
    t: VertexId,
) -> Result<(u64, CutSet)> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    if s == t {
        return Err(Error::SameSourceSink { index: None });
    }
    let n = g.vertex_count();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }

    let interior: Vec<usize> = (0..n).filter(|&v| v != s.index() && v != t.index()).collect();
    let mut best_cap = u64::MAX;
    let mut best_side: Vec<u32> = Vec::new();
    for mask in 0u32..(1u32 << interior.len()) {
        let mut side = 1u64 << s.index();
        for (bit, &v) in interior.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                side |= 1 << v;
            }
        }
        let mut cap = 0u64;
        for a in g.arcs() {
            if a.tail != a.head
                && side >> a.tail.index() & 1 == 1
                && side >> a.head.index() & 1 == 0
            {
                cap += a.capacity;
            }
        }
        if cap > best_cap {
            continue;
        }
        let vertices: Vec<u32> = (0..n as u32).filter(|&v| side >> v & 1 == 1).collect();
        if cap < best_cap || vertices < best_side {
            best_cap = cap;
            best_side = vertices;
        }
    }

    let side_set: Vec<bool> = {
        let mut set = vec![false; n];
        for &v in &best_side {
            set[v as usize] = true;
        }
        set
    };
    let cut = cut_from_side(g, |v| side_set[v], best_cap);
    Ok((best_cap, cut))
}
