//! Embedded planar digraph model.
//!
//! A graph is a dense set of vertices, a list of capacitated arcs, and an
//! optional rotation system: for every vertex, the clockwise cyclic order of
//! its incident darts. Each arc contributes two darts, one anchored at its
//! tail and one at its head, and each directed arc is its own embedded edge
//! (antiparallel arcs are never merged). Capacities are non-negative
//! integers; flow arithmetic throughout the toolkit is exact.

mod faces;
mod dual;

pub use dual::{derive_dual, DualArc, DualGraph};
pub use faces::{validate_embedding, FaceId, FaceStructure};

use crate::error::{Error, Result};

/// Largest single capacity accepted by the builder.
pub const MAX_CAPACITY: u64 = 1 << 60;
/// Largest accepted sum of all capacities, so aggregates stay overflow-safe.
pub const MAX_TOTAL_CAPACITY: u64 = 1 << 62;

/// Dense 0-based vertex identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Dense 0-based arc identifier; indexes a unique (tail, head, capacity) record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArcId(pub u32);

impl ArcId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// One of the two embedded incidences of an arc: `2*arc` is the tail dart,
/// `2*arc + 1` the head dart. Walking the tail dart traverses the arc
/// forward; walking the head dart traverses it backward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart(pub u32);

impl Dart {
    #[inline]
    pub fn tail_of(arc: ArcId) -> Self {
        Dart(arc.0 * 2)
    }

    #[inline]
    pub fn head_of(arc: ArcId) -> Self {
        Dart(arc.0 * 2 + 1)
    }

    #[inline]
    pub fn arc(self) -> ArcId {
        ArcId(self.0 / 2)
    }

    #[inline]
    pub fn is_head(self) -> bool {
        self.0 & 1 == 1
    }

    /// The opposite incidence of the same arc.
    #[inline]
    pub fn rev(self) -> Self {
        Dart(self.0 ^ 1)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A capacitated directed arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub tail: VertexId,
    pub head: VertexId,
    pub capacity: u64,
}

/// Capacitated digraph with an optional combinatorial embedding.
///
/// Immutable after construction; safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarDigraph {
    n: usize,
    arcs: Vec<Arc>,
    /// Clockwise dart order per vertex, when an embedding is supplied.
    rotation: Option<Vec<Vec<Dart>>>,
    // CSR adjacency over arc ids, derived at build time.
    out_start: Vec<u32>,
    out_arcs: Vec<u32>,
    in_start: Vec<u32>,
    in_arcs: Vec<u32>,
}

impl PlanarDigraph {
    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    #[inline]
    pub fn arc(&self, id: ArcId) -> &Arc {
        &self.arcs[id.index()]
    }

    #[inline]
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    #[inline]
    pub fn capacity(&self, id: ArcId) -> u64 {
        self.arcs[id.index()].capacity
    }

    pub fn rotation(&self) -> Option<&[Vec<Dart>]> {
        self.rotation.as_deref()
    }

    pub fn has_rotation(&self) -> bool {
        self.rotation.is_some()
    }

    /// Arc ids leaving `v`, ascending.
    #[inline]
    pub fn out_arcs(&self, v: VertexId) -> &[u32] {
        &self.out_arcs[self.out_start[v.index()] as usize..self.out_start[v.index() + 1] as usize]
    }

    /// Arc ids entering `v`, ascending.
    #[inline]
    pub fn in_arcs(&self, v: VertexId) -> &[u32] {
        &self.in_arcs[self.in_start[v.index()] as usize..self.in_start[v.index() + 1] as usize]
    }

    /// Anchor vertex of a dart (tail for tail darts, head for head darts).
    #[inline]
    pub fn dart_from(&self, d: Dart) -> VertexId {
        let a = self.arc(d.arc());
        if d.is_head() {
            a.head
        } else {
            a.tail
        }
    }

    /// Other endpoint of a dart's arc.
    #[inline]
    pub fn dart_to(&self, d: Dart) -> VertexId {
        let a = self.arc(d.arc());
        if d.is_head() {
            a.tail
        } else {
            a.head
        }
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.index() >= self.n {
            return Err(Error::IdOutOfRange {
                id: v.0 as u64,
                limit: self.n as u64,
            });
        }
        Ok(())
    }

    /// True when the underlying undirected graph is connected (ignoring
    /// capacities; the empty graph counts as disconnected).
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            let vid = VertexId(v as u32);
            for &a in self.out_arcs(vid).iter().chain(self.in_arcs(vid)) {
                let arc = &self.arcs[a as usize];
                let w = if arc.tail.index() == v { arc.head } else { arc.tail };
                if !seen[w.index()] {
                    seen[w.index()] = true;
                    reached += 1;
                    stack.push(w.index());
                }
            }
        }
        reached == self.n
    }

    /// Sum of in-arc capacities per vertex, self-loops excluded.
    pub fn in_capacity(&self, v: VertexId) -> u64 {
        self.in_arcs(v)
            .iter()
            .map(|&a| &self.arcs[a as usize])
            .filter(|arc| arc.tail != arc.head)
            .map(|arc| arc.capacity)
            .sum()
    }

    /// Sum of out-arc capacities per vertex, self-loops excluded.
    pub fn out_capacity(&self, v: VertexId) -> u64 {
        self.out_arcs(v)
            .iter()
            .map(|&a| &self.arcs[a as usize])
            .filter(|arc| arc.tail != arc.head)
            .map(|arc| arc.capacity)
            .sum()
    }
}

/// Builds a validated graph. The rotation, when given, is retained verbatim
/// and checked structurally: every dart appears exactly once, anchored at the
/// vertex whose rotation lists it. Whether the rotation is actually planar is
/// the business of [`validate_embedding`].
pub fn build_graph(
    n: usize,
    arcs: Vec<(VertexId, VertexId, u64)>,
    rotation: Option<Vec<Vec<Dart>>>,
) -> Result<PlanarDigraph> {
    let mut total: u64 = 0;
    let mut records = Vec::with_capacity(arcs.len());
    for &(tail, head, capacity) in &arcs {
        for v in [tail, head] {
            if v.index() >= n {
                return Err(Error::IdOutOfRange {
                    id: v.0 as u64,
                    limit: n as u64,
                });
            }
        }
        if capacity > MAX_CAPACITY {
            return Err(Error::CapacityOutOfRange {
                value: capacity,
                detail: format!("single capacity exceeds {MAX_CAPACITY}"),
            });
        }
        total = total.saturating_add(capacity);
        if total > MAX_TOTAL_CAPACITY {
            return Err(Error::CapacityOutOfRange {
                value: capacity,
                detail: format!("capacity sum exceeds {MAX_TOTAL_CAPACITY}"),
            });
        }
        records.push(Arc { tail, head, capacity });
    }

    if let Some(rot) = &rotation {
        if rot.len() != n {
            return Err(Error::RotationIncomplete {
                detail: format!("rotation lists {} vertices, graph has {n}", rot.len()),
            });
        }
        let dart_count = records.len() * 2;
        let mut seen = vec![false; dart_count];
        let mut listed = 0usize;
        for (v, order) in rot.iter().enumerate() {
            for &d in order {
                if d.index() >= dart_count {
                    return Err(Error::DanglingDart {
                        dart: d.0,
                        detail: format!("references arc {} beyond arc count", d.arc().0),
                    });
                }
                if seen[d.index()] {
                    return Err(Error::DuplicateDart { dart: d.0 });
                }
                seen[d.index()] = true;
                listed += 1;
                let anchor = {
                    let a = &records[d.arc().index()];
                    if d.is_head() {
                        a.head
                    } else {
                        a.tail
                    }
                };
                if anchor.index() != v {
                    return Err(Error::DanglingDart {
                        dart: d.0,
                        detail: format!("anchored at vertex {} but listed at {v}", anchor.0),
                    });
                }
            }
        }
        if listed != dart_count {
            let missing = seen.iter().position(|&s| !s).unwrap_or(0);
            return Err(Error::DanglingDart {
                dart: missing as u32,
                detail: "missing from every rotation".into(),
            });
        }
    }

    let (out_start, out_arcs) = csr(n, &records, |a| a.tail);
    let (in_start, in_arcs) = csr(n, &records, |a| a.head);
    Ok(PlanarDigraph {
        n,
        arcs: records,
        rotation,
        out_start,
        out_arcs,
        in_start,
        in_arcs,
    })
}

fn csr(n: usize, arcs: &[Arc], key: impl Fn(&Arc) -> VertexId) -> (Vec<u32>, Vec<u32>) {
    let mut start = vec![0u32; n + 1];
    for a in arcs {
        start[key(a).index() + 1] += 1;
    }
    for i in 0..n {
        start[i + 1] += start[i];
    }
    let mut slots = start.clone();
    let mut out = vec![0u32; arcs.len()];
    for (id, a) in arcs.iter().enumerate() {
        let k = key(a).index();
        out[slots[k] as usize] = id as u32;
        slots[k] += 1;
    }
    (start, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn smallest_graph() {
        let g = build_graph(2, vec![(v(0), v(1), 7)], None).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.arc_count(), 1);
        assert_eq!(g.capacity(ArcId(0)), 7);
    }

    #[test]
    fn id_out_of_range_rejected() {
        let err = build_graph(2, vec![(v(0), v(5), 1)], None).unwrap_err();
        assert!(matches!(err, Error::IdOutOfRange { id: 5, .. }));
    }

    #[test]
    fn capacity_limits_enforced() {
        let err = build_graph(2, vec![(v(0), v(1), MAX_CAPACITY + 1)], None).unwrap_err();
        assert!(matches!(err, Error::CapacityOutOfRange { .. }));
        let arcs = vec![(v(0), v(1), MAX_CAPACITY); 5];
        let err = build_graph(2, arcs, None).unwrap_err();
        assert!(matches!(err, Error::CapacityOutOfRange { .. }));
    }

    #[test]
    fn duplicate_dart_rejected() {
        let rot = vec![vec![Dart(0), Dart(0)], vec![Dart(1)]];
        let err = build_graph(2, vec![(v(0), v(1), 1)], Some(rot)).unwrap_err();
        assert!(matches!(err, Error::DuplicateDart { dart: 0 }));
    }

    #[test]
    fn misanchored_dart_rejected() {
        let rot = vec![vec![Dart(1)], vec![Dart(0)]];
        let err = build_graph(2, vec![(v(0), v(1), 1)], Some(rot)).unwrap_err();
        assert!(matches!(err, Error::DanglingDart { .. }));
    }

    #[test]
    fn missing_dart_rejected() {
        let rot = vec![vec![Dart(0)], vec![]];
        let err = build_graph(2, vec![(v(0), v(1), 1)], Some(rot)).unwrap_err();
        assert!(matches!(err, Error::DanglingDart { dart: 1, .. }));
    }

    #[test]
    fn adjacency_is_sorted_by_arc_id() {
        let g = build_graph(
            3,
            vec![(v(0), v(1), 1), (v(0), v(2), 2), (v(1), v(2), 3)],
            None,
        )
        .unwrap();
        assert_eq!(g.out_arcs(v(0)), &[0, 1]);
        assert_eq!(g.in_arcs(v(2)), &[1, 2]);
        assert!(g.is_connected());
    }

    #[test]
    fn connectivity_detects_isolated_vertices() {
        let g = build_graph(3, vec![(v(0), v(1), 1)], None).unwrap();
        assert!(!g.is_connected());
    }
}
