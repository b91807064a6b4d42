//! Canonical minimum cut-sets over all ordered pairs.

use crate::engines::{max_flow_planar, max_flow_reference, min_cut_from_flow, CutSet};
use crate::error::{Error, Result};
use crate::graph::{FaceStructure, PlanarDigraph, VertexId};
use crate::verify::{separates, ValidationReport, ViolationCode};

/// One canonical cut-set per ordered pair with positive value, plus the
/// output-sensitive size account. `total_size` is the sum of member sizes
/// and never changes under deduplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutSetCollection {
    pub entries: Vec<((VertexId, VertexId), CutSet)>,
    pub total_size: u64,
}

impl CutSetCollection {
    /// Groups of entry indices sharing an identical arc set, in first-seen
    /// order. Purely an output option; accounting is unaffected.
    pub fn dedup_index(&self) -> Vec<(Vec<u32>, Vec<usize>)> {
        let mut groups: Vec<(Vec<u32>, Vec<usize>)> = Vec::new();
        for (i, (_, cut)) in self.entries.iter().enumerate() {
            let key: Vec<u32> = cut.arcs.iter().map(|a| a.0).collect();
            match groups.iter_mut().find(|(k, _)| *k == key) {
                Some((_, members)) => members.push(i),
                None => groups.push((key, vec![i])),
            }
        }
        groups
    }
}

/// The source-minimal minimum cut for one ordered pair: capacity equals the
/// pair's max-flow value. Unreachable pairs yield the empty cut-set. Uses
/// the embedding-aware engine when faces are supplied, the reference engine
/// otherwise.
pub fn canonical_min_cut(
    g: &PlanarDigraph,
    faces: Option<&FaceStructure>,
    s: VertexId,
    t: VertexId,
) -> Result<CutSet> {
    let result = match faces {
        Some(f) => max_flow_planar(g, f, s, t)?,
        None => max_flow_reference(g, s, t)?,
    };
    min_cut_from_flow(g, &result)
}

/// Computes the whole collection: one canonical cut-set per ordered pair
/// with positive value, in lexicographic pair order.
pub fn all_cutsets(g: &PlanarDigraph, faces: &FaceStructure) -> Result<CutSetCollection> {
    if faces.cycles().iter().map(|c| c.len()).sum::<usize>() != 2 * g.arc_count() {
        return Err(Error::InvalidEmbedding);
    }
    let n = g.vertex_count();
    let mut entries = Vec::new();
    let mut total_size = 0u64;
    for s in 0..n {
        for t in 0..n {
            if s == t {
                continue;
            }
            let (s, t) = (VertexId(s as u32), VertexId(t as u32));
            let cut = canonical_min_cut(g, Some(faces), s, t)?;
            if cut.capacity > 0 {
                total_size += cut.arcs.len() as u64;
                entries.push(((s, t), cut));
            }
        }
    }
    Ok(CutSetCollection { entries, total_size })
}

/// Certificate checker: a cut-set is accepted iff deleting its arcs leaves
/// no positive-capacity directed s-t path and its capacity equals the
/// pair's max-flow value (minimality), computed by the reference engine.
pub fn verify_cutset(
    g: &PlanarDigraph,
    s: VertexId,
    t: VertexId,
    cut: &CutSet,
) -> Result<ValidationReport> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    if s == t {
        return Err(Error::SameSourceSink { index: None });
    }
    let mut report = ValidationReport::new();
    for a in &cut.arcs {
        if a.index() >= g.arc_count() {
            report.push(
                ViolationCode::IdOutOfRange,
                format!("cut references arc {} beyond arc count", a.0),
                Some(a.0 as u64),
            );
            return Ok(report);
        }
    }

    let claimed: u64 = cut.arcs.iter().map(|&a| g.capacity(a)).sum();
    if claimed != cut.capacity {
        report.push(
            ViolationCode::CutCapacityMismatch,
            format!(
                "stated capacity {} != sum of member capacities {claimed}",
                cut.capacity
            ),
            None,
        );
    }
    if !separates(g, s, t, &cut.arcs) {
        report.push(
            ViolationCode::CutNotSeparating,
            "a directed s-t path survives deletion of the cut arcs",
            None,
        );
    }
    let max = max_flow_reference(g, s, t)?.value;
    if claimed != max {
        report.push(
            ViolationCode::CutCapacityMismatch,
            format!("cut capacity {claimed} != max-flow value {max} (not minimum)"),
            None,
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::testutil::diamond;
    use crate::graph::ArcId;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn canonical_cut_examples() {
        let g = diamond();
        let cut = canonical_min_cut(&g, None, v(0), v(3)).unwrap();
        assert_eq!(cut.arcs, vec![ArcId(0), ArcId(1)]);
        assert_eq!(cut.capacity, 5);

        let cut = canonical_min_cut(&g, None, v(1), v(2)).unwrap();
        assert_eq!(cut.arcs, vec![ArcId(4)]);
        assert_eq!(cut.capacity, 1);

        let cut = canonical_min_cut(&g, None, v(2), v(1)).unwrap();
        assert!(cut.arcs.is_empty());
        assert_eq!(cut.capacity, 0);
    }

    #[test]
    fn verify_accepts_both_min_cuts_of_the_diamond() {
        let g = diamond();
        // {s->a, s->b} and {a->t, b->t} both have capacity 5 and separate.
        let near = CutSet {
            arcs: vec![ArcId(0), ArcId(1)],
            capacity: 5,
            source_side: None,
        };
        let far = CutSet {
            arcs: vec![ArcId(2), ArcId(3)],
            capacity: 5,
            source_side: None,
        };
        assert!(verify_cutset(&g, v(0), v(3), &near).unwrap().ok());
        assert!(verify_cutset(&g, v(0), v(3), &far).unwrap().ok());
    }

    #[test]
    fn verify_rejects_non_separating_set() {
        let g = diamond();
        let bad = CutSet {
            arcs: vec![ArcId(4)],
            capacity: 1,
            source_side: None,
        };
        let report = verify_cutset(&g, v(0), v(3), &bad).unwrap();
        assert!(!report.ok());
        assert!(report
            .violations()
            .iter()
            .any(|x| x.code == ViolationCode::CutNotSeparating));
    }
}
