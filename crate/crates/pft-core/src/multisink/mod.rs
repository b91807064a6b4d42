//! Single-source all-sinks values, the all-pairs table, and derived counts.

mod fast;

pub use fast::sssk_fast;
pub use fast::stats as fast_stats;

use crate::engines::{max_flow_planar, max_flow_reference};
use crate::error::{Error, Result};
use crate::graph::{validate_embedding, FaceStructure, PlanarDigraph, VertexId};

/// Max st-flow values from a fixed source to every other vertex.
/// The source slot is the distinguished undefined entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SinkValueVector {
    pub source: VertexId,
    values: Vec<Option<u64>>,
}

impl SinkValueVector {
    pub(crate) fn new(source: VertexId, values: Vec<Option<u64>>) -> Self {
        debug_assert!(values[source.index()].is_none());
        Self { source, values }
    }

    #[inline]
    pub fn value(&self, t: VertexId) -> Option<u64> {
        self.values[t.index()]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `(sink, value)` over all sinks other than the source, ascending.
    pub fn iter(&self) -> impl Iterator<Item = (VertexId, u64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter_map(|(t, v)| v.map(|v| (VertexId(t as u32), v)))
    }

    pub fn entries(&self) -> &[Option<u64>] {
        &self.values
    }
}

/// The n-by-n ordered-pair value table; diagonal entries are undefined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairValueTable {
    rows: Vec<SinkValueVector>,
}

impl PairValueTable {
    pub fn from_rows(rows: Vec<SinkValueVector>) -> Self {
        Self { rows }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn value(&self, s: VertexId, t: VertexId) -> Option<u64> {
        self.rows[s.index()].value(t)
    }

    pub fn rows(&self) -> &[SinkValueVector] {
        &self.rows
    }
}

/// Baseline: one independent single-pair computation per sink, with the
/// embedding-aware engine when a valid embedding is present and the
/// reference engine otherwise. Unreachable sinks report 0.
pub fn sssk_baseline(g: &PlanarDigraph, s: VertexId) -> Result<SinkValueVector> {
    g.check_vertex(s)?;
    let faces = if g.has_rotation() {
        validate_embedding(g).ok()
    } else {
        None
    };
    let mut values = vec![None; g.vertex_count()];
    for t in 0..g.vertex_count() {
        if t == s.index() {
            continue;
        }
        let t = VertexId(t as u32);
        let value = match &faces {
            Some(f) => max_flow_planar(g, f, s, t)?.value,
            None => max_flow_reference(g, s, t)?.value,
        };
        values[t.index()] = Some(value);
    }
    Ok(SinkValueVector::new(s, values))
}

/// All ordered-pair values: one fast single-source pass per row. Rows are
/// independent; this sequential form is the deterministic reference, and
/// callers may compute rows concurrently and reassemble with
/// [`PairValueTable::from_rows`].
pub fn all_pairs_values(g: &PlanarDigraph, faces: &FaceStructure) -> Result<PairValueTable> {
    let rows = (0..g.vertex_count())
        .map(|s| sssk_fast(g, faces, VertexId(s as u32)))
        .collect::<Result<Vec<_>>>()?;
    Ok(PairValueTable::from_rows(rows))
}

/// Number of distinct values among all off-diagonal entries (zeros count).
pub fn distinct_values(table: &PairValueTable) -> Result<usize> {
    let n = table.n();
    let mut seen = std::collections::BTreeSet::new();
    for s in 0..n {
        let row = &table.rows()[s];
        if row.len() != n {
            return Err(Error::IncompleteTable);
        }
        for t in 0..n {
            if t == s {
                continue;
            }
            match row.value(VertexId(t as u32)) {
                Some(v) => {
                    seen.insert(v);
                }
                None => return Err(Error::IncompleteTable),
            }
        }
    }
    Ok(seen.len())
}

/// Values for explicit pairs, grouping by source so each distinct source
/// costs one single-source pass; no table is materialized.
pub fn k_pairs_values(
    g: &PlanarDigraph,
    faces: &FaceStructure,
    pairs: &[(VertexId, VertexId)],
) -> Result<Vec<u64>> {
    for (i, &(s, t)) in pairs.iter().enumerate() {
        g.check_vertex(s)?;
        g.check_vertex(t)?;
        if s == t {
            return Err(Error::SameSourceSink { index: Some(i) });
        }
    }
    let mut by_source: std::collections::BTreeMap<VertexId, SinkValueVector> =
        std::collections::BTreeMap::new();
    for &(s, _) in pairs {
        if !by_source.contains_key(&s) {
            by_source.insert(s, sssk_fast(g, faces, s)?);
        }
    }
    Ok(pairs
        .iter()
        .map(|&(s, t)| by_source[&s].value(t).expect("t != s was checked"))
        .collect())
}
