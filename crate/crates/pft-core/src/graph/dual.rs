//! Dual graph over the faces of an embedding.

use crate::graph::{ArcId, FaceId, FaceStructure, PlanarDigraph};

/// Dual counterpart of a primal arc. It runs from the primal arc's right face
/// to its left face and carries the primal capacity: crossing the primal arc
/// in that direction is what a directed cut pays for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualArc {
    pub from: FaceId,
    pub to: FaceId,
    pub weight: u64,
}

/// One dual vertex per face, one dual arc per primal arc. Dual arc `i`
/// corresponds to primal arc `i`, so the primal/dual cross-reference is the
/// identity on ids in both directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    face_count: usize,
    arcs: Vec<DualArc>,
}

impl DualGraph {
    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.face_count
    }

    #[inline]
    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    #[inline]
    pub fn arc(&self, id: ArcId) -> &DualArc {
        &self.arcs[id.index()]
    }

    pub fn arcs(&self) -> &[DualArc] {
        &self.arcs
    }

    /// Primal arc crossed by dual arc `id`.
    #[inline]
    pub fn primal_of(&self, id: ArcId) -> ArcId {
        id
    }

    /// Dual arc crossing primal arc `id`.
    #[inline]
    pub fn dual_of(&self, id: ArcId) -> ArcId {
        id
    }
}

pub fn derive_dual(g: &PlanarDigraph, faces: &FaceStructure) -> DualGraph {
    let arcs = (0..g.arc_count())
        .map(|i| {
            let a = ArcId(i as u32);
            DualArc {
                from: faces.right_face(a),
                to: faces.left_face(a),
                weight: g.capacity(a),
            }
        })
        .collect();
    DualGraph {
        face_count: faces.face_count(),
        arcs,
    }
}
