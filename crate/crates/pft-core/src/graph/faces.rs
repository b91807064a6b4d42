//! Face tracing and the Euler-formula embedding check.

use crate::error::{Error, Result};
use crate::graph::{Dart, PlanarDigraph, VertexId};

/// Dense 0-based face identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FaceId(pub u32);

impl FaceId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Faces traced from the rotation system.
///
/// With clockwise rotations, faces are the orbits of
/// `d -> rotation-successor of rev(d)`; every face then lies to the left of
/// the walking direction of each dart on its boundary, so the left face of an
/// arc is the face of its tail dart and the right face is the face of its
/// head dart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceStructure {
    face_of_dart: Vec<u32>,
    cycles: Vec<Vec<Dart>>,
}

impl FaceStructure {
    #[inline]
    pub fn face_count(&self) -> usize {
        self.cycles.len()
    }

    #[inline]
    pub fn face_of_dart(&self, d: Dart) -> FaceId {
        FaceId(self.face_of_dart[d.index()])
    }

    /// Boundary darts of a face, in walk order.
    #[inline]
    pub fn cycle(&self, f: FaceId) -> &[Dart] {
        &self.cycles[f.index()]
    }

    pub fn cycles(&self) -> &[Vec<Dart>] {
        &self.cycles
    }

    /// Face to the left of arc `a`'s direction of travel.
    #[inline]
    pub fn left_face(&self, a: crate::graph::ArcId) -> FaceId {
        self.face_of_dart(Dart::tail_of(a))
    }

    /// Face to the right of arc `a`'s direction of travel.
    #[inline]
    pub fn right_face(&self, a: crate::graph::ArcId) -> FaceId {
        self.face_of_dart(Dart::head_of(a))
    }

    /// Faces incident to `v`, deduplicated, in rotation order.
    pub fn faces_at_vertex(&self, g: &PlanarDigraph, v: VertexId) -> Vec<FaceId> {
        let rot = g.rotation().expect("faces exist only for embedded graphs");
        let mut out = Vec::new();
        for &d in &rot[v.index()] {
            let f = self.face_of_dart(d);
            if !out.contains(&f) {
                out.push(f);
            }
        }
        out
    }
}

/// Traces faces by the next-dart rule and checks Euler's formula
/// `n - m + f = 2` for a connected embedded graph.
pub fn validate_embedding(g: &PlanarDigraph) -> Result<FaceStructure> {
    let rot = g.rotation().ok_or(Error::MissingRotation)?;
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }

    let dart_count = g.arc_count() * 2;
    // Successor of each dart within its vertex rotation (cyclic).
    let mut rot_next = vec![Dart(0); dart_count];
    for order in rot {
        for (i, &d) in order.iter().enumerate() {
            rot_next[d.index()] = order[(i + 1) % order.len()];
        }
    }

    let mut face_of_dart = vec![u32::MAX; dart_count];
    let mut cycles = Vec::new();
    for start in 0..dart_count {
        if face_of_dart[start] != u32::MAX {
            continue;
        }
        let id = cycles.len() as u32;
        let mut cycle = Vec::new();
        let mut d = Dart(start as u32);
        loop {
            face_of_dart[d.index()] = id;
            cycle.push(d);
            d = rot_next[d.rev().index()];
            if d.index() == start {
                break;
            }
        }
        cycles.push(cycle);
    }

    let (n, m, f) = (g.vertex_count(), g.arc_count(), cycles.len());
    if n + f != m + 2 {
        return Err(Error::EulerViolation { n, m, f });
    }
    Ok(FaceStructure { face_of_dart, cycles })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, ArcId};

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    /// Directed triangle 0->1->2->0 with the rotation of a straight-line
    /// drawing: 0 at the origin, 1 east, 2 north of the segment.
    fn triangle() -> PlanarDigraph {
        // At each vertex the two darts may appear in either cyclic order
        // (two-element rotations are orientation-free).
        let rot = vec![
            vec![Dart::tail_of(ArcId(0)), Dart::head_of(ArcId(2))],
            vec![Dart::head_of(ArcId(0)), Dart::tail_of(ArcId(1))],
            vec![Dart::head_of(ArcId(1)), Dart::tail_of(ArcId(2))],
        ];
        build_graph(
            3,
            vec![(v(0), v(1), 1), (v(1), v(2), 1), (v(2), v(0), 1)],
            Some(rot),
        )
        .unwrap()
    }

    #[test]
    fn single_arc_has_one_face() {
        let g = build_graph(
            2,
            vec![(v(0), v(1), 5)],
            Some(vec![vec![Dart(0)], vec![Dart(1)]]),
        )
        .unwrap();
        let faces = validate_embedding(&g).unwrap();
        assert_eq!(faces.face_count(), 1);
    }

    #[test]
    fn triangle_has_two_faces() {
        let faces = validate_embedding(&triangle()).unwrap();
        assert_eq!(faces.face_count(), 2);
    }

    #[test]
    fn face_tracing_partitions_darts() {
        let g = triangle();
        let faces = validate_embedding(&g).unwrap();
        let total: usize = faces.cycles().iter().map(|c| c.len()).sum();
        assert_eq!(total, 2 * g.arc_count());
        let mut seen = vec![false; 2 * g.arc_count()];
        for c in faces.cycles() {
            for d in c {
                assert!(!seen[d.index()]);
                seen[d.index()] = true;
            }
        }
    }

    #[test]
    fn disconnected_graph_rejected() {
        let g = build_graph(
            3,
            vec![(v(0), v(1), 1)],
            Some(vec![vec![Dart(0)], vec![Dart(1)], vec![]]),
        )
        .unwrap();
        assert_eq!(validate_embedding(&g).unwrap_err(), Error::NotConnected);
    }

    #[test]
    fn k5_violates_euler_for_any_rotation() {
        // K5 oriented from lower to higher id. m = 10 forces f = 7, which no
        // rotation system can produce on the sphere; the trace must disagree.
        let mut arcs = Vec::new();
        for i in 0..5u32 {
            for j in (i + 1)..5 {
                arcs.push((v(i), v(j), 1));
            }
        }
        // Rotation: darts at each vertex sorted by the other endpoint's id.
        let mut incident: Vec<Vec<(u32, Dart)>> = vec![Vec::new(); 5];
        for (idx, &(t, h, _)) in arcs.iter().enumerate() {
            incident[t.index()].push((h.0, Dart::tail_of(ArcId(idx as u32))));
            incident[h.index()].push((t.0, Dart::head_of(ArcId(idx as u32))));
        }
        let rot = incident
            .into_iter()
            .map(|mut ds| {
                ds.sort();
                ds.into_iter().map(|(_, d)| d).collect()
            })
            .collect();
        let g = build_graph(5, arcs, Some(rot)).unwrap();
        assert!(matches!(
            validate_embedding(&g).unwrap_err(),
            Error::EulerViolation { n: 5, m: 10, .. }
        ));
    }
}
