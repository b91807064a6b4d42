//! Deterministic generators for embedded planar instances.
//!
//! Every generator emits a rotation system derived from an explicit
//! straight-line layout, so each instance passes `validate_embedding` by
//! construction. Randomness comes from the documented SplitMix64 stream in
//! [`crate::prng`]; identical parameters always yield bit-identical graphs.

use crate::error::{Error, Result};
use crate::graph::{build_graph, ArcId, Dart, PlanarDigraph, VertexId};
use crate::prng::SplitMix64;

/// A reproducible instance description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenSpec {
    Grid { rows: usize, cols: usize, cap_lo: u64, cap_hi: u64, seed: u64 },
    Path { caps: Vec<u64> },
    Hard { k: usize },
    RandomPlanar { n: usize, cap_hi: u64, seed: u64 },
}

impl GenSpec {
    pub fn build(&self) -> Result<PlanarDigraph> {
        match self {
            GenSpec::Grid { rows, cols, cap_lo, cap_hi, seed } => {
                gen_grid(*rows, *cols, *cap_lo, *cap_hi, *seed)
            }
            GenSpec::Path { caps } => gen_path(caps),
            GenSpec::Hard { k } => Ok(gen_hard_quadratic(*k)),
            GenSpec::RandomPlanar { n, cap_hi, seed } => Ok(gen_random_planar(*n, *cap_hi, *seed)),
        }
    }

    pub fn label(&self) -> String {
        match self {
            GenSpec::Grid { rows, cols, cap_lo, cap_hi, seed } => {
                format!("grid-{rows}x{cols}-c{cap_lo}..{cap_hi}-s{seed}")
            }
            GenSpec::Path { caps } => format!("path-{}", caps.len()),
            GenSpec::Hard { k } => format!("hard-k{k}"),
            GenSpec::RandomPlanar { n, cap_hi, seed } => {
                format!("random-planar-{n}-c{cap_hi}-s{seed}")
            }
        }
    }
}

/// Clockwise rotation system of a straight-line drawing.
///
/// Darts at each vertex sort counterclockwise from east by exact integer
/// cross products, then the list is reversed. Parallel and antiparallel
/// arcs between the same endpoints are disambiguated as if each arc bulged
/// slightly to the left of its travel direction, more strongly for higher
/// arc ids: among same-direction darts, head darts come first (descending
/// arc id), then tail darts (ascending arc id).
pub fn rotation_from_layout(
    n: usize,
    arcs: &[(VertexId, VertexId, u64)],
    pos: &[(i64, i64)],
) -> Vec<Vec<Dart>> {
    #[derive(Clone, Copy)]
    struct Key {
        dx: i64,
        dy: i64,
        dart: Dart,
    }
    let mut incident: Vec<Vec<Key>> = vec![Vec::new(); n];
    for (i, &(tail, head, _)) in arcs.iter().enumerate() {
        let a = ArcId(i as u32);
        let (tp, hp) = (pos[tail.index()], pos[head.index()]);
        incident[tail.index()].push(Key {
            dx: hp.0 - tp.0,
            dy: hp.1 - tp.1,
            dart: Dart::tail_of(a),
        });
        incident[head.index()].push(Key {
            dx: tp.0 - hp.0,
            dy: tp.1 - hp.1,
            dart: Dart::head_of(a),
        });
    }

    // Angle class in [0, 2pi) split at the positive x axis.
    fn half(k: &Key) -> u8 {
        if k.dy > 0 || (k.dy == 0 && k.dx > 0) {
            0
        } else {
            1
        }
    }
    fn bulge_rank(k: &Key) -> (u8, i64) {
        // Effective angle offset: +eps*id for tail darts, -eps*id for heads.
        if k.dart.is_head() {
            (0, -(k.dart.arc().0 as i64))
        } else {
            (1, k.dart.arc().0 as i64)
        }
    }

    incident
        .into_iter()
        .map(|mut keys| {
            keys.sort_by(|a, b| {
                half(a).cmp(&half(b)).then_with(|| {
                    let cross = a.dx as i128 * b.dy as i128 - a.dy as i128 * b.dx as i128;
                    // ccw: a before b when b lies counterclockwise of a
                    cross.cmp(&0).reverse().then_with(|| bulge_rank(a).cmp(&bulge_rank(b)))
                })
            });
            keys.reverse(); // ccw -> cw
            keys.into_iter().map(|k| k.dart).collect()
        })
        .collect()
}

fn build_embedded(
    n: usize,
    arcs: Vec<(VertexId, VertexId, u64)>,
    pos: &[(i64, i64)],
) -> PlanarDigraph {
    let rot = rotation_from_layout(n, &arcs, pos);
    build_graph(n, arcs, Some(rot)).expect("generator layout is structurally valid")
}

/// Directed grid: arcs rightward and downward, capacities i.i.d. uniform in
/// `[cap_lo, cap_hi]`. Capacities are drawn row-major, right arc before down
/// arc at each cell.
pub fn gen_grid(
    rows: usize,
    cols: usize,
    cap_lo: u64,
    cap_hi: u64,
    seed: u64,
) -> Result<PlanarDigraph> {
    if rows < 1 || cols < 1 {
        return Err(Error::BadRange {
            detail: format!("grid needs rows, cols >= 1 (got {rows}x{cols})"),
        });
    }
    if cap_lo > cap_hi {
        return Err(Error::BadRange {
            detail: format!("cap_lo {cap_lo} > cap_hi {cap_hi}"),
        });
    }
    let mut rng = SplitMix64::new(seed);
    let at = |r: usize, c: usize| VertexId((r * cols + c) as u32);
    let mut arcs = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                arcs.push((at(r, c), at(r, c + 1), rng.uniform(cap_lo, cap_hi)));
            }
            if r + 1 < rows {
                arcs.push((at(r, c), at(r + 1, c), rng.uniform(cap_lo, cap_hi)));
            }
        }
    }
    let pos: Vec<(i64, i64)> = (0..rows * cols)
        .map(|v| ((v % cols) as i64, -((v / cols) as i64)))
        .collect();
    Ok(build_embedded(rows * cols, arcs, &pos))
}

/// Directed path `v0 -> v1 -> ...` with the given capacities.
pub fn gen_path(caps: &[u64]) -> Result<PlanarDigraph> {
    if caps.is_empty() {
        return Err(Error::EmptyCaps);
    }
    let n = caps.len() + 1;
    let arcs: Vec<_> = caps
        .iter()
        .enumerate()
        .map(|(i, &c)| (VertexId(i as u32), VertexId(i as u32 + 1), c))
        .collect();
    let pos: Vec<(i64, i64)> = (0..n).map(|i| (i as i64, 0)).collect();
    Ok(build_embedded(n, arcs, &pos))
}

/// Worst-case family: the number of distinct pair values grows
/// quadratically in the vertex count.
///
/// Layout is a three-level ladder. Terminals come in emit/collect pairs
/// `t_i^out`, `t_i^in`. An upper bus of huge antiparallel arcs is entered
/// from `t_i^out` through capacity `p_i = (i+1)(k+1)` and drains freely into
/// every `t_j^in`; a lower bus is entered freely and drains into `t_j^in`
/// through capacity `q_j = j+1`. The two routes are arc-disjoint, so
/// `maxflow(t_i^out, t_j^in) = p_i + q_j`, and all k^2 such sums are
/// pairwise distinct. Collectors have no outgoing arcs, so no flow can relay
/// through a foreign terminal. n = 4k.
pub fn gen_hard_quadratic(k: usize) -> PlanarDigraph {
    let k = k.max(1);
    let huge = ((k as u64 + 2) * (k as u64 + 2)).next_power_of_two();
    let u = |i: usize| VertexId(i as u32);
    let t_out = |i: usize| VertexId((k + 2 * i) as u32);
    let t_in = |i: usize| VertexId((k + 2 * i + 1) as u32);
    let low = |i: usize| VertexId((3 * k + i) as u32);

    let mut arcs = Vec::new();
    for i in 0..k.saturating_sub(1) {
        arcs.push((u(i), u(i + 1), huge));
        arcs.push((u(i + 1), u(i), huge));
        arcs.push((low(i), low(i + 1), huge));
        arcs.push((low(i + 1), low(i), huge));
    }
    for i in 0..k {
        let p = (i as u64 + 1) * (k as u64 + 1);
        let q = i as u64 + 1;
        arcs.push((t_out(i), u(i), p));
        arcs.push((u(i), t_in(i), huge));
        arcs.push((t_out(i), low(i), huge));
        arcs.push((low(i), t_in(i), q));
    }

    let mut pos = vec![(0i64, 0i64); 4 * k];
    for i in 0..k {
        pos[u(i).index()] = (2 * i as i64, 2);
        pos[t_out(i).index()] = (2 * i as i64, 1);
        pos[t_in(i).index()] = (2 * i as i64 + 1, 1);
        pos[low(i).index()] = (2 * i as i64, 0);
    }
    build_embedded(4 * k, arcs, &pos)
}

/// Random connected subgraph of a grid skeleton with random arc orientations
/// and capacities uniform in `[0, cap_hi]`.
///
/// Draw order per seed: shuffle of the skeleton edges (spanning tree by
/// union-find over that order), one inclusion bit per non-tree edge, then
/// one orientation bit and one capacity per kept edge in skeleton order.
pub fn gen_random_planar(n: usize, cap_hi: u64, seed: u64) -> PlanarDigraph {
    let n = n.max(2);
    let mut rng = SplitMix64::new(seed);
    let rows_hint = (n as f64).sqrt().ceil() as usize;
    let cols = n.div_ceil(rows_hint);

    // Skeleton edges between row-major cells 0..n of a cols-wide strip.
    let cell = |r: usize, c: usize| r * cols + c;
    let mut skeleton: Vec<(usize, usize)> = Vec::new();
    for v in 0..n {
        let (r, c) = (v / cols, v % cols);
        if c + 1 < cols && cell(r, c + 1) < n {
            skeleton.push((v, cell(r, c + 1)));
        }
        if cell(r + 1, c) < n {
            skeleton.push((v, cell(r + 1, c)));
        }
    }

    let mut order: Vec<usize> = (0..skeleton.len()).collect();
    rng.shuffle(&mut order);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, v: usize) -> usize {
        if parent[v] != v {
            let root = find(parent, parent[v]);
            parent[v] = root;
        }
        parent[v]
    }
    let mut in_tree = vec![false; skeleton.len()];
    for &e in &order {
        let (a, b) = skeleton[e];
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            in_tree[e] = true;
        }
    }
    let keep: Vec<bool> = (0..skeleton.len())
        .map(|e| in_tree[e] || rng.bool())
        .collect();

    let mut arcs = Vec::new();
    for (e, &(a, b)) in skeleton.iter().enumerate() {
        if !keep[e] {
            continue;
        }
        let (tail, head) = if rng.bool() { (a, b) } else { (b, a) };
        let cap = rng.uniform(0, cap_hi);
        arcs.push((VertexId(tail as u32), VertexId(head as u32), cap));
    }
    let pos: Vec<(i64, i64)> = (0..n)
        .map(|v| ((v % cols) as i64, -((v / cols) as i64)))
        .collect();
    build_embedded(n, arcs, &pos)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimacs::write_dimacs;
    use crate::graph::validate_embedding;

    #[test]
    fn grid_2x2_counts() {
        let g = gen_grid(2, 2, 1, 9, 7).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.arc_count(), 4);
        let faces = validate_embedding(&g).unwrap();
        assert_eq!(faces.face_count(), 2);
    }

    #[test]
    fn degenerate_grid_is_a_path() {
        let g = gen_grid(1, 5, 3, 3, 0).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.arc_count(), 4);
        validate_embedding(&g).unwrap();
    }

    #[test]
    fn grid_is_deterministic() {
        let a = gen_grid(4, 5, 1, 100, 42).unwrap();
        let b = gen_grid(4, 5, 1, 100, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(write_dimacs(&a), write_dimacs(&b));
    }

    #[test]
    fn bad_ranges_rejected() {
        assert!(matches!(gen_grid(0, 3, 1, 2, 0), Err(Error::BadRange { .. })));
        assert!(matches!(gen_grid(2, 2, 5, 2, 0), Err(Error::BadRange { .. })));
        assert!(matches!(gen_path(&[]), Err(Error::EmptyCaps)));
    }

    #[test]
    fn path_generator() {
        let g = gen_path(&[4, 9]).unwrap();
        assert_eq!(g.vertex_count(), 3);
        validate_embedding(&g).unwrap();
    }

    #[test]
    fn hard_family_embeds_and_is_deterministic() {
        for k in 1..=6 {
            let g = gen_hard_quadratic(k);
            assert_eq!(g.vertex_count(), 4 * k);
            validate_embedding(&g)
                .unwrap_or_else(|e| panic!("hard k={k} failed embedding: {e}"));
            assert_eq!(g, gen_hard_quadratic(k));
        }
    }

    #[test]
    fn random_planar_embeds_for_many_seeds() {
        for seed in 0..50 {
            let g = gen_random_planar(23, 10, seed);
            assert_eq!(g.vertex_count(), 23);
            validate_embedding(&g)
                .unwrap_or_else(|e| panic!("seed {seed} failed embedding: {e}"));
        }
    }

    #[test]
    fn random_planar_two_vertices() {
        let g = gen_random_planar(2, 5, 3);
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.arc_count(), 1);
    }

    #[test]
    fn antiparallel_pair_embeds_as_a_lens() {
        let arcs = vec![
            (VertexId(0), VertexId(1), 1),
            (VertexId(1), VertexId(0), 2),
        ];
        let pos = vec![(0, 0), (1, 0)];
        let rot = rotation_from_layout(2, &arcs, &pos);
        let g = build_graph(2, arcs, Some(rot)).unwrap();
        let faces = validate_embedding(&g).unwrap();
        assert_eq!(faces.face_count(), 2);
    }
}
