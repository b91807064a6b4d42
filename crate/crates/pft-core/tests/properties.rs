//! Cross-module invariants on generated corpora, plus frozen small oracles.

use pft_core::cutsets::{all_cutsets, canonical_min_cut, verify_cutset};
use pft_core::dimacs::{parse_dimacs, write_dimacs};
use pft_core::engines::{
    brute_force_min_cut, max_flow_planar, max_flow_reference, min_cut_from_flow,
};
use pft_core::graph::{derive_dual, validate_embedding, ArcId, PlanarDigraph, VertexId};
use pft_core::instances::{
    gen_grid, gen_hard_quadratic, gen_path, gen_random_planar, rotation_from_layout,
};
use pft_core::multisink::{
    all_pairs_values, distinct_values, k_pairs_values, sssk_baseline, sssk_fast,
};
use pft_core::verify::verify_flow;

fn v(i: u32) -> VertexId {
    VertexId(i)
}

/// Diamond graph embedded by straight lines: s=0 at the left, t=3 at the
/// right, a=1 above, b=2 below. Arcs s->a:3, s->b:2, a->t:2, b->t:3, a->b:1.
fn diamond_embedded() -> PlanarDigraph {
    let arcs = vec![
        (v(0), v(1), 3),
        (v(0), v(2), 2),
        (v(1), v(3), 2),
        (v(2), v(3), 3),
        (v(1), v(2), 1),
    ];
    let pos = vec![(0, 0), (1, 1), (1, -1), (2, 0)];
    let rot = rotation_from_layout(4, &arcs, &pos);
    pft_core::build_graph(4, arcs, Some(rot)).unwrap()
}

#[test]
fn diamond_all_engines_agree_on_all_pairs() {
    let g = diamond_embedded();
    let faces = validate_embedding(&g).unwrap();
    let expected = [
        // (s, t, value) over all ordered pairs
        (0, 1, 3),
        (0, 2, 3),
        (0, 3, 5),
        (1, 0, 0),
        (1, 2, 1),
        (1, 3, 3),
        (2, 0, 0),
        (2, 1, 0),
        (2, 3, 3),
        (3, 0, 0),
        (3, 1, 0),
        (3, 2, 0),
    ];
    for &(s, t, want) in &expected {
        let reference = max_flow_reference(&g, v(s), v(t)).unwrap();
        let planar = max_flow_planar(&g, &faces, v(s), v(t)).unwrap();
        let (brute, _) = brute_force_min_cut(&g, v(s), v(t)).unwrap();
        assert_eq!(reference.value, want, "reference ({s},{t})");
        assert_eq!(planar.value, want, "planar ({s},{t})");
        assert_eq!(brute, want, "brute ({s},{t})");
        assert!(verify_flow(&g, &reference, true).ok());
        assert!(verify_flow(&g, &planar, true).ok());
    }
}

#[test]
fn diamond_table_distinct_and_kpairs() {
    let g = diamond_embedded();
    let faces = validate_embedding(&g).unwrap();
    let table = all_pairs_values(&g, &faces).unwrap();
    assert_eq!(table.value(v(0), v(3)), Some(5));
    assert_eq!(table.value(v(1), v(2)), Some(1));
    assert_eq!(table.value(v(0), v(0)), None);
    assert_eq!(distinct_values(&table).unwrap(), 4); // {0, 1, 3, 5}

    let values = k_pairs_values(&g, &faces, &[(v(0), v(3)), (v(1), v(2))]).unwrap();
    assert_eq!(values, vec![5, 1]);
    assert_eq!(k_pairs_values(&g, &faces, &[]).unwrap(), Vec::<u64>::new());
    let twice = k_pairs_values(&g, &faces, &[(v(0), v(3)), (v(0), v(3))]).unwrap();
    assert_eq!(twice, vec![5, 5]);
    let err = k_pairs_values(&g, &faces, &[(v(0), v(3)), (v(2), v(2))]).unwrap_err();
    assert_eq!(err, pft_core::Error::SameSourceSink { index: Some(1) });
}

#[test]
fn diamond_cutsets() {
    let g = diamond_embedded();
    let faces = validate_embedding(&g).unwrap();
    let collection = all_cutsets(&g, &faces).unwrap();
    assert_eq!(collection.entries.len(), 6);
    for ((s, t), cut) in &collection.entries {
        let report = verify_cutset(&g, *s, *t, cut).unwrap();
        assert!(report.ok(), "cut for ({},{}) failed: {report:?}", s.0, t.0);
    }
    let recount: u64 = collection.entries.iter().map(|(_, c)| c.arcs.len() as u64).sum();
    assert_eq!(collection.total_size, recount);
}

#[test]
fn engines_agree_across_random_planar_corpus() {
    for seed in 0..120u64 {
        let n = 2 + (seed as usize * 7) % 38;
        let g = gen_random_planar(n, 12, seed);
        let faces = validate_embedding(&g).unwrap();
        for (s, t) in [(0usize, n - 1), (n - 1, 0), (n / 2, n / 3)] {
            if s == t {
                continue;
            }
            let (s, t) = (v(s as u32), v(t as u32));
            let reference = max_flow_reference(&g, s, t).unwrap();
            let planar = max_flow_planar(&g, &faces, s, t).unwrap();
            assert_eq!(
                planar.value, reference.value,
                "engine mismatch seed={seed} n={n} pair=({},{})",
                s.0, t.0
            );
            assert!(verify_flow(&g, &planar, true).ok(), "seed={seed}");
            if n <= 20 {
                let (brute, _) = brute_force_min_cut(&g, s, t).unwrap();
                assert_eq!(brute, reference.value, "brute mismatch seed={seed}");
            }
            let cut = min_cut_from_flow(&g, &reference).unwrap();
            assert_eq!(cut.capacity, reference.value, "duality seed={seed}");
        }
    }
}

#[test]
fn fast_matches_baseline_across_families() {
    let mut cases: Vec<(PlanarDigraph, u32)> = Vec::new();
    for seed in 0..40u64 {
        let n = 2 + (seed as usize * 11) % 34;
        cases.push((gen_random_planar(n, 9, seed), (seed % n as u64) as u32));
    }
    for seed in 0..6u64 {
        cases.push((gen_grid(5, 7, 1, 40, seed).unwrap(), 0));
    }
    for k in 1..=6 {
        cases.push((gen_hard_quadratic(k), (k % 4) as u32));
    }
    cases.push((gen_path(&[4, 9, 2, 2, 17]).unwrap(), 0));

    for (g, s) in cases {
        let faces = validate_embedding(&g).unwrap();
        let fast = sssk_fast(&g, &faces, v(s)).unwrap();
        let base = sssk_baseline(&g, v(s)).unwrap();
        for t in 0..g.vertex_count() {
            assert_eq!(
                fast.value(v(t as u32)),
                base.value(v(t as u32)),
                "n={} s={s} t={t}",
                g.vertex_count()
            );
        }
    }
}

#[test]
fn dimacs_round_trips_over_generators() {
    let mut graphs = vec![
        gen_path(&[4, 9]).unwrap(),
        gen_hard_quadratic(4),
        diamond_embedded(),
    ];
    for seed in 0..25u64 {
        graphs.push(gen_grid(3 + (seed % 4) as usize, 4, 0, 99, seed).unwrap());
        graphs.push(gen_random_planar(2 + (seed as usize * 3) % 30, 7, seed));
    }
    for g in graphs {
        let text = write_dimacs(&g);
        let (parsed, _) = parse_dimacs(&text).unwrap();
        assert_eq!(parsed, g);
        assert_eq!(write_dimacs(&parsed), text);
    }
}

#[test]
fn dual_and_faces_invariants_over_generators() {
    for seed in 0..30u64 {
        let g = gen_random_planar(2 + (seed as usize * 5) % 40, 9, seed);
        let faces = validate_embedding(&g).unwrap();
        // Face tracing partitions darts.
        let mut seen = vec![false; 2 * g.arc_count()];
        for c in faces.cycles() {
            for d in c {
                assert!(!seen[d.index()]);
                seen[d.index()] = true;
            }
        }
        assert!(seen.iter().all(|&s| s));
        // Dual involution and counts.
        let dual = derive_dual(&g, &faces);
        assert_eq!(dual.arc_count(), g.arc_count());
        for i in 0..g.arc_count() {
            let a = ArcId(i as u32);
            assert_eq!(dual.primal_of(dual.dual_of(a)), a);
            assert_eq!(dual.arc(a).weight, g.capacity(a));
        }
    }
}

#[test]
fn triangle_inequality_on_random_tables() {
    for seed in [3u64, 17, 41] {
        let g = gen_random_planar(14, 8, seed);
        let faces = validate_embedding(&g).unwrap();
        let table = all_pairs_values(&g, &faces).unwrap();
        let n = g.vertex_count();
        for s in 0..n {
            for u in 0..n {
                for t in 0..n {
                    if s == u || u == t || s == t {
                        continue;
                    }
                    let st = table.value(v(s as u32), v(t as u32)).unwrap();
                    let su = table.value(v(s as u32), v(u as u32)).unwrap();
                    let ut = table.value(v(u as u32), v(t as u32)).unwrap();
                    assert!(
                        st >= su.min(ut),
                        "triangle violated seed={seed}: ({s},{t})={st} < min(({s},{u})={su}, ({u},{t})={ut})"
                    );
                }
            }
        }
    }
}

#[test]
fn capacity_increase_is_monotone() {
    for trial in 0..25u64 {
        let g = gen_random_planar(12, 6, trial);
        let faces = validate_embedding(&g).unwrap();
        let before = all_pairs_values(&g, &faces).unwrap();

        let bump = (trial as usize * 13) % g.arc_count();
        let arcs: Vec<_> = g
            .arcs()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let cap = if i == bump { a.capacity + 5 } else { a.capacity };
                (a.tail, a.head, cap)
            })
            .collect();
        let rot = g.rotation().map(|r| r.to_vec());
        let bumped = pft_core::build_graph(g.vertex_count(), arcs, rot).unwrap();
        let faces2 = validate_embedding(&bumped).unwrap();
        let after = all_pairs_values(&bumped, &faces2).unwrap();

        for s in 0..g.vertex_count() {
            for t in 0..g.vertex_count() {
                if s == t {
                    continue;
                }
                assert!(
                    after.value(v(s as u32), v(t as u32)) >= before.value(v(s as u32), v(t as u32)),
                    "monotonicity violated at trial {trial} pair ({s},{t})"
                );
            }
        }
    }
}

#[test]
fn path_instances_have_few_distinct_values() {
    let caps = [7u64, 3, 9, 3, 12, 5];
    let g = gen_path(&caps).unwrap();
    let faces = validate_embedding(&g).unwrap();
    let table = all_pairs_values(&g, &faces).unwrap();
    let n = g.vertex_count();
    assert!(distinct_values(&table).unwrap() <= n);

    // All-equal capacities: exactly {0, c}.
    let g = gen_path(&[4, 4, 4]).unwrap();
    let faces = validate_embedding(&g).unwrap();
    let table = all_pairs_values(&g, &faces).unwrap();
    assert_eq!(distinct_values(&table).unwrap(), 2);
}

#[test]
fn dag_tables_are_lower_triangular_zero() {
    let g = gen_grid(4, 5, 1, 30, 5).unwrap();
    let faces = validate_embedding(&g).unwrap();
    let table = all_pairs_values(&g, &faces).unwrap();
    // Grid arcs all point from lower to higher row-major index.
    for s in 0..g.vertex_count() {
        for t in 0..s {
            assert_eq!(table.value(v(s as u32), v(t as u32)), Some(0));
        }
    }
}

#[test]
fn sssk_examples() {
    // Diamond from s: [a:3, b:3, t:5].
    let g = diamond_embedded();
    let faces = validate_embedding(&g).unwrap();
    let fast = sssk_fast(&g, &faces, v(0)).unwrap();
    assert_eq!(fast.value(v(1)), Some(3));
    assert_eq!(fast.value(v(2)), Some(3));
    assert_eq!(fast.value(v(3)), Some(5));

    // Path bottlenecks from v1.
    let g = gen_path(&[4, 9]).unwrap();
    let base = sssk_baseline(&g, v(0)).unwrap();
    assert_eq!(base.value(v(1)), Some(4));
    assert_eq!(base.value(v(2)), Some(4));

    // Isolated source reports all zeros (reference engine path).
    let g = pft_core::build_graph(3, vec![(v(1), v(2), 5)], None).unwrap();
    let base = sssk_baseline(&g, v(0)).unwrap();
    assert_eq!(base.value(v(1)), Some(0));
    assert_eq!(base.value(v(2)), Some(0));
}

#[test]
fn hard_family_distinct_counts_grow_quadratically() {
    // n = 4k; terminal pairs alone contribute k^2 distinct sums.
    let mut counts = Vec::new();
    for k in [2usize, 4, 8] {
        let g = gen_hard_quadratic(k);
        let faces = validate_embedding(&g).unwrap();
        let table = all_pairs_values(&g, &faces).unwrap();
        let count = distinct_values(&table).unwrap();
        let n = g.vertex_count();
        assert!(
            count >= n * n / 64,
            "k={k}: {count} distinct < n^2/64 = {}",
            n * n / 64
        );
        counts.push((n, count));
    }
    for w in counts.windows(2) {
        assert!(w[1].1 > w[0].1);
    }
}

#[test]
fn canonical_cut_with_and_without_embedding_agree() {
    for seed in 0..20u64 {
        let g = gen_random_planar(16, 9, seed);
        let faces = validate_embedding(&g).unwrap();
        for (s, t) in [(0u32, 15u32), (7, 3)] {
            let with = canonical_min_cut(&g, Some(&faces), v(s), v(t)).unwrap();
            let without = canonical_min_cut(&g, None, v(s), v(t)).unwrap();
            assert_eq!(with.arcs, without.arcs, "seed={seed} pair=({s},{t})");
            assert_eq!(with.capacity, without.capacity);
        }
    }
}
