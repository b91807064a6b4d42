// scratch perf probe
use pft_core::graph::validate_embedding;
use pft_core::instances::gen_grid;
use pft_core::multisink::{fast_stats, sssk_baseline, sssk_fast};
use pft_core::VertexId;
use std::time::Instant;

fn probe(lo: u64, hi: u64, with_base: bool) {
    println!("caps [{lo}, {hi}]:");
    for (rows, cols) in [(32usize, 32usize), (32, 64), (64, 64), (64, 128)] {
        let n = rows * cols;
        let g = gen_grid(rows, cols, lo, hi, 42).unwrap();
        let faces = validate_embedding(&g).unwrap();

        fast_stats::reset();
        let t0 = Instant::now();
        let fast = sssk_fast(&g, &faces, VertexId(0)).unwrap();
        let fast_time = t0.elapsed();
        let stats = fast_stats::dump();

        let base_time = if with_base {
            let t0 = Instant::now();
            let base = sssk_baseline(&g, VertexId(0)).unwrap();
            let bt = t0.elapsed();
            for t in 0..n {
                assert_eq!(fast.value(VertexId(t as u32)), base.value(VertexId(t as u32)), "mismatch at n={n} t={t}");
            }
            bt.as_secs_f64()
        } else { f64::NAN };
        println!("  n={n:6} fast={:10.4?} base={:8.3}s speedup={:6.1}x", fast_time, base_time, base_time / fast_time.as_secs_f64());
        println!("      {stats}");
    }
}

#[test]
fn perf_probe() {
    probe(500, 1000, false);
}
