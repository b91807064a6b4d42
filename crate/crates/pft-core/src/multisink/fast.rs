//! Incremental single-source all-sinks engine.
//!
//! One residual state is shared across all sinks. Flow absorbed by a
//! finished sink stays parked there as withdrawable excess, so the next
//! sink (visited in breadth-first order, hence nearby) usually reroutes it
//! over a short residual path instead of pulling from the source again.
//! Each sink's value is closed by a matching cut certificate: the sink's
//! in-cut, a minimum cut of a small contracted neighborhood, or a member of
//! a library of cuts harvested from earlier exhausted searches. Only when
//! no certificate matches does a full multi-source blocking-flow phase run;
//! its final failed search yields the exact value and a new library cut.
//!
//! Values are exact on any input: every reported value is witnessed by a
//! feasible routed flow and a cut of equal capacity. The incremental state
//! and certificates only decide how much work gets skipped.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashSet, VecDeque};
use std::hash::{Hash, Hasher};

use crate::error::Result;
use crate::graph::{ArcId, FaceStructure, PlanarDigraph, VertexId};

use super::SinkValueVector;

/// Node budget of one bounded backward search for an augmenting path.
const LOCAL_VISIT_BUDGET: usize = 256;
/// Bounded-path attempts per sink before escalating.
const LOCAL_PATHS_PER_SINK: usize = 512;
/// Neighborhood radius for the contracted-ball cut certificate.
const BALL_RADIUS: usize = 2;
const BALL_MAX_VERTICES: usize = 40;
/// Retained harvested cuts.
const LIB_CAPACITY: usize = 128;
/// Augmenting paths per sink in the bidirectional completion before
/// falling back to blocking flow.
const BIDI_PATHS_LIMIT: usize = 512;

/// Sentinel parent for forward-search seed vertices.
const SOURCE_MARK: (u32, bool) = (u32::MAX, false);

enum Search {
    /// An augmenting path of this amount was found and applied.
    Path(u64),
    /// The backward-reachable region holds no supply: value is maximal.
    Exhausted,
    /// Budget ran out before the region was exhausted.
    Budget,
}

enum Bidi {
    /// An augmenting path of this amount was found and applied.
    Path(u64),
    /// No supply remains reachable: the forward region is a cut.
    SourceSideExhausted,
    /// The sink's backward region holds no supply.
    SinkSideExhausted,
}

// Temporary instrumentation (dev only).
pub mod stats {
    use std::sync::atomic::{AtomicU64, Ordering};
    pub static BACK_VISITS: AtomicU64 = AtomicU64::new(0);
    pub static BACK_SEARCHES: AtomicU64 = AtomicU64::new(0);
    pub static GLOBAL_PHASES: AtomicU64 = AtomicU64::new(0);
    pub static GLOBAL_BFS_VISITS: AtomicU64 = AtomicU64::new(0);
    pub static CLOSE_INCUT: AtomicU64 = AtomicU64::new(0);
    pub static CLOSE_LIB: AtomicU64 = AtomicU64::new(0);
    pub static CLOSE_BALL: AtomicU64 = AtomicU64::new(0);
    pub static CLOSE_EXHAUST: AtomicU64 = AtomicU64::new(0);
    pub static CLOSE_GLOBAL: AtomicU64 = AtomicU64::new(0);
    pub static BALL_RUNS: AtomicU64 = AtomicU64::new(0);
    pub static BIDI_CALLS: AtomicU64 = AtomicU64::new(0);
    pub static BIDI_POPS: AtomicU64 = AtomicU64::new(0);
    pub static BIDI_SEED: AtomicU64 = AtomicU64::new(0);
    pub fn reset() {
        for c in [
            &BACK_VISITS, &BACK_SEARCHES, &GLOBAL_PHASES, &GLOBAL_BFS_VISITS,
            &CLOSE_INCUT, &CLOSE_LIB, &CLOSE_BALL, &CLOSE_EXHAUST, &CLOSE_GLOBAL, &BALL_RUNS,
            &BIDI_CALLS, &BIDI_POPS, &BIDI_SEED,
        ] {
            c.store(0, Ordering::Relaxed);
        }
    }
    pub fn dump() -> String {
        format!(
            "back_searches={} back_visits={} ball_runs={} global_phases={} global_bfs_visits={} close[incut={} lib={} ball={} exhaust={} global={}] bidi[calls={} pops={} seed={}]",
            BACK_SEARCHES.load(Ordering::Relaxed),
            BACK_VISITS.load(Ordering::Relaxed),
            BALL_RUNS.load(Ordering::Relaxed),
            GLOBAL_PHASES.load(Ordering::Relaxed),
            GLOBAL_BFS_VISITS.load(Ordering::Relaxed),
            CLOSE_INCUT.load(Ordering::Relaxed),
            CLOSE_LIB.load(Ordering::Relaxed),
            CLOSE_BALL.load(Ordering::Relaxed),
            CLOSE_EXHAUST.load(Ordering::Relaxed),
            CLOSE_GLOBAL.load(Ordering::Relaxed),
            BIDI_CALLS.load(Ordering::Relaxed),
            BIDI_POPS.load(Ordering::Relaxed),
            BIDI_SEED.load(Ordering::Relaxed),
        )
    }
}

/// Exact max st-flow values from `s` to every other vertex of a validated
/// embedding. Element-wise equal to [`super::sssk_baseline`].
pub fn sssk_fast(
    g: &PlanarDigraph,
    faces: &FaceStructure,
    s: VertexId,
) -> Result<SinkValueVector> {
    g.check_vertex(s)?;
    if faces.cycles().iter().map(|c| c.len()).sum::<usize>() != 2 * g.arc_count() {
        return Err(crate::error::Error::InvalidEmbedding);
    }
    let mut engine = Engine::new(g, s);
    Ok(engine.run())
}

/// A harvested cut: bitmap of the source side and its capacity. The
/// capacity bounds the value of every sink outside the source side,
/// independent of the current incremental flow state.
struct LibCut {
    words: Vec<u64>,
    base: u64,
}

impl LibCut {
    #[inline]
    fn contains(&self, v: usize) -> bool {
        self.words[v / 64] >> (v % 64) & 1 == 1
    }
}

struct Engine<'g> {
    g: &'g PlanarDigraph,
    s: usize,
    flow: Vec<u64>,
    excess: Vec<u64>,
    holders: Vec<u32>,
    in_cap: Vec<u64>,
    values: Vec<Option<u64>>,
    lib: Vec<LibCut>,
    lib_hashes: HashSet<u64>,
    // scratch
    visited: Vec<u32>,
    epoch: u32,
    parent: Vec<(u32, bool)>,
    queue: VecDeque<u32>,
    visited_f: Vec<u32>,
    parent_f: Vec<(u32, bool)>,
    queue_f: VecDeque<u32>,
    on_path: Vec<usize>,
    level: Vec<i32>,
    iter_ptr: Vec<u32>,
    reached: Vec<u32>,
    ball: BallScratch,
}

impl<'g> Engine<'g> {
    fn new(g: &'g PlanarDigraph, s: VertexId) -> Self {
        let n = g.vertex_count();
        let in_cap = (0..n).map(|v| g.in_capacity(VertexId(v as u32))).collect();
        Engine {
            g,
            s: s.index(),
            flow: vec![0; g.arc_count()],
            excess: vec![0; n],
            holders: Vec::new(),
            in_cap,
            values: vec![None; n],
            lib: Vec::new(),
            lib_hashes: HashSet::new(),
            visited: vec![0; n],
            epoch: 0,
            parent: vec![(0, false); n],
            queue: VecDeque::new(),
            visited_f: vec![0; n],
            parent_f: vec![(0, false); n],
            queue_f: VecDeque::new(),
            on_path: vec![usize::MAX; n],
            level: vec![-1; n],
            iter_ptr: vec![0; n],
            reached: Vec::new(),
            ball: BallScratch::new(),
        }
    }

    fn run(&mut self) -> SinkValueVector {
        let n = self.g.vertex_count();
        let reachable = self.positive_reachable();
        let order = self.sink_order();
        let chunk = (n as f64).sqrt().ceil() as usize;
        let chunk = chunk.max(64);
        for batch in order.chunks(chunk) {
            self.recharge(batch, &reachable);
            for &t in batch {
                if t == self.s {
                    continue;
                }
                if !reachable[t] {
                    self.values[t] = Some(0);
                    continue;
                }
                let value = self.process_sink(t);
                self.values[t] = Some(value);
                self.park(t, value);
            }
        }
        for t in 0..n {
            if t != self.s && self.values[t].is_none() {
                self.values[t] = Some(0);
            }
        }
        SinkValueVector::new(VertexId(self.s as u32), std::mem::take(&mut self.values))
    }

    /// Ships a maximum preflow from the source into the upcoming batch of
    /// sinks (blocking flows against the set, flow parking at whichever
    /// member absorbs it). The set max-flow dominates every member's
    /// individual value, so after a recharge each sink in the batch finds
    /// its whole value parked at or near the batch and searches stay local.
    fn recharge(&mut self, batch: &[usize], reachable: &[bool]) {
        let mut any = false;
        for &t in batch {
            if t != self.s && reachable[t] {
                self.batch_sink[t] = true;
                any = true;
            }
        }
        if !any {
            return;
        }
        loop {
            if !self.recharge_bfs() {
                break;
            }
            self.iter_ptr.iter_mut().for_each(|p| *p = 0);
            loop {
                let (pushed, absorber) = recharge_dfs(
                    self.g,
                    &self.level,
                    &mut self.iter_ptr,
                    &mut self.flow,
                    &self.batch_sink,
                    self.s,
                    u64::MAX,
                );
                if pushed == 0 {
                    break;
                }
                self.park(absorber, pushed);
            }
        }
        for &t in batch {
            self.batch_sink[t] = false;
        }
    }

    /// Level search from the source toward any pending batch sink.
    fn recharge_bfs(&mut self) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.queue.clear();
        self.level[self.s] = 0;
        self.queue.push_back(self.s as u32);
        let mut hit = false;
        while let Some(v) = self.queue.pop_front() {
            let v = v as usize;
            if self.batch_sink[v] {
                hit = true;
                continue; // batch members absorb; no need to expand them
            }
            let vid = VertexId(v as u32);
            for &a in self.g.out_arcs(vid) {
                let arc = self.g.arc(ArcId(a));
                let w = arc.head.index();
                if arc.tail != arc.head && self.flow[a as usize] < arc.capacity && self.level[w] < 0
                {
                    self.level[w] = self.level[v] + 1;
                    self.queue.push_back(w as u32);
                }
            }
            for &a in self.g.in_arcs(vid) {
                let arc = self.g.arc(ArcId(a));
                let w = arc.tail.index();
                if arc.tail != arc.head && self.flow[a as usize] > 0 && self.level[w] < 0 {
                    self.level[w] = self.level[v] + 1;
                    self.queue.push_back(w as u32);
                }
            }
        }
        hit
    }

    /// Seeds the incremental state with one cascading pass of flow from the
    /// source: every vertex, in search order, forwards what it received
    /// along arcs pointing away from the source and parks the remainder as
    /// withdrawable excess. Afterwards nearly every sink finds supply within
    /// a couple of residual hops instead of pulling from the source across
    /// the whole graph. The result is a feasible source preflow, which is
    /// all the rest of the engine assumes.
    fn flood(&mut self, order: &[usize]) {
        let n = self.g.vertex_count();
        let mut rank = vec![u32::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            rank[v] = i as u32;
        }
        for &v in order {
            let mut available = if v == self.s {
                u64::MAX
            } else {
                self.excess[v]
            };
            if available == 0 {
                continue;
            }
            for &a in self.g.out_arcs(VertexId(v as u32)) {
                let arc = self.g.arc(ArcId(a));
                let w = arc.head.index();
                if arc.tail == arc.head || rank[w] <= rank[v] {
                    continue;
                }
                let push = arc.capacity.min(available);
                if push == 0 {
                    continue;
                }
                self.flow[a as usize] += push;
                self.park(w, push);
                if v != self.s {
                    available -= push;
                    self.excess[v] -= push;
                }
            }
        }
    }

    /// Vertices with a positive-capacity directed path from the source.
    fn positive_reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.g.vertex_count()];
        seen[self.s] = true;
        let mut stack = vec![self.s];
        while let Some(v) = stack.pop() {
            for &a in self.g.out_arcs(VertexId(v as u32)) {
                let arc = self.g.arc(ArcId(a));
                if arc.capacity > 0 && arc.tail != arc.head && !seen[arc.head.index()] {
                    seen[arc.head.index()] = true;
                    stack.push(arc.head.index());
                }
            }
        }
        seen
    }

    /// Breadth-first order over the underlying graph, so consecutive sinks
    /// are adjacent and parked flow is nearby.
    fn sink_order(&self) -> Vec<usize> {
        let n = self.g.vertex_count();
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::new();
        seen[self.s] = true;
        queue.push_back(self.s);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let vid = VertexId(v as u32);
            for &a in self.g.out_arcs(vid).iter().chain(self.g.in_arcs(vid)) {
                let arc = self.g.arc(ArcId(a));
                let w = if arc.tail.index() == v { arc.head } else { arc.tail };
                if !seen[w.index()] {
                    seen[w.index()] = true;
                    queue.push_back(w.index());
                }
            }
        }
        order
    }

    fn process_sink(&mut self, t: usize) -> u64 {
        // Flow already parked at t is flow from the source absorbed here;
        // claim it so it stops acting as withdrawable supply.
        let mut absorbed = std::mem::take(&mut self.excess[t]);
        let lib_ub = self.lib_query(t);
        let mut best_ub = self.in_cap[t].min(lib_ub);
        let from_lib = lib_ub < self.in_cap[t];
        let mut local_paths = 0usize;
        while absorbed != best_ub && local_paths < LOCAL_PATHS_PER_SINK {
            match self.local_augment(t, LOCAL_VISIT_BUDGET) {
                Search::Path(pushed) => {
                    absorbed += pushed;
                    local_paths += 1;
                }
                Search::Exhausted => { stats::CLOSE_EXHAUST.fetch_add(1, std::sync::atomic::Ordering::Relaxed); return absorbed },
                Search::Budget => break,
            }
        }
        if absorbed == best_ub {
            if from_lib { stats::CLOSE_LIB.fetch_add(1, std::sync::atomic::Ordering::Relaxed); } else { stats::CLOSE_INCUT.fetch_add(1, std::sync::atomic::Ordering::Relaxed); }
            return absorbed;
        }
        if let Some(ub) = self.ball_cut_ub(t) {
            best_ub = best_ub.min(ub);
            if absorbed == best_ub {
                stats::CLOSE_BALL.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                return absorbed;
            }
        }
        // Bidirectional completion: grow a forward region from all supplies
        // and a backward region from the sink in lockstep. Whichever side
        // exhausts first certifies maximality at the cost of the smaller
        // side; meetings yield augmenting paths. Pathologically many paths
        // fall back to blocking flow, which is polynomial regardless of
        // capacities.
        let mut paths = 0usize;
        loop {
            match self.bidi_search(t, absorbed) {
                Bidi::Path(pushed) => {
                    absorbed += pushed;
                    if absorbed == best_ub {
                        return absorbed;
                    }
                    paths += 1;
                    if paths > BIDI_PATHS_LIMIT {
                        return self.global_finish(t, best_ub, absorbed);
                    }
                }
                Bidi::SourceSideExhausted | Bidi::SinkSideExhausted => {
                    stats::CLOSE_EXHAUST.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    return absorbed;
                }
            }
        }
    }

    /// One bidirectional residual search. The forward side starts from the
    /// source and every vertex holding excess, the backward side from `t`.
    /// Expansion alternates by popped-vertex count, so the cost of an
    /// exhaustion certificate is twice the smaller region.
    fn bidi_search(&mut self, t: usize, absorbed: u64) -> Bidi {
        self.epoch += 1;
        let epoch = self.epoch;
        // Backward side state lives in visited/parent, forward side in
        // visited_f/parent_f.
        self.queue.clear();
        self.queue_f.clear();
        self.visited[t] = epoch;
        self.queue.push_back(t as u32);
        self.holders.retain(|&h| self.excess[h as usize] > 0);
        self.holders.sort_unstable();
        self.holders.dedup();
        stats::BIDI_CALLS.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        stats::BIDI_SEED.fetch_add(self.holders.len() as u64, std::sync::atomic::Ordering::Relaxed);
        self.visited_f[self.s] = epoch;
        self.parent_f[self.s] = SOURCE_MARK;
        self.queue_f.push_back(self.s as u32);
        self.reached.clear();
        self.reached.push(self.s as u32);
        for i in 0..self.holders.len() {
            let h = self.holders[i] as usize;
            if self.visited_f[h] != epoch {
                self.visited_f[h] = epoch;
                self.parent_f[h] = SOURCE_MARK;
                self.queue_f.push_back(h as u32);
                self.reached.push(h as u32);
            }
        }
        if self.visited_f[t] == epoch {
            // t itself cannot be a forward seed: its excess was claimed.
            unreachable!("sink holds no excess while being processed");
        }

        let (mut pops_f, mut pops_b) = (0usize, 0usize);
        loop {
            if self.queue_f.is_empty() {
                self.harvest(absorbed);
                return Bidi::SourceSideExhausted;
            }
            if self.queue.is_empty() {
                return Bidi::SinkSideExhausted;
            }
            stats::BIDI_POPS.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
            if pops_f <= pops_b {
                let v = self.queue_f.pop_front().unwrap();
                pops_f += 1;
                if let Some(meet) = self.expand_forward(v as usize, epoch) {
                    return Bidi::Path(self.apply_bidi_path(t, meet));
                }
            } else {
                let v = self.queue.pop_front().unwrap();
                pops_b += 1;
                if let Some(meet) = self.expand_backward(v as usize, epoch) {
                    return Bidi::Path(self.apply_bidi_path(t, meet));
                }
            }
        }
    }

    /// Expands one forward vertex; returns a meeting vertex if the frontier
    /// touched the backward region.
    fn expand_forward(&mut self, v: usize, epoch: u32) -> Option<usize> {
        let vid = VertexId(v as u32);
        for &a in self.g.out_arcs(vid) {
            let arc = self.g.arc(ArcId(a));
            let w = arc.head.index();
            if arc.tail == arc.head
                || self.flow[a as usize] >= arc.capacity
                || self.visited_f[w] == epoch
            {
                continue;
            }
            self.visited_f[w] = epoch;
            self.parent_f[w] = (a, true);
            self.reached.push(w as u32);
            if self.visited[w] == epoch {
                return Some(w);
            }
            self.queue_f.push_back(w as u32);
        }
        for &a in self.g.in_arcs(vid) {
            let arc = self.g.arc(ArcId(a));
            let w = arc.tail.index();
            if arc.tail == arc.head || self.flow[a as usize] == 0 || self.visited_f[w] == epoch {
                continue;
            }
            self.visited_f[w] = epoch;
            self.parent_f[w] = (a, false);
            self.reached.push(w as u32);
            if self.visited[w] == epoch {
                return Some(w);
            }
            self.queue_f.push_back(w as u32);
        }
        None
    }

    /// Expands one backward vertex; returns a meeting vertex if the frontier
    /// touched the forward region.
    fn expand_backward(&mut self, v: usize, epoch: u32) -> Option<usize> {
        let vid = VertexId(v as u32);
        for &a in self.g.in_arcs(vid) {
            let arc = self.g.arc(ArcId(a));
            let x = arc.tail.index();
            if arc.tail == arc.head
                || self.flow[a as usize] >= arc.capacity
                || self.visited[x] == epoch
            {
                continue;
            }
            self.visited[x] = epoch;
            self.parent[x] = (a, true);
            if self.visited_f[x] == epoch {
                return Some(x);
            }
            self.queue.push_back(x as u32);
        }
        for &a in self.g.out_arcs(vid) {
            let arc = self.g.arc(ArcId(a));
            let y = arc.head.index();
            if arc.tail == arc.head || self.flow[a as usize] == 0 || self.visited[y] == epoch {
                continue;
            }
            self.visited[y] = epoch;
            self.parent[y] = (a, false);
            if self.visited_f[y] == epoch {
                return Some(y);
            }
            self.queue.push_back(y as u32);
        }
        None
    }

    /// Assembles the source-to-sink walk through `meet`, removes any loops,
    /// pushes its bottleneck, and returns the amount.
    fn apply_bidi_path(&mut self, t: usize, meet: usize) -> u64 {
        // Forward half, collected source-first.
        let mut edges: Vec<(u32, bool)> = Vec::new();
        let mut v = meet;
        while self.parent_f[v] != SOURCE_MARK {
            let (a, forward) = self.parent_f[v];
            edges.push((a, forward));
            let arc = self.g.arc(ArcId(a));
            v = if forward { arc.tail.index() } else { arc.head.index() };
        }
        let start = v;
        edges.reverse();
        // Backward half from meet to t.
        let mut v = meet;
        while v != t {
            let (a, forward) = self.parent[v];
            edges.push((a, forward));
            let arc = self.g.arc(ArcId(a));
            v = if forward { arc.head.index() } else { arc.tail.index() };
        }

        // The two halves may share vertices; splice out any loops so no
        // residual edge is used twice.
        let mut path_vertices: Vec<u32> = vec![start as u32];
        let mut simple: Vec<(u32, bool)> = Vec::with_capacity(edges.len());
        self.on_path[start] = 0;
        for &(a, forward) in &edges {
            let arc = self.g.arc(ArcId(a));
            let next = if forward { arc.head.index() } else { arc.tail.index() };
            if self.on_path[next] != usize::MAX {
                while path_vertices.len() - 1 > self.on_path[next] {
                    let dropped = path_vertices.pop().unwrap();
                    self.on_path[dropped as usize] = usize::MAX;
                    simple.pop();
                }
            } else {
                simple.push((a, forward));
                path_vertices.push(next as u32);
                self.on_path[next] = path_vertices.len() - 1;
            }
        }
        debug_assert_eq!(*path_vertices.last().unwrap() as usize, t);
        for &v in &path_vertices {
            self.on_path[v as usize] = usize::MAX;
        }

        let mut bottleneck = if start == self.s {
            u64::MAX
        } else {
            self.excess[start]
        };
        for &(a, forward) in &simple {
            let arc = self.g.arc(ArcId(a));
            let resid = if forward {
                arc.capacity - self.flow[a as usize]
            } else {
                self.flow[a as usize]
            };
            bottleneck = bottleneck.min(resid);
        }
        debug_assert!(bottleneck > 0);
        for &(a, forward) in &simple {
            if forward {
                self.flow[a as usize] += bottleneck;
            } else {
                self.flow[a as usize] -= bottleneck;
            }
        }
        if start != self.s {
            self.withdraw(start, bottleneck);
        }
        bottleneck
    }

    /// Tightest library bound applicable to sink `t`.
    fn lib_query(&self, t: usize) -> u64 {
        let mut best = u64::MAX;
        for cut in &self.lib {
            if !cut.contains(t) {
                best = best.min(cut.base);
            }
        }
        best
    }

    /// Backward search from `t` over the residual graph for one augmenting
    /// path from the source or any parked excess; applies it when found.
    /// Exhausting the backward-reachable region without finding supply
    /// proves the current value maximal.
    fn local_augment(&mut self, t: usize, budget: usize) -> Search {
        self.epoch += 1;
        let epoch = self.epoch;
        self.visited[t] = epoch;
        self.queue.clear();
        self.queue.push_back(t as u32);
        let mut visits = 1usize;
        let mut clipped = false;
        let mut found: Option<usize> = None;

        'search: while let Some(v) = self.queue.pop_front() {
            let v = v as usize;
            let vid = VertexId(v as u32);
            for &a in self.g.in_arcs(vid) {
                let arc = self.g.arc(ArcId(a));
                let x = arc.tail.index();
                if arc.tail == arc.head
                    || self.flow[a as usize] >= arc.capacity
                    || self.visited[x] == epoch
                {
                    continue;
                }
                self.visited[x] = epoch;
                self.parent[x] = (a, true);
                if x == self.s || self.excess[x] > 0 {
                    found = Some(x);
                    break 'search;
                }
                if visits < budget {
                    visits += 1;
                    self.queue.push_back(x as u32);
                } else {
                    clipped = true;
                }
            }
            for &a in self.g.out_arcs(vid) {
                let arc = self.g.arc(ArcId(a));
                let y = arc.head.index();
                if arc.tail == arc.head || self.flow[a as usize] == 0 || self.visited[y] == epoch {
                    continue;
                }
                self.visited[y] = epoch;
                self.parent[y] = (a, false);
                if y == self.s || self.excess[y] > 0 {
                    found = Some(y);
                    break 'search;
                }
                if visits < budget {
                    visits += 1;
                    self.queue.push_back(y as u32);
                } else {
                    clipped = true;
                }
            }
        }

        stats::BACK_SEARCHES.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        stats::BACK_VISITS.fetch_add(visits as u64, std::sync::atomic::Ordering::Relaxed);
        let src = match found {
            Some(src) => src,
            None if clipped => return Search::Budget,
            None => return Search::Exhausted,
        };
        // Walk parent edges from the found endpoint to t, collecting the
        // bottleneck, then apply.
        let mut bottleneck = if src == self.s {
            u64::MAX
        } else {
            self.excess[src]
        };
        let mut v = src;
        while v != t {
            let (a, forward) = self.parent[v];
            let arc = self.g.arc(ArcId(a));
            let resid = if forward {
                arc.capacity - self.flow[a as usize]
            } else {
                self.flow[a as usize]
            };
            bottleneck = bottleneck.min(resid);
            v = if forward { arc.head.index() } else { arc.tail.index() };
        }
        debug_assert!(bottleneck > 0);
        let mut v = src;
        while v != t {
            let (a, forward) = self.parent[v];
            let arc = self.g.arc(ArcId(a));
            if forward {
                self.flow[a as usize] += bottleneck;
                v = arc.head.index();
            } else {
                self.flow[a as usize] -= bottleneck;
                v = arc.tail.index();
            }
        }
        if src != self.s {
            self.withdraw(src, bottleneck);
        }
        Search::Path(bottleneck)
    }

    /// Minimum cut of the radius-bounded neighborhood of `t` with everything
    /// else (always including the source) contracted into one super-source.
    /// Every cut of the contracted network is a cut of the original graph,
    /// so this upper-bounds the sink's value and is tight whenever some
    /// minimum cut fits in the ball.
    fn ball_cut_ub(&mut self, t: usize) -> Option<u64> {
        self.epoch += 1;
        let epoch = self.epoch;
        stats::BALL_RUNS.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        let ball = &mut self.ball;
        ball.members.clear();
        ball.dinic.clear();

        self.visited[t] = epoch;
        ball.members.push(t as u32);
        let mut frontier = 0usize;
        let mut depth_end = 1usize; // members below this index are <= current radius
        for _radius in 0..BALL_RADIUS {
            while frontier < depth_end {
                let v = ball.members[frontier] as usize;
                frontier += 1;
                let vid = VertexId(v as u32);
                for &a in self.g.out_arcs(vid).iter().chain(self.g.in_arcs(vid)) {
                    let arc = self.g.arc(ArcId(a));
                    let w = if arc.tail.index() == v { arc.head } else { arc.tail };
                    let w = w.index();
                    if w == self.s || self.visited[w] == epoch {
                        continue;
                    }
                    if ball.members.len() >= BALL_MAX_VERTICES {
                        continue;
                    }
                    self.visited[w] = epoch;
                    ball.members.push(w as u32);
                }
            }
            depth_end = ball.members.len();
        }

        // Local ids: 0 is the contracted outside, members follow at 1..
        let local = |v: usize, members: &[u32], visited: &[u32]| -> usize {
            if v != t && (v == self.s || visited[v] != epoch) {
                return 0;
            }
            members.iter().position(|&m| m as usize == v).unwrap() + 1
        };
        ball.dinic.ensure_nodes(ball.members.len() + 1);
        for idx in 0..ball.members.len() {
            let v = ball.members[idx] as usize;
            let vid = VertexId(v as u32);
            for &a in self.g.out_arcs(vid) {
                let arc = self.g.arc(ArcId(a));
                if arc.tail == arc.head || arc.capacity == 0 {
                    continue;
                }
                let to = local(arc.head.index(), &ball.members, &self.visited);
                ball.dinic.add_edge(idx + 1, to, arc.capacity);
            }
            for &a in self.g.in_arcs(vid) {
                let arc = self.g.arc(ArcId(a));
                if arc.tail == arc.head || arc.capacity == 0 {
                    continue;
                }
                let from = local(arc.tail.index(), &ball.members, &self.visited);
                if from == 0 {
                    ball.dinic.add_edge(0, idx + 1, arc.capacity);
                }
            }
        }
        let t_local = local(t, &ball.members, &self.visited);
        Some(ball.dinic.max_flow(0, t_local))
    }

    /// Multi-source blocking-flow completion. Returns the exact value:
    /// either the certificate bound is reached or the final failed search
    /// proves maximality and its reached set is harvested into the library.
    fn global_finish(&mut self, t: usize, best_ub: u64, mut absorbed: u64) -> u64 {
        loop {
            if absorbed == best_ub {
                return absorbed;
            }
            stats::GLOBAL_PHASES.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
            if !self.global_bfs(t) {
                stats::GLOBAL_BFS_VISITS.fetch_add(self.reached.len() as u64, std::sync::atomic::Ordering::Relaxed);
                self.harvest(absorbed);
                stats::CLOSE_GLOBAL.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                return absorbed;
            }
            stats::GLOBAL_BFS_VISITS.fetch_add(self.reached.len() as u64, std::sync::atomic::Ordering::Relaxed);
            self.iter_ptr.iter_mut().for_each(|p| *p = 0);
            // Source order: s first, then holders ascending.
            let mut sources: Vec<u32> = self
                .holders
                .iter()
                .copied()
                .filter(|&h| self.excess[h as usize] > 0)
                .collect();
            sources.sort_unstable();
            sources.dedup();
            self.holders = sources.clone();
            let mut all: Vec<u32> = Vec::with_capacity(sources.len() + 1);
            all.push(self.s as u32);
            all.extend_from_slice(&sources);
            for src in all {
                let src = src as usize;
                if self.level[src] != 0 {
                    continue;
                }
                loop {
                    if absorbed == best_ub {
                        return absorbed;
                    }
                    let limit = if src == self.s {
                        u64::MAX
                    } else {
                        self.excess[src]
                    };
                    if limit == 0 {
                        break;
                    }
                    let pushed = dinic_dfs(
                        self.g,
                        &self.level,
                        &mut self.iter_ptr,
                        &mut self.flow,
                        src,
                        t,
                        limit,
                    );
                    if pushed == 0 {
                        break;
                    }
                    absorbed += pushed;
                    if src != self.s {
                        self.withdraw(src, pushed);
                    }
                }
            }
        }
    }

    /// Level search from the source and every parked excess over the
    /// residual graph. Records the reached set for harvesting.
    fn global_bfs(&mut self, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.reached.clear();
        self.queue.clear();
        self.level[self.s] = 0;
        self.queue.push_back(self.s as u32);
        self.reached.push(self.s as u32);
        let mut holders: Vec<u32> = self
            .holders
            .iter()
            .copied()
            .filter(|&h| self.excess[h as usize] > 0)
            .collect();
        holders.sort_unstable();
        for h in holders {
            if self.level[h as usize] < 0 {
                self.level[h as usize] = 0;
                self.queue.push_back(h);
                self.reached.push(h);
            }
        }
        while let Some(v) = self.queue.pop_front() {
            let v = v as usize;
            let vid = VertexId(v as u32);
            for &a in self.g.out_arcs(vid) {
                let arc = self.g.arc(ArcId(a));
                let w = arc.head.index();
                if arc.tail != arc.head && self.flow[a as usize] < arc.capacity && self.level[w] < 0
                {
                    self.level[w] = self.level[v] + 1;
                    self.queue.push_back(w as u32);
                    self.reached.push(w as u32);
                }
            }
            for &a in self.g.in_arcs(vid) {
                let arc = self.g.arc(ArcId(a));
                let w = arc.tail.index();
                if arc.tail != arc.head && self.flow[a as usize] > 0 && self.level[w] < 0 {
                    self.level[w] = self.level[v] + 1;
                    self.queue.push_back(w as u32);
                    self.reached.push(w as u32);
                }
            }
        }
        self.level[t] >= 0
    }

    /// Stores the reached set of a failed search as a library cut. Its base
    /// capacity necessarily equals the absorbed value: all out-arcs are
    /// saturated, in-arcs carry nothing, and every parked excess lies inside.
    fn harvest(&mut self, absorbed: u64) {
        let n = self.g.vertex_count();
        let mut words = vec![0u64; n.div_ceil(64)];
        for &v in &self.reached {
            words[v as usize / 64] |= 1 << (v as usize % 64);
        }
        let mut hasher = DefaultHasher::new();
        words.hash(&mut hasher);
        if !self.lib_hashes.insert(hasher.finish()) {
            return;
        }
        let mut base = 0u64;
        for &v in &self.reached {
            for &a in self.g.out_arcs(VertexId(v)) {
                let arc = self.g.arc(ArcId(a));
                if arc.tail != arc.head && words[arc.head.index() / 64] >> (arc.head.index() % 64) & 1 == 0
                {
                    base += arc.capacity;
                }
            }
        }
        debug_assert_eq!(base, absorbed, "failed-search cut must match absorbed flow");
        let _ = absorbed;
        if self.lib.len() == LIB_CAPACITY {
            self.lib.remove(0);
        }
        self.lib.push(LibCut { words, base });
    }

    fn park(&mut self, v: usize, amount: u64) {
        if amount == 0 {
            return;
        }
        if self.excess[v] == 0 {
            self.holders.push(v as u32);
        }
        self.excess[v] += amount;
    }

    fn withdraw(&mut self, v: usize, amount: u64) {
        debug_assert!(self.excess[v] >= amount);
        self.excess[v] -= amount;
    }
}

fn dinic_dfs(
    g: &PlanarDigraph,
    level: &[i32],
    iter_ptr: &mut [u32],
    flow: &mut [u64],
    v: usize,
    t: usize,
    limit: u64,
) -> u64 {
    if v == t {
        return limit;
    }
    let vid = VertexId(v as u32);
    let out = g.out_arcs(vid);
    let inn = g.in_arcs(vid);
    while (iter_ptr[v] as usize) < out.len() + inn.len() {
        let i = iter_ptr[v] as usize;
        let (a, forward) = if i < out.len() {
            (out[i], true)
        } else {
            (inn[i - out.len()], false)
        };
        let arc = g.arc(ArcId(a));
        let (next, resid) = if forward {
            (arc.head.index(), arc.capacity - flow[a as usize])
        } else {
            (arc.tail.index(), flow[a as usize])
        };
        if arc.tail != arc.head && resid > 0 && level[next] == level[v] + 1 {
            let pushed = dinic_dfs(g, level, iter_ptr, flow, next, t, limit.min(resid));
            if pushed > 0 {
                if forward {
                    flow[a as usize] += pushed;
                } else {
                    flow[a as usize] -= pushed;
                }
                return pushed;
            }
        }
        iter_ptr[v] += 1;
    }
    0
}

struct BallScratch {
    members: Vec<u32>,
    dinic: MiniDinic,
}

impl BallScratch {
    fn new() -> Self {
        Self {
            members: Vec::new(),
            dinic: MiniDinic::new(),
        }
    }
}

/// Small reusable Dinic for the contracted neighborhood networks.
struct MiniDinic {
    to: Vec<u32>,
    cap: Vec<u64>,
    next: Vec<u32>,
    head: Vec<u32>,
    level: Vec<i32>,
    iter: Vec<u32>,
}

impl MiniDinic {
    fn new() -> Self {
        Self {
            to: Vec::new(),
            cap: Vec::new(),
            next: Vec::new(),
            head: Vec::new(),
            level: Vec::new(),
            iter: Vec::new(),
        }
    }

    fn clear(&mut self) {
        self.to.clear();
        self.cap.clear();
        self.next.clear();
        self.head.clear();
    }

    fn ensure_nodes(&mut self, n: usize) {
        self.head.resize(n, u32::MAX);
        self.head.iter_mut().for_each(|h| *h = u32::MAX);
        self.level.resize(n, -1);
        self.iter.resize(n, 0);
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: u64) {
        for (f, t, c) in [(from, to, cap), (to, from, 0)] {
            let id = self.to.len() as u32;
            self.to.push(t as u32);
            self.cap.push(c);
            self.next.push(self.head[f]);
            self.head[f] = id;
        }
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        let mut queue = VecDeque::new();
        self.level[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            let mut e = self.head[v];
            while e != u32::MAX {
                let w = self.to[e as usize] as usize;
                if self.cap[e as usize] > 0 && self.level[w] < 0 {
                    self.level[w] = self.level[v] + 1;
                    queue.push_back(w);
                }
                e = self.next[e as usize];
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, v: usize, t: usize, limit: u64) -> u64 {
        if v == t {
            return limit;
        }
        while self.iter[v] != u32::MAX {
            let e = self.iter[v] as usize;
            let w = self.to[e] as usize;
            if self.cap[e] > 0 && self.level[w] == self.level[v] + 1 {
                let pushed = self.dfs(w, t, limit.min(self.cap[e]));
                if pushed > 0 {
                    self.cap[e] -= pushed;
                    self.cap[e ^ 1] += pushed;
                    return pushed;
                }
            }
            self.iter[v] = self.next[e];
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let mut value = 0;
        while self.bfs(s, t) {
            for v in 0..self.head.len() {
                self.iter[v] = self.head[v];
            }
            loop {
                let pushed = self.dfs(s, t, u64::MAX);
                if pushed == 0 {
                    break;
                }
                value += pushed;
            }
        }
        value
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, validate_embedding, Dart};
    use crate::instances::gen_grid;
    use crate::multisink::sssk_baseline;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn single_arc_vector() {
        let g = build_graph(
            2,
            vec![(v(0), v(1), 7)],
            Some(vec![vec![Dart(0)], vec![Dart(1)]]),
        )
        .unwrap();
        let faces = validate_embedding(&g).unwrap();
        let fast = sssk_fast(&g, &faces, v(0)).unwrap();
        assert_eq!(fast.value(v(1)), Some(7));
        assert_eq!(fast.value(v(0)), None);
    }

    #[test]
    fn grid_matches_baseline() {
        let g = gen_grid(8, 8, 1, 50, 1).unwrap();
        let faces = validate_embedding(&g).unwrap();
        let fast = sssk_fast(&g, &faces, v(0)).unwrap();
        let base = sssk_baseline(&g, v(0)).unwrap();
        for t in 0..g.vertex_count() {
            assert_eq!(
                fast.value(v(t as u32)),
                base.value(v(t as u32)),
                "sink {t} differs"
            );
        }
    }

    #[test]
    fn deterministic() {
        let g = gen_grid(6, 7, 1, 30, 9).unwrap();
        let faces = validate_embedding(&g).unwrap();
        let a = sssk_fast(&g, &faces, v(3)).unwrap();
        let b = sssk_fast(&g, &faces, v(3)).unwrap();
        assert_eq!(a, b);
    }
}
