//! Reference engine: blocking-flow (Dinic) max flow on the plain digraph.
//! Needs no embedding; serves as the independent oracle for the planar
//! engines. Deterministic: adjacency and tie-breaks follow ascending arc ids.

use crate::error::{Error, Result};
use crate::graph::{ArcId, PlanarDigraph, VertexId};

use super::{FlowAssignment, FlowResult};

struct Edge {
    to: u32,
    cap: u64,
    rev: u32,
    /// Primal arc for forward edges, u32::MAX for reverse edges.
    arc: u32,
}

struct Dinic {
    graph: Vec<Vec<Edge>>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl Dinic {
    fn new(n: usize) -> Self {
        Self {
            graph: (0..n).map(|_| Vec::new()).collect(),
            level: vec![-1; n],
            iter: vec![0; n],
        }
    }

    fn add_edge(&mut self, from: u32, to: u32, cap: u64, arc: u32) {
        let rev_from = self.graph[to as usize].len() as u32;
        let rev_to = self.graph[from as usize].len() as u32;
        self.graph[from as usize].push(Edge { to, cap, rev: rev_from, arc });
        self.graph[to as usize].push(Edge {
            to: from,
            cap: 0,
            rev: rev_to,
            arc: u32::MAX,
        });
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        let mut queue = std::collections::VecDeque::new();
        self.level[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for e in &self.graph[v] {
                if e.cap > 0 && self.level[e.to as usize] < 0 {
                    self.level[e.to as usize] = self.level[v] + 1;
                    queue.push_back(e.to as usize);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, v: usize, t: usize, limit: u64) -> u64 {
        if v == t {
            return limit;
        }
        while self.iter[v] < self.graph[v].len() {
            let i = self.iter[v];
            let (to, cap) = {
                let e = &self.graph[v][i];
                (e.to as usize, e.cap)
            };
            if cap > 0 && self.level[v] < self.level[to] {
                let pushed = self.dfs(to, t, limit.min(cap));
                if pushed > 0 {
                    let rev = {
                        let e = &mut self.graph[v][i];
                        e.cap -= pushed;
                        e.rev as usize
                    };
                    self.graph[to][rev].cap += pushed;
                    return pushed;
                }
            }
            self.iter[v] += 1;
        }
        0
    }

    fn run(&mut self, s: usize, t: usize) -> u64 {
        let mut value = 0u64;
        while self.bfs(s, t) {
            self.iter.iter_mut().for_each(|i| *i = 0);
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

/// Exact max st-flow by blocking flows. Works on any digraph, connected or
/// not; unreachable sinks get value 0 and a zero assignment.
pub fn max_flow_reference(g: &PlanarDigraph, s: VertexId, t: VertexId) -> Result<FlowResult> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    if s == t {
        return Err(Error::SameSourceSink { index: None });
    }

    let mut net = Dinic::new(g.vertex_count());
    for (i, a) in g.arcs().iter().enumerate() {
        if a.tail != a.head {
            net.add_edge(a.tail.0, a.head.0, a.capacity, i as u32);
        }
    }
    let value = net.run(s.index(), t.index());

    let mut assignment = FlowAssignment::zero(g);
    for edges in &net.graph {
        for e in edges {
            if e.arc != u32::MAX {
                let cap = g.capacity(ArcId(e.arc));
                assignment.flows[e.arc as usize] = cap - e.cap;
            }
        }
    }
    Ok(FlowResult {
        source: s,
        sink: t,
        value,
        assignment,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::testutil::diamond;
    use crate::graph::build_graph;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn single_arc() {
        let g = build_graph(2, vec![(v(0), v(1), 7)], None).unwrap();
        let r = max_flow_reference(&g, v(0), v(1)).unwrap();
        assert_eq!(r.value, 7);
        assert_eq!(r.assignment.flows, vec![7]);
    }

    #[test]
    fn no_path_means_zero() {
        let g = build_graph(2, vec![(v(0), v(1), 7)], None).unwrap();
        let r = max_flow_reference(&g, v(1), v(0)).unwrap();
        assert_eq!(r.value, 0);
        assert_eq!(r.assignment.flows, vec![0]);
    }

    #[test]
    fn diamond_value_is_five() {
        let g = diamond();
        let r = max_flow_reference(&g, v(0), v(3)).unwrap();
        assert_eq!(r.value, 5);
    }

    #[test]
    fn same_source_sink_rejected() {
        let g = diamond();
        assert!(matches!(
            max_flow_reference(&g, v(1), v(1)),
            Err(Error::SameSourceSink { .. })
        ));
    }

    #[test]
    fn deterministic_assignment() {
        let g = diamond();
        let a = max_flow_reference(&g, v(0), v(3)).unwrap();
        let b = max_flow_reference(&g, v(0), v(3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn self_loops_carry_no_flow() {
        let g = build_graph(2, vec![(v(0), v(0), 9), (v(0), v(1), 4)], None).unwrap();
        let r = max_flow_reference(&g, v(0), v(1)).unwrap();
        assert_eq!(r.value, 4);
        assert_eq!(r.assignment.flows, vec![0, 4]);
    }
}
