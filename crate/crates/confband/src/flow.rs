//! Maximum-flow / minimum-cut engine on directed capacitated graphs.
//!
//! Capacities are doubles; arcs may be declared "big", in which case they
//! receive a surrogate infinite capacity of `1 + sum of finite capacities`
//! at solve time, guaranteeing they never cross a finite minimum cut.
//! After solving, both the inclusion-minimal and the inclusion-maximal
//! source-side minimum cuts can be extracted from the residual graph.

use crate::{Error, Result};
use std::collections::VecDeque;

const REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
struct Edge {
    to: usize,
    rev: usize,
    residual: f64,
    big: bool,
    /// True for the forward direction of an added arc (reverse companions
    /// start with zero capacity).
    forward: bool,
}

/// A directed capacitated graph with a source and a sink.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    graph: Vec<Vec<Edge>>,
    source: usize,
    sink: usize,
    finite_sum: f64,
    /// Saturation threshold, fixed when the network is solved.
    eps: f64,
    flow_value: Option<f64>,
}

/// Value and source side of a minimum cut.
#[derive(Debug, Clone, PartialEq)]
pub struct CutResult {
    pub flow_value: f64,
    /// Node ids on the source side (contains the source, excludes the sink).
    pub source_side: Vec<usize>,
}

impl FlowNetwork {
    pub fn new(node_count: usize, source: usize, sink: usize) -> Self {
        assert!(source < node_count && sink < node_count && source != sink);
        FlowNetwork {
            graph: vec![Vec::new(); node_count],
            source,
            sink,
            finite_sum: 0.0,
            eps: 0.0,
            flow_value: None,
        }
    }

    pub fn node_count(&self) -> usize {
        self.graph.len()
    }

    /// Adds an arc with a finite non-negative capacity.
    pub fn add_arc(&mut self, tail: usize, head: usize, capacity: f64) {
        assert!(capacity >= 0.0 && capacity.is_finite());
        assert!(self.flow_value.is_none(), "network already solved");
        self.finite_sum += capacity;
        self.push_edge(tail, head, capacity, false);
    }

    /// Adds an arc whose capacity will be set to exceed every finite cut.
    pub fn add_big_arc(&mut self, tail: usize, head: usize) {
        assert!(self.flow_value.is_none(), "network already solved");
        self.push_edge(tail, head, 0.0, true);
    }

    fn push_edge(&mut self, tail: usize, head: usize, capacity: f64, big: bool) {
        let rev_t = self.graph[head].len();
        let rev_h = self.graph[tail].len();
        self.graph[tail].push(Edge {
            to: head,
            rev: rev_t,
            residual: capacity,
            big,
            forward: true,
        });
        self.graph[head].push(Edge {
            to: tail,
            rev: rev_h,
            residual: 0.0,
            big: false,
            forward: false,
        });
    }

    /// Computes the maximum source-to-sink flow (Dinic's algorithm with
    /// current-arc optimization). Deterministic for a fixed arc insertion
    /// order. Idempotent: subsequent calls return the cached value.
    pub fn max_flow(&mut self) -> f64 {
        if let Some(v) = self.flow_value {
            return v;
        }
        let big = 1.0 + self.finite_sum;
        for edges in &mut self.graph {
            for e in edges {
                if e.big {
                    e.residual = big;
                }
            }
        }
        self.eps = REL_TOL * big.max(1.0);

        let n = self.node_count();
        let mut total = 0.0;
        let mut level = vec![-1i32; n];
        let mut iter = vec![0usize; n];
        loop {
            if !self.bfs_levels(&mut level) {
                break;
            }
            iter.fill(0);
            total += self.blocking_flow(&mut level, &mut iter);
        }
        self.flow_value = Some(total);
        total
    }

    /// Pushes a blocking flow along the current level graph. Iterative so
    /// that long augmenting paths do not exhaust the call stack.
    fn blocking_flow(&mut self, level: &mut [i32], iter: &mut [usize]) -> f64 {
        let mut pushed = 0.0;
        let mut path: Vec<(usize, usize)> = Vec::new();
        let mut u = self.source;
        loop {
            if u == self.sink {
                let mut bottleneck = f64::INFINITY;
                for &(node, idx) in &path {
                    bottleneck = bottleneck.min(self.graph[node][idx].residual);
                }
                for &(node, idx) in &path {
                    let rev = self.graph[node][idx].rev;
                    let to = self.graph[node][idx].to;
                    self.graph[node][idx].residual -= bottleneck;
                    self.graph[to][rev].residual += bottleneck;
                }
                pushed += bottleneck;
                // Retreat to the first saturated edge on the path.
                let cut = path
                    .iter()
                    .position(|&(node, idx)| self.graph[node][idx].residual <= self.eps)
                    .unwrap_or(path.len());
                path.truncate(cut + 1);
                let (node, _) = path.pop().unwrap();
                u = node;
                continue;
            }
            if iter[u] < self.graph[u].len() {
                let e = &self.graph[u][iter[u]];
                if e.residual > self.eps && level[e.to] == level[u] + 1 {
                    path.push((u, iter[u]));
                    u = e.to;
                } else {
                    iter[u] += 1;
                }
            } else {
                // Dead end: remove the node from the level graph.
                level[u] = -1;
                match path.pop() {
                    Some((prev, idx)) => {
                        iter[prev] = idx + 1;
                        u = prev;
                    }
                    None => break,
                }
            }
        }
        pushed
    }

    fn bfs_levels(&self, level: &mut [i32]) -> bool {
        level.fill(-1);
        let mut queue = VecDeque::new();
        level[self.source] = 0;
        queue.push_back(self.source);
        while let Some(u) = queue.pop_front() {
            for e in &self.graph[u] {
                if e.residual > self.eps && level[e.to] < 0 {
                    level[e.to] = level[u] + 1;
                    queue.push_back(e.to);
                }
            }
        }
        level[self.sink] >= 0
    }

    /// The unique inclusion-minimal minimum cut: nodes reachable from the
    /// source in the residual graph.
    pub fn min_cut_min_side(&self) -> Result<CutResult> {
        let flow_value = self.flow_value.ok_or(Error::ResidualUnavailable)?;
        let mut seen = vec![false; self.node_count()];
        let mut queue = VecDeque::new();
        seen[self.source] = true;
        queue.push_back(self.source);
        while let Some(u) = queue.pop_front() {
            for e in &self.graph[u] {
                if e.residual > self.eps && !seen[e.to] {
                    seen[e.to] = true;
                    queue.push_back(e.to);
                }
            }
        }
        Ok(CutResult {
            flow_value,
            source_side: collect(&seen),
        })
    }

    /// The unique inclusion-maximal minimum cut: all nodes that cannot
    /// reach the sink in the residual graph.
    pub fn min_cut_max_side(&self) -> Result<CutResult> {
        let flow_value = self.flow_value.ok_or(Error::ResidualUnavailable)?;
        // Reverse reachability to the sink: u reaches v when the residual
        // arc (u, v) is unsaturated, so walk reverse companions backwards.
        let mut reaches_sink = vec![false; self.node_count()];
        let mut queue = VecDeque::new();
        reaches_sink[self.sink] = true;
        queue.push_back(self.sink);
        while let Some(v) = queue.pop_front() {
            for e in &self.graph[v] {
                // Residual capacity of (e.to, v) lives on the companion.
                let back = &self.graph[e.to][e.rev];
                debug_assert_eq!(back.to, v);
                if back.residual > self.eps && !reaches_sink[e.to] {
                    reaches_sink[e.to] = true;
                    queue.push_back(e.to);
                }
            }
        }
        let side: Vec<usize> = (0..self.node_count()).filter(|&u| !reaches_sink[u]).collect();
        Ok(CutResult {
            flow_value,
            source_side: side,
        })
    }

    /// Capacity of the cut with the given source side, in original
    /// capacities. Big arcs crossing the cut contribute the surrogate.
    /// Intended for invariant checks.
    pub fn cut_capacity(&self, source_side: &[usize]) -> f64 {
        let mut in_x = vec![false; self.node_count()];
        for &u in source_side {
            in_x[u] = true;
        }
        let big = 1.0 + self.finite_sum;
        let mut total = 0.0;
        for u in 0..self.node_count() {
            if !in_x[u] {
                continue;
            }
            for e in &self.graph[u] {
                if e.forward && !in_x[e.to] {
                    total += if e.big {
                        big
                    } else {
                        // Original capacity = residual + flow on companion.
                        e.residual + self.graph[e.to][e.rev].residual
                    };
                }
            }
        }
        total
    }
}

fn collect(seen: &[bool]) -> Vec<usize> {
    seen.iter()
        .enumerate()
        .filter_map(|(i, &s)| s.then_some(i))
        .collect()
}
