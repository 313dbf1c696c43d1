//! Connected k-regular graph constructions: node insertion into bipartite
//! matchings for even k, and Hamiltonian-cycle decomposition of the complete
//! graph for the general case.

use super::DesignError;
use crate::graph::{Graph, NodeId};
use std::collections::HashSet;

fn edge_set_to_graph(n: usize, edges: &HashSet<(NodeId, NodeId)>) -> Graph {
    let mut list: Vec<(NodeId, NodeId, i64)> = edges.iter().map(|&(u, v)| (u, v, 1)).collect();
    list.sort_unstable();
    Graph::new(n, list).unwrap()
}

fn norm(u: NodeId, v: NodeId) -> (NodeId, NodeId) {
    (u.min(v), u.max(v))
}

/// Builds a connected k-regular graph (k even, `n >= k + 1`) by starting
/// from the complete graph on k+1 nodes and inserting one node at a time
/// into a perfect matching of the tracked complete bipartite subgraph.
pub fn kregular_even(n: usize, k: usize) -> Result<Graph, DesignError> {
    if k < 2 || k % 2 != 0 {
        return Err(DesignError::Parity(format!(
            "degree must be even and at least 2, got {k}"
        )));
    }
    if n < k + 1 {
        return Err(DesignError::TooFewNodes { n, need: k + 1 });
    }
    let half = k / 2;
    let mut edges: HashSet<(NodeId, NodeId)> = HashSet::new();
    for u in 0..=k {
        for v in u + 1..=k {
            edges.insert((u, v));
        }
    }
    // Left group stays 0..half; the right group is replaced by each full
    // batch of inserted nodes.
    let left: Vec<NodeId> = (0..half).collect();
    let mut right: Vec<NodeId> = (half..k).collect();
    let mut next = k + 1;
    while next < n {
        let batch_start = next;
        let batch = (n - next).min(half);
        for x in 1..=batch {
            let fresh = next;
            next += 1;
            // Replace the matching (i, right[(i + x - 1) mod half]).
            for (i, &b) in left.iter().enumerate() {
                let c = right[(i + x - 1) % half];
                let removed = edges.remove(&norm(b, c));
                debug_assert!(removed, "matching edge ({b}, {c}) missing");
                edges.insert(norm(b, fresh));
                edges.insert(norm(fresh, c));
            }
        }
        if batch == half {
            right = (batch_start..batch_start + half).collect();
            // The left group and the fresh batch now form a complete
            // bipartite subgraph.
            debug_assert!(left
                .iter()
                .all(|&b| right.iter().all(|&c| edges.contains(&norm(b, c)))));
        }
    }
    Ok(edge_set_to_graph(n, &edges))
}

/// Zig-zag offsets for the cycle construction: 0, +1, -1, +2, -2, ...
fn zigzag(len: usize) -> impl Iterator<Item = i64> {
    (0..len).map(|j| {
        if j == 0 {
            0
        } else if j % 2 == 1 {
            ((j + 1) / 2) as i64
        } else {
            -((j / 2) as i64)
        }
    })
}

/// Hamiltonian cycle `r` of the complete-graph decomposition: vertex 0, then
/// the zig-zag walk over `1..n` offset by `r` modulo `n - 1`.
fn walecki_cycle(n: usize, r: usize) -> Vec<NodeId> {
    let m = (n - 1) as i64;
    let mut cycle = vec![0usize];
    cycle.extend(zigzag(n - 1).map(|z| (1 + (r as i64 + z).rem_euclid(m)) as usize));
    cycle
}

fn cycle_count(n: usize) -> usize {
    if n % 2 == 1 {
        (n - 1) / 2
    } else {
        n / 2 - 1
    }
}

/// Builds a connected k-regular graph by choosing `k/2` Hamiltonian cycles of
/// the complete-graph decomposition, plus the leftover perfect matching when
/// k is odd. Requires `k < n` and an even `n * k`; a bare matching (k = 1
/// with more than two nodes) is rejected as disconnected.
pub fn kregular_general(n: usize, k: usize) -> Result<Graph, DesignError> {
    if k == 0 || k >= n {
        return Err(DesignError::Parity(format!(
            "degree must satisfy 1 <= k < n, got k = {k}, n = {n}"
        )));
    }
    if n % 2 == 1 && k % 2 == 1 {
        return Err(DesignError::Parity(format!(
            "handshake violation: n * k = {n} * {k} is odd",
        )));
    }
    if k == 1 && n > 2 {
        return Err(DesignError::Disconnected(
            "a 1-regular graph on more than two nodes is a bare matching, hence disconnected"
                .into(),
        ));
    }
    let mut edges: HashSet<(NodeId, NodeId)> = HashSet::new();
    for r in 0..k / 2 {
        let cycle = walecki_cycle(n, r);
        for w in cycle.windows(2) {
            let inserted = edges.insert(norm(w[0], w[1]));
            debug_assert!(inserted, "cycles are not edge-disjoint");
        }
        let inserted = edges.insert(norm(cycle[n - 1], cycle[0]));
        debug_assert!(inserted);
    }
    if k % 2 == 1 {
        // The matching left over after removing every cycle of the full
        // decomposition; disjoint from each of them by construction.
        let mut all: HashSet<(NodeId, NodeId)> = HashSet::new();
        for r in 0..cycle_count(n) {
            let cycle = walecki_cycle(n, r);
            for w in cycle.windows(2) {
                all.insert(norm(w[0], w[1]));
            }
            all.insert(norm(cycle[n - 1], cycle[0]));
        }
        let mut degree = vec![0usize; n];
        for u in 0..n {
            for v in u + 1..n {
                if !all.contains(&(u, v)) {
                    edges.insert((u, v));
                    degree[u] += 1;
                    degree[v] += 1;
                }
            }
        }
        debug_assert!(degree.iter().all(|&d| d == 1), "leftover is not a matching");
    }
    Ok(edge_set_to_graph(n, &edges))
}

/// Validity checks shared by tests and the CLI `--check` mode.
pub fn check_regular(g: &Graph, k: usize) -> Result<(), String> {
    let n = g.node_count();
    let mut seen = HashSet::new();
    let mut degree = vec![0usize; n];
    for e in g.edges() {
        if e.u == e.v {
            return Err(format!("self-loop at {}", e.u));
        }
        if !seen.insert(norm(e.u, e.v)) {
            return Err(format!("parallel edge ({}, {})", e.u, e.v));
        }
        degree[e.u] += 1;
        degree[e.v] += 1;
    }
    if let Some(v) = (0..n).find(|&v| degree[v] != k) {
        return Err(format!("node {v} has degree {} != {k}", degree[v]));
    }
    let mut visited = vec![false; n];
    let mut stack = vec![0usize];
    visited[0] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &eid in g.incident(u) {
            let v = g.edge(eid).other(u);
            if !visited[v] {
                visited[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    if count != n {
        return Err(format!("disconnected: reached {count} of {n} nodes"));
    }
    Ok(())
}
