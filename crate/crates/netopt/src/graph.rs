//! Weighted undirected multigraphs and shortest-path-tree bookkeeping.
//!
//! Latencies are non-negative integers. Parallel edges are allowed (they are
//! legitimate inputs for the backup-path edge scan); self-loops are rejected
//! at construction time.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

pub type NodeId = usize;
pub type EdgeId = usize;

/// Distance value used throughout the graph modules. `i64::MAX` acts as the
/// infinity sentinel; helpers in this module saturate instead of overflowing.
pub type Latency = i64;

pub const INF: Latency = i64::MAX;

#[inline]
pub fn sat_add(a: Latency, b: Latency) -> Latency {
    a.saturating_add(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub latency: Latency,
    pub label: u64,
    pub lmin: Latency,
}

impl Edge {
    /// Endpoint opposite to `from`.
    pub fn other(&self, from: NodeId) -> NodeId {
        if from == self.u {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<EdgeId>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    NodeOutOfRange { node: NodeId, n: usize },
    SelfLoop { node: NodeId },
    NegativeLatency { u: NodeId, v: NodeId },
    LminExceedsLatency { u: NodeId, v: NodeId },
    Parse { line: usize, message: String },
    NotInTree { node: NodeId },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::NodeOutOfRange { node, n } => {
                write!(f, "node {node} out of range (n = {n})")
            }
            GraphError::SelfLoop { node } => write!(f, "self-loop at node {node}"),
            GraphError::NegativeLatency { u, v } => {
                write!(f, "negative latency on edge ({u}, {v})")
            }
            GraphError::LminExceedsLatency { u, v } => {
                write!(f, "lmin exceeds latency on edge ({u}, {v})")
            }
            GraphError::Parse { line, message } => write!(f, "line {line}: {message}"),
            GraphError::NotInTree { node } => write!(f, "node {node} not in tree"),
        }
    }
}

impl std::error::Error for GraphError {}

impl Graph {
    pub fn new(n: usize, edges: Vec<(NodeId, NodeId, Latency)>) -> Result<Graph, GraphError> {
        Graph::with_edges(
            n,
            edges
                .into_iter()
                .map(|(u, v, l)| Edge {
                    u,
                    v,
                    latency: l,
                    label: 1,
                    lmin: 0,
                })
                .collect(),
        )
    }

    pub fn with_edges(n: usize, edges: Vec<Edge>) -> Result<Graph, GraphError> {
        for e in &edges {
            if e.u >= n {
                return Err(GraphError::NodeOutOfRange { node: e.u, n });
            }
            if e.v >= n {
                return Err(GraphError::NodeOutOfRange { node: e.v, n });
            }
            if e.u == e.v {
                return Err(GraphError::SelfLoop { node: e.u });
            }
            if e.latency < 0 || e.lmin < 0 {
                return Err(GraphError::NegativeLatency { u: e.u, v: e.v });
            }
            if e.lmin > e.latency {
                return Err(GraphError::LminExceedsLatency { u: e.u, v: e.v });
            }
        }
        let mut adj = vec![Vec::new(); n];
        for (id, e) in edges.iter().enumerate() {
            adj[e.u].push(id);
            adj[e.v].push(id);
        }
        Ok(Graph { n, edges, adj })
    }

    /// Parses the graph text format: first non-comment line `n m`, then `m`
    /// lines `u v l [label] [lmin]`. Omitted fields default to `label = 1`
    /// and `lmin = 0`. Lines starting with `#` are comments.
    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (line_no, header) = lines.next().ok_or(GraphError::Parse {
            line: 0,
            message: "empty input".into(),
        })?;
        let mut it = header.split_whitespace();
        let n: usize = parse_field(it.next(), line_no, "node count")?;
        let m: usize = parse_field(it.next(), line_no, "edge count")?;

        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let (line_no, line) = lines.next().ok_or(GraphError::Parse {
                line: 0,
                message: format!("expected {m} edge lines"),
            })?;
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() < 3 || fields.len() > 5 {
                return Err(GraphError::Parse {
                    line: line_no,
                    message: "expected `u v l [label] [lmin]`".into(),
                });
            }
            let u: usize = parse_field(Some(fields[0]), line_no, "u")?;
            let v: usize = parse_field(Some(fields[1]), line_no, "v")?;
            let l: Latency = parse_field(Some(fields[2]), line_no, "latency")?;
            let label: u64 = if fields.len() > 3 {
                parse_field(Some(fields[3]), line_no, "label")?
            } else {
                1
            };
            if label == 0 {
                return Err(GraphError::Parse {
                    line: line_no,
                    message: "label must be positive".into(),
                });
            }
            let lmin: Latency = if fields.len() > 4 {
                parse_field(Some(fields[4]), line_no, "lmin")?
            } else {
                0
            };
            edges.push(Edge {
                u,
                v,
                latency: l,
                label,
                lmin,
            });
        }
        Graph::with_edges(n, edges)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    /// Edge ids incident to `u`.
    pub fn incident(&self, u: NodeId) -> &[EdgeId] {
        &self.adj[u]
    }

    /// Writes the graph back out in the text format.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edges.len());
        for e in &self.edges {
            s.push_str(&format!(
                "{} {} {} {} {}\n",
                e.u, e.v, e.latency, e.label, e.lmin
            ));
        }
        s
    }

    /// Dijkstra distances from `src`, skipping edges for which `skip` returns
    /// true. Unreachable nodes get [`INF`]. Also returns, per node, the edge
    /// that realizes the final distance with the smallest predecessor id
    /// (`None` for the source and unreachable nodes).
    pub fn dijkstra_filtered<F: Fn(EdgeId) -> bool>(
        &self,
        src: NodeId,
        skip: F,
    ) -> (Vec<Latency>, Vec<Option<EdgeId>>) {
        assert!(src < self.n, "source out of range");
        let mut dist = vec![INF; self.n];
        let mut parent_edge = vec![None; self.n];
        let mut settled = vec![false; self.n];
        let mut heap = BinaryHeap::new();
        dist[src] = 0;
        heap.push(Reverse((0, src)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if settled[u] {
                continue;
            }
            settled[u] = true;
            debug_assert_eq!(d, dist[u]);
            for &eid in &self.adj[u] {
                if skip(eid) {
                    continue;
                }
                let e = &self.edges[eid];
                let v = e.other(u);
                if settled[v] {
                    continue;
                }
                let nd = sat_add(d, e.latency);
                if nd < dist[v] {
                    dist[v] = nd;
                    parent_edge[v] = Some(eid);
                    heap.push(Reverse((nd, v)));
                } else if nd == dist[v] {
                    // Equal-length path: keep the smallest predecessor id
                    // (then smallest edge id). Relaxations only come from
                    // settled nodes, so parent chains stay acyclic.
                    if let Some(cur) = parent_edge[v] {
                        let ce = &self.edges[cur];
                        if (u, eid) < (ce.other(v), cur) {
                            parent_edge[v] = Some(eid);
                        }
                    }
                }
            }
        }
        (dist, parent_edge)
    }

    pub fn dijkstra(&self, src: NodeId) -> (Vec<Latency>, Vec<Option<EdgeId>>) {
        self.dijkstra_filtered(src, |_| false)
    }
}

fn parse_field<T: std::str::FromStr>(
    field: Option<&str>,
    line: usize,
    what: &str,
) -> Result<T, GraphError> {
    field
        .ok_or_else(|| GraphError::Parse {
            line,
            message: format!("missing {what}"),
        })?
        .parse()
        .map_err(|_| GraphError::Parse {
            line,
            message: format!("invalid {what}"),
        })
}

/// Shortest-path tree rooted at a source node, with per-node parent, level,
/// distance, preorder DFS intervals and an Euler-tour LCA structure.
///
/// Unreachable nodes are excluded from the tree; their distance is [`INF`].
#[derive(Debug, Clone)]
pub struct SptInfo {
    src: NodeId,
    dist: Vec<Latency>,
    parent: Vec<Option<NodeId>>,
    parent_edge: Vec<Option<EdgeId>>,
    level: Vec<usize>,
    children: Vec<Vec<NodeId>>,
    dfs_num: Vec<usize>,
    dfs_max: Vec<usize>,
    /// Reachable nodes in preorder: `order[dfs_num[v]] == v`.
    order: Vec<NodeId>,
    // Euler tour + sparse table for O(1) LCA.
    first_occ: Vec<usize>,
    table: Vec<Vec<(usize, NodeId)>>,
}

impl SptInfo {
    pub fn src(&self) -> NodeId {
        self.src
    }

    pub fn in_tree(&self, v: NodeId) -> bool {
        self.dist[v] != INF
    }

    pub fn dist(&self, v: NodeId) -> Latency {
        self.dist[v]
    }

    pub fn distances(&self) -> &[Latency] {
        &self.dist
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        self.parent[v]
    }

    pub fn parent_edge(&self, v: NodeId) -> Option<EdgeId> {
        self.parent_edge[v]
    }

    pub fn level(&self, v: NodeId) -> usize {
        self.level[v]
    }

    pub fn children(&self, v: NodeId) -> &[NodeId] {
        &self.children[v]
    }

    pub fn dfs_num(&self, v: NodeId) -> usize {
        self.dfs_num[v]
    }

    pub fn dfs_max(&self, v: NodeId) -> usize {
        self.dfs_max[v]
    }

    /// Reachable nodes in preorder.
    pub fn preorder(&self) -> &[NodeId] {
        &self.order
    }

    /// Tree path from the source to `v` (inclusive).
    pub fn path_from_src(&self, v: NodeId) -> Vec<NodeId> {
        assert!(self.in_tree(v), "node {v} not in tree");
        let mut path = Vec::with_capacity(self.level[v] + 1);
        let mut cur = v;
        path.push(cur);
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    /// Lowest common ancestor of `u` and `v`. A node is its own ancestor.
    pub fn lca(&self, u: NodeId, v: NodeId) -> Result<NodeId, GraphError> {
        if !self.in_tree(u) {
            return Err(GraphError::NotInTree { node: u });
        }
        if !self.in_tree(v) {
            return Err(GraphError::NotInTree { node: v });
        }
        let (a, b) = {
            let (fu, fv) = (self.first_occ[u], self.first_occ[v]);
            if fu <= fv {
                (fu, fv)
            } else {
                (fv, fu)
            }
        };
        let k = usize::BITS as usize - 1 - (b - a + 1).leading_zeros() as usize;
        let left = self.table[k][a];
        let right = self.table[k][b + 1 - (1 << k)];
        Ok(left.min(right).1)
    }

    /// Ancestor test via the DFS-interval containment check; agrees with
    /// `lca(a, u) == a`.
    pub fn is_ancestor(&self, a: NodeId, u: NodeId) -> Result<bool, GraphError> {
        if !self.in_tree(a) {
            return Err(GraphError::NotInTree { node: a });
        }
        if !self.in_tree(u) {
            return Err(GraphError::NotInTree { node: u });
        }
        Ok(self.dfs_num[a] <= self.dfs_num[u] && self.dfs_num[u] <= self.dfs_max[a])
    }
}

/// Computes the shortest-path tree from `src`. Tie-breaking among equal-length
/// paths is by smallest predecessor node id, so repeated runs (and oracle
/// comparisons) see identical trees. Disconnection is a valid result, not an
/// error: unreachable nodes simply stay out of the tree.
pub fn shortest_path_tree(g: &Graph, src: NodeId) -> SptInfo {
    let n = g.node_count();
    let (dist, parent_edge) = g.dijkstra(src);

    let mut parent = vec![None; n];
    let mut children = vec![Vec::new(); n];
    for v in 0..n {
        if let Some(eid) = parent_edge[v] {
            let p = g.edge(eid).other(v);
            parent[v] = Some(p);
            children[p].push(v);
        }
    }
    for ch in &mut children {
        ch.sort_unstable();
    }

    let mut level = vec![0usize; n];
    let mut dfs_num = vec![usize::MAX; n];
    let mut dfs_max = vec![0usize; n];
    let mut order = Vec::new();
    let mut euler: Vec<(usize, NodeId)> = Vec::new();
    let mut first_occ = vec![usize::MAX; n];

    if n > 0 && dist[src] == 0 {
        // Iterative DFS; children visited in increasing node id.
        enum Step {
            Enter(NodeId),
            Back(NodeId),
        }
        let mut stack = vec![Step::Enter(src)];
        while let Some(step) = stack.pop() {
            match step {
                Step::Enter(v) => {
                    dfs_num[v] = order.len();
                    order.push(v);
                    first_occ[v] = euler.len();
                    euler.push((level[v], v));
                    for &c in children[v].iter().rev() {
                        level[c] = level[v] + 1;
                        stack.push(Step::Back(v));
                        stack.push(Step::Enter(c));
                    }
                }
                Step::Back(v) => {
                    euler.push((level[v], v));
                }
            }
        }
        for &v in order.iter().rev() {
            let mut hi = dfs_num[v];
            for &c in &children[v] {
                hi = hi.max(dfs_max[c]);
            }
            dfs_max[v] = hi;
        }
    }

    // Sparse table over the Euler tour, min by (depth, node).
    let len = euler.len().max(1);
    let levels = usize::BITS as usize - len.leading_zeros() as usize;
    let mut table = Vec::with_capacity(levels);
    table.push(if euler.is_empty() {
        vec![(0, 0)]
    } else {
        euler
    });
    for k in 1..levels {
        let prev = &table[k - 1];
        let w = 1 << (k - 1);
        let row: Vec<(usize, NodeId)> = (0..prev.len().saturating_sub(w))
            .map(|i| prev[i].min(prev[i + w]))
            .collect();
        table.push(row);
    }

    SptInfo {
        src,
        dist,
        parent,
        parent_edge,
        level,
        children,
        dfs_num,
        dfs_max,
        order,
        first_occ,
        table,
    }
}
