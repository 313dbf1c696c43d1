//! QoS-constrained latency changes: inverse shortest-path retargeting on a
//! graph (exact and at-most variants) and budget-constrained latency decrease
//! on a multicast tree (unit-decrement and binary-search strategies).

use std::fmt;

use crate::ds::{Aggregate, IndexedHeap, SegTreeAddMinMax, SegTreeAssign};
use crate::graph::{sat_add, Graph, Latency, NodeId, INF};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatencyError {
    BadSource { src: NodeId, n: usize },
    BadTargets(String),
    NotATree(String),
    NegativeBudget,
}

impl fmt::Display for LatencyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatencyError::BadSource { src, n } => {
                write!(f, "source {src} out of range (n = {n})")
            }
            LatencyError::BadTargets(msg) => write!(f, "invalid targets: {msg}"),
            LatencyError::NotATree(msg) => write!(f, "input is not a tree: {msg}"),
            LatencyError::NegativeBudget => write!(f, "budget must be non-negative"),
        }
    }
}

impl std::error::Error for LatencyError {}

// ---------------------------------------------------------------------------
// Inverse shortest-path retargeting
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RetargetOutcome {
    Feasible {
        /// New latency per edge, in input edge order.
        latencies: Vec<Latency>,
        /// Sum of absolute latency changes.
        cost: i64,
    },
    Infeasible,
}

/// Changes edge latencies at minimum total absolute change so the distance
/// from `src` to every node `d` becomes exactly `targets[d]`. Targets must be
/// finite, non-negative, and zero at the source. Infeasibility (some node
/// cannot reach its target without violating an `lmin`) is a reported
/// outcome, not an error.
pub fn retarget_exact(
    g: &Graph,
    src: NodeId,
    targets: &[Latency],
) -> Result<RetargetOutcome, LatencyError> {
    validate_targets(g, src, targets, true)?;
    Ok(run_retarget(g, src, targets, true))
}

/// Relaxed variant: distances only need to be at most the targets. Targets
/// are first clamped to the currently achievable distances, after which the
/// initial increase pass becomes unnecessary. `INF` entries mean
/// "unconstrained".
pub fn retarget_atmost(
    g: &Graph,
    src: NodeId,
    targets: &[Latency],
) -> Result<RetargetOutcome, LatencyError> {
    validate_targets(g, src, targets, false)?;
    let (splen, _) = g.dijkstra(src);
    let clamped: Vec<Latency> = targets
        .iter()
        .zip(&splen)
        .map(|(&t, &d)| t.min(d))
        .collect();
    Ok(run_retarget(g, src, &clamped, false))
}

fn validate_targets(
    g: &Graph,
    src: NodeId,
    targets: &[Latency],
    require_finite: bool,
) -> Result<(), LatencyError> {
    if src >= g.node_count() {
        return Err(LatencyError::BadSource {
            src,
            n: g.node_count(),
        });
    }
    if targets.len() != g.node_count() {
        return Err(LatencyError::BadTargets(format!(
            "expected {} entries, got {}",
            g.node_count(),
            targets.len()
        )));
    }
    if targets[src] != 0 {
        return Err(LatencyError::BadTargets(
            "target at source must be 0".into(),
        ));
    }
    for (d, &t) in targets.iter().enumerate() {
        if t < 0 {
            return Err(LatencyError::BadTargets(format!("negative target at {d}")));
        }
        if require_finite && t == INF {
            return Err(LatencyError::BadTargets(format!(
                "exact mode requires a finite target at {d}"
            )));
        }
    }
    Ok(())
}

fn run_retarget(g: &Graph, src: NodeId, sp: &[Latency], increase_pass: bool) -> RetargetOutcome {
    let n = g.node_count();
    let m = g.edge_count();
    let mut lprime: Vec<Latency> = g.edges().iter().map(|e| e.latency).collect();

    if increase_pass {
        for (eid, e) in g.edges().iter().enumerate() {
            let (a, b) = if sp[e.u] <= sp[e.v] {
                (e.u, e.v)
            } else {
                (e.v, e.u)
            };
            if sp[a] < sp[b] && sat_add(sp[a], lprime[eid]) < sp[b] {
                lprime[eid] = sp[b] - sp[a];
            }
        }
    }

    // Parent-selection sweep. Nodes are drawn from a min-heap ordered by
    // (target distance, current cost, node id); an extracted node offers its
    // incident edges to not-yet-extracted nodes with larger-or-equal targets.
    let mut cost_to_fix = vec![INF; n];
    let mut parent_edge: Vec<Option<usize>> = vec![None; n];
    let mut extracted = vec![false; n];
    cost_to_fix[src] = 0;
    let mut heap: IndexedHeap<(Latency, Latency, usize)> = IndexedHeap::new(n);
    for v in 0..n {
        if sp[v] == INF {
            continue; // unconstrained (at-most mode only)
        }
        heap.insert(v, (sp[v], cost_to_fix[v], v));
    }
    while let Some((u, _)) = heap.pop_min() {
        extracted[u] = true;
        for &eid in g.incident(u) {
            let e = g.edge(eid);
            let v = e.other(u);
            if sp[v] == INF || extracted[v] || sp[u] > sp[v] {
                continue;
            }
            let diff = sp[v] - sp[u];
            if e.lmin > diff {
                continue;
            }
            let cand = lprime[eid] - diff;
            if cand < cost_to_fix[v] {
                cost_to_fix[v] = cand;
                parent_edge[v] = Some(eid);
                heap.change_key(v, (sp[v], cand, v));
            }
        }
    }
    for v in 0..n {
        if v != src && sp[v] != INF && cost_to_fix[v] == INF {
            return RetargetOutcome::Infeasible;
        }
    }
    for v in 0..n {
        let Some(eid) = parent_edge[v] else { continue };
        let e = g.edge(eid);
        let diff = sp[v] - sp[e.other(v)];
        if increase_pass {
            lprime[eid] = diff;
        } else {
            // At-most mode: an already-short edge needs no change.
            lprime[eid] = lprime[eid].min(diff);
        }
    }
    let cost = (0..m)
        .map(|eid| (lprime[eid] - g.edge(eid).latency).abs())
        .sum();
    RetargetOutcome::Feasible {
        latencies: lprime,
        cost,
    }
}

// ---------------------------------------------------------------------------
// Budgeted latency decrease on a rooted tree
// ---------------------------------------------------------------------------

/// Rooted-tree view of a graph that is connected and acyclic. Per node
/// (except the root) it keeps the latency and floor of the edge towards the
/// parent, plus DFS numbering over the whole tree.
#[derive(Debug, Clone)]
pub struct TreeInstance {
    n: usize,
    root: NodeId,
    parent: Vec<Option<NodeId>>,
    parent_edge_id: Vec<Option<usize>>,
    children: Vec<Vec<NodeId>>,
    latency: Vec<Latency>,
    lmin: Vec<Latency>,
    dfs_num: Vec<usize>,
    dfs_max: Vec<usize>,
    /// Node at each DFS number.
    order: Vec<NodeId>,
    dist: Vec<Latency>,
}

impl TreeInstance {
    pub fn from_graph(g: &Graph, root: NodeId) -> Result<TreeInstance, LatencyError> {
        let n = g.node_count();
        if root >= n {
            return Err(LatencyError::BadSource { src: root, n });
        }
        if g.edge_count() != n.saturating_sub(1) {
            return Err(LatencyError::NotATree(format!(
                "{} edges for {} nodes",
                g.edge_count(),
                n
            )));
        }
        let mut parent = vec![None; n];
        let mut parent_edge_id = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut latency = vec![0; n];
        let mut lmin = vec![0; n];
        let mut dist = vec![INF; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        dist[root] = 0;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for &eid in g.incident(u) {
                let e = g.edge(eid);
                let v = e.other(u);
                if seen[v] {
                    continue;
                }
                seen[v] = true;
                parent[v] = Some(u);
                parent_edge_id[v] = Some(eid);
                latency[v] = e.latency;
                lmin[v] = e.lmin;
                dist[v] = sat_add(dist[u], e.latency);
                children[u].push(v);
                stack.push(v);
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(LatencyError::NotATree("disconnected".into()));
        }
        for ch in &mut children {
            ch.sort_unstable();
        }
        let mut dfs_num = vec![0; n];
        let mut dfs_max = vec![0; n];
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            dfs_num[u] = order.len();
            order.push(u);
            for &c in children[u].iter().rev() {
                stack.push(c);
            }
        }
        for &u in order.iter().rev() {
            dfs_max[u] = children[u]
                .iter()
                .map(|&c| dfs_max[c])
                .max()
                .unwrap_or(dfs_num[u]);
        }
        Ok(TreeInstance {
            n,
            root,
            parent,
            parent_edge_id,
            children,
            latency,
            lmin,
            dfs_num,
            dfs_max,
            order,
            dist,
        })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        self.parent[v]
    }

    pub fn edge_latency(&self, v: NodeId) -> Latency {
        self.latency[v]
    }

    pub fn edge_lmin(&self, v: NodeId) -> Latency {
        self.lmin[v]
    }

    pub fn dist(&self, v: NodeId) -> Latency {
        self.dist[v]
    }

    pub fn max_dist(&self) -> Latency {
        self.dist.iter().copied().max().unwrap_or(0)
    }

    /// Per-input-edge latencies from a per-node assignment.
    pub fn edge_latencies(&self, per_node: &[Latency], g: &Graph) -> Vec<Latency> {
        let mut out: Vec<Latency> = g.edges().iter().map(|e| e.latency).collect();
        for v in 0..self.n {
            if let Some(eid) = self.parent_edge_id[v] {
                out[eid] = per_node[v];
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecreaseResult {
    /// New latency of the edge above each node (root entry unused).
    pub latencies: Vec<Latency>,
    /// Maximum root-to-node distance after the decreases.
    pub max_dist: Latency,
    /// Total latency removed.
    pub spent: i64,
}

/// Unit-decrement strategy: repeatedly finds the deepest node via a max
/// segment tree and decreases by one the topmost unsaturated edge on its
/// path, pushing an assignment frontier past saturated edges. Stops when the
/// budget runs out or the deepest node's path is fully saturated. Defined for
/// integer latencies.
pub fn tree_decrease_unit(
    inst: &TreeInstance,
    budget: i64,
) -> Result<TreeDecreaseResult, LatencyError> {
    if budget < 0 {
        return Err(LatencyError::NegativeBudget);
    }
    let n = inst.n;
    let mut lprime = inst.latency.clone();
    if n == 1 {
        return Ok(TreeDecreaseResult {
            latencies: lprime,
            max_dist: 0,
            spent: 0,
        });
    }
    let by_dfs: Vec<Latency> = inst.order.iter().map(|&v| inst.dist[v]).collect();
    let mut tree_a = SegTreeAddMinMax::from_values(&by_dfs, Aggregate::Max);
    let mut tree_b: SegTreeAssign<usize> = SegTreeAssign::new(n, usize::MAX);
    for &c in &inst.children[inst.root] {
        tree_b.assign(inst.dfs_num[c], inst.dfs_max[c], c);
    }
    let mut spent = 0i64;
    while spent < budget {
        let leaf = tree_a.argbest();
        let deepest = inst.order[leaf];
        let x = tree_b.point_query(leaf);
        if x == usize::MAX {
            break; // the deepest node is the root: nothing to decrease
        }
        if lprime[x] > inst.lmin[x] {
            lprime[x] -= 1;
            tree_a.range_add(inst.dfs_num[x], inst.dfs_max[x], -1);
            spent += 1;
        } else if x == deepest {
            // The whole path to the current maximum is saturated.
            break;
        } else {
            for &s in &inst.children[x] {
                tree_b.assign(inst.dfs_num[s], inst.dfs_max[s], s);
            }
        }
    }
    Ok(TreeDecreaseResult {
        latencies: lprime,
        max_dist: tree_a.global_best(),
        spent,
    })
}

/// Binary-search strategy: finds the least maximum distance `D` in
/// `[0, DMAX]` whose feasibility sweep fits the budget. Works for any
/// non-negative latencies and agrees with [`tree_decrease_unit`] on integer
/// instances.
pub fn tree_decrease_binary(
    inst: &TreeInstance,
    budget: i64,
) -> Result<TreeDecreaseResult, LatencyError> {
    if budget < 0 {
        return Err(LatencyError::NegativeBudget);
    }
    let dmax = inst.max_dist();
    let (mut lo, mut hi) = (0, dmax);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if feasibility_sweep(inst, budget, mid).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let (latencies, spent) = feasibility_sweep(inst, budget, lo).expect("DMAX is always feasible");
    Ok(TreeDecreaseResult {
        latencies,
        max_dist: lo,
        spent,
    })
}

/// Sweeps vertices in increasing DFS order, decreasing frontier edges until
/// each vertex distance is at most `d_cand`; returns the latencies and cost
/// on success.
fn feasibility_sweep(
    inst: &TreeInstance,
    budget: i64,
    d_cand: Latency,
) -> Option<(Vec<Latency>, i64)> {
    let n = inst.n;
    let mut lprime = inst.latency.clone();
    if n == 1 {
        return Some((lprime, 0));
    }
    let by_dfs: Vec<Latency> = inst.order.iter().map(|&v| inst.dist[v]).collect();
    let mut tree_a = SegTreeAddMinMax::from_values(&by_dfs, Aggregate::Max);
    let mut tree_b: SegTreeAssign<usize> = SegTreeAssign::new(n, usize::MAX);
    for &c in &inst.children[inst.root] {
        tree_b.assign(inst.dfs_num[c], inst.dfs_max[c], c);
    }
    let mut spent = 0i64;
    for leaf in 0..n {
        let i = inst.order[leaf];
        let mut cd = tree_a.point_query(leaf);
        while cd > d_cand {
            let x = tree_b.point_query(leaf);
            debug_assert_ne!(x, usize::MAX, "root distance exceeds candidate");
            let need = cd - d_cand;
            let dif = need.min(lprime[x] - inst.lmin[x]);
            if dif > 0 {
                lprime[x] -= dif;
                spent += dif;
                tree_a.range_add(inst.dfs_num[x], inst.dfs_max[x], -dif);
                cd -= dif;
                if spent > budget {
                    return None;
                }
            }
            if lprime[x] == inst.lmin[x] {
                if x == i {
                    if cd > d_cand {
                        return None;
                    }
                } else {
                    for &s in &inst.children[x] {
                        tree_b.assign(inst.dfs_num[s], inst.dfs_max[s], s);
                    }
                }
            }
        }
    }
    if spent <= budget {
        Some((lprime, spent))
    } else {
        None
    }
}
