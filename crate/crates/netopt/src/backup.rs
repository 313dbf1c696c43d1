//! Backup shortest paths: for every node `d`, the shortest path from the
//! source that avoids the last edge `(parent(d), d)` of the original shortest
//! path, plus a witness path when one exists.
//!
//! Four strategies produce identical lengths: a per-node recompute (the
//! reference), a bottom-up divergence-level table, a 2D range tree over
//! `(DFS number, LCA level)` points, and a segment tree with multiset leaves
//! and deferred deletion lists.
//!
//! The failing link is the node pair `(parent(d), d)`: with parallel edges,
//! every copy between the two endpoints is considered failed, and the edge
//! scan of the optimized strategies accordingly skips every edge incident to
//! `d` from `parent(d)`.

use crate::ds::{MinMultisetTree, RangeTree2d};
use crate::graph::{sat_add, shortest_path_tree, Graph, GraphError, Latency, NodeId, SptInfo, INF};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BackupStrategy {
    Naive,
    BottomUp,
    RangeTree,
    SegtreeLists,
}

impl BackupStrategy {
    pub const ALL: [BackupStrategy; 4] = [
        BackupStrategy::Naive,
        BackupStrategy::BottomUp,
        BackupStrategy::RangeTree,
        BackupStrategy::SegtreeLists,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BackupStrategy::Naive => "naive",
            BackupStrategy::BottomUp => "bottom_up",
            BackupStrategy::RangeTree => "range_tree",
            BackupStrategy::SegtreeLists => "segtree_lists",
        }
    }

    pub fn from_name(s: &str) -> Option<BackupStrategy> {
        Self::ALL.iter().copied().find(|st| st.name() == s)
    }
}

#[derive(Debug, Clone)]
pub struct BackupResult {
    /// Backup length per node; `INF` when no backup path exists. The source
    /// gets 0.
    pub bp: Vec<Latency>,
    /// Witness walk per node (node sequence from the source), present exactly
    /// for finite entries.
    pub witness: Vec<Option<Vec<NodeId>>>,
}

/// Computes backup path lengths (and witnesses) from `src` for every node.
pub fn backup_all(
    g: &Graph,
    src: NodeId,
    strategy: BackupStrategy,
) -> Result<BackupResult, GraphError> {
    if src >= g.node_count() {
        return Err(GraphError::NodeOutOfRange {
            node: src,
            n: g.node_count(),
        });
    }
    let spt = shortest_path_tree(g, src);
    let res = match strategy {
        BackupStrategy::Naive => naive(g, &spt),
        BackupStrategy::BottomUp => bottom_up(g, &spt),
        BackupStrategy::RangeTree => range_tree(g, &spt),
        BackupStrategy::SegtreeLists => segtree_lists(g, &spt),
    };
    Ok(res)
}

fn empty_result(g: &Graph, spt: &SptInfo) -> BackupResult {
    let n = g.node_count();
    let mut bp = vec![INF; n];
    let mut witness = vec![None; n];
    bp[spt.src()] = 0;
    witness[spt.src()] = Some(vec![spt.src()]);
    BackupResult { bp, witness }
}

fn naive(g: &Graph, spt: &SptInfo) -> BackupResult {
    let mut res = empty_result(g, spt);
    let src = spt.src();
    for d in 0..g.node_count() {
        if d == src || !spt.in_tree(d) {
            continue;
        }
        let p = spt.parent(d).unwrap();
        let pair = (p.min(d), p.max(d));
        let (dist, parent_edge) = g.dijkstra_filtered(src, |eid| {
            let e = g.edge(eid);
            (e.u.min(e.v), e.u.max(e.v)) == pair
        });
        res.bp[d] = dist[d];
        if dist[d] != INF {
            let mut path = vec![d];
            let mut cur = d;
            while let Some(eid) = parent_edge[cur] {
                cur = g.edge(eid).other(cur);
                path.push(cur);
            }
            path.reverse();
            res.witness[d] = Some(path);
        }
    }
    res
}

/// True when the edge, seen as `(u, d)`, may contribute a backup candidate
/// for endpoint `d`.
fn scan_ok(spt: &SptInfo, u: NodeId, d: NodeId) -> bool {
    if !spt.in_tree(u) || !spt.in_tree(d) || d == spt.src() {
        return false;
    }
    if spt.parent(d) == Some(u) {
        return false;
    }
    // d must not be an ancestor of u (interval test).
    !(spt.dfs_num(d) <= spt.dfs_num(u) && spt.dfs_num(u) <= spt.dfs_max(d))
}

fn bottom_up(g: &Graph, spt: &SptInfo) -> BackupResult {
    let mut res = empty_result(g, spt);
    let n = g.node_count();
    // bpl[d][j] = (length, creating edge) of the best backup path for d that
    // diverges from the shortest path at level j.
    let mut bpl: Vec<Vec<(Latency, u32)>> = vec![Vec::new(); n];
    for &d in spt.preorder().iter().rev() {
        if d == spt.src() {
            continue;
        }
        let lev = spt.level(d);
        let mut table = vec![(INF, u32::MAX); lev];
        for &c in spt.children(d) {
            let edge_len = g.edge(spt.parent_edge(c).unwrap()).latency;
            let child = std::mem::take(&mut bpl[c]);
            for j in 0..lev {
                let cand = sat_add(child[j].0, edge_len);
                if cand < table[j].0 {
                    table[j] = (cand, child[j].1);
                }
            }
        }
        for &eid in g.incident(d) {
            let e = g.edge(eid);
            let u = e.other(d);
            if !scan_ok(spt, u, d) {
                continue;
            }
            let lca = spt.lca(u, d).expect("both in tree");
            let j = spt.level(lca);
            debug_assert!(j < lev);
            let cand = sat_add(spt.dist(u), e.latency);
            if cand < table[j].0 {
                table[j] = (cand, eid as u32);
            }
        }
        let best = table.iter().copied().min().unwrap_or((INF, u32::MAX));
        if best.0 != INF {
            res.bp[d] = best.0;
            res.witness[d] = Some(reconstruct_witness(g, spt, best.1 as usize, d));
        }
        bpl[d] = table;
    }
    res
}

fn range_tree(g: &Graph, spt: &SptInfo) -> BackupResult {
    let mut res = empty_result(g, spt);
    let tree_size = spt.preorder().len();
    if tree_size <= 1 {
        return res;
    }
    let mut rt: RangeTree2d<i64> = RangeTree2d::new(tree_size);
    for (eid, e) in g.edges().iter().enumerate() {
        for (u, d) in [(e.u, e.v), (e.v, e.u)] {
            if !scan_ok(spt, u, d) {
                continue;
            }
            let lca = spt.lca(u, d).expect("both in tree");
            // Weight stores the full detour length down to the re-entry node,
            // so a query only needs the target's own distance subtracted.
            let val = sat_add(sat_add(spt.dist(u), e.latency), spt.dist(d));
            rt.insert(spt.dfs_num(d), spt.level(lca) as i64, val, eid as u32);
        }
    }
    for &d in spt.preorder() {
        if d == spt.src() {
            continue;
        }
        let lev = spt.level(d) as i64;
        if let Some((val, eid)) = rt.find_min_entry(spt.dfs_num(d), 0, spt.dfs_max(d), lev - 1) {
            if val != INF {
                res.bp[d] = val - spt.dist(d);
                res.witness[d] = Some(reconstruct_witness(g, spt, eid as usize, d));
            }
        }
    }
    res
}

fn segtree_lists(g: &Graph, spt: &SptInfo) -> BackupResult {
    let mut res = empty_result(g, spt);
    let tree_size = spt.preorder().len();
    if tree_size <= 1 {
        return res;
    }
    let mut st = MinMultisetTree::new(tree_size);
    // lt[a] collects tuples whose LCA is a; they are withdrawn from the
    // multiset leaves as soon as the bottom-up traversal reaches a.
    let mut lt: Vec<Vec<(usize, i64, u32)>> = vec![Vec::new(); g.node_count()];
    for &d in spt.preorder().iter().rev() {
        for &eid in g.incident(d) {
            let e = g.edge(eid);
            let u = e.other(d);
            if !scan_ok(spt, u, d) {
                continue;
            }
            let lca = spt.lca(u, d).expect("both in tree");
            let val = sat_add(sat_add(spt.dist(u), e.latency), spt.dist(d));
            let leaf = spt.dfs_num(d);
            st.insert(leaf, val, eid as u32);
            lt[lca].push((leaf, val, eid as u32));
        }
        for (leaf, val, eid) in lt[d].drain(..) {
            st.remove(leaf, val, eid);
        }
        if d == spt.src() {
            continue;
        }
        let (val, eid) = st.query_min(spt.dfs_num(d), spt.dfs_max(d));
        if val != INF {
            res.bp[d] = val - spt.dist(d);
            res.witness[d] = Some(reconstruct_witness(g, spt, eid as usize, d));
        }
    }
    res
}

/// Splices the witness walk for `d` out of the creating non-tree edge: the
/// tree path to the outer endpoint, the edge itself, then tree edges from the
/// re-entry node up to `d`.
fn reconstruct_witness(g: &Graph, spt: &SptInfo, eid: usize, d: NodeId) -> Vec<NodeId> {
    let e = g.edge(eid);
    let in_subtree =
        |x: NodeId| spt.dfs_num(d) <= spt.dfs_num(x) && spt.dfs_num(x) <= spt.dfs_max(d);
    let (u, reentry) = if in_subtree(e.u) {
        (e.v, e.u)
    } else {
        debug_assert!(in_subtree(e.v));
        (e.u, e.v)
    };
    let mut path = spt.path_from_src(u);
    let mut cur = reentry;
    loop {
        path.push(cur);
        if cur == d {
            break;
        }
        cur = spt.parent(cur).expect("re-entry below d");
    }
    path
}

/// Total latency of a walk, or `None` if consecutive nodes are not adjacent
/// or the walk touches the forbidden node pair. The cheapest edge between
/// each consecutive pair is charged.
pub fn walk_length(
    g: &Graph,
    walk: &[NodeId],
    forbidden: Option<(NodeId, NodeId)>,
) -> Option<Latency> {
    let mut total = 0;
    for w in walk.windows(2) {
        let (a, b) = (w[0], w[1]);
        if let Some((fa, fb)) = forbidden {
            if (a.min(b), a.max(b)) == (fa.min(fb), fa.max(fb)) {
                return None;
            }
        }
        let best = g
            .incident(a)
            .iter()
            .map(|&eid| g.edge(eid))
            .filter(|e| e.other(a) == b)
            .map(|e| e.latency)
            .min()?;
        total = sat_add(total, best);
    }
    Some(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize, i64)]) -> Graph {
        Graph::new(n, edges.to_vec()).unwrap()
    }

    #[test]
    fn triangle_backup_via_direct_edge() {
        let g = graph(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 3)]);
        for s in BackupStrategy::ALL {
            let r = backup_all(&g, 0, s).unwrap();
            assert_eq!(r.bp[2], 3, "strategy {}", s.name());
            assert_eq!(r.bp[1], 4, "strategy {}", s.name());
        }
    }

    #[test]
    fn star_leaves_have_no_backup() {
        let g = graph(3, &[(0, 1, 1), (0, 2, 1)]);
        for s in BackupStrategy::ALL {
            let r = backup_all(&g, 0, s).unwrap();
            assert_eq!(r.bp[1], INF);
            assert_eq!(r.bp[2], INF);
            assert!(r.witness[1].is_none());
        }
    }

    #[test]
    fn four_cycle_goes_the_other_way() {
        let g = graph(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)]);
        for s in BackupStrategy::ALL {
            let r = backup_all(&g, 0, s).unwrap();
            // Shortest path to 2 is 0-1-2; the backup goes 0-3-2.
            assert_eq!(r.bp[2], 2, "strategy {}", s.name());
            assert_eq!(r.bp[1], 3);
            assert_eq!(r.bp[3], 3);
        }
    }

    #[test]
    fn parallel_tree_edge_counts_as_failed() {
        // Two parallel copies of 0-1; failing the tree edge fails both.
        let g = graph(2, &[(0, 1, 1), (0, 1, 5)]);
        for s in BackupStrategy::ALL {
            let r = backup_all(&g, 0, s).unwrap();
            assert_eq!(r.bp[1], INF, "strategy {}", s.name());
        }
    }

    #[test]
    fn parallel_non_tree_edge_is_a_candidate() {
        let g = graph(3, &[(0, 1, 1), (1, 2, 1), (1, 2, 4)]);
        for s in BackupStrategy::ALL {
            let r = backup_all(&g, 0, s).unwrap();
            assert_eq!(r.bp[2], INF, "strategy {}", s.name());
        }
        // With a distinct intermediate the copy is usable.
        let g = graph(3, &[(0, 1, 1), (0, 2, 1), (1, 2, 4)]);
        for s in BackupStrategy::ALL {
            let r = backup_all(&g, 0, s).unwrap();
            assert_eq!(r.bp[2], 5, "strategy {}", s.name());
        }
    }

    #[test]
    fn witnesses_have_matching_lengths() {
        let g = graph(
            5,
            &[
                (0, 1, 2),
                (1, 2, 2),
                (2, 3, 2),
                (0, 4, 1),
                (4, 3, 10),
                (1, 3, 7),
            ],
        );
        let spt = shortest_path_tree(&g, 0);
        for s in BackupStrategy::ALL {
            let r = backup_all(&g, 0, s).unwrap();
            for d in 1..5 {
                if r.bp[d] == INF {
                    assert!(r.witness[d].is_none());
                    continue;
                }
                let w = r.witness[d].as_ref().unwrap();
                assert_eq!(w.first(), Some(&0));
                assert_eq!(w.last(), Some(&d));
                let forbidden = spt.parent(d).map(|p| (p, d));
                let len = walk_length(&g, w, forbidden).expect("valid walk");
                assert_eq!(len, r.bp[d], "strategy {} node {d}", s.name());
            }
        }
    }

    #[test]
    fn disconnected_nodes_stay_infinite() {
        let g = graph(4, &[(0, 1, 1), (0, 2, 1), (1, 2, 1)]);
        for s in BackupStrategy::ALL {
            let r = backup_all(&g, 0, s).unwrap();
            assert_eq!(r.bp[3], INF);
            assert!(r.witness[3].is_none());
        }
    }

    #[test]
    fn bad_src_is_error() {
        let g = graph(2, &[(0, 1, 1)]);
        assert!(backup_all(&g, 7, BackupStrategy::Naive).is_err());
    }
}
