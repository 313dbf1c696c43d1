//! Shared instance generators for the oracle suites. Everything is seeded so
//! failures print a reproducible seed.

#![allow(dead_code)]

use netopt::cluster::{Agg, BoundTable, ClusterInstance, Weights};
use netopt::graph::{Edge, Graph, INF};
use netopt::latency::TreeInstance;
use netopt::mobile::{ratio, LineSet, MovingPoint};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Connected random multigraph: a random spanning tree plus extra edges.
pub fn random_connected_graph(
    rng: &mut ChaCha8Rng,
    n: usize,
    extra_edges: usize,
    max_latency: i64,
) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.random_range(0..v);
        edges.push((u, v, rng.random_range(0..=max_latency)));
    }
    for _ in 0..extra_edges {
        let u = rng.random_range(0..n);
        let mut v = rng.random_range(0..n);
        while v == u {
            v = rng.random_range(0..n);
        }
        edges.push((u, v, rng.random_range(0..=max_latency)));
    }
    Graph::new(n, edges).unwrap()
}

/// Random graph with lmin values for the retargeting instances. Not
/// necessarily connected when `connected` is false.
pub fn random_lmin_graph(
    rng: &mut ChaCha8Rng,
    n: usize,
    extra_edges: usize,
    max_latency: i64,
) -> Graph {
    let mut edges = Vec::new();
    let mut push = |rng: &mut ChaCha8Rng, u: usize, v: usize| {
        let l = rng.random_range(0..=max_latency);
        let lmin = rng.random_range(0..=l);
        edges.push(Edge {
            u,
            v,
            latency: l,
            label: 1,
            lmin,
        });
    };
    for v in 1..n {
        let u = rng.random_range(0..v);
        push(rng, u, v);
    }
    for _ in 0..extra_edges {
        let u = rng.random_range(0..n);
        let mut v = rng.random_range(0..n);
        while v == u {
            v = rng.random_range(0..n);
        }
        push(rng, u, v);
    }
    Graph::with_edges(n, edges).unwrap()
}

/// Random rooted tree (root 0) in graph form, with lmin per edge.
pub fn random_tree(rng: &mut ChaCha8Rng, n: usize, max_latency: i64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.random_range(0..v);
        let l = rng.random_range(0..=max_latency);
        let lmin = rng.random_range(0..=l);
        edges.push(Edge {
            u,
            v,
            latency: l,
            label: 1,
            lmin,
        });
    }
    Graph::with_edges(n, edges).unwrap()
}

/// Floyd-Warshall all-pairs distances; the independent check for Dijkstra.
pub fn all_pairs(g: &Graph) -> Vec<Vec<i64>> {
    let n = g.node_count();
    let mut d = vec![vec![i64::MAX; n]; n];
    for v in 0..n {
        d[v][v] = 0;
    }
    for e in g.edges() {
        d[e.u][e.v] = d[e.u][e.v].min(e.latency);
        d[e.v][e.u] = d[e.v][e.u].min(e.latency);
    }
    for k in 0..n {
        for i in 0..n {
            if d[i][k] == i64::MAX {
                continue;
            }
            for j in 0..n {
                if d[k][j] == i64::MAX {
                    continue;
                }
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Minimum-cost latency assignment over all per-node choices of a tight
/// incoming edge, verified by rerunning Dijkstra. `None` when no verified
/// assignment exists.
pub fn retarget_oracle(g: &Graph, src: usize, sp: &[i64], exact: bool) -> Option<i64> {
    let n = g.node_count();
    let base: Vec<i64> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(eid, e)| {
            let (a, b) = if sp[e.u] <= sp[e.v] {
                (e.u, e.v)
            } else {
                (e.v, e.u)
            };
            let mut l = g.edge(eid).latency;
            if exact && sp[a] != INF && sp[b] != INF && sp[a] + l < sp[b] {
                l = sp[b] - sp[a];
            }
            l
        })
        .collect();

    let mut nodes = Vec::new();
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        if v == src || sp[v] == INF {
            continue;
        }
        let mut cand = Vec::new();
        for &eid in g.incident(v) {
            let e = g.edge(eid);
            let u = e.other(v);
            if sp[u] == INF || sp[u] > sp[v] {
                continue;
            }
            if e.lmin <= sp[v] - sp[u] {
                cand.push(eid);
            }
        }
        if cand.is_empty() {
            return None;
        }
        nodes.push(v);
        candidates.push(cand);
    }

    let orig: Vec<i64> = g.edges().iter().map(|e| e.latency).collect();
    let base_cost: i64 = (0..g.edge_count()).map(|e| (base[e] - orig[e]).abs()).sum();

    let mut best: Option<i64> = None;
    let mut lat = base.clone();
    search(
        g,
        src,
        sp,
        exact,
        &nodes,
        &candidates,
        0,
        &mut lat,
        base_cost,
        &base,
        &orig,
        &mut best,
    );
    best
}

#[allow(clippy::too_many_arguments)]
fn search(
    g: &Graph,
    src: usize,
    sp: &[i64],
    exact: bool,
    nodes: &[usize],
    candidates: &[Vec<usize>],
    idx: usize,
    lat: &mut Vec<i64>,
    cost: i64,
    base: &[i64],
    orig: &[i64],
    best: &mut Option<i64>,
) {
    if best.is_some_and(|b| cost >= b) {
        return;
    }
    if idx == nodes.len() {
        // Verify the achieved distances.
        let g2 = Graph::new(
            g.node_count(),
            g.edges()
                .iter()
                .zip(lat.iter())
                .map(|(e, &l)| (e.u, e.v, l))
                .collect(),
        )
        .unwrap();
        let (dist, _) = g2.dijkstra(src);
        let ok = (0..g.node_count()).all(|v| {
            if sp[v] == INF {
                true
            } else if exact {
                dist[v] == sp[v]
            } else {
                dist[v] <= sp[v]
            }
        });
        if ok {
            *best = Some(best.map_or(cost, |b| b.min(cost)));
        }
        return;
    }
    let v = nodes[idx];
    for &eid in &candidates[idx] {
        let e = g.edge(eid);
        let diff = sp[v] - sp[e.other(v)];
        let new_l = if exact { diff } else { lat[eid].min(diff) };
        let saved = lat[eid];
        let delta = (new_l - orig[eid]).abs() - (saved - orig[eid]).abs();
        lat[eid] = new_l;
        search(
            g,
            src,
            sp,
            exact,
            nodes,
            candidates,
            idx + 1,
            lat,
            cost + delta,
            base,
            orig,
            best,
        );
        lat[eid] = saved;
    }
}

/// Best achievable maximum distance over all decrement vectors with total at
/// most `budget`, each edge capped at `latency - lmin`.
pub fn tree_oracle(t: &TreeInstance, budget: i64) -> i64 {
    // Preorder walk: once a node's edge decrement is fixed, its distance is
    // final, so a running maximum prunes early.
    let n = t.node_count();
    let mut pre = Vec::with_capacity(n);
    let mut stack = vec![t.root()];
    let mut kids: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        if let Some(p) = t.parent(v) {
            kids[p].push(v);
        }
    }
    while let Some(u) = stack.pop() {
        pre.push(u);
        for &c in kids[u].iter().rev() {
            stack.push(c);
        }
    }
    let mut best = i64::MAX;
    let mut dist = vec![0i64; n];
    rec(t, &pre, 1, budget, &mut dist, 0, &mut best);
    return best;

    fn rec(
        t: &TreeInstance,
        pre: &[usize],
        idx: usize,
        budget_left: i64,
        dist: &mut Vec<i64>,
        running_max: i64,
        best: &mut i64,
    ) {
        if running_max >= *best {
            return;
        }
        if idx == pre.len() {
            *best = running_max;
            return;
        }
        let v = pre[idx];
        let p = t.parent(v).unwrap();
        let cap = (t.edge_latency(v) - t.edge_lmin(v)).min(budget_left);
        // Deepest decrements first so good bounds appear early.
        for dec in (0..=cap).rev() {
            dist[v] = dist[p] + t.edge_latency(v) - dec;
            rec(
                t,
                pre,
                idx + 1,
                budget_left - dec,
                dist,
                running_max.max(dist[v]),
                best,
            );
        }
    }
}

/// Exhaustive optimum over every consecutive partition and per-cluster type
/// (minimum across types with the violation sentinel).
pub fn enumerate_optimum(inst: &ClusterInstance) -> Option<f64> {
    let n = inst.n();
    let t = inst.num_types();
    let mut best: Option<f64> = None;
    for mask in 0..(1u32 << (n - 1)) {
        let mut clusters: Vec<(usize, usize)> = Vec::new();
        let mut start = 0usize;
        for i in 0..n {
            let is_break = i + 1 == n || (mask >> i) & 1 == 1;
            if is_break {
                clusters.push((start, i));
                start = i + 1;
            }
        }
        if inst.k().is_some_and(|k| clusters.len() != k) {
            continue;
        }
        let mut value: Option<f64> = None;
        for (j, &(a, b)) in clusters.iter().enumerate() {
            let jj = if inst.weights_per_cluster() { j } else { 0 };
            let jb = if inst.k().is_some() { j } else { 0 };
            let mut cc = f64::INFINITY;
            for tc in 0..t {
                let mut agg: Option<f64> = None;
                for i in a..=b {
                    let w = inst.weight(i, jj, tc);
                    agg = Some(agg.map_or(w, |x| inst.ctype(tc).combine(x, w)));
                }
                let mut v = agg.unwrap();
                if (a as i64) < inst.lb(b, jb, tc) || (a as i64) > inst.ub(b, jb, tc) {
                    v = f64::INFINITY;
                }
                cc = cc.min(v);
            }
            let cost = inst.fixed_cost() + cc;
            value = Some(value.map_or(cost, |v| inst.objf().combine(v, cost)));
        }
        let v = value.unwrap();
        if v.is_finite() {
            best = Some(best.map_or(v, |b| b.min(v)));
        }
    }
    best
}

pub struct ClusterGenOpts {
    pub objf: Agg,
    pub ctype: Agg,
    pub negatives: bool,
    pub bounds: BoundKind,
    pub ub_trivial: bool,
    pub per_cluster_weights: bool,
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    None,
    NonDecreasing,
    Arbitrary,
}

pub fn random_cluster_instance(
    r: &mut ChaCha8Rng,
    n: usize,
    opts: &ClusterGenOpts,
) -> ClusterInstance {
    let t = r.random_range(1..=3usize);
    let k = if r.random_bool(0.6) {
        Some(r.random_range(1..=n.min(5)))
    } else {
        None
    };
    let mut x = Vec::with_capacity(n);
    let mut cur = 0.0f64;
    for _ in 0..n {
        cur += r.random_range(0..=3) as f64;
        x.push(cur);
    }
    let f = r.random_range(0..=4) as f64;
    let lo = if opts.negatives { -5 } else { 0 };
    let weights = if opts.per_cluster_weights && k.is_some() {
        let k = k.unwrap();
        Weights::PerCluster(
            (0..n)
                .map(|_| {
                    (0..k)
                        .map(|_| (0..t).map(|_| r.random_range(lo..=9) as f64).collect())
                        .collect()
                })
                .collect(),
        )
    } else {
        Weights::PerPoint(
            (0..n)
                .map(|_| (0..t).map(|_| r.random_range(lo..=9) as f64).collect())
                .collect(),
        )
    };
    let inst = ClusterInstance::new(x, weights, opts.objf, vec![opts.ctype; t], k, f).unwrap();
    match opts.bounds {
        BoundKind::None => inst,
        kind => {
            let js = k.unwrap_or(1);
            let per_cluster = k.is_some();
            let mut lb = vec![0i64; n * js * t];
            let mut ub = vec![0i64; n * js * t];
            for j in 0..js {
                for tc in 0..t {
                    let mut prev_lb = 0i64;
                    let mut prev_ub = 0i64;
                    for i in 0..n {
                        let slot = i * js * t + j * t + tc;
                        let (l, u) = match kind {
                            BoundKind::NonDecreasing => {
                                let l = r.random_range(prev_lb..=i as i64);
                                let u = if opts.ub_trivial {
                                    i as i64
                                } else {
                                    r.random_range(prev_ub.max(l)..=i as i64)
                                };
                                prev_lb = l;
                                prev_ub = u;
                                (l, u)
                            }
                            BoundKind::Arbitrary => {
                                let l = r.random_range(0..=i as i64);
                                let u = if opts.ub_trivial {
                                    i as i64
                                } else {
                                    r.random_range(l..=i as i64)
                                };
                                (l, u)
                            }
                            BoundKind::None => unreachable!(),
                        };
                        lb[slot] = l;
                        ub[slot] = u;
                    }
                }
            }
            let wrap = |data: Vec<i64>| {
                if per_cluster {
                    let k = js;
                    BoundTable::per_cluster(n, k, t, |i, j, tc| data[i * k * t + j * t + tc])
                } else {
                    BoundTable::per_point(n, t, |i, tc| data[i * t + tc])
                }
            };
            inst.with_bounds(wrap(lb), wrap(ub)).unwrap()
        }
    }
}

pub fn random_lineset(r: &mut rand_chacha::ChaCha8Rng, n: usize) -> LineSet {
    let points = (0..n)
        .map(|_| MovingPoint {
            start: ratio(r.random_range(-30..=30), 1),
            velocity: ratio(r.random_range(-4..=4), 1),
        })
        .collect();
    let length = ratio(r.random_range(1..=12), 1);
    let budget = r.random_range(1..=n.max(1));
    LineSet::new(points, length, budget).unwrap()
}
