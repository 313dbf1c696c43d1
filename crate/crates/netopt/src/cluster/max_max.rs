//! objf = max, ctype = max: candidate-list bisection over point weights,
//! expiry deques with RMQ lookups, and range trees whose expired side feeds
//! an RMQ over the weight columns.

use super::instance::{Agg, ClusterInstance};
use super::max_sum::{all_integral, binary_preconditions};
use super::{run_pass, Cluster, ClusterError, ClusterSolution, Provenance, Source};
use crate::ds::{MonotoneDeque, RangeTree2d, SparseRmq};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaxMaxStrategy {
    /// Bisection over the sorted point weights plus the fixed cost; exact
    /// even for real weights. Needs unconstrained bounds and cluster-index
    /// independent weights.
    BinarySearchSorted,
    /// Monotone expiry pointers with an RMQ for the new-cluster side; needs
    /// non-decreasing bounds.
    PointerRmq,
    /// Range trees carrying start indices as weights, combined with RMQ;
    /// arbitrary bounds.
    RangeTreesRmq,
}

pub fn cluster_max_max(
    inst: &ClusterInstance,
    strategy: MaxMaxStrategy,
) -> Result<Option<ClusterSolution>, ClusterError> {
    if inst.objf() != Agg::Max || inst.uniform_ctype() != Some(Agg::Max) {
        return Err(ClusterError::Precondition {
            strategy: "max_max",
            requirement: "objf = max and a uniform ctype = max",
        });
    }
    if inst.any_negative_weight() {
        return Err(ClusterError::Precondition {
            strategy: "max_max",
            requirement: "non-negative weights",
        });
    }
    match strategy {
        MaxMaxStrategy::BinarySearchSorted => binary_search_sorted(inst),
        MaxMaxStrategy::PointerRmq => {
            if !inst.bounds_non_decreasing() {
                return Err(ClusterError::Precondition {
                    strategy: "pointer_rmq",
                    requirement: "non-decreasing l and u bounds",
                });
            }
            Ok(run_pass(inst, pass_pointer_rmq))
        }
        MaxMaxStrategy::RangeTreesRmq => Ok(run_pass(inst, pass_range_trees_rmq)),
    }
}

// ---------------------------------------------------------------------------
// Candidate-list bisection
// ---------------------------------------------------------------------------

fn greedy_max(inst: &ClusterInstance, cap: f64) -> Option<Vec<(usize, usize)>> {
    let n = inst.n();
    let t = inst.num_types();
    let mut tmax = vec![f64::NEG_INFINITY; t];
    let mut clusters: Vec<(usize, usize)> = vec![(0, 0)];
    for i in 0..n {
        for tc in 0..t {
            tmax[tc] = tmax[tc].max(inst.weight(i, 0, tc));
        }
        if (0..t).all(|tc| tmax[tc] > cap) {
            if (0..t).all(|tc| inst.weight(i, 0, tc) > cap) {
                return None;
            }
            for tc in 0..t {
                tmax[tc] = inst.weight(i, 0, tc);
            }
            clusters.push((i, 0));
        }
        let best = (0..t)
            .min_by(|&a, &b| tmax[a].partial_cmp(&tmax[b]).unwrap())
            .unwrap();
        clusters.last_mut().unwrap().1 = best;
    }
    Some(clusters)
}

fn binary_search_sorted(inst: &ClusterInstance) -> Result<Option<ClusterSolution>, ClusterError> {
    binary_preconditions(inst, "binary_search_sorted")?;
    let n = inst.n();
    let t = inst.num_types();
    let k_eff = match inst.k() {
        Some(k) if k > n => return Ok(None),
        Some(k) => k,
        None => n,
    };
    let f = inst.fixed_cost();
    // The optimum is some point weight plus the fixed cost.
    let mut candidates: Vec<f64> = (0..n)
        .flat_map(|i| (0..t).map(move |tc| inst.weight(i, 0, tc) + f))
        .collect();
    candidates.sort_by(|a, b| a.partial_cmp(b).unwrap());
    candidates.dedup();
    let feasible = |value: f64| match greedy_max(inst, value - f) {
        Some(clusters) => clusters.len() <= k_eff,
        None => false,
    };
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    debug_assert!(feasible(candidates[hi]));
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let value_cap = candidates[lo];
    let breaks = greedy_max(inst, value_cap - f).expect("feasible candidate");
    let mut clusters: Vec<Cluster> = Vec::with_capacity(breaks.len());
    for (idx, &(start, tc)) in breaks.iter().enumerate() {
        let end = breaks.get(idx + 1).map_or(n - 1, |&(s, _)| s - 1);
        clusters.push(Cluster { start, end, tc });
    }
    if inst.k().is_some() {
        let mut i = clusters.len();
        while clusters.len() < k_eff {
            i = if i == 0 { clusters.len() } else { i };
            i -= 1;
            if clusters[i].end > clusters[i].start {
                let last = clusters[i].end;
                clusters[i].end = last - 1;
                let tc = (0..t)
                    .min_by(|&a, &b| {
                        inst.weight(last, 0, a)
                            .partial_cmp(&inst.weight(last, 0, b))
                            .unwrap()
                    })
                    .unwrap();
                clusters.insert(
                    i + 1,
                    Cluster {
                        start: last,
                        end: last,
                        tc,
                    },
                );
            }
        }
        for c in clusters.iter_mut() {
            c.tc = (0..t)
                .min_by(|&a, &b| {
                    let m = |tc: usize| -> f64 {
                        (c.start..=c.end)
                            .map(|i| inst.weight(i, 0, tc))
                            .fold(f64::NEG_INFINITY, f64::max)
                    };
                    m(a).partial_cmp(&m(b)).unwrap()
                })
                .unwrap();
        }
    }
    let value = super::evaluate_solution(inst, &clusters);
    debug_assert_eq!(value, value_cap);
    let _ = all_integral(inst); // candidate bisection is exact either way
    Ok(Some(ClusterSolution {
        value,
        clusters,
        approx: None,
    }))
}

// ---------------------------------------------------------------------------
// Pointer + RMQ pass
// ---------------------------------------------------------------------------

/// Largest prefix `g` such that the cluster `[s, g-1]` has weight-max at
/// most `read(s) - F`, advancing a shared monotone pointer. A regressed
/// entry (possible when weights vary with the cluster index) falls back to
/// bisection and leaves the pointer in place.
fn advance_limit_max(
    ptr: &mut i64,
    rmq: &SparseRmq,
    s: usize,
    source_val: f64,
    f: f64,
    n: usize,
) -> i64 {
    if source_val == f64::INFINITY {
        return n as i64;
    }
    let cap = source_val - f;
    let g = (*ptr).max(s as i64);
    if g > s as i64 && rmq.max(s, (g - 1) as usize) > cap {
        return limit_by_bisection_max(rmq, s, source_val, f, n);
    }
    let mut g = g;
    while g + 1 <= n as i64 && rmq.max(s, g as usize) <= cap {
        g += 1;
    }
    *ptr = g;
    g
}

fn pass_pointer_rmq(
    inst: &ClusterInstance,
    j: usize,
    source: &Source,
    row: &mut [f64],
    prov: &mut Provenance,
) {
    let n = inst.n();
    let t = inst.num_types();
    let f = inst.fixed_cost();
    let rmq: Vec<SparseRmq> = (0..t)
        .map(|tc| SparseRmq::build(&(0..n).map(|i| inst.weight(i, j, tc)).collect::<Vec<_>>()))
        .collect();
    let mut main: Vec<MonotoneDeque<i64>> = (0..t).map(|_| MonotoneDeque::new()).collect();
    // Largest expired start per type; expiry order follows the start order.
    let mut smax: Vec<i64> = vec![-1; t];
    let mut inserted: Vec<i64> = vec![-1; t];
    let mut limit_ptr: Vec<i64> = vec![-1; t];
    for e in 1..=n {
        let q = e - 1;
        let mut best = f64::INFINITY;
        let mut best_at = None;
        for tc in 0..t {
            let hi = inst.ub(q, j, tc);
            while inserted[tc] < hi {
                let s = (inserted[tc] + 1) as usize;
                let val = source.read(row, s);
                let limit = advance_limit_max(&mut limit_ptr[tc], &rmq[tc], s, val, f, n);
                main[tc].push_evict_equal(s, val, limit);
                inserted[tc] += 1;
            }
            let lb = inst.lb(q, j, tc).max(0) as usize;
            main[tc].evict_below(lb);
            for entry in main[tc].evict_front_while(|en| en.extra < e as i64) {
                smax[tc] = smax[tc].max(entry.index as i64);
            }
            if let Some(front) = main[tc].front() {
                if front.value < best {
                    best = front.value;
                    best_at = Some((front.index as u32, tc as u8));
                }
            }
            if smax[tc] >= lb as i64 {
                let s = smax[tc] as usize;
                let cand = f + rmq[tc].max(s, q);
                if cand < best {
                    best = cand;
                    best_at = Some((s as u32, tc as u8));
                }
            }
        }
        if best < row[e] {
            row[e] = best;
            prov[e] = best_at;
        }
    }
}

// ---------------------------------------------------------------------------
// Range trees + RMQ pass
// ---------------------------------------------------------------------------

fn limit_by_bisection_max(rmq: &SparseRmq, s: usize, source_val: f64, f: f64, n: usize) -> i64 {
    if source_val == f64::INFINITY {
        return n as i64;
    }
    let cap = source_val - f;
    let (mut lo, mut hi) = (s as i64, n as i64);
    while lo < hi {
        let mid = (lo + hi + 1) / 2;
        if rmq.max(s, (mid - 1) as usize) <= cap {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

fn pass_range_trees_rmq(
    inst: &ClusterInstance,
    j: usize,
    source: &Source,
    row: &mut [f64],
    prov: &mut Provenance,
) {
    let n = inst.n();
    let t = inst.num_types();
    let f = inst.fixed_cost();
    let rmq: Vec<SparseRmq> = (0..t)
        .map(|tc| SparseRmq::build(&(0..n).map(|i| inst.weight(i, j, tc)).collect::<Vec<_>>()))
        .collect();
    let mut tree_a: Vec<RangeTree2d<f64>> = (0..t).map(|_| RangeTree2d::new(n + 1)).collect();
    let mut tree_b: Vec<RangeTree2d<f64>> = (0..t).map(|_| RangeTree2d::new(n + 1)).collect();
    for tc in 0..t {
        for s in 0..=n {
            tree_a[tc].insert(s, i64::MIN, f64::INFINITY, s as u32);
            tree_b[tc].insert(s, i64::MIN, f64::NEG_INFINITY, s as u32);
        }
    }
    let mut inserted: Vec<i64> = vec![-1; t];
    for e in 1..=n {
        let q = e - 1;
        let mut best = f64::INFINITY;
        let mut best_at = None;
        for tc in 0..t {
            let hi = inst.ub(q, j, tc);
            while inserted[tc] < hi {
                let s = (inserted[tc] + 1) as usize;
                let val = source.read(row, s);
                let limit = limit_by_bisection_max(&rmq[tc], s, val, f, n);
                tree_a[tc].delete(s, i64::MIN);
                tree_b[tc].delete(s, i64::MIN);
                tree_a[tc].insert(s, limit, val, s as u32);
                // The expired side only needs the start index back.
                tree_b[tc].insert(s, limit, s as f64, s as u32);
                inserted[tc] += 1;
            }
            let lb = inst.lb(q, j, tc);
            let ub = inst.ub(q, j, tc);
            if ub < lb || ub < 0 {
                continue;
            }
            let (lb, ub) = (lb as usize, ub as usize);
            if let Some((val, s)) = tree_a[tc].find_min_entry(lb, e as i64, ub, i64::MAX) {
                if val < best {
                    best = val;
                    best_at = Some((s, tc as u8));
                }
            }
            if let Some((sw, _)) = tree_b[tc].find_max_entry(lb, i64::MIN, ub, e as i64 - 1) {
                if sw >= 0.0 {
                    let s = sw as usize;
                    let cand = f + rmq[tc].max(s, q);
                    if cand < best {
                        best = cand;
                        best_at = Some((s as u32, tc as u8));
                    }
                }
            }
        }
        if best < row[e] {
            row[e] = best;
            prov[e] = best_at;
        }
    }
}
