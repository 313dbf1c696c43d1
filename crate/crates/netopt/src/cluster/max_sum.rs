//! objf = max, ctype = sum: binary search on the answer, a two-pointer
//! expiry-limit deque split into "previous cluster dominates" and "new
//! cluster dominates" sides, and 2D range trees for arbitrary bounds.

use super::instance::{Agg, ClusterInstance};
use super::{run_pass, Cluster, ClusterError, ClusterSolution, Provenance, Source};
use crate::ds::{MonotoneDeque, RangeTree2d};
use std::collections::VecDeque;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaxSumStrategy {
    /// Feasibility bisection on the objective value. Exact for integer data,
    /// epsilon-accurate otherwise; needs unconstrained bounds and weights
    /// that do not depend on the cluster index.
    BinarySearch,
    /// Monotone expiry pointers with deques; needs non-decreasing bounds.
    PointerDeque,
    /// Range trees with dummy-point replacement; arbitrary bounds.
    RangeTrees,
}

pub fn cluster_max_sum(
    inst: &ClusterInstance,
    strategy: MaxSumStrategy,
) -> Result<Option<ClusterSolution>, ClusterError> {
    if inst.objf() != Agg::Max || inst.uniform_ctype() != Some(Agg::Sum) {
        return Err(ClusterError::Precondition {
            strategy: "max_sum",
            requirement: "objf = max and a uniform ctype = sum",
        });
    }
    if inst.any_negative_weight() {
        return Err(ClusterError::Precondition {
            strategy: "max_sum",
            requirement: "non-negative weights",
        });
    }
    match strategy {
        MaxSumStrategy::BinarySearch => binary_search(inst),
        MaxSumStrategy::PointerDeque => {
            if !inst.bounds_non_decreasing() {
                return Err(ClusterError::Precondition {
                    strategy: "pointer_deque",
                    requirement: "non-decreasing l and u bounds",
                });
            }
            Ok(run_pass(inst, pass_pointer_deque))
        }
        MaxSumStrategy::RangeTrees => Ok(run_pass(inst, pass_range_trees)),
    }
}

// ---------------------------------------------------------------------------
// Binary search on the objective value
// ---------------------------------------------------------------------------

pub(crate) fn binary_preconditions(
    inst: &ClusterInstance,
    strategy: &'static str,
) -> Result<(), ClusterError> {
    if !inst.lb_trivial() || !inst.ub_trivial() {
        return Err(ClusterError::Precondition {
            strategy,
            requirement: "unconstrained bounds (l = 1 and u = i everywhere)",
        });
    }
    if !inst.weights_equal_across_clusters() {
        return Err(ClusterError::Precondition {
            strategy,
            requirement: "weights independent of the cluster index",
        });
    }
    Ok(())
}

pub(crate) fn all_integral(inst: &ClusterInstance) -> bool {
    let t = inst.num_types();
    inst.fixed_cost().fract() == 0.0
        && (0..inst.n()).all(|i| (0..t).all(|tc| inst.weight(i, 0, tc).fract() == 0.0))
}

/// Greedy minimum cluster count with per-cluster capacity `cap` on the
/// chosen type's sum. Returns the breaks (start, type) or `None` when some
/// point fits no type alone.
fn greedy_sum(inst: &ClusterInstance, cap: f64) -> Option<Vec<(usize, usize)>> {
    let n = inst.n();
    let t = inst.num_types();
    let mut tsum = vec![0.0f64; t];
    let mut clusters: Vec<(usize, usize)> = vec![(0, 0)];
    for i in 0..n {
        for tc in 0..t {
            tsum[tc] += inst.weight(i, 0, tc);
        }
        if (0..t).all(|tc| tsum[tc] > cap) {
            if (0..t).all(|tc| inst.weight(i, 0, tc) > cap) {
                return None;
            }
            for tc in 0..t {
                tsum[tc] = inst.weight(i, 0, tc);
            }
            clusters.push((i, 0));
        }
        // Track the currently cheapest type for the open cluster.
        let best = (0..t)
            .min_by(|&a, &b| tsum[a].partial_cmp(&tsum[b]).unwrap())
            .unwrap();
        clusters.last_mut().unwrap().1 = best;
    }
    Some(clusters)
}

fn feasible_sum(inst: &ClusterInstance, cap: f64, k: usize) -> bool {
    match greedy_sum(inst, cap) {
        Some(clusters) => clusters.len() <= k,
        None => false,
    }
}

/// Splits the greedy partition into exactly `k` clusters (splitting never
/// raises a cluster cost) and assigns each cluster its cheapest type.
fn reconstruct_greedy(inst: &ClusterInstance, cap: f64, k: Option<usize>) -> Vec<Cluster> {
    let n = inst.n();
    let t = inst.num_types();
    let breaks = greedy_sum(inst, cap).expect("reconstruction at a feasible value");
    let mut clusters: Vec<Cluster> = Vec::with_capacity(breaks.len());
    for (idx, &(start, tc)) in breaks.iter().enumerate() {
        let end = breaks.get(idx + 1).map_or(n - 1, |&(s, _)| s - 1);
        clusters.push(Cluster { start, end, tc });
    }
    if let Some(k) = k {
        let mut i = clusters.len();
        while clusters.len() < k {
            // Walk backwards splitting singletons off multi-point clusters.
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
        debug_assert_eq!(clusters.len(), k);
        // Re-pick each cluster's cheapest type after the splits.
        for c in clusters.iter_mut() {
            c.tc = (0..t)
                .min_by(|&a, &b| {
                    let sum = |tc: usize| -> f64 {
                        (c.start..=c.end).map(|i| inst.weight(i, 0, tc)).sum()
                    };
                    sum(a).partial_cmp(&sum(b)).unwrap()
                })
                .unwrap();
        }
    }
    clusters
}

fn binary_search(inst: &ClusterInstance) -> Result<Option<ClusterSolution>, ClusterError> {
    binary_preconditions(inst, "binary_search")?;
    let n = inst.n();
    let t = inst.num_types();
    let k_eff = match inst.k() {
        Some(k) if k > n => return Ok(None),
        Some(k) => k,
        None => n,
    };
    let f = inst.fixed_cost();
    // Value bounds: every point's cheapest weight forces the low end; a
    // single cluster with the cheapest total is always achievable.
    let lo0 = (0..n)
        .map(|i| {
            (0..t)
                .map(|tc| inst.weight(i, 0, tc))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0f64, f64::max)
        + f;
    let hi0 = (0..t)
        .map(|tc| (0..n).map(|i| inst.weight(i, 0, tc)).sum::<f64>())
        .fold(f64::INFINITY, f64::min)
        + f;
    let (value_cap, approx) = if all_integral(inst) {
        let (mut lo, mut hi) = (lo0 as i64, hi0 as i64);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if feasible_sum(inst, mid as f64 - f, k_eff) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        (lo as f64, None)
    } else {
        let eps = 1e-9 * hi0.abs().max(1.0);
        let (mut lo, mut hi) = (lo0 - eps, hi0);
        while hi - lo > eps {
            let mid = lo + (hi - lo) / 2.0;
            if feasible_sum(inst, mid - f, k_eff) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (hi, Some(eps))
    };
    let clusters = reconstruct_greedy(inst, value_cap - f, inst.k().map(|_| k_eff));
    let value = super::evaluate_solution(inst, &clusters);
    debug_assert!(approx.is_some() || value == value_cap);
    Ok(Some(ClusterSolution {
        value,
        clusters,
        approx,
    }))
}

// ---------------------------------------------------------------------------
// Pointer + deque pass
// ---------------------------------------------------------------------------

/// Largest prefix `g >= s` with `wp[g] <= wp[s] + read(s) - F`, advancing a
/// shared monotone pointer; `s as i64 - 1` when even the empty cluster
/// overruns, `n` when the source value is infinite. DP rows can regress when
/// weights vary with the cluster index; a regressed entry falls back to
/// bisection and leaves the pointer where it was.
fn advance_limit(ptr: &mut i64, wp: &[f64], s: usize, source_val: f64, f: f64, n: usize) -> i64 {
    if source_val == f64::INFINITY {
        return n as i64;
    }
    let cap = wp[s] + source_val - f;
    let g = (*ptr).max(s as i64 - 1);
    if g >= s as i64 && wp[g as usize] > cap {
        return limit_by_bisection(wp, s, source_val, f, n);
    }
    let mut g = g;
    while g + 1 <= n as i64 && wp[(g + 1) as usize] <= cap {
        g += 1;
    }
    *ptr = g;
    g
}

fn pass_pointer_deque(
    inst: &ClusterInstance,
    j: usize,
    source: &Source,
    row: &mut [f64],
    prov: &mut Provenance,
) {
    let n = inst.n();
    let t = inst.num_types();
    let f = inst.fixed_cost();
    let wp = inst.prefix_sums(j);
    // Alive side: previous cost still dominates any cluster ending here.
    let mut main: Vec<MonotoneDeque<i64>> = (0..t).map(|_| MonotoneDeque::new()).collect();
    // Expired side: (start, wp[start]) max-deque per type.
    let mut smax: Vec<VecDeque<(usize, f64)>> = (0..t).map(|_| VecDeque::new()).collect();
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
                let limit = advance_limit(&mut limit_ptr[tc], &wp[tc], s, val, f, n);
                main[tc].push_evict_equal(s, val, limit);
                inserted[tc] += 1;
            }
            let lb = inst.lb(q, j, tc).max(0) as usize;
            // Out-of-window starts leave both sides without a trace.
            main[tc].evict_below(lb);
            while smax[tc].front().is_some_and(|&(s, _)| s < lb) {
                smax[tc].pop_front();
            }
            // Expired starts move to the max-side: their cluster sum now
            // exceeds the previous cost.
            for entry in main[tc].evict_front_while(|en| en.extra < e as i64) {
                let s = entry.index;
                let w = wp[tc][s];
                while smax[tc].back().is_some_and(|&(_, v)| v <= w) {
                    smax[tc].pop_back();
                }
                smax[tc].push_back((s, w));
            }
            if let Some(front) = main[tc].front() {
                if front.value < best {
                    best = front.value;
                    best_at = Some((front.index as u32, tc as u8));
                }
            }
            if let Some(&(s, w)) = smax[tc].front() {
                let cand = f + wp[tc][e] - w;
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
// Range-tree pass
// ---------------------------------------------------------------------------

/// Largest prefix `g >= s - 1` with `wp[g] <= cap` by bisection (prefix sums
/// are non-decreasing regardless of the bound arrays).
fn limit_by_bisection(wp: &[f64], s: usize, source_val: f64, f: f64, n: usize) -> i64 {
    if source_val == f64::INFINITY {
        return n as i64;
    }
    let cap = wp[s] + source_val - f;
    let (mut lo, mut hi) = (s as i64 - 1, n as i64);
    while lo < hi {
        let mid = (lo + hi + 1) / 2;
        if wp[mid as usize] <= cap {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

fn pass_range_trees(
    inst: &ClusterInstance,
    j: usize,
    source: &Source,
    row: &mut [f64],
    prov: &mut Provenance,
) {
    let n = inst.n();
    let t = inst.num_types();
    let f = inst.fixed_cost();
    let wp = inst.prefix_sums(j);
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
                let limit = limit_by_bisection(&wp[tc], s, val, f, n);
                tree_a[tc].delete(s, i64::MIN);
                tree_b[tc].delete(s, i64::MIN);
                tree_a[tc].insert(s, limit, val, s as u32);
                tree_b[tc].insert(s, limit, wp[tc][s], s as u32);
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
            if let Some((w, s)) = tree_b[tc].find_max_entry(lb, i64::MIN, ub, e as i64 - 1) {
                if w != f64::NEG_INFINITY {
                    let cand = f + wp[tc][e] - w;
                    if cand < best {
                        best = cand;
                        best_at = Some((s, tc as u8));
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
