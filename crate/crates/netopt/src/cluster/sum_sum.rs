//! objf = sum, ctype = sum: prefix-sum decompositions of the DP transition.
//! Negative weights are fine for every strategy here.

use super::instance::{Agg, ClusterInstance};
use super::{run_pass, ClusterError, ClusterSolution, Provenance, Source};
use crate::ds::{Aggregate, IndexedHeap, MonotoneDeque, SegTreeAddMinMax};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumSumStrategy {
    /// Running prefix-minimum table; needs unconstrained starts (`l = 1`).
    DTable,
    /// Segment tree over the shifted row; handles arbitrary bounds.
    ETableSegtree,
    /// Monotone deques; needs non-decreasing bounds.
    Deque,
    /// Index + value heap pair; needs non-decreasing bounds.
    Heaps,
}

pub fn cluster_sum_sum(
    inst: &ClusterInstance,
    strategy: SumSumStrategy,
) -> Result<Option<ClusterSolution>, ClusterError> {
    if inst.objf() != Agg::Sum || inst.uniform_ctype() != Some(Agg::Sum) {
        return Err(ClusterError::Precondition {
            strategy: "sum_sum",
            requirement: "objf = sum and a uniform ctype = sum",
        });
    }
    match strategy {
        SumSumStrategy::DTable => {
            if !inst.lb_trivial() {
                return Err(ClusterError::Precondition {
                    strategy: "d_table",
                    requirement: "unconstrained lower bounds (l = 1 everywhere)",
                });
            }
            Ok(run_pass(inst, pass_dtable))
        }
        SumSumStrategy::ETableSegtree => Ok(run_pass(inst, pass_etable)),
        SumSumStrategy::Deque => {
            if !inst.bounds_non_decreasing() {
                return Err(ClusterError::Precondition {
                    strategy: "deque",
                    requirement: "non-decreasing l and u bounds",
                });
            }
            Ok(run_pass(inst, pass_deque))
        }
        SumSumStrategy::Heaps => {
            if !inst.bounds_non_decreasing() {
                return Err(ClusterError::Precondition {
                    strategy: "heaps",
                    requirement: "non-decreasing l and u bounds",
                });
            }
            Ok(run_pass(inst, pass_heaps))
        }
    }
}

fn pass_dtable(
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
    // d[tc][p] = (min over prefixes 0..=p of read(.) - wp(.), argmin prefix)
    let mut d: Vec<Vec<(f64, u32)>> = vec![Vec::with_capacity(n); t];
    let mut filled = 0usize;
    for e in 1..=n {
        let q = e - 1;
        while filled <= q {
            for tc in 0..t {
                let v = source.read(row, filled) - wp[tc][filled];
                let entry = match d[tc].last() {
                    Some(&prev) if prev.0 <= v => prev,
                    _ => (v, filled as u32),
                };
                d[tc].push(entry);
            }
            filled += 1;
        }
        let mut best = f64::INFINITY;
        let mut best_at = None;
        for tc in 0..t {
            let ub = inst.ub(q, j, tc);
            if ub < 0 {
                continue;
            }
            let (dv, darg) = d[tc][ub as usize];
            let cand = dv + wp[tc][e] + f;
            if cand < best {
                best = cand;
                best_at = Some((darg, tc as u8));
            }
        }
        if best < row[e] {
            row[e] = best;
            prov[e] = best_at;
        }
    }
}

fn pass_etable(
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
    let mut trees: Vec<SegTreeAddMinMax<f64>> = (0..t)
        .map(|_| SegTreeAddMinMax::new(n + 1, f64::INFINITY, Aggregate::Min))
        .collect();
    for e in 1..=n {
        let q = e - 1;
        for tc in 0..t {
            trees[tc].point_set(q, source.read(row, q) - wp[tc][q]);
        }
        let mut best = f64::INFINITY;
        let mut best_at = None;
        for tc in 0..t {
            let lb = inst.lb(q, j, tc);
            let ub = inst.ub(q, j, tc);
            if ub < lb || ub < 0 {
                continue;
            }
            let (val, arg) = trees[tc].query_arg(lb as usize, ub as usize);
            let cand = val + wp[tc][e] + f;
            if cand < best {
                best = cand;
                best_at = Some((arg as u32, tc as u8));
            }
        }
        if best < row[e] {
            row[e] = best;
            prov[e] = best_at;
        }
    }
}

fn pass_deque(
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
    let mut deques: Vec<MonotoneDeque> = (0..t).map(|_| MonotoneDeque::new()).collect();
    let mut inserted: Vec<i64> = vec![-1; t];
    for e in 1..=n {
        let q = e - 1;
        let mut best = f64::INFINITY;
        let mut best_at = None;
        for tc in 0..t {
            let hi = inst.ub(q, j, tc);
            while inserted[tc] < hi {
                let s = (inserted[tc] + 1) as usize;
                deques[tc].push(s, source.read(row, s) - wp[tc][s], ());
                inserted[tc] += 1;
            }
            deques[tc].evict_below(inst.lb(q, j, tc).max(0) as usize);
            if let Some(front) = deques[tc].front() {
                let cand = front.value + wp[tc][e] + f;
                if cand < best {
                    best = cand;
                    best_at = Some((front.index as u32, tc as u8));
                }
            }
        }
        if best < row[e] {
            row[e] = best;
            prov[e] = best_at;
        }
    }
}

fn pass_heaps(
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
    let mut h_val: Vec<IndexedHeap<f64>> = (0..t).map(|_| IndexedHeap::new(n + 1)).collect();
    let mut h_idx: Vec<IndexedHeap<usize>> = (0..t).map(|_| IndexedHeap::new(n + 1)).collect();
    let mut inserted: Vec<i64> = vec![-1; t];
    for e in 1..=n {
        let q = e - 1;
        let mut best = f64::INFINITY;
        let mut best_at = None;
        for tc in 0..t {
            let hi = inst.ub(q, j, tc);
            while inserted[tc] < hi {
                let s = (inserted[tc] + 1) as usize;
                h_val[tc].insert(s, source.read(row, s) - wp[tc][s]);
                h_idx[tc].insert(s, s);
                inserted[tc] += 1;
            }
            let lb = inst.lb(q, j, tc).max(0) as usize;
            while let Some((s, _)) = h_idx[tc].peek_min() {
                if s < lb {
                    h_idx[tc].remove(s);
                    h_val[tc].remove(s);
                } else {
                    break;
                }
            }
            if let Some((s, val)) = h_val[tc].peek_min() {
                let cand = val + wp[tc][e] + f;
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
