//! objf = sum, ctype = max, with full mandatory coverage (`u(i) = i`):
//! suffix-maximum segment stacks, or deques plus a keyed min-heap when the
//! lower bounds move.

use super::instance::{Agg, ClusterInstance};
use super::{run_pass, ClusterError, ClusterSolution, Provenance, Source};
use crate::ds::{Aggregate, IndexedHeap, SegTreeAddMinMax};
use std::collections::VecDeque;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumMaxStrategy {
    /// Suffix-max segment stacks; needs unconstrained lower bounds.
    Stacks,
    /// Deques with a keyed min-heap across all types; needs non-decreasing
    /// lower bounds.
    DequeHeap,
}

pub fn cluster_sum_max(
    inst: &ClusterInstance,
    strategy: SumMaxStrategy,
) -> Result<Option<ClusterSolution>, ClusterError> {
    if inst.objf() != Agg::Sum || inst.uniform_ctype() != Some(Agg::Max) {
        return Err(ClusterError::Precondition {
            strategy: "sum_max",
            requirement: "objf = sum and a uniform ctype = max",
        });
    }
    if !inst.ub_trivial() {
        return Err(ClusterError::Precondition {
            strategy: "sum_max",
            requirement: "full mandatory coverage (u(i) = i everywhere)",
        });
    }
    if inst.any_negative_weight() {
        return Err(ClusterError::Precondition {
            strategy: "sum_max",
            requirement: "non-negative weights",
        });
    }
    match strategy {
        SumMaxStrategy::Stacks => {
            if !inst.lb_trivial() {
                return Err(ClusterError::Precondition {
                    strategy: "stacks",
                    requirement: "unconstrained lower bounds (l = 1 everywhere)",
                });
            }
            Ok(run_pass(inst, pass_stacks))
        }
        SumMaxStrategy::DequeHeap => {
            if !inst.bounds_non_decreasing() {
                return Err(ClusterError::Precondition {
                    strategy: "deque_heap",
                    requirement: "non-decreasing l bounds",
                });
            }
            Ok(run_pass(inst, pass_deque_heap))
        }
    }
}

#[derive(Clone, Copy)]
struct SegTuple {
    vmax: f64,
    // (value, argmin prefix) pairs.
    pcmin: (f64, u32),
    smin: (f64, u32),
}

fn pass_stacks(
    inst: &ClusterInstance,
    j: usize,
    source: &Source,
    row: &mut [f64],
    prov: &mut Provenance,
) {
    let n = inst.n();
    let t = inst.num_types();
    let f = inst.fixed_cost();
    let mut stacks: Vec<Vec<SegTuple>> = vec![Vec::new(); t];
    for e in 1..=n {
        let q = e - 1;
        let pc = source.read(row, q);
        let mut best = f64::INFINITY;
        let mut best_at = None;
        for tc in 0..t {
            let w = inst.weight(q, j, tc);
            let mut tu = SegTuple {
                vmax: w,
                pcmin: (pc, q as u32),
                smin: (w + pc, q as u32),
            };
            while let Some(top) = stacks[tc].last() {
                if top.vmax <= tu.vmax {
                    if top.pcmin.0 < tu.pcmin.0 {
                        tu.pcmin = top.pcmin;
                    }
                    stacks[tc].pop();
                } else {
                    break;
                }
            }
            tu.smin = (tu.vmax + tu.pcmin.0, tu.pcmin.1);
            if let Some(top) = stacks[tc].last() {
                if top.smin.0 < tu.smin.0 {
                    tu.smin = top.smin;
                }
            }
            stacks[tc].push(tu);
            let top = stacks[tc].last().unwrap();
            let cand = f + top.smin.0;
            if cand < best {
                best = cand;
                best_at = Some((top.smin.1, tc as u8));
            }
        }
        if best < row[e] {
            row[e] = best;
            prov[e] = best_at;
        }
    }
}

struct DequeTuple {
    /// Start point that created the tuple (segment upper end).
    index: usize,
    vmax: f64,
    pcmin: (f64, u32),
}

fn pass_deque_heap(
    inst: &ClusterInstance,
    j: usize,
    source: &Source,
    row: &mut [f64],
    prov: &mut Provenance,
) {
    let n = inst.n();
    let t = inst.num_types();
    let f = inst.fixed_cost();
    // All live tuples across all type deques sit in one min-heap keyed by
    // vmax + pcmin; slot = tc * (n + 1) + start.
    let mut heap: IndexedHeap<f64> = IndexedHeap::new(t * (n + 1));
    let mut arg_by_slot: Vec<u32> = vec![0; t * (n + 1)];
    let mut deques: Vec<VecDeque<DequeTuple>> = (0..t).map(|_| VecDeque::new()).collect();
    // Row values by prefix, for refreshing the front tuple's window minimum.
    let mut st = SegTreeAddMinMax::new(n + 1, f64::INFINITY, Aggregate::Min);
    let slot = |tc: usize, s: usize| tc * (n + 1) + s;
    for e in 1..=n {
        let q = e - 1;
        st.point_set(q, source.read(row, q));
        for tc in 0..t {
            let w = inst.weight(q, j, tc);
            let pc = source.read(row, q);
            let mut tu = DequeTuple {
                index: q,
                vmax: w,
                pcmin: (pc, q as u32),
            };
            while let Some(back) = deques[tc].back() {
                if back.vmax <= tu.vmax {
                    if back.pcmin.0 < tu.pcmin.0 {
                        tu.pcmin = back.pcmin;
                    }
                    heap.remove(slot(tc, back.index));
                    deques[tc].pop_back();
                } else {
                    break;
                }
            }
            let key = tu.vmax + tu.pcmin.0;
            arg_by_slot[slot(tc, tu.index)] = tu.pcmin.1;
            heap.insert(slot(tc, tu.index), key);
            deques[tc].push_back(tu);

            let lb = inst.lb(q, j, tc).max(0) as usize;
            while let Some(front) = deques[tc].front() {
                if front.index < lb {
                    heap.remove(slot(tc, front.index));
                    deques[tc].pop_front();
                } else {
                    break;
                }
            }
            if let Some(front) = deques[tc].front_mut() {
                // The front segment may straddle the window edge; recompute
                // its prefix minimum over [lb, front.index].
                let (val, arg) = st.query_arg(lb, front.index);
                front.pcmin = (val, arg as u32);
                arg_by_slot[slot(tc, front.index)] = arg as u32;
                heap.change_key(slot(tc, front.index), front.vmax + val);
            }
        }
        if let Some((id, key)) = heap.peek_min() {
            let cand = f + key;
            if cand < row[e] {
                row[e] = cand;
                prov[e] = Some((arg_by_slot[id], (id / (n + 1)) as u8));
            }
        }
    }
}
