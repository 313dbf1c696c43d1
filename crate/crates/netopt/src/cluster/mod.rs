//! Consecutive clustering of weighted points on a line.
//!
//! Points `0..n` (coordinates non-decreasing) are split into consecutive
//! clusters; each cluster is charged a fixed cost plus the best per-type
//! aggregate of its members' weights, and the objective aggregates cluster
//! costs by sum or max. Constraints are an optional exact cluster count and
//! per-representative start bounds.
//!
//! [`cluster_generic`] is the exact reference DP. The specializations
//! ([`cluster_sum_sum`], [`cluster_sum_max`], [`cluster_max_sum`],
//! [`cluster_max_max`]) implement the accelerated passes and must return the
//! same objective value whenever their preconditions hold.

mod generic;
mod instance;
mod max_max;
mod max_sum;
mod parse;
mod sum_max;
mod sum_sum;

pub use generic::{cluster_generic, cluster_generic_with};
pub use instance::{
    derive_bounds, derive_column_binary, derive_column_sweep, Agg, BoundTable, ClusterInstance,
    ImplicitBounds, Weights,
};
pub use max_max::{cluster_max_max, MaxMaxStrategy};
pub use max_sum::{cluster_max_sum, MaxSumStrategy};
pub use sum_max::{cluster_sum_max, SumMaxStrategy};
pub use sum_sum::{cluster_sum_sum, SumSumStrategy};

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClusterError {
    BadInstance(String),
    Precondition {
        strategy: &'static str,
        requirement: &'static str,
    },
    Parse {
        line: usize,
        message: String,
    },
}

impl fmt::Display for ClusterError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClusterError::BadInstance(msg) => write!(f, "bad instance: {msg}"),
            ClusterError::Precondition {
                strategy,
                requirement,
            } => write!(f, "strategy {strategy} requires {requirement}"),
            ClusterError::Parse { line, message } => write!(f, "line {line}: {message}"),
        }
    }
}

impl std::error::Error for ClusterError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cluster {
    /// First point (inclusive, zero-based).
    pub start: usize,
    /// Last point (inclusive).
    pub end: usize,
    /// Chosen type.
    pub tc: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterSolution {
    pub value: f64,
    pub clusters: Vec<Cluster>,
    /// `Some(eps)` when a real-weight binary search stopped at accuracy
    /// `eps`; `None` for exact results.
    pub approx: Option<f64>,
}

/// Recomputes the objective of a concrete partition, applying the violation
/// sentinel for any broken start bound. The independent check used by tests
/// and `--check`.
pub fn evaluate_solution(inst: &ClusterInstance, clusters: &[Cluster]) -> f64 {
    let mut value: Option<f64> = None;
    for (j, c) in clusters.iter().enumerate() {
        let jj = if inst.weights_per_cluster() { j } else { 0 };
        let mut agg: Option<f64> = None;
        for i in c.start..=c.end {
            let w = inst.weight(i, jj, c.tc);
            agg = Some(agg.map_or(w, |a| inst.ctype(c.tc).combine(a, w)));
        }
        let mut cc = agg.unwrap();
        let jb = if inst.k().is_some() { j } else { 0 };
        if (c.start as i64) < inst.lb(c.end, jb, c.tc)
            || (c.start as i64) > inst.ub(c.end, jb, c.tc)
        {
            cc = f64::INFINITY;
        }
        let cost = inst.fixed_cost() + cc;
        value = Some(value.map_or(cost, |v| inst.objf().combine(v, cost)));
    }
    value.unwrap_or(f64::INFINITY)
}

/// Checks that `clusters` is a consecutive partition of `0..n` with the
/// expected count.
pub fn partition_is_valid(inst: &ClusterInstance, clusters: &[Cluster]) -> bool {
    let mut next = 0usize;
    for c in clusters {
        if c.start != next || c.end < c.start || c.tc >= inst.num_types() {
            return false;
        }
        next = c.end + 1;
    }
    next == inst.n() && inst.k().is_none_or(|k| clusters.len() == k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClusterStrategy {
    Generic,
    SumSum(SumSumStrategy),
    SumMax(SumMaxStrategy),
    MaxSum(MaxSumStrategy),
    MaxMax(MaxMaxStrategy),
}

impl ClusterStrategy {
    pub const ALL: [ClusterStrategy; 13] = [
        ClusterStrategy::Generic,
        ClusterStrategy::SumSum(SumSumStrategy::DTable),
        ClusterStrategy::SumSum(SumSumStrategy::ETableSegtree),
        ClusterStrategy::SumSum(SumSumStrategy::Deque),
        ClusterStrategy::SumSum(SumSumStrategy::Heaps),
        ClusterStrategy::SumMax(SumMaxStrategy::Stacks),
        ClusterStrategy::SumMax(SumMaxStrategy::DequeHeap),
        ClusterStrategy::MaxSum(MaxSumStrategy::BinarySearch),
        ClusterStrategy::MaxSum(MaxSumStrategy::PointerDeque),
        ClusterStrategy::MaxSum(MaxSumStrategy::RangeTrees),
        ClusterStrategy::MaxMax(MaxMaxStrategy::BinarySearchSorted),
        ClusterStrategy::MaxMax(MaxMaxStrategy::PointerRmq),
        ClusterStrategy::MaxMax(MaxMaxStrategy::RangeTreesRmq),
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ClusterStrategy::Generic => "generic",
            ClusterStrategy::SumSum(SumSumStrategy::DTable) => "d_table",
            ClusterStrategy::SumSum(SumSumStrategy::ETableSegtree) => "e_table_segtree",
            ClusterStrategy::SumSum(SumSumStrategy::Deque) => "deque",
            ClusterStrategy::SumSum(SumSumStrategy::Heaps) => "heaps",
            ClusterStrategy::SumMax(SumMaxStrategy::Stacks) => "stacks",
            ClusterStrategy::SumMax(SumMaxStrategy::DequeHeap) => "deque_heap",
            ClusterStrategy::MaxSum(MaxSumStrategy::BinarySearch) => "binary_search",
            ClusterStrategy::MaxSum(MaxSumStrategy::PointerDeque) => "pointer_deque",
            ClusterStrategy::MaxSum(MaxSumStrategy::RangeTrees) => "range_trees",
            ClusterStrategy::MaxMax(MaxMaxStrategy::BinarySearchSorted) => "binary_search_sorted",
            ClusterStrategy::MaxMax(MaxMaxStrategy::PointerRmq) => "pointer_rmq",
            ClusterStrategy::MaxMax(MaxMaxStrategy::RangeTreesRmq) => "range_trees_rmq",
        }
    }

    pub fn from_name(s: &str) -> Option<ClusterStrategy> {
        Self::ALL.iter().copied().find(|st| st.name() == s)
    }

    pub fn names() -> Vec<&'static str> {
        Self::ALL.iter().map(|s| s.name()).collect()
    }
}

/// Dispatches to the named solver. `Ok(None)` means the instance is
/// infeasible (the objective stays infinite).
pub fn solve(
    inst: &ClusterInstance,
    strategy: ClusterStrategy,
) -> Result<Option<ClusterSolution>, ClusterError> {
    match strategy {
        ClusterStrategy::Generic => cluster_generic(inst),
        ClusterStrategy::SumSum(s) => cluster_sum_sum(inst, s),
        ClusterStrategy::SumMax(s) => cluster_sum_max(inst, s),
        ClusterStrategy::MaxSum(s) => cluster_max_sum(inst, s),
        ClusterStrategy::MaxMax(s) => cluster_max_max(inst, s),
    }
}

// ---------------------------------------------------------------------------
// Shared machinery for the accelerated passes
// ---------------------------------------------------------------------------

/// Where a phase reads the previous DP row: a finished row (fixed cluster
/// count) or the row under construction (free cluster count, where prefix
/// values are final by the time they are read).
pub(crate) enum Source<'a> {
    Prev(&'a [f64]),
    SelfRef,
}

impl Source<'_> {
    #[inline]
    pub(crate) fn read(&self, row: &[f64], s: usize) -> f64 {
        match self {
            Source::Prev(p) => p[s],
            Source::SelfRef => row[s],
        }
    }
}

pub(crate) type Provenance = Vec<Option<(u32, u8)>>;

/// Empty-prefix row: the base value is the identity of the objective
/// aggregate (0 for sum, -inf for max), so negative cluster costs survive.
pub(crate) fn base_row(n: usize, objf: Agg) -> Vec<f64> {
    let mut row = vec![f64::INFINITY; n + 1];
    row[0] = match objf {
        Agg::Sum => 0.0,
        Agg::Max => f64::NEG_INFINITY,
    };
    row
}

/// Runs a per-phase pass either k times over finished rows or once
/// self-referentially, then reconstructs the clusters from the provenance.
pub(crate) fn run_pass<F>(inst: &ClusterInstance, mut pass: F) -> Option<ClusterSolution>
where
    F: FnMut(&ClusterInstance, usize, &Source, &mut [f64], &mut Provenance),
{
    let n = inst.n();
    match inst.k() {
        Some(k) => {
            if k > n {
                return None;
            }
            let mut prev = base_row(n, inst.objf());
            let mut provs: Vec<Provenance> = Vec::with_capacity(k);
            for j in 0..k {
                let mut cur = vec![f64::INFINITY; n + 1];
                let mut prov: Provenance = vec![None; n + 1];
                pass(inst, j, &Source::Prev(&prev), &mut cur, &mut prov);
                provs.push(prov);
                prev = cur;
            }
            build_solution(inst, prev[n], |j, e| provs[j][e])
        }
        None => {
            let mut row = base_row(n, inst.objf());
            let mut prov: Provenance = vec![None; n + 1];
            pass(inst, 0, &Source::SelfRef, &mut row, &mut prov);
            build_solution_free(inst, row[n], &prov)
        }
    }
}

pub(crate) fn build_solution(
    inst: &ClusterInstance,
    value: f64,
    prov: impl Fn(usize, usize) -> Option<(u32, u8)>,
) -> Option<ClusterSolution> {
    if !value.is_finite() {
        return None;
    }
    let k = inst.k().expect("fixed cluster count");
    let mut clusters = Vec::with_capacity(k);
    let mut e = inst.n();
    for j in (0..k).rev() {
        let (s, tc) = prov(j, e).expect("finite value without provenance");
        clusters.push(Cluster {
            start: s as usize,
            end: e - 1,
            tc: tc as usize,
        });
        e = s as usize;
    }
    debug_assert_eq!(e, 0);
    clusters.reverse();
    Some(ClusterSolution {
        value,
        clusters,
        approx: None,
    })
}

pub(crate) fn build_solution_free(
    inst: &ClusterInstance,
    value: f64,
    prov: &Provenance,
) -> Option<ClusterSolution> {
    if !value.is_finite() {
        return None;
    }
    let mut clusters = Vec::new();
    let mut e = inst.n();
    while e > 0 {
        let (s, tc) = prov[e].expect("finite value without provenance");
        clusters.push(Cluster {
            start: s as usize,
            end: e - 1,
            tc: tc as usize,
        });
        e = s as usize;
    }
    clusters.reverse();
    Some(ClusterSolution {
        value,
        clusters,
        approx: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn per_point(
        x: Vec<f64>,
        w: Vec<Vec<f64>>,
        objf: Agg,
        ct: Agg,
        k: Option<usize>,
        f: f64,
    ) -> ClusterInstance {
        let t = w[0].len();
        ClusterInstance::new(x, Weights::PerPoint(w), objf, vec![ct; t], k, f).unwrap()
    }

    fn line(n: usize) -> Vec<f64> {
        (0..n).map(|i| i as f64).collect()
    }

    #[test]
    fn unconstrained_max_objf_prefers_singletons() {
        let w = vec![vec![4.0, 7.0], vec![6.0, 2.0], vec![5.0, 5.0]];
        let inst = per_point(line(3), w, Agg::Max, Agg::Sum, None, 1.0);
        let sol = cluster_generic(&inst).unwrap().unwrap();
        assert_eq!(sol.clusters.len(), 3);
        // F + max over i of the cheapest type weight.
        assert_eq!(sol.value, 1.0 + 5.0);
    }

    #[test]
    fn sum_sum_is_split_invariant() {
        let inst = per_point(
            line(3),
            vec![vec![1.0], vec![2.0], vec![3.0]],
            Agg::Sum,
            Agg::Sum,
            Some(2),
            1.0,
        );
        let sol = cluster_generic(&inst).unwrap().unwrap();
        assert_eq!(sol.value, 8.0);
        for s in [
            SumSumStrategy::DTable,
            SumSumStrategy::ETableSegtree,
            SumSumStrategy::Deque,
            SumSumStrategy::Heaps,
        ] {
            assert_eq!(cluster_sum_sum(&inst, s).unwrap().unwrap().value, 8.0);
        }
    }

    #[test]
    fn max_sum_two_clusters() {
        let inst = per_point(
            line(3),
            vec![vec![3.0], vec![1.0], vec![2.0]],
            Agg::Max,
            Agg::Sum,
            Some(2),
            0.0,
        );
        let sol = cluster_generic(&inst).unwrap().unwrap();
        assert_eq!(sol.value, 3.0);
        assert_eq!(sol.clusters[0].end, 0);
        for s in [
            MaxSumStrategy::BinarySearch,
            MaxSumStrategy::PointerDeque,
            MaxSumStrategy::RangeTrees,
        ] {
            assert_eq!(cluster_max_sum(&inst, s).unwrap().unwrap().value, 3.0);
        }
    }

    #[test]
    fn k_equals_n_forces_singletons() {
        let inst = per_point(
            line(4),
            vec![vec![2.0], vec![9.0], vec![4.0], vec![1.0]],
            Agg::Max,
            Agg::Sum,
            Some(4),
            3.0,
        );
        let sol = cluster_generic(&inst).unwrap().unwrap();
        assert_eq!(sol.value, 12.0);
    }

    #[test]
    fn sum_max_prefers_one_cluster_for_flat_weights() {
        let inst = per_point(line(5), vec![vec![2.0]; 5], Agg::Sum, Agg::Max, None, 1.0);
        for s in [SumMaxStrategy::Stacks, SumMaxStrategy::DequeHeap] {
            let sol = cluster_sum_max(&inst, s).unwrap().unwrap();
            assert_eq!(sol.value, 3.0);
            assert_eq!(sol.clusters.len(), 1);
        }
        let inst = per_point(
            line(3),
            vec![vec![5.0], vec![1.0], vec![1.0]],
            Agg::Sum,
            Agg::Max,
            None,
            0.0,
        );
        for s in [SumMaxStrategy::Stacks, SumMaxStrategy::DequeHeap] {
            assert_eq!(cluster_sum_max(&inst, s).unwrap().unwrap().value, 5.0);
        }
    }

    #[test]
    fn max_max_examples() {
        let inst = per_point(
            line(3),
            vec![vec![4.0, 2.0], vec![1.0, 9.0], vec![4.0, 3.0]],
            Agg::Max,
            Agg::Max,
            Some(1),
            2.0,
        );
        // k = 1: F plus the best per-type maximum.
        let sol = cluster_generic(&inst).unwrap().unwrap();
        assert_eq!(sol.value, 2.0 + 4.0);
        let inst = per_point(
            line(3),
            vec![vec![4.0], vec![1.0], vec![4.0]],
            Agg::Max,
            Agg::Max,
            Some(2),
            0.0,
        );
        for s in [
            MaxMaxStrategy::BinarySearchSorted,
            MaxMaxStrategy::PointerRmq,
            MaxMaxStrategy::RangeTreesRmq,
        ] {
            assert_eq!(cluster_max_max(&inst, s).unwrap().unwrap().value, 4.0);
        }
    }

    #[test]
    fn single_point_cluster() {
        let inst = per_point(
            vec![0.0],
            vec![vec![7.0, 3.0]],
            Agg::Sum,
            Agg::Sum,
            None,
            2.0,
        );
        for s in [
            SumSumStrategy::DTable,
            SumSumStrategy::ETableSegtree,
            SumSumStrategy::Deque,
            SumSumStrategy::Heaps,
        ] {
            let sol = cluster_sum_sum(&inst, s).unwrap().unwrap();
            assert_eq!(sol.value, 5.0);
            assert_eq!(
                sol.clusters,
                vec![Cluster {
                    start: 0,
                    end: 0,
                    tc: 1
                }]
            );
        }
    }

    #[test]
    fn infeasible_k_reports_none() {
        let inst = per_point(
            line(2),
            vec![vec![1.0]; 2],
            Agg::Sum,
            Agg::Sum,
            Some(3),
            0.0,
        );
        assert_eq!(cluster_generic(&inst).unwrap(), None);
        assert_eq!(cluster_sum_sum(&inst, SumSumStrategy::Deque).unwrap(), None);
    }

    #[test]
    fn strategy_preconditions_are_checked() {
        let inst = per_point(line(3), vec![vec![1.0]; 3], Agg::Sum, Agg::Sum, None, 0.0);
        assert!(cluster_sum_max(&inst, SumMaxStrategy::Stacks).is_err());
        assert!(cluster_max_sum(&inst, MaxSumStrategy::BinarySearch).is_err());
        let lb = BoundTable::per_point(3, 1, |i, _| i as i64); // only singletons
        let ub = BoundTable::per_point(3, 1, |i, _| i as i64);
        let bounded = per_point(line(3), vec![vec![1.0]; 3], Agg::Sum, Agg::Sum, None, 0.0)
            .with_bounds(lb, ub)
            .unwrap();
        assert!(matches!(
            cluster_sum_sum(&bounded, SumSumStrategy::DTable),
            Err(ClusterError::Precondition { .. })
        ));
        let sol = cluster_sum_sum(&bounded, SumSumStrategy::ETableSegtree)
            .unwrap()
            .unwrap();
        assert_eq!(sol.clusters.len(), 3);
    }

    #[test]
    fn derived_bounds_spec_cases() {
        let x = vec![0.0, 1.0, 2.0, 3.0];
        let inst = per_point(x, vec![vec![1.0]; 4], Agg::Sum, Agg::Sum, None, 0.0);
        let imp = ImplicitBounds {
            lmax: Some(vec![vec![1.5]; 4]),
            ..Default::default()
        };
        let (lb, ub) = derive_bounds(&inst, &imp).unwrap();
        let inst = inst.with_bounds(lb, ub).unwrap();
        // One-based l = [1, 1, 2, 3] in zero-based start form.
        assert_eq!(
            (0..4).map(|i| inst.lb(i, 0, 0)).collect::<Vec<_>>(),
            vec![0, 0, 1, 2]
        );
        assert_eq!(
            (0..4).map(|i| inst.ub(i, 0, 0)).collect::<Vec<_>>(),
            vec![0, 1, 2, 3]
        );

        let inst2 = per_point(line(4), vec![vec![2.0]; 4], Agg::Sum, Agg::Sum, None, 0.0);
        let total: f64 = 8.0;
        let imp = ImplicitBounds {
            wmax: Some(vec![vec![total]; 4]),
            ..Default::default()
        };
        let (lb, ub) = derive_bounds(&inst2, &imp).unwrap();
        let inst2 = inst2.with_bounds(lb, ub).unwrap();
        assert!((0..4).all(|i| inst2.lb(i, 0, 0) == 0 && inst2.ub(i, 0, 0) == i as i64));
    }
}
