//! Oracle chain for the clustering module: the generic DP against an
//! exponential enumeration at small n, every specialization against the
//! generic DP on precondition-satisfying instances, and sweep-vs-bisection
//! agreement for bound derivation.

mod common;

use common::{
    enumerate_optimum, random_cluster_instance, rng, BoundKind, ClusterGenOpts as GenOpts,
};
use netopt::cluster::{
    cluster_generic, derive_column_binary, derive_column_sweep, evaluate_solution,
    partition_is_valid, solve, Agg, Cluster, ClusterInstance, ClusterStrategy, MaxMaxStrategy,
    MaxSumStrategy, SumMaxStrategy, SumSumStrategy, Weights,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn check_solution(inst: &ClusterInstance, sol: &netopt::cluster::ClusterSolution, tag: &str) {
    assert!(
        partition_is_valid(inst, &sol.clusters),
        "{tag}: bad partition"
    );
    let recomputed = evaluate_solution(inst, &sol.clusters);
    assert_eq!(recomputed, sol.value, "{tag}: value does not reproduce");
}

#[test]
fn generic_matches_enumeration() {
    let mut cases = 0;
    for seed in 0..1000u64 {
        let mut r = rng(seed);
        let n = r.random_range(1..=10usize);
        let opts = GenOpts {
            objf: if r.random_bool(0.5) {
                Agg::Sum
            } else {
                Agg::Max
            },
            ctype: if r.random_bool(0.5) {
                Agg::Sum
            } else {
                Agg::Max
            },
            negatives: r.random_bool(0.15),
            bounds: match r.random_range(0..3) {
                0 => BoundKind::None,
                1 => BoundKind::NonDecreasing,
                _ => BoundKind::Arbitrary,
            },
            ub_trivial: r.random_bool(0.5),
            per_cluster_weights: r.random_bool(0.3),
        };
        let inst = random_cluster_instance(&mut r, n, &opts);
        let want = enumerate_optimum(&inst);
        let got = cluster_generic(&inst).unwrap();
        match (&got, want) {
            (Some(sol), Some(w)) => {
                assert_eq!(sol.value, w, "seed {seed}");
                check_solution(&inst, sol, &format!("seed {seed}"));
            }
            (None, None) => {}
            _ => panic!("seed {seed}: feasibility mismatch {got:?} vs {want:?}"),
        }
        cases += 1;
    }
    assert_eq!(cases, 1000);
}

fn strategies_for(opts: &GenOpts) -> Vec<ClusterStrategy> {
    let mut out = Vec::new();
    match (opts.objf, opts.ctype) {
        (Agg::Sum, Agg::Sum) => {
            out.push(ClusterStrategy::SumSum(SumSumStrategy::ETableSegtree));
            if opts.bounds != BoundKind::Arbitrary {
                out.push(ClusterStrategy::SumSum(SumSumStrategy::Deque));
                out.push(ClusterStrategy::SumSum(SumSumStrategy::Heaps));
            }
            if opts.bounds == BoundKind::None {
                out.push(ClusterStrategy::SumSum(SumSumStrategy::DTable));
            }
        }
        (Agg::Sum, Agg::Max) => {
            if !opts.negatives && opts.ub_trivial {
                if opts.bounds == BoundKind::None {
                    out.push(ClusterStrategy::SumMax(SumMaxStrategy::Stacks));
                }
                if opts.bounds != BoundKind::Arbitrary {
                    out.push(ClusterStrategy::SumMax(SumMaxStrategy::DequeHeap));
                }
            }
        }
        (Agg::Max, Agg::Sum) => {
            if !opts.negatives {
                out.push(ClusterStrategy::MaxSum(MaxSumStrategy::RangeTrees));
                if opts.bounds != BoundKind::Arbitrary {
                    out.push(ClusterStrategy::MaxSum(MaxSumStrategy::PointerDeque));
                }
                if opts.bounds == BoundKind::None && !opts.per_cluster_weights {
                    out.push(ClusterStrategy::MaxSum(MaxSumStrategy::BinarySearch));
                }
            }
        }
        (Agg::Max, Agg::Max) => {
            if !opts.negatives {
                out.push(ClusterStrategy::MaxMax(MaxMaxStrategy::RangeTreesRmq));
                if opts.bounds != BoundKind::Arbitrary {
                    out.push(ClusterStrategy::MaxMax(MaxMaxStrategy::PointerRmq));
                }
                if opts.bounds == BoundKind::None && !opts.per_cluster_weights {
                    out.push(ClusterStrategy::MaxMax(MaxMaxStrategy::BinarySearchSorted));
                }
            }
        }
    }
    out
}

fn run_specialization_battery(seed_base: u64, objf: Agg, ctype: Agg) {
    let mut exercised = std::collections::HashMap::new();
    for seed in 0..260u64 {
        let mut r = rng(seed_base + seed);
        let n = r.random_range(1..=40usize);
        let opts = GenOpts {
            objf,
            ctype,
            negatives: objf == Agg::Sum && ctype == Agg::Sum && r.random_bool(0.25),
            bounds: match r.random_range(0..3) {
                0 => BoundKind::None,
                1 => BoundKind::NonDecreasing,
                _ => BoundKind::Arbitrary,
            },
            ub_trivial: r.random_bool(0.6),
            per_cluster_weights: r.random_bool(0.25),
        };
        let inst = random_cluster_instance(&mut r, n, &opts);
        let reference = cluster_generic(&inst).unwrap();
        for strategy in strategies_for(&opts) {
            let got = solve(&inst, strategy).unwrap();
            match (&reference, &got) {
                (Some(a), Some(b)) => {
                    assert_eq!(
                        a.value,
                        b.value,
                        "seed {} strategy {}",
                        seed_base + seed,
                        strategy.name()
                    );
                    check_solution(
                        &inst,
                        b,
                        &format!("seed {} {}", seed_base + seed, strategy.name()),
                    );
                }
                (None, None) => {}
                _ => panic!(
                    "seed {} strategy {}: feasibility mismatch",
                    seed_base + seed,
                    strategy.name()
                ),
            }
            *exercised.entry(strategy.name()).or_insert(0usize) += 1;
        }
    }
    for (name, count) in exercised {
        assert!(count >= 20, "strategy {name} exercised only {count} times");
    }
}

#[test]
fn sum_sum_strategies_match_generic() {
    run_specialization_battery(10_000, Agg::Sum, Agg::Sum);
}

#[test]
fn sum_max_strategies_match_generic() {
    run_specialization_battery(20_000, Agg::Sum, Agg::Max);
}

#[test]
fn max_sum_strategies_match_generic() {
    run_specialization_battery(30_000, Agg::Max, Agg::Sum);
}

#[test]
fn max_max_strategies_match_generic() {
    run_specialization_battery(40_000, Agg::Max, Agg::Max);
}

#[test]
fn free_cluster_count_is_min_over_fixed_k() {
    for seed in 0..60u64 {
        let mut r = rng(seed);
        let n = r.random_range(1..=8usize);
        let opts = GenOpts {
            objf: if r.random_bool(0.5) {
                Agg::Sum
            } else {
                Agg::Max
            },
            ctype: if r.random_bool(0.5) {
                Agg::Sum
            } else {
                Agg::Max
            },
            negatives: false,
            bounds: BoundKind::None,
            ub_trivial: true,
            per_cluster_weights: false,
        };
        let mut inst = random_cluster_instance(&mut r, n, &opts);
        // Rebuild without k, then compare against every fixed k.
        let weights = Weights::PerPoint(
            (0..n)
                .map(|i| {
                    (0..inst.num_types())
                        .map(|tc| inst.weight(i, 0, tc))
                        .collect()
                })
                .collect(),
        );
        let x: Vec<f64> = (0..n).map(|i| inst.coord(i)).collect();
        inst = ClusterInstance::new(
            x.clone(),
            weights,
            opts.objf,
            vec![opts.ctype; inst.num_types()],
            None,
            inst.fixed_cost(),
        )
        .unwrap();
        let free = cluster_generic(&inst).unwrap().unwrap().value;
        let mut best = f64::INFINITY;
        for k in 1..=n {
            let weights = Weights::PerPoint(
                (0..n)
                    .map(|i| {
                        (0..inst.num_types())
                            .map(|tc| inst.weight(i, 0, tc))
                            .collect()
                    })
                    .collect(),
            );
            let with_k = ClusterInstance::new(
                x.clone(),
                weights,
                opts.objf,
                vec![opts.ctype; inst.num_types()],
                Some(k),
                inst.fixed_cost(),
            )
            .unwrap();
            if let Some(sol) = cluster_generic(&with_k).unwrap() {
                best = best.min(sol.value);
            }
        }
        assert_eq!(free, best, "seed {seed}");
    }
}

#[test]
fn real_weight_binary_search_is_within_eps() {
    for seed in 0..40u64 {
        let mut r = rng(77_000 + seed);
        let n = r.random_range(1..=20usize);
        let t = r.random_range(1..=2usize);
        let x: Vec<f64> = (0..n).map(|i| i as f64).collect();
        let w: Vec<Vec<f64>> = (0..n)
            .map(|_| {
                (0..t)
                    .map(|_| r.random_range(0..=40) as f64 / 4.0)
                    .collect()
            })
            .collect();
        let k = Some(r.random_range(1..=n.min(4)));
        let inst = ClusterInstance::new(
            x,
            Weights::PerPoint(w),
            Agg::Max,
            vec![Agg::Sum; t],
            k,
            0.25,
        )
        .unwrap();
        let reference = cluster_generic(&inst).unwrap().unwrap();
        let got = netopt::cluster::cluster_max_sum(&inst, MaxSumStrategy::BinarySearch)
            .unwrap()
            .unwrap();
        let eps = got.approx.expect("real weights must report an accuracy");
        assert!(
            (got.value - reference.value).abs() <= eps.max(1e-9),
            "seed {seed}: {} vs {}",
            got.value,
            reference.value
        );
    }
}

#[test]
fn bound_derivation_routes_agree() {
    for seed in 0..200u64 {
        let mut r = rng(88_000 + seed);
        let n = r.random_range(1..=30usize);
        let mut x = Vec::with_capacity(n);
        let mut cur = 0.0;
        for _ in 0..n {
            cur += r.random_range(0..=4) as f64;
            x.push(cur);
        }
        let w: Vec<f64> = (0..n).map(|_| r.random_range(0..=5) as f64).collect();
        // Smooth limit arrays satisfy the sweep conditions by construction.
        let total_len = x[n - 1] - x[0];
        let mut lmax = Vec::with_capacity(n);
        let mut lmin = Vec::with_capacity(n);
        let mut wmax = Vec::with_capacity(n);
        let mut wmin = Vec::with_capacity(n);
        let total_w: f64 = w.iter().sum();
        for i in 0..n {
            if i == 0 {
                lmax.push(r.random_range(0..=total_len as i64 + 1) as f64);
                lmin.push(r.random_range(0..=2) as f64);
                wmax.push(r.random_range(0..=total_w as i64 + 1) as f64);
                wmin.push(r.random_range(0..=3) as f64);
            } else {
                let dx = x[i] - x[i - 1];
                let bump = |r: &mut ChaCha8Rng, prev: f64, slack: f64| {
                    (prev + slack) - r.random_range(0..=3) as f64
                };
                lmax.push(bump(&mut r, lmax[i - 1], dx).max(0.0));
                lmin.push(bump(&mut r, lmin[i - 1], dx).max(0.0));
                wmax.push(bump(&mut r, wmax[i - 1], w[i]).max(0.0));
                wmin.push(bump(&mut r, wmin[i - 1], w[i]).max(0.0));
            }
        }
        let sweep = derive_column_sweep(&x, &w, &lmin, &lmax, &wmin, &wmax);
        let binary = derive_column_binary(&x, &w, &lmin, &lmax, &wmin, &wmax);
        assert_eq!(sweep, binary, "seed {seed}");
        // The binary route must also match a direct scan on arbitrary limits.
        let lmax2: Vec<f64> = (0..n).map(|_| r.random_range(0..=8) as f64).collect();
        let lmin2: Vec<f64> = (0..n).map(|_| r.random_range(0..=6) as f64).collect();
        let inf = vec![f64::INFINITY; n];
        let ninf = vec![f64::NEG_INFINITY; n];
        let got = derive_column_binary(&x, &w, &lmin2, &lmax2, &ninf, &inf);
        for i in 0..n {
            let want_lb = (0..=i)
                .find(|&s| x[i] - x[s] <= lmax2[i])
                .map_or(i as i64 + 1, |s| s as i64);
            let want_ub = (0..=i)
                .rev()
                .find(|&s| x[i] - x[s] >= lmin2[i])
                .map_or(-1, |s| s as i64);
            assert_eq!(got.0[i], want_lb, "seed {seed} i {i}");
            assert_eq!(got.1[i], want_ub, "seed {seed} i {i}");
        }
    }
}

#[test]
fn feasibility_sentinel_soundness() {
    // Finite answers never violate a bound: evaluate_solution applies the
    // sentinel, so equality with the reported value is the check.
    for seed in 0..120u64 {
        let mut r = rng(99_000 + seed);
        let n = r.random_range(1..=12usize);
        let opts = GenOpts {
            objf: if r.random_bool(0.5) {
                Agg::Sum
            } else {
                Agg::Max
            },
            ctype: if r.random_bool(0.5) {
                Agg::Sum
            } else {
                Agg::Max
            },
            negatives: false,
            bounds: BoundKind::Arbitrary,
            ub_trivial: false,
            per_cluster_weights: false,
        };
        let inst = random_cluster_instance(&mut r, n, &opts);
        if let Some(sol) = cluster_generic(&inst).unwrap() {
            check_solution(&inst, &sol, &format!("seed {seed}"));
            assert!(sol.value.is_finite());
            let _ = Cluster {
                start: 0,
                end: 0,
                tc: 0,
            };
        }
    }
}
