//! Randomized operation sequences for every structure in `ds`, checked
//! against naive reference implementations. Seeds are fixed and printed in
//! assertion messages.

mod common;

use common::rng;
use netopt::ds::{
    Aggregate, IndexedHeap, MinMultisetTree, MonotoneDeque, RangeTree2d, SegTreeAddMinMax,
    SegTreeAssign, SparseRmq,
};
use rand::Rng;

pub const SEEDS: [u64; 3] = [42, 4242, 424242];
const OPS: usize = 10_000;

#[test]
fn seg_add_min_max_vs_array() {
    for seed in SEEDS {
        for agg in [Aggregate::Min, Aggregate::Max] {
            let mut r = rng(seed);
            let n = r.random_range(1..=64);
            let mut naive: Vec<i64> = (0..n).map(|_| r.random_range(-1000..=1000)).collect();
            let mut tree = SegTreeAddMinMax::from_values(&naive, agg);
            for op in 0..OPS {
                let a = r.random_range(0..n);
                let b = r.random_range(a..n);
                match r.random_range(0..4) {
                    0 => {
                        let delta = r.random_range(-50..=50);
                        tree.range_add(a, b, delta);
                        for x in &mut naive[a..=b] {
                            *x += delta;
                        }
                    }
                    1 => {
                        let v = r.random_range(-1000..=1000);
                        tree.point_set(a, v);
                        naive[a] = v;
                    }
                    2 => {
                        let want = match agg {
                            Aggregate::Min => *naive[a..=b].iter().min().unwrap(),
                            Aggregate::Max => *naive[a..=b].iter().max().unwrap(),
                        };
                        let (got, arg) = tree.query_arg(a, b);
                        assert_eq!(got, want, "seed {seed} op {op}");
                        let leftmost = (a..=b).find(|&i| naive[i] == want).unwrap();
                        assert_eq!(arg, leftmost, "seed {seed} op {op} argmin");
                    }
                    _ => {
                        assert_eq!(tree.point_query(a), naive[a], "seed {seed} op {op}");
                    }
                }
            }
            // Global argbest is the leftmost extreme.
            let best = match agg {
                Aggregate::Min => *naive.iter().min().unwrap(),
                Aggregate::Max => *naive.iter().max().unwrap(),
            };
            let leftmost = (0..n).find(|&i| naive[i] == best).unwrap();
            assert_eq!(tree.argbest(), leftmost, "seed {seed}");
            assert_eq!(tree.query(0, n - 1), best);
        }
    }
}

#[test]
fn seg_assign_vs_array() {
    for seed in SEEDS {
        let mut r = rng(seed);
        let n = r.random_range(1..=64);
        let mut naive = vec![0i64; n];
        let mut tree = SegTreeAssign::new(n, 0i64);
        for op in 0..OPS {
            let a = r.random_range(0..n);
            let b = r.random_range(a..n);
            if r.random_bool(0.5) {
                let v = r.random_range(-1000..=1000);
                tree.assign(a, b, v);
                for x in &mut naive[a..=b] {
                    *x = v;
                }
            } else {
                assert_eq!(tree.point_query(a), naive[a], "seed {seed} op {op}");
            }
        }
    }
}

#[test]
fn monotone_deque_sliding_window_minima() {
    for seed in SEEDS {
        let mut r = rng(seed);
        let n = 2000;
        let w = r.random_range(1..=50usize);
        let vals: Vec<f64> = (0..n).map(|_| r.random_range(-500..=500) as f64).collect();
        let mut dq: MonotoneDeque = MonotoneDeque::new();
        for i in 0..n {
            dq.push(i, vals[i], ());
            dq.evict_below(i.saturating_sub(w - 1));
            let lo = i.saturating_sub(w - 1);
            let want = vals[lo..=i].iter().cloned().fold(f64::INFINITY, f64::min);
            assert_eq!(dq.front().unwrap().value, want, "seed {seed} i {i}");
        }
    }
}

#[test]
fn monotone_deque_eviction_order() {
    let mut dq: MonotoneDeque = MonotoneDeque::new();
    for (i, v) in [5.0, 1.0, 2.0, 3.0, 4.0].into_iter().enumerate() {
        dq.push(i, v, ());
    }
    let evicted = dq.evict_below(4);
    let idx: Vec<usize> = evicted.iter().map(|e| e.index).collect();
    assert_eq!(idx, vec![1, 2, 3]);
}

#[test]
fn range_tree_vs_linear_scan() {
    for seed in SEEDS {
        let mut r = rng(seed);
        let domain = r.random_range(1..=20usize);
        let mut points: Vec<(usize, i64, i64, u32)> = Vec::new();
        let mut tree: RangeTree2d<i64> = RangeTree2d::new(domain);
        let mut next_payload = 0u32;
        for op in 0..2000 {
            match r.random_range(0..4) {
                0 | 1 => {
                    let x = r.random_range(0..domain);
                    let y = r.random_range(-20..=20);
                    let w = r.random_range(-1000..=1000);
                    let payload = next_payload;
                    next_payload += 1;
                    tree.insert(x, y, w, payload);
                    points.push((x, y, w, payload));
                }
                2 if !points.is_empty() => {
                    let k = r.random_range(0..points.len());
                    let (x, y, _, _) = points[k];
                    // The tree removes the smallest payload at (x, y); mirror
                    // that in the list.
                    let victim = points
                        .iter()
                        .enumerate()
                        .filter(|(_, p)| p.0 == x && p.1 == y)
                        .min_by_key(|(_, p)| p.3)
                        .map(|(i, _)| i)
                        .unwrap();
                    tree.delete(x, y);
                    points.swap_remove(victim);
                }
                _ => {
                    let x1 = r.random_range(0..domain);
                    let x2 = r.random_range(x1..domain);
                    let y1 = r.random_range(-25..=25);
                    let y2 = r.random_range(y1..=25);
                    let in_rect = |p: &&(usize, i64, i64, u32)| {
                        p.0 >= x1 && p.0 <= x2 && p.1 >= y1 && p.1 <= y2
                    };
                    let want_min = points
                        .iter()
                        .filter(in_rect)
                        .map(|p| p.2)
                        .min()
                        .unwrap_or(i64::MAX);
                    let want_max = points
                        .iter()
                        .filter(in_rect)
                        .map(|p| p.2)
                        .max()
                        .unwrap_or(i64::MIN);
                    assert_eq!(
                        tree.find_min_w(x1, y1, x2, y2),
                        want_min,
                        "seed {seed} op {op}"
                    );
                    assert_eq!(
                        tree.find_max_w(x1, y1, x2, y2),
                        want_max,
                        "seed {seed} op {op}"
                    );
                }
            }
        }
    }
}

#[test]
fn sparse_rmq_vs_scan() {
    for seed in SEEDS {
        let mut r = rng(seed);
        let n = r.random_range(1..=128usize);
        let arr: Vec<f64> = (0..n)
            .map(|_| r.random_range(-1000..=1000) as f64)
            .collect();
        let q = SparseRmq::build(&arr);
        for _ in 0..OPS / 4 {
            let a = r.random_range(0..n);
            let b = r.random_range(a..n);
            let mn = arr[a..=b].iter().cloned().fold(f64::INFINITY, f64::min);
            let mx = arr[a..=b].iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            assert_eq!(q.min(a, b), mn, "seed {seed}");
            assert_eq!(q.max(a, b), mx, "seed {seed}");
        }
    }
}

#[test]
fn indexed_heap_vs_btreeset() {
    use std::collections::BTreeSet;
    for seed in SEEDS {
        let mut r = rng(seed);
        let cap = 128;
        let mut heap: IndexedHeap<i64> = IndexedHeap::new(cap);
        let mut naive: BTreeSet<(i64, usize)> = BTreeSet::new();
        let mut keys: Vec<Option<i64>> = vec![None; cap];
        for op in 0..OPS {
            let id = r.random_range(0..cap);
            match r.random_range(0..4) {
                0 if keys[id].is_none() => {
                    let k = r.random_range(-1000..=1000);
                    heap.insert(id, k);
                    naive.insert((k, id));
                    keys[id] = Some(k);
                }
                1 if keys[id].is_some() => {
                    let k = r.random_range(-1000..=1000);
                    naive.remove(&(keys[id].unwrap(), id));
                    naive.insert((k, id));
                    heap.change_key(id, k);
                    keys[id] = Some(k);
                }
                2 if keys[id].is_some() => {
                    naive.remove(&(keys[id].unwrap(), id));
                    heap.remove(id);
                    keys[id] = None;
                }
                _ => {
                    let want = naive.iter().next().map(|&(k, i)| (i, k));
                    assert_eq!(heap.peek_min(), want, "seed {seed} op {op}");
                }
            }
        }
    }
}

#[test]
fn multiset_tree_vs_scan() {
    for seed in SEEDS {
        let mut r = rng(seed);
        let n = r.random_range(1..=32usize);
        let mut tree = MinMultisetTree::new(n);
        let mut naive: Vec<Vec<(i64, u32)>> = vec![Vec::new(); n];
        for op in 0..OPS / 2 {
            match r.random_range(0..3) {
                0 => {
                    let leaf = r.random_range(0..n);
                    let v = r.random_range(-500..=500);
                    let p = r.random_range(0..8u32);
                    tree.insert(leaf, v, p);
                    naive[leaf].push((v, p));
                }
                1 => {
                    let candidates: Vec<usize> = (0..n).filter(|&l| !naive[l].is_empty()).collect();
                    if let Some(&leaf) = candidates.first() {
                        let k = r.random_range(0..naive[leaf].len());
                        let (v, p) = naive[leaf].remove(k);
                        tree.remove(leaf, v, p);
                    }
                }
                _ => {
                    let a = r.random_range(0..n);
                    let b = r.random_range(a..n);
                    let want = naive[a..=b]
                        .iter()
                        .flatten()
                        .min()
                        .copied()
                        .unwrap_or((i64::MAX, 0));
                    assert_eq!(tree.query_min(a, b), want, "seed {seed} op {op}");
                }
            }
        }
    }
}
