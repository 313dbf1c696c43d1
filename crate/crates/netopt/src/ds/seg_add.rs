//! Lazy segment tree with range additions and min or max aggregation.

/// Value types storable in [`SegTreeAddMinMax`]. Addition saturates at the
/// infinity sentinels so range updates never wrap.
pub trait SegValue: Copy + PartialOrd {
    const NEG_INF: Self;
    const POS_INF: Self;
    const ZERO: Self;
    fn add(self, rhs: Self) -> Self;
}

impl SegValue for i64 {
    const NEG_INF: Self = i64::MIN;
    const POS_INF: Self = i64::MAX;
    const ZERO: Self = 0;
    fn add(self, rhs: Self) -> Self {
        self.saturating_add(rhs)
    }
}

impl SegValue for f64 {
    const NEG_INF: Self = f64::NEG_INFINITY;
    const POS_INF: Self = f64::INFINITY;
    const ZERO: Self = 0.0;
    fn add(self, rhs: Self) -> Self {
        self + rhs
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Aggregate {
    Min,
    Max,
}

/// Segment tree over a fixed-size array supporting range add, point set,
/// range aggregate query and arg queries. The aggregate (min or max) is
/// chosen at construction; arg queries break ties by the leftmost leaf.
#[derive(Debug, Clone)]
pub struct SegTreeAddMinMax<V: SegValue> {
    size: usize,
    agg: Aggregate,
    // best[node] = aggregate over the node's range, arg[node] = leftmost leaf
    // attaining it, lazy[node] = pending addition for the whole subtree.
    best: Vec<V>,
    arg: Vec<usize>,
    lazy: Vec<V>,
}

impl<V: SegValue> SegTreeAddMinMax<V> {
    pub fn new(size: usize, init: V, agg: Aggregate) -> Self {
        Self::from_values(&vec![init; size], agg)
    }

    pub fn from_values(values: &[V], agg: Aggregate) -> Self {
        assert!(!values.is_empty(), "segment tree needs at least one leaf");
        let size = values.len();
        let mut t = SegTreeAddMinMax {
            size,
            agg,
            best: vec![V::ZERO; 4 * size],
            arg: vec![0; 4 * size],
            lazy: vec![V::ZERO; 4 * size],
        };
        t.build(1, 0, size - 1, values);
        t
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    fn build(&mut self, node: usize, lo: usize, hi: usize, values: &[V]) {
        if lo == hi {
            self.best[node] = values[lo];
            self.arg[node] = lo;
            return;
        }
        let mid = (lo + hi) / 2;
        self.build(2 * node, lo, mid, values);
        self.build(2 * node + 1, mid + 1, hi, values);
        self.pull(node);
    }

    fn better(&self, a: V, b: V) -> bool {
        match self.agg {
            Aggregate::Min => a <= b,
            Aggregate::Max => a >= b,
        }
    }

    fn pull(&mut self, node: usize) {
        let (l, r) = (2 * node, 2 * node + 1);
        if self.better(self.best[l], self.best[r]) {
            self.best[node] = self.best[l];
            self.arg[node] = self.arg[l];
        } else {
            self.best[node] = self.best[r];
            self.arg[node] = self.arg[r];
        }
    }

    fn apply(&mut self, node: usize, delta: V) {
        self.best[node] = self.best[node].add(delta);
        self.lazy[node] = self.lazy[node].add(delta);
    }

    fn push(&mut self, node: usize) {
        let pending = self.lazy[node];
        if pending != V::ZERO {
            self.apply(2 * node, pending);
            self.apply(2 * node + 1, pending);
            self.lazy[node] = V::ZERO;
        }
    }

    /// Adds `delta` to every leaf in `[a, b]`.
    pub fn range_add(&mut self, a: usize, b: usize, delta: V) {
        assert!(a <= b && b < self.size, "range [{a}, {b}] out of bounds");
        self.range_add_rec(1, 0, self.size - 1, a, b, delta);
    }

    fn range_add_rec(&mut self, node: usize, lo: usize, hi: usize, a: usize, b: usize, delta: V) {
        if b < lo || hi < a {
            return;
        }
        if a <= lo && hi <= b {
            self.apply(node, delta);
            return;
        }
        self.push(node);
        let mid = (lo + hi) / 2;
        self.range_add_rec(2 * node, lo, mid, a, b, delta);
        self.range_add_rec(2 * node + 1, mid + 1, hi, a, b, delta);
        self.pull(node);
    }

    /// Overwrites leaf `i` with `v`.
    pub fn point_set(&mut self, i: usize, v: V) {
        assert!(i < self.size, "index {i} out of bounds");
        self.point_set_rec(1, 0, self.size - 1, i, v);
    }

    fn point_set_rec(&mut self, node: usize, lo: usize, hi: usize, i: usize, v: V) {
        if lo == hi {
            self.best[node] = v;
            self.lazy[node] = V::ZERO;
            return;
        }
        self.push(node);
        let mid = (lo + hi) / 2;
        if i <= mid {
            self.point_set_rec(2 * node, lo, mid, i, v);
        } else {
            self.point_set_rec(2 * node + 1, mid + 1, hi, i, v);
        }
        self.pull(node);
    }

    /// Aggregate over `[a, b]`.
    pub fn query(&mut self, a: usize, b: usize) -> V {
        self.query_arg(a, b).0
    }

    /// Aggregate over `[a, b]` together with the leftmost leaf attaining it.
    pub fn query_arg(&mut self, a: usize, b: usize) -> (V, usize) {
        assert!(a <= b && b < self.size, "range [{a}, {b}] out of bounds");
        self.query_rec(1, 0, self.size - 1, a, b)
    }

    fn query_rec(&mut self, node: usize, lo: usize, hi: usize, a: usize, b: usize) -> (V, usize) {
        if a <= lo && hi <= b {
            return (self.best[node], self.arg[node]);
        }
        self.push(node);
        let mid = (lo + hi) / 2;
        if b <= mid {
            let r = self.query_rec(2 * node, lo, mid, a, b);
            self.pull(node);
            r
        } else if a > mid {
            let r = self.query_rec(2 * node + 1, mid + 1, hi, a, b);
            self.pull(node);
            r
        } else {
            let left = self.query_rec(2 * node, lo, mid, a, b);
            let right = self.query_rec(2 * node + 1, mid + 1, hi, a, b);
            self.pull(node);
            if self.better(left.0, right.0) {
                left
            } else {
                right
            }
        }
    }

    pub fn point_query(&mut self, i: usize) -> V {
        self.query(i, i).to_owned()
    }

    /// Leftmost leaf achieving the global aggregate.
    pub fn argbest(&self) -> usize {
        self.arg[1]
    }

    pub fn global_best(&self) -> V {
        self.best[1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_query_small() {
        let mut t = SegTreeAddMinMax::from_values(&[3i64, 1, 2], Aggregate::Min);
        assert_eq!(t.query(0, 2), 1);
        assert_eq!(t.argbest(), 1);
    }

    #[test]
    fn range_add_then_point_query() {
        let mut t = SegTreeAddMinMax::from_values(&[3i64, 1, 2], Aggregate::Min);
        t.range_add(0, 1, 5);
        assert_eq!(t.point_query(1), 6);
        assert_eq!(t.point_query(2), 2);
    }

    #[test]
    fn argbest_is_leftmost() {
        let mut t = SegTreeAddMinMax::from_values(&[2i64, 7, 2, 2], Aggregate::Min);
        assert_eq!(t.argbest(), 0);
        t.range_add(0, 0, 1);
        assert_eq!(t.argbest(), 2);
        let t = SegTreeAddMinMax::from_values(&[5i64, 9, 9, 1], Aggregate::Max);
        assert_eq!(t.argbest(), 1);
    }

    #[test]
    fn point_set_with_pending_lazy() {
        let mut t = SegTreeAddMinMax::from_values(&[0i64; 8], Aggregate::Max);
        t.range_add(0, 7, 10);
        t.point_set(3, 2);
        assert_eq!(t.point_query(3), 2);
        assert_eq!(t.point_query(2), 10);
        assert_eq!(t.query(0, 7), 10);
    }

    #[test]
    #[should_panic(expected = "out of bounds")]
    fn out_of_range_panics() {
        let mut t = SegTreeAddMinMax::from_values(&[1i64, 2], Aggregate::Min);
        t.query(0, 2);
    }
}
