//! Segment tree with lazy range assignment and point queries
//! (last-writer-wins semantics).

#[derive(Debug, Clone)]
pub struct SegTreeAssign<T: Copy> {
    size: usize,
    // pending[node] = assignment covering the whole subtree, not yet pushed.
    pending: Vec<Option<T>>,
    leaf: Vec<T>,
}

impl<T: Copy> SegTreeAssign<T> {
    pub fn new(size: usize, init: T) -> Self {
        assert!(size > 0, "segment tree needs at least one leaf");
        SegTreeAssign {
            size,
            pending: vec![None; 4 * size],
            leaf: vec![init; size],
        }
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// Assigns `v` to every leaf in `[a, b]`.
    pub fn assign(&mut self, a: usize, b: usize, v: T) {
        assert!(a <= b && b < self.size, "range [{a}, {b}] out of bounds");
        self.assign_rec(1, 0, self.size - 1, a, b, v);
    }

    fn assign_rec(&mut self, node: usize, lo: usize, hi: usize, a: usize, b: usize, v: T) {
        if b < lo || hi < a {
            return;
        }
        if a <= lo && hi <= b {
            if lo == hi {
                self.leaf[lo] = v;
            } else {
                self.pending[node] = Some(v);
            }
            return;
        }
        self.push(node, lo, hi);
        let mid = (lo + hi) / 2;
        self.assign_rec(2 * node, lo, mid, a, b, v);
        self.assign_rec(2 * node + 1, mid + 1, hi, a, b, v);
    }

    fn push(&mut self, node: usize, lo: usize, hi: usize) {
        if let Some(v) = self.pending[node].take() {
            let mid = (lo + hi) / 2;
            if lo == mid {
                self.leaf[lo] = v;
            } else {
                self.pending[2 * node] = Some(v);
            }
            if mid + 1 == hi {
                self.leaf[hi] = v;
            } else {
                self.pending[2 * node + 1] = Some(v);
            }
        }
    }

    /// Value of the most recent assignment covering leaf `i` (or the initial
    /// value if none).
    pub fn point_query(&mut self, i: usize) -> T {
        assert!(i < self.size, "index {i} out of bounds");
        let (mut node, mut lo, mut hi) = (1usize, 0usize, self.size - 1);
        while lo != hi {
            self.push(node, lo, hi);
            let mid = (lo + hi) / 2;
            if i <= mid {
                node = 2 * node;
                hi = mid;
            } else {
                node = 2 * node + 1;
                lo = mid + 1;
            }
        }
        self.leaf[i]
    }
}
