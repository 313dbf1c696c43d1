//! Segment tree whose leaves hold multisets; a leaf's value is its multiset
//! minimum and internal nodes store the minimum over their subtree. Inserting
//! or deleting an entry recomputes the leaf and its ancestors.

use std::collections::BTreeMap;

const INF: i64 = i64::MAX;

/// Multiset-leaf minimum tree. Entries are `(value, payload)`; the payload
/// travels with the minimum so callers can recover which entry won a query.
#[derive(Debug, Clone)]
pub struct MinMultisetTree {
    size: usize,
    // (min value, payload) per tree node; INF for empty subtrees.
    node: Vec<(i64, u32)>,
    leaves: Vec<BTreeMap<(i64, u32), usize>>,
}

impl MinMultisetTree {
    pub fn new(size: usize) -> Self {
        assert!(size > 0, "tree needs at least one leaf");
        MinMultisetTree {
            size,
            node: vec![(INF, 0); 4 * size],
            leaves: vec![BTreeMap::new(); size],
        }
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn insert(&mut self, leaf: usize, value: i64, payload: u32) {
        assert!(leaf < self.size, "leaf {leaf} out of bounds");
        *self.leaves[leaf].entry((value, payload)).or_insert(0) += 1;
        self.refresh(leaf);
    }

    /// Removes one occurrence of `(value, payload)` from `leaf`. Panics if it
    /// is not present.
    pub fn remove(&mut self, leaf: usize, value: i64, payload: u32) {
        assert!(leaf < self.size, "leaf {leaf} out of bounds");
        let count = self.leaves[leaf]
            .get_mut(&(value, payload))
            .unwrap_or_else(|| panic!("entry ({value}, {payload}) absent from leaf {leaf}"));
        *count -= 1;
        if *count == 0 {
            self.leaves[leaf].remove(&(value, payload));
        }
        self.refresh(leaf);
    }

    fn leaf_best(&self, leaf: usize) -> (i64, u32) {
        self.leaves[leaf].keys().next().copied().unwrap_or((INF, 0))
    }

    fn refresh(&mut self, leaf: usize) {
        self.refresh_rec(1, 0, self.size - 1, leaf);
    }

    fn refresh_rec(&mut self, node: usize, lo: usize, hi: usize, leaf: usize) {
        if lo == hi {
            self.node[node] = self.leaf_best(leaf);
            return;
        }
        let mid = (lo + hi) / 2;
        if leaf <= mid {
            self.refresh_rec(2 * node, lo, mid, leaf);
        } else {
            self.refresh_rec(2 * node + 1, mid + 1, hi, leaf);
        }
        self.node[node] = self.node[2 * node].min(self.node[2 * node + 1]);
    }

    /// Minimum `(value, payload)` over leaves `[a, b]`, or `(i64::MAX, 0)` if
    /// every multiset in the range is empty.
    pub fn query_min(&self, a: usize, b: usize) -> (i64, u32) {
        assert!(a <= b && b < self.size, "range [{a}, {b}] out of bounds");
        self.query_rec(1, 0, self.size - 1, a, b)
    }

    fn query_rec(&self, node: usize, lo: usize, hi: usize, a: usize, b: usize) -> (i64, u32) {
        if b < lo || hi < a {
            return (INF, 0);
        }
        if a <= lo && hi <= b {
            return self.node[node];
        }
        let mid = (lo + hi) / 2;
        self.query_rec(2 * node, lo, mid, a, b)
            .min(self.query_rec(2 * node + 1, mid + 1, hi, a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_query_remove() {
        let mut t = MinMultisetTree::new(4);
        assert_eq!(t.query_min(0, 3).0, i64::MAX);
        t.insert(2, 5, 10);
        t.insert(2, 3, 11);
        t.insert(0, 4, 12);
        assert_eq!(t.query_min(0, 3), (3, 11));
        assert_eq!(t.query_min(0, 1), (4, 12));
        t.remove(2, 3, 11);
        assert_eq!(t.query_min(0, 3), (4, 12));
    }

    #[test]
    fn duplicate_entries() {
        let mut t = MinMultisetTree::new(2);
        t.insert(0, 7, 1);
        t.insert(0, 7, 1);
        t.remove(0, 7, 1);
        assert_eq!(t.query_min(0, 1), (7, 1));
    }

    #[test]
    #[should_panic(expected = "absent")]
    fn remove_absent_panics() {
        let mut t = MinMultisetTree::new(2);
        t.remove(0, 1, 2);
    }
}
