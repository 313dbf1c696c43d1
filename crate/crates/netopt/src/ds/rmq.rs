//! Sparse-table range minimum/maximum queries over a static array snapshot.

/// Doubling tables for min and max, O(n log n) build, O(1) query.
#[derive(Debug, Clone)]
pub struct SparseRmq {
    min_table: Vec<Vec<f64>>,
    max_table: Vec<Vec<f64>>,
    len: usize,
}

impl SparseRmq {
    pub fn build(arr: &[f64]) -> Self {
        assert!(!arr.is_empty(), "RMQ over empty array");
        let n = arr.len();
        let levels = usize::BITS as usize - n.leading_zeros() as usize;
        let mut min_table = Vec::with_capacity(levels);
        let mut max_table = Vec::with_capacity(levels);
        min_table.push(arr.to_vec());
        max_table.push(arr.to_vec());
        for k in 1..levels {
            let w = 1 << (k - 1);
            let prev_min = &min_table[k - 1];
            let prev_max = &max_table[k - 1];
            let m = n + 1 - (1 << k);
            min_table.push((0..m).map(|i| prev_min[i].min(prev_min[i + w])).collect());
            max_table.push((0..m).map(|i| prev_max[i].max(prev_max[i + w])).collect());
        }
        SparseRmq {
            min_table,
            max_table,
            len: n,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn level(a: usize, b: usize) -> usize {
        usize::BITS as usize - 1 - (b - a + 1).leading_zeros() as usize
    }

    pub fn min(&self, a: usize, b: usize) -> f64 {
        assert!(a <= b && b < self.len, "range [{a}, {b}] out of bounds");
        let k = Self::level(a, b);
        self.min_table[k][a].min(self.min_table[k][b + 1 - (1 << k)])
    }

    pub fn max(&self, a: usize, b: usize) -> f64 {
        assert!(a <= b && b < self.len, "range [{a}, {b}] out of bounds");
        let k = Self::level(a, b);
        self.max_table[k][a].max(self.max_table[k][b + 1 - (1 << k)])
    }
}
