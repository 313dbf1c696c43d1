//! Monotone double-ended queue for amortized O(1) sliding-window minima.

use std::collections::VecDeque;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DequeEntry<X = ()> {
    pub index: usize,
    pub value: f64,
    pub extra: X,
}

/// Min-deque over `(index, value, extra)` tuples. Indices must be pushed in
/// strictly increasing order; values are kept non-decreasing front-to-back by
/// eager back eviction, so the front is always the window minimum.
#[derive(Debug, Clone, Default)]
pub struct MonotoneDeque<X = ()> {
    q: VecDeque<DequeEntry<X>>,
    last_index: Option<usize>,
}

impl<X> MonotoneDeque<X> {
    pub fn new() -> Self {
        MonotoneDeque {
            q: VecDeque::new(),
            last_index: None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }

    pub fn len(&self) -> usize {
        self.q.len()
    }

    /// Pushes `(index, value)`, evicting strictly larger values from the
    /// back. Panics if `index` does not exceed every previously pushed index.
    pub fn push(&mut self, index: usize, value: f64, extra: X) {
        self.push_inner(index, value, extra, false);
    }

    /// Like [`push`](Self::push) but also evicts back entries whose value
    /// equals the new one (later entries win ties).
    pub fn push_evict_equal(&mut self, index: usize, value: f64, extra: X) {
        self.push_inner(index, value, extra, true);
    }

    fn push_inner(&mut self, index: usize, value: f64, extra: X, evict_equal: bool) {
        if let Some(last) = self.last_index {
            assert!(last < index, "non-monotone index push: {last} then {index}");
        }
        self.last_index = Some(index);
        while let Some(back) = self.q.back() {
            if back.value > value || (evict_equal && back.value >= value) {
                self.q.pop_back();
            } else {
                break;
            }
        }
        self.q.push_back(DequeEntry {
            index,
            value,
            extra,
        });
    }

    /// Removes front entries with `index < min_index` and returns them in
    /// order.
    pub fn evict_below(&mut self, min_index: usize) -> Vec<DequeEntry<X>> {
        self.evict_front_while(|e| e.index < min_index)
    }

    /// Removes front entries while `pred` holds and returns them in order.
    pub fn evict_front_while<F: Fn(&DequeEntry<X>) -> bool>(
        &mut self,
        pred: F,
    ) -> Vec<DequeEntry<X>> {
        let mut out = Vec::new();
        while let Some(front) = self.q.front() {
            if pred(front) {
                out.push(self.q.pop_front().unwrap());
            } else {
                break;
            }
        }
        out
    }

    pub fn front(&self) -> Option<&DequeEntry<X>> {
        self.q.front()
    }

    pub fn front_mut(&mut self) -> Option<&mut DequeEntry<X>> {
        self.q.front_mut()
    }

    pub fn iter(&self) -> impl Iterator<Item = &DequeEntry<X>> {
        self.q.iter()
    }
}
