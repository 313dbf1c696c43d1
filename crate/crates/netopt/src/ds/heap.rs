//! Indexed binary min-heap with decrease-key / remove by slot id.

/// Min-heap over `(key, id)` pairs where `id` is a caller-chosen slot in
/// `0..capacity`. Supports insert, remove and key changes by id. Keys only
/// need `PartialOrd`; ties are broken by the smaller id so the ordering is
/// total and deterministic.
#[derive(Debug, Clone)]
pub struct IndexedHeap<K> {
    keys: Vec<Option<K>>,
    heap: Vec<usize>,
    pos: Vec<usize>,
}

const ABSENT: usize = usize::MAX;

impl<K: PartialOrd + Copy> IndexedHeap<K> {
    pub fn new(capacity: usize) -> Self {
        IndexedHeap {
            keys: vec![None; capacity],
            heap: Vec::with_capacity(capacity),
            pos: vec![ABSENT; capacity],
        }
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.pos[id] != ABSENT
    }

    pub fn key(&self, id: usize) -> Option<K> {
        self.keys[id]
    }

    fn less(&self, a: usize, b: usize) -> bool {
        let (ia, ib) = (self.heap[a], self.heap[b]);
        let (ka, kb) = (self.keys[ia].unwrap(), self.keys[ib].unwrap());
        match ka.partial_cmp(&kb) {
            Some(std::cmp::Ordering::Less) => true,
            Some(std::cmp::Ordering::Greater) => false,
            _ => ia < ib,
        }
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.heap.swap(a, b);
        self.pos[self.heap[a]] = a;
        self.pos[self.heap[b]] = b;
    }

    fn sift_up(&mut self, mut i: usize) {
        while i > 0 {
            let p = (i - 1) / 2;
            if self.less(i, p) {
                self.swap(i, p);
                i = p;
            } else {
                break;
            }
        }
    }

    fn sift_down(&mut self, mut i: usize) {
        loop {
            let (l, r) = (2 * i + 1, 2 * i + 2);
            let mut best = i;
            if l < self.heap.len() && self.less(l, best) {
                best = l;
            }
            if r < self.heap.len() && self.less(r, best) {
                best = r;
            }
            if best == i {
                break;
            }
            self.swap(i, best);
            i = best;
        }
    }

    pub fn insert(&mut self, id: usize, key: K) {
        assert!(self.pos[id] == ABSENT, "id {id} already in heap");
        self.keys[id] = Some(key);
        self.pos[id] = self.heap.len();
        self.heap.push(id);
        self.sift_up(self.heap.len() - 1);
    }

    pub fn change_key(&mut self, id: usize, key: K) {
        assert!(self.pos[id] != ABSENT, "id {id} not in heap");
        self.keys[id] = Some(key);
        let i = self.pos[id];
        self.sift_up(i);
        self.sift_down(self.pos[id]);
    }

    pub fn remove(&mut self, id: usize) -> K {
        assert!(self.pos[id] != ABSENT, "id {id} not in heap");
        let i = self.pos[id];
        let last = self.heap.len() - 1;
        self.swap(i, last);
        self.heap.pop();
        self.pos[id] = ABSENT;
        let key = self.keys[id].take().unwrap();
        if i <= last && i < self.heap.len() {
            self.sift_up(i);
            self.sift_down(self.pos[self.heap[i]]);
        }
        key
    }

    pub fn peek_min(&self) -> Option<(usize, K)> {
        self.heap.first().map(|&id| (id, self.keys[id].unwrap()))
    }

    pub fn pop_min(&mut self) -> Option<(usize, K)> {
        let (id, key) = self.peek_min()?;
        self.remove(id);
        Some((id, key))
    }
}
