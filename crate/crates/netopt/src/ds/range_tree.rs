//! Dynamic 2D range tree: a segment tree over a static x-domain whose every
//! node stores the points of its x-range in an augmented treap keyed on y.
//! Rectangle min/max-weight queries run in O(log^2 n) expected time.

const NIL: u32 = u32::MAX;

/// Weight types storable in [`RangeTree2d`].
pub trait RtWeight: Copy + PartialOrd {
    const POS_INF: Self;
    const NEG_INF: Self;
}

impl RtWeight for i64 {
    const POS_INF: Self = i64::MAX;
    const NEG_INF: Self = i64::MIN;
}

impl RtWeight for f64 {
    const POS_INF: Self = f64::INFINITY;
    const NEG_INF: Self = f64::NEG_INFINITY;
}

#[derive(Debug, Clone)]
struct TreapNode<W> {
    y: i64,
    payload: u32,
    w: W,
    prio: u64,
    left: u32,
    right: u32,
    // Subtree aggregates.
    ymin: i64,
    ymax: i64,
    wmin: W,
    wmin_payload: u32,
    wmax: W,
    wmax_payload: u32,
}

/// Points are `(x, y, weight, payload)` with `x` in a fixed domain chosen at
/// construction. The payload travels with min/max answers so callers can
/// recover the winning point. `(y, payload)` pairs act as the inner tree key;
/// callers keep them unique per x for deterministic deletes.
#[derive(Debug, Clone)]
pub struct RangeTree2d<W: RtWeight> {
    domain: usize,
    roots: Vec<u32>,
    nodes: Vec<TreapNode<W>>,
    free: Vec<u32>,
    rng_state: u64,
    len: usize,
}

impl<W: RtWeight> RangeTree2d<W> {
    /// Creates an empty tree over x in `0..domain`.
    pub fn new(domain: usize) -> Self {
        Self::with_seed(domain, 0x9e3779b97f4a7c15)
    }

    pub fn with_seed(domain: usize, seed: u64) -> Self {
        assert!(domain > 0, "empty x-domain");
        RangeTree2d {
            domain,
            roots: vec![NIL; 4 * domain],
            nodes: Vec::new(),
            free: Vec::new(),
            rng_state: seed | 1,
            len: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn next_prio(&mut self) -> u64 {
        // xorshift64*
        let mut x = self.rng_state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.rng_state = x;
        x.wrapping_mul(0x2545f4914f6cdd1d)
    }

    fn alloc(&mut self, y: i64, payload: u32, w: W) -> u32 {
        let prio = self.next_prio();
        let node = TreapNode {
            y,
            payload,
            w,
            prio,
            left: NIL,
            right: NIL,
            ymin: y,
            ymax: y,
            wmin: w,
            wmin_payload: payload,
            wmax: w,
            wmax_payload: payload,
        };
        if let Some(idx) = self.free.pop() {
            self.nodes[idx as usize] = node;
            idx
        } else {
            self.nodes.push(node);
            (self.nodes.len() - 1) as u32
        }
    }

    fn pull(&mut self, t: u32) {
        let (mut ymin, mut ymax) = (self.nodes[t as usize].y, self.nodes[t as usize].y);
        let (mut wmin, mut wmin_pl) = (self.nodes[t as usize].w, self.nodes[t as usize].payload);
        let (mut wmax, mut wmax_pl) = (wmin, wmin_pl);
        for child in [self.nodes[t as usize].left, self.nodes[t as usize].right] {
            if child == NIL {
                continue;
            }
            let c = &self.nodes[child as usize];
            ymin = ymin.min(c.ymin);
            ymax = ymax.max(c.ymax);
            if c.wmin < wmin {
                wmin = c.wmin;
                wmin_pl = c.wmin_payload;
            }
            if c.wmax > wmax {
                wmax = c.wmax;
                wmax_pl = c.wmax_payload;
            }
        }
        let n = &mut self.nodes[t as usize];
        n.ymin = ymin;
        n.ymax = ymax;
        n.wmin = wmin;
        n.wmin_payload = wmin_pl;
        n.wmax = wmax;
        n.wmax_payload = wmax_pl;
    }

    fn treap_insert(&mut self, t: u32, fresh: u32) -> u32 {
        if t == NIL {
            return fresh;
        }
        let key = {
            let f = &self.nodes[fresh as usize];
            (f.y, f.payload)
        };
        if self.nodes[fresh as usize].prio > self.nodes[t as usize].prio {
            let (l, r) = self.treap_split(t, key);
            self.nodes[fresh as usize].left = l;
            self.nodes[fresh as usize].right = r;
            self.pull(fresh);
            return fresh;
        }
        let tkey = (self.nodes[t as usize].y, self.nodes[t as usize].payload);
        if key < tkey {
            let nl = self.treap_insert(self.nodes[t as usize].left, fresh);
            self.nodes[t as usize].left = nl;
        } else {
            let nr = self.treap_insert(self.nodes[t as usize].right, fresh);
            self.nodes[t as usize].right = nr;
        }
        self.pull(t);
        t
    }

    /// Splits by key: left subtree gets keys < `key`, right the rest.
    fn treap_split(&mut self, t: u32, key: (i64, u32)) -> (u32, u32) {
        if t == NIL {
            return (NIL, NIL);
        }
        let tkey = (self.nodes[t as usize].y, self.nodes[t as usize].payload);
        if tkey < key {
            let (l, r) = self.treap_split(self.nodes[t as usize].right, key);
            self.nodes[t as usize].right = l;
            self.pull(t);
            (t, r)
        } else {
            let (l, r) = self.treap_split(self.nodes[t as usize].left, key);
            self.nodes[t as usize].left = r;
            self.pull(t);
            (l, t)
        }
    }

    fn treap_merge(&mut self, a: u32, b: u32) -> u32 {
        if a == NIL {
            return b;
        }
        if b == NIL {
            return a;
        }
        if self.nodes[a as usize].prio > self.nodes[b as usize].prio {
            let m = self.treap_merge(self.nodes[a as usize].right, b);
            self.nodes[a as usize].right = m;
            self.pull(a);
            a
        } else {
            let m = self.treap_merge(a, self.nodes[b as usize].left);
            self.nodes[b as usize].left = m;
            self.pull(b);
            b
        }
    }

    /// Removes the node with exact key, returning the new subtree root and
    /// whether a node was removed.
    fn treap_remove(&mut self, t: u32, key: (i64, u32)) -> (u32, bool) {
        if t == NIL {
            return (NIL, false);
        }
        let tkey = (self.nodes[t as usize].y, self.nodes[t as usize].payload);
        if key == tkey {
            let merged =
                self.treap_merge(self.nodes[t as usize].left, self.nodes[t as usize].right);
            self.free.push(t);
            return (merged, true);
        }
        let removed;
        if key < tkey {
            let (nl, r) = self.treap_remove(self.nodes[t as usize].left, key);
            self.nodes[t as usize].left = nl;
            removed = r;
        } else {
            let (nr, r) = self.treap_remove(self.nodes[t as usize].right, key);
            self.nodes[t as usize].right = nr;
            removed = r;
        }
        if removed {
            self.pull(t);
        }
        (t, removed)
    }

    /// Inserts the point `(x, y)` with weight `w` and payload.
    pub fn insert(&mut self, x: usize, y: i64, w: W, payload: u32) {
        assert!(x < self.domain, "x = {x} outside domain 0..{}", self.domain);
        self.len += 1;
        let mut stack = vec![(1usize, 0usize, self.domain - 1)];
        while let Some((node, lo, hi)) = stack.pop() {
            let fresh = self.alloc(y, payload, w);
            let root = self.roots[node];
            self.roots[node] = self.treap_insert(root, fresh);
            if lo == hi {
                continue;
            }
            let mid = (lo + hi) / 2;
            if x <= mid {
                stack.push((2 * node, lo, mid));
            } else {
                stack.push((2 * node + 1, mid + 1, hi));
            }
        }
    }

    /// Deletes a previously inserted point at `(x, y)`. When several payloads
    /// share the position the smallest payload goes first. Panics if no point
    /// exists there.
    pub fn delete(&mut self, x: usize, y: i64) {
        assert!(x < self.domain, "x = {x} outside domain 0..{}", self.domain);
        // Resolve the concrete entry at the leaf treap (which holds exactly
        // the points with this x).
        let leaf = self.leaf_node(x);
        let payload = self
            .min_payload_with_y(self.roots[leaf], y)
            .unwrap_or_else(|| panic!("no point at ({x}, {y})"));
        let key = (y, payload);
        self.len -= 1;
        let (mut node, mut lo, mut hi) = (1usize, 0usize, self.domain - 1);
        loop {
            let root = self.roots[node];
            let (nr, removed) = self.treap_remove(root, key);
            debug_assert!(removed);
            self.roots[node] = nr;
            if lo == hi {
                break;
            }
            let mid = (lo + hi) / 2;
            if x <= mid {
                node = 2 * node;
                hi = mid;
            } else {
                node = 2 * node + 1;
                lo = mid + 1;
            }
        }
    }

    fn leaf_node(&self, x: usize) -> usize {
        let (mut node, mut lo, mut hi) = (1usize, 0usize, self.domain - 1);
        while lo != hi {
            let mid = (lo + hi) / 2;
            if x <= mid {
                node = 2 * node;
                hi = mid;
            } else {
                node = 2 * node + 1;
                lo = mid + 1;
            }
        }
        node
    }

    fn min_payload_with_y(&self, t: u32, y: i64) -> Option<u32> {
        if t == NIL {
            return None;
        }
        let n = &self.nodes[t as usize];
        if y < n.ymin || y > n.ymax {
            return None;
        }
        let mut best = None;
        if n.y == y {
            best = Some(n.payload);
        }
        for child in [n.left, n.right] {
            if let Some(p) = self.min_payload_with_y(child, y) {
                best = Some(match best {
                    Some(b) if b <= p => b,
                    _ => p,
                });
            }
        }
        best
    }

    fn treap_min(&self, t: u32, y1: i64, y2: i64, acc: &mut (W, u32)) {
        if t == NIL {
            return;
        }
        let n = &self.nodes[t as usize];
        if n.ymax < y1 || n.ymin > y2 {
            return;
        }
        if y1 <= n.ymin && n.ymax <= y2 {
            if n.wmin < acc.0 {
                *acc = (n.wmin, n.wmin_payload);
            }
            return;
        }
        if y1 <= n.y && n.y <= y2 && n.w < acc.0 {
            *acc = (n.w, n.payload);
        }
        self.treap_min(n.left, y1, y2, acc);
        self.treap_min(n.right, y1, y2, acc);
    }

    fn treap_max(&self, t: u32, y1: i64, y2: i64, acc: &mut (W, u32)) {
        if t == NIL {
            return;
        }
        let n = &self.nodes[t as usize];
        if n.ymax < y1 || n.ymin > y2 {
            return;
        }
        if y1 <= n.ymin && n.ymax <= y2 {
            if n.wmax > acc.0 {
                *acc = (n.wmax, n.wmax_payload);
            }
            return;
        }
        if y1 <= n.y && n.y <= y2 && n.w > acc.0 {
            *acc = (n.w, n.payload);
        }
        self.treap_max(n.left, y1, y2, acc);
        self.treap_max(n.right, y1, y2, acc);
    }

    fn visit_rect<F: FnMut(&Self, u32)>(
        &self,
        node: usize,
        lo: usize,
        hi: usize,
        x1: usize,
        x2: usize,
        f: &mut F,
    ) {
        if x2 < lo || hi < x1 {
            return;
        }
        if x1 <= lo && hi <= x2 {
            f(self, self.roots[node]);
            return;
        }
        let mid = (lo + hi) / 2;
        self.visit_rect(2 * node, lo, mid, x1, x2, f);
        self.visit_rect(2 * node + 1, mid + 1, hi, x1, x2, f);
    }

    /// Minimum weight among points with `x1 <= x <= x2`, `y1 <= y <= y2`
    /// together with its payload, or `None` if the rectangle is empty.
    pub fn find_min_entry(&self, x1: usize, y1: i64, x2: usize, y2: i64) -> Option<(W, u32)> {
        if x1 > x2 || y1 > y2 || x1 >= self.domain {
            return None;
        }
        let x2 = x2.min(self.domain - 1);
        let mut acc = (W::POS_INF, u32::MAX);
        let mut found = false;
        self.visit_rect(1, 0, self.domain - 1, x1, x2, &mut |s, root| {
            let before = acc;
            s.treap_min(root, y1, y2, &mut acc);
            if acc.0 < before.0 || (acc.1 != before.1 && acc.1 != u32::MAX) {
                found = true;
            }
        });
        // A point whose weight equals POS_INF still counts as found when its
        // payload landed in the accumulator.
        if found || acc.1 != u32::MAX {
            Some(acc)
        } else {
            None
        }
    }

    pub fn find_max_entry(&self, x1: usize, y1: i64, x2: usize, y2: i64) -> Option<(W, u32)> {
        if x1 > x2 || y1 > y2 || x1 >= self.domain {
            return None;
        }
        let x2 = x2.min(self.domain - 1);
        let mut acc = (W::NEG_INF, u32::MAX);
        self.visit_rect(1, 0, self.domain - 1, x1, x2, &mut |s, root| {
            s.treap_max(root, y1, y2, &mut acc);
        });
        if acc.1 != u32::MAX {
            Some(acc)
        } else {
            None
        }
    }

    /// Minimum weight in the rectangle, or `+inf` when empty.
    pub fn find_min_w(&self, x1: usize, y1: i64, x2: usize, y2: i64) -> W {
        self.find_min_entry(x1, y1, x2, y2)
            .map(|(w, _)| w)
            .unwrap_or(W::POS_INF)
    }

    /// Maximum weight in the rectangle, or `-inf` when empty.
    pub fn find_max_w(&self, x1: usize, y1: i64, x2: usize, y2: i64) -> W {
        self.find_max_entry(x1, y1, x2, y2)
            .map(|(w, _)| w)
            .unwrap_or(W::NEG_INF)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_tree_sentinels() {
        let t: RangeTree2d<i64> = RangeTree2d::new(4);
        assert_eq!(t.find_min_w(0, 0, 3, 9), i64::MAX);
        assert_eq!(t.find_max_w(0, 0, 3, 9), i64::MIN);
    }

    #[test]
    fn single_point() {
        let mut t: RangeTree2d<i64> = RangeTree2d::new(4);
        t.insert(2, 5, 7, 0);
        assert_eq!(t.find_min_w(0, 0, 3, 9), 7);
        assert_eq!(t.find_max_w(0, 0, 3, 9), 7);
        assert_eq!(t.find_min_w(0, 6, 3, 9), i64::MAX);
        assert_eq!(t.find_min_w(3, 0, 3, 9), i64::MAX);
    }

    #[test]
    fn insert_delete_roundtrip() {
        let mut t: RangeTree2d<i64> = RangeTree2d::new(3);
        t.insert(0, 1, 10, 0);
        t.insert(1, 2, 20, 1);
        t.insert(2, 3, 5, 2);
        assert_eq!(t.find_min_entry(0, 0, 2, 5), Some((5, 2)));
        t.delete(2, 3);
        assert_eq!(t.find_min_entry(0, 0, 2, 5), Some((10, 0)));
        t.delete(0, 1);
        t.delete(1, 2);
        assert!(t.is_empty());
        assert_eq!(t.find_min_w(0, i64::MIN, 2, i64::MAX), i64::MAX);
    }

    #[test]
    #[should_panic(expected = "no point at")]
    fn delete_absent_panics() {
        let mut t: RangeTree2d<i64> = RangeTree2d::new(3);
        t.insert(0, 1, 10, 0);
        t.delete(0, 2);
    }

    #[test]
    fn infinite_weight_dummies() {
        let mut t: RangeTree2d<f64> = RangeTree2d::new(3);
        for x in 0..3 {
            t.insert(x, i64::MIN, f64::INFINITY, x as u32);
        }
        // Dummies are present but do not pretend to be real minima.
        assert_eq!(t.find_min_w(0, i64::MIN, 2, i64::MAX), f64::INFINITY);
        t.delete(1, i64::MIN);
        t.insert(1, 4, 2.5, 1);
        assert_eq!(t.find_min_entry(0, 0, 2, 10), Some((2.5, 1)));
    }
}
