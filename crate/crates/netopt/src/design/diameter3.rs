//! Greedy label-minimizing diameter-3 designs over a labeled complete graph.
//!
//! The produced topology is a central edge `(x, y)` with every other vertex
//! attached to one endpoint, which has hop-diameter at most 3 by
//! construction. The greedy reuses already-used labels when possible and
//! otherwise attaches towards the side whose label covers more of the
//! remaining vertices, maintained with counter arrays and lists for an O(n)
//! inner pass.

use super::DesignError;
use crate::graph::NodeId;
use std::collections::HashMap;

/// Complete graph with a positive label on every unordered pair.
#[derive(Debug, Clone)]
pub struct LabeledComplete {
    n: usize,
    // Flat upper-triangular storage: pair (u, v) with u < v.
    labels: Vec<u64>,
}

impl LabeledComplete {
    pub fn new(n: usize, mut pair_labels: Vec<(NodeId, NodeId, u64)>) -> Result<Self, DesignError> {
        if n < 2 {
            return Err(DesignError::TooFewNodes { n, need: 2 });
        }
        let mut labels = vec![0u64; n * (n - 1) / 2];
        for (u, v, l) in pair_labels.drain(..) {
            if u >= n || v >= n || u == v {
                return Err(DesignError::BadCenter(format!("bad pair ({u}, {v})")));
            }
            if l == 0 {
                return Err(DesignError::BadCenter("labels must be positive".into()));
            }
            labels[Self::slot(n, u, v)] = l;
        }
        if labels.iter().any(|&l| l == 0) {
            return Err(DesignError::BadCenter("missing pair label".into()));
        }
        Ok(LabeledComplete { n, labels })
    }

    /// Parses the labels file: first line `n`, then `n(n-1)/2` lines
    /// `u v label`. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, DesignError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line, header) = lines.next().ok_or(DesignError::Parse {
            line: 0,
            message: "empty input".into(),
        })?;
        let n: usize = header.parse().map_err(|_| DesignError::Parse {
            line,
            message: "invalid node count".into(),
        })?;
        let mut pairs = Vec::new();
        for _ in 0..n * (n.saturating_sub(1)) / 2 {
            let (line, text) = lines.next().ok_or(DesignError::Parse {
                line: 0,
                message: "missing pair lines".into(),
            })?;
            let f: Vec<&str> = text.split_whitespace().collect();
            if f.len() != 3 {
                return Err(DesignError::Parse {
                    line,
                    message: "expected `u v label`".into(),
                });
            }
            let parse = |s: &str, what: &str| -> Result<u64, DesignError> {
                s.parse().map_err(|_| DesignError::Parse {
                    line,
                    message: format!("invalid {what}"),
                })
            };
            pairs.push((
                parse(f[0], "u")? as usize,
                parse(f[1], "v")? as usize,
                parse(f[2], "label")?,
            ));
        }
        LabeledComplete::new(n, pairs)
    }

    fn slot(n: usize, u: NodeId, v: NodeId) -> usize {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        a * n - a * (a + 1) / 2 + (b - a - 1)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn label(&self, u: NodeId, v: NodeId) -> u64 {
        self.labels[Self::slot(self.n, u, v)]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CenterMode {
    /// Try every edge as the center: O(n^3) with the refined pass.
    AllEdges,
    /// Fix one endpoint (given, or picked as the vertex whose incident label
    /// set is smallest) and try every partner.
    FixedX(Option<NodeId>),
    /// Single candidate center.
    FixedEdge(NodeId, NodeId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignResult {
    pub center: (NodeId, NodeId),
    /// For every vertex other than the center endpoints: the endpoint it is
    /// attached to.
    pub attachment: Vec<(NodeId, NodeId)>,
    /// Distinct labels used by the chosen edges, sorted.
    pub labels_used: Vec<u64>,
}

impl DesignResult {
    pub fn distinct_labels(&self) -> usize {
        self.labels_used.len()
    }

    /// Edges of the designed subgraph.
    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = vec![self.center];
        out.extend(self.attachment.iter().copied().map(|(v, to)| (v, to)));
        out
    }
}

/// Runs the greedy for every candidate center named by `mode` and returns
/// the result with the fewest distinct labels (ties: lexicographically
/// smallest center).
pub fn diameter3_design(
    lc: &LabeledComplete,
    mode: CenterMode,
) -> Result<DesignResult, DesignError> {
    let n = lc.node_count();
    if n < 2 {
        return Err(DesignError::TooFewNodes { n, need: 2 });
    }
    let centers: Vec<(NodeId, NodeId)> = match mode {
        CenterMode::AllEdges => (0..n)
            .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
            .collect(),
        CenterMode::FixedX(x) => {
            let x = match x {
                Some(x) if x < n => x,
                Some(x) => return Err(DesignError::BadCenter(format!("vertex {x} out of range"))),
                None => pick_center_vertex(lc),
            };
            (0..n)
                .filter(|&y| y != x)
                .map(|y| (x.min(y), x.max(y)))
                .collect()
        }
        CenterMode::FixedEdge(x, y) => {
            if x >= n || y >= n || x == y {
                return Err(DesignError::BadCenter(format!("bad edge ({x}, {y})")));
            }
            vec![(x.min(y), x.max(y))]
        }
    };
    let mut best: Option<DesignResult> = None;
    for (x, y) in centers {
        let cand = greedy_for_center(lc, x, y);
        let better = match &best {
            None => true,
            Some(b) => (cand.distinct_labels(), cand.center) < (b.distinct_labels(), b.center),
        };
        if better {
            best = Some(cand);
        }
    }
    Ok(best.expect("at least one center"))
}

/// The vertex adjacent to edges whose label set has the fewest distinct
/// labels (smallest id on ties).
pub fn pick_center_vertex(lc: &LabeledComplete) -> NodeId {
    let n = lc.node_count();
    let mut best = (usize::MAX, 0usize);
    for u in 0..n {
        let mut seen: Vec<u64> = (0..n).filter(|&w| w != u).map(|w| lc.label(u, w)).collect();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() < best.0 {
            best = (seen.len(), u);
        }
    }
    best.1
}

/// One greedy pass for a fixed center, using the renumbered-label counter
/// arrays and membership lists so the whole pass is O(n).
pub fn greedy_for_center(lc: &LabeledComplete, x: NodeId, y: NodeId) -> DesignResult {
    let n = lc.node_count();
    let others: Vec<NodeId> = (0..n).filter(|&v| v != x && v != y).collect();

    // Renumber the labels incident to the center to 0..q'.
    let mut dense: HashMap<u64, usize> = HashMap::new();
    let mut dense_of = |l: u64, next: &mut usize| -> usize {
        *dense.entry(l).or_insert_with(|| {
            let id = *next;
            *next += 1;
            id
        })
    };
    let mut next_id = 0usize;
    let center_label = dense_of(lc.label(x, y), &mut next_id);
    let vx: Vec<usize> = others
        .iter()
        .map(|&v| dense_of(lc.label(x, v), &mut next_id))
        .collect();
    let vy: Vec<usize> = others
        .iter()
        .map(|&v| dense_of(lc.label(y, v), &mut next_id))
        .collect();
    let q = next_id;

    let mut used = vec![false; q];
    used[center_label] = true;
    // num[j] counts vertices with label j on an incident center edge whose
    // labels are both still unused; li[j] lists them (lazily cleaned).
    let mut num = vec![0usize; q];
    let mut li: Vec<Vec<usize>> = vec![Vec::new(); q];
    let mut removed = vec![false; others.len()];
    for (i, _) in others.iter().enumerate() {
        if vx[i] == center_label || vy[i] == center_label {
            removed[i] = true; // will attach through the center label
            continue;
        }
        num[vx[i]] += 1;
        li[vx[i]].push(i);
        if vy[i] != vx[i] {
            num[vy[i]] += 1;
            li[vy[i]].push(i);
        }
    }

    let mut attachment = Vec::with_capacity(others.len());
    let mark_used = |j: usize,
                     used: &mut Vec<bool>,
                     num: &mut Vec<usize>,
                     li: &mut Vec<Vec<usize>>,
                     removed: &mut Vec<bool>| {
        if used[j] {
            return;
        }
        used[j] = true;
        for k in li[j].split_off(0) {
            if removed[k] {
                continue;
            }
            removed[k] = true;
            num[vx[k]] -= 1;
            if vy[k] != vx[k] {
                num[vy[k]] -= 1;
            }
        }
    };

    for (i, &v) in others.iter().enumerate() {
        let (lx, ly) = (vx[i], vy[i]);
        let to = if used[lx] {
            x
        } else if used[ly] {
            y
        } else if lx == ly {
            mark_used(lx, &mut used, &mut num, &mut li, &mut removed);
            x
        } else {
            let (nx, ny) = (num[lx], num[ly]);
            if nx >= ny {
                mark_used(lx, &mut used, &mut num, &mut li, &mut removed);
                x
            } else {
                mark_used(ly, &mut used, &mut num, &mut li, &mut removed);
                y
            }
        };
        attachment.push((v, to));
    }

    let mut labels_used: Vec<u64> = std::iter::once(lc.label(x, y))
        .chain(attachment.iter().map(|&(v, to)| lc.label(to, v)))
        .collect();
    labels_used.sort_unstable();
    labels_used.dedup();
    DesignResult {
        center: (x, y),
        attachment,
        labels_used,
    }
}

/// Same greedy, but with `nx`/`ny` recomputed by a direct O(n) scan per
/// vertex. Kept as a semantic reference for the refined pass.
pub fn greedy_for_center_direct(lc: &LabeledComplete, x: NodeId, y: NodeId) -> DesignResult {
    let others: Vec<NodeId> = (0..lc.node_count()).filter(|&v| v != x && v != y).collect();
    let mut used: Vec<u64> = vec![lc.label(x, y)];
    let mut attachment = Vec::with_capacity(others.len());
    for (i, &v) in others.iter().enumerate() {
        let (lx, ly) = (lc.label(x, v), lc.label(y, v));
        let to = if used.contains(&lx) {
            x
        } else if used.contains(&ly) {
            y
        } else if lx == ly {
            used.push(lx);
            x
        } else {
            let count = |target: u64| {
                others[i..]
                    .iter()
                    .filter(|&&w| {
                        let (wx, wy) = (lc.label(x, w), lc.label(y, w));
                        !used.contains(&wx) && !used.contains(&wy) && (wx == target || wy == target)
                    })
                    .count()
            };
            let (nx, ny) = (count(lx), count(ly));
            if nx >= ny {
                used.push(lx);
                x
            } else {
                used.push(ly);
                y
            }
        };
        attachment.push((v, to));
    }
    let mut labels_used: Vec<u64> = std::iter::once(lc.label(x, y))
        .chain(attachment.iter().map(|&(v, to)| lc.label(to, v)))
        .collect();
    labels_used.sort_unstable();
    labels_used.dedup();
    DesignResult {
        center: (x, y),
        attachment,
        labels_used,
    }
}

/// Hop diameter of an undirected edge list by BFS from every vertex;
/// `usize::MAX` when disconnected.
pub fn hop_diameter(n: usize, edges: &[(NodeId, NodeId)]) -> usize {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut diam = 0;
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        dist[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        let far = dist.into_iter().max().unwrap_or(0);
        if far == usize::MAX {
            return usize::MAX;
        }
        diam = diam.max(far);
    }
    diam
}
