//! Clustering instance: points on a line with per-type weights, aggregate
//! choices, optional cluster count and start-index bounds (explicit or
//! derived from length/weight limits).

use super::ClusterError;

/// Aggregation function for weights within a cluster and for cluster costs
/// across the partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Agg {
    Sum,
    Max,
}

impl Agg {
    pub fn name(&self) -> &'static str {
        match self {
            Agg::Sum => "sum",
            Agg::Max => "max",
        }
    }

    pub fn from_name(s: &str) -> Option<Agg> {
        match s {
            "sum" => Some(Agg::Sum),
            "max" => Some(Agg::Max),
            _ => None,
        }
    }

    pub fn combine(&self, a: f64, b: f64) -> f64 {
        match self {
            Agg::Sum => a + b,
            Agg::Max => a.max(b),
        }
    }
}

/// Weight table: per point, or per (point, cluster index) when the cluster
/// count is fixed and weights vary with the cluster's position.
#[derive(Debug, Clone)]
pub enum Weights {
    /// `w[i][tc]`
    PerPoint(Vec<Vec<f64>>),
    /// `w[i][j][tc]`, requires a fixed cluster count
    PerCluster(Vec<Vec<Vec<f64>>>),
}

/// Start-index bounds in zero-based form: for a cluster whose rightmost
/// point is `i`, `lb` is the smallest allowed start and `ub` the largest
/// (the mandatory coverage point). An empty range (`lb > ub`) marks the
/// representative as infeasible for that type.
#[derive(Debug, Clone)]
pub struct BoundTable {
    per_cluster: bool,
    t: usize,
    data: Vec<i64>,
}

impl BoundTable {
    pub fn per_point(n: usize, t: usize, init: impl Fn(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(n * t);
        for i in 0..n {
            for tc in 0..t {
                data.push(init(i, tc));
            }
        }
        BoundTable {
            per_cluster: false,
            t,
            data,
        }
    }

    pub fn per_cluster(
        n: usize,
        k: usize,
        t: usize,
        init: impl Fn(usize, usize, usize) -> i64,
    ) -> Self {
        let mut data = Vec::with_capacity(n * k * t);
        for i in 0..n {
            for j in 0..k {
                for tc in 0..t {
                    data.push(init(i, j, tc));
                }
            }
        }
        BoundTable {
            per_cluster: true,
            t: k * t,
            data,
        }
    }

    #[inline]
    fn get(&self, i: usize, j: usize, tc: usize, t: usize) -> i64 {
        if self.per_cluster {
            self.data[i * self.t + j * t + tc]
        } else {
            self.data[i * self.t + tc]
        }
    }
}

/// Implicit bound inputs: any subset of length and weight limits, each with
/// the same indexing shape as the weights. Entries may be infinite.
#[derive(Debug, Clone, Default)]
pub struct ImplicitBounds {
    pub lmin: Option<Vec<Vec<f64>>>,
    pub lmax: Option<Vec<Vec<f64>>>,
    pub wmin: Option<Vec<Vec<f64>>>,
    pub wmax: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone)]
pub struct ClusterInstance {
    x: Vec<f64>,
    num_types: usize,
    k: Option<usize>,
    fixed_cost: f64,
    objf: Agg,
    ctypes: Vec<Agg>,
    weights: Weights,
    lb: Option<BoundTable>,
    ub: Option<BoundTable>,
}

impl ClusterInstance {
    pub fn new(
        x: Vec<f64>,
        weights: Weights,
        objf: Agg,
        ctypes: Vec<Agg>,
        k: Option<usize>,
        fixed_cost: f64,
    ) -> Result<ClusterInstance, ClusterError> {
        let n = x.len();
        if n == 0 {
            return Err(ClusterError::BadInstance("no points".into()));
        }
        if x.windows(2).any(|w| w[0] > w[1]) {
            return Err(ClusterError::BadInstance(
                "coordinates must be non-decreasing".into(),
            ));
        }
        let t = ctypes.len();
        if t == 0 {
            return Err(ClusterError::BadInstance("need at least one type".into()));
        }
        if k == Some(0) {
            return Err(ClusterError::BadInstance("k must be positive".into()));
        }
        match &weights {
            Weights::PerPoint(w) => {
                if w.len() != n || w.iter().any(|row| row.len() != t) {
                    return Err(ClusterError::BadInstance("weight shape mismatch".into()));
                }
            }
            Weights::PerCluster(w) => {
                let Some(k) = k else {
                    return Err(ClusterError::BadInstance(
                        "per-cluster weights require a fixed cluster count".into(),
                    ));
                };
                if w.len() != n
                    || w.iter().any(|r| r.len() != k)
                    || w.iter().flatten().any(|r| r.len() != t)
                {
                    return Err(ClusterError::BadInstance("weight shape mismatch".into()));
                }
            }
        }
        Ok(ClusterInstance {
            x,
            num_types: t,
            k,
            fixed_cost,
            objf,
            ctypes,
            weights,
            lb: None,
            ub: None,
        })
    }

    /// Installs explicit zero-based start bounds.
    pub fn with_bounds(mut self, lb: BoundTable, ub: BoundTable) -> Result<Self, ClusterError> {
        let expect = |bt: &BoundTable| -> Result<(), ClusterError> {
            let want = if bt.per_cluster {
                self.n() * self.k.unwrap_or(0) * self.num_types
            } else {
                self.n() * self.num_types
            };
            if bt.per_cluster && self.k.is_none() {
                return Err(ClusterError::BadInstance(
                    "per-cluster bounds require a fixed cluster count".into(),
                ));
            }
            if bt.data.len() != want {
                return Err(ClusterError::BadInstance("bound shape mismatch".into()));
            }
            Ok(())
        };
        expect(&lb)?;
        expect(&ub)?;
        for i in 0..self.n() {
            for j in 0..self.k.unwrap_or(1) {
                for tc in 0..self.num_types {
                    let l = lb.get(i, j, tc, self.num_types);
                    let u = ub.get(i, j, tc, self.num_types);
                    if l < 0 || u > i as i64 {
                        return Err(ClusterError::BadInstance(format!(
                            "bounds for point {i} type {tc} outside [0, {i}]"
                        )));
                    }
                    let _ = (l, u); // an empty range (l > u) is legal
                }
            }
        }
        self.lb = Some(lb);
        self.ub = Some(ub);
        Ok(self)
    }

    /// Derives explicit bounds from implicit length/weight limits and
    /// installs them. Uses the sweep when the limits change slowly enough for
    /// the two-pointer to be valid, binary search with prefix sums otherwise.
    pub fn with_implicit_bounds(self, imp: &ImplicitBounds) -> Result<Self, ClusterError> {
        let (lb, ub) = derive_bounds(&self, imp)?;
        self.with_bounds(lb, ub)
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn num_types(&self) -> usize {
        self.num_types
    }

    pub fn k(&self) -> Option<usize> {
        self.k
    }

    pub fn fixed_cost(&self) -> f64 {
        self.fixed_cost
    }

    pub fn objf(&self) -> Agg {
        self.objf
    }

    pub fn ctype(&self, tc: usize) -> Agg {
        self.ctypes[tc]
    }

    /// The single aggregation shared by all types, when uniform.
    pub fn uniform_ctype(&self) -> Option<Agg> {
        let first = self.ctypes[0];
        self.ctypes.iter().all(|&c| c == first).then_some(first)
    }

    pub fn coord(&self, i: usize) -> f64 {
        self.x[i]
    }

    #[inline]
    pub fn weight(&self, i: usize, j: usize, tc: usize) -> f64 {
        match &self.weights {
            Weights::PerPoint(w) => w[i][tc],
            Weights::PerCluster(w) => w[i][j][tc],
        }
    }

    pub fn weights_per_cluster(&self) -> bool {
        matches!(self.weights, Weights::PerCluster(_))
    }

    pub fn any_negative_weight(&self) -> bool {
        match &self.weights {
            Weights::PerPoint(w) => w.iter().flatten().any(|&v| v < 0.0),
            Weights::PerCluster(w) => w.iter().flatten().flatten().any(|&v| v < 0.0),
        }
    }

    /// Smallest allowed zero-based start for a cluster ending at `i`.
    #[inline]
    pub fn lb(&self, i: usize, j: usize, tc: usize) -> i64 {
        self.lb
            .as_ref()
            .map_or(0, |bt| bt.get(i, j, tc, self.num_types))
    }

    /// Largest allowed zero-based start for a cluster ending at `i`.
    #[inline]
    pub fn ub(&self, i: usize, j: usize, tc: usize) -> i64 {
        self.ub
            .as_ref()
            .map_or(i as i64, |bt| bt.get(i, j, tc, self.num_types))
    }

    pub fn lb_trivial(&self) -> bool {
        self.lb.is_none() || self.for_all_ijt(|i, j, tc| self.lb(i, j, tc) == 0)
    }

    pub fn ub_trivial(&self) -> bool {
        self.ub.is_none() || self.for_all_ijt(|i, j, tc| self.ub(i, j, tc) == i as i64)
    }

    pub fn bounds_non_decreasing(&self) -> bool {
        self.for_all_ijt(|i, j, tc| {
            i == 0
                || (self.lb(i, j, tc) >= self.lb(i - 1, j, tc)
                    && self.ub(i, j, tc) >= self.ub(i - 1, j, tc))
        })
    }

    pub fn weights_equal_across_clusters(&self) -> bool {
        match &self.weights {
            Weights::PerPoint(_) => true,
            Weights::PerCluster(w) => w.iter().all(|rows| rows.iter().all(|r| r == &rows[0])),
        }
    }

    fn for_all_ijt(&self, f: impl Fn(usize, usize, usize) -> bool) -> bool {
        let js = self.k.unwrap_or(1);
        (0..self.n()).all(|i| (0..js).all(|j| (0..self.num_types).all(|tc| f(i, j, tc))))
    }

    /// Per-type prefix sums of the weights for cluster index `j`:
    /// `wp[e] = w(0) + ... + w(e - 1)`.
    pub fn prefix_sums(&self, j: usize) -> Vec<Vec<f64>> {
        let n = self.n();
        (0..self.num_types)
            .map(|tc| {
                let mut wp = Vec::with_capacity(n + 1);
                wp.push(0.0);
                let mut acc = 0.0;
                for i in 0..n {
                    acc += self.weight(i, j, tc);
                    wp.push(acc);
                }
                wp
            })
            .collect()
    }
}

/// Computes zero-based start bounds from implicit limits. The sweep route is
/// used per column when the limits satisfy the slow-change conditions; the
/// binary-search route handles arbitrary limits. Both agree where both apply.
pub fn derive_bounds(
    inst: &ClusterInstance,
    imp: &ImplicitBounds,
) -> Result<(BoundTable, BoundTable), ClusterError> {
    let n = inst.n();
    let t = inst.num_types;
    let js = inst.k.unwrap_or(1);
    let shape_ok = |v: &Option<Vec<Vec<f64>>>| {
        v.as_ref()
            .is_none_or(|rows| rows.len() == n && rows.iter().all(|r| r.len() == js * t))
    };
    if !(shape_ok(&imp.lmin) && shape_ok(&imp.lmax) && shape_ok(&imp.wmin) && shape_ok(&imp.wmax)) {
        return Err(ClusterError::BadInstance(
            "implicit bound arrays must be n rows of k*T (or T) entries".into(),
        ));
    }
    if (imp.wmin.is_some() || imp.wmax.is_some()) && inst.any_negative_weight() {
        return Err(ClusterError::BadInstance(
            "weight bounds require non-negative weights".into(),
        ));
    }

    let get = |v: &Option<Vec<Vec<f64>>>, i: usize, j: usize, tc: usize, default: f64| -> f64 {
        v.as_ref().map_or(default, |rows| rows[i][j * t + tc])
    };

    let mut lb_data = vec![0i64; n * js * t];
    let mut ub_data = vec![0i64; n * js * t];
    for j in 0..js {
        for tc in 0..t {
            let lmax: Vec<f64> = (0..n)
                .map(|i| get(&imp.lmax, i, j, tc, f64::INFINITY))
                .collect();
            let lmin: Vec<f64> = (0..n).map(|i| get(&imp.lmin, i, j, tc, 0.0)).collect();
            let wmax: Vec<f64> = (0..n)
                .map(|i| get(&imp.wmax, i, j, tc, f64::INFINITY))
                .collect();
            let wmin: Vec<f64> = (0..n)
                .map(|i| get(&imp.wmin, i, j, tc, f64::NEG_INFINITY))
                .collect();
            let w: Vec<f64> = (0..n).map(|i| inst.weight(i, j, tc)).collect();
            let (lb_col, ub_col) = if sweep_applicable(&inst.x, &w, &lmin, &lmax, &wmin, &wmax) {
                derive_column_sweep(&inst.x, &w, &lmin, &lmax, &wmin, &wmax)
            } else {
                derive_column_binary(&inst.x, &w, &lmin, &lmax, &wmin, &wmax)
            };
            for i in 0..n {
                lb_data[i * js * t + j * t + tc] = lb_col[i];
                ub_data[i * js * t + j * t + tc] = ub_col[i];
            }
        }
    }
    let wrap = |data: Vec<i64>| BoundTable {
        per_cluster: js > 1 || inst.k.is_some(),
        t: js * t,
        data,
    };
    Ok((wrap(lb_data), wrap(ub_data)))
}

fn sweep_applicable(
    x: &[f64],
    w: &[f64],
    lmin: &[f64],
    lmax: &[f64],
    wmin: &[f64],
    wmax: &[f64],
) -> bool {
    (1..x.len()).all(|i| {
        let dx = x[i] - x[i - 1];
        lmin[i] <= lmin[i - 1] + dx
            && lmax[i] <= lmax[i - 1] + dx
            && wmin[i] <= wmin[i - 1] + w[i]
            && wmax[i] <= wmax[i - 1] + w[i]
    })
}

/// Two-pointer derivation; valid under the slow-change conditions.
pub fn derive_column_sweep(
    x: &[f64],
    w: &[f64],
    lmin: &[f64],
    lmax: &[f64],
    wmin: &[f64],
    wmax: &[f64],
) -> (Vec<i64>, Vec<i64>) {
    let n = x.len();
    let mut wp = vec![0.0; n + 1];
    for i in 0..n {
        wp[i + 1] = wp[i] + w[i];
    }
    let mut lb = vec![0i64; n];
    let mut ub = vec![0i64; n];
    let mut lo = 0usize;
    let mut hi: i64 = -1;
    for i in 0..n {
        while lo <= i && (x[i] - x[lo] > lmax[i] || wp[i + 1] - wp[lo] > wmax[i]) {
            lo += 1;
        }
        lb[i] = lo as i64;
        while hi + 1 <= i as i64 {
            let c = (hi + 1) as usize;
            if x[i] - x[c] >= lmin[i] && wp[i + 1] - wp[c] >= wmin[i] {
                hi += 1;
            } else {
                break;
            }
        }
        ub[i] = hi;
    }
    (lb, ub)
}

/// Binary-search derivation over the sorted coordinates and prefix sums;
/// valid for arbitrary limit arrays.
pub fn derive_column_binary(
    x: &[f64],
    w: &[f64],
    lmin: &[f64],
    lmax: &[f64],
    wmin: &[f64],
    wmax: &[f64],
) -> (Vec<i64>, Vec<i64>) {
    let n = x.len();
    let mut wp = vec![0.0; n + 1];
    for i in 0..n {
        wp[i + 1] = wp[i] + w[i];
    }
    let mut lb = vec![0i64; n];
    let mut ub = vec![0i64; n];
    for i in 0..n {
        // Smallest s in [0, i] with x[i]-x[s] <= lmax and wp-sum <= wmax.
        let mut lo = 0usize;
        let mut hi = i + 1; // i+1 = empty
        while lo < hi {
            let mid = (lo + hi) / 2;
            if mid <= i && x[i] - x[mid] <= lmax[i] && wp[i + 1] - wp[mid] <= wmax[i] {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        lb[i] = lo as i64;
        // Largest s in [0, i] with x[i]-x[s] >= lmin and wp-sum >= wmin.
        let mut lo2: i64 = -1;
        let mut hi2: i64 = i as i64;
        while lo2 < hi2 {
            let mid = (lo2 + hi2 + 1) / 2;
            let m = mid as usize;
            if x[i] - x[m] >= lmin[i] && wp[i + 1] - wp[m] >= wmin[i] {
                lo2 = mid;
            } else {
                hi2 = mid - 1;
            }
        }
        ub[i] = lo2;
    }
    (lb, ub)
}
