//! Kinetic interval covering of moving 1D points: the earliest time at which
//! n points, each moving at constant speed, fit inside K closed intervals of
//! length L.
//!
//! All times and positions are exact rationals, so "just before an event" is
//! decidable from speed signs and the event set needs no epsilon reasoning.
//! The answer changes only at event times where two points coincide or their
//! distance crosses L transversally; both strategies evaluate the covering
//! count at t = 0 and at every event time, the rescan one by recomputing the
//! greedy from scratch, the kinetic one by patching square-root-sized groups.

use num_rational::Ratio;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

pub type Time = Ratio<i128>;

pub fn ratio(n: i128, d: i128) -> Time {
    Ratio::new(n, d)
}

/// Parses a decimal string (optionally signed, optionally fractional) into
/// an exact rational.
pub fn parse_decimal(s: &str) -> Option<Time> {
    let s = s.trim();
    let (sign, rest) = match s.strip_prefix('-') {
        Some(r) => (-1i128, r),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match rest.split_once('.') {
        Some((a, b)) => (a, b),
        None => (rest, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
        || frac_part.len() > 18
    {
        return None;
    }
    let int_val: i128 = if int_part.is_empty() {
        0
    } else {
        int_part.parse().ok()?
    };
    let denom = 10i128.checked_pow(frac_part.len() as u32)?;
    let frac_val: i128 = if frac_part.is_empty() {
        0
    } else {
        frac_part.parse().ok()?
    };
    Some(Ratio::new(sign * (int_val * denom + frac_val), denom))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MovingPoint {
    pub start: Time,
    /// Signed speed (direction times magnitude).
    pub velocity: Time,
}

impl MovingPoint {
    pub fn position(&self, t: Time) -> Time {
        self.start + self.velocity * t
    }
}

#[derive(Debug, Clone)]
pub struct LineSet {
    pub points: Vec<MovingPoint>,
    /// Interval length, positive.
    pub length: Time,
    /// Interval budget.
    pub budget: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MobileError {
    Empty,
    BadLength,
    BadBudget,
    BadRange { p: usize, q: usize },
    Parse { line: usize, message: String },
}

impl fmt::Display for MobileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MobileError::Empty => write!(f, "no points"),
            MobileError::BadLength => write!(f, "interval length must be positive"),
            MobileError::BadBudget => write!(f, "interval budget must be at least 1"),
            MobileError::BadRange { p, q } => write!(f, "bad rank range [{p}, {q}]"),
            MobileError::Parse { line, message } => write!(f, "line {line}: {message}"),
        }
    }
}

impl std::error::Error for MobileError {}

impl LineSet {
    pub fn new(points: Vec<MovingPoint>, length: Time, budget: usize) -> Result<Self, MobileError> {
        if points.is_empty() {
            return Err(MobileError::Empty);
        }
        if length <= Time::zero() {
            return Err(MobileError::BadLength);
        }
        if budget == 0 {
            return Err(MobileError::BadBudget);
        }
        Ok(LineSet {
            points,
            length,
            budget,
        })
    }

    /// Parses the points file: one `x d v` line per point with `d` in
    /// `{-1, +1}`; `#` starts a comment.
    pub fn parse(text: &str, length: Time, budget: usize) -> Result<Self, MobileError> {
        let mut points = Vec::new();
        for (line_no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(MobileError::Parse {
                    line: line_no + 1,
                    message: "expected `x d v`".into(),
                });
            }
            let x = parse_decimal(fields[0]).ok_or(MobileError::Parse {
                line: line_no + 1,
                message: "invalid x".into(),
            })?;
            let d: i128 = match fields[1] {
                "-1" => -1,
                "1" | "+1" => 1,
                _ => {
                    return Err(MobileError::Parse {
                        line: line_no + 1,
                        message: "direction must be -1 or +1".into(),
                    })
                }
            };
            let v = parse_decimal(fields[2]).ok_or(MobileError::Parse {
                line: line_no + 1,
                message: "invalid v".into(),
            })?;
            points.push(MovingPoint {
                start: x,
                velocity: v * Ratio::new(d, 1),
            });
        }
        LineSet::new(points, length, budget)
    }

    fn n(&self) -> usize {
        self.points.len()
    }

    /// Point ids sorted by position at `t`; coincident points are ordered by
    /// velocity (the order just after `t`), then id.
    fn order_at(&self, t: Time) -> Vec<usize> {
        let mut ids: Vec<usize> = (0..self.n()).collect();
        ids.sort_by(|&a, &b| {
            let pa = self.points[a].position(t);
            let pb = self.points[b].position(t);
            pa.cmp(&pb)
                .then_with(|| self.points[a].velocity.cmp(&self.points[b].velocity))
                .then_with(|| a.cmp(&b))
        });
        ids
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverTables {
    /// `m[i]` = minimum number of closed length-L intervals covering the
    /// points at ranks i..=q, each anchored at its leftmost point.
    pub m: Vec<usize>,
    /// `next[i]` = rank where the second interval starts (q + 1 if one
    /// interval suffices).
    pub next: Vec<usize>,
    /// `last[i]` = rank where the last interval starts.
    pub last: Vec<usize>,
}

/// The greedy covering recurrence over sorted positions, restricted to ranks
/// `p..=q`. Tables are indexed by rank; entries outside the range are
/// meaningless.
fn cover_tables(ys: &[Time], p: usize, q: usize, length: Time) -> CoverTables {
    let mut m = vec![0usize; q + 2];
    let mut next = vec![0usize; q + 2];
    let mut last = vec![0usize; q + 2];
    let mut right = q;
    for i in (p..=q).rev() {
        while ys[right] - ys[i] > length {
            right -= 1;
        }
        next[i] = right + 1;
        if right == q {
            m[i] = 1;
            last[i] = i;
        } else {
            m[i] = 1 + m[right + 1];
            last[i] = last[right + 1];
        }
    }
    CoverTables { m, next, last }
}

/// Minimum intervals covering the points ranked `p..=q` at time `tc`, with
/// the full greedy tables. Ranks refer to the position order at `tc` (ties
/// by velocity then id).
pub fn min_intervals_at(
    ls: &LineSet,
    tc: Time,
    p: usize,
    q: usize,
) -> Result<CoverTables, MobileError> {
    if p > q || q >= ls.n() {
        return Err(MobileError::BadRange { p, q });
    }
    let order = ls.order_at(tc);
    let ys: Vec<Time> = order.iter().map(|&id| ls.points[id].position(tc)).collect();
    Ok(cover_tables(&ys, p, q, ls.length))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    Cross,
    Close,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    pub time: Time,
    pub kind: EventKind,
    pub i: usize,
    pub j: usize,
}

/// All transversal events at t >= 0: pair coincidences and pair distances
/// crossing the interval length. Sorted by time, crosses before closes at
/// equal times, then by pair. Pairs with equal velocities generate nothing.
pub fn event_set(ls: &LineSet) -> Vec<Event> {
    let n = ls.n();
    let mut events = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let dx = ls.points[i].start - ls.points[j].start;
            let dw = ls.points[i].velocity - ls.points[j].velocity;
            if dw.is_zero() {
                continue;
            }
            let cross = -dx / dw;
            if cross >= Time::zero() {
                events.push(Event {
                    time: cross,
                    kind: EventKind::Cross,
                    i,
                    j,
                });
            }
            for target in [ls.length, -ls.length] {
                let t = (target - dx) / dw;
                if t >= Time::zero() {
                    events.push(Event {
                        time: t,
                        kind: EventKind::Close,
                        i,
                        j,
                    });
                }
            }
        }
    }
    events.sort_by(|a, b| {
        a.time
            .cmp(&b.time)
            .then_with(|| {
                let rank = |k: EventKind| match k {
                    EventKind::Cross => 0,
                    EventKind::Close => 1,
                };
                rank(a.kind).cmp(&rank(b.kind))
            })
            .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
    });
    events
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverStrategy {
    Rescan,
    Kinetic,
}

impl CoverStrategy {
    pub fn name(&self) -> &'static str {
        match self {
            CoverStrategy::Rescan => "rescan",
            CoverStrategy::Kinetic => "kinetic",
        }
    }

    pub fn from_name(s: &str) -> Option<CoverStrategy> {
        match s {
            "rescan" => Some(CoverStrategy::Rescan),
            "kinetic" => Some(CoverStrategy::Kinetic),
            _ => None,
        }
    }
}

/// Evaluation times: t = 0 plus every distinct event time.
pub fn evaluation_times(ls: &LineSet) -> Vec<Time> {
    let mut times = vec![Time::zero()];
    for ev in event_set(ls) {
        if times.last() != Some(&ev.time) && ev.time > Time::zero() {
            times.push(ev.time);
        }
    }
    times
}

/// The covering count m(1) at t = 0 and at every event time, in time order.
pub fn cover_profile(ls: &LineSet, strategy: CoverStrategy) -> Vec<(Time, usize)> {
    match strategy {
        CoverStrategy::Rescan => rescan_profile(ls),
        CoverStrategy::Kinetic => kinetic_profile(ls),
    }
}

/// Earliest evaluated time at which the points fit in the budgeted number of
/// intervals, or `None`.
pub fn earliest_cover_time(ls: &LineSet, strategy: CoverStrategy) -> Option<Time> {
    cover_profile(ls, strategy)
        .into_iter()
        .find(|&(_, m)| m <= ls.budget)
        .map(|(t, _)| t)
}

fn rescan_profile(ls: &LineSet) -> Vec<(Time, usize)> {
    let n = ls.n();
    evaluation_times(ls)
        .into_iter()
        .map(|t| {
            let tables = min_intervals_at(ls, t, 0, n - 1).expect("full range");
            (t, tables.m[0])
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Kinetic maintenance
// ---------------------------------------------------------------------------

struct Kinetic<'a> {
    ls: &'a LineSet,
    group_size: usize,
    /// order[rank] = point id, inv[id] = rank.
    order: Vec<usize>,
    inv: Vec<usize>,
    /// Global next per rank.
    next: Vec<usize>,
    m_local: Vec<usize>,
    next_local: Vec<usize>,
    last_local: Vec<usize>,
}

impl<'a> Kinetic<'a> {
    fn new(ls: &'a LineSet) -> Self {
        let n = ls.n();
        let group_size = (n as f64).sqrt().ceil() as usize;
        let order = ls.order_at(Time::zero());
        let mut inv = vec![0usize; n];
        for (rank, &id) in order.iter().enumerate() {
            inv[id] = rank;
        }
        let mut k = Kinetic {
            ls,
            group_size: group_size.max(1),
            order,
            inv,
            next: vec![0; n],
            m_local: vec![0; n + 1],
            next_local: vec![0; n + 1],
            last_local: vec![0; n + 1],
        };
        k.rebuild_all(Time::zero());
        k
    }

    fn n(&self) -> usize {
        self.ls.n()
    }

    fn group_of(&self, rank: usize) -> usize {
        rank / self.group_size
    }

    fn group_range(&self, g: usize) -> (usize, usize) {
        let gs = g * self.group_size;
        let ge = (gs + self.group_size - 1).min(self.n() - 1);
        (gs, ge)
    }

    fn positions(&self, t: &Time) -> Vec<Time> {
        self.order
            .iter()
            .map(|&id| self.ls.points[id].position(*t))
            .collect()
    }

    fn rebuild_all(&mut self, t: Time) {
        let n = self.n();
        let ys = self.positions(&t);
        // Global next by two-pointer.
        let mut right = 0usize;
        for i in 0..n {
            if right < i {
                right = i;
            }
            while right + 1 < n && ys[right + 1] - ys[i] <= self.ls.length {
                right += 1;
            }
            self.next[i] = right + 1;
        }
        let groups = n.div_ceil(self.group_size);
        for g in 0..groups {
            self.rebuild_group(g, &ys);
        }
    }

    fn rebuild_group_at(&mut self, g: usize, t: &Time) {
        let ys = self.positions(t);
        self.rebuild_group(g, &ys);
    }

    fn rebuild_group(&mut self, g: usize, ys: &[Time]) {
        let (gs, ge) = self.group_range(g);
        let t = cover_tables(ys, gs, ge, self.ls.length);
        for i in gs..=ge {
            self.m_local[i] = t.m[i];
            self.next_local[i] = t.next[i];
            self.last_local[i] = t.last[i];
        }
    }

    /// Group-hopping count of intervals covering all ranks.
    fn count(&self) -> usize {
        let mut m = self.m_local[0];
        let mut po = self.last_local[0];
        loop {
            let nx = self.next[po];
            if nx >= self.n() {
                break;
            }
            m += self.m_local[nx];
            po = self.last_local[nx];
        }
        m
    }

    /// Applies the cross events of a batch. Every rank between two crossing
    /// lines shares their position, so the union of event rank spans splits
    /// into coincidence runs; sorting each run by (velocity, id) is the order
    /// just after the event time. Positions inside a run are equal at the
    /// event time, so every rank-indexed table stays valid.
    fn apply_crosses(&mut self, batch: &[Event], tc: &Time) {
        let mut spans: Vec<(usize, usize)> = batch
            .iter()
            .filter(|e| e.kind == EventKind::Cross)
            .map(|e| {
                let (ra, rb) = (self.inv[e.i], self.inv[e.j]);
                (ra.min(rb), ra.max(rb))
            })
            .collect();
        if spans.is_empty() {
            return;
        }
        spans.sort_unstable();
        let mut merged: Vec<(usize, usize)> = Vec::new();
        for (lo, hi) in spans {
            match merged.last_mut() {
                Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
                _ => merged.push((lo, hi)),
            }
        }
        for (lo, hi) in merged {
            debug_assert!(
                (lo..hi).all(|r| {
                    self.ls.points[self.order[r]].position(*tc)
                        == self.ls.points[self.order[r + 1]].position(*tc)
                }),
                "coincidence run has unequal positions"
            );
            self.order[lo..=hi].sort_by(|&a, &b| {
                self.ls.points[a]
                    .velocity
                    .cmp(&self.ls.points[b].velocity)
                    .then_with(|| a.cmp(&b))
            });
            for r in lo..=hi {
                self.inv[self.order[r]] = r;
            }
        }
    }

    /// True when the pair is moving apart at the event time. A close pair
    /// never coincides, so its relative order is the same before and after
    /// the batch swaps.
    fn departing(&self, e: &Event) -> bool {
        let (ra, rb) = (self.inv[e.i], self.inv[e.j]);
        let (lo, hi) = if ra < rb { (e.i, e.j) } else { (e.j, e.i) };
        self.ls.points[hi].velocity > self.ls.points[lo].velocity
    }

    /// Entering closes, applied with pre-swap ranks before the evaluation:
    /// the upper line joins the lower line's closed interval exactly at the
    /// event time. Touched groups are rebuilt at the event time.
    fn apply_entering(&mut self, batch: &[Event], tc: &Time) {
        let mut dirty = Vec::new();
        for e in batch.iter().filter(|e| e.kind == EventKind::Close) {
            if self.departing(e) {
                continue;
            }
            let (ra, rb) = (
                self.inv[e.i].min(self.inv[e.j]),
                self.inv[e.i].max(self.inv[e.j]),
            );
            self.next[ra] = self.next[ra].max(rb + 1);
            dirty.push(self.group_of(ra));
            dirty.push(self.group_of(rb));
        }
        dirty.sort_unstable();
        dirty.dedup();
        for g in dirty {
            self.rebuild_group_at(g, tc);
        }
    }

    /// Departing closes, applied with post-swap ranks after the evaluation:
    /// the upper line leaves for the following gap. Every group touched by a
    /// close event is rebuilt at a time strictly inside the gap, so stale
    /// exact-tangency coverage cannot linger.
    fn apply_departing(&mut self, batch: &[Event], gap_time: &Time) {
        let mut dirty = Vec::new();
        for e in batch.iter().filter(|e| e.kind == EventKind::Close) {
            let (ra, rb) = (
                self.inv[e.i].min(self.inv[e.j]),
                self.inv[e.i].max(self.inv[e.j]),
            );
            if self.departing(e) {
                self.next[ra] = self.next[ra].min(rb);
            }
            dirty.push(self.group_of(ra));
            dirty.push(self.group_of(rb));
        }
        dirty.sort_unstable();
        dirty.dedup();
        for g in dirty {
            self.rebuild_group_at(g, gap_time);
        }
    }
}

fn kinetic_profile(ls: &LineSet) -> Vec<(Time, usize)> {
    let events = event_set(ls);
    let mut batches: BTreeMap<Time, Vec<Event>> = BTreeMap::new();
    for e in events {
        batches.entry(e.time).or_default().push(e);
    }
    let times: Vec<Time> = batches.keys().cloned().collect();
    let mut k = Kinetic::new(ls);
    let mut profile = vec![(Time::zero(), k.count())];
    for (idx, tc) in times.iter().enumerate() {
        let gap_time = match times.get(idx + 1) {
            Some(next) => (*tc + *next) / ratio(2, 1),
            None => *tc + ratio(1, 1),
        };
        let batch = &batches[tc];
        if tc.is_zero() {
            // The fresh build already reflects positions (and the post-zero
            // ordering) at t = 0; only the gap-side updates remain.
            k.apply_departing(batch, &gap_time);
            continue;
        }
        k.apply_entering(batch, tc);
        profile.push((*tc, k.count()));
        k.apply_crosses(batch, tc);
        k.apply_departing(batch, &gap_time);
    }
    profile
}
