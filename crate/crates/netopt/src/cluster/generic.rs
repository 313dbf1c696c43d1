//! Exact reference DP over all consecutive partitions: O(n^2 k T) with a
//! fixed cluster count, O(n^2 T) without.

use super::instance::ClusterInstance;
use super::{
    base_row, build_solution, build_solution_free, ClusterError, ClusterSolution, Provenance,
    Source,
};

/// Exact optimum with the default cluster cost (minimum across types).
pub fn cluster_generic(inst: &ClusterInstance) -> Result<Option<ClusterSolution>, ClusterError> {
    cluster_generic_with(inst, None)
}

/// Exact optimum with an arbitrary T-ary cluster-cost aggregate. The default
/// (`None`) picks the cheapest type; with a custom aggregate the recorded
/// per-cluster type is the argmin of the per-type aggregates, kept for
/// reporting only.
pub fn cluster_generic_with(
    inst: &ClusterInstance,
    ccost: Option<&dyn Fn(&[f64]) -> f64>,
) -> Result<Option<ClusterSolution>, ClusterError> {
    let n = inst.n();
    let t = inst.num_types();
    match inst.k() {
        Some(k) => {
            if k > n {
                return Ok(None);
            }
            let mut prev = base_row(n, inst.objf());
            let mut provs: Vec<Provenance> = Vec::with_capacity(k);
            for j in 0..k {
                let mut cur = vec![f64::INFINITY; n + 1];
                let mut prov: Provenance = vec![None; n + 1];
                pass(inst, j, &Source::Prev(&prev), &mut cur, &mut prov, t, ccost);
                provs.push(prov);
                prev = cur;
            }
            Ok(build_solution(inst, prev[n], |j, e| provs[j][e]))
        }
        None => {
            let mut row = base_row(n, inst.objf());
            let mut prov: Provenance = vec![None; n + 1];
            pass(inst, 0, &Source::SelfRef, &mut row, &mut prov, t, ccost);
            Ok(build_solution_free(inst, row[n], &prov))
        }
    }
}

fn pass(
    inst: &ClusterInstance,
    j: usize,
    source: &Source,
    row: &mut [f64],
    prov: &mut Provenance,
    t: usize,
    ccost: Option<&dyn Fn(&[f64]) -> f64>,
) {
    let n = inst.n();
    let f = inst.fixed_cost();
    let mut agg = vec![0.0f64; t];
    let mut agg2 = vec![0.0f64; t];
    for e in 1..=n {
        let q = e - 1;
        if matches!(source, Source::Prev(_)) {
            row[e] = f64::INFINITY;
        }
        let mut best = f64::INFINITY;
        let mut best_at: Option<(u32, u8)> = None;
        // Walk the cluster start from q down to 0, extending the per-type
        // aggregates incrementally.
        for s in (0..=q).rev() {
            for tc in 0..t {
                let w = inst.weight(s, j, tc);
                agg[tc] = if s == q {
                    w
                } else {
                    inst.ctype(tc).combine(agg[tc], w)
                };
                let violated = (s as i64) < inst.lb(q, j, tc) || (s as i64) > inst.ub(q, j, tc);
                agg2[tc] = if violated { f64::INFINITY } else { agg[tc] };
            }
            let (cc, arg_tc) = match ccost {
                Some(cf) => {
                    let cc = cf(&agg2);
                    let arg = (0..t)
                        .min_by(|&a, &b| agg2[a].partial_cmp(&agg2[b]).unwrap())
                        .unwrap();
                    (cc, arg)
                }
                None => {
                    let mut arg = 0;
                    for tc in 1..t {
                        if agg2[tc] < agg2[arg] {
                            arg = tc;
                        }
                    }
                    (agg2[arg], arg)
                }
            };
            let cand = inst.objf().combine(source.read(row, s), f + cc);
            if cand < best {
                best = cand;
                best_at = Some((s as u32, arg_tc as u8));
            }
        }
        if best < row[e] || matches!(source, Source::Prev(_)) {
            row[e] = best;
            prov[e] = best_at;
        }
    }
}
