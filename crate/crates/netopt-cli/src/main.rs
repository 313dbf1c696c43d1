//! Command-line front end for the netopt solvers.
//!
//! Every subcommand reads plain-text instance files, prints a line-oriented
//! result on stdout (stable grammar, suitable for diffing) and a small run
//! report on stderr. `--check` reruns the designated reference for the
//! subcommand and compares. `--json` emits the same payload as a single JSON
//! document instead.
//!
//! Exit codes: 0 success, 2 infeasible, 1 error.

use clap::{Args, Parser, Subcommand};
use netopt::backup::{backup_all, BackupStrategy};
use netopt::cluster::{
    evaluate_solution, partition_is_valid, solve as cluster_solve, ClusterInstance, ClusterStrategy,
};
use netopt::design::{
    check_regular, diameter3_design, greedy_for_center_direct, hop_diameter, kregular_even,
    kregular_general, pick_center_vertex, CenterMode, DesignResult, LabeledComplete,
};
use netopt::graph::{Graph, Latency, INF};
use netopt::latency::{
    retarget_atmost, retarget_exact, tree_decrease_binary, tree_decrease_unit, RetargetOutcome,
    TreeInstance,
};
use netopt::mobile::{earliest_cover_time, parse_decimal, CoverStrategy, LineSet};
use serde_json::{json, Value};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "netopt",
    about = "Offline network optimization toolkit",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Also run the subcommand's reference oracle and compare.
    #[arg(long, global = true)]
    check: bool,
    /// Emit a single JSON document instead of line output.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized internals (falls back to NETOPT_SEED).
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Backup shortest paths avoiding each node's last tree edge.
    Backup {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        src: usize,
        #[arg(long, default_value = "bottom_up")]
        strategy: String,
    },
    /// Retarget edge latencies so source distances match a target file.
    Retarget {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        src: usize,
        #[arg(long)]
        targets: String,
        #[arg(long, default_value = "exact")]
        mode: String,
    },
    /// Budgeted latency decrease on a rooted tree.
    Treedec {
        #[arg(long)]
        tree: String,
        #[arg(long)]
        budget: i64,
        #[arg(long, default_value = "binary")]
        strategy: String,
        #[arg(long, default_value_t = 0)]
        src: usize,
    },
    /// Diameter-3 design minimizing distinct labels.
    Design3 {
        #[arg(long)]
        labels: String,
        /// all | fixedx | fixedx:V | edge:X,Y
        #[arg(long, default_value = "all")]
        centers: String,
        /// Evaluate candidate centers on worker threads (same result).
        #[arg(long)]
        parallel: bool,
    },
    /// Connected k-regular graph construction.
    Kregular {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Use the node-insertion construction (k must be even).
        #[arg(long)]
        even_method: bool,
    },
    /// Consecutive clustering of weighted points on a line.
    Cluster {
        #[arg(long)]
        instance: String,
        #[arg(long, default_value = "generic")]
        strategy: String,
    },
    /// Earliest time moving points fit in K intervals of length L.
    Cover {
        #[arg(long)]
        points: String,
        #[arg(long = "L")]
        length: String,
        #[arg(long = "K")]
        budget: usize,
        #[arg(long, default_value = "rescan")]
        strategy: String,
    },
}

struct Report {
    subcommand: &'static str,
    strategy: String,
    digest: u64,
    payload: Vec<String>,
    json_payload: Value,
    check: Option<Result<(), String>>,
    infeasible: bool,
}

fn fnv1a(data: &[u8], mut hash: u64) -> u64 {
    for &b in data {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

fn read_file(path: &str) -> Result<(String, u64), String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
    let digest = fnv1a(text.as_bytes(), 0xcbf29ce484222325);
    Ok((text, digest))
}

fn fmt_value(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

fn fmt_latency(l: Latency) -> String {
    if l == INF {
        "INF".into()
    } else {
        l.to_string()
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let _seed = cli
        .common
        .seed
        .or_else(|| {
            std::env::var("NETOPT_SEED")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(0);
    let started = Instant::now();
    match run(&cli.command, &cli.common) {
        Ok(report) => {
            let elapsed_us = started.elapsed().as_micros();
            let check_text = report.check.as_ref().map(|c| match c {
                Ok(()) => "ok".to_string(),
                Err(msg) => format!("FAIL {msg}"),
            });
            if cli.common.json {
                let doc = json!({
                    "subcommand": report.subcommand,
                    "strategy": report.strategy,
                    "digest": format!("{:016x}", report.digest),
                    "infeasible": report.infeasible,
                    "result": report.json_payload,
                    "check": check_text,
                    "time_us": elapsed_us as u64,
                });
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            } else {
                for line in &report.payload {
                    println!("{line}");
                }
                if let Some(c) = &check_text {
                    println!("check: {c}");
                }
            }
            eprintln!(
                "time_us={} digest={:016x} subcommand={} strategy={}",
                elapsed_us, report.digest, report.subcommand, report.strategy
            );
            if report.check.as_ref().is_some_and(|c| c.is_err()) {
                ExitCode::from(1)
            } else if report.infeasible {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: &Command, common: &Common) -> Result<Report, String> {
    match cmd {
        Command::Backup {
            graph,
            src,
            strategy,
        } => run_backup(graph, *src, strategy, common),
        Command::Retarget {
            graph,
            src,
            targets,
            mode,
        } => run_retarget(graph, *src, targets, mode, common),
        Command::Treedec {
            tree,
            budget,
            strategy,
            src,
        } => run_treedec(tree, *budget, strategy, *src, common),
        Command::Design3 {
            labels,
            centers,
            parallel,
        } => run_design3(labels, centers, *parallel, common),
        Command::Kregular { n, k, even_method } => run_kregular(*n, *k, *even_method, common),
        Command::Cluster { instance, strategy } => run_cluster(instance, strategy, common),
        Command::Cover {
            points,
            length,
            budget,
            strategy,
        } => run_cover(points, length, *budget, strategy, common),
    }
}

fn run_backup(path: &str, src: usize, strategy: &str, common: &Common) -> Result<Report, String> {
    let strat = BackupStrategy::from_name(strategy).ok_or_else(|| {
        format!(
            "unknown strategy `{strategy}`; valid: {}",
            BackupStrategy::ALL.map(|s| s.name()).join(", ")
        )
    })?;
    let (text, digest) = read_file(path)?;
    let g = Graph::parse(&text).map_err(|e| format!("{path}: {e}"))?;
    let result = backup_all(&g, src, strat).map_err(|e| e.to_string())?;
    let mut payload = Vec::new();
    let mut jlines = Vec::new();
    for d in 0..g.node_count() {
        if d == src {
            continue;
        }
        let mut line = format!("{d} {}", fmt_latency(result.bp[d]));
        if let Some(w) = &result.witness[d] {
            for v in w {
                line.push_str(&format!(" {v}"));
            }
        }
        jlines.push(json!({
            "node": d,
            "bp": if result.bp[d] == INF { Value::Null } else { json!(result.bp[d]) },
            "path": result.witness[d],
        }));
        payload.push(line);
    }
    let check = common.check.then(|| {
        let reference = backup_all(&g, src, BackupStrategy::Naive).map_err(|e| e.to_string())?;
        for d in 0..g.node_count() {
            if result.bp[d] != reference.bp[d] {
                return Err(format!(
                    "first difference at node {d}: {} vs naive {}",
                    fmt_latency(result.bp[d]),
                    fmt_latency(reference.bp[d])
                ));
            }
        }
        Ok(())
    });
    Ok(Report {
        subcommand: "backup",
        strategy: strat.name().into(),
        digest,
        payload,
        json_payload: json!(jlines),
        check,
        infeasible: false,
    })
}

fn parse_targets(text: &str, n: usize) -> Result<Vec<Latency>, String> {
    let mut targets = vec![None; n];
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(format!("line {}: expected `d SP(d)`", line_no + 1));
        }
        let d: usize = fields[0]
            .parse()
            .map_err(|_| format!("line {}: invalid node", line_no + 1))?;
        if d >= n {
            return Err(format!("line {}: node {d} out of range", line_no + 1));
        }
        let t = if fields[1] == "inf" {
            INF
        } else {
            fields[1]
                .parse()
                .map_err(|_| format!("line {}: invalid target", line_no + 1))?
        };
        targets[d] = Some(t);
    }
    targets
        .into_iter()
        .enumerate()
        .map(|(d, t)| t.ok_or(format!("missing target for node {d}")))
        .collect()
}

fn run_retarget(
    gpath: &str,
    src: usize,
    tpath: &str,
    mode: &str,
    common: &Common,
) -> Result<Report, String> {
    let (gtext, d1) = read_file(gpath)?;
    let (ttext, d2) = read_file(tpath)?;
    let digest = fnv1a(&d2.to_le_bytes(), d1);
    let g = Graph::parse(&gtext).map_err(|e| format!("{gpath}: {e}"))?;
    let targets = parse_targets(&ttext, g.node_count()).map_err(|e| format!("{tpath}: {e}"))?;
    let exact = match mode {
        "exact" => true,
        "atmost" => false,
        _ => return Err(format!("unknown mode `{mode}`; valid: exact, atmost")),
    };
    let outcome = if exact {
        retarget_exact(&g, src, &targets)
    } else {
        retarget_atmost(&g, src, &targets)
    }
    .map_err(|e| e.to_string())?;
    let (payload, jp, infeasible, latencies) = match &outcome {
        RetargetOutcome::Infeasible => (
            vec!["infeasible".to_string()],
            json!({"infeasible": true}),
            true,
            None,
        ),
        RetargetOutcome::Feasible { latencies, cost } => {
            let mut payload = vec![format!("cost {cost}")];
            for (e, &l) in g.edges().iter().zip(latencies) {
                payload.push(format!("edge {} {} {l}", e.u, e.v));
            }
            (
                payload,
                json!({"cost": cost, "latencies": latencies}),
                false,
                Some(latencies.clone()),
            )
        }
    };
    let check = common.check.then(|| match &latencies {
        None => Ok(()),
        Some(lat) => {
            let g2 = Graph::new(
                g.node_count(),
                g.edges()
                    .iter()
                    .zip(lat)
                    .map(|(e, &l)| (e.u, e.v, l))
                    .collect(),
            )
            .map_err(|e| e.to_string())?;
            let (dist, _) = g2.dijkstra(src);
            for d in 0..g.node_count() {
                let ok = if exact {
                    dist[d] == targets[d]
                } else {
                    dist[d] <= targets[d]
                };
                if !ok {
                    return Err(format!(
                        "first difference at node {d}: distance {} vs target {}",
                        fmt_latency(dist[d]),
                        fmt_latency(targets[d])
                    ));
                }
            }
            Ok(())
        }
    });
    Ok(Report {
        subcommand: "retarget",
        strategy: mode.into(),
        digest,
        payload,
        json_payload: jp,
        check,
        infeasible,
    })
}

fn run_treedec(
    path: &str,
    budget: i64,
    strategy: &str,
    src: usize,
    common: &Common,
) -> Result<Report, String> {
    let (text, digest) = read_file(path)?;
    let g = Graph::parse(&text).map_err(|e| format!("{path}: {e}"))?;
    let inst = TreeInstance::from_graph(&g, src).map_err(|e| e.to_string())?;
    let result = match strategy {
        "unit" => tree_decrease_unit(&inst, budget),
        "binary" => tree_decrease_binary(&inst, budget),
        _ => {
            return Err(format!(
                "unknown strategy `{strategy}`; valid: unit, binary"
            ))
        }
    }
    .map_err(|e| e.to_string())?;
    let edge_lat = inst.edge_latencies(&result.latencies, &g);
    let mut payload = vec![
        format!("maxdist {}", result.max_dist),
        format!("cost {}", result.spent),
    ];
    for (e, &l) in g.edges().iter().zip(&edge_lat) {
        payload.push(format!("edge {} {} {l}", e.u, e.v));
    }
    let check = common.check.then(|| {
        let other = match strategy {
            "unit" => tree_decrease_binary(&inst, budget),
            _ => tree_decrease_unit(&inst, budget),
        }
        .map_err(|e| e.to_string())?;
        if other.max_dist != result.max_dist {
            return Err(format!(
                "strategies disagree: {} vs {}",
                result.max_dist, other.max_dist
            ));
        }
        Ok(())
    });
    Ok(Report {
        subcommand: "treedec",
        strategy: strategy.into(),
        digest,
        payload,
        json_payload: json!({
            "max_dist": result.max_dist,
            "cost": result.spent,
            "latencies": edge_lat,
        }),
        check,
        infeasible: false,
    })
}

fn parse_centers(spec: &str) -> Result<CenterMode, String> {
    if spec == "all" {
        return Ok(CenterMode::AllEdges);
    }
    if spec == "fixedx" {
        return Ok(CenterMode::FixedX(None));
    }
    if let Some(v) = spec.strip_prefix("fixedx:") {
        let v = v
            .parse()
            .map_err(|_| format!("invalid vertex in `{spec}`"))?;
        return Ok(CenterMode::FixedX(Some(v)));
    }
    if let Some(pair) = spec.strip_prefix("edge:") {
        let (x, y) = pair
            .split_once(',')
            .ok_or_else(|| format!("expected edge:X,Y in `{spec}`"))?;
        let x = x
            .parse()
            .map_err(|_| format!("invalid vertex in `{spec}`"))?;
        let y = y
            .parse()
            .map_err(|_| format!("invalid vertex in `{spec}`"))?;
        return Ok(CenterMode::FixedEdge(x, y));
    }
    Err(format!(
        "unknown centers `{spec}`; valid: all, fixedx, fixedx:V, edge:X,Y"
    ))
}

/// Candidate-parallel evaluation with a deterministic min-reduction; the
/// result is identical to the sequential run.
fn design3_parallel(lc: &LabeledComplete, mode: CenterMode) -> Result<DesignResult, String> {
    let n = lc.node_count();
    let centers: Vec<(usize, usize)> = match mode {
        CenterMode::AllEdges => (0..n)
            .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
            .collect(),
        CenterMode::FixedX(x) => {
            let x = x.unwrap_or_else(|| pick_center_vertex(lc));
            (0..n)
                .filter(|&y| y != x)
                .map(|y| (x.min(y), x.max(y)))
                .collect()
        }
        CenterMode::FixedEdge(x, y) => vec![(x.min(y), x.max(y))],
    };
    let workers = std::thread::available_parallelism()
        .map(|p| p.get())
        .unwrap_or(1)
        .min(centers.len().max(1));
    let chunk = centers.len().div_ceil(workers);
    let results: Vec<Option<DesignResult>> = std::thread::scope(|scope| {
        let handles: Vec<_> = centers
            .chunks(chunk.max(1))
            .map(|part| {
                scope.spawn(move || {
                    part.iter()
                        .map(|&(x, y)| {
                            diameter3_design(lc, CenterMode::FixedEdge(x, y))
                                .expect("validated center")
                        })
                        .min_by_key(|r| (r.distinct_labels(), r.center))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    results
        .into_iter()
        .flatten()
        .min_by_key(|r| (r.distinct_labels(), r.center))
        .ok_or_else(|| "no candidate centers".to_string())
}

fn run_design3(
    path: &str,
    centers: &str,
    parallel: bool,
    common: &Common,
) -> Result<Report, String> {
    let (text, digest) = read_file(path)?;
    let lc = LabeledComplete::parse(&text).map_err(|e| format!("{path}: {e}"))?;
    let mode = parse_centers(centers)?;
    let result = if parallel {
        design3_parallel(&lc, mode)?
    } else {
        diameter3_design(&lc, mode).map_err(|e| e.to_string())?
    };
    let mut payload = vec![
        format!("center {} {}", result.center.0, result.center.1),
        format!("distinct {}", result.distinct_labels()),
        format!(
            "labels {}",
            result
                .labels_used
                .iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        ),
    ];
    for &(v, to) in &result.attachment {
        payload.push(format!("attach {v} {to}"));
    }
    let check = common.check.then(|| {
        let edges = result.edges();
        let diam = hop_diameter(lc.node_count(), &edges);
        if diam > 3 {
            return Err(format!("hop diameter {diam} exceeds 3"));
        }
        let direct = greedy_for_center_direct(&lc, result.center.0, result.center.1);
        if direct
            != diameter3_design(&lc, CenterMode::FixedEdge(result.center.0, result.center.1))
                .map_err(|e| e.to_string())?
        {
            return Err("refined pass disagrees with the direct pass".into());
        }
        Ok(())
    });
    Ok(Report {
        subcommand: "design3",
        strategy: centers.into(),
        digest,
        payload,
        json_payload: json!({
            "center": [result.center.0, result.center.1],
            "distinct": result.distinct_labels(),
            "labels": result.labels_used,
            "attachment": result.attachment,
        }),
        check,
        infeasible: false,
    })
}

fn run_kregular(n: usize, k: usize, even_method: bool, common: &Common) -> Result<Report, String> {
    let g = if even_method {
        kregular_even(n, k)
    } else {
        kregular_general(n, k)
    }
    .map_err(|e| e.to_string())?;
    let payload: Vec<String> = g.to_text().lines().map(|s| s.to_string()).collect();
    let check = common.check.then(|| check_regular(&g, k));
    Ok(Report {
        subcommand: "kregular",
        strategy: if even_method {
            "even".into()
        } else {
            "general".into()
        },
        digest: fnv1a(format!("{n} {k}").as_bytes(), 0xcbf29ce484222325),
        payload,
        json_payload: json!({
            "n": n,
            "k": k,
            "edges": g.edges().iter().map(|e| json!([e.u, e.v])).collect::<Vec<_>>(),
        }),
        check,
        infeasible: false,
    })
}

fn run_cluster(path: &str, strategy: &str, common: &Common) -> Result<Report, String> {
    let strat = ClusterStrategy::from_name(strategy).ok_or_else(|| {
        format!(
            "unknown strategy `{strategy}`; valid: {}",
            ClusterStrategy::names().join(", ")
        )
    })?;
    let (text, digest) = read_file(path)?;
    let inst = ClusterInstance::parse(&text).map_err(|e| format!("{path}: {e}"))?;
    let solution = cluster_solve(&inst, strat).map_err(|e| e.to_string())?;
    let (payload, jp, infeasible) = match &solution {
        None => (
            vec!["infeasible".to_string()],
            json!({"infeasible": true}),
            true,
        ),
        Some(sol) => {
            let mut payload = vec![format!("value {}", fmt_value(sol.value))];
            if let Some(eps) = sol.approx {
                payload.push(format!("approx {eps:e}"));
            }
            for c in &sol.clusters {
                payload.push(format!("cluster {} {} {}", c.start, c.end, c.tc));
            }
            (
                payload,
                json!({
                    "value": sol.value,
                    "approx": sol.approx,
                    "clusters": sol.clusters.iter()
                        .map(|c| json!([c.start, c.end, c.tc]))
                        .collect::<Vec<_>>(),
                }),
                false,
            )
        }
    };
    let check = common.check.then(|| {
        let reference =
            cluster_solve(&inst, ClusterStrategy::Generic).map_err(|e| e.to_string())?;
        match (&solution, &reference) {
            (None, None) => Ok(()),
            (Some(a), Some(b)) => {
                if !partition_is_valid(&inst, &a.clusters) {
                    return Err("solution is not a valid partition".into());
                }
                if evaluate_solution(&inst, &a.clusters) != a.value {
                    return Err("recomputed objective differs from reported value".into());
                }
                let tol = a.approx.unwrap_or(0.0);
                if (a.value - b.value).abs() > tol {
                    return Err(format!(
                        "value {} differs from generic {}",
                        fmt_value(a.value),
                        fmt_value(b.value)
                    ));
                }
                Ok(())
            }
            (a, b) => Err(format!(
                "feasibility mismatch: {} vs generic {}",
                a.is_some(),
                b.is_some()
            )),
        }
    });
    Ok(Report {
        subcommand: "cluster",
        strategy: strat.name().into(),
        digest,
        payload,
        json_payload: jp,
        check,
        infeasible,
    })
}

fn run_cover(
    path: &str,
    length: &str,
    budget: usize,
    strategy: &str,
    common: &Common,
) -> Result<Report, String> {
    let strat = CoverStrategy::from_name(strategy)
        .ok_or_else(|| format!("unknown strategy `{strategy}`; valid: rescan, kinetic"))?;
    let (text, digest) = read_file(path)?;
    let len = parse_decimal(length).ok_or_else(|| format!("invalid length `{length}`"))?;
    let ls = LineSet::parse(&text, len, budget).map_err(|e| format!("{path}: {e}"))?;
    let te = earliest_cover_time(&ls, strat);
    let (payload, jp, infeasible) = match &te {
        Some(t) => (
            vec![format!("te {}/{}", t.numer(), t.denom())],
            json!({"te": format!("{}/{}", t.numer(), t.denom())}),
            false,
        ),
        None => (
            vec!["infeasible".to_string()],
            json!({"infeasible": true}),
            true,
        ),
    };
    let check = common.check.then(|| {
        let other = match strat {
            CoverStrategy::Rescan => CoverStrategy::Kinetic,
            CoverStrategy::Kinetic => CoverStrategy::Rescan,
        };
        let reference = earliest_cover_time(&ls, other);
        if reference != te {
            return Err(format!("strategies disagree: {te:?} vs {reference:?}"));
        }
        Ok(())
    });
    Ok(Report {
        subcommand: "cover",
        strategy: strat.name().into(),
        digest,
        payload,
        json_payload: jp,
        check,
        infeasible,
    })
}
