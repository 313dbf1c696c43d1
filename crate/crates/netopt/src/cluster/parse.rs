//! Text format for clustering instances.
//!
//! ```text
//! # header: n T k F objf ctype      (k is an integer or '-' for absent)
//! 4 2 2 1 sum sum
//! 0 1 2.5 4                         # coordinates, non-decreasing
//! weights                            # or `weights percluster`
//! 1 2                                # n lines of T values
//! ...                                # (percluster: n*k lines, point-major)
//! bounds explicit                    # optional; n (or n*k) lines of 2T
//! 1 1 1 1                            # one-based l u per type
//! ...
//! ```
//!
//! `bounds implicit` takes 4T values per line (`lmin lmax wmin wmax` per
//! type, `inf`/`-inf` allowed) and derives the explicit form.

use super::instance::{Agg, BoundTable, ClusterInstance, ImplicitBounds, Weights};
use super::ClusterError;

struct Lines<'a> {
    inner: std::iter::Peekable<std::vec::IntoIter<(usize, &'a str)>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let v: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        Lines {
            inner: v.into_iter().peekable(),
        }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str), ClusterError> {
        self.inner.next().ok_or_else(|| ClusterError::Parse {
            line: 0,
            message: format!("missing {what}"),
        })
    }

    fn peek(&mut self) -> Option<&(usize, &'a str)> {
        self.inner.peek()
    }
}

fn parse_f64(tok: &str, line: usize) -> Result<f64, ClusterError> {
    match tok {
        "inf" | "+inf" => Ok(f64::INFINITY),
        "-inf" => Ok(f64::NEG_INFINITY),
        _ => tok.parse().map_err(|_| ClusterError::Parse {
            line,
            message: format!("invalid number `{tok}`"),
        }),
    }
}

fn parse_row(line: usize, text: &str, want: usize) -> Result<Vec<f64>, ClusterError> {
    let vals: Vec<f64> = text
        .split_whitespace()
        .map(|t| parse_f64(t, line))
        .collect::<Result<_, _>>()?;
    if vals.len() != want {
        return Err(ClusterError::Parse {
            line,
            message: format!("expected {want} values, got {}", vals.len()),
        });
    }
    Ok(vals)
}

impl ClusterInstance {
    pub fn parse(text: &str) -> Result<ClusterInstance, ClusterError> {
        let mut lines = Lines::new(text);
        let (hline, header) = lines.next("header")?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 6 {
            return Err(ClusterError::Parse {
                line: hline,
                message: "header must be `n T k F objf ctype`".into(),
            });
        }
        let n: usize = fields[0].parse().map_err(|_| ClusterError::Parse {
            line: hline,
            message: "invalid n".into(),
        })?;
        let t: usize = fields[1].parse().map_err(|_| ClusterError::Parse {
            line: hline,
            message: "invalid T".into(),
        })?;
        let k: Option<usize> = if fields[2] == "-" {
            None
        } else {
            Some(fields[2].parse().map_err(|_| ClusterError::Parse {
                line: hline,
                message: "invalid k".into(),
            })?)
        };
        let f = parse_f64(fields[3], hline)?;
        let objf = Agg::from_name(fields[4]).ok_or(ClusterError::Parse {
            line: hline,
            message: "objf must be sum or max".into(),
        })?;
        let ctype = Agg::from_name(fields[5]).ok_or(ClusterError::Parse {
            line: hline,
            message: "ctype must be sum or max".into(),
        })?;

        let (xline, xtext) = lines.next("coordinates")?;
        let x = parse_row(xline, xtext, n)?;

        let (wline, wmarker) = lines.next("weights marker")?;
        let wfields: Vec<&str> = wmarker.split_whitespace().collect();
        let per_cluster = match wfields.as_slice() {
            ["weights"] => false,
            ["weights", "percluster"] => true,
            _ => {
                return Err(ClusterError::Parse {
                    line: wline,
                    message: "expected `weights` or `weights percluster`".into(),
                })
            }
        };
        if per_cluster && k.is_none() {
            return Err(ClusterError::Parse {
                line: wline,
                message: "per-cluster weights require a fixed k".into(),
            });
        }
        let rows = if per_cluster { n * k.unwrap() } else { n };
        let mut flat: Vec<Vec<f64>> = Vec::with_capacity(rows);
        for _ in 0..rows {
            let (l, txt) = lines.next("weight row")?;
            flat.push(parse_row(l, txt, t)?);
        }
        let weights = if per_cluster {
            let k = k.unwrap();
            Weights::PerCluster(
                (0..n)
                    .map(|i| (0..k).map(|j| flat[i * k + j].clone()).collect())
                    .collect(),
            )
        } else {
            Weights::PerPoint(flat)
        };
        let inst = ClusterInstance::new(x, weights, objf, vec![ctype; t], k, f)?;

        let Some(&(bline, bmarker)) = lines.peek() else {
            return Ok(inst);
        };
        let bfields: Vec<&str> = bmarker.split_whitespace().collect();
        let js = k.unwrap_or(1);
        let brows = if k.is_some() { n * js } else { n };
        match bfields.as_slice() {
            ["bounds", "explicit"] => {
                lines.next("bounds marker")?;
                let mut lb = vec![0i64; n * js * t];
                let mut ub = vec![0i64; n * js * t];
                for row in 0..brows {
                    let (lno, txt) = lines.next("bound row")?;
                    let vals = parse_row(lno, txt, 2 * t)?;
                    let (i, j) = (row / js, row % js);
                    for tc in 0..t {
                        let l1 = vals[2 * tc] as i64;
                        let u1 = vals[2 * tc + 1] as i64;
                        if l1 < 1 || u1 > (i as i64 + 1) || l1 > u1 {
                            return Err(ClusterError::Parse {
                                line: lno,
                                message: format!("bounds must satisfy 1 <= l <= u <= {}", i + 1),
                            });
                        }
                        lb[i * js * t + j * t + tc] = l1 - 1;
                        ub[i * js * t + j * t + tc] = u1 - 1;
                    }
                }
                let wrap = |data: Vec<i64>| {
                    if k.is_some() {
                        BoundTable::per_cluster(n, js, t, |i, j, tc| data[i * js * t + j * t + tc])
                    } else {
                        BoundTable::per_point(n, t, |i, tc| data[i * t + tc])
                    }
                };
                inst.with_bounds(wrap(lb), wrap(ub))
            }
            ["bounds", "implicit"] => {
                lines.next("bounds marker")?;
                let mut lmin = vec![vec![0.0; js * t]; n];
                let mut lmax = vec![vec![f64::INFINITY; js * t]; n];
                let mut wmin = vec![vec![f64::NEG_INFINITY; js * t]; n];
                let mut wmax = vec![vec![f64::INFINITY; js * t]; n];
                for row in 0..brows {
                    let (lno, txt) = lines.next("bound row")?;
                    let vals = parse_row(lno, txt, 4 * t)?;
                    let (i, j) = (row / js, row % js);
                    for tc in 0..t {
                        lmin[i][j * t + tc] = vals[4 * tc];
                        lmax[i][j * t + tc] = vals[4 * tc + 1];
                        wmin[i][j * t + tc] = vals[4 * tc + 2];
                        wmax[i][j * t + tc] = vals[4 * tc + 3];
                    }
                }
                inst.with_implicit_bounds(&ImplicitBounds {
                    lmin: Some(lmin),
                    lmax: Some(lmax),
                    wmin: Some(wmin),
                    wmax: Some(wmax),
                })
            }
            _ => Err(ClusterError::Parse {
                line: bline,
                message: "expected `bounds explicit` or `bounds implicit`".into(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{cluster_generic, ClusterInstance};

    #[test]
    fn parse_minimal() {
        let inst =
            ClusterInstance::parse("# demo\n3 1 2 1 sum sum\n0 1 2\nweights\n1\n2\n3\n").unwrap();
        assert_eq!(inst.n(), 3);
        assert_eq!(inst.k(), Some(2));
        let sol = cluster_generic(&inst).unwrap().unwrap();
        assert_eq!(sol.value, 8.0);
    }

    #[test]
    fn parse_with_explicit_bounds() {
        let inst = ClusterInstance::parse(
            "3 1 - 0 sum sum\n0 1 2\nweights\n1\n2\n3\nbounds explicit\n1 1\n2 2\n3 3\n",
        )
        .unwrap();
        // Bounds force singletons.
        let sol = cluster_generic(&inst).unwrap().unwrap();
        assert_eq!(sol.clusters.len(), 3);
    }

    #[test]
    fn parse_with_implicit_bounds() {
        let inst = ClusterInstance::parse(
            "3 1 - 0 sum sum\n0 1 4\nweights\n1\n2\n3\nbounds implicit\n0 inf -inf inf\n0 1.5 -inf inf\n0 1.5 -inf inf\n",
        )
        .unwrap();
        assert_eq!(inst.lb(2, 0, 0), 2);
    }

    #[test]
    fn parse_errors_name_lines() {
        let err = ClusterInstance::parse("3 1 - 0 sum sum\n0 1 2\nweights\n1\nx\n3\n").unwrap_err();
        match err {
            super::super::ClusterError::Parse { line, .. } => assert_eq!(line, 5),
            other => panic!("unexpected {other:?}"),
        }
    }
}
