//! Parsing of graph, marked-state and grid arguments.

use std::fmt;
use std::fs;
use std::path::Path;

use anyhow::Context;
use qwsearch_core::graphs::{self, Diagnostic};
use qwsearch_core::{Error, Family, Graph, MarkedState};

/// Deviation of the file norm from one that triggers a warning.
pub const NORM_WARN_TOL: f64 = 1e-6;

/// A command-line mistake that clap cannot catch (exit code 1).
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

pub fn usage<T>(msg: impl Into<String>) -> anyhow::Result<T> {
    Err(Usage(msg.into()).into())
}

/// Parameter names of each named family, in positional order.
pub fn family_params(name: &str) -> Option<&'static [&'static str]> {
    Some(match canonical(name) {
        "hypercube" => &["n"],
        "complete" => &["n"],
        "complete-minus" => &["n", "l"],
        "paley" => &["q"],
        "multipartite" => &["m", "k"],
        "srg" => &["n", "k", "a", "c"],
        _ => return None,
    })
}

pub fn canonical(name: &str) -> &str {
    match name {
        "complete_minus" => "complete-minus",
        "regular_multipartite" => "multipartite",
        other => other,
    }
}

/// Maps a generator name and its parameters to a family tag.
pub fn family(name: &str, params: &[usize]) -> anyhow::Result<Family> {
    let Some(names) = family_params(name) else {
        return usage(format!(
            "unknown family '{name}' (expected hypercube, complete, complete-minus, paley or multipartite)"
        ));
    };
    if params.len() != names.len() {
        return usage(format!(
            "family {} takes {} parameter(s) ({}), got {}",
            canonical(name),
            names.len(),
            names.join(", "),
            params.len()
        ));
    }
    Ok(match (canonical(name), params) {
        ("hypercube", &[n]) => {
            let n = u32::try_from(n)
                .map_err(|_| Error::InvalidParameter(format!("n = {n} too large")))?;
            Family::Hypercube { n }
        }
        ("complete", &[n]) => Family::Complete { n },
        ("complete-minus", &[n, l]) => Family::CompleteMinus { n, l },
        ("paley", &[q]) => Family::Paley { q },
        ("multipartite", &[m, k]) => Family::Multipartite { m, k },
        _ => return usage(format!("'{name}' has no graph generator")),
    })
}

/// Splits `a,b,c` into integers.
pub fn integers(list: &str) -> anyhow::Result<Vec<usize>> {
    list.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<usize>()
                .map_err(|_| Usage(format!("expected a non-negative integer, got '{t}'")).into())
        })
        .collect()
}

/// A positional graph argument: `family:params` or a file path.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    Family(Family),
    File(Graph),
}

impl GraphSource {
    pub fn parse(arg: &str) -> anyhow::Result<Self> {
        if let Some((name, params)) = arg.split_once(':') {
            return Ok(GraphSource::Family(family(
                name.trim(),
                &integers(params)?,
            )?));
        }
        let text = fs::read_to_string(arg).with_context(|| format!("reading graph file {arg}"))?;
        let g = if looks_like_dot(Path::new(arg), &text) {
            graphs::parse_dot(&text)?
        } else {
            graphs::parse_edge_list(&text)?
        };
        check(&g)?;
        Ok(GraphSource::File(g))
    }

    pub fn n_vertices(&self) -> anyhow::Result<usize> {
        Ok(match self {
            GraphSource::Family(Family::Hypercube { n }) => {
                if *n >= usize::BITS {
                    return Err(Error::InvalidParameter(format!(
                        "hypercube dimension {n} too large"
                    ))
                    .into());
                }
                1usize << n
            }
            GraphSource::Family(Family::Complete { n })
            | GraphSource::Family(Family::CompleteMinus { n, .. }) => *n,
            GraphSource::Family(Family::Paley { q }) => *q,
            GraphSource::Family(Family::Multipartite { m, k }) => m * k,
            GraphSource::Family(Family::Custom) => unreachable!("custom graphs come from files"),
            GraphSource::File(g) => g.n_vertices(),
        })
    }

    pub fn graph(&self) -> anyhow::Result<Graph> {
        Ok(match self {
            GraphSource::Family(f) => f.build()?,
            GraphSource::File(g) => g.clone(),
        })
    }
}

fn looks_like_dot(path: &Path, text: &str) -> bool {
    if matches!(
        path.extension().and_then(|e| e.to_str()),
        Some("dot" | "gv")
    ) {
        return true;
    }
    let head = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with("//"))
        .unwrap_or("");
    head.starts_with("graph") || head.starts_with("strict")
}

/// Turns validation diagnostics into a domain error.
fn check(g: &Graph) -> qwsearch_core::Result<()> {
    let Err(issues) = graphs::validate(g) else {
        return Ok(());
    };
    if let Some(Diagnostic::Disconnected { components }) = issues
        .iter()
        .find(|d| matches!(d, Diagnostic::Disconnected { .. }))
    {
        return Err(Error::Disconnected {
            zero_modes: *components,
        });
    }
    let msgs: Vec<String> = issues.iter().map(ToString::to_string).collect();
    Err(Error::InvalidInput(msgs.join("; ")))
}

/// A marked state from a preset (`single:v`, `pair:u,v`, `uniform:v1,...`)
/// or a file of `vertex weight` lines.
pub fn marked_state(arg: &str, n: usize) -> anyhow::Result<MarkedState> {
    if let Some((kind, list)) = arg.split_once(':') {
        let vs = integers(list)?;
        return Ok(match (kind.trim(), vs.as_slice()) {
            ("single", &[v]) => MarkedState::single(n, v)?,
            ("pair", &[u, v]) => MarkedState::pair(n, u, v)?,
            ("uniform", _) => MarkedState::uniform_over(n, &vs)?,
            ("single" | "pair", _) => {
                return usage(format!("wrong vertex count in state preset '{arg}'"))
            }
            _ => {
                return usage(format!(
                    "unknown state preset '{kind}' (expected single, pair or uniform)"
                ))
            }
        });
    }
    let text =
        fs::read_to_string(arg).with_context(|| format!("reading marked state file {arg}"))?;
    let entries = parse_state_file(&text)?;
    let norm = entries.iter().map(|e| e.1 * e.1).sum::<f64>().sqrt();
    if norm > 0.0 && (norm - 1.0).abs() > NORM_WARN_TOL {
        eprintln!("warning: marked state norm is {norm}; normalizing");
    }
    Ok(MarkedState::from_sparse(n, &entries)?)
}

pub fn parse_state_file(text: &str) -> qwsearch_core::Result<Vec<(usize, f64)>> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = body.split_whitespace().collect();
        match fields.as_slice() {
            [] => continue,
            [v, w] => {
                let bad = |what: &str, tok: &str| Error::Parse {
                    line,
                    msg: format!("bad {what} '{tok}'"),
                };
                let v = v.parse::<usize>().map_err(|_| bad("vertex index", v))?;
                let w = w
                    .parse::<f64>()
                    .ok()
                    .filter(|w| w.is_finite())
                    .ok_or_else(|| bad("weight", w))?;
                entries.push((v, w));
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    msg: "expected 'vertex weight'".into(),
                })
            }
        }
    }
    Ok(entries)
}

/// One `name=lo..hi` (or `name=v`) axis of a parameter grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Axis {
    pub name: String,
    pub lo: usize,
    pub hi: usize,
}

impl Axis {
    pub fn parse(spec: &str) -> anyhow::Result<Axis> {
        let Some((name, range)) = spec.split_once('=') else {
            return usage(format!("grid axis '{spec}' is not of the form name=lo..hi"));
        };
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Usage(format!("bad bound '{t}' in grid axis '{spec}'")))
        };
        let (lo, hi) = match range.split_once("..") {
            Some((lo, hi)) => {
                let hi = hi.strip_prefix('=').unwrap_or(hi);
                (num(lo)?, num(hi)?)
            }
            None => {
                let v = num(range)?;
                (v, v)
            }
        };
        if lo > hi {
            return usage(format!("empty range in grid axis '{spec}'"));
        }
        Ok(Axis {
            name: name.trim().to_string(),
            lo,
            hi,
        })
    }
}

/// Every parameter tuple of the grid, ordered lexicographically in the
/// family's parameter order.
pub fn grid_points(names: &[&str], axes: &[Axis]) -> anyhow::Result<Vec<Vec<usize>>> {
    for a in axes {
        if !names.contains(&a.name.as_str()) {
            return usage(format!(
                "grid axis '{}' is not one of {}",
                a.name,
                names.join(", ")
            ));
        }
        if axes.iter().filter(|b| b.name == a.name).count() > 1 {
            return usage(format!("grid axis '{}' given twice", a.name));
        }
    }
    let ordered: Vec<&Axis> = names
        .iter()
        .map(|n| axes.iter().find(|a| a.name == *n))
        .collect::<Option<_>>()
        .ok_or_else(|| {
            Usage(format!(
                "grid must cover every parameter: {}",
                names.join(", ")
            ))
        })?;
    let mut points = vec![Vec::new()];
    for axis in ordered {
        points = points
            .into_iter()
            .flat_map(|p| {
                (axis.lo..=axis.hi).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_specs() {
        assert_eq!(
            GraphSource::parse("complete-minus:10,5").unwrap(),
            GraphSource::Family(Family::CompleteMinus { n: 10, l: 5 })
        );
        assert_eq!(
            GraphSource::parse("hypercube:16")
                .unwrap()
                .n_vertices()
                .unwrap(),
            65536
        );
        assert!(GraphSource::parse("hypercube:1,2").is_err());
        assert!(GraphSource::parse("moebius:5").is_err());
        assert!(GraphSource::parse("srg:29,14,6,7").is_err());
    }

    #[test]
    fn state_presets() {
        let w = marked_state("pair:0,3", 4).unwrap();
        assert_eq!(w.support(), vec![0, 3]);
        assert!(marked_state("pair:1", 4).is_err());
        assert!(marked_state("single:4", 4).is_err());
        assert!(marked_state("triple:1,2,3", 4).is_err());
    }

    #[test]
    fn state_file_lines() {
        let entries = parse_state_file("# header\n0 1.0\n\n3 -0.5 # note\n").unwrap();
        assert_eq!(entries, vec![(0, 1.0), (3, -0.5)]);
        assert!(matches!(
            parse_state_file("0 1\n2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(parse_state_file("0 nan\n").is_err());
    }

    #[test]
    fn grids() {
        let axes = [
            Axis::parse("k=1..2").unwrap(),
            Axis::parse("m=2..3").unwrap(),
        ];
        let pts = grid_points(&["m", "k"], &axes).unwrap();
        assert_eq!(pts, vec![vec![2, 1], vec![2, 2], vec![3, 1], vec![3, 2]]);
        assert_eq!(
            Axis::parse("n=7").unwrap(),
            Axis {
                name: "n".into(),
                lo: 7,
                hi: 7
            }
        );
        assert!(Axis::parse("n=5..2").is_err());
        assert!(grid_points(&["m", "k"], &axes[..1]).is_err());
        assert!(grid_points(&["n"], &[Axis::parse("q=1").unwrap()]).is_err());
    }
}
