//! Text formats: Graphviz DOT and a plain `u v` edge list.

use std::fmt::Write as _;

use super::{Family, Graph};
use crate::error::{Error, Result};

/// Deterministic DOT text: vertices ascending, then each edge once.
pub fn export_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    let _ = writeln!(out, "  label=\"{}\";", g.family());
    for v in 0..g.n_vertices() {
        let _ = writeln!(out, "  {v};");
    }
    for (u, v) in g.edge_set() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

/// Reads the subset of DOT produced by [`export_dot`].
pub fn parse_dot(text: &str) -> Result<Graph> {
    let mut family = Family::Custom;
    let mut n_vertices = 0;
    let mut edges = Vec::new();
    let mut opened = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split("//").next().unwrap_or("").trim();
        let line = line.strip_suffix(';').unwrap_or(line).trim();
        if line.is_empty() || line == "}" {
            continue;
        }
        if !opened {
            if line.starts_with("graph") && line.ends_with('{') {
                opened = true;
                continue;
            }
            return Err(Error::Parse {
                line: line_no,
                msg: "expected 'graph ... {'".into(),
            });
        }
        if let Some(tag) = line.strip_prefix("label=") {
            family = tag.trim_matches('"').parse()?;
        } else if let Some((u, v)) = line.split_once("--") {
            let u = parse_vertex(u, line_no)?;
            let v = parse_vertex(v, line_no)?;
            n_vertices = n_vertices.max(u + 1).max(v + 1);
            edges.push((u, v));
        } else {
            let v = parse_vertex(line, line_no)?;
            n_vertices = n_vertices.max(v + 1);
        }
    }
    if !opened {
        return Err(Error::Parse {
            line: 0,
            msg: "no graph block found".into(),
        });
    }
    Ok(Graph::from_edges(n_vertices, edges, family))
}

/// Edge list with `# family:` and `# vertices:` header comments.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# family: {}", g.family());
    let _ = writeln!(out, "# vertices: {}", g.n_vertices());
    for (u, v) in g.edge_set() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Parses `u v` lines (0-indexed). Text after `#` is a comment; the
/// `# vertices: N` and `# family: tag` comments are honoured when present,
/// otherwise the vertex count is one past the largest index seen.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut family = Family::Custom;
    let mut declared = None;
    let mut n_vertices = 0;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let (body, comment) = match raw.split_once('#') {
            Some((b, c)) => (b, Some(c.trim())),
            None => (raw, None),
        };
        if let Some(c) = comment {
            if let Some(tag) = c.strip_prefix("family:") {
                family = tag.trim().parse()?;
            } else if let Some(count) = c.strip_prefix("vertices:") {
                declared = Some(count.trim().parse::<usize>().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("bad vertex count '{}'", count.trim()),
                })?);
            }
        }
        let mut fields = body.split_whitespace();
        let Some(first) = fields.next() else { continue };
        let second = fields.next().ok_or_else(|| Error::Parse {
            line: line_no,
            msg: "expected two vertex indices".into(),
        })?;
        if fields.next().is_some() {
            return Err(Error::Parse {
                line: line_no,
                msg: "trailing fields".into(),
            });
        }
        let u = parse_vertex(first, line_no)?;
        let v = parse_vertex(second, line_no)?;
        n_vertices = n_vertices.max(u + 1).max(v + 1);
        edges.push((u, v));
    }
    if let Some(count) = declared {
        if count < n_vertices {
            return Err(Error::Parse {
                line: 0,
                msg: format!(
                    "declared {count} vertices but edges reference vertex {}",
                    n_vertices - 1
                ),
            });
        }
        n_vertices = count;
    }
    Ok(Graph::from_edges(n_vertices, edges, family))
}

fn parse_vertex(token: &str, line: usize) -> Result<usize> {
    token.trim().parse::<usize>().map_err(|_| Error::Parse {
        line,
        msg: format!("bad vertex index '{}'", token.trim()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{
        complete, complete_minus_disjoint_edges, hypercube, paley, regular_multipartite,
    };

    fn family_graphs() -> Vec<Graph> {
        vec![
            complete(2).unwrap(),
            complete(6).unwrap(),
            hypercube(4).unwrap(),
            complete_minus_disjoint_edges(10, 5).unwrap(),
            paley(29).unwrap(),
            regular_multipartite(4, 4).unwrap(),
        ]
    }

    #[test]
    fn k2_dot_body() {
        let dot = export_dot(&complete(2).unwrap());
        let edge_lines: Vec<_> = dot.lines().filter(|l| l.contains("--")).collect();
        assert_eq!(edge_lines, vec!["  0 -- 1;"]);
        assert!(dot.starts_with("graph G {\n"));
        assert!(dot.ends_with("}\n"));
    }

    #[test]
    fn dot_round_trip() {
        for g in family_graphs() {
            let back = parse_dot(&export_dot(&g)).unwrap();
            assert_eq!(back, g, "{}", g.family());
        }
    }

    #[test]
    fn edge_list_round_trip() {
        for g in family_graphs() {
            let back = parse_edge_list(&to_edge_list(&g)).unwrap();
            assert_eq!(back, g, "{}", g.family());
        }
    }

    #[test]
    fn edge_list_comments_and_errors() {
        let g = parse_edge_list("# a triangle\n0 1\n1 2 # inline\n\n2 0\n").unwrap();
        assert_eq!(g.n_vertices(), 3);
        assert_eq!(g.family(), Family::Custom);
        assert_eq!(g.edge_set(), [(0, 1), (0, 2), (1, 2)].into_iter().collect());

        assert!(matches!(
            parse_edge_list("0 1\n2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("0 x\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_edge_list("0 1 2\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(parse_edge_list("# vertices: 2\n0 5\n").is_err());

        let padded = parse_edge_list("# vertices: 5\n0 1\n").unwrap();
        assert_eq!(padded.n_vertices(), 5);
    }
}
