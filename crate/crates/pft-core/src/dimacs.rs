//! Extended DIMACS max-flow files.
//!
//! Line-oriented: `c` comments, one `p max <n> <m>` problem line,
//! optional `n <id> s|t` designations, `a <tail> <head> <capacity>` arcs,
//! and optional `r <vertex> <dart>...` rotation lines where a dart is `+k`
//! (tail dart of the k-th arc in file order) or `-k` (head dart). Ids are
//! 1-based in files and 0-based in memory. Rotation lines must cover every
//! vertex or be absent entirely.

use crate::error::{Error, Result};
use crate::graph::{build_graph, ArcId, Dart, PlanarDigraph, VertexId};

/// Source/sink designations carried by `n` lines.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Designations {
    pub source: Option<VertexId>,
    pub sink: Option<VertexId>,
}

pub fn parse_dimacs(text: &str) -> Result<(PlanarDigraph, Designations)> {
    let mut problem: Option<(usize, usize)> = None;
    let mut arcs: Vec<(VertexId, VertexId, u64)> = Vec::new();
    let mut designations = Designations::default();
    // Raw rotation tokens, interpreted once the arc count is known.
    let mut rotation_lines: Vec<(usize, usize, Vec<String>)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let tag = tokens.next().unwrap();
        let err = |detail: &str| Error::SyntaxError {
            line: line_no,
            detail: detail.to_string(),
        };
        match tag {
            "p" => {
                if problem.is_some() {
                    return Err(err("duplicate problem line"));
                }
                if tokens.next() != Some("max") {
                    return Err(err("expected `p max <n> <m>`"));
                }
                let n = parse_number(tokens.next(), line_no, "vertex count")?;
                let m = parse_number(tokens.next(), line_no, "arc count")?;
                if tokens.next().is_some() {
                    return Err(err("trailing tokens on problem line"));
                }
                problem = Some((n as usize, m as usize));
            }
            "a" => {
                let n = problem.ok_or(Error::MissingProblemLine)?.0;
                let tail = parse_vertex(tokens.next(), line_no, n)?;
                let head = parse_vertex(tokens.next(), line_no, n)?;
                let cap = parse_number(tokens.next(), line_no, "capacity")?;
                if tokens.next().is_some() {
                    return Err(err("trailing tokens on arc line"));
                }
                arcs.push((tail, head, cap));
            }
            "n" => {
                let n = problem.ok_or(Error::MissingProblemLine)?.0;
                let id = parse_vertex(tokens.next(), line_no, n)?;
                match tokens.next() {
                    Some("s") => {
                        if designations.source.replace(id).is_some() {
                            return Err(err("duplicate source designation"));
                        }
                    }
                    Some("t") => {
                        if designations.sink.replace(id).is_some() {
                            return Err(err("duplicate sink designation"));
                        }
                    }
                    _ => return Err(err("expected `n <id> s` or `n <id> t`")),
                }
                if tokens.next().is_some() {
                    return Err(err("trailing tokens on node line"));
                }
            }
            "r" => {
                let n = problem.ok_or(Error::MissingProblemLine)?.0;
                let v = parse_vertex(tokens.next(), line_no, n)?;
                rotation_lines.push((line_no, v.index(), tokens.map(String::from).collect()));
            }
            _ => return Err(err("unknown line tag")),
        }
    }

    let (n, m) = problem.ok_or(Error::MissingProblemLine)?;
    if arcs.len() != m {
        return Err(Error::SyntaxError {
            line: 0,
            detail: format!("problem line declares {m} arcs, file has {}", arcs.len()),
        });
    }

    let rotation = if rotation_lines.is_empty() {
        None
    } else {
        let mut per_vertex: Vec<Option<Vec<Dart>>> = vec![None; n];
        for (line_no, v, tokens) in rotation_lines {
            if per_vertex[v].is_some() {
                return Err(Error::SyntaxError {
                    line: line_no,
                    detail: format!("duplicate rotation line for vertex {}", v + 1),
                });
            }
            let mut darts = Vec::with_capacity(tokens.len());
            for tok in tokens {
                let (sign, digits) = tok.split_at(1);
                let k: u64 = digits.parse().map_err(|_| Error::SyntaxError {
                    line: line_no,
                    detail: format!("malformed dart token `{tok}`"),
                })?;
                if k == 0 || k as usize > m {
                    return Err(Error::SyntaxError {
                        line: line_no,
                        detail: format!("dart `{tok}` references arc out of range"),
                    });
                }
                let arc = ArcId(k as u32 - 1);
                match sign {
                    "+" => darts.push(Dart::tail_of(arc)),
                    "-" => darts.push(Dart::head_of(arc)),
                    _ => {
                        return Err(Error::SyntaxError {
                            line: line_no,
                            detail: format!("dart token `{tok}` must start with + or -"),
                        })
                    }
                }
            }
            per_vertex[v] = Some(darts);
        }
        let missing: Vec<usize> = per_vertex
            .iter()
            .enumerate()
            .filter(|(_, r)| r.is_none())
            .map(|(v, _)| v + 1)
            .collect();
        if !missing.is_empty() {
            return Err(Error::RotationIncomplete {
                detail: format!("vertices without rotation lines: {missing:?}"),
            });
        }
        Some(per_vertex.into_iter().map(Option::unwrap).collect())
    };

    let g = build_graph(n, arcs, rotation)?;
    Ok((g, designations))
}

fn parse_number(tok: Option<&str>, line: usize, what: &str) -> Result<u64> {
    tok.and_then(|t| t.parse().ok()).ok_or(Error::SyntaxError {
        line,
        detail: format!("expected non-negative integer {what}"),
    })
}

fn parse_vertex(tok: Option<&str>, line: usize, n: usize) -> Result<VertexId> {
    let id = parse_number(tok, line, "vertex id")?;
    if id == 0 || id as usize > n {
        return Err(Error::SyntaxError {
            line,
            detail: format!("vertex id {id} out of range 1..={n}"),
        });
    }
    Ok(VertexId(id as u32 - 1))
}

pub fn write_dimacs(g: &PlanarDigraph) -> String {
    write_dimacs_with(g, Designations::default())
}

/// Canonical writer: problem line, designations, arcs in id order, rotation
/// lines in vertex order. `parse_dimacs(write_dimacs(g))` reproduces `g`
/// exactly, and writing again yields identical bytes.
pub fn write_dimacs_with(g: &PlanarDigraph, designations: Designations) -> String {
    let mut out = String::new();
    out.push_str(&format!("p max {} {}\n", g.vertex_count(), g.arc_count()));
    if let Some(s) = designations.source {
        out.push_str(&format!("n {} s\n", s.0 + 1));
    }
    if let Some(t) = designations.sink {
        out.push_str(&format!("n {} t\n", t.0 + 1));
    }
    for a in g.arcs() {
        out.push_str(&format!("a {} {} {}\n", a.tail.0 + 1, a.head.0 + 1, a.capacity));
    }
    if let Some(rot) = g.rotation() {
        for (v, order) in rot.iter().enumerate() {
            out.push_str(&format!("r {}", v + 1));
            for d in order {
                let sign = if d.is_head() { '-' } else { '+' };
                out.push_str(&format!(" {sign}{}", d.arc().0 + 1));
            }
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_file() {
        let (g, des) = parse_dimacs("p max 2 1\na 1 2 7\n").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.arc_count(), 1);
        assert_eq!(g.capacity(ArcId(0)), 7);
        assert_eq!(des, Designations::default());
    }

    #[test]
    fn negative_capacity_rejected() {
        let err = parse_dimacs("p max 2 1\na 1 2 -3\n").unwrap_err();
        assert!(matches!(err, Error::SyntaxError { line: 2, .. }));
    }

    #[test]
    fn missing_problem_line() {
        assert_eq!(parse_dimacs("a 1 2 3\n").unwrap_err(), Error::MissingProblemLine);
        assert_eq!(parse_dimacs("c only a comment\n").unwrap_err(), Error::MissingProblemLine);
    }

    #[test]
    fn designations_parsed() {
        let (_, des) = parse_dimacs("p max 2 1\nn 1 s\nn 2 t\na 1 2 7\n").unwrap();
        assert_eq!(des.source, Some(VertexId(0)));
        assert_eq!(des.sink, Some(VertexId(1)));
    }

    #[test]
    fn rotation_round_trip_validates() {
        let text = "p max 2 1\na 1 2 7\nr 1 +1\nr 2 -1\n";
        let (g, _) = parse_dimacs(text).unwrap();
        assert!(g.has_rotation());
        crate::graph::validate_embedding(&g).unwrap();
        assert_eq!(write_dimacs(&g), text);
    }

    #[test]
    fn partial_rotation_rejected() {
        let err = parse_dimacs("p max 2 1\na 1 2 7\nr 1 +1\n").unwrap_err();
        assert!(matches!(err, Error::RotationIncomplete { .. }));
    }

    #[test]
    fn write_without_rotation_omits_r_lines() {
        let (g, _) = parse_dimacs("p max 3 2\na 1 2 4\na 2 3 9\n").unwrap();
        let text = write_dimacs(&g);
        assert!(!text.contains("\nr "));
        let (g2, _) = parse_dimacs(&text).unwrap();
        assert_eq!(g, g2);
    }

    #[test]
    fn arc_count_mismatch_rejected() {
        let err = parse_dimacs("p max 2 2\na 1 2 7\n").unwrap_err();
        assert!(matches!(err, Error::SyntaxError { .. }));
    }
}
