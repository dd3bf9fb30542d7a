//! Line-based text formats for graphs and representation graphs, and DOT
//! output.
//!
//! A graph file has one declaration per line; `#` starts a comment:
//!
//! ```text
//! vertex v
//! edge d v v
//! edge e v v
//! special v d
//! ```
//!
//! A representation graph file uses `vertex` and `edge` for `F` itself plus
//! `label <item> <letter-or-vertex>` and `frontier <vertex>`. The writers
//! emit a canonical, sorted form, so `write(parse(write(x))) == write(x)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::sync::Arc;

use crate::branching::ExtRepGraph;
use crate::error::{Error, Result};
use crate::graph::{Ambient, Graph, Letter, SpecialEdgeChoice, VertexId};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-empty, comment-stripped lines split into tokens, with 1-based numbers.
fn tokenized(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

/// A parsed graph file before the special-edge choice is completed.
#[derive(Clone, Debug)]
pub struct GraphSpec {
    pub graph: Graph,
    /// Vertex name to special edge name, as declared.
    pub special: BTreeMap<String, String>,
}

impl GraphSpec {
    /// Applies `--special`-style overrides (edge names, each becoming the
    /// special edge at its source) and defaults the rest.
    pub fn into_ambient(self, overrides: &[String]) -> Result<Arc<Ambient>> {
        let mut special = self.special;
        for e in overrides {
            let id = self
                .graph
                .edge_id(e)
                .ok_or_else(|| Error::UnknownEdge(e.clone()))?;
            special.insert(
                self.graph.vertex_name(self.graph.source(id)).to_string(),
                e.clone(),
            );
        }
        let choice = SpecialEdgeChoice::choose(&self.graph, &special)?;
        Ok(Arc::new(Ambient::new(self.graph, choice)?))
    }
}

pub fn parse_graph_spec(text: &str) -> Result<GraphSpec> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut special = BTreeMap::new();
    for (line, t) in tokenized(text) {
        match t.as_slice() {
            ["vertex", v] => vertices.push(v.to_string()),
            ["edge", e, s, r] => edges.push((e.to_string(), s.to_string(), r.to_string())),
            ["special", v, e] => {
                if special.insert(v.to_string(), e.to_string()).is_some() {
                    return Err(parse_err(line, format!("second special edge for `{v}`")));
                }
            }
            _ => {
                return Err(parse_err(
                    line,
                    format!("unrecognised declaration `{}`", t.join(" ")),
                ))
            }
        }
    }
    Ok(GraphSpec {
        graph: Graph::new(vertices, edges)?,
        special,
    })
}

/// Parses a graph file with its declared special edges, defaulting the rest.
pub fn parse_ambient(text: &str) -> Result<Arc<Ambient>> {
    parse_graph_spec(text)?.into_ambient(&[])
}

/// Canonical text: vertices, edges, then one `special` line per regular vertex.
pub fn write_graph_spec(amb: &Ambient) -> String {
    let g = amb.graph();
    let mut out = String::new();
    for v in g.vertices() {
        let _ = writeln!(out, "vertex {}", g.vertex_name(v));
    }
    for e in g.edges() {
        let _ = writeln!(
            out,
            "edge {} {} {}",
            g.edge_name(e),
            g.vertex_name(g.source(e)),
            g.vertex_name(g.range(e))
        );
    }
    for (v, e) in amb.special().iter() {
        let _ = writeln!(out, "special {} {}", g.vertex_name(v), g.edge_name(e));
    }
    out
}

pub fn parse_erg(amb: &Arc<Ambient>, text: &str) -> Result<ExtRepGraph> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut labels: BTreeMap<String, (usize, String)> = BTreeMap::new();
    let mut frontier = Vec::new();
    for (line, t) in tokenized(text) {
        match t.as_slice() {
            ["vertex", v] => vertices.push(v.to_string()),
            ["edge", e, s, r] => edges.push((e.to_string(), s.to_string(), r.to_string())),
            ["label", item, l] => {
                if labels
                    .insert(item.to_string(), (line, l.to_string()))
                    .is_some()
                {
                    return Err(parse_err(line, format!("second label for `{item}`")));
                }
            }
            ["frontier", v] => frontier.push((line, v.to_string())),
            _ => {
                return Err(parse_err(
                    line,
                    format!("unrecognised declaration `{}`", t.join(" ")),
                ))
            }
        }
    }
    let graph = Graph::new(vertices, edges)?;
    let mut vertex_label = vec![None; graph.vertex_count()];
    let mut edge_label = vec![None; graph.edge_count()];
    for (item, (line, l)) in &labels {
        let letter = amb
            .parse_letter(l)
            .map_err(|e| parse_err(*line, e.to_string()))?;
        match (graph.vertex_id(item), graph.edge_id(item)) {
            (Some(_), Some(_)) => {
                return Err(parse_err(
                    *line,
                    format!("`{item}` names both a vertex and an edge"),
                ))
            }
            (Some(w), None) => match letter {
                Letter::Vertex(v) => vertex_label[w.0] = Some(v),
                _ => {
                    return Err(parse_err(
                        *line,
                        format!("vertex `{item}` needs a vertex label"),
                    ))
                }
            },
            (None, Some(f)) => match letter {
                Letter::Vertex(_) => {
                    return Err(parse_err(
                        *line,
                        format!("edge `{item}` needs an edge label"),
                    ))
                }
                l => edge_label[f.0] = Some(l),
            },
            (None, None) => return Err(parse_err(*line, format!("label for undeclared `{item}`"))),
        }
    }
    let vertex_label: Vec<VertexId> = vertex_label
        .into_iter()
        .enumerate()
        .map(|(i, l)| {
            l.ok_or_else(|| {
                Error::InvalidRepGraph(format!(
                    "vertex `{}` has no label",
                    graph.vertex_name(VertexId(i))
                ))
            })
        })
        .collect::<Result<_>>()?;
    let edge_label: Vec<Letter> = edge_label
        .into_iter()
        .enumerate()
        .map(|(i, l)| {
            l.ok_or_else(|| {
                Error::InvalidRepGraph(format!(
                    "edge `{}` has no label",
                    graph.edge_name(crate::graph::EdgeId(i))
                ))
            })
        })
        .collect::<Result<_>>()?;
    let mut front = BTreeSet::new();
    for (line, v) in frontier {
        front.insert(
            graph
                .vertex_id(&v)
                .ok_or_else(|| parse_err(line, format!("unknown frontier vertex `{v}`")))?,
        );
    }
    ExtRepGraph::new(amb, graph, vertex_label, edge_label, front)
}

pub fn write_erg(r: &ExtRepGraph) -> String {
    let amb = r.ambient();
    let f = r.graph();
    let mut out = String::new();
    for w in f.vertices() {
        let _ = writeln!(out, "vertex {}", f.vertex_name(w));
    }
    for e in f.edges() {
        let _ = writeln!(
            out,
            "edge {} {} {}",
            f.edge_name(e),
            f.vertex_name(f.source(e)),
            f.vertex_name(f.range(e))
        );
    }
    for w in f.vertices() {
        let _ = writeln!(
            out,
            "label {} {}",
            f.vertex_name(w),
            amb.graph().vertex_name(r.label(w))
        );
    }
    for e in f.edges() {
        let _ = writeln!(
            out,
            "label {} {}",
            f.edge_name(e),
            amb.letter_name(r.edge_label(e))
        );
    }
    for &w in r.frontier() {
        let _ = writeln!(out, "frontier {}", f.vertex_name(w));
    }
    out
}

fn quote(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT for a graph with its special edges drawn bold.
pub fn graph_to_dot(amb: &Ambient) -> String {
    let g = amb.graph();
    let mut out = String::from("digraph E {\n");
    for v in g.vertices() {
        let _ = writeln!(out, "  {};", quote(g.vertex_name(v)));
    }
    for e in g.edges() {
        let style = if amb.is_special(e) {
            ", style=bold"
        } else {
            ""
        };
        let _ = writeln!(
            out,
            "  {} -> {} [label={}{}];",
            quote(g.vertex_name(g.source(e))),
            quote(g.vertex_name(g.range(e))),
            quote(g.edge_name(e)),
            style
        );
    }
    out.push_str("}\n");
    out
}

/// DOT for a representation graph: ghost-labelled edges dashed, frontier
/// vertices drawn as dotted boxes.
pub fn erg_to_dot(r: &ExtRepGraph) -> String {
    let amb = r.ambient();
    let f = r.graph();
    let mut out = String::from("digraph F {\n");
    for w in f.vertices() {
        let label = format!(
            "{} : {}",
            f.vertex_name(w),
            amb.graph().vertex_name(r.label(w))
        );
        let style = if r.is_frontier(w) {
            ", shape=box, style=dotted"
        } else {
            ""
        };
        let _ = writeln!(
            out,
            "  {} [label={}{}];",
            quote(f.vertex_name(w)),
            quote(&label),
            style
        );
    }
    for e in f.edges() {
        let l = r.edge_label(e);
        let style = if l.is_ghost() { ", style=dashed" } else { "" };
        let _ = writeln!(
            out,
            "  {} -> {} [label={}{}];",
            quote(f.vertex_name(f.source(e))),
            quote(f.vertex_name(f.range(e))),
            quote(&amb.letter_name(l)),
            style
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branching::{validate_erg, ErgBuilder};
    use crate::examples;

    const R2: &str = "# two loops\nvertex v\nedge d v v\nedge e v v   # second loop\nspecial v e\n";

    #[test]
    fn graph_round_trip() {
        let amb = parse_ambient(R2).unwrap();
        assert_eq!(
            amb.graph()
                .edge_name(amb.special().special_at(VertexId(0)).unwrap()),
            "e"
        );
        let text = write_graph_spec(&amb);
        assert_eq!(text, "vertex v\nedge d v v\nedge e v v\nspecial v e\n");
        assert_eq!(write_graph_spec(&parse_ambient(&text).unwrap()), text);
    }

    #[test]
    fn special_defaults_and_overrides() {
        let spec = parse_graph_spec("vertex v\nedge d v v\nedge e v v\n").unwrap();
        let amb = spec.clone().into_ambient(&[]).unwrap();
        assert!(write_graph_spec(&amb).ends_with("special v d\n"));
        let amb = spec.into_ambient(&["e".to_string()]).unwrap();
        assert!(write_graph_spec(&amb).ends_with("special v e\n"));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert_eq!(
            parse_graph_spec("vertex v\nedgy d v v\n").unwrap_err(),
            Error::Parse {
                line: 2,
                message: "unrecognised declaration `edgy d v v`".into()
            }
        );
        assert!(matches!(
            parse_graph_spec("vertex v\nedge d v w\n"),
            Err(Error::DanglingEndpoint { .. })
        ));
        assert!(parse_ambient("vertex v\nedge d v v\nspecial v q\n").is_err());
    }

    #[test]
    fn erg_round_trip_and_dot() {
        let amb = examples::r2("d");
        let g = amb.graph();
        let v = g.vertex_id("v").unwrap();
        let mut b = ErgBuilder::new();
        b.add_vertex("w_1", v);
        b.add_vertex("w_2", v);
        b.add_edge("f_1", "w_1", "w_2", amb.parse_letter("e*").unwrap());
        b.mark_frontier("w_2");
        b.mark_frontier("w_1");
        let r = b.build(&amb).unwrap();
        assert!(validate_erg(&r).is_valid());
        let text = write_erg(&r);
        let back = parse_erg(&amb, &text).unwrap();
        assert_eq!(back, r);
        assert_eq!(write_erg(&back), text);
        let dot = erg_to_dot(&r);
        assert!(dot.contains("\"w_1\" -> \"w_2\" [label=\"e*\", style=dashed];"));
        assert_eq!(dot, erg_to_dot(&back));
        assert!(graph_to_dot(&amb).contains("style=bold"));
    }

    #[test]
    fn erg_label_errors() {
        let amb = examples::r2("d");
        assert!(parse_erg(&amb, "vertex a\n").is_err());
        assert!(parse_erg(&amb, "vertex a\nlabel a d\n").is_err());
        assert!(parse_erg(&amb, "vertex a\nlabel a v\nlabel b v\n").is_err());
        assert!(parse_erg(&amb, "vertex a\nlabel a v\n").is_ok());
    }
}
