//! Directed graphs, their double and inverse graphs, letters and paths.
//!
//! Vertex and edge identifiers are opaque strings. A [`Graph`] stores them in
//! lexicographic order, so [`VertexId`] and [`EdgeId`] order agrees with name
//! order and every derived enumeration is deterministic.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EdgeId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeRecord {
    pub name: String,
    pub source: VertexId,
    pub range: VertexId,
}

/// A finite directed multigraph with named vertices and edges.
#[derive(Clone, Debug)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<EdgeRecord>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
    outgoing: Vec<Vec<EdgeId>>,
    incoming: Vec<Vec<EdgeId>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from vertex names and `(edge, source, range)` triples.
    ///
    /// Finite graphs are automatically row-finite; duplicate names and edges
    /// with undeclared endpoints are rejected.
    pub fn new<V, E, S>(vertices: V, edges: E) -> Result<Graph>
    where
        V: IntoIterator<Item = S>,
        E: IntoIterator<Item = (S, S, S)>,
        S: Into<String>,
    {
        let mut names: Vec<String> = vertices.into_iter().map(Into::into).collect();
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(w[0].clone()));
        }
        let vertex_index: HashMap<String, VertexId> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), VertexId(i)))
            .collect();

        let mut raw: Vec<(String, String, String)> = edges
            .into_iter()
            .map(|(e, s, r)| (e.into(), s.into(), r.into()))
            .collect();
        raw.sort();
        if let Some(w) = raw.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::DuplicateEdge(w[0].0.clone()));
        }
        let mut edge_records = Vec::with_capacity(raw.len());
        for (name, s, r) in raw {
            let lookup = |v: &String| {
                vertex_index
                    .get(v)
                    .copied()
                    .ok_or_else(|| Error::DanglingEndpoint {
                        edge: name.clone(),
                        vertex: v.clone(),
                    })
            };
            let source = lookup(&s)?;
            let range = lookup(&r)?;
            edge_records.push(EdgeRecord {
                name,
                source,
                range,
            });
        }
        let edge_index = edge_records
            .iter()
            .enumerate()
            .map(|(i, e)| (e.name.clone(), EdgeId(i)))
            .collect();
        let mut outgoing = vec![Vec::new(); names.len()];
        let mut incoming = vec![Vec::new(); names.len()];
        for (i, e) in edge_records.iter().enumerate() {
            outgoing[e.source.0].push(EdgeId(i));
            incoming[e.range.0].push(EdgeId(i));
        }
        Ok(Graph {
            vertices: names,
            edges: edge_records,
            vertex_index,
            edge_index,
            outgoing,
            incoming,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0].name
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edge_index.get(name).copied()
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].source
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].range
    }

    pub fn edge(&self, e: EdgeId) -> &EdgeRecord {
        &self.edges[e.0]
    }

    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.outgoing[v.0]
    }

    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.incoming[v.0]
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.outgoing[v.0].is_empty()
    }

    pub fn is_source(&self, v: VertexId) -> bool {
        self.incoming[v.0].is_empty()
    }

    /// Regular vertices: neither sinks nor infinite emitters.
    pub fn is_regular(&self, v: VertexId) -> bool {
        !self.is_sink(v)
    }

    pub fn sinks(&self) -> Vec<VertexId> {
        self.vertices().filter(|&v| self.is_sink(v)).collect()
    }

    pub fn regular_vertices(&self) -> Vec<VertexId> {
        self.vertices().filter(|&v| self.is_regular(v)).collect()
    }

    /// The double graph: every edge `e` gains a ghost `e*` with reversed endpoints.
    pub fn double_graph(&self) -> Graph {
        self.mirrored(true)
    }

    /// The double graph with the real edges removed.
    pub fn inverse_graph(&self) -> Graph {
        self.mirrored(false)
    }

    fn mirrored(&self, keep_real: bool) -> Graph {
        let mut edges = Vec::new();
        for e in &self.edges {
            let s = self.vertices[e.source.0].clone();
            let r = self.vertices[e.range.0].clone();
            if keep_real {
                edges.push((e.name.clone(), s.clone(), r.clone()));
            }
            edges.push((format!("{}*", e.name), r, s));
        }
        Graph::new(self.vertices.clone(), edges).expect("mirroring preserves validity")
    }

    /// Maximal connected subgraphs, where connectivity ignores edge direction.
    /// Components are ordered by their least vertex name.
    pub fn connected_components(&self) -> Vec<Graph> {
        let n = self.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in &self.edges {
            let a = find(&mut parent, e.source.0);
            let b = find(&mut parent, e.range.0);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: BTreeMap<usize, (Vec<String>, Vec<(String, String, String)>)> =
            BTreeMap::new();
        for v in 0..n {
            let root = find(&mut parent, v);
            groups
                .entry(root)
                .or_default()
                .0
                .push(self.vertices[v].clone());
        }
        for e in &self.edges {
            let root = find(&mut parent, e.source.0);
            groups.get_mut(&root).expect("root exists").1.push((
                e.name.clone(),
                self.vertices[e.source.0].clone(),
                self.vertices[e.range.0].clone(),
            ));
        }
        groups
            .into_values()
            .map(|(vs, es)| Graph::new(vs, es).expect("subgraph of a valid graph"))
            .collect()
    }
}

/// A letter over the double graph: a vertex, a real edge `e` or a ghost edge `e*`.
///
/// The derived order puts vertices first, then real edges, then ghost edges,
/// each by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Letter {
    Vertex(VertexId),
    Real(EdgeId),
    Ghost(EdgeId),
}

impl Letter {
    pub fn is_edge(self) -> bool {
        !matches!(self, Letter::Vertex(_))
    }

    pub fn is_real(self) -> bool {
        matches!(self, Letter::Real(_))
    }

    pub fn is_ghost(self) -> bool {
        matches!(self, Letter::Ghost(_))
    }

    pub fn edge(self) -> Option<EdgeId> {
        match self {
            Letter::Real(e) | Letter::Ghost(e) => Some(e),
            Letter::Vertex(_) => None,
        }
    }

    /// `e <-> e*`; vertices are fixed.
    pub fn star(self) -> Letter {
        match self {
            Letter::Real(e) => Letter::Ghost(e),
            Letter::Ghost(e) => Letter::Real(e),
            v => v,
        }
    }

    pub fn source(self, g: &Graph) -> VertexId {
        match self {
            Letter::Vertex(v) => v,
            Letter::Real(e) => g.source(e),
            Letter::Ghost(e) => g.range(e),
        }
    }

    pub fn range(self, g: &Graph) -> VertexId {
        match self {
            Letter::Vertex(v) => v,
            Letter::Real(e) => g.range(e),
            Letter::Ghost(e) => g.source(e),
        }
    }
}

/// A finite path in the double graph: either a single vertex (length 0) or a
/// nonempty composable word of real and ghost edges.
///
/// Paths order by length first, then letter by letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    source: VertexId,
    range: VertexId,
    letters: Vec<Letter>,
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
            .then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Path {
    pub fn vertex(v: VertexId) -> Path {
        Path {
            source: v,
            range: v,
            letters: Vec::new(),
        }
    }

    /// A path from edge letters; fails if the letters do not compose.
    pub fn from_letters(g: &Graph, letters: Vec<Letter>) -> Result<Path> {
        let first = *letters
            .first()
            .ok_or_else(|| Error::NotAPath("empty word".into()))?;
        for pair in letters.windows(2) {
            if !pair[0].is_edge() || pair[0].range(g) != pair[1].source(g) {
                return Err(Error::NotAPath(format!("{pair:?}")));
            }
        }
        let last = *letters.last().expect("nonempty");
        if !last.is_edge() {
            return Err(Error::NotAPath("vertex letter inside a path".into()));
        }
        Ok(Path {
            source: first.source(g),
            range: last.range(g),
            letters,
        })
    }

    /// Builds a path from a word that may be a lone vertex letter.
    pub fn from_word(g: &Graph, word: &[Letter]) -> Result<Path> {
        match word {
            [Letter::Vertex(v)] => Ok(Path::vertex(*v)),
            _ => Path::from_letters(g, word.to_vec()),
        }
    }

    /// Assembles a path whose composability the caller already guarantees.
    pub(crate) fn from_parts(source: VertexId, range: VertexId, letters: Vec<Letter>) -> Path {
        Path {
            source,
            range,
            letters,
        }
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_vertex(&self) -> bool {
        self.letters.is_empty()
    }

    /// Edge letters; empty for a vertex path.
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// The path as a word; a vertex path is the one-letter word `[v]`.
    pub fn word(&self) -> Vec<Letter> {
        if self.letters.is_empty() {
            vec![Letter::Vertex(self.source)]
        } else {
            self.letters.clone()
        }
    }

    pub fn last_letter(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    pub fn first_letter(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    /// Appends an edge letter; the caller guarantees composability.
    pub fn push(&self, g: &Graph, letter: Letter) -> Path {
        debug_assert_eq!(letter.source(g), self.range);
        let mut letters = self.letters.clone();
        letters.push(letter);
        Path {
            source: self.source,
            range: letter.range(g),
            letters,
        }
    }

    /// Drops the last letter (a length-one path becomes its source vertex).
    pub fn pop(&self, g: &Graph) -> Option<Path> {
        let (_, rest) = self.letters.split_last()?;
        Some(match rest.last() {
            Some(l) => Path {
                source: self.source,
                range: l.range(g),
                letters: rest.to_vec(),
            },
            None => Path::vertex(self.source),
        })
    }

    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.range != other.source {
            return None;
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Some(Path {
            source: self.source,
            range: other.range,
            letters,
        })
    }

    /// Closed path of positive length.
    pub fn is_closed(&self) -> bool {
        !self.letters.is_empty() && self.source == self.range
    }

    /// A closed path whose letters have pairwise distinct sources.
    pub fn is_cycle(&self, g: &Graph) -> bool {
        if !self.is_closed() {
            return false;
        }
        let mut seen = BTreeSet::new();
        self.letters.iter().all(|l| seen.insert(l.source(g)))
    }
}

/// One chosen edge `e^v` with `s(e^v) = v` for every regular vertex `v`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpecialEdgeChoice {
    chosen: BTreeMap<VertexId, EdgeId>,
}

impl SpecialEdgeChoice {
    /// Completes a partial choice (vertex name -> edge name). Regular
    /// vertices left unspecified get their lexicographically smallest edge.
    pub fn choose(g: &Graph, partial: &BTreeMap<String, String>) -> Result<SpecialEdgeChoice> {
        let mut chosen = BTreeMap::new();
        for (vname, ename) in partial {
            let v = g
                .vertex_id(vname)
                .ok_or_else(|| Error::UnknownVertex(vname.clone()))?;
            if g.is_sink(v) {
                return Err(Error::BadSpecialChoice {
                    vertex: vname.clone(),
                    reason: "a sink has no special edge".into(),
                });
            }
            let e = g
                .edge_id(ename)
                .ok_or_else(|| Error::UnknownEdge(ename.clone()))?;
            if g.source(e) != v {
                return Err(Error::BadSpecialChoice {
                    vertex: vname.clone(),
                    reason: format!("edge `{ename}` is not emitted by `{vname}`"),
                });
            }
            chosen.insert(v, e);
        }
        for v in g.regular_vertices() {
            chosen.entry(v).or_insert_with(|| {
                *g.out_edges(v)
                    .iter()
                    .min()
                    .expect("regular vertex emits an edge")
            });
        }
        Ok(SpecialEdgeChoice { chosen })
    }

    /// Completes a choice given as a list of special edge names.
    pub fn from_edges(g: &Graph, edges: &[&str]) -> Result<SpecialEdgeChoice> {
        let mut partial = BTreeMap::new();
        for name in edges {
            let e = g
                .edge_id(name)
                .ok_or_else(|| Error::UnknownEdge(name.to_string()))?;
            let v = g.vertex_name(g.source(e)).to_string();
            if let Some(prev) = partial.insert(v.clone(), name.to_string()) {
                return Err(Error::BadSpecialChoice {
                    vertex: v,
                    reason: format!("both `{prev}` and `{name}` chosen"),
                });
            }
        }
        SpecialEdgeChoice::choose(g, &partial)
    }

    pub fn special_at(&self, v: VertexId) -> Option<EdgeId> {
        self.chosen.get(&v).copied()
    }

    pub fn is_special(&self, g: &Graph, e: EdgeId) -> bool {
        self.chosen.get(&g.source(e)) == Some(&e)
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, EdgeId)> + '_ {
        self.chosen.iter().map(|(&v, &e)| (v, e))
    }
}

/// A graph together with its special-edge choice: everything needed to
/// compute in the Leavitt path algebra and its representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambient {
    graph: Graph,
    special: SpecialEdgeChoice,
}

fn letter_safe(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl Ambient {
    /// Names must be usable in the textual letter syntax (`d.e*`), which rules
    /// out punctuation, leading digits and vertex/edge name clashes.
    pub fn new(graph: Graph, special: SpecialEdgeChoice) -> Result<Ambient> {
        if graph.vertex_count() == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut seen = BTreeSet::new();
        let names = graph
            .vertices()
            .map(|v| graph.vertex_name(v))
            .chain(graph.edges().map(|e| graph.edge_name(e)));
        for name in names {
            if !letter_safe(name) || !seen.insert(name) {
                return Err(Error::BadLetterName(name.to_string()));
            }
        }
        for v in graph.regular_vertices() {
            match special.special_at(v) {
                Some(e) if graph.source(e) == v => {}
                _ => {
                    return Err(Error::BadSpecialChoice {
                        vertex: graph.vertex_name(v).to_string(),
                        reason: "no special edge chosen".into(),
                    })
                }
            }
        }
        Ok(Ambient { graph, special })
    }

    /// Convenience: a graph with special edges given by name (others defaulted).
    pub fn with_special(graph: Graph, special_edges: &[&str]) -> Result<Ambient> {
        let special = SpecialEdgeChoice::from_edges(&graph, special_edges)?;
        Ambient::new(graph, special)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn special(&self) -> &SpecialEdgeChoice {
        &self.special
    }

    pub fn is_special(&self, e: EdgeId) -> bool {
        self.special.is_special(&self.graph, e)
    }

    /// All edge letters of the double graph in letter order.
    pub fn edge_letters(&self) -> Vec<Letter> {
        let g = &self.graph;
        g.edges()
            .map(Letter::Real)
            .chain(g.edges().map(Letter::Ghost))
            .collect()
    }

    /// All generators of the algebra: vertices, edges and ghost edges.
    pub fn generators(&self) -> Vec<Letter> {
        let mut gens: Vec<Letter> = self.graph.vertices().map(Letter::Vertex).collect();
        gens.extend(self.edge_letters());
        gens
    }

    /// Edge letters of the double graph leaving `v`.
    pub fn letters_from(&self, v: VertexId) -> Vec<Letter> {
        let g = &self.graph;
        let mut out: Vec<Letter> = g.out_edges(v).iter().map(|&e| Letter::Real(e)).collect();
        out.extend(g.in_edges(v).iter().map(|&e| Letter::Ghost(e)));
        out.sort();
        out
    }

    pub fn letter_name(&self, l: Letter) -> String {
        match l {
            Letter::Vertex(v) => self.graph.vertex_name(v).to_string(),
            Letter::Real(e) => self.graph.edge_name(e).to_string(),
            Letter::Ghost(e) => format!("{}*", self.graph.edge_name(e)),
        }
    }

    pub fn parse_letter(&self, token: &str) -> Result<Letter> {
        let g = &self.graph;
        if let Some(base) = token.strip_suffix('*') {
            return g
                .edge_id(base)
                .map(Letter::Ghost)
                .ok_or_else(|| Error::UnknownLetter(token.to_string()));
        }
        if let Some(e) = g.edge_id(token) {
            return Ok(Letter::Real(e));
        }
        g.vertex_id(token)
            .map(Letter::Vertex)
            .ok_or_else(|| Error::UnknownLetter(token.to_string()))
    }

    /// Parses dot-separated letters, e.g. `d.e*`.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Letter>> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Syntax(text.to_string()));
        }
        text.split('.')
            .map(|t| self.parse_letter(t.trim()))
            .collect()
    }

    pub fn parse_path(&self, text: &str) -> Result<Path> {
        Path::from_word(&self.graph, &self.parse_word(text)?)
    }

    pub fn format_word(&self, word: &[Letter]) -> String {
        word.iter()
            .map(|&l| self.letter_name(l))
            .collect::<Vec<_>>()
            .join(".")
    }

    pub fn format_path(&self, p: &Path) -> String {
        self.format_word(&p.word())
    }

    pub fn display<'a>(&'a self, p: &'a Path) -> impl fmt::Display + 'a {
        DisplayPath {
            ambient: self,
            path: p,
        }
    }
}

struct DisplayPath<'a> {
    ambient: &'a Ambient,
    path: &'a Path,
}

impl fmt::Display for DisplayPath<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ambient.format_path(self.path))
    }
}

/// Summary of a validated graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphReport {
    pub vertices: usize,
    pub edges: usize,
    pub sinks: Vec<String>,
    pub regular: Vec<String>,
    pub row_finite: bool,
    pub components: usize,
}

impl GraphReport {
    pub fn of(g: &Graph) -> GraphReport {
        GraphReport {
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            sinks: g
                .sinks()
                .into_iter()
                .map(|v| g.vertex_name(v).to_string())
                .collect(),
            regular: g
                .regular_vertices()
                .into_iter()
                .map(|v| g.vertex_name(v).to_string())
                .collect(),
            row_finite: true,
            components: g.connected_components().len(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;

    #[test]
    fn two_loop_graph_has_one_regular_vertex() {
        let g = examples::two_loops();
        let report = GraphReport::of(&g);
        assert_eq!(report.regular, vec!["v"]);
        assert!(report.sinks.is_empty());
    }

    #[test]
    fn edgeless_vertex_is_a_sink() {
        let g = examples::single_vertex();
        assert_eq!(g.sinks(), vec![VertexId(0)]);
        assert!(g.regular_vertices().is_empty());
    }

    #[test]
    fn rejects_duplicates_and_dangling_edges() {
        assert_eq!(
            Graph::new(["v", "v"], Vec::<(&str, &str, &str)>::new()),
            Err(Error::DuplicateVertex("v".into()))
        );
        assert_eq!(
            Graph::new(["v"], [("e", "v", "v"), ("e", "v", "v")]),
            Err(Error::DuplicateEdge("e".into()))
        );
        assert_eq!(
            Graph::new(["v"], [("e", "v", "w")]),
            Err(Error::DanglingEndpoint {
                edge: "e".into(),
                vertex: "w".into()
            })
        );
    }

    #[test]
    fn double_and_inverse_graph() {
        let g = examples::two_loops();
        let d = g.double_graph();
        assert_eq!(d.vertex_count(), 1);
        let names: Vec<_> = d.edges().map(|e| d.edge_name(e)).collect();
        assert_eq!(names, ["d", "d*", "e", "e*"]);
        let inv = g.inverse_graph();
        let names: Vec<_> = inv.edges().map(|e| inv.edge_name(e)).collect();
        assert_eq!(names, ["d*", "e*"]);

        let h = examples::loops_and_exit();
        let d = h.double_graph();
        assert_eq!(d.edge_count(), 6);
        let fs = d.edge_id("f*").unwrap();
        assert_eq!(d.vertex_name(d.source(fs)), "v");
        assert_eq!(d.vertex_name(d.range(fs)), "u");
        let inv = h.inverse_graph();
        let names: Vec<_> = inv.edges().map(|e| inv.edge_name(e)).collect();
        assert_eq!(names, ["d*", "e*", "f*"]);

        let empty = examples::single_vertex();
        assert_eq!(empty.double_graph(), empty);
        assert_eq!(empty.inverse_graph(), empty);
    }

    #[test]
    fn ghost_endpoints_are_swapped() {
        for g in [
            examples::two_loops(),
            examples::loops_and_exit(),
            examples::two_cycle(),
        ] {
            for e in g.edges() {
                assert_eq!(Letter::Ghost(e).source(&g), g.range(e));
                assert_eq!(Letter::Ghost(e).range(&g), g.source(e));
            }
            assert_eq!(g.double_graph().edge_count(), 2 * g.edge_count());
        }
    }

    #[test]
    fn components_partition_the_graph() {
        assert_eq!(examples::two_loops().connected_components().len(), 1);
        assert_eq!(examples::loops_and_exit().connected_components().len(), 1);
        let g = Graph::new(["a", "b"], [("x", "a", "a"), ("y", "b", "b")]).unwrap();
        let comps = g.connected_components();
        assert_eq!(comps.len(), 2);
        let total_v: usize = comps.iter().map(Graph::vertex_count).sum();
        let total_e: usize = comps.iter().map(Graph::edge_count).sum();
        assert_eq!((total_v, total_e), (2, 2));
    }

    #[test]
    fn special_choice_defaults_and_errors() {
        let g = examples::loops_and_exit();
        let s = SpecialEdgeChoice::choose(&g, &BTreeMap::new()).unwrap();
        let u = g.vertex_id("u").unwrap();
        let v = g.vertex_id("v").unwrap();
        assert_eq!(s.special_at(u), g.edge_id("d"));
        assert_eq!(s.special_at(v), None);

        let r2 = examples::two_loops();
        let s = SpecialEdgeChoice::from_edges(&r2, &["e"]).unwrap();
        assert!(s.is_special(&r2, r2.edge_id("e").unwrap()));
        assert!(!s.is_special(&r2, r2.edge_id("d").unwrap()));

        let bad = BTreeMap::from([("v".to_string(), "d".to_string())]);
        assert!(matches!(
            SpecialEdgeChoice::choose(&g, &bad),
            Err(Error::BadSpecialChoice { .. })
        ));
        let bad = BTreeMap::from([("u".to_string(), "zz".to_string())]);
        assert_eq!(
            SpecialEdgeChoice::choose(&g, &bad),
            Err(Error::UnknownEdge("zz".into()))
        );
        let bad = BTreeMap::from([("q".to_string(), "d".to_string())]);
        assert_eq!(
            SpecialEdgeChoice::choose(&g, &bad),
            Err(Error::UnknownVertex("q".into()))
        );
    }

    #[test]
    fn path_syntax() {
        let amb = examples::r2("d");
        let p = amb.parse_path("e.d*").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(amb.format_path(&p), "e.d*");
        assert!(amb.parse_path("v").unwrap().is_vertex());
        assert!(amb.parse_path("q").is_err());
        let amb = examples::exit_graph("d");
        assert!(matches!(amb.parse_path("f.d"), Err(Error::NotAPath(_))));
    }

    #[test]
    fn cycles() {
        let amb = examples::r2("d");
        let g = amb.graph();
        assert!(!amb.parse_path("d.e").unwrap().is_cycle(g));
        assert!(amb.parse_path("d").unwrap().is_cycle(g));
        assert!(!amb.parse_path("v").unwrap().is_cycle(g));
        let amb = examples::with_defaults(examples::two_cycle());
        assert!(amb.parse_path("g.h").unwrap().is_cycle(amb.graph()));
    }

    #[test]
    fn letter_safety() {
        let g = Graph::new(["v"], [("a.b", "v", "v")]).unwrap();
        assert!(matches!(
            Ambient::with_special(g, &[]),
            Err(Error::BadLetterName(_))
        ));
        let g = Graph::new(["x"], [("x", "x", "x")]).unwrap();
        assert!(matches!(
            Ambient::with_special(g, &[]),
            Err(Error::BadLetterName(_))
        ));
    }
}
