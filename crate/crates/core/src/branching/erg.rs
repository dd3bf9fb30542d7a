use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Ambient, EdgeId, Graph, Letter, VertexId};

/// A graph `F` with a labelling homomorphism `phi: F -> E_d`.
///
/// Vertices in `frontier` are where a finite truncation stops: their
/// emissions may be incomplete. An exact representation graph has an empty
/// frontier.
#[derive(Clone, Debug)]
pub struct ExtRepGraph {
    ambient: Arc<Ambient>,
    graph: Graph,
    vertex_label: Vec<VertexId>,
    edge_label: Vec<Letter>,
    frontier: BTreeSet<VertexId>,
    out_by_label: Vec<BTreeMap<Letter, EdgeId>>,
    incoming: Vec<Option<EdgeId>>,
}

impl PartialEq for ExtRepGraph {
    fn eq(&self, other: &Self) -> bool {
        *self.ambient == *other.ambient
            && self.graph == other.graph
            && self.vertex_label == other.vertex_label
            && self.edge_label == other.edge_label
            && self.frontier == other.frontier
    }
}

impl Eq for ExtRepGraph {}

impl ExtRepGraph {
    pub fn new(
        ambient: &Arc<Ambient>,
        graph: Graph,
        vertex_label: Vec<VertexId>,
        edge_label: Vec<Letter>,
        frontier: BTreeSet<VertexId>,
    ) -> Result<ExtRepGraph> {
        let g = ambient.graph();
        if vertex_label.len() != graph.vertex_count() || edge_label.len() != graph.edge_count() {
            return Err(Error::InvalidRepGraph(
                "every vertex and edge needs a label".into(),
            ));
        }
        if let Some(v) = vertex_label.iter().find(|v| v.0 >= g.vertex_count()) {
            return Err(Error::InvalidRepGraph(format!(
                "label {v:?} is not a vertex"
            )));
        }
        for (i, l) in edge_label.iter().enumerate() {
            let ok = match l {
                Letter::Real(e) | Letter::Ghost(e) => e.0 < g.edge_count(),
                Letter::Vertex(_) => false,
            };
            if !ok {
                return Err(Error::InvalidRepGraph(format!(
                    "edge `{}` must be labelled by an edge of the double graph",
                    graph.edge_name(EdgeId(i))
                )));
            }
        }
        if let Some(v) = frontier.iter().find(|v| v.0 >= graph.vertex_count()) {
            return Err(Error::InvalidRepGraph(format!(
                "frontier vertex {v:?} out of range"
            )));
        }
        let mut out_by_label = vec![BTreeMap::new(); graph.vertex_count()];
        let mut incoming = vec![None; graph.vertex_count()];
        for f in graph.edges() {
            out_by_label[graph.source(f).0]
                .entry(edge_label[f.0])
                .or_insert(f);
            incoming[graph.range(f).0].get_or_insert(f);
        }
        Ok(ExtRepGraph {
            ambient: Arc::clone(ambient),
            graph,
            vertex_label,
            edge_label,
            frontier,
            out_by_label,
            incoming,
        })
    }

    /// The same graph with a different frontier.
    pub fn with_frontier(mut self, frontier: BTreeSet<VertexId>) -> Result<ExtRepGraph> {
        if let Some(v) = frontier.iter().find(|v| v.0 >= self.graph.vertex_count()) {
            return Err(Error::InvalidRepGraph(format!(
                "frontier vertex {v:?} out of range"
            )));
        }
        self.frontier = frontier;
        Ok(self)
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn label(&self, w: VertexId) -> VertexId {
        self.vertex_label[w.0]
    }

    pub fn edge_label(&self, f: EdgeId) -> Letter {
        self.edge_label[f.0]
    }

    pub fn frontier(&self) -> &BTreeSet<VertexId> {
        &self.frontier
    }

    pub fn is_frontier(&self, w: VertexId) -> bool {
        self.frontier.contains(&w)
    }

    pub fn is_exact(&self) -> bool {
        self.frontier.is_empty()
    }

    /// The edge leaving `w` with label `j`.
    pub fn emitted(&self, w: VertexId, j: Letter) -> Option<EdgeId> {
        self.out_by_label[w.0].get(&j).copied()
    }

    /// The target of the edge leaving `w` with label `j`.
    pub fn follow(&self, w: VertexId, j: Letter) -> Option<VertexId> {
        self.emitted(w, j).map(|f| self.graph.range(f))
    }

    pub fn incoming(&self, w: VertexId) -> Option<EdgeId> {
        self.incoming[w.0]
    }

    pub fn incoming_label(&self, w: VertexId) -> Option<Letter> {
        self.incoming(w).map(|f| self.edge_label(f))
    }

    pub fn parent(&self, w: VertexId) -> Option<VertexId> {
        self.incoming(w).map(|f| self.graph.source(f))
    }

    /// Vertices of `F` lying over `v`.
    pub fn fiber(&self, v: VertexId) -> Vec<VertexId> {
        self.graph
            .vertices()
            .filter(|&w| self.label(w) == v)
            .collect()
    }

    pub fn vertex_name(&self, w: VertexId) -> &str {
        self.graph.vertex_name(w)
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.graph.vertex_id(name)
    }

    pub fn is_connected(&self) -> bool {
        self.graph.connected_components().len() <= 1
    }
}

/// Collects named vertices and edges; ids are assigned by [`Graph::new`].
#[derive(Clone, Debug, Default)]
pub struct ErgBuilder {
    vertices: Vec<(String, VertexId)>,
    edges: Vec<(String, String, String, Letter)>,
    frontier: BTreeSet<String>,
}

impl ErgBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: impl Into<String>, label: VertexId) {
        self.vertices.push((name.into(), label));
    }

    pub fn add_edge(&mut self, name: impl Into<String>, source: &str, range: &str, label: Letter) {
        self.edges
            .push((name.into(), source.to_string(), range.to_string(), label));
    }

    pub fn mark_frontier(&mut self, name: impl Into<String>) {
        self.frontier.insert(name.into());
    }

    pub fn has_vertex(&self, name: &str) -> bool {
        self.vertices.iter().any(|(n, _)| n == name)
    }

    pub fn build(self, ambient: &Arc<Ambient>) -> Result<ExtRepGraph> {
        let graph = Graph::new(
            self.vertices.iter().map(|(n, _)| n.clone()),
            self.edges
                .iter()
                .map(|(n, s, r, _)| (n.clone(), s.clone(), r.clone())),
        )?;
        let mut vertex_label = vec![VertexId(0); graph.vertex_count()];
        for (n, l) in &self.vertices {
            vertex_label[graph.vertex_id(n).expect("declared").0] = *l;
        }
        let mut edge_label = vec![Letter::Vertex(VertexId(0)); graph.edge_count()];
        for (n, _, _, l) in &self.edges {
            edge_label[graph.edge_id(n).expect("declared").0] = *l;
        }
        let mut frontier = BTreeSet::new();
        for n in &self.frontier {
            frontier.insert(
                graph
                    .vertex_id(n)
                    .ok_or_else(|| Error::UnknownVertex(n.clone()))?,
            );
        }
        ExtRepGraph::new(ambient, graph, vertex_label, edge_label, frontier)
    }
}

/// The labels a vertex over `v` must emit, given the label of its incoming
/// edge (`None` for a source).
pub fn expected_emissions(
    amb: &Ambient,
    v: VertexId,
    incoming: Option<Letter>,
) -> BTreeSet<Letter> {
    let all = amb.letters_from(v);
    match incoming {
        Some(Letter::Ghost(_)) => all.into_iter().filter(|l| l.is_ghost()).collect(),
        Some(Letter::Real(e)) if amb.is_special(e) => {
            all.into_iter().filter(|&l| l != Letter::Ghost(e)).collect()
        }
        _ => all.into_iter().collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErgViolation {
    pub item: String,
    pub clause: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErgReport {
    pub vertices: usize,
    pub edges: usize,
    pub frontier: Vec<String>,
    pub connected: bool,
    pub violations: Vec<ErgViolation>,
}

impl ErgReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the homomorphism property, at most one incoming edge per vertex,
/// and the exact emission sets. Frontier vertices only need to emit a
/// subset of their expected labels.
pub fn validate_erg(r: &ExtRepGraph) -> ErgReport {
    let amb = &r.ambient;
    let g = amb.graph();
    let f = &r.graph;
    let mut violations = Vec::new();
    for e in f.edges() {
        let l = r.edge_label(e);
        if r.label(f.source(e)) != l.source(g) || r.label(f.range(e)) != l.range(g) {
            violations.push(ErgViolation {
                item: f.edge_name(e).to_string(),
                clause: "homomorphism",
                detail: format!(
                    "labelled {} but joins vertices over {} and {}",
                    amb.letter_name(l),
                    g.vertex_name(r.label(f.source(e))),
                    g.vertex_name(r.label(f.range(e)))
                ),
            });
        }
    }
    for w in f.vertices() {
        let name = f.vertex_name(w);
        if f.in_edges(w).len() > 1 {
            violations.push(ErgViolation {
                item: name.to_string(),
                clause: "unique-incoming",
                detail: format!("{} incoming edges", f.in_edges(w).len()),
            });
        }
        let emitted: Vec<Letter> = f.out_edges(w).iter().map(|&e| r.edge_label(e)).collect();
        let distinct: BTreeSet<Letter> = emitted.iter().copied().collect();
        if distinct.len() != emitted.len() {
            violations.push(ErgViolation {
                item: name.to_string(),
                clause: "emissions",
                detail: "emits some label twice".into(),
            });
        }
        let expected = expected_emissions(amb, r.label(w), r.incoming_label(w));
        let ok = if r.is_frontier(w) {
            distinct.is_subset(&expected)
        } else {
            distinct == expected
        };
        if !ok {
            let show = |s: &BTreeSet<Letter>| {
                s.iter()
                    .map(|&l| amb.letter_name(l))
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            violations.push(ErgViolation {
                item: name.to_string(),
                clause: "emissions",
                detail: format!(
                    "emits {{{}}}, expected {{{}}}",
                    show(&distinct),
                    show(&expected)
                ),
            });
        }
    }
    ErgReport {
        vertices: f.vertex_count(),
        edges: f.edge_count(),
        frontier: r
            .frontier
            .iter()
            .map(|&w| f.vertex_name(w).to_string())
            .collect(),
        connected: r.is_connected(),
        violations,
    }
}

/// A label-preserving isomorphism `a -> b` (as a vertex map), matching
/// frontier to frontier.
///
/// Valid representation graphs have at most one incoming edge and distinct
/// emitted labels at each vertex, so an image of one vertex determines its
/// whole component; only component roots are searched.
pub fn find_isomorphism(a: &ExtRepGraph, b: &ExtRepGraph) -> Option<Vec<VertexId>> {
    if *a.ambient != *b.ambient
        || a.graph.vertex_count() != b.graph.vertex_count()
        || a.graph.edge_count() != b.graph.edge_count()
        || a.frontier.len() != b.frontier.len()
    {
        return None;
    }
    let n = a.graph.vertex_count();
    let mut map: Vec<Option<VertexId>> = vec![None; n];
    let mut used = vec![false; n];
    for root in a.graph.vertices() {
        if map[root.0].is_some() {
            continue;
        }
        let found = b
            .graph
            .vertices()
            .filter(|c| !used[c.0])
            .find_map(|c| propagate(a, b, root, c, &used));
        let local = found?;
        for (x, y) in local {
            map[x.0] = Some(y);
            used[y.0] = true;
        }
    }
    map.into_iter().collect()
}

fn propagate(
    a: &ExtRepGraph,
    b: &ExtRepGraph,
    root: VertexId,
    image: VertexId,
    used: &[bool],
) -> Option<BTreeMap<VertexId, VertexId>> {
    let mut map = BTreeMap::new();
    let mut taken = BTreeSet::new();
    let mut queue = VecDeque::from([(root, image)]);
    while let Some((x, y)) = queue.pop_front() {
        if let Some(&prev) = map.get(&x) {
            if prev != y {
                return None;
            }
            continue;
        }
        if used[y.0] || !taken.insert(y) {
            return None;
        }
        if a.label(x) != b.label(y)
            || a.is_frontier(x) != b.is_frontier(y)
            || a.graph.out_edges(x).len() != b.graph.out_edges(y).len()
            || a.graph.in_edges(x).len() != b.graph.in_edges(y).len()
            || a.incoming_label(x) != b.incoming_label(y)
        {
            return None;
        }
        map.insert(x, y);
        for &e in a.graph.out_edges(x) {
            let y2 = b.follow(y, a.edge_label(e))?;
            queue.push_back((a.graph.range(e), y2));
        }
        if let (Some(px), Some(py)) = (a.parent(x), b.parent(y)) {
            queue.push_back((px, py));
        }
    }
    Some(map)
}

/// Whether `small` sits inside `big` with the same names, labels and
/// endpoints, and every non-frontier vertex of `small` keeps its full set of
/// emissions.
pub fn embeds_by_name(small: &ExtRepGraph, big: &ExtRepGraph) -> bool {
    let (s, b) = (&small.graph, &big.graph);
    let vertices_ok = s.vertices().all(|w| {
        b.vertex_id(s.vertex_name(w)).is_some_and(|w2| {
            big.label(w2) == small.label(w)
                && (small.is_frontier(w) || s.out_edges(w).len() == b.out_edges(w2).len())
        })
    });
    vertices_ok
        && s.edges().all(|e| {
            b.edge_id(s.edge_name(e)).is_some_and(|e2| {
                big.edge_label(e2) == small.edge_label(e)
                    && b.vertex_name(b.source(e2)) == s.vertex_name(s.source(e))
                    && b.vertex_name(b.range(e2)) == s.vertex_name(s.range(e))
            })
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;

    fn loop_erg(amb: &Arc<Ambient>, ghost: bool) -> ExtRepGraph {
        let g = amb.graph();
        let v = g.vertex_id("v").unwrap();
        let e = g.edge_id("e").unwrap();
        let mut b = ErgBuilder::new();
        b.add_vertex("w", v);
        b.add_edge(
            "f",
            "w",
            "w",
            if ghost {
                Letter::Ghost(e)
            } else {
                Letter::Real(e)
            },
        );
        b.build(amb).unwrap()
    }

    #[test]
    fn one_loop_cycles_are_valid() {
        let amb = examples::one_loop_ambient();
        assert!(validate_erg(&loop_erg(&amb, false)).is_valid());
        assert!(validate_erg(&loop_erg(&amb, true)).is_valid());
    }

    #[test]
    fn missing_emission_is_reported() {
        let amb = examples::r2("d");
        let g = amb.graph();
        let v = g.vertex_id("v").unwrap();
        let mut b = ErgBuilder::new();
        b.add_vertex("w", v);
        let r = b.build(&amb).unwrap();
        let report = validate_erg(&r);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].clause, "emissions");

        let mut b = ErgBuilder::new();
        b.add_vertex("w", v);
        b.mark_frontier("w");
        assert!(validate_erg(&b.build(&amb).unwrap()).is_valid());
    }

    #[test]
    fn expected_sets_follow_incoming_label() {
        let amb = examples::r2("d");
        let g = amb.graph();
        let v = g.vertex_id("v").unwrap();
        let d = Letter::Real(g.edge_id("d").unwrap());
        let e = Letter::Real(g.edge_id("e").unwrap());
        assert_eq!(expected_emissions(&amb, v, None).len(), 4);
        assert_eq!(expected_emissions(&amb, v, Some(e)).len(), 4);
        assert!(!expected_emissions(&amb, v, Some(d)).contains(&d.star()));
        assert_eq!(
            expected_emissions(&amb, v, Some(d.star())),
            [d.star(), e.star()].into()
        );
    }

    #[test]
    fn isomorphism_respects_labels() {
        let amb = examples::one_loop_ambient();
        let real = loop_erg(&amb, false);
        let ghost = loop_erg(&amb, true);
        assert!(find_isomorphism(&real, &real).is_some());
        assert!(find_isomorphism(&real, &ghost).is_none());
        assert!(embeds_by_name(&real, &real));
        assert!(!embeds_by_name(&real, &ghost));
    }

    #[test]
    fn homomorphism_violation() {
        let amb = examples::with_defaults(examples::single_edge());
        let g = amb.graph();
        let u = g.vertex_id("u").unwrap();
        let f = Letter::Real(g.edge_id("f").unwrap());
        let mut b = ErgBuilder::new();
        b.add_vertex("a", u);
        b.add_vertex("b", u);
        b.add_edge("x", "a", "b", f);
        b.mark_frontier("a");
        b.mark_frontier("b");
        let report = validate_erg(&b.build(&amb).unwrap());
        assert!(report.violations.iter().any(|v| v.clause == "homomorphism"));
    }
}
