//! The three families of connected extended representation graphs, built
//! lazily up to a depth, and the classification of finite exact ones.
//!
//! Naming follows the construction: `w_{x}` and `f_{x}` for the source
//! family, `w_{i}`, `w_{i,y}`, `f_{i}`, `f_{i,y}` for the spine families,
//! with paths written in the dotted letter syntax (`w_{2,d.e*}`).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::basis::{
    can_follow, closed_basis_classes, cyclic_equivalent, extensions, tail_equivalent,
    ClosedBasisPath, InfinitePath,
};
use crate::branching::{
    expected_emissions, find_isomorphism, validate_erg, ErgBuilder, ExtRepGraph,
};
use crate::error::{Error, Result};
use crate::graph::{Ambient, Letter, Path, VertexId};

/// Names one connected representation graph up to isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Descriptor {
    Source(VertexId),
    Infinite(InfinitePath),
    Cycle(ClosedBasisPath),
}

impl Descriptor {
    /// `source:v`, `cycle:d.e` or `inf:(d*)^inf`.
    pub fn parse(amb: &Ambient, text: &str) -> Result<Descriptor> {
        let text = text.trim();
        let (kind, body) = text
            .split_once(':')
            .ok_or_else(|| Error::Syntax(text.to_string()))?;
        match kind {
            "source" => amb
                .graph()
                .vertex_id(body)
                .map(Descriptor::Source)
                .ok_or_else(|| Error::UnknownVertex(body.to_string())),
            "cycle" => Ok(Descriptor::Cycle(ClosedBasisPath::parse(amb, body)?)),
            "inf" => Ok(Descriptor::Infinite(InfinitePath::parse(amb, body)?)),
            _ => Err(Error::Syntax(text.to_string())),
        }
    }

    pub fn format(&self, amb: &Ambient) -> String {
        match self {
            Descriptor::Source(v) => format!("source:{}", amb.graph().vertex_name(*v)),
            Descriptor::Infinite(x) => format!("inf:{}", x.format(amb)),
            Descriptor::Cycle(x) => format!("cycle:{}", amb.format_path(x.path())),
        }
    }

    pub fn display<'a>(&'a self, amb: &'a Ambient) -> impl fmt::Display + 'a {
        DisplayDescriptor { amb, d: self }
    }

    /// Ghostly descriptors are exactly those of usual representation graphs:
    /// sources at sinks, ghost cycles and ghostly infinite paths.
    pub fn is_ghostly(&self, amb: &Ambient) -> bool {
        match self {
            Descriptor::Source(v) => amb.graph().is_sink(*v),
            Descriptor::Infinite(x) => x.is_ghostly(),
            Descriptor::Cycle(x) => x.is_ghostly(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Descriptor::Source(_) => "source",
            Descriptor::Infinite(_) => "inf",
            Descriptor::Cycle(_) => "cycle",
        }
    }
}

struct DisplayDescriptor<'a> {
    amb: &'a Ambient,
    d: &'a Descriptor,
}

impl fmt::Display for DisplayDescriptor<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.d.format(self.amb))
    }
}

/// Where a vertex of a canonical graph sits in its construction.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Coord {
    /// `w_x` in the source family.
    Path(Path),
    /// `w_i`.
    Spine(usize),
    /// `w_{i,y}`, with `y` nonempty.
    Side(usize, Vec<Letter>),
}

impl Coord {
    pub fn name(&self, amb: &Ambient) -> String {
        match self {
            Coord::Path(p) => format!("w_{{{}}}", amb.format_path(p)),
            Coord::Spine(i) => format!("w_{{{i}}}"),
            Coord::Side(i, y) => format!("w_{{{i},{}}}", amb.format_word(y)),
        }
    }

    fn edge_name(&self, amb: &Ambient) -> String {
        let mut n = self.name(amb);
        n.replace_range(0..1, "f");
        n
    }
}

/// A canonical graph realized up to `depth`, with the frontier marking
/// every vertex whose neighbourhood was cut.
#[derive(Clone, Debug)]
pub struct TruncatedErg {
    descriptor: Descriptor,
    depth: usize,
    erg: ExtRepGraph,
    coords: Vec<Coord>,
}

impl TruncatedErg {
    pub fn descriptor(&self) -> &Descriptor {
        &self.descriptor
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn erg(&self) -> &ExtRepGraph {
        &self.erg
    }

    pub fn into_erg(self) -> ExtRepGraph {
        self.erg
    }

    pub fn coord(&self, w: VertexId) -> &Coord {
        &self.coords[w.0]
    }

    pub fn vertex_at(&self, c: &Coord) -> Option<VertexId> {
        self.erg.vertex_id(&c.name(self.erg.ambient()))
    }
}

/// Whether `y1` may start a side tree hanging off a spine vertex entered by
/// `x_i`, when `excluded` is the letter continuing the spine.
pub fn attachment_allows(amb: &Ambient, x_i: Letter, excluded: Option<Letter>, y1: Letter) -> bool {
    can_follow(amb, x_i, y1) && Some(y1) != excluded
}

/// The spine letter `x_i` and the excluded continuation at position `i`.
fn spine_position(d: &Descriptor, i: usize) -> Result<(Letter, Option<Letter>)> {
    match d {
        Descriptor::Source(_) => Err(Error::InvalidArgument("sources have no spine".into())),
        Descriptor::Infinite(x) => {
            if i == 0 {
                return Err(Error::InvalidArgument("positions start at 1".into()));
            }
            Ok((x.letter(i), (i >= 2).then(|| x.letter(i - 1))))
        }
        Descriptor::Cycle(x) => {
            let m = x.len();
            if i == 0 || i > m {
                return Err(Error::IndexOutOfRange { index: i, len: m });
            }
            Ok((x.letters()[i - 1], Some(x.letters()[i % m])))
        }
    }
}

/// The letters `y_1` allowed to start a path of `X_i`.
pub fn attachment_first_letters(amb: &Ambient, d: &Descriptor, i: usize) -> Result<Vec<Letter>> {
    let (x_i, excluded) = spine_position(d, i)?;
    let v = x_i.range(amb.graph());
    Ok(amb
        .letters_from(v)
        .into_iter()
        .filter(|&l| attachment_allows(amb, x_i, excluded, l))
        .collect())
}

struct Growth<'a> {
    amb: &'a Ambient,
    builder: ErgBuilder,
    coords: BTreeMap<String, Coord>,
}

impl<'a> Growth<'a> {
    fn new(amb: &'a Ambient) -> Self {
        Growth {
            amb,
            builder: ErgBuilder::new(),
            coords: BTreeMap::new(),
        }
    }

    fn vertex(&mut self, c: Coord, label: VertexId) -> String {
        let name = c.name(self.amb);
        self.builder.add_vertex(name.clone(), label);
        self.coords.insert(name.clone(), c);
        name
    }

    /// Side tree `w_{i,y}`, `1 <= |y| <= max_len`, below the spine vertex
    /// entered by `x_i`.
    fn side_tree(&mut self, i: usize, x_i: Letter, excluded: Option<Letter>, max_len: usize) {
        let g = self.amb.graph();
        let root = Coord::Spine(i).name(self.amb);
        let mut stack: Vec<(String, Vec<Letter>)> = vec![(root, Vec::new())];
        while let Some((parent, y)) = stack.pop() {
            if y.len() == max_len {
                continue;
            }
            let (from, last) = match y.last() {
                Some(&l) => (l.range(g), l),
                None => (x_i.range(g), x_i),
            };
            for l in self.amb.letters_from(from) {
                let ok = if y.is_empty() {
                    attachment_allows(self.amb, x_i, excluded, l)
                } else {
                    can_follow(self.amb, last, l)
                };
                if !ok {
                    continue;
                }
                let mut y2 = y.clone();
                y2.push(l);
                let c = Coord::Side(i, y2.clone());
                let edge = c.edge_name(self.amb);
                let child = self.vertex(c, l.range(g));
                self.builder.add_edge(edge, &parent, &child, l);
                stack.push((child, y2));
            }
        }
    }

    fn finish(
        self,
        amb: &Arc<Ambient>,
        descriptor: Descriptor,
        depth: usize,
        extra_frontier: &[Coord],
    ) -> Result<TruncatedErg> {
        let erg = self.builder.build(amb)?;
        let mut frontier = BTreeSet::new();
        for w in erg.graph().vertices() {
            let emitted: BTreeSet<Letter> = erg
                .graph()
                .out_edges(w)
                .iter()
                .map(|&f| erg.edge_label(f))
                .collect();
            if emitted != expected_emissions(amb, erg.label(w), erg.incoming_label(w)) {
                frontier.insert(w);
            }
        }
        for c in extra_frontier {
            frontier.insert(erg.vertex_id(&c.name(amb)).expect("spine vertex exists"));
        }
        let erg = erg.with_frontier(frontier)?;
        let coords = erg
            .graph()
            .vertices()
            .map(|w| self.coords[erg.vertex_name(w)].clone())
            .collect();
        Ok(TruncatedErg {
            descriptor,
            depth,
            erg,
            coords,
        })
    }
}

/// `F_v` restricted to `w_x` with `|x| <= depth`.
pub fn build_f_v(amb: &Arc<Ambient>, v: VertexId, depth: usize) -> Result<TruncatedErg> {
    let g = amb.graph();
    if v.0 >= g.vertex_count() {
        return Err(Error::UnknownVertex(format!("{v:?}")));
    }
    let mut grow = Growth::new(amb);
    let mut layer = vec![Path::vertex(v)];
    grow.vertex(Coord::Path(Path::vertex(v)), v);
    for _ in 0..depth {
        let mut next = Vec::new();
        for p in &layer {
            let parent = Coord::Path(p.clone()).name(amb);
            for q in extensions(amb, p) {
                let l = q.last_letter().expect("extension is nonempty");
                let c = Coord::Path(q.clone());
                let edge = c.edge_name(amb);
                let child = grow.vertex(c, q.range());
                grow.builder.add_edge(edge, &parent, &child, l);
                next.push(q);
            }
        }
        layer = next;
    }
    grow.finish(amb, Descriptor::Source(v), depth, &[])
}

/// `F_x` for an eventually periodic `x`, with spine `w_1 .. w_depth` and side
/// trees of length at most `depth`. `w_depth` always lies on the frontier,
/// since its incoming edge comes from `w_{depth+1}`.
pub fn build_f_inf(amb: &Arc<Ambient>, x: &InfinitePath, depth: usize) -> Result<TruncatedErg> {
    if depth == 0 {
        return Err(Error::InvalidArgument(
            "the infinite family needs depth at least 1".into(),
        ));
    }
    let g = amb.graph();
    let mut grow = Growth::new(amb);
    for i in 1..=depth {
        grow.vertex(Coord::Spine(i), x.letter(i).range(g));
    }
    for i in 1..depth {
        let (s, r) = (Coord::Spine(i + 1).name(amb), Coord::Spine(i).name(amb));
        grow.builder
            .add_edge(format!("f_{{{i}}}"), &s, &r, x.letter(i));
    }
    for i in 1..=depth {
        let excluded = (i >= 2).then(|| x.letter(i - 1));
        grow.side_tree(i, x.letter(i), excluded, depth);
    }
    grow.finish(
        amb,
        Descriptor::Infinite(x.clone()),
        depth,
        &[Coord::Spine(depth)],
    )
}

/// `F_x` for a closed basis path `x = x_1 .. x_m`: the spine cycle
/// `w_m -> w_1 -> .. -> w_m` plus side trees of length at most `depth`.
pub fn build_f_cyc(amb: &Arc<Ambient>, x: &ClosedBasisPath, depth: usize) -> Result<TruncatedErg> {
    let g = amb.graph();
    let xs = x.letters();
    let m = xs.len();
    let mut grow = Growth::new(amb);
    for i in 1..=m {
        grow.vertex(Coord::Spine(i), xs[i - 1].range(g));
    }
    for i in 1..=m {
        let prev = if i == 1 { m } else { i - 1 };
        let (s, r) = (Coord::Spine(prev).name(amb), Coord::Spine(i).name(amb));
        grow.builder
            .add_edge(format!("f_{{{i}}}"), &s, &r, xs[i - 1]);
    }
    for i in 1..=m {
        grow.side_tree(i, xs[i - 1], Some(xs[i % m]), depth);
    }
    grow.finish(amb, Descriptor::Cycle(x.clone()), depth, &[])
}

pub fn build(amb: &Arc<Ambient>, d: &Descriptor, depth: usize) -> Result<TruncatedErg> {
    match d {
        Descriptor::Source(v) => build_f_v(amb, *v, depth),
        Descriptor::Infinite(x) => build_f_inf(amb, x, depth),
        Descriptor::Cycle(x) => build_f_cyc(amb, x, depth),
    }
}

/// Isomorphism of the (infinite) canonical graphs, decided on descriptors.
pub fn is_isomorphic(a: &Descriptor, b: &Descriptor) -> bool {
    match (a, b) {
        (Descriptor::Source(u), Descriptor::Source(v)) => u == v,
        (Descriptor::Infinite(x), Descriptor::Infinite(y)) => tail_equivalent(x, y),
        (Descriptor::Cycle(x), Descriptor::Cycle(y)) => cyclic_equivalent(x, y),
        _ => false,
    }
}

/// The descriptor of a finite, exact, connected representation graph.
///
/// Every vertex receives at most one edge, so walking incoming edges
/// backwards either stops at a source or runs into a cycle.
pub fn classify_finite(r: &ExtRepGraph) -> Result<Descriptor> {
    if !r.is_exact() {
        return Err(Error::Truncated);
    }
    let report = validate_erg(r);
    if let Some(v) = report.violations.first() {
        return Err(Error::InvalidRepGraph(format!("{}: {}", v.item, v.detail)));
    }
    if r.vertex_count() == 0 {
        return Err(Error::InvalidRepGraph("empty graph".into()));
    }
    if !r.is_connected() {
        return Err(Error::Disconnected);
    }
    let f = r.graph();
    if let Some(w) = f.vertices().find(|&w| r.incoming(w).is_none()) {
        return Ok(Descriptor::Source(r.label(w)));
    }
    let mut seen = BTreeSet::new();
    let mut w = VertexId(0);
    while seen.insert(w) {
        w = r.parent(w).expect("no sources");
    }
    // `w` lies on the cycle; collect incoming labels walking backwards.
    let mut labels = Vec::new();
    let mut u = w;
    loop {
        labels.push(r.incoming_label(u).expect("no sources"));
        u = r.parent(u).expect("no sources");
        if u == w {
            break;
        }
    }
    labels.reverse();
    let amb = r.ambient();
    let path = Path::from_letters(amb.graph(), labels)?;
    Ok(Descriptor::Cycle(
        ClosedBasisPath::new(amb, path)?.canonical(amb),
    ))
}

/// One descriptor per isomorphism class: every source, every closed basis
/// path of length `<= max_cycle_len` up to rotation, and every periodic path
/// with primitive period of length `<= max_period_len` up to tail
/// equivalence. `ghostly_only` keeps the usual representation graphs.
pub fn representatives(
    amb: &Ambient,
    max_cycle_len: usize,
    max_period_len: usize,
    ghostly_only: bool,
) -> Vec<Descriptor> {
    let g = amb.graph();
    let mut out: Vec<Descriptor> = g.vertices().map(Descriptor::Source).collect();
    out.extend(
        closed_basis_classes(amb, max_cycle_len, false)
            .into_iter()
            .map(Descriptor::Cycle),
    );
    for c in closed_basis_classes(amb, max_period_len, true) {
        let x = InfinitePath::new(amb, c.letters().to_vec(), Vec::new())
            .expect("closed basis paths repeat");
        out.push(Descriptor::Infinite(x));
    }
    out.retain(|d| !ghostly_only || d.is_ghostly(amb));
    out
}

/// Convenience: whether two finite exact graphs are label-isomorphic.
pub fn same_graph(a: &ExtRepGraph, b: &ExtRepGraph) -> bool {
    find_isomorphism(a, b).is_some()
}

/// Summary of one truncation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncationSummary {
    pub descriptor: String,
    pub depth: usize,
    pub vertices: usize,
    pub edges: usize,
    pub frontier: usize,
}

impl TruncatedErg {
    pub fn summary(&self) -> TruncationSummary {
        let amb = self.erg.ambient();
        TruncationSummary {
            descriptor: self.descriptor.format(amb),
            depth: self.depth,
            vertices: self.erg.vertex_count(),
            edges: self.erg.graph().edge_count(),
            frontier: self.erg.frontier().len(),
        }
    }
}
