use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::branching::ExtRepGraph;
use crate::field::{Field, Rational};
use crate::graph::{Letter, VertexId};

use super::actions::{LetterAction, ModuleVector, WModule};

type Vector = ModuleVector<VertexId, Rational>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub generators: Vec<String>,
    pub vertices: usize,
    pub dimension: usize,
    /// Actions on span vectors that could not be resolved in the truncation.
    pub unresolved: usize,
    /// `Some(true)`: the generated submodule is provably proper;
    /// `Some(false)`: provably everything; `None`: undecided at this depth.
    pub proper: Option<bool>,
    /// A vertex outside the generated submodule, when one is certified.
    pub witness: Option<String>,
    pub reason: String,
}

/// Row echelon span, keyed by pivot (smallest vertex of each vector).
#[derive(Default)]
struct Span {
    rows: BTreeMap<VertexId, Vector>,
}

impl Span {
    fn reduce(&self, v: &Vector) -> Vector {
        let mut v = v.clone();
        let mut from = VertexId(0);
        loop {
            let hit = v
                .terms()
                .range(from..)
                .find(|(p, _)| self.rows.contains_key(p))
                .map(|(p, k)| (*p, k.clone()));
            let Some((p, k)) = hit else {
                return v;
            };
            v.add_scaled(&self.rows[&p], &-k);
            from = VertexId(p.0 + 1);
        }
    }

    /// Adds `v`; returns the new echelon row if the span grew.
    fn insert(&mut self, v: &Vector) -> Option<Vector> {
        let r = self.reduce(v);
        let (&p, lead) = r.terms().iter().next()?;
        let r = r.scale(&lead.inverse().expect("nonzero lead"));
        self.rows.insert(p, r.clone());
        Some(r)
    }

    fn contains(&self, v: &Vector) -> bool {
        self.reduce(v).is_zero()
    }
}

/// The submodule of `W(r)` generated by the given vertices, explored inside
/// the truncation.
///
/// Two certificates decide properness when the exploration hits the
/// frontier. A vertex whose incoming edge is a nonspecial real edge spans,
/// with its descendants, a submodule: no letter moves it to its parent. If
/// every generator lies below such a vertex, anything with no such vertex
/// on its ancestor chain is outside. Conversely, if the span contains a
/// vertex on the ancestor chain of every vertex, following emitted edges
/// from it reaches everything. Both rely on the truncation being closed
/// under parents, as canonical truncations are.
pub fn submodule_closure(r: &ExtRepGraph, generators: &[VertexId]) -> ClosureReport {
    let m = WModule(r);
    let amb = r.ambient();
    let letters: Vec<Letter> = amb.generators();
    let mut span = Span::default();
    let mut queue: VecDeque<Vector> = VecDeque::new();
    for &g in generators {
        if let Some(row) = span.insert(&ModuleVector::unit(g)) {
            queue.push_back(row);
        }
    }
    let mut unresolved = 0;
    while let Some(v) = queue.pop_front() {
        for &j in &letters {
            let mut image = Vector::zero();
            let mut defined = true;
            for (x, k) in v.terms() {
                match m.act_letter(x, j) {
                    Some(terms) => {
                        for (y, c) in terms {
                            image.add_term(y, k.clone() * Rational::from_i64(c));
                        }
                    }
                    None => defined = false,
                }
            }
            if !defined {
                unresolved += 1;
                continue;
            }
            if let Some(row) = span.insert(&image) {
                queue.push_back(row);
            }
        }
    }
    let n = r.vertex_count();
    let dimension = span.rows.len();
    let mut report = ClosureReport {
        generators: generators
            .iter()
            .map(|&g| r.vertex_name(g).to_string())
            .collect(),
        vertices: n,
        dimension,
        unresolved,
        proper: None,
        witness: None,
        reason: String::new(),
    };
    let outside = (0..n)
        .map(VertexId)
        .find(|&w| !span.contains(&ModuleVector::unit(w)));
    if unresolved == 0 {
        report.proper = Some(outside.is_some() || !r.frontier().is_empty());
        report.witness = outside.map(|w| r.vertex_name(w).to_string());
        report.reason = "closed inside the truncation".into();
        return report;
    }
    if let Some(w) = below_roots_witness(r, generators) {
        report.proper = Some(true);
        report.witness = Some(r.vertex_name(w).to_string());
        report.reason = "generators lie below nonspecial real edges".into();
    } else if let Some(u) = (0..n)
        .map(VertexId)
        .find(|&u| span.contains(&ModuleVector::unit(u)) && dominates(r, u))
    {
        report.proper = Some(false);
        report.reason = format!(
            "span contains {}, an ancestor of every vertex",
            r.vertex_name(u)
        );
    } else {
        report.reason = "closure reached the frontier".into();
    }
    report
}

/// Ancestors of `w`, including `w`, stopping when the chain closes up.
fn ancestor_chain(r: &ExtRepGraph, w: VertexId) -> Vec<VertexId> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut cur = Some(w);
    while let Some(c) = cur {
        if !seen.insert(c) {
            break;
        }
        out.push(c);
        cur = r.parent(c);
    }
    out
}

fn is_root(r: &ExtRepGraph, w: VertexId) -> bool {
    matches!(r.incoming_label(w), Some(Letter::Real(e)) if !r.ambient().is_special(e))
}

fn below_roots_witness(r: &ExtRepGraph, generators: &[VertexId]) -> Option<VertexId> {
    if !generators
        .iter()
        .all(|&g| ancestor_chain(r, g).into_iter().any(|a| is_root(r, a)))
    {
        return None;
    }
    // The shallowest such vertex makes the clearest witness.
    (0..r.vertex_count())
        .map(|w| ancestor_chain(r, VertexId(w)))
        .filter(|chain| !chain.iter().any(|&a| is_root(r, a)))
        .min_by_key(Vec::len)
        .map(|chain| chain[0])
}

/// Whether `u` is on the ancestor chain of every vertex, and no chain ends
/// at a frontier vertex whose true parent was cut off.
fn dominates(r: &ExtRepGraph, u: VertexId) -> bool {
    r.graph().vertices().all(|w| {
        let chain = ancestor_chain(r, w);
        let top = *chain.last().expect("chain holds w");
        chain.contains(&u) && !(r.parent(top).is_none() && r.is_frontier(top))
    })
}
