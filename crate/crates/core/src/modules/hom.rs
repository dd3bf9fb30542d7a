use std::collections::BTreeMap;

use crate::branching::ExtRepGraph;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graph::{Letter, VertexId};

use super::actions::{LetterAction, WModule};
use super::linalg::sparse_nullspace;

/// A linear map `W(M) -> W(N)` as its nonzero matrix entries: `(b, t) -> k`
/// means the image of `b` has coefficient `k` at `t`.
pub type LinearMap<K> = BTreeMap<(VertexId, VertexId), K>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSolution<K> {
    pub dimension: usize,
    pub basis: Vec<LinearMap<K>>,
    pub unknowns: usize,
    pub rows: usize,
}

impl<K: Field> HomSolution<K> {
    /// Whether the solution space is exactly the scalar multiples of the
    /// identity of `m`.
    pub fn is_scalar_identity(&self, m: &ExtRepGraph) -> bool {
        self.dimension == 1
            && self.basis[0].len() == m.vertex_count()
            && m.graph()
                .vertices()
                .all(|b| self.basis[0].get(&(b, b)).is_some_and(|k| k.is_one()))
    }
}

struct Constraints<K> {
    index: BTreeMap<(VertexId, VertexId), usize>,
    unknowns: Vec<(VertexId, VertexId)>,
    rows: Vec<Vec<(usize, K)>>,
}

/// The commuting constraints `phi(b.g) = phi(b).g`, one row per target
/// vertex, for every vertex `b` of `m` and edge letter `g` with `b.g`
/// resolvable inside `m`. Images in `n` use the visible action, which is
/// exact at every vertex present in `n`.
fn constraints<K: Field>(m: &ExtRepGraph, n: &ExtRepGraph) -> Constraints<K> {
    let mut index = BTreeMap::new();
    let mut unknowns = Vec::new();
    for b in m.graph().vertices() {
        for t in n.fiber(m.label(b)) {
            index.insert((b, t), unknowns.len());
            unknowns.push((b, t));
        }
    }
    let (wm, wn) = (WModule(m), WModule(n));
    let amb = m.ambient();
    // transpose[g][t] = [(s, c)] with t appearing in s.g with coefficient c.
    let mut transpose: BTreeMap<Letter, BTreeMap<VertexId, Vec<(VertexId, i64)>>> = BTreeMap::new();
    for g in amb.edge_letters() {
        let by_target = transpose.entry(g).or_default();
        for s in n.graph().vertices() {
            for (t, c) in wn.act_letter_visible(s, g) {
                by_target.entry(t).or_default().push((s, c));
            }
        }
    }
    let mut rows = Vec::new();
    for b in m.graph().vertices() {
        for g in amb.edge_letters() {
            let Some(beta) = wm.act_letter(&b, g) else {
                continue;
            };
            // Both sides only have support over the range of `g`.
            for t in n.fiber(g.range(amb.graph())) {
                let mut row: BTreeMap<usize, K> = BTreeMap::new();
                let mut push = |i: usize, k: i64| {
                    let e = row.entry(i).or_insert_with(K::zero);
                    *e = e.clone() + K::from_i64(k);
                };
                for &(c, k) in &beta {
                    if let Some(&i) = index.get(&(c, t)) {
                        push(i, k);
                    }
                }
                for &(s, k) in transpose[&g].get(&t).map(Vec::as_slice).unwrap_or(&[]) {
                    if let Some(&i) = index.get(&(b, s)) {
                        push(i, -k);
                    }
                }
                let row: Vec<(usize, K)> = row.into_iter().filter(|(_, k)| !k.is_zero()).collect();
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    Constraints {
        index,
        unknowns,
        rows,
    }
}

/// Module maps between two (truncated) representation graph modules over
/// the same algebra. Constraints whose source side touches the frontier of
/// `m` are left out, so at finite depth this over-approximates the true
/// hom space; dimensions should be compared across depths.
pub fn hom_space<K: Field>(m: &ExtRepGraph, n: &ExtRepGraph) -> Result<HomSolution<K>> {
    if m.ambient() != n.ambient() {
        return Err(Error::AmbientMismatch);
    }
    let c = constraints::<K>(m, n);
    let kernel = sparse_nullspace(c.unknowns.len(), &c.rows);
    let basis = kernel
        .into_iter()
        .map(|v| v.into_iter().map(|(i, k)| (c.unknowns[i], k)).collect())
        .collect::<Vec<LinearMap<K>>>();
    Ok(HomSolution {
        dimension: basis.len(),
        basis,
        unknowns: c.unknowns.len(),
        rows: c.rows.len(),
    })
}

/// Whether `map` satisfies every constraint that `hom_space(m, n)` imposes.
/// Entries outside the allowed unknowns make it fail.
pub fn satisfies_constraints<K: Field>(
    m: &ExtRepGraph,
    n: &ExtRepGraph,
    map: &LinearMap<K>,
) -> bool {
    let c = constraints::<K>(m, n);
    if map.keys().any(|k| !c.index.contains_key(k)) {
        return false;
    }
    c.rows.iter().all(|row| {
        row.iter()
            .fold(K::zero(), |acc, (i, k)| {
                acc + k.clone() * map.get(&c.unknowns[*i]).cloned().unwrap_or_else(K::zero)
            })
            .is_zero()
    })
}

/// Carries `map` from `(m, n)` to `(m2, n2)` by matching vertex names,
/// dropping entries whose vertices do not exist there.
pub fn restrict_by_name<K: Field>(
    map: &LinearMap<K>,
    (m, n): (&ExtRepGraph, &ExtRepGraph),
    (m2, n2): (&ExtRepGraph, &ExtRepGraph),
) -> LinearMap<K> {
    map.iter()
        .filter_map(|(&(b, t), k)| {
            let b2 = m2.vertex_id(m.vertex_name(b))?;
            let t2 = n2.vertex_id(n.vertex_name(t))?;
            Some(((b2, t2), k.clone()))
        })
        .collect()
}
