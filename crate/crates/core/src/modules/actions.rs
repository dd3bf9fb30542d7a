use std::collections::BTreeMap;
use std::fmt::Debug;

use serde::Serialize;

use crate::algebra::AlgebraElement;
use crate::branching::{BranchingSystem, ExtRepGraph};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graph::{Ambient, Letter, VertexId};

/// A finite linear combination of module basis points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleVector<P: Ord, K> {
    terms: BTreeMap<P, K>,
}

impl<P: Ord + Clone, K: Field> Default for ModuleVector<P, K> {
    fn default() -> Self {
        ModuleVector {
            terms: BTreeMap::new(),
        }
    }
}

impl<P: Ord + Clone, K: Field> ModuleVector<P, K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(p: P) -> Self {
        let mut v = Self::zero();
        v.add_term(p, K::one());
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (P, K)>) -> Self {
        let mut v = Self::zero();
        for (p, k) in terms {
            v.add_term(p, k);
        }
        v
    }

    pub fn add_term(&mut self, p: P, k: K) {
        if k.is_zero() {
            return;
        }
        match self.terms.get_mut(&p) {
            Some(c) => {
                let sum = c.clone() + k;
                if sum.is_zero() {
                    self.terms.remove(&p);
                } else {
                    *c = sum;
                }
            }
            None => {
                self.terms.insert(p, k);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, k: &K) {
        for (p, c) in &other.terms {
            self.add_term(p.clone(), c.clone() * k.clone());
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &K::one());
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-K::one());
        out
    }

    pub fn scale(&self, k: &K) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(p, c)| (p.clone(), c.clone() * k.clone())),
        )
    }

    pub fn terms(&self) -> &BTreeMap<P, K> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &P) -> K {
        self.terms.get(p).cloned().unwrap_or_else(K::zero)
    }

    /// `a + 2*b - c`, with point names supplied by `name`.
    pub fn format_with(&self, name: impl Fn(&P) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (p, k)) in self.terms.iter().enumerate() {
            let (neg, abs) = k.sign_split();
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !abs.is_one() {
                out.push_str(&format!("{abs}*"));
            }
            out.push_str(&name(p));
        }
        out
    }
}

/// A vector together with whether every step of its computation was
/// resolvable inside the truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionResult<P: Ord, K> {
    pub vector: ModuleVector<P, K>,
    pub defined: bool,
}

/// A module given by how single letters move basis points.
pub trait LetterAction {
    type Point: Clone + Ord + Debug;

    fn ambient(&self) -> &Ambient;

    /// `x . j` as a signed combination of points, or `None` when a
    /// truncation hides part of the answer.
    fn act_letter(&self, x: &Self::Point, j: Letter) -> Option<Vec<(Self::Point, i64)>>;
}

/// The module `V(S)` of a branching system.
pub struct VModule<'a, S>(pub &'a S);

impl<S: BranchingSystem> LetterAction for VModule<'_, S> {
    type Point = S::Point;

    fn ambient(&self) -> &Ambient {
        self.0.ambient()
    }

    fn act_letter(&self, x: &S::Point, j: Letter) -> Option<Vec<(S::Point, i64)>> {
        let s = self.0;
        let amb = s.ambient();
        let g = amb.graph();
        let v = s.vertex_of(x);
        let part = s.letter_part(x);
        let unit = |p: Option<S::Point>| vec![(p.expect("system map defined on its domain"), 1)];
        Some(match j {
            Letter::Vertex(u) if u == v => vec![(x.clone(), 1)],
            Letter::Vertex(_) => Vec::new(),
            Letter::Real(e) if part == Some(Letter::Ghost(e)) => {
                unit(s.rho_inv(Letter::Ghost(e), x))
            }
            Letter::Real(e) if v == g.source(e) && !part.is_some_and(Letter::is_ghost) => {
                unit(s.rho(j, x))
            }
            Letter::Real(_) => Vec::new(),
            Letter::Ghost(e) if v != g.range(e) => Vec::new(),
            Letter::Ghost(e) if amb.is_special(e) && part == Some(Letter::Real(e)) => {
                let y = s.rho_inv(Letter::Real(e), x).expect("rho_e maps onto Y_e");
                let mut out = vec![(y.clone(), 1)];
                for &d in g.out_edges(g.source(e)) {
                    if d == e {
                        continue;
                    }
                    let z = s
                        .rho(Letter::Real(d), &y)
                        .expect("rho_d defined off the ghost parts");
                    out.push((
                        s.rho(Letter::Ghost(d), &z)
                            .expect("rho_d* defined on X_r(d)"),
                        -1,
                    ));
                }
                out
            }
            Letter::Ghost(_) => unit(s.rho(j, x)),
        })
    }
}

/// The module `W(F, phi)` of a (possibly truncated) representation graph.
pub struct WModule<'a>(pub &'a ExtRepGraph);

impl WModule<'_> {
    /// `x . j` restricted to the vertices present in the truncation: parts
    /// of the image lying beyond the frontier are dropped instead of making
    /// the result undefined.
    pub fn act_letter_visible(&self, x: VertexId, j: Letter) -> Vec<(VertexId, i64)> {
        w_letter(self.0, x, j, true).expect("visible action is always defined")
    }
}

fn w_letter(
    r: &ExtRepGraph,
    x: VertexId,
    j: Letter,
    visible_only: bool,
) -> Option<Vec<(VertexId, i64)>> {
    let amb = r.ambient();
    let g = amb.graph();
    let unknown = |at: VertexId| {
        if visible_only || !r.is_frontier(at) {
            Some(Vec::new())
        } else {
            None
        }
    };
    match j {
        Letter::Vertex(v) => Some(if r.label(x) == v {
            vec![(x, 1)]
        } else {
            Vec::new()
        }),
        Letter::Real(e) => {
            if let Some(y) = r.follow(x, j) {
                Some(vec![(y, 1)])
            } else if r.incoming_label(x) == Some(Letter::Ghost(e)) {
                Some(vec![(r.parent(x).expect("incoming edge"), 1)])
            } else if r.label(x) == g.source(e) {
                unknown(x)
            } else {
                Some(Vec::new())
            }
        }
        Letter::Ghost(e) => {
            if let Some(y) = r.follow(x, j) {
                Some(vec![(y, 1)])
            } else if amb.is_special(e) && r.incoming_label(x) == Some(Letter::Real(e)) {
                let p = r.parent(x).expect("incoming edge");
                let mut out = vec![(p, 1)];
                for &d in g.out_edges(g.source(e)) {
                    if d == e {
                        continue;
                    }
                    let Some(y1) = r.follow(p, Letter::Real(d)) else {
                        out.extend(unknown(p)?);
                        continue;
                    };
                    match r.follow(y1, Letter::Ghost(d)) {
                        Some(y2) => out.push((y2, -1)),
                        None => out.extend(unknown(y1)?),
                    }
                }
                Some(out)
            } else if r.label(x) == g.range(e) {
                unknown(x)
            } else {
                Some(Vec::new())
            }
        }
    }
}

impl LetterAction for WModule<'_> {
    type Point = VertexId;

    fn ambient(&self) -> &Ambient {
        self.0.ambient()
    }

    fn act_letter(&self, x: &VertexId, j: Letter) -> Option<Vec<(VertexId, i64)>> {
        w_letter(self.0, *x, j, false)
    }
}

/// `w . j_1 . j_2 ...`, letters applied left to right.
pub fn act_word<M: LetterAction, K: Field>(
    m: &M,
    w: &ModuleVector<M::Point, K>,
    word: &[Letter],
) -> ActionResult<M::Point, K> {
    let mut current = w.clone();
    for &j in word {
        let mut next = ModuleVector::zero();
        for (x, k) in current.terms() {
            match m.act_letter(x, j) {
                Some(image) => {
                    for (y, c) in image {
                        next.add_term(y, k.clone() * K::from_i64(c));
                    }
                }
                None => {
                    return ActionResult {
                        vector: ModuleVector::zero(),
                        defined: false,
                    }
                }
            }
        }
        current = next;
    }
    ActionResult {
        vector: current,
        defined: true,
    }
}

fn act_element<M: LetterAction, K: Field>(
    m: &M,
    w: &ModuleVector<M::Point, K>,
    a: &AlgebraElement<K>,
) -> Result<ActionResult<M::Point, K>> {
    if a.ambient().as_ref() != m.ambient() {
        return Err(Error::AmbientMismatch);
    }
    let mut out = ModuleVector::zero();
    for (p, k) in a.terms() {
        let r = act_word(m, w, &p.word());
        if !r.defined {
            return Ok(ActionResult {
                vector: ModuleVector::zero(),
                defined: false,
            });
        }
        out.add_scaled(&r.vector, k);
    }
    Ok(ActionResult {
        vector: out,
        defined: true,
    })
}

/// `w . a` in `V(S)`.
pub fn act_v<S: BranchingSystem, K: Field>(
    s: &S,
    w: &ModuleVector<S::Point, K>,
    a: &AlgebraElement<K>,
) -> Result<ModuleVector<S::Point, K>> {
    if w.terms().keys().any(|x| !s.contains(x)) {
        return Err(Error::CarrierMismatch);
    }
    Ok(act_element(&VModule(s), w, a)?.vector)
}

/// `w . a` in `W(F, phi)`, undefined when the truncation is too shallow.
pub fn act_w<K: Field>(
    r: &ExtRepGraph,
    w: &ModuleVector<VertexId, K>,
    a: &AlgebraElement<K>,
) -> Result<ActionResult<VertexId, K>> {
    if w.terms().keys().any(|x| x.0 >= r.vertex_count()) {
        return Err(Error::CarrierMismatch);
    }
    act_element(&WModule(r), w, a)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationViolation {
    pub point: String,
    pub relation: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EFamilyReport {
    pub checked: usize,
    pub skipped: usize,
    pub violations: Vec<RelationViolation>,
}

impl EFamilyReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

type Vector<P> = ModuleVector<P, crate::field::Rational>;

/// Checks the defining relations pointwise at every vertex of `r` where all
/// the words involved act without touching the frontier; other vertices are
/// counted as skipped.
pub fn verify_e_family(r: &ExtRepGraph) -> EFamilyReport {
    let m = WModule(r);
    let mut report = EFamilyReport {
        checked: 0,
        skipped: 0,
        violations: Vec::new(),
    };
    for w in r.graph().vertices() {
        match relations_at(&m, &w) {
            Some(found) => {
                report.checked += 1;
                report
                    .violations
                    .extend(
                        found
                            .into_iter()
                            .map(|(relation, detail)| RelationViolation {
                                point: r.vertex_name(w).to_string(),
                                relation,
                                detail,
                            }),
                    );
            }
            None => report.skipped += 1,
        }
    }
    report
}

/// Violated relations at `x`, or `None` when some word is undefined there.
fn relations_at<M: LetterAction>(m: &M, x: &M::Point) -> Option<Vec<(String, String)>> {
    let amb = m.ambient();
    let g = amb.graph();
    let unit: Vector<M::Point> = ModuleVector::unit(x.clone());
    let mut cache: BTreeMap<Vec<Letter>, Vector<M::Point>> = BTreeMap::new();
    let mut eval = |word: Vec<Letter>| -> Option<Vector<M::Point>> {
        if let Some(v) = cache.get(&word) {
            return Some(v.clone());
        }
        let r = act_word(m, &unit, &word);
        if !r.defined {
            return None;
        }
        cache.insert(word, r.vector.clone());
        Some(r.vector)
    };
    let mut out = Vec::new();
    let name = |w: &[Letter]| amb.format_word(w);
    let mut expect = |label: String, lhs: Vector<M::Point>, rhs: Vector<M::Point>| {
        if lhs != rhs {
            out.push((
                label,
                format!(
                    "{:?} != {:?}",
                    lhs.terms().keys().collect::<Vec<_>>(),
                    rhs.terms().keys().collect::<Vec<_>>()
                ),
            ));
        }
    };
    let vertices: Vec<Letter> = g.vertices().map(Letter::Vertex).collect();
    for &u in &vertices {
        for &v in &vertices {
            let lhs = eval(vec![u, v])?;
            let rhs = if u == v {
                eval(vec![u])?
            } else {
                ModuleVector::zero()
            };
            expect(
                format!("{} = delta {}", name(&[u, v]), name(&[u])),
                lhs,
                rhs,
            );
        }
    }
    for e in g.edges() {
        let (re, gh) = (Letter::Real(e), Letter::Ghost(e));
        let (s, r) = (Letter::Vertex(g.source(e)), Letter::Vertex(g.range(e)));
        let one = eval(vec![re])?;
        expect(
            format!("{} = {}", name(&[s, re]), name(&[re])),
            eval(vec![s, re])?,
            one.clone(),
        );
        expect(
            format!("{} = {}", name(&[re, r]), name(&[re])),
            eval(vec![re, r])?,
            one,
        );
        let one = eval(vec![gh])?;
        expect(
            format!("{} = {}", name(&[r, gh]), name(&[gh])),
            eval(vec![r, gh])?,
            one.clone(),
        );
        expect(
            format!("{} = {}", name(&[gh, s]), name(&[gh])),
            eval(vec![gh, s])?,
            one,
        );
    }
    for e in g.edges() {
        for f in g.edges() {
            let lhs = eval(vec![Letter::Ghost(e), Letter::Real(f)])?;
            let rhs = if e == f {
                eval(vec![Letter::Vertex(g.range(e))])?
            } else {
                ModuleVector::zero()
            };
            expect(
                format!("{} = delta", name(&[Letter::Ghost(e), Letter::Real(f)])),
                lhs,
                rhs,
            );
        }
    }
    for v in g.regular_vertices() {
        let mut sum = ModuleVector::zero();
        for &e in g.out_edges(v) {
            sum.add_scaled(
                &eval(vec![Letter::Real(e), Letter::Ghost(e)])?,
                &crate::field::Rational::from_i64(1),
            );
        }
        expect(
            format!("sum e.e* = {}", g.vertex_name(v)),
            sum,
            eval(vec![Letter::Vertex(v)])?,
        );
    }
    Some(out)
}
