use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;

use super::BranchingSystem;
use crate::basis::can_follow;
use crate::error::{Error, Result};
use crate::graph::{Ambient, Letter, Path, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
struct PointInfo {
    vertex: VertexId,
    part: Option<Letter>,
}

/// A finite extended branching system with named points.
///
/// Every point lies in exactly one `X_v` and in at most one `Y_i`, so the
/// partition conditions hold by construction; [`validate_eabs`] checks the
/// containments and the bijections.
#[derive(Clone, Debug)]
pub struct ExtBranchingSystem {
    ambient: Arc<Ambient>,
    points: BTreeMap<String, PointInfo>,
    rho: BTreeMap<Letter, BTreeMap<String, String>>,
}

impl PartialEq for ExtBranchingSystem {
    fn eq(&self, other: &Self) -> bool {
        *self.ambient == *other.ambient && self.points == other.points && self.rho == other.rho
    }
}

impl Eq for ExtBranchingSystem {}

impl ExtBranchingSystem {
    pub fn new(ambient: &Arc<Ambient>) -> Self {
        ExtBranchingSystem {
            ambient: Arc::clone(ambient),
            points: BTreeMap::new(),
            rho: BTreeMap::new(),
        }
    }

    pub fn add_point(&mut self, name: &str, vertex: VertexId, part: Option<Letter>) -> Result<()> {
        if let Some(l) = part {
            if !l.is_edge() {
                return Err(Error::InvalidBranchingSystem(format!(
                    "`{name}` lies in a vertex part `Y`"
                )));
            }
        }
        if self
            .points
            .insert(name.to_string(), PointInfo { vertex, part })
            .is_some()
        {
            return Err(Error::InvalidBranchingSystem(format!(
                "duplicate point `{name}`"
            )));
        }
        Ok(())
    }

    /// Records `rho_j(from) = to`.
    pub fn set_rho(&mut self, j: Letter, from: &str, to: &str) -> Result<()> {
        for p in [from, to] {
            if !self.points.contains_key(p) {
                return Err(Error::InvalidBranchingSystem(format!(
                    "unknown point `{p}`"
                )));
            }
        }
        if !j.is_edge() {
            return Err(Error::InvalidBranchingSystem(
                "maps are indexed by edge letters".into(),
            ));
        }
        self.rho
            .entry(j)
            .or_default()
            .insert(from.to_string(), to.to_string());
        Ok(())
    }

    pub fn ambient_arc(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    pub fn points(&self) -> impl Iterator<Item = &str> {
        self.points.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: &str) -> bool {
        self.points.contains_key(x)
    }

    /// `X_v`.
    pub fn vertex_part(&self, v: VertexId) -> BTreeSet<String> {
        self.points
            .iter()
            .filter(|(_, i)| i.vertex == v)
            .map(|(n, _)| n.clone())
            .collect()
    }

    /// `Y_j`.
    pub fn letter_set(&self, j: Letter) -> BTreeSet<String> {
        self.points
            .iter()
            .filter(|(_, i)| i.part == Some(j))
            .map(|(n, _)| n.clone())
            .collect()
    }

    /// The explicit map `rho_j`.
    pub fn rho_map(&self, j: Letter) -> BTreeMap<String, String> {
        self.rho.get(&j).cloned().unwrap_or_default()
    }

    /// The domain `rho_j` must have.
    pub fn required_domain(&self, j: Letter) -> BTreeSet<String> {
        let amb = &self.ambient;
        let g = amb.graph();
        match j {
            Letter::Real(e) => self
                .points
                .iter()
                .filter(|(_, i)| i.vertex == g.source(e) && !i.part.is_some_and(Letter::is_ghost))
                .map(|(n, _)| n.clone())
                .collect(),
            Letter::Ghost(e) => self
                .points
                .iter()
                .filter(|(_, i)| {
                    i.vertex == g.range(e)
                        && !(amb.is_special(e) && i.part == Some(Letter::Real(e)))
                })
                .map(|(n, _)| n.clone())
                .collect(),
            Letter::Vertex(_) => BTreeSet::new(),
        }
    }
}

impl BranchingSystem for ExtBranchingSystem {
    type Point = String;

    fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    fn contains(&self, x: &String) -> bool {
        self.points.contains_key(x)
    }

    fn vertex_of(&self, x: &String) -> VertexId {
        self.points[x].vertex
    }

    fn letter_part(&self, x: &String) -> Option<Letter> {
        self.points[x].part
    }

    fn rho(&self, j: Letter, x: &String) -> Option<String> {
        self.rho.get(&j)?.get(x).cloned()
    }

    fn rho_inv(&self, j: Letter, x: &String) -> Option<String> {
        self.rho
            .get(&j)?
            .iter()
            .find(|(_, to)| *to == x)
            .map(|(from, _)| from.clone())
    }
}

/// Clause-by-clause validation result; empty `violations` means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EabsReport {
    pub points: usize,
    pub violations: Vec<String>,
}

impl EabsReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_eabs(s: &ExtBranchingSystem) -> EabsReport {
    let amb = &s.ambient;
    let g = amb.graph();
    let mut violations = Vec::new();
    for (name, info) in &s.points {
        let expected = match info.part {
            Some(Letter::Real(e)) => Some(g.range(e)),
            Some(Letter::Ghost(e)) => Some(g.source(e)),
            _ => None,
        };
        if let (Some(l), Some(v)) = (info.part, expected) {
            if v != info.vertex {
                violations.push(format!(
                    "`{name}` lies in Y_{} but in X_{} rather than X_{}",
                    amb.letter_name(l),
                    g.vertex_name(info.vertex),
                    g.vertex_name(v)
                ));
            }
        }
    }
    for j in amb.edge_letters() {
        let jn = amb.letter_name(j);
        let domain = s.required_domain(j);
        let codomain = s.letter_set(j);
        let map = s.rho_map(j);
        let keys: BTreeSet<String> = map.keys().cloned().collect();
        if keys != domain {
            violations.push(format!(
                "rho_{jn} is defined on {{{}}} but must be defined on {{{}}}",
                join(&keys),
                join(&domain)
            ));
        }
        let image: BTreeSet<String> = map.values().cloned().collect();
        if image.len() != map.len() {
            violations.push(format!("rho_{jn} is not injective"));
        }
        if image != codomain {
            violations.push(format!(
                "rho_{jn} has image {{{}}} but must map onto Y_{jn} = {{{}}}",
                join(&image),
                join(&codomain)
            ));
        }
    }
    for j in s.rho.keys() {
        if !amb.edge_letters().contains(j) {
            violations.push(format!("map indexed by foreign letter {j:?}"));
        }
    }
    EabsReport {
        points: s.points.len(),
        violations,
    }
}

fn join(set: &BTreeSet<String>) -> String {
    set.iter().cloned().collect::<Vec<_>>().join(", ")
}

/// A finite (non-extended) branching system: parts `X_v`, `Y_{e*}` and
/// bijections `rho_{e*}: X_{r(e)} -> Y_{e*}`, with `X_v` the union of the
/// `Y_{e*}`, `e` in `s^{-1}(v)`, at every regular vertex.
#[derive(Clone, Debug)]
pub struct UsualBranchingSystem {
    ambient: Arc<Ambient>,
    points: BTreeMap<String, PointInfo>,
    rho: BTreeMap<Letter, BTreeMap<String, String>>,
}

impl UsualBranchingSystem {
    pub fn new(ambient: &Arc<Ambient>) -> Self {
        UsualBranchingSystem {
            ambient: Arc::clone(ambient),
            points: BTreeMap::new(),
            rho: BTreeMap::new(),
        }
    }

    /// Adds a point of `X_v`, lying in `Y_{ghost}` when given.
    pub fn add_point(&mut self, name: &str, vertex: VertexId, ghost: Option<Letter>) -> Result<()> {
        if ghost.is_some_and(|l| !l.is_ghost()) {
            return Err(Error::InvalidBranchingSystem(format!(
                "`{name}`: parts are indexed by ghost letters"
            )));
        }
        if self
            .points
            .insert(
                name.to_string(),
                PointInfo {
                    vertex,
                    part: ghost,
                },
            )
            .is_some()
        {
            return Err(Error::InvalidBranchingSystem(format!(
                "duplicate point `{name}`"
            )));
        }
        Ok(())
    }

    pub fn set_rho(&mut self, j: Letter, from: &str, to: &str) -> Result<()> {
        if !j.is_ghost() {
            return Err(Error::InvalidBranchingSystem(
                "maps are indexed by ghost letters".into(),
            ));
        }
        for p in [from, to] {
            if !self.points.contains_key(p) {
                return Err(Error::InvalidBranchingSystem(format!(
                    "unknown point `{p}`"
                )));
            }
        }
        self.rho
            .entry(j)
            .or_default()
            .insert(from.to_string(), to.to_string());
        Ok(())
    }

    pub fn validate(&self) -> EabsReport {
        let amb = &self.ambient;
        let g = amb.graph();
        let mut violations = Vec::new();
        for (name, info) in &self.points {
            match info.part {
                Some(Letter::Ghost(e)) if g.source(e) != info.vertex => violations.push(format!(
                    "`{name}` lies in Y_{}* but not in X_{}",
                    g.edge_name(e),
                    g.vertex_name(g.source(e))
                )),
                None if g.is_regular(info.vertex) => violations.push(format!(
                    "`{name}` lies in X_{} but in no Y_{{e*}}",
                    g.vertex_name(info.vertex)
                )),
                _ => {}
            }
        }
        for e in g.edges() {
            let j = Letter::Ghost(e);
            let domain: BTreeSet<&String> = self
                .points
                .iter()
                .filter(|(_, i)| i.vertex == g.range(e))
                .map(|(n, _)| n)
                .collect();
            let codomain: BTreeSet<&String> = self
                .points
                .iter()
                .filter(|(_, i)| i.part == Some(j))
                .map(|(n, _)| n)
                .collect();
            let map = self.rho.get(&j).cloned().unwrap_or_default();
            let keys: BTreeSet<&String> = map.keys().collect();
            let image: BTreeSet<&String> = map.values().collect();
            if keys != domain || image != codomain || image.len() != map.len() {
                violations.push(format!(
                    "rho_{}* is not a bijection X_{} -> Y_{}*",
                    g.edge_name(e),
                    g.vertex_name(g.range(e)),
                    g.edge_name(e)
                ));
            }
        }
        EabsReport {
            points: self.points.len(),
            violations,
        }
    }
}

/// The extended system with `Y_e` empty and `rho_e` the empty map for every edge.
pub fn embed_usual(s: &UsualBranchingSystem) -> Result<ExtBranchingSystem> {
    let report = s.validate();
    if !report.is_valid() {
        return Err(Error::InvalidBranchingSystem(report.violations.join("; ")));
    }
    Ok(ExtBranchingSystem {
        ambient: Arc::clone(&s.ambient),
        points: s.points.clone(),
        rho: s.rho.clone(),
    })
}

/// The right regular representation seen as a branching system: points are
/// basis paths, `X_v` are those ending at `v`, `Y_i` those ending in the
/// letter `i`, and `rho_j` appends `j`. The system is infinite; points are
/// produced on demand.
#[derive(Clone, Debug)]
pub struct RegularSystem {
    ambient: Arc<Ambient>,
}

impl RegularSystem {
    pub fn new(ambient: &Arc<Ambient>) -> Self {
        RegularSystem {
            ambient: Arc::clone(ambient),
        }
    }
}

impl BranchingSystem for RegularSystem {
    type Point = Path;

    fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    fn contains(&self, x: &Path) -> bool {
        crate::basis::is_basis_path(&self.ambient, x)
    }

    fn vertex_of(&self, x: &Path) -> VertexId {
        x.range()
    }

    fn letter_part(&self, x: &Path) -> Option<Letter> {
        x.last_letter()
    }

    fn rho(&self, j: Letter, x: &Path) -> Option<Path> {
        let g = self.ambient.graph();
        if j.source(g) != x.range() {
            return None;
        }
        match x.last_letter() {
            Some(last) if !can_follow(&self.ambient, last, j) => None,
            _ => Some(x.push(g, j)),
        }
    }

    fn rho_inv(&self, j: Letter, x: &Path) -> Option<Path> {
        (x.last_letter() == Some(j))
            .then(|| x.pop(self.ambient.graph()))
            .flatten()
    }
}
