use std::sync::Arc;

use serde::Serialize;

use crate::basis::ClosedBasisPath;
use crate::canonical::{build, build_f_cyc, Coord, Descriptor, TruncatedErg};
use crate::error::{Error, Result};
use crate::field::Rational;
use crate::graph::{Ambient, Letter, VertexId};

use super::actions::{act_word, ModuleVector, WModule};
use super::closure::{submodule_closure, ClosureReport};
use super::hom::hom_space;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchurPreconditions {
    pub real_cycle: bool,
    pub all_special: bool,
    /// Position `i` and an edge `e' != x_i` leaving `s(x_i)`.
    pub exit: Option<(usize, String)>,
    pub applicable: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchurDepthReport {
    pub depth: usize,
    pub vertices: usize,
    pub frontier: usize,
    pub closure: ClosureReport,
    pub end_dimension: usize,
    pub end_is_scalar: bool,
    pub table_compared: usize,
    pub table_mismatches: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchurReport {
    pub cycle: String,
    pub preconditions: SchurPreconditions,
    pub generator: String,
    pub depths: Vec<SchurDepthReport>,
    /// Preconditions hold and every depth shows a proper submodule, a
    /// one-dimensional endomorphism space spanned by the identity and an
    /// action table agreeing with direct evaluation.
    pub passed: bool,
}

/// Shape of `w . x` predicted from the coordinates of `w` alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TableCase {
    /// `w_i . x = w_i` if `i = m`, else 0.
    Spine,
    /// `y = p` real with `r(p) = s(x)`: `w_{i,p x}`.
    Extend,
    /// `y = p q* x_m* .. x_1*`: `w_{i,p q*}`.
    Unwind,
    /// `y = p x_k* .. x_1*` with `k < m` and `p` nonempty: `w_{i,p x_{k+1} .. x_m}`.
    PartialUnwind,
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub vertex: String,
    pub case: TableCase,
    /// `None` when the prediction is 0.
    pub predicted: Option<String>,
    /// `None` when direct evaluation needs vertices beyond the truncation.
    pub actual: Option<String>,
    pub agrees: Option<bool>,
}

fn predict(amb: &Ambient, x: &[Letter], c: &Coord) -> (TableCase, Option<Coord>) {
    let g = amb.graph();
    let m = x.len();
    match c {
        Coord::Spine(i) => (TableCase::Spine, (*i == m).then(|| Coord::Spine(m))),
        Coord::Path(_) => (TableCase::Zero, None),
        Coord::Side(i, y) => {
            let split = y.iter().position(|l| l.is_ghost()).unwrap_or(y.len());
            let (p, ghosts) = y.split_at(split);
            if ghosts.is_empty() {
                let last = *p.last().expect("side words are nonempty");
                if last.range(g) == x[0].source(g) {
                    let mut z = p.to_vec();
                    z.extend_from_slice(x);
                    return (TableCase::Extend, Some(Coord::Side(*i, z)));
                }
                return (TableCase::Zero, None);
            }
            let k = ghosts
                .iter()
                .rev()
                .zip(x)
                .take_while(|(a, b)| **a == b.star())
                .count();
            let rest = [p, &ghosts[..ghosts.len() - k]].concat();
            if k == m {
                let target = if rest.is_empty() {
                    Coord::Spine(*i)
                } else {
                    Coord::Side(*i, rest)
                };
                (TableCase::Unwind, Some(target))
            } else if k == ghosts.len() && !p.is_empty() {
                let mut z = p.to_vec();
                z.extend_from_slice(&x[k..]);
                (TableCase::PartialUnwind, Some(Coord::Side(*i, z)))
            } else {
                (TableCase::Zero, None)
            }
        }
    }
}

/// The image of every vertex of `t` under the word `x`, predicted from
/// coordinates and compared with direct evaluation where that is defined.
/// The prediction assumes every edge of `x` is special.
pub fn spine_action_table(t: &TruncatedErg) -> Result<Vec<TableRow>> {
    let Descriptor::Cycle(x) = t.descriptor() else {
        return Err(Error::InvalidArgument(
            "the action table needs a cycle truncation".into(),
        ));
    };
    let r = t.erg();
    let amb = r.ambient();
    let word = x.letters();
    let module = WModule(r);
    let mut rows = Vec::new();
    for w in r.graph().vertices() {
        let (case, target) = predict(amb, word, t.coord(w));
        let predicted = target.as_ref().map(|c| c.name(amb));
        let result = act_word(&module, &ModuleVector::<VertexId, Rational>::unit(w), word);
        let actual = result
            .defined
            .then(|| result.vector.format_with(|v| r.vertex_name(*v).to_string()));
        let agrees = actual
            .as_ref()
            .map(|a| a == predicted.as_deref().unwrap_or("0"));
        rows.push(TableRow {
            vertex: r.vertex_name(w).to_string(),
            case,
            predicted,
            actual,
            agrees,
        });
    }
    Ok(rows)
}

fn preconditions(amb: &Ambient, x: &ClosedBasisPath) -> SchurPreconditions {
    let g = amb.graph();
    let letters = x.letters();
    let all_special = letters
        .iter()
        .all(|l| l.edge().is_some_and(|e| amb.is_special(e)));
    let exit = letters.iter().enumerate().find_map(|(i, &l)| {
        let e = l.edge()?;
        g.out_edges(g.source(e))
            .iter()
            .find(|&&d| d != e)
            .map(|&d| (i + 1, g.edge_name(d).to_string()))
    });
    let mut notes = Vec::new();
    if !all_special {
        notes.push("some edge of the cycle is not special".to_string());
    }
    if exit.is_none() {
        notes.push("no exit".to_string());
    }
    SchurPreconditions {
        real_cycle: true,
        all_special,
        applicable: all_special && exit.is_some(),
        exit,
        notes,
    }
}

/// Nonsimplicity and endomorphism checks for the cycle module of `x` at each
/// depth. The closure generator is the first vertex of the exit branch, or
/// `w_m` when there is no exit.
pub fn check_schur(
    amb: &Arc<Ambient>,
    x: &ClosedBasisPath,
    depths: &[usize],
) -> Result<SchurReport> {
    if !x.is_real() {
        return Err(Error::InvalidArgument(format!(
            "{} is not a real cycle",
            amb.format_path(x.path())
        )));
    }
    let pre = preconditions(amb, x);
    let m = x.len();
    let generator = match &pre.exit {
        Some((i, e)) => {
            let at = if *i == 1 { m } else { i - 1 };
            let e = Letter::Real(amb.graph().edge_id(e).expect("exit edge exists"));
            Coord::Side(at, vec![e])
        }
        None => Coord::Spine(m),
    };
    let mut reports = Vec::new();
    for &depth in depths {
        let t = build_f_cyc(amb, x, depth)?;
        let r = t.erg();
        let gens: Vec<VertexId> = t.vertex_at(&generator).into_iter().collect();
        let closure = submodule_closure(r, &gens);
        let end = hom_space::<Rational>(r, r)?;
        let (table_compared, table_mismatches) = if pre.all_special {
            let rows = spine_action_table(&t)?;
            let compared = rows.iter().filter(|row| row.agrees.is_some()).count();
            let bad = rows
                .iter()
                .filter(|row| row.agrees == Some(false))
                .map(|row| {
                    format!(
                        "{}: predicted {}, got {}",
                        row.vertex,
                        row.predicted.as_deref().unwrap_or("0"),
                        row.actual.as_deref().unwrap_or("?")
                    )
                })
                .collect();
            (compared, bad)
        } else {
            (0, Vec::new())
        };
        reports.push(SchurDepthReport {
            depth,
            vertices: r.vertex_count(),
            frontier: r.frontier().len(),
            closure,
            end_dimension: end.dimension,
            end_is_scalar: end.is_scalar_identity(r),
            table_compared,
            table_mismatches,
        });
    }
    let passed = pre.applicable
        && reports.iter().all(|d| {
            d.closure.proper == Some(true) && d.end_is_scalar && d.table_mismatches.is_empty()
        });
    Ok(SchurReport {
        cycle: amb.format_path(x.path()),
        generator: generator.name(amb),
        preconditions: pre,
        depths: reports,
        passed,
    })
}

/// `dim Hom(W(F_a), W(F_b))` at each depth.
pub fn hom_dimensions(
    amb: &Arc<Ambient>,
    a: &Descriptor,
    b: &Descriptor,
    depths: &[usize],
) -> Result<Vec<usize>> {
    depths
        .iter()
        .map(|&d| {
            let ta = build(amb, a, d)?;
            let tb = build(amb, b, d)?;
            Ok(hom_space::<Rational>(ta.erg(), tb.erg())?.dimension)
        })
        .collect()
}
