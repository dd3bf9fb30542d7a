use std::collections::BTreeSet;

use super::erg::{validate_erg, ErgBuilder, ExtRepGraph};
use super::system::{validate_eabs, ExtBranchingSystem};
use super::BranchingSystem;
use crate::error::{Error, Result};

/// The representation graph of a finite system: one vertex per point, and
/// an edge `f_{x}` from `rho_j^{-1}(x)` to `x` for each `x` in some `Y_j`.
pub fn eta(s: &ExtBranchingSystem) -> Result<ExtRepGraph> {
    let report = validate_eabs(s);
    if !report.is_valid() {
        return Err(Error::InvalidBranchingSystem(report.violations.join("; ")));
    }
    let mut b = ErgBuilder::new();
    for x in s.points() {
        b.add_vertex(x, s.vertex_of(&x.to_string()));
    }
    for x in s.points() {
        let x = x.to_string();
        if let Some(j) = s.letter_part(&x) {
            let from = s.rho_inv(j, &x).expect("rho_j maps onto Y_j");
            b.add_edge(format!("f_{{{x}}}"), &from, &x, j);
        }
    }
    b.build(s.ambient_arc())
}

/// The branching system of an exact representation graph: points are
/// vertices, `Y_j` collects the targets of `j`-labelled edges and `rho_j`
/// follows them.
pub fn theta(r: &ExtRepGraph) -> Result<ExtBranchingSystem> {
    if !r.is_exact() {
        return Err(Error::Truncated);
    }
    let report = validate_erg(r);
    if !report.is_valid() {
        let msgs: BTreeSet<String> = report
            .violations
            .iter()
            .map(|v| format!("{}: {}", v.item, v.detail))
            .collect();
        return Err(Error::InvalidRepGraph(
            msgs.into_iter().collect::<Vec<_>>().join("; "),
        ));
    }
    let f = r.graph();
    let mut s = ExtBranchingSystem::new(r.ambient());
    for w in f.vertices() {
        s.add_point(f.vertex_name(w), r.label(w), r.incoming_label(w))?;
    }
    for e in f.edges() {
        s.set_rho(
            r.edge_label(e),
            f.vertex_name(f.source(e)),
            f.vertex_name(f.range(e)),
        )?;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branching::find_isomorphism;
    use crate::examples;
    use crate::graph::Letter;

    #[test]
    fn round_trip_on_ghost_triangle() {
        let amb = examples::one_loop_ambient();
        let g = amb.graph();
        let v = g.vertex_id("v").unwrap();
        let es = Letter::Ghost(g.edge_id("e").unwrap());
        let mut s = ExtBranchingSystem::new(&amb);
        for p in ["a", "b", "c"] {
            s.add_point(p, v, Some(es)).unwrap();
        }
        s.set_rho(es, "a", "b").unwrap();
        s.set_rho(es, "b", "c").unwrap();
        s.set_rho(es, "c", "a").unwrap();
        let r = eta(&s).unwrap();
        assert!(validate_erg(&r).is_valid());
        assert_eq!(r.graph().edge_count(), 3);
        assert_eq!(theta(&r).unwrap(), s);
        let again = eta(&theta(&r).unwrap()).unwrap();
        assert!(find_isomorphism(&r, &again).is_some());
    }

    #[test]
    fn theta_refuses_truncations() {
        let amb = examples::r2("d");
        let mut b = ErgBuilder::new();
        b.add_vertex("w", amb.graph().vertex_id("v").unwrap());
        b.mark_frontier("w");
        assert_eq!(theta(&b.build(&amb).unwrap()), Err(Error::Truncated));
    }
}
