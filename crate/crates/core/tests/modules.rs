use std::collections::BTreeSet;
use std::sync::Arc;

use leavitt::algebra::AlgebraElement;
use leavitt::basis::ClosedBasisPath;
use leavitt::branching::{ErgBuilder, ExtRepGraph};
use leavitt::canonical::{build_f_cyc, build_f_v, Descriptor};
use leavitt::examples;
use leavitt::field::{Fp, Rational};
use leavitt::graph::{Ambient, VertexId};
use leavitt::modules::{
    act_w, hom_dimensions, hom_space, restrict_by_name, satisfies_constraints, submodule_closure,
    verify_e_family, ModuleVector,
};

/// Copy of `r` without the subtree hanging below `cut`.
fn prune(r: &ExtRepGraph, cut: VertexId) -> ExtRepGraph {
    let g = r.graph();
    let mut gone = BTreeSet::from([cut]);
    let mut stack = vec![cut];
    while let Some(w) = stack.pop() {
        for &f in g.out_edges(w) {
            if gone.insert(g.range(f)) {
                stack.push(g.range(f));
            }
        }
    }
    let mut b = ErgBuilder::new();
    for w in g.vertices().filter(|w| !gone.contains(w)) {
        b.add_vertex(r.vertex_name(w), r.label(w));
        if r.is_frontier(w) {
            b.mark_frontier(r.vertex_name(w));
        }
    }
    for f in g.edges().filter(|&f| !gone.contains(&g.range(f))) {
        b.add_edge(
            g.edge_name(f),
            r.vertex_name(g.source(f)),
            r.vertex_name(g.range(f)),
            r.edge_label(f),
        );
    }
    b.build(r.ambient()).unwrap()
}

fn source_picture(amb: &Arc<Ambient>, depth: usize) -> ExtRepGraph {
    let v = amb.graph().vertex_id("v").unwrap();
    build_f_v(amb, v, depth).unwrap().into_erg()
}

#[test]
fn dropping_a_ghost_branch_breaks_a_relation_at_its_root() {
    let amb = examples::r2("d");
    let r = source_picture(&amb, 4);
    assert!(verify_e_family(&r).is_clean());
    let broken = prune(&r, r.vertex_id("w_{d*}").unwrap());
    let rep = verify_e_family(&broken);
    assert!(
        rep.violations.iter().any(|v| v.point == "w_{v}"),
        "{rep:#?}"
    );
}

#[test]
fn one_loop_picture_is_exact_and_clean() {
    let amb = examples::one_loop_ambient();
    let t = build_f_cyc(&amb, &ClosedBasisPath::parse(&amb, "e").unwrap(), 5).unwrap();
    assert!(t.erg().is_exact());
    let rep = verify_e_family(t.erg());
    assert_eq!((rep.checked, rep.skipped), (1, 0));
    assert!(rep.is_clean());
}

#[test]
fn correction_term_on_the_special_loop() {
    let amb = examples::r2("e");
    let t = build_f_cyc(&amb, &ClosedBasisPath::parse(&amb, "e").unwrap(), 3).unwrap();
    let r = t.erg();
    let w1 = ModuleVector::<VertexId, Rational>::unit(r.vertex_id("w_{1}").unwrap());
    let a = AlgebraElement::parse(&amb, "e*", false).unwrap();
    let got = act_w(r, &w1, &a).unwrap();
    assert!(got.defined);
    assert_eq!(
        got.vector.format_with(|w| r.vertex_name(*w).to_string()),
        "-w_{1,d.d*} + w_{1}"
    );
}

#[test]
fn closure_examples_on_the_loop_with_exit() {
    let amb = examples::r2("e");
    let t = build_f_cyc(&amb, &ClosedBasisPath::parse(&amb, "e").unwrap(), 6).unwrap();
    let r = t.erg();
    let exit = submodule_closure(r, &[r.vertex_id("w_{1,d}").unwrap()]);
    assert_eq!(exit.proper, Some(true));
    assert_eq!(exit.witness.as_deref(), Some("w_{1}"));
    let spine = submodule_closure(r, &[r.vertex_id("w_{1}").unwrap()]);
    assert_eq!(spine.proper, Some(false));
    assert_eq!(submodule_closure(r, &[]).proper, Some(true));
}

#[test]
fn linked_loops_have_no_maps_between_their_cycles() {
    let amb = examples::linked_loops_ambient();
    let c = Descriptor::parse(&amb, "cycle:c").unwrap();
    let c2 = Descriptor::parse(&amb, "cycle:c'").unwrap();
    assert_eq!(hom_dimensions(&amb, &c, &c2, &[4, 5]).unwrap(), vec![0, 0]);
    assert_eq!(hom_dimensions(&amb, &c2, &c, &[4, 5]).unwrap(), vec![0, 0]);
    assert_eq!(hom_dimensions(&amb, &c, &c, &[4, 5]).unwrap(), vec![1, 1]);
}

#[test]
fn hom_bases_restrict_across_depths() {
    let amb = examples::r2("e");
    let x = ClosedBasisPath::parse(&amb, "e").unwrap();
    for depth in 3..=5 {
        let big = build_f_cyc(&amb, &x, depth).unwrap();
        let small = build_f_cyc(&amb, &x, depth - 1).unwrap();
        let h = hom_space::<Rational>(big.erg(), big.erg()).unwrap();
        for map in &h.basis {
            let r = restrict_by_name(map, (big.erg(), big.erg()), (small.erg(), small.erg()));
            assert!(satisfies_constraints(small.erg(), small.erg(), &r));
        }
    }
}

#[test]
fn prime_field_agrees_on_dimensions() {
    let amb = examples::r2("e");
    let t = build_f_cyc(&amb, &ClosedBasisPath::parse(&amb, "e").unwrap(), 4).unwrap();
    let q = hom_space::<Rational>(t.erg(), t.erg()).unwrap();
    let p = hom_space::<Fp<101>>(t.erg(), t.erg()).unwrap();
    assert_eq!(q.dimension, p.dimension);
}
