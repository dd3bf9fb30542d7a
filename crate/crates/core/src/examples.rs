//! Small named graphs used throughout the tests, the docs and the CLI.

use std::sync::Arc;

use crate::graph::{Ambient, Graph};

/// One vertex `v` with two loops `d` and `e`.
pub fn two_loops() -> Graph {
    Graph::new(["v"], [("d", "v", "v"), ("e", "v", "v")]).expect("valid graph")
}

/// One vertex `v` and no edges.
pub fn single_vertex() -> Graph {
    Graph::new(["v"], Vec::<(&str, &str, &str)>::new()).expect("valid graph")
}

/// Loops `d`, `e` at `u` and an edge `f: u -> v` into the sink `v`.
pub fn loops_and_exit() -> Graph {
    Graph::new(
        ["u", "v"],
        [("d", "u", "u"), ("e", "u", "u"), ("f", "u", "v")],
    )
    .expect("valid graph")
}

/// One vertex `v` with a single loop `e`.
pub fn one_loop() -> Graph {
    Graph::new(["v"], [("e", "v", "v")]).expect("valid graph")
}

/// `g: a -> b`, `h: b -> a`.
pub fn two_cycle() -> Graph {
    Graph::new(["a", "b"], [("g", "a", "b"), ("h", "b", "a")]).expect("valid graph")
}

/// `f: u -> v` and `g: u -> w` into two sinks.
pub fn fork() -> Graph {
    Graph::new(["u", "v", "w"], [("f", "u", "v"), ("g", "u", "w")]).expect("valid graph")
}

/// A single edge `f: u -> v`.
pub fn single_edge() -> Graph {
    Graph::new(["u", "v"], [("f", "u", "v")]).expect("valid graph")
}

/// Loop `c` at `u`, loop `c'` at `v`, joined by `f: u -> v`. The two loops
/// share no vertex and `c` has the exit `f`.
pub fn linked_loops() -> Graph {
    Graph::new(
        ["u", "v"],
        [("c", "u", "u"), ("c'", "v", "v"), ("f", "u", "v")],
    )
    .expect("valid graph")
}

/// Loops `c` at `u` and `c'` at `v` with no edge between them.
pub fn disjoint_loops() -> Graph {
    Graph::new(["u", "v"], [("c", "u", "u"), ("c'", "v", "v")]).expect("valid graph")
}

fn ambient(g: Graph, special: &[&str]) -> Arc<Ambient> {
    Arc::new(Ambient::with_special(g, special).expect("valid special choice"))
}

/// [`two_loops`] with the given loop special.
pub fn r2(special: &str) -> Arc<Ambient> {
    ambient(two_loops(), &[special])
}

/// [`loops_and_exit`] with the given loop at `u` special.
pub fn exit_graph(special: &str) -> Arc<Ambient> {
    ambient(loops_and_exit(), &[special])
}

pub fn one_loop_ambient() -> Arc<Ambient> {
    ambient(one_loop(), &[])
}

pub fn single_vertex_ambient() -> Arc<Ambient> {
    ambient(single_vertex(), &[])
}

/// [`linked_loops`] with `c` special at `u`.
pub fn linked_loops_ambient() -> Arc<Ambient> {
    ambient(linked_loops(), &["c"])
}

pub fn disjoint_loops_ambient() -> Arc<Ambient> {
    ambient(disjoint_loops(), &[])
}

/// Ambient for a graph with default special edges.
pub fn with_defaults(g: Graph) -> Arc<Ambient> {
    ambient(g, &[])
}
