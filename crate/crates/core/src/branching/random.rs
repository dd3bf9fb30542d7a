//! Random finite extended branching systems, by rejection sampling.
//!
//! Finite systems are rare: on a graph with a vertex emitting two loops the
//! cardinality constraints force every part to be empty. The pool below
//! lists graphs where nonempty finite systems exist.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use super::system::{validate_eabs, ExtBranchingSystem};
use crate::examples;
use crate::graph::{Ambient, Letter};

/// Graphs that admit nonempty finite systems, with both special choices on
/// the fork.
pub fn graph_pool() -> Vec<Arc<Ambient>> {
    vec![
        examples::one_loop_ambient(),
        examples::with_defaults(examples::two_cycle()),
        examples::with_defaults(examples::single_edge()),
        Arc::new(Ambient::with_special(examples::fork(), &["f"]).expect("valid")),
        Arc::new(Ambient::with_special(examples::fork(), &["g"]).expect("valid")),
        examples::single_vertex_ambient(),
    ]
}

/// One sampling attempt: random vertex and part for each of `points`
/// points, accepted when every `rho_j` domain has the size of `Y_j`, then
/// completed with random bijections.
pub fn try_random_system<R: Rng>(
    amb: &Arc<Ambient>,
    points: usize,
    rng: &mut R,
) -> Option<ExtBranchingSystem> {
    let g = amb.graph();
    let vertices: Vec<_> = g.vertices().collect();
    let mut s = ExtBranchingSystem::new(amb);
    for i in 0..points {
        let v = *vertices.choose(rng)?;
        let mut options: Vec<Option<Letter>> = vec![None];
        options.extend(g.in_edges(v).iter().map(|&e| Some(Letter::Real(e))));
        options.extend(g.out_edges(v).iter().map(|&e| Some(Letter::Ghost(e))));
        let part = *options.choose(rng)?;
        s.add_point(&format!("p{i}"), v, part).ok()?;
    }
    let mut plan = BTreeMap::new();
    for j in amb.edge_letters() {
        let domain: Vec<String> = s.required_domain(j).into_iter().collect();
        let mut codomain: Vec<String> = s.letter_set(j).into_iter().collect();
        if domain.len() != codomain.len() {
            return None;
        }
        codomain.shuffle(rng);
        plan.insert(j, domain.into_iter().zip(codomain).collect::<Vec<_>>());
    }
    for (j, pairs) in plan {
        for (from, to) in pairs {
            s.set_rho(j, &from, &to).ok()?;
        }
    }
    debug_assert!(validate_eabs(&s).is_valid());
    Some(s)
}

/// Repeats [`try_random_system`] up to `attempts` times, drawing the number
/// of points uniformly from `1..=max_points` each time.
pub fn random_system<R: Rng>(
    amb: &Arc<Ambient>,
    max_points: usize,
    attempts: usize,
    rng: &mut R,
) -> Option<ExtBranchingSystem> {
    (0..attempts).find_map(|_| {
        let n = rng.gen_range(1..=max_points.max(1));
        try_random_system(amb, n, rng)
    })
}
