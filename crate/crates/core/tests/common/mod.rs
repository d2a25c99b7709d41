//! Oracles shared by the integration tests and the acceptance suite.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::VecDeque;

use rand::Rng;
use spreadembed::graph::Graph;
use spreadembed::hetero::{self, MappingMatrices};
use spreadembed::homo;
use spreadembed::sampling::SampleSet;
use spreadembed::search::ActivationOrder;
use spreadembed::{EmbeddingTable, NodeId};

/// Random simple graph on `n` nodes with each pair present with
/// probability `p`, via plain pair enumeration.
pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Assigns each node one of `types` types uniformly at random.
pub fn with_random_types<R: Rng>(g: Graph, types: usize, rng: &mut R) -> Graph {
    let assignment: Vec<u32> = (0..g.node_count()).map(|_| rng.random_range(0..types as u32)).collect();
    let names = (0..types).map(|t| format!("t{t}")).collect();
    g.with_node_types(assignment, names)
}

/// Unweighted shortest-path distances from `source`; `usize::MAX` when
/// unreachable.
pub fn bfs_distances(g: &Graph, source: NodeId) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.node_count()];
    dist[source.index()] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        for &u in g.neighbors(v) {
            if dist[u.index()] == usize::MAX {
                dist[u.index()] = dist[v.index()] + 1;
                queue.push_back(u);
            }
        }
    }
    dist
}

/// Boolean reachability matrix via Warshall's transitive closure.
pub fn reachability(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.node_count();
    let mut r = vec![vec![false; n]; n];
    for v in g.nodes() {
        r[v.index()][v.index()] = true;
        for &u in g.neighbors(v) {
            r[v.index()][u.index()] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}

/// Checks an activation order against a BFS oracle. Returns a description
/// of the first violation.
pub fn check_activation_order(g: &Graph, order: &ActivationOrder) -> Result<(), String> {
    let n = g.node_count();
    let seq = order.sequence();
    let mut position = vec![usize::MAX; n];
    for (i, v) in seq.iter().enumerate() {
        if position[v.index()] != usize::MAX {
            return Err(format!("node {v} appears twice"));
        }
        position[v.index()] = i;
    }
    if seq.len() != n {
        return Err(format!("sequence has {} of {n} nodes", seq.len()));
    }
    let reach = reachability(g);
    let components = (0..n).filter(|&i| (0..i).all(|j| !reach[i][j])).count();
    if order.seeds().len() != components {
        return Err(format!("{} seeds for {components} components", order.seeds().len()));
    }
    if order.enqueue_count() > 2 * g.edge_count() + components {
        return Err(format!(
            "enqueued {} > 2|E| + C = {}",
            order.enqueue_count(),
            2 * g.edge_count() + components
        ));
    }

    let mut frontier_of = vec![0; n];
    for (f, nodes) in order.frontiers().enumerate() {
        if nodes.is_empty() {
            return Err(format!("frontier {f} is empty"));
        }
        for v in nodes {
            frontier_of[v.index()] = f;
        }
    }

    let mut seed_frontier = 0;
    let mut current_seed = None;
    let mut dist = Vec::new();
    for (i, &v) in seq.iter().enumerate() {
        if order.seeds().contains(&v) {
            if current_seed.is_some_and(|s: NodeId| reach[s.index()][v.index()]) {
                return Err(format!("seed {v} restarts an already visited component"));
            }
            if i > 0 && frontier_of[v.index()] == frontier_of[seq[i - 1].index()] {
                return Err(format!("seed {v} shares a frontier with its predecessor"));
            }
            current_seed = Some(v);
            seed_frontier = frontier_of[v.index()];
            dist = bfs_distances(g, v);
            continue;
        }
        let Some(s) = current_seed else {
            return Err("sequence does not start with a seed".into());
        };
        if !reach[s.index()][v.index()] {
            return Err(format!("node {v} visited in the component of seed {s}"));
        }
        if !g.neighbors(v).iter().any(|u| position[u.index()] < i) {
            return Err(format!("node {v} has no earlier neighbor"));
        }
        if frontier_of[v.index()] - seed_frontier != dist[v.index()] {
            return Err(format!(
                "node {v} in frontier {} but at BFS distance {} from seed {s}",
                frontier_of[v.index()] - seed_frontier,
                dist[v.index()]
            ));
        }
    }
    Ok(())
}

/// Per-coordinate relative error with a floor on the denominator.
pub fn relative_error(analytic: f64, numeric: f64) -> f64 {
    (analytic - numeric).abs() / analytic.abs().max(numeric.abs()).max(1e-3)
}

pub const FD_STEP: f64 = 1e-6;

fn central<F: FnMut(f64) -> f64>(x0: f64, mut f: F) -> f64 {
    (f(x0 + FD_STEP) - f(x0 - FD_STEP)) / (2.0 * FD_STEP)
}

/// Largest relative error between the analytic homogeneous gradient and
/// central differences of the sampled log-likelihood.
pub fn homo_gradient_error(g: &Graph, emb: &EmbeddingTable, samples: &[SampleSet]) -> f64 {
    let grad = homo::log_likelihood_gradient(emb, samples);
    let mut probe = emb.clone();
    let mut worst: f64 = 0.0;
    for i in 0..emb.as_slice().len() {
        let x0 = emb.as_slice()[i];
        let numeric = central(x0, |x| {
            probe.as_mut_slice()[i] = x;
            homo::log_likelihood(g, &probe, samples)
        });
        probe.as_mut_slice()[i] = x0;
        worst = worst.max(relative_error(grad.as_slice()[i], numeric));
    }
    worst
}

/// Largest relative errors for the heterogeneous embedding and matrix
/// gradients.
pub fn hetero_gradient_error(
    g: &Graph,
    emb: &EmbeddingTable,
    maps: &MappingMatrices,
    samples: &[SampleSet],
) -> (f64, f64) {
    let (grad_emb, grad_maps) = hetero::log_likelihood_gradient(g, emb, maps, samples);
    let mut probe = emb.clone();
    let mut worst_emb: f64 = 0.0;
    for i in 0..emb.as_slice().len() {
        let x0 = emb.as_slice()[i];
        let numeric = central(x0, |x| {
            probe.as_mut_slice()[i] = x;
            hetero::log_likelihood(g, &probe, maps, samples)
        });
        probe.as_mut_slice()[i] = x0;
        worst_emb = worst_emb.max(relative_error(grad_emb.as_slice()[i], numeric));
    }
    let mut probe = maps.clone();
    let mut worst_maps: f64 = 0.0;
    let d = maps.dimension();
    for t in 0..maps.type_count() {
        for i in 0..d * d {
            let x0 = maps.matrix(t)[i];
            let numeric = central(x0, |x| {
                probe.matrix_mut(t)[i] = x;
                hetero::log_likelihood(g, emb, &probe, samples)
            });
            probe.matrix_mut(t)[i] = x0;
            worst_maps = worst_maps.max(relative_error(grad_maps.matrix(t)[i], numeric));
        }
    }
    (worst_emb, worst_maps)
}

/// Uniform table in `[-scale, scale)`.
pub fn random_table<R: Rng>(n: usize, d: usize, scale: f64, rng: &mut R) -> EmbeddingTable {
    let rows = (0..n)
        .map(|_| (0..d).map(|_| rng.random_range(-scale..scale)).collect())
        .collect();
    EmbeddingTable::from_rows(rows)
}

/// Identity plus a uniform perturbation in `[-scale, scale)`.
pub fn perturbed_identity<R: Rng>(types: usize, d: usize, scale: f64, rng: &mut R) -> MappingMatrices {
    let mats = (0..types)
        .map(|_| {
            (0..d * d)
                .map(|i| if i % (d + 1) == 0 { 1.0 } else { 0.0 } + rng.random_range(-scale..scale))
                .collect()
        })
        .collect();
    MappingMatrices::from_matrices(mats, d)
}
