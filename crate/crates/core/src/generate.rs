//! Synthetic graphs: stochastic block models, uniform random graphs and
//! small hand-built fixtures.

use std::collections::HashSet;

use rand::Rng;

use crate::graph::{load_edge_list, load_typed_edge_list, Graph};

/// Stochastic block model: nodes `0..sum(sizes)` partitioned into blocks
/// in order; each pair is connected independently with `p_in` inside a
/// block and `p_out` across blocks. Returns the graph and block per node.
pub fn stochastic_block_model<R: Rng + ?Sized>(
    sizes: &[usize],
    p_in: f64,
    p_out: f64,
    rng: &mut R,
) -> (Graph, Vec<usize>) {
    let blocks: Vec<usize> = sizes
        .iter()
        .enumerate()
        .flat_map(|(b, &n)| std::iter::repeat_n(b, n))
        .collect();
    let n = blocks.len();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let p = if blocks[u] == blocks[v] { p_in } else { p_out };
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    (Graph::from_edges(n, &edges).expect("ids in range"), blocks)
}

/// Uniform random simple graph with exactly `m` edges on `n` nodes.
pub fn gnm<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Graph {
    assert!(m <= n * n.saturating_sub(1) / 2, "too many edges");
    let mut seen = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v && seen.insert((u.min(v), u.max(v))) {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).expect("ids in range")
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    stochastic_block_model(&[n], p, 0.0, rng).0
}

/// Eight-node connected network; `e` and `f` share the neighbor set
/// `{d, g}`.
pub const TOY_CONNECTED: &str = "\
a b
a c
b c
c d
d e
d f
e g
f g
g h
";

/// Three connected components: a triangle, a 4-cycle and a 3-leaf star.
pub const TOY_COMPONENTS: &str = "\
a b
b c
c a
d e
e f
f g
g d
h i
h j
h k
";

/// Author–paper bipartite network.
pub const TOY_BIPARTITE_EDGES: &str = "\
a1 p1
a1 p2
a2 p2
a2 p3
a3 p3
a3 p1
";

pub const TOY_BIPARTITE_TYPES: &str = "\
a1 author
a2 author
a3 author
p1 paper
p2 paper
p3 paper
";

pub fn toy_connected() -> Graph {
    load_edge_list(TOY_CONNECTED.as_bytes()).expect("valid fixture")
}

pub fn toy_components() -> Graph {
    load_edge_list(TOY_COMPONENTS.as_bytes()).expect("valid fixture")
}

pub fn toy_bipartite() -> Graph {
    load_typed_edge_list(TOY_BIPARTITE_EDGES.as_bytes(), TOY_BIPARTITE_TYPES.as_bytes()).expect("valid fixture")
}
