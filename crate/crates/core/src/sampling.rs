//! Positive/negative training sets per center node.

use std::collections::HashSet;

use rand::seq::index;
use rand::Rng;

use crate::graph::{Graph, NodeId};
use crate::search::ActivationOrder;

/// Training samples for one center node: all of its neighbors (indicator 1)
/// and `k` non-neighbors per neighbor (indicator 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSet {
    pub center: NodeId,
    pub positives: Vec<NodeId>,
    pub negatives: Vec<NodeId>,
    /// Set when fewer than `k * degree` non-neighbors were available.
    pub truncated: bool,
}

impl SampleSet {
    pub fn len(&self) -> usize {
        self.positives.len() + self.negatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All samples with their adjacency indicator, positives first.
    pub fn labeled(&self) -> impl Iterator<Item = (NodeId, bool)> + '_ {
        self.positives
            .iter()
            .map(|&x| (x, true))
            .chain(self.negatives.iter().map(|&x| (x, false)))
    }
}

/// Draws the sample set of `y`. Negatives are uniform without replacement
/// over every node that is neither `y` nor adjacent to it, across all
/// components.
pub fn draw_samples<R: Rng + ?Sized>(g: &Graph, y: NodeId, k: usize, rng: &mut R) -> SampleSet {
    assert!(k >= 1, "negative coefficient must be positive");
    let positives = g.neighbors(y).to_vec();
    let eligible = g.node_count() - 1 - positives.len();
    let wanted = k * positives.len();
    let truncated = wanted > eligible;
    let take = wanted.min(eligible);

    let negatives = if take == 0 {
        Vec::new()
    } else if take * 2 <= eligible {
        // Sparse regime: rejection sampling costs O(take) expected draws.
        let n = g.node_count();
        let mut chosen = HashSet::with_capacity(take);
        let mut out = Vec::with_capacity(take);
        while out.len() < take {
            let x = NodeId::new(rng.random_range(0..n));
            if x != y && !g.is_adjacent(y, x) && chosen.insert(x) {
                out.push(x);
            }
        }
        out
    } else {
        let pool: Vec<NodeId> = g
            .nodes()
            .filter(|&x| x != y && g.neighbors(y).binary_search(&x).is_err())
            .collect();
        index::sample(rng, pool.len(), take)
            .into_iter()
            .map(|i| pool[i])
            .collect()
    };

    SampleSet {
        center: y,
        positives,
        negatives,
        truncated,
    }
}

/// Sample sets for every node in activation order.
pub fn pair_stream<'a, R: Rng + ?Sized>(
    g: &'a Graph,
    order: &'a ActivationOrder,
    k: usize,
    rng: &'a mut R,
) -> PairStream<'a, R> {
    PairStream {
        graph: g,
        nodes: order.sequence().iter(),
        k,
        rng,
    }
}

pub struct PairStream<'a, R: ?Sized> {
    graph: &'a Graph,
    nodes: std::slice::Iter<'a, NodeId>,
    k: usize,
    rng: &'a mut R,
}

impl<R: Rng + ?Sized> Iterator for PairStream<'_, R> {
    type Item = (NodeId, SampleSet);

    fn next(&mut self) -> Option<Self::Item> {
        let &y = self.nodes.next()?;
        Some((y, draw_samples(self.graph, y, self.k, self.rng)))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.nodes.size_hint()
    }
}

/// Draws one sample set per node in id order.
pub fn draw_all<R: Rng + ?Sized>(g: &Graph, k: usize, rng: &mut R) -> Vec<SampleSet> {
    g.nodes().map(|y| draw_samples(g, y, k, rng)).collect()
}
