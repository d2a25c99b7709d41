//! Spreading-activation node search.
//!
//! A random source node is activated first, then activation spreads to all
//! of its neighbors, then from all of those to theirs, until the component
//! is exhausted. Remaining components restart from a fresh random source.
//! The queue discipline follows the original algorithm: neighbors are
//! enqueued unconditionally and already-activated nodes are filtered when
//! popped, so a node may sit in the queue more than once.

use std::collections::VecDeque;
use std::ops::Range;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Graph, NodeId};

/// Order in which nodes are activated during one sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActivationOrder {
    sequence: Vec<NodeId>,
    frontier_offsets: Vec<usize>,
    seeds: Vec<NodeId>,
    enqueued: usize,
}

impl ActivationOrder {
    pub fn sequence(&self) -> &[NodeId] {
        &self.sequence
    }

    /// Start index of every frontier in `sequence`.
    pub fn frontier_offsets(&self) -> &[usize] {
        &self.frontier_offsets
    }

    /// Source node of every component, in activation order.
    pub fn seeds(&self) -> &[NodeId] {
        &self.seeds
    }

    /// Total queue insertions performed by the search.
    pub fn enqueue_count(&self) -> usize {
        self.enqueued
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    fn frontier_range(&self, i: usize) -> Range<usize> {
        let end = self.frontier_offsets.get(i + 1).copied().unwrap_or(self.sequence.len());
        self.frontier_offsets[i]..end
    }

    /// Iterates over frontiers: maximal runs of nodes activated at the same
    /// spreading step of the same component.
    pub fn frontiers(&self) -> Frontiers<'_> {
        Frontiers { order: self, next: 0 }
    }
}

pub struct Frontiers<'a> {
    order: &'a ActivationOrder,
    next: usize,
}

impl<'a> Iterator for Frontiers<'a> {
    type Item = &'a [NodeId];

    fn next(&mut self) -> Option<Self::Item> {
        if self.next >= self.order.frontier_offsets.len() {
            return None;
        }
        let range = self.order.frontier_range(self.next);
        self.next += 1;
        Some(&self.order.sequence[range])
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.order.frontier_offsets.len() - self.next;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Frontiers<'_> {}

/// Runs the search with every component source drawn uniformly at random
/// from the nodes not yet activated.
pub fn spread_search<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> ActivationOrder {
    search(g, None, rng)
}

/// Like [`spread_search`] but starts from `first`; later components still
/// draw random sources.
pub fn spread_search_from<R: Rng + ?Sized>(g: &Graph, first: NodeId, rng: &mut R) -> ActivationOrder {
    search(g, Some(first), rng)
}

fn search<R: Rng + ?Sized>(g: &Graph, first: Option<NodeId>, rng: &mut R) -> ActivationOrder {
    let n = g.node_count();
    let mut order = ActivationOrder {
        sequence: Vec::with_capacity(n),
        frontier_offsets: Vec::new(),
        seeds: Vec::new(),
        enqueued: 0,
    };
    if n == 0 {
        return order;
    }

    // The next not-yet-activated entry of a random permutation is a uniform
    // draw from the remaining nodes.
    let mut candidates: Vec<NodeId> = g.nodes().collect();
    candidates.shuffle(rng);
    if let Some(first) = first {
        let pos = candidates.iter().position(|&v| v == first).expect("seed in graph");
        candidates.swap(0, pos);
    }
    let mut cursor = 0;

    let mut activated = vec![false; n];
    let mut queue: VecDeque<(NodeId, u32)> = VecDeque::new();
    while order.sequence.len() < n {
        while activated[candidates[cursor].index()] {
            cursor += 1;
        }
        let seed = candidates[cursor];
        order.seeds.push(seed);
        queue.push_back((seed, 0));
        order.enqueued += 1;
        let mut depth = None;
        while let Some((v, d)) = queue.pop_front() {
            if activated[v.index()] {
                continue;
            }
            activated[v.index()] = true;
            if depth != Some(d) {
                order.frontier_offsets.push(order.sequence.len());
                depth = Some(d);
            }
            order.sequence.push(v);
            for &u in g.neighbors(v) {
                queue.push_back((u, d + 1));
            }
            order.enqueued += g.neighbors(v).len();
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::load_edge_list;
    use crate::rng::{stream_rng, Stream};

    fn ids(g: &Graph, labels: &[&str]) -> Vec<NodeId> {
        labels.iter().map(|l| g.node_id(l).unwrap()).collect()
    }

    #[test]
    fn star_from_center() {
        let g = load_edge_list("c l1\nc l2\nc l3\nc l4\n".as_bytes()).unwrap();
        let mut rng = stream_rng(1, Stream::Search, 0);
        let order = spread_search_from(&g, g.node_id("c").unwrap(), &mut rng);
        assert_eq!(order.sequence(), ids(&g, &["c", "l1", "l2", "l3", "l4"]));
        let frontiers: Vec<_> = order.frontiers().collect();
        assert_eq!(frontiers.len(), 2);
        assert_eq!(frontiers[0], ids(&g, &["c"]));
        assert_eq!(frontiers[1], ids(&g, &["l1", "l2", "l3", "l4"]));
    }

    #[test]
    fn path_from_end() {
        let g = load_edge_list("a b\nb c\n".as_bytes()).unwrap();
        let mut rng = stream_rng(1, Stream::Search, 0);
        let order = spread_search_from(&g, g.node_id("a").unwrap(), &mut rng);
        assert_eq!(order.sequence(), ids(&g, &["a", "b", "c"]));
        let frontiers: Vec<Vec<NodeId>> = order.frontiers().map(<[_]>::to_vec).collect();
        assert_eq!(frontiers, vec![ids(&g, &["a"]), ids(&g, &["b"]), ids(&g, &["c"])]);
        assert_eq!(order.enqueue_count(), 2 * g.edge_count() + 1);
    }

    #[test]
    fn empty_graph() {
        let g = Graph::from_edges(0, &[]).unwrap();
        let order = spread_search(&g, &mut stream_rng(0, Stream::Search, 0));
        assert!(order.is_empty());
        assert_eq!(order.frontiers().count(), 0);
    }

    #[test]
    fn components_restart() {
        let g = load_edge_list("a b\nc d\nd e\n".as_bytes()).unwrap();
        let order = spread_search(&g, &mut stream_rng(3, Stream::Search, 0));
        assert_eq!(order.seeds().len(), 2);
        assert_eq!(order.len(), 5);
        for f in order.frontiers() {
            assert!(f.iter().all(|&v| g.component(v) == g.component(f[0])));
        }
    }

    #[test]
    fn deterministic_for_seed() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (4, 5), (0, 3)]).unwrap();
        let a = spread_search(&g, &mut stream_rng(9, Stream::Search, 4));
        let b = spread_search(&g, &mut stream_rng(9, Stream::Search, 4));
        assert_eq!(a, b);
    }
}
