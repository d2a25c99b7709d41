//! Immutable undirected graphs with node types and component labels.
//!
//! Nodes carry dense ids `0..node_count` assigned in first-seen order when
//! loading; external string labels are only used at I/O boundaries.

use std::collections::HashMap;
use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use log::warn;

/// Dense node index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(u32);

impl NodeId {
    pub fn new(index: usize) -> Self {
        NodeId(u32::try_from(index).expect("node index exceeds u32"))
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("node `{0}` has no entry in the node-type file")]
    MissingType(String),
    #[error("node `{label}` assigned conflicting types `{first}` and `{second}`")]
    ConflictingType {
        label: String,
        first: String,
        second: String,
    },
    #[error("node id {id} out of range for graph with {count} nodes")]
    OutOfRange { id: usize, count: usize },
    #[error("unknown node label `{0}`")]
    UnknownLabel(String),
    #[error("graph cannot be written as an edge list that reloads with the same ids: {0}")]
    NotRoundTrippable(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Connected-component labeling of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    /// Component label per node, numbered `0..count` by smallest member id.
    pub labels: Vec<u32>,
    pub count: usize,
}

/// Undirected simple graph in compressed adjacency form.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
    edge_count: usize,
    node_type: Vec<u32>,
    type_names: Vec<String>,
    components: Components,
    labels: Vec<String>,
    index: HashMap<String, NodeId>,
}

impl Graph {
    /// Builds a homogeneous graph over nodes `0..node_count` labeled by their
    /// decimal index. Arcs are symmetrized, duplicates merged and self-loops
    /// dropped. Nodes without edges are kept as isolated nodes.
    pub fn from_edges(node_count: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        for &(u, v) in edges {
            for id in [u, v] {
                if id >= node_count {
                    return Err(GraphError::OutOfRange { id, count: node_count });
                }
            }
        }
        let labels = (0..node_count).map(|i| i.to_string()).collect();
        let arcs = edges.iter().map(|&(u, v)| (u as u32, v as u32)).collect();
        Ok(Self::assemble(
            labels,
            arcs,
            vec![0; node_count],
            vec!["node".to_string()],
        ))
    }

    /// Replaces node types. `node_type[v]` indexes into `type_names`.
    pub fn with_node_types(mut self, node_type: Vec<u32>, type_names: Vec<String>) -> Self {
        assert_eq!(node_type.len(), self.node_count(), "one type per node");
        assert!(
            node_type.iter().all(|&t| (t as usize) < type_names.len()),
            "type index out of range"
        );
        self.node_type = node_type;
        self.type_names = type_names;
        self
    }

    fn assemble(labels: Vec<String>, arcs: Vec<(u32, u32)>, node_type: Vec<u32>, type_names: Vec<String>) -> Self {
        let n = labels.len();
        let mut edges: Vec<(u32, u32)> = arcs
            .into_iter()
            .filter(|(u, v)| u != v)
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        edges.sort_unstable();
        edges.dedup();

        let mut degree = vec![0usize; n];
        for &(u, v) in &edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![NodeId(0); offsets[n]];
        for &(u, v) in &edges {
            targets[fill[u as usize]] = NodeId(v);
            fill[u as usize] += 1;
            targets[fill[v as usize]] = NodeId(u);
            fill[v as usize] += 1;
        }
        for v in 0..n {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }

        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), NodeId::new(i)))
            .collect();
        let mut graph = Graph {
            offsets,
            targets,
            edge_count: edges.len(),
            node_type,
            type_names,
            components: Components {
                labels: Vec::new(),
                count: 0,
            },
            labels,
            index,
        };
        graph.components = connected_components(&graph);
        graph
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    /// Number of unique undirected edges.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = NodeId> + '_ {
        (0..self.node_count()).map(NodeId::new)
    }

    /// Sorted neighbor list of `v`.
    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.targets[self.offsets[v.index()]..self.offsets[v.index() + 1]]
    }

    pub fn is_adjacent(&self, u: NodeId, v: NodeId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn degree(&self, v: NodeId) -> Result<usize, GraphError> {
        self.check(v)?;
        Ok(self.neighbors(v).len())
    }

    pub fn check(&self, v: NodeId) -> Result<(), GraphError> {
        if v.index() < self.node_count() {
            Ok(())
        } else {
            Err(GraphError::OutOfRange {
                id: v.index(),
                count: self.node_count(),
            })
        }
    }

    #[inline]
    pub fn node_type(&self, v: NodeId) -> usize {
        self.node_type[v.index()] as usize
    }

    pub fn type_count(&self) -> usize {
        self.type_names.len()
    }

    pub fn type_names(&self) -> &[String] {
        &self.type_names
    }

    pub fn components(&self) -> &Components {
        &self.components
    }

    #[inline]
    pub fn component(&self, v: NodeId) -> usize {
        self.components.labels[v.index()] as usize
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_id(&self, label: &str) -> Result<NodeId, GraphError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| GraphError::UnknownLabel(label.to_string()))
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.nodes()
            .flat_map(move |u| self.neighbors(u).iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Loads an edge list file, optionally with a node-type file.
    pub fn from_paths(edges: &Path, types: Option<&Path>) -> Result<Self, GraphError> {
        let edge_reader = BufReader::new(File::open(edges)?);
        match types {
            Some(path) => load_typed_edge_list(edge_reader, BufReader::new(File::open(path)?)),
            None => load_edge_list(edge_reader),
        }
    }

    /// Writes the graph as an edge list that reloads with identical ids.
    ///
    /// Lines are ordered so that first-seen label order reproduces the
    /// current ids, which holds for every graph produced by the loaders.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<(), GraphError> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut written: Vec<(NodeId, NodeId)> = Vec::new();
        for v in self.nodes() {
            if seen[v.index()] {
                continue;
            }
            let nbrs = self.neighbors(v);
            if let Some(&u) = nbrs.first().filter(|u| **u < v) {
                writeln!(out, "{}\t{}", self.label(v), self.label(u))?;
                written.push((u, v));
                seen[v.index()] = true;
            } else if v.index() + 1 < n && self.is_adjacent(v, NodeId::new(v.index() + 1)) {
                let w = NodeId::new(v.index() + 1);
                writeln!(out, "{}\t{}", self.label(v), self.label(w))?;
                written.push((v, w));
                seen[v.index()] = true;
                seen[w.index()] = true;
            } else {
                return Err(GraphError::NotRoundTrippable(format!(
                    "node `{}` cannot be introduced in id order",
                    self.label(v)
                )));
            }
        }
        written.sort_unstable();
        for (u, v) in self.edges() {
            if written.binary_search(&(u, v)).is_err() {
                writeln!(out, "{}\t{}", self.label(u), self.label(v))?;
            }
        }
        Ok(())
    }

    /// Writes `label<TAB>type_name` for every node.
    pub fn write_node_types<W: Write>(&self, mut out: W) -> io::Result<()> {
        for v in self.nodes() {
            writeln!(out, "{}\t{}", self.label(v), self.type_names[self.node_type(v)])?;
        }
        Ok(())
    }
}

/// Reads a homogeneous graph from `src dst [weight]` lines.
pub fn load_edge_list<R: BufRead>(edges: R) -> Result<Graph, GraphError> {
    let (labels, _, arcs) = read_edges(edges)?;
    let n = labels.len();
    Ok(Graph::assemble(labels, arcs, vec![0; n], vec!["node".to_string()]))
}

/// Reads a node-typed graph. Every node in the edge list must have a type;
/// type-file entries for nodes without edges are dropped with a warning.
pub fn load_typed_edge_list<R: BufRead, T: BufRead>(edges: R, types: T) -> Result<Graph, GraphError> {
    let (labels, index, arcs) = read_edges(edges)?;
    let mut assigned: Vec<Option<String>> = vec![None; labels.len()];
    for (lineno, line) in types.lines().enumerate() {
        let line = line?;
        let Some(fields) = fields(&line) else { continue };
        let [label, type_name] = fields[..] else {
            return Err(GraphError::Parse {
                line: lineno + 1,
                message: format!("expected `label type`, found {} fields", fields.len()),
            });
        };
        let Some(&id) = index.get(label) else {
            warn!("node `{label}` in type file has no edges; dropped");
            continue;
        };
        match &assigned[id as usize] {
            Some(first) if first != type_name => {
                return Err(GraphError::ConflictingType {
                    label: label.to_string(),
                    first: first.clone(),
                    second: type_name.to_string(),
                })
            }
            _ => assigned[id as usize] = Some(type_name.to_string()),
        }
    }

    // Type indices follow first appearance in node-id order.
    let mut type_names: Vec<String> = Vec::new();
    let mut node_type = Vec::with_capacity(labels.len());
    for (label, ty) in labels.iter().zip(&assigned) {
        let ty = ty.as_ref().ok_or_else(|| GraphError::MissingType(label.clone()))?;
        let t = match type_names.iter().position(|n| n == ty) {
            Some(t) => t,
            None => {
                type_names.push(ty.clone());
                type_names.len() - 1
            }
        };
        node_type.push(t as u32);
    }
    if type_names.is_empty() {
        type_names.push("node".to_string());
    }
    Ok(Graph::assemble(labels, arcs, node_type, type_names))
}

type EdgeRead = (Vec<String>, HashMap<String, u32>, Vec<(u32, u32)>);

fn read_edges<R: BufRead>(edges: R) -> Result<EdgeRead, GraphError> {
    let mut labels = Vec::new();
    let mut index: HashMap<String, u32> = HashMap::new();
    let mut arcs = Vec::new();
    let mut intern = |label: &str, labels: &mut Vec<String>| -> u32 {
        *index.entry(label.to_string()).or_insert_with(|| {
            labels.push(label.to_string());
            (labels.len() - 1) as u32
        })
    };
    for (lineno, line) in edges.lines().enumerate() {
        let line = line?;
        let Some(fields) = fields(&line) else { continue };
        let parse_err = |message: String| GraphError::Parse {
            line: lineno + 1,
            message,
        };
        match fields[..] {
            [_, _] => {}
            [_, _, weight] => {
                weight
                    .parse::<f64>()
                    .map_err(|_| parse_err(format!("invalid edge weight `{weight}`")))?;
            }
            _ => {
                return Err(parse_err(format!(
                    "expected `src dst [weight]`, found {} fields",
                    fields.len()
                )))
            }
        }
        if fields[0] == fields[1] {
            warn!("line {}: self-loop on `{}` ignored", lineno + 1, fields[0]);
            continue;
        }
        let u = intern(fields[0], &mut labels);
        let v = intern(fields[1], &mut labels);
        arcs.push((u, v));
    }
    Ok((labels, index, arcs))
}

/// Splits a line into fields; `None` for blank and `#` comment lines.
fn fields(line: &str) -> Option<Vec<&str>> {
    let trimmed = line.trim();
    if trimmed.is_empty() || trimmed.starts_with('#') {
        return None;
    }
    Some(trimmed.split_whitespace().collect())
}

/// Labels connected components by breadth-first flooding in id order.
pub fn connected_components(g: &Graph) -> Components {
    const UNSEEN: u32 = u32::MAX;
    let n = g.node_count();
    let mut labels = vec![UNSEEN; n];
    let mut count = 0u32;
    let mut queue = Vec::new();
    for start in 0..n {
        if labels[start] != UNSEEN {
            continue;
        }
        labels[start] = count;
        queue.push(NodeId::new(start));
        while let Some(v) = queue.pop() {
            for &u in g.neighbors(v) {
                if labels[u.index()] == UNSEEN {
                    labels[u.index()] = count;
                    queue.push(u);
                }
            }
        }
        count += 1;
    }
    Components {
        labels,
        count: count as usize,
    }
}
