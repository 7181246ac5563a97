//! Partial partitioning trees.
//!
//! Leaves carry disjoint blocks covering the ground set (the displayed
//! partition); internal nodes have degree at least three. Deleting an
//! internal node splits the tree into components whose leaf-label unions
//! form that node's node-partition. A tree is compatible with a set of
//! partitions when every node-partition belongs to it; trees without
//! internal nodes (a single leaf, or a single edge joining two leaves) are
//! compatible vacuously.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::Partition;
use crate::ground::{Block, GroundSet, MAX_GROUND};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitioningTree {
    n: usize,
    adj: Vec<Vec<usize>>,
    labels: BTreeMap<usize, Block>,
    ground_size: usize,
}

impl PartitioningTree {
    /// Validating constructor: `edges` over nodes `0..n`, `labels` on
    /// exactly the leaves, labels disjoint and covering `0..ground size`.
    pub fn new(n: usize, edges: &[(usize, usize)], labels: BTreeMap<usize, Block>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTree("a tree has at least one node".into()));
        }
        if edges.len() != n - 1 {
            return Err(Error::InvalidTree(format!(
                "{} nodes need {} edges, got {}",
                n,
                n - 1,
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidTree(format!("edge ({u},{v}) out of range")));
            }
            if u == v {
                return Err(Error::InvalidTree(format!("self-edge at node {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for nb in &mut adj {
            nb.sort_unstable();
            nb.dedup();
        }
        // n-1 edges + connected = tree.
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        if count != n {
            return Err(Error::InvalidTree("graph is not connected".into()));
        }

        for (v, nb) in adj.iter().enumerate() {
            let is_leaf = nb.len() <= 1;
            if is_leaf && !labels.contains_key(&v) {
                return Err(Error::InvalidTree(format!("leaf {v} has no label")));
            }
            if !is_leaf && labels.contains_key(&v) {
                return Err(Error::InvalidTree(format!("internal node {v} is labelled")));
            }
            if !is_leaf && nb.len() < 3 {
                return Err(Error::InvalidTree(format!(
                    "internal node {v} has degree {}",
                    nb.len()
                )));
            }
        }
        if labels.len() != adj.iter().filter(|nb| nb.len() <= 1).count() {
            return Err(Error::InvalidTree("labels on non-nodes".into()));
        }

        let mut union = Block::EMPTY;
        for b in labels.values() {
            if b.is_empty() {
                return Err(Error::EmptyBlock);
            }
            if union.intersects(*b) {
                return Err(Error::NotDisjoint);
            }
            union = union.union(*b);
        }
        let mask = union.mask();
        if mask == 0 || mask & (mask + 1) != 0 {
            return Err(Error::InvalidTree(
                "leaf labels do not cover a contiguous ground set".into(),
            ));
        }
        let ground_size = union.len();
        if !(2..=MAX_GROUND).contains(&ground_size) {
            return Err(Error::InvalidTree(format!(
                "ground set of size {ground_size} unsupported"
            )));
        }

        Ok(PartitioningTree {
            n,
            adj,
            labels,
            ground_size,
        })
    }

    /// The one-node tree displaying `{E}`.
    pub fn single_leaf(ground: &GroundSet) -> Self {
        let mut labels = BTreeMap::new();
        labels.insert(0, ground.full());
        PartitioningTree {
            n: 1,
            adj: vec![Vec::new()],
            labels,
            ground_size: ground.size(),
        }
    }

    /// The two-leaf tree displaying `{A, A^c}`.
    pub fn single_edge(ground: &GroundSet, a: Block) -> Result<Self> {
        let ac = a.complement_in(ground);
        if a.is_empty() || ac.is_empty() {
            return Err(Error::EmptyBlock);
        }
        let mut labels = BTreeMap::new();
        labels.insert(0, a);
        labels.insert(1, ac);
        PartitioningTree::new(2, &[(0, 1)], labels)
    }

    /// One internal node with a leaf per block; needs ≥ 3 blocks.
    pub fn star(p: &Partition) -> Result<Self> {
        if p.len() < 3 {
            return Err(Error::InvalidTree(format!(
                "a star needs ≥ 3 leaves, partition has {} blocks",
                p.len()
            )));
        }
        let mut labels = BTreeMap::new();
        let mut edges = Vec::new();
        for (i, b) in p.blocks().iter().enumerate() {
            labels.insert(i + 1, *b);
            edges.push((0, i + 1));
        }
        PartitioningTree::new(p.len() + 1, &edges, labels)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (v, nb) in self.adj.iter().enumerate() {
            for &u in nb {
                if v < u {
                    out.push((v, u));
                }
            }
        }
        out
    }

    pub fn leaf_labels(&self) -> &BTreeMap<usize, Block> {
        &self.labels
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn internal_nodes(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.adj[v].len() >= 2).collect()
    }

    pub fn displayed_partition(&self) -> Partition {
        Partition::from_disjoint_blocks(self.labels.values().copied().collect())
    }

    /// Leaf-label union of the component of `T − v` containing `start`.
    fn component_mask(&self, v: usize, start: usize) -> Block {
        let mut mask = Block::EMPTY;
        let mut seen = vec![false; self.n];
        seen[v] = true;
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(w) = stack.pop() {
            if let Some(b) = self.labels.get(&w) {
                mask = mask.union(*b);
            }
            for &u in &self.adj[w] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        mask
    }

    /// Node-partition of an internal node: one block per component of `T − v`.
    pub fn node_partition(&self, v: usize) -> Partition {
        debug_assert!(self.adj[v].len() >= 2);
        let blocks = self.adj[v]
            .iter()
            .map(|&u| self.component_mask(v, u))
            .collect();
        Partition::from_disjoint_blocks(blocks)
    }

    /// All node-partitions, one per internal node; errors when the tree has
    /// no internal node ({E}-leaf and single-edge trees).
    pub fn node_partitions(&self) -> Result<Vec<Partition>> {
        let internal = self.internal_nodes();
        if internal.is_empty() {
            return Err(Error::NoInternalNode);
        }
        Ok(internal
            .into_iter()
            .map(|v| self.node_partition(v))
            .collect())
    }

    /// Every node-partition satisfies the predicate; vacuously true without
    /// internal nodes.
    pub fn is_compatible(&self, pred: &dyn Fn(&Partition) -> bool) -> bool {
        self.internal_nodes()
            .into_iter()
            .all(|v| pred(&self.node_partition(v)))
    }

    /// Merge `self` displaying `(α|A)` with `other` displaying `(A^c|β)`:
    /// remove the two pointed leaves and link their neighbours. Displays the
    /// merged partition `(α|β)`; node-partitions are the union of both sides'.
    pub fn merge_with(&self, a: Block, other: &PartitioningTree) -> Result<PartitioningTree> {
        if self.ground_size != other.ground_size {
            return Err(Error::InvalidTree("ground sizes differ".into()));
        }
        let ac = Block::from_mask(!a.mask() & Block::full(self.ground_size).mask());
        let u1 = self
            .labels
            .iter()
            .find(|(_, b)| **b == a)
            .map(|(v, _)| *v)
            .ok_or(Error::NotComplementary)?;
        let u2 = other
            .labels
            .iter()
            .find(|(_, b)| **b == ac)
            .map(|(v, _)| *v)
            .ok_or(Error::NotComplementary)?;
        if self.n < 2 || other.n < 2 {
            // A single-leaf operand is labelled E, whose complement is empty
            // and so is never a leaf label of the other side.
            return Err(Error::NotComplementary);
        }

        let v1 = self.adj[u1][0];
        let v2 = other.adj[u2][0];
        let map1 = |w: usize| if w < u1 { w } else { w - 1 };
        let off = self.n - 1;
        let map2 = |w: usize| off + if w < u2 { w } else { w - 1 };

        let mut edges = Vec::new();
        for (x, y) in self.edges() {
            if x != u1 && y != u1 {
                edges.push((map1(x), map1(y)));
            }
        }
        for (x, y) in other.edges() {
            if x != u2 && y != u2 {
                edges.push((map2(x), map2(y)));
            }
        }
        edges.push((map1(v1), map2(v2)));

        let mut labels = BTreeMap::new();
        for (v, b) in &self.labels {
            if *v != u1 {
                labels.insert(map1(*v), *b);
            }
        }
        for (v, b) in &other.labels {
            if *v != u2 {
                labels.insert(map2(*v), *b);
            }
        }
        PartitioningTree::new(self.n + other.n - 2, &edges, labels)
    }

    /// DOT export; leaves show their blocks, element names taken from the
    /// ground set when it carries labels.
    pub fn to_dot(&self, ground: Option<&GroundSet>) -> String {
        let mut out = String::from("graph tree {\n  node [shape=point];\n");
        for (v, b) in &self.labels {
            let body = b
                .iter()
                .map(|i| match ground {
                    Some(g) => g.name(i),
                    None => i.to_string(),
                })
                .collect::<Vec<_>>()
                .join(",");
            let _ = writeln!(out, "  n{v} [shape=box, label=\"{{{body}}}\"];");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  n{u} -- n{v};");
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Serialize, Deserialize)]
struct TreeRepr {
    edges: Vec<(usize, usize)>,
    leaves: BTreeMap<String, Block>,
}

impl Serialize for PartitioningTree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = TreeRepr {
            edges: self.edges(),
            leaves: self
                .labels
                .iter()
                .map(|(v, b)| (v.to_string(), *b))
                .collect(),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PartitioningTree {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = TreeRepr::deserialize(d)?;
        let mut labels = BTreeMap::new();
        for (k, b) in repr.leaves {
            let v: usize = k.parse().map_err(|_| D::Error::custom("bad node id"))?;
            labels.insert(v, b);
        }
        let n = repr
            .edges
            .iter()
            .flat_map(|&(u, v)| [u, v])
            .chain(labels.keys().copied())
            .max()
            .map_or(0, |m| m + 1);
        PartitioningTree::new(n, &repr.edges, labels).map_err(D::Error::custom)
    }
}
