//! Shared fixtures and oracles for the integration suites.
//!
//! Every oracle here recomputes a library quantity by a deliberately
//! different route — rewrite-system reachability instead of assignment
//! search, explicit tree enumeration instead of merge fixpoints or
//! threshold searches — so that agreement between the two is evidence
//! rather than tautology.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use widthdual_core::enumerate::{all_partitions, antichains, partitions_of_block, submasks};
use widthdual_core::widths::{ConnectivityFunction, PartitionFunction};
use widthdual_core::{Block, Caps, Graph, GroundSet, Partition, SetFamily, Value};

pub fn caps() -> Caps {
    Caps::default()
}

pub fn ground(n: usize) -> GroundSet {
    GroundSet::new(n, &caps()).unwrap()
}

pub fn blk(xs: &[usize]) -> Block {
    Block::from_indices(xs).unwrap()
}

pub fn part(g: &GroundSet, blocks: &[&[usize]]) -> Partition {
    Partition::new(g, blocks.iter().map(|b| blk(b)).collect()).unwrap()
}

/// Every partition of a ground set of size `n`, canonically ordered.
pub fn universe(n: usize) -> Vec<Partition> {
    all_partitions(&ground(n), &caps()).unwrap()
}

/// All 2^k subsets of `items`, in mask order. Small k only.
pub fn all_subsets<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    let mut out = Vec::with_capacity(1 << items.len());
    for mask in 0u32..(1 << items.len()) {
        out.push(
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, x)| x.clone())
                .collect(),
        );
    }
    out
}

// ---------------------------------------------------------------------
// Rewrite oracle for `is_finer` (ground size 3).
//
// A family over {0,1,2} is a set of the seven nonempty blocks, encoded
// as a 7-bit code: bit m-1 stands for the block with element mask m.
// One rewrite step deletes a block or replaces a block by two disjoint
// nonempty halves; `A` finer than `B` means `A` is reachable from `B`.
// ---------------------------------------------------------------------

pub fn family_code(f: &SetFamily) -> u8 {
    let mut code = 0u8;
    for b in f.iter() {
        assert!(b.mask() >= 1 && b.mask() <= 7);
        code |= 1 << (b.mask() - 1);
    }
    code
}

pub fn code_family(code: u8) -> SetFamily {
    let blocks = (1u64..=7)
        .filter(|m| code >> (m - 1) & 1 == 1)
        .map(Block::from_mask)
        .collect();
    SetFamily::new(blocks).unwrap()
}

pub fn rewrite_reachable(start: u8) -> HashSet<u8> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start);
    queue.push_back(start);
    while let Some(code) = queue.pop_front() {
        for m in 1u64..=7 {
            if code >> (m - 1) & 1 == 0 {
                continue;
            }
            let without = code & !(1 << (m - 1));
            let mut step = |next: u8| {
                if seen.insert(next) {
                    queue.push_back(next);
                }
            };
            step(without);
            for s in submasks(m) {
                let t = m & !s;
                if s == 0 || t == 0 || s > t {
                    continue;
                }
                step(without | 1 << (s - 1) | 1 << (t - 1));
            }
        }
    }
    seen
}

// ---------------------------------------------------------------------
// Closure oracle: displayed partitions of compatible trees.
//
// The library computes P↑ as a merge fixpoint. The oracle builds it the
// way the definition reads: enumerate every tree with at least one
// internal node whose node partitions all lie in P, collect the
// displayed partitions, and add the members with at most two blocks.
// A subtree over a block Y is either the leaf Y or an internal node
// splitting Y, whose node partition (split parts plus Y^c) must lie in
// P; the achievable leaf sets depend on Y alone.
// ---------------------------------------------------------------------

pub fn closure_oracle(g: &GroundSet, members: &[Partition]) -> BTreeSet<Partition> {
    let set: HashSet<&Partition> = members.iter().collect();
    let mut out: BTreeSet<Partition> = members.iter().filter(|p| p.len() <= 2).cloned().collect();

    struct Expand<'a> {
        g: &'a GroundSet,
        set: &'a HashSet<&'a Partition>,
        memo: HashMap<u64, Vec<Vec<Block>>>,
    }
    impl Expand<'_> {
        fn leaf_sets(&mut self, y: Block) -> Vec<Vec<Block>> {
            if let Some(hit) = self.memo.get(&y.mask()) {
                return hit.clone();
            }
            let mut out = vec![vec![y]];
            let co = y.complement_in(self.g);
            for split in partitions_of_block(y, 2, usize::MAX) {
                let mut blocks = split.clone();
                blocks.push(co);
                let node = Partition::new(self.g, blocks).unwrap();
                if !self.set.contains(&node) {
                    continue;
                }
                let mut combos: Vec<Vec<Block>> = vec![Vec::new()];
                for piece in &split {
                    let piece_sets = self.leaf_sets(*piece);
                    let mut next = Vec::new();
                    for c in &combos {
                        for ps in &piece_sets {
                            let mut merged = c.clone();
                            merged.extend_from_slice(ps);
                            next.push(merged);
                        }
                    }
                    combos = next;
                }
                out.extend(combos);
            }
            out.sort();
            out.dedup();
            self.memo.insert(y.mask(), out.clone());
            out
        }
    }

    let mut expand = Expand {
        g,
        set: &set,
        memo: HashMap::new(),
    };
    for root in partitions_of_block(g.full(), 3, usize::MAX) {
        let node = Partition::new(g, root.clone()).unwrap();
        if !set.contains(&node) {
            continue;
        }
        let mut combos: Vec<Vec<Block>> = vec![Vec::new()];
        for piece in &root {
            let piece_sets = expand.leaf_sets(*piece);
            let mut next = Vec::new();
            for c in &combos {
                for ps in &piece_sets {
                    let mut merged = c.clone();
                    merged.extend_from_slice(ps);
                    next.push(merged);
                }
            }
            combos = next;
        }
        for leaves in combos {
            out.insert(Partition::new(g, leaves).unwrap());
        }
    }
    out
}

// ---------------------------------------------------------------------
// Graph enumeration.
// ---------------------------------------------------------------------

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    rec(0, &mut cur, &mut out);
    out
}

fn canonical_edges(
    _n: usize,
    edges: &[(usize, usize)],
    perms: &[Vec<usize>],
) -> Vec<(usize, usize)> {
    let mut best: Option<Vec<(usize, usize)>> = None;
    for perm in perms {
        let mut mapped: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u], perm[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        mapped.sort_unstable();
        if best.as_ref().is_none_or(|b| mapped < *b) {
            best = Some(mapped);
        }
    }
    best.unwrap()
}

/// Connected graphs with `1..=max_edges` edges and no isolated vertices,
/// one representative per isomorphism class.
pub fn connected_graphs_up_to_iso(max_edges: usize) -> Vec<Graph> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for n in 2..=max_edges + 1 {
        let perms = permutations(n);
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        for mask in 1u32..(1 << pairs.len()) {
            if (mask.count_ones() as usize) > max_edges {
                continue;
            }
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, e)| *e)
                .collect();
            let g = Graph::new(n, &edges).unwrap();
            if !g.is_connected() || (0..n).any(|v| g.degree(v) == 0) {
                continue;
            }
            let canon = canonical_edges(n, &edges, &perms);
            if seen.insert((n, canon.clone())) {
                out.push(Graph::new(n, &canon).unwrap());
            }
        }
    }
    out
}

/// Every labeled graph on exactly `n` vertices, the edgeless one included.
pub fn all_labeled_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u32..(1 << pairs.len()))
        .map(|mask| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, e)| *e)
                .collect();
            Graph::new(n, &edges).unwrap()
        })
        .collect()
}

// ---------------------------------------------------------------------
// Brute-force width oracles.
//
// Cut parameters: enumerate every unrooted tree with all internal
// degrees exactly three and one leaf per ground element, by inserting
// leaves into edges; the cost of a tree is the maximum of f over the
// leaf sets of its edge sides. Ground sizes one and two have a single
// degenerate tree whose only separation is a singleton (none at all
// for size one).
// ---------------------------------------------------------------------

#[derive(Clone)]
struct LeafTree {
    nodes: usize,
    edges: Vec<(usize, usize)>,
}

fn cubic_trees(m: usize) -> Vec<LeafTree> {
    assert!(m >= 3);
    let mut trees = vec![LeafTree {
        nodes: m + 1,
        edges: vec![(0, m), (1, m), (2, m)],
    }];
    for leaf in 3..m {
        let mut next = Vec::new();
        for t in &trees {
            for (i, &(u, v)) in t.edges.iter().enumerate() {
                let mut s = t.clone();
                let w = s.nodes;
                s.nodes += 1;
                s.edges[i] = (u, w);
                s.edges.push((v, w));
                s.edges.push((leaf, w));
                next.push(s);
            }
        }
        trees = next;
    }
    trees
}

fn side_leaves(t: &LeafTree, m: usize, cut: usize) -> u64 {
    let (root, banned) = t.edges[cut];
    let mut adj = vec![Vec::new(); t.nodes];
    for &(u, v) in &t.edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut mask = 0u64;
    let mut stack = vec![root];
    let mut seen = vec![false; t.nodes];
    seen[root] = true;
    seen[banned] = true;
    while let Some(v) = stack.pop() {
        if v < m {
            mask |= 1 << v;
        }
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    mask
}

/// Minimum over cubic leaf trees of the maximum edge-cut value of `f`.
pub fn cubic_tree_width(f: &dyn ConnectivityFunction) -> Value {
    let m = f.ground().size();
    if m == 2 {
        return f.value(Block::singleton(0));
    }
    let mut best: Option<Value> = None;
    for t in cubic_trees(m) {
        let worst = (0..t.edges.len())
            .map(|cut| f.value(Block::from_mask(side_leaves(&t, m, cut))))
            .max()
            .unwrap();
        if best.is_none_or(|b| worst < b) {
            best = Some(worst);
        }
    }
    best.unwrap()
}

// ---------------------------------------------------------------------
// Treewidth oracle: minimum over trees with internal degrees ≥ 3 and
// singleton leaves of the maximum border over node partitions. Direct
// min-max recursion over rooted splits; no memo, no thresholds.
// ---------------------------------------------------------------------

fn border_rec(border: &dyn PartitionFunction, g: &GroundSet, y: Block) -> Value {
    let co = y.complement_in(g);
    let mut best = Value::Infinite;
    for split in partitions_of_block(y, 2, usize::MAX) {
        let mut blocks = split.clone();
        blocks.push(co);
        let mut worst = border.value(&Partition::new(g, blocks).unwrap());
        for p in &split {
            if p.len() >= 2 {
                let sub = border_rec(border, g, *p);
                if sub > worst {
                    worst = sub;
                }
            }
        }
        if worst < best {
            best = worst;
        }
    }
    best
}

/// Minimum over all degree-≥3 singleton-leaf trees of the maximum border,
/// for edge sets of size ≥ 3.
pub fn min_max_border(border: &dyn PartitionFunction) -> Value {
    let g = border.ground();
    assert!(g.size() >= 3);
    let mut best = Value::Infinite;
    for split in partitions_of_block(g.full(), 3, usize::MAX) {
        let mut worst = border.value(&Partition::new(g, split.clone()).unwrap());
        for p in &split {
            if p.len() >= 2 {
                let sub = border_rec(border, g, *p);
                if sub > worst {
                    worst = sub;
                }
            }
        }
        if worst < best {
            best = worst;
        }
    }
    best
}

// ---------------------------------------------------------------------
// Antichain-generated up-families over a ground set.
// ---------------------------------------------------------------------

pub fn all_up_families(g: &GroundSet) -> Vec<widthdual_core::UpFamily> {
    antichains(g.full())
        .into_iter()
        .map(|f| widthdual_core::UpFamily::new(f.blocks().to_vec()))
        .collect()
}
