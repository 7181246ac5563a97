//! Exact width computation and two-sided certification.
//!
//! Width search asks, for growing k, whether a partitioning tree compatible
//! with the parameter's level set exists. The tree search decomposes blocks
//! top-down: a block is done when it is a small leaf, or when some split of
//! it — together with the block's complement — forms a level-set member
//! and the pieces decompose in turn. Whether a block decomposes does not
//! depend on the tree above it (the complement is all the rest), so the
//! memo keys on the block alone. When no tree exists, the dual certificate
//! is a big bramble over the enumerated level set.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bramble::{construct_big_bramble, find_big_bramble, is_big_bramble, is_bramble};
use crate::config::Caps;
use crate::enumerate::partitions_of_block;
use crate::error::{Error, Result};
use crate::family::Partition;
use crate::graph::Graph;
use crate::ground::{Block, GroundSet};
use crate::smallset::{SmallSetSystem, UpFamily};
use crate::tree::PartitioningTree;
use crate::widths::{Border, CutRank, LevelSet, MaxF, PartitionFunction, Value, VertexBoundary};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WidthParam {
    Treewidth,
    Branchwidth,
    Rankwidth,
}

impl WidthParam {
    pub const ALL: [WidthParam; 3] = [
        WidthParam::Treewidth,
        WidthParam::Branchwidth,
        WidthParam::Rankwidth,
    ];

    /// The partition function the parameter minimizes over trees; its
    /// ground set is the edge set for treewidth and branchwidth, the
    /// vertex set for rankwidth.
    pub fn partition_function(&self, g: &Graph, caps: &Caps) -> Result<Box<dyn PartitionFunction>> {
        Ok(match self {
            WidthParam::Treewidth => Box::new(Border::new(g, caps)?),
            WidthParam::Branchwidth => Box::new(MaxF::new(VertexBoundary::new(g, caps)?)),
            WidthParam::Rankwidth => Box::new(MaxF::new(CutRank::new(g, caps)?)),
        })
    }

    /// Level-set threshold for parameter value k: border ≤ k+1 for
    /// treewidth, max_f ≤ k for the cut-based parameters.
    pub fn threshold(&self, k: u32) -> Value {
        match self {
            WidthParam::Treewidth => Value::int(i64::from(k) + 1),
            _ => Value::int(i64::from(k)),
        }
    }

    /// Cut-based parameters decompose along cubic trees, which is the same
    /// as capping node partitions at three parts.
    pub fn max_blocks(&self) -> Option<usize> {
        match self {
            WidthParam::Treewidth => None,
            _ => Some(3),
        }
    }

    pub fn level_set<'a>(&self, psi: &'a dyn PartitionFunction, k: u32) -> LevelSet<'a> {
        let level = LevelSet::new(psi, self.threshold(k));
        match self.max_blocks() {
            Some(m) => level.with_max_blocks(m),
            None => level,
        }
    }
}

impl fmt::Display for WidthParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            WidthParam::Treewidth => "treewidth",
            WidthParam::Branchwidth => "branchwidth",
            WidthParam::Rankwidth => "rankwidth",
        };
        write!(f, "{name}")
    }
}

impl FromStr for WidthParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<WidthParam> {
        match s {
            "treewidth" | "tw" => Ok(WidthParam::Treewidth),
            "branchwidth" | "bw" => Ok(WidthParam::Branchwidth),
            "rankwidth" | "rw" => Ok(WidthParam::Rankwidth),
            other => Err(Error::Input(format!(
                "unknown parameter `{other}` (expected treewidth, branchwidth, or rankwidth)"
            ))),
        }
    }
}

#[derive(Clone)]
enum Plan {
    Leaf,
    Split(Vec<Block>),
}

struct TreeSearch<'a> {
    pred: &'a dyn Fn(&Partition) -> bool,
    ground_mask: u64,
    leaves: &'a SmallSetSystem,
    memo: HashMap<u64, Option<Plan>>,
}

impl TreeSearch<'_> {
    fn decomposable(&mut self, y: u64) -> Option<Plan> {
        if let Some(plan) = self.memo.get(&y) {
            return plan.clone();
        }
        let plan = self.compute(y);
        self.memo.insert(y, plan.clone());
        plan
    }

    fn compute(&mut self, y: u64) -> Option<Plan> {
        if self.leaves.is_small(Block::from_mask(y)) {
            return Some(Plan::Leaf);
        }
        let co = Block::from_mask(self.ground_mask & !y);
        for split in partitions_of_block(Block::from_mask(y), 2, usize::MAX) {
            let mut blocks = split.clone();
            blocks.push(co);
            let node = Partition::from_disjoint_blocks(blocks);
            if !(self.pred)(&node) {
                continue;
            }
            if split.iter().all(|b| self.decomposable(b.mask()).is_some()) {
                return Some(Plan::Split(split));
            }
        }
        None
    }

    fn build(&self, root_split: &[Block]) -> Result<PartitioningTree> {
        let mut edges = Vec::new();
        let mut labels = BTreeMap::new();
        let mut next = 1usize;
        let mut stack: Vec<(usize, Block)> = root_split.iter().map(|b| (0usize, *b)).collect();
        while let Some((parent, y)) = stack.pop() {
            let id = next;
            next += 1;
            edges.push((parent, id));
            match self.memo.get(&y.mask()).and_then(Clone::clone) {
                Some(Plan::Leaf) => {
                    labels.insert(id, y);
                }
                Some(Plan::Split(parts)) => {
                    for p in parts {
                        stack.push((id, p));
                    }
                }
                None => {
                    return Err(Error::InvalidTree(format!(
                        "no plan recorded for block {y}"
                    )))
                }
            }
        }
        PartitioningTree::new(next, &edges, labels)
    }
}

/// Search for a partitioning tree whose node partitions all satisfy the
/// predicate and whose displayed partition is small. Degenerate trees (a
/// single leaf or a single edge) qualify only when their displayed
/// partition itself satisfies the predicate, matching the closure's
/// treatment of partitions with at most two parts.
pub fn find_compatible_tree(
    pred: &dyn Fn(&Partition) -> bool,
    ground: &GroundSet,
    leaves: &SmallSetSystem,
    caps: &Caps,
) -> Result<Option<PartitioningTree>> {
    if ground.size() > caps.search {
        return Err(Error::CapExceeded {
            what: "tree search",
            size: ground.size(),
            cap: caps.search,
        });
    }
    let full = ground.full();

    let trivial = Partition::trivial(ground);
    if leaves.is_small(full) && pred(&trivial) {
        return Ok(Some(PartitioningTree::single_leaf(ground)));
    }
    let mut a_mask = 1u64;
    while a_mask < full.mask() {
        let co = full.mask() & !a_mask;
        if a_mask < co {
            let a = Block::from_mask(a_mask);
            let b = Block::from_mask(co);
            if leaves.is_small(a) && leaves.is_small(b) {
                let p = Partition::from_disjoint_blocks(vec![a, b]);
                if pred(&p) {
                    return Ok(Some(PartitioningTree::single_edge(ground, a)?));
                }
            }
        }
        a_mask += 1;
    }

    let mut search = TreeSearch {
        pred,
        ground_mask: full.mask(),
        leaves,
        memo: HashMap::new(),
    };
    for split in partitions_of_block(full, 3, usize::MAX) {
        let node = Partition::from_disjoint_blocks(split.clone());
        if !pred(&node) {
            continue;
        }
        if split
            .iter()
            .all(|b| search.decomposable(b.mask()).is_some())
        {
            return Ok(Some(search.build(&split)?));
        }
    }
    Ok(None)
}

/// The least k at which a compatible tree with singleton leaves exists.
pub fn compute_width(g: &Graph, param: WidthParam, caps: &Caps) -> Result<u32> {
    let psi = param.partition_function(g, caps)?;
    let ground = psi.ground().clone();
    let leaves = SmallSetSystem::singletons_and_empty(&ground);
    let bound = (g.vertex_count() + ground.size() + 2) as u32;
    for k in 0..=bound {
        let level = param.level_set(psi.as_ref(), k);
        let pred = |p: &Partition| level.contains(p);
        if find_compatible_tree(&pred, &ground, &leaves, caps)?.is_some() {
            return Ok(k);
        }
    }
    Err(Error::Certification(format!(
        "no compatible tree for {param} up to k = {bound}"
    )))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertKind {
    Tree,
    Bramble,
}

/// One side of the duality at threshold k: a compatible tree when the
/// width is at most k, otherwise a big bramble over the level set.
#[derive(Clone, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertKind,
    pub parameter: WidthParam,
    pub k: u32,
    pub graph_sha256: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tree: Option<PartitioningTree>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bramble: Option<UpFamily>,
}

pub fn certify(g: &Graph, param: WidthParam, k: u32, caps: &Caps) -> Result<Certificate> {
    let psi = param.partition_function(g, caps)?;
    let ground = psi.ground().clone();
    let leaves = SmallSetSystem::singletons_and_empty(&ground);
    let level = param.level_set(psi.as_ref(), k);
    let pred = |p: &Partition| level.contains(p);
    let base = Certificate {
        kind: CertKind::Tree,
        parameter: param,
        k,
        graph_sha256: g.sha256_hex(),
        tree: None,
        bramble: None,
    };
    if let Some(tree) = find_compatible_tree(&pred, &ground, &leaves, caps)? {
        return Ok(Certificate {
            tree: Some(tree),
            ..base
        });
    }
    let members = level.members(caps)?;
    let Some(outcome) = construct_big_bramble(&members, &leaves, &ground) else {
        return Err(Error::Certification(
            "level set has a small partition but no compatible tree was found".into(),
        ));
    };
    let family = if outcome.verified {
        Some(outcome.family)
    } else {
        find_big_bramble(&members, &leaves, &ground, caps)?
    };
    match family {
        Some(family) => Ok(Certificate {
            kind: CertKind::Bramble,
            bramble: Some(family),
            ..base
        }),
        None => Err(Error::Certification(
            "no compatible tree and no big bramble over the level set".into(),
        )),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verification {
    pub ok: bool,
    pub reason: Option<String>,
}

impl Verification {
    fn ok() -> Verification {
        Verification {
            ok: true,
            reason: None,
        }
    }

    fn fail(reason: &str) -> Verification {
        Verification {
            ok: false,
            reason: Some(reason.to_string()),
        }
    }
}

/// Re-derive a certificate's claim from the definitions. Returns an error
/// only when the instance exceeds the configured caps; everything else is
/// a verdict with a reason code.
pub fn verify_certificate(cert: &Certificate, g: &Graph, caps: &Caps) -> Result<Verification> {
    if cert.graph_sha256 != g.sha256_hex() {
        return Ok(Verification::fail("graph-hash-mismatch"));
    }
    let psi = cert.parameter.partition_function(g, caps)?;
    let ground = psi.ground().clone();
    let leaves = SmallSetSystem::singletons_and_empty(&ground);
    let level = cert.parameter.level_set(psi.as_ref(), cert.k);
    match cert.kind {
        CertKind::Tree => {
            let Some(tree) = &cert.tree else {
                return Ok(Verification::fail("missing-tree-payload"));
            };
            if cert.bramble.is_some() {
                return Ok(Verification::fail("ambiguous-payload"));
            }
            if tree.ground_size() != ground.size() {
                return Ok(Verification::fail("tree-ground-mismatch"));
            }
            let display = tree.displayed_partition();
            if !display.blocks().iter().all(|b| leaves.is_small(*b)) {
                return Ok(Verification::fail("leaf-not-small"));
            }
            match tree.node_partitions() {
                Ok(parts) => {
                    if parts.iter().any(|p| !level.contains(p)) {
                        return Ok(Verification::fail("node-partition-above-threshold"));
                    }
                }
                Err(Error::NoInternalNode) => {
                    if !level.contains(&display) {
                        return Ok(Verification::fail(
                            "degenerate-tree-display-not-in-level-set",
                        ));
                    }
                }
                Err(e) => return Err(e),
            }
            Ok(Verification::ok())
        }
        CertKind::Bramble => {
            let Some(family) = &cert.bramble else {
                return Ok(Verification::fail("missing-bramble-payload"));
            };
            if cert.tree.is_some() {
                return Ok(Verification::fail("ambiguous-payload"));
            }
            let members = level.members(caps)?;
            if is_big_bramble(family, &members, &leaves) {
                return Ok(Verification::ok());
            }
            if family.minimal().iter().any(|m| leaves.is_small(*m)) {
                return Ok(Verification::fail("bramble-member-small"));
            }
            if !is_bramble(family, &[]) {
                return Ok(Verification::fail("bramble-not-pairwise-intersecting"));
            }
            Ok(Verification::fail("bramble-misses-a-partition"))
        }
    }
}

/// Advisory notes about inputs the width definitions treat degenerately.
pub fn input_warnings(g: &Graph, param: WidthParam) -> Vec<String> {
    let mut warnings = Vec::new();
    if param == WidthParam::Treewidth && g.is_union_of_stars() {
        warnings.push(
            "the graph is a union of stars; the border-based treewidth correspondence \
             degenerates on such graphs"
                .to_string(),
        );
    }
    if !g.is_connected() {
        warnings.push("the graph is disconnected; widths follow the bare definitions".to_string());
    }
    warnings
}
