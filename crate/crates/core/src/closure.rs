//! The merge closure P↑ with derivation witnesses.
//!
//! P↑ is the least superset of P closed under merging: whenever (α|A) and
//! (A^c|β) are pointed forms of members, (α|β) is a member. Merging with a
//! two-block member reproduces the other operand, so every genuinely new
//! member arises from two members with ≥ 3 blocks and itself has ≥ 4; this
//! is why one- and two-block partitions are in P↑ exactly when they are in P,
//! and why witness trees of non-axioms always have ≥ 2 internal nodes.

use std::collections::HashMap;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::family::{Partition, PointedPartition};
use crate::ground::{Block, GroundSet};
use crate::tree::PartitioningTree;

/// How a non-axiom member was first obtained: members `left` and `right`
/// merged on the complementary blocks `left_pointed` / `right_pointed`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub left: usize,
    pub left_pointed: Block,
    pub right: usize,
    pub right_pointed: Block,
}

#[derive(Clone, Debug)]
pub struct ClosureTable {
    ground: GroundSet,
    members: Vec<Partition>,
    index: HashMap<Partition, usize>,
    derivations: Vec<Option<Derivation>>,
    axiom_count: usize,
}

/// One unmerge step: `head` is an axiom `(γ|C)` with ≥ 3 blocks; `residual`
/// is the member `(C^c|μ|A)` pointed at `C^c`, so that merging the two
/// gives back the decomposed member. Axioms decompose as themselves with no
/// residual.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub head: PointedPartition,
    pub residual: Option<PointedPartition>,
}

impl ClosureTable {
    /// Compute P↑ by fixpoint. Axioms are canonicalized (sorted, deduped);
    /// each pair of members is merged on every complementary pointed pair;
    /// the first derivation found in processing order is kept.
    pub fn closure(ground: &GroundSet, axioms: &[Partition], caps: &Caps) -> Result<Self> {
        if ground.size() > caps.closure {
            return Err(Error::CapExceeded {
                what: "closure",
                size: ground.size(),
                cap: caps.closure,
            });
        }
        for p in axioms {
            if p.ground_mask() != ground.full() {
                return Err(Error::NotCovering);
            }
        }
        let mut sorted = axioms.to_vec();
        sorted.sort();
        sorted.dedup();

        let mut table = ClosureTable {
            ground: ground.clone(),
            members: Vec::new(),
            index: HashMap::new(),
            derivations: Vec::new(),
            axiom_count: sorted.len(),
        };
        for p in sorted {
            table.insert(p, None);
        }

        // Every unordered member pair is examined once: when the later of
        // the two (by index) is processed, against all j ≤ i.
        let mut i = 0;
        while i < table.members.len() {
            for a in table.members[i].blocks().to_vec() {
                let ac = a.complement_in(ground);
                for j in 0..=i {
                    if !table.members[j].contains(ac) {
                        continue;
                    }
                    let mut blocks: Vec<Block> = table.members[i]
                        .blocks()
                        .iter()
                        .filter(|b| **b != a)
                        .copied()
                        .collect();
                    blocks.extend(
                        table.members[j]
                            .blocks()
                            .iter()
                            .filter(|b| **b != ac)
                            .copied(),
                    );
                    let merged = Partition::new(ground, blocks)?;
                    if !table.index.contains_key(&merged) {
                        table.insert(
                            merged,
                            Some(Derivation {
                                left: i,
                                left_pointed: a,
                                right: j,
                                right_pointed: ac,
                            }),
                        );
                    }
                }
            }
            i += 1;
        }
        Ok(table)
    }

    fn insert(&mut self, p: Partition, d: Option<Derivation>) {
        let idx = self.members.len();
        self.index.insert(p.clone(), idx);
        self.members.push(p);
        self.derivations.push(d);
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// Members in table order: axioms (canonically sorted) first, then
    /// derived members in discovery order.
    pub fn members(&self) -> &[Partition] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn axioms(&self) -> &[Partition] {
        &self.members[..self.axiom_count]
    }

    pub fn contains(&self, p: &Partition) -> bool {
        self.index.contains_key(p)
    }

    pub fn member_index(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn is_axiom(&self, p: &Partition) -> bool {
        self.member_index(p).is_some_and(|i| i < self.axiom_count)
    }

    pub fn derivation(&self, idx: usize) -> Option<&Derivation> {
        self.derivations[idx].as_ref()
    }

    /// Replay derivations into a partitioning tree, compatible with the
    /// axioms, that displays `p`. Axioms with ≥ 3 blocks become stars;
    /// one- and two-block members (always axioms) become the degenerate
    /// trees; non-axioms merge their operands' witnesses.
    pub fn witness_tree(&self, p: &Partition) -> Result<PartitioningTree> {
        let idx = self.member_index(p).ok_or(Error::UnknownMember)?;
        self.witness_by_index(idx)
    }

    fn witness_by_index(&self, idx: usize) -> Result<PartitioningTree> {
        match &self.derivations[idx] {
            None => {
                let p = &self.members[idx];
                match p.len() {
                    1 => Ok(PartitioningTree::single_leaf(&self.ground)),
                    2 => PartitioningTree::single_edge(&self.ground, p.blocks()[0]),
                    _ => PartitioningTree::star(p),
                }
            }
            Some(d) => {
                let left = self.witness_by_index(d.left)?;
                let right = self.witness_by_index(d.right)?;
                left.merge_with(d.left_pointed, &right)
            }
        }
    }

    /// Split `(α|A)` into an axiom `(γ|C)` with ≥ 3 blocks and the
    /// residual member `(C^c|μ|A)` with fewer blocks, found by replaying the
    /// witness tree and taking the first internal node that is adjacent to
    /// exactly one internal node and not adjacent to the leaf `A`.
    pub fn decompose(&self, x: &PointedPartition) -> Result<Decomposition> {
        let idx = self
            .member_index(x.partition())
            .ok_or(Error::UnknownMember)?;
        if idx < self.axiom_count {
            return Ok(Decomposition {
                head: x.clone(),
                residual: None,
            });
        }

        let tree = self.witness_by_index(idx)?;
        let a = x.pointed_block();
        let leaf_a = *tree
            .leaf_labels()
            .iter()
            .find(|(_, b)| **b == a)
            .map(|(v, _)| v)
            .expect("pointed block is a leaf label");
        let internal = tree.internal_nodes();
        let v = internal
            .iter()
            .copied()
            .find(|&v| {
                let nb_internal = tree
                    .neighbours(v)
                    .iter()
                    .filter(|&&u| internal.binary_search(&u).is_ok())
                    .count();
                nb_internal == 1 && !tree.neighbours(v).contains(&leaf_a)
            })
            .expect("a non-axiom witness tree has a qualifying internal node");

        let head_partition = tree.node_partition(v);
        let gamma: Vec<Block> = tree
            .neighbours(v)
            .iter()
            .filter_map(|u| tree.leaf_labels().get(u).copied())
            .collect();
        let c_complement = gamma.iter().fold(Block::EMPTY, |acc, b| acc.union(*b));
        let c = c_complement.complement_in(&self.ground);
        let head = head_partition.pointed_at(c)?;

        let mut residual_blocks: Vec<Block> = x
            .partition()
            .blocks()
            .iter()
            .filter(|b| !gamma.contains(b))
            .copied()
            .collect();
        residual_blocks.push(c_complement);
        let residual = Partition::new(&self.ground, residual_blocks)?;
        debug_assert!(self.contains(&residual));
        Ok(Decomposition {
            head,
            residual: Some(residual.pointed_at(c_complement)?),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::all_partitions;

    fn g(n: usize) -> GroundSet {
        GroundSet::new(n, &Caps::default()).unwrap()
    }

    fn b(xs: &[usize]) -> Block {
        Block::from_indices(xs).unwrap()
    }

    fn part(ground: &GroundSet, blocks: &[&[usize]]) -> Partition {
        Partition::new(ground, blocks.iter().map(|xs| b(xs)).collect()).unwrap()
    }

    #[test]
    fn closure_of_two_stars_adds_the_singleton_partition() {
        let g4 = g(4);
        let p1 = part(&g4, &[&[0], &[1], &[2, 3]]);
        let p2 = part(&g4, &[&[0, 1], &[2], &[3]]);
        let table =
            ClosureTable::closure(&g4, &[p1.clone(), p2.clone()], &Caps::default()).unwrap();
        let singles = part(&g4, &[&[0], &[1], &[2], &[3]]);
        assert_eq!(table.len(), 3);
        assert!(table.contains(&singles));
        assert!(table.is_axiom(&p1));
        assert!(table.is_axiom(&p2));
        assert!(!table.is_axiom(&singles));
    }

    #[test]
    fn closure_of_empty_and_trivial_sets() {
        let g3 = g(3);
        let empty = ClosureTable::closure(&g3, &[], &Caps::default()).unwrap();
        assert!(empty.is_empty());

        let e_only = part(&g3, &[&[0, 1, 2]]);
        let t =
            ClosureTable::closure(&g3, std::slice::from_ref(&e_only), &Caps::default()).unwrap();
        assert_eq!(t.members(), &[e_only]);
    }

    #[test]
    fn closure_cap() {
        let caps = Caps {
            closure: 3,
            ..Caps::default()
        };
        let g4 = g(4);
        assert!(ClosureTable::closure(&g4, &[], &caps).is_err());
    }

    #[test]
    fn closure_is_order_independent() {
        let g4 = g(4);
        let ps = all_partitions(&g4, &Caps::default()).unwrap();
        let axioms: Vec<Partition> = ps.iter().filter(|p| p.len() == 3).cloned().collect();
        let t1 = ClosureTable::closure(&g4, &axioms, &Caps::default()).unwrap();
        let rev: Vec<Partition> = axioms.iter().rev().cloned().collect();
        let t2 = ClosureTable::closure(&g4, &rev, &Caps::default()).unwrap();
        let mut m1 = t1.members().to_vec();
        let mut m2 = t2.members().to_vec();
        m1.sort();
        m2.sort();
        assert_eq!(m1, m2);
    }

    #[test]
    fn witness_trees_display_their_member_and_are_compatible() {
        let g4 = g(4);
        let p1 = part(&g4, &[&[0], &[1], &[2, 3]]);
        let p2 = part(&g4, &[&[0, 1], &[2], &[3]]);
        let table =
            ClosureTable::closure(&g4, &[p1.clone(), p2.clone()], &Caps::default()).unwrap();
        for p in table.members() {
            let t = table.witness_tree(p).unwrap();
            assert_eq!(t.displayed_partition(), *p);
            assert!(t.is_compatible(&|q| table.is_axiom(q)));
        }
        assert!(matches!(
            table.witness_tree(&part(&g4, &[&[0, 2], &[1], &[3]])),
            Err(Error::UnknownMember)
        ));
    }

    #[test]
    fn decompose_peels_off_one_axiom() {
        let g4 = g(4);
        let p1 = part(&g4, &[&[0], &[1], &[2, 3]]);
        let p2 = part(&g4, &[&[0, 1], &[2], &[3]]);
        let table =
            ClosureTable::closure(&g4, &[p1.clone(), p2.clone()], &Caps::default()).unwrap();
        let singles = part(&g4, &[&[0], &[1], &[2], &[3]]);

        for pointed in singles.pointings() {
            let d = table.decompose(&pointed).unwrap();
            let head = d.head.clone();
            assert!(table.is_axiom(head.partition()));
            assert!(head.len() >= 3);
            let residual = d.residual.expect("non-axiom input");
            assert!(table.contains(residual.partition()));
            assert!(residual.len() < singles.len());
            // (α|A) = (γ|μ|A): merging head and residual restores the input.
            let merged = head.merge(&residual, &g4).unwrap();
            assert_eq!(merged, singles);
            // A sits strictly inside C (the decomposing node avoids leaf A).
            assert!(pointed.pointed_block().is_subset_of(head.pointed_block()));
            assert_ne!(pointed.pointed_block(), head.pointed_block());
        }

        // Axioms decompose as themselves.
        let ax = p1.pointed_at(b(&[2, 3])).unwrap();
        let d = table.decompose(&ax).unwrap();
        assert!(d.residual.is_none());
        assert_eq!(d.head, ax);
    }
}
