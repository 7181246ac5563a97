//! Downward-closed systems of small sets and upward-closed families.
//!
//! Both are stored by their defining antichain: a small-set system by its
//! maximal members (a set is small when it sits inside one), an upward
//! family by its minimal members (a set belongs when it contains one). The
//! empty block is a legal antichain element: maximal = {∅} is the system
//! whose only small set is ∅, and a system with no members at all makes
//! every set big, the empty set included.

use serde::{Deserialize, Serialize};

use crate::enumerate::antichains;
use crate::ground::{Block, GroundSet};

fn reduce_to_maximal(mut blocks: Vec<Block>) -> Vec<Block> {
    blocks.sort();
    blocks.dedup();
    let kept: Vec<Block> = blocks
        .iter()
        .filter(|b| {
            !blocks
                .iter()
                .any(|other| *other != **b && b.is_subset_of(*other))
        })
        .copied()
        .collect();
    kept
}

fn reduce_to_minimal(mut blocks: Vec<Block>) -> Vec<Block> {
    blocks.sort();
    blocks.dedup();
    let kept: Vec<Block> = blocks
        .iter()
        .filter(|b| {
            !blocks
                .iter()
                .any(|other| *other != **b && other.is_subset_of(**b))
        })
        .copied()
        .collect();
    kept
}

/// A set of small sets: downward closed, represented by its maximal members.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct SmallSetSystem {
    maximal: Vec<Block>,
}

impl SmallSetSystem {
    /// Any generating family works; it is reduced to the maximal antichain.
    pub fn new(members: Vec<Block>) -> Self {
        SmallSetSystem {
            maximal: reduce_to_maximal(members),
        }
    }

    /// The system with no small sets at all.
    pub fn nothing_small() -> Self {
        SmallSetSystem {
            maximal: Vec::new(),
        }
    }

    /// The classical leaf condition: the empty set and the singletons.
    pub fn singletons_and_empty(ground: &GroundSet) -> Self {
        SmallSetSystem {
            maximal: (0..ground.size()).map(Block::singleton).collect(),
        }
    }

    /// Everything is small.
    pub fn all_subsets(ground: &GroundSet) -> Self {
        SmallSetSystem {
            maximal: vec![ground.full()],
        }
    }

    pub fn maximal(&self) -> &[Block] {
        &self.maximal
    }

    pub fn is_small(&self, x: Block) -> bool {
        self.maximal.iter().any(|m| x.is_subset_of(*m))
    }

    pub fn is_big(&self, x: Block) -> bool {
        !self.is_small(x)
    }

    /// Minimal big sets: the minimal elements of the complement of the
    /// system; upward closed generators of "big".
    pub fn minimal_big_sets(&self, ground: &GroundSet) -> Vec<Block> {
        let full = ground.full().mask();
        let mut big = Vec::new();
        for mask in crate::enumerate::submasks(full) {
            let b = Block::from_mask(mask);
            if self.is_big(b)
                && b.iter().all(|i| {
                    let smaller = Block::from_mask(mask & !(1u64 << i));
                    self.is_small(smaller)
                })
            {
                big.push(b);
            }
        }
        big.sort();
        big
    }

    /// Every downward-closed system over the ground set, one per antichain
    /// of maximal members; the count is the Dedekind number of the size.
    pub fn all_systems(ground: &GroundSet) -> Vec<SmallSetSystem> {
        let mut out: Vec<SmallSetSystem> = antichains(ground.full())
            .into_iter()
            .map(|f| SmallSetSystem {
                maximal: f.blocks().to_vec(),
            })
            .collect();
        out.push(SmallSetSystem {
            maximal: vec![Block::EMPTY],
        });
        out.sort();
        out
    }
}

impl<'de> Deserialize<'de> for SmallSetSystem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(SmallSetSystem::new(Vec::<Block>::deserialize(d)?))
    }
}

/// An upward-closed family represented by its minimal members.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct UpFamily {
    minimal: Vec<Block>,
}

impl UpFamily {
    pub fn new(members: Vec<Block>) -> Self {
        UpFamily {
            minimal: reduce_to_minimal(members),
        }
    }

    pub fn empty() -> Self {
        UpFamily {
            minimal: Vec::new(),
        }
    }

    pub fn minimal(&self) -> &[Block] {
        &self.minimal
    }

    pub fn is_empty(&self) -> bool {
        self.minimal.is_empty()
    }

    pub fn contains(&self, x: Block) -> bool {
        self.minimal.iter().any(|m| m.is_subset_of(x))
    }

    /// Remove one minimal member from the family (not from the antichain:
    /// the sets strictly above it stay). The result is still upward closed;
    /// its new minimal members are the old ones plus the immediate
    /// supersets of `m` not already in the family.
    pub fn remove_minimal(&self, m: Block, ground: &GroundSet) -> UpFamily {
        debug_assert!(self.minimal.contains(&m));
        let mut candidates: Vec<Block> =
            self.minimal.iter().filter(|x| **x != m).copied().collect();
        let rest = candidates.clone();
        for i in m.complement_in(ground).iter() {
            let above = m.insert(i);
            if !rest.iter().any(|x| x.is_subset_of(above)) {
                candidates.push(above);
            }
        }
        UpFamily {
            minimal: reduce_to_minimal(candidates),
        }
    }
}

impl<'de> Deserialize<'de> for UpFamily {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(UpFamily::new(Vec::<Block>::deserialize(d)?))
    }
}
