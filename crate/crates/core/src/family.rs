//! Families of blocks, partitions, and pointed partitions.
//!
//! A partition of `E` is a family of pairwise disjoint nonempty blocks whose
//! union is `E`. A pointed partition distinguishes one block; writing
//! `(alpha | A)` for a pointed partition with distinguished block `A`, the
//! merge of `(alpha | A)` and `(A^c | beta)` is `(alpha | beta)` — the blocks
//! of both sides minus the two complementary distinguished blocks.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ground::{Block, GroundSet};

/// A canonical family of distinct nonempty blocks, kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SetFamily {
    blocks: Vec<Block>,
}

impl SetFamily {
    pub fn new(blocks: Vec<Block>) -> Result<Self> {
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::EmptyBlock);
            }
        }
        let mut blocks = blocks;
        blocks.sort();
        blocks.dedup();
        Ok(SetFamily { blocks })
    }

    pub fn empty() -> Self {
        SetFamily { blocks: Vec::new() }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn contains(&self, block: Block) -> bool {
        self.blocks.binary_search(&block).is_ok()
    }

    /// Union of all members.
    pub fn cover(&self) -> Block {
        self.blocks
            .iter()
            .fold(Block::EMPTY, |acc, b| acc.union(*b))
    }

    /// Elements that belong to at least two members.
    pub fn overlap(&self) -> Block {
        let mut once = Block::EMPTY;
        let mut twice = Block::EMPTY;
        for b in &self.blocks {
            twice = twice.union(once.intersect(*b));
            once = once.union(*b);
        }
        twice
    }

    /// Remove the elements of `r` from every member, dropping blocks that
    /// become empty. Duplicates created by the removal collapse.
    pub fn remove_from(&self, r: Block) -> SetFamily {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.minus(r))
            .filter(|b| !b.is_empty())
            .collect();
        SetFamily::new(blocks).expect("nonempty blocks")
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Block> {
        self.blocks.iter()
    }
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A partition of the ground set: disjoint nonempty blocks covering `E`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition {
    family: SetFamily,
}

impl Partition {
    /// Validates disjointness and coverage against the ground set.
    pub fn new(ground: &GroundSet, blocks: Vec<Block>) -> Result<Self> {
        let family = SetFamily::new(blocks)?;
        let mut seen = Block::EMPTY;
        for b in family.iter() {
            ground.admits(*b)?;
            if seen.intersects(*b) {
                return Err(Error::NotDisjoint);
            }
            seen = seen.union(*b);
        }
        if seen != ground.full() {
            return Err(Error::NotCovering);
        }
        Ok(Partition { family })
    }

    /// The one-block partition `{E}`.
    pub fn trivial(ground: &GroundSet) -> Self {
        Partition {
            family: SetFamily {
                blocks: vec![ground.full()],
            },
        }
    }

    /// Build from blocks already known to be disjoint, nonempty, covering.
    pub(crate) fn from_disjoint_blocks(mut blocks: Vec<Block>) -> Self {
        blocks.sort();
        debug_assert!(blocks.iter().all(|b| !b.is_empty()));
        debug_assert!({
            let mut seen = Block::EMPTY;
            blocks.iter().all(|b| {
                let ok = !seen.intersects(*b);
                seen = seen.union(*b);
                ok
            })
        });
        Partition {
            family: SetFamily { blocks },
        }
    }

    pub fn blocks(&self) -> &[Block] {
        self.family.blocks()
    }

    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_family(&self) -> &SetFamily {
        &self.family
    }

    pub fn contains(&self, block: Block) -> bool {
        self.family.contains(block)
    }

    pub fn ground_mask(&self) -> Block {
        self.family.cover()
    }

    /// The block holding a given element.
    pub fn block_of(&self, index: usize) -> Block {
        *self
            .blocks()
            .iter()
            .find(|b| b.contains(index))
            .expect("partition covers the ground set")
    }

    /// Point this partition at one of its blocks.
    pub fn pointed_at(&self, block: Block) -> Result<PointedPartition> {
        match self.blocks().binary_search(&block) {
            Ok(i) => Ok(PointedPartition {
                partition: self.clone(),
                pointed: i,
            }),
            Err(_) => Err(Error::UnknownMember),
        }
    }

    /// All pointings of this partition, one per block.
    pub fn pointings(&self) -> impl Iterator<Item = PointedPartition> + '_ {
        (0..self.len()).map(move |i| PointedPartition {
            partition: self.clone(),
            pointed: i,
        })
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let family = SetFamily::deserialize(deserializer)?;
        // Coverage cannot be checked without the ground set; disjointness can.
        let mut seen = Block::EMPTY;
        for b in family.iter() {
            if seen.intersects(*b) {
                return Err(D::Error::custom("blocks are not disjoint"));
            }
            seen = seen.union(*b);
        }
        Ok(Partition { family })
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)
    }
}

/// A partition with one distinguished block, written `(alpha | A)` where `A`
/// is the distinguished block and `alpha` the remaining blocks.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointedPartition {
    partition: Partition,
    pointed: usize,
}

impl PointedPartition {
    pub fn new(ground: &GroundSet, blocks: Vec<Block>, pointed_block: Block) -> Result<Self> {
        Partition::new(ground, blocks)?.pointed_at(pointed_block)
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    /// The distinguished block `A`.
    pub fn pointed_block(&self) -> Block {
        self.partition.blocks()[self.pointed]
    }

    /// The non-distinguished blocks `alpha`, in canonical order.
    pub fn side_blocks(&self) -> Vec<Block> {
        self.partition
            .blocks()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != self.pointed)
            .map(|(_, b)| *b)
            .collect()
    }

    pub fn len(&self) -> usize {
        self.partition.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Absorb `f` into the distinguished block: `(alpha ∖ f | A ∪ f)`.
    /// `f` must avoid `A`; elements of `f` leave the side blocks (empty
    /// remainders disappear) and join `A`.
    pub fn absorb(&self, f: Block) -> Result<Partition> {
        if f.intersects(self.pointed_block()) {
            return Err(Error::NotDisjoint);
        }
        let mut blocks = vec![self.pointed_block().union(f)];
        for b in self.side_blocks() {
            let rest = b.minus(f);
            if !rest.is_empty() {
                blocks.push(rest);
            }
        }
        Ok(Partition::from_disjoint_blocks(blocks))
    }

    /// Two pointed partitions are mergeable when their distinguished blocks
    /// are complements of each other.
    pub fn merge(&self, other: &PointedPartition, ground: &GroundSet) -> Result<Partition> {
        if self.pointed_block().complement_in(ground) != other.pointed_block() {
            return Err(Error::NotComplementary);
        }
        let mut blocks = self.side_blocks();
        blocks.extend(other.side_blocks());
        Partition::new(ground, blocks)
    }
}

impl fmt::Debug for PointedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, b) in self.side_blocks().iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, " | {})", self.pointed_block())
    }
}

impl fmt::Display for PointedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Disjoint pointed pair: `(alpha | A)` and `(B | beta)` with `A ∩ B = ∅`.
pub fn is_disjoint_pointed_pair(p: &PointedPartition, q: &PointedPartition) -> bool {
    !p.pointed_block().intersects(q.pointed_block())
}

/// The covering `(alpha | beta)` of a disjoint pointed pair: the family of
/// all non-distinguished blocks of both sides. `A ∩ B = ∅` forces `alpha` to
/// cover `B` and `beta` to cover `A`, so the covering covers `E`; its blocks
/// may overlap, so it is a family, not a partition.
pub fn covering_family(p: &PointedPartition, q: &PointedPartition) -> Result<SetFamily> {
    if !is_disjoint_pointed_pair(p, q) {
        return Err(Error::NotDisjointPointed);
    }
    let mut blocks = p.side_blocks();
    blocks.extend(q.side_blocks());
    SetFamily::new(blocks)
}
