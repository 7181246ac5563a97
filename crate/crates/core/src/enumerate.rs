//! Exhaustive enumeration streams: partitions, submasks, antichains.
//!
//! Everything exponential funnels through here so the caps are enforced in
//! one place and every sweep runs in the same deterministic order.

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::family::{Partition, SetFamily};
use crate::ground::{Block, GroundSet};

/// Iterates the partitions of a fixed block via restricted growth strings.
/// Yields each partition exactly once; blocks come out canonically sorted.
pub struct PartitionIter {
    elements: Vec<usize>,
    rgs: Vec<usize>,
    maxes: Vec<usize>,
    started: bool,
    done: bool,
    min_blocks: usize,
    max_blocks: usize,
}

impl PartitionIter {
    fn new(block: Block, min_blocks: usize, max_blocks: usize) -> Self {
        let elements = block.indices();
        let m = elements.len();
        PartitionIter {
            elements,
            rgs: vec![0; m],
            maxes: vec![0; m],
            started: false,
            done: m == 0,
            min_blocks,
            max_blocks,
        }
    }

    fn current(&self) -> Vec<Block> {
        let nblocks = self.maxes.last().map_or(0, |m| m + 1);
        let mut blocks = vec![Block::EMPTY; nblocks];
        for (pos, &e) in self.elements.iter().enumerate() {
            blocks[self.rgs[pos]] = blocks[self.rgs[pos]].insert(e);
        }
        blocks.sort();
        blocks
    }

    fn advance(&mut self) -> bool {
        if !self.started {
            self.started = true;
            return true;
        }
        let m = self.rgs.len();
        for i in (1..m).rev() {
            if self.rgs[i] <= self.maxes[i - 1] {
                self.rgs[i] += 1;
                let top = self.maxes[i - 1].max(self.rgs[i]);
                self.maxes[i] = top;
                for j in i + 1..m {
                    self.rgs[j] = 0;
                    self.maxes[j] = top;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for PartitionIter {
    type Item = Vec<Block>;

    fn next(&mut self) -> Option<Vec<Block>> {
        if self.done {
            return None;
        }
        loop {
            if !self.advance() {
                self.done = true;
                return None;
            }
            let nblocks = self.maxes.last().map_or(0, |m| m + 1);
            if nblocks >= self.min_blocks && nblocks <= self.max_blocks {
                return Some(self.current());
            }
        }
    }
}

/// Partitions of the elements of `block` with block count in
/// `min_blocks..=max_blocks`. No cap check — internal workhorse.
pub fn partitions_of_block(block: Block, min_blocks: usize, max_blocks: usize) -> PartitionIter {
    PartitionIter::new(block, min_blocks, max_blocks)
}

/// Every partition of the ground set, optionally bounded in block count.
pub fn enumerate_partitions(
    ground: &GroundSet,
    caps: &Caps,
    max_blocks: Option<usize>,
) -> Result<impl Iterator<Item = Partition>> {
    if ground.size() > caps.enumeration {
        return Err(Error::CapExceeded {
            what: "partition enumeration",
            size: ground.size(),
            cap: caps.enumeration,
        });
    }
    let iter = PartitionIter::new(ground.full(), 1, max_blocks.unwrap_or(usize::MAX));
    Ok(iter.map(Partition::from_disjoint_blocks))
}

/// All partitions of the ground set, collected. Most exhaustive checkers
/// want the list more than the stream.
pub fn all_partitions(ground: &GroundSet, caps: &Caps) -> Result<Vec<Partition>> {
    Ok(enumerate_partitions(ground, caps, None)?.collect())
}

/// Iterates every submask of `mask`, the empty and full ones included,
/// in increasing numeric order.
pub fn submasks(mask: u64) -> Submasks {
    Submasks {
        mask,
        next: Some(0),
    }
}

pub struct Submasks {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Submasks {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        let succ = (cur.wrapping_sub(self.mask)) & self.mask;
        self.next = if succ == 0 { None } else { Some(succ) };
        Some(cur)
    }
}

/// All antichains of nonempty subsets of `base` (the empty antichain
/// included), as canonical families in a deterministic order.
pub fn antichains(base: Block) -> Vec<SetFamily> {
    let candidates: Vec<Block> = submasks(base.mask())
        .filter(|&m| m != 0)
        .map(Block::from_mask)
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<Block> = Vec::new();

    fn extend(
        start: usize,
        candidates: &[Block],
        chosen: &mut Vec<Block>,
        out: &mut Vec<SetFamily>,
    ) {
        out.push(SetFamily::new(chosen.clone()).expect("nonempty blocks"));
        for i in start..candidates.len() {
            let c = candidates[i];
            let comparable = chosen
                .iter()
                .any(|x| x.is_subset_of(c) || c.is_subset_of(*x));
            if !comparable {
                chosen.push(c);
                extend(i + 1, candidates, chosen, out);
                chosen.pop();
            }
        }
    }

    extend(0, &candidates, &mut chosen, &mut out);
    out.sort();
    out.dedup();
    out
}
