//! Ground sets and element blocks.
//!
//! A block is a subset of the ground set stored as a 64-bit mask, so every
//! set operation is a couple of machine instructions. The canonical order on
//! blocks compares the sorted element sequences lexicographically; families
//! and enumeration streams rely on it for determinism.

use std::cmp::Ordering;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::config::Caps;
use crate::error::{Error, Result};

/// Hard architectural bound on the ground set; masks are 64 bits wide.
pub const MAX_GROUND: usize = 64;

/// The finite set `E` that everything else partitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundSet {
    size: usize,
    labels: Option<Vec<String>>,
}

impl GroundSet {
    /// A ground set of `size` unnamed elements. Sizes below two are rejected,
    /// as is anything beyond the configured cap.
    pub fn new(size: usize, caps: &Caps) -> Result<Self> {
        let cap = caps.ground.min(MAX_GROUND);
        if size < 2 || size > cap {
            return Err(Error::GroundSize { size, cap });
        }
        Ok(GroundSet { size, labels: None })
    }

    /// Attach external names to the elements (for display only).
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return Err(Error::Labels(format!(
                "expected {} labels, got {}",
                self.size,
                labels.len()
            )));
        }
        for (i, a) in labels.iter().enumerate() {
            if labels[..i].contains(a) {
                return Err(Error::Labels(format!("duplicate label {a:?}")));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Name of one element: its label if present, its index otherwise.
    pub fn name(&self, index: usize) -> String {
        match &self.labels {
            Some(ls) => ls[index].clone(),
            None => index.to_string(),
        }
    }

    /// The block containing every element.
    pub fn full(&self) -> Block {
        Block::full(self.size)
    }

    /// Check that a block only uses elements of this ground set.
    pub fn admits(&self, block: Block) -> Result<()> {
        if block.mask() & !self.full().mask() != 0 {
            let index = (block.mask() & !self.full().mask()).trailing_zeros() as usize;
            return Err(Error::IndexOutOfRange {
                index,
                size: self.size,
            });
        }
        Ok(())
    }
}

/// A subset of the ground set. The empty block is a legal value; families
/// and partitions reject it at insertion.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Block(u64);

impl Block {
    pub const EMPTY: Block = Block(0);

    pub fn from_mask(mask: u64) -> Self {
        Block(mask)
    }

    pub fn full(size: usize) -> Self {
        debug_assert!(size <= MAX_GROUND);
        if size == MAX_GROUND {
            Block(u64::MAX)
        } else {
            Block((1u64 << size) - 1)
        }
    }

    pub fn singleton(index: usize) -> Self {
        Block(1u64 << index)
    }

    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &i in indices {
            if i >= MAX_GROUND {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    size: MAX_GROUND,
                });
            }
            mask |= 1u64 << i;
        }
        Ok(Block(mask))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, index: usize) -> bool {
        index < MAX_GROUND && self.0 & (1u64 << index) != 0
    }

    pub fn insert(self, index: usize) -> Self {
        Block(self.0 | (1u64 << index))
    }

    pub fn union(self, other: Block) -> Self {
        Block(self.0 | other.0)
    }

    pub fn intersect(self, other: Block) -> Self {
        Block(self.0 & other.0)
    }

    pub fn minus(self, other: Block) -> Self {
        Block(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Block) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Block) -> bool {
        self.0 & other.0 != 0
    }

    /// Complement inside the given ground set.
    pub fn complement_in(self, ground: &GroundSet) -> Block {
        Block(!self.0 & ground.full().mask())
    }

    pub fn min_element(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> BlockIter {
        BlockIter(self.0)
    }

    pub fn indices(self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Iterates the elements of a block in increasing order.
pub struct BlockIter(u64);

impl Iterator for BlockIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

impl Ord for Block {
    /// Lexicographic order on the sorted element sequences, so `{0} < {0,1} <
    /// {0,1,2} < {0,2} < {1}`. This is the canonical block order used by
    /// every family and enumeration stream.
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0 == other.0 {
            return Ordering::Equal;
        }
        let mut a = self.iter();
        let mut b = other.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) => {
                    if x != y {
                        return x.cmp(&y);
                    }
                }
            }
        }
    }
}

impl PartialOrd for Block {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Block {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for i in self.iter() {
            seq.serialize_element(&i)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Block {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let indices = Vec::<usize>::deserialize(deserializer)?;
        Block::from_indices(&indices).map_err(serde::de::Error::custom)
    }
}
