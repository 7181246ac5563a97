//! The finer and strongly-finer relations on set families.
//!
//! `A` is finer than `B` when `A` can be produced from `B` by splitting
//! blocks into partitions and deleting elements. Deciding this does not need
//! the rewrite sequences: it is equivalent to an assignment `g` from the
//! blocks of `A` to the blocks of `B` with `X ⊆ g(X)` and, within each fiber
//! of `g`, pairwise disjoint preimages (pieces split off one block stay
//! disjoint, deletions keep them so). Strongly finer forbids splits, which
//! makes the assignment injective — a bipartite matching under containment.

use crate::family::SetFamily;
use crate::ground::Block;

/// A witness assignment: pairs each block of `A` with the block of `B` it was
/// carved from, in `A`'s canonical order.
pub type Assignment = Vec<(Block, Block)>;

/// Decide whether `a` is finer than `b`; on success return the assignment.
pub fn finer_witness(a: &SetFamily, b: &SetFamily) -> Option<Assignment> {
    let xs = a.blocks();
    let ys = b.blocks();
    // used[j] = union of the A-blocks already assigned to ys[j].
    let mut used = vec![Block::EMPTY; ys.len()];
    let mut chosen = vec![usize::MAX; xs.len()];

    fn assign(
        i: usize,
        xs: &[Block],
        ys: &[Block],
        used: &mut [Block],
        chosen: &mut [usize],
    ) -> bool {
        if i == xs.len() {
            return true;
        }
        let x = xs[i];
        for (j, &y) in ys.iter().enumerate() {
            if x.is_subset_of(y) && !x.intersects(used[j]) {
                used[j] = used[j].union(x);
                chosen[i] = j;
                if assign(i + 1, xs, ys, used, chosen) {
                    return true;
                }
                used[j] = used[j].minus(x);
            }
        }
        false
    }

    if assign(0, xs, ys, &mut used, &mut chosen) {
        Some(xs.iter().zip(&chosen).map(|(x, &j)| (*x, ys[j])).collect())
    } else {
        None
    }
}

pub fn is_finer(a: &SetFamily, b: &SetFamily) -> bool {
    finer_witness(a, b).is_some()
}

/// Decide whether `a` is strongly finer than `b` (deletions only): an
/// injective assignment, i.e. a matching saturating the blocks of `a`.
pub fn strongly_finer_witness(a: &SetFamily, b: &SetFamily) -> Option<Assignment> {
    let xs = a.blocks();
    let ys = b.blocks();
    if xs.len() > ys.len() {
        return None;
    }
    // Kuhn's augmenting paths; the graphs here are tiny.
    let mut matched_y = vec![usize::MAX; ys.len()];

    fn augment(
        i: usize,
        xs: &[Block],
        ys: &[Block],
        matched_y: &mut [usize],
        visited: &mut [bool],
    ) -> bool {
        for (j, &y) in ys.iter().enumerate() {
            if visited[j] || !xs[i].is_subset_of(y) {
                continue;
            }
            visited[j] = true;
            if matched_y[j] == usize::MAX || augment(matched_y[j], xs, ys, matched_y, visited) {
                matched_y[j] = i;
                return true;
            }
        }
        false
    }

    for i in 0..xs.len() {
        let mut visited = vec![false; ys.len()];
        if !augment(i, xs, ys, &mut matched_y, &mut visited) {
            return None;
        }
    }

    let mut pairs: Assignment = matched_y
        .iter()
        .enumerate()
        .filter(|(_, &i)| i != usize::MAX)
        .map(|(j, &i)| (xs[i], ys[j]))
        .collect();
    pairs.sort();
    Some(pairs)
}

pub fn is_strongly_finer(a: &SetFamily, b: &SetFamily) -> bool {
    strongly_finer_witness(a, b).is_some()
}

/// Coordinate-wise wrapper: `as_` finer than `bs` pairwise. Sequences of
/// unequal length are never coordinate-wise finer.
pub fn is_finer_coordinatewise(as_: &[SetFamily], bs: &[SetFamily]) -> bool {
    as_.len() == bs.len() && as_.iter().zip(bs).all(|(a, b)| is_finer(a, b))
}
