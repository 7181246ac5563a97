//! Brambles: pairwise-intersecting families meeting every partition.
//!
//! A family meets a partition when it contains one of its parts. For an
//! upward-closed family that containment test is the minimal-member
//! predicate, and pairwise intersection of the whole family reduces to
//! pairwise intersection of the minimal members (supersets only gain
//! elements) — with the self-pair included, so families generated by the
//! empty set fail as they should. Brambles are nonempty.

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::family::{covering_family, Partition, PointedPartition};
use crate::ground::{Block, GroundSet};
use crate::smallset::{SmallSetSystem, UpFamily};

/// Every part of the partition is small.
pub fn is_small_partition(p: &Partition, s: &SmallSetSystem) -> bool {
    p.blocks().iter().all(|b| s.is_small(*b))
}

fn pairwise_intersecting(blocks: &[Block]) -> bool {
    blocks
        .iter()
        .enumerate()
        .all(|(i, x)| blocks[i..].iter().all(|y| x.intersects(*y)))
}

/// Upward-closed bramble test: nonempty, pairwise intersecting, and some
/// part of every partition belongs to the family.
pub fn is_bramble(br: &UpFamily, members: &[Partition]) -> bool {
    !br.is_empty()
        && pairwise_intersecting(br.minimal())
        && members
            .iter()
            .all(|mu| mu.blocks().iter().any(|b| br.contains(*b)))
}

/// Verbatim bramble test on an explicit family: parts must literally be
/// members.
pub fn is_bramble_explicit(br: &[Block], members: &[Partition]) -> bool {
    !br.is_empty()
        && pairwise_intersecting(br)
        && members
            .iter()
            .all(|mu| mu.blocks().iter().any(|b| br.contains(b)))
}

/// Bramble with only big sets: for an upward-closed family, the minimal
/// members decide.
pub fn is_big_bramble(br: &UpFamily, members: &[Partition], s: &SmallSetSystem) -> bool {
    is_bramble(br, members) && br.minimal().iter().all(|m| s.is_big(*m))
}

/// Closure-lift validator: bramble status must agree between a partition
/// set and its closure.
pub fn check_bramble_lift(br: &UpFamily, members: &[Partition], closure: &[Partition]) -> bool {
    is_bramble(br, members) == is_bramble(br, closure)
}

/// Outcome of the greedy minimal-cover construction. The family always meets
/// every partition of the input; `verified` records whether it is actually
/// a big bramble (guaranteed when the input set is refining).
#[derive(Clone, Debug)]
pub struct ConstructOutcome {
    pub family: UpFamily,
    pub verified: bool,
}

fn meets_all(br: &UpFamily, members: &[Partition]) -> bool {
    members
        .iter()
        .all(|mu| mu.blocks().iter().any(|b| br.contains(*b)))
}

/// Minimal-cover construction: if the set has a small partition there is nothing
/// to build; otherwise start from the family of all big sets and greedily
/// remove minimal members (canonically first removable each step) while the
/// family still meets every partition, until inclusion-wise minimal.
pub fn construct_big_bramble(
    q: &[Partition],
    s: &SmallSetSystem,
    ground: &GroundSet,
) -> Option<ConstructOutcome> {
    if q.iter().any(|p| is_small_partition(p, s)) {
        return None;
    }
    let mut br = UpFamily::new(s.minimal_big_sets(ground));
    debug_assert!(meets_all(&br, q));
    loop {
        let mut removed = false;
        for m in br.minimal().to_vec() {
            let candidate = br.remove_minimal(m, ground);
            if meets_all(&candidate, q) {
                br = candidate;
                removed = true;
                break;
            }
        }
        if !removed {
            break;
        }
    }
    let verified = is_big_bramble(&br, q, s);
    Some(ConstructOutcome {
        family: br,
        verified,
    })
}

/// Exhaustive search for a big bramble over `q`: depth-first over
/// pairwise-intersecting antichains of big sets in canonical order,
/// returning the first family that meets every partition. `None` means the
/// whole space was exhausted, so no big bramble exists. Counts search nodes
/// against the configured budget.
pub fn find_big_bramble(
    q: &[Partition],
    s: &SmallSetSystem,
    ground: &GroundSet,
    caps: &Caps,
) -> Result<Option<UpFamily>> {
    let mut candidates: Vec<Block> = crate::enumerate::submasks(ground.full().mask())
        .map(Block::from_mask)
        .filter(|b| s.is_big(*b) && !b.is_empty())
        .collect();
    candidates.sort();

    struct Search<'a> {
        candidates: Vec<Block>,
        q: &'a [Partition],
        budget: usize,
    }

    impl Search<'_> {
        fn dfs(&mut self, start: usize, chosen: &mut Vec<Block>) -> Result<Option<UpFamily>> {
            if self.budget == 0 {
                return Err(Error::BudgetExhausted {
                    what: "bramble search",
                    cap: 0,
                });
            }
            self.budget -= 1;
            if !chosen.is_empty() {
                let family = UpFamily::new(chosen.clone());
                if meets_all(&family, self.q) {
                    return Ok(Some(family));
                }
            }
            for i in start..self.candidates.len() {
                let c = self.candidates[i];
                let ok = chosen
                    .iter()
                    .all(|x| x.intersects(c) && !x.is_subset_of(c) && !c.is_subset_of(*x));
                if ok {
                    chosen.push(c);
                    if let Some(found) = self.dfs(i + 1, chosen)? {
                        return Ok(Some(found));
                    }
                    chosen.pop();
                }
            }
            Ok(None)
        }
    }

    let budget = caps.bramble_nodes;
    let mut search = Search {
        candidates,
        q,
        budget,
    };
    match search.dfs(0, &mut Vec::new()) {
        Err(Error::BudgetExhausted { what, .. }) => {
            Err(Error::BudgetExhausted { what, cap: budget })
        }
        other => other,
    }
}

/// Whether any big bramble over `q` exists, by exhaustive search.
pub fn big_bramble_exists(
    q: &[Partition],
    s: &SmallSetSystem,
    ground: &GroundSet,
    caps: &Caps,
) -> Result<bool> {
    Ok(find_big_bramble(q, s, ground, caps)?.is_some())
}

/// Witness against dualising: for a disjoint pointed pair, the system of all sets
/// included in some part of the covering. When no partition of the set is
/// finer than the covering, this system admits neither a small partition
/// nor a big bramble.
pub fn non_dualising_witness(
    p1: &PointedPartition,
    p2: &PointedPartition,
) -> Result<SmallSetSystem> {
    let covering = covering_family(p1, p2)?;
    Ok(SmallSetSystem::new(covering.blocks().to_vec()))
}

/// The dummy duality check on a closure's members: exactly one of "some
/// member is small" and "every member has a big part" holds.
pub fn dummy_cover_check(members: &[Partition], s: &SmallSetSystem) -> bool {
    let small = members.iter().any(|p| is_small_partition(p, s));
    let choice = members
        .iter()
        .all(|p| p.blocks().iter().any(|b| s.is_big(*b)));
    small ^ choice
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize) -> GroundSet {
        GroundSet::new(n, &Caps::default()).unwrap()
    }

    fn b(xs: &[usize]) -> Block {
        Block::from_indices(xs).unwrap()
    }

    fn part(ground: &GroundSet, blocks: &[&[usize]]) -> Partition {
        Partition::new(ground, blocks.iter().map(|xs| b(xs)).collect()).unwrap()
    }

    fn singletons(ground: &GroundSet) -> Partition {
        Partition::new(ground, (0..ground.size()).map(Block::singleton).collect()).unwrap()
    }

    #[test]
    fn small_partition_examples() {
        let g4 = g(4);
        let s = SmallSetSystem::singletons_and_empty(&g4);
        assert!(is_small_partition(&singletons(&g4), &s));
        assert!(!is_small_partition(&part(&g4, &[&[0, 1], &[2], &[3]]), &s));
        let all = SmallSetSystem::all_subsets(&g4);
        assert!(is_small_partition(&part(&g4, &[&[0, 1, 2, 3]]), &all));
    }

    #[test]
    fn bramble_examples() {
        let g4 = g(4);
        let q = vec![part(&g4, &[&[0], &[1], &[2, 3]])];
        assert!(is_bramble(&UpFamily::new(vec![b(&[2, 3])]), &q));
        assert!(!is_bramble(&UpFamily::new(vec![b(&[0]), b(&[1])]), &q));
        assert!(!is_bramble(&UpFamily::empty(), &q));
        // The empty-set-generated family is all subsets, not pairwise
        // intersecting.
        assert!(!is_bramble(&UpFamily::new(vec![Block::EMPTY]), &[]));
        // Explicit mode wants literal parts.
        assert!(is_bramble_explicit(&[b(&[2, 3])], &q));
        assert!(!is_bramble_explicit(&[b(&[1, 2, 3])], &q));
    }

    #[test]
    fn big_bramble_examples() {
        let g4 = g(4);
        let s = SmallSetSystem::singletons_and_empty(&g4);
        let q = vec![part(&g4, &[&[0], &[1], &[2, 3]])];
        assert!(is_big_bramble(&UpFamily::new(vec![b(&[2, 3])]), &q, &s));
        assert!(!is_big_bramble(&UpFamily::new(vec![b(&[2])]), &q, &s));
    }

    #[test]
    fn construct_on_a_single_star() {
        let g4 = g(4);
        let s = SmallSetSystem::singletons_and_empty(&g4);
        let q = vec![part(&g4, &[&[0], &[1], &[2, 3]])];
        let out = construct_big_bramble(&q, &s, &g4).unwrap();
        assert!(out.verified);
        assert!(is_big_bramble(&out.family, &q, &s));

        // A small partition in the set: nothing to construct.
        let q2 = vec![singletons(&g4)];
        assert!(construct_big_bramble(&q2, &s, &g4).is_none());

        // Empty set of partitions: minimization empties the family.
        let out = construct_big_bramble(&[], &s, &g4).unwrap();
        assert!(out.family.is_empty());
        assert!(!out.verified);
    }

    #[test]
    fn exhaustive_search_agrees_with_construction() {
        let g3 = g(3);
        let s = SmallSetSystem::singletons_and_empty(&g3);
        let q = vec![part(&g3, &[&[0], &[1, 2]])];
        let found = find_big_bramble(&q, &s, &g3, &Caps::default()).unwrap();
        let fam = found.expect("a big bramble exists");
        assert!(is_big_bramble(&fam, &q, &s));

        // All-singletons partition kills every big bramble.
        let q2 = vec![singletons(&g3)];
        assert!(find_big_bramble(&q2, &s, &g3, &Caps::default())
            .unwrap()
            .is_none());

        // Nothing is big under the all-subsets system.
        let all = SmallSetSystem::all_subsets(&g3);
        assert!(find_big_bramble(&[], &all, &g3, &Caps::default())
            .unwrap()
            .is_none());
    }

    #[test]
    fn budget_is_reported() {
        let g4 = g(4);
        let s = SmallSetSystem::nothing_small();
        let caps = Caps {
            bramble_nodes: 1,
            ..Caps::default()
        };
        // One node is not enough to finish any search with candidates.
        let q = vec![part(&g4, &[&[0], &[1], &[2], &[3]])];
        assert!(matches!(
            find_big_bramble(&q, &s, &g4, &caps),
            Err(Error::BudgetExhausted { .. })
        ));
    }

    #[test]
    fn witness_system_from_disjoint_pair() {
        let g4 = g(4);
        // (({1} {2,3})|{0}) and ({3}|({0,1} {2})).
        let p1 = part(&g4, &[&[1], &[2, 3], &[0]])
            .pointed_at(b(&[0]))
            .unwrap();
        let p2 = part(&g4, &[&[0, 1], &[2], &[3]])
            .pointed_at(b(&[3]))
            .unwrap();
        let s = non_dualising_witness(&p1, &p2).unwrap();
        assert_eq!(s.maximal(), &[b(&[0, 1]), b(&[2, 3])]);
        // Pointing p2 elsewhere swaps {2} and {3} between point and side,
        // but the maximal sets absorb the difference.
        let p2b = part(&g4, &[&[0, 1], &[2], &[3]])
            .pointed_at(b(&[2]))
            .unwrap();
        let s2 = non_dualising_witness(&p1, &p2b).unwrap();
        assert_eq!(s2.maximal(), s.maximal());
        assert!(non_dualising_witness(&p1, &p1).is_err());
    }

    #[test]
    fn dummy_duality_always_holds() {
        let g4 = g(4);
        let s = SmallSetSystem::singletons_and_empty(&g4);
        assert!(dummy_cover_check(&[singletons(&g4)], &s));
        assert!(dummy_cover_check(&[part(&g4, &[&[0], &[1], &[2, 3]])], &s));
        assert!(dummy_cover_check(&[], &SmallSetSystem::nothing_small()));
    }
}
