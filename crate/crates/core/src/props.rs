//! Decision procedures for the structural properties of partition sets and
//! partition functions. Every checker is exhaustive over its quantifier
//! space and returns a re-checkable counterexample on failure.

use std::collections::HashSet;

use serde::Serialize;

use crate::bramble::{big_bramble_exists, is_small_partition};
use crate::config::Caps;
use crate::enumerate::{enumerate_partitions, submasks};
use crate::error::{Error, Result};
use crate::family::{covering_family, is_disjoint_pointed_pair, Partition, PointedPartition};
use crate::ground::{Block, GroundSet};
use crate::refine::{is_finer, is_strongly_finer};
use crate::smallset::SmallSetSystem;
use crate::widths::{IndicatorFn, PartitionFunction};

#[derive(Clone, Debug, Serialize)]
pub struct PropertyReport {
    pub holds: bool,
    pub counterexample: Option<CounterExample>,
}

impl PropertyReport {
    pub fn passing() -> PropertyReport {
        PropertyReport {
            holds: true,
            counterexample: None,
        }
    }

    pub fn failing(ce: CounterExample) -> PropertyReport {
        PropertyReport {
            holds: false,
            counterexample: Some(ce),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CounterExample {
    /// A pointed pair for which the property's requirement fails.
    PointedPair {
        left: PointedPartition,
        right: PointedPartition,
    },
    /// A small-set system admitting neither a small partition nor a big
    /// bramble.
    System { system: SmallSetSystem },
    /// A pair of subsets violating a connectivity axiom.
    SetPair { a: Block, b: Block },
}

fn all_pointings(members: &[Partition]) -> Vec<PointedPartition> {
    members.iter().flat_map(|p| p.pointings()).collect()
}

fn complement_mask(pp: &PointedPartition) -> u64 {
    pp.partition().ground_mask().mask() & !pp.pointed_block().mask()
}

fn pushing_pair_fails(
    set: &HashSet<Partition>,
    left: &PointedPartition,
    right: &PointedPartition,
) -> bool {
    let inter = complement_mask(left) & complement_mask(right);
    if inter == 0 {
        return false;
    }
    for f in submasks(inter) {
        if f == 0 {
            continue;
        }
        let fb = Block::from_mask(f);
        let pushed_left = left.absorb(fb).expect("F avoids the pointed block");
        if set.contains(&pushed_left) {
            return false;
        }
        let pushed_right = right.absorb(fb).expect("F avoids the pointed block");
        if set.contains(&pushed_right) {
            return false;
        }
    }
    true
}

/// Pushing: every pointed pair with overlapping co-blocks admits a nonempty
/// F from the co-block intersection whose absorption into one of the two
/// distinguished blocks stays in the set.
pub fn is_pushing(members: &[Partition]) -> PropertyReport {
    let set: HashSet<Partition> = members.iter().cloned().collect();
    let pointed = all_pointings(members);
    for left in &pointed {
        for right in &pointed {
            if pushing_pair_fails(&set, left, right) {
                return PropertyReport::failing(CounterExample::PointedPair {
                    left: left.clone(),
                    right: right.clone(),
                });
            }
        }
    }
    PropertyReport::passing()
}

fn refining_pair_fails(
    members: &[Partition],
    left: &PointedPartition,
    right: &PointedPartition,
    strongly: bool,
) -> bool {
    if !is_disjoint_pointed_pair(left, right) {
        return false;
    }
    let covering = covering_family(left, right).expect("pair is disjoint");
    !members.iter().any(|mu| {
        if strongly {
            is_strongly_finer(mu.as_family(), &covering)
        } else {
            is_finer(mu.as_family(), &covering)
        }
    })
}

fn refining_report(members: &[Partition], strongly: bool) -> PropertyReport {
    let pointed = all_pointings(members);
    for left in &pointed {
        for right in &pointed {
            if refining_pair_fails(members, left, right, strongly) {
                return PropertyReport::failing(CounterExample::PointedPair {
                    left: left.clone(),
                    right: right.clone(),
                });
            }
        }
    }
    PropertyReport::passing()
}

/// Refining: some member is finer than the covering of every disjoint
/// pointed pair drawn from the set.
pub fn is_refining(members: &[Partition]) -> PropertyReport {
    refining_report(members, false)
}

/// As `is_refining`, with strong fineness.
pub fn is_strongly_refining(members: &[Partition]) -> PropertyReport {
    refining_report(members, true)
}

/// Dualising: under every downward-closed small-set system, the set has a
/// small partition or admits a big bramble. The sweep enumerates all
/// systems, so the ground set must be tiny.
pub fn is_dualising(
    members: &[Partition],
    ground: &GroundSet,
    caps: &Caps,
) -> Result<PropertyReport> {
    if ground.size() > caps.dualising {
        return Err(Error::CapExceeded {
            what: "dualising sweep",
            size: ground.size(),
            cap: caps.dualising,
        });
    }
    for s in SmallSetSystem::all_systems(ground) {
        if members.iter().any(|p| is_small_partition(p, &s)) {
            continue;
        }
        if !big_bramble_exists(members, &s, ground, caps)? {
            return Ok(PropertyReport::failing(CounterExample::System {
                system: s,
            }));
        }
    }
    Ok(PropertyReport::passing())
}

fn pointed_universe(psi: &dyn PartitionFunction, caps: &Caps) -> Result<Vec<PointedPartition>> {
    let all: Vec<Partition> = enumerate_partitions(psi.ground(), caps, None)?.collect();
    Ok(all_pointings(&all))
}

/// Submodular partition function:
/// Ψ(α|A) + Ψ(B|β) ≥ Ψ(α∖B^c|A∪B^c) + Ψ(β∖A^c|B∪A^c) on every ordered
/// pointed pair.
pub fn is_submodular_pf(psi: &dyn PartitionFunction, caps: &Caps) -> Result<PropertyReport> {
    let pointed = pointed_universe(psi, caps)?;
    for left in &pointed {
        let a = left.pointed_block();
        for right in &pointed {
            let b = right.pointed_block();
            let into_a = Block::from_mask(complement_mask(right) & !a.mask());
            let into_b = Block::from_mask(complement_mask(left) & !b.mask());
            let lhs = psi.value(left.partition()) + psi.value(right.partition());
            let rhs = psi.value(&left.absorb(into_a).expect("avoids A"))
                + psi.value(&right.absorb(into_b).expect("avoids B"));
            if lhs < rhs {
                return Ok(PropertyReport::failing(CounterExample::PointedPair {
                    left: left.clone(),
                    right: right.clone(),
                }));
            }
        }
    }
    Ok(PropertyReport::passing())
}

/// The older weak submodularity: for every ordered pointed pair, either
/// some strict superset F of A inside (B∖A)^c strictly improves the left
/// side, or absorbing A^c into B does not hurt the right side.
pub fn is_weakly_submodular_old(
    psi: &dyn PartitionFunction,
    caps: &Caps,
) -> Result<PropertyReport> {
    let pointed = pointed_universe(psi, caps)?;
    for left in &pointed {
        for right in &pointed {
            let b = right.pointed_block();
            let into_b = Block::from_mask(complement_mask(left) & !b.mask());
            if psi.value(right.partition()) >= psi.value(&right.absorb(into_b).expect("avoids B")) {
                continue;
            }
            // F with A ⊂ F ⊆ (B∖A)^c is A ∪ G for nonempty G ⊆ A^c ∩ B^c.
            let inter = complement_mask(left) & complement_mask(right);
            let left_value = psi.value(left.partition());
            let improved = submasks(inter).any(|g| {
                g != 0
                    && left_value > psi.value(&left.absorb(Block::from_mask(g)).expect("avoids A"))
            });
            if !improved {
                return Ok(PropertyReport::failing(CounterExample::PointedPair {
                    left: left.clone(),
                    right: right.clone(),
                }));
            }
        }
    }
    Ok(PropertyReport::passing())
}

/// The newer weak submodularity: for every pointed pair with overlapping
/// co-blocks there is a nonempty F in the co-block intersection whose
/// absorption does not increase one of the two sides.
pub fn is_weakly_submodular_new(
    psi: &dyn PartitionFunction,
    caps: &Caps,
) -> Result<PropertyReport> {
    let pointed = pointed_universe(psi, caps)?;
    for left in &pointed {
        for right in &pointed {
            let inter = complement_mask(left) & complement_mask(right);
            if inter == 0 {
                continue;
            }
            let left_value = psi.value(left.partition());
            let right_value = psi.value(right.partition());
            let ok = submasks(inter).any(|f| {
                if f == 0 {
                    return false;
                }
                let fb = Block::from_mask(f);
                left_value >= psi.value(&left.absorb(fb).expect("avoids A"))
                    || right_value >= psi.value(&right.absorb(fb).expect("avoids B"))
            });
            if !ok {
                return Ok(PropertyReport::failing(CounterExample::PointedPair {
                    left: left.clone(),
                    right: right.clone(),
                }));
            }
        }
    }
    Ok(PropertyReport::passing())
}

/// The indicator function of a partition set: 0 on members, 1 elsewhere.
/// Its 0-level set is the input, making it the bridge between pushing sets
/// and weakly submodular functions.
pub fn indicator_pf(ground: &GroundSet, members: &[Partition]) -> IndicatorFn {
    IndicatorFn::new(ground.clone(), members.to_vec())
}
