//! Caps that guard the exponential sweeps, plus the sampling seed.
//!
//! Every cap can be overridden through an environment variable prefixed
//! `WIDTHDUAL_`, and the command line forwards `--cap` / `--seed` on top.

use std::env;

/// Size and budget limits for enumeration-heavy operations.
///
/// All algorithms here are exact and exponential; the caps keep them on
/// instances that finish interactively instead of silently running for hours.
#[derive(Clone, Debug)]
pub struct Caps {
    /// Largest admissible ground set (blocks are 64-bit masks).
    pub ground: usize,
    /// Largest ground set for full partition enumeration.
    pub enumeration: usize,
    /// Largest ground set for the merge closure fixpoint.
    pub closure: usize,
    /// Largest ground set for the compatible-tree search.
    pub search: usize,
    /// Largest ground set for the dualising sweep over small-set systems.
    pub dualising: usize,
    /// Largest ground set for the full connectivity verification sweep.
    pub connectivity: usize,
    /// Node budget for the exhaustive bramble search.
    pub bramble_nodes: usize,
    /// Seed for all randomized sampling (property sweeps only).
    pub seed: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            ground: 16,
            enumeration: 10,
            closure: 8,
            search: 10,
            dualising: 4,
            connectivity: 10,
            bramble_nodes: 2_000_000,
            seed: 0,
        }
    }
}

impl Caps {
    /// Default caps with any `WIDTHDUAL_*` environment overrides applied.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        read(&mut caps.ground, "WIDTHDUAL_GROUND_CAP");
        read(&mut caps.enumeration, "WIDTHDUAL_ENUM_CAP");
        read(&mut caps.closure, "WIDTHDUAL_CLOSURE_CAP");
        read(&mut caps.search, "WIDTHDUAL_SEARCH_CAP");
        read(&mut caps.dualising, "WIDTHDUAL_DUALISING_CAP");
        read(&mut caps.connectivity, "WIDTHDUAL_CONNECTIVITY_CAP");
        read(&mut caps.bramble_nodes, "WIDTHDUAL_BRAMBLE_NODE_CAP");
        read(&mut caps.seed, "WIDTHDUAL_SEED");
        caps
    }
}

fn read<T: std::str::FromStr>(slot: &mut T, var: &str) {
    if let Ok(text) = env::var(var) {
        if let Ok(value) = text.trim().parse() {
            *slot = value;
        }
    }
}
