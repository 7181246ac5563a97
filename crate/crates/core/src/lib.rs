//! Partition algebra, partitioning trees, and width-parameter duality.
//!
//! The crate models partitions of a finite ground set together with the two
//! operations the duality theory runs on: merging pointed partitions and
//! taking merge closures, which are exactly the partitions displayed by
//! compatible partitioning trees. On top of that sit brambles and the
//! property checkers (pushing, refining, dualising, submodularity), the
//! concrete connectivity functions for graphs, and the width engine that
//! computes treewidth, branchwidth, and rankwidth with verifiable
//! certificates on both sides of the duality.

pub mod bramble;
pub mod closure;
pub mod config;
pub mod engine;
pub mod enumerate;
pub mod error;
pub mod family;
pub mod graph;
pub mod ground;
pub mod props;
pub mod refine;
pub mod sample;
pub mod smallset;
pub mod tree;
pub mod widths;

pub use bramble::{
    big_bramble_exists, check_bramble_lift, construct_big_bramble, dummy_cover_check,
    find_big_bramble, is_big_bramble, is_bramble, is_bramble_explicit, is_small_partition,
    non_dualising_witness, ConstructOutcome,
};
pub use closure::ClosureTable;
pub use config::Caps;
pub use engine::{
    certify, compute_width, find_compatible_tree, input_warnings, verify_certificate, CertKind,
    Certificate, Verification, WidthParam,
};
pub use error::{Error, Result};
pub use family::{
    covering_family, is_disjoint_pointed_pair, Partition, PointedPartition, SetFamily,
};
pub use graph::Graph;
pub use ground::{Block, GroundSet, MAX_GROUND};
pub use props::{
    indicator_pf, is_dualising, is_pushing, is_refining, is_strongly_refining, is_submodular_pf,
    is_weakly_submodular_new, is_weakly_submodular_old, CounterExample, PropertyReport,
};
pub use refine::{is_finer, is_strongly_finer, Assignment};
pub use sample::{random_subset, random_subset_biased, seeded_rng};
pub use smallset::{SmallSetSystem, UpFamily};
pub use tree::PartitioningTree;
pub use widths::{
    level_set, minimizing_block, verify_connectivity, Border, ConnectivityFunction, CutRank,
    IndicatorFn, LevelSet, MaxF, PartitionFunction, TableCF, TablePF, Value, VertexBoundary,
};
