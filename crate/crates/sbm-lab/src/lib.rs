//! Microcanonical block-model entropy, sampling, and recovery experiments.
//!
//! The central object is the flat ensemble of directed multigraphs sharing a
//! fixed block-pair edge-count matrix. Its log-cardinality ("entropy") is a
//! sum of log multiset coefficients, one per ordered block pair; minimizing
//! it over partitions is a common inference rule, and this crate exists to
//! compute it exactly, sample the ensemble it describes, and probe where the
//! minimum-entropy rule stops recovering planted structure.
//!
//! Capabilities, one module each:
//!
//! * [`graph`] — multigraphs, partitions, block-count models, text formats.
//! * [`entropy`] — exact ensemble entropy and partition comparison.
//! * [`sample`] — seeded uniform (and iid-control) ensemble samplers.
//! * [`threshold`] — the split/merge counterexample family and its
//!   density threshold, with a closed-form gap bound.
//! * [`search`] — size-preserving local entropy minimization.
//! * [`sweep`] — recovery-rate experiments over a swept density, with CSV
//!   and SVG output.
//!
//! The `examples/` directory is the primary tour: each file is a runnable
//! walkthrough of one capability (`cargo run --release --example
//! entropy_reversal`, etc.). A thin `sbm-lab` binary exposes the same
//! operations as subcommands for scripting.
//!
//! ```
//! use sbm_lab::{partition_entropy, MultiGraph, Partition};
//!
//! // two nodes, one edge each way, in a single block
//! let g = MultiGraph::from_edges(2, &[(0, 1, 1), (1, 0, 1)]).unwrap();
//! let p = Partition::contiguous(&[2]).unwrap();
//! // 4 cells, 2 edges: ln C(4 + 2 - 1, 2) = ln 10
//! let s = partition_entropy(&g, &p).unwrap();
//! assert!((s.value() - 10.0_f64.ln()).abs() < 1e-12);
//! ```

pub mod entropy;
pub mod error;
pub mod graph;
pub mod sample;
pub mod search;
pub mod sweep;
pub mod threshold;

pub use entropy::{
    compare_partitions, log_likelihood, log_multiset, model_entropy, partition_entropy,
    ComparisonResult, EntropyNats, Winner, DEFAULT_TOLERANCE,
};
pub use error::{Error, Result};
pub use graph::{
    build_block_matrix, counts_from_density, format_graph, format_partition, is_member,
    parse_graph, parse_partition, split_merge_invert, BlockMatrix, DensityModel, MultiGraph,
    Partition, SbmModel,
};
pub use sample::{derive_seed, sample_iid, sample_uniform, SeedSpec};
pub use search::local_search_min_entropy;
pub use sweep::{
    emit_csv, emit_svg, parse_csv, recovery_rate, run_sweep, SamplerMode, SweepConfig, SweepRecord,
};
pub use threshold::{
    find_threshold, inversion_gap_lower_bound, inverted_entropy, inverted_model, planted_entropy,
    planted_model, SplitMergeSpec,
};
