//! Partition similarity measures for graphs.
//!
//! Two families of measures compare a pair of vertex partitions:
//!
//! * graph-agnostic measures ([`agnostic`]) count co-clustered vertex pairs,
//!   ignoring the edges of the graph (Rand index, ARI, the `PC_f` family, AMI);
//! * graph-aware measures ([`aware`]) restrict the counts to pairs joined by an
//!   edge, through the binary edge classification each partition induces.
//!
//! The [`random`] module generates planted-partition graphs and random
//! connected partitions, and [`experiments`] drives seeded Monte Carlo runs on
//! top of both. File formats and CSV/SVG emitters live in [`io`].

pub mod agnostic;
pub mod aware;
mod error;
pub mod experiments;
pub mod graph;
pub mod io;
pub mod random;
mod union_find;

pub use agnostic::{ContingencyTable, MeanKind, PairCounts};
pub use aware::EdgeCounts;
pub use error::{Error, Result};
pub use experiments::{CurvePoint, Executor, MeasureSelector};
pub use graph::{EdgeClassification, Graph, Partition};
pub use random::{PlantedSpec, Seed};
pub use union_find::DisjointSets;
