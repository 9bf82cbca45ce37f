//! Multi-utility representations of preference relations on finite spaces.
//!
//! * [`relation`]: finite relations, dualities and order properties.
//! * [`topology`]: finite topologies and the product topology on `X × X`.
//! * [`realizer`]: linear extensions, realizers, order dimension.
//! * [`embedding`]: continuous existential multi-utilities and Hasse projections.
//! * [`pareto`]: Pareto representations and the continuous Pareto probe.
//! * [`semiorder`]: the threshold semiorder on the line and its bump-function family.

pub mod embedding;
pub mod enumerate;
pub mod error;
pub mod io;
pub mod pareto;
pub mod realizer;
pub mod relation;
pub mod semiorder;
pub mod topology;

pub use embedding::{
    build_multi_embedding, debreu_utility, hasse_projection, verify_existential_embedding,
    HasseDiagram, MultiUtility, Semantics,
};
pub use error::{Error, Result};
pub use pareto::{
    build_pareto_representation, continuous_pareto_probe, decomposition_check, pareto_dominates,
    verify_pareto_embedding, SampledColumn, Violation,
};
pub use realizer::{
    build_realizer, linear_extension, open_order_dimension, order_dimension, verify_realizer,
    LinearOrder, Realizer, SearchBudget,
};
pub use relation::{GroundSet, PropertyReport, Relation};
pub use semiorder::{Grid, SemiorderFamily};
pub use topology::{FiniteTopology, TopologyReport};
