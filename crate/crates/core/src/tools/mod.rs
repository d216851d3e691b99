//! Querying, statistics and validation over OCEDR graphs.

mod query;
mod stats;
mod validate;

pub use query::{bgp_query, parse_query, BindingSet, PatternTerm, TriplePattern};
pub use stats::{stats, GraphStats};
pub use validate::{validate, ValidationCode, ValidationFinding, ValidationReport};
