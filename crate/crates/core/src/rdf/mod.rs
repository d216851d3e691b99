//! RDF data model: terms, an indexed triple set, namespace prefixes and a
//! deterministic Turtle codec.

mod graph;
mod prefix;
mod term;
pub mod turtle;

pub use graph::Graph;
pub use prefix::PrefixMap;
pub use term::{BlankNode, Iri, Literal, Term, Triple};
pub use turtle::{parse_turtle, serialize_turtle};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RdfError {
    #[error("invalid IRI {iri:?}: {reason}")]
    InvalidIri { iri: String, reason: &'static str },
    #[error("invalid blank node label {0:?}")]
    InvalidBlankNode(String),
    #[error("invalid literal {lexical:?}: {reason}")]
    InvalidLiteral { lexical: String, reason: String },
    #[error("literal {0} cannot be a subject")]
    LiteralSubject(String),
    #[error("invalid prefix name {0:?}")]
    InvalidPrefix(String),
    #[error("{0:?} is not a CURIE")]
    NotACurie(String),
    #[error("unknown prefix '{0}'")]
    UnknownPrefix(String),
}
