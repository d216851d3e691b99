//! Object-centric event data as RDF: parse XES logs, map them onto the OCEDO
//! ontology and a domain extension, then reason over, query and validate the
//! resulting knowledge graph.

pub mod cli;
pub mod mapper;
pub mod rdf;
pub mod tools;
pub mod vocab;
pub mod xes;
