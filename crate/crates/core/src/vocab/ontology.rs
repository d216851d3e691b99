use std::sync::OnceLock;

use super::ns;
use crate::rdf::{parse_turtle, Graph, Iri, PrefixMap};

/// The OCEDO core and auxiliary ontology, shipped verbatim.
pub const OCEDO_TTL: &str = include_str!("../../data/ocedo.ttl");

/// Domain extension for the BPIC 2013 incident log.
pub const BPIC2013_OCEDD_TTL: &str = include_str!("../../data/bpic2013_ocedd.ttl");

/// Mapping descriptor pairing the BPIC 2013 XES keys with the extension.
pub const BPIC2013_DESCRIPTOR_CSV: &str = include_str!("../../data/bpic2013_descriptor.csv");

/// A one-trace, one-event BPIC 2013 excerpt.
pub const BPIC2013_ONE_EVENT_XES: &str = include_str!("../../data/bpic2013_one_event.xes");

/// rdf, rdfs, owl, xsd, oced, aux, in that order.
pub fn standard_prefixes() -> PrefixMap {
    let mut pm = PrefixMap::new();
    for (p, n) in [
        ("rdf", ns::RDF),
        ("rdfs", ns::RDFS),
        ("owl", ns::OWL),
        ("xsd", ns::XSD),
        ("oced", ns::OCED),
        ("aux", ns::AUX),
    ] {
        pm.insert(p, Iri::new(n).expect("static namespace")).expect("static prefix");
    }
    pm
}

/// The embedded OCEDO graph and its prefixes.
pub fn builtin_ocedo() -> (Graph, PrefixMap) {
    static PARSED: OnceLock<(Graph, PrefixMap)> = OnceLock::new();
    PARSED
        .get_or_init(|| parse_turtle(OCEDO_TTL).expect("embedded ontology parses"))
        .clone()
}
