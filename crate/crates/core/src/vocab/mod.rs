//! The OCEDO vocabulary, extension (OCEDD) loading and conformance, and the
//! RDFS-lite reasoner.

mod extension;
mod ontology;
mod reasoner;

use std::sync::OnceLock;

use crate::rdf::{Iri, PrefixMap};

pub use extension::{
    check_conformance, load_ocedd, ClassDecl, ConformanceCode, ConformanceReport, ExtensionModel, Finding,
    PropertyDecl, Severity,
};
pub use ontology::{
    builtin_ocedo, standard_prefixes, BPIC2013_DESCRIPTOR_CSV, BPIC2013_OCEDD_TTL, BPIC2013_ONE_EVENT_XES,
    OCEDO_TTL,
};
pub use reasoner::rdfs_closure;

pub mod ns {
    pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
    pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
    pub const OWL: &str = "http://www.w3.org/2002/07/owl#";
    pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
    pub const OCED: &str = "https://w3id.org/ocedo/core#";
    pub const AUX: &str = "https://w3id.org/ocedo/aux#";
    /// Default namespace for minted resources.
    pub const RES: &str = "https://w3id.org/ocedr/res#";
}

/// Every vocabulary symbol the toolchain refers to by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VocabTerm {
    Event,
    Object,
    ObservedAt,
    EventAttribute,
    ObjectAttribute,
    ObjectRelation,
    AuxEventType,
    AuxEventAttribute,
    AuxObjectType,
    AuxObjectAttribute,
    AuxObjectRelation,
    AuxObserve,
    AuxQualifier,
    AuxFrom,
    AuxTo,
    AuxEvent,
    AuxObject,
    AuxHasObjectAttribute,
    RdfType,
    SubClassOf,
    SubPropertyOf,
    Domain,
    Range,
    Label,
    Comment,
    OwlClass,
    OwlObjectProperty,
    OwlDatatypeProperty,
    DisjointWith,
    XsdDateTime,
    XsdString,
}

impl VocabTerm {
    pub const ALL: [VocabTerm; 31] = [
        VocabTerm::Event,
        VocabTerm::Object,
        VocabTerm::ObservedAt,
        VocabTerm::EventAttribute,
        VocabTerm::ObjectAttribute,
        VocabTerm::ObjectRelation,
        VocabTerm::AuxEventType,
        VocabTerm::AuxEventAttribute,
        VocabTerm::AuxObjectType,
        VocabTerm::AuxObjectAttribute,
        VocabTerm::AuxObjectRelation,
        VocabTerm::AuxObserve,
        VocabTerm::AuxQualifier,
        VocabTerm::AuxFrom,
        VocabTerm::AuxTo,
        VocabTerm::AuxEvent,
        VocabTerm::AuxObject,
        VocabTerm::AuxHasObjectAttribute,
        VocabTerm::RdfType,
        VocabTerm::SubClassOf,
        VocabTerm::SubPropertyOf,
        VocabTerm::Domain,
        VocabTerm::Range,
        VocabTerm::Label,
        VocabTerm::Comment,
        VocabTerm::OwlClass,
        VocabTerm::OwlObjectProperty,
        VocabTerm::OwlDatatypeProperty,
        VocabTerm::DisjointWith,
        VocabTerm::XsdDateTime,
        VocabTerm::XsdString,
    ];

    pub fn curie(self) -> &'static str {
        use VocabTerm::*;
        match self {
            Event => "oced:Event",
            Object => "oced:Object",
            ObservedAt => "oced:observed_at",
            EventAttribute => "oced:event_attribute",
            ObjectAttribute => "oced:object_attribute",
            ObjectRelation => "oced:object_relation",
            AuxEventType => "aux:EventType",
            AuxEventAttribute => "aux:EventAttribute",
            AuxObjectType => "aux:ObjectType",
            AuxObjectAttribute => "aux:ObjectAttribute",
            AuxObjectRelation => "aux:ObjectRelation",
            AuxObserve => "aux:Observe",
            AuxQualifier => "aux:qualifier",
            AuxFrom => "aux:from",
            AuxTo => "aux:to",
            AuxEvent => "aux:event",
            AuxObject => "aux:object",
            AuxHasObjectAttribute => "aux:has_object_attribute",
            RdfType => "rdf:type",
            SubClassOf => "rdfs:subClassOf",
            SubPropertyOf => "rdfs:subPropertyOf",
            Domain => "rdfs:domain",
            Range => "rdfs:range",
            Label => "rdfs:label",
            Comment => "rdfs:comment",
            OwlClass => "owl:Class",
            OwlObjectProperty => "owl:ObjectProperty",
            OwlDatatypeProperty => "owl:DatatypeProperty",
            DisjointWith => "owl:disjointWith",
            XsdDateTime => "xsd:dateTime",
            XsdString => "xsd:string",
        }
    }

    pub fn iri(self) -> Iri {
        vocab_table()[self as usize].clone()
    }
}

fn vocab_table() -> &'static [Iri] {
    static TABLE: OnceLock<Vec<Iri>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let pm = standard_prefixes();
        VocabTerm::ALL
            .iter()
            .map(|t| pm.expand(t.curie()).expect("vocabulary CURIE"))
            .collect()
    })
}

/// Prebuilt IRIs for hot paths.
pub(crate) struct Core {
    pub rdf_type: Iri,
    pub sub_class_of: Iri,
    pub sub_property_of: Iri,
    pub domain: Iri,
    pub range: Iri,
    pub label: Iri,
    pub owl_class: Iri,
    pub rdfs_class: Iri,
    pub object_property: Iri,
    pub datatype_property: Iri,
    pub event: Iri,
    pub object: Iri,
    pub observed_at: Iri,
    pub event_attribute: Iri,
    pub object_attribute: Iri,
    pub xsd_date_time: Iri,
    pub xsd_string: Iri,
}

pub(crate) fn core() -> &'static Core {
    static CORE: OnceLock<Core> = OnceLock::new();
    CORE.get_or_init(|| Core {
        rdf_type: VocabTerm::RdfType.iri(),
        sub_class_of: VocabTerm::SubClassOf.iri(),
        sub_property_of: VocabTerm::SubPropertyOf.iri(),
        domain: VocabTerm::Domain.iri(),
        range: VocabTerm::Range.iri(),
        label: VocabTerm::Label.iri(),
        owl_class: VocabTerm::OwlClass.iri(),
        rdfs_class: Iri::new(format!("{}Class", ns::RDFS)).expect("static"),
        object_property: VocabTerm::OwlObjectProperty.iri(),
        datatype_property: VocabTerm::OwlDatatypeProperty.iri(),
        event: VocabTerm::Event.iri(),
        object: VocabTerm::Object.iri(),
        observed_at: VocabTerm::ObservedAt.iri(),
        event_attribute: VocabTerm::EventAttribute.iri(),
        object_attribute: VocabTerm::ObjectAttribute.iri(),
        xsd_date_time: VocabTerm::XsdDateTime.iri(),
        xsd_string: VocabTerm::XsdString.iri(),
    })
}

/// Output prefix order for converted graphs: rdf, rdfs, owl, xsd, oced,
/// aux, then `ext` (when the extension binds it) and `res`.
pub fn output_prefixes(ext: &PrefixMap, resource_namespace: &Iri) -> PrefixMap {
    let mut pm = standard_prefixes();
    if let Some(ns) = ext.get("ext") {
        pm.insert("ext", ns.clone()).expect("valid prefix");
    }
    pm.insert("res", resource_namespace.clone()).expect("valid prefix");
    pm
}
