use std::collections::BTreeMap;

use crate::rdf::prefix::PrefixMap;
use crate::rdf::term::{escape_string_into, Iri, Term, XSD_STRING};
use crate::rdf::Graph;

const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

/// Renders `graph` as Turtle.
///
/// Output depends only on the triple set and the prefix registration order:
/// prefixes come first in registration order, then one block per subject
/// (IRIs by expanded value, then blank nodes by label). Within a block
/// `rdf:type` leads as `a`, remaining predicates follow by IRI, and objects
/// are ordered by their N-Triples form.
pub fn serialize_turtle(graph: &Graph, prefixes: &PrefixMap) -> String {
    let mut out = String::new();
    for (prefix, ns) in prefixes.iter() {
        out.push_str(&format!("@prefix {prefix}: <{}> .\n", ns.as_str()));
    }

    let mut subjects: Vec<&Term> = graph.distinct_subjects().collect();
    subjects.sort_by(|a, b| subject_key(a).cmp(&subject_key(b)));

    for subject in subjects {
        let mut by_predicate: BTreeMap<(bool, Iri), Vec<Term>> = BTreeMap::new();
        for t in graph.matching_unordered(Some(subject), None, None) {
            let (_, p, o) = t.into_parts();
            // (false, _) sorts rdf:type ahead of everything else.
            let is_type = p.as_str() == RDF_TYPE;
            by_predicate.entry((!is_type, p)).or_default().push(o);
        }
        out.push('\n');
        render_term(subject, prefixes, &mut out);
        let mut first = true;
        for ((not_type, p), mut objects) in by_predicate {
            objects.sort_by_cached_key(Term::to_ntriples);
            if first {
                out.push(' ');
                first = false;
            } else {
                out.push_str(" ;\n    ");
            }
            if !not_type {
                out.push('a');
            } else {
                render_iri(&p, prefixes, &mut out);
            }
            for (i, o) in objects.iter().enumerate() {
                out.push_str(if i == 0 { " " } else { ", " });
                render_term(o, prefixes, &mut out);
            }
        }
        out.push_str(" .\n");
    }
    out
}

fn subject_key(t: &Term) -> (u8, &str) {
    match t {
        Term::Iri(i) => (0, i.as_str()),
        Term::Blank(b) => (1, b.label()),
        Term::Literal(l) => (2, l.lexical()),
    }
}

pub(crate) fn render_term(term: &Term, prefixes: &PrefixMap, out: &mut String) {
    match term {
        Term::Iri(iri) => render_iri(iri, prefixes, out),
        Term::Blank(b) => {
            out.push_str("_:");
            out.push_str(b.label());
        }
        Term::Literal(lit) => {
            out.push('"');
            escape_string_into(lit.lexical(), out);
            out.push('"');
            if let Some(lang) = lit.language() {
                out.push('@');
                out.push_str(lang);
            } else if lit.datatype().as_str() != XSD_STRING {
                out.push_str("^^");
                render_iri(lit.datatype(), prefixes, out);
            }
        }
    }
}

fn render_iri(iri: &Iri, prefixes: &PrefixMap, out: &mut String) {
    match prefixes.compress(iri) {
        Some(curie) => out.push_str(&curie),
        None => {
            out.push('<');
            out.push_str(iri.as_str());
            out.push('>');
        }
    }
}

/// Compact rendering of a single term (CURIE where possible).
pub fn term_to_turtle(term: &Term, prefixes: &PrefixMap) -> String {
    let mut out = String::new();
    render_term(term, prefixes, &mut out);
    out
}
