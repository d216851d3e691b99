//! Materialises RDFS entailments of a converted graph.

use oced_forge::mapper::{convert, parse_descriptor};
use oced_forge::rdf::Term;
use oced_forge::vocab::{
    builtin_ocedo, load_ocedd, rdfs_closure, standard_prefixes, BPIC2013_DESCRIPTOR_CSV,
    BPIC2013_OCEDD_TTL, BPIC2013_ONE_EVENT_XES, VocabTerm,
};
use oced_forge::xes::parse_xes_str;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ext = load_ocedd(BPIC2013_OCEDD_TTL)?;
    let mut pm = standard_prefixes();
    pm.merge(&ext.prefixes);
    let descriptor = parse_descriptor(BPIC2013_DESCRIPTOR_CSV, &pm)?;
    let log = parse_xes_str(BPIC2013_ONE_EVENT_XES, "bpic2013_one_event")?;

    let mut g = convert(&log, &descriptor, &ext).graph;
    let before = g.len();
    g.extend_from(&builtin_ocedo().0);
    g.extend_from(ext.graph());
    let closed = rdfs_closure(&g);
    println!("{before} asserted, {} after closure", closed.len());

    let object: Term = VocabTerm::Object.iri().into();
    let mut objects: Vec<String> = closed
        .subjects(&VocabTerm::RdfType.iri(), &object).map(|t| t.to_ntriples()).collect();
    objects.sort();
    println!("resources inferred to be objects:");
    for o in objects {
        println!("  {o}");
    }
    Ok(())
}
