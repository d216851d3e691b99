//! Validates a converted graph before and after injecting a bad triple.

use oced_forge::mapper::{convert, parse_descriptor};
use oced_forge::rdf::Iri;
use oced_forge::tools::validate;
use oced_forge::vocab::{
    builtin_ocedo, load_ocedd, standard_prefixes, BPIC2013_DESCRIPTOR_CSV, BPIC2013_OCEDD_TTL,
    BPIC2013_ONE_EVENT_XES, VocabTerm,
};
use oced_forge::xes::parse_xes_str;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ext = load_ocedd(BPIC2013_OCEDD_TTL)?;
    let mut pm = standard_prefixes();
    pm.merge(&ext.prefixes);
    let descriptor = parse_descriptor(BPIC2013_DESCRIPTOR_CSV, &pm)?;
    let log = parse_xes_str(BPIC2013_ONE_EVENT_XES, "bpic2013_one_event")?;
    let mut g = convert(&log, &descriptor, &ext).graph;
    let (ocedo, _) = builtin_ocedo();

    println!("converted graph: {}", validate(&g, &ocedo, &ext));

    // A team member "working in" an event.
    let event_class = VocabTerm::Event.iri().into();
    let event = g.subjects(&VocabTerm::RdfType.iri(), &event_class).next().cloned().expect("one event");
    let handled_by = Iri::new("https://w3id.org/ocedo/ext/bpic2013#is_handled_by")?;
    let member = g.objects(&event, &handled_by).next().cloned().expect("handler");
    g.add(member, Iri::new("https://w3id.org/ocedo/ext/bpic2013#works_in")?, event)?;

    println!("after edit:\n{}", validate(&g, &ocedo, &ext));
    Ok(())
}
