//! Converts the bundled one-event BPIC 2013 log into Turtle.

use oced_forge::mapper::{convert, parse_descriptor};
use oced_forge::rdf::serialize_turtle;
use oced_forge::vocab::{
    load_ocedd, output_prefixes, standard_prefixes, BPIC2013_DESCRIPTOR_CSV, BPIC2013_OCEDD_TTL,
    BPIC2013_ONE_EVENT_XES,
};
use oced_forge::xes::parse_xes_str;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ext = load_ocedd(BPIC2013_OCEDD_TTL)?;
    let mut pm = standard_prefixes();
    pm.merge(&ext.prefixes);
    let descriptor = parse_descriptor(BPIC2013_DESCRIPTOR_CSV, &pm)?;
    let log = parse_xes_str(BPIC2013_ONE_EVENT_XES, "bpic2013_one_event")?;

    let conversion = convert(&log, &descriptor, &ext);
    print!("{}", serialize_turtle(&conversion.graph, &output_prefixes(&ext.prefixes, &descriptor.resource_namespace)));
    let s = &conversion.stats;
    eprintln!("{} event(s), {} object(s), {} triples", s.events, s.objects, s.triples);
    Ok(())
}
