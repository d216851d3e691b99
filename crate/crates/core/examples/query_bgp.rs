//! Runs a basic graph pattern over the converted one-event log.

use oced_forge::mapper::{convert, parse_descriptor};
use oced_forge::tools::{bgp_query, parse_query};
use oced_forge::vocab::{
    load_ocedd, output_prefixes, standard_prefixes, BPIC2013_DESCRIPTOR_CSV, BPIC2013_OCEDD_TTL,
    BPIC2013_ONE_EVENT_XES,
};
use oced_forge::xes::parse_xes_str;

const QUERY: &str = "
# who handled which event, and in which team
?event a oced:Event
?event ext:is_handled_by ?member
?member ext:name ?name
?member ext:works_in ?team
?team ext:team ?team_name
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ext = load_ocedd(BPIC2013_OCEDD_TTL)?;
    let mut pm = standard_prefixes();
    pm.merge(&ext.prefixes);
    let descriptor = parse_descriptor(BPIC2013_DESCRIPTOR_CSV, &pm)?;
    let log = parse_xes_str(BPIC2013_ONE_EVENT_XES, "bpic2013_one_event")?;
    let g = convert(&log, &descriptor, &ext).graph;

    let out = output_prefixes(&ext.prefixes, &descriptor.resource_namespace);
    let patterns = parse_query(QUERY, &pm)?;
    print!("{}", bgp_query(&g, &patterns).to_tsv(&out));
    Ok(())
}
