//! XES to OCEDR conversion driven by a tabular descriptor.
//!
//! Events get positional IRIs, objects get IRIs hashed from their class and
//! identity values, so the same object seen by many events is one node.

mod convert;
mod descriptor;
mod identity;

pub use convert::{
    canonical_trace_order, convert, convert_with, Conversion, ConversionStats, ConvertOptions, MapFinding,
};
pub use descriptor::{
    parse_descriptor, AttributeRule, Descriptor, DescriptorError, EventTypeRule, ObjectGroup, ObjectRelationRule,
    Scope,
};
pub use identity::{canonical_identity, mint_event_iri, mint_object_iri, ResourceId, UNIT_SEPARATOR};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::{Iri, Literal, PrefixMap, Term};
    use crate::vocab::{
        core, load_ocedd, standard_prefixes, ExtensionModel, BPIC2013_DESCRIPTOR_CSV, BPIC2013_OCEDD_TTL,
        BPIC2013_ONE_EVENT_XES,
    };
    use crate::xes::{parse_xes_str, XesAttribute, XesEvent, XesLog, XesTrace};

    fn setup() -> (Descriptor, ExtensionModel) {
        let ext = load_ocedd(BPIC2013_OCEDD_TTL).unwrap();
        let mut pm: PrefixMap = standard_prefixes();
        pm.merge(&ext.prefixes);
        (parse_descriptor(BPIC2013_DESCRIPTOR_CSV, &pm).unwrap(), ext)
    }

    fn ext_iri(local: &str) -> Iri {
        Iri::new(format!("https://w3id.org/ocedo/ext/bpic2013#{local}")).unwrap()
    }

    fn single_object(g: &crate::rdf::Graph, s: &Term, p: &Iri) -> Term {
        let objs: Vec<_> = g.objects(s, p).cloned().collect();
        assert_eq!(objs.len(), 1, "{p:?}");
        objs.into_iter().next().unwrap()
    }

    #[test]
    fn one_event_fixture() {
        let (d, ext) = setup();
        let log = parse_xes_str(BPIC2013_ONE_EVENT_XES, "bpic2013_one_event").unwrap();
        let Conversion { graph: g, stats } = convert(&log, &d, &ext);
        let v = core();

        let e: Term = mint_event_iri(&d, "bpic2013_one_event", 0, 0).into();
        assert!(g.contains(&e, &v.rdf_type, &ext_iri("Close_Incident").into()));
        assert!(g.contains(&e, &ext_iri("status"), &Literal::string("Completed").into()));
        assert!(g.contains(&e, &ext_iri("substatus"), &Literal::string("Closed").into()));
        let ts = Literal::typed("2012-05-11T01:26:15+02:00", v.xsd_date_time.clone()).unwrap();
        assert!(g.contains(&e, &v.observed_at, &ts.into()));

        let incident = single_object(&g, &e, &ext_iri("pertains_to"));
        assert!(g.contains(&incident, &v.rdf_type, &ext_iri("Incident").into()));
        assert!(g.contains(&incident, &ext_iri("ticket_number"), &Literal::string("1-364285768").into()));
        let tm = single_object(&g, &e, &ext_iri("is_handled_by"));
        assert!(g.contains(&tm, &ext_iri("name"), &Literal::string("Siebel").into()));
        let team = single_object(&g, &tm, &ext_iri("works_in"));
        assert!(g.contains(&team, &ext_iri("team"), &Literal::string("V5 3rd").into()));
        let product = single_object(&g, &incident, &ext_iri("is_about_product"));
        assert!(g.contains(&product, &ext_iri("product_number"), &Literal::string("PROD582").into()));

        assert_eq!(g.len(), 22);
        assert_eq!(stats.events, 1);
        assert_eq!(stats.objects, 4);
        assert_eq!(stats.triples, 22);
        assert_eq!(stats.findings, []);
        assert_eq!(stats.unmapped_keys.keys().collect::<Vec<_>>(), ["org:role", "organization involved"]);
    }

    fn event(pairs: &[(&str, &str)]) -> XesEvent {
        XesEvent { attributes: pairs.iter().map(|(k, v)| XesAttribute::string(*k, *v)).collect() }
    }

    fn log(traces: Vec<XesTrace>) -> XesLog {
        XesLog { source_name: "t".into(), traces, ..XesLog::default() }
    }

    #[test]
    fn empty_log() {
        let (d, ext) = setup();
        let c = convert(&log(vec![]), &d, &ext);
        assert!(c.graph.is_empty());
        assert_eq!(c.stats, ConversionStats::default());
    }

    #[test]
    fn shared_team_member_is_one_node() {
        let (d, ext) = setup();
        let ts = ("time:timestamp", "2012-05-11T01:26:15+02:00");
        let trace = XesTrace {
            attributes: vec![XesAttribute::string("concept:name", "c1")],
            events: vec![event(&[("org:resource", "Siebel"), ts]), event(&[("org:resource", "Siebel"), ts])],
        };
        let c = convert(&log(vec![trace]), &d, &ext);
        let handled: Vec<_> = c.graph.pairs(&ext_iri("is_handled_by")).collect();
        assert_eq!(handled.len(), 2);
        assert_ne!(handled[0].0, handled[1].0);
        assert_eq!(handled[0].1, handled[1].1);
        assert_eq!(c.stats.objects, 2);
        assert_eq!(c.stats.skipped_objects, 4);
        assert_eq!(c.stats.untyped_events, 2);
    }

    #[test]
    fn bad_timestamp_strict_and_lenient() {
        let (d, ext) = setup();
        let trace = XesTrace {
            attributes: vec![XesAttribute::string("concept:name", "c1")],
            events: vec![event(&[("time:timestamp", "yesterday")]), event(&[])],
        };
        let l = log(vec![trace]);
        let strict = convert_with(&l, &d, &ext, &ConvertOptions { strict: true });
        assert_eq!(strict.stats.events_in, 2);
        assert_eq!(strict.stats.events, 0);
        assert_eq!(strict.stats.skipped_events, 2);
        assert_eq!(strict.stats.errors().count(), 2);

        let lenient = convert(&l, &d, &ext);
        assert_eq!(lenient.stats.events, 2);
        assert_eq!(lenient.stats.skipped_events, 0);
        assert_eq!(lenient.stats.errors().count(), 0);
        assert_eq!(lenient.graph.count_predicate(&core().observed_at), 0);
    }

    #[test]
    fn trace_order_does_not_matter() {
        let (d, ext) = setup();
        let mk = |name: &str, who: &str| XesTrace {
            attributes: vec![XesAttribute::string("concept:name", name)],
            events: vec![event(&[("org:resource", who), ("time:timestamp", "2012-01-01T00:00:00Z")])],
        };
        let a = log(vec![mk("x", "A"), mk("y", "B"), mk("x", "C")]);
        let b = log(vec![mk("x", "C"), mk("y", "B"), mk("x", "A")]);
        assert_eq!(convert(&a, &d, &ext).graph, convert(&b, &d, &ext).graph);
    }
}
