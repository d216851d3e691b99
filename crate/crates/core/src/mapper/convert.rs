use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use super::descriptor::{AttributeRule, Descriptor, ObjectGroup, Scope};
use super::identity::{mint_event_iri_in, mint_object_iri_in, sha1_hex};
use crate::rdf::{Graph, Iri, Literal, RdfError, Term, Triple};
use crate::vocab::{core, ns, ExtensionModel, Severity};
use crate::xes::{attribute, XesAttribute, XesLog, XesTrace};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ConvertOptions {
    /// Skip events whose timestamp is missing or malformed, as errors.
    /// Otherwise they are kept without `oced:observed_at`, as warnings.
    pub strict: bool,
}

/// A diagnostic raised during conversion. `trace` and `event` are document
/// positions, 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapFinding {
    pub severity: Severity,
    pub trace: Option<usize>,
    pub event: Option<usize>,
    pub message: String,
}

impl fmt::Display for MapFinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.severity)?;
        match (self.trace, self.event) {
            (Some(t), Some(e)) => write!(f, " [trace {t}, event {e}]")?,
            (Some(t), None) => write!(f, " [trace {t}]")?,
            _ => {}
        }
        write!(f, ": {}", self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConversionStats {
    pub events_in: usize,
    /// Event nodes emitted.
    pub events: usize,
    pub skipped_events: usize,
    /// Distinct object nodes.
    pub objects: usize,
    pub triples: usize,
    /// Group bindings dropped for a missing identity value.
    pub skipped_objects: usize,
    /// Events that matched no event_type rule.
    pub untyped_events: usize,
    /// Event keys no rule reads, with occurrence counts.
    pub unmapped_keys: BTreeMap<String, usize>,
    pub findings: Vec<MapFinding>,
}

impl ConversionStats {
    pub fn errors(&self) -> impl Iterator<Item = &MapFinding> {
        self.findings.iter().filter(|f| f.severity == Severity::Error)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &MapFinding> {
        self.findings.iter().filter(|f| f.severity == Severity::Warning)
    }
}

#[derive(Debug, Clone)]
pub struct Conversion {
    pub graph: Graph,
    pub stats: ConversionStats,
}

/// Lenient conversion.
pub fn convert(log: &XesLog, d: &Descriptor, ext: &ExtensionModel) -> Conversion {
    convert_with(log, d, ext, &ConvertOptions::default())
}

pub fn convert_with(log: &XesLog, d: &Descriptor, ext: &ExtensionModel, opts: &ConvertOptions) -> Conversion {
    let mut m = Mapper {
        d,
        opts,
        graph: Graph::new(),
        stats: ConversionStats::default(),
        objects: HashSet::new(),
        mapped_keys: mapped_event_keys(d),
    };
    m.check_vocabulary(ext);
    for (rank, doc_index) in canonical_trace_order(&log.traces).into_iter().enumerate() {
        m.trace(&log.source_name, rank, doc_index, &log.traces[doc_index]);
    }
    m.stats.objects = m.objects.len();
    m.stats.triples = m.graph.len();
    Conversion { graph: m.graph, stats: m.stats }
}

/// Document indexes sorted by (trace `concept:name`, content digest). The
/// position in this order is the trace index used for event IRIs, which
/// makes the output independent of the order traces appear in.
pub fn canonical_trace_order(traces: &[XesTrace]) -> Vec<usize> {
    let mut keyed: Vec<(String, String, usize)> = traces
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let name = t.get("concept:name").map(|a| a.raw.clone()).unwrap_or_default();
            (name, sha1_hex(&trace_fingerprint(t)), i)
        })
        .collect();
    keyed.sort();
    keyed.into_iter().map(|(_, _, i)| i).collect()
}

fn trace_fingerprint(t: &XesTrace) -> String {
    fn attrs(list: &[XesAttribute], out: &mut String) {
        for a in list {
            out.push_str(a.value.element_name());
            out.push('\u{1F}');
            out.push_str(&a.key);
            out.push('\u{1F}');
            out.push_str(&a.raw);
            out.push('\u{1D}');
            attrs(&a.children, out);
            out.push('\u{1C}');
        }
    }
    let mut out = String::new();
    attrs(&t.attributes, &mut out);
    for e in &t.events {
        out.push('\u{1E}');
        attrs(&e.attributes, &mut out);
    }
    out
}

fn mapped_event_keys(d: &Descriptor) -> BTreeSet<String> {
    let mut keys: BTreeSet<String> = d.timestamp_key.iter().cloned().collect();
    for r in &d.event_type_rules {
        keys.extend(r.matches.iter().map(|(k, _)| k.clone()));
    }
    keys.extend(d.event_attribute_rules.iter().map(|r| r.source.clone()));
    for g in d.object_groups.iter().filter(|g| g.scope == Scope::Event) {
        keys.extend(g.identity_keys.iter().cloned());
        keys.extend(g.attributes.iter().map(|r| r.source.clone()));
    }
    keys
}

fn literal(raw: &str, datatype: &Iri) -> Result<Literal, RdfError> {
    if *datatype == core().xsd_string {
        Ok(Literal::string(raw))
    } else {
        Literal::typed(raw, datatype.clone())
    }
}

struct Mapper<'a> {
    d: &'a Descriptor,
    opts: &'a ConvertOptions,
    graph: Graph,
    stats: ConversionStats,
    objects: HashSet<Iri>,
    mapped_keys: BTreeSet<String>,
}

impl Mapper<'_> {
    fn finding(&mut self, severity: Severity, trace: Option<usize>, event: Option<usize>, message: String) {
        self.stats.findings.push(MapFinding { severity, trace, event, message });
    }

    fn add(&mut self, s: &Iri, p: &Iri, o: impl Into<Term>) {
        let t = Triple::new(s.clone(), p.clone(), o).expect("IRI subject");
        self.graph.insert(t);
    }

    fn check_vocabulary(&mut self, ext: &ExtensionModel) {
        let builtin = |i: &Iri| i.as_str().starts_with(ns::OCED) || i.as_str().starts_with(ns::AUX);
        let mut classes: Vec<&Iri> = self.d.event_type_rules.iter().map(|r| &r.class).collect();
        classes.extend(self.d.object_groups.iter().map(|g| &g.class));
        let mut props: Vec<&Iri> = self.d.event_attribute_rules.iter().map(|r| &r.property).collect();
        for g in &self.d.object_groups {
            props.extend(g.link.iter());
            props.extend(g.attributes.iter().map(|r| &r.property));
        }
        props.extend(self.d.object_relations.iter().map(|r| &r.property));

        let mut missing = BTreeSet::new();
        for c in classes {
            if !builtin(c) && !ext.classes.contains_key(c) {
                missing.insert(format!("class <{}>", c.as_str()));
            }
        }
        for p in props {
            if !builtin(p) && !ext.is_object_property(p) && !ext.is_datatype_property(p) {
                missing.insert(format!("property <{}>", p.as_str()));
            }
        }
        for m in missing {
            self.finding(Severity::Warning, None, None, format!("descriptor uses {m} not declared by the extension"));
        }
    }

    /// Mints (or reuses) the object for `group` from `attrs`. Fails with the
    /// first absent identity key.
    fn bind(&mut self, group: &ObjectGroup, attrs: &[XesAttribute]) -> Result<Iri, String> {
        let mut pairs = Vec::with_capacity(group.identity_keys.len());
        for k in &group.identity_keys {
            match attribute(attrs, k) {
                Some(a) => pairs.push((k.as_str(), a.raw.as_str())),
                None => return Err(k.clone()),
            }
        }
        let id = mint_object_iri_in(&self.d.resource_namespace, &group.class_curie, &pairs)
            .expect("identity keys are nonempty")
            .into_iri();
        let v = core();
        if self.objects.insert(id.clone()) {
            self.add(&id, &v.rdf_type, v.object.clone());
            self.add(&id, &v.rdf_type, group.class.clone());
        }
        self.attributes(&id, &group.attributes, attrs);
        Ok(id)
    }

    fn attributes(&mut self, subject: &Iri, rules: &[AttributeRule], attrs: &[XesAttribute]) -> Vec<String> {
        let mut problems = Vec::new();
        for r in rules {
            if let Some(a) = attribute(attrs, &r.source) {
                match literal(&a.raw, &r.datatype) {
                    Ok(l) => self.add(subject, &r.property, l),
                    Err(e) => problems.push(format!("attribute {:?} not mapped: {e}", r.source)),
                }
            }
        }
        problems
    }

    fn trace(&mut self, source: &str, rank: usize, doc_index: usize, trace: &XesTrace) {
        let d = self.d;
        let mut trace_bound: Vec<Option<Iri>> = vec![None; d.object_groups.len()];
        for (gi, g) in d.object_groups.iter().enumerate() {
            if g.scope != Scope::Trace {
                continue;
            }
            match self.bind(g, &trace.attributes) {
                Ok(id) => trace_bound[gi] = Some(id),
                Err(key) => {
                    self.stats.skipped_objects += 1;
                    let msg = format!("object group {:?} skipped: trace has no {key:?}", g.id);
                    self.finding(Severity::Warning, Some(doc_index), None, msg);
                }
            }
        }
        for (ei, event) in trace.events.iter().enumerate() {
            self.event(source, rank, doc_index, ei, &event.attributes, &trace_bound);
        }
    }

    fn event(
        &mut self,
        source: &str,
        rank: usize,
        doc_index: usize,
        ei: usize,
        attrs: &[XesAttribute],
        trace_bound: &[Option<Iri>],
    ) {
        let d = self.d;
        let v = core();
        let at = (Some(doc_index), Some(ei));
        self.stats.events_in += 1;
        for a in attrs {
            if !self.mapped_keys.contains(&a.key) {
                *self.stats.unmapped_keys.entry(a.key.clone()).or_default() += 1;
            }
        }

        let mut observed = None;
        if let Some(key) = &d.timestamp_key {
            let problem = match attribute(attrs, key) {
                None => Some(format!("no {key:?} attribute")),
                Some(a) => match Literal::typed(&a.raw, v.xsd_date_time.clone()) {
                    Ok(l) => {
                        observed = Some(l);
                        None
                    }
                    Err(e) => Some(format!("{key:?} is not a dateTime: {e}")),
                },
            };
            if let Some(problem) = problem {
                if self.opts.strict {
                    self.stats.skipped_events += 1;
                    self.finding(Severity::Error, at.0, at.1, format!("event skipped: {problem}"));
                    return;
                }
                self.finding(Severity::Warning, at.0, at.1, format!("event has no observed_at: {problem}"));
            }
        }

        let e = mint_event_iri_in(&d.resource_namespace, source, rank, ei).into_iri();
        self.stats.events += 1;
        self.add(&e, &v.rdf_type, v.event.clone());
        let matched = d.event_type_rules.iter().find(|r| {
            r.matches
                .iter()
                .all(|(k, val)| attribute(attrs, k).is_some_and(|a| a.raw == *val))
        });
        match matched {
            Some(rule) => self.add(&e, &v.rdf_type, rule.class.clone()),
            None => {
                self.stats.untyped_events += 1;
                self.finding(Severity::Warning, at.0, at.1, "no event_type rule matches".into());
            }
        }
        if let Some(l) = observed {
            self.add(&e, &v.observed_at, l);
        }
        for problem in self.attributes(&e, &d.event_attribute_rules, attrs) {
            self.finding(Severity::Warning, at.0, at.1, problem);
        }

        let mut bound = trace_bound.to_vec();
        for (gi, g) in d.object_groups.iter().enumerate() {
            if g.scope != Scope::Event {
                continue;
            }
            match self.bind(g, attrs) {
                Ok(id) => bound[gi] = Some(id),
                Err(key) => {
                    self.stats.skipped_objects += 1;
                    let msg = format!("object group {:?} skipped: no {key:?}", g.id);
                    self.finding(Severity::Warning, at.0, at.1, msg);
                }
            }
        }
        for (gi, g) in d.object_groups.iter().enumerate() {
            if let (Some(link), Some(o)) = (&g.link, &bound[gi]) {
                self.add(&e, link, o.clone());
            }
        }
        for r in &d.object_relations {
            let from = d.object_groups.iter().position(|g| g.id == r.from_group);
            let to = d.object_groups.iter().position(|g| g.id == r.to_group);
            if let (Some(Some(a)), Some(Some(b))) = (from.map(|i| &bound[i]), to.map(|i| &bound[i])) {
                self.add(a, &r.property, b.clone());
            }
        }
    }
}
