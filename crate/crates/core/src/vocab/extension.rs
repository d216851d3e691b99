use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{core, ns};
use crate::rdf::turtle::TurtleError;
use crate::rdf::{parse_turtle, Graph, Iri, PrefixMap, Term, Triple};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClassDecl {
    pub superclasses: BTreeSet<Iri>,
    pub label: Option<String>,
    /// False when the class only shows up through `rdfs:subClassOf`.
    pub declared: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PropertyDecl {
    pub domain: Option<Iri>,
    pub range: Option<Iri>,
    pub super_properties: BTreeSet<Iri>,
    pub label: Option<String>,
}

/// A parsed domain extension: the classes and properties it declares on
/// top of OCEDO, plus everything else it said in `residual`.
#[derive(Debug, Clone, Default)]
pub struct ExtensionModel {
    pub classes: BTreeMap<Iri, ClassDecl>,
    pub object_properties: BTreeMap<Iri, PropertyDecl>,
    pub datatype_properties: BTreeMap<Iri, PropertyDecl>,
    pub prefixes: PrefixMap,
    graph: Graph,
    residual: Graph,
    load_findings: Vec<Finding>,
}

impl ExtensionModel {
    /// The extension exactly as parsed.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Triples not absorbed into the class/property tables.
    pub fn residual(&self) -> &Graph {
        &self.residual
    }

    /// Warnings raised while loading, also reported by [`check_conformance`].
    pub fn load_findings(&self) -> &[Finding] {
        &self.load_findings
    }

    pub fn is_object_property(&self, p: &Iri) -> bool {
        self.object_properties.contains_key(p)
    }

    pub fn is_datatype_property(&self, p: &Iri) -> bool {
        self.datatype_properties.contains_key(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConformanceCode {
    SubclassCycle,
    UnanchoredClass,
    DanglingDomain,
    DanglingRange,
    NonXsdRange,
    MissingLabel,
    UnanchoredAttribute,
    UndeclaredClass,
}

impl ConformanceCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ConformanceCode::SubclassCycle => "SUBCLASS_CYCLE",
            ConformanceCode::UnanchoredClass => "UNANCHORED_CLASS",
            ConformanceCode::DanglingDomain => "DANGLING_DOMAIN",
            ConformanceCode::DanglingRange => "DANGLING_RANGE",
            ConformanceCode::NonXsdRange => "NON_XSD_RANGE",
            ConformanceCode::MissingLabel => "MISSING_LABEL",
            ConformanceCode::UnanchoredAttribute => "UNANCHORED_ATTRIBUTE",
            ConformanceCode::UndeclaredClass => "UNDECLARED_CLASS",
        }
    }
}

impl fmt::Display for ConformanceCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub severity: Severity,
    pub code: ConformanceCode,
    pub subject: Iri,
    pub message: String,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}: {}", self.severity, self.code, self.subject.as_str(), self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConformanceReport {
    pub findings: Vec<Finding>,
}

impl ConformanceReport {
    pub fn is_conformant(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn errors(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| f.severity == Severity::Error)
    }

    pub fn error_count(&self) -> usize {
        self.errors().count()
    }

    pub fn has_code(&self, code: ConformanceCode) -> bool {
        self.findings.iter().any(|f| f.code == code)
    }
}

/// Parses an extension document into its class and property tables.
pub fn load_ocedd(text: &str) -> Result<ExtensionModel, TurtleError> {
    let (graph, prefixes) = parse_turtle(text)?;
    let v = core();
    let mut model = ExtensionModel {
        prefixes,
        ..Default::default()
    };
    let mut consumed: Vec<Triple> = Vec::new();
    let keep = |t: &Triple, consumed: &mut Vec<Triple>| consumed.push(t.clone());

    for class_kind in [&v.owl_class, &v.rdfs_class] {
        for t in graph.matching_unordered(None, Some(&v.rdf_type), Some(&Term::Iri(class_kind.clone()))) {
            if let Term::Iri(c) = t.subject() {
                model.classes.entry(c.clone()).or_default().declared = true;
                keep(&t, &mut consumed);
            }
        }
    }
    for (kind, table) in [
        (&v.object_property, &mut model.object_properties),
        (&v.datatype_property, &mut model.datatype_properties),
    ] {
        for t in graph.matching_unordered(None, Some(&v.rdf_type), Some(&Term::Iri(kind.clone()))) {
            if let Term::Iri(p) = t.subject() {
                table.entry(p.clone()).or_default();
                keep(&t, &mut consumed);
            }
        }
    }

    for t in graph.matching(None, Some(&v.sub_class_of), None) {
        if let (Term::Iri(c), Term::Iri(sup)) = (t.subject(), t.object()) {
            model.classes.entry(c.clone()).or_default().superclasses.insert(sup.clone());
            keep(&t, &mut consumed);
        }
    }

    // Sorted so the first domain/range/label wins deterministically.
    for t in graph.matching(None, None, None) {
        let Term::Iri(s) = t.subject() else { continue };
        let p = t.predicate();
        let decl = model
            .object_properties
            .get_mut(s)
            .or_else(|| model.datatype_properties.get_mut(s));
        if let Some(decl) = decl {
            let absorbed = match t.object() {
                Term::Iri(o) if *p == v.domain && decl.domain.is_none() => {
                    decl.domain = Some(o.clone());
                    true
                }
                Term::Iri(o) if *p == v.range && decl.range.is_none() => {
                    decl.range = Some(o.clone());
                    true
                }
                Term::Iri(o) if *p == v.sub_property_of => {
                    decl.super_properties.insert(o.clone());
                    true
                }
                Term::Literal(l) if *p == v.label && decl.label.is_none() => {
                    decl.label = Some(l.lexical().to_owned());
                    true
                }
                _ => false,
            };
            if absorbed {
                keep(&t, &mut consumed);
            }
        } else if let Some(class) = model.classes.get_mut(s) {
            if let (true, Term::Literal(l)) = (*p == v.label && class.label.is_none(), t.object()) {
                class.label = Some(l.lexical().to_owned());
                keep(&t, &mut consumed);
            }
        }
    }

    let consumed: Graph = consumed.into_iter().collect();
    model.residual = graph.iter().filter(|t| !consumed.contains_triple(t)).collect();

    let (ocedo, _) = super::builtin_ocedo();
    let known = declared_classes(&model, &ocedo);
    let mut undeclared: BTreeSet<Iri> = BTreeSet::new();
    for decl in model.object_properties.values().chain(model.datatype_properties.values()) {
        undeclared.extend(decl.domain.iter().filter(|c| !known.contains(*c)).cloned());
    }
    for decl in model.object_properties.values() {
        undeclared.extend(decl.range.iter().filter(|c| !known.contains(*c)).cloned());
    }
    for (c, decl) in &model.classes {
        if !decl.declared {
            undeclared.insert(c.clone());
        }
    }
    model.load_findings = undeclared
        .into_iter()
        .map(|c| Finding {
            severity: Severity::Warning,
            code: ConformanceCode::UndeclaredClass,
            message: format!("{} is used as a class but never declared", c.as_str()),
            subject: c,
        })
        .collect();
    model.graph = graph;
    Ok(model)
}

fn declared_classes(model: &ExtensionModel, ocedo: &Graph) -> BTreeSet<Iri> {
    let v = core();
    let mut known: BTreeSet<Iri> = model
        .classes
        .iter()
        .filter(|(_, d)| d.declared)
        .map(|(c, _)| c.clone())
        .collect();
    for kind in [&v.owl_class, &v.rdfs_class] {
        known.extend(
            ocedo
                .subjects(&v.rdf_type, &Term::Iri(kind.clone()))
                .filter_map(Term::as_iri)
                .cloned(),
        );
    }
    known
}

/// Reflexive-transitive successors of `start` along `edges`.
fn reach(start: &Iri, edges: &BTreeMap<Iri, BTreeSet<Iri>>) -> BTreeSet<Iri> {
    let mut seen = BTreeSet::from([start.clone()]);
    let mut stack = vec![start.clone()];
    while let Some(n) = stack.pop() {
        for m in edges.get(&n).into_iter().flatten() {
            if seen.insert(m.clone()) {
                stack.push(m.clone());
            }
        }
    }
    seen
}

fn edges_from(graph: &Graph, predicate: &Iri) -> BTreeMap<Iri, BTreeSet<Iri>> {
    let mut edges: BTreeMap<Iri, BTreeSet<Iri>> = BTreeMap::new();
    for (s, o) in graph.pairs(predicate) {
        if let (Term::Iri(s), Term::Iri(o)) = (s, o) {
            edges.entry(s.clone()).or_default().insert(o.clone());
        }
    }
    edges
}

/// Checks that an extension specialises OCEDO cleanly.
///
/// Errors: subclass cycles, classes that never reach `oced:Event` or
/// `oced:Object`, object properties whose domain or range is not a declared
/// class, datatype properties ranging outside XSD. Warnings: missing labels,
/// datatype properties not under `oced:event_attribute` /
/// `oced:object_attribute`, plus any load-time warnings.
pub fn check_conformance(ext: &ExtensionModel, ocedo: &Graph) -> ConformanceReport {
    let v = core();
    let mut findings = Vec::new();
    let mut push = |severity, code, subject: &Iri, message: String| {
        findings.push(Finding {
            severity,
            code,
            subject: subject.clone(),
            message,
        })
    };

    let mut sc_edges = edges_from(ocedo, &v.sub_class_of);
    for (c, decl) in &ext.classes {
        sc_edges.entry(c.clone()).or_default().extend(decl.superclasses.iter().cloned());
    }

    // Cycles: group classes that reach each other; report each group once.
    let reach_of: BTreeMap<&Iri, BTreeSet<Iri>> = ext.classes.keys().map(|c| (c, reach(c, &sc_edges))).collect();
    let mut reported: BTreeSet<Iri> = BTreeSet::new();
    for (c, reachable) in &reach_of {
        if reported.contains(*c) {
            continue;
        }
        let on_cycle = sc_edges
            .get(*c)
            .into_iter()
            .flatten()
            .any(|sup| sup == *c || reach(sup, &sc_edges).contains(*c));
        if !on_cycle {
            continue;
        }
        let members: BTreeSet<Iri> = reachable
            .iter()
            .filter(|m| reach(m, &sc_edges).contains(*c))
            .cloned()
            .collect();
        let names: Vec<&str> = members.iter().map(Iri::as_str).collect();
        push(
            Severity::Error,
            ConformanceCode::SubclassCycle,
            c,
            format!("rdfs:subClassOf cycle through {}", names.join(" -> ")),
        );
        reported.extend(members);
    }

    for (c, reachable) in &reach_of {
        if !reachable.contains(&v.event) && !reachable.contains(&v.object) {
            push(
                Severity::Error,
                ConformanceCode::UnanchoredClass,
                c,
                format!("{} does not specialise oced:Event or oced:Object", c.as_str()),
            );
        }
    }

    let known = declared_classes(ext, ocedo);
    for (p, decl) in &ext.object_properties {
        if let Some(d) = decl.domain.as_ref().filter(|d| !known.contains(*d)) {
            push(
                Severity::Error,
                ConformanceCode::DanglingDomain,
                p,
                format!("domain {} is not a declared class", d.as_str()),
            );
        }
        if let Some(r) = decl.range.as_ref().filter(|r| !known.contains(*r)) {
            push(
                Severity::Error,
                ConformanceCode::DanglingRange,
                p,
                format!("range {} is not a declared class", r.as_str()),
            );
        }
    }

    let mut sp_edges = edges_from(ocedo, &v.sub_property_of);
    for (p, decl) in ext.datatype_properties.iter().chain(ext.object_properties.iter()) {
        sp_edges.entry(p.clone()).or_default().extend(decl.super_properties.iter().cloned());
    }
    for (p, decl) in &ext.datatype_properties {
        if let Some(r) = decl.range.as_ref().filter(|r| !r.as_str().starts_with(ns::XSD)) {
            push(
                Severity::Error,
                ConformanceCode::NonXsdRange,
                p,
                format!("datatype property range {} is not an XSD datatype", r.as_str()),
            );
        }
        let supers = reach(p, &sp_edges);
        if !supers.contains(&v.event_attribute) && !supers.contains(&v.object_attribute) {
            push(
                Severity::Warning,
                ConformanceCode::UnanchoredAttribute,
                p,
                "not a sub-property of oced:event_attribute or oced:object_attribute".into(),
            );
        }
    }

    for (c, decl) in &ext.classes {
        if decl.declared && decl.label.is_none() {
            push(Severity::Warning, ConformanceCode::MissingLabel, c, "class has no rdfs:label".into());
        }
    }
    for (p, decl) in ext.object_properties.iter().chain(ext.datatype_properties.iter()) {
        if decl.label.is_none() {
            push(Severity::Warning, ConformanceCode::MissingLabel, p, "property has no rdfs:label".into());
        }
    }

    findings.extend(ext.load_findings.iter().cloned());
    findings.sort_by(|a, b| {
        (a.severity, a.code, &a.subject, &a.message).cmp(&(b.severity, b.code, &b.subject, &b.message))
    });
    ConformanceReport { findings }
}
