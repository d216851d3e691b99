use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::rdf::{Graph, Iri, Term, Triple};
use crate::vocab::{core, ns, rdfs_closure, ExtensionModel, Severity, VocabTerm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ValidationCode {
    DomainViolation,
    RangeViolation,
    DisjointTypes,
    UnknownProperty,
    UntypedResource,
}

impl ValidationCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ValidationCode::DomainViolation => "DOMAIN_VIOLATION",
            ValidationCode::RangeViolation => "RANGE_VIOLATION",
            ValidationCode::DisjointTypes => "DISJOINT_TYPES",
            ValidationCode::UnknownProperty => "UNKNOWN_PROPERTY",
            ValidationCode::UntypedResource => "UNTYPED_RESOURCE",
        }
    }
}

impl fmt::Display for ValidationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationFinding {
    pub severity: Severity,
    pub code: ValidationCode,
    /// The offending triple; for DISJOINT_TYPES, one of the two typings.
    pub triple: Triple,
    pub message: String,
}

impl fmt::Display for ValidationFinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = &self.triple;
        write!(
            f,
            "{} {} {} <{}> {}: {}",
            self.severity,
            self.code,
            t.subject().to_ntriples(),
            t.predicate().as_str(),
            t.object().to_ntriples(),
            self.message
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub findings: Vec<ValidationFinding>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.error_count() == 0
    }

    pub fn error_count(&self) -> usize {
        self.findings.iter().filter(|f| f.severity == Severity::Error).count()
    }

    pub fn has_code(&self, code: ValidationCode) -> bool {
        self.findings.iter().any(|f| f.code == code)
    }

    pub fn codes(&self) -> Vec<ValidationCode> {
        self.findings.iter().map(|f| f.code).collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for finding in &self.findings {
            writeln!(f, "{finding}")?;
        }
        let errors = self.error_count();
        write!(f, "{errors} error(s), {} warning(s)", self.findings.len() - errors)
    }
}

/// Checks `g` against OCEDO and the extension.
///
/// Node anchoring comes from asserted types lifted along subclass axioms; a
/// domain or range whose root (Event or Object) differs from a root the node
/// is already anchored to is a violation. Disjointness is checked on the full
/// closure, so inferred contradictions surface there.
pub fn validate(g: &Graph, ocedo: &Graph, ext: &ExtensionModel) -> ValidationReport {
    let v = core();
    let mut schema = ocedo.clone();
    schema.extend_from(ext.graph());
    let mut all = g.clone();
    all.extend_from(&schema);
    let closed = rdfs_closure(&all);

    let roots = [v.event.clone(), v.object.clone()];
    let root_of = |c: &Iri| -> Option<&Iri> {
        roots
            .iter()
            .find(|r| *r == c || closed.contains(&c.clone().into(), &v.sub_class_of, &(*r).clone().into()))
    };

    let mut asserted: HashMap<&Term, BTreeSet<&Iri>> = HashMap::new();
    for (x, c) in g.pairs(&v.rdf_type) {
        if let Some(r) = c.as_iri().and_then(root_of) {
            asserted.entry(x).or_default().insert(r);
        }
    }

    let mut findings = Vec::new();
    for t in g.triples_sorted() {
        let p: Term = t.predicate().clone().into();
        let mut supers: Vec<Term> = closed.objects(&p, &v.sub_property_of).cloned().collect();
        supers.push(p);
        for (axiom, node, code) in [
            (&v.domain, t.subject(), ValidationCode::DomainViolation),
            (&v.range, t.object(), ValidationCode::RangeViolation),
        ] {
            if node.is_literal() {
                continue;
            }
            let Some(node_roots) = asserted.get(node) else { continue };
            let clash = supers.iter().flat_map(|q| closed.objects(q, axiom)).find_map(|c| {
                let c = c.as_iri()?;
                let r = root_of(c)?;
                node_roots.iter().find(|nr| **nr != r).map(|nr| (c.clone(), nr))
            });
            if let Some((class, node_root)) = clash {
                let side = if code == ValidationCode::DomainViolation { "domain" } else { "range" };
                findings.push(ValidationFinding {
                    severity: Severity::Error,
                    code,
                    triple: t.clone(),
                    message: format!(
                        "{side} <{}> is not compatible with node anchored to <{}>",
                        class.as_str(),
                        node_root.as_str()
                    ),
                });
            }
        }
    }

    let disjoint = VocabTerm::DisjointWith.iri();
    let mut pairs: BTreeSet<(Iri, Iri)> = BTreeSet::new();
    for (a, b) in closed.pairs(&disjoint) {
        if let (Term::Iri(a), Term::Iri(b)) = (a, b) {
            pairs.insert(if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) });
        }
    }
    let mut disjoint_findings = Vec::new();
    for (a, b) in &pairs {
        let b_term: Term = b.clone().into();
        for x in closed.subjects(&v.rdf_type, &a.clone().into()) {
            if closed.contains(x, &v.rdf_type, &b_term) {
                disjoint_findings.push(ValidationFinding {
                    severity: Severity::Error,
                    code: ValidationCode::DisjointTypes,
                    triple: Triple::new(x.clone(), v.rdf_type.clone(), a.clone()).expect("typed subject"),
                    message: format!("typed both <{}> and <{}>", a.as_str(), b.as_str()),
                });
            }
        }
    }
    disjoint_findings.sort_by_key(|f| f.triple.to_ntriples());
    findings.extend(disjoint_findings);

    let ext_ns = ext.prefixes.get("ext").map(|i| i.as_str().to_owned());
    let known = |p: &Iri| {
        let s = p.as_str();
        [ns::RDF, ns::RDFS, ns::OWL, ns::OCED, ns::AUX].iter().any(|n| s.starts_with(n))
            || ext_ns.as_deref().is_some_and(|n| s.starts_with(n))
            || ext.is_object_property(p)
            || ext.is_datatype_property(p)
    };
    let mut unknown: BTreeMap<String, (Triple, usize)> = BTreeMap::new();
    for t in g.iter() {
        if !known(t.predicate()) {
            let e = unknown.entry(t.predicate().as_str().to_owned()).or_insert((t.clone(), 0));
            e.1 += 1;
            if t.to_ntriples() < e.0.to_ntriples() {
                e.0 = t;
            }
        }
    }
    for (p, (triple, n)) in unknown {
        findings.push(ValidationFinding {
            severity: Severity::Warning,
            code: ValidationCode::UnknownProperty,
            triple,
            message: format!("predicate <{p}> is outside the known vocabularies ({n} triple(s))"),
        });
    }

    let mut untyped: Vec<ValidationFinding> = Vec::new();
    let mut seen = BTreeSet::new();
    for t in g.triples_sorted() {
        let s = t.subject();
        if seen.contains(s) {
            continue;
        }
        seen.insert(s.clone());
        if closed.objects(s, &v.rdf_type).next().is_none() {
            untyped.push(ValidationFinding {
                severity: Severity::Warning,
                code: ValidationCode::UntypedResource,
                triple: t.clone(),
                message: "subject has no rdf:type after closure".into(),
            });
        }
    }
    findings.extend(untyped);

    ValidationReport { findings }
}
